//! Exact projective plane geometry: points, lines, conics and line
//! arrangements over the rationals.
//!
//! Points and lines are stored as integer triples in canonical form (cleared
//! denominators, gcd 1, first nonzero entry positive) so that projective
//! equality is structural equality and the derived `Ord` is the lexicographic
//! order on canonical coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{det3, kernel};
use crate::{Error, Result};

pub type Rat = BigRational;

/// Canonical homogeneous integer triple shared by points and lines.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Triple([BigInt; 3]);

impl Triple {
    fn from_ints(mut c: [BigInt; 3]) -> Result<Self> {
        let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let first_negative = c.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for x in c.iter_mut() {
            *x = &*x / &g;
            if first_negative {
                *x = -&*x;
            }
        }
        Ok(Triple(c))
    }

    fn from_rats(c: &[Rat; 3]) -> Result<Self> {
        let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints = c.clone().map(|x| (x * Rat::from_integer(l.clone())).to_integer());
        Triple::from_ints(ints)
    }

    fn dot(&self, o: &Triple) -> BigInt {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    fn cross(&self, o: &Triple) -> [BigInt; 3] {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &o.0;
        [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
    }

    fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::ParseTriple(
                s.to_string(),
                format!("expected 3 entries separated by ':', found {}", parts.len()),
            ));
        }
        let mut c: [Rat; 3] = std::array::from_fn(|_| Rat::zero());
        for (slot, part) in c.iter_mut().zip(&parts) {
            *slot = parse_rat(part).map_err(|e| Error::ParseTriple(s.to_string(), e))?;
        }
        Triple::from_rats(&c)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Parses an integer or a fraction `p/q`.
pub fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("{s:?} is not a rational number"))?;
    let d: BigInt = d.parse().map_err(|_| format!("{s:?} is not a rational number"))?;
    if d.is_zero() {
        return Err(format!("{s:?} has zero denominator"));
    }
    Ok(Rat::new(n, d))
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

macro_rules! homogeneous {
    ($name:ident) => {
        impl $name {
            pub fn new(coords: [Rat; 3]) -> Result<Self> {
                Triple::from_rats(&coords).map($name)
            }

            pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
                Triple::from_ints([x.into(), y.into(), z.into()]).map($name)
            }

            pub fn from_bigints(c: [BigInt; 3]) -> Result<Self> {
                Triple::from_ints(c).map($name)
            }

            /// Canonical integer coordinates.
            pub fn coords(&self) -> &[BigInt; 3] {
                &self.0 .0
            }

            pub fn rat_coords(&self) -> [Rat; 3] {
                self.0 .0.clone().map(Rat::from_integer)
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                Triple::parse(s).map($name)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({})", self.0)
            }
        }
    };
}

/// A point of the projective plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint(Triple);

/// A line of the projective plane, in dual coordinates: `(a:b:c)` is
/// `{a x + b y + c z = 0}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjLine(Triple);

homogeneous!(ProjPoint);
homogeneous!(ProjLine);

impl ProjLine {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.0.dot(&p.0).is_zero()
    }

    /// Value of the linear form at the given representative of `p`.
    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        self.0.dot(&p.0)
    }

    /// Intersection point with another line, `None` when the lines coincide.
    pub fn meet(&self, other: &ProjLine) -> Option<ProjPoint> {
        Triple::from_ints(self.0.cross(&other.0)).ok().map(ProjPoint)
    }
}

impl ProjPoint {
    /// The line `{a x + b y + c z = 0}` with the same coordinates.
    pub fn dual(&self) -> ProjLine {
        ProjLine(self.0.clone())
    }
}

pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    Triple::from_ints(p.0.cross(&q.0))
        .map(ProjLine)
        .map_err(|_| Error::IdenticalPoints)
}

pub fn point_on_line(p: &ProjPoint, l: &ProjLine) -> bool {
    l.contains(p)
}

pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    Triple(p.0.cross(&q.0)).dot(&r.0).is_zero()
}

/// A point where at least two lines of an arrangement meet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SingularPoint {
    pub point: ProjPoint,
    /// Indices into the arrangement.
    pub lines_through: BTreeSet<usize>,
    pub multiplicity: usize,
}

/// Every point lying on two or more of the given lines, each reported once
/// together with the full set of incident lines, sorted by canonical
/// coordinates.
pub fn arrangement_singular_points(lines: &[ProjLine]) -> Result<Vec<SingularPoint>> {
    let mut points: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = lines[i].meet(&lines[j]).ok_or(Error::DuplicateLine(i, j))?;
            points.entry(p).or_default();
        }
    }
    Ok(points
        .into_keys()
        .map(|point| {
            let lines_through: BTreeSet<usize> = lines
                .iter()
                .enumerate()
                .filter(|(_, l)| l.contains(&point))
                .map(|(i, _)| i)
                .collect();
            SingularPoint {
                multiplicity: lines_through.len(),
                point,
                lines_through,
            }
        })
        .collect())
}

/// A plane conic `x^T S x = 0` given by its symmetric matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Conic {
    sym: [[Rat; 3]; 3],
}

impl Conic {
    pub fn new(sym: [[Rat; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if sym[i][j] != sym[j][i] {
                    return Err(Error::AsymmetricConic);
                }
            }
        }
        if sym.iter().flatten().all(Zero::is_zero) {
            return Err(Error::ZeroConic);
        }
        Ok(Conic { sym })
    }

    /// Conic from the coefficients of
    /// `a x^2 + b y^2 + c z^2 + d xy + e xz + f yz`.
    pub fn from_coefficients(c: &[Rat; 6]) -> Result<Self> {
        let half = |x: &Rat| x / rat(2);
        Conic::new([
            [c[0].clone(), half(&c[3]), half(&c[4])],
            [half(&c[3]), c[1].clone(), half(&c[5])],
            [half(&c[4]), half(&c[5]), c[2].clone()],
        ])
    }

    /// The degenerate conic `l · m`.
    pub fn line_pair(l: &ProjLine, m: &ProjLine) -> Conic {
        let a = l.rat_coords();
        let b = m.rat_coords();
        let sym = std::array::from_fn(|i| {
            std::array::from_fn(|j| (&a[i] * &b[j] + &a[j] * &b[i]) / rat(2))
        });
        Conic { sym }
    }

    pub fn matrix(&self) -> &[[Rat; 3]; 3] {
        &self.sym
    }

    pub fn eval(&self, p: &ProjPoint) -> Rat {
        let x = p.rat_coords();
        let mut s = Rat::zero();
        for i in 0..3 {
            for j in 0..3 {
                s += &self.sym[i][j] * &x[i] * &x[j];
            }
        }
        s
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn det(&self) -> Rat {
        det3(&self.sym)
    }

    pub fn is_irreducible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Whether both matrices define the same conic (are proportional).
    pub fn same_conic(&self, other: &Conic) -> bool {
        let a = self.sym.iter().flatten();
        let b = other.sym.iter().flatten();
        let (pa, pb) = a
            .clone()
            .zip(b.clone())
            .find(|(x, _)| !x.is_zero())
            .expect("conic is nonzero");
        if pb.is_zero() {
            return false;
        }
        a.zip(b).all(|(x, y)| x * pb == y * pa)
    }

    /// `lambda * self + mu * other`.
    pub fn combine(&self, lambda: &Rat, other: &Conic, mu: &Rat) -> Result<Conic> {
        Conic::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| lambda * &self.sym[i][j] + mu * &other.sym[i][j])
        }))
    }

    /// The unique conic through five points, or `None` when the points do
    /// not impose independent conditions (four of them collinear).
    pub fn through_five(points: &[ProjPoint; 5]) -> Option<Conic> {
        let rows: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| {
                let [x, y, z] = p.rat_coords();
                vec![&x * &x, &y * &y, &z * &z, &x * &y, &x * &z, &y * &z]
            })
            .collect();
        let k = kernel(&rows, 6);
        if k.len() != 1 {
            return None;
        }
        let c: [Rat; 6] = k[0].clone().try_into().ok()?;
        Conic::from_coefficients(&c).ok()
    }
}

/// Member `lambda·Q1 + mu·Q2` of the pencil of conics through four points,
/// where `Q1 = line(b1 b2)·line(b3 b4)` and `Q2 = line(b1 b3)·line(b2 b4)`.
pub fn conic_pencil_member(base: &[ProjPoint; 4], param: (&Rat, &Rat)) -> Result<Conic> {
    let (q1, q2) = pencil_basis(base)?;
    if param.0.is_zero() && param.1.is_zero() {
        return Err(Error::ZeroParameter);
    }
    q1.combine(param.0, &q2, param.1)
}

/// The two line-pair conics spanning the pencil through `base`.
pub fn pencil_basis(base: &[ProjPoint; 4]) -> Result<(Conic, Conic)> {
    for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        if collinear(&base[t[0]], &base[t[1]], &base[t[2]]) {
            return Err(Error::CollinearBase(t));
        }
    }
    let l = |a: usize, b: usize| line_through(&base[a], &base[b]).expect("distinct base points");
    Ok((
        Conic::line_pair(&l(0, 1), &l(2, 3)),
        Conic::line_pair(&l(0, 2), &l(1, 3)),
    ))
}

pub fn conic_is_irreducible(c: &Conic) -> bool {
    c.is_irreducible()
}

/// An invertible projective transformation `p -> M p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectivity {
    m: [[BigInt; 3]; 3],
    cof: [[BigInt; 3]; 3],
}

impl Projectivity {
    pub fn new(m: [[i64; 3]; 3]) -> Option<Self> {
        let m = m.map(|r| r.map(BigInt::from));
        let c = |i: usize, j: usize| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        let cof: [[BigInt; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| c(i, j)));
        let det: BigInt = (0..3).map(|j| &m[0][j] * &cof[0][j]).sum();
        if det.is_zero() {
            return None;
        }
        Some(Projectivity { m, cof })
    }

    fn mul(a: &[[BigInt; 3]; 3], v: &[BigInt; 3]) -> [BigInt; 3] {
        std::array::from_fn(|i| (0..3).map(|j| &a[i][j] * &v[j]).sum())
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::from_bigints(Self::mul(&self.m, p.coords())).expect("invertible")
    }

    /// Lines transform by the cofactor matrix, which is `M^{-T}` up to scale.
    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        ProjLine::from_bigints(Self::mul(&self.cof, l.coords())).expect("invertible")
    }

    pub fn apply_conic(&self, c: &Conic) -> Conic {
        let cof = self.cof.clone().map(|r| r.map(Rat::from_integer));
        let s = c.matrix();
        // C S C^T
        let sym = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = Rat::zero();
                for k in 0..3 {
                    for l in 0..3 {
                        acc += &cof[i][k] * &s[k][l] * &cof[j][l];
                    }
                }
                acc
            })
        });
        Conic::new(sym).expect("invertible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_ints(x, y, z).unwrap()
    }

    fn l(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_ints(a, b, c).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(-2, 4, 6), p(1, -2, -3));
        assert_eq!(p(0, -3, 0).coords(), &[0.into(), 1.into(), 0.into()]);
        assert_eq!("1/2:1/3:1".parse::<ProjPoint>().unwrap(), p(3, 2, 6));
        assert_eq!(ProjPoint::from_ints(0, 0, 0), Err(Error::ZeroVector));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("1:0".parse::<ProjPoint>(), Err(Error::ParseTriple(..))));
        assert!(matches!("1:x:0".parse::<ProjPoint>(), Err(Error::ParseTriple(..))));
        assert!(matches!("1:1/0:0".parse::<ProjPoint>(), Err(Error::ParseTriple(..))));
        assert_eq!("2/3:1:0".parse::<ProjPoint>().unwrap(), p(2, 3, 0));
    }

    #[test]
    fn line_through_examples() {
        assert_eq!(line_through(&p(1, 0, 0), &p(0, 1, 0)).unwrap(), l(0, 0, 1));
        let line = line_through(&p(1, 0, 0), &p(2, 1, 2)).unwrap();
        assert_eq!(line, l(0, 2, -1));
        assert!(point_on_line(&p(1, 0, 0), &line));
        assert!(point_on_line(&p(2, 1, 2), &line));
        assert_eq!(line_through(&p(1, 1, 1), &p(1, 1, 1)), Err(Error::IdenticalPoints));
        assert_eq!(line_through(&p(1, 1, 1), &p(2, 2, 2)), Err(Error::IdenticalPoints));
    }

    #[test]
    fn incidence_examples() {
        assert!(point_on_line(&p(1, 0, 0), &l(0, 0, 1)));
        assert!(!point_on_line(&p(1, 1, 1), &l(0, 0, 1)));
        assert!(point_on_line(&p(2, 1, 2), &l(0, 2, -1)));
    }

    #[test]
    fn collinear_examples() {
        assert!(collinear(&p(1, 0, 0), &p(1, 1, 1), &p(1, 2, 2)));
        assert!(!collinear(&p(1, 0, 0), &p(0, 1, 0), &p(0, 0, 1)));
        assert!(collinear(&p(3, 5, 7), &p(3, 5, 7), &p(1, 2, 9)));
    }

    #[test]
    fn two_lines_meet_once() {
        let s = arrangement_singular_points(&[l(1, 0, 0), l(0, 1, 0)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].multiplicity, 2);
        assert_eq!(s[0].point, p(0, 0, 1));
    }

    #[test]
    fn duplicate_lines_rejected() {
        let r = arrangement_singular_points(&[l(1, 0, 0), l(0, 1, 0), l(2, 0, 0)]);
        assert_eq!(r, Err(Error::DuplicateLine(0, 2)));
    }

    #[test]
    fn pencil_member_through_base() {
        let base = [p(1, 0, 0), p(0, 1, 0), p(0, 0, 1), p(1, 1, 1)];
        let q = conic_pencil_member(&base, (&rat(1), &rat(0))).unwrap();
        // line(P1 P2) = z, line(P3 P4) = x - y
        let expected = Conic::line_pair(&l(0, 0, 1), &l(1, -1, 0));
        assert!(q.same_conic(&expected));
        assert!(!q.is_irreducible());
        assert!(base.iter().all(|b| q.contains(b)));
        assert_eq!(
            conic_pencil_member(&base, (&rat(0), &rat(0))),
            Err(Error::ZeroParameter)
        );
    }

    #[test]
    fn tertiary_pencil_member() {
        let base = [p(1, 0, 0), p(2, 1, 2), p(0, 1, 0), p(2, 1, 1)];
        let q = conic_pencil_member(&base, (&rat(1), &rat(1))).unwrap();
        for b in &base {
            assert_eq!(q.eval(b), rat(0));
        }
        assert!(q.is_irreducible());
    }

    #[test]
    fn collinear_base_rejected() {
        let base = [p(1, 0, 0), p(0, 1, 0), p(1, 1, 0), p(0, 0, 1)];
        assert!(matches!(
            conic_pencil_member(&base, (&rat(1), &rat(1))),
            Err(Error::CollinearBase(_))
        ));
    }

    #[test]
    fn irreducibility_by_rank() {
        let id = Conic::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { rat(1) } else { rat(0) })
        }))
        .unwrap();
        assert!(conic_is_irreducible(&id));
        let xy = Conic::line_pair(&l(1, 0, 0), &l(0, 1, 0));
        assert!(!conic_is_irreducible(&xy));
    }

    #[test]
    fn five_point_conic() {
        // x^2 + y^2 - z^2 through five rational points
        let pts = [p(1, 0, 1), p(0, 1, 1), p(-1, 0, 1), p(3, 4, 5), p(4, 3, 5)];
        let c = Conic::through_five(&pts).unwrap();
        assert!(c.is_irreducible());
        assert!(c.contains(&p(0, -1, 1)));
        // four collinear points leave a pencil
        let bad = [p(1, 0, 0), p(0, 1, 0), p(1, 1, 0), p(1, 2, 0), p(0, 0, 1)];
        assert!(Conic::through_five(&bad).is_none());
    }

    #[test]
    fn projectivity_preserves_incidence() {
        let t = Projectivity::new([[2, 1, 0], [0, 1, 3], [1, 0, 1]]).unwrap();
        let a = p(1, 2, 3);
        let b = p(-1, 0, 4);
        let line = line_through(&a, &b).unwrap();
        let tl = t.apply_line(&line);
        assert!(tl.contains(&t.apply_point(&a)));
        assert!(tl.contains(&t.apply_point(&b)));
        let c = Conic::line_pair(&line, &l(1, 1, 1));
        let tc = t.apply_conic(&c);
        assert!(tc.contains(&t.apply_point(&a)));
        assert!(Projectivity::new([[1, 2, 3], [2, 4, 6], [0, 0, 1]]).is_none());
    }
}
