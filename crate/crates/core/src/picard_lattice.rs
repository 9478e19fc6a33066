//! Divisor classes on the blow-up of the plane at `r` points.
//!
//! A class `d L + Σ m_i E_i` is stored as `(d; m_1, ..., m_r)` where `L` is
//! the pull-back of a line and `E_i` the exceptional curve over the `i`-th
//! point. The intersection form is `L² = 1`, `E_i² = -1`, all mixed
//! products zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::burniat::{self, BurniatConfig};
use crate::plane_geom::{line_through, Conic, ProjLine, ProjPoint};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DivisorClass {
    pub degree: i64,
    pub mults: Vec<i64>,
}

impl DivisorClass {
    pub fn new(degree: i64, mults: Vec<i64>) -> Self {
        DivisorClass { degree, mults }
    }

    pub fn zero(r: usize) -> Self {
        DivisorClass::new(0, vec![0; r])
    }

    pub fn rank(&self) -> usize {
        self.mults.len()
    }

    fn zip_with(&self, o: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.rank(), o.rank(), "divisor classes on different lattices");
        DivisorClass {
            degree: f(self.degree, o.degree),
            mults: self.mults.iter().zip(&o.mults).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        self.zip_with(o, |a, b| a + b)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        &self + &o
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        self.zip_with(o, |a, b| a - b)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        &self - &o
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.degree, self.mults.iter().map(|m| -m).collect())
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, c: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self * c.degree, c.mults.iter().map(|m| self * m).collect())
    }
}

/// `a·b` for classes on the same lattice.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    if a.rank() != b.rank() {
        return Err(Error::LatticeMismatch(a.rank(), b.rank()));
    }
    Ok(a.degree * b.degree - a.mults.iter().zip(&b.mults).map(|(x, y)| x * y).sum::<i64>())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveClassKind {
    /// `C² = -1`, `K·C = -1`.
    MinusOne,
    /// `C² = -2`, `K·C = 0`.
    MinusTwo,
    Other,
}

/// Labels for the blown-up points, e.g. `E1, E2, E3, E'3, E'2, E'1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    labels: Vec<String>,
}

impl Lattice {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::UnknownLabel(format!("duplicate label {a}")));
            }
        }
        Ok(Lattice { labels })
    }

    /// `E1, ..., Er`.
    pub fn numbered(r: usize) -> Self {
        Lattice { labels: (1..=r).map(|i| format!("E{i}")).collect() }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass::zero(self.rank())
    }

    pub fn line(&self) -> DivisorClass {
        DivisorClass::new(1, vec![0; self.rank()])
    }

    pub fn exceptional(&self, i: usize) -> DivisorClass {
        let mut c = self.zero();
        c.mults[i] = 1;
        c
    }

    pub fn e(&self, label: &str) -> Result<DivisorClass> {
        Ok(self.exceptional(self.index_of(label)?))
    }

    /// `degree·L + Σ coeff·E_label`.
    pub fn class(&self, degree: i64, terms: &[(&str, i64)]) -> Result<DivisorClass> {
        let mut c = self.zero();
        c.degree = degree;
        for &(label, k) in terms {
            c.mults[self.index_of(label)?] += k;
        }
        Ok(c)
    }

    /// Strict transform of a curve of the given degree through the listed
    /// points (each with multiplicity one).
    pub fn strict_transform(&self, degree: i64, through: &[usize]) -> DivisorClass {
        let mut c = self.zero();
        c.degree = degree;
        for &i in through {
            c.mults[i] -= 1;
        }
        c
    }

    pub fn canonical_class(&self) -> DivisorClass {
        DivisorClass::new(-3, vec![1; self.rank()])
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        intersect(a, b)
    }

    fn check(&self, c: &DivisorClass) -> Result<()> {
        if c.rank() != self.rank() {
            return Err(Error::LatticeMismatch(c.rank(), self.rank()));
        }
        Ok(())
    }

    pub fn classify(&self, c: &DivisorClass) -> Result<CurveClassKind> {
        let self_int = self.intersect(c, c)?;
        let k_deg = self.intersect(&self.canonical_class(), c)?;
        Ok(match (self_int, k_deg) {
            (-1, -1) => CurveClassKind::MinusOne,
            (-2, 0) => CurveClassKind::MinusTwo,
            _ => CurveClassKind::Other,
        })
    }

    /// Gram matrix of the basis `(L, E_1, ..., E_r)`.
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let basis: Vec<DivisorClass> = std::iter::once(self.line())
            .chain((0..self.rank()).map(|i| self.exceptional(i)))
            .collect();
        basis
            .iter()
            .map(|a| basis.iter().map(|b| intersect(a, b).unwrap()).collect())
            .collect()
    }

    /// Human-readable form such as `3L - 3E1 - E2 + E3`.
    pub fn display<'a>(&'a self, c: &'a DivisorClass) -> impl fmt::Display + 'a {
        ClassDisplay { lat: self, c }
    }
}

struct ClassDisplay<'a> {
    lat: &'a Lattice,
    c: &'a DivisorClass,
}

impl fmt::Display for ClassDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = std::iter::once((self.c.degree, "L"))
            .chain(self.c.mults.iter().copied().zip(self.lat.labels.iter().map(String::as_str)))
            .filter(|(k, _)| *k != 0);
        let mut first = true;
        for (k, name) in terms {
            let sign = if k < 0 { "-" } else { "+" };
            if first {
                if k < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match k.abs() {
                1 => write!(f, "{name}")?,
                a => write!(f, "{a}{name}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn canonical_class(lat: &Lattice) -> DivisorClass {
    lat.canonical_class()
}

pub fn classify_curve_class(c: &DivisorClass, lat: &Lattice) -> Result<CurveClassKind> {
    lat.classify(c)
}

/// Where an enumerated class comes from in the plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CurveSource {
    /// Exceptional curve over the blown-up point with this index.
    Exceptional(usize),
    /// Strict transform of a line; `in_arrangement` marks the nine branch lines.
    Line { line: ProjLine, in_arrangement: bool },
    /// Strict transform of an irreducible conic through five or more points.
    Conic(Conic),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveClass {
    pub class: DivisorClass,
    pub kind: CurveClassKind,
    pub source: CurveSource,
    /// Indices of the blown-up points on the curve (empty for exceptional curves).
    pub through: Vec<usize>,
}

/// Effective classes determined by the configuration: exceptional curves,
/// strict transforms of the branch lines and of every other line through
/// three or more blown-up points, and strict transforms of irreducible
/// conics through five or more blown-up points.
pub fn config_curve_classes(cfg: &BurniatConfig) -> Result<Vec<CurveClass>> {
    burniat::require_valid(cfg)?;
    let lat = burniat::lattice_for(cfg);
    let points = cfg.blown_up_points();
    let on = |pred: &dyn Fn(&ProjPoint) -> bool| -> Vec<usize> {
        (0..points.len()).filter(|&i| pred(&points[i])).collect()
    };
    let mut out = Vec::new();
    for i in 0..points.len() {
        let class = lat.exceptional(i);
        out.push(CurveClass {
            kind: lat.classify(&class)?,
            class,
            source: CurveSource::Exceptional(i),
            through: vec![],
        });
    }

    let arrangement: Vec<ProjLine> = cfg.lines().cloned().collect();
    let mut lines: Vec<(ProjLine, bool)> = arrangement.iter().map(|l| (l.clone(), true)).collect();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let l = line_through(&points[i], &points[j])?;
            if lines.iter().any(|(m, _)| *m == l) {
                continue;
            }
            if on(&|p| l.contains(p)).len() >= 3 {
                lines.push((l, false));
            }
        }
    }
    for (line, in_arrangement) in lines {
        let through = on(&|p| line.contains(p));
        let class = lat.strict_transform(1, &through);
        out.push(CurveClass {
            kind: lat.classify(&class)?,
            class,
            source: CurveSource::Line { line, in_arrangement },
            through,
        });
    }

    let mut conics: Vec<Conic> = Vec::new();
    for subset in five_subsets(points.len()) {
        let five: [ProjPoint; 5] = subset.map(|i| points[i].clone());
        let Some(c) = Conic::through_five(&five) else { continue };
        if !c.is_irreducible() || conics.iter().any(|d| d.same_conic(&c)) {
            continue;
        }
        conics.push(c);
    }
    for c in conics {
        let through = on(&|p| c.contains(p));
        let class = lat.strict_transform(2, &through);
        out.push(CurveClass {
            kind: lat.classify(&class)?,
            class,
            source: CurveSource::Conic(c),
            through,
        });
    }
    Ok(out)
}

fn five_subsets(n: usize) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        out.push([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DelPezzoStatus {
    /// `K·K` of the blow-up.
    pub degree: i64,
    pub node_count: usize,
    /// Whether (-2)-curves are present, so `-K` is nef and big but not ample.
    pub weak: bool,
}

pub fn del_pezzo_status(cfg: &BurniatConfig) -> Result<DelPezzoStatus> {
    let classes = config_curve_classes(cfg)?;
    let lat = burniat::lattice_for(cfg);
    let k = lat.canonical_class();
    let degree = lat.intersect(&k, &k)?;
    if degree <= 0 {
        return Err(Error::NotDelPezzo(format!("K² = {degree}")));
    }
    for c in &classes {
        let anti = -lat.intersect(&k, &c.class)?;
        if anti < 0 {
            return Err(Error::NotDelPezzo(format!(
                "-K·({}) = {anti}",
                lat.display(&c.class)
            )));
        }
    }
    let node_count = classes.iter().filter(|c| c.kind == CurveClassKind::MinusTwo).count();
    Ok(DelPezzoStatus { degree, node_count, weak: node_count > 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tertiary() -> Lattice {
        Lattice::new(["E1", "E2", "E3", "E'3", "E'2", "E'1"].map(String::from).to_vec()).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let lat = tertiary();
        let l = lat.line();
        assert_eq!(lat.intersect(&l, &l).unwrap(), 1);
        let n1 = lat.class(1, &[("E1", -1), ("E'2", -1), ("E'3", -1)]).unwrap();
        assert_eq!(lat.intersect(&n1, &n1).unwrap(), -2);
        assert_eq!(lat.intersect(&l, &lat.e("E1").unwrap()).unwrap(), 0);
    }

    #[test]
    fn lattice_mismatch() {
        let a = Lattice::numbered(3).line();
        let b = Lattice::numbered(4).line();
        assert_eq!(intersect(&a, &b), Err(Error::LatticeMismatch(3, 4)));
    }

    #[test]
    fn canonical_degrees() {
        for (r, expected) in [(0, 9), (3, 6), (6, 3)] {
            let lat = Lattice::numbered(r);
            let k = canonical_class(&lat);
            assert_eq!(k.degree, -3);
            assert!(k.mults.iter().all(|&m| m == 1));
            assert_eq!(lat.intersect(&k, &k).unwrap(), expected);
        }
    }

    #[test]
    fn classify_examples() {
        let lat = tertiary();
        assert_eq!(classify_curve_class(&lat.e("E1").unwrap(), &lat).unwrap(), CurveClassKind::MinusOne);
        let n1 = lat.class(1, &[("E1", -1), ("E'2", -1), ("E'3", -1)]).unwrap();
        assert_eq!(classify_curve_class(&n1, &lat).unwrap(), CurveClassKind::MinusTwo);
        assert_eq!(classify_curve_class(&lat.line(), &lat).unwrap(), CurveClassKind::Other);
    }

    #[test]
    fn display_form() {
        let lat = tertiary();
        let c = lat.class(3, &[("E1", -3), ("E2", -1), ("E3", 1)]).unwrap();
        assert_eq!(lat.display(&c).to_string(), "3L - 3E1 - E2 + E3");
        assert_eq!(lat.display(&lat.zero()).to_string(), "0");
        assert_eq!(lat.display(&lat.canonical_class()).to_string(), "-3L + E1 + E2 + E3 + E'3 + E'2 + E'1");
    }

    #[test]
    fn gram_matrix_signature() {
        let g = Lattice::numbered(4).gram_matrix();
        for (i, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let expected = match (i, j) {
                    (0, 0) => 1,
                    _ if i == j => -1,
                    _ => 0,
                };
                assert_eq!(v, expected);
            }
        }
    }
}
