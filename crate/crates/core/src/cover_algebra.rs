//! Character combinatorics of abelian covers with group `(Z/2)^n`, and the
//! invariant quintics of the `Z/5` Godeaux construction.
//!
//! Group elements and characters share the bit-vector type [`G2Elt`]; the
//! pairing `⟨g, h⟩` is the parity of `g & h`. Bit `k` holds the `k`-th
//! coordinate, so `(1,0,0)` is `G2Elt(0b001)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::linalg::{kernel, rank};
use crate::plane_geom::{arrangement_singular_points, ProjLine, Rat, SingularPoint};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct G2Elt(pub u32);

impl G2Elt {
    pub const ZERO: G2Elt = G2Elt(0);

    /// Builds an element from its coordinates, `bits[k]` being coordinate `k`.
    pub fn from_coords(bits: &[u8]) -> Self {
        G2Elt(bits.iter().enumerate().map(|(k, &b)| u32::from(b & 1) << k).sum())
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pairing(self, other: G2Elt) -> u32 {
        (self.0 & other.0).count_ones() & 1
    }

    pub fn coords(self, n: usize) -> Vec<u8> {
        (0..n).map(|k| ((self.0 >> k) & 1) as u8).collect()
    }
}

impl std::ops::Add for G2Elt {
    type Output = G2Elt;
    fn add(self, o: G2Elt) -> G2Elt {
        G2Elt(self.0 ^ o.0)
    }
}

impl fmt::Display for G2Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = (32 - self.0.leading_zeros()).max(1) as usize;
        let parts: Vec<String> = self.coords(n).iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn elements(n: usize) -> impl Iterator<Item = G2Elt> {
    (0..1u32 << n).map(G2Elt)
}

pub fn nonzero_elements(n: usize) -> impl Iterator<Item = G2Elt> {
    (1..1u32 << n).map(G2Elt)
}

/// `Ann(g)`: every `h` with `⟨g, h⟩ = 0`, zero included.
pub fn annihilator(g: G2Elt, n: usize) -> BTreeSet<G2Elt> {
    elements(n).filter(|&h| g.pairing(h) == 0).collect()
}

/// Branch lines of a `(Z/2)^n` cover, each carrying the character that
/// gives the local monodromy around it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverAssignment {
    n: usize,
    lines: Vec<ProjLine>,
    chars: Vec<G2Elt>,
}

impl CoverAssignment {
    pub fn new(n: usize, lines: Vec<ProjLine>, chars: Vec<G2Elt>) -> Result<Self> {
        if lines.len() != chars.len() {
            return Err(Error::AssignmentLength { lines: lines.len(), chars: chars.len() });
        }
        for &c in &chars {
            if c.is_zero() {
                return Err(Error::ZeroElement);
            }
            if n >= 32 || c.0 >> n != 0 {
                return Err(Error::CharacterOutOfRange(c.0, n));
            }
        }
        Ok(CoverAssignment { n, lines, chars })
    }

    /// The standard Campedelli assignment: line `j` carries the `(j+1)`-th
    /// nonzero element of `(Z/2)^3`.
    pub fn campedelli(lines: Vec<ProjLine>) -> Result<Self> {
        if lines.len() != 7 {
            return Err(Error::LineCount { expected: 7, found: lines.len() });
        }
        CoverAssignment::new(3, lines, nonzero_elements(3).collect())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn chars(&self) -> &[G2Elt] {
        &self.chars
    }

    fn outside(&self, g: G2Elt) -> impl Iterator<Item = usize> + '_ {
        self.chars.iter().enumerate().filter(move |(_, &c)| g.pairing(c) == 1).map(|(j, _)| j)
    }
}

/// Indices `j` with `chars[j] ∉ Ann(g)`: the branch lines in `y_g² = Π δ_j`.
pub fn square_equation(g: G2Elt, asg: &CoverAssignment) -> Result<Vec<usize>> {
    if g.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(asg.outside(g).collect())
}

/// `y_gi · y_gj = y_(gi+gj) · Π δ_k` over the lines whose character lies
/// outside `Ann(gi) ∪ Ann(gj)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverRelation {
    pub gi: G2Elt,
    pub gj: G2Elt,
    pub sum: G2Elt,
    pub factor_lines: Vec<usize>,
}

pub fn product_relation(gi: G2Elt, gj: G2Elt, asg: &CoverAssignment) -> Result<CoverRelation> {
    if gi.is_zero() || gj.is_zero() || gi == gj {
        return Err(Error::DegeneratePair);
    }
    let factor_lines = asg
        .chars
        .iter()
        .enumerate()
        .filter(|(_, &c)| gi.pairing(c) == 1 && gj.pairing(c) == 1)
        .map(|(k, _)| k)
        .collect();
    Ok(CoverRelation { gi, gj, sum: gi + gj, factor_lines })
}

/// All product relations for unordered pairs of distinct nonzero elements.
pub fn all_product_relations(asg: &CoverAssignment) -> Vec<CoverRelation> {
    let n = asg.rank();
    let mut out = Vec::new();
    for gi in nonzero_elements(n) {
        for gj in nonzero_elements(n).filter(|&g| g > gi) {
            out.push(product_relation(gi, gj, asg).expect("distinct nonzero pair"));
        }
    }
    out
}

/// Squaring a product relation must reproduce the square equations:
/// `sq(gi) ⊎ sq(gj) = sq(gi+gj) ⊎ 2·factors` as multisets of lines.
pub fn relations_consistent(asg: &CoverAssignment) -> bool {
    fn multiset(parts: &[&[usize]]) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for part in parts {
            for &j in *part {
                *m.entry(j).or_insert(0) += 1;
            }
        }
        m
    }
    all_product_relations(asg).iter().all(|rel| {
        let sq = |g| square_equation(g, asg).expect("nonzero");
        let (a, b, c) = (sq(rel.gi), sq(rel.gj), sq(rel.sum));
        let f = &rel.factor_lines;
        multiset(&[&a, &b]) == multiset(&[&c, f, f])
    })
}

fn coefficient_columns(lines: &[ProjLine]) -> Vec<Vec<Rat>> {
    (0..3)
        .map(|k| lines.iter().map(|l| Rat::from_integer(l.coords()[k].clone())).collect())
        .collect()
}

/// Linear relations `Σ λ_j δ_j = 0` among the seven line equations. Since
/// `x_χ²` pulls back to `δ_j`, each relation is a diagonal quadric
/// `Σ λ_j x_j² = 0` on `P^6`. Returned as the reduced echelon kernel basis.
pub fn campedelli_quadrics(lines: &[ProjLine]) -> Result<Vec<Vec<Rat>>> {
    if lines.len() != 7 {
        return Err(Error::LineCount { expected: 7, found: lines.len() });
    }
    let m = coefficient_columns(lines);
    let r = rank(&m);
    if r != 3 {
        return Err(Error::RankDeficient(r));
    }
    Ok(kernel(&m, 7))
}

/// Whether `Σ λ_j δ_j` vanishes identically as a linear form.
pub fn relation_holds(lines: &[ProjLine], lambda: &[Rat]) -> bool {
    coefficient_columns(lines)
        .iter()
        .all(|row| row.iter().zip(lambda).map(|(a, b)| a * b).sum::<Rat>().is_zero())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmoothnessReport {
    pub smooth: bool,
    /// Points on three or more of the lines.
    pub bad_points: Vec<SingularPoint>,
}

pub fn campedelli_smoothness(lines: &[ProjLine]) -> Result<SmoothnessReport> {
    let bad_points: Vec<SingularPoint> = arrangement_singular_points(lines)?
        .into_iter()
        .filter(|s| s.multiplicity >= 3)
        .collect();
    Ok(SmoothnessReport { smooth: bad_points.is_empty(), bad_points })
}

/// Weights of `Z/5` on the coordinates of `P^3`.
pub const GODEAUX_WEIGHTS: [u32; 4] = [1, 2, 3, 4];

pub type Exponent = [u32; 4];

/// Degree-5 monomials `x1^a1 x2^a2 x3^a3 x4^a4` with `Σ w_i a_i ≡ residue
/// (mod 5)`, in descending lexicographic order of exponents (`x1^5` first).
pub fn godeaux_invariant_monomials(residue: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (0..=5u32).rev() {
        for b in (0..=5 - a).rev() {
            for c in (0..=5 - a - b).rev() {
                let e = [a, b, c, 5 - a - b - c];
                if weighted_degree(&e) % 5 == residue % 5 {
                    out.push(e);
                }
            }
        }
    }
    out
}

fn weighted_degree(e: &Exponent) -> u32 {
    e.iter().zip(GODEAUX_WEIGHTS).map(|(a, w)| a * w).sum()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeActionReport {
    pub free: bool,
    /// Coordinate points `e_i` (index `i`) lying on the quintic.
    pub fixed_points_hit: Vec<usize>,
}

/// The nontrivial elements of `Z/5` fix exactly the four coordinate points,
/// so the action on an invariant quintic is free iff the quintic misses all
/// of them.
pub fn godeaux_free_action(coeffs: &BTreeMap<Exponent, Rat>) -> Result<FreeActionReport> {
    if coeffs.values().all(Zero::is_zero) {
        return Err(Error::EmptyPolynomial);
    }
    for (e, c) in coeffs {
        if !c.is_zero() && (e.iter().sum::<u32>() != 5 || !weighted_degree(e).is_multiple_of(5)) {
            return Err(Error::NotInvariant(*e));
        }
    }
    let fixed_points_hit = (0..4)
        .filter(|&i| evaluate_at_coordinate_point(coeffs, i).is_zero())
        .collect::<Vec<_>>();
    Ok(FreeActionReport { free: fixed_points_hit.is_empty(), fixed_points_hit })
}

fn evaluate_at_coordinate_point(coeffs: &BTreeMap<Exponent, Rat>, i: usize) -> Rat {
    coeffs
        .iter()
        .filter(|(e, _)| (0..4).all(|k| k == i || e[k] == 0))
        .map(|(_, c)| c.clone())
        .sum()
}
