//! The smoothing `w² = uv + τ²` of a node after the base change `t = τ²`,
//! with the sign action of `G = (Z/2)²` and its lifts to the small
//! resolution where `ξ = (w-τ)/u = v/(w+τ)` is a coordinate.

use std::fmt;

use crate::plane_geom::Rat;
use crate::poly::{Exp, Poly, TAU, U, V, W};
use crate::{Error, Result};

/// `w² - uv - τ²`.
pub fn relation() -> Poly {
    &(&Poly::var(W).pow(2) - &(&Poly::var(U) * &Poly::var(V))) - &Poly::var(TAU).pow(2)
}

/// Rewrites `w² → uv + τ²` until every term has `w`-degree at most one.
pub fn normal_form(p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        let k = e[W] / 2;
        let rest: Exp = [e[U], e[V], e[W] % 2, e[TAU]];
        // (uv + τ²)^k, expanded
        let base = &(&Poly::var(U) * &Poly::var(V)) + &Poly::var(TAU).pow(2);
        out = &out + &(&base.pow(k) * &Poly::monomial(rest, c.clone()));
    }
    out
}

pub fn rational_equal(n1: &Poly, d1: &Poly, n2: &Poly, d2: &Poly) -> Result<bool> {
    if normal_form(d1).is_zero() || normal_form(d2).is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(normal_form(&(&(n1 * d2) - &(n2 * d1))).is_zero())
}

/// `(u, v, w, τ) ↦ (ε_u u, ε_v v, ε_w w, ε_τ τ)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedMonomialMap {
    pub signs: [i8; 4],
}

impl SignedMonomialMap {
    pub const IDENTITY: SignedMonomialMap = SignedMonomialMap { signs: [1; 4] };

    pub fn new(signs: [i8; 4]) -> Self {
        assert!(signs.iter().all(|s| s.abs() == 1), "signs must be ±1");
        SignedMonomialMap { signs }
    }

    /// Lift of a downstairs sign map `(ε_u, ε_v, ε_w)` with the given `ε_τ`.
    pub fn lift(sigma: [i8; 3], eps_tau: i8) -> Self {
        SignedMonomialMap::new([sigma[0], sigma[1], sigma[2], eps_tau])
    }

    pub fn compose(self, other: SignedMonomialMap) -> Self {
        SignedMonomialMap { signs: std::array::from_fn(|i| self.signs[i] * other.signs[i]) }
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        p.sign_substitute(self.signs)
    }

    pub fn eps_tau(&self) -> i8 {
        self.signs[TAU]
    }
}

pub const SIGMA1: [i8; 3] = [1, 1, -1];
pub const SIGMA2: [i8; 3] = [-1, -1, 1];
pub const SIGMA3: [i8; 3] = [-1, -1, -1];

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientInvariants {
    /// `x = u², y = v², z = uv, s = w², t = τ²`, by name.
    pub generators: Vec<(&'static str, Poly)>,
    /// `z² - xy` in terms of `u, v`.
    pub relation: Poly,
    pub verified: bool,
}

pub fn quotient_invariants() -> QuotientInvariants {
    let (u, v, w, tau) = (Poly::var(U), Poly::var(V), Poly::var(W), Poly::var(TAU));
    let generators = vec![
        ("x", u.pow(2)),
        ("y", v.pow(2)),
        ("z", &u * &v),
        ("s", w.pow(2)),
        ("t", tau.pow(2)),
    ];
    let g = |name: &str| generators.iter().find(|(n, _)| *n == name).map(|(_, p)| p.clone()).unwrap();
    let fixed = generators.iter().all(|(_, p)| {
        [SIGMA1, SIGMA2].iter().all(|s| SignedMonomialMap::lift(*s, 1).apply(p) == *p)
    });
    let rel = &g("z").pow(2) - &(&g("x") * &g("y"));
    let family = normal_form(&(&(&g("s") - &g("z")) - &g("t")));
    QuotientInvariants { relation: rel.clone(), verified: fixed && rel.is_zero() && family.is_zero(), generators }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LiftKind {
    BiregularFixesTau,
    BiregularMovesTau,
    FlopBirational,
}

impl fmt::Display for LiftKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftKind::BiregularFixesTau => "biregular, fixes τ",
            LiftKind::BiregularMovesTau => "biregular, moves τ",
            LiftKind::FlopBirational => "flop (birational)",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftClassification {
    pub kind: LiftKind,
    /// `ξ∘g` as numerator and denominator.
    pub numerator: Poly,
    pub denominator: Poly,
    /// Which of `ξ, -ξ, η, -η` it equals.
    pub matched: &'static str,
}

pub fn xi() -> (Poly, Poly) {
    (&Poly::var(W) - &Poly::var(TAU), Poly::var(U))
}

pub fn eta() -> (Poly, Poly) {
    (&Poly::var(W) + &Poly::var(TAU), Poly::var(U))
}

pub fn lift_action(g: SignedMonomialMap) -> Result<LiftClassification> {
    if !normal_form(&g.apply(&relation())).is_zero() {
        return Err(Error::NotALift);
    }
    let (xn, xd) = xi();
    let (numerator, denominator) = (g.apply(&xn), g.apply(&xd));
    let minus = Rat::from_integer((-1).into());
    let (en, ed) = eta();
    let candidates = [
        ("ξ", xn.clone(), true),
        ("-ξ", xn.scale(&minus), true),
        ("η", en.clone(), false),
        ("-η", en.scale(&minus), false),
    ];
    for (name, n, regular) in candidates {
        let d = if regular { &xd } else { &ed };
        if rational_equal(&numerator, &denominator, &n, d)? {
            let kind = match (regular, g.eps_tau()) {
                (false, _) => LiftKind::FlopBirational,
                (true, 1) => LiftKind::BiregularFixesTau,
                (true, _) => LiftKind::BiregularMovesTau,
            };
            return Ok(LiftClassification { kind, numerator, denominator, matched: name });
        }
    }
    Err(Error::IdentityFailed(format!("ξ∘g = ({numerator})/({denominator}) matches none of ±ξ, ±η")))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftRow {
    pub sigma: &'static str,
    pub eps_tau: i8,
    pub map: SignedMonomialMap,
    pub classification: LiftClassification,
}

/// One choice of `ε_τ` for each of `σ1, σ2, σ3`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftAssignment {
    pub eps_tau: [i8; 3],
    /// Closed under composition, i.e. `ε_τ(σ3) = ε_τ(σ1)·ε_τ(σ2)`.
    pub is_group: bool,
    pub all_biregular: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupLiftTable {
    pub rows: Vec<LiftRow>,
    pub assignments: Vec<LiftAssignment>,
    /// No action fixing `τ` is biregular.
    pub fixing_lifts_include_flop: bool,
    pub biregular_groups: Vec<[i8; 3]>,
    pub every_biregular_group_moves_tau: bool,
}

impl GroupLiftTable {
    pub fn dichotomy_holds(&self) -> bool {
        self.fixing_lifts_include_flop && !self.biregular_groups.is_empty() && self.every_biregular_group_moves_tau
    }

    pub fn kind(&self, sigma: usize, eps_tau: i8) -> LiftKind {
        self.rows[2 * sigma + usize::from(eps_tau < 0)].classification.kind
    }
}

pub fn group_lift_table() -> Result<GroupLiftTable> {
    let sigmas = [("σ1", SIGMA1), ("σ2", SIGMA2), ("σ3", SIGMA3)];
    let mut rows = Vec::new();
    for (name, s) in sigmas {
        for eps in [1, -1] {
            let map = SignedMonomialMap::lift(s, eps);
            rows.push(LiftRow { sigma: name, eps_tau: eps, map, classification: lift_action(map)? });
        }
    }
    let kind = |i: usize, eps: i8| rows[2 * i + usize::from(eps < 0)].classification.kind;

    let mut assignments = Vec::new();
    for bits in 0..8u8 {
        let eps: [i8; 3] = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
        // each σ_i is an involution with ε_τ² = 1, so closure reduces to σ1σ2 = σ3
        let lifted: [SignedMonomialMap; 3] = std::array::from_fn(|i| SignedMonomialMap::lift(sigmas[i].1, eps[i]));
        let is_group = lifted[0].compose(lifted[1]) == lifted[2];
        let all_biregular = (0..3).all(|i| kind(i, eps[i]) != LiftKind::FlopBirational);
        assignments.push(LiftAssignment { eps_tau: eps, is_group, all_biregular });
    }
    let fixing_lifts_include_flop = (0..3).any(|i| kind(i, 1) == LiftKind::FlopBirational);
    let biregular_groups: Vec<[i8; 3]> =
        assignments.iter().filter(|a| a.is_group && a.all_biregular).map(|a| a.eps_tau).collect();
    let every_biregular_group_moves_tau = biregular_groups.iter().all(|e| e.contains(&-1));
    Ok(GroupLiftTable { rows, assignments, fixing_lifts_include_flop, biregular_groups, every_biregular_group_moves_tau })
}

/// `ξ·η = v/u` on the total space.
pub fn xi_eta_consistent() -> bool {
    let (xn, xd) = xi();
    let (en, ed) = eta();
    rational_equal(&(&xn * &en), &(&xd * &ed), &Poly::var(V), &Poly::var(U)).unwrap_or(false)
}

/// Numerator and denominator of `v/(w+τ)`, the second expression for `ξ`.
pub fn xi_alt() -> (Poly, Poly) {
    (Poly::var(V), &Poly::var(W) + &Poly::var(TAU))
}
