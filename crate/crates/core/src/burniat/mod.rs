//! Burniat configurations: three pencils of three lines through the
//! vertices of a triangle, plus the `m` extra points where one line of each
//! pencil meets.
//!
//! Pencil `i` (0-based) passes through vertex `P_i` and contains the side
//! `P_i P_(i+1)`, indices mod 3. For `m = 3` the extra points are stored in
//! the order `P4, P5, P6 = P'3, P'2, P'1`.

use std::fmt;

use crate::picard_lattice::Lattice;
use crate::plane_geom::{arrangement_singular_points, collinear, line_through, ProjLine, ProjPoint, Projectivity};
use crate::{Error, Result};

mod bridge;
mod divisors;
mod family;

pub use bridge::{campedelli_bridge, CampedelliBridge};
pub use divisors::{
    branch_divisor_classes, detect_degeneration, extended_branch_classes, family_base, gamma_base, nodal_classes, BranchClasses,
    Component, Degeneration, DegenerationKind, ExtendedClasses, FamilyBase,
};
pub use family::{classify_family, nodal_vertex, relabel_tertiary, tertiary_pattern_failures, FamilyDescriptor, FamilyName};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BurniatConfig {
    pub vertices: [ProjPoint; 3],
    pub extra_points: Vec<ProjPoint>,
    pub pencils: [[ProjLine; 3]; 3],
}

impl BurniatConfig {
    pub fn new(vertices: [ProjPoint; 3], extra_points: Vec<ProjPoint>, pencils: [[ProjLine; 3]; 3]) -> Self {
        BurniatConfig { vertices, extra_points, pencils }
    }

    pub fn m(&self) -> usize {
        self.extra_points.len()
    }

    /// The nine lines, pencil by pencil.
    pub fn lines(&self) -> impl Iterator<Item = &ProjLine> {
        self.pencils.iter().flatten()
    }

    /// Vertices followed by the extra points; the order of the lattice basis.
    pub fn blown_up_points(&self) -> Vec<ProjPoint> {
        self.vertices.iter().chain(&self.extra_points).cloned().collect()
    }

    /// Multiplicities of `p` on the three pencils.
    pub fn multiplicity_triple(&self, p: &ProjPoint) -> [usize; 3] {
        self.pencils.clone().map(|pencil| pencil.iter().filter(|l| l.contains(p)).count())
    }

    /// Side `P_i P_(i+1)`, `None` if the two vertices coincide.
    pub fn side(&self, i: usize) -> Option<ProjLine> {
        line_through(&self.vertices[i], &self.vertices[(i + 1) % 3]).ok()
    }

    /// `P'_i` (0-based `i`, so `prime(0) = P'1`) for `m = 3`.
    pub fn prime(&self, i: usize) -> &ProjPoint {
        &self.extra_points[2 - i % 3]
    }

    pub fn transform(&self, t: &Projectivity) -> BurniatConfig {
        BurniatConfig {
            vertices: self.vertices.clone().map(|p| t.apply_point(&p)),
            extra_points: self.extra_points.iter().map(|p| t.apply_point(p)).collect(),
            pencils: self.pencils.clone().map(|pen| pen.map(|l| t.apply_line(&l))),
        }
    }
}

/// Lattice labels: `E1, E2, E3` for the vertices, then `E'3, E'2, E'1` when
/// `m = 3` and `E4, E5, ...` otherwise.
pub fn lattice_labels(m: usize) -> Vec<String> {
    let mut labels: Vec<String> = (1..=3).map(|i| format!("E{i}")).collect();
    if m == 3 {
        labels.extend(["E'3", "E'2", "E'1"].map(String::from));
    } else {
        labels.extend((4..4 + m).map(|i| format!("E{i}")));
    }
    labels
}

pub fn lattice_for(cfg: &BurniatConfig) -> Lattice {
    Lattice::new(lattice_labels(cfg.m())).expect("labels are distinct")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    CollinearVertices,
    /// Two of the nine lines coincide; positions are `(pencil, line)`.
    DuplicateLine((usize, usize), (usize, usize)),
    LineMissesVertex { pencil: usize, line: usize },
    MissingSide { pencil: usize },
    TooManyExtraPoints(usize),
    DuplicateExtraPoint(usize, usize),
    ExtraPointIsVertex(usize),
    ExtraPointOnSide(usize),
    ExtraPointWrongTriple { index: usize, triple: [usize; 3] },
    UnlistedTriplePoint { point: ProjPoint, multiplicity: usize },
    /// A non-vertex point on four or more lines.
    HighMultiplicity { point: ProjPoint, multiplicity: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            CollinearVertices => write!(f, "vertices are collinear"),
            DuplicateLine(a, b) => write!(
                f,
                "line {} of pencil {} equals line {} of pencil {}",
                a.1 + 1,
                a.0 + 1,
                b.1 + 1,
                b.0 + 1
            ),
            LineMissesVertex { pencil, line } => {
                write!(f, "line {} of pencil {} misses P{}", line + 1, pencil + 1, pencil + 1)
            }
            MissingSide { pencil } => write!(
                f,
                "pencil {} lacks the side P{}P{}",
                pencil + 1,
                pencil + 1,
                (pencil + 1) % 3 + 1
            ),
            TooManyExtraPoints(m) => write!(f, "{m} extra points, at most 4 allowed"),
            DuplicateExtraPoint(a, b) => write!(f, "extra points {} and {} coincide", a + 4, b + 4),
            ExtraPointIsVertex(i) => write!(f, "extra point P{} is a vertex", i + 4),
            ExtraPointOnSide(i) => write!(f, "extra point P{} lies on a side of the triangle", i + 4),
            ExtraPointWrongTriple { index, triple } => write!(
                f,
                "extra point P{} has multiplicities {:?}, expected [1, 1, 1]",
                index + 4,
                triple
            ),
            UnlistedTriplePoint { point, multiplicity } => {
                write!(f, "unlisted point {point} of multiplicity {multiplicity}")
            }
            HighMultiplicity { point, multiplicity } => {
                write!(f, "point {point} has multiplicity {multiplicity} > 3")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub m: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        self.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    }
}

pub fn validate_config(cfg: &BurniatConfig) -> ValidationReport {
    use Violation::*;
    let mut violations = Vec::new();
    let [p1, p2, p3] = &cfg.vertices;
    if collinear(p1, p2, p3) {
        violations.push(CollinearVertices);
    }

    let positions: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
    let line_at = |(i, j): (usize, usize)| &cfg.pencils[i][j];
    let mut duplicates = false;
    for (a, &pa) in positions.iter().enumerate() {
        for &pb in &positions[a + 1..] {
            if line_at(pa) == line_at(pb) {
                violations.push(DuplicateLine(pa, pb));
                duplicates = true;
            }
        }
    }

    for (i, pencil) in cfg.pencils.iter().enumerate() {
        for (j, line) in pencil.iter().enumerate() {
            if !line.contains(&cfg.vertices[i]) {
                violations.push(LineMissesVertex { pencil: i, line: j });
            }
        }
        if let Some(side) = cfg.side(i) {
            if !pencil.contains(&side) {
                violations.push(MissingSide { pencil: i });
            }
        }
    }

    let m = cfg.m();
    if m > 4 {
        violations.push(TooManyExtraPoints(m));
    }
    let sides: Vec<ProjLine> = (0..3).filter_map(|i| cfg.side(i)).collect();
    for (k, p) in cfg.extra_points.iter().enumerate() {
        if let Some(j) = cfg.extra_points[..k].iter().position(|q| q == p) {
            violations.push(DuplicateExtraPoint(j, k));
            continue;
        }
        if cfg.vertices.contains(p) {
            violations.push(ExtraPointIsVertex(k));
            continue;
        }
        if sides.iter().any(|s| s.contains(p)) {
            violations.push(ExtraPointOnSide(k));
        }
        let triple = cfg.multiplicity_triple(p);
        if triple != [1, 1, 1] {
            violations.push(ExtraPointWrongTriple { index: k, triple });
        }
    }

    if !duplicates {
        let lines: Vec<ProjLine> = cfg.lines().cloned().collect();
        let singular = arrangement_singular_points(&lines).expect("lines are distinct");
        for s in singular {
            if cfg.vertices.contains(&s.point) {
                continue;
            }
            if s.multiplicity >= 4 {
                violations.push(HighMultiplicity { point: s.point.clone(), multiplicity: s.multiplicity });
            }
            if s.multiplicity >= 3 && !cfg.extra_points.contains(&s.point) {
                violations.push(UnlistedTriplePoint { point: s.point, multiplicity: s.multiplicity });
            }
        }
    }
    ValidationReport { m, violations }
}

pub(crate) fn require_valid(cfg: &BurniatConfig) -> Result<()> {
    let report = validate_config(cfg);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(report.summary()))
    }
}

/// Numerical invariants of a minimal surface of general type.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Invariants {
    pub p_g: i64,
    pub q: i64,
    pub k2: i64,
    pub chi: i64,
    pub p2: i64,
}

impl Invariants {
    /// Fills in `χ = 1 - q + p_g` and `P_2 = K² + χ`.
    pub fn from_pg_q_k2(p_g: i64, q: i64, k2: i64) -> Self {
        let chi = 1 - q + p_g;
        Invariants { p_g, q, k2, chi, p2: k2 + chi }
    }

    pub fn identities_hold(&self) -> bool {
        self.chi == 1 - self.q + self.p_g && self.p2 == self.k2 + self.chi
    }

    /// `1 ≤ K² ≤ 9χ`.
    pub fn bmy_holds(&self) -> bool {
        1 <= self.k2 && self.k2 <= 9 * self.chi
    }
}

pub fn burniat_invariants(cfg: &BurniatConfig) -> Result<Invariants> {
    require_valid(cfg)?;
    Ok(Invariants::from_pg_q_k2(0, 0, 6 - cfg.m() as i64))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SingularityKind {
    Type310,
    Type111,
    Unsupported,
}

impl SingularityKind {
    /// Multiplicity triples are compared as multisets.
    pub fn from_triple(triple: [usize; 3]) -> Self {
        let mut sorted = triple;
        sorted.sort_unstable();
        match sorted {
            [0, 1, 3] => SingularityKind::Type310,
            [1, 1, 1] => SingularityKind::Type111,
            _ => SingularityKind::Unsupported,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SingularityLedgerEntry {
    pub point: ProjPoint,
    /// Multiplicities in `D1, D2, D3`.
    pub triple: [usize; 3],
    pub kind: SingularityKind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SingularityLedger {
    pub entries: Vec<SingularityLedgerEntry>,
    pub type310: usize,
    pub type111: usize,
    /// `9 - #(3,1,0) - #(1,1,1)`.
    pub k2: i64,
    /// `3 - #(3,1,0)`.
    pub pg_minus_q: i64,
}

/// Starting from the bidouble cover branched on three smooth cubics
/// (`K² = 9`, `p_g = 3`, `q = 0`), each `(3,1,0)` point lowers both `K²` and
/// `p_g - q` by one and each `(1,1,1)` point lowers `K²` by one.
pub fn derive_from_entries(entries: Vec<SingularityLedgerEntry>) -> Result<SingularityLedger> {
    if let Some(e) = entries.iter().find(|e| e.kind == SingularityKind::Unsupported) {
        return Err(Error::UnsupportedSingularity(e.triple));
    }
    let type310 = entries.iter().filter(|e| e.kind == SingularityKind::Type310).count();
    let type111 = entries.len() - type310;
    Ok(SingularityLedger {
        entries,
        type310,
        type111,
        k2: 9 - type310 as i64 - type111 as i64,
        pg_minus_q: 3 - type310 as i64,
    })
}

pub fn singularity_ledger(cfg: &BurniatConfig) -> Result<SingularityLedger> {
    let invariants = burniat_invariants(cfg)?;
    let lines: Vec<ProjLine> = cfg.lines().cloned().collect();
    let entries = arrangement_singular_points(&lines)?
        .into_iter()
        .filter(|s| s.multiplicity >= 3)
        .map(|s| {
            let triple = cfg.multiplicity_triple(&s.point);
            SingularityLedgerEntry { point: s.point, triple, kind: SingularityKind::from_triple(triple) }
        })
        .collect();
    let ledger = derive_from_entries(entries)?;
    if ledger.k2 != invariants.k2 || ledger.pg_minus_q != invariants.p_g - invariants.q {
        return Err(Error::IdentityFailed(format!(
            "ledger gives K² = {}, p_g - q = {}; expected {}, {}",
            ledger.k2,
            ledger.pg_minus_q,
            invariants.k2,
            invariants.p_g - invariants.q
        )));
    }
    Ok(ledger)
}

/// The reference configuration for each family, on the standard triangle.
pub mod examples {
    use super::*;

    pub(crate) fn p(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_ints(x, y, z).unwrap()
    }

    pub(crate) fn l(a: i64, b: i64, c: i64) -> ProjLine {
        ProjLine::from_ints(a, b, c).unwrap()
    }

    fn standard(extra: Vec<ProjPoint>, pencils: [[ProjLine; 3]; 3]) -> BurniatConfig {
        BurniatConfig::new([p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)], extra, pencils)
    }

    pub fn primary() -> BurniatConfig {
        standard(
            vec![],
            [
                [l(0, 0, 1), l(0, 1, -1), l(0, 1, -2)],
                [l(1, 0, 0), l(1, 0, -1), l(1, 0, -3)],
                [l(0, 1, 0), l(1, -2, 0), l(1, -5, 0)],
            ],
        )
    }

    pub fn secondary_k5() -> BurniatConfig {
        standard(
            vec![p(1, 1, 1)],
            [
                [l(0, 0, 1), l(0, 1, -1), l(0, 1, -2)],
                [l(1, 0, 0), l(1, 0, -1), l(1, 0, -3)],
                [l(0, 1, 0), l(1, -1, 0), l(1, -5, 0)],
            ],
        )
    }

    pub fn secondary_non_nodal() -> BurniatConfig {
        standard(
            vec![p(1, 1, 1), p(3, 2, 1)],
            [
                [l(0, 0, 1), l(0, 1, -1), l(0, 1, -2)],
                [l(1, 0, 0), l(1, 0, -1), l(1, 0, -3)],
                [l(0, 1, 0), l(1, -1, 0), l(2, -3, 0)],
            ],
        )
    }

    pub fn secondary_nodal() -> BurniatConfig {
        standard(
            vec![p(1, 1, 1), p(1, 2, 2)],
            [
                [l(0, 0, 1), l(0, 1, -1), l(0, 1, -3)],
                [l(1, 0, 0), l(1, 0, -1), l(2, 0, -1)],
                [l(0, 1, 0), l(1, -1, 0), l(2, -1, 0)],
            ],
        )
    }

    /// `P'1 = (2:1:2)`, `P'2 = (2:1:1)`, `P'3 = (1:1:1)`.
    pub fn tertiary() -> BurniatConfig {
        standard(
            vec![p(1, 1, 1), p(2, 1, 1), p(2, 1, 2)],
            [
                [l(0, 0, 1), l(0, 1, -1), l(0, 2, -1)],
                [l(1, 0, 0), l(1, 0, -1), l(1, 0, -2)],
                [l(0, 1, 0), l(1, -2, 0), l(1, -1, 0)],
            ],
        )
    }

    pub fn quaternary() -> BurniatConfig {
        standard(
            vec![p(1, 1, 1), p(-1, 1, 1), p(1, -1, 1), p(-1, -1, 1)],
            [
                [l(0, 0, 1), l(0, 1, -1), l(0, 1, 1)],
                [l(1, 0, 0), l(1, 0, -1), l(1, 0, 1)],
                [l(0, 1, 0), l(1, -1, 0), l(1, 1, 0)],
            ],
        )
    }

    pub fn all() -> Vec<BurniatConfig> {
        named().into_iter().map(|(_, c)| c).collect()
    }

    pub fn named() -> Vec<(&'static str, BurniatConfig)> {
        vec![
            ("primary", primary()),
            ("secondary_k5", secondary_k5()),
            ("secondary_k4_non_nodal", secondary_non_nodal()),
            ("secondary_k4_nodal", secondary_nodal()),
            ("tertiary", tertiary()),
            ("quaternary", quaternary()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn golden_configs_are_valid() {
        for (cfg, m) in all().iter().zip([0, 1, 2, 2, 3, 4]) {
            let rep = validate_config(cfg);
            assert!(rep.is_valid(), "m={m}: {}", rep.summary());
            assert_eq!(rep.m, m);
        }
    }

    #[test]
    fn unlisted_triple_point() {
        let mut cfg = primary();
        cfg.pencils[2][1] = l(1, -1, 0);
        let rep = validate_config(&cfg);
        assert_eq!(
            rep.violations,
            vec![Violation::UnlistedTriplePoint { point: p(1, 1, 1), multiplicity: 3 }]
        );
    }

    #[test]
    fn duplicate_line() {
        let mut cfg = primary();
        cfg.pencils[0][2] = cfg.pencils[0][1].clone();
        let rep = validate_config(&cfg);
        assert!(rep.violations.contains(&Violation::DuplicateLine((0, 1), (0, 2))));
    }

    #[test]
    fn structural_violations() {
        let mut cfg = primary();
        cfg.pencils[1][0] = l(1, 0, -7);
        let rep = validate_config(&cfg);
        assert!(rep.violations.contains(&Violation::MissingSide { pencil: 1 }));

        let mut cfg = primary();
        cfg.pencils[0][2] = l(1, 1, 1);
        assert!(validate_config(&cfg).violations.contains(&Violation::LineMissesVertex { pencil: 0, line: 2 }));

        let mut cfg = primary();
        cfg.extra_points.push(p(3, 1, 1));
        assert!(validate_config(&cfg)
            .violations
            .contains(&Violation::ExtraPointWrongTriple { index: 0, triple: [1, 1, 0] }));

        let mut cfg = secondary_k5();
        cfg.extra_points.push(p(1, 1, 1));
        assert!(validate_config(&cfg).violations.contains(&Violation::DuplicateExtraPoint(0, 1)));

        let mut cfg = primary();
        cfg.vertices[2] = p(1, 1, 0);
        assert!(validate_config(&cfg).violations.contains(&Violation::CollinearVertices));
    }

    #[test]
    fn invariants_by_m() {
        assert_eq!(burniat_invariants(&primary()).unwrap(), Invariants { p_g: 0, q: 0, k2: 6, chi: 1, p2: 7 });
        assert_eq!(burniat_invariants(&tertiary()).unwrap().k2, 3);
        assert_eq!(burniat_invariants(&quaternary()).unwrap().k2, 2);
        let mut bad = primary();
        bad.pencils[2][1] = l(1, -1, 0);
        assert!(matches!(burniat_invariants(&bad), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn invariant_identities() {
        for k2 in 1..=9 {
            let inv = Invariants::from_pg_q_k2(0, 0, k2);
            assert!(inv.identities_hold() && inv.bmy_holds());
        }
        assert!(!Invariants::from_pg_q_k2(0, 0, 10).bmy_holds());
    }

    #[test]
    fn ledger_primary() {
        let ledger = singularity_ledger(&primary()).unwrap();
        assert_eq!(ledger.entries.len(), 3);
        assert!(ledger.entries.iter().all(|e| e.kind == SingularityKind::Type310));
        // P1 lies on the three lines of D1 and on the side y = 0 of D3
        let e1 = ledger.entries.iter().find(|e| e.point == p(1, 0, 0)).unwrap();
        assert_eq!(e1.triple, [3, 0, 1]);
        assert_eq!((ledger.k2, ledger.pg_minus_q), (6, 0));
    }

    #[test]
    fn ledger_tertiary() {
        let ledger = singularity_ledger(&tertiary()).unwrap();
        assert_eq!((ledger.type310, ledger.type111), (3, 3));
        assert_eq!(ledger.k2, 3);
    }

    #[test]
    fn ledger_refuses_unsupported() {
        assert_eq!(SingularityKind::from_triple([2, 2, 0]), SingularityKind::Unsupported);
        assert_eq!(SingularityKind::from_triple([1, 0, 3]), SingularityKind::Type310);
        let entry = SingularityLedgerEntry { point: p(1, 1, 1), triple: [2, 2, 0], kind: SingularityKind::Unsupported };
        assert_eq!(derive_from_entries(vec![entry]), Err(Error::UnsupportedSingularity([2, 2, 0])));
    }

    #[test]
    fn labels() {
        assert_eq!(lattice_labels(3), ["E1", "E2", "E3", "E'3", "E'2", "E'1"]);
        assert_eq!(lattice_labels(2), ["E1", "E2", "E3", "E4", "E5"]);
        assert_eq!(tertiary().prime(0), &p(2, 1, 2));
    }
}
