use std::fmt;

use super::{require_valid, BurniatConfig};
use crate::plane_geom::collinear;
use crate::Result;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyName {
    Primary,
    SecondaryK5,
    SecondaryK4NonNodal,
    SecondaryK4Nodal,
    Tertiary,
    Quaternary,
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyName::Primary => "primary",
            FamilyName::SecondaryK5 => "secondary",
            FamilyName::SecondaryK4NonNodal => "secondary non nodal",
            FamilyName::SecondaryK4Nodal => "secondary nodal",
            FamilyName::Tertiary => "tertiary",
            FamilyName::Quaternary => "quaternary",
        })
    }
}

/// One row of the classification table, plus the node count read off the
/// configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyDescriptor {
    pub name: FamilyName,
    pub k2: i64,
    pub dim: i64,
    pub is_connected_component: bool,
    pub note: &'static str,
    pub pi1: &'static str,
    /// Lines joining a vertex to two extra points; each gives a node on the
    /// anticanonical model.
    pub node_count: usize,
    pub nodal_vertex: Option<usize>,
    /// For `m = 3`, the indices `i` where `P_i, P'_(i+1), P'_(i+2)` fail to
    /// be collinear. Empty when the pattern holds.
    pub pattern_failures: Vec<usize>,
}

impl FamilyDescriptor {
    pub fn pattern_ok(&self) -> bool {
        self.pattern_failures.is_empty()
    }
}

/// Vertex `k` with `P_k, P4, P5` collinear, for `m = 2`.
pub fn nodal_vertex(cfg: &BurniatConfig) -> Option<usize> {
    if cfg.m() != 2 {
        return None;
    }
    let [p4, p5] = [&cfg.extra_points[0], &cfg.extra_points[1]];
    (0..3).find(|&k| collinear(&cfg.vertices[k], p4, p5))
}

pub fn tertiary_pattern_failures(cfg: &BurniatConfig) -> Vec<usize> {
    if cfg.m() != 3 {
        return vec![];
    }
    (0..3)
        .filter(|&i| !collinear(&cfg.vertices[i], cfg.prime(i + 1), cfg.prime(i + 2)))
        .collect()
}

/// Reorders the extra points so that the collinearity pattern holds, if
/// any order does.
pub fn relabel_tertiary(cfg: &BurniatConfig) -> Option<BurniatConfig> {
    if cfg.m() != 3 {
        return None;
    }
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    PERMS.iter().find_map(|perm| {
        let mut c = cfg.clone();
        c.extra_points = perm.iter().map(|&i| cfg.extra_points[i].clone()).collect();
        tertiary_pattern_failures(&c).is_empty().then_some(c)
    })
}

fn node_count(cfg: &BurniatConfig) -> usize {
    let e = &cfg.extra_points;
    let mut n = 0;
    for v in &cfg.vertices {
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                if collinear(v, &e[a], &e[b]) {
                    n += 1;
                }
            }
        }
    }
    n
}

pub fn classify_family(cfg: &BurniatConfig) -> Result<FamilyDescriptor> {
    require_valid(cfg)?;
    let nodal = nodal_vertex(cfg);
    let (name, connected, note, pi1) = match cfg.m() {
        0 => (FamilyName::Primary, true, "irreducible connected component", "1→Z⁶→π₁→(Z/2)³"),
        1 => (FamilyName::SecondaryK5, true, "irreducible connected component", "H₈⊕(Z/2)³"),
        2 if nodal.is_none() => {
            (FamilyName::SecondaryK4NonNodal, true, "irreducible connected component", "H₈⊕(Z/2)²")
        }
        2 => (
            FamilyName::SecondaryK4Nodal,
            false,
            "⊂ 3-dim. irr. conn. component ⊃ extended Burniats",
            "H₈⊕(Z/2)²",
        ),
        3 => (
            FamilyName::Tertiary,
            false,
            "⊂ 4-dim. irr. conn. component ⊃ extended Burniats",
            "H₈⊕Z/2",
        ),
        _ => (FamilyName::Quaternary, false, "∈ conn. component of standard Campedelli", "(Z/2)³"),
    };
    let k2 = 6 - cfg.m() as i64;
    Ok(FamilyDescriptor {
        name,
        k2,
        dim: k2 - 2,
        is_connected_component: connected,
        note,
        pi1,
        node_count: node_count(cfg),
        nodal_vertex: nodal,
        pattern_failures: tertiary_pattern_failures(cfg),
    })
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn table_rows() {
        let rows: Vec<_> = all()
            .iter()
            .map(|c| {
                let d = classify_family(c).unwrap();
                (d.name, d.k2, d.dim, d.is_connected_component, d.node_count)
            })
            .collect();
        use FamilyName::*;
        assert_eq!(
            rows,
            [
                (Primary, 6, 4, true, 0),
                (SecondaryK5, 5, 3, true, 0),
                (SecondaryK4NonNodal, 4, 2, true, 0),
                (SecondaryK4Nodal, 4, 2, false, 1),
                (Tertiary, 3, 1, false, 3),
                (Quaternary, 2, 0, false, 6),
            ]
        );
    }

    #[test]
    fn nodal_example() {
        let d = classify_family(&secondary_nodal()).unwrap();
        assert_eq!(d.nodal_vertex, Some(0));
        assert_eq!(d.pi1, "H₈⊕(Z/2)²");
    }

    #[test]
    fn tertiary_pattern_and_relabel() {
        let cfg = tertiary();
        assert!(tertiary_pattern_failures(&cfg).is_empty());
        let mut swapped = cfg.clone();
        swapped.extra_points.swap(0, 2);
        let d = classify_family(&swapped).unwrap();
        assert_eq!(d.name, FamilyName::Tertiary);
        assert!(!d.pattern_ok());
        let fixed = relabel_tertiary(&swapped).unwrap();
        assert_eq!(fixed.extra_points, cfg.extra_points);
    }
}
