use super::{require_valid, BurniatConfig};
use crate::cover_algebra::{CoverAssignment, G2Elt};
use crate::plane_geom::{collinear, ProjLine};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CampedelliBridge {
    pub assignment: CoverAssignment,
    /// Indices (into the lines) of the concurrent triples.
    pub triple_points: Vec<[usize; 3]>,
}

impl CampedelliBridge {
    pub fn lines(&self) -> &[ProjLine] {
        self.assignment.lines()
    }
}

/// The seven blown-up points of a quaternary configuration, read as lines of
/// the dual plane: the four extra points give a complete quadrilateral and
/// the vertices its three diagonals. Characters are chosen so that every
/// collinear triple of points carries characters summing to zero.
pub fn campedelli_bridge(cfg: &BurniatConfig) -> Result<CampedelliBridge> {
    if cfg.m() != 4 {
        return Err(Error::WrongM { expected: "4".into(), found: cfg.m() });
    }
    require_valid(cfg)?;
    let points = cfg.blown_up_points();
    let q0 = &points[3];
    let mut chars = vec![G2Elt(1), G2Elt(2), G2Elt(3), G2Elt(4)];
    for q in &points[4..] {
        let v = (0..3)
            .find(|&i| collinear(&points[i], q0, q))
            .ok_or_else(|| Error::IdentityFailed(format!("no vertex on the line through {q0} and {q}")))?;
        chars.push(G2Elt(4) + chars[v]);
    }

    let mut triple_points = Vec::new();
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                if collinear(&points[a], &points[b], &points[c]) {
                    if !(chars[a] + chars[b] + chars[c]).is_zero() {
                        return Err(Error::IdentityFailed(format!("characters on triple {a},{b},{c} do not sum to 0")));
                    }
                    triple_points.push([a, b, c]);
                }
            }
        }
    }
    let lines = points.iter().map(|p| p.dual()).collect();
    Ok(CampedelliBridge { assignment: CoverAssignment::new(3, lines, chars)?, triple_points })
}
