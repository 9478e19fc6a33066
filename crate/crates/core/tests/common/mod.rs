#![allow(dead_code)]

use pg0_core::plane_geom::{arrangement_singular_points, Projectivity};
use pg0_core::ProjLine;
use rand::Rng;

pub fn random_projectivity<R: Rng>(rng: &mut R) -> Projectivity {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-4..=4)));
        if let Some(t) = Projectivity::new(m) {
            return t;
        }
    }
}

/// Seven lines with small coefficients, no three concurrent.
pub fn random_general_lines<R: Rng>(rng: &mut R, n: usize) -> Vec<ProjLine> {
    loop {
        let lines: Vec<ProjLine> = (0..n)
            .filter_map(|_| {
                let [a, b, c] = std::array::from_fn(|_| rng.random_range(-6..=6));
                ProjLine::from_ints(a, b, c).ok()
            })
            .collect();
        if lines.len() != n {
            continue;
        }
        match arrangement_singular_points(&lines) {
            Ok(pts) if pts.iter().all(|p| p.multiplicity == 2) => return lines,
            _ => continue,
        }
    }
}
