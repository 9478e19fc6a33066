use super::family::{nodal_vertex, tertiary_pattern_failures};
use super::{lattice_for, require_valid, BurniatConfig};
use crate::picard_lattice::{DivisorClass, Lattice};
use crate::plane_geom::{conic_pencil_member, line_through, Conic, ProjLine, ProjPoint, Rat};
use crate::{Error, Result};

/// A labelled summand of a branch divisor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub label: String,
    pub class: DivisorClass,
}

impl Component {
    fn new(label: impl Into<String>, class: DivisorClass) -> Self {
        Component { label: label.into(), class }
    }
}

fn total(parts: &[Component], lat: &Lattice) -> DivisorClass {
    parts.iter().fold(lat.zero(), |acc, c| acc + c.class.clone())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BranchClasses {
    pub lattice: Lattice,
    pub classes: [DivisorClass; 3],
    pub components: [Vec<Component>; 3],
}

/// Which pencil an exceptional curve over `p` belongs to, read off the
/// parities of its multiplicities: a single odd entry names the pencil, two
/// odd entries name the remaining one.
fn exceptional_pencil(triple: [usize; 3]) -> Option<usize> {
    let odd: Vec<usize> = (0..3).filter(|&k| triple[k] % 2 == 1).collect();
    match odd.len() {
        1 => Some(odd[0]),
        2 => (0..3).find(|k| !odd.contains(k)),
        _ => None,
    }
}

fn check_m3_pattern(cfg: &BurniatConfig) -> Result<()> {
    let failures = tertiary_pattern_failures(cfg);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::PatternMismatch(failures))
    }
}

/// `D_k`: strict transforms of the three lines of pencil `k` plus the
/// exceptional curves assigned to `k`. The sum over `k` is checked against
/// `-3K`.
pub fn branch_divisor_classes(cfg: &BurniatConfig) -> Result<BranchClasses> {
    require_valid(cfg)?;
    if cfg.m() == 3 {
        check_m3_pattern(cfg)?;
    }
    let lat = lattice_for(cfg);
    let points = cfg.blown_up_points();
    let labels = lat.labels().to_vec();
    let mut components: [Vec<Component>; 3] = Default::default();
    for (k, pencil) in cfg.pencils.iter().enumerate() {
        for line in pencil {
            let through: Vec<usize> = (0..points.len()).filter(|&i| line.contains(&points[i])).collect();
            let name = through.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(",");
            components[k].push(Component::new(format!("line[{name}]"), lat.strict_transform(1, &through)));
        }
    }
    for (i, p) in points.iter().enumerate() {
        if let Some(k) = exceptional_pencil(cfg.multiplicity_triple(p)) {
            components[k].push(Component::new(labels[i].clone(), lat.exceptional(i)));
        }
    }
    let classes = components.clone().map(|parts| total(&parts, &lat));
    let sum = classes.iter().fold(lat.zero(), |acc, c| acc + c.clone());
    let expected = -3 * &lat.canonical_class();
    if sum != expected {
        return Err(Error::IdentityFailed(format!(
            "D1 + D2 + D3 = {}, expected {}",
            lat.display(&sum),
            lat.display(&expected)
        )));
    }
    Ok(BranchClasses { lattice: lat, classes, components })
}

/// Nodal classes: `N_i = L - E_i - E'_(i+1) - E'_(i+2)` for `m = 3` (index
/// `i`), and the single `N = L - E_k - E4 - E5` for a nodal `m = 2`
/// configuration (stored at index `k`).
pub fn nodal_classes(cfg: &BurniatConfig) -> [Option<DivisorClass>; 3] {
    let lat = lattice_for(cfg);
    match cfg.m() {
        3 => std::array::from_fn(|i| Some(lat.strict_transform(1, &[i, prime_index(i + 1), prime_index(i + 2)]))),
        2 => {
            let mut out = [None, None, None];
            if let Some(k) = nodal_vertex(cfg) {
                out[k] = Some(lat.strict_transform(1, &[k, 3, 4]));
            }
            out
        }
        _ => [None, None, None],
    }
}

/// Lattice index of `E'_i` (0-based `i`).
fn prime_index(i: usize) -> usize {
    5 - i % 3
}

/// The four base points of the conic pencil for index `i`.
pub fn gamma_base(cfg: &BurniatConfig, i: usize) -> Result<[ProjPoint; 4]> {
    let v = |j: usize| cfg.vertices[j % 3].clone();
    match cfg.m() {
        3 => {
            check_m3_pattern(cfg)?;
            Ok([v(i), cfg.prime(i).clone(), v(i + 1), cfg.prime(i + 1).clone()])
        }
        2 => {
            let k = nodal_vertex(cfg).ok_or(Error::NotNodal)?;
            if i != (k + 1) % 3 {
                return Err(Error::NotExtendable(i));
            }
            Ok([v(i), cfg.extra_points[0].clone(), v(i + 1), cfg.extra_points[1].clone()])
        }
        m => Err(Error::WrongM { expected: "2 or 3".into(), found: m }),
    }
}

fn gamma_class(lat: &Lattice, cfg: &BurniatConfig, i: usize) -> DivisorClass {
    let through = if cfg.m() == 3 {
        vec![i, prime_index(i), (i + 1) % 3, prime_index(i + 1)]
    } else {
        vec![i, (i + 1) % 3, 3, 4]
    };
    lat.strict_transform(2, &through)
}

/// Line carrying the nodal class that a degenerate `Γ_i` may contain.
fn degeneration_line(cfg: &BurniatConfig, i: usize) -> Result<ProjLine> {
    let [_, b2, _, b4] = gamma_base(cfg, i)?;
    line_through(&b2, &b4)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtendedClasses {
    pub lattice: Lattice,
    pub classes: [DivisorClass; 3],
    pub components: [Vec<Component>; 3],
    pub extended: [bool; 3],
    /// The selected conics, for the strictly extended indices.
    pub conics: [Option<Conic>; 3],
    /// `-3K` plus the nodal correction for the chosen indices.
    pub expected_sum: DivisorClass,
}

/// Branch classes where each index with `Some((λ, μ))` is strictly extended
/// using the conic `λQ1 + μQ2` of its pencil.
pub fn extended_branch_classes(cfg: &BurniatConfig, choices: &[Option<(Rat, Rat)>; 3]) -> Result<ExtendedClasses> {
    let m = cfg.m();
    if m != 2 && m != 3 {
        return Err(Error::WrongM { expected: "2 or 3".into(), found: m });
    }
    let base = branch_divisor_classes(cfg)?;
    let lat = base.lattice.clone();
    let n = nodal_classes(cfg);
    let k = lat.canonical_class();
    if m == 2 && nodal_vertex(cfg).is_none() {
        return Err(Error::NotNodal);
    }
    let nn = |j: usize| n[j % 3].clone().unwrap_or_else(|| lat.zero());

    let mut classes = base.classes.clone();
    let mut components = base.components.clone();
    let mut conics: [Option<Conic>; 3] = Default::default();
    let mut expected = -3 * &k;
    for (i, choice) in choices.iter().enumerate() {
        let Some((lambda, mu)) = choice else { continue };
        let pts = gamma_base(cfg, i)?;
        let conic = conic_pencil_member(&pts, (lambda, mu))?;
        if !conic.is_irreducible() {
            return Err(Error::DegenerateConic(i));
        }
        let def2 = &(&(&base.classes[i] - &nn(i)) + &nn(i + 2)) + &nn(i + 1);

        let side = lat.strict_transform(1, &[i, (i + 1) % 3]);
        let prev = lat.exceptional((i + 2) % 3);
        let gamma = gamma_class(&lat, cfg, i);
        let split = &(&nn(i + 2) + &side) + &prev;
        if gamma != split {
            return Err(Error::IdentityFailed(format!(
                "Γ{} = {} but N + side + E = {}",
                i + 1,
                lat.display(&gamma),
                lat.display(&split)
            )));
        }
        // Γ_i takes the place of the side, N_i and E_(i-1) in D_i.
        let mut parts = vec![Component::new(format!("Γ{}", i + 1), gamma)];
        let mut rest = base.components[i].clone();
        for r in [side, nn(i), prev].iter().filter(|r| **r != lat.zero()) {
            let pos = rest.iter().position(|c| c.class == *r).ok_or_else(|| {
                Error::IdentityFailed(format!("D{} has no summand {}", i + 1, lat.display(r)))
            })?;
            rest.remove(pos);
        }
        parts.extend(rest);
        if nn(i + 1) != lat.zero() {
            parts.push(Component::new(format!("N{}", (i + 1) % 3 + 1), nn(i + 1)));
        }
        let def3 = total(&parts, &lat);
        if def2 != def3 {
            return Err(Error::IdentityFailed(format!(
                "Δ{}: {} by the difference formula, {} by components",
                i + 1,
                lat.display(&def2),
                lat.display(&def3)
            )));
        }
        expected = &(&(&expected + &nn(i + 2)) + &nn(i + 1)) - &nn(i);
        classes[i] = def2;
        components[i] = parts;
        conics[i] = Some(conic);
    }

    let sum = classes.iter().fold(lat.zero(), |acc, c| acc + c.clone());
    if sum != expected {
        return Err(Error::IdentityFailed(format!(
            "Δ sum {} differs from {}",
            lat.display(&sum),
            lat.display(&expected)
        )));
    }
    Ok(ExtendedClasses {
        lattice: lat,
        classes,
        components,
        extended: std::array::from_fn(|i| choices[i].is_some()),
        conics,
        expected_sum: expected,
    })
}

/// Base of the nodal `m = 2` family: the free line class `C_k = L - E_k`
/// of the nodal pencil and the conic class `Γ_e` with its split form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyBase {
    pub nodal_vertex: usize,
    pub extendable: usize,
    pub c: DivisorClass,
    pub gamma: DivisorClass,
    pub gamma_split: [DivisorClass; 3],
}

pub fn family_base(cfg: &BurniatConfig) -> Result<FamilyBase> {
    if cfg.m() != 2 {
        return Err(Error::WrongM { expected: "2".into(), found: cfg.m() });
    }
    require_valid(cfg)?;
    let k = nodal_vertex(cfg).ok_or(Error::NotNodal)?;
    let e = (k + 1) % 3;
    let lat = lattice_for(cfg);
    Ok(FamilyBase {
        nodal_vertex: k,
        extendable: e,
        c: lat.strict_transform(1, &[k]),
        gamma: gamma_class(&lat, cfg, e),
        gamma_split: [lat.strict_transform(1, &[k, 3, 4]), lat.exceptional(k), lat.strict_transform(1, &[e, (e + 1) % 3])],
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegenerationKind {
    StrictlyExtended,
    DegeneratesToNodal,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Degeneration {
    pub kind: DegenerationKind,
    /// Set for reducible conics that split in some other way.
    pub warning: Option<String>,
}

pub fn detect_degeneration(cfg: &BurniatConfig, index: usize, conic: &Conic) -> Result<Degeneration> {
    let base = gamma_base(cfg, index)?;
    if let Some(j) = base.iter().position(|p| !conic.contains(p)) {
        return Err(Error::WrongPencil(j, index));
    }
    if conic.is_irreducible() {
        return Ok(Degeneration { kind: DegenerationKind::StrictlyExtended, warning: None });
    }
    let side = line_through(&base[0], &base[2])?;
    let nodal = Conic::line_pair(&degeneration_line(cfg, index)?, &side);
    if conic.same_conic(&nodal) {
        return Ok(Degeneration { kind: DegenerationKind::DegeneratesToNodal, warning: None });
    }
    Ok(Degeneration {
        kind: DegenerationKind::StrictlyExtended,
        warning: Some(format!("conic for index {} splits into lines other than the nodal degeneration", index + 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::plane_geom::rat;

    fn one() -> Option<(Rat, Rat)> {
        Some((rat(1), rat(1)))
    }

    #[test]
    fn branch_sum_all_m() {
        for cfg in all() {
            let b = branch_divisor_classes(&cfg).unwrap();
            let sum = b.classes.iter().fold(b.lattice.zero(), |a, c| a + c.clone());
            assert_eq!(sum, -3 * &b.lattice.canonical_class());
        }
    }

    #[test]
    fn primary_classes() {
        let b = branch_divisor_classes(&primary()).unwrap();
        // D1 = 3L - 3E1 - E2 + E3
        assert_eq!(b.classes[0], DivisorClass::new(3, vec![-3, -1, 1]));
        assert_eq!(b.lattice.display(&b.classes[0]).to_string(), "3L - 3E1 - E2 + E3");
    }

    #[test]
    fn tertiary_matches_difference_formula() {
        let cfg = tertiary();
        let b = branch_divisor_classes(&cfg).unwrap();
        let lat = &b.lattice;
        let n = nodal_classes(&cfg);
        for i in 0..3 {
            let ni = n[i].clone().unwrap();
            assert_eq!(lat.intersect(&ni, &ni).unwrap(), -2);
            assert_eq!(lat.intersect(&lat.canonical_class(), &ni).unwrap(), 0);
            let side = lat.strict_transform(1, &[i, (i + 1) % 3]);
            let free = lat.strict_transform(1, &[i, prime_index(i)]);
            let expected = &(&(&side + &ni) + &free) + &lat.exceptional((i + 2) % 3);
            assert_eq!(b.classes[i], expected);
        }
        let n1 = lat.class(1, &[("E1", -1), ("E'2", -1), ("E'3", -1)]).unwrap();
        assert_eq!(n[0].as_ref(), Some(&n1));
    }

    #[test]
    fn tertiary_all_extended() {
        let cfg = tertiary();
        let x = extended_branch_classes(&cfg, &[one(), one(), one()]).unwrap();
        let lat = &x.lattice;
        let n_sum = nodal_classes(&cfg).into_iter().flatten().fold(lat.zero(), |a, c| a + c);
        let sum = x.classes.iter().fold(lat.zero(), |a, c| a + c.clone());
        assert_eq!(sum, &(-3 * &lat.canonical_class()) + &n_sum);
        assert_eq!(x.components[0][0].class, lat.class(2, &[("E1", -1), ("E'1", -1), ("E2", -1), ("E'2", -1)]).unwrap());
    }

    #[test]
    fn tertiary_partial_extension() {
        let x = extended_branch_classes(&tertiary(), &[None, one(), None]).unwrap();
        assert_eq!(x.extended, [false, true, false]);
        assert!(x.conics[1].is_some());
    }

    #[test]
    fn tertiary_reducible_choice() {
        let err = extended_branch_classes(&tertiary(), &[Some((rat(0), rat(1))), None, None]);
        assert_eq!(err, Err(Error::DegenerateConic(0)));
    }

    #[test]
    fn pattern_required() {
        let mut cfg = tertiary();
        cfg.extra_points.swap(0, 2);
        assert!(matches!(branch_divisor_classes(&cfg), Err(Error::PatternMismatch(_))));
        assert!(matches!(extended_branch_classes(&cfg, &[None, None, None]), Err(Error::PatternMismatch(_))));
    }

    #[test]
    fn nodal_m2() {
        let cfg = secondary_nodal();
        let base = family_base(&cfg).unwrap();
        assert_eq!((base.nodal_vertex, base.extendable), (0, 1));
        let split = base.gamma_split.iter().fold(DivisorClass::zero(5), |a, c| a + c.clone());
        assert_eq!(base.gamma, split);
        let x = extended_branch_classes(&cfg, &[None, one(), None]).unwrap();
        let lat = &x.lattice;
        let n = lat.strict_transform(1, &[0, 3, 4]);
        assert_eq!(x.expected_sum, &(-3 * &lat.canonical_class()) + &n);
        assert_eq!(extended_branch_classes(&cfg, &[one(), None, None]), Err(Error::NotExtendable(0)));
        assert_eq!(
            extended_branch_classes(&cfg, &[None, Some((rat(0), rat(1))), None]),
            Err(Error::DegenerateConic(1))
        );
        assert_eq!(extended_branch_classes(&secondary_non_nodal(), &[None, one(), None]), Err(Error::NotNodal));
        assert!(matches!(extended_branch_classes(&primary(), &[None, None, None]), Err(Error::WrongM { .. })));
    }

    #[test]
    fn degeneration() {
        let cfg = tertiary();
        for i in 0..3 {
            let pts = gamma_base(&cfg, i).unwrap();
            let generic = conic_pencil_member(&pts, (&rat(1), &rat(1))).unwrap();
            assert_eq!(detect_degeneration(&cfg, i, &generic).unwrap().kind, DegenerationKind::StrictlyExtended);
            let nodal = conic_pencil_member(&pts, (&rat(0), &rat(1))).unwrap();
            let d = detect_degeneration(&cfg, i, &nodal).unwrap();
            assert_eq!((d.kind, d.warning), (DegenerationKind::DegeneratesToNodal, None));
            let other = conic_pencil_member(&pts, (&rat(1), &rat(0))).unwrap();
            let d = detect_degeneration(&cfg, i, &other).unwrap();
            assert_eq!(d.kind, DegenerationKind::StrictlyExtended);
            assert!(d.warning.is_some());
        }
        let stray = Conic::line_pair(&l(1, 1, 1), &l(1, 2, 3));
        assert!(matches!(detect_degeneration(&cfg, 0, &stray), Err(Error::WrongPencil(_, 0))));
        let cfg = secondary_nodal();
        let pts = gamma_base(&cfg, 1).unwrap();
        let nodal = conic_pencil_member(&pts, (&rat(0), &rat(1))).unwrap();
        assert_eq!(detect_degeneration(&cfg, 1, &nodal).unwrap().kind, DegenerationKind::DegeneratesToNodal);
    }
}
