//! Aggregates the library operations into one JSON report.

use std::fmt;
use std::str::FromStr;

use pg0_core::burniat::{
    self, campedelli_bridge, classify_family, detect_degeneration, extended_branch_classes, family_base,
    nodal_classes, singularity_ledger, validate_config, BurniatConfig,
};
use pg0_core::cover_algebra::{
    all_product_relations, campedelli_quadrics, campedelli_smoothness, godeaux_free_action,
    godeaux_invariant_monomials, nonzero_elements, relation_holds, relations_consistent, square_equation,
    CoverAssignment, G2Elt, GODEAUX_WEIGHTS,
};
use pg0_core::node_deform::{group_lift_table, quotient_invariants, relation, xi_eta_consistent};
use pg0_core::picard_lattice::{config_curve_classes, del_pezzo_status, CurveClassKind, DivisorClass, Lattice};
use pg0_core::{Error, ProjLine, ProjPoint, Rat};
use serde_json::{json, Value};

use crate::config::{ConfigDocument, SCHEMA};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Section {
    Validate,
    Classify,
    Invariants,
    Lattice,
    Extend,
    Campedelli,
    Godeaux,
    NodeDeform,
}

impl Section {
    pub const ALL: [Section; 8] = [
        Section::Validate,
        Section::Classify,
        Section::Invariants,
        Section::Lattice,
        Section::Extend,
        Section::Campedelli,
        Section::Godeaux,
        Section::NodeDeform,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Section::Validate => "validation",
            Section::Classify => "family",
            Section::Invariants => "invariants",
            Section::Lattice => "lattice",
            Section::Extend => "extended",
            Section::Campedelli => "campedelli",
            Section::Godeaux => "godeaux",
            Section::NodeDeform => "node_deform",
        }
    }

    fn needs_burniat(self) -> bool {
        matches!(self, Section::Classify | Section::Invariants | Section::Lattice | Section::Extend)
    }
}

impl FromStr for Section {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.trim() {
            "validate" | "validation" => Section::Validate,
            "classify" | "family" => Section::Classify,
            "invariants" => Section::Invariants,
            "lattice" => Section::Lattice,
            "extend" | "extended" => Section::Extend,
            "campedelli" => Section::Campedelli,
            "godeaux" => Section::Godeaux,
            "node-deform" | "node_deform" => Section::NodeDeform,
            other => return Err(format!("unknown section {other:?}")),
        })
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

pub fn parse_sections(list: &str) -> Result<Vec<Section>, String> {
    let mut out: Vec<Section> = list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, PartialEq, Debug)]
pub struct Report {
    pub value: Value,
    /// `Some(false)` when the line configuration failed validation.
    pub valid: Option<bool>,
    pub errors: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.valid == Some(false) || !self.errors.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("report serializes") + "\n"
    }
}

fn colon(c: &[impl fmt::Display; 3]) -> String {
    format!("{}:{}:{}", c[0], c[1], c[2])
}

fn point(p: &ProjPoint) -> Value {
    Value::String(colon(p.coords()))
}

fn line(l: &ProjLine) -> Value {
    Value::String(colon(l.coords()))
}

fn class(lat: &Lattice, c: &DivisorClass) -> Value {
    let mut labels = vec!["L".to_string()];
    labels.extend(lat.labels().iter().cloned());
    let mut vector = vec![c.degree];
    vector.extend(&c.mults);
    json!({ "labels": labels, "vector": vector, "display": lat.display(c).to_string() })
}

fn g2(g: G2Elt, n: usize) -> String {
    let c: Vec<String> = g.coords(n).iter().map(u8::to_string).collect();
    format!("({})", c.join(","))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

struct Ctx<'a> {
    doc: &'a ConfigDocument,
    cfg: Option<BurniatConfig>,
    errors: Vec<String>,
}

impl Ctx<'_> {
    fn fail(&mut self, section: Section, e: impl fmt::Display) -> Value {
        self.errors.push(format!("{section}: {e}"));
        json!({ "error": e.to_string() })
    }
}

pub fn run_report(doc: &ConfigDocument, sections: &[Section]) -> Report {
    let mut ctx = Ctx { doc, cfg: doc.burniat(), errors: Vec::new() };
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    if let Some(name) = &doc.name {
        out.insert("name".into(), json!(name));
    }

    let validation = ctx.cfg.as_ref().map(validate_config);
    let valid = validation.as_ref().map(|v| v.is_valid());
    let mut sections = sections.to_vec();
    if valid == Some(false) && !sections.contains(&Section::Validate) {
        sections.insert(0, Section::Validate);
    }
    for s in sections {
        let value = match s {
            Section::Validate => match &validation {
                Some(v) => json!({
                    "m": v.m,
                    "valid": v.is_valid(),
                    "violations": v.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
                None => json!({ "applicable": false, "reason": "no line configuration" }),
            },
            _ if valid == Some(false) => continue,
            s if s.needs_burniat() && ctx.cfg.is_none() => {
                json!({ "applicable": false, "reason": "no line configuration" })
            }
            Section::Classify => classify(&mut ctx),
            Section::Invariants => invariants(&mut ctx),
            Section::Lattice => lattice(&mut ctx),
            Section::Extend => extend(&mut ctx),
            Section::Campedelli => campedelli(&mut ctx),
            Section::Godeaux => godeaux(&mut ctx),
            Section::NodeDeform => node_deform(&mut ctx),
        };
        out.insert(s.key().into(), value);
    }
    if valid == Some(false) {
        ctx.errors.push("validation: configuration is not valid".into());
    }
    out.insert("errors".into(), json!(ctx.errors));
    Report { value: Value::Object(out), valid, errors: ctx.errors }
}

fn classify(ctx: &mut Ctx) -> Value {
    let cfg = ctx.cfg.as_ref().expect("checked");
    match classify_family(cfg) {
        Ok(d) => json!({
            "name": d.name.to_string(),
            "K2": d.k2,
            "dim": d.dim,
            "is_connected_component": d.is_connected_component,
            "note": d.note,
            "pi1": d.pi1,
            "node_count": d.node_count,
            "nodal_vertex": d.nodal_vertex.map(|k| k + 1),
            "pattern_ok": d.pattern_ok(),
            "pattern_failures": one_based(&d.pattern_failures),
        }),
        Err(e) => ctx.fail(Section::Classify, e),
    }
}

fn invariants(ctx: &mut Ctx) -> Value {
    let cfg = ctx.cfg.as_ref().expect("checked");
    let (inv, ledger) = match (burniat::burniat_invariants(cfg), singularity_ledger(cfg)) {
        (Ok(i), Ok(l)) => (i, l),
        (Err(e), _) | (_, Err(e)) => return ctx.fail(Section::Invariants, e),
    };
    let entries: Vec<Value> = ledger
        .entries
        .iter()
        .map(|e| json!({ "point": point(&e.point), "triple": e.triple, "kind": format!("{:?}", e.kind) }))
        .collect();
    json!({
        "p_g": inv.p_g,
        "q": inv.q,
        "K2": inv.k2,
        "chi": inv.chi,
        "P2": inv.p2,
        "identities_hold": inv.identities_hold(),
        "bmy_holds": inv.bmy_holds(),
        "ledger": {
            "entries": entries,
            "type310": ledger.type310,
            "type111": ledger.type111,
            "K2": ledger.k2,
            "pg_minus_q": ledger.pg_minus_q,
            "agrees": ledger.k2 == inv.k2 && ledger.pg_minus_q == inv.p_g - inv.q,
        },
    })
}

fn lattice(ctx: &mut Ctx) -> Value {
    let cfg = ctx.cfg.clone().expect("checked");
    let branch = match burniat::branch_divisor_classes(&cfg) {
        Ok(b) => b,
        Err(e) => return ctx.fail(Section::Lattice, e),
    };
    let lat = &branch.lattice;
    let k = lat.canonical_class();
    let sum = branch.classes.iter().fold(lat.zero(), |a, c| a + c.clone());
    let expected = -3 * &k;
    let divisors: Vec<Value> = (0..3)
        .map(|i| {
            json!({
                "name": format!("D{}", i + 1),
                "class": class(lat, &branch.classes[i]),
                "components": branch.components[i]
                    .iter()
                    .map(|c| json!({ "label": c.label, "class": class(lat, &c.class) }))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let nodal: Vec<Value> = nodal_classes(&cfg)
        .iter()
        .enumerate()
        .filter_map(|(i, n)| n.as_ref().map(|n| (i, n)))
        .map(|(i, n)| {
            json!({
                "name": if cfg.m() == 3 { format!("N{}", i + 1) } else { "N".into() },
                "class": class(lat, n),
                "self_intersection": lat.intersect(n, n).expect("same lattice"),
                "K_dot": lat.intersect(&k, n).expect("same lattice"),
            })
        })
        .collect();
    let del_pezzo = match del_pezzo_status(&cfg) {
        Ok(s) => json!({ "degree": s.degree, "node_count": s.node_count, "weak": s.weak }),
        Err(e) => ctx.fail(Section::Lattice, e),
    };
    let curves = match config_curve_classes(&cfg) {
        Ok(cs) => {
            let count = |kind| cs.iter().filter(|c| c.kind == kind).count();
            json!({
                "total": cs.len(),
                "minus_one": count(CurveClassKind::MinusOne),
                "minus_two": count(CurveClassKind::MinusTwo),
                "minus_two_classes": cs
                    .iter()
                    .filter(|c| c.kind == CurveClassKind::MinusTwo)
                    .map(|c| class(lat, &c.class))
                    .collect::<Vec<_>>(),
            })
        }
        Err(e) => ctx.fail(Section::Lattice, e),
    };
    json!({
        "labels": lat.labels(),
        "canonical": class(lat, &k),
        "K_squared": lat.intersect(&k, &k).expect("same lattice"),
        "branch_divisors": divisors,
        "sum_check": { "sum": class(lat, &sum), "expected": class(lat, &expected), "holds": sum == expected },
        "nodal_classes": nodal,
        "del_pezzo": del_pezzo,
        "curves": curves,
    })
}

fn extend(ctx: &mut Ctx) -> Value {
    let cfg = ctx.cfg.clone().expect("checked");
    let requested = ctx.doc.extended_choices();
    let choices = requested.clone().unwrap_or([None, None, None]);
    let x = match extended_branch_classes(&cfg, &choices) {
        Ok(x) => x,
        Err(e @ (Error::WrongM { .. } | Error::NotNodal | Error::PatternMismatch(_))) if requested.is_none() => {
            return json!({ "applicable": false, "reason": e.to_string() });
        }
        Err(e) => return ctx.fail(Section::Extend, e),
    };
    let lat = &x.lattice;
    let sum = x.classes.iter().fold(lat.zero(), |a, c| a + c.clone());
    let mut per_index = Vec::new();
    for i in 0..3 {
        let degeneration = match &x.conics[i] {
            Some(c) => match detect_degeneration(&cfg, i, c) {
                Ok(d) => json!({ "kind": format!("{:?}", d.kind), "warning": d.warning }),
                Err(e) => ctx.fail(Section::Extend, e),
            },
            None => Value::Null,
        };
        per_index.push(json!({
            "index": i + 1,
            "strictly_extended": x.extended[i],
            "class": class(lat, &x.classes[i]),
            "components": x.components[i]
                .iter()
                .map(|c| json!({ "label": c.label, "class": class(lat, &c.class) }))
                .collect::<Vec<_>>(),
            "degeneration": degeneration,
        }));
    }
    let mut v = json!({
        "applicable": true,
        "divisors": per_index,
        "sum_check": { "sum": class(lat, &sum), "expected": class(lat, &x.expected_sum), "holds": sum == x.expected_sum },
    });
    if cfg.m() == 2 {
        if let Ok(b) = family_base(&cfg) {
            v["family_base"] = json!({
                "nodal_vertex": b.nodal_vertex + 1,
                "extendable_index": b.extendable + 1,
                "C": class(lat, &b.c),
                "Gamma": class(lat, &b.gamma),
                "Gamma_split": b.gamma_split.iter().map(|c| class(lat, c)).collect::<Vec<_>>(),
            });
        }
    }
    v
}

fn campedelli(ctx: &mut Ctx) -> Value {
    let (source, asg) = if let Some(lines) = ctx.doc.campedelli_lines() {
        match CoverAssignment::campedelli(lines) {
            Ok(a) => ("input", a),
            Err(e) => return ctx.fail(Section::Campedelli, e),
        }
    } else if let Some(cfg) = ctx.cfg.as_ref().filter(|c| c.m() == 4) {
        match campedelli_bridge(cfg) {
            Ok(b) => ("bridge", b.assignment),
            Err(e) => return ctx.fail(Section::Campedelli, e),
        }
    } else {
        return json!({ "applicable": false, "reason": "no seven-line input and no m = 4 configuration" });
    };
    let n = asg.rank();
    let squares: Vec<Value> = nonzero_elements(n)
        .map(|g| json!({ "g": g2(g, n), "lines": one_based(&square_equation(g, &asg).expect("nonzero")) }))
        .collect();
    let products: Vec<Value> = all_product_relations(&asg)
        .iter()
        .map(|r| json!({ "gi": g2(r.gi, n), "gj": g2(r.gj, n), "sum": g2(r.sum, n), "factor_lines": one_based(&r.factor_lines) }))
        .collect();
    let lines = asg.lines();
    let quadrics = match campedelli_quadrics(lines) {
        Ok(q) => {
            let verified = q.iter().all(|l| relation_holds(lines, l));
            json!({
                "count": q.len(),
                "vectors": q.iter().map(|v| v.iter().map(Rat::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "verified": verified,
            })
        }
        Err(e) => ctx.fail(Section::Campedelli, e),
    };
    let smooth = match campedelli_smoothness(lines) {
        Ok(s) => json!({ "smooth": s.smooth, "triple_points": s.bad_points.iter().map(|p| point(&p.point)).collect::<Vec<_>>() }),
        Err(e) => ctx.fail(Section::Campedelli, e),
    };
    json!({
        "source": source,
        "lines": lines.iter().map(line).collect::<Vec<_>>(),
        "characters": asg.chars().iter().map(|g| g2(*g, n)).collect::<Vec<_>>(),
        "square_equations": squares,
        "product_relations": products,
        "relations_consistent": relations_consistent(&asg),
        "quadrics": quadrics,
        "smoothness": smooth,
    })
}

fn monomial(e: &[u32; 4]) -> String {
    let parts: Vec<String> = (0..4)
        .filter(|&i| e[i] > 0)
        .map(|i| if e[i] == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e[i]) })
        .collect();
    parts.join("*")
}

fn godeaux(ctx: &mut Ctx) -> Value {
    let counts: Vec<usize> = (0..5).map(|r| godeaux_invariant_monomials(r).len()).collect();
    let mut v = json!({
        "weights": GODEAUX_WEIGHTS,
        "monomial_counts": counts,
        "total": counts.iter().sum::<usize>(),
        "invariant_monomials": godeaux_invariant_monomials(0).iter().map(monomial).collect::<Vec<_>>(),
    });
    if let Some(coeffs) = ctx.doc.godeaux_coeffs() {
        v["free_action"] = match godeaux_free_action(&coeffs) {
            Ok(r) => json!({ "free": r.free, "fixed_points_hit": one_based(&r.fixed_points_hit) }),
            Err(e) => ctx.fail(Section::Godeaux, e),
        };
    }
    v
}

fn node_deform(ctx: &mut Ctx) -> Value {
    let q = quotient_invariants();
    let table = match group_lift_table() {
        Ok(t) => t,
        Err(e) => return ctx.fail(Section::NodeDeform, e),
    };
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            let c = &r.classification;
            json!({
                "sigma": r.sigma,
                "eps_tau": r.eps_tau,
                "signs": r.map.signs,
                "xi_image": format!("({})/({})", c.numerator, c.denominator),
                "matches": c.matched,
                "kind": format!("{:?}", c.kind),
            })
        })
        .collect();
    json!({
        "relation": format!("{} = 0", relation()),
        "quotient": {
            "generators": q.generators.iter().map(|(n, p)| json!({ "name": n, "value": p.to_string() })).collect::<Vec<_>>(),
            "z2_minus_xy": q.relation.to_string(),
            "verified": q.verified,
        },
        "lift_table": rows,
        "assignments": table.assignments.iter().map(|a| json!({
            "eps_tau": a.eps_tau,
            "is_group": a.is_group,
            "all_biregular": a.all_biregular,
        })).collect::<Vec<_>>(),
        "verdict": {
            "fixing_lifts_include_flop": table.fixing_lifts_include_flop,
            "biregular_groups": table.biregular_groups,
            "every_biregular_group_moves_tau": table.every_biregular_group_moves_tau,
            "dichotomy_holds": table.dichotomy_holds(),
        },
        "xi_eta_is_v_over_u": xi_eta_consistent(),
    })
}
