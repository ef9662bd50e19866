use planefol_core::blowup::{adjunction_value, discrepancies, genus_remark9, resolve, Direction, ResolutionTree};
use planefol_core::bounds::{cor6_bound, BoundReport};
use planefol_core::darboux::{
    darboux_combination, extactic_test, find_pencil, invariant_curve_search, threshold_count, verify_invariant,
    ExtacticOutcome, FirstIntegralKind, PencilSearch,
};
use planefol_core::field::{singular_points, singular_scheme_degree, Chart};
use planefol_core::MPoly;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::report::{point, poly, rat, surd};
use crate::spec::FieldSpec;

#[derive(Debug, Clone)]
pub enum Command {
    Singular,
    Invariants {
        max_degree: u32,
    },
    FirstIntegral {
        max_degree: u32,
    },
    Resolve,
    /// Either an explicit `(d, n-list)` or the germs of the field file.
    Bounds {
        explicit: Option<(i64, Vec<i64>)>,
    },
    Verify {
        f: MPoly,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Singular => "singular",
            Command::Invariants { .. } => "invariants",
            Command::FirstIntegral { .. } => "first-integral",
            Command::Resolve => "resolve",
            Command::Bounds { .. } => "bounds",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Complete,
    /// A budget or step cap ran out; the report is partial.
    Indeterminate,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Complete => 0,
            Status::Indeterminate => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    /// Canonical, deterministic body.
    pub body: Value,
    pub status: Status,
    /// DOT export of the resolution tree, for `resolve`.
    pub dot: Option<String>,
}

fn echo(spec: &FieldSpec) -> Value {
    json!({
        "p": poly(spec.field.p()),
        "q": poly(spec.field.q()),
        "germs": spec.germs.iter().map(|g| json!({"point": point(&g.point), "equation": poly(&g.equation)})).collect::<Vec<_>>(),
    })
}

fn params(spec: &FieldSpec) -> Value {
    let p = &spec.params;
    json!({
        "max_degree": p.max_degree,
        "budget": p.budget,
        "extactic_budget": p.extactic_budget,
        "step_cap": p.step_cap,
    })
}

fn need(spec: Option<&FieldSpec>) -> Result<&FieldSpec, CliError> {
    spec.ok_or_else(|| CliError::Input("this command needs a field (--field FILE or --p/--q)".into()))
}

pub fn run(command: &Command, spec: Option<&FieldSpec>) -> Result<Report, CliError> {
    let mut body = Map::new();
    body.insert("command".into(), json!(command.name()));
    if let Some(s) = spec {
        body.insert("input".into(), echo(s));
        body.insert("params".into(), params(s));
    }
    let mut status = Status::Complete;
    let mut dot = None;
    let (key, section) = match command {
        Command::Singular => ("singular", singular(need(spec)?)?),
        Command::Invariants { max_degree } => {
            let (v, complete) = invariants(need(spec)?, *max_degree)?;
            if !complete {
                status = Status::Indeterminate;
            }
            ("invariants", v)
        }
        Command::FirstIntegral { max_degree } => {
            let (v, complete) = first_integral(need(spec)?, *max_degree)?;
            if !complete {
                status = Status::Indeterminate;
            }
            ("first_integral", v)
        }
        Command::Resolve => {
            let spec = need(spec)?;
            let tree = resolve_spec(spec)?;
            if tree.flagged {
                status = Status::Indeterminate;
            }
            dot = Some(tree.to_dot());
            ("resolution", resolution(&tree)?)
        }
        Command::Bounds { explicit } => match explicit {
            Some((d, n)) => {
                body.insert("input".into(), json!({"d": d, "n_list": n}));
                ("bounds", bounds(&cor6_bound(*d, n)))
            }
            None => {
                let spec = need(spec)?;
                let tree = resolve_spec(spec)?;
                if tree.flagged {
                    status = Status::Indeterminate;
                    ("bounds", json!({"unresolved": true}))
                } else {
                    let disc = discrepancies(&tree)?;
                    let mut v = bounds(&cor6_bound(spec.field.d(), &disc.n));
                    v["n_list"] = json!(disc.n);
                    ("bounds", v)
                }
            }
        },
        Command::Verify { f } => {
            let spec = need(spec)?;
            let v = match verify_invariant(&spec.field, f)? {
                Some(c) => json!({
                    "f": poly(&c.f),
                    "invariant": true,
                    "cofactor": poly(&c.cofactor),
                    "within_bound": c.within_bound,
                }),
                None => json!({"f": poly(f), "invariant": false}),
            };
            ("verify", v)
        }
    };
    body.insert(key.into(), section);
    body.insert(
        "status".into(),
        json!(if status == Status::Complete {
            "complete"
        } else {
            "indeterminate"
        }),
    );
    Ok(Report {
        body: Value::Object(body),
        status,
        dot,
    })
}

fn resolve_spec(spec: &FieldSpec) -> Result<ResolutionTree, CliError> {
    if spec.germs.is_empty() {
        return Err(CliError::Input(
            "resolution needs at least one [[germ]] in the field file".into(),
        ));
    }
    Ok(resolve(Some(&spec.field), &spec.germs, spec.params.step_cap)?)
}

fn singular(spec: &FieldSpec) -> Result<Value, CliError> {
    let scheme = singular_points(&spec.field)?;
    let points: Vec<Value> = scheme
        .rational_points
        .iter()
        .map(|p| json!({"point": point(&p.point), "multiplicity": p.multiplicity}))
        .collect();
    let clusters: Vec<Value> = scheme
        .clusters
        .iter()
        .map(|c| {
            let (chart, variable) = match c.chart {
                Chart::Affine => ("affine", "s = x + shear*y"),
                Chart::Infinity => ("infinity", "u, points [1:u:0]"),
            };
            json!({
                "chart": chart,
                "variable": variable,
                "shear": rat(&c.shear),
                "poly": c.poly.to_string(),
                "degree": c.degree,
                "multiplicity": c.multiplicity,
            })
        })
        .collect();
    Ok(json!({
        "foliation_degree": spec.field.d(),
        "points": points,
        "clusters": clusters,
        "total": scheme.total_degree,
        "expected": singular_scheme_degree(spec.field.d()),
    }))
}

fn invariants(spec: &FieldSpec, n: u32) -> Result<(Value, bool), CliError> {
    let res = invariant_curve_search(&spec.field, n, spec.params.budget)?;
    let curves: Vec<Value> = res
        .curves
        .iter()
        .map(|c| json!({"f": poly(&c.f), "degree": c.degree, "cofactor": poly(&c.cofactor), "within_bound": c.within_bound}))
        .collect();
    let combination = darboux_combination(&res.curves).map_or(Value::Null, |fi| {
        json!({
            "kind": match fi.kind { FirstIntegralKind::Rational => "rational", FirstIntegralKind::Darboux => "darboux" },
            "factors": fi.components.iter().map(|(f, l)| json!({"f": poly(f), "exponent": l})).collect::<Vec<_>>(),
            "certificate": poly(&fi.certificate),
        })
    });
    let v = json!({
        "max_degree": n,
        "curves": curves,
        "complete": res.complete,
        "positive_dimensional": res.positive_dimensional,
        "darboux_threshold": threshold_count(spec.field.d()),
        "first_integral": combination,
    });
    Ok((v, res.complete))
}

fn first_integral(spec: &FieldSpec, max: u32) -> Result<(Value, bool), CliError> {
    let mut complete = true;
    let mut per_degree = Vec::new();
    for e in 1..=max {
        let pencil = find_pencil(&spec.field, e, spec.params.budget)?;
        let extactic = extactic_test(&spec.field, e, spec.params.extactic_budget)?;
        let (pencil_v, found) = match &pencil {
            PencilSearch::Found { f, g } => (json!({"found": true, "f": poly(f), "g": poly(g)}), Some(true)),
            PencilSearch::NotFound { complete: c } => {
                complete &= *c;
                (json!({"found": false, "complete": c}), c.then_some(false))
            }
        };
        let (ext_v, vanishes) = match &extactic {
            ExtacticOutcome::Vanishes => (json!({"verdict": "vanishes"}), Some(true)),
            ExtacticOutcome::NonZero(det) => (json!({"verdict": "nonzero", "determinant": poly(det)}), Some(false)),
            ExtacticOutcome::Indeterminate => {
                complete = false;
                (json!({"verdict": "indeterminate"}), None)
            }
        };
        let verdict = match (found, vanishes) {
            (Some(true), _) => "rational first integral",
            (_, Some(false)) => "none of this degree",
            (_, Some(true)) => "extactic vanishes, no pencil among rational curves",
            _ => "undetermined",
        };
        let consistent = !(found == Some(true) && vanishes == Some(false));
        per_degree.push(
            json!({"degree": e, "pencil": pencil_v, "extactic": ext_v, "verdict": verdict, "consistent": consistent}),
        );
    }
    Ok((json!({"max_degree": max, "degrees": per_degree}), complete))
}

fn direction(d: &Option<Direction>) -> Value {
    d.as_ref().map_or(Value::Null, |d| json!(d.to_string()))
}

fn resolution(tree: &ResolutionTree) -> Result<Value, CliError> {
    let nodes: Vec<Value> = tree
        .nodes
        .iter()
        .map(|n| {
            json!({
                "id": n.id,
                "parent": n.parent,
                "root": n.root,
                "direction": direction(&n.direction),
                "depth": n.depth,
                "nu_curve": n.nu_curve,
                "nu_total": n.nu_total,
                "nu_proper": n.nu_proper,
                "nu_field": n.nu_field,
                "proximate_to": n.proximate_to,
            })
        })
        .collect();
    let roots: Vec<Value> = tree
        .roots
        .iter()
        .map(|r| json!({"point": point(&r.point), "curves": r.curves}))
        .collect();
    let curves: Vec<Value> = tree
        .curves
        .iter()
        .zip(&tree.curve_degrees)
        .map(|(c, d)| json!({"equation": poly(c), "degree": d}))
        .collect();
    let contacts: Vec<Value> = tree
        .irrational_contacts
        .iter()
        .map(|c| json!({"node": c.node, "curve": c.curve, "slopes": c.poly.to_string(), "field_singular": c.field_singular}))
        .collect();
    let mut v = json!({
        "roots": roots,
        "curves": curves,
        "nodes": nodes,
        "irrational_contacts": contacts,
        "flagged": tree.flagged,
    });
    if !tree.flagged {
        let disc = discrepancies(tree)?;
        v["discrepancies"] = json!({"n": disc.n, "s": disc.s});
        let genus: Vec<Value> = (0..tree.curves.len())
            .map(|k| {
                let g = genus_remark9(tree, k)?;
                Ok(json!({
                    "curve": k,
                    "adjunction": adjunction_value(tree, k),
                    "foliation_formula": g.value,
                    "smooth_leaf": g.premise,
                }))
            })
            .collect::<Result<_, planefol_core::Error>>()?;
        v["genus"] = json!(genus);
    }
    Ok(v)
}

fn bounds(r: &BoundReport) -> Value {
    json!({
        "d": r.d,
        "s": r.s,
        "value": surd(&r.cor6_value),
        "threshold": r.cor6_threshold,
        "carnicer": r.carnicer,
        "limit_cycles": surd(&r.limit_cycle_value),
        "harnack_of_threshold": r.harnack_of_threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn saddle_singular_total() {
        let spec = FieldSpec::from_exprs("x", "-y").unwrap();
        let r = run(&Command::Singular, Some(&spec)).unwrap();
        assert_eq!(r.body["singular"]["total"], json!(3));
        assert_eq!(r.body["singular"]["points"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn verify_saddle_axes() {
        let spec = FieldSpec::from_exprs("x", "-y").unwrap();
        let r = run(
            &Command::Verify {
                f: parse_poly("x*y").unwrap(),
            },
            Some(&spec),
        )
        .unwrap();
        assert_eq!(r.body["verify"]["cofactor"], json!("0"));
        assert_eq!(r.body["verify"]["invariant"], json!(true));
    }

    #[test]
    fn explicit_bounds() {
        let r = run(
            &Command::Bounds {
                explicit: Some((2, vec![])),
            },
            None,
        )
        .unwrap();
        assert_eq!(r.body["bounds"]["threshold"], json!(6));
        assert_eq!(r.body["bounds"]["value"]["text"], json!("5"));
    }
}
