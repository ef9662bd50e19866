//! Input files: a vector field, optional germs and analysis budgets.
//!
//! ```toml
//! p = "x"
//! q = "-y"
//!
//! [[germ]]
//! point = ["0", "0"]        # affine (x, y), or [X, Y, Z] projective
//! equation = "x*y"          # global affine equation of the curve
//!
//! [params]
//! max_degree = 2
//! budget = 200000           # Gröbner reduction steps
//! extactic_budget = 5000000 # terms held by the extactic elimination
//! step_cap = 64             # blow-ups per base point
//! ```

use planefol_core::blowup::{Germ, DEFAULT_STEP_CAP};
use planefol_core::field::{is_singular_at, ProjectivePoint, VectorField};
use planefol_core::{MPoly, Rational};
use serde::Deserialize;

use crate::error::CliError;
use crate::parse::{parse_poly, parse_rational};

pub const DEFAULT_BUDGET: usize = 200_000;
pub const DEFAULT_EXTACTIC_BUDGET: usize = 5_000_000;
pub const DEFAULT_MAX_DEGREE: u32 = 2;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    p: String,
    q: String,
    #[serde(default)]
    germ: Vec<RawGerm>,
    #[serde(default)]
    params: RawParams,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGerm {
    point: Vec<toml::Value>,
    equation: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    max_degree: Option<u32>,
    budget: Option<usize>,
    extactic_budget: Option<usize>,
    step_cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub max_degree: u32,
    pub budget: usize,
    pub extactic_budget: usize,
    pub step_cap: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            max_degree: DEFAULT_MAX_DEGREE,
            budget: DEFAULT_BUDGET,
            extactic_budget: DEFAULT_EXTACTIC_BUDGET,
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FieldSpec {
    pub field: VectorField,
    pub germs: Vec<Germ>,
    pub params: Params,
}

impl FieldSpec {
    pub fn from_exprs(p: &str, q: &str) -> Result<Self, CliError> {
        let field = field_from(p, q)?;
        Ok(FieldSpec {
            field,
            germs: Vec::new(),
            params: Params::default(),
        })
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        let field = field_from(&raw.p, &raw.q)?;
        let mut germs = Vec::new();
        for (i, g) in raw.germ.iter().enumerate() {
            let ctx = || format!("germ {i}");
            let coords = g
                .point
                .iter()
                .map(coordinate)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.context(ctx()))?;
            let point = match coords.as_slice() {
                [a, b] => ProjectivePoint::affine(a.clone(), b.clone()),
                [a, b, c] => ProjectivePoint::new([a.clone(), b.clone(), c.clone()])
                    .ok_or_else(|| CliError::Input(format!("germ {i}: the point [0:0:0] is not projective")))?,
                _ => return Err(CliError::Input(format!("germ {i}: a point has 2 or 3 coordinates"))),
            };
            if !is_singular_at(&field, &point) {
                return Err(CliError::Input(format!(
                    "germ {i}: {point} is not a singular point of the field"
                )));
            }
            let equation = parse_poly(&g.equation).map_err(|e| e.context(format!("germ {i} equation")))?;
            germs.push(Germ { point, equation });
        }
        let d = Params::default();
        let params = Params {
            max_degree: raw.params.max_degree.unwrap_or(d.max_degree),
            budget: raw.params.budget.unwrap_or(d.budget),
            extactic_budget: raw.params.extactic_budget.unwrap_or(d.extactic_budget),
            step_cap: raw.params.step_cap.unwrap_or(d.step_cap),
        };
        Ok(FieldSpec { field, germs, params })
    }
}

fn field_from(p: &str, q: &str) -> Result<VectorField, CliError> {
    let pp: MPoly = parse_poly(p).map_err(|e| e.context("P"))?;
    let qq: MPoly = parse_poly(q).map_err(|e| e.context("Q"))?;
    Ok(VectorField::new(pp, qq)?)
}

fn coordinate(v: &toml::Value) -> Result<Rational, CliError> {
    match v {
        toml::Value::Integer(n) => Ok(Rational::from_integer((*n).into())),
        toml::Value::String(s) => parse_rational(s),
        other => Err(CliError::Input(format!(
            "coordinate {other} is neither an integer nor a string"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_full_spec() {
        let spec = FieldSpec::from_toml(
            r#"
            p = "x"
            q = "-y"
            [[germ]]
            point = [0, "0"]
            equation = "x*y"
            [params]
            max_degree = 3
            "#,
        )
        .unwrap();
        assert_eq!(spec.germs.len(), 1);
        assert_eq!(spec.params.max_degree, 3);
        assert_eq!(spec.params.budget, DEFAULT_BUDGET);
    }

    #[test]
    fn rejects_germs_at_regular_points() {
        let text = "p = \"x\"\nq = \"-y\"\n[[germ]]\npoint = [1, 0]\nequation = \"y\"\n";
        assert!(matches!(FieldSpec::from_toml(text), Err(CliError::Input(_))));
        let bad = "p = \"x y\"\nq = \"y\"\n";
        assert!(matches!(FieldSpec::from_toml(bad), Err(CliError::In { .. })));
    }
}
