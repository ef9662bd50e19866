//! The Picard lattice of the blown-up plane.
//!
//! [`DivisorClass`] uses the basis `H, E₁, …, E_k` of total transforms, in
//! which the intersection form is `diag(1, −1, …, −1)`. [`PrimeClass`] uses
//! the strict transforms `Ẽᵢ = Eᵢ − Σ_{j proximate to i} E_j` instead; the
//! divisors `E`, `Z` and `I` are naturally written in it.

use std::fmt;

use super::{CompId, ResolutionTree};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub h: i64,
    pub e: Vec<i64>,
}

impl DivisorClass {
    pub fn zero(n: usize) -> Self {
        DivisorClass { h: 0, e: vec![0; n] }
    }

    pub fn hyperplane(n: usize) -> Self {
        DivisorClass { h: 1, e: vec![0; n] }
    }

    pub fn exceptional(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.e[i] = 1;
        c
    }

    pub fn dot(&self, other: &Self) -> i64 {
        assert_eq!(self.e.len(), other.e.len(), "classes on different surfaces");
        self.h * other.h - self.e.iter().zip(&other.e).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn add(&self, other: &Self) -> Self {
        DivisorClass {
            h: self.h + other.h,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass {
            h: k * self.h,
            e: self.e.iter().map(|a| k * a).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }
}

/// A class written in the basis `H, Ẽ₁, …, Ẽ_k` of prime divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeClass {
    pub h: i64,
    pub e: Vec<i64>,
}

impl PrimeClass {
    pub fn to_diagonal(&self, tree: &ResolutionTree) -> DivisorClass {
        let n = tree.nodes.len();
        let mut out = DivisorClass {
            h: self.h,
            e: vec![0; n],
        };
        for (i, &c) in self.e.iter().enumerate() {
            out = out.add(&strict_exceptional_class(tree, i).scale(c));
        }
        out
    }
}

/// `Ẽᵢ = Eᵢ − Σ E_j` over the later centers lying on the strict transform of `Eᵢ`.
pub fn strict_exceptional_class(tree: &ResolutionTree, i: usize) -> DivisorClass {
    let n = tree.nodes.len();
    let mut c = DivisorClass::exceptional(n, i);
    for node in &tree.nodes {
        if node.proximate_to.contains(&i) {
            c.e[node.id] -= 1;
        }
    }
    c
}

/// `K_S = −3H + Σ Eᵢ`.
pub fn canonical_class(tree: &ResolutionTree) -> DivisorClass {
    DivisorClass {
        h: -3,
        e: vec![1; tree.nodes.len()],
    }
}

/// Strict transform of curve `k`: `deg·H − Σ mᵢ Eᵢ`.
pub fn curve_class(tree: &ResolutionTree, k: usize) -> DivisorClass {
    DivisorClass {
        h: tree.curve_degrees[k] as i64,
        e: tree.nodes.iter().map(|n| -(n.nu_proper[k] as i64)).collect(),
    }
}

/// `C·(C + K_S)` for the strict transform of curve `k`.
pub fn adjunction_value(tree: &ResolutionTree, k: usize) -> i64 {
    let c = curve_class(tree, k);
    c.dot(&c.add(&canonical_class(tree)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernReport {
    /// `−3H + E + (eH − I) + E`.
    pub log_cotangent: PrimeClass,
    /// `(e − d − 3)H + (2E + Z − I)`.
    pub difference: PrimeClass,
}

/// Both classes in the prime basis; `E` is the reduced exceptional divisor,
/// `I = Σ ν_P(C₁)·Ẽ_P` and `Z = Σ ν_P(δ)·Ẽ_P`.
pub fn chern_report(tree: &ResolutionTree, e: i64, d: i64) -> ChernReport {
    let i = tree.valuation_divisor();
    let z = tree.zero_divisor();
    ChernReport {
        log_cotangent: PrimeClass {
            h: e - 3,
            e: i.e.iter().map(|v| 2 - v).collect(),
        },
        difference: PrimeClass {
            h: e - d - 3,
            e: i.e.iter().zip(&z.e).map(|(v, z)| 2 + z - v).collect(),
        },
    }
}

/// The terms of `d·e − Σ ν_P(δ)ν_P(C) + Σ_{P≠Q incident} ν_P(δ)ν_Q(C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusExpansion {
    pub d: i64,
    pub e: i64,
    /// `(P, ν_P(δ), ν_P(C))` for every divisor.
    pub diagonal: Vec<(usize, i64, i64)>,
    /// `(P, Q, ν_P(δ), ν_Q(C))` for every ordered pair of distinct meeting divisors.
    pub pairs: Vec<(usize, usize, i64, i64)>,
    pub value: i64,
    /// The curve is a smooth complete leaf: the foliation has no singular
    /// point on its strict transform.
    pub premise: bool,
}

/// The genus expression for curve `k` of the tree, whose degree is its
/// share of `e`.
pub fn genus_remark9(tree: &ResolutionTree, k: usize) -> Result<GenusExpansion> {
    if tree.flagged {
        return Err(Error::Unresolved);
    }
    let d = tree
        .field_d()
        .ok_or_else(|| Error::Shape("the tree carries no field".into()))?;
    let e = tree.curve_degrees.get(k).ok_or(Error::UnknownNode(k))?.to_owned() as i64;
    let nu_delta = |p: usize| tree.nodes[p].nu_field.unwrap_or(0);
    let nu_c = |p: usize| tree.nodes[p].nu_curve[k];
    let diagonal: Vec<_> = tree.nodes.iter().map(|n| (n.id, nu_delta(n.id), nu_c(n.id))).collect();
    let mut pairs = Vec::new();
    for (a, b) in &tree.incidence {
        if let (CompId::Exceptional(p), CompId::Exceptional(q)) = (a, b) {
            pairs.push((*p, *q, nu_delta(*p), nu_c(*q)));
            pairs.push((*q, *p, nu_delta(*q), nu_c(*p)));
        }
    }
    pairs.sort();
    let value = d * e - diagonal.iter().map(|(_, a, b)| a * b).sum::<i64>()
        + pairs.iter().map(|(_, _, a, b)| a * b).sum::<i64>();
    let premise = super::foliation_smooth_along_curve(tree, k)?;
    Ok(GenusExpansion {
        d,
        e,
        diagonal,
        pairs,
        value,
        premise,
    })
}

impl fmt::Display for GenusExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d·e = {}·{} = {}", self.d, self.e, self.d * self.e)?;
        for (p, a, b) in &self.diagonal {
            write!(f, "; − ν_E{p}(δ)ν_E{p}(C) = −{a}·{b}")?;
        }
        for (p, q, a, b) in &self.pairs {
            write!(f, "; + ν_E{p}(δ)ν_E{q}(C) = {a}·{b}")?;
        }
        write!(f, "; total {}", self.value)?;
        if !self.premise {
            write!(f, " (foliation singular on the curve)")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{resolve, Germ, DEFAULT_STEP_CAP};
    use crate::field::{ProjectivePoint, VectorField};
    use crate::poly::test_util::xy;
    use crate::rational::int;

    fn cusp_tree() -> ResolutionTree {
        let (x, y) = xy();
        let field = VectorField::new(y.scale(&int(2)), x.pow(2).scale(&int(3))).unwrap();
        let germ = Germ {
            point: ProjectivePoint::affine(int(0), int(0)),
            equation: &y.pow(2) - &x.pow(3),
        };
        resolve(Some(&field), &[germ], DEFAULT_STEP_CAP).unwrap()
    }

    #[test]
    fn diagonal_form() {
        let h = DivisorClass::hyperplane(2);
        let e0 = DivisorClass::exceptional(2, 0);
        assert_eq!(h.dot(&h), 1);
        assert_eq!(e0.dot(&e0), -1);
        assert_eq!(h.dot(&e0), 0);
    }

    #[test]
    fn cusp_lattice() {
        let tree = cusp_tree();
        // the total transform in the prime basis matches the diagonal strict class
        let strict = PrimeClass {
            h: 3,
            e: tree.valuation_divisor().e.iter().map(|v| -v).collect(),
        };
        assert_eq!(strict.to_diagonal(&tree), curve_class(&tree, 0));
        for (i, self_int) in [-3, -2, -1].into_iter().enumerate() {
            let p = strict_exceptional_class(&tree, i);
            assert_eq!(p.dot(&p), self_int);
            assert!(curve_class(&tree, 0).dot(&p) >= 0);
        }
        assert_eq!(adjunction_value(&tree, 0), -2);
    }

    #[test]
    fn cusp_chern_report() {
        let tree = cusp_tree();
        let r = chern_report(&tree, 3, 1);
        assert_eq!(
            r.difference,
            PrimeClass {
                h: -1,
                e: vec![0, -1, -3]
            }
        );
        assert_eq!(
            r.log_cotangent,
            PrimeClass {
                h: 0,
                e: vec![0, -1, -4]
            }
        );
    }

    #[test]
    fn cusp_remark9_expansion() {
        let tree = cusp_tree();
        let r = genus_remark9(&tree, 0).unwrap();
        assert_eq!(r.value, 3 - 6 + 2 + 3);
        assert!(!r.premise);
        assert!(r.to_string().contains("total 2"));
    }
}
