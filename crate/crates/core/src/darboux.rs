//! Invariant algebraic curves, cofactors and first integrals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::poly::groebner::{elimination_ideal, groebner_basis, GroebnerResult};
use crate::poly::linalg::{solve_affine, solve_linear, RatMatrix};
use crate::poly::upoly::UPoly;
use crate::poly::{monomials_up_to, MPoly, Monomial, MonomialOrder, Vars};
use crate::rational::{binomial, denominator_lcm, numerator_gcd, Rational};

/// A curve `f = 0` with `δ(f) = K·f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantCurve {
    pub f: MPoly,
    pub cofactor: MPoly,
    pub degree: u32,
    /// `deg K ≤ d + 1`, the cofactor bound for the foliation degree.
    pub within_bound: bool,
}

pub fn verify_invariant(field: &VectorField, f: &MPoly) -> Result<Option<InvariantCurve>> {
    if f.is_constant() {
        return Err(Error::ConstantCurve);
    }
    if f.vars() != field.vars() {
        return Err(Error::ArityMismatch(f.vars().describe(), field.vars().describe()));
    }
    let f = f.integer_primitive();
    let Some(k) = field.apply(&f).exact_div(&f)? else {
        return Ok(None);
    };
    let bound = field.d() + 1;
    let within_bound = k.degree().map_or(true, |deg| deg as i64 <= bound);
    Ok(Some(InvariantCurve {
        degree: f.degree().unwrap(),
        f,
        cofactor: k,
        within_bound,
    }))
}

/// `f·δ(g) − g·δ(f) = 0`.
pub fn pencil_check(field: &VectorField, f: &MPoly, g: &MPoly) -> Result<bool> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::EmptyPencil);
    }
    Ok((&(f * &field.apply(g)) - &(g * &field.apply(f))).is_zero())
}

/// `binom(d+2, 2) + 1`
pub fn threshold_count(d: i64) -> i64 {
    binomial(d + 2, 2) + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub curves: Vec<InvariantCurve>,
    /// Every branch finished within budget, so no rational solution of
    /// degree ≤ n was missed.
    pub complete: bool,
    /// Some branch had a positive-dimensional solution set, which was
    /// sampled rather than enumerated.
    pub positive_dimensional: bool,
}

struct Branch {
    curves: Vec<MPoly>,
    complete: bool,
    positive_dimensional: bool,
}

/// Rational points of the variety of `polys` in the variables `vars`
/// (indices into the ring), found by lex elimination. Free directions are
/// sampled at a few integers.
fn rational_points(polys: &[MPoly], vars: &[usize], budget: usize) -> Option<(Vec<BTreeMap<usize, Rational>>, bool)> {
    let nonzero: Vec<MPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.iter().any(MPoly::is_constant) {
        return Some((Vec::new(), false));
    }
    let Some((&v, rest)) = vars.split_last() else {
        return Some((vec![BTreeMap::new()], false));
    };
    let basis = if nonzero.is_empty() {
        Vec::new()
    } else {
        match groebner_basis(&nonzero, MonomialOrder::Lex, budget) {
            GroebnerResult::Indeterminate => return None,
            GroebnerResult::Basis(b) => b,
        }
    };
    if basis.len() == 1 && basis[0].is_one() {
        return Some((Vec::new(), false));
    }
    let univariate = basis
        .iter()
        .find(|p| p.involves(v) && (0..p.nvars()).all(|i| i == v || !p.involves(i)));
    let mut sampled = false;
    let values: Vec<Rational> = match univariate {
        Some(g) => UPoly::from_mpoly(g, v).unwrap().rational_roots(),
        None => {
            sampled = true;
            [0, 1, -1, 2]
                .iter()
                .map(|&k| Rational::from_integer(BigInt::from(k)))
                .collect()
        }
    };
    let mut out = Vec::new();
    for val in values {
        let sub: Vec<MPoly> = basis.iter().map(|p| p.substitute_value(v, &val)).collect();
        let (pts, s) = rational_points(&sub, rest, budget)?;
        sampled |= s;
        for mut p in pts {
            p.insert(v, val.clone());
            out.push(p);
        }
    }
    Some((out, sampled))
}

fn search_branch(field: &VectorField, basis: &[Monomial], lead: usize, m: u32, budget: usize) -> Branch {
    let xy = field.vars();
    // monomials of f: basis[0..=lead], the coefficient of basis[lead] is 1
    let f_monos = &basis[..=lead];
    let nc = lead;
    let k_monos = monomials_up_to(2, m);
    let nk = k_monos.len();
    let names: Vec<String> = (0..nc)
        .map(|i| format!("c{i}"))
        .chain((0..nk).map(|j| format!("k{j}")))
        .collect();
    let ring = Vars::new(&names);
    let images: Vec<MPoly> = f_monos
        .iter()
        .map(|mo| field.apply(&MPoly::monomial(xy, mo.clone(), Rational::one())))
        .collect();
    // coefficient of each x,y monomial in δ(f) − K f
    let mut eqs: BTreeMap<Monomial, MPoly> = BTreeMap::new();
    let coef_var = |i: usize| {
        if i == nc {
            MPoly::one(&ring)
        } else {
            MPoly::var(&ring, i)
        }
    };
    for (i, img) in images.iter().enumerate() {
        for (mo, c) in img.terms() {
            let e = eqs.entry(mo.clone()).or_insert_with(|| MPoly::zero(&ring));
            *e = &*e + &coef_var(i).scale(c);
        }
        for (j, km) in k_monos.iter().enumerate() {
            let mo = km.mul(&f_monos[i]);
            let e = eqs.entry(mo).or_insert_with(|| MPoly::zero(&ring));
            *e = &*e - &(&coef_var(i) * &MPoly::var(&ring, nc + j));
        }
    }
    let system: Vec<MPoly> = eqs.into_values().filter(|p| !p.is_zero()).collect();
    let incomplete = Branch {
        curves: Vec::new(),
        complete: false,
        positive_dimensional: false,
    };
    let gb = match groebner_basis(&system, MonomialOrder::Elimination { eliminate: nc }, budget) {
        GroebnerResult::Indeterminate => return incomplete,
        GroebnerResult::Basis(b) => b,
    };
    if gb.len() == 1 && gb[0].is_one() {
        return Branch {
            curves: Vec::new(),
            complete: true,
            positive_dimensional: false,
        };
    }
    let k_ideal = elimination_ideal(&gb, nc);
    let k_vars: Vec<usize> = (nc..nc + nk).collect();
    let Some((k_points, mut positive_dimensional)) = rational_points(&k_ideal, &k_vars, budget) else {
        return incomplete;
    };
    let mut curves = Vec::new();
    for kp in k_points {
        let kvals: Vec<Rational> = (nc..nc + nk).map(|j| kp[&j].clone()).collect();
        let cof = MPoly::from_terms(xy, k_monos.iter().cloned().zip(kvals.iter().cloned()));
        // δ(f) − K f is linear in the coefficients once K is fixed
        let cols: Vec<MPoly> = f_monos
            .iter()
            .zip(&images)
            .map(|(mo, img)| img - &(&cof * &MPoly::monomial(xy, mo.clone(), Rational::one())))
            .collect();
        let mut rows_idx: Vec<Monomial> = cols.iter().flat_map(|c| c.terms().map(|(mo, _)| mo.clone())).collect();
        rows_idx.sort();
        rows_idx.dedup();
        let a = if rows_idx.is_empty() {
            RatMatrix::zeros(0, nc)
        } else {
            RatMatrix::from_rows(
                rows_idx
                    .iter()
                    .map(|mo| cols[..nc].iter().map(|c| c.coeff(mo)).collect())
                    .collect(),
            )
        };
        let rhs: Vec<Rational> = rows_idx.iter().map(|mo| -cols[nc].coeff(mo)).collect();
        let solution = solve_affine(&a, &rhs);
        let Some(sol) = solution else { continue };
        let build = |coeffs: &[Rational]| {
            let mut terms: Vec<(Monomial, Rational)> =
                f_monos[..nc].iter().cloned().zip(coeffs.iter().cloned()).collect();
            terms.push((f_monos[nc].clone(), Rational::one()));
            MPoly::from_terms(xy, terms)
        };
        curves.push(build(&sol.particular));
        if let Some(v) = sol.null_space.basis.first() {
            positive_dimensional = true;
            let shifted: Vec<Rational> = sol.particular.iter().zip(v).map(|(a, b)| a + b).collect();
            curves.push(build(&shifted));
        }
    }
    Branch {
        curves,
        complete: true,
        positive_dimensional,
    }
}

/// All invariant curves of degree `1..=n` with rational coefficients,
/// branching on the leading monomial of `f`.
pub fn invariant_curve_search(field: &VectorField, n: u32, budget: usize) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::DegreeTooLow {
            requested: 0,
            actual: 1,
        });
    }
    let basis = monomials_up_to(2, n);
    let m = field.affine_degree();
    let branches: Vec<Branch> = (1..basis.len())
        .into_par_iter()
        .map(|lead| search_branch(field, &basis, lead, m, budget))
        .collect();
    let mut curves: BTreeMap<(u32, String), InvariantCurve> = BTreeMap::new();
    for b in &branches {
        for f in &b.curves {
            if let Some(c) = verify_invariant(field, f)? {
                curves.entry((c.degree, c.f.to_string())).or_insert(c);
            }
        }
    }
    Ok(SearchResult {
        curves: curves.into_values().collect(),
        complete: branches.iter().all(|b| b.complete),
        positive_dimensional: branches.iter().any(|b| b.positive_dimensional),
    })
}

/// A pencil `(f, g)` with `f δ(g) = g δ(f)`, i.e. the rational first
/// integral `g/f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PencilSearch {
    Found { f: MPoly, g: MPoly },
    NotFound { complete: bool },
}

/// Looks for a rational first integral of degree ≤ e among the invariant
/// curves found by the search: two independent curves with a common cofactor,
/// or a curve with zero cofactor paired with the constant 1.
pub fn find_pencil(field: &VectorField, e: u32, budget: usize) -> Result<PencilSearch> {
    let res = invariant_curve_search(field, e, budget)?;
    for (i, a) in res.curves.iter().enumerate() {
        if a.cofactor.is_zero() {
            return Ok(PencilSearch::Found {
                f: MPoly::one(field.vars()),
                g: a.f.clone(),
            });
        }
        for b in &res.curves[i + 1..] {
            if a.cofactor == b.cofactor {
                return Ok(PencilSearch::Found {
                    f: a.f.clone(),
                    g: b.f.clone(),
                });
            }
        }
    }
    Ok(PencilSearch::NotFound { complete: res.complete })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtacticOutcome {
    /// The determinant vanishes identically.
    Vanishes,
    NonZero(MPoly),
    Indeterminate,
}

/// Determinant of the matrix whose rows are the monomials of degree ≤ e
/// and their iterated images under δ. `budget` caps the total number of
/// terms held in the matrix during elimination.
pub fn extactic_test(field: &VectorField, e: u32, budget: usize) -> Result<ExtacticOutcome> {
    if e == 0 {
        return Err(Error::DegreeTooLow {
            requested: 0,
            actual: 1,
        });
    }
    let xy = field.vars();
    let monos = monomials_up_to(2, e);
    let n = monos.len();
    let mut rows: Vec<Vec<MPoly>> = vec![monos
        .iter()
        .map(|mo| MPoly::monomial(xy, mo.clone(), Rational::one()))
        .collect()];
    for k in 1..n {
        let next: Vec<MPoly> = rows[k - 1].iter().map(|p| field.apply(p)).collect();
        if next.iter().all(MPoly::is_zero) {
            return Ok(ExtacticOutcome::Vanishes);
        }
        rows.push(next);
    }
    Ok(match bareiss_det(rows, budget) {
        None => ExtacticOutcome::Indeterminate,
        Some(d) if d.is_zero() => ExtacticOutcome::Vanishes,
        Some(d) => ExtacticOutcome::NonZero(d),
    })
}

fn bareiss_det(mut m: Vec<Vec<MPoly>>, budget: usize) -> Option<MPoly> {
    let n = m.len();
    let vars = m[0][0].vars().clone();
    let mut prev = MPoly::one(&vars);
    let mut negate = false;
    for k in 0..n {
        if m[k..].iter().any(|row| row[k..].iter().all(MPoly::is_zero)) {
            return Some(MPoly::zero(&vars));
        }
        let Some(p) = (k..n)
            .filter(|&i| !m[i][k].is_zero())
            .min_by_key(|&i| m[i][k].num_terms())
        else {
            return Some(MPoly::zero(&vars));
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).ok()?.expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero(&vars);
        }
        prev = m[k][k].clone();
        let size: usize = m.iter().flatten().map(MPoly::num_terms).sum();
        if size > budget {
            return None;
        }
    }
    let d = m[n - 1][n - 1].clone();
    Some(if negate { -d } else { d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstIntegralKind {
    /// `g/f` with `f δ(g) = g δ(f)`.
    Rational,
    /// `∏ f_i^{λ_i}` with `Σ λ_i K_i = 0`.
    Darboux,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstIntegral {
    pub kind: FirstIntegralKind,
    pub components: Vec<(MPoly, i64)>,
    /// `Σ λ_i K_i`, identically zero for a valid integral.
    pub certificate: MPoly,
}

impl FirstIntegral {
    pub fn from_pencil(f: MPoly, g: MPoly) -> FirstIntegral {
        let certificate = MPoly::zero(f.vars());
        FirstIntegral {
            kind: FirstIntegralKind::Rational,
            components: vec![(g, 1), (f, -1)],
            certificate,
        }
    }
}

/// Integer relation among the cofactors, giving the first integral
/// `∏ f_i^{λ_i}`.
pub fn darboux_combination(curves: &[InvariantCurve]) -> Option<FirstIntegral> {
    let first = curves.first()?;
    let vars = first.f.vars().clone();
    let max_deg = curves.iter().filter_map(|c| c.cofactor.degree()).max().unwrap_or(0);
    let monos = monomials_up_to(2, max_deg);
    let cols: Vec<Vec<Rational>> = curves.iter().map(|c| c.cofactor.coefficient_vector(&monos)).collect();
    let a = RatMatrix::from_rows(
        (0..monos.len())
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect(),
    );
    let ns = solve_linear(&a);
    let v = ns.basis.first()?;
    let l = Rational::from_integer(denominator_lcm(v.iter()));
    let scaled: Vec<Rational> = v.iter().map(|x| x * &l).collect();
    let g = Rational::from_integer(numerator_gcd(scaled.iter()));
    let mut lambda: Vec<BigInt> = scaled.iter().map(|x| (x / &g).to_integer()).collect();
    if lambda.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        lambda.iter_mut().for_each(|x| *x = -x.clone());
    }
    let mut certificate = MPoly::zero(&vars);
    let mut components = Vec::new();
    for (c, lam) in curves.iter().zip(&lambda) {
        if lam.is_zero() {
            continue;
        }
        certificate = &certificate + &c.cofactor.scale(&Rational::from_integer(lam.clone()));
        components.push((c.f.clone(), i64::try_from(lam).expect("exponent fits in i64")));
    }
    Some(FirstIntegral {
        kind: FirstIntegralKind::Darboux,
        components,
        certificate,
    })
}
