//! Exact arithmetic foundation: sparse multivariate polynomials over ℚ,
//! univariate helpers, gcd/resultant, linear algebra and Gröbner bases.

mod gcd;
pub mod groebner;
pub mod linalg;
mod monomial;
pub mod upoly;

pub use gcd::{content_in, gcd, gcd_many, pseudo_remainder, resultant, squarefree_part};
pub use monomial::{Monomial, MonomialOrder};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, format_rational, numerator_gcd, Rational};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// Affine chart variables `x, y`.
    pub fn xy() -> Self {
        Vars::new(&["x", "y"])
    }

    /// Homogeneous coordinates `X, Y, Z`.
    pub fn xyz() -> Self {
        Vars::new(&["X", "Y", "Z"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn describe(&self) -> String {
        self.0.join(",")
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by grevlex-ordered monomials; zero
/// coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), i), Rational::one());
        p
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::var(vars, vars.index_of(name)?))
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial arity");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients and exponent lists.
    pub fn from_int_terms(vars: &Vars, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            vars,
            terms
                .iter()
                .map(|(c, e)| (Monomial(e.to_vec()), Rational::from_integer(BigInt::from(*c)))),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.vars.len(), "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map_or(false, |(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Constant term (zero if absent).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` is the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Lowest total degree of a term (order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Lowest exponent of variable `i` over all terms.
    pub fn order_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_term_in(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Homogeneous component of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_same(&self, other: &MPoly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::ArityMismatch(self.vars.describe(), other.vars.describe()))
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                *acc.entry(m).or_insert_with(Rational::zero) += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MPoly {
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    /// Formal partial derivative with respect to variable index `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                out.terms.insert(m2, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn derivative_by(&self, name: &str) -> Result<MPoly> {
        Ok(self.derivative(self.vars.index_of(name)?))
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &MPoly) -> Result<Option<MPoly>> {
        self.check_same(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lm, lc) = g.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = lm.quotient(&m);
            let qc = c / &lc;
            rem = &rem - &g.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Scalar multiple with leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&(Rational::one() / lc))
    }

    /// Scalar multiple with coprime integer coefficients and positive leading
    /// coefficient.
    pub fn integer_primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = Rational::from_integer(denominator_lcm(self.terms.values()));
        let scaled = self.scale(&l);
        let g = Rational::from_integer(numerator_gcd(scaled.terms.values()));
        let mut out = scaled.scale(&(Rational::one() / g));
        if out.leading_coeff().is_negative() {
            out = -out;
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute polynomials (all in `target` variables) for each variable.
    pub fn substitute(&self, images: &[MPoly], target: &Vars) -> MPoly {
        assert_eq!(images.len(), self.nvars());
        // cache powers per variable
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(target), p.clone()]).collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Replace variable `i` by a rational value, keeping the variable set.
    pub fn substitute_value(&self, i: usize, value: &Rational) -> MPoly {
        let mut out = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out.add_term(m2, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Same polynomial viewed in another variable set (variables matched by name).
    pub fn rename_into(&self, target: &Vars) -> Result<MPoly> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect::<Result<_>>()?;
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients of powers of variable `i` (index = power); each
    /// coefficient is free of variable `i`.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(&self.vars); deg + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out[e].terms.insert(m2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(vars: &Vars, i: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                let mut m2 = m.clone();
                m2.0[i] += k as u32;
                out.add_term(m2, x.clone());
            }
        }
        out
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Homogenize into `vars.len() + 1` variables with the extra variable
    /// appended, to total degree `total`.
    pub fn homogenize(&self, total: u32, target: &Vars) -> Result<MPoly> {
        assert_eq!(target.len(), self.nvars() + 1);
        if let Some(d) = self.degree() {
            if total < d {
                return Err(Error::DegreeTooLow {
                    requested: total,
                    actual: d,
                });
            }
        }
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.push(total - m.degree());
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Set variable `chart` to 1 and drop it, landing in `target`.
    pub fn dehomogenize(&self, chart: usize, target: &Vars) -> MPoly {
        assert_eq!(target.len() + 1, self.nvars());
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let e: Vec<u32> =
                m.0.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != chart)
                    .map(|(_, &k)| k)
                    .collect();
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Translate so that `point` becomes the origin: returns `f(x + point)`.
    pub fn translate(&self, point: &[Rational]) -> MPoly {
        let images: Vec<MPoly> = (0..self.nvars())
            .map(|i| &MPoly::var(&self.vars, i) + &MPoly::constant(&self.vars, point[i].clone()))
            .collect();
        self.substitute(&images, &self.vars)
    }

    /// Coefficient vector over a fixed monomial list.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Vec<Rational> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }
}

/// All monomials of total degree ≤ `max_degree` in `nvars` variables, sorted
/// in increasing grevlex order.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == nvars {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, 0, max_degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rational(&abs));
            }
            for (name, &e) in self.vars.names().iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.vars.describe(), self)
    }
}

// Operator impls panic on mismatched variable sets; use the `checked_*`
// methods where the inputs are not known to agree.
impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("variable sets agree")
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("variable sets agree")
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("variable sets agree")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                self.$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;
    use crate::rational::int;

    /// x and y in the affine chart.
    pub fn xy() -> (MPoly, MPoly) {
        let v = Vars::xy();
        (MPoly::var(&v, 0), MPoly::var(&v, 1))
    }

    pub fn c(n: i64) -> MPoly {
        MPoly::constant(&Vars::xy(), int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::test_util::{c, xy};
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn ring_examples() {
        let (x, y) = xy();
        assert_eq!(&(&x + &y) * &(&x - &y), &(&x * &x) - &(&y * &y));
        assert!((&x * &MPoly::zero(&Vars::xy())).is_zero());
        let cube = (&x + &c(1)).pow(3);
        let expect = &(&(&x.pow(3) + &x.pow(2).scale(&int(3))) + &x.scale(&int(3))) + &c(1);
        assert_eq!(cube, expect);
        assert_eq!(cube.degree(), Some(3));
        assert_eq!(MPoly::zero(&Vars::xy()).degree(), None);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = MPoly::var(&Vars::xy(), 0);
        let b = MPoly::var(&Vars::xyz(), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::ArityMismatch(..))));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn derivative_examples() {
        let (x, y) = xy();
        let f = &x.pow(2) * &y;
        assert_eq!(f.derivative(0), (&x * &y).scale(&int(2)));
        assert!(c(7).derivative(0).is_zero());
        let g = &(&x.pow(3) + &x.pow(2).scale(&int(3))) + &c(1);
        assert_eq!(g.derivative(0), &x.pow(2).scale(&int(3)) + &x.scale(&int(6)));
        assert!(matches!(g.derivative_by("t"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn exact_div_examples() {
        let (x, y) = xy();
        let f = &x.pow(2) - &y.pow(2);
        assert_eq!(f.exact_div(&(&x - &y)).unwrap(), Some(&x + &y));
        assert_eq!((&x.pow(2) + &c(1)).exact_div(&(&x + &c(1))).unwrap(), None);
        assert_eq!(f.exact_div(&f).unwrap(), Some(c(1)));
        assert_eq!(f.exact_div(&MPoly::zero(&Vars::xy())), Err(Error::DivisionByZero));
    }

    #[test]
    fn homogenize_examples() {
        let (x, y) = xy();
        let h = Vars::xyz();
        let (cx, cy, cz) = (MPoly::var(&h, 0), MPoly::var(&h, 1), MPoly::var(&h, 2));
        assert_eq!((&x + &c(1)).homogenize(1, &h).unwrap(), &cx + &cz);
        assert_eq!((&cx + &cz).dehomogenize(2, &Vars::xy()), &x + &c(1));
        assert_eq!((&y - &x.pow(2)).homogenize(2, &h).unwrap(), &(&cy * &cz) - &cx.pow(2));
        assert_eq!(
            x.pow(2).homogenize(1, &h),
            Err(Error::DegreeTooLow {
                requested: 1,
                actual: 2
            })
        );
    }

    #[test]
    fn display_and_eval() {
        let (x, y) = xy();
        let f = &(&x.pow(2).scale(&rat(1, 2)) - &(&x * &y)) + &c(-3);
        assert_eq!(f.to_string(), "1/2*x^2 - x*y - 3");
        assert_eq!(f.eval(&[int(2), int(1)]), int(-3));
        assert_eq!(
            f.translate(&[int(1), int(0)]).eval(&[int(1), int(1)]),
            f.eval(&[int(2), int(1)])
        );
    }

    #[test]
    fn monomial_listing() {
        let ms = monomials_up_to(2, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms[0].is_one());
        assert_eq!(ms[5], Monomial(vec![2, 0]));
    }
}
