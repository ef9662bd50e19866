//! Dense univariate polynomials over ℚ, used for eliminants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MPoly, Monomial, Vars};
use crate::rational::{denominator_lcm, format_rational, numerator_gcd, Rational};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Rational::one()])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        UPoly(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Read a polynomial that only involves variable `i`.
    pub fn from_mpoly(p: &MPoly, i: usize) -> Option<Self> {
        let deg = p.degree_in(i).unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (m, x) in p.terms() {
            if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                return None;
            }
            c[m.0[i] as usize] = x.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn to_mpoly(&self, vars: &Vars, i: usize) -> MPoly {
        MPoly::from_terms(
            vars,
            self.0.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; vars.len()];
                e[i] = k as u32;
                (Monomial(e), c.clone())
            }),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        UPoly::new(
            (0..n)
                .map(|k| {
                    self.0.get(k).cloned().unwrap_or_else(Rational::zero)
                        + other.0.get(k).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lc = d.leading();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lc;
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
            r.pop();
            while r.last().map_or(false, Zero::is_zero) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient (panics when `d` does not divide).
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Yun's squarefree decomposition: pairs `(factor, multiplicity)` with
    /// monic, pairwise coprime squarefree factors of positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0);
        let mut c = fp.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return UPoly::one();
        }
        let f = self.monic();
        f.div_exact(&f.gcd(&f.derivative()))
    }

    /// Integer coefficients, coprime, positive leading coefficient.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = Rational::from_integer(denominator_lcm(self.0.iter()));
        let scaled: Vec<Rational> = self.0.iter().map(|c| c * &l).collect();
        let g = numerator_gcd(scaled.iter());
        let mut ints: Vec<BigInt> = scaled.iter().map(|c| c.numer() / &g).collect();
        if ints.last().map_or(false, Signed::is_negative) {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
        ints
    }

    /// All distinct rational roots, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let Some(n) = self.degree() else { return Vec::new() };
        if n == 0 {
            return Vec::new();
        }
        let sf = self.squarefree_part();
        let a = sf.integer_coeffs();
        let n = a.len() - 1;
        let lead = a[n].clone();
        // g(z) = lead^(n-1) f(z / lead) is monic with integer coefficients;
        // rational roots of f correspond to integer roots of g.
        let mut g = Vec::with_capacity(n + 1);
        let mut pw = BigInt::one();
        let mut pows = vec![BigInt::one(); n];
        for k in (0..n).rev() {
            pows[k] = pw.clone();
            pw *= &lead;
        }
        for k in 0..n {
            g.push(Rational::from_integer(&a[k] * &pows[k]));
        }
        g.push(Rational::one());
        let g = UPoly::new(g);
        let bound: BigInt = g.0[..n]
            .iter()
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_else(BigInt::zero)
            + BigInt::one();
        let sturm = sturm_sequence(&g);
        let mut roots = Vec::new();
        integer_roots_in(&g, &sturm, -&bound - BigInt::one(), bound, &mut roots);
        let lead_r = Rational::from_integer(lead);
        let mut out: Vec<Rational> = roots.into_iter().map(|z| Rational::from_integer(z) / &lead_r).collect();
        out.sort();
        out
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let sf = self.squarefree_part();
        let s = sturm_sequence(&sf);
        let at_neg_inf = sign_changes(s.iter().map(|p| {
            let d = p.degree().unwrap_or(0);
            let l = p.leading();
            if d % 2 == 1 {
                -l
            } else {
                l
            }
        }));
        let at_pos_inf = sign_changes(s.iter().map(UPoly::leading));
        at_neg_inf - at_pos_inf
    }
}

fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    seq
}

fn sign_changes(values: impl Iterator<Item = Rational>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for v in values {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn variations_at(seq: &[UPoly], x: &BigInt) -> usize {
    let xr = Rational::from_integer(x.clone());
    sign_changes(seq.iter().map(|p| p.eval(&xr)))
}

/// Integer roots of squarefree `g` in the half-open interval `(lo, hi]`.
fn integer_roots_in(g: &UPoly, seq: &[UPoly], lo: BigInt, hi: BigInt, out: &mut Vec<BigInt>) {
    let count = variations_at(seq, &lo) as i64 - variations_at(seq, &hi) as i64;
    if count <= 0 {
        return;
    }
    if &hi - &lo == BigInt::one() {
        if g.eval(&Rational::from_integer(hi.clone())).is_zero() {
            out.push(hi);
        }
        return;
    }
    let mid = (&lo + &hi).div_floor(&BigInt::from(2));
    integer_roots_in(g, seq, lo, mid.clone(), out);
    integer_roots_in(g, seq, mid, hi, out);
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("({})*t", format_rational(c)),
                _ => format!("({})*t^{k}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn from_roots(roots: &[Rational]) -> UPoly {
        roots
            .iter()
            .fold(UPoly::one(), |acc, r| acc.mul(&UPoly::linear_root(r)))
    }

    #[test]
    fn roots_of_products() {
        let p = from_roots(&[rat(1, 2), int(-3), rat(7, 5)]).scale(&int(10));
        assert_eq!(p.rational_roots(), vec![int(-3), rat(1, 2), rat(7, 5)]);
        // x^2 + 1 contributes nothing
        let q = p.mul(&UPoly::new(vec![int(1), int(0), int(1)]));
        assert_eq!(q.rational_roots().len(), 3);
        assert_eq!(q.count_real_roots(), 3);
        assert!(UPoly::new(vec![int(-2), int(0), int(1)]).rational_roots().is_empty());
        assert_eq!(UPoly::new(vec![int(0), int(1)]).rational_roots(), vec![int(0)]);
    }

    #[test]
    fn yun() {
        let a = from_roots(&[int(1)]);
        let b = from_roots(&[int(2), int(3)]);
        let p = a.mul(&a).mul(&a).mul(&b);
        let d = p.squarefree_decomposition();
        assert_eq!(d, vec![(b.monic(), 1), (a.monic(), 3)]);
    }

    #[test]
    fn large_coefficient_roots() {
        let big = Rational::new(BigInt::from(123456789012345i64), BigInt::from(977));
        let p = from_roots(&[big.clone(), int(-1)]);
        assert_eq!(p.rational_roots(), vec![int(-1), big]);
    }
}
