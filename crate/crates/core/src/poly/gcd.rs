//! Recursive primitive-PRS gcd and subresultant resultants.
//!
//! Polynomials are viewed as univariate in a main variable with coefficients
//! in the remaining variables (still stored as `MPoly` over the full variable
//! set, simply free of the main variable).

use num_traits::Zero;

use super::MPoly;
use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, numerator_gcd, Rational};

type Coeffs = Vec<MPoly>;

fn trim(v: &mut Coeffs) {
    while v.last().map_or(false, MPoly::is_zero) {
        v.pop();
    }
}

fn main_variable(f: &MPoly, g: &MPoly) -> Option<usize> {
    (0..f.nvars()).rev().find(|&i| f.involves(i) || g.involves(i))
}

/// Greatest common divisor, normalized to leading coefficient 1 in grevlex.
/// `gcd(0, 0) = 0`.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    assert_eq!(f.vars(), g.vars(), "variable sets agree");
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let Some(v) = main_variable(f, g) else {
        return MPoly::one(f.vars());
    };
    if !f.involves(v) {
        return gcd(f, &content_in(g, v));
    }
    if !g.involves(v) {
        return gcd(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd(&cf, &cg);
    let mut a = divide_coeffs(&f.coeffs_in(v), &cf);
    let mut b = divide_coeffs(&g.coeffs_in(v), &cg);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let prim = loop {
        let r = prem_coeffs(&a, &b);
        if r.is_empty() {
            break b;
        }
        if r.len() == 1 {
            break vec![MPoly::one(f.vars())];
        }
        a = b;
        b = primitive_coeffs(&r);
    };
    let p = MPoly::from_coeffs_in(f.vars(), v, &primitive_coeffs(&prim));
    (&p * &c).monic()
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a MPoly>) -> Option<MPoly> {
    let mut acc: Option<MPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(a) => {
                if a.is_one() {
                    return Some(a);
                }
                gcd(&a, p)
            }
        });
    }
    acc
}

/// Content with respect to variable `v`: gcd of the coefficients of the
/// powers of `v`.
pub fn content_in(f: &MPoly, v: usize) -> MPoly {
    gcd_many(f.coeffs_in(v).iter().filter(|c| !c.is_zero())).unwrap_or_else(|| MPoly::zero(f.vars()))
}

fn divide_coeffs(c: &[MPoly], d: &MPoly) -> Coeffs {
    c.iter()
        .map(|x| x.exact_div(d).expect("same vars").expect("content divides"))
        .collect()
}

/// Divides out the polynomial content and then the rational content, so
/// that remainder sequences keep integer coefficients with gcd 1.
fn primitive_coeffs(c: &[MPoly]) -> Coeffs {
    let c = match gcd_many(c.iter().filter(|x| !x.is_zero())) {
        Some(g) if !g.is_one() => divide_coeffs(c, &g),
        _ => c.to_vec(),
    };
    let all = || c.iter().flat_map(|p| p.terms().map(|(_, v)| v));
    let num = numerator_gcd(all());
    if num.is_zero() {
        return c;
    }
    let scale = Rational::new(denominator_lcm(all()), num);
    c.iter().map(|p| p.scale(&scale)).collect()
}

/// Pseudo-remainder of coefficient vectors: `lc(b)^(da-db+1) a = q b + r`.
fn prem_coeffs(a: &[MPoly], b: &[MPoly]) -> Coeffs {
    let mut r: Coeffs = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return r;
    }
    let lb = &b[db];
    let mut e = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() >= b.len() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (k, bk) in b.iter().enumerate() {
            let idx = k + dr - db;
            r[idx] = &r[idx] - &(&lr * bk);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let m = lb.pow(e as u32);
        for x in r.iter_mut() {
            *x = &*x * &m;
        }
    }
    r
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
pub fn pseudo_remainder(a: &MPoly, b: &MPoly, v: usize) -> Result<MPoly> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = prem_coeffs(&a.coeffs_in(v), &b.coeffs_in(v));
    Ok(MPoly::from_coeffs_in(a.vars(), v, &r))
}

/// Resultant eliminating variable `v`, computed with the subresultant PRS.
pub fn resultant(f: &MPoly, g: &MPoly, v: usize) -> Result<MPoly> {
    if f.vars() != g.vars() {
        return Err(Error::ArityMismatch(
            f.vars().names().join(","),
            g.vars().names().join(","),
        ));
    }
    if v >= f.nvars() {
        return Err(Error::UnknownVariable(format!("#{v}")));
    }
    if !f.involves(v) && !g.involves(v) {
        return Err(Error::ConstantInVariable(f.vars().names()[v].clone()));
    }
    let vars = f.vars();
    if f.is_zero() || g.is_zero() {
        return Ok(MPoly::zero(vars));
    }
    let mut a = f.coeffs_in(v);
    let mut b = g.coeffs_in(v);
    let mut sign_negative = false;
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign_negative = true;
        }
    }
    let da = a.len() - 1;
    if b.len() == 1 {
        // res(a, const) = const^deg a
        let r = b[0].pow(da as u32);
        return Ok(if sign_negative { -r } else { r });
    }
    let ca = content_in(&MPoly::from_coeffs_in(vars, v, &a), v);
    let cb = content_in(&MPoly::from_coeffs_in(vars, v, &b), v);
    let t = &ca.pow((b.len() - 1) as u32) * &cb.pow(da as u32);
    a = divide_coeffs(&a, &ca);
    b = divide_coeffs(&b, &cb);
    let mut g_acc = MPoly::one(vars);
    let mut h = MPoly::one(vars);
    loop {
        let deg_a = a.len() - 1;
        let deg_b = b.len() - 1;
        let delta = deg_a - deg_b;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = prem_coeffs(&a, &b);
        a = b;
        if r.is_empty() {
            return Ok(MPoly::zero(vars));
        }
        let divisor = &g_acc * &h.pow(delta as u32);
        b = divide_coeffs(&r, &divisor);
        g_acc = a[a.len() - 1].clone();
        if delta > 0 {
            let num = g_acc.pow(delta as u32);
            h = num
                .exact_div(&h.pow((delta - 1) as u32))
                .expect("same vars")
                .expect("subresultant division is exact");
        }
        if b.len() == 1 {
            let deg_a = a.len() - 1;
            let num = b[0].pow(deg_a as u32);
            let hh = num
                .exact_div(&h.pow((deg_a - 1) as u32))
                .expect("same vars")
                .expect("subresultant division is exact");
            let r = &t * &hh;
            return Ok(if sign_negative { -r } else { r });
        }
    }
}

/// Squarefree part `f / gcd(f, ∂f/∂x_1, ..., ∂f/∂x_n)`, monic.
pub fn squarefree_part(f: &MPoly) -> MPoly {
    if f.is_zero() || f.is_constant() {
        return f.monic();
    }
    let mut g = f.clone();
    for i in 0..f.nvars() {
        if g.is_one() {
            break;
        }
        g = gcd(&g, &f.derivative(i));
    }
    f.exact_div(&g).expect("same vars").expect("gcd divides").monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_util::{c, xy};
    use crate::poly::Vars;
    use crate::rational::int;

    #[test]
    fn gcd_examples() {
        let (x, y) = xy();
        assert_eq!(gcd(&(&x.pow(2) - &y.pow(2)), &(&x - &y)), &x - &y);
        let f = (&x + &y).scale(&int(3));
        assert_eq!(gcd(&f, &MPoly::zero(&Vars::xy())), &x + &y);
        let a = &(&x.pow(2) * &y) + &(&x * &y.pow(2));
        assert_eq!(gcd(&a, &(&x * &y)), &x * &y);
        assert!(gcd(&(&x + &c(1)), &(&x - &c(1))).is_one());
    }

    #[test]
    fn resultant_examples() {
        let (x, y) = xy();
        let r = resultant(&(&y - &x), &(&y - &x.scale(&int(2))), 1).unwrap();
        assert!(r == x || r == -&x);
        let f = &y.pow(2) - &x.pow(3);
        assert!(resultant(&f, &f, 1).unwrap().is_zero());
        let r = resultant(&f, &y, 1).unwrap();
        assert!(r == x.pow(3) || r == -x.pow(3));
        assert!(matches!(resultant(&x, &c(2), 1), Err(Error::ConstantInVariable(_))));
    }

    #[test]
    fn squarefree() {
        let (x, y) = xy();
        let f = &(&x - &y).pow(3) * &(&x + &c(2));
        assert_eq!(squarefree_part(&f), (&(&x - &y) * &(&x + &c(2))).monic());
    }
}
