//! Rational one- and two-forms on the affine chart `z = 1`.
//!
//! Components are rational functions kept in lowest terms with a monic
//! denominator, so pole orders can be read off directly.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{gcd, MPoly, Vars};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MPoly,
    den: MPoly,
}

impl RationalFunction {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.vars() != den.vars() {
            return Err(Error::ArityMismatch(num.vars().describe(), den.vars().describe()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            let vars = den.vars().clone();
            return RationalFunction {
                num: MPoly::zero(&vars),
                den: MPoly::one(&vars),
            };
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap().unwrap(), den.exact_div(&g).unwrap().unwrap())
        };
        let lc = d.leading_coeff();
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RationalFunction { num: n, den: d }
    }

    pub fn from_poly(p: MPoly) -> Self {
        let den = MPoly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(MPoly::zero(vars))
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduced(&self.num + &o.num, self.den.clone());
        }
        Self::reduced(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::reduced(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(&self.num * &o.den, &self.den * &o.num))
    }

    /// Quotient rule: `(n/d)' = (n' d - n d') / d^2`.
    pub fn derivative(&self, i: usize) -> Self {
        let top = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        Self::reduced(top, self.den.pow(2))
    }

    /// Order of vanishing along the coordinate hyperplane `x_i = 0`
    /// (negative for a pole); `None` for the zero function.
    pub fn order_in(&self, i: usize) -> Option<i64> {
        let n = self.num.order_in(i)? as i64;
        let d = self.den.order_in(i).unwrap_or(0) as i64;
        Some(n - d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `a dx + b dy`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalOneForm {
    pub a: RationalFunction,
    pub b: RationalFunction,
}

/// `c dx∧dy`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTwoForm {
    pub c: RationalFunction,
}

impl RationalTwoForm {
    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalTwoForm { c: self.c.add(&o.c) }
    }

    pub fn scale(&self, g: &RationalFunction) -> Self {
        RationalTwoForm { c: self.c.mul(g) }
    }
}

impl RationalOneForm {
    pub fn from_polys(a: MPoly, b: MPoly) -> Self {
        RationalOneForm {
            a: RationalFunction::from_poly(a),
            b: RationalFunction::from_poly(b),
        }
    }

    /// `dg` for a rational function `g`.
    pub fn differential(g: &RationalFunction) -> Self {
        RationalOneForm {
            a: g.derivative(0),
            b: g.derivative(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalOneForm {
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RationalOneForm {
            a: self.a.sub(&o.a),
            b: self.b.sub(&o.b),
        }
    }

    pub fn scale(&self, g: &RationalFunction) -> Self {
        RationalOneForm {
            a: self.a.mul(g),
            b: self.b.mul(g),
        }
    }
}

/// `d(a dx + b dy) = (∂b/∂x − ∂a/∂y) dx∧dy`
pub fn exterior_derivative(w: &RationalOneForm) -> RationalTwoForm {
    RationalTwoForm {
        c: w.b.derivative(0).sub(&w.a.derivative(1)),
    }
}

pub fn wedge(u: &RationalOneForm, w: &RationalOneForm) -> RationalTwoForm {
    RationalTwoForm {
        c: u.a.mul(&w.b).sub(&u.b.mul(&w.a)),
    }
}

/// `df/f` in lowest terms.
pub fn log_differential(f: &MPoly) -> Result<RationalOneForm> {
    if f.is_zero() {
        return Err(Error::LogOfZero);
    }
    Ok(RationalOneForm {
        a: RationalFunction::new(f.derivative(0), f.clone())?,
        b: RationalFunction::new(f.derivative(1), f.clone())?,
    })
}

/// Pole orders along the line at infinity, read in the chart
/// `x = 1/w, y = u/w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleCertificate {
    pub twist: u32,
    /// Pole order of `f dg − g df` (0 when the form is regular or zero).
    pub pole_order: i64,
    /// Pole order of `f dg` alone, for comparison.
    pub pole_order_single: i64,
    pub bound: i64,
    pub within_bound: bool,
}

/// Pole order along `w = 0` of a polynomial one-form pulled back to the chart
/// at infinity.
pub fn pole_order_at_infinity(form: &RationalOneForm) -> i64 {
    let uw = Vars::new(&["u", "w"]);
    let w = MPoly::var(&uw, 1);
    let u = MPoly::var(&uw, 0);
    // p(1/w, u/w) = p^h(1, u, w) / w^deg p
    let pull = |r: &RationalFunction| -> RationalFunction {
        let lift = |p: &MPoly| -> (MPoly, u32) {
            let Some(k) = p.degree() else {
                return (MPoly::zero(&uw), 0);
            };
            let h = p.homogenize(k, &Vars::xyz()).expect("degree fits");
            let img = h.substitute(&[MPoly::one(&uw), u.clone(), w.clone()], &uw);
            (img, k)
        };
        let (n, kn) = lift(&r.num);
        let (d, kd) = lift(&r.den);
        // n/w^kn divided by d/w^kd
        let (n, d) = if kd >= kn {
            (&n * &w.pow(kd - kn), d)
        } else {
            (n, &d * &w.pow(kn - kd))
        };
        RationalFunction::reduced(n, d)
    };
    let a = pull(&form.a);
    let b = pull(&form.b);
    let wf = RationalFunction::from_poly(w.clone());
    let w2 = RationalFunction::from_poly(w.pow(2));
    let uf = RationalFunction::from_poly(u.clone());
    // dx = -dw/w^2, dy = (w du - u dw)/w^2
    let du = b.div(&wf).expect("w nonzero");
    let dw = a.neg().sub(&uf.mul(&b)).div(&w2).expect("w nonzero");
    let orders = [du.order_in(1), dw.order_in(1)];
    let min = orders.iter().flatten().min().copied();
    min.map_or(0, |m| (-m).max(0))
}

/// `f dg − g df` for sections of degree at most `e`, with its pole
/// certificate at infinity.
pub fn pencil_form(f: &MPoly, g: &MPoly, e: u32) -> Result<(RationalOneForm, PoleCertificate)> {
    if f.vars() != g.vars() {
        return Err(Error::ArityMismatch(f.vars().describe(), g.vars().describe()));
    }
    if f.is_zero() && g.is_zero() {
        return Err(Error::EmptyPencil);
    }
    for p in [f, g] {
        if let Some(k) = p.degree() {
            if k > e {
                return Err(Error::SectionTooLarge { degree: k, twist: e });
            }
        }
    }
    let form = RationalOneForm::from_polys(
        &(f * &g.derivative(0)) - &(g * &f.derivative(0)),
        &(f * &g.derivative(1)) - &(g * &f.derivative(1)),
    );
    let single = RationalOneForm::from_polys(f * &g.derivative(0), f * &g.derivative(1));
    let pole_order = pole_order_at_infinity(&form);
    let bound = 2 * e as i64;
    let cert = PoleCertificate {
        twist: e,
        pole_order,
        pole_order_single: pole_order_at_infinity(&single),
        bound,
        within_bound: pole_order <= bound,
    };
    Ok((form, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_util::{c, xy};
    use crate::rational::int;

    fn rf(p: MPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn lowest_terms() {
        let (x, y) = xy();
        let r = RationalFunction::new((&x * &y).scale(&int(2)), (&x * &x).scale(&int(4))).unwrap();
        assert_eq!(r.numerator(), &y.scale(&crate::rational::rat(1, 2)));
        assert_eq!(r.denominator(), &x);
        assert_eq!(r.order_in(0), Some(-1));
        assert!(RationalFunction::new(x.clone(), MPoly::zero(&Vars::xy())).is_err());
    }

    #[test]
    fn derivative_and_wedge() {
        let (x, y) = xy();
        let w = RationalOneForm::from_polys(MPoly::zero(&Vars::xy()), x.clone());
        assert_eq!(exterior_derivative(&w).c, rf(c(1)));
        let f = &(&x.pow(3) * &y) + &y.pow(2);
        let df = RationalOneForm::differential(&rf(f.clone()));
        assert!(exterior_derivative(&df).is_zero());
        assert!(wedge(&df, &df).is_zero());
        let u = RationalOneForm::from_polys(f.clone(), MPoly::zero(&Vars::xy()));
        let v = RationalOneForm::from_polys(MPoly::zero(&Vars::xy()), &x + &c(1));
        assert_eq!(wedge(&u, &v).c, rf(&f * &(&x + &c(1))));
    }

    #[test]
    fn log_differentials() {
        let (x, y) = xy();
        let l = log_differential(&(&x * &y)).unwrap();
        assert_eq!(l.a, RationalFunction::new(c(1), x.clone()).unwrap());
        assert_eq!(l.b, RationalFunction::new(c(1), y.clone()).unwrap());
        let l2 = log_differential(&x.pow(2)).unwrap();
        assert_eq!(l2.a, RationalFunction::new(c(2), x.clone()).unwrap());
        assert!(exterior_derivative(&l).is_zero());
        assert_eq!(log_differential(&MPoly::zero(&Vars::xy())), Err(Error::LogOfZero));
    }

    #[test]
    fn pencil_examples() {
        let (x, y) = xy();
        let (form, cert) = pencil_form(&x, &y, 1).unwrap();
        assert_eq!(form, RationalOneForm::from_polys(-&y, x.clone()));
        assert_eq!(cert.pole_order, 2);
        assert_eq!(cert.pole_order_single, 3);
        let (form, _) = pencil_form(&x, &x, 1).unwrap();
        assert!(form.is_zero());
        assert!(matches!(
            pencil_form(&x.pow(2), &y, 1),
            Err(Error::SectionTooLarge { .. })
        ));
        let z = MPoly::zero(&Vars::xy());
        assert_eq!(pencil_form(&z, &z, 1).unwrap_err(), Error::EmptyPencil);
    }
}
