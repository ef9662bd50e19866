//! Closed-form degree and limit-cycle bounds, evaluated exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::blowup::{localize_at_degree, ResolutionTree};
use crate::error::{Error, Result};
use crate::poly::linalg::{solve_linear, RatMatrix};
use crate::poly::{monomials_up_to, MPoly, Monomial, Vars};
use crate::rational::{binomial, format_rational, int, rat, Rational};

/// `a + b√r` with `r` squarefree, or `r = 0` and `b = 0` for a rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: Rational,
    b: Rational,
    r: u64,
}

impl QuadraticSurd {
    pub fn new(a: Rational, b: Rational, r: u64) -> Self {
        let (square, free) = split_square(r);
        let b = b * Rational::from_integer(BigInt::from(square));
        match free {
            0 => QuadraticSurd::rational(a),
            1 => QuadraticSurd::rational(a + b),
            _ if b.is_zero() => QuadraticSurd::rational(a),
            _ => QuadraticSurd { a, b, r: free },
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticSurd {
            a,
            b: Rational::zero(),
            r: 0,
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.r
    }

    pub fn is_rational(&self) -> bool {
        self.r == 0
    }

    fn common_radicand(&self, other: &Self) -> Option<u64> {
        match (self.r, other.r) {
            (0, r) | (r, 0) => Some(r),
            (r, s) if r == s => Some(r),
            _ => None,
        }
    }

    /// Sum; `None` when the radicands differ.
    pub fn add(&self, other: &Self) -> Option<Self> {
        let r = self.common_radicand(other)?;
        Some(QuadraticSurd::new(&self.a + &other.a, &self.b + &other.b, r))
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd {
            a: -&self.a,
            b: -&self.b,
            r: self.r,
        }
    }

    pub fn sub(&self, other: &Self) -> Option<Self> {
        self.add(&other.neg())
    }

    /// Product; `None` when the radicands differ.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        let r = self.common_radicand(other)?;
        let rr = Rational::from_integer(BigInt::from(r));
        let a = &self.a * &other.a + &self.b * &other.b * rr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Some(QuadraticSurd::new(a, b, r))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadraticSurd::new(&self.a * c, &self.b * c, self.r)
    }

    pub fn add_rational(&self, c: &Rational) -> Self {
        QuadraticSurd {
            a: &self.a + c,
            ..self.clone()
        }
    }

    /// Sign of the value, decided by comparing `a²` with `b²r`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if self.r == 0 || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2r = &self.b * &self.b * Rational::from_integer(BigInt::from(self.r));
        if a2 > b2r {
            sa
        } else {
            sb
        }
    }

    /// Exact comparison, also across different radicands.
    pub fn compare(&self, other: &Self) -> Ordering {
        if let Some(d) = self.sub(other) {
            return d.signum();
        }
        // compare p = a₁ − a₂ + b₁√r₁ against q = b₂√r₂
        let p = QuadraticSurd {
            a: &self.a - &other.a,
            b: self.b.clone(),
            r: self.r,
        };
        let q = QuadraticSurd {
            a: Rational::zero(),
            b: other.b.clone(),
            r: other.r,
        };
        let (sp, sq) = (p.signum(), q.signum());
        if sp != sq {
            return sp.cmp(&sq);
        }
        let p2 = p.mul(&p).expect("same radicand");
        let q2 = q.mul(&q).expect("same radicand");
        let by_square = p2.sub(&q2).expect("q² is rational").signum();
        if sp == Ordering::Less {
            by_square.reverse()
        } else {
            by_square
        }
    }

    pub fn cmp_rational(&self, c: &Rational) -> Ordering {
        self.add_rational(&-c).signum()
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        // b√r lies in [s/q, (s+1)/q) for s = ⌊√(p²r)⌋ when b = p/q ≥ 0
        let (p, q) = (self.b.numer().abs(), self.b.denom().clone());
        let s = (&p * &p * BigInt::from(self.r)).sqrt();
        let approx = if self.b.is_negative() {
            -Rational::new(s, q)
        } else {
            Rational::new(s, q)
        };
        let mut n = (&self.a + approx).floor().to_integer();
        while self.cmp_rational(&Rational::from_integer(n.clone())) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_rational(&Rational::from_integer(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Least integer strictly greater than the value.
    pub fn strict_successor(&self) -> BigInt {
        self.floor() + 1
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (self.r as f64).sqrt()
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 0 {
            return write!(f, "{}", format_rational(&self.a));
        }
        let coef = if self.b.abs().is_one() {
            String::new()
        } else {
            format!("{}·", format_rational(&self.b.abs()))
        };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coef}√{}", self.r)
        } else {
            write!(f, "{} {sign} {coef}√{}", format_rational(&self.a), self.r)
        }
    }
}

/// `r = s²·f` with `f` squarefree.
fn split_square(mut r: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, r)
}

/// `Σ (n − 1)(n − 2)` with the terms `n ≤ 0` removed.
pub fn s_sum(n_list: &[i64]) -> i64 {
    n_list.iter().filter(|&&n| n >= 1).map(|&n| (n - 1) * (n - 2)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub d: i64,
    pub s: i64,
    pub cor6_value: QuadraticSurd,
    /// Least integer strictly greater than `cor6_value`.
    pub cor6_threshold: i64,
    pub carnicer: i64,
    pub limit_cycle_value: QuadraticSurd,
    pub harnack_of_threshold: i64,
}

/// `½√(9 + 4S) + d + 3/2`.
pub fn cor6_value(d: i64, s: i64) -> QuadraticSurd {
    QuadraticSurd::new(int(d) + rat(3, 2), rat(1, 2), (9 + 4 * s) as u64)
}

pub fn cor6_bound(d: i64, n_list: &[i64]) -> BoundReport {
    let s = s_sum(n_list);
    let value = cor6_value(d, s);
    let threshold = i64::try_from(value.strict_successor()).expect("threshold fits in i64");
    BoundReport {
        d,
        s,
        cor6_value: value,
        cor6_threshold: threshold,
        carnicer: carnicer_bound(d),
        limit_cycle_value: limit_cycle_bound(d, s),
        harnack_of_threshold: harnack(threshold),
    }
}

pub fn carnicer_bound(d: i64) -> i64 {
    d + 3
}

/// Maximal number of ovals of a real plane curve of degree `e`.
pub fn harnack(e: i64) -> i64 {
    (e - 1) * (e - 2) / 2 + 1
}

/// `½d√(9 + 4S) + ½d² + ½S + 2`.
pub fn limit_cycle_bound(d: i64, s: i64) -> QuadraticSurd {
    let a = rat(d * d, 2) + rat(s, 2) + int(2);
    QuadraticSurd::new(a, rat(d, 2), (9 + 4 * s) as u64)
}

fn harnack_surd(e: &QuadraticSurd) -> QuadraticSurd {
    let e1 = e.add_rational(&int(-1));
    let e2 = e.add_rational(&int(-2));
    e1.mul(&e2)
        .expect("same radicand")
        .scale(&rat(1, 2))
        .add_rational(&int(1))
}

/// Whether the Harnack count at the degree bound equals the limit-cycle bound.
pub fn seven_terms_identity(d: i64, s: i64) -> bool {
    harnack_surd(&cor6_value(d, s)) == limit_cycle_bound(d, s)
}

/// The pairs `(d, S)` in `[0, max]²` where the identity fails.
pub fn seven_terms_sweep(max: i64) -> Vec<(i64, i64)> {
    (0..=max)
        .into_par_iter()
        .flat_map_iter(|d| {
            (0..=max)
                .filter(move |&s| !seven_terms_identity(d, s))
                .map(move |s| (d, s))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionCount {
    pub e: i64,
    pub d: i64,
    /// `binom(e − d − 1, 2) − 1`.
    pub unconditioned: i64,
    /// `Σ binom(nᵢ − 1, 2)`.
    pub conditions: i64,
    pub expected: i64,
    /// Least `e` with `expected ≥ 1`.
    pub threshold: i64,
}

pub fn dimension_count(e: i64, d: i64, n_list: &[i64]) -> DimensionCount {
    let unconditioned = binomial(e - d - 1, 2) - 1;
    let conditions: i64 = n_list.iter().filter(|&&n| n >= 1).map(|&n| binomial(n - 1, 2)).sum();
    // with k = e − d: (k−1)(k−2)/2 − 1 − c ≥ 1  ⟺  k ≥ (3 + √(17 + 8c))/2
    let root = QuadraticSurd::new(rat(3, 2), rat(1, 2), (17 + 8 * conditions) as u64);
    let threshold = d + i64::try_from(root.ceil()).expect("threshold fits in i64");
    DimensionCount {
        e,
        d,
        unconditioned,
        conditions,
        expected: unconditioned - conditions,
        threshold,
    }
}

/// A pencil `λf + μg` of degree-`q` curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    pub f: MPoly,
    pub g: MPoly,
    pub dimension: usize,
}

/// Dimension of the space of degree-`q` polynomials whose total transform
/// has order at least `r` along each listed divisor, with a basis.
pub fn theorem5_space(tree: &ResolutionTree, q: u32, requirements: &[(usize, i64)]) -> Result<Vec<MPoly>> {
    let xy = Vars::xy();
    let basis = monomials_up_to(2, q);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for &(node, r) in requirements {
        let n = tree.nodes.get(node).ok_or(Error::UnknownNode(node))?;
        if r <= 0 {
            continue;
        }
        let transform = &tree.roots[n.root].transform;
        let pulled: Vec<MPoly> = basis
            .iter()
            .map(|m| {
                let mono = MPoly::monomial(&xy, m.clone(), int(1));
                localize_at_degree(&mono, q, transform).substitute(n.chart_map(), &xy)
            })
            .collect();
        let mut keys: Vec<Monomial> = pulled
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>())
            .filter(|m| (m.0[0] as i64) < r)
            .collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            rows.push(pulled.iter().map(|p| p.coeff(&k)).collect());
        }
    }
    let matrix = if rows.is_empty() {
        RatMatrix::zeros(0, basis.len())
    } else {
        RatMatrix::from_rows(rows)
    };
    let ns = solve_linear(&matrix);
    Ok(ns
        .basis
        .iter()
        .map(|v| MPoly::from_terms(&xy, basis.iter().cloned().zip(v.iter().cloned())))
        .collect())
}

/// Two independent members of the linear system, when it moves.
pub fn theorem5_pencil(tree: &ResolutionTree, q: u32, requirements: &[(usize, i64)]) -> Result<Option<Pencil>> {
    let space = theorem5_space(tree, q, requirements)?;
    Ok((space.len() >= 2).then(|| Pencil {
        f: space[0].clone(),
        g: space[1].clone(),
        dimension: space.len(),
    }))
}

/// `ν_P(γ) − ν_P(δ) − 2`, clamped at 0, for every divisor above the germ.
pub fn theorem5_requirements(tree: &ResolutionTree, germ: usize) -> Result<Vec<(usize, i64)>> {
    let &(root, curve) = tree.germs.get(germ).ok_or(Error::UnknownNode(germ))?;
    Ok(tree
        .nodes_above(root)
        .map(|n| (n.id, (n.nu_curve[curve] - n.nu_field.unwrap_or(0) - 2).max(0)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{Germ, Site};
    use crate::field::ProjectivePoint;
    use crate::poly::test_util::xy;

    #[test]
    fn surd_normalizes() {
        let s = QuadraticSurd::new(int(1), int(1), 12);
        assert_eq!((s.b().clone(), s.radicand()), (int(2), 3));
        assert!(QuadraticSurd::new(int(1), int(3), 9).is_rational());
        assert_eq!(QuadraticSurd::new(int(1), int(3), 9), QuadraticSurd::rational(int(10)));
    }

    #[test]
    fn surd_sign_and_floor() {
        // 3 − √10 < 0 < 4 − √10
        assert_eq!(QuadraticSurd::new(int(3), int(-1), 10).signum(), Ordering::Less);
        assert_eq!(QuadraticSurd::new(int(4), int(-1), 10).signum(), Ordering::Greater);
        assert_eq!(QuadraticSurd::new(int(0), int(1), 2).floor(), BigInt::from(1));
        assert_eq!(QuadraticSurd::new(int(0), int(-1), 2).floor(), BigInt::from(-2));
        assert_eq!(QuadraticSurd::rational(int(5)).strict_successor(), BigInt::from(6));
        assert_eq!(QuadraticSurd::rational(int(5)).ceil(), BigInt::from(5));
    }

    #[test]
    fn cross_radicand_compare() {
        let a = QuadraticSurd::new(int(0), int(1), 2);
        let b = QuadraticSurd::new(int(0), int(1), 3);
        assert_eq!(a.compare(&b), Ordering::Less);
        // 1 + √2 ≈ 2.414 > √5 ≈ 2.236
        let c = QuadraticSurd::new(int(1), int(1), 2);
        let d = QuadraticSurd::new(int(0), int(1), 5);
        assert_eq!(c.compare(&d), Ordering::Greater);
        assert_eq!(d.neg().compare(&c.neg()), Ordering::Greater);
    }

    #[test]
    fn cor6_examples() {
        let r = cor6_bound(2, &[]);
        assert_eq!(r.cor6_value, QuadraticSurd::rational(int(5)));
        assert_eq!(r.cor6_threshold, 6);
        assert_eq!(cor6_bound(0, &[]).cor6_value, QuadraticSurd::rational(int(3)));
        assert_eq!(cor6_bound(0, &[]).cor6_threshold, 4);
        let r = cor6_bound(2, &[4]);
        assert_eq!(r.s, 6);
        assert_eq!(r.cor6_value, QuadraticSurd::new(rat(7, 2), rat(1, 2), 33));
        assert_eq!(r.cor6_threshold, 7);
        assert_eq!(cor6_bound(3, &[-2, 0, 1, 2]).cor6_threshold, 7);
    }

    #[test]
    fn small_formulas() {
        assert_eq!([carnicer_bound(0), carnicer_bound(1), carnicer_bound(2)], [3, 4, 5]);
        assert_eq!([harnack(1), harnack(3), harnack(6)], [1, 2, 11]);
        assert_eq!(limit_cycle_bound(2, 0), QuadraticSurd::rational(int(7)));
        assert_eq!(limit_cycle_bound(0, 0), QuadraticSurd::rational(int(2)));
        assert_eq!(limit_cycle_bound(1, 2), QuadraticSurd::new(rat(7, 2), rat(1, 2), 17));
        assert_eq!(s_sum(&[4]), 6);
        assert_eq!(s_sum(&[2]), 0);
        assert_eq!(s_sum(&[-3, 0]), 0);
    }

    #[test]
    fn seven_terms_small() {
        assert!(seven_terms_identity(2, 0));
        assert!(seven_terms_identity(0, 0));
        assert!(seven_terms_sweep(10).is_empty());
    }

    #[test]
    fn dimension_examples() {
        let c = dimension_count(6, 2, &[]);
        assert_eq!(c.unconditioned, 2);
        assert_eq!(dimension_count(6, 2, &[3]).conditions, 1);
        assert_eq!(c.threshold, cor6_bound(2, &[]).cor6_threshold);
        assert_eq!(dimension_count(9, 2, &[4]).threshold, 7);
    }

    fn point_tree() -> ResolutionTree {
        let (x, y) = xy();
        let germ = Germ {
            point: ProjectivePoint::affine(int(1), int(2)),
            equation: &(&y - &x) - &MPoly::one(&Vars::xy()),
        };
        let mut t = ResolutionTree::new(None, &[germ]).unwrap();
        t.blowup(&Site::Root(0)).unwrap();
        t
    }

    #[test]
    fn pencil_examples() {
        let t = point_tree();
        assert_eq!(theorem5_pencil(&t, 1, &[(0, 0)]).unwrap().unwrap().dimension, 3);
        assert!(theorem5_pencil(&t, 0, &[(0, -1)]).unwrap().is_none());
        let p = theorem5_pencil(&t, 1, &[(0, 1)]).unwrap().unwrap();
        assert_eq!(p.dimension, 2);
        let at = [int(1), int(2)];
        assert!(p.f.eval(&at).is_zero() && p.g.eval(&at).is_zero());
        assert!(matches!(theorem5_pencil(&t, 1, &[(5, 1)]), Err(Error::UnknownNode(5))));
    }
}
