//! Buchberger's algorithm with the coprime and chain criteria.
//!
//! Work is bounded by a budget on reduction steps so that callers can report
//! an indeterminate outcome instead of running unbounded.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{MPoly, Monomial, MonomialOrder};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroebnerResult {
    /// Reduced basis: monic, sorted by increasing leading monomial.
    Basis(Vec<MPoly>),
    Indeterminate,
}

impl GroebnerResult {
    pub fn basis(&self) -> Option<&[MPoly]> {
        match self {
            GroebnerResult::Basis(b) => Some(b),
            GroebnerResult::Indeterminate => None,
        }
    }

    /// True when the ideal is the unit ideal.
    pub fn is_unit(&self) -> bool {
        matches!(self, GroebnerResult::Basis(b) if b.len() == 1 && b[0].is_one())
    }
}

/// Terms sorted increasingly in the working order; the leading term is last.
type Terms = Vec<(Monomial, Rational)>;

struct Engine {
    order: MonomialOrder,
    steps: usize,
    budget: usize,
}

impl Engine {
    fn to_terms(&self, p: &MPoly) -> Terms {
        let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        t
    }

    fn monic(&self, mut t: Terms) -> Terms {
        if let Some((_, lc)) = t.last() {
            let inv = Rational::one() / lc;
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
        t
    }

    /// `a - c * m * b`, where `b` is sorted; multiplication by a monomial keeps
    /// the order.
    fn sub_scaled(&self, a: &[(Monomial, Rational)], c: &Rational, m: &Monomial, b: &[(Monomial, Rational)]) -> Terms {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| (m.mul(&b[k].0), -(c * &b[k].1));
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.push(a[i].clone());
                i += 1;
                continue;
            }
            let (bm, bc) = shifted(j);
            if i == a.len() {
                out.push((bm, bc));
                j += 1;
                continue;
            }
            match self.order.cmp(&a[i].0, &bm) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((bm, bc));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + bc;
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Full normal form of `f` modulo `g` (all monic). `None` when the budget
    /// runs out.
    fn normal_form(&mut self, f: Terms, g: &[Terms]) -> Option<Terms> {
        let mut p = f;
        let mut rem: Terms = Vec::new();
        while let Some((lm, lc)) = p.last().cloned() {
            match g.iter().find(|h| h.last().unwrap().0.divides(&lm)) {
                Some(h) => {
                    self.steps += 1;
                    if self.steps > self.budget {
                        return None;
                    }
                    let q = h.last().unwrap().0.quotient(&lm);
                    p.pop();
                    p = self.sub_scaled(&p, &lc, &q, &h[..h.len() - 1]);
                }
                None => {
                    p.pop();
                    rem.push((lm, lc));
                }
            }
        }
        rem.reverse();
        Some(rem)
    }

    fn s_poly(&self, a: &Terms, b: &Terms) -> Terms {
        let (am, _) = a.last().unwrap();
        let (bm, _) = b.last().unwrap();
        let l = am.lcm(bm);
        let ua = am.quotient(&l);
        let ub = bm.quotient(&l);
        let a_tail: Terms = a[..a.len() - 1].iter().map(|(m, c)| (ua.mul(m), c.clone())).collect();
        self.sub_scaled(&a_tail, &Rational::one(), &ub, &b[..b.len() - 1])
    }
}

fn lm(t: &Terms) -> &Monomial {
    &t.last().unwrap().0
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[MPoly], order: MonomialOrder, budget: usize) -> GroebnerResult {
    let Some(first) = gens.first() else {
        return GroebnerResult::Basis(Vec::new());
    };
    let vars = first.vars().clone();
    let mut eng = Engine {
        order,
        steps: 0,
        budget,
    };
    let mut basis: Vec<Terms> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        assert_eq!(g.vars(), &vars, "variable sets agree");
        let t = eng.monic(eng.to_terms(g));
        if lm(&t).is_one() {
            return GroebnerResult::Basis(vec![MPoly::one(&vars)]);
        }
        basis.push(t);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done = std::collections::HashSet::new();
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| {
                let lp = lm(&basis[p.0]).lcm(lm(&basis[p.1]));
                let lq = lm(&basis[q.0]).lcm(lm(&basis[q.1]));
                order.cmp(&lp, &lq)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        done.insert((i, j));
        let (mi, mj) = (lm(&basis[i]).clone(), lm(&basis[j]).clone());
        if mi.is_coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && lm(&basis[k]).divides(&l) && done.contains(&key(i, k)) && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = eng.s_poly(&basis[i], &basis[j]);
        let Some(r) = eng.normal_form(s, &basis) else {
            return GroebnerResult::Indeterminate;
        };
        if r.is_empty() {
            continue;
        }
        let r = eng.monic(r);
        if lm(&r).is_one() {
            return GroebnerResult::Basis(vec![MPoly::one(&vars)]);
        }
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.push((k, n));
        }
    }
    match reduce_basis(&mut eng, basis) {
        Some(b) => {
            let mut out: Vec<(Monomial, MPoly)> = b
                .into_iter()
                .map(|t| (lm(&t).clone(), MPoly::from_terms(&vars, t)))
                .collect();
            out.sort_by(|a, b| order.cmp(&a.0, &b.0));
            GroebnerResult::Basis(out.into_iter().map(|(_, p)| p).collect())
        }
        None => GroebnerResult::Indeterminate,
    }
}

fn reduce_basis(eng: &mut Engine, basis: Vec<Terms>) -> Option<Vec<Terms>> {
    let mut minimal: Vec<Terms> = Vec::new();
    for (k, t) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(o, u)| o != k && lm(u).divides(lm(t)) && (lm(u) != lm(t) || o < k));
        if !redundant {
            minimal.push(t.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(o, _)| *o != k)
            .map(|(_, t)| t.clone())
            .collect();
        let mut t = minimal[k].clone();
        let lead = t.pop().unwrap();
        let mut tail = eng.normal_form(t, &others)?;
        tail.push(lead);
        out.push(tail);
    }
    Some(out)
}

/// Normal form of `f` modulo a Gröbner basis `g` in the given order.
pub fn normal_form(f: &MPoly, g: &[MPoly], order: MonomialOrder) -> MPoly {
    let mut eng = Engine {
        order,
        steps: 0,
        budget: usize::MAX,
    };
    let gt: Vec<Terms> = g
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| eng.monic(eng.to_terms(p)))
        .collect();
    let r = eng.normal_form(eng.to_terms(f), &gt).expect("unbounded budget");
    MPoly::from_terms(f.vars(), r)
}

/// Basis elements involving only the variables outside `0..eliminate`.
pub fn elimination_ideal(basis: &[MPoly], eliminate: usize) -> Vec<MPoly> {
    basis
        .iter()
        .filter(|p| (0..eliminate).all(|i| !p.involves(i)))
        .cloned()
        .collect()
}

/// Ideal membership for a reduced basis.
pub fn ideal_contains(basis: &[MPoly], f: &MPoly, order: MonomialOrder) -> bool {
    normal_form(f, basis, order).is_zero()
}
