//! Planar polynomial vector fields and the singular scheme of the foliation
//! they induce on the projective plane.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::upoly::UPoly;
use crate::poly::{gcd, resultant, MPoly, Vars};
use crate::rational::{binomial, format_rational, int, rat, Rational};

/// `δ = P ∂/∂x + Q ∂/∂y`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    p: MPoly,
    q: MPoly,
    m: u32,
    foliation_degree: i64,
}

impl VectorField {
    pub fn new(p: MPoly, q: MPoly) -> Result<Self> {
        if p.vars() != q.vars() {
            return Err(Error::ArityMismatch(p.vars().describe(), q.vars().describe()));
        }
        if p.nvars() != 2 {
            return Err(Error::Shape(format!(
                "a planar field needs 2 variables, got {}",
                p.nvars()
            )));
        }
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroField);
        }
        let m = p.degree().into_iter().chain(q.degree()).max().unwrap();
        let x = MPoly::var(p.vars(), 0);
        let y = MPoly::var(p.vars(), 1);
        let top = &(&x * &q.homogeneous_part(m)) - &(&y * &p.homogeneous_part(m));
        let foliation_degree = if top.is_zero() { m as i64 - 1 } else { m as i64 };
        Ok(VectorField {
            p,
            q,
            m,
            foliation_degree,
        })
    }

    pub fn p(&self) -> &MPoly {
        &self.p
    }

    pub fn q(&self) -> &MPoly {
        &self.q
    }

    pub fn vars(&self) -> &Vars {
        self.p.vars()
    }

    /// Affine degree `max(deg P, deg Q)`.
    pub fn affine_degree(&self) -> u32 {
        self.m
    }

    /// Degree of the induced foliation on the projective plane.
    pub fn foliation_degree(&self) -> i64 {
        self.foliation_degree
    }

    /// Degree of the divisor of poles, one less than the foliation degree.
    pub fn d(&self) -> i64 {
        self.foliation_degree - 1
    }

    /// `δ(f) = P f_x + Q f_y`.
    pub fn apply(&self, f: &MPoly) -> MPoly {
        &(&self.p * &f.derivative(0)) + &(&self.q * &f.derivative(1))
    }

    /// Homogeneous one-form `A dX + B dY + C dZ` defining the foliation,
    /// saturated (no common factor).
    pub fn homogeneous_form(&self) -> [MPoly; 3] {
        let xyz = Vars::xyz();
        let ph = self.p.homogenize(self.m, &xyz).expect("degree fits");
        let qh = self.q.homogenize(self.m, &xyz).expect("degree fits");
        let (x, y, z) = (MPoly::var(&xyz, 0), MPoly::var(&xyz, 1), MPoly::var(&xyz, 2));
        let form = [&z * &qh, -(&z * &ph), &(&y * &ph) - &(&x * &qh)];
        let g = gcd(&gcd(&form[0], &form[1]), &form[2]);
        if g.is_constant() {
            form
        } else {
            form.map(|c| c.exact_div(&g).unwrap().unwrap())
        }
    }

    /// The field in coordinates `p = M p'` on the projective plane,
    /// dehomogenized at `Z' = 1`.
    pub fn projective_transform(&self, m: &Mat3) -> Result<VectorField> {
        if m.det().is_zero() {
            return Err(Error::Shape("singular projective transformation".into()));
        }
        let xyz = Vars::xyz();
        let form = self.homogeneous_form();
        let images: Vec<MPoly> = (0..3)
            .map(|i| {
                let mut acc = MPoly::zero(&xyz);
                for j in 0..3 {
                    acc = &acc + &MPoly::var(&xyz, j).scale(&m.0[i][j]);
                }
                acc
            })
            .collect();
        let pulled: Vec<MPoly> = form.iter().map(|c| c.substitute(&images, &xyz)).collect();
        // Ω' = Mᵀ Ω(M X')
        let comp = |j: usize| {
            let mut acc = MPoly::zero(&xyz);
            for (i, pi) in pulled.iter().enumerate() {
                acc = &acc + &pi.scale(&m.0[i][j]);
            }
            acc.dehomogenize(2, self.vars())
        };
        let a = comp(0);
        let b = comp(1);
        VectorField::new(-b, a)
    }

    /// The field in affine coordinates `x = A x' + t`.
    pub fn affine_change(&self, a: [[Rational; 2]; 2], t: [Rational; 2]) -> Result<VectorField> {
        let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
        if det.is_zero() {
            return Err(Error::Shape("singular affine transformation".into()));
        }
        let v = self.vars();
        let (x, y) = (MPoly::var(v, 0), MPoly::var(v, 1));
        let img = [
            &(&x.scale(&a[0][0]) + &y.scale(&a[0][1])) + &MPoly::constant(v, t[0].clone()),
            &(&x.scale(&a[1][0]) + &y.scale(&a[1][1])) + &MPoly::constant(v, t[1].clone()),
        ];
        let p = self.p.substitute(&img, v);
        let q = self.q.substitute(&img, v);
        let inv = [[&a[1][1] / &det, -&a[0][1] / &det], [-&a[1][0] / &det, &a[0][0] / &det]];
        VectorField::new(
            &p.scale(&inv[0][0]) + &q.scale(&inv[0][1]),
            &p.scale(&inv[1][0]) + &q.scale(&inv[1][1]),
        )
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) d/dx + ({}) d/dy", self.p, self.q)
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField[{self}]")
    }
}

/// `d² + 3d + 3`.
pub fn singular_scheme_degree(d: i64) -> i64 {
    d * d + 3 * d + 3
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub e: i64,
    pub d: i64,
    pub sections: i64,
    pub projectivized_sections: i64,
    pub grassmannian: i64,
    pub target: i64,
}

pub fn dimension_report(e: i64, d: i64) -> DimensionReport {
    DimensionReport {
        e,
        d,
        sections: 4 * e * e - 1,
        projectivized_sections: 4 * e * e - 2,
        grassmannian: e * e + 3 * e - 2,
        target: binomial(2 * e + d + 2, 2) - 1,
    }
}

/// 3×3 rational matrix acting on homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3(pub [[Rational; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { int(1) } else { int(0) })
        }))
    }

    pub fn from_ints(m: [[i64; 3]; 3]) -> Self {
        Mat3(m.map(|r| r.map(int)))
    }

    fn minor(&self, i: usize, j: usize) -> Rational {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        &self.0[r[0]][c[0]] * &self.0[r[1]][c[1]] - &self.0[r[0]][c[1]] * &self.0[r[1]][c[0]]
    }

    pub fn det(&self) -> Rational {
        (0..3)
            .map(|j| {
                let t = &self.0[0][j] * self.minor(0, j);
                if j % 2 == 1 {
                    -t
                } else {
                    t
                }
            })
            .sum()
    }

    pub fn inverse(&self) -> Option<Mat3> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let c = self.minor(j, i) / &det;
                if (i + j) % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
        })))
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::new(std::array::from_fn(|i| (0..3).map(|j| &self.0[i][j] * &p.0[j]).sum()))
            .expect("invertible map sends points to points")
    }
}

/// Point of the projective plane, scaled so that its last nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint(pub [Rational; 3]);

impl ProjectivePoint {
    pub fn new(mut c: [Rational; 3]) -> Option<Self> {
        let k = (0..3).rev().find(|&i| !c[i].is_zero())?;
        let s = Rational::one() / &c[k];
        for x in c.iter_mut() {
            *x *= &s;
        }
        Some(ProjectivePoint(c))
    }

    pub fn affine(x: Rational, y: Rational) -> Self {
        ProjectivePoint([x, y, Rational::one()])
    }

    pub fn is_affine(&self) -> bool {
        !self.0[2].is_zero()
    }

    pub fn affine_coords(&self) -> Option<[Rational; 2]> {
        self.is_affine().then(|| [self.0[0].clone(), self.0[1].clone()])
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}:{}:{}]",
            format_rational(&self.0[0]),
            format_rational(&self.0[1]),
            format_rational(&self.0[2])
        )
    }
}

/// The chart a cluster of conjugate points is described in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    /// `Z = 1`, coordinates `(x, y)`; cluster polynomials are in `s = x + c·y`.
    Affine,
    /// Line at infinity minus `[0:1:0]`, points `[1:u:0]`; cluster
    /// polynomials are in `u`.
    Infinity,
}

/// Conjugate non-rational singular points: the roots of `poly` (squarefree
/// over ℚ, not necessarily irreducible), each of the given multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub chart: Chart,
    pub shear: Rational,
    pub poly: UPoly,
    pub multiplicity: u32,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularScheme {
    pub rational_points: Vec<SingularPoint>,
    pub clusters: Vec<Cluster>,
    pub total_degree: u64,
}

impl SingularScheme {
    pub fn multiplicity_at(&self, p: &ProjectivePoint) -> u32 {
        self.rational_points
            .iter()
            .find(|s| &s.point == p)
            .map_or(0, |s| s.multiplicity)
    }

    /// Sorted `(degree, multiplicity)` pairs of the clusters.
    pub fn cluster_profile(&self) -> Vec<(usize, u32)> {
        let mut v: Vec<(usize, u32)> = self.clusters.iter().map(|c| (c.degree, c.multiplicity)).collect();
        v.sort();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Filter {
    All,
    /// Only points on the second coordinate axis `w = 0`.
    LineW,
    /// Only the origin.
    Origin,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ChartPoints {
    points: Vec<(Vec<Rational>, u32)>,
    clusters: Vec<Cluster>,
}

impl ChartPoints {
    fn signature(&self) -> (Vec<(Vec<Rational>, u32)>, Vec<(usize, u32)>) {
        let mut p = self.points.clone();
        p.sort();
        let mut c: Vec<(usize, u32)> = self.clusters.iter().map(|c| (c.degree, c.multiplicity)).collect();
        c.sort();
        (p, c)
    }
}

fn shear_candidates() -> impl Iterator<Item = Rational> {
    let fixed = [
        (1, 1),
        (2, 1),
        (-1, 1),
        (3, 1),
        (-2, 1),
        (1, 2),
        (5, 1),
        (-3, 1),
        (7, 3),
        (-5, 2),
    ];
    fixed
        .into_iter()
        .map(|(n, d)| rat(n, d))
        .chain((0..40i64).map(|k| rat(11 + 7 * k, 3 + (k % 5))))
}

fn top_form_survives(p: &MPoly, c: &Rational) -> bool {
    let Some(k) = p.degree() else { return true };
    !p.homogeneous_part(k).eval(&[-c.clone(), int(1)]).is_zero()
}

/// `p(s − c t, t)`
fn shear(p: &MPoly, c: &Rational) -> MPoly {
    let v = p.vars();
    let s = MPoly::var(v, 0);
    let t = MPoly::var(v, 1);
    p.substitute(&[&s - &t.scale(c), t], v)
}

/// Zeros of `a = b = 0` under the shear `c`; `None` when the shear is not
/// generic enough.
fn chart_points(a: &MPoly, b: &MPoly, c: &Rational, filter: Filter, chart: Chart) -> Result<Option<ChartPoints>> {
    let mut out = ChartPoints {
        points: Vec::new(),
        clusters: Vec::new(),
    };
    if a.is_zero() || b.is_zero() || a.is_constant() || b.is_constant() {
        return Ok(Some(out));
    }
    if !top_form_survives(a, c) || !top_form_survives(b, c) {
        return Ok(None);
    }
    let sa = shear(a, c);
    let sb = shear(b, c);
    let r = resultant(&sa, &sb, 1)?;
    if r.is_zero() {
        return Err(Error::NonIsolated(format!("{a} and {b} share a component")));
    }
    let r = UPoly::from_mpoly(&r, 0).expect("resultant is free of t");
    let restrict = match filter {
        Filter::All => None,
        Filter::LineW => {
            let a0 = UPoly::from_mpoly(&a.substitute_value(1, &int(0)), 0).unwrap();
            let b0 = UPoly::from_mpoly(&b.substitute_value(1, &int(0)), 0).unwrap();
            Some(a0.gcd(&b0))
        }
        Filter::Origin => Some(UPoly::new(vec![int(0), int(1)])),
    };
    for (factor, mult) in r.squarefree_decomposition() {
        let factor = match &restrict {
            None => factor,
            Some(g) if g.is_zero() => factor,
            Some(g) => factor.gcd(g),
        };
        if factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut rest = factor.clone();
        for s0 in factor.rational_roots() {
            rest = rest.div_exact(&UPoly::linear_root(&s0));
            let fa = UPoly::from_mpoly(&sa.substitute_value(0, &s0), 1).unwrap();
            let fb = UPoly::from_mpoly(&sb.substitute_value(0, &s0), 1).unwrap();
            let fiber = fa.gcd(&fb).squarefree_part();
            if fiber.degree() != Some(1) {
                return Ok(None);
            }
            let t0 = -fiber.coeffs()[0].clone();
            let x0 = &s0 - c * &t0;
            if filter != Filter::All && !t0.is_zero() {
                return Ok(None);
            }
            out.points.push((vec![x0, t0], mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            if filter == Filter::Origin {
                return Ok(None);
            }
            let degree = rest.degree().unwrap();
            out.clusters.push(Cluster {
                chart,
                shear: c.clone(),
                poly: rest,
                multiplicity: mult,
                degree,
            });
        }
    }
    Ok(Some(out))
}

fn robust_chart_points(a: &MPoly, b: &MPoly, filter: Filter, chart: Chart) -> Result<ChartPoints> {
    let mut found: Vec<ChartPoints> = Vec::new();
    let mut tried = 0;
    let mut candidates = shear_candidates().filter(|c| top_form_survives(a, c) && top_form_survives(b, c));
    while found.len() < 2 {
        let pair: Vec<Rational> = candidates.by_ref().take(2 - found.len()).collect();
        if pair.is_empty() {
            return Err(Error::NoGenericShear(tried));
        }
        tried += pair.len();
        let results: Vec<Result<Option<ChartPoints>>> = if pair.len() == 2 {
            let (x, y) = rayon::join(
                || chart_points(a, b, &pair[0], filter, chart),
                || chart_points(a, b, &pair[1], filter, chart),
            );
            vec![x, y]
        } else {
            vec![chart_points(a, b, &pair[0], filter, chart)]
        };
        for r in results {
            if let Some(p) = r? {
                found.push(p);
            }
        }
    }
    if found[0].signature() == found[1].signature() {
        return Ok(found.swap_remove(0));
    }
    loop {
        let Some(c) = candidates.next() else {
            return Err(Error::NoGenericShear(tried));
        };
        tried += 1;
        if let Some(third) = chart_points(a, b, &c, filter, chart)? {
            let sig = third.signature();
            return if sig == found[0].signature() {
                Ok(found.swap_remove(0))
            } else if sig == found[1].signature() {
                Ok(found.swap_remove(1))
            } else {
                Err(Error::ShearDisagreement)
            };
        }
    }
}

fn saturate(a: MPoly, b: MPoly) -> (MPoly, MPoly) {
    let g = gcd(&a, &b);
    if g.is_zero() || g.is_constant() {
        (a, b)
    } else {
        (a.exact_div(&g).unwrap().unwrap(), b.exact_div(&g).unwrap().unwrap())
    }
}

/// Chart one-forms `α du + β dw` at infinity. `x_chart = true` gives the
/// chart `x = 1/w, y = u/w`, otherwise `x = v/w, y = 1/w`.
pub(crate) fn infinity_chart_form(field: &VectorField, x_chart: bool) -> (MPoly, MPoly) {
    let xyz = Vars::xyz();
    let uw = field.vars().clone();
    let ph = field.p.homogenize(field.m, &xyz).expect("degree fits");
    let qh = field.q.homogenize(field.m, &xyz).expect("degree fits");
    let u = MPoly::var(&uw, 0);
    let w = MPoly::var(&uw, 1);
    let one = MPoly::one(&uw);
    if x_chart {
        let img = [one, u.clone(), w.clone()];
        let pt = ph.substitute(&img, &uw);
        let qt = qh.substitute(&img, &uw);
        saturate(-(&pt * &w), &(&u * &pt) - &qt)
    } else {
        let img = [u.clone(), one, w.clone()];
        let pt = ph.substitute(&img, &uw);
        let qt = qh.substitute(&img, &uw);
        saturate(&qt * &w, &pt - &(&u * &qt))
    }
}

/// All singular points of the foliation with their multiplicities.
pub fn singular_points(field: &VectorField) -> Result<SingularScheme> {
    let g = gcd(&field.p, &field.q);
    if !g.is_constant() {
        return Err(Error::NonIsolated(format!("P and Q share the factor {g}")));
    }
    let affine = robust_chart_points(&field.q, &field.p, Filter::All, Chart::Affine)?;
    let (ax, bx) = infinity_chart_form(field, true);
    let at_x = robust_chart_points(&ax, &bx, Filter::LineW, Chart::Infinity)?;
    let (ay, by) = infinity_chart_form(field, false);
    let at_y = robust_chart_points(&ay, &by, Filter::Origin, Chart::Infinity)?;

    let mut points = Vec::new();
    for (c, m) in affine.points {
        points.push(SingularPoint {
            point: ProjectivePoint::affine(c[0].clone(), c[1].clone()),
            multiplicity: m,
        });
    }
    for (c, m) in at_x.points {
        points.push(SingularPoint {
            point: ProjectivePoint::new([int(1), c[0].clone(), int(0)]).unwrap(),
            multiplicity: m,
        });
    }
    for (_, m) in at_y.points {
        points.push(SingularPoint {
            point: ProjectivePoint([int(0), int(1), int(0)]),
            multiplicity: m,
        });
    }
    points.sort_by(|a, b| a.point.cmp(&b.point));
    let mut clusters = affine.clusters;
    clusters.extend(at_x.clusters);
    let total = points.iter().map(|p| p.multiplicity as u64).sum::<u64>()
        + clusters
            .iter()
            .map(|c| c.multiplicity as u64 * c.degree as u64)
            .sum::<u64>();
    Ok(SingularScheme {
        rational_points: points,
        clusters,
        total_degree: total,
    })
}

/// Whether `point` is a singular point of the foliation.
pub fn is_singular_at(field: &VectorField, point: &ProjectivePoint) -> bool {
    let c = &point.0;
    if !c[2].is_zero() {
        let at = [c[0].clone(), c[1].clone()];
        return field.p.eval(&at).is_zero() && field.q.eval(&at).is_zero();
    }
    let (a, b, at) = if !c[0].is_zero() {
        let (a, b) = infinity_chart_form(field, true);
        (a, b, [&c[1] / &c[0], int(0)])
    } else {
        let (a, b) = infinity_chart_form(field, false);
        (a, b, [int(0), int(0)])
    };
    a.eval(&at).is_zero() && b.eval(&at).is_zero()
}
