//! Resolution of plane curve germs and foliation singularities by
//! quadratic transforms.
//!
//! Every point is studied in local coordinates `(x, y)` centred at the
//! origin. Blowing up uses the two standard charts, both written in
//! coordinates `(e, t)` with the exceptional divisor `E = {e = 0}`:
//! chart 1 is `x = e, y = e·t`, chart 2 is `x = t·e, y = e`.

mod lattice;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;

pub use lattice::{
    adjunction_value, canonical_class, chern_report, curve_class, genus_remark9, strict_exceptional_class, ChernReport,
    DivisorClass, GenusExpansion, PrimeClass,
};

use crate::bounds::s_sum;
use crate::error::{Error, Result};
use crate::field::{is_singular_at, Mat3, ProjectivePoint, VectorField};
use crate::poly::groebner::{groebner_basis, GroebnerResult};
use crate::poly::upoly::UPoly;
use crate::poly::{gcd, squarefree_part, MPoly, MonomialOrder, Vars};
use crate::rational::{format_rational, int, Rational};

pub const DEFAULT_STEP_CAP: usize = 64;

/// A germ of a plane curve at a point: the global affine equation of the
/// curve together with the base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    pub point: ProjectivePoint,
    pub equation: MPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompId {
    Exceptional(usize),
    Curve(usize),
}

/// Position of a point on an exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// The point `(0, t)` of chart 1.
    Slope(Rational),
    /// The origin of chart 2.
    Vertical,
}

/// Where a blow-up center sits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Site {
    Root(usize),
    OnDivisor { node: usize, direction: Direction },
}

#[derive(Debug, Clone)]
struct LocalState {
    comps: Vec<(CompId, MPoly)>,
    field: Option<(MPoly, MPoly)>,
    /// Root-local coordinates as polynomials in the current coordinates.
    map: [MPoly; 2],
}

#[derive(Debug, Clone)]
struct ChartData {
    comps: Vec<(CompId, MPoly)>,
    field: Option<(MPoly, MPoly)>,
    map: [MPoly; 2],
}

#[derive(Debug, Clone)]
pub struct Node {
    pub id: usize,
    pub parent: Option<usize>,
    pub root: usize,
    pub direction: Option<Direction>,
    pub depth: usize,
    /// Valuation of the total transform of each curve along this divisor.
    pub nu_curve: Vec<i64>,
    pub nu_total: i64,
    /// Multiplicity of each curve's strict transform at the center.
    pub nu_proper: Vec<u32>,
    /// Order of the pulled-back field along the divisor.
    pub nu_field: Option<i64>,
    /// Earlier divisors passing through the center.
    pub proximate_to: Vec<usize>,
    charts: [ChartData; 2],
}

impl Node {
    /// Root-local coordinates as polynomials in chart-1 coordinates `(e, t)`.
    pub fn chart_map(&self) -> &[MPoly; 2] {
        &self.charts[0].map
    }
}

#[derive(Debug, Clone)]
pub struct Root {
    pub point: ProjectivePoint,
    pub curves: Vec<usize>,
    /// `p = M p'` sends the root to the origin of the local chart.
    pub transform: Mat3,
    state: LocalState,
}

/// A point of the final configuration met by at least one curve or divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalPoint {
    pub root: usize,
    pub site: Option<(usize, Direction)>,
    pub components: Vec<CompId>,
    pub field_singular: Option<bool>,
}

/// Conjugate non-rational points where a curve crosses a divisor
/// transversally, given by the roots of `poly` in the chart-1 slope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrationalContact {
    pub node: usize,
    pub curve: usize,
    pub poly: UPoly,
    pub field_singular: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct ResolutionTree {
    /// Distinct global curve equations.
    pub curves: Vec<MPoly>,
    pub curve_degrees: Vec<u32>,
    /// `(root, curve)` for each germ.
    pub germs: Vec<(usize, usize)>,
    pub roots: Vec<Root>,
    pub nodes: Vec<Node>,
    pub final_points: Vec<FinalPoint>,
    pub irrational_contacts: Vec<IrrationalContact>,
    pub incidence: BTreeSet<(CompId, CompId)>,
    /// Set when a step cap stopped the resolution early.
    pub flagged: bool,
    field: Option<VectorField>,
}

fn local_vars() -> Vars {
    Vars::xy()
}

/// A matrix sending `[0:0:1]` to `p`.
fn centering_transform(p: &ProjectivePoint) -> Mat3 {
    let c = &p.0;
    let (i, j) = if !c[2].is_zero() {
        (0, 1)
    } else if !c[1].is_zero() {
        (0, 2)
    } else {
        (1, 2)
    };
    let mut m = Mat3::from_ints([[0; 3]; 3]);
    m.0[i][0] = int(1);
    m.0[j][1] = int(1);
    for r in 0..3 {
        m.0[r][2] = c[r].clone();
    }
    m
}

/// The curve `f = 0` in the local chart of `transform`.
fn localize(f: &MPoly, transform: &Mat3) -> MPoly {
    localize_at_degree(f, f.degree().unwrap_or(0), transform)
}

/// `f`, read as a form of degree `k ≥ deg f`, in the local chart of `transform`.
pub fn localize_at_degree(f: &MPoly, k: u32, transform: &Mat3) -> MPoly {
    let xyz = Vars::xyz();
    let h = f.homogenize(k, &xyz).expect("degree fits");
    let images: Vec<MPoly> = (0..3)
        .map(|i| {
            (0..3).fold(MPoly::zero(&xyz), |acc, j| {
                &acc + &MPoly::var(&xyz, j).scale(&transform.0[i][j])
            })
        })
        .collect();
    h.substitute(&images, &xyz).dehomogenize(2, &local_vars())
}

fn homogeneous_value(f: &MPoly, p: &ProjectivePoint) -> Rational {
    let k = f.degree().unwrap_or(0);
    f.homogenize(k, &Vars::xyz()).expect("degree fits").eval(&p.0)
}

fn origin() -> [Rational; 2] {
    [int(0), int(0)]
}

fn vanishes_at_origin(p: &MPoly) -> bool {
    p.eval(&origin()).is_zero()
}

fn saturated(field: &(MPoly, MPoly)) -> (MPoly, MPoly) {
    let g = gcd(&field.0, &field.1);
    if g.is_constant() {
        field.clone()
    } else {
        (
            field.0.exact_div(&g).unwrap().unwrap(),
            field.1.exact_div(&g).unwrap().unwrap(),
        )
    }
}

fn field_singular_at_origin(field: &Option<(MPoly, MPoly)>) -> Option<bool> {
    field.as_ref().map(|f| {
        let (p, q) = saturated(f);
        vanishes_at_origin(&p) && vanishes_at_origin(&q)
    })
}

/// The SNC-and-smooth-foliation stopping rule.
fn needs_blowup(s: &LocalState) -> bool {
    let mut total = 0;
    let mut product = MPoly::one(&local_vars());
    for (_, g) in &s.comps {
        let o = g.order().unwrap_or(0);
        if o >= 2 {
            return true;
        }
        total += o;
        product = &product * g;
    }
    if total >= 3 {
        return true;
    }
    if total == 2 {
        let cone = product.homogeneous_part(2);
        let a = cone.coeff(&crate::poly::Monomial(vec![2, 0]));
        let b = cone.coeff(&crate::poly::Monomial(vec![1, 1]));
        let c = cone.coeff(&crate::poly::Monomial(vec![0, 2]));
        if (&b * &b - int(4) * a * c).is_zero() {
            return true;
        }
    }
    let has_curve = s.comps.iter().any(|(id, _)| matches!(id, CompId::Curve(_)));
    let has_exc = s.comps.iter().any(|(id, _)| matches!(id, CompId::Exceptional(_)));
    has_curve && !has_exc && field_singular_at_origin(&s.field) == Some(true)
}

impl ResolutionTree {
    pub fn new(field: Option<&VectorField>, germs: &[Germ]) -> Result<Self> {
        let mut curves: Vec<MPoly> = Vec::new();
        let mut roots: Vec<Root> = Vec::new();
        let mut germ_index = Vec::new();
        for g in germs {
            if g.equation.is_constant() {
                return Err(Error::ConstantCurve);
            }
            if g.equation.vars() != &local_vars() {
                return Err(Error::ArityMismatch(
                    g.equation.vars().describe(),
                    local_vars().describe(),
                ));
            }
            if squarefree_part(&g.equation).degree() != g.equation.degree() {
                return Err(Error::Shape(format!(
                    "germ equation {} has a repeated factor",
                    g.equation
                )));
            }
            if !homogeneous_value(&g.equation, &g.point).is_zero() {
                return Err(Error::GermOffPoint(format!(
                    "{} does not vanish at {}",
                    g.equation, g.point
                )));
            }
            if let Some(f) = field {
                if !is_singular_at(f, &g.point) {
                    return Err(Error::GermNotAtSingularity(g.point.to_string()));
                }
            }
            let eq = g.equation.integer_primitive();
            let c = match curves.iter().position(|c| c == &eq) {
                Some(c) => c,
                None => {
                    curves.push(eq);
                    curves.len() - 1
                }
            };
            let r = match roots.iter().position(|r| r.point == g.point) {
                Some(r) => r,
                None => {
                    let transform = centering_transform(&g.point);
                    let lv = local_vars();
                    let map = [MPoly::var(&lv, 0), MPoly::var(&lv, 1)];
                    let lfield = match field {
                        Some(f) => {
                            let t = f.projective_transform(&transform)?;
                            Some((t.p().clone(), t.q().clone()))
                        }
                        None => None,
                    };
                    roots.push(Root {
                        point: g.point.clone(),
                        curves: Vec::new(),
                        transform,
                        state: LocalState {
                            comps: Vec::new(),
                            field: lfield,
                            map,
                        },
                    });
                    roots.len() - 1
                }
            };
            if !roots[r].curves.contains(&c) {
                roots[r].curves.push(c);
                let local = localize(&curves[c], &roots[r].transform);
                roots[r].state.comps.push((CompId::Curve(c), local));
            }
            germ_index.push((r, c));
        }
        let curve_degrees = curves.iter().map(|c| c.degree().unwrap()).collect();
        Ok(ResolutionTree {
            curves,
            curve_degrees,
            germs: germ_index,
            roots,
            nodes: Vec::new(),
            final_points: Vec::new(),
            irrational_contacts: Vec::new(),
            incidence: BTreeSet::new(),
            flagged: false,
            field: field.cloned(),
        })
    }

    pub fn field(&self) -> Option<&VectorField> {
        self.field.as_ref()
    }

    pub fn field_d(&self) -> Option<i64> {
        self.field.as_ref().map(VectorField::d)
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    pub fn nodes_above(&self, root: usize) -> impl Iterator<Item = &Node> {
        self.nodes.iter().filter(move |n| n.root == root)
    }

    fn state_at(&self, site: &Site) -> Result<(LocalState, usize, Option<usize>, usize)> {
        match site {
            Site::Root(r) => {
                let root = self.roots.get(*r).ok_or(Error::UnknownNode(*r))?;
                Ok((root.state.clone(), *r, None, 1))
            }
            Site::OnDivisor { node, direction } => {
                let n = self.nodes.get(*node).ok_or(Error::UnknownNode(*node))?;
                let state = match direction {
                    Direction::Slope(t0) => translate_chart(&n.charts[0], t0),
                    Direction::Vertical => restrict_chart(&n.charts[1]),
                };
                Ok((state, n.root, Some(*node), n.depth + 1))
            }
        }
    }

    /// Blow up the point at `site`; returns the new node id.
    pub fn blowup(&mut self, site: &Site) -> Result<usize> {
        let (state, root, parent, depth) = self.state_at(site)?;
        if let Some((p, q)) = &state.field {
            if !vanishes_at_origin(p) || !vanishes_at_origin(q) {
                if !state.comps.iter().any(|(id, _)| matches!(id, CompId::Exceptional(_))) {
                    return Err(Error::PoleAcquired {
                        node: self.nodes.len(),
                        order: -1,
                    });
                }
            }
        }
        let direction = match site {
            Site::Root(_) => None,
            Site::OnDivisor { direction, .. } => Some(direction.clone()),
        };
        self.blowup_state(&state, root, parent, direction, depth)
    }

    fn blowup_state(
        &mut self,
        s: &LocalState,
        root: usize,
        parent: Option<usize>,
        direction: Option<Direction>,
        depth: usize,
    ) -> Result<usize> {
        let id = self.nodes.len();
        let lv = local_vars();
        let e = MPoly::var(&lv, 0);
        let t = MPoly::var(&lv, 1);
        let subs = [[e.clone(), &e * &t], [&t * &e, e.clone()]];
        let ncurves = self.curves.len();
        let mut nu_proper = vec![0u32; ncurves];
        let mut nu_curve = vec![0i64; ncurves];
        let mut proximate_to = Vec::new();
        let mut chart_comps: [Vec<(CompId, MPoly)>; 2] = [Vec::new(), Vec::new()];
        for (cid, g) in &s.comps {
            let mult = g.order().unwrap_or(0);
            match cid {
                CompId::Curve(k) => {
                    nu_proper[*k] = mult;
                    nu_curve[*k] += mult as i64;
                }
                CompId::Exceptional(j) => {
                    proximate_to.push(*j);
                    for k in 0..ncurves {
                        nu_curve[k] += self.nodes[*j].nu_curve[k];
                    }
                }
            }
            let em = e.pow(mult);
            for c in 0..2 {
                let pulled = g.substitute(&subs[c], &lv);
                let strict = pulled.exact_div(&em)?.expect("multiplicity divides the pullback");
                chart_comps[c].push((*cid, strict));
            }
        }
        for c in 0..2 {
            chart_comps[c].push((CompId::Exceptional(id), e.clone()));
        }
        let mut nu_field = None;
        let mut chart_fields: [Option<(MPoly, MPoly)>; 2] = [None, None];
        if let Some((p, q)) = &s.field {
            for c in 0..2 {
                let ps = p.substitute(&subs[c], &lv);
                let qs = q.substitute(&subs[c], &lv);
                // chart 1: (ė, ṫ) = (p, (q − t p)/e); chart 2 swaps the roles
                let (edot, num) = if c == 0 {
                    (ps.clone(), &qs - &(&t * &ps))
                } else {
                    (qs.clone(), &ps - &(&t * &qs))
                };
                let tdot = match num.exact_div(&e)? {
                    Some(v) => v,
                    None => {
                        let order = edot.order_in(0).map_or(-1, |o| (o as i64).min(-1));
                        return Err(Error::PoleAcquired { node: id, order });
                    }
                };
                if c == 0 {
                    let oe = edot.order_in(0).map(|o| o as i64);
                    let ot = tdot.order_in(0).map(|o| o as i64);
                    nu_field = oe.into_iter().chain(ot).min();
                }
                chart_fields[c] = Some((edot, tdot));
            }
        }
        let maps: [[MPoly; 2]; 2] =
            std::array::from_fn(|c| [s.map[0].substitute(&subs[c], &lv), s.map[1].substitute(&subs[c], &lv)]);
        let [c0, c1] = chart_comps;
        let [f0, f1] = chart_fields;
        let [m0, m1] = maps;
        let node = Node {
            id,
            parent,
            root,
            direction,
            depth,
            nu_total: nu_curve.iter().sum(),
            nu_curve,
            nu_proper,
            nu_field,
            proximate_to,
            charts: [
                ChartData {
                    comps: c0,
                    field: f0,
                    map: m0,
                },
                ChartData {
                    comps: c1,
                    field: f1,
                    map: m1,
                },
            ],
        };
        self.nodes.push(node);
        debug_assert!((0..ncurves).all(|k| self.direct_valuation(id, k) == self.nodes[id].nu_curve[k]));
        Ok(id)
    }

    /// Valuation along `E_node` of curve `k`, recomputed by substituting the
    /// composed chart map into the curve's root-local equation.
    pub fn direct_valuation(&self, node: usize, k: usize) -> i64 {
        let n = &self.nodes[node];
        let local = localize(&self.curves[k], &self.roots[n.root].transform);
        let pulled = local.substitute(&n.charts[0].map, &local_vars());
        pulled.order_in(0).map_or(i64::MAX, |o| o as i64)
    }

    fn record_final(&mut self, s: &LocalState, root: usize, site: Option<(usize, Direction)>) {
        let ids: Vec<CompId> = s.comps.iter().map(|(id, _)| *id).collect();
        for (i, a) in ids.iter().enumerate() {
            for b in &ids[i + 1..] {
                self.incidence.insert((*a.min(b), *a.max(b)));
            }
        }
        self.final_points.push(FinalPoint {
            root,
            site,
            components: ids,
            field_singular: field_singular_at_origin(&s.field),
        });
    }

    /// Points on `E_node` that carry a component, in a fixed order.
    fn candidates(&mut self, node: usize) -> Result<Vec<Direction>> {
        let n = &self.nodes[node];
        let mut slopes: BTreeSet<Rational> = BTreeSet::new();
        let mut irrational: Vec<(CompId, UPoly)> = Vec::new();
        for (cid, g) in &n.charts[0].comps {
            if *cid == CompId::Exceptional(node) {
                continue;
            }
            let r = UPoly::from_mpoly(&g.substitute_value(0, &int(0)), 1).expect("restriction is univariate");
            if r.is_zero() {
                continue;
            }
            let mut rest = r.clone();
            for t0 in r.rational_roots() {
                slopes.insert(t0.clone());
                let lin = UPoly::linear_root(&t0);
                loop {
                    let (q, rem) = rest.div_rem(&lin);
                    if !rem.is_zero() {
                        break;
                    }
                    rest = q;
                }
            }
            if rest.degree().unwrap_or(0) > 0 {
                irrational.push((*cid, rest));
            }
        }
        for (i, (cid, h)) in irrational.iter().enumerate() {
            let squarefree = h.gcd(&h.derivative()).degree() == Some(0);
            let coprime = irrational
                .iter()
                .enumerate()
                .all(|(j, (_, o))| j == i || h.gcd(o).degree() == Some(0));
            let CompId::Curve(k) = cid else {
                return Err(Error::NonRationalCenter(format!(
                    "divisor meets E{node} at irrational points"
                )));
            };
            if !squarefree || !coprime {
                return Err(Error::NonRationalCenter(format!("{h} on E{node}")));
            }
            let field_singular = n.charts[0].field.as_ref().map(|f| {
                let (p, q) = saturated(f);
                let p0 = UPoly::from_mpoly(&p.substitute_value(0, &int(0)), 1).unwrap();
                let q0 = UPoly::from_mpoly(&q.substitute_value(0, &int(0)), 1).unwrap();
                let common = p0.gcd(&q0);
                common.is_zero() || h.gcd(&common).degree().unwrap_or(0) > 0
            });
            let contact = IrrationalContact {
                node,
                curve: *k,
                poly: h.clone(),
                field_singular,
            };
            self.irrational_contacts.push(contact);
            let pair = (CompId::Exceptional(node), *cid);
            self.incidence.insert((pair.0.min(pair.1), pair.0.max(pair.1)));
        }
        let n = &self.nodes[node];
        let mut out: Vec<Direction> = slopes.into_iter().map(Direction::Slope).collect();
        let vertical = n.charts[1]
            .comps
            .iter()
            .any(|(cid, g)| *cid != CompId::Exceptional(node) && vanishes_at_origin(g));
        if vertical {
            out.push(Direction::Vertical);
        }
        Ok(out)
    }

    fn process(
        &mut self,
        s: LocalState,
        root: usize,
        site: Option<(usize, Direction)>,
        depth: usize,
        cap: usize,
        used: &mut usize,
    ) -> Result<()> {
        if !needs_blowup(&s) {
            self.record_final(&s, root, site);
            return Ok(());
        }
        if *used >= cap {
            self.flagged = true;
            self.record_final(&s, root, site);
            return Ok(());
        }
        *used += 1;
        let parent = site.as_ref().map(|(n, _)| *n);
        let direction = site.map(|(_, d)| d);
        let id = self.blowup_state(&s, root, parent, direction, depth)?;
        for dir in self.candidates(id)? {
            let (child, _, _, d) = self.state_at(&Site::OnDivisor {
                node: id,
                direction: dir.clone(),
            })?;
            self.process(child, root, Some((id, dir)), d, cap, used)?;
        }
        Ok(())
    }

    /// Appends the nodes and final data that `part` added beyond its first
    /// `start` nodes, renumbering its divisors.
    fn absorb(&mut self, part: ResolutionTree, start: usize) {
        let offset = self.nodes.len() - start;
        let shift = |c: CompId| match c {
            CompId::Exceptional(i) if i >= start => CompId::Exceptional(i + offset),
            other => other,
        };
        let shift_id = |i: usize| if i >= start { i + offset } else { i };
        for mut n in part.nodes.into_iter().skip(start) {
            n.id = shift_id(n.id);
            n.parent = n.parent.map(shift_id);
            n.proximate_to = n.proximate_to.into_iter().map(shift_id).collect();
            for chart in &mut n.charts {
                for (c, _) in &mut chart.comps {
                    *c = shift(*c);
                }
            }
            self.nodes.push(n);
        }
        for mut fp in part.final_points {
            fp.components = fp.components.into_iter().map(shift).collect();
            fp.site = fp.site.map(|(n, d)| (shift_id(n), d));
            self.final_points.push(fp);
        }
        for mut c in part.irrational_contacts {
            c.node = shift_id(c.node);
            self.irrational_contacts.push(c);
        }
        for (a, b) in part.incidence {
            let (a, b) = (shift(a), shift(b));
            self.incidence.insert((a.min(b), a.max(b)));
        }
        self.flagged |= part.flagged;
    }

    /// Order of the field along every divisor, in node order.
    pub fn field_orders(&self) -> Vec<Option<i64>> {
        self.nodes.iter().map(|n| n.nu_field).collect()
    }

    /// `Z = Σ ν_P(δ)·E_P` over the prime exceptional divisors.
    pub fn zero_divisor(&self) -> PrimeClass {
        PrimeClass {
            h: 0,
            e: self.nodes.iter().map(|n| n.nu_field.unwrap_or(0)).collect(),
        }
    }

    /// `I = Σ ν_P(C₁)·E_P`.
    pub fn valuation_divisor(&self) -> PrimeClass {
        PrimeClass {
            h: 0,
            e: self.nodes.iter().map(|n| n.nu_total).collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph resolution {\n  node [shape=box];\n");
        for (k, c) in self.curves.iter().enumerate() {
            let _ = writeln!(s, "  C{k} [shape=ellipse, label=\"C{k}: {c}\"];");
        }
        for n in &self.nodes {
            let field = n.nu_field.map_or("-".to_string(), |v| v.to_string());
            let proper: u32 = n.nu_proper.iter().sum();
            let _ = writeln!(
                s,
                "  E{} [label=\"E{}\\nnu(C)={} proper={} nu(delta)={}\"];",
                n.id, n.id, n.nu_total, proper, field
            );
        }
        for n in &self.nodes {
            if let Some(p) = n.parent {
                let _ = writeln!(s, "  E{p} -- E{} [style=dashed];", n.id);
            }
        }
        let name = |c: &CompId| match c {
            CompId::Exceptional(i) => format!("E{i}"),
            CompId::Curve(k) => format!("C{k}"),
        };
        for (a, b) in &self.incidence {
            let _ = writeln!(s, "  {} -- {};", name(a), name(b));
        }
        s.push_str("}\n");
        s
    }
}

fn restrict_chart(c: &ChartData) -> LocalState {
    LocalState {
        comps: c.comps.iter().filter(|(_, g)| vanishes_at_origin(g)).cloned().collect(),
        field: c.field.clone(),
        map: c.map.clone(),
    }
}

fn translate_chart(c: &ChartData, t0: &Rational) -> LocalState {
    let lv = local_vars();
    let shift = [
        MPoly::var(&lv, 0),
        &MPoly::var(&lv, 1) + &MPoly::constant(&lv, t0.clone()),
    ];
    let tr = |p: &MPoly| p.substitute(&shift, &lv);
    restrict_chart(&ChartData {
        comps: c.comps.iter().map(|(id, g)| (*id, tr(g))).collect(),
        field: c.field.as_ref().map(|(p, q)| (tr(p), tr(q))),
        map: [tr(&c.map[0]), tr(&c.map[1])],
    })
}

/// Resolve the germs (and the field, when given) until the total transform
/// has simple normal crossings and no curve passes through a foliation
/// singularity away from the exceptional divisors.
pub fn resolve(field: Option<&VectorField>, germs: &[Germ], step_cap: usize) -> Result<ResolutionTree> {
    let base = ResolutionTree::new(field, germs)?;
    let parts: Vec<ResolutionTree> = (0..base.roots.len())
        .into_par_iter()
        .map(|r| {
            let mut part = base.clone();
            let state = part.roots[r].state.clone();
            let mut used = 0;
            part.process(state, r, None, 1, step_cap, &mut used)?;
            Ok(part)
        })
        .collect::<Result<_>>()?;
    let start = base.nodes.len();
    let mut tree = base;
    for part in parts {
        tree.absorb(part, start);
    }
    Ok(tree)
}

/// A copy of `tree` with the point at `site` blown up, and the new node id.
pub fn blowup(tree: &ResolutionTree, site: &Site) -> Result<(ResolutionTree, usize)> {
    let mut out = tree.clone();
    let id = out.blowup(site)?;
    Ok((out, id))
}

/// Blow up a point given in coordinates: the affine point of a root, or a
/// point `(e, t)` of chart 1 of an existing node, which must lie on `e = 0`.
pub fn blowup_at(
    tree: &ResolutionTree,
    node: Option<usize>,
    center: &[Rational; 2],
) -> Result<(ResolutionTree, usize)> {
    let site = match node {
        None => {
            let p = ProjectivePoint::affine(center[0].clone(), center[1].clone());
            let r = tree
                .roots
                .iter()
                .position(|r| r.point == p)
                .ok_or_else(|| Error::CenterOffChart(p.to_string()))?;
            Site::Root(r)
        }
        Some(n) => {
            if n >= tree.nodes.len() {
                return Err(Error::UnknownNode(n));
            }
            if !center[0].is_zero() {
                return Err(Error::CenterOffChart(format!(
                    "({}, {}) is not on E{n}",
                    center[0], center[1]
                )));
            }
            Site::OnDivisor {
                node: n,
                direction: Direction::Slope(center[1].clone()),
            }
        }
    };
    blowup(tree, &site)
}

/// Replays the blow-ups of `tree` with `field` attached, filling in the
/// field orders.
pub fn transform_field(tree: &ResolutionTree, field: &VectorField) -> Result<ResolutionTree> {
    let germs: Vec<Germ> = tree
        .germs
        .iter()
        .map(|&(r, c)| Germ {
            point: tree.roots[r].point.clone(),
            equation: tree.curves[c].clone(),
        })
        .collect();
    let mut out = ResolutionTree::new(Some(field), &germs)?;
    for n in &tree.nodes {
        let site = match (&n.parent, &n.direction) {
            (Some(p), Some(d)) => Site::OnDivisor {
                node: *p,
                direction: d.clone(),
            },
            _ => Site::Root(n.root),
        };
        out.blowup(&site)?;
    }
    out.final_points = Vec::new();
    out.incidence = tree.incidence.clone();
    out.irrational_contacts = tree.irrational_contacts.clone();
    out.flagged = tree.flagged;
    for fp in &tree.final_points {
        let site = match &fp.site {
            Some((n, d)) => Site::OnDivisor {
                node: *n,
                direction: d.clone(),
            },
            None => Site::Root(fp.root),
        };
        let (s, _, _, _) = out.state_at(&site)?;
        out.final_points.push(FinalPoint {
            root: fp.root,
            site: fp.site.clone(),
            components: fp.components.clone(),
            field_singular: field_singular_at_origin(&s.field),
        });
    }
    Ok(out)
}

/// `n_i` for every germ and `S = Σ (n_i − 1)(n_i − 2)` over `n_i ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancies {
    pub n: Vec<i64>,
    pub s: i64,
}

pub fn discrepancies(tree: &ResolutionTree) -> Result<Discrepancies> {
    if tree.flagged {
        return Err(Error::Unresolved);
    }
    if tree.field.is_none() {
        return Err(Error::Shape("discrepancies need the field orders".into()));
    }
    let n: Vec<i64> = tree
        .germs
        .iter()
        .map(|&(r, c)| {
            tree.nodes_above(r)
                .map(|node| node.nu_curve[c] - node.nu_field.unwrap_or(0))
                .max()
                .unwrap_or(0)
        })
        .collect();
    Ok(Discrepancies { s: s_sum(&n), n })
}

/// Whether the foliation has no singular point on curve `k` once resolved:
/// the only global singular points on the curve are germ base points, and
/// no final point on its strict transform is singular.
pub fn foliation_smooth_along_curve(tree: &ResolutionTree, k: usize) -> Result<bool> {
    let field = tree
        .field
        .as_ref()
        .ok_or_else(|| Error::Shape("the tree carries no field".into()))?;
    let f = tree.curves.get(k).ok_or(Error::UnknownNode(k))?;
    let bases: Vec<&ProjectivePoint> = tree
        .germs
        .iter()
        .filter(|g| g.1 == k)
        .map(|g| &tree.roots[g.0].point)
        .collect();
    let scheme = crate::field::singular_points(field)?;
    for p in &scheme.rational_points {
        if homogeneous_value(f, &p.point).is_zero() && !bases.contains(&&p.point) {
            return Ok(false);
        }
    }
    for c in &scheme.clusters {
        if cluster_meets_curve(field, c, f)? {
            return Ok(false);
        }
    }
    let on_curve = |comps: &[CompId]| comps.contains(&CompId::Curve(k));
    if tree
        .final_points
        .iter()
        .any(|p| on_curve(&p.components) && p.field_singular != Some(false))
    {
        return Ok(false);
    }
    if tree
        .irrational_contacts
        .iter()
        .any(|c| c.curve == k && c.field_singular != Some(false))
    {
        return Ok(false);
    }
    Ok(true)
}

fn cluster_meets_curve(field: &VectorField, c: &crate::field::Cluster, f: &MPoly) -> Result<bool> {
    match c.chart {
        crate::field::Chart::Infinity => {
            let k = f.degree().unwrap_or(0);
            let top = f.homogeneous_part(k);
            let lv = local_vars();
            let restricted = top.substitute(&[MPoly::one(&lv), MPoly::var(&lv, 0)], &lv);
            let r = UPoly::from_mpoly(&restricted, 0).unwrap();
            Ok(r.is_zero() || c.poly.gcd(&r).degree().unwrap_or(0) > 0)
        }
        crate::field::Chart::Affine => {
            // common zeros of P, Q, f; decided by a Gröbner basis
            let gb = groebner_basis(
                &[field.p().clone(), field.q().clone(), f.clone()],
                MonomialOrder::Lex,
                200_000,
            );
            match gb {
                GroebnerResult::Indeterminate => Err(Error::Unsupported("cluster test ran out of budget".into())),
                GroebnerResult::Basis(b) => {
                    if b.len() == 1 && b[0].is_one() {
                        return Ok(false);
                    }
                    // the cluster lies on f iff its sheared polynomial shares a
                    // factor with the eliminant of the sheared system
                    let lv = local_vars();
                    let t = MPoly::var(&lv, 0);
                    let s = MPoly::var(&lv, 1);
                    let sub = [&s - &t.scale(&c.shear), t.clone()];
                    let sheared: Vec<MPoly> = b.iter().map(|p| p.substitute(&sub, &lv)).collect();
                    let gb2 = groebner_basis(&sheared, MonomialOrder::Lex, 200_000);
                    let Some(b2) = gb2.basis() else {
                        return Err(Error::Unsupported("cluster test ran out of budget".into()));
                    };
                    let elim = b2.iter().find(|p| !p.involves(0));
                    Ok(match elim {
                        Some(e) => c.poly.gcd(&UPoly::from_mpoly(e, 1).unwrap()).degree().unwrap_or(0) > 0,
                        None => true,
                    })
                }
            }
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Slope(t) => write!(f, "slope {}", format_rational(t)),
            Direction::Vertical => write!(f, "vertical"),
        }
    }
}
