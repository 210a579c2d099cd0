//! The space `A` of infinitesimal motions, its image under `π`, and the rigidity verdict.
//!
//! Unknowns are one algebra vector per element of `V ∪ E ∪ I`, laid out in that order.
//! An incidence `i = v*e` contributes `C_v (x_v - x_i) = 0` and `C_e (x_e - x_i) = 0`,
//! where the rows of `C_x` cut out `h_x`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liemodels::{centre_of_rotation, centres_collinear, ModelKind, Subalgebra};
use crate::linalg::{approx, nullspace, q, Rational, RationalMatrix, Subspace};
use crate::realisation::Realisation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotionReport {
    #[serde(rename = "dim_A")]
    pub dim_a: usize,
    pub dim_kernel_pi: usize,
    #[serde(rename = "dim_piA")]
    pub dim_pi_a: usize,
    pub dim_trivial: usize,
    pub dofs: usize,
    pub rigid: bool,
}

/// Report for vertex-constrained motions. No rigidity verdict: there is no constrained
/// notion of trivial motion to compare against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstrainedReport {
    #[serde(rename = "dim_A")]
    pub dim_a: usize,
    pub dim_kernel_pi: usize,
    #[serde(rename = "dim_piA")]
    pub dim_pi_a: usize,
    /// Codimension count with `dim H_v / (h_v ∩ H_v)` in place of the vertex terms.
    pub lower_bound: i64,
    /// `Σ dim L_v - |E|`.
    pub closed_form_bound: i64,
}

/// Layout of the unknowns.
#[derive(Clone, Copy, Debug)]
pub struct Layout {
    pub block: usize,
    pub vertices: usize,
    pub edges: usize,
    pub incidences: usize,
}

impl Layout {
    pub fn of(r: &Realisation) -> Self {
        Layout {
            block: r.algebra_dim(),
            vertices: r.hypergraph().vertex_count(),
            edges: r.hypergraph().edge_count(),
            incidences: r.incidences().len(),
        }
    }

    pub fn len(&self) -> usize {
        self.block * (self.vertices + self.edges + self.incidences)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.block * v
    }

    pub fn edge(&self, e: usize) -> usize {
        self.block * (self.vertices + e)
    }

    pub fn incidence(&self, k: usize) -> usize {
        self.block * (self.vertices + self.edges + k)
    }

    /// Blocks in the order vertices, edges, incidences.
    pub fn block_count(&self) -> usize {
        self.vertices + self.edges + self.incidences
    }
}

fn push_difference_rows(rows: &mut Vec<Vec<Rational>>, c: &RationalMatrix, n: usize, x: usize, i: usize) {
    for r in 0..c.rows() {
        let mut row = vec![q(0); n];
        for (j, a) in c.row(r).iter().enumerate() {
            row[x + j] = a.clone();
            row[i + j] = -a.clone();
        }
        rows.push(row);
    }
}

fn push_membership_rows(rows: &mut Vec<Vec<Rational>>, c: &RationalMatrix, n: usize, x: usize) {
    for r in 0..c.rows() {
        let mut row = vec![q(0); n];
        for (j, a) in c.row(r).iter().enumerate() {
            row[x + j] = a.clone();
        }
        rows.push(row);
    }
}

/// The constraint matrix whose nullspace is `A`; with `confine`, vertex unknowns are
/// additionally restricted to the given algebras.
pub fn motion_system(r: &Realisation, confine: Option<&[Subalgebra]>) -> RationalMatrix {
    let lay = Layout::of(r);
    let n = lay.len();
    let comp = |a: &Subalgebra| a.span().orthogonal_complement_rows();
    let vc: Vec<RationalMatrix> = r.vertex_algebras().iter().map(comp).collect();
    let ec: Vec<RationalMatrix> = r.edge_algebras().iter().map(comp).collect();
    let mut rows = Vec::new();
    for (k, i) in r.incidences().iter().enumerate() {
        push_difference_rows(&mut rows, &vc[i.vertex], n, lay.vertex(i.vertex), lay.incidence(k));
        push_difference_rows(&mut rows, &ec[i.edge], n, lay.edge(i.edge), lay.incidence(k));
    }
    if let Some(hs) = confine {
        for (v, h) in hs.iter().enumerate() {
            push_membership_rows(&mut rows, &comp(h), n, lay.vertex(v));
        }
    }
    RationalMatrix::from_rows(n, &rows).expect("rows have the layout length")
}

fn kernel_dim(r: &Realisation) -> usize {
    r.all_algebras().map(Subalgebra::dim).sum()
}

fn solve(m: &RationalMatrix) -> Subspace {
    if m.rows() == 0 {
        Subspace::full(m.cols())
    } else {
        nullspace(m)
    }
}

fn assemble(r: &Realisation, dim_a: usize) -> Result<MotionReport> {
    let dim_kernel_pi = kernel_dim(r);
    let dim_pi_a = dim_a.checked_sub(dim_kernel_pi).ok_or_else(|| {
        Error::Invariant(format!("dim A = {dim_a} is smaller than dim ker π = {dim_kernel_pi}"))
    })?;
    let dim_trivial = r.algebra_dim() - r.common_algebra().dim();
    let dofs = dim_pi_a.checked_sub(dim_trivial).ok_or_else(|| {
        Error::Invariant(format!("dim π(A) = {dim_pi_a} is smaller than the trivial motions ({dim_trivial})"))
    })?;
    Ok(MotionReport { dim_a, dim_kernel_pi, dim_pi_a, dim_trivial, dofs, rigid: dofs == 0 })
}

/// Motion report together with a basis of `A`.
pub fn motion_space_with_basis(r: &Realisation) -> Result<(MotionReport, Subspace)> {
    let a = solve(&motion_system(r, None));
    Ok((assemble(r, a.dim())?, a))
}

pub fn motion_space(r: &Realisation) -> Result<MotionReport> {
    let m = motion_system(r, None);
    let dim_a = m.cols() - m.rank();
    assemble(r, dim_a)
}

/// Floating-point variant: `dim A` from a singular-value rank with relative `cutoff`.
/// Algebra dimensions stay exact.
pub fn motion_space_approx(r: &Realisation, cutoff: f64) -> Result<MotionReport> {
    let m = motion_system(r, None);
    let rank = if m.rows() == 0 { 0 } else { approx::numeric_rank(&m, cutoff) };
    assemble(r, m.cols() - rank)
}

pub fn is_infinitesimally_rigid(r: &Realisation) -> Result<bool> {
    Ok(motion_space(r)?.rigid)
}

/// Span of `ker π` (each block in its own algebra) plus the diagonal image of the algebra.
pub fn trivial_and_kernel(r: &Realisation) -> Result<Subspace> {
    let lay = Layout::of(r);
    let n = lay.len();
    let mut gens = Vec::new();
    let blocks = r.all_algebras().collect::<Vec<_>>();
    for (b, a) in blocks.iter().enumerate() {
        for v in a.span().basis_vectors() {
            let mut x = vec![q(0); n];
            x[b * lay.block..(b + 1) * lay.block].clone_from_slice(&v);
            gens.push(x);
        }
    }
    for j in 0..lay.block {
        gens.push(diagonal(&lay, &unit(lay.block, j)));
    }
    Subspace::span(n, &gens)
}

pub fn diagonal(lay: &Layout, u: &[Rational]) -> Vec<Rational> {
    let mut x = Vec::with_capacity(lay.len());
    for _ in 0..lay.block_count() {
        x.extend_from_slice(u);
    }
    x
}

fn unit(n: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![q(0); n];
    v[j] = q(1);
    v
}

/// Basis vectors of `A` whose images span `π(A)` modulo the trivial motions; there are
/// exactly `dofs` of them.
pub fn nontrivial_motions(r: &Realisation) -> Result<Vec<Vec<Rational>>> {
    let (report, a) = motion_space_with_basis(r)?;
    let mut span = trivial_and_kernel(r)?;
    let mut out = Vec::new();
    for v in a.basis_vectors() {
        if !span.contains(&v) {
            span = span.sum(&Subspace::span(span.ambient(), std::slice::from_ref(&v))?)?;
            out.push(v);
        }
    }
    if out.len() != report.dofs {
        return Err(Error::Invariant(format!(
            "found {} independent nontrivial motions, expected {}",
            out.len(),
            report.dofs
        )));
    }
    Ok(out)
}

/// Whether `x` satisfies every incidence condition.
pub fn is_motion(r: &Realisation, x: &[Rational]) -> bool {
    let m = motion_system(r, None);
    x.len() == m.cols() && m.mul_vec(x).map(|y| y.iter().all(|c| c == &q(0))).unwrap_or(false)
}

/// Constraint algebras per vertex from a map keyed by vertex id; absent vertices are free.
pub fn constraint_algebras(r: &Realisation, map: &BTreeMap<String, Subalgebra>) -> Result<Vec<Subalgebra>> {
    let h = r.hypergraph();
    let mut out = vec![r.kind().model().full(); h.vertex_count()];
    for (id, a) in map {
        let v = h.require_vertex(id)?;
        if a.kind() != r.kind() {
            return Err(Error::ModelMismatch(r.kind().to_string(), a.kind().to_string()));
        }
        out[v] = a.clone();
    }
    Ok(out)
}

/// Motions whose vertex components lie in the constraint algebras `confine`.
/// `space_dims` are the dimensions of the constraint spaces; each must equal the orbit
/// dimension `dim H_v - dim(H_v ∩ h_v)`.
pub fn constrained_motion_space(r: &Realisation, confine: &[Subalgebra], space_dims: &[usize]) -> Result<ConstrainedReport> {
    let nv = r.hypergraph().vertex_count();
    if confine.len() != nv || space_dims.len() != nv {
        return Err(Error::DimensionMismatch { expected: nv, found: confine.len().min(space_dims.len()) });
    }
    let mut orbit = Vec::with_capacity(nv);
    let mut vertex_kernel = 0;
    for (v, hv) in confine.iter().enumerate() {
        let meet = hv.intersect(&r.vertex_algebras()[v])?;
        vertex_kernel += meet.dim();
        orbit.push(hv.dim() - meet.dim());
    }
    if orbit != space_dims {
        return Err(Error::Invariant(format!(
            "orbit dimensions {orbit:?} differ from constraint space dimensions {space_dims:?}"
        )));
    }
    let m = motion_system(r, Some(confine));
    let dim_a = m.cols() - m.rank();
    let dim_kernel_pi = vertex_kernel
        + r.edge_algebras().iter().map(Subalgebra::dim).sum::<usize>()
        + r.incidence_algebras().iter().map(Subalgebra::dim).sum::<usize>();
    let dim_pi_a = dim_a
        .checked_sub(dim_kernel_pi)
        .ok_or_else(|| Error::Invariant("constrained kernel of π is not contained in A".into()))?;
    let g = r.algebra_dim() as i64;
    let codim = |a: &Subalgebra| g - a.dim() as i64;
    let mut lower_bound: i64 = orbit.iter().map(|&o| o as i64).sum();
    lower_bound += r.edge_algebras().iter().map(codim).sum::<i64>();
    for (k, i) in r.incidences().iter().enumerate() {
        lower_bound += codim(&r.incidence_algebras()[k])
            - codim(&r.vertex_algebras()[i.vertex])
            - codim(&r.edge_algebras()[i.edge]);
    }
    let closed_form_bound = space_dims.iter().map(|&s| s as i64).sum::<i64>() - r.hypergraph().edge_count() as i64;
    Ok(ConstrainedReport { dim_a, dim_kernel_pi, dim_pi_a, lower_bound, closed_form_bound })
}

/// Constrained report for a realisation built with constraint spaces.
pub fn constrained_report(r: &Realisation) -> Result<ConstrainedReport> {
    let c = r
        .constraints()
        .ok_or_else(|| Error::Instance("realisation carries no vertex constraints".into()))?;
    constrained_motion_space(r, &c.algebras, &c.space_dims)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CentreCheck {
    /// Triples `(centre(x_e), centre(x_e'), p(v))` found collinear.
    pub triples: usize,
    /// Edge pairs skipped because a component is zero.
    pub skipped: usize,
}

/// In `e(2)`, edge components of a motion at edges `e, e'` through `v` differ by an element
/// of `h_v`, so their centres of rotation lie on a line with the point of `v`. The point is
/// recovered as the centre of the one-dimensional `h_v`.
pub fn check_rotation_centres(r: &Realisation, x: &[Rational]) -> Result<CentreCheck> {
    if r.kind() != (ModelKind::Euclidean { d: 2 }) {
        return Err(Error::Instance(format!("centres of rotation are defined in euclidean(2), not {}", r.kind())));
    }
    let lay = Layout::of(r);
    if x.len() != lay.len() {
        return Err(Error::DimensionMismatch { expected: lay.len(), found: x.len() });
    }
    let model = r.kind().model();
    let h = r.hypergraph();
    let mut out = CentreCheck::default();
    for (v, hv) in r.vertex_algebras().iter().enumerate() {
        if hv.dim() != 1 {
            continue;
        }
        let p = centre_of_rotation(&hv.basis_matrices()[0])?;
        let edges = h.edges_of(v);
        for (a, &e) in edges.iter().enumerate() {
            for &f in &edges[a + 1..] {
                let we = &x[lay.edge(e)..lay.edge(e) + lay.block];
                let wf = &x[lay.edge(f)..lay.edge(f) + lay.block];
                if we.iter().all(|c| c == &q(0)) || wf.iter().all(|c| c == &q(0)) {
                    out.skipped += 1;
                    continue;
                }
                let ce = centre_of_rotation(&model.element(we))?;
                let cf = centre_of_rotation(&model.element(wf))?;
                let col = centres_collinear(&ce, &cf, &p)?;
                let distinct = ce != cf && ce != p && cf != p;
                if !col.collinear || (distinct && col.algebra_sum_dim != 2) || col.algebra_sum_dim > 2 {
                    return Err(Error::Invariant(format!(
                        "centres of `{}` and `{}` are not collinear with the point of `{}`",
                        h.edges()[e].id,
                        h.edges()[f].id,
                        h.vertices()[v]
                    )));
                }
                out.triples += 1;
            }
        }
    }
    Ok(out)
}
