//! Maxwell-type counts, the sparsity condition and disconnecting-set flex certificates.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::json::{to_json_vec, JsonRational};
use crate::liemodels::Subalgebra;
use crate::linalg::{is_consistent, q, Rational, RationalMatrix};
use crate::motionspace::{is_motion, Layout};
use crate::realisation::Realisation;

/// Constant codimensions: `k1` on vertices, `k2` on edges, `λ = k1 + k2 - codim(h_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SparsityProfile {
    pub k1: i64,
    pub k2: i64,
    pub lambda: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxwellBound {
    pub bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<SparsityProfile>,
    /// `k1|V| + k2|E| - λ|I|` when a profile exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_form: Option<i64>,
}

fn codim(r: &Realisation, a: &Subalgebra) -> i64 {
    (r.algebra_dim() - a.dim()) as i64
}

/// Common value of `xs`, if there is one.
fn constant(xs: impl IntoIterator<Item = i64>) -> Option<i64> {
    let mut it = xs.into_iter();
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

pub fn sparsity_profile(r: &Realisation) -> Result<SparsityProfile> {
    let k1 = constant(r.vertex_algebras().iter().map(|a| codim(r, a))).ok_or(Error::NoProfile)?;
    let k2 = constant(r.edge_algebras().iter().map(|a| codim(r, a))).ok_or(Error::NoProfile)?;
    let ci = constant(r.incidence_algebras().iter().map(|a| codim(r, a))).ok_or(Error::NoProfile)?;
    Ok(SparsityProfile { k1, k2, lambda: k1 + k2 - ci })
}

pub fn maxwell_bound(r: &Realisation) -> Result<MaxwellBound> {
    let mut bound: i64 = r.vertex_algebras().iter().chain(r.edge_algebras()).map(|a| codim(r, a)).sum();
    for (k, i) in r.incidences().iter().enumerate() {
        bound += codim(r, &r.incidence_algebras()[k])
            - codim(r, &r.vertex_algebras()[i.vertex])
            - codim(r, &r.edge_algebras()[i.edge]);
    }
    let profile = sparsity_profile(r).ok();
    let profile_form = profile.map(|p| {
        let h = r.hypergraph();
        p.k1 * h.vertex_count() as i64 + p.k2 * h.edge_count() as i64 - p.lambda * r.incidences().len() as i64
    });
    if let Some(f) = profile_form {
        if f != bound {
            return Err(Error::Invariant(format!("profile form {f} differs from the codimension count {bound}")));
        }
    }
    Ok(MaxwellBound { bound, profile, profile_form })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SparsityVerdict {
    /// `λ|I'| ≤ k1|V(I')| + k2|E(I')| - dim g`.
    Pass { lhs: i64, rhs: i64 },
    Violation { lhs: i64, rhs: i64 },
    /// `∩_{I'} h_i ≠ 0`, so the inequality is not asserted.
    PreconditionFails { lhs: i64, rhs: i64, common_dim: usize },
    /// The global equality `λ|I| = k1|V| + k2|E| - dim g` fails.
    NotApplicable { lhs: i64, rhs: i64 },
}

fn global_equality(r: &Realisation, p: &SparsityProfile) -> (i64, i64) {
    let h = r.hypergraph();
    let lhs = p.lambda * r.incidences().len() as i64;
    let rhs = p.k1 * h.vertex_count() as i64 + p.k2 * h.edge_count() as i64 - r.algebra_dim() as i64;
    (lhs, rhs)
}

fn subset_sides(r: &Realisation, p: &SparsityProfile, subset: &[usize]) -> (i64, i64) {
    let mut vs: Vec<usize> = subset.iter().map(|&k| r.incidences()[k].vertex).collect();
    let mut es: Vec<usize> = subset.iter().map(|&k| r.incidences()[k].edge).collect();
    vs.sort_unstable();
    vs.dedup();
    es.sort_unstable();
    es.dedup();
    let lhs = p.lambda * subset.len() as i64;
    let rhs = p.k1 * vs.len() as i64 + p.k2 * es.len() as i64 - r.algebra_dim() as i64;
    (lhs, rhs)
}

fn common_dim(r: &Realisation, subset: &[usize]) -> usize {
    let mut acc = r.kind().model().full();
    for &k in subset {
        acc = acc.intersect(&r.incidence_algebras()[k]).expect("algebras share the realisation's model");
        if acc.dim() == 0 {
            break;
        }
    }
    acc.dim()
}

fn evaluate(r: &Realisation, p: &SparsityProfile, subset: &[usize]) -> SparsityVerdict {
    let (lhs, rhs) = subset_sides(r, p, subset);
    let common = common_dim(r, subset);
    if common != 0 {
        SparsityVerdict::PreconditionFails { lhs, rhs, common_dim: common }
    } else if lhs <= rhs {
        SparsityVerdict::Pass { lhs, rhs }
    } else {
        SparsityVerdict::Violation { lhs, rhs }
    }
}

/// Checks the sparsity inequality on one set of incidence indices.
pub fn sparsity_check(r: &Realisation, subset: &[usize]) -> Result<SparsityVerdict> {
    let p = sparsity_profile(r)?;
    if let Some(&k) = subset.iter().find(|&&k| k >= r.incidences().len()) {
        return Err(Error::Unknown { kind: "incidence", id: k.to_string() });
    }
    let (lhs, rhs) = global_equality(r, &p);
    if lhs != rhs {
        return Ok(SparsityVerdict::NotApplicable { lhs, rhs });
    }
    Ok(evaluate(r, &p, subset))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// Enumerate every subset of `I` when `|I|` is at most this.
    pub max_subset: usize,
    /// Only enumerate incidence sets induced by vertex subsets.
    pub vertex_induced_only: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { max_subset: 20, vertex_induced_only: false }
    }
}

/// Largest vertex count for the vertex-induced enumeration.
pub const MAX_INDUCED_VERTICES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanViolation {
    pub incidences: Vec<(String, String)>,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub profile: SparsityProfile,
    pub global_lhs: i64,
    pub global_rhs: i64,
    pub applicable: bool,
    /// `"all"` or `"vertex_induced"`.
    pub family: &'static str,
    pub subsets_checked: u64,
    pub precondition_failures: u64,
    pub violations: Vec<ScanViolation>,
}

enum Outcome {
    Pass,
    Skip,
    Violation(Vec<usize>, i64, i64),
}

/// Enumerates incidence subsets and collects the violated inequalities, in subset order.
pub fn sparsity_scan(r: &Realisation, opts: ScanOptions) -> Result<ScanReport> {
    let p = sparsity_profile(r)?;
    let (global_lhs, global_rhs) = global_equality(r, &p);
    let ni = r.incidences().len();
    let free = !opts.vertex_induced_only && ni <= opts.max_subset;
    let family = if free { "all" } else { "vertex_induced" };
    let mut report = ScanReport {
        profile: p,
        global_lhs,
        global_rhs,
        applicable: global_lhs == global_rhs,
        family,
        subsets_checked: 0,
        precondition_failures: 0,
        violations: Vec::new(),
    };
    if !report.applicable {
        return Ok(report);
    }
    let subsets: Box<dyn Fn(u64) -> Option<Vec<usize>> + Sync> = if free {
        if ni >= 64 {
            return Err(Error::Instance(format!("cannot enumerate all subsets of {ni} incidences")));
        }
        Box::new(move |mask| Some((0..ni).filter(|k| mask >> k & 1 == 1).collect()))
    } else {
        let nv = r.hypergraph().vertex_count();
        if nv > MAX_INDUCED_VERTICES {
            return Err(Error::Instance(format!(
                "vertex-induced scan is limited to {MAX_INDUCED_VERTICES} vertices, found {nv}"
            )));
        }
        let h = r.hypergraph();
        let edge_masks: Vec<u64> =
            (0..h.edge_count()).map(|e| h.members(e).iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let incs = r.incidences().to_vec();
        Box::new(move |mask| {
            let sub: Vec<usize> =
                (0..incs.len()).filter(|&k| edge_masks[incs[k].edge] & !mask == 0).collect();
            // Only the subset whose touched vertices are exactly `mask` is reported, so
            // each induced incidence set is checked once.
            let touched = sub.iter().fold(0u64, |m, &k| m | 1 << incs[k].vertex);
            (touched == mask).then_some(sub)
        })
    };
    let total: u64 = if free { 1 << ni } else { 1 << r.hypergraph().vertex_count() };
    let outcomes: Vec<Outcome> = (1..total)
        .into_par_iter()
        .filter_map(|mask| {
            let sub = subsets(mask)?;
            if sub.is_empty() {
                return None;
            }
            let (lhs, rhs) = subset_sides(r, &p, &sub);
            Some(if lhs <= rhs {
                Outcome::Pass
            } else if common_dim(r, &sub) != 0 {
                Outcome::Skip
            } else {
                Outcome::Violation(sub, lhs, rhs)
            })
        })
        .collect();
    let names = |k: usize| {
        let i = r.incidences()[k];
        let h = r.hypergraph();
        (h.vertices()[i.vertex].clone(), h.edges()[i.edge].id.clone())
    };
    for o in outcomes {
        report.subsets_checked += 1;
        match o {
            Outcome::Pass => {}
            Outcome::Skip => report.precondition_failures += 1,
            Outcome::Violation(sub, lhs, rhs) => {
                report.violations.push(ScanViolation { incidences: sub.into_iter().map(names).collect(), lhs, rhs })
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlexCertificate {
    pub cut: Vec<String>,
    /// `dim ∩_{v ∈ V0} h_v`.
    pub witness_space_dim: usize,
    /// Algebra coordinates of the witness `w`.
    pub witness: Vec<JsonRational>,
    /// Vertices of the component that moves by `w`.
    pub moving_component: Vec<String>,
    pub moving_edges: Vec<String>,
    pub components: usize,
    #[serde(skip)]
    pub motion: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BananaOutcome {
    Certificate(FlexCertificate),
    /// The cut's algebras meet in zero; no motion can be built from it.
    NoCertificate { cut: Vec<String>, witness_space_dim: usize },
    /// The assembled motion is equivalent to a trivial one.
    Inconclusive { cut: Vec<String>, witness_space_dim: usize, reason: String },
}

impl BananaOutcome {
    pub fn certificate(&self) -> Option<&FlexCertificate> {
        match self {
            BananaOutcome::Certificate(c) => Some(c),
            _ => None,
        }
    }
}

/// Builds a nontrivial motion from a disconnecting vertex set whose algebras share a
/// nonzero element: the first component and everything touching it move by that element.
pub fn banana_flex_test(r: &Realisation, cut: &[String]) -> Result<BananaOutcome> {
    let h = r.hypergraph();
    let comps = h.split_components(cut)?;
    if !comps.disconnecting {
        return Err(Error::NotDisconnecting(format!("{{{}}}", cut.join(", "))));
    }
    let mut w_space = r.kind().model().full();
    for id in cut {
        w_space = w_space.intersect(&r.vertex_algebras()[h.require_vertex(id)?])?;
    }
    let witness_space_dim = w_space.dim();
    if witness_space_dim == 0 {
        return Ok(BananaOutcome::NoCertificate { cut: cut.to_vec(), witness_space_dim });
    }
    let w = w_space.span().basis_vectors().remove(0);
    let lay = Layout::of(r);
    let mut motion = vec![q(0); lay.len()];
    let put = |motion: &mut Vec<Rational>, start: usize| motion[start..start + lay.block].clone_from_slice(&w);
    let c1 = &comps.components[0];
    let mut moving_edges = Vec::new();
    for id in c1 {
        put(&mut motion, lay.vertex(h.require_vertex(id)?));
    }
    let in_c1: Vec<bool> = h.vertices().iter().map(|v| c1.contains(v)).collect();
    for e in 0..h.edge_count() {
        if h.members(e).iter().any(|&v| in_c1[v]) {
            put(&mut motion, lay.edge(e));
            moving_edges.push(h.edges()[e].id.clone());
        }
    }
    for (k, i) in r.incidences().iter().enumerate() {
        if h.members(i.edge).iter().any(|&v| in_c1[v]) {
            put(&mut motion, lay.incidence(k));
        }
    }
    if !is_motion(r, &motion) {
        return Err(Error::Invariant("assembled flex fails an incidence condition".into()));
    }
    if equivalent_to_trivial(r, &lay, &motion)? {
        return Ok(BananaOutcome::Inconclusive {
            cut: cut.to_vec(),
            witness_space_dim,
            reason: "the assembled motion differs from a trivial motion by elements of the realisation's algebras"
                .into(),
        });
    }
    Ok(BananaOutcome::Certificate(FlexCertificate {
        cut: cut.to_vec(),
        witness_space_dim,
        witness: to_json_vec(&w),
        moving_component: c1.clone(),
        moving_edges,
        components: comps.components.len(),
        motion,
    }))
}

/// Whether some `u` has `u - t_x ∈ h_x` for every block `x`.
pub fn equivalent_to_trivial(r: &Realisation, lay: &Layout, t: &[Rational]) -> Result<bool> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (b, a) in r.all_algebras().enumerate() {
        let c = a.span().orthogonal_complement_rows();
        let tx = &t[b * lay.block..(b + 1) * lay.block];
        for row in c.row_vecs() {
            rhs.push(crate::linalg::dot(&row, tx));
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(true);
    }
    let m = RationalMatrix::from_rows(lay.block, &rows)?;
    is_consistent(&m, &rhs)
}
