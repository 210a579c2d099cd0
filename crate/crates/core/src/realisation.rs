//! Graph-of-groups realisations: a subalgebra for every vertex, edge and incidence.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Incidence};
use crate::liemodels::{stabiliser, tangency_algebra_affine, AlgebraMap, GeometricObject, ModelKind, Subalgebra};
use crate::linalg::{Rational, Subspace};

/// A matrix written row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixSpec(#[serde(with = "crate::json::vectors")] pub Vec<Vec<Rational>>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneSpec {
    #[serde(with = "crate::json::vector")]
    pub normal: Vec<Rational>,
    #[serde(with = "crate::json::scalar")]
    pub offset: Rational,
}

/// Affine constraint space `point + span(directions)`; `point` defaults to the vertex position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_vector")]
    pub point: Option<Vec<Rational>>,
    #[serde(with = "crate::json::vectors")]
    pub directions: Vec<Vec<Rational>>,
}

mod opt_vector {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::json::{to_json_vec, JsonRational};
    use crate::linalg::Rational;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|v| to_json_vec(v)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        Ok(Option::<Vec<JsonRational>>::deserialize(d)?.map(|v| v.into_iter().map(|x| x.0).collect()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomIncidence {
    pub vertex: String,
    pub edge: String,
    pub basis: Vec<MatrixSpec>,
}

/// Geometric data from which a realisation is built; `kind` selects the recipe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RealisationSpec {
    /// Points of `R^d`; edges are bars between two distinct points.
    BarJoint {
        #[serde(with = "crate::json::vector_map")]
        coords: BTreeMap<String, Vec<Rational>>,
    },
    /// `k`-dimensional subspaces on vertices, `l`-dimensional subspaces on edges of `R^n`.
    Projective {
        k: usize,
        l: usize,
        #[serde(with = "crate::json::vectors_map")]
        vertex_subspaces: BTreeMap<String, Vec<Vec<Rational>>>,
        #[serde(with = "crate::json::vectors_map")]
        edge_subspaces: BTreeMap<String, Vec<Vec<Rational>>>,
    },
    /// Homogeneous scene points `[x_0 : ... : x_d]`.
    Scene {
        #[serde(with = "crate::json::vector_map")]
        points: BTreeMap<String, Vec<Rational>>,
    },
    /// Points on vertices and hyperplanes on edges, each point lying on its edges' hyperplanes.
    Parallel {
        #[serde(with = "crate::json::vector_map")]
        points: BTreeMap<String, Vec<Rational>>,
        hyperplanes: BTreeMap<String, HyperplaneSpec>,
    },
    /// Bar-joint framework with vertices confined to affine subspaces; absent vertices are free.
    Constrained {
        #[serde(with = "crate::json::vector_map")]
        coords: BTreeMap<String, Vec<Rational>>,
        #[serde(default)]
        constraints: BTreeMap<String, ConstraintSpec>,
    },
    /// Explicit subalgebra bases. Incidences default to intersections.
    Custom {
        vertices: BTreeMap<String, Vec<MatrixSpec>>,
        edges: BTreeMap<String, Vec<MatrixSpec>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        incidences: Vec<CustomIncidence>,
    },
}

impl RealisationSpec {
    pub fn name(&self) -> &'static str {
        match self {
            RealisationSpec::BarJoint { .. } => "bar_joint",
            RealisationSpec::Projective { .. } => "projective",
            RealisationSpec::Scene { .. } => "scene",
            RealisationSpec::Parallel { .. } => "parallel",
            RealisationSpec::Constrained { .. } => "constrained",
            RealisationSpec::Custom { .. } => "custom",
        }
    }
}

/// Vertex constraint algebras together with the dimensions of the affine spaces they preserve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraints {
    pub algebras: Vec<Subalgebra>,
    pub space_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realisation {
    hypergraph: Hypergraph,
    kind: ModelKind,
    vertex: Vec<Subalgebra>,
    edge: Vec<Subalgebra>,
    incidence: Vec<Subalgebra>,
    incidences: Vec<Incidence>,
    constraints: Option<Constraints>,
    warnings: Vec<String>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, id: &str, what: &'static str) -> Result<&'a T> {
    map.get(id).ok_or_else(|| Error::Unknown { kind: what, id: id.to_string() })
}

/// Rejects map keys that name no element of the hypergraph.
fn no_strays<T>(map: &BTreeMap<String, T>, known: impl Fn(&str) -> bool, what: &'static str) -> Result<()> {
    match map.keys().find(|k| !known(k)) {
        Some(k) => Err(Error::Unknown { kind: what, id: k.clone() }),
        None => Ok(()),
    }
}

fn point(coords: &[Rational]) -> GeometricObject {
    GeometricObject::Point { coords: coords.to_vec() }
}

fn intersection(kind: ModelKind, algebras: impl IntoIterator<Item = Subalgebra>) -> Result<Subalgebra> {
    let mut acc = kind.model().full();
    for a in algebras {
        acc = acc.intersect(&a)?;
    }
    Ok(acc)
}

impl Realisation {
    /// Assembles a realisation from explicit algebras. Missing incidence algebras are the
    /// intersections of their endpoints; supplied ones must lie in both endpoints.
    pub fn from_parts(
        hypergraph: Hypergraph,
        kind: ModelKind,
        vertex: Vec<Subalgebra>,
        edge: Vec<Subalgebra>,
        incidence: Option<Vec<Subalgebra>>,
    ) -> Result<Self> {
        if vertex.len() != hypergraph.vertex_count() {
            return Err(Error::DimensionMismatch { expected: hypergraph.vertex_count(), found: vertex.len() });
        }
        if edge.len() != hypergraph.edge_count() {
            return Err(Error::DimensionMismatch { expected: hypergraph.edge_count(), found: edge.len() });
        }
        for a in vertex.iter().chain(&edge) {
            if a.kind() != kind {
                return Err(Error::ModelMismatch(kind.to_string(), a.kind().to_string()));
            }
        }
        let incidences = hypergraph.incidences();
        let incidence = match incidence {
            Some(inc) => {
                if inc.len() != incidences.len() {
                    return Err(Error::DimensionMismatch { expected: incidences.len(), found: inc.len() });
                }
                inc
            }
            None => incidences
                .iter()
                .map(|i| vertex[i.vertex].intersect(&edge[i.edge]))
                .collect::<Result<Vec<_>>>()?,
        };
        let r = Realisation {
            hypergraph,
            kind,
            vertex,
            edge,
            incidence,
            incidences,
            constraints: None,
            warnings: Vec::new(),
        };
        r.check_containment().map_err(|e| match e {
            Error::Invariant(m) => Error::Incidence(m),
            other => other,
        })?;
        Ok(r)
    }

    /// Builds the realisation prescribed by `spec` over `kind`.
    pub fn build(hypergraph: Hypergraph, kind: ModelKind, spec: &RealisationSpec) -> Result<Self> {
        let wrong = || Error::Instance(format!("`{}` realisations are not defined over {kind}", spec.name()));
        let require = |ok: bool| if ok { Ok(()) } else { Err(wrong()) };
        let h = &hypergraph;
        let vids = |id: &str| h.vertex_index(id).is_some();
        let eids = |id: &str| h.edge_index(id).is_some();
        match spec {
            RealisationSpec::BarJoint { coords } => {
                require(matches!(kind, ModelKind::Euclidean { .. }))?;
                no_strays(coords, vids, "vertex")?;
                let (vertex, edge) = bar_joint_algebras(h, kind, coords)?;
                Self::from_parts(hypergraph, kind, vertex, edge, None)
            }
            RealisationSpec::Projective { k, l, vertex_subspaces, edge_subspaces } => {
                let ModelKind::Projective { n } = kind else { return Err(wrong()) };
                no_strays(vertex_subspaces, vids, "vertex")?;
                no_strays(edge_subspaces, eids, "edge")?;
                let subspace = |basis: &Vec<Vec<Rational>>, want: usize, id: &str| -> Result<Subspace> {
                    if basis.iter().any(|b| b.len() != n) {
                        return Err(Error::DimensionMismatch { expected: n, found: basis[0].len() });
                    }
                    let s = Subspace::span(n, basis)?;
                    if s.dim() != want || basis.len() != want {
                        return Err(Error::Degenerate(format!(
                            "subspace of `{id}` should have dimension {want}, its {} spanning vectors give {}",
                            basis.len(),
                            s.dim()
                        )));
                    }
                    Ok(s)
                };
                let mut ws = Vec::new();
                let mut vertex = Vec::new();
                for id in h.vertices() {
                    let basis = lookup(vertex_subspaces, id, "vertex")?;
                    ws.push(subspace(basis, *k, id)?);
                    vertex.push(stabiliser(kind, &GeometricObject::ProjectiveSubspace { basis: basis.clone() })?);
                }
                let mut edge = Vec::new();
                for (e, ed) in h.edges().iter().enumerate() {
                    let basis = lookup(edge_subspaces, &ed.id, "edge")?;
                    let u = subspace(basis, *l, &ed.id)?;
                    for &v in h.members(e) {
                        if !u.contains_subspace(&ws[v]) {
                            return Err(Error::Incidence(format!(
                                "subspace of vertex `{}` is not contained in that of edge `{}`",
                                h.vertices()[v],
                                ed.id
                            )));
                        }
                    }
                    edge.push(stabiliser(kind, &GeometricObject::ProjectiveSubspace { basis: basis.clone() })?);
                }
                Self::from_parts(hypergraph, kind, vertex, edge, None)
            }
            RealisationSpec::Scene { points } => {
                require(matches!(kind, ModelKind::Scenes { .. }))?;
                no_strays(points, vids, "vertex")?;
                let vertex = h
                    .vertices()
                    .iter()
                    .map(|id| {
                        let s = lookup(points, id, "vertex")?;
                        stabiliser(kind, &GeometricObject::ScenePoint { coords: s.clone() })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let edge = (0..h.edge_count())
                    .map(|e| intersection(kind, h.members(e).iter().map(|&v| vertex[v].clone())))
                    .collect::<Result<Vec<_>>>()?;
                Self::from_parts(hypergraph, kind, vertex, edge, None)
            }
            RealisationSpec::Parallel { points, hyperplanes } => {
                let ModelKind::Dilation { d } = kind else { return Err(wrong()) };
                no_strays(points, vids, "vertex")?;
                no_strays(hyperplanes, eids, "edge")?;
                let mut edge = Vec::new();
                for (e, ed) in h.edges().iter().enumerate() {
                    let hp = lookup(hyperplanes, &ed.id, "edge")?;
                    edge.push(stabiliser(
                        kind,
                        &GeometricObject::Hyperplane { normal: hp.normal.clone(), offset: hp.offset.clone() },
                    )?);
                    for &v in h.members(e) {
                        let p = lookup(points, &h.vertices()[v], "vertex")?;
                        if p.len() != d {
                            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
                        }
                        if crate::linalg::dot(&hp.normal, p) != hp.offset {
                            return Err(Error::Incidence(format!(
                                "point of vertex `{}` does not lie on the hyperplane of edge `{}`",
                                h.vertices()[v],
                                ed.id
                            )));
                        }
                    }
                }
                let mut warnings = Vec::new();
                let mut vertex = Vec::new();
                for (v, id) in h.vertices().iter().enumerate() {
                    let incident = h.edges_of(v);
                    if incident.is_empty() {
                        let p = lookup(points, id, "vertex")?;
                        vertex.push(stabiliser(kind, &point(p))?);
                        warnings.push(format!("isolated vertex `{id}` pinned to the stabiliser of its point"));
                    } else {
                        vertex.push(intersection(kind, incident.iter().map(|&e| edge[e].clone()))?);
                    }
                }
                let mut r = Self::from_parts(hypergraph, kind, vertex, edge, None)?;
                r.warnings = warnings;
                Ok(r)
            }
            RealisationSpec::Constrained { coords, constraints } => {
                let ModelKind::Euclidean { d } = kind else { return Err(wrong()) };
                no_strays(coords, vids, "vertex")?;
                no_strays(constraints, vids, "vertex")?;
                let (vertex, edge) = bar_joint_algebras(h, kind, coords)?;
                let mut algebras = Vec::new();
                let mut space_dims = Vec::new();
                for id in h.vertices() {
                    let p = lookup(coords, id, "vertex")?;
                    match constraints.get(id) {
                        None => {
                            algebras.push(kind.model().full());
                            space_dims.push(d);
                        }
                        Some(c) => {
                            let base = c.point.clone().unwrap_or_else(|| p.clone());
                            let l = GeometricObject::AffineSubspace { point: base.clone(), directions: c.directions.clone() };
                            let alg = tangency_algebra_affine(kind, &l)?;
                            let offset: Vec<Rational> = p.iter().zip(&base).map(|(a, b)| a - b).collect();
                            if !Subspace::span(d, &c.directions)?.contains(&offset) {
                                return Err(Error::Incidence(format!(
                                    "vertex `{id}` does not lie in its constraint space"
                                )));
                            }
                            algebras.push(alg);
                            space_dims.push(c.directions.len());
                        }
                    }
                }
                let mut r = Self::from_parts(hypergraph, kind, vertex, edge, None)?;
                r.constraints = Some(Constraints { algebras, space_dims });
                Ok(r)
            }
            RealisationSpec::Custom { vertices, edges, incidences } => {
                no_strays(vertices, vids, "vertex")?;
                no_strays(edges, eids, "edge")?;
                let algebra = |mats: &[MatrixSpec]| -> Result<Subalgebra> {
                    let mats = mats
                        .iter()
                        .map(|m| crate::linalg::RationalMatrix::from_rows(kind.size(), &m.0))
                        .collect::<Result<Vec<_>>>()?;
                    if mats.iter().any(|m| m.rows() != kind.size()) {
                        return Err(Error::DimensionMismatch {
                            expected: kind.size(),
                            found: mats.iter().map(|m| m.rows()).find(|&r| r != kind.size()).unwrap_or(0),
                        });
                    }
                    Subalgebra::validated(kind, &mats)
                };
                let vertex = h
                    .vertices()
                    .iter()
                    .map(|id| algebra(lookup(vertices, id, "vertex")?))
                    .collect::<Result<Vec<_>>>()?;
                let edge = h
                    .edges()
                    .iter()
                    .map(|ed| algebra(lookup(edges, &ed.id, "edge")?))
                    .collect::<Result<Vec<_>>>()?;
                let order: HashMap<(usize, usize), usize> =
                    h.incidences().iter().enumerate().map(|(k, i)| ((i.vertex, i.edge), k)).collect();
                let mut inc: Vec<Option<Subalgebra>> = vec![None; order.len()];
                for ci in incidences {
                    let key = (h.require_vertex(&ci.vertex)?, h.require_edge(&ci.edge)?);
                    let k = *order.get(&key).ok_or_else(|| {
                        Error::Incidence(format!("`{}` is not a member of `{}`", ci.vertex, ci.edge))
                    })?;
                    inc[k] = Some(algebra(&ci.basis)?);
                }
                let all = h.incidences();
                let inc = inc
                    .into_iter()
                    .zip(&all)
                    .map(|(a, i)| match a {
                        Some(a) => Ok(a),
                        None => vertex[i.vertex].intersect(&edge[i.edge]),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::from_parts(hypergraph, kind, vertex, edge, Some(inc))
            }
        }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn algebra_dim(&self) -> usize {
        self.kind.algebra_dim()
    }

    pub fn vertex_algebras(&self) -> &[Subalgebra] {
        &self.vertex
    }

    pub fn edge_algebras(&self) -> &[Subalgebra] {
        &self.edge
    }

    pub fn incidence_algebras(&self) -> &[Subalgebra] {
        &self.incidence
    }

    /// Incidences in the order of [`Realisation::incidence_algebras`].
    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    /// Every algebra, vertices first, then edges, then incidences.
    pub fn all_algebras(&self) -> impl Iterator<Item = &Subalgebra> {
        self.vertex.iter().chain(&self.edge).chain(&self.incidence)
    }

    pub fn constraints(&self) -> Option<&Constraints> {
        self.constraints.as_ref()
    }

    pub fn with_constraints(mut self, constraints: Constraints) -> Result<Self> {
        if constraints.algebras.len() != self.vertex.len() || constraints.space_dims.len() != self.vertex.len() {
            return Err(Error::DimensionMismatch { expected: self.vertex.len(), found: constraints.algebras.len() });
        }
        if let Some(a) = constraints.algebras.iter().find(|a| a.kind() != self.kind) {
            return Err(Error::ModelMismatch(self.kind.to_string(), a.kind().to_string()));
        }
        self.constraints = Some(constraints);
        Ok(self)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Checks `h_i ⊆ h_v` and `h_i ⊆ h_e` for every incidence.
    pub fn check_containment(&self) -> Result<()> {
        for (k, i) in self.incidences.iter().enumerate() {
            let a = &self.incidence[k];
            if !self.vertex[i.vertex].contains(a) || !self.edge[i.edge].contains(a) {
                return Err(Error::Invariant(format!(
                    "incidence algebra of ({}, {}) is not contained in both endpoint algebras",
                    self.hypergraph.vertices()[i.vertex],
                    self.hypergraph.edges()[i.edge].id
                )));
            }
        }
        Ok(())
    }

    /// Whether every incidence algebra is the intersection of its endpoints.
    pub fn uses_default_incidences(&self) -> bool {
        self.incidences.iter().zip(&self.incidence).all(|(i, a)| {
            self.vertex[i.vertex].intersect(&self.edge[i.edge]).map(|b| &b == a).unwrap_or(false)
        })
    }

    /// `∩ h_x` over all of `V ∪ E ∪ I`.
    pub fn common_algebra(&self) -> Subalgebra {
        intersection(self.kind, self.all_algebras().cloned()).expect("algebras share the realisation's model")
    }
}

fn bar_joint_algebras(
    h: &Hypergraph,
    kind: ModelKind,
    coords: &BTreeMap<String, Vec<Rational>>,
) -> Result<(Vec<Subalgebra>, Vec<Subalgebra>)> {
    let pts = h
        .vertices()
        .iter()
        .map(|id| lookup(coords, id, "vertex").cloned())
        .collect::<Result<Vec<_>>>()?;
    let vertex = pts.iter().map(|p| stabiliser(kind, &point(p))).collect::<Result<Vec<_>>>()?;
    let mut edge = Vec::new();
    for (e, ed) in h.edges().iter().enumerate() {
        let m = h.members(e);
        if m.len() != 2 {
            return Err(Error::Hypergraph(format!("bar `{}` must join exactly two vertices", ed.id)));
        }
        if pts[m[0]] == pts[m[1]] {
            return Err(Error::Degenerate(format!("bar `{}` joins two coincident points", ed.id)));
        }
        edge.push(vertex[m[0]].intersect(&vertex[m[1]])?);
    }
    Ok((vertex, edge))
}

/// Transports `r` along `map`. With `relabel`, the result lives on the dual hypergraph:
/// edges of `r` become vertices and vice versa, and each incidence keeps its algebra.
pub fn pushforward(r: &Realisation, map: AlgebraMap, relabel: bool) -> Result<Realisation> {
    map.check_isomorphism(r.kind)?;
    let target = map.target(r.kind)?;
    let push = |xs: &[Subalgebra]| xs.iter().map(|a| map.push(a)).collect::<Result<Vec<_>>>();
    let vertex = push(&r.vertex)?;
    let edge = push(&r.edge)?;
    let incidence = push(&r.incidence)?;
    let mut out = if relabel {
        if r.constraints.is_some() {
            return Err(Error::Instance("constrained realisations have no dual".into()));
        }
        let dual = r.hypergraph.dual();
        let index: HashMap<(usize, usize), usize> =
            r.incidences.iter().enumerate().map(|(k, i)| ((i.vertex, i.edge), k)).collect();
        let inc = dual
            .incidences()
            .iter()
            .map(|i| incidence[index[&(i.edge, i.vertex)]].clone())
            .collect();
        Realisation::from_parts(dual, target, edge, vertex, Some(inc))?
    } else {
        let mut out = Realisation::from_parts(r.hypergraph.clone(), target, vertex, edge, Some(incidence))?;
        if let Some(c) = &r.constraints {
            out = out.with_constraints(Constraints { algebras: push(&c.algebras)?, space_dims: c.space_dims.clone() })?;
        }
        out
    };
    out.warnings = r.warnings.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn qs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn coords(pts: &[(&str, &[i64])]) -> BTreeMap<String, Vec<Rational>> {
        pts.iter().map(|(id, p)| (id.to_string(), qs(p))).collect()
    }

    pub(crate) fn triangle() -> Realisation {
        let h = Hypergraph::graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let spec = RealisationSpec::BarJoint { coords: coords(&[("v0", &[0, 0]), ("v1", &[1, 0]), ("v2", &[0, 1])]) };
        Realisation::build(h, ModelKind::Euclidean { d: 2 }, &spec).unwrap()
    }

    #[test]
    fn triangle_algebras() {
        let r = triangle();
        assert!(r.vertex_algebras().iter().all(|a| a.dim() == 1));
        assert!(r.edge_algebras().iter().all(|a| a.dim() == 0));
        assert!(r.incidence_algebras().iter().all(|a| a.dim() == 0));
        assert!(r.uses_default_incidences());
    }

    #[test]
    fn coincident_bar_rejected() {
        let h = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        let spec = RealisationSpec::BarJoint { coords: coords(&[("v0", &[1, 1]), ("v1", &[1, 1])]) };
        assert!(matches!(Realisation::build(h, ModelKind::Euclidean { d: 2 }, &spec), Err(Error::Degenerate(_))));
    }

    #[test]
    fn missing_and_stray_coordinates() {
        let h = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        let spec = RealisationSpec::BarJoint { coords: coords(&[("v0", &[1, 1])]) };
        assert!(Realisation::build(h.clone(), ModelKind::Euclidean { d: 2 }, &spec).is_err());
        let spec = RealisationSpec::BarJoint { coords: coords(&[("v0", &[1, 1]), ("v1", &[0, 0]), ("zz", &[0, 1])]) };
        assert!(Realisation::build(h.clone(), ModelKind::Euclidean { d: 2 }, &spec).is_err());
        assert!(Realisation::build(h, ModelKind::Scenes { d: 2 }, &spec).is_err());
    }

    fn point_line() -> Realisation {
        let h = Hypergraph::from_lists(&["p"], &[("l", &["p"])]).unwrap();
        let spec = RealisationSpec::Projective {
            k: 1,
            l: 2,
            vertex_subspaces: [("p".to_string(), vec![qs(&[1, 1, 0])])].into(),
            edge_subspaces: [("l".to_string(), vec![qs(&[1, 0, 0]), qs(&[0, 1, 0])])].into(),
        };
        Realisation::build(h, ModelKind::Projective { n: 3 }, &spec).unwrap()
    }

    #[test]
    fn projective_point_on_line() {
        let r = point_line();
        assert_eq!(r.vertex_algebras()[0].dim(), 6);
        assert_eq!(r.edge_algebras()[0].dim(), 6);
        assert_eq!(r.incidence_algebras()[0].dim(), 5);
    }

    #[test]
    fn projective_incidence_enforced() {
        let h = Hypergraph::from_lists(&["p"], &[("l", &["p"])]).unwrap();
        let spec = RealisationSpec::Projective {
            k: 1,
            l: 2,
            vertex_subspaces: [("p".to_string(), vec![qs(&[0, 0, 1])])].into(),
            edge_subspaces: [("l".to_string(), vec![qs(&[1, 0, 0]), qs(&[0, 1, 0])])].into(),
        };
        assert!(matches!(Realisation::build(h, ModelKind::Projective { n: 3 }, &spec), Err(Error::Incidence(_))));
    }

    #[test]
    fn scene_vertex_on_edge() {
        let h = Hypergraph::from_lists(&["a"], &[("e", &["a"])]).unwrap();
        let spec = RealisationSpec::Scene { points: coords(&[("a", &[1, 2, 1])]) };
        let r = Realisation::build(h, ModelKind::Scenes { d: 2 }, &spec).unwrap();
        assert_eq!(r.vertex_algebras()[0].dim(), 2);
        assert_eq!(r.edge_algebras()[0].dim(), 2);
        assert_eq!(r.incidence_algebras()[0].codim(), 1);
    }

    #[test]
    fn parallel_vertices_and_isolated_warning() {
        let h = Hypergraph::from_lists(&["a", "b", "z"], &[("x", &["a", "b"]), ("y", &["a"])]).unwrap();
        let spec = RealisationSpec::Parallel {
            points: coords(&[("a", &[0, 0]), ("b", &[1, 0]), ("z", &[5, 5])]),
            hyperplanes: [
                ("x".to_string(), HyperplaneSpec { normal: qs(&[0, 1]), offset: q(0) }),
                ("y".to_string(), HyperplaneSpec { normal: qs(&[1, 1]), offset: q(0) }),
            ]
            .into(),
        };
        let r = Realisation::build(h, ModelKind::Dilation { d: 2 }, &spec).unwrap();
        assert_eq!(r.vertex_algebras()[0].dim(), 1);
        assert_eq!(r.vertex_algebras()[1].dim(), 2);
        assert_eq!(r.vertex_algebras()[2].dim(), 1);
        assert_eq!(r.warnings().len(), 1);
    }

    #[test]
    fn parallel_incidence_enforced() {
        let h = Hypergraph::from_lists(&["a"], &[("x", &["a"])]).unwrap();
        let spec = RealisationSpec::Parallel {
            points: coords(&[("a", &[0, 1])]),
            hyperplanes: [("x".to_string(), HyperplaneSpec { normal: qs(&[0, 1]), offset: q(0) })].into(),
        };
        assert!(matches!(Realisation::build(h, ModelKind::Dilation { d: 2 }, &spec), Err(Error::Incidence(_))));
    }

    #[test]
    fn constrained_spaces() {
        let h = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        let spec = RealisationSpec::Constrained {
            coords: coords(&[("v0", &[0, 0]), ("v1", &[1, 0])]),
            constraints: [(
                "v0".to_string(),
                ConstraintSpec { point: Some(qs(&[3, 0])), directions: vec![qs(&[1, 0])] },
            )]
            .into(),
        };
        let r = Realisation::build(h.clone(), ModelKind::Euclidean { d: 2 }, &spec).unwrap();
        let c = r.constraints().unwrap();
        assert_eq!(c.space_dims, vec![1, 2]);
        assert_eq!(c.algebras[0].dim(), 1);
        let bad = RealisationSpec::Constrained {
            coords: coords(&[("v0", &[0, 0]), ("v1", &[1, 0])]),
            constraints: [(
                "v0".to_string(),
                ConstraintSpec { point: Some(qs(&[3, 1])), directions: vec![qs(&[1, 0])] },
            )]
            .into(),
        };
        assert!(Realisation::build(h, ModelKind::Euclidean { d: 2 }, &bad).is_err());
    }

    #[test]
    fn custom_validation() {
        let h = Hypergraph::from_lists(&["a"], &[("e", &["a"])]).unwrap();
        let rot = MatrixSpec(vec![qs(&[0, -1, 0]), qs(&[1, 0, 0]), qs(&[0, 0, 0])]);
        let tx = MatrixSpec(vec![qs(&[0, 0, 1]), qs(&[0, 0, 0]), qs(&[0, 0, 0])]);
        let ok = RealisationSpec::Custom {
            vertices: [("a".to_string(), vec![rot.clone()])].into(),
            edges: [("e".to_string(), vec![rot.clone()])].into(),
            incidences: vec![],
        };
        let r = Realisation::build(h.clone(), ModelKind::Euclidean { d: 2 }, &ok).unwrap();
        assert_eq!(r.incidence_algebras()[0].dim(), 1);
        // rotation + one translation is not closed under the bracket
        let open = RealisationSpec::Custom {
            vertices: [("a".to_string(), vec![rot.clone(), tx.clone()])].into(),
            edges: [("e".to_string(), vec![])].into(),
            incidences: vec![],
        };
        assert!(matches!(Realisation::build(h.clone(), ModelKind::Euclidean { d: 2 }, &open), Err(Error::NotSubalgebra(_))));
        let bad_incidence = RealisationSpec::Custom {
            vertices: [("a".to_string(), vec![rot.clone()])].into(),
            edges: [("e".to_string(), vec![tx.clone()])].into(),
            incidences: vec![CustomIncidence { vertex: "a".into(), edge: "e".into(), basis: vec![rot] }],
        };
        assert!(matches!(Realisation::build(h, ModelKind::Euclidean { d: 2 }, &bad_incidence), Err(Error::Incidence(_))));
    }

    #[test]
    fn identity_pushforward() {
        let r = triangle();
        assert_eq!(pushforward(&r, AlgebraMap::Identity, false).unwrap(), r);
    }

    #[test]
    fn projective_dual_relabels() {
        let r = point_line();
        let d = pushforward(&r, AlgebraMap::ProjectiveDual, true).unwrap();
        assert_eq!(d.hypergraph().vertices(), &["l".to_string()]);
        assert_eq!(d.incidence_algebras()[0].dim(), 5);
        let back = pushforward(&d, AlgebraMap::ProjectiveDual, true).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn wrong_map_rejected() {
        assert!(pushforward(&triangle(), AlgebraMap::ProjectiveDual, false).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let json = r#"{"kind":"parallel","points":{"a":[0,"1/2"]},"hyperplanes":{"x":{"normal":[0,2],"offset":1}}}"#;
        let spec: RealisationSpec = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&spec).unwrap(), json);
        assert!(serde_json::from_str::<RealisationSpec>(r#"{"kind":"scene","points":{},"extra":1}"#).is_err());
    }
}
