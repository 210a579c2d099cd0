//! Instance files: Lie-model realisations and finite colouring/tensor instances.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::finite::{FiniteRealisation, DEFAULT_CAP};
use crate::hypergraph::{Hypergraph, HypergraphSpec};
use crate::liemodels::{polar_hyperplane, AlgebraMap, GeometricObject, ModelKind, Subalgebra};
use crate::linalg::{nullspace, Rational, RationalMatrix, Subspace};
use crate::realisation::{pushforward, CustomIncidence, HyperplaneSpec, MatrixSpec, Realisation, RealisationSpec};

/// The instance schema, as shipped with the crate.
pub const SCHEMA: &str = include_str!("../schema/instance.schema.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieInstance {
    pub group: ModelKind,
    pub hypergraph: HypergraphSpec,
    pub realisation: RealisationSpec,
}

impl LieInstance {
    pub fn hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::new(self.hypergraph.clone())
    }

    pub fn build(&self) -> Result<Realisation> {
        Realisation::build(self.hypergraph()?, self.group, &self.realisation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FiniteInstance {
    /// A proper colouring with colours `1..=n`.
    Colouring { n: usize, graph: HypergraphSpec, colouring: BTreeMap<String, usize> },
    /// Sections of `Γ × Λ -> Γ`.
    Tensor { gamma: HypergraphSpec, lambda: HypergraphSpec },
}

impl FiniteInstance {
    pub fn colouring_realisation(&self) -> Result<FiniteRealisation> {
        let FiniteInstance::Colouring { n, graph, colouring } = self else {
            return Err(Error::Instance("not a colouring instance".into()));
        };
        let h = Hypergraph::new(graph.clone())?;
        if let Some(k) = colouring.keys().find(|k| h.vertex_index(k).is_none()) {
            return Err(Error::Unknown { kind: "vertex", id: k.clone() });
        }
        let c = h
            .vertices()
            .iter()
            .map(|v| colouring.get(v).copied().ok_or_else(|| Error::Unknown { kind: "vertex", id: v.clone() }))
            .collect::<Result<Vec<_>>>()?;
        FiniteRealisation::from_colouring(h, &c, *n, DEFAULT_CAP)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Instance {
    Finite(FiniteInstance),
    Lie(LieInstance),
}

/// Parses an instance document; a top-level `kind` marks a finite instance.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let bad = |e: serde_json::Error| Error::Instance(e.to_string());
    let value: Value = serde_json::from_str(text).map_err(bad)?;
    let Value::Object(map) = &value else {
        return Err(Error::Instance("an instance must be a JSON object".into()));
    };
    if map.contains_key("kind") {
        serde_json::from_value(value).map(Instance::Finite).map_err(bad)
    } else {
        serde_json::from_value(value).map(Instance::Lie).map_err(bad)
    }
}

fn matrices(a: &Subalgebra) -> Vec<MatrixSpec> {
    a.basis_matrices().iter().map(|m| MatrixSpec(m.row_vecs())).collect()
}

/// Custom instance reproducing `r` exactly; incidences are listed only when not intersections.
pub fn custom_instance(r: &Realisation) -> LieInstance {
    let h = r.hypergraph();
    let incidences = if r.uses_default_incidences() {
        Vec::new()
    } else {
        r.incidences()
            .iter()
            .zip(r.incidence_algebras())
            .map(|(i, a)| CustomIncidence {
                vertex: h.vertices()[i.vertex].clone(),
                edge: h.edges()[i.edge].id.clone(),
                basis: matrices(a),
            })
            .collect()
    };
    LieInstance {
        group: r.kind(),
        hypergraph: h.to_spec(),
        realisation: RealisationSpec::Custom {
            vertices: h.vertices().iter().cloned().zip(r.vertex_algebras().iter().map(matrices)).collect(),
            edges: h.edges().iter().map(|e| e.id.clone()).zip(r.edge_algebras().iter().map(matrices)).collect(),
            incidences,
        },
    }
}

/// Point `P` with `[P : 1]` orthogonal to every scene point, i.e. on all their polar hyperplanes.
fn parallel_point(d: usize, points: &[&Vec<Rational>], edge: &str) -> Result<Vec<Rational>> {
    if points.is_empty() {
        return Err(Error::Instance(format!("scene edge `{edge}` has no vertices and so no parallel point")));
    }
    let m = RationalMatrix::from_rows(d + 1, &points.iter().map(|p| (*p).clone()).collect::<Vec<_>>())?;
    let normals = nullspace(&m);
    let n = normals
        .basis_vectors()
        .into_iter()
        .find(|v| !v[d].is_zero())
        .ok_or_else(|| Error::Degenerate(format!("the points of scene edge `{edge}` span a plane through the origin of the parallel chart")))?;
    Ok(n[..d].iter().map(|x| x / &n[d]).collect())
}

/// Rewrites `inst` through `map` and verifies the result against the pushed-forward realisation.
pub fn dualize(inst: &LieInstance, map: AlgebraMap) -> Result<LieInstance> {
    let r = inst.build()?;
    let h = r.hypergraph();
    let dual_h = h.dual();
    let out = match (&inst.realisation, map, inst.group) {
        (RealisationSpec::Projective { k, l, vertex_subspaces, edge_subspaces }, AlgebraMap::ProjectiveDual, ModelKind::Projective { n }) => {
            let perp = |basis: &Vec<Vec<Rational>>| -> Result<Vec<Vec<Rational>>> {
                Ok(Subspace::span(n, basis)?.orthogonal_complement().basis_vectors())
            };
            LieInstance {
                group: inst.group,
                hypergraph: dual_h.to_spec(),
                realisation: RealisationSpec::Projective {
                    k: n - l,
                    l: n - k,
                    vertex_subspaces: edge_subspaces.iter().map(|(id, b)| Ok((id.clone(), perp(b)?))).collect::<Result<_>>()?,
                    edge_subspaces: vertex_subspaces.iter().map(|(id, b)| Ok((id.clone(), perp(b)?))).collect::<Result<_>>()?,
                },
            }
        }
        (RealisationSpec::Scene { points }, AlgebraMap::SceneToParallel, ModelKind::Scenes { d }) => {
            let mut hyperplanes = BTreeMap::new();
            for (id, p) in points {
                let GeometricObject::Hyperplane { normal, offset } = polar_hyperplane(p) else {
                    unreachable!("polar of a scene point is a hyperplane")
                };
                hyperplanes.insert(id.clone(), HyperplaneSpec { normal, offset });
            }
            let mut par_points = BTreeMap::new();
            for (e, ed) in h.edges().iter().enumerate() {
                let pts: Vec<&Vec<Rational>> = h.members(e).iter().map(|&v| &points[&h.vertices()[v]]).collect();
                par_points.insert(ed.id.clone(), parallel_point(d, &pts, &ed.id)?);
            }
            LieInstance {
                group: ModelKind::Dilation { d },
                hypergraph: dual_h.to_spec(),
                realisation: RealisationSpec::Parallel { points: par_points, hyperplanes },
            }
        }
        (RealisationSpec::Custom { .. }, map, _) => custom_instance(&pushforward(&r, map, true)?),
        (spec, map, group) => {
            return Err(Error::Instance(format!("cannot transport a `{}` instance over {group} along {map:?}", spec.name())))
        }
    };
    let expected = pushforward(&r, map, true)?;
    let got = out.build()?;
    let same = got.hypergraph().same_incidences(expected.hypergraph())
        && got.kind() == expected.kind()
        && got.vertex_algebras() == expected.vertex_algebras()
        && got.edge_algebras() == expected.edge_algebras()
        && got.incidence_algebras() == expected.incidence_algebras();
    if !same {
        return Err(Error::Invariant("transported instance disagrees with the pushed-forward realisation".into()));
    }
    Ok(out)
}
