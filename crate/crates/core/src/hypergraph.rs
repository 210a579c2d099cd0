//! Hypergraphs, their incidences, duals and vertex-deletion components.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub id: String,
    pub vertices: Vec<String>,
}

/// Wire form of a hypergraph; validated into [`Hypergraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_empty_edges: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    allow_empty_edges: bool,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    /// Per edge, the vertex indices in edge order.
    members: Vec<Vec<usize>>,
}

/// A vertex-edge containment pair, by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Incidence {
    pub vertex: usize,
    pub edge: usize,
}

/// Bipartite graph on `V ∪ E`. Nodes `0..|V|` are vertices, the rest are edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub links: Vec<Incidence>,
}

impl IncidenceGraph {
    pub fn node_count(&self) -> usize {
        self.vertex_count + self.edge_count
    }

    pub fn edge_node(&self, edge: usize) -> usize {
        self.vertex_count + edge
    }

    /// Neighbour lists; the value stored alongside each neighbour is the incidence index.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for (k, inc) in self.links.iter().enumerate() {
            let e = self.edge_node(inc.edge);
            adj[inc.vertex].push((e, k));
            adj[e].push((inc.vertex, k));
        }
        adj
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    /// Vertex ids per component, in input order of their first vertex.
    pub components: Vec<Vec<String>>,
    /// Edge ids per component; edges inside the removed set are listed in `removed_edges`.
    pub component_edges: Vec<Vec<String>>,
    pub removed_edges: Vec<String>,
    pub disconnecting: bool,
}

impl Hypergraph {
    pub fn new(spec: HypergraphSpec) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::Hypergraph(format!("duplicate vertex id `{v}`")));
            }
        }
        let mut edge_index = HashMap::new();
        let mut members = Vec::with_capacity(spec.edges.len());
        for (j, e) in spec.edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), j).is_some() {
                return Err(Error::Hypergraph(format!("duplicate edge id `{}`", e.id)));
            }
            if e.vertices.is_empty() && !spec.allow_empty_edges {
                return Err(Error::Hypergraph(format!("edge `{}` is empty", e.id)));
            }
            let mut seen = BTreeSet::new();
            let mut idx = Vec::with_capacity(e.vertices.len());
            for v in &e.vertices {
                let &i = vertex_index
                    .get(v)
                    .ok_or_else(|| Error::Hypergraph(format!("edge `{}` names unknown vertex `{v}`", e.id)))?;
                if !seen.insert(i) {
                    return Err(Error::Hypergraph(format!("edge `{}` repeats vertex `{v}`", e.id)));
                }
                idx.push(i);
            }
            members.push(idx);
        }
        Ok(Hypergraph {
            vertices: spec.vertices,
            edges: spec.edges,
            allow_empty_edges: spec.allow_empty_edges,
            vertex_index,
            edge_index,
            members,
        })
    }

    /// Convenience constructor for tests and fixtures.
    pub fn from_lists(vertices: &[&str], edges: &[(&str, &[&str])]) -> Result<Self> {
        Self::new(HypergraphSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, vs)| Edge { id: id.to_string(), vertices: vs.iter().map(|s| s.to_string()).collect() })
                .collect(),
            allow_empty_edges: false,
        })
    }

    /// Simple graph with edges named `e0, e1, ...` and vertices `v0, v1, ...`.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(HypergraphSpec {
            vertices: (0..n).map(|i| format!("v{i}")).collect(),
            edges: edges
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| Edge { id: format!("e{k}"), vertices: vec![format!("v{a}"), format!("v{b}")] })
                .collect(),
            allow_empty_edges: false,
        })
    }

    pub fn to_spec(&self) -> HypergraphSpec {
        HypergraphSpec {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            allow_empty_edges: self.allow_empty_edges,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index(id).ok_or_else(|| Error::Unknown { kind: "vertex", id: id.to_string() })
    }

    pub fn require_edge(&self, id: &str) -> Result<usize> {
        self.edge_index(id).ok_or_else(|| Error::Unknown { kind: "edge", id: id.to_string() })
    }

    /// Vertex indices of edge `e`, in edge order.
    pub fn members(&self, e: usize) -> &[usize] {
        &self.members[e]
    }

    /// Edges containing vertex `v`, in edge order.
    pub fn edges_of(&self, v: usize) -> Vec<usize> {
        (0..self.edge_count()).filter(|&e| self.members[e].contains(&v)).collect()
    }

    pub fn is_graph(&self) -> bool {
        self.members.iter().all(|m| m.len() == 2)
    }

    /// Incidences in edge order, then vertex order within the edge.
    pub fn incidences(&self) -> Vec<Incidence> {
        self.members
            .iter()
            .enumerate()
            .flat_map(|(edge, m)| m.iter().map(move |&vertex| Incidence { vertex, edge }))
            .collect()
    }

    pub fn incidence_graph(&self) -> IncidenceGraph {
        IncidenceGraph { vertex_count: self.vertex_count(), edge_count: self.edge_count(), links: self.incidences() }
    }

    /// Dual hypergraph: vertices are the edges of `self`; every vertex `v` contributes the
    /// edge of all edges containing it, named after `v` so duplicates stay distinct.
    pub fn dual(&self) -> Hypergraph {
        let edges = (0..self.vertex_count())
            .map(|v| Edge {
                id: self.vertices[v].clone(),
                vertices: self.edges_of(v).into_iter().map(|e| self.edges[e].id.clone()).collect(),
            })
            .collect::<Vec<_>>();
        let allow_empty_edges = edges.iter().any(|e| e.vertices.is_empty());
        Hypergraph::new(HypergraphSpec {
            vertices: self.edges.iter().map(|e| e.id.clone()).collect(),
            edges,
            allow_empty_edges,
        })
        .expect("dual of a valid hypergraph is valid")
    }

    /// Equality of vertex ids, edge ids and edge memberships, ignoring the order of
    /// vertices inside each edge.
    pub fn same_incidences(&self, other: &Hypergraph) -> bool {
        self.vertices == other.vertices
            && self.edges.len() == other.edges.len()
            && self.edges.iter().zip(&other.edges).all(|(a, b)| {
                a.id == b.id
                    && a.vertices.iter().collect::<BTreeSet<_>>() == b.vertices.iter().collect::<BTreeSet<_>>()
            })
    }

    /// Components of the vertices outside `removed`, where two remaining vertices are adjacent
    /// when some edge contains both.
    pub fn split_components(&self, removed: &[String]) -> Result<Components> {
        let mut gone = vec![false; self.vertex_count()];
        for id in removed {
            gone[self.require_vertex(id)?] = true;
        }
        let mut uf = UnionFind::new(self.vertex_count());
        for m in &self.members {
            let alive: Vec<usize> = m.iter().copied().filter(|&v| !gone[v]).collect();
            for w in alive.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut root_to_comp: HashMap<usize, usize> = HashMap::new();
        let mut comp_of = vec![usize::MAX; self.vertex_count()];
        let mut components: Vec<Vec<String>> = Vec::new();
        for v in (0..self.vertex_count()).filter(|&v| !gone[v]) {
            let r = uf.find(v);
            let c = *root_to_comp.entry(r).or_insert_with(|| {
                components.push(Vec::new());
                components.len() - 1
            });
            comp_of[v] = c;
            components[c].push(self.vertices[v].clone());
        }
        let mut component_edges = vec![Vec::new(); components.len()];
        let mut removed_edges = Vec::new();
        for (e, m) in self.members.iter().enumerate() {
            match m.iter().find(|&&v| !gone[v]) {
                Some(&v) => component_edges[comp_of[v]].push(self.edges[e].id.clone()),
                None => removed_edges.push(self.edges[e].id.clone()),
            }
        }
        let disconnecting = components.len() >= 2;
        Ok(Components { components, component_edges, removed_edges, disconnecting })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The double banana: two triangles `a b c` and `d e f`, each vertex joined to both poles `v`, `w`.
pub fn double_banana() -> Hypergraph {
    let mut edges: Vec<(String, [String; 2])> = Vec::new();
    for tri in [["a", "b", "c"], ["d", "e", "f"]] {
        for i in 0..3 {
            let (x, y) = (tri[i], tri[(i + 1) % 3]);
            edges.push((format!("{x}{y}"), [x.to_string(), y.to_string()]));
        }
        for x in tri {
            for pole in ["v", "w"] {
                edges.push((format!("{pole}{x}"), [pole.to_string(), x.to_string()]));
            }
        }
    }
    Hypergraph::new(HypergraphSpec {
        vertices: ["v", "w", "a", "b", "c", "d", "e", "f"].iter().map(|s| s.to_string()).collect(),
        edges: edges.into_iter().map(|(id, vs)| Edge { id, vertices: vs.to_vec() }).collect(),
        allow_empty_edges: false,
    })
    .expect("double banana is well formed")
}
