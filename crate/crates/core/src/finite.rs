//! Finite permutation groups, coset graphs and their sections.
//!
//! Groups are explicit element lists, sorted lexicographically by image sequence, so the
//! first element met in a coset is its canonical representative.

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Incidence};

/// Images of `0..m`; composition is `(g h)(x) = g(h(x))`.
pub type Perm = Vec<u8>;

pub const DEFAULT_CAP: u128 = 3_628_800;

pub fn compose(g: &[u8], h: &[u8]) -> Perm {
    h.iter().map(|&x| g[x as usize]).collect()
}

pub fn inverse(g: &[u8]) -> Perm {
    let mut inv = vec![0u8; g.len()];
    for (i, &x) in g.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
}

impl PermGroup {
    fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        PermGroup { degree, elements, index }
    }

    /// The symmetric group on `0..n`.
    pub fn symmetric(n: usize, cap: u128) -> Result<Self> {
        let size = factorial(n);
        if size > cap || n > u8::MAX as usize + 1 {
            return Err(Error::GroupTooLarge { size, cap });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut p: Perm = (0..n as u8).collect();
        loop {
            out.push(p.clone());
            // next permutation in lexicographic order
            let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { break };
            let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element follows");
            p.swap(i - 1, j);
            p[i..].reverse();
        }
        Ok(Self::from_elements(n, out))
    }

    /// Closure of `generators` under composition.
    pub fn generated(degree: usize, generators: &[Perm], cap: u128) -> Result<Self> {
        for g in generators {
            let mut seen = g.clone();
            seen.sort_unstable();
            if g.len() != degree || seen != (0..degree as u8).collect::<Vec<_>>() {
                return Err(Error::NotSubgroup(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Perm = (0..degree as u8).collect();
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    if seen.len() as u128 > cap {
                        return Err(Error::GroupTooLarge { size: seen.len() as u128, cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_elements(degree, seen.into_iter().collect()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &[u8]) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&compose(self.element(a), self.element(b))]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.index[&inverse(self.element(a))]
    }

    pub fn full(&self) -> Subgroup {
        Subgroup { members: (0..self.order() as u32).collect() }
    }

    /// Stabiliser of the point `x`.
    pub fn stabiliser(&self, x: usize) -> Subgroup {
        Subgroup {
            members: (0..self.order() as u32).filter(|&i| self.elements[i as usize][x] as usize == x).collect(),
        }
    }

    /// Validates `elements` as a subgroup.
    pub fn subgroup(&self, elements: &[Perm]) -> Result<Subgroup> {
        let mut members = elements
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| Error::NotSubgroup(format!("{p:?} is not in the group"))))
            .collect::<Result<Vec<_>>>()?;
        members.sort_unstable();
        members.dedup();
        let s = Subgroup { members };
        if !s.contains(self.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in &s.members {
            for &b in &s.members {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup("not closed under composition".into()));
                }
            }
        }
        Ok(s)
    }

    /// Maps every element to the index of its left coset `gH`; returns the assignment and
    /// the canonical representative of each coset.
    pub fn left_cosets(&self, h: &Subgroup) -> (Vec<u32>, Vec<u32>) {
        let mut coset = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() as u32 {
            if coset[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &k in &h.members {
                coset[self.mul(g, k) as usize] = id;
            }
        }
        (coset, reps)
    }
}

/// A subgroup, as sorted element indices of its parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, g: u32) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { members: self.members.iter().copied().filter(|&g| other.contains(g)).collect() }
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }
}

/// Points fixed by every element of `h`.
pub fn fix_of_subgroup(g: &PermGroup, h: &Subgroup) -> Vec<usize> {
    (0..g.degree()).filter(|&x| h.members.iter().all(|&s| g.element(s)[x] as usize == x)).collect()
}

#[derive(Clone, Debug)]
pub struct FiniteRealisation {
    hypergraph: Hypergraph,
    group: PermGroup,
    vertex: Vec<Subgroup>,
    edge: Vec<Subgroup>,
    incidence: Vec<Subgroup>,
    incidences: Vec<Incidence>,
}

impl FiniteRealisation {
    /// Explicit subgroups; incidences default to intersections and must lie in both endpoints.
    pub fn new(
        hypergraph: Hypergraph,
        group: PermGroup,
        vertex: Vec<Subgroup>,
        edge: Vec<Subgroup>,
        incidence: Option<Vec<Subgroup>>,
    ) -> Result<Self> {
        if vertex.len() != hypergraph.vertex_count() || edge.len() != hypergraph.edge_count() {
            return Err(Error::DimensionMismatch {
                expected: hypergraph.vertex_count() + hypergraph.edge_count(),
                found: vertex.len() + edge.len(),
            });
        }
        let incidences = hypergraph.incidences();
        let incidence = match incidence {
            Some(i) if i.len() == incidences.len() => i,
            Some(i) => return Err(Error::DimensionMismatch { expected: incidences.len(), found: i.len() }),
            None => incidences.iter().map(|i| vertex[i.vertex].intersect(&edge[i.edge])).collect(),
        };
        for (k, i) in incidences.iter().enumerate() {
            if !incidence[k].is_subset(&vertex[i.vertex]) || !incidence[k].is_subset(&edge[i.edge]) {
                return Err(Error::Incidence(format!(
                    "incidence subgroup of ({}, {}) is not contained in its endpoints",
                    hypergraph.vertices()[i.vertex],
                    hypergraph.edges()[i.edge].id
                )));
            }
        }
        Ok(FiniteRealisation { hypergraph, group, vertex, edge, incidence, incidences })
    }

    /// `ρ(v) = Stab(c(v))` in `S_n`, `ρ(e) = ρ(v) ∩ ρ(w)`. Colours are `1..=n`.
    pub fn from_colouring(h: Hypergraph, colouring: &[usize], n: usize, cap: u128) -> Result<Self> {
        if n < 3 {
            return Err(Error::Colouring(format!("need at least 3 colours, got {n}")));
        }
        if !h.is_graph() {
            return Err(Error::Hypergraph("colourings are defined on graphs with 2-element edges".into()));
        }
        if colouring.len() != h.vertex_count() {
            return Err(Error::DimensionMismatch { expected: h.vertex_count(), found: colouring.len() });
        }
        if let Some((v, &c)) = colouring.iter().enumerate().find(|(_, &c)| c == 0 || c > n) {
            return Err(Error::Colouring(format!("vertex `{}` has colour {c} outside 1..={n}", h.vertices()[v])));
        }
        for (e, ed) in h.edges().iter().enumerate() {
            let m = h.members(e);
            if colouring[m[0]] == colouring[m[1]] {
                return Err(Error::Colouring(format!("edge `{}` joins two vertices of colour {}", ed.id, colouring[m[0]])));
            }
        }
        let g = PermGroup::symmetric(n, cap)?;
        let vertex: Vec<Subgroup> = colouring.iter().map(|&c| g.stabiliser(c - 1)).collect();
        let edge: Vec<Subgroup> = (0..h.edge_count())
            .map(|e| {
                let m = h.members(e);
                vertex[m[0]].intersect(&vertex[m[1]])
            })
            .collect();
        Self::new(h, g, vertex, edge, None)
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn vertex_subgroups(&self) -> &[Subgroup] {
        &self.vertex
    }

    pub fn edge_subgroups(&self) -> &[Subgroup] {
        &self.edge
    }

    pub fn incidence_subgroups(&self) -> &[Subgroup] {
        &self.incidence
    }

    /// Subgroup on node `x` of the incidence graph (vertices first, then edges).
    fn node_subgroup(&self, x: usize) -> &Subgroup {
        let nv = self.vertex.len();
        if x < nv {
            &self.vertex[x]
        } else {
            &self.edge[x - nv]
        }
    }
}

/// The graph `X`: one node per coset `gρ(x)`, one edge per coset `gρ(i)`.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    /// Per incidence-graph node, the coset index of each group element.
    coset_of: Vec<Vec<u32>>,
    /// Per incidence-graph node, canonical coset representatives.
    reps: Vec<Vec<u32>>,
    /// Per incidence, the edges of `X` over it as (vertex coset, edge coset) pairs.
    links: Vec<Vec<(u32, u32)>>,
    incidences: Vec<Incidence>,
    vertex_count: usize,
}

impl CosetGraph {
    pub fn new(r: &FiniteRealisation) -> Self {
        let g = &r.group;
        let nodes = r.vertex.len() + r.edge.len();
        let (coset_of, reps): (Vec<_>, Vec<_>) = (0..nodes).map(|x| g.left_cosets(r.node_subgroup(x))).unzip();
        let nv = r.vertex.len();
        let links = r
            .incidences
            .iter()
            .zip(&r.incidence)
            .map(|(i, sub)| {
                let (_, ireps) = g.left_cosets(sub);
                let mut l: Vec<(u32, u32)> = ireps
                    .iter()
                    .map(|&h| (coset_of[i.vertex][h as usize], coset_of[nv + i.edge][h as usize]))
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        CosetGraph { coset_of, reps, links, incidences: r.incidences.clone(), vertex_count: nv }
    }

    pub fn node_count(&self) -> usize {
        self.reps.iter().map(Vec::len).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.links.iter().map(Vec::len).sum()
    }

    /// Number of cosets over incidence-graph node `x`.
    pub fn fibre_size(&self, x: usize) -> usize {
        self.reps[x].len()
    }

    pub fn fibre_sizes(&self) -> Vec<usize> {
        self.reps.iter().map(Vec::len).collect()
    }

    pub fn representative(&self, x: usize, coset: u32) -> u32 {
        self.reps[x][coset as usize]
    }

    pub fn coset_of(&self, x: usize, g: u32) -> u32 {
        self.coset_of[x][g as usize]
    }

    fn edge_node(&self, e: usize) -> usize {
        self.vertex_count + e
    }
}

/// A coset over every incidence-graph node, adjacent along every incidence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Section(pub Vec<u32>);

struct Search<'a> {
    x: &'a CosetGraph,
    order: Vec<usize>,
    /// Per node, the incidences `(k, other node, node is the vertex side)`.
    around: Vec<Vec<(usize, usize, bool)>>,
    /// Per incidence: vertex coset -> edge cosets, and edge coset -> vertex cosets.
    forward: Vec<HashMap<u32, Vec<u32>>>,
    backward: Vec<HashMap<u32, Vec<u32>>>,
}

impl<'a> Search<'a> {
    fn new(x: &'a CosetGraph) -> Self {
        let nodes = x.reps.len();
        let mut around = vec![Vec::new(); nodes];
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for (k, i) in x.incidences.iter().enumerate() {
            let en = x.edge_node(i.edge);
            around[i.vertex].push((k, en, true));
            around[en].push((k, i.vertex, false));
            let mut f: HashMap<u32, Vec<u32>> = HashMap::new();
            let mut b: HashMap<u32, Vec<u32>> = HashMap::new();
            for &(a, c) in &x.links[k] {
                f.entry(a).or_default().push(c);
                b.entry(c).or_default().push(a);
            }
            forward.push(f);
            backward.push(b);
        }
        // Breadth-first from a node of maximum degree, component by component.
        let mut order = Vec::with_capacity(nodes);
        let mut seen = vec![false; nodes];
        while order.len() < nodes {
            let start = (0..nodes)
                .filter(|&n| !seen[n])
                .max_by_key(|&n| (around[n].len(), std::cmp::Reverse(n)))
                .expect("an unvisited node remains");
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(n) = queue.pop_front() {
                order.push(n);
                for &(_, m, _) in &around[n] {
                    if !seen[m] {
                        seen[m] = true;
                        queue.push_back(m);
                    }
                }
            }
        }
        Search { x, order, around, forward, backward }
    }

    fn candidates(&self, node: usize, assigned: &[Option<u32>]) -> Vec<u32> {
        let mut pool: Option<Vec<u32>> = None;
        for &(k, other, is_vertex) in &self.around[node] {
            if let Some(c) = assigned[other] {
                let table = if is_vertex { &self.backward[k] } else { &self.forward[k] };
                let allowed = table.get(&c).cloned().unwrap_or_default();
                pool = Some(match pool {
                    None => allowed,
                    Some(p) => p.into_iter().filter(|a| allowed.contains(a)).collect(),
                });
            }
        }
        let mut p = pool.unwrap_or_else(|| (0..self.x.fibre_size(node) as u32).collect());
        p.sort_unstable();
        p.dedup();
        p
    }

    fn extend(&self, depth: usize, assigned: &mut Vec<Option<u32>>, out: &mut Vec<Section>) {
        if depth == self.order.len() {
            out.push(Section(assigned.iter().map(|c| c.expect("all nodes assigned")).collect()));
            return;
        }
        let node = self.order[depth];
        for c in self.candidates(node, assigned) {
            assigned[node] = Some(c);
            self.extend(depth + 1, assigned, out);
        }
        assigned[node] = None;
    }
}

/// All sections of `q: X -> I(Γ)`, sorted.
pub fn enumerate_sections(x: &CosetGraph) -> Vec<Section> {
    let search = Search::new(x);
    if search.order.is_empty() {
        return vec![Section(Vec::new())];
    }
    let nodes = x.reps.len();
    let first = search.order[0];
    let top = search.candidates(first, &vec![None; nodes]);
    let mut all: Vec<Section> = top
        .par_iter()
        .flat_map_iter(|&c| {
            let mut assigned = vec![None; nodes];
            assigned[first] = Some(c);
            let mut out = Vec::new();
            search.extend(1, &mut assigned, &mut out);
            out
        })
        .collect();
    all.sort();
    all
}

/// The sections `x -> gρ(x)` for `g` in the group.
pub fn trivial_sections(r: &FiniteRealisation, x: &CosetGraph) -> HashSet<Section> {
    let nodes = x.reps.len();
    (0..r.group.order() as u32).map(|g| Section((0..nodes).map(|n| x.coset_of(n, g)).collect())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteReport {
    pub group_order: usize,
    pub coset_graph_nodes: usize,
    pub coset_graph_edges: usize,
    pub sections: usize,
    pub trivial_sections: usize,
    pub globally_rigid: bool,
}

/// Globally rigid iff every section is `x -> gρ(x)` for one `g`.
pub fn is_globally_rigid_finite(r: &FiniteRealisation) -> bool {
    analyse(r).globally_rigid
}

pub fn analyse(r: &FiniteRealisation) -> FiniteReport {
    let x = CosetGraph::new(r);
    let sections = enumerate_sections(&x);
    let trivial = trivial_sections(r, &x);
    let globally_rigid = sections.iter().all(|s| trivial.contains(s));
    FiniteReport {
        group_order: r.group.order(),
        coset_graph_nodes: x.node_count(),
        coset_graph_edges: x.edge_count(),
        sections: sections.len(),
        trivial_sections: trivial.len(),
        globally_rigid,
    }
}

/// Group elements `(g_x)` over `V ∪ E ∪ I` realising a section.
pub fn section_to_motion(r: &FiniteRealisation, x: &CosetGraph, s: &Section) -> Result<Vec<u32>> {
    let nodes = x.reps.len();
    let mut out: Vec<u32> = (0..nodes).map(|n| x.representative(n, s.0[n])).collect();
    for i in &r.incidences {
        let en = x.edge_node(i.edge);
        let g = (0..r.group.order() as u32)
            .find(|&g| x.coset_of(i.vertex, g) == s.0[i.vertex] && x.coset_of(en, g) == s.0[en])
            .ok_or_else(|| Error::Invariant("section endpoints share no group element".into()))?;
        out.push(g);
    }
    Ok(out)
}

/// Checks `g_i^{-1} g_x ∈ ρ(x)` at both ends of every incidence.
pub fn is_motion(r: &FiniteRealisation, m: &[u32]) -> bool {
    let g = &r.group;
    let nv = r.vertex.len();
    let nodes = nv + r.edge.len();
    m.len() == nodes + r.incidences.len()
        && r.incidences.iter().enumerate().all(|(k, i)| {
            let gi = g.inv(m[nodes + k]);
            r.vertex[i.vertex].contains(g.mul(gi, m[i.vertex])) && r.edge[i.edge].contains(g.mul(gi, m[nv + i.edge]))
        })
}

/// `(n-1)|V| - C(n,2)`: the least edge count of a uniquely `n`-colourable graph.
pub fn colouring_edge_bound(n: usize, vertices: usize) -> i64 {
    (n as i64 - 1) * vertices as i64 - (n * (n - 1) / 2) as i64
}

/// Counts sections of the projection of the tensor product `Γ × Λ` onto `Γ`, i.e. graph
/// homomorphisms `Γ -> Λ`.
pub fn tensor_sections(gamma: &Hypergraph, lambda: &Hypergraph) -> Result<u64> {
    for h in [gamma, lambda] {
        if !h.is_graph() {
            return Err(Error::Hypergraph("tensor products need graphs with 2-element edges".into()));
        }
    }
    let nl = lambda.vertex_count();
    let mut adj = vec![vec![false; nl]; nl];
    for e in 0..lambda.edge_count() {
        let m = lambda.members(e);
        adj[m[0]][m[1]] = true;
        adj[m[1]][m[0]] = true;
    }
    let ng = gamma.vertex_count();
    let mut nbrs = vec![Vec::new(); ng];
    for e in 0..gamma.edge_count() {
        let m = gamma.members(e);
        nbrs[m[0]].push(m[1]);
        nbrs[m[1]].push(m[0]);
    }
    // Vertices of Γ in breadth-first order so that most have a placed neighbour.
    let mut order = Vec::with_capacity(ng);
    let mut seen = vec![false; ng];
    for s in 0..ng {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &nbrs[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    fn go(depth: usize, order: &[usize], nbrs: &[Vec<usize>], adj: &[Vec<bool>], fibre: &mut [Option<usize>]) -> u64 {
        if depth == order.len() {
            return 1;
        }
        let x = order[depth];
        let mut total = 0;
        for y in 0..adj.len() {
            // ((x, y), (x', y')) must be an edge of the product for every placed neighbour.
            if nbrs[x].iter().all(|&w| fibre[w].is_none_or(|yw| adj[y][yw])) {
                fibre[x] = Some(y);
                total += go(depth + 1, order, nbrs, adj, fibre);
                fibre[x] = None;
            }
        }
        total
    }
    Ok(go(0, &order, &nbrs, &adj, &mut vec![None; ng]))
}
