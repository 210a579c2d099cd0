//! Classical computations used to cross-check the engine: the rigidity matrix of a
//! bar-joint framework, brute-force colourings and homomorphism counts.
//!
//! Elimination here is fraction-free over the integers and shares nothing with `linalg`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::Rational;

/// Edge-subset enumeration for the Maxwell count stops beyond this many edges.
pub const MAX_MAXWELL_EDGES: usize = 20;

/// One row per edge; `p(v) - p(w)` in the block of `v`, `p(w) - p(v)` in the block of `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityMatrix {
    pub d: usize,
    pub rows: Vec<Vec<Rational>>,
}

impl RigidityMatrix {
    pub fn new(graph: &Hypergraph, coords: &[Vec<Rational>], d: usize) -> Result<Self> {
        if !graph.is_graph() {
            return Err(Error::Hypergraph("the rigidity matrix needs 2-element edges".into()));
        }
        if coords.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch { expected: graph.vertex_count(), found: coords.len() });
        }
        if let Some(p) = coords.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
        }
        let mut rows = Vec::with_capacity(graph.edge_count());
        for (e, edge) in graph.edges().iter().enumerate() {
            let (v, w) = (graph.members(e)[0], graph.members(e)[1]);
            if coords[v] == coords[w] {
                return Err(Error::Degenerate(format!("edge `{}` has coincident endpoints", edge.id)));
            }
            let mut row = vec![Rational::zero(); d * coords.len()];
            for k in 0..d {
                let diff = &coords[v][k] - &coords[w][k];
                row[d * w + k] = -diff.clone();
                row[d * v + k] = diff;
            }
            rows.push(row);
        }
        Ok(RigidityMatrix { d, rows })
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self, vertices: usize) -> usize {
        self.d * vertices
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(&self.rows)
    }
}

/// Rank by Bareiss elimination after clearing denominators row by row.
pub fn bareiss_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            for j in c + 1..cols {
                let v = (&m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].abs();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxwellCount {
    /// `|E| = d|V| - C(d+1,2)`.
    pub global_equality: bool,
    /// `|F| <= d|V(F)| - C(d+1,2)` for all edge subsets with `|V(F)| >= d`; `None` if skipped.
    pub subsets_ok: Option<bool>,
    pub subsets_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityOracle {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub nullity: usize,
    pub affine_span: usize,
    /// `C(d+1,2) - C(d-k,2)`.
    pub trivial_dim: usize,
    pub rigid: bool,
    pub maxwell: MaxwellCount,
}

/// Nullity of the rigidity matrix with the classical verdict.
pub fn rigidity_nullity(graph: &Hypergraph, coords: &[Vec<Rational>], d: usize) -> Result<RigidityOracle> {
    let m = RigidityMatrix::new(graph, coords, d)?;
    let rank = m.rank();
    let cols = m.col_count(coords.len());
    let affine_span = match coords.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<Vec<Rational>> =
                rest.iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
            bareiss_rank(&diffs)
        }
    };
    let trivial_dim = binom(d + 1, 2) - binom(d - affine_span.min(d), 2);
    let nullity = cols - rank;
    Ok(RigidityOracle {
        rows: m.row_count(),
        cols,
        rank,
        nullity,
        affine_span,
        trivial_dim,
        rigid: nullity == trivial_dim,
        maxwell: maxwell_count(graph, d),
    })
}

pub fn maxwell_count(graph: &Hypergraph, d: usize) -> MaxwellCount {
    let triv = binom(d + 1, 2) as i64;
    let global_equality = graph.edge_count() as i64 == d as i64 * graph.vertex_count() as i64 - triv;
    let ne = graph.edge_count();
    if ne > MAX_MAXWELL_EDGES {
        return MaxwellCount { global_equality, subsets_ok: None, subsets_checked: 0 };
    }
    let mut ok = true;
    let mut checked = 0u64;
    let mut touched = vec![0u32; graph.vertex_count()];
    for mask in 1u64..(1 << ne) {
        touched.iter_mut().for_each(|t| *t = 0);
        for e in (0..ne).filter(|e| mask >> e & 1 == 1) {
            for &v in graph.members(e) {
                touched[v] = 1;
            }
        }
        let nv = touched.iter().filter(|&&t| t == 1).count();
        if nv < d {
            continue;
        }
        checked += 1;
        if mask.count_ones() as i64 > d as i64 * nv as i64 - triv {
            ok = false;
        }
    }
    MaxwellCount { global_equality, subsets_ok: Some(ok), subsets_checked: checked }
}

fn adjacency(graph: &Hypergraph) -> Result<Vec<Vec<usize>>> {
    if !graph.is_graph() {
        return Err(Error::Hypergraph("expected a graph with 2-element edges".into()));
    }
    let mut adj = vec![Vec::new(); graph.vertex_count()];
    for e in 0..graph.edge_count() {
        let (v, w) = (graph.members(e)[0], graph.members(e)[1]);
        adj[v].push(w);
        adj[w].push(v);
    }
    Ok(adj)
}

/// Proper colourings with colours `1..=n`, in lexicographic order.
pub fn proper_colourings(graph: &Hypergraph, n: usize) -> Result<Vec<Vec<usize>>> {
    let adj = adjacency(graph)?;
    let nv = adj.len();
    let mut out = Vec::new();
    let mut c = vec![0usize; nv];
    fn go(v: usize, n: usize, adj: &[Vec<usize>], c: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == adj.len() {
            out.push(c.clone());
            return;
        }
        for col in 1..=n {
            if adj[v].iter().all(|&w| w >= v || c[w] != col) {
                c[v] = col;
                go(v + 1, n, adj, c, out);
            }
        }
        c[v] = 0;
    }
    go(0, n, &adj, &mut c, &mut out);
    Ok(out)
}

/// Relabels colours by first appearance; two colourings share an `S_n`-orbit iff these agree.
fn orbit_key(c: &[usize]) -> Vec<usize> {
    let mut seen = Vec::new();
    c.iter()
        .map(|x| match seen.iter().position(|y| y == x) {
            Some(i) => i,
            None => {
                seen.push(*x);
                seen.len() - 1
            }
        })
        .collect()
}

/// True iff there is at least one proper colouring and all lie in one `S_n`-orbit.
pub fn unique_colourability_bruteforce(graph: &Hypergraph, n: usize) -> Result<bool> {
    let all = proper_colourings(graph, n)?;
    let Some(first) = all.first() else { return Ok(false) };
    let key = orbit_key(first);
    Ok(all.iter().all(|c| orbit_key(c) == key))
}

/// Counts maps `V(Γ) -> V(Λ)` sending edges to edges by trying every map.
pub fn homomorphism_count(gamma: &Hypergraph, lambda: &Hypergraph) -> Result<u64> {
    let ga = adjacency(gamma)?;
    let la = adjacency(lambda)?;
    let (ng, nl) = (ga.len(), la.len());
    if nl == 0 {
        return Ok(u64::from(ng == 0));
    }
    let edges: Vec<(usize, usize)> = (0..gamma.edge_count()).map(|e| (gamma.members(e)[0], gamma.members(e)[1])).collect();
    let mut f = vec![0usize; ng];
    let mut count = 0;
    loop {
        if edges.iter().all(|&(a, b)| la[f[a]].contains(&f[b])) {
            count += 1;
        }
        // odometer increment
        let mut i = 0;
        while i < ng && f[i] + 1 == nl {
            f[i] = 0;
            i += 1;
        }
        if i == ng {
            return Ok(count);
        }
        f[i] += 1;
    }
}
