//! Seeded instance corpora shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gogrig::hypergraph::{Edge, Hypergraph, HypergraphSpec};
use gogrig::instance::{dualize, LieInstance};
use gogrig::liemodels::{AlgebraMap, ModelKind};
use gogrig::linalg::{frac, q, Rational, Subspace};
use gogrig::realisation::{ConstraintSpec, RealisationSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 6`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

pub fn small_int(rng: &mut ChaCha8Rng, r: i64) -> Rational {
    q(rng.gen_range(-r..=r))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn spec(vertices: &[String], edges: &[Vec<usize>]) -> HypergraphSpec {
    HypergraphSpec {
        vertices: vertices.to_vec(),
        edges: edges
            .iter()
            .enumerate()
            .map(|(k, m)| Edge { id: format!("e{k}"), vertices: m.iter().map(|&v| vertices[v].clone()).collect() })
            .collect(),
        allow_empty_edges: false,
    }
}

/// Each pair is an edge with probability `p`; at least one edge when `n >= 2`.
pub fn random_pairs(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<Vec<usize>> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push(vec![a, b]);
            }
        }
    }
    if edges.is_empty() && n >= 2 {
        edges.push(vec![0, 1]);
    }
    edges
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    while pts.len() < n {
        let p: Vec<Rational> = (0..d).map(|_| small_rational(rng)).collect();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

pub fn bar_joint_instance(rng: &mut ChaCha8Rng, d: usize, n: usize) -> LieInstance {
    let vs = names("v", n);
    let edges = random_pairs(rng, n, 0.5);
    let coords = vs.iter().cloned().zip(distinct_points(rng, n, d)).collect();
    LieInstance {
        group: ModelKind::Euclidean { d },
        hypergraph: spec(&vs, &edges),
        realisation: RealisationSpec::BarJoint { coords },
    }
}

/// Bar-joint frameworks with `d ∈ {2, 3}` and `2 <= |V| <= 8`.
pub fn bar_joint_corpus(seed: u64, count: usize) -> Vec<LieInstance> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let d = if r.gen_bool(0.5) { 2 } else { 3 };
            let n = r.gen_range(2..=8);
            bar_joint_instance(&mut r, d, n)
        })
        .collect()
}

fn rank(vs: &[Vec<Rational>]) -> usize {
    Subspace::span(vs[0].len(), vs).map(|s| s.dim()).unwrap_or(0)
}

/// Points and lines of the projective plane: every line passes through two vertices and
/// sometimes through a third vertex placed on it.
pub fn projective_plane_instance(rng: &mut ChaCha8Rng) -> LieInstance {
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    let base = rng.gen_range(3..=5);
    while pts.len() < base {
        let p: Vec<Rational> = (0..3).map(|_| small_int(rng, 4)).collect();
        if p.iter().any(|x| x != &q(0)) && pts.iter().all(|o| rank(&[o.clone(), p.clone()]) == 2) {
            pts.push(p);
        }
    }
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let wanted = rng.gen_range(2..=4);
    let mut tries = 0;
    while lines.len() < wanted && tries < 50 {
        tries += 1;
        let mut pick: Vec<usize> = (0..pts.len()).collect();
        pick.shuffle(rng);
        let (a, b) = (pick[0].min(pick[1]), pick[0].max(pick[1]));
        if lines.iter().any(|l| l.contains(&a) && l.contains(&b)) {
            continue;
        }
        let mut line = vec![a, b];
        if rng.gen_bool(0.3) {
            let (s, t) = (q(rng.gen_range(1..=3)), q(rng.gen_range(-3..=3)));
            let c: Vec<Rational> = pts[a].iter().zip(&pts[b]).map(|(x, y)| &s * x + &t * y).collect();
            if pts.iter().all(|o| rank(&[o.clone(), c.clone()]) == 2) {
                pts.push(c);
                line.push(pts.len() - 1);
            }
        }
        lines.push(line);
    }
    projective_from(3, 1, 2, &pts, &lines)
}

/// Points and planes of projective 3-space; each plane through three vertices.
pub fn projective_space_instance(rng: &mut ChaCha8Rng) -> LieInstance {
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    let n = rng.gen_range(4..=5);
    while pts.len() < n {
        let p: Vec<Rational> = (0..4).map(|_| small_int(rng, 3)).collect();
        if p.iter().any(|x| x != &q(0)) && pts.iter().all(|o| rank(&[o.clone(), p.clone()]) == 2) {
            pts.push(p);
        }
    }
    let mut planes: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut pick: Vec<usize> = (0..pts.len()).collect();
        pick.shuffle(rng);
        let mut tri = pick[..3].to_vec();
        tri.sort_unstable();
        if rank(&tri.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>()) == 3 && !planes.contains(&tri) {
            planes.push(tri);
        }
    }
    if planes.is_empty() {
        return projective_space_instance(rng);
    }
    projective_from(4, 1, 3, &pts, &planes)
}

fn projective_from(n: usize, k: usize, l: usize, pts: &[Vec<Rational>], edges: &[Vec<usize>]) -> LieInstance {
    let vs = names("p", pts.len());
    let h = spec(&vs, edges);
    let vertex_subspaces = vs.iter().cloned().zip(pts.iter().map(|p| vec![p.clone()])).collect();
    let edge_subspaces = h
        .edges
        .iter()
        .zip(edges)
        .map(|(e, m)| {
            let span = Subspace::span(n, &m.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>()).unwrap();
            (e.id.clone(), span.basis_vectors())
        })
        .collect();
    LieInstance {
        group: ModelKind::Projective { n },
        hypergraph: h,
        realisation: RealisationSpec::Projective { k, l, vertex_subspaces, edge_subspaces },
    }
}

/// Scenes with `d`-vertex edges whose points are independent; regenerated until the
/// transport to a parallel redrawing exists.
pub fn scene_instance(rng: &mut ChaCha8Rng, d: usize) -> LieInstance {
    loop {
        let n = rng.gen_range(d + 1..=d + 4);
        let mut pts: Vec<Vec<Rational>> = Vec::new();
        while pts.len() < n {
            let p: Vec<Rational> = (0..=d).map(|_| small_int(rng, 4)).collect();
            if p[..d].iter().any(|x| x != &q(0)) && pts.iter().all(|o| rank(&[o.clone(), p.clone()]) == 2) {
                pts.push(p);
            }
        }
        let mut edges: BTreeSet<Vec<usize>> = BTreeSet::new();
        for _ in 0..rng.gen_range(2..=n + 1) {
            let mut pick: Vec<usize> = (0..n).collect();
            pick.shuffle(rng);
            let mut e = pick[..d].to_vec();
            e.sort_unstable();
            if rank(&e.iter().map(|&i| pts[i].clone()).collect::<Vec<_>>()) == d {
                edges.insert(e);
            }
        }
        if edges.is_empty() {
            continue;
        }
        let vs = names("s", n);
        let inst = LieInstance {
            group: ModelKind::Scenes { d },
            hypergraph: spec(&vs, &edges.into_iter().collect::<Vec<_>>()),
            realisation: RealisationSpec::Scene { points: vs.iter().cloned().zip(pts).collect() },
        };
        if dualize(&inst, AlgebraMap::SceneToParallel).is_ok() {
            return inst;
        }
    }
}

pub fn scene_corpus(seed: u64, count: usize) -> Vec<LieInstance> {
    let mut r = rng(seed);
    (0..count).map(|_| {
        let d = if r.gen_bool(0.5) { 2 } else { 3 };
        scene_instance(&mut r, d)
    }).collect()
}

/// Parallel redrawings obtained by transporting scenes.
pub fn parallel_corpus(seed: u64, count: usize) -> Vec<LieInstance> {
    scene_corpus(seed, count).iter().map(|s| dualize(s, AlgebraMap::SceneToParallel).unwrap()).collect()
}

pub fn projective_corpus(seed: u64, count: usize) -> Vec<LieInstance> {
    let mut r = rng(seed);
    (0..count).map(|_| projective_plane_instance(&mut r)).collect()
}

/// Bar-joint frameworks in the plane or space with vertices free, pinned, or sliding on a
/// random line or plane through them.
pub fn constrained_instance(rng: &mut ChaCha8Rng) -> LieInstance {
    let d = if rng.gen_bool(0.7) { 2 } else { 3 };
    let n = rng.gen_range(2..=5);
    let base = bar_joint_instance(rng, d, n);
    let RealisationSpec::BarJoint { coords } = base.realisation else { unreachable!() };
    let mut constraints = BTreeMap::new();
    for v in coords.keys() {
        let roll: f64 = rng.gen();
        if roll < 0.4 {
            continue;
        }
        let dim = if roll < 0.55 { 0 } else { rng.gen_range(1..d) };
        let mut directions: Vec<Vec<Rational>> = Vec::new();
        while directions.len() < dim {
            let u: Vec<Rational> = (0..d).map(|_| small_int(rng, 3)).collect();
            let mut cand = directions.clone();
            cand.push(u.clone());
            if rank(&cand) == cand.len() {
                directions.push(u);
            }
        }
        constraints.insert(v.clone(), ConstraintSpec { point: None, directions });
    }
    LieInstance { group: base.group, hypergraph: base.hypergraph, realisation: RealisationSpec::Constrained { coords, constraints } }
}

pub fn constrained_corpus(seed: u64, count: usize) -> Vec<LieInstance> {
    let mut r = rng(seed);
    (0..count).map(|_| constrained_instance(&mut r)).collect()
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Hypergraph {
    Hypergraph::graph(n, edges).unwrap()
}

/// Named small graphs plus seeded random graphs on at most 6 vertices.
pub fn finite_graphs(seed: u64, random: usize) -> Vec<(String, Hypergraph)> {
    let mut out = vec![
        ("K1".to_string(), graph(1, &[])),
        ("2K1".to_string(), graph(2, &[])),
        ("K2".to_string(), graph(2, &[(0, 1)])),
        ("P3".to_string(), graph(3, &[(0, 1), (1, 2)])),
        ("K3".to_string(), graph(3, &[(0, 1), (1, 2), (2, 0)])),
        ("C4".to_string(), graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
        ("K4-e".to_string(), graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])),
        ("K4".to_string(), graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])),
        ("C5".to_string(), graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])),
        ("W5".to_string(), graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 2), (5, 3), (5, 4)])),
        ("K3,3".to_string(), graph(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])),
        ("prism".to_string(), graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])),
    ];
    let mut r = rng(seed);
    for i in 0..random {
        let n = r.gen_range(1..=6);
        let p = r.gen_range(0.2..0.9);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if r.gen_bool(p) {
                    edges.push((a, b));
                }
            }
        }
        out.push((format!("random{i}"), graph(n, &edges)));
    }
    out
}
pub mod props;
