//! Property bodies shared by the proptest suite and the acceptance run.

use gogrig::hypergraph::{Edge, Hypergraph, HypergraphSpec};
use gogrig::linalg::{intersect_all, q, Rational, Subspace};
use gogrig::motionspace::{is_motion, motion_space_with_basis, trivial_and_kernel};
use gogrig::realisation::Realisation;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::Rng;

use super::{
    bar_joint_instance, constrained_instance, projective_plane_instance, projective_space_instance, rng,
    scene_instance,
};

/// A seeded instance of every realisation kind.
pub fn realisations(seed: u64) -> Vec<Realisation> {
    let mut r = rng(seed);
    let d = r.gen_range(2..=3);
    let n = r.gen_range(2..=6);
    let bar = bar_joint_instance(&mut r, d, n);
    let scene = scene_instance(&mut r, d);
    let parallel = gogrig::instance::dualize(&scene, gogrig::liemodels::AlgebraMap::SceneToParallel).unwrap();
    let plane = projective_plane_instance(&mut r);
    let space = projective_space_instance(&mut r);
    let constrained = constrained_instance(&mut r);
    [bar, scene, parallel, plane, space, constrained].iter().map(|i| i.build().unwrap()).collect()
}

pub fn bracket_closed(seed: u64) -> Result<(), TestCaseError> {
    for r in realisations(seed) {
        for a in r.all_algebras() {
            prop_assert!(a.is_bracket_closed(), "{} algebra of dim {} not closed", r.kind(), a.dim());
        }
        if let Some(c) = r.constraints() {
            for a in &c.algebras {
                prop_assert!(a.is_bracket_closed());
            }
        }
    }
    Ok(())
}

/// `ker π` and the diagonal copy of the algebra are motions, and lie in the computed `A`.
pub fn trivial_motions_in_a(seed: u64) -> Result<(), TestCaseError> {
    for r in realisations(seed) {
        let (_, a) = motion_space_with_basis(&r).unwrap();
        let s = trivial_and_kernel(&r).unwrap();
        for v in s.basis_vectors() {
            prop_assert!(is_motion(&r, &v));
        }
        prop_assert!(a.contains_subspace(&s));
    }
    Ok(())
}

pub fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    (1usize..=7).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=n), 0..=8).prop_map(move |edges| {
            let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            Hypergraph::new(HypergraphSpec {
                edges: edges
                    .iter()
                    .enumerate()
                    .map(|(k, m)| Edge { id: format!("e{k}"), vertices: m.iter().map(|&v| vertices[v].clone()).collect() })
                    .collect(),
                vertices,
                allow_empty_edges: false,
            })
            .unwrap()
        })
    })
}

pub fn dual_incidences(h: &Hypergraph) -> Result<(), TestCaseError> {
    let dual = h.dual();
    prop_assert_eq!(dual.incidences().len(), h.incidences().len());
    prop_assert_eq!(dual.vertex_count(), h.edge_count());
    prop_assert_eq!(dual.edge_count(), h.vertex_count());
    prop_assert!(dual.dual().same_incidences(h));
    Ok(())
}

pub fn subspaces_strategy() -> impl Strategy<Value = (usize, Vec<Vec<Vec<i64>>>)> {
    (1usize..=6).prop_flat_map(|n| {
        let vector = prop::collection::vec(-3i64..=3, n);
        (Just(n), prop::collection::vec(prop::collection::vec(vector, 0..=n), 1..=4))
    })
}

/// `dim ΣV_i <= Σ dim V_i`, `dim ∩V_i >= n - Σ(n - dim V_i)` and `(ΣV_i)^⊥ = ∩V_i^⊥`.
pub fn intersection_bounds(n: usize, gens: &[Vec<Vec<i64>>]) -> Result<(), TestCaseError> {
    let spaces: Vec<Subspace> = gens
        .iter()
        .map(|g| {
            let vs: Vec<Vec<Rational>> = g.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
            Subspace::span(n, &vs).unwrap()
        })
        .collect();
    let mut sum = Subspace::zero(n);
    for s in &spaces {
        sum = sum.sum(s).unwrap();
    }
    let inter = intersect_all(&spaces).unwrap().expect("at least one subspace");
    let dims: usize = spaces.iter().map(Subspace::dim).sum();
    let codims: i64 = spaces.iter().map(|s| (n - s.dim()) as i64).sum();
    prop_assert!(sum.dim() <= dims);
    prop_assert!(inter.dim() as i64 >= n as i64 - codims);
    let perps: Vec<Subspace> = spaces.iter().map(Subspace::orthogonal_complement).collect();
    let perp_inter = intersect_all(&perps).unwrap().unwrap();
    prop_assert_eq!(sum.orthogonal_complement(), perp_inter);
    Ok(())
}
