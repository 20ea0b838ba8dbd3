use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use polydraw_core::geom::{int, ratio, Rational};
use polydraw_core::pdgraph::{
    build_pd_graph, containment_fraction, genus_two_solid, min_c4_triangulation, pd_lengths, solid_preset,
    visualize_pd, PdLengths, SimplicialComplex,
};
use polydraw_core::scene::EdgeKind;
use polydraw_core::spring::SpringParams;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn counts(k: &SimplicialComplex) -> (usize, usize, usize, usize) {
    let pd = build_pd_graph(k);
    pd.check_kinds().unwrap();
    (pd.graph.node_count(), pd.count(EdgeKind::Primal), pd.count(EdgeKind::Dual), pd.count(EdgeKind::Artificial))
}

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let x = &f * &m[c][k];
                m[r][k] -= x;
            }
        }
    }
    d
}

fn coords(label: &str) -> Vec<Rational> {
    label.chars().map(|c| int(c.to_digit(10).unwrap() as i64)).collect()
}

/// Barycentric coordinates of `x` in the simplex `s` by Cramer's rule.
fn barycentric(s: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    let mat = |pts: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        (1..pts.len()).map(|i| pts[i].iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect()
    };
    let total = det(mat(s));
    let mut out = Vec::new();
    for i in 0..s.len() {
        let mut t = s.to_vec();
        t[i] = x.to_vec();
        out.push(det(mat(&t)) / &total);
    }
    out
}

#[test]
fn tetrahedron_boundary() {
    let k = SimplicialComplex::unlabelled(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
    assert_eq!(counts(&k), (8, 6, 6, 12));
    let pd = build_pd_graph(&k);
    let dual = pd.graph.induced(&(4..8).collect::<Vec<_>>());
    assert_eq!(dual.edge_count(), 6);
    assert_eq!(k.euler_characteristic(), 2);
}

#[test]
fn minimal_c4_triangulation_counts() {
    let k = min_c4_triangulation();
    assert_eq!(k.f_vector(), vec![16, 57, 86, 60, 16]);
    // 80 ridge slots, 60 ridges: 20 interior, 40 on the eight cubical facets.
    assert_eq!(counts(&k), (32, 57, 20, 80));
    assert_eq!(k.euler_characteristic(), 1);
}

#[test]
fn minimal_c4_is_a_triangulation_of_the_cube() {
    let k = min_c4_triangulation();
    let simplices: Vec<Vec<Vec<Rational>>> =
        k.facets.iter().map(|f| f.iter().map(|&v| coords(&k.vertices[v])).collect()).collect();
    // Volumes in units of the standard simplex add up to 4! = 24.
    let vol: Rational = simplices
        .iter()
        .map(|s| det((1..5).map(|i| s[i].iter().zip(&s[0]).map(|(a, b)| a - b).collect()).collect()).abs())
        .fold(Rational::zero(), |a, b| a + b);
    assert_eq!(vol, int(24));
    // Every sampled interior point lies in exactly one simplex.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let x: Vec<Rational> = (0..4).map(|_| ratio(rng.random_range(1..1009), 1009)).collect();
        let hits: Vec<Vec<Rational>> = simplices.iter().map(|s| barycentric(s, &x)).filter(|l| l.iter().all(|c| !c.is_negative())).collect();
        if hits.iter().any(|l| l.iter().any(Zero::is_zero)) {
            continue;
        }
        assert_eq!(hits.len(), 1, "{x:?}");
    }
}

#[test]
fn genus_two_solid_topology() {
    let k = genus_two_solid();
    assert!(k.is_pure());
    assert_eq!(k.dim(), 3);
    assert_eq!(k.facets.len(), 13 * 6);
    assert_eq!(k.euler_characteristic(), -1);
    let b = k.boundary().unwrap();
    assert_eq!(b.euler_characteristic(), -2);
    assert!(polydraw_core::geom::is_connected(&b.skeleton()));
    let pd = build_pd_graph(&k);
    assert_eq!(pd.non_manifold_ridges, 0);
    let interior_ridges = k.ridges().values().filter(|c| c.len() == 2).count();
    assert_eq!(pd.count(EdgeKind::Dual), interior_ridges);
}

#[test]
fn genus_two_dual_nodes_inside_their_tetrahedra() {
    let pd = build_pd_graph(&genus_two_solid());
    for seed in 0..3 {
        let (lengths, params) = solid_preset(seed);
        let s = visualize_pd(&pd, &lengths, &params).unwrap();
        let pos: Vec<Vec<f64>> = s.nodes.iter().map(|n| n.position.clone()).collect();
        let frac = containment_fraction(&pd, &pos).unwrap();
        assert!(frac >= 0.9, "seed {seed}: {frac}");
    }
}

#[test]
fn long_artificial_edges_leave_dual_nodes_outside() {
    let pd = build_pd_graph(&genus_two_solid());
    let (mut lengths, params) = solid_preset(0);
    lengths.artificial = lengths.primal;
    let s = visualize_pd(&pd, &lengths, &params).unwrap();
    let pos: Vec<Vec<f64>> = s.nodes.iter().map(|n| n.position.clone()).collect();
    assert!(containment_fraction(&pd, &pos).unwrap() < 0.9);
}

#[test]
fn scenes_are_deterministic_and_typed() {
    let pd = build_pd_graph(&min_c4_triangulation());
    let params = SpringParams { seed: 7, ..Default::default() };
    let a = visualize_pd(&pd, &PdLengths::default(), &params).unwrap();
    assert_eq!(a.to_json(), visualize_pd(&pd, &PdLengths::default(), &params).unwrap().to_json());
    assert_eq!(a.edges.iter().filter(|e| e.kind == EdgeKind::Artificial).count(), 80);
    assert_eq!(a.nodes.iter().filter(|n| n.kind == polydraw_core::NodeKind::Dual).count(), 16);
    let hidden = a.without_edge_kind(EdgeKind::Artificial);
    assert_eq!(hidden.edges.len(), a.edges.len() - 80);
    assert_eq!(hidden.nodes.len(), 32);
    let l = pd_lengths(&pd, &PdLengths::default()).unwrap();
    assert_eq!(l.iter().filter(|&&x| x < 1.0).count(), 80);
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (3usize..8, prop::collection::vec(prop::collection::btree_set(0usize..8, 1..5), 1..8)).prop_filter_map(
        "valid complex",
        |(n, facets)| {
            let facets: Vec<Vec<usize>> =
                facets.into_iter().map(|f| f.into_iter().filter(|&v| v < n).collect::<Vec<_>>()).filter(|f| !f.is_empty()).collect();
            let maximal: Vec<Vec<usize>> = facets
                .iter()
                .enumerate()
                .filter(|&(i, f)| {
                    !facets.iter().enumerate().any(|(j, g)| {
                        let (fs, gs): (BTreeSet<_>, BTreeSet<_>) = (f.iter().collect(), g.iter().collect());
                        fs.is_subset(&gs) && (fs != gs || j < i)
                    })
                })
                .map(|(_, f)| f.clone())
                .collect();
            SimplicialComplex::unlabelled(n, maximal).ok()
        },
    )
}

proptest! {
    #[test]
    fn count_invariants(k in random_complex()) {
        let pd = build_pd_graph(&k);
        pd.check_kinds().unwrap();
        let f = k.f_vector();
        prop_assert_eq!(pd.graph.node_count(), k.vertices.len() + k.facets.len());
        prop_assert_eq!(pd.count(EdgeKind::Primal), f.get(1).copied().unwrap_or(0));
        prop_assert_eq!(pd.count(EdgeKind::Artificial), k.facets.iter().map(Vec::len).sum::<usize>());
        for (e, kind) in pd.graph.edges().iter().zip(&pd.edge_kinds) {
            if *kind == EdgeKind::Artificial {
                let (v, facet) = (e.a, e.b - k.vertices.len());
                prop_assert!(k.facets[facet].contains(&v));
            }
        }
        prop_assert_eq!(SimplicialComplex::parse(&k.to_off()).unwrap(), k.clone());
    }
}
