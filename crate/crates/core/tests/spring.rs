use std::collections::BTreeSet;

use polydraw_core::geom::construct::{cube, klee_minty, product, simplex};
use polydraw_core::geom::{to_f64, Graph};
use polydraw_core::spring::{
    desired_lengths_from_coords, init_random_sphere, run, EmbeddingState, Norm, SpringParams, SpringSystem, Vec3,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn k2() -> Graph {
    Graph::from_edges(2, [(0, 1)]).unwrap()
}

fn dist(a: Vec3, b: Vec3) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

#[test]
fn sphere_initialisation() {
    let g = cube(3).unwrap().graph();
    let a = init_random_sphere(&g, 5);
    assert_eq!(a, init_random_sphere(&g, 5));
    assert_eq!(a.positions, a.previous);
    for p in &a.positions {
        assert!((dist(*p, [0.0; 3]) - 1.0).abs() < 1e-12);
    }
    let mut seen = BTreeSet::new();
    for seed in 0..100 {
        let s = init_random_sphere(&g, seed);
        let mut key: Vec<[u64; 3]> = s.positions.iter().map(|p| p.map(f64::to_bits)).collect();
        key.sort_unstable();
        seen.insert(key);
    }
    assert_eq!(seen.len(), 100);
}

#[test]
fn two_body_steps_by_hand() {
    let g = k2();
    let params = SpringParams { length: Some(1.0), ..Default::default() };
    let sys = SpringSystem::new(&g, params.clone()).unwrap();
    let s0 = EmbeddingState::at_rest(vec![[0.0; 3], [1.5, 0.0, 0.0]]);
    // Each endpoint moves by (1/ℓ − 1/s)·s = s − 1 towards the other: s' = s − 2(s − 1).
    let s1 = sys.step(&s0).unwrap();
    assert!((dist(s1.positions[0], s1.positions[1]) - 0.5).abs() < 1e-12);
    // Now with inertia: s'' = s' − 2(s' − 1) + δ_visc (s' − s).
    let s2 = sys.step(&s1).unwrap();
    let expected = 0.5 - 2.0 * (0.5 - 1.0) + params.delta_visc * (0.5 - 1.5);
    assert!((dist(s2.positions[0], s2.positions[1]) - expected).abs() < 1e-12);
}

#[test]
fn zero_force_is_a_fixed_point() {
    let g = k2();
    let sys = SpringSystem::new(&g, SpringParams { delta_visc: 0.0, delta_rep: 0.0, length: Some(1.0), ..Default::default() }).unwrap();
    let s = EmbeddingState::at_rest(vec![[0.0; 3], [0.0, 0.0, 1.0]]);
    assert_eq!(sys.step(&s).unwrap().positions, s.positions);
}

#[test]
fn two_body_run_converges_to_rest_length() {
    for seed in 0..10 {
        let r = run(&k2(), &SpringParams { seed, length: Some(1.0), threshold: 1e-8, ..Default::default() }, None, None).unwrap();
        assert!(r.converged);
        assert!((dist(r.state.positions[0], r.state.positions[1]) - 1.0).abs() < 1e-3);
    }
}

#[test]
fn klee_minty_vertical_force_orders_edges() {
    let km = klee_minty(3).unwrap();
    let g = km.graph();
    let lambda: Vec<f64> = km.vertices().iter().map(|v| to_f64(&v[2])).collect();
    let (mut converged, mut good) = (0, 0);
    for seed in 0..20 {
        let r = run(&g, &SpringParams { seed, ..Default::default() }, Some(&lambda), None).unwrap();
        if !r.converged {
            continue;
        }
        converged += 1;
        let z = |v: usize| r.state.positions[v][2];
        if g.edges().iter().all(|e| (lambda[e.b] - lambda[e.a]) * (z(e.b) - z(e.a)) > 0.0) {
            good += 1;
        }
    }
    assert!(converged > 0);
    assert!(good as f64 >= 0.95 * converged as f64, "{good}/{converged}");
}

#[test]
fn triangle_times_cube_fibres_are_flat() {
    let p = product(&simplex(2).unwrap(), &cube(3).unwrap()).unwrap();
    let g = p.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..3 {
        let (l1, l2): (f64, f64) = (rng.random_range(2.0..10.0), rng.random_range(-10.0..-2.0));
        let lambda: Vec<f64> = p.vertices().iter().map(|v| l1 * to_f64(&v[0]) + l2 * to_f64(&v[1])).collect();
        let r = run(&g, &SpringParams { seed, ..Default::default() }, Some(&lambda), None).unwrap();
        assert!(r.converged);
        let z: Vec<f64> = r.state.positions.iter().map(|p| p[2]).collect();
        let spread = |xs: &mut dyn Iterator<Item = f64>| {
            let v: Vec<f64> = xs.collect();
            v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
        };
        let total = spread(&mut z.iter().cloned());
        for value in [0.0, l1, l2] {
            let fibre: Vec<usize> = (0..z.len()).filter(|&i| (lambda[i] - value).abs() < 1e-9).collect();
            assert_eq!(fibre.len(), 8);
            assert!(spread(&mut fibre.iter().map(|&i| z[i])) < 0.1 * total);
        }
    }
}

#[test]
fn desired_lengths_of_the_unit_cube() {
    let c = cube(3).unwrap();
    let coords = c.vertices_f64();
    let l = desired_lengths_from_coords(&c.graph(), &coords, Norm::Euclidean).unwrap();
    assert!(l.iter().all(|&x| x == 1.0));
}

fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(density) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

fn random_state(n: usize, seed: u64) -> EmbeddingState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = || [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
    let positions: Vec<Vec3> = (0..n).map(|_| p()).collect();
    let previous = (0..n).map(|_| p()).collect();
    EmbeddingState { positions, previous, iteration: 0 }
}

fn rotate(p: Vec3, angles: (f64, f64)) -> Vec3 {
    let (a, b) = angles;
    let q = [a.cos() * p[0] - a.sin() * p[1], a.sin() * p[0] + a.cos() * p[1], p[2]];
    [q[0], b.cos() * q[1] - b.sin() * q[2], b.sin() * q[1] + b.cos() * q[2]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn forces_sum_to_zero(n in 2usize..50, density in 0.05f64..0.6, seed in any::<u64>(), with_objective in any::<bool>()) {
        let g = random_graph(n, density, seed);
        let mut sys = SpringSystem::new(&g, SpringParams::default()).unwrap();
        if with_objective {
            sys = sys.with_objective((0..n).map(|i| (i as f64).sin()).collect()).unwrap();
        }
        let forces = sys.forces(&random_state(n, seed)).unwrap();
        for i in 0..3 {
            let total: f64 = forces.iter().map(|f| f[i]).sum();
            prop_assert!(total.abs() < 1e-9, "{total}");
        }
    }

    #[test]
    fn forces_rotate_with_the_configuration(n in 2usize..20, seed in any::<u64>(), a in 0.0f64..6.3, b in 0.0f64..6.3) {
        let g = random_graph(n, 0.3, seed);
        let sys = SpringSystem::new(&g, SpringParams { delta_lin: 0.0, ..Default::default() }).unwrap();
        let s = random_state(n, seed);
        let r = EmbeddingState {
            positions: s.positions.iter().map(|&p| rotate(p, (a, b))).collect(),
            previous: s.previous.iter().map(|&p| rotate(p, (a, b))).collect(),
            iteration: 0,
        };
        let f = sys.forces(&s).unwrap();
        let fr = sys.forces(&r).unwrap();
        for (x, y) in f.iter().zip(&fr) {
            prop_assert!(dist(rotate(*x, (a, b)), *y) < 1e-10);
        }
    }

    #[test]
    fn runs_are_deterministic_and_honest(n in 2usize..12, seed in any::<u64>()) {
        let g = random_graph(n, 0.4, seed);
        let params = SpringParams { seed, max_iters: 3000, ..Default::default() };
        let objective: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
        let a = run(&g, &params, Some(&objective), None).unwrap();
        let b = run(&g, &params, Some(&objective), None).unwrap();
        prop_assert_eq!(&a, &b);
        if a.converged {
            let sys = SpringSystem::new(&g, params.clone()).unwrap().with_objective(objective).unwrap();
            let next = sys.step(&a.state).unwrap();
            prop_assert!(next.fluctuation() < params.threshold);
        }
    }
}
