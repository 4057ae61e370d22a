use intcollab_core::layout::{
    canonicalize, ideal_distances, layout_graph, minimize_stress, minimize_stress_traced, stress, stress_gradient,
    DistanceMatrix, EdgeLengthTransform, LayoutConfig, LayoutGraph, Point,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("N{i}")).collect()
}

/// Random connected graph: a random spanning tree plus extra edges.
fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> LayoutGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, rng.gen_range(1.0..50.0f64).round()));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(extra) && !edges.iter().any(|&(x, y, _)| (x, y) == (a, b)) {
                edges.push((a, b, rng.gen_range(1.0..50.0f64).round()));
            }
        }
    }
    LayoutGraph::new(labels(n), edges).unwrap()
}

/// Shortest path by enumerating every simple path.
fn path_oracle(g: &LayoutGraph, t: EdgeLengthTransform, from: usize, to: usize) -> f64 {
    fn walk(g: &LayoutGraph, t: EdgeLengthTransform, at: usize, to: usize, seen: &mut Vec<bool>, len: f64, best: &mut f64) {
        if at == to {
            *best = best.min(len);
            return;
        }
        for &(a, b, w) in g.edges() {
            let next = if a == at { b } else if b == at { a } else { continue };
            if !seen[next] {
                seen[next] = true;
                walk(g, t, next, to, seen, len + t.length(w), best);
                seen[next] = false;
            }
        }
    }
    let mut seen = vec![false; g.n()];
    seen[from] = true;
    let mut best = f64::INFINITY;
    walk(g, t, from, to, &mut seen, 0.0, &mut best);
    best
}

fn energy(p: &[Point], d: &DistanceMatrix) -> f64 {
    let mut e = 0.0;
    for i in 0..p.len() {
        for j in 0..i {
            let r = ((p[i][0] - p[j][0]).powi(2) + (p[i][1] - p[j][1]).powi(2)).sqrt();
            e += 0.5 * (r - d.get(i, j)).powi(2) / d.get(i, j).powi(2);
        }
    }
    e
}

/// Plain gradient descent on numerically differentiated stress with
/// backtracking, from a random start.
fn descend(d: &DistanceMatrix, rng: &mut ChaCha8Rng) -> f64 {
    let n = d.n();
    let mut p: Vec<Point> = (0..n).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect();
    let mut e = energy(&p, d);
    let mut step = 0.1;
    for _ in 0..4000 {
        let h = 1e-7;
        let mut g = vec![[0.0; 2]; n];
        for i in 0..n {
            for k in 0..2 {
                let mut q = p.clone();
                q[i][k] += h;
                let up = energy(&q, d);
                q[i][k] -= 2.0 * h;
                g[i][k] = (up - energy(&q, d)) / (2.0 * h);
            }
        }
        loop {
            let q: Vec<Point> = p.iter().zip(&g).map(|(a, b)| [a[0] - step * b[0], a[1] - step * b[1]]).collect();
            let eq = energy(&q, d);
            if eq < e {
                p = q;
                e = eq;
                step *= 1.5;
                break;
            }
            step *= 0.5;
            if step < 1e-14 {
                return e;
            }
        }
    }
    e
}

#[test]
fn six_node_layout_near_best_restart() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = random_graph(&mut rng, 6, 0.3);
    let cfg = LayoutConfig::default();
    let d = ideal_distances(&g, &cfg).unwrap();
    let layout = minimize_stress(&d, &cfg).unwrap();
    let best = (0..100).map(|_| descend(&d, &mut rng)).fold(f64::INFINITY, f64::min);
    assert!(
        layout.final_stress <= best * 1.01 + 1e-9,
        "layout {} vs best restart {}",
        layout.final_stress,
        best
    );
}

#[test]
fn two_nodes_rest_at_ideal_length() {
    let d = DistanceMatrix::new(labels(2), vec![0.0, 1.0, 1.0, 0.0]).unwrap();
    let layout = minimize_stress(&d, &LayoutConfig::default()).unwrap();
    let (a, b) = (layout.coordinates[0], layout.coordinates[1]);
    assert!(((a.0 - b.0).hypot(a.1 - b.1) - 1.0).abs() < 1e-4);
}

#[test]
fn triangle_is_equilateral() {
    let d = DistanceMatrix::new(labels(3), vec![0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 0.0]).unwrap();
    let cfg = LayoutConfig::default();
    let layout = minimize_stress(&d, &cfg).unwrap();
    let c = &layout.coordinates;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        assert!(((c[i].0 - c[j].0).hypot(c[i].1 - c[j].1) - 1.0).abs() < 1e-3);
    }
    let p: Vec<Point> = c.iter().map(|&(x, y)| [x, y]).collect();
    for g in stress_gradient(&p, &d, &cfg) {
        assert!(g[0].hypot(g[1]) < cfg.tolerance);
    }
}

#[test]
fn components_are_packed_apart() {
    let g = LayoutGraph::new(labels(5), vec![(0, 1, 3.0), (1, 2, 3.0), (3, 4, 1.0)]).unwrap();
    assert!(ideal_distances(&g, &LayoutConfig::default()).is_err());
    let layout = layout_graph(&g, &LayoutConfig::default()).unwrap();
    let max_first = (0..3).map(|i| layout.coordinates[i].0).fold(f64::MIN, f64::max);
    let min_second = (3..5).map(|i| layout.coordinates[i].0).fold(f64::MAX, f64::min);
    assert!(min_second - max_first >= 0.5 - 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distances_match_path_enumeration(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.4);
        let cfg = LayoutConfig { diameter_scale: 2.5, ..Default::default() };
        let d = ideal_distances(&g, &cfg).unwrap();
        let raw: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| path_oracle(&g, cfg.edge_length_transform, i, j)).collect()).collect();
        let max = raw.iter().flatten().copied().fold(0.0, f64::max);
        for i in 0..n {
            for j in 0..n {
                prop_assert!((d.get(i, j) - raw[i][j] * 2.5 / max).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gradient_matches_central_differences(seed in any::<u64>(), n in 2usize..11) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.3);
        let cfg = LayoutConfig { spring_constant: rng.gen_range(0.5..2.0), ..Default::default() };
        let d = ideal_distances(&g, &cfg).unwrap();
        let p: Vec<Point> = (0..n).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect();
        let grad = stress_gradient(&p, &d, &cfg);
        let h = 1e-6;
        let scale = grad.iter().flat_map(|g| g.iter()).fold(1.0f64, |m, v| m.max(v.abs()));
        for i in 0..n {
            for k in 0..2 {
                let mut q = p.clone();
                q[i][k] += h;
                let up = stress(&q, &d, &cfg);
                q[i][k] -= 2.0 * h;
                let fd = (up - stress(&q, &d, &cfg)) / (2.0 * h);
                prop_assert!((grad[i][k] - fd).abs() <= 1e-5 * scale, "node {} axis {}: {} vs {}", i, k, grad[i][k], fd);
            }
        }
    }

    #[test]
    fn stress_never_increases(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.3);
        let cfg = LayoutConfig { seed, ..Default::default() };
        let (layout, trace) = minimize_stress_traced(&ideal_distances(&g, &cfg).unwrap(), &cfg).unwrap();
        for w in trace.windows(2) {
            prop_assert!(w[1] <= w[0], "{} -> {}", w[0], w[1]);
        }
        prop_assert!(layout.final_stress >= 0.0);
        prop_assert!((layout.final_stress - trace.last().unwrap()).abs() <= 1e-9 * (1.0 + layout.final_stress));
    }

    #[test]
    fn layout_is_deterministic_and_canonical(seed in any::<u64>(), n in 3usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.3);
        let cfg = LayoutConfig::default();
        let a = layout_graph(&g, &cfg).unwrap();
        let b = layout_graph(&g, &cfg).unwrap();
        prop_assert_eq!(&a, &b);
        let (cx, cy) = a.coordinates.iter().fold((0.0, 0.0), |s, c| (s.0 + c.0, s.1 + c.1));
        prop_assert!(cx.abs() / (n as f64) < 1e-9 && cy.abs() / (n as f64) < 1e-9);
        let mut far = (0, 1, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let r = (a.coordinates[i].0 - a.coordinates[j].0).hypot(a.coordinates[i].1 - a.coordinates[j].1);
                if r > far.2 {
                    far = (i, j, r);
                }
            }
        }
        let dy = a.coordinates[far.1].1 - a.coordinates[far.0].1;
        let dx = a.coordinates[far.1].0 - a.coordinates[far.0].0;
        prop_assert!(dy.atan2(dx).abs() < 1e-9);
    }

    #[test]
    fn stress_ignores_rigid_motion(seed in any::<u64>(), n in 2usize..10, angle in -3.14f64..3.14, tx in -5.0f64..5.0, ty in -5.0f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.3);
        let cfg = LayoutConfig::default();
        let d = ideal_distances(&g, &cfg).unwrap();
        let p: Vec<Point> = (0..n).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect();
        let (s, c) = angle.sin_cos();
        let moved: Vec<Point> = p.iter().map(|q| [c * q[0] - s * q[1] + tx, s * q[0] + c * q[1] + ty]).collect();
        prop_assert!((stress(&p, &d, &cfg) - stress(&moved, &d, &cfg)).abs() < 1e-9);
        let mut canon = moved.clone();
        canonicalize(&mut canon);
        prop_assert!((stress(&p, &d, &cfg) - stress(&canon, &d, &cfg)).abs() < 1e-9);
    }
}
