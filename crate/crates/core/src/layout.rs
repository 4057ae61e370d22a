//! Kamada–Kawai layout: nodes are placed so that Euclidean distances match
//! graph-theoretic distances, by minimizing the spring stress
//!
//! ```text
//! E = 1/2 * sum_{i<j} k_ij (|p_i - p_j| - d_ij)^2,   k_ij = K / d_ij^2
//! ```
//!
//! one node at a time with damped 2-D Newton steps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{SimilarityMatrix, Subnetwork};

/// Shortest edge length produced by [`EdgeLengthTransform::OneMinusSimilarity`];
/// a similarity of 1 would otherwise give a zero-length spring.
pub const MIN_EDGE_LENGTH: f64 = 1e-3;

const MAX_NEWTON_STEPS: usize = 50;
const MAX_HALVINGS: usize = 40;
const ARMIJO: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeLengthTransform {
    /// `1 / ln(1 + w)` for co-occurrence counts.
    InverseLogWeight,
    /// `1 - cos` for similarity networks.
    OneMinusSimilarity,
    Unit,
}

impl EdgeLengthTransform {
    pub fn length(self, weight: f64) -> f64 {
        match self {
            EdgeLengthTransform::InverseLogWeight => 1.0 / (1.0 + weight).ln(),
            EdgeLengthTransform::OneMinusSimilarity => (1.0 - weight).max(MIN_EDGE_LENGTH),
            EdgeLengthTransform::Unit => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LayoutConfig {
    pub edge_length_transform: EdgeLengthTransform,
    /// Largest ideal distance after scaling (`L`).
    pub diameter_scale: f64,
    /// Spring constant `K`.
    pub spring_constant: f64,
    /// Node relaxations allowed; `None` means `200 * n`.
    pub max_outer_iterations: Option<usize>,
    /// Convergence bound on every node's gradient norm.
    pub tolerance: f64,
    pub seed: u64,
    /// Independent seeded starts; the lowest-stress result wins.
    pub restarts: usize,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            edge_length_transform: EdgeLengthTransform::InverseLogWeight,
            diameter_scale: 1.0,
            spring_constant: 1.0,
            max_outer_iterations: None,
            tolerance: 1e-4,
            seed: 42,
            restarts: 8,
        }
    }
}

impl LayoutConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidArgument("layout tolerance must be positive".into()));
        }
        if !(self.diameter_scale > 0.0) || !(self.spring_constant > 0.0) {
            return Err(Error::InvalidArgument(
                "diameter scale and spring constant must be positive".into(),
            ));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if self.max_outer_iterations == Some(0) {
            return Err(Error::InvalidArgument("max_outer_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// Labelled undirected graph with real edge weights, the input to layout.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
}

impl LayoutGraph {
    pub fn new(labels: Vec<String>, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        for &(a, b, w) in &edges {
            if a >= labels.len() || b >= labels.len() || a == b {
                return Err(Error::InvalidArgument(format!("invalid layout edge ({a}, {b})")));
            }
            if !(w > 0.0) {
                return Err(Error::InvalidArgument(format!("non-positive edge weight {w}")));
            }
        }
        Ok(LayoutGraph { labels, edges })
    }

    pub fn from_subnetwork(sub: &Subnetwork<'_>) -> Self {
        let parent = sub.parent();
        let local = |i: usize| sub.nodes().binary_search(&i).expect("edge endpoint retained");
        LayoutGraph {
            labels: sub
                .nodes()
                .iter()
                .map(|&i| parent.node(i).country.to_string())
                .collect(),
            edges: sub
                .edges()
                .iter()
                .map(|&(a, b, w)| (local(a), local(b), w as f64))
                .collect(),
        }
    }

    /// Similarity graph over `nodes` (indices into `sim`) with an edge for every
    /// pair whose cosine exceeds `min_similarity`.
    pub fn from_similarity(sim: &SimilarityMatrix, nodes: &[usize], min_similarity: f64) -> Self {
        let mut edges = Vec::new();
        for (a, &i) in nodes.iter().enumerate() {
            for (b, &j) in nodes.iter().enumerate().skip(a + 1) {
                let s = sim.get(i, j);
                if s > min_similarity && s > 0.0 {
                    edges.push((a, b, s));
                }
            }
        }
        LayoutGraph {
            labels: nodes.iter().map(|&i| sim.countries()[i].to_string()).collect(),
            edges,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Connected components, largest first (ties by lowest member index).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &u in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }

    fn induced(&self, nodes: &[usize]) -> LayoutGraph {
        let local = |i: usize| nodes.binary_search(&i).ok();
        LayoutGraph {
            labels: nodes.iter().map(|&i| self.labels[i].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter_map(|&(a, b, w)| Some((local(a)?, local(b)?, w)))
                .collect(),
        }
    }
}

/// Dense symmetric matrix of ideal pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if values.len() != n * n {
            return Err(Error::InvalidArgument("distance matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let v = values[i * n + j];
                if values[j * n + i] != v || (i != j && !(v > 0.0 && v.is_finite())) {
                    return Err(Error::InvalidArgument(format!(
                        "distance ({i}, {j}) must be symmetric, positive and finite"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { labels, values })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n() + j]
    }
}

/// All-pairs shortest paths over transformed edge lengths, scaled so the
/// largest distance equals `diameter_scale`.
pub fn ideal_distances(g: &LayoutGraph, cfg: &LayoutConfig) -> Result<DistanceMatrix> {
    let n = g.n();
    let mut d = vec![f64::INFINITY; n * n];
    for i in 0..n {
        d[i * n + i] = 0.0;
    }
    for &(a, b, w) in g.edges() {
        let len = cfg.edge_length_transform.length(w);
        if len < d[a * n + b] {
            d[a * n + b] = len;
            d[b * n + a] = len;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let through = dik + d[k * n + j];
                if through < d[i * n + j] {
                    d[i * n + j] = through;
                }
            }
        }
    }
    if d.iter().any(|v| v.is_infinite()) {
        return Err(Error::Disconnected {
            components: g.components().len(),
        });
    }
    let max = d.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        let scale = cfg.diameter_scale / max;
        d.iter_mut().for_each(|v| *v *= scale);
    }
    // Floyd–Warshall can leave the last bit asymmetric; mirror the upper triangle.
    for i in 0..n {
        for j in i + 1..n {
            d[j * n + i] = d[i * n + j];
        }
    }
    DistanceMatrix::new(g.labels().to_vec(), d)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub labels: Vec<String>,
    pub coordinates: Vec<(f64, f64)>,
    pub final_stress: f64,
    pub iterations_used: usize,
}

impl Layout {
    pub fn coordinate(&self, label: &str) -> Option<(f64, f64)> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.coordinates[i])
    }
}

pub type Point = [f64; 2];

fn spring(d: &DistanceMatrix, cfg: &LayoutConfig, i: usize, j: usize) -> (f64, f64) {
    let dij = d.get(i, j);
    (dij, cfg.spring_constant / (dij * dij))
}

/// Total stress of `positions`.
pub fn stress(positions: &[Point], d: &DistanceMatrix, cfg: &LayoutConfig) -> f64 {
    let n = positions.len();
    let mut e = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let (dij, k) = spring(d, cfg, i, j);
            let r = dist(positions[i], positions[j]);
            e += 0.5 * k * (r - dij) * (r - dij);
        }
    }
    e
}

/// Stress terms that involve node `m`.
fn node_stress(positions: &[Point], m: usize, pm: Point, d: &DistanceMatrix, cfg: &LayoutConfig) -> f64 {
    let mut e = 0.0;
    for (j, &pj) in positions.iter().enumerate() {
        if j != m {
            let (dij, k) = spring(d, cfg, m, j);
            let r = dist(pm, pj);
            e += 0.5 * k * (r - dij) * (r - dij);
        }
    }
    e
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Contribution of node `j` to the gradient at node `i`.
fn pair_gradient(pi: Point, pj: Point, dij: f64, k: f64) -> Point {
    let dx = pi[0] - pj[0];
    let dy = pi[1] - pj[1];
    let r = dx.hypot(dy);
    let f = k * (1.0 - dij / r);
    [f * dx, f * dy]
}

fn node_gradient(positions: &[Point], m: usize, pm: Point, d: &DistanceMatrix, cfg: &LayoutConfig) -> Point {
    let mut g = [0.0, 0.0];
    for (j, &pj) in positions.iter().enumerate() {
        if j != m {
            let (dij, k) = spring(d, cfg, m, j);
            let c = pair_gradient(pm, pj, dij, k);
            g[0] += c[0];
            g[1] += c[1];
        }
    }
    g
}

fn node_hessian(positions: &[Point], m: usize, pm: Point, d: &DistanceMatrix, cfg: &LayoutConfig) -> [f64; 3] {
    let (mut hxx, mut hyy, mut hxy) = (0.0, 0.0, 0.0);
    for (j, &pj) in positions.iter().enumerate() {
        if j != m {
            let (dij, k) = spring(d, cfg, m, j);
            let dx = pm[0] - pj[0];
            let dy = pm[1] - pj[1];
            let r = dx.hypot(dy);
            let r3 = r * r * r;
            hxx += k * (1.0 - dij * dy * dy / r3);
            hyy += k * (1.0 - dij * dx * dx / r3);
            hxy += k * dij * dx * dy / r3;
        }
    }
    [hxx, hyy, hxy]
}

/// Moves later copies of coincident points by `1e-9 * L` in a direction fixed
/// by their index.
fn jitter_coincident(positions: &mut [Point], scale: f64) {
    let n = positions.len();
    for j in 1..n {
        while (0..j).any(|i| positions[i] == positions[j]) {
            let angle = j as f64;
            positions[j][0] += 1e-9 * scale * angle.cos();
            positions[j][1] += 1e-9 * scale * angle.sin();
        }
    }
}

/// `dE/dp_i = sum_{j != i} k_ij (1 - d_ij / |p_i - p_j|) (p_i - p_j)`.
pub fn stress_gradient(positions: &[Point], d: &DistanceMatrix, cfg: &LayoutConfig) -> Vec<Point> {
    let mut p = positions.to_vec();
    jitter_coincident(&mut p, cfg.diameter_scale);
    (0..p.len())
        .into_par_iter()
        .map(|i| node_gradient(&p, i, p[i], d, cfg))
        .collect()
}

fn norm(g: Point) -> f64 {
    g[0].hypot(g[1])
}

fn initial_positions(n: usize, cfg: &LayoutConfig, start: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(start as u64);
    let radius = cfg.diameter_scale / 2.0;
    (0..n)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.gen::<f64>();
            [r * theta.cos(), r * theta.sin()]
        })
        .collect()
}

struct Relaxation<'a> {
    d: &'a DistanceMatrix,
    cfg: &'a LayoutConfig,
    positions: Vec<Point>,
    gradients: Vec<Point>,
    energy: f64,
}

impl Relaxation<'_> {
    fn refresh_gradients(&mut self) {
        let (p, d, cfg) = (&self.positions, self.d, self.cfg);
        self.gradients = (0..p.len())
            .into_par_iter()
            .map(|i| node_gradient(p, i, p[i], d, cfg))
            .collect();
    }

    /// Damped Newton iterations on node `m` alone. Returns whether it moved.
    fn relax(&mut self, m: usize) -> bool {
        let (d, cfg) = (self.d, self.cfg);
        let start = self.positions[m];
        let mut pm = start;
        let mut moved = false;
        for _ in 0..MAX_NEWTON_STEPS {
            let g = node_gradient(&self.positions, m, pm, d, cfg);
            if norm(g) < cfg.tolerance {
                break;
            }
            let [hxx, hyy, hxy] = node_hessian(&self.positions, m, pm, d, cfg);
            let det = hxx * hyy - hxy * hxy;
            let newton = if hxx > 0.0 && det > 1e-12 * hxx * hyy.abs().max(1.0) {
                let step = [(-hyy * g[0] + hxy * g[1]) / det, (hxy * g[0] - hxx * g[1]) / det];
                Some(step).filter(|s| s[0] * g[0] + s[1] * g[1] < 0.0)
            } else {
                None
            };
            // Fallback: gradient step damped by the sum of spring constants.
            let damping = 1.0
                / (0..self.positions.len())
                    .filter(|&j| j != m)
                    .map(|j| spring(d, cfg, m, j).1)
                    .sum::<f64>();
            let gradient_step = [-g[0] * damping, -g[1] * damping];

            let e_old = node_stress(&self.positions, m, pm, d, cfg);
            let mut accepted = None;
            for dir in newton.into_iter().chain(std::iter::once(gradient_step)) {
                let slope = dir[0] * g[0] + dir[1] * g[1];
                let mut t = 1.0;
                for _ in 0..MAX_HALVINGS {
                    let cand = [pm[0] + t * dir[0], pm[1] + t * dir[1]];
                    if self.positions.iter().enumerate().any(|(j, &pj)| j != m && pj == cand) {
                        t *= 0.5;
                        continue;
                    }
                    let e_new = node_stress(&self.positions, m, cand, d, cfg);
                    let decrease = e_old - e_new;
                    // Sufficient decrease, and large enough to survive rounding in
                    // the total.
                    if e_new <= e_old + ARMIJO * t * slope && decrease > 1e-13 * self.energy {
                        accepted = Some((cand, decrease));
                        break;
                    }
                    t *= 0.5;
                }
                if accepted.is_some() {
                    break;
                }
            }
            match accepted {
                Some((cand, decrease)) => {
                    pm = cand;
                    self.energy -= decrease;
                    moved = true;
                }
                None => break,
            }
        }
        if moved {
            let old = self.positions[m];
            for j in 0..self.positions.len() {
                if j == m {
                    continue;
                }
                let (dij, k) = spring(d, cfg, j, m);
                let pj = self.positions[j];
                let before = pair_gradient(pj, old, dij, k);
                let after = pair_gradient(pj, pm, dij, k);
                self.gradients[j][0] += after[0] - before[0];
                self.gradients[j][1] += after[1] - before[1];
            }
            self.positions[m] = pm;
            self.gradients[m] = node_gradient(&self.positions, m, pm, d, cfg);
        }
        moved
    }
}

/// Minimizes stress from `cfg.restarts` seeded starts and returns the
/// lowest-stress result, canonically oriented.
pub fn minimize_stress(d: &DistanceMatrix, cfg: &LayoutConfig) -> Result<Layout> {
    minimize_stress_traced(d, cfg).map(|(layout, _)| layout)
}

/// Like [`minimize_stress`], also returning the winning start's total stress
/// before the first and after every outer iteration.
pub fn minimize_stress_traced(d: &DistanceMatrix, cfg: &LayoutConfig) -> Result<(Layout, Vec<f64>)> {
    cfg.validate()?;
    let runs: Vec<(Vec<Point>, usize, Vec<f64>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|start| relax_from(d, cfg, start))
        .collect();
    let (mut positions, iterations_used, trace) = runs
        .into_iter()
        .min_by(|a, b| a.2.last().unwrap().total_cmp(b.2.last().unwrap()))
        .expect("at least one start");
    canonicalize(&mut positions);
    let layout = Layout {
        labels: d.labels().to_vec(),
        final_stress: stress(&positions, d, cfg),
        coordinates: positions.into_iter().map(|p| (p[0], p[1])).collect(),
        iterations_used,
    };
    Ok((layout, trace))
}

fn relax_from(d: &DistanceMatrix, cfg: &LayoutConfig, start: usize) -> (Vec<Point>, usize, Vec<f64>) {
    let n = d.n();
    let mut positions = initial_positions(n, cfg, start);
    jitter_coincident(&mut positions, cfg.diameter_scale);
    let energy = stress(&positions, d, cfg);
    let mut state = Relaxation {
        d,
        cfg,
        positions,
        gradients: Vec::new(),
        energy,
    };
    state.refresh_gradients();
    let mut trace = vec![energy];

    let max_outer = cfg.max_outer_iterations.unwrap_or(200 * n).max(1);
    let mut stalled = vec![false; n];
    let mut iterations = 0;
    while iterations < max_outer {
        let candidate = (0..n)
            .filter(|&i| !stalled[i])
            .map(|i| (i, norm(state.gradients[i])))
            .fold(None, |best: Option<(usize, f64)>, (i, g)| match best {
                Some((_, bg)) if bg >= g => best,
                _ => Some((i, g)),
            });
        let Some((m, g)) = candidate else { break };
        if g < cfg.tolerance {
            break;
        }
        iterations += 1;
        if state.relax(m) {
            stalled.iter_mut().for_each(|s| *s = false);
        } else {
            stalled[m] = true;
        }
        if iterations % n.max(1) == 0 {
            state.refresh_gradients();
        }
        trace.push(stress(&state.positions, d, cfg));
    }
    (state.positions, iterations, trace)
}

/// Translates the centroid to the origin and rotates so the farthest-apart
/// pair `(i, j)`, `i < j`, points from `i` to `j` along `+x`.
pub fn canonicalize(positions: &mut [Point]) {
    let n = positions.len();
    if n == 0 {
        return;
    }
    let cx = positions.iter().map(|p| p[0]).sum::<f64>() / n as f64;
    let cy = positions.iter().map(|p| p[1]).sum::<f64>() / n as f64;
    for p in positions.iter_mut() {
        p[0] -= cx;
        p[1] -= cy;
    }
    let mut far = None;
    let mut best = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let r = dist(positions[i], positions[j]);
            if r > best {
                best = r;
                far = Some((i, j));
            }
        }
    }
    let Some((i, j)) = far else { return };
    let angle = (positions[j][1] - positions[i][1]).atan2(positions[j][0] - positions[i][0]);
    let (s, c) = (-angle).sin_cos();
    for p in positions.iter_mut() {
        let (x, y) = (p[0], p[1]);
        *p = [c * x - s * y, s * x + c * y];
    }
}

/// Lays out every connected component separately and packs them left to
/// right, largest first, with a gap of `L / 2`, then centres the whole picture
/// on the origin.
pub fn layout_graph(g: &LayoutGraph, cfg: &LayoutConfig) -> Result<Layout> {
    cfg.validate()?;
    let n = g.n();
    let mut coordinates = vec![(0.0, 0.0); n];
    let mut final_stress = 0.0;
    let mut iterations_used = 0;
    let mut cursor = 0.0;
    let gap = cfg.diameter_scale / 2.0;
    for comp in g.components() {
        let sub = g.induced(&comp);
        let layout = if comp.len() == 1 {
            Layout {
                labels: sub.labels.clone(),
                coordinates: vec![(0.0, 0.0)],
                final_stress: 0.0,
                iterations_used: 0,
            }
        } else {
            minimize_stress(&ideal_distances(&sub, cfg)?, cfg)?
        };
        let min_x = layout.coordinates.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        let max_x = layout.coordinates.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
        for (&node, &(x, y)) in comp.iter().zip(&layout.coordinates) {
            coordinates[node] = (x - min_x + cursor, y);
        }
        cursor += (max_x - min_x) + gap;
        final_stress += layout.final_stress;
        iterations_used += layout.iterations_used;
    }
    if n > 0 {
        let cx = coordinates.iter().map(|c| c.0).sum::<f64>() / n as f64;
        let cy = coordinates.iter().map(|c| c.1).sum::<f64>() / n as f64;
        for c in &mut coordinates {
            *c = (c.0 - cx, c.1 - cy);
        }
    }
    Ok(Layout {
        labels: g.labels().to_vec(),
        coordinates,
        final_stress,
        iterations_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("N{i}")).collect()
    }

    fn uniform(n: usize, v: f64) -> DistanceMatrix {
        let mut values = vec![v; n * n];
        for i in 0..n {
            values[i * n + i] = 0.0;
        }
        DistanceMatrix::new(labels(n), values).unwrap()
    }

    #[test]
    fn single_edge_distance_is_scale() {
        let g = LayoutGraph::new(labels(2), vec![(0, 1, 5.0)]).unwrap();
        let cfg = LayoutConfig {
            edge_length_transform: EdgeLengthTransform::Unit,
            diameter_scale: 3.0,
            ..Default::default()
        };
        assert_eq!(ideal_distances(&g, &cfg).unwrap().get(0, 1), 3.0);
    }

    #[test]
    fn path_distances_add() {
        let g = LayoutGraph::new(labels(3), vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let cfg = LayoutConfig {
            edge_length_transform: EdgeLengthTransform::Unit,
            ..Default::default()
        };
        let d = ideal_distances(&g, &cfg).unwrap();
        assert_eq!(d.get(0, 2), 2.0 * d.get(0, 1));
        assert_eq!(d.get(0, 2), 1.0);
    }

    #[test]
    fn disconnected_graph_rejected() {
        let g = LayoutGraph::new(labels(3), vec![(0, 1, 1.0)]).unwrap();
        let err = ideal_distances(&g, &LayoutConfig::default());
        assert!(matches!(err, Err(Error::Disconnected { components: 2 })));
    }

    #[test]
    fn transforms() {
        assert!((EdgeLengthTransform::InverseLogWeight.length(1.0) - 1.0 / 2f64.ln()).abs() < 1e-15);
        assert_eq!(EdgeLengthTransform::OneMinusSimilarity.length(0.25), 0.75);
        assert_eq!(EdgeLengthTransform::OneMinusSimilarity.length(1.0), MIN_EDGE_LENGTH);
        assert_eq!(EdgeLengthTransform::Unit.length(42.0), 1.0);
    }

    #[test]
    fn two_nodes_reach_rest_length() {
        let cfg = LayoutConfig::default();
        let layout = minimize_stress(&uniform(2, 1.0), &cfg).unwrap();
        let (a, b) = (layout.coordinates[0], layout.coordinates[1]);
        let r = (a.0 - b.0).hypot(a.1 - b.1);
        assert!((r - 1.0).abs() < cfg.tolerance, "r = {r}");
    }

    #[test]
    fn rest_length_has_zero_gradient() {
        let d = uniform(2, 1.0);
        let g = stress_gradient(&[[0.0, 0.0], [1.0, 0.0]], &d, &LayoutConfig::default());
        assert_eq!(g, vec![[0.0, 0.0], [0.0, 0.0]]);
    }

    #[test]
    fn equilateral_triangle() {
        let cfg = LayoutConfig::default();
        let layout = minimize_stress(&uniform(3, 1.0), &cfg).unwrap();
        let c = &layout.coordinates;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let r = (c[i].0 - c[j].0).hypot(c[i].1 - c[j].1);
            assert!((r - 1.0).abs() < 1e-3, "r = {r}");
        }
        let p: Vec<Point> = c.iter().map(|&(x, y)| [x, y]).collect();
        for g in stress_gradient(&p, &uniform(3, 1.0), &cfg) {
            assert!(norm(g) < cfg.tolerance);
        }
    }

    #[test]
    fn coincident_points_are_jittered() {
        let d = uniform(2, 1.0);
        let g = stress_gradient(&[[0.5, 0.5], [0.5, 0.5]], &d, &LayoutConfig::default());
        assert!(g.iter().all(|v| v[0].is_finite() && v[1].is_finite()));
    }

    #[test]
    fn canonical_orientation() {
        let mut p = vec![[1.0, 1.0], [2.0, 3.0], [0.0, 2.5]];
        canonicalize(&mut p);
        let cx: f64 = p.iter().map(|q| q[0]).sum();
        let cy: f64 = p.iter().map(|q| q[1]).sum();
        assert!(cx.abs() < 1e-12 && cy.abs() < 1e-12);
        // farthest pair is (0, 1)
        assert!((p[1][1] - p[0][1]).abs() < 1e-12);
        assert!(p[1][0] > p[0][0]);
    }

    #[test]
    fn components_are_packed_apart() {
        let g = LayoutGraph::new(labels(5), vec![(0, 1, 1.0), (1, 2, 1.0), (3, 4, 2.0)]).unwrap();
        let layout = layout_graph(&g, &LayoutConfig::default()).unwrap();
        let max_first = (0..3).map(|i| layout.coordinates[i].0).fold(f64::MIN, f64::max);
        let min_second = (3..5).map(|i| layout.coordinates[i].0).fold(f64::MAX, f64::min);
        assert!(min_second > max_first);
    }

    #[test]
    fn invalid_config() {
        let cfg = LayoutConfig {
            tolerance: 0.0,
            ..Default::default()
        };
        assert!(minimize_stress(&uniform(2, 1.0), &cfg).is_err());
    }
}
