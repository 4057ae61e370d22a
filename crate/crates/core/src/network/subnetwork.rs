use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::CoauthNetwork;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Threshold,
    Core,
    Ego,
    ExplicitList,
}

/// Threshold comparison: `value >= t` or `value > t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparator {
    #[default]
    Ge,
    Gt,
}

impl Comparator {
    pub fn passes<T: PartialOrd + ?Sized>(self, value: &T, threshold: &T) -> bool {
        match self {
            Comparator::Ge => value >= threshold,
            Comparator::Gt => value > threshold,
        }
    }
}

/// Induced view on a parent network. Node and edge indices refer to the
/// parent; both lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subnetwork<'a> {
    parent: &'a CoauthNetwork,
    nodes: Vec<usize>,
    edges: Vec<(usize, usize, u64)>,
    provenance: Provenance,
}

impl<'a> Subnetwork<'a> {
    fn new(
        parent: &'a CoauthNetwork,
        nodes: impl IntoIterator<Item = usize>,
        mut edges: Vec<(usize, usize, u64)>,
        provenance: Provenance,
    ) -> Self {
        let nodes: Vec<usize> = nodes.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        edges.sort_unstable();
        debug_assert!(edges
            .iter()
            .all(|&(a, b, w)| a < b && parent.weight(a, b) == w && nodes.binary_search(&a).is_ok()
                && nodes.binary_search(&b).is_ok()));
        Subnetwork {
            parent,
            nodes,
            edges,
            provenance,
        }
    }

    /// Subnetwork on `nodes` with every parent edge among them that passes `keep`.
    fn induced(
        parent: &'a CoauthNetwork,
        nodes: BTreeSet<usize>,
        provenance: Provenance,
        keep: impl Fn(usize, usize, u64) -> bool,
    ) -> Self {
        let edges = parent
            .edges()
            .filter(|&(a, b, w)| nodes.contains(&a) && nodes.contains(&b) && keep(a, b, w))
            .collect();
        Self::new(parent, nodes, edges, provenance)
    }

    /// The whole parent network.
    pub fn full(parent: &'a CoauthNetwork) -> Self {
        Self::new(parent, 0..parent.n_nodes(), parent.edges().collect(), Provenance::ExplicitList)
    }

    pub fn parent(&self) -> &'a CoauthNetwork {
        self.parent
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    pub fn country_names(&self) -> Vec<&str> {
        self.nodes
            .iter()
            .map(|&i| self.parent.node(i).country.as_str())
            .collect()
    }

    /// Degree of each retained node inside the subnetwork, by parent index.
    pub fn degrees(&self) -> BTreeMap<usize, usize> {
        let mut deg: BTreeMap<usize, usize> = self.nodes.iter().map(|&n| (n, 0)).collect();
        for &(a, b, _) in &self.edges {
            *deg.get_mut(&a).unwrap() += 1;
            *deg.get_mut(&b).unwrap() += 1;
        }
        deg
    }

    /// Retained nodes without any retained edge.
    pub fn isolated_nodes(&self) -> Vec<usize> {
        self.degrees()
            .into_iter()
            .filter(|&(_, d)| d == 0)
            .map(|(n, _)| n)
            .collect()
    }
}

/// Keeps nodes whose fractional paper count passes `min_node_fractional`, then
/// edges among them whose weight passes `min_edge_weight`. Isolated survivors
/// stay in the node set.
pub fn threshold_network<'a>(
    net: &'a CoauthNetwork,
    min_node_fractional: &BigRational,
    min_edge_weight: u64,
    comparator: Comparator,
) -> Subnetwork<'a> {
    let nodes = (0..net.n_nodes())
        .filter(|&i| comparator.passes(&net.node(i).fractional_papers, min_node_fractional))
        .collect();
    Subnetwork::induced(net, nodes, Provenance::Threshold, |_, _, w| {
        comparator.passes(&w, &min_edge_weight)
    })
}

/// Restricts to edges with weight `>= min_edge_weight`, peels the k-core and
/// returns its largest connected component (ties go to the component holding
/// the lowest node index).
pub fn extract_core(net: &CoauthNetwork, min_edge_weight: u64, k: usize) -> Subnetwork<'_> {
    let n = net.n_nodes();
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            net.neighbors(i)
                .iter()
                .filter(|&&(_, w)| w >= min_edge_weight)
                .map(|&(j, _)| j)
                .collect()
        })
        .collect();

    let mut degree: Vec<usize> = adjacency.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| degree[i] < k).collect();
    for &i in &queue {
        removed[i] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in &adjacency[v] {
            if !removed[u] {
                degree[u] -= 1;
                if degree[u] < k {
                    removed[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    let mut component = vec![usize::MAX; n];
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        if removed[start] || component[start] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        component[start] = start;
        let mut head = 0;
        while head < members.len() {
            let v = members[head];
            head += 1;
            for &u in &adjacency[v] {
                if !removed[u] && component[u] == usize::MAX {
                    component[u] = start;
                    members.push(u);
                }
            }
        }
        if members.len() > best.len() {
            best = members;
        }
    }
    let nodes: BTreeSet<usize> = best.into_iter().collect();
    Subnetwork::induced(net, nodes, Provenance::Core, |_, _, w| w >= min_edge_weight)
}

/// The focus, its neighbors over edges `>= min_edge_weight`, the focus ties,
/// and optionally the qualifying ties among the neighbors.
pub fn ego_network<'a>(
    net: &'a CoauthNetwork,
    focus: &str,
    min_edge_weight: u64,
    include_alter_ties: bool,
) -> Result<Subnetwork<'a>> {
    let f = net
        .index_of(focus)
        .ok_or_else(|| Error::UnknownCountry(focus.to_string()))?;
    let mut nodes = BTreeSet::from([f]);
    nodes.extend(
        net.neighbors(f)
            .iter()
            .filter(|&&(_, w)| w >= min_edge_weight)
            .map(|&(j, _)| j),
    );
    Ok(Subnetwork::induced(net, nodes, Provenance::Ego, |a, b, w| {
        w >= min_edge_weight && (a == f || b == f || include_alter_ties)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ListMode {
    #[default]
    Include,
    Exclude,
}

/// Induced subgraph on the listed countries (or on everything else). Names
/// absent from the network are skipped and returned as warnings.
pub fn subnetwork_by_list<'a, S: AsRef<str>>(
    net: &'a CoauthNetwork,
    countries: &[S],
    mode: ListMode,
) -> Result<(Subnetwork<'a>, Vec<String>)> {
    if countries.is_empty() {
        return Err(Error::InvalidArgument("country list is empty".into()));
    }
    let mut listed = BTreeSet::new();
    let mut warnings = Vec::new();
    for c in countries {
        match net.index_of(c.as_ref()) {
            Some(i) => {
                listed.insert(i);
            }
            None => warnings.push(format!("country `{}` is not in the network; skipped", c.as_ref())),
        }
    }
    let nodes = match mode {
        ListMode::Include => listed,
        ListMode::Exclude => (0..net.n_nodes()).filter(|i| !listed.contains(i)).collect(),
    };
    Ok((Subnetwork::induced(net, nodes, Provenance::ExplicitList, |_, _, _| true), warnings))
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct NetworkStats {
    pub n_nodes: u64,
    pub n_edges: u64,
    pub possible_links: u64,
    pub parent_nodes: u64,
    pub parent_nonzero_links: u64,
    pub parent_possible_links: u64,
    pub nodes_touched: u64,
    pub n_isolated: u64,
    /// Degree (inside the subnetwork) to number of nodes.
    pub degree_histogram: BTreeMap<u64, u64>,
}

pub fn possible_links(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn network_stats(sub: &Subnetwork<'_>) -> NetworkStats {
    let degrees = sub.degrees();
    let mut degree_histogram = BTreeMap::new();
    for &d in degrees.values() {
        *degree_histogram.entry(d as u64).or_insert(0) += 1;
    }
    let n_isolated = degrees.values().filter(|&&d| d == 0).count() as u64;
    let n_nodes = sub.n_nodes() as u64;
    NetworkStats {
        n_nodes,
        n_edges: sub.n_edges() as u64,
        possible_links: possible_links(n_nodes),
        parent_nodes: sub.parent().n_nodes() as u64,
        parent_nonzero_links: sub.parent().n_edges() as u64,
        parent_possible_links: possible_links(sub.parent().n_nodes() as u64),
        nodes_touched: n_nodes - n_isolated,
        n_isolated,
        degree_histogram,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Country;
    use crate::network::NetworkNode;

    fn node(c: &str, frac: i64) -> NetworkNode {
        NetworkNode {
            country: Country::from(c),
            integer_papers: frac as u64,
            fractional_papers: BigRational::from_integer(frac.into()),
            degree: 0,
        }
    }

    fn graph(names: &[&str], edges: &[(&str, &str, u64)]) -> CoauthNetwork {
        CoauthNetwork::from_parts(
            names.iter().map(|n| node(n, 1)).collect(),
            edges.iter().map(|&(a, b, w)| (a.into(), b.into(), w)),
        )
        .unwrap()
    }

    #[test]
    fn zero_thresholds_are_identity() {
        let g = graph(&["A", "B", "C"], &[("A", "B", 1), ("B", "C", 2)]);
        let zero = BigRational::from_integer(0.into());
        let sub = threshold_network(&g, &zero, 0, Comparator::Ge);
        assert_eq!(sub.nodes(), &[0, 1, 2]);
        assert_eq!(sub.n_edges(), 2);
    }

    #[test]
    fn cyprus_below_node_threshold() {
        let g = CoauthNetwork::from_parts(vec![node("CYPRUS", 406), node("GREECE", 9000)], [])
            .unwrap();
        let sub = threshold_network(&g, &BigRational::from_integer(500.into()), 500, Comparator::Ge);
        assert_eq!(sub.country_names(), vec!["GREECE"]);
        assert_eq!(sub.isolated_nodes(), vec![1]);
    }

    #[test]
    fn comparator_boundary() {
        let g = graph(&["A", "B"], &[("A", "B", 500)]);
        let zero = BigRational::from_integer(0.into());
        assert_eq!(threshold_network(&g, &zero, 500, Comparator::Ge).n_edges(), 1);
        assert_eq!(threshold_network(&g, &zero, 500, Comparator::Gt).n_edges(), 0);
    }

    #[test]
    fn triangle_two_core() {
        let g = graph(&["A", "B", "C"], &[("A", "B", 1), ("B", "C", 1), ("A", "C", 1)]);
        let core = extract_core(&g, 1, 2);
        assert_eq!(core.n_nodes(), 3);
        assert_eq!(core.n_edges(), 3);
    }

    #[test]
    fn path_has_empty_two_core() {
        let g = graph(&["A", "B", "C"], &[("A", "B", 1), ("B", "C", 1)]);
        let core = extract_core(&g, 1, 2);
        assert!(core.is_empty());
        assert_eq!(network_stats(&core).n_nodes, 0);
    }

    #[test]
    fn one_core_is_largest_component() {
        let g = graph(
            &["A", "B", "C", "D", "E"],
            &[("A", "B", 5), ("C", "D", 5), ("D", "E", 5), ("A", "C", 1)],
        );
        let core = extract_core(&g, 2, 1);
        assert_eq!(core.country_names(), vec!["C", "D", "E"]);
        let whole = extract_core(&g, 1, 1);
        assert_eq!(whole.n_nodes(), 5);
    }

    #[test]
    fn ego_of_isolated_node() {
        let g = graph(&["A", "B", "C"], &[("B", "C", 1)]);
        let ego = ego_network(&g, "A", 1, true).unwrap();
        assert_eq!(ego.nodes(), &[0]);
        assert_eq!(ego.n_edges(), 0);
    }

    #[test]
    fn ego_of_star_center() {
        let g = graph(&["A", "B", "C", "D"], &[("A", "B", 1), ("A", "C", 1), ("A", "D", 1)]);
        let ego = ego_network(&g, "A", 1, false).unwrap();
        assert_eq!(ego.n_nodes(), 4);
        assert_eq!(ego.n_edges(), 3);
    }

    #[test]
    fn ego_alter_ties() {
        let g = graph(&["A", "B", "C"], &[("A", "B", 1), ("A", "C", 1), ("B", "C", 1)]);
        assert_eq!(ego_network(&g, "A", 1, false).unwrap().n_edges(), 2);
        assert_eq!(ego_network(&g, "A", 1, true).unwrap().n_edges(), 3);
        assert!(matches!(ego_network(&g, "Z", 1, true), Err(Error::UnknownCountry(c)) if c == "Z"));
    }

    #[test]
    fn exclusion_list() {
        let names: Vec<String> = (0..190).map(|i| format!("C{i:03}")).collect();
        let mut all: Vec<&str> = names.iter().map(String::as_str).collect();
        all.extend(["KOSOVO", "GIBRALTAR", "NETHERLANDS ANTILLES"]);
        let g = graph(&all, &[("KOSOVO", "C000", 1)]);
        assert_eq!(g.n_nodes(), 193);
        let (sub, warnings) =
            subnetwork_by_list(&g, &["KOSOVO", "GIBRALTAR", "NETHERLANDS ANTILLES"], ListMode::Exclude)
                .unwrap();
        assert_eq!(sub.n_nodes(), 190);
        assert_eq!(sub.n_edges(), 0);
        assert!(warnings.is_empty());
    }

    #[test]
    fn inclusion_of_everything_and_unknowns() {
        let g = graph(&["A", "B"], &[("A", "B", 3)]);
        let (sub, warnings) = subnetwork_by_list(&g, &["A", "B", "Q"], ListMode::Include).unwrap();
        assert_eq!(sub, Subnetwork::full(&g));
        assert_eq!(warnings.len(), 1);
        let empty: [&str; 0] = [];
        assert!(subnetwork_by_list(&g, &empty, ListMode::Include).is_err());
    }

    #[test]
    fn possible_links_of_201() {
        assert_eq!(possible_links(201), 20_100);
        assert_eq!(possible_links(0), 0);
        assert_eq!(possible_links(1), 0);
    }

    #[test]
    fn empty_network_stats_are_zero() {
        let g = CoauthNetwork::from_parts(vec![], []).unwrap();
        assert_eq!(network_stats(&Subnetwork::full(&g)), NetworkStats::default());
    }
}
