//! Country co-authorship network, cosine normalization and subnetworks.

mod similarity;
mod subnetwork;

pub use similarity::{cooccurrence, cosine_similarity, CellMode, CooccurrenceMatrix, SimilarityMatrix};
pub use subnetwork::{
    ego_network, extract_core, network_stats, subnetwork_by_list, threshold_network, Comparator,
    ListMode, NetworkStats, Provenance, Subnetwork,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use rayon::prelude::*;

use crate::corpus::Country;
use crate::counting::{CountScheme, CountVector, IncidenceMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkNode {
    pub country: Country,
    pub integer_papers: u64,
    pub fractional_papers: BigRational,
    pub degree: usize,
}

/// Undirected country graph. Edge `(a, b)` with `a < b` (node indices) carries
/// the number of documents in which both countries appear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoauthNetwork {
    nodes: Vec<NetworkNode>,
    edges: BTreeMap<(usize, usize), u64>,
    adjacency: Vec<Vec<(usize, u64)>>,
}

impl CoauthNetwork {
    /// Assembles a network from nodes (sorted by country on the way in) and
    /// weighted edges keyed by country. Degrees are recomputed.
    pub fn from_parts(
        nodes: Vec<NetworkNode>,
        edges: impl IntoIterator<Item = (Country, Country, u64)>,
    ) -> Result<Self> {
        let mut nodes = nodes;
        nodes.sort_by(|a, b| a.country.cmp(&b.country));
        for pair in nodes.windows(2) {
            if pair[0].country == pair[1].country {
                return Err(Error::InvalidArgument(format!("duplicate node `{}`", pair[0].country)));
            }
        }
        let index: HashMap<&str, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.country.as_str(), i))
            .collect();
        let mut edge_map = BTreeMap::new();
        for (a, b, w) in edges {
            let ia = *index.get(a.as_str()).ok_or_else(|| Error::UnknownCountry(a.to_string()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| Error::UnknownCountry(b.to_string()))?;
            if ia == ib {
                return Err(Error::InvalidArgument(format!("self-loop on `{a}`")));
            }
            if w == 0 {
                continue;
            }
            edge_map.insert((ia.min(ib), ia.max(ib)), w);
        }
        Ok(Self::assemble(nodes, edge_map))
    }

    fn assemble(mut nodes: Vec<NetworkNode>, edges: BTreeMap<(usize, usize), u64>) -> Self {
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (&(a, b), &w) in &edges {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        for (node, adj) in nodes.iter_mut().zip(&adjacency) {
            node.degree = adj.len();
        }
        CoauthNetwork {
            nodes,
            edges,
            adjacency,
        }
    }

    pub fn nodes(&self) -> &[NetworkNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NetworkNode {
        &self.nodes[i]
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().map(|(&(a, b), &w)| (a, b, w))
    }

    pub fn weight(&self, a: usize, b: usize) -> u64 {
        self.edges.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, u64)] {
        &self.adjacency[i]
    }

    pub fn index_of(&self, country: &str) -> Option<usize> {
        self.nodes
            .binary_search_by(|n| n.country.as_str().cmp(country))
            .ok()
    }
}

/// Each document adds exactly one to the edge of every unordered pair of
/// distinct participating countries, whatever their address multiplicities.
pub fn build_coauth_network(
    m: &IncidenceMatrix,
    counts_int: &CountVector,
    counts_frac: &CountVector,
) -> Result<CoauthNetwork> {
    if counts_int.scheme == CountScheme::Fractional || counts_frac.scheme != CountScheme::Fractional {
        return Err(Error::InvalidArgument(
            "expected a whole-count vector and a fractional-count vector".into(),
        ));
    }
    let universe: BTreeSet<&Country> = m.countries().iter().collect();
    for (label, v) in [("integer", counts_int), ("fractional", counts_frac)] {
        let keys: BTreeSet<&Country> = v.values.keys().collect();
        if keys != universe {
            let missing: Vec<_> = universe.difference(&keys).map(|c| c.as_str()).collect();
            let extra: Vec<_> = keys.difference(&universe).map(|c| c.as_str()).collect();
            return Err(Error::CountryMismatch(format!(
                "{label} counts lack [{}] and add [{}]",
                missing.join(", "),
                extra.join(", ")
            )));
        }
    }

    let edges: HashMap<(usize, usize), u64> = m
        .rows()
        .collect::<Vec<_>>()
        .par_iter()
        .fold(HashMap::new, |mut acc, row| {
            for (i, &(a, _)) in row.iter().enumerate() {
                for &(b, _) in &row[i + 1..] {
                    *acc.entry((a, b)).or_insert(0) += 1;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });

    let nodes = m
        .countries()
        .iter()
        .map(|c| NetworkNode {
            country: c.clone(),
            integer_papers: counts_int
                .get_whole(c.as_str())
                .expect("universe checked above"),
            fractional_papers: counts_frac.values[c].clone(),
            degree: 0,
        })
        .collect();
    Ok(CoauthNetwork::assemble(nodes, edges.into_iter().collect()))
}
