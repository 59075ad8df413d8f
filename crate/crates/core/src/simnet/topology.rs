use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ReplicaId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopologyKind {
    Mesh,
    Tree,
    Custom,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::Mesh => "mesh",
            TopologyKind::Tree => "tree",
            TopologyKind::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("mesh needs an even degree smaller than the node count (n={n}, degree={degree})")]
    BadMesh { n: usize, degree: usize },
    #[error("tree size must be 2^h - 1 with h >= 2, got {0}")]
    BadTree(usize),
    #[error("edge ({0}, {1}) is out of range or a self-loop")]
    BadEdge(usize, usize),
    #[error("topology is not connected")]
    Disconnected,
}

/// Undirected graph over replicas `0..n`, adjacency lists sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    kind: TopologyKind,
    adj: Vec<Vec<usize>>,
}

impl Topology {
    /// Circulant graph: node `k` is adjacent to `k ± 1, …, k ± degree/2`
    /// (mod n). With `n ≤ degree + 1` the offsets saturate into a complete
    /// graph.
    pub fn mesh(n: usize, degree: usize) -> Result<Topology, TopologyError> {
        if degree == 0 || !degree.is_multiple_of(2) || n <= degree {
            return Err(TopologyError::BadMesh { n, degree });
        }
        let mut edges = Vec::new();
        for k in 0..n {
            for off in 1..=degree / 2 {
                edges.push((k, (k + off) % n));
            }
        }
        Self::build(TopologyKind::Mesh, n, edges)
    }

    /// Complete binary tree in heap order: node `k` has children `2k+1` and
    /// `2k+2`.
    pub fn tree(n: usize) -> Result<Topology, TopologyError> {
        if n < 3 || !(n + 1).is_power_of_two() {
            return Err(TopologyError::BadTree(n));
        }
        let edges = (1..n).map(|k| ((k - 1) / 2, k)).collect();
        Self::build(TopologyKind::Tree, n, edges)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Topology, TopologyError> {
        Self::build(TopologyKind::Custom, n, edges.to_vec())
    }

    fn build(
        kind: TopologyKind,
        n: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Topology, TopologyError> {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(TopologyError::BadEdge(a, b));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let t = Topology { kind, adj };
        if !t.is_connected() {
            return Err(TopologyError::Disconnected);
        }
        Ok(t)
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, k: usize) -> &[usize] {
        &self.adj[k]
    }

    pub fn neighbor_ids(&self, k: usize) -> Vec<ReplicaId> {
        self.adj[k].iter().map(|&j| ReplicaId(j as u32)).collect()
    }

    pub fn degree(&self, k: usize) -> usize {
        self.adj[k].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("visited");
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.distances(0).iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> usize {
        (0..self.len())
            .flat_map(|v| self.distances(v).into_iter().flatten())
            .max()
            .unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.len()
    }

    /// Length of the shortest cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.len() {
            let mut dist = vec![usize::MAX; self.len()];
            let mut parent = vec![usize::MAX; self.len()];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}
