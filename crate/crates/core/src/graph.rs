//! Directed multigraphs with stable edge identities.
//!
//! Edges are never renumbered: deleting an edge only clears its alive flag, so
//! an edge ID handed out once keeps naming the same edge for the lifetime of
//! the graph and of every copy derived from it. Cuts, fault sets and
//! certificates are all expressed in terms of these IDs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Edge { tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

macro_rules! id_set {
    ($(#[$meta:meta])* $name:ident, $id:ty) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(BTreeSet<$id>);

        impl $name {
            pub fn new() -> Self {
                Self(BTreeSet::new())
            }

            pub fn singleton(id: $id) -> Self {
                Self(BTreeSet::from([id]))
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn contains(&self, id: $id) -> bool {
                self.0.contains(&id)
            }

            pub fn insert(&mut self, id: $id) -> bool {
                self.0.insert(id)
            }

            pub fn remove(&mut self, id: $id) -> bool {
                self.0.remove(&id)
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.0.is_subset(&other.0)
            }

            pub fn is_disjoint(&self, other: &Self) -> bool {
                self.0.is_disjoint(&other.0)
            }

            pub fn first(&self) -> Option<$id> {
                self.0.first().copied()
            }

            /// Members in ascending order.
            pub fn iter(&self) -> impl Iterator<Item = $id> + '_ {
                self.0.iter().copied()
            }

            pub fn union(&self, other: &Self) -> Self {
                Self(self.0.union(&other.0).copied().collect())
            }

            pub fn to_vec(&self) -> Vec<$id> {
                self.0.iter().copied().collect()
            }
        }

        impl FromIterator<$id> for $name {
            fn from_iter<I: IntoIterator<Item = $id>>(iter: I) -> Self {
                Self(iter.into_iter().collect())
            }
        }

        impl<const N: usize> From<[$id; N]> for $name {
            fn from(ids: [$id; N]) -> Self {
                Self(BTreeSet::from(ids))
            }
        }

        impl Extend<$id> for $name {
            fn extend<I: IntoIterator<Item = $id>>(&mut self, iter: I) {
                self.0.extend(iter)
            }
        }

        impl<'a> IntoIterator for &'a $name {
            type Item = $id;
            type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, $id>>;

            fn into_iter(self) -> Self::IntoIter {
                self.0.iter().copied()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (i, id) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{id}")?;
                }
                write!(f, "}}")
            }
        }
    };
}

id_set!(
    /// A set of edge IDs (cuts, fault sets, separator unions).
    EdgeSet,
    EdgeId
);
id_set!(
    /// A set of vertex IDs (sources, sinks, reachability sets).
    VertexSet,
    VertexId
);

impl VertexSet {
    pub fn from_marks(marks: &[bool]) -> Self {
        marks
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
            .collect()
    }

    pub fn to_marks(&self, vertex_count: usize) -> Vec<bool> {
        let mut marks = vec![false; vertex_count];
        for v in self.iter().filter(|&v| v < vertex_count) {
            marks[v] = true;
        }
        marks
    }
}

/// A directed multigraph with logical edge deletion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    alive: Vec<bool>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
    in_degree: Vec<usize>,
    out_degree: Vec<usize>,
    alive_count: usize,
}

impl Digraph {
    pub fn new(vertex_count: usize) -> Self {
        Digraph {
            vertex_count,
            edges: Vec::new(),
            alive: Vec::new(),
            out_adj: vec![Vec::new(); vertex_count],
            in_adj: vec![Vec::new(); vertex_count],
            in_degree: vec![0; vertex_count],
            out_degree: vec![0; vertex_count],
            alive_count: 0,
        }
    }

    /// Builds a graph whose edge IDs are the positions in `edges`.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Digraph::new(vertex_count);
        for &(tail, head) in edges {
            g.add_edge(tail, head)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, tail: VertexId, head: VertexId) -> Result<EdgeId> {
        self.check_vertex(tail)?;
        self.check_vertex(head)?;
        let id = self.edges.len();
        self.edges.push(Edge { tail, head });
        self.alive.push(true);
        self.out_adj[tail].push(id);
        self.in_adj[head].push(id);
        self.out_degree[tail] += 1;
        self.in_degree[head] += 1;
        self.alive_count += 1;
        Ok(id)
    }

    /// Reserves an edge ID that was never present (or is unknown), e.g. a
    /// gap in a certificate file. The slot is dead from the start.
    pub(crate) fn add_dead_slot(&mut self) -> EdgeId {
        let id = self.edges.len();
        self.edges.push(Edge { tail: 0, head: 0 });
        self.alive.push(false);
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// One past the largest edge ID ever issued, dead or alive.
    pub fn edge_id_bound(&self) -> usize {
        self.edges.len()
    }

    pub fn alive_edge_count(&self) -> usize {
        self.alive_count
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v < self.vertex_count
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    pub fn check_vertices(&self, set: &VertexSet) -> Result<()> {
        set.iter().try_for_each(|v| self.check_vertex(v))
    }

    /// Endpoints of an edge, whether or not it is still alive.
    pub fn edge(&self, id: EdgeId) -> Option<Edge> {
        self.edges.get(id).copied()
    }

    pub fn is_alive(&self, id: EdgeId) -> bool {
        self.alive.get(id).copied().unwrap_or(false)
    }

    /// Marks an edge deleted. Returns false if it was already dead or unknown.
    pub fn delete_edge(&mut self, id: EdgeId) -> bool {
        if !self.is_alive(id) {
            return false;
        }
        let Edge { tail, head } = self.edges[id];
        self.alive[id] = false;
        self.out_degree[tail] -= 1;
        self.in_degree[head] -= 1;
        self.alive_count -= 1;
        true
    }

    /// A copy of this graph with every edge in `removed` deleted.
    pub fn without_edges(&self, removed: &EdgeSet) -> Digraph {
        let mut g = self.clone();
        for e in removed {
            g.delete_edge(e);
        }
        g
    }

    pub fn alive_edges(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(id, _)| self.alive[*id])
            .map(|(id, e)| (id, *e))
    }

    pub fn alive_edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.alive_edges().map(|(id, _)| id)
    }

    /// Alive out-edges of `v`, in ascending ID order.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.out_adj[v]
            .iter()
            .copied()
            .filter(move |&e| self.alive[e])
    }

    /// Alive in-edges of `v`, in ascending ID order.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.in_adj[v]
            .iter()
            .copied()
            .filter(move |&e| self.alive[e])
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_degree[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_degree[v]
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_degree.iter().copied().max().unwrap_or(0)
    }

    pub fn has_self_loops(&self) -> bool {
        self.alive_edges().any(|(_, e)| e.is_loop())
    }

    /// δ⁺(R): alive edges leaving `set`.
    pub fn out_cut(&self, set: &VertexSet) -> EdgeSet {
        let marks = set.to_marks(self.vertex_count);
        self.out_cut_marks(&marks)
    }

    pub(crate) fn out_cut_marks(&self, inside: &[bool]) -> EdgeSet {
        self.alive_edges()
            .filter(|(_, e)| inside[e.tail] && !inside[e.head])
            .map(|(id, _)| id)
            .collect()
    }

    /// δ⁻(R): alive edges entering `set`.
    pub fn in_cut(&self, set: &VertexSet) -> EdgeSet {
        let marks = set.to_marks(self.vertex_count);
        self.alive_edges()
            .filter(|(_, e)| !marks[e.tail] && marks[e.head])
            .map(|(id, _)| id)
            .collect()
    }

    /// Whether `self` uses the same vertex set and only alive edges of `host`
    /// (with identical endpoints under the same IDs).
    pub fn is_spanning_subgraph_of(&self, host: &Digraph) -> bool {
        self.vertex_count == host.vertex_count
            && self
                .alive_edges()
                .all(|(id, e)| host.is_alive(id) && host.edges[id] == e)
    }

    /// BFS marks of vertices reachable from `sources` over alive edges.
    pub(crate) fn reach_marks(&self, sources: impl IntoIterator<Item = VertexId>) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::new();
        for s in sources {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for e in self.out_edges(u) {
                let w = self.edges[e].head;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Strips self-loops. They lie on no simple path, so reachability and every
/// minimal cut are unaffected. The remaining edges keep their IDs; the
/// returned list names the loops that were removed.
pub fn normalize(raw: &Digraph) -> (Digraph, Vec<EdgeId>) {
    let mut g = raw.clone();
    let loops: Vec<EdgeId> = raw
        .alive_edges()
        .filter(|(_, e)| e.is_loop())
        .map(|(id, _)| id)
        .collect();
    for &e in &loops {
        g.delete_edge(e);
    }
    (g, loops)
}

/// Vertices reachable from some member of `sources` over alive edges.
pub fn reachable_set(g: &Digraph, sources: &VertexSet) -> Result<VertexSet> {
    if sources.is_empty() {
        return Err(Error::EmptyVertexSet("source"));
    }
    g.check_vertices(sources)?;
    Ok(VertexSet::from_marks(&g.reach_marks(sources.iter())))
}
