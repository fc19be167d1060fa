//! Budgeted unit-capacity max-flow.
//!
//! Ford–Fulkerson with BFS augmenting paths over a residual graph in which
//! every alive edge carries capacity one. The reverse arc of edge `e` is
//! addressed by the same ID, so no auxiliary arc table is built. The search
//! stops after `budget + 1` augmentations: callers only care about cuts of
//! size at most `budget`, and one extra path proves the cut is too large.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Digraph, EdgeId, VertexId, VertexSet};

/// The two residual sides of a maximum flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualSides {
    /// Vertices reachable from the sources in the final residual graph.
    pub reachable_from_sources: VertexSet,
    /// Vertices that can still reach a sink in the final residual graph.
    pub coreachable_to_sinks: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedFlow {
    /// `min(max flow, budget + 1)`.
    pub value: usize,
    /// Present iff the flow is maximum, i.e. `value <= budget`.
    pub residual: Option<ResidualSides>,
}

impl BoundedFlow {
    pub fn is_overflow(&self) -> bool {
        self.residual.is_none()
    }
}

#[derive(Clone, Copy)]
enum Arc {
    Forward(EdgeId),
    Backward(EdgeId),
}

pub(crate) fn check_terminals(g: &Digraph, sources: &VertexSet, sinks: &VertexSet) -> Result<()> {
    if sources.is_empty() {
        return Err(Error::EmptyVertexSet("source"));
    }
    if sinks.is_empty() {
        return Err(Error::EmptyVertexSet("sink"));
    }
    g.check_vertices(sources)?;
    g.check_vertices(sinks)?;
    if let Some(v) = sources.iter().find(|&v| sinks.contains(v)) {
        return Err(Error::Overlap(v));
    }
    Ok(())
}

/// Unit-capacity flow state on a fixed graph.
pub(crate) struct UnitFlow<'g> {
    g: &'g Digraph,
    flow: Vec<bool>,
    is_source: Vec<bool>,
    is_sink: Vec<bool>,
    value: usize,
}

impl<'g> UnitFlow<'g> {
    pub(crate) fn new(g: &'g Digraph, sources: &[bool], sinks: &[bool]) -> Self {
        UnitFlow {
            g,
            flow: vec![false; g.edge_id_bound()],
            is_source: sources.to_vec(),
            is_sink: sinks.to_vec(),
            value: 0,
        }
    }

    /// Runs augmentations until none remains or `limit` is reached.
    pub(crate) fn run(&mut self, limit: usize) -> usize {
        while self.value < limit && self.augment() {
            self.value += 1;
        }
        self.value
    }

    fn augment(&mut self) -> bool {
        let n = self.g.vertex_count();
        let mut parent: Vec<Option<Arc>> = vec![None; n];
        let mut seen = self.is_source.clone();
        let mut queue: VecDeque<VertexId> = (0..n).filter(|&v| self.is_source[v]).collect();
        let mut hit = None;

        'bfs: while let Some(u) = queue.pop_front() {
            for e in self.g.out_edges(u) {
                if self.flow[e] {
                    continue;
                }
                let w = self.g.edge(e).expect("adjacency edge").head;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(Arc::Forward(e));
                    if self.is_sink[w] {
                        hit = Some(w);
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
            for e in self.g.in_edges(u) {
                if !self.flow[e] {
                    continue;
                }
                let w = self.g.edge(e).expect("adjacency edge").tail;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(Arc::Backward(e));
                    if self.is_sink[w] {
                        hit = Some(w);
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }

        let Some(mut v) = hit else {
            return false;
        };
        while let Some(arc) = parent[v] {
            match arc {
                Arc::Forward(e) => {
                    self.flow[e] = true;
                    v = self.g.edge(e).expect("path edge").tail;
                }
                Arc::Backward(e) => {
                    self.flow[e] = false;
                    v = self.g.edge(e).expect("path edge").head;
                }
            }
        }
        true
    }

    /// Vertices reachable from the sources in the residual graph.
    pub(crate) fn source_side(&self) -> Vec<bool> {
        let mut seen = self.is_source.clone();
        let mut queue: VecDeque<VertexId> =
            (0..self.g.vertex_count()).filter(|&v| seen[v]).collect();
        while let Some(u) = queue.pop_front() {
            let forward = self
                .g
                .out_edges(u)
                .filter(|&e| !self.flow[e])
                .map(|e| self.g.edge(e).expect("edge").head);
            let backward = self
                .g
                .in_edges(u)
                .filter(|&e| self.flow[e])
                .map(|e| self.g.edge(e).expect("edge").tail);
            let next: Vec<VertexId> = forward.chain(backward).collect();
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Vertices from which a sink is reachable in the residual graph.
    pub(crate) fn sink_side(&self) -> Vec<bool> {
        let mut seen = self.is_sink.clone();
        let mut queue: VecDeque<VertexId> =
            (0..self.g.vertex_count()).filter(|&v| seen[v]).collect();
        while let Some(u) = queue.pop_front() {
            // Residual arc x -> u exists for an unsaturated edge (x,u) or a
            // saturated edge (u,x).
            let via_forward = self
                .g
                .in_edges(u)
                .filter(|&e| !self.flow[e])
                .map(|e| self.g.edge(e).expect("edge").tail);
            let via_backward = self
                .g
                .out_edges(u)
                .filter(|&e| self.flow[e])
                .map(|e| self.g.edge(e).expect("edge").head);
            let next: Vec<VertexId> = via_forward.chain(via_backward).collect();
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Max-flow from `sources` to `sinks`, giving up once it exceeds `budget`.
pub fn max_flow_bounded(
    g: &Digraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    budget: usize,
) -> Result<BoundedFlow> {
    check_terminals(g, sources, sinks)?;
    let n = g.vertex_count();
    let (src, snk) = (sources.to_marks(n), sinks.to_marks(n));
    let mut flow = UnitFlow::new(g, &src, &snk);
    let value = flow.run(budget.saturating_add(1));
    let residual = (value <= budget).then(|| ResidualSides {
        reachable_from_sources: VertexSet::from_marks(&flow.source_side()),
        coreachable_to_sinks: VertexSet::from_marks(&flow.sink_side()),
    });
    Ok(BoundedFlow { value, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Digraph {
        Digraph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn st(s: usize, t: usize) -> (VertexSet, VertexSet) {
        (VertexSet::singleton(s), VertexSet::singleton(t))
    }

    #[test]
    fn diamond_has_flow_two() {
        let (s, t) = st(0, 3);
        let f = max_flow_bounded(&diamond(), &s, &t, 3).unwrap();
        assert_eq!(f.value, 2);
        let sides = f.residual.unwrap();
        assert_eq!(sides.reachable_from_sources, VertexSet::singleton(0));
        assert_eq!(sides.coreachable_to_sinks, VertexSet::singleton(3));
    }

    #[test]
    fn path_and_disconnected() {
        let path = Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let (s, t) = st(0, 2);
        assert_eq!(max_flow_bounded(&path, &s, &t, 3).unwrap().value, 1);
        let empty = Digraph::new(3);
        let f = max_flow_bounded(&empty, &s, &t, 3).unwrap();
        assert_eq!(f.value, 0);
        assert_eq!(
            f.residual.unwrap().reachable_from_sources,
            VertexSet::singleton(0)
        );
    }

    #[test]
    fn overflow_is_flagged() {
        let (s, t) = st(0, 3);
        let f = max_flow_bounded(&diamond(), &s, &t, 1).unwrap();
        assert_eq!(f.value, 2);
        assert!(f.is_overflow());
        let f = max_flow_bounded(&diamond(), &s, &t, 0).unwrap();
        assert_eq!(f.value, 1);
        assert!(f.is_overflow());
    }

    #[test]
    fn parallel_edges_count_separately() {
        let g = Digraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let (s, t) = st(0, 1);
        assert_eq!(max_flow_bounded(&g, &s, &t, 10).unwrap().value, 3);
    }

    #[test]
    fn needs_reverse_arcs() {
        // The BFS-first path 0-1-2-5 blocks both others unless flow on (1,2)
        // is cancelled.
        let g = Digraph::from_edges(6, &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 2), (1, 4), (4, 5)])
            .unwrap();
        let (s, t) = st(0, 5);
        assert_eq!(max_flow_bounded(&g, &s, &t, 10).unwrap().value, 2);
    }

    #[test]
    fn terminal_errors() {
        let g = diamond();
        let s = VertexSet::from([0, 3]);
        let t = VertexSet::singleton(3);
        assert_eq!(max_flow_bounded(&g, &s, &t, 1), Err(Error::Overlap(3)));
        assert!(max_flow_bounded(&g, &VertexSet::new(), &t, 1).is_err());
        assert!(
            max_flow_bounded(&g, &VertexSet::singleton(0), &VertexSet::singleton(9), 1).is_err()
        );
    }

    #[test]
    fn multi_terminal() {
        let g = diamond();
        let s = VertexSet::from([1, 2]);
        let t = VertexSet::singleton(3);
        assert_eq!(max_flow_bounded(&g, &s, &t, 5).unwrap().value, 2);
    }
}
