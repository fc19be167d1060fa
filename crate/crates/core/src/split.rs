//! Vertex splitting: reduce vertex failures to edge failures.
//!
//! Each unprotected vertex `v` becomes a pair `v_in -> v_out` joined by a
//! split edge; in-edges land on `v_in`, out-edges leave from `v_out`. Layout:
//! `v_in` keeps the original ID `v`, `v_out` is appended after the original
//! vertices. Original edge `e` keeps ID `e`; split edges are appended after
//! the original edge IDs.

use crate::graph::{Digraph, EdgeId, EdgeSet, VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitVertex {
    pub v_in: VertexId,
    pub v_out: VertexId,
    /// `None` for protected vertices, which are not split.
    pub split_edge: Option<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMap {
    vertices: Vec<SplitVertex>,
    edge_images: Vec<EdgeId>,
    split_owner: Vec<(EdgeId, VertexId)>,
}

impl SplitMap {
    pub fn original_vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: VertexId) -> Option<SplitVertex> {
        self.vertices.get(v).copied()
    }

    /// Image of an original edge in the split graph.
    pub fn edge_image(&self, e: EdgeId) -> Option<EdgeId> {
        self.edge_images.get(e).copied()
    }

    /// Original edge behind an image edge; `None` for split edges.
    pub fn original_edge(&self, image: EdgeId) -> Option<EdgeId> {
        (image < self.edge_images.len()).then_some(image)
    }

    /// `(split edge, original vertex)` pairs in ascending vertex order.
    pub fn split_edges(&self) -> impl Iterator<Item = (EdgeId, VertexId)> + '_ {
        self.split_owner.iter().copied()
    }

    /// The split edges whose failure models the failure of `vertices`.
    /// Protected vertices have no split edge and are skipped.
    pub fn fault_edges(&self, vertices: &VertexSet) -> EdgeSet {
        vertices
            .iter()
            .filter_map(|v| self.vertex(v).and_then(|sv| sv.split_edge))
            .collect()
    }

    /// Translates a certificate of the split graph back to original terms:
    /// an original edge survives iff its image survives.
    pub fn back_map(&self, split_certificate: &Digraph, original: &Digraph) -> Digraph {
        let mut g = original.clone();
        for e in original.alive_edge_ids().collect::<Vec<_>>() {
            if !split_certificate.is_alive(self.edge_images[e]) {
                g.delete_edge(e);
            }
        }
        g
    }
}

pub fn split_vertices(g: &Digraph, protected: &VertexSet) -> (Digraph, SplitMap) {
    let n = g.vertex_count();
    let unprotected: Vec<VertexId> = (0..n).filter(|&v| !protected.contains(v)).collect();
    let mut out = Digraph::new(n + unprotected.len());

    let mut vertices: Vec<SplitVertex> = (0..n)
        .map(|v| SplitVertex {
            v_in: v,
            v_out: v,
            split_edge: None,
        })
        .collect();
    for (i, &v) in unprotected.iter().enumerate() {
        vertices[v].v_out = n + i;
    }

    let mut edge_images = Vec::with_capacity(g.edge_id_bound());
    for e in 0..g.edge_id_bound() {
        let id = if g.is_alive(e) {
            let edge = g.edge(e).expect("alive edge");
            out.add_edge(vertices[edge.tail].v_out, vertices[edge.head].v_in)
                .expect("split endpoints in range")
        } else {
            out.add_dead_slot()
        };
        debug_assert_eq!(id, e);
        edge_images.push(id);
    }

    let mut split_owner = Vec::with_capacity(unprotected.len());
    for &v in &unprotected {
        let id = out
            .add_edge(vertices[v].v_in, vertices[v].v_out)
            .expect("split endpoints in range");
        vertices[v].split_edge = Some(id);
        split_owner.push((id, v));
    }

    (
        out,
        SplitMap {
            vertices,
            edge_images,
            split_owner,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn path_split_with_protected_source() {
        let g = Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let (h, map) = split_vertices(&g, &VertexSet::singleton(0));
        assert_eq!(h.vertex_count(), 5);
        let a = map.vertex(1).unwrap();
        let t = map.vertex(2).unwrap();
        assert_eq!((a.v_in, a.v_out), (1, 3));
        assert_eq!((t.v_in, t.v_out), (2, 4));
        assert_eq!(map.split_edges().count(), 2);
        assert_eq!(h.edge(0), Some(Edge::new(0, 1)));
        assert_eq!(h.edge(1), Some(Edge::new(3, 2)));
        assert_eq!(h.edge(a.split_edge.unwrap()), Some(Edge::new(1, 3)));
        assert_eq!(h.edge(t.split_edge.unwrap()), Some(Edge::new(2, 4)));
        assert_eq!(map.vertex(0).unwrap().split_edge, None);
    }

    #[test]
    fn all_protected_is_identity() {
        let g = Digraph::new(3);
        let (h, map) = split_vertices(&g, &VertexSet::from([0, 1, 2]));
        assert_eq!(h, g);
        assert_eq!(map.split_edges().count(), 0);
    }

    #[test]
    fn dead_edges_stay_dead() {
        let mut g = Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        g.delete_edge(0);
        let (h, map) = split_vertices(&g, &VertexSet::singleton(0));
        assert!(!h.is_alive(0));
        assert_eq!(map.original_edge(1), Some(1));
        assert_eq!(map.original_edge(2), None);
        assert_eq!(map.back_map(&h, &g), g);
    }

    #[test]
    fn failing_a_diamond_vertex() {
        let g = Digraph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let (h, map) = split_vertices(&g, &VertexSet::from([0, 3]));
        let fault = map.fault_edges(&VertexSet::singleton(1));
        assert_eq!(fault.len(), 1);
        let reach = h.without_edges(&fault).reach_marks([0]);
        assert!(reach[map.vertex(3).unwrap().v_out]);
        let fault = map.fault_edges(&VertexSet::from([1, 2]));
        let reach = h.without_edges(&fault).reach_marks([0]);
        assert!(!reach[3]);
    }
}
