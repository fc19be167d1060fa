//! Fault-tolerant reachability certificates.
//!
//! A k-FTRS of `G` with source `s` is a spanning subgraph `H` such that for
//! every fault set `F` of at most `k` edges and every vertex `v`, `v` is
//! reachable from `s` in `G - F` iff it is reachable in `H - F`.
//!
//! The builder first drops every in-edge of `s`, then repeatedly picks a
//! vertex `v` whose in-degree exceeds `alpha = (k+1)·4^(k+1)`, enumerates the
//! important `(s, v)`-separators of size at most `k + 1`, and deletes one
//! in-edge of `v` that lies in none of them. Such an edge can never be the
//! last link to `v` under at most `k` other failures. Preserving `λ`
//! edge-disjoint paths under `k` faults reduces to a `(k + λ - 1)`-FTRS.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::flow::max_flow_bounded;
use crate::graph::{Digraph, EdgeId, EdgeSet, VertexId, VertexSet};
use crate::separators::{enumerate_important_with_limit, ImportantFamily, DEFAULT_BUDGET_LIMIT};
use crate::split::{split_vertices, SplitMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FaultMode {
    #[default]
    Edge,
    Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildParams {
    pub source: VertexId,
    /// Number of simultaneous faults tolerated.
    pub k: usize,
    /// Number of edge-disjoint paths preserved; 1 means plain reachability.
    pub lambda: usize,
    pub fault_mode: FaultMode,
    /// Hard cap on `k + lambda`.
    pub budget_limit: usize,
}

impl BuildParams {
    pub fn new(source: VertexId, k: usize) -> Self {
        BuildParams {
            source,
            k,
            lambda: 1,
            fault_mode: FaultMode::Edge,
            budget_limit: DEFAULT_BUDGET_LIMIT,
        }
    }

    pub fn with_lambda(mut self, lambda: usize) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_fault_mode(mut self, mode: FaultMode) -> Self {
        self.fault_mode = mode;
        self
    }

    pub fn with_budget_limit(mut self, limit: usize) -> Self {
        self.budget_limit = limit;
        self
    }

    /// Fault budget of the underlying reachability build.
    pub fn build_budget(&self) -> usize {
        self.k + self.lambda - 1
    }

    fn validate(&self) -> Result<()> {
        if self.lambda == 0 {
            return Err(Error::Input("lambda must be at least 1".into()));
        }
        let requested = self.k + self.lambda;
        if requested > self.budget_limit {
            return Err(Error::Budget {
                requested,
                limit: self.budget_limit,
            });
        }
        Ok(())
    }
}

/// In-degree threshold `(k+1)·4^(k+1)` for a build tolerating `k` faults.
pub fn alpha(k: usize) -> usize {
    let b = k.saturating_add(1);
    u32::try_from(b)
        .ok()
        .and_then(|e| 4usize.checked_pow(e))
        .and_then(|p| p.checked_mul(b))
        .unwrap_or(usize::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeletionReason {
    SourceInEdge,
    DegreeReduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Deletion {
    pub edge: EdgeId,
    pub reason: DeletionReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Separator families computed (one per degree-reduction step).
    pub iterations: usize,
    pub family_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaultSet {
    Edges(EdgeSet),
    Vertices(VertexSet),
}

impl FaultSet {
    pub fn none() -> Self {
        FaultSet::Edges(EdgeSet::new())
    }

    pub fn len(&self) -> usize {
        match self {
            FaultSet::Edges(s) => s.len(),
            FaultSet::Vertices(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FtrsResult {
    certificate: Digraph,
    split: Option<(Digraph, SplitMap)>,
    source: VertexId,
    k: usize,
    lambda: usize,
    fault_mode: FaultMode,
    alpha: usize,
    deleted: Vec<Deletion>,
    stats: BuildStats,
}

impl FtrsResult {
    /// Wraps an existing certificate (e.g. one read back from disk) so it can
    /// answer queries. Vertex mode re-splits it with the source protected.
    pub fn from_certificate(certificate: Digraph, params: &BuildParams) -> Result<Self> {
        params.validate()?;
        certificate.check_vertex(params.source)?;
        let split = (params.fault_mode == FaultMode::Vertex)
            .then(|| split_vertices(&certificate, &VertexSet::singleton(params.source)));
        Ok(FtrsResult {
            certificate,
            split,
            source: params.source,
            k: params.k,
            lambda: params.lambda,
            fault_mode: params.fault_mode,
            alpha: alpha(params.build_budget()),
            deleted: Vec::new(),
            stats: BuildStats::default(),
        })
    }

    /// The certificate in terms of the original graph's vertices and edge IDs.
    pub fn certificate(&self) -> &Digraph {
        &self.certificate
    }

    /// Vertex mode only: the certificate of the split graph and its map.
    pub fn split_certificate(&self) -> Option<(&Digraph, &SplitMap)> {
        self.split.as_ref().map(|(g, m)| (g, m))
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn fault_mode(&self) -> FaultMode {
        self.fault_mode
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Deleted edges in deletion order, as original edge IDs.
    pub fn deleted(&self) -> &[Deletion] {
        &self.deleted
    }

    pub fn stats(&self) -> &BuildStats {
        &self.stats
    }

    fn check_faults(&self, faults: &FaultSet, target: VertexId) -> Result<()> {
        self.certificate.check_vertex(target)?;
        if faults.len() > self.k {
            return Err(Error::Contract(format!(
                "{} faults exceed the certificate's tolerance k = {}",
                faults.len(),
                self.k
            )));
        }
        match (faults, self.fault_mode) {
            (FaultSet::Edges(edges), FaultMode::Edge) => {
                match edges
                    .iter()
                    .find(|&e| e >= self.certificate.edge_id_bound())
                {
                    Some(e) => Err(Error::UnknownEdge(e)),
                    None => Ok(()),
                }
            }
            (FaultSet::Vertices(vertices), FaultMode::Vertex) => {
                self.certificate.check_vertices(vertices)?;
                if vertices.contains(self.source) {
                    return Err(Error::Contract("the source cannot fail".into()));
                }
                Ok(())
            }
            (FaultSet::Edges(_), FaultMode::Vertex) => Err(Error::Input(
                "certificate was built for vertex faults but edge faults were given".into(),
            )),
            (FaultSet::Vertices(_), FaultMode::Edge) => Err(Error::Input(
                "certificate was built for edge faults but vertex faults were given".into(),
            )),
        }
    }

    /// Whether `target` is reachable from the source once `faults` fail.
    /// A failed vertex is never reachable.
    pub fn query_reachable(&self, faults: &FaultSet, target: VertexId) -> Result<bool> {
        self.check_faults(faults, target)?;
        match (faults, &self.split) {
            (FaultSet::Edges(edges), _) => {
                let h = self.certificate.without_edges(edges);
                Ok(h.reach_marks([self.source])[target])
            }
            (FaultSet::Vertices(vertices), Some((split, map))) => {
                if vertices.contains(target) {
                    return Ok(false);
                }
                let h = split.without_edges(&map.fault_edges(vertices));
                let image = map.vertex(target).expect("target checked").v_out;
                Ok(h.reach_marks([self.source])[image])
            }
            (FaultSet::Vertices(_), None) => unreachable!("fault mode checked"),
        }
    }

    /// Whether `lambda` edge-disjoint paths lead from the source to `target`
    /// once `faults` fail.
    pub fn query_connectivity(&self, faults: &FaultSet, target: VertexId) -> Result<bool> {
        self.check_faults(faults, target)?;
        if target == self.source {
            return Ok(true);
        }
        let h = match faults {
            FaultSet::Edges(edges) => self.certificate.without_edges(edges),
            FaultSet::Vertices(vertices) => {
                if vertices.contains(target) {
                    return Ok(false);
                }
                without_vertices(&self.certificate, vertices)
            }
        };
        let flow = max_flow_bounded(
            &h,
            &VertexSet::singleton(self.source),
            &VertexSet::singleton(target),
            self.lambda,
        )?;
        Ok(flow.value >= self.lambda)
    }
}

/// Removes every alive edge incident to `vertices`.
pub fn without_vertices(g: &Digraph, vertices: &VertexSet) -> Digraph {
    let incident: EdgeSet = g
        .alive_edges()
        .filter(|(_, e)| vertices.contains(e.tail) || vertices.contains(e.head))
        .map(|(id, _)| id)
        .collect();
    g.without_edges(&incident)
}

/// Picks the smallest-ID alive in-edge of `v` that lies in no member of
/// `family`.
pub fn delete_candidate(g: &Digraph, v: VertexId, family: &ImportantFamily) -> Result<EdgeId> {
    g.check_vertex(v)?;
    let covered = family.edge_union();
    g.in_edges(v)
        .find(|&e| !covered.contains(e))
        .ok_or_else(|| {
            Error::Invariant(format!(
                "vertex {v}: all {} in-edges lie in important separators",
                g.in_degree(v)
            ))
        })
}

/// Builds a k-FTRS whose vertices all have in-degree at most
/// `(k+1)·4^(k+1)`.
pub fn build_ftrs(g: &Digraph, source: VertexId, k: usize) -> Result<FtrsResult> {
    build_lambda_ftrs(g, &BuildParams::new(source, k))
}

/// Builds a `(λ, k)`-FTRS as a `(k + λ - 1)`-FTRS. In vertex mode the graph
/// is split first (source protected) and the certificate is mapped back.
pub fn build_lambda_ftrs(g: &Digraph, params: &BuildParams) -> Result<FtrsResult> {
    params.validate()?;
    let budget = params.build_budget();
    build_with(g, params, alpha(budget), true)
}

/// Runs the same deletion loop with a caller-chosen in-degree threshold.
/// Processing of a vertex stops early when every remaining in-edge is
/// covered by an important separator, so the result need not meet the
/// threshold; every deletion made is still safe.
pub fn build_ftrs_with_threshold(
    g: &Digraph,
    params: &BuildParams,
    threshold: usize,
) -> Result<FtrsResult> {
    params.validate()?;
    build_with(g, params, threshold, false)
}

fn build_with(
    g: &Digraph,
    params: &BuildParams,
    threshold: usize,
    strict: bool,
) -> Result<FtrsResult> {
    g.check_vertex(params.source)?;
    if g.has_self_loops() {
        return Err(Error::Input(
            "graph must be normalized (self-loops present)".into(),
        ));
    }
    let budget = params.build_budget();

    let (certificate, split, deleted, stats) = match params.fault_mode {
        FaultMode::Edge => {
            let mut work = g.clone();
            let n = work.vertex_count();
            let (deleted, stats) = reduce(&mut work, params, budget, threshold, strict, n)?;
            (work, None, deleted, stats)
        }
        FaultMode::Vertex => {
            let (mut work, map) = split_vertices(g, &VertexSet::singleton(params.source));
            // Only v_in vertices (original IDs) are reduced; each v_out has
            // its split edge as sole in-edge.
            let n = g.vertex_count();
            let (deleted, stats) = reduce(&mut work, params, budget, threshold, strict, n)?;
            let mut back = Vec::with_capacity(deleted.len());
            for d in deleted {
                let edge = map.original_edge(d.edge).ok_or_else(|| {
                    Error::Invariant(format!("split edge {} was deleted", d.edge))
                })?;
                back.push(Deletion { edge, ..d });
            }
            let certificate = map.back_map(&work, g);
            (certificate, Some((work, map)), back, stats)
        }
    };

    Ok(FtrsResult {
        certificate,
        split,
        source: params.source,
        k: params.k,
        lambda: params.lambda,
        fault_mode: params.fault_mode,
        alpha: threshold,
        deleted,
        stats,
    })
}

fn reduce(
    g: &mut Digraph,
    params: &BuildParams,
    budget: usize,
    threshold: usize,
    strict: bool,
    vertex_limit: usize,
) -> Result<(Vec<Deletion>, BuildStats)> {
    let s = params.source;
    let mut deleted = Vec::new();
    let mut stats = BuildStats::default();

    for e in g.in_edges(s).collect::<Vec<_>>() {
        g.delete_edge(e);
        deleted.push(Deletion {
            edge: e,
            reason: DeletionReason::SourceInEdge,
        });
    }

    let sources = VertexSet::singleton(s);
    for v in (0..vertex_limit).filter(|&v| v != s) {
        // Deleting in-edges of v never raises another vertex's in-degree, so
        // one ascending pass suffices.
        while g.in_degree(v) > threshold {
            let family = enumerate_important_with_limit(
                g,
                &sources,
                &VertexSet::singleton(v),
                budget + 1,
                params.budget_limit,
            )?;
            stats.iterations += 1;
            stats.family_sizes.push(family.len());
            let e = match delete_candidate(g, v, &family) {
                Ok(e) => e,
                Err(_) if !strict => break,
                Err(err) => return Err(err),
            };
            g.delete_edge(e);
            deleted.push(Deletion {
                edge: e,
                reason: DeletionReason::DegreeReduction,
            });
        }
    }
    Ok((deleted, stats))
}

/// Plain single-source reachability after removing `faults`, used by tests
/// and the CLI to cross-check answers against the original graph.
pub fn reachable_after(g: &Digraph, source: VertexId, faults: &FaultSet) -> Vec<bool> {
    let h = match faults {
        FaultSet::Edges(edges) => g.without_edges(edges),
        FaultSet::Vertices(vertices) => without_vertices(g, vertices),
    };
    let mut seen = vec![false; g.vertex_count()];
    if let FaultSet::Vertices(vertices) = faults {
        if vertices.contains(source) {
            return seen;
        }
    }
    seen[source] = true;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for e in h.out_edges(u) {
            let w = h.edge(e).expect("alive edge").head;
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}
