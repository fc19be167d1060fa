//! Brute-force ground truth.
//!
//! Nothing here calls the flow, separator or certificate code: cuts are found
//! by trying every edge subset, path counts by exhaustive packing of simple
//! paths, and fault tolerance by sweeping every fault set. Only the graph type
//! is shared. Everything is exponential and guarded by size checks.

use std::collections::{BTreeMap, VecDeque};

use itertools::Itertools;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ftrs::{FaultMode, FaultSet};
use crate::graph::{Digraph, EdgeSet, VertexId, VertexSet};
use crate::separators::{ImportantFamily, Separator};

/// Upper bound on subsets (edge subsets or fault sets) a sweep may visit.
pub const MAX_SUBSETS: u128 = 5_000_000;

/// Upper bound on alive edges for path packing.
pub const MAX_PACKING_EDGES: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub faults: FaultSet,
    pub target: VertexId,
    /// Capped path count in the original graph; for plain reachability this
    /// is 1 (reachable) or 0.
    pub in_original: usize,
    pub in_certificate: usize,
    /// Path cap used (1 for reachability).
    pub lambda: usize,
}

impl Counterexample {
    pub fn reachable_in_original(&self) -> bool {
        self.in_original > 0
    }

    pub fn reachable_in_certificate(&self) -> bool {
        self.in_certificate > 0
    }

    /// Re-evaluates the case on `g` and `h`; true iff they still disagree
    /// with the recorded values.
    pub fn replay(&self, g: &Digraph, h: &Digraph, source: VertexId) -> Result<bool> {
        let (dead_e, dead_v) = masks(g, &self.faults);
        let a = measure(g, source, self.target, &dead_e, &dead_v, self.lambda)?;
        let b = measure(h, source, self.target, &dead_e, &dead_v, self.lambda)?;
        Ok(a == self.in_original && b == self.in_certificate && a != b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub cases_checked: u64,
}

/// Exhaustive k-FTRS check under edge faults.
pub fn verify_ftrs(
    g: &Digraph,
    h: &Digraph,
    source: VertexId,
    k: usize,
) -> Result<VerificationReport> {
    sweep(g, h, source, k, 1, FaultMode::Edge)
}

/// Exhaustive k-FTRS check under vertex faults (the source never fails).
pub fn verify_ftrs_vertex(
    g: &Digraph,
    h: &Digraph,
    source: VertexId,
    k: usize,
) -> Result<VerificationReport> {
    sweep(g, h, source, k, 1, FaultMode::Vertex)
}

/// Exhaustive (λ,k)-FTRS check: `min(paths, λ)` must agree everywhere.
pub fn verify_lambda_ftrs(
    g: &Digraph,
    h: &Digraph,
    source: VertexId,
    k: usize,
    lambda: usize,
) -> Result<VerificationReport> {
    sweep(g, h, source, k, lambda, FaultMode::Edge)
}

pub fn verify_lambda_ftrs_vertex(
    g: &Digraph,
    h: &Digraph,
    source: VertexId,
    k: usize,
    lambda: usize,
) -> Result<VerificationReport> {
    sweep(g, h, source, k, lambda, FaultMode::Vertex)
}

/// Randomized variant: checks `samples` fault sets drawn with `seed`, plus the
/// empty fault set. Never a substitute for the exhaustive sweep.
#[allow(clippy::too_many_arguments)]
pub fn verify_sampled(
    g: &Digraph,
    h: &Digraph,
    source: VertexId,
    k: usize,
    lambda: usize,
    mode: FaultMode,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_pair(g, h, source, lambda)?;
    let universe = fault_universe(g, source, mode);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    for i in 0..=samples {
        let chosen: Vec<usize> = if i == 0 {
            Vec::new()
        } else {
            let size = rng.random_range(0..=k.min(universe.len()));
            let mut picked: Vec<usize> = index::sample(&mut rng, universe.len(), size)
                .into_iter()
                .map(|j| universe[j])
                .collect();
            picked.sort_unstable();
            picked
        };
        if let Some(cx) = check_fault_set(g, h, source, lambda, mode, &chosen, &mut cases)? {
            return Ok(failed(cx, cases));
        }
    }
    Ok(VerificationReport {
        passed: true,
        counterexample: None,
        cases_checked: cases,
    })
}

fn failed(cx: Counterexample, cases: u64) -> VerificationReport {
    VerificationReport {
        passed: false,
        counterexample: Some(cx),
        cases_checked: cases,
    }
}

fn check_pair(g: &Digraph, h: &Digraph, source: VertexId, lambda: usize) -> Result<()> {
    g.check_vertex(source)?;
    if lambda == 0 {
        return Err(Error::Input("lambda must be at least 1".into()));
    }
    if !h.is_spanning_subgraph_of(g) {
        return Err(Error::Input(
            "certificate is not a spanning subgraph of the original graph".into(),
        ));
    }
    Ok(())
}

fn fault_universe(g: &Digraph, source: VertexId, mode: FaultMode) -> Vec<usize> {
    match mode {
        FaultMode::Edge => g.alive_edge_ids().collect(),
        FaultMode::Vertex => (0..g.vertex_count()).filter(|&v| v != source).collect(),
    }
}

fn binomial_prefix_sum(n: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for i in 0..=k.min(n) {
        total = total.saturating_add(term);
        term = term.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    total
}

fn guard_subsets(n: usize, k: usize, what: &str) -> Result<()> {
    let count = binomial_prefix_sum(n, k);
    if count > MAX_SUBSETS {
        return Err(Error::Size(format!(
            "{count} {what} of size <= {k} over {n} elements (limit {MAX_SUBSETS})"
        )));
    }
    Ok(())
}

fn sweep(
    g: &Digraph,
    h: &Digraph,
    source: VertexId,
    k: usize,
    lambda: usize,
    mode: FaultMode,
) -> Result<VerificationReport> {
    check_pair(g, h, source, lambda)?;
    let universe = fault_universe(g, source, mode);
    guard_subsets(universe.len(), k, "fault sets")?;
    let mut cases = 0;
    for size in 0..=k.min(universe.len()) {
        for chosen in universe.iter().copied().combinations(size) {
            if let Some(cx) = check_fault_set(g, h, source, lambda, mode, &chosen, &mut cases)? {
                return Ok(failed(cx, cases));
            }
        }
    }
    Ok(VerificationReport {
        passed: true,
        counterexample: None,
        cases_checked: cases,
    })
}

fn check_fault_set(
    g: &Digraph,
    h: &Digraph,
    source: VertexId,
    lambda: usize,
    mode: FaultMode,
    chosen: &[usize],
    cases: &mut u64,
) -> Result<Option<Counterexample>> {
    let faults = match mode {
        FaultMode::Edge => FaultSet::Edges(chosen.iter().copied().collect()),
        FaultMode::Vertex => FaultSet::Vertices(chosen.iter().copied().collect()),
    };
    let (dead_e, dead_v) = masks(g, &faults);
    let (reach_g, reach_h) = if lambda == 1 {
        (
            Some(bfs(g, source, &dead_e, &dead_v)),
            Some(bfs(h, source, &dead_e, &dead_v)),
        )
    } else {
        (None, None)
    };
    for target in 0..g.vertex_count() {
        *cases += 1;
        let (a, b) = match (&reach_g, &reach_h) {
            (Some(rg), Some(rh)) => (rg[target] as usize, rh[target] as usize),
            _ => (
                measure(g, source, target, &dead_e, &dead_v, lambda)?,
                measure(h, source, target, &dead_e, &dead_v, lambda)?,
            ),
        };
        if a != b {
            return Ok(Some(Counterexample {
                faults,
                target,
                in_original: a,
                in_certificate: b,
                lambda,
            }));
        }
    }
    Ok(None)
}

fn masks(g: &Digraph, faults: &FaultSet) -> (Vec<bool>, Vec<bool>) {
    let mut dead_e = vec![false; g.edge_id_bound()];
    let mut dead_v = vec![false; g.vertex_count()];
    match faults {
        FaultSet::Edges(edges) => {
            for e in edges.iter() {
                if let Some(slot) = dead_e.get_mut(e) {
                    *slot = true;
                }
            }
        }
        FaultSet::Vertices(vertices) => {
            for v in vertices.iter() {
                if let Some(slot) = dead_v.get_mut(v) {
                    *slot = true;
                }
            }
        }
    }
    (dead_e, dead_v)
}

fn usable(g: &Digraph, e: usize, dead_e: &[bool], dead_v: &[bool]) -> Option<(usize, usize)> {
    if !g.is_alive(e) || dead_e.get(e).copied().unwrap_or(false) {
        return None;
    }
    let edge = g.edge(e)?;
    (!dead_v[edge.tail] && !dead_v[edge.head]).then_some((edge.tail, edge.head))
}

fn bfs(g: &Digraph, source: VertexId, dead_e: &[bool], dead_v: &[bool]) -> Vec<bool> {
    bfs_multi(g, &[source], dead_e, dead_v)
}

fn bfs_multi(g: &Digraph, sources: &[VertexId], dead_e: &[bool], dead_v: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !dead_v[s] && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for e in g.out_edges(u) {
            if let Some((_, w)) = usable(g, e, dead_e, dead_v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    seen
}

fn measure(
    g: &Digraph,
    source: VertexId,
    target: VertexId,
    dead_e: &[bool],
    dead_v: &[bool],
    lambda: usize,
) -> Result<usize> {
    if lambda == 1 {
        return Ok(bfs(g, source, dead_e, dead_v)[target] as usize);
    }
    packing(g, source, target, dead_e, dead_v, lambda)
}

/// Maximum number of pairwise edge-disjoint `s -> t` paths, capped at `cap`.
/// `s == t` counts as `cap` paths.
fn packing(
    g: &Digraph,
    s: VertexId,
    t: VertexId,
    dead_e: &[bool],
    dead_v: &[bool],
    cap: usize,
) -> Result<usize> {
    if dead_v[s] || dead_v[t] {
        return Ok(0);
    }
    if s == t {
        return Ok(cap);
    }
    let ids: Vec<usize> = g
        .alive_edge_ids()
        .filter(|&e| usable(g, e, dead_e, dead_v).is_some())
        .collect();
    if ids.len() > MAX_PACKING_EDGES {
        return Err(Error::Size(format!(
            "{} usable edges exceed the packing limit {MAX_PACKING_EDGES}",
            ids.len()
        )));
    }
    let bit: BTreeMap<usize, u64> = ids
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, 1u64 << i))
        .collect();

    // Every vertex-simple s -> t path as an edge bitmask. Edge-disjoint
    // packings can always be rebuilt from simple paths.
    let mut paths = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    on_path[s] = true;
    simple_paths(g, s, t, &bit, &mut on_path, 0, &mut paths);

    let source_edges: u64 = g
        .out_edges(s)
        .filter_map(|e| bit.get(&e).copied())
        .fold(0, |a, b| a | b);
    let mut best = 0;
    pack(&paths, 0, 0, 0, cap, source_edges, &mut best);
    Ok(best)
}

fn simple_paths(
    g: &Digraph,
    u: VertexId,
    t: VertexId,
    bit: &BTreeMap<usize, u64>,
    on_path: &mut [bool],
    mask: u64,
    out: &mut Vec<u64>,
) {
    for e in g.out_edges(u) {
        let Some(&b) = bit.get(&e) else { continue };
        let w = g.edge(e).expect("alive edge").head;
        if w == t {
            out.push(mask | b);
        } else if !on_path[w] {
            on_path[w] = true;
            simple_paths(g, w, t, bit, on_path, mask | b, out);
            on_path[w] = false;
        }
    }
}

fn pack(
    paths: &[u64],
    start: usize,
    used: u64,
    count: usize,
    cap: usize,
    source_edges: u64,
    best: &mut usize,
) {
    if count > *best {
        *best = count;
    }
    if *best >= cap {
        return;
    }
    // Each further path needs its own unused out-edge of s.
    let room = (source_edges & !used).count_ones() as usize;
    if count + room <= *best {
        return;
    }
    for i in start..paths.len() {
        if paths[i] & used == 0 {
            pack(
                paths,
                i + 1,
                used | paths[i],
                count + 1,
                cap,
                source_edges,
                best,
            );
            if *best >= cap {
                return;
            }
        }
    }
}

/// Number of pairwise edge-disjoint `s -> t` paths, by exhaustive packing.
pub fn edge_disjoint_paths_bruteforce(g: &Digraph, s: VertexId, t: VertexId) -> Result<usize> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::Input("source and target coincide".into()));
    }
    let dead_e = vec![false; g.edge_id_bound()];
    let dead_v = vec![false; g.vertex_count()];
    packing(g, s, t, &dead_e, &dead_v, usize::MAX)
}

fn check_sets(g: &Digraph, sources: &VertexSet, sinks: &VertexSet) -> Result<()> {
    if sources.is_empty() {
        return Err(Error::EmptyVertexSet("source"));
    }
    if sinks.is_empty() {
        return Err(Error::EmptyVertexSet("sink"));
    }
    g.check_vertices(sources)?;
    g.check_vertices(sinks)?;
    if !sources.is_disjoint(sinks) {
        let v = sources
            .iter()
            .find(|&v| sinks.contains(v))
            .expect("overlap");
        return Err(Error::Overlap(v));
    }
    Ok(())
}

/// Every (S,T)-cut of size at most `budget`, as the raw edge subset together
/// with its reachability set. Subsets come in order of size, then
/// lexicographically by edge ID.
pub fn all_cuts_bruteforce(
    g: &Digraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    budget: usize,
) -> Result<Vec<Separator>> {
    check_sets(g, sources, sinks)?;
    let alive: Vec<usize> = g.alive_edge_ids().collect();
    guard_subsets(alive.len(), budget, "edge subsets")?;
    let src: Vec<usize> = sources.to_vec();
    let dead_v = vec![false; g.vertex_count()];
    let mut cuts = Vec::new();
    for size in 0..=budget.min(alive.len()) {
        for subset in alive.iter().copied().combinations(size) {
            let mut dead_e = vec![false; g.edge_id_bound()];
            for &e in &subset {
                dead_e[e] = true;
            }
            let reach = bfs_multi(g, &src, &dead_e, &dead_v);
            if sinks.iter().any(|t| reach[t]) {
                continue;
            }
            cuts.push(Separator::new(
                subset.into_iter().collect(),
                VertexSet::from_marks(&reach),
            ));
        }
    }
    Ok(cuts)
}

/// The important (S,T)-separators of size at most `budget`, straight from the
/// definition: enumerate all cuts, reduce each to the edges leaving its
/// reachability set, and keep those no other cut dominates.
pub fn important_separators_bruteforce(
    g: &Digraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    budget: usize,
) -> Result<ImportantFamily> {
    let mut minimal: BTreeMap<EdgeSet, VertexSet> = BTreeMap::new();
    for cut in all_cuts_bruteforce(g, sources, sinks, budget)? {
        let reach = cut.reach();
        let leaving: EdgeSet = g
            .alive_edge_ids()
            .filter(|&e| {
                let edge = g.edge(e).expect("alive edge");
                reach.contains(edge.tail) && !reach.contains(edge.head)
            })
            .collect();
        minimal.entry(leaving).or_insert_with(|| reach.clone());
    }
    let members = minimal
        .iter()
        .filter(|(y, ry)| {
            !minimal
                .iter()
                .any(|(x, rx)| x != *y && x.len() <= y.len() && ry.is_subset(rx))
        })
        .map(|(x, r)| Separator::new(x.clone(), r.clone()))
        .collect();
    Ok(ImportantFamily::new(members, budget))
}
