//! Minimum cuts, the furthest minimum cut, and important separators.
//!
//! An (S,T)-cut `X` is stored in minimal form together with its reachability
//! set `R_X` (vertices still reachable from S once `X` is removed), so that
//! `X = δ⁺(R_X)`. A cut `X` dominates `Y` when `|X| <= |Y|` and
//! `R_Y ⊆ R_X`; the important separators are the undominated cuts.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::flow::{check_terminals, UnitFlow};
use crate::graph::{Digraph, EdgeSet, VertexSet};

/// Largest separator budget accepted without an explicit override. The
/// family bound `4^16` is already in the billions.
pub const DEFAULT_BUDGET_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Separator {
    edges: EdgeSet,
    reach: VertexSet,
}

impl Separator {
    pub(crate) fn new(edges: EdgeSet, reach: VertexSet) -> Self {
        Separator { edges, reach }
    }

    /// The minimal cut induced by removing `edges` from `g`: the reachability
    /// set of `edges` and the alive edges leaving it.
    pub fn minimal_from(g: &Digraph, sources: &VertexSet, edges: &EdgeSet) -> Self {
        let marks = g.without_edges(edges).reach_marks(sources.iter());
        Separator {
            edges: g.out_cut_marks(&marks),
            reach: VertexSet::from_marks(&marks),
        }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn reach(&self) -> &VertexSet {
        &self.reach
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn dominates(&self, other: &Separator) -> bool {
        dominates(self, other)
    }

    /// Reporting order: size, then lexicographic edge IDs.
    pub fn report_cmp(&self, other: &Separator) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.edges.iter().cmp(other.edges.iter()))
    }
}

/// `x` dominates `y`: `|x| <= |y|`, `R_y ⊆ R_x` and `x != y`.
pub fn dominates(x: &Separator, y: &Separator) -> bool {
    x.len() <= y.len() && y.reach.is_subset(&x.reach) && x.edges != y.edges
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportantFamily {
    members: Vec<Separator>,
    budget: usize,
}

impl ImportantFamily {
    /// Sorts members into reporting order.
    pub(crate) fn new(mut members: Vec<Separator>, budget: usize) -> Self {
        members.sort_by(Separator::report_cmp);
        ImportantFamily { members, budget }
    }

    pub fn members(&self) -> &[Separator] {
        &self.members
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Union of all member edge sets.
    pub fn edge_union(&self) -> EdgeSet {
        self.members
            .iter()
            .fold(EdgeSet::new(), |acc, m| acc.union(&m.edges))
    }

    /// Members as plain edge sets, for set-level comparisons.
    pub fn edge_sets(&self) -> BTreeSet<EdgeSet> {
        self.members.iter().map(|m| m.edges.clone()).collect()
    }
}

impl<'a> IntoIterator for &'a ImportantFamily {
    type Item = &'a Separator;
    type IntoIter = std::slice::Iter<'a, Separator>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

enum CutSide {
    Closest,
    Furthest,
}

fn bounded_cut(
    g: &Digraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    budget: usize,
    side: CutSide,
) -> Option<Separator> {
    let n = g.vertex_count();
    let sinks = sinks.to_marks(n);
    let mut flow = UnitFlow::new(g, &sources.to_marks(n), &sinks);
    if flow.run(budget.saturating_add(1)) > budget {
        return None;
    }
    let side = match side {
        CutSide::Closest => flow.source_side(),
        // May contain vertices unreachable from S; they carry no flow, so the
        // cut is unchanged when they are dropped from the reach below.
        CutSide::Furthest => flow.sink_side().into_iter().map(|m| !m).collect(),
    };
    let edges = g.out_cut_marks(&side);
    Some(Separator::minimal_from(g, sources, &edges))
}

/// A minimum (S,T)-cut, if its size is at most `budget`. The returned cut is
/// the one closest to S.
pub fn min_cut(
    g: &Digraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    budget: usize,
) -> Result<Option<Separator>> {
    check_terminals(g, sources, sinks)?;
    Ok(bounded_cut(g, sources, sinks, budget, CutSide::Closest))
}

/// The minimum (S,T)-cut whose reachability set contains that of every other
/// minimum cut, if its size is at most `budget`.
pub fn furthest_min_cut(
    g: &Digraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    budget: usize,
) -> Result<Option<Separator>> {
    check_terminals(g, sources, sinks)?;
    Ok(bounded_cut(g, sources, sinks, budget, CutSide::Furthest))
}

/// All important (S,T)-separators of size at most `budget`.
pub fn enumerate_important(
    g: &Digraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    budget: usize,
) -> Result<ImportantFamily> {
    enumerate_important_with_limit(g, sources, sinks, budget, DEFAULT_BUDGET_LIMIT)
}

pub fn enumerate_important_with_limit(
    g: &Digraph,
    sources: &VertexSet,
    sinks: &VertexSet,
    budget: usize,
    limit: usize,
) -> Result<ImportantFamily> {
    if budget > limit {
        return Err(Error::Budget {
            requested: budget,
            limit,
        });
    }
    check_terminals(g, sources, sinks)?;

    let mut candidates = BTreeSet::new();
    branch(
        g.clone(),
        sources.clone(),
        sinks,
        budget,
        &mut Vec::new(),
        &mut candidates,
    );

    // Generate-and-filter: candidates may be duplicated, non-minimal in the
    // original graph, or dominated.
    let minimal: BTreeMap<EdgeSet, Separator> = candidates
        .iter()
        .map(|c| Separator::minimal_from(g, sources, c))
        .map(|s| (s.edges.clone(), s))
        .collect();
    let minimal: Vec<Separator> = minimal.into_values().collect();
    let members = minimal
        .iter()
        .filter(|y| !minimal.iter().any(|x| dominates(x, y)))
        .cloned()
        .collect();
    Ok(ImportantFamily::new(members, budget))
}

/// One node of the branching: `g` already has `committed` deleted and
/// `sources` is the current source side.
fn branch(
    mut g: Digraph,
    sources: VertexSet,
    sinks: &VertexSet,
    remaining: usize,
    committed: &mut Vec<usize>,
    out: &mut BTreeSet<EdgeSet>,
) {
    let Some(furthest) = bounded_cut(&g, &sources, sinks, remaining, CutSide::Furthest) else {
        return;
    };
    out.insert(
        furthest
            .edges
            .iter()
            .chain(committed.iter().copied())
            .collect(),
    );

    let Some(e) = furthest.edges.first() else {
        return;
    };
    let head = g.edge(e).expect("cut edge exists").head;
    let reach = furthest.reach;

    if !sinks.contains(head) {
        let mut grown = reach.clone();
        grown.insert(head);
        branch(g.clone(), grown, sinks, remaining, committed, out);
    }
    if remaining > 0 {
        g.delete_edge(e);
        committed.push(e);
        branch(g, reach, sinks, remaining - 1, committed, out);
        committed.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: usize) -> VertexSet {
        VertexSet::singleton(v)
    }

    fn path() -> Digraph {
        Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn diamond() -> Digraph {
        Digraph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn min_cut_examples() {
        let cut = min_cut(&path(), &s(0), &s(2), 2).unwrap().unwrap();
        assert_eq!(cut.len(), 1);
        assert_eq!(cut.edges(), &EdgeSet::singleton(0));
        assert!(min_cut(&diamond(), &s(0), &s(3), 1).unwrap().is_none());

        let disconnected = Digraph::from_edges(3, &[(0, 1)]).unwrap();
        let cut = min_cut(&disconnected, &s(0), &s(2), 0).unwrap().unwrap();
        assert!(cut.is_empty());
        assert_eq!(cut.reach(), &VertexSet::from([0, 1]));
    }

    #[test]
    fn furthest_min_cut_examples() {
        let cut = furthest_min_cut(&path(), &s(0), &s(2), 1).unwrap().unwrap();
        assert_eq!(cut.edges(), &EdgeSet::singleton(1));
        assert_eq!(cut.reach(), &VertexSet::from([0, 1]));

        let cut = furthest_min_cut(&diamond(), &s(0), &s(3), 2)
            .unwrap()
            .unwrap();
        assert_eq!(cut.edges(), &EdgeSet::from([2, 3]));
        assert_eq!(cut.reach(), &VertexSet::from([0, 1, 2]));
    }

    #[test]
    fn furthest_equals_source_cut_when_unique() {
        // s fans out to two vertices that each fan into t twice: δ⁺({s}) is
        // the unique minimum cut.
        let g = Digraph::from_edges(4, &[(0, 1), (0, 2), (1, 3), (1, 3), (2, 3), (2, 3)]).unwrap();
        let cut = furthest_min_cut(&g, &s(0), &s(3), 4).unwrap().unwrap();
        assert_eq!(cut.edges(), &EdgeSet::from([0, 1]));
        assert_eq!(cut.reach(), &s(0));
    }

    #[test]
    fn cut_errors() {
        let g = path();
        assert_eq!(
            min_cut(&g, &VertexSet::from([0, 2]), &s(2), 1),
            Err(Error::Overlap(2))
        );
        assert_eq!(
            furthest_min_cut(&g, &s(1), &s(1), 1),
            Err(Error::Overlap(1))
        );
    }

    #[test]
    fn enumerate_examples() {
        let fam = enumerate_important(&path(), &s(0), &s(2), 1).unwrap();
        assert_eq!(fam.edge_sets(), BTreeSet::from([EdgeSet::singleton(1)]));

        let fam = enumerate_important(&diamond(), &s(0), &s(3), 2).unwrap();
        assert_eq!(fam.edge_sets(), BTreeSet::from([EdgeSet::from([2, 3])]));

        let fam = enumerate_important(&diamond(), &s(0), &s(3), 1).unwrap();
        assert!(fam.is_empty());
    }

    #[test]
    fn unreachable_sink_gives_empty_separator() {
        let g = Digraph::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        let fam = enumerate_important(&g, &s(0), &s(2), 2).unwrap();
        assert_eq!(fam.len(), 1);
        assert!(fam.members()[0].is_empty());
        assert_eq!(fam.members()[0].reach(), &VertexSet::from([0, 1]));
    }

    #[test]
    fn budget_limit() {
        assert_eq!(
            enumerate_important(&path(), &s(0), &s(2), 17),
            Err(Error::Budget {
                requested: 17,
                limit: 16
            })
        );
        assert!(enumerate_important_with_limit(&path(), &s(0), &s(2), 17, 20).is_ok());
    }

    #[test]
    fn domination_examples() {
        let g = diamond();
        let far = Separator::minimal_from(&g, &s(0), &EdgeSet::from([2, 3]));
        let near = Separator::minimal_from(&g, &s(0), &EdgeSet::from([0, 1]));
        assert!(dominates(&far, &near));
        assert!(!dominates(&near, &far));
        assert!(!dominates(&far, &far));

        let single = Separator::minimal_from(&path(), &s(0), &EdgeSet::singleton(1));
        let big = Separator::new(EdgeSet::from([0, 1]), s(0));
        assert!(!dominates(&big, &single));
    }

    #[test]
    fn further_cut_dominates_nearer() {
        // Two parallel routes of different length: s->a->t and s->t.
        let g = Digraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let fam = enumerate_important(&g, &s(0), &s(2), 3).unwrap();
        let sets: Vec<_> = fam.members().iter().map(|m| m.edges().to_vec()).collect();
        assert_eq!(sets, vec![vec![1, 2]]);
    }
}
