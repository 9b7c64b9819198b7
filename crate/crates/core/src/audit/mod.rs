//! Lemma dependency graph and circularity audits.
//!
//! Edges come from what verified scripts actually invoked, and from the
//! axioms cited by composite facts, never from hand-written lists.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::engine::VerifyReport;
use crate::library::{LemmaKind, Registry};

/// Tag marking axioms used without proof.
pub const EXTERNAL_PROVENANCE: &str = "external-provenance";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuditError {
    #[error("CycleDetected({})", .0.join(","))]
    CycleDetected(Vec<String>),
    #[error("UnknownLemma({0})")]
    UnknownLemma(String),
    #[error("script `{0}` did not verify")]
    NotVerified(String),
    #[error("no verification report for `{0}`")]
    MissingReport(String),
}

/// Directed graph from each lemma to the lemmas it depends on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DepGraph {
    edges: BTreeMap<String, BTreeSet<String>>,
    tags: BTreeMap<String, Vec<String>>,
}

impl DepGraph {
    /// Builds a graph from `(dependent, dependency)` pairs; fails on a cycle.
    pub fn from_edges<'a>(
        nodes: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<DepGraph, AuditError> {
        let mut g = DepGraph::default();
        for n in nodes {
            g.edges.entry(n.to_string()).or_default();
        }
        for (from, to) in edges {
            g.edges.entry(to.to_string()).or_default();
            g.edges.entry(from.to_string()).or_default().insert(to.to_string());
        }
        if let Some(cycle) = g.find_cycle() {
            return Err(AuditError::CycleDetected(cycle));
        }
        Ok(g)
    }

    fn find_cycle(&self) -> Option<Vec<String>> {
        // 0 unvisited, 1 on stack, 2 done
        let mut state: BTreeMap<&str, u8> = self.edges.keys().map(|k| (k.as_str(), 0)).collect();
        let mut path: Vec<&str> = Vec::new();
        for start in self.edges.keys() {
            if state[start.as_str()] == 0 {
                if let Some(c) = self.cycle_from(start, &mut state, &mut path) {
                    return Some(c);
                }
            }
        }
        None
    }

    fn cycle_from<'a>(&'a self, node: &'a str, state: &mut BTreeMap<&'a str, u8>, path: &mut Vec<&'a str>) -> Option<Vec<String>> {
        state.insert(node, 1);
        path.push(node);
        for next in &self.edges[node] {
            match state[next.as_str()] {
                1 => {
                    let at = path.iter().position(|p| *p == next).unwrap_or(0);
                    return Some(path[at..].iter().map(|s| s.to_string()).collect());
                }
                0 => {
                    if let Some(c) = self.cycle_from(next, state, path) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        path.pop();
        state.insert(node, 2);
        None
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.edges.keys().map(String::as_str)
    }

    pub fn node_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().flat_map(|(f, ts)| ts.iter().map(move |t| (f.as_str(), t.as_str())))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.values().map(BTreeSet::len).sum()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.edges.contains_key(id)
    }

    pub fn dependencies(&self, id: &str) -> Option<&BTreeSet<String>> {
        self.edges.get(id)
    }

    pub fn tags(&self, id: &str) -> &[String] {
        self.tags.get(id).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Adds an edge, failing if it would close a cycle.
    pub fn add_edge(&mut self, from: &str, to: &str) -> Result<(), AuditError> {
        let mut g = self.clone();
        g.edges.entry(to.to_string()).or_default();
        g.edges.entry(from.to_string()).or_default().insert(to.to_string());
        if let Some(c) = g.find_cycle() {
            return Err(AuditError::CycleDetected(c));
        }
        *self = g;
        Ok(())
    }

    fn require(&self, id: &str) -> Result<(), AuditError> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(AuditError::UnknownLemma(id.to_string()))
        }
    }
}

/// Builds the graph of a registry from its verification reports. Every
/// script must have an accepted report.
pub fn build_graph(reg: &Registry, reports: &[VerifyReport]) -> Result<DepGraph, AuditError> {
    let by_id: BTreeMap<&str, &VerifyReport> = reports.iter().map(|r| (r.id.as_str(), r)).collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for lemma in reg.lemmas() {
        match lemma.kind {
            LemmaKind::Axiom => {}
            LemmaKind::Composite => edges.extend(lemma.depends.iter().map(|d| (lemma.id.as_str(), d.as_str()))),
            LemmaKind::Derived | LemmaKind::Theorem => {
                let r = by_id.get(lemma.id.as_str()).ok_or_else(|| AuditError::MissingReport(lemma.id.clone()))?;
                edges.extend(r.invoked.iter().map(|d| (lemma.id.as_str(), d.as_str())));
            }
        }
    }
    let mut g = DepGraph::from_edges(reg.lemmas().iter().map(|l| l.id.as_str()), edges)?;
    for lemma in reg.lemmas() {
        if matches!(lemma.kind, LemmaKind::Derived | LemmaKind::Theorem) && !by_id[lemma.id.as_str()].accepted {
            return Err(AuditError::NotVerified(lemma.id.clone()));
        }
        g.tags.insert(lemma.id.clone(), lemma.tags.clone());
    }
    Ok(g)
}

/// Transitive dependencies of `id`, excluding `id`, by depth-first search.
pub fn ancestors(g: &DepGraph, id: &str) -> Result<BTreeSet<String>, AuditError> {
    g.require(id)?;
    let mut seen = BTreeSet::new();
    let mut stack: Vec<&str> = g.edges[id].iter().map(String::as_str).collect();
    while let Some(n) = stack.pop() {
        if seen.insert(n.to_string()) {
            stack.extend(g.edges[n].iter().map(String::as_str));
        }
    }
    Ok(seen)
}

/// Same closure as [`ancestors`], computed breadth-first.
pub fn ancestors_bfs(g: &DepGraph, id: &str) -> Result<BTreeSet<String>, AuditError> {
    g.require(id)?;
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<&str> = VecDeque::from([id]);
    while let Some(n) = queue.pop_front() {
        for next in &g.edges[n] {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Shortest path from `from` to `to`; among shortest paths, the
/// lexicographically smallest sequence of ids.
pub fn shortest_path(g: &DepGraph, from: &str, to: &str) -> Result<Option<Vec<String>>, AuditError> {
    g.require(from)?;
    g.require(to)?;
    // distance to `to` over reversed edges
    let mut dist: BTreeMap<&str, usize> = BTreeMap::new();
    dist.insert(to, 0);
    let mut queue = VecDeque::from([to]);
    let reversed: BTreeMap<&str, Vec<&str>> = g.edges().fold(BTreeMap::new(), |mut m, (f, t)| {
        m.entry(t).or_insert_with(Vec::new).push(f);
        m
    });
    while let Some(n) = queue.pop_front() {
        for &prev in reversed.get(n).map(Vec::as_slice).unwrap_or(&[]) {
            if !dist.contains_key(prev) {
                dist.insert(prev, dist[n] + 1);
                queue.push_back(prev);
            }
        }
    }
    if from == to || !dist.contains_key(from) {
        return Ok(if from == to { Some(alloc::vec![from.to_string()]) } else { None });
    }
    let mut path = alloc::vec![from.to_string()];
    let mut cur = from;
    while cur != to {
        let d = dist[cur];
        // edges are a BTreeSet, so the first match is the smallest id
        cur = g.edges[cur]
            .iter()
            .map(String::as_str)
            .find(|n| dist.get(n) == Some(&(d - 1)))
            .expect("a neighbour one step closer exists");
        path.push(cur.to_string());
    }
    Ok(Some(path))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditVerdict {
    pub target: String,
    pub forbidden: String,
    pub reachable: bool,
    pub witness_path: Option<Vec<String>>,
    pub ancestors: Vec<String>,
    /// Ancestors tagged `external-provenance`.
    pub external_provenance_flags: Vec<String>,
}

/// Decides whether `forbidden` is among the ancestors of `target`.
pub fn audit(g: &DepGraph, target: &str, forbidden: &str) -> Result<AuditVerdict, AuditError> {
    g.require(forbidden)?;
    let anc = ancestors(g, target)?;
    let reachable = anc.contains(forbidden);
    let witness_path = if reachable { shortest_path(g, target, forbidden)? } else { None };
    let external_provenance_flags =
        anc.iter().filter(|a| g.tags(a).iter().any(|t| t == EXTERNAL_PROVENANCE)).cloned().collect();
    Ok(AuditVerdict {
        target: target.to_string(),
        forbidden: forbidden.to_string(),
        reachable,
        witness_path,
        ancestors: anc.into_iter().collect(),
        external_provenance_flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> DepGraph {
        DepGraph::from_edges([], [("t", "m"), ("m", "a"), ("t", "b"), ("b", "a"), ("b", "z")]).unwrap()
    }

    #[test]
    fn two_cycle_detected() {
        let err = DepGraph::from_edges([], [("A", "B"), ("B", "A")]).unwrap_err();
        assert_eq!(err.to_string(), "CycleDetected(A,B)");
    }

    #[test]
    fn empty_graph() {
        let g = DepGraph::from_edges([], []).unwrap();
        assert_eq!(g.node_count(), 0);
    }

    #[test]
    fn ancestors_exclude_self_and_agree() {
        let g = chain();
        let a = ancestors(&g, "t").unwrap();
        assert_eq!(a.iter().map(String::as_str).collect::<Vec<_>>(), ["a", "b", "m", "z"]);
        assert_eq!(a, ancestors_bfs(&g, "t").unwrap());
        assert!(ancestors(&g, "a").unwrap().is_empty());
        assert_eq!(ancestors(&g, "q"), Err(AuditError::UnknownLemma("q".into())));
    }

    #[test]
    fn witness_is_shortest_then_lexicographic() {
        let g = chain();
        let v = audit(&g, "t", "a").unwrap();
        assert!(v.reachable);
        assert_eq!(v.witness_path.unwrap(), ["t", "b", "a"]);
        let v = audit(&g, "m", "z").unwrap();
        assert!(!v.reachable);
        assert!(v.witness_path.is_none());
    }

    #[test]
    fn closing_edge_rejected() {
        let mut g = chain();
        assert!(g.add_edge("a", "t").is_err());
        assert!(g.add_edge("z", "a").is_ok());
    }
}
