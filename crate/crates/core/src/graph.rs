//! Directed graphs and the line-oriented edge-list format.
//!
//! ```text
//! # optional header fixing label order and declaring isolated nodes
//! nodes: A B C D
//! A B
//! B C
//! ```
//!
//! Without a header, nodes are indexed by first appearance.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::GraphError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
    successors: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from labels and index pairs. Rejects self-loops,
    /// duplicate labels and out-of-range indices; duplicate edges collapse.
    pub fn new<L, E>(labels: L, edges: E) -> Result<Self, GraphError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        E: IntoIterator<Item = (usize, usize)>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut set = BTreeSet::new();
        for (s, d) in edges {
            if s >= n || d >= n {
                return Err(GraphError::NodeOutOfRange(s, d));
            }
            if s == d {
                return Err(GraphError::SelfLoop { line: 0, label: labels[s].clone() });
            }
            set.insert((s, d));
        }
        Ok(Self::assemble(labels, index, set))
    }

    /// Nodes labelled `0..n`.
    pub fn with_indices(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        Self::new((0..n).map(|i| i.to_string()), edges)
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, usize>, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut successors = vec![Vec::new(); labels.len()];
        for &(s, d) in &edges {
            successors[s].push(d);
        }
        Graph { labels, index, edges, successors }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Edges in ascending (source, sink) order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.edges.contains(&(src, dst))
    }

    /// Successors of `node` in ascending index order.
    pub fn successors(&self, node: usize) -> &[usize] {
        &self.successors[node]
    }

    /// Copy of this graph with `edge` removed.
    pub fn without_edge(&self, edge: (usize, usize)) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(&edge);
        Self::assemble(self.labels.clone(), self.index.clone(), edges)
    }

    /// Subgraph induced by `keep` (ascending indices), relabelled densely in
    /// that order. Returns the graph and the old-to-new index map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut remap = vec![None; self.n()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = Some(new);
        }
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(s, d)| Some((remap[s]?, remap[d]?)))
            .collect();
        (Self::assemble(labels, index, edges), remap)
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = BTreeSet::new();
        let mut seen_edge = false;
        let mut header_seen = false;

        fn intern(labels: &mut Vec<String>, index: &mut HashMap<String, usize>, l: &str) -> usize {
            if let Some(&i) = index.get(l) {
                return i;
            }
            labels.push(l.to_string());
            index.insert(l.to_string(), labels.len() - 1);
            labels.len() - 1
        }

        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("nodes:") {
                if header_seen || seen_edge {
                    return Err(GraphError::Syntax {
                        line: line_no,
                        message: "the nodes: header must come once, before any edge".into(),
                    });
                }
                header_seen = true;
                for l in rest.split_whitespace() {
                    if index.contains_key(l) {
                        return Err(GraphError::DuplicateLabel(l.to_string()));
                    }
                    intern(&mut labels, &mut index, l);
                }
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [src, dst] = tokens[..] else {
                return Err(GraphError::Syntax {
                    line: line_no,
                    message: format!("expected `src dst`, found {} token(s)", tokens.len()),
                });
            };
            seen_edge = true;
            if src == dst {
                return Err(GraphError::SelfLoop { line: line_no, label: src.to_string() });
            }
            let s = intern(&mut labels, &mut index, src);
            let d = intern(&mut labels, &mut index, dst);
            if !edges.insert((s, d)) {
                return Err(GraphError::DuplicateEdge {
                    line: line_no,
                    src: src.to_string(),
                    dst: dst.to_string(),
                });
            }
        }
        if labels.is_empty() {
            return Err(GraphError::Empty);
        }
        Ok(Self::assemble(labels, index, edges))
    }

    /// Serializes with a `nodes:` header so label order and isolated nodes
    /// survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes: {}", self.labels.join(" "));
        for &(s, d) in &self.edges {
            let _ = writeln!(out, "{} {}", self.labels[s], self.labels[d]);
        }
        out
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "# four-node example\nA B\nB C\nC D\nB D\n";

    #[test]
    fn parse_first_appearance_order() {
        let g = Graph::parse(FIG1).unwrap();
        assert_eq!(g.labels(), ["A", "B", "C", "D"]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(g.successors(1), &[2, 3]);
    }

    #[test]
    fn header_sets_order_and_isolated_nodes() {
        let g = Graph::parse("nodes: D C B A Z\nA B # edge\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.index_of("A"), Some(3));
        assert!(g.has_edge(3, 2));
        assert!(g.successors(4).is_empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Graph::parse("A B\nC C\n").unwrap_err(),
            GraphError::SelfLoop { line: 2, label: "C".into() }
        );
        assert!(matches!(Graph::parse("A B\nA B\n"), Err(GraphError::DuplicateEdge { line: 2, .. })));
        assert!(matches!(Graph::parse("A B C\n"), Err(GraphError::Syntax { line: 1, .. })));
        assert!(matches!(Graph::parse("A B\nnodes: A B\n"), Err(GraphError::Syntax { line: 2, .. })));
        assert_eq!(Graph::parse("# nothing\n\n").unwrap_err(), GraphError::Empty);
        assert!(matches!(Graph::parse("nodes: A A\n"), Err(GraphError::DuplicateLabel(_))));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::parse("nodes: X Y Q\nY X\n").unwrap();
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(Graph::with_indices(2, [(0, 0)]), Err(GraphError::SelfLoop { .. })));
        assert!(matches!(Graph::with_indices(2, [(0, 2)]), Err(GraphError::NodeOutOfRange(0, 2))));
        assert_eq!(Graph::with_indices(0, []).unwrap_err(), GraphError::Empty);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::with_indices(4, [(0, 1), (1, 3), (2, 3)]).unwrap();
        let (h, remap) = g.induced(&[1, 3]);
        assert_eq!(h.labels(), ["1", "3"]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(remap, vec![None, Some(0), None, Some(1)]);
    }
}
