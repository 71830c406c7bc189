//! Trajectories and the utilization matrices aggregated from them.
//!
//! For a trajectory `v0 v1 … vk` every ordered pair `(vp, vq)` with `p < q`
//! contributes 1 to the generalized OD matrix `D`. Consecutive pairs go to
//! the flow matrix `F`; the rest go to the indirect matrix `L`, which is
//! split into `T` (a direct edge exists but was bypassed) and `Tc` (no
//! direct edge). Trajectories are simple paths, so each one adds at most 1
//! to any cell.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::count::Finite;
use crate::error::{Error, Result, TrajectoryError};
use crate::graph::{strip_comment, Graph};
use crate::matrix::{
    binarize, ew_add, first_difference, hadamard, BinaryMatrix, CountMatrix,
};
use crate::structure::StructureBundle;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trajectory {
    nodes: Vec<usize>,
}

impl Trajectory {
    /// Wraps a node sequence without graph validation; see
    /// [`validate_trajectory`].
    pub fn new(nodes: Vec<usize>) -> Self {
        Trajectory { nodes }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Consecutive node pairs.
    pub fn hops(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn uses_edge(&self, edge: (usize, usize)) -> bool {
        self.hops().any(|h| h == edge)
    }
}

pub fn validate_trajectory(t: &Trajectory, g: &Graph) -> Result<(), TrajectoryError> {
    if t.len() < 2 {
        return Err(TrajectoryError::TooShort(t.len()));
    }
    if let Some(&bad) = t.nodes.iter().find(|&&v| v >= g.n()) {
        return Err(TrajectoryError::NodeOutOfRange(bad));
    }
    let mut seen = HashSet::with_capacity(t.len());
    for &v in &t.nodes {
        if !seen.insert(v) {
            return Err(TrajectoryError::RepeatedNode(g.label(v).to_string()));
        }
    }
    if let Some((s, d)) = t.hops().find(|&(s, d)| !g.has_edge(s, d)) {
        return Err(TrajectoryError::MissingEdge(g.label(s).to_string(), g.label(d).to_string()));
    }
    Ok(())
}

/// A graph plus trajectories that are all valid on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    graph: Graph,
    trajectories: Vec<Trajectory>,
}

impl Dataset {
    pub fn new(graph: Graph, trajectories: Vec<Trajectory>) -> Result<Self, TrajectoryError> {
        for (k, t) in trajectories.iter().enumerate() {
            validate_trajectory(t, &graph)
                .map_err(|e| TrajectoryError::AtLine { line: k + 1, error: Box::new(e) })?;
        }
        Ok(Dataset { graph, trajectories })
    }

    /// Parses a trajectory file against `graph`: one trajectory per line,
    /// whitespace-separated labels, `#` comments. Errors carry the line.
    pub fn parse(graph: Graph, text: &str) -> Result<Self, TrajectoryError> {
        let mut trajectories = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = strip_comment(raw).trim();
            if body.is_empty() {
                continue;
            }
            let nodes = body
                .split_whitespace()
                .map(|l| {
                    graph
                        .index_of(l)
                        .ok_or_else(|| TrajectoryError::UnknownLabel { line, label: l.to_string() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let t = Trajectory::new(nodes);
            validate_trajectory(&t, &graph)
                .map_err(|e| TrajectoryError::AtLine { line, error: Box::new(e) })?;
            trajectories.push(t);
        }
        Ok(Dataset { graph, trajectories })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn trajectories(&self) -> &[Trajectory] {
        &self.trajectories
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn to_trajectory_text(&self) -> String {
        let mut out = String::new();
        for t in &self.trajectories {
            let labels: Vec<&str> = t.nodes.iter().map(|&v| self.graph.label(v)).collect();
            let _ = writeln!(out, "{}", labels.join(" "));
        }
        out
    }

    pub(crate) fn from_parts_unchecked(graph: Graph, trajectories: Vec<Trajectory>) -> Self {
        Dataset { graph, trajectories }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilizationBundle {
    pub f: CountMatrix,
    pub d: CountMatrix,
    pub l: CountMatrix,
    pub t: CountMatrix,
    pub tc: CountMatrix,
    pub f_hat: BinaryMatrix,
    pub d_hat: BinaryMatrix,
    pub l_hat: BinaryMatrix,
    pub t_hat: BinaryMatrix,
    pub tc_hat: BinaryMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairKind {
    Flow,
    Indirect,
}

/// Per-trajectory pair tallies, combined by elementwise sum.
#[derive(Clone)]
struct Tally {
    n: usize,
    f: Vec<u64>,
    d: Vec<u64>,
    l: Vec<u64>,
    t: Vec<u64>,
    tc: Vec<u64>,
}

impl Tally {
    fn new(n: usize) -> Self {
        let z = vec![0; n * n];
        Tally { n, f: z.clone(), d: z.clone(), l: z.clone(), t: z.clone(), tc: z }
    }

    fn add(mut self, traj: &Trajectory, adjacency: Option<&BinaryMatrix>) -> Self {
        for_each_pair(traj, |i, j, kind| {
            let k = i * self.n + j;
            self.d[k] += 1;
            match kind {
                PairKind::Flow => self.f[k] += 1,
                PairKind::Indirect => {
                    self.l[k] += 1;
                    if let Some(a) = adjacency {
                        if a.get(i, j) {
                            self.t[k] += 1;
                        } else {
                            self.tc[k] += 1;
                        }
                    }
                }
            }
        });
        self
    }

    fn merge(mut self, other: Tally) -> Self {
        for (dst, src) in [
            (&mut self.f, other.f),
            (&mut self.d, other.d),
            (&mut self.l, other.l),
            (&mut self.t, other.t),
            (&mut self.tc, other.tc),
        ] {
            dst.iter_mut().zip(src).for_each(|(a, b)| *a += b);
        }
        self
    }
}

fn for_each_pair(t: &Trajectory, mut f: impl FnMut(usize, usize, PairKind)) {
    let nodes = t.nodes();
    for p in 0..nodes.len() {
        for q in p + 1..nodes.len() {
            let kind = if q == p + 1 { PairKind::Flow } else { PairKind::Indirect };
            f(nodes[p], nodes[q], kind);
        }
    }
}

fn tally(d: &Dataset, adjacency: Option<&BinaryMatrix>) -> Tally {
    let n = d.n();
    d.trajectories
        .par_iter()
        .fold(|| Tally::new(n), |acc, t| acc.add(t, adjacency))
        .reduce(|| Tally::new(n), Tally::merge)
}

fn to_matrix(n: usize, cells: Vec<u64>) -> CountMatrix {
    CountMatrix::from_cells(n, cells.into_iter().map(Finite).collect()).expect("n*n cells")
}

/// `F`: trajectories that traverse `(i, j)` as a consecutive hop.
pub fn flow_matrix(d: &Dataset) -> CountMatrix {
    to_matrix(d.n(), tally(d, None).f)
}

/// `D`: trajectories on which `i` appears before `j`.
pub fn od_matrix(d: &Dataset) -> CountMatrix {
    to_matrix(d.n(), tally(d, None).d)
}

/// `L`: trajectories on which `i` precedes `j` with at least one node between.
pub fn indirect_flow_matrix(d: &Dataset) -> CountMatrix {
    to_matrix(d.n(), tally(d, None).l)
}

/// `T`: indirect flows between pairs joined by a direct edge.
pub fn alternative_route_matrix(d: &Dataset, s: &StructureBundle) -> CountMatrix {
    to_matrix(d.n(), tally(d, Some(&s.a)).t)
}

/// `Tc`: indirect flows between pairs with no direct edge.
pub fn substitute_route_matrix(d: &Dataset, s: &StructureBundle) -> CountMatrix {
    to_matrix(d.n(), tally(d, Some(&s.a)).tc)
}

fn cross_check(identity: &str, lhs: &CountMatrix, rhs: &CountMatrix) -> Result<()> {
    match first_difference(lhs, rhs)? {
        None => Ok(()),
        Some((row, col)) => Err(Error::CrossCheckFailure {
            identity: identity.to_string(),
            row,
            col,
            lhs: lhs.get(row, col).to_string(),
            rhs: rhs.get(row, col).to_string(),
        }),
    }
}

/// Counts all five utilization matrices in one pass and verifies them against
/// their algebraic forms `T = A∘L`, `Tc = Ê∘D`, `L = T + Tc`,
/// `D = F + T + Tc`.
pub fn build_utilization(d: &Dataset, s: &StructureBundle) -> Result<UtilizationBundle> {
    let n = d.n();
    if crate::matrix::Cells::dim(&s.a) != n {
        return Err(crate::error::MatrixError::DimensionMismatch {
            left: n,
            right: crate::matrix::Cells::dim(&s.a),
        }
        .into());
    }
    let tally = tally(d, Some(&s.a));
    let f = to_matrix(n, tally.f);
    let dm = to_matrix(n, tally.d);
    let l = to_matrix(n, tally.l);
    let t = to_matrix(n, tally.t);
    let tc = to_matrix(n, tally.tc);

    cross_check("T = A∘L", &t, &hadamard(&s.a, &l)?)?;
    cross_check("Tᶜ = Ê∘D", &tc, &hadamard(&s.e_hat, &dm)?)?;
    cross_check("L = T + Tᶜ", &l, &ew_add(&t, &tc)?)?;
    cross_check("D = F + T + Tᶜ", &dm, &ew_add(&ew_add(&f, &t)?, &tc)?)?;

    Ok(UtilizationBundle {
        f_hat: binarize(&f),
        d_hat: binarize(&dm),
        l_hat: binarize(&l),
        t_hat: binarize(&t),
        tc_hat: binarize(&tc),
        f,
        d: dm,
        l,
        t,
        tc,
    })
}

/// Every edge carries at least one trajectory, i.e. `F̂ = A`.
pub fn is_fully_utilized(u: &UtilizationBundle, s: &StructureBundle) -> bool {
    u.f_hat == s.a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::ExtendedCount;
    use crate::matrix::{ew_leq, is_zero};
    use crate::structure::build_structure;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const D: usize = 3;

    fn fig1_graph() -> Graph {
        Graph::parse("A B\nB C\nC D\nB D\n").unwrap()
    }

    fn fig1(trajs: &str) -> (Dataset, StructureBundle) {
        let g = fig1_graph();
        let s = build_structure(&g).unwrap();
        (Dataset::parse(g, trajs).unwrap(), s)
    }

    fn ones(m: &CountMatrix) -> Vec<(usize, usize, u64)> {
        let n = crate::matrix::Cells::dim(m);
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| match m.get(i, j) {
                Finite(0) => None,
                Finite(v) => Some((i, j, v)),
                ExtendedCount::Inf => panic!("infinite utilization cell"),
            })
            .collect()
    }

    #[test]
    fn validation_examples() {
        let g = fig1_graph();
        assert!(validate_trajectory(&Trajectory::new(vec![A, B, C, D]), &g).is_ok());
        assert_eq!(
            validate_trajectory(&Trajectory::new(vec![A, B, A]), &g),
            Err(TrajectoryError::RepeatedNode("A".into()))
        );
        assert_eq!(
            validate_trajectory(&Trajectory::new(vec![A, C]), &g),
            Err(TrajectoryError::MissingEdge("A".into(), "C".into()))
        );
        assert_eq!(validate_trajectory(&Trajectory::new(vec![A]), &g), Err(TrajectoryError::TooShort(1)));
        assert_eq!(validate_trajectory(&Trajectory::new(vec![A, 9]), &g), Err(TrajectoryError::NodeOutOfRange(9)));
    }

    #[test]
    fn parse_reports_line_numbers() {
        let g = fig1_graph();
        let err = Dataset::parse(g.clone(), "A B C D\n# comment\nA C\n").unwrap_err();
        assert_eq!(
            err,
            TrajectoryError::AtLine {
                line: 3,
                error: Box::new(TrajectoryError::MissingEdge("A".into(), "C".into()))
            }
        );
        assert_eq!(err.root(), &TrajectoryError::MissingEdge("A".into(), "C".into()));
        let err = Dataset::parse(g, "A B\nA Q\n").unwrap_err();
        assert_eq!(err, TrajectoryError::UnknownLabel { line: 2, label: "Q".into() });
    }

    #[test]
    fn flow_examples() {
        let (d, _) = fig1("A B C D\n");
        assert_eq!(ones(&flow_matrix(&d)), vec![(A, B, 1), (B, C, 1), (C, D, 1)]);
        let (d, _) = fig1("");
        assert!(is_zero(&flow_matrix(&d)));
        let (d, _) = fig1("A B C D\nA B C D\n");
        assert_eq!(ones(&flow_matrix(&d)), vec![(A, B, 2), (B, C, 2), (C, D, 2)]);
    }

    #[test]
    fn od_examples() {
        let (d, _) = fig1("A B C D\n");
        assert_eq!(
            ones(&od_matrix(&d)),
            vec![(A, B, 1), (A, C, 1), (A, D, 1), (B, C, 1), (B, D, 1), (C, D, 1)]
        );
        let (d, _) = fig1("");
        assert!(is_zero(&od_matrix(&d)));
        let (d, _) = fig1("B D\n");
        assert_eq!(ones(&od_matrix(&d)), vec![(B, D, 1)]);
    }

    #[test]
    fn indirect_examples() {
        let (d, _) = fig1("A B C D\n");
        assert_eq!(ones(&indirect_flow_matrix(&d)), vec![(A, C, 1), (A, D, 1), (B, D, 1)]);
        let (d, _) = fig1("C D\n");
        assert!(is_zero(&indirect_flow_matrix(&d)));
        // Chain of k nodes: C(k,2) - (k-1) indirect pairs.
        for k in 2..=7usize {
            let g = Graph::with_indices(k, (0..k - 1).map(|i| (i, i + 1))).unwrap();
            let d = Dataset::new(g, vec![Trajectory::new((0..k).collect())]).unwrap();
            assert_eq!(ones(&indirect_flow_matrix(&d)).len(), k * (k - 1) / 2 - (k - 1));
        }
    }

    #[test]
    fn alternative_route_examples() {
        let (d, s) = fig1("A B C D\n");
        assert_eq!(ones(&alternative_route_matrix(&d, &s)), vec![(B, D, 1)]);
        let g = Graph::with_indices(3, [(0, 1), (1, 2)]).unwrap();
        let s = build_structure(&g).unwrap();
        let d = Dataset::new(g, vec![Trajectory::new(vec![0, 1, 2])]).unwrap();
        assert!(is_zero(&alternative_route_matrix(&d, &s)));
        let (d, s) = fig1("A B C D\nB C D\nB C D\n");
        assert_eq!(ones(&alternative_route_matrix(&d, &s)), vec![(B, D, 3)]);
    }

    #[test]
    fn substitute_route_examples() {
        let (d, s) = fig1("A B C D\n");
        let tc = substitute_route_matrix(&d, &s);
        assert_eq!(ones(&tc), vec![(A, C, 1), (A, D, 1)]);
        assert_eq!(tc, hadamard(&s.e_hat, &od_matrix(&d)).unwrap());

        let g = Graph::with_indices(3, (0..3).flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))).unwrap();
        let s = build_structure(&g).unwrap();
        let d = Dataset::new(g, vec![Trajectory::new(vec![0, 1, 2]), Trajectory::new(vec![2, 0, 1])]).unwrap();
        assert!(is_zero(&substitute_route_matrix(&d, &s)));

        let g = Graph::parse("A B\nB C\n").unwrap();
        let s = build_structure(&g).unwrap();
        let d = Dataset::parse(g, "A B C\nA B C\n").unwrap();
        assert_eq!(ones(&substitute_route_matrix(&d, &s)), vec![(0, 2, 2)]);
    }

    #[test]
    fn bundle_on_fig1() {
        let (d, s) = fig1("A B C D\n");
        let u = build_utilization(&d, &s).unwrap();
        assert_eq!(u.l.get(B, D), Finite(1));
        assert_eq!(u.t.get(B, D), Finite(1));
        assert!(ew_leq(&u.f, &u.d).unwrap());
        assert!(!is_fully_utilized(&u, &s));
        let (d, s) = fig1("A B C D\nB D\n");
        assert!(is_fully_utilized(&build_utilization(&d, &s).unwrap(), &s));
    }

    #[test]
    fn empty_bundle_is_zero() {
        let (d, s) = fig1("");
        let u = build_utilization(&d, &s).unwrap();
        for m in [&u.f, &u.d, &u.l, &u.t, &u.tc] {
            assert!(is_zero(m));
        }
        let g = Graph::with_indices(3, []).unwrap();
        let s = build_structure(&g).unwrap();
        let d = Dataset::new(g, vec![]).unwrap();
        assert!(is_fully_utilized(&build_utilization(&d, &s).unwrap(), &s));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let (d, _) = fig1("");
        let s = build_structure(&Graph::with_indices(2, []).unwrap()).unwrap();
        assert!(build_utilization(&d, &s).is_err());
    }
}
