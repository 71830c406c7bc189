use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{evaluate_identity, IdentitySpec, IdentityVerdict};
use crate::generators::{gen_dataset, GenConfig};
use crate::structure::build_structure;
use crate::utilization::{build_utilization, Dataset, Trajectory};

const META_STREAM: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub allow_duplicates: bool,
    pub max_n: usize,
    pub max_traj: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { allow_duplicates: true, max_n: 8, max_traj: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Zero-based index of the generated instance that first falsified.
    pub instance: usize,
    pub dataset: Dataset,
    pub verdict: IdentityVerdict,
}

fn verdict(spec: &IdentitySpec, d: &Dataset) -> Option<IdentityVerdict> {
    let s = build_structure(d.graph()).ok()?;
    let u = build_utilization(d, &s).ok()?;
    evaluate_identity(spec, &s, &u, d.graph().labels()).ok()
}

fn falsifies(spec: &IdentitySpec, d: &Dataset) -> bool {
    verdict(spec, d).is_some_and(|v| !v.holds)
}

/// Generates up to `budget` random datasets and returns the first that
/// falsifies `spec`, shrunk by [`minimize`]. Deterministic in
/// `(spec, budget, seed, opts)`. Instances on which evaluation is undefined
/// are skipped.
pub fn search_counterexample(
    spec: &IdentitySpec,
    budget: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Option<Counterexample> {
    let mut meta = ChaCha8Rng::seed_from_u64(seed);
    meta.set_stream(META_STREAM);
    let max_n = opts.max_n.max(2);
    for instance in 0..budget {
        let n = meta.gen_range(2..=max_n);
        let cfg = GenConfig {
            n,
            edge_prob: meta.gen_range(0.15..0.7),
            max_traj: meta.gen_range(1..=opts.max_traj.max(1)),
            max_len: n,
            allow_duplicates: opts.allow_duplicates,
            seed: meta.gen(),
        };
        let Ok(d) = gen_dataset(&cfg) else { continue };
        if falsifies(spec, &d) {
            let dataset = minimize(spec, d, opts.allow_duplicates);
            let verdict = verdict(spec, &dataset).expect("minimized dataset evaluates");
            return Some(Counterexample { instance, dataset, verdict });
        }
    }
    None
}

/// Greedy shrinking of a falsifying dataset until no single step keeps it
/// falsifying: drop a trajectory, trim a trajectory end, replace a
/// trajectory by a copy of a shorter one (only with `allow_duplicates`),
/// drop an edge no trajectory uses, drop an isolated node. Every step
/// shrinks the dataset, so this terminates.
pub fn minimize(spec: &IdentitySpec, mut d: Dataset, allow_duplicates: bool) -> Dataset {
    debug_assert!(falsifies(spec, &d));
    loop {
        let next = shrink_candidates(&d, allow_duplicates).into_iter().find(|c| falsifies(spec, c));
        match next {
            Some(smaller) => d = smaller,
            None => return d,
        }
    }
}

fn shrink_candidates(d: &Dataset, allow_duplicates: bool) -> Vec<Dataset> {
    let g = d.graph();
    let trajs = d.trajectories();
    let mut out = Vec::new();

    for k in 0..trajs.len() {
        let mut t = trajs.to_vec();
        t.remove(k);
        out.push(Dataset::from_parts_unchecked(g.clone(), t));
    }
    for (k, traj) in trajs.iter().enumerate() {
        if traj.len() > 2 {
            let nodes = traj.nodes();
            for trimmed in [&nodes[1..], &nodes[..nodes.len() - 1]] {
                let mut t = trajs.to_vec();
                t[k] = Trajectory::new(trimmed.to_vec());
                out.push(Dataset::from_parts_unchecked(g.clone(), t));
            }
        }
    }
    if allow_duplicates {
        for (k, long) in trajs.iter().enumerate() {
            for short in trajs.iter().filter(|s| s.len() < long.len()) {
                let mut t = trajs.to_vec();
                t[k] = short.clone();
                out.push(Dataset::from_parts_unchecked(g.clone(), t));
            }
        }
    }
    for e in g.edges() {
        if !trajs.iter().any(|t| t.uses_edge(e)) {
            out.push(Dataset::from_parts_unchecked(g.without_edge(e), trajs.to_vec()));
        }
    }
    if g.n() > 1 {
        for v in 0..g.n() {
            let touched = g.edges().any(|(s, t)| s == v || t == v)
                || trajs.iter().any(|t| t.nodes().contains(&v));
            if touched {
                continue;
            }
            let keep: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
            let (h, remap) = g.induced(&keep);
            let t = trajs
                .iter()
                .map(|t| Trajectory::new(t.nodes().iter().map(|&u| remap[u].expect("kept")).collect()))
                .collect();
            out.push(Dataset::from_parts_unchecked(h, t));
        }
    }
    out
}
