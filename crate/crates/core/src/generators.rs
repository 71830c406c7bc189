//! Seeded random graphs and trajectory datasets.
//!
//! All generation runs on ChaCha8 streams derived from `GenConfig::seed`, so
//! a config reproduces the same dataset on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::utilization::{Dataset, Trajectory};

const GRAPH_STREAM: u64 = 0;
const TRAJECTORY_STREAM: u64 = 1;
const WALK_RETRIES: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenConfig {
    pub n: usize,
    pub edge_prob: f64,
    pub max_traj: usize,
    pub max_len: usize,
    #[serde(default)]
    pub allow_duplicates: bool,
    #[serde(default)]
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { n: 6, edge_prob: 0.4, max_traj: 10, max_len: 6, allow_duplicates: false, seed: 0 }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.edge_prob) {
            return Err(Error::Config(format!("edge_prob {} is outside [0, 1]", self.edge_prob)));
        }
        if self.max_len > self.n {
            return Err(Error::Config(format!(
                "max_len {} exceeds node count {}",
                self.max_len, self.n
            )));
        }
        Ok(())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Each ordered pair `(i, j)`, `i != j`, is an edge with probability
/// `edge_prob`, independently.
pub fn gen_digraph(cfg: &GenConfig) -> Result<Graph> {
    cfg.validate()?;
    let mut rng = cfg.rng(GRAPH_STREAM);
    let n = cfg.n;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(cfg.edge_prob) {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::with_indices(n, edges)?)
}

/// Samples a simple directed path of 2..=`max_len` nodes. Dead ends restart
/// the walk a bounded number of times; the longest attempt wins.
pub fn sample_trajectory<R: Rng + ?Sized>(g: &Graph, max_len: usize, rng: &mut R) -> Option<Trajectory> {
    let max_len = max_len.min(g.n());
    if max_len < 2 {
        return None;
    }
    let starts: Vec<usize> = (0..g.n()).filter(|&v| !g.successors(v).is_empty()).collect();
    if starts.is_empty() {
        return None;
    }
    let target = rng.gen_range(2..=max_len);
    let mut best: Vec<usize> = Vec::new();
    let mut visited = vec![false; g.n()];
    for _ in 0..WALK_RETRIES {
        visited.iter_mut().for_each(|v| *v = false);
        let start = *starts.choose(rng).expect("nonempty");
        let mut path = vec![start];
        visited[start] = true;
        while path.len() < target {
            let here = *path.last().expect("nonempty");
            let open: Vec<usize> = g.successors(here).iter().copied().filter(|&v| !visited[v]).collect();
            let Some(&next) = open.choose(rng) else { break };
            visited[next] = true;
            path.push(next);
        }
        if path.len() > best.len() {
            best = path;
        }
        if best.len() == target {
            break;
        }
    }
    Some(Trajectory::new(best))
}

/// Convenience wrapper over [`sample_trajectory`] with its own seed.
pub fn gen_trajectory(g: &Graph, max_len: usize, seed: u64) -> Option<Trajectory> {
    sample_trajectory(g, max_len, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Appends up to `attempts` random trajectories accepted by `keep`. With
/// duplicates allowed, a quarter of draws copy an earlier trajectory.
fn extend_random<R: Rng>(
    g: &Graph,
    cfg: &GenConfig,
    rng: &mut R,
    trajectories: &mut Vec<Trajectory>,
    attempts: usize,
    keep: impl Fn(&Trajectory) -> bool,
) {
    for _ in 0..attempts {
        if cfg.allow_duplicates && !trajectories.is_empty() && rng.gen_ratio(1, 4) {
            let copy = trajectories.choose(rng).expect("nonempty").clone();
            trajectories.push(copy);
            continue;
        }
        let Some(t) = sample_trajectory(g, cfg.max_len, rng) else { return };
        if !keep(&t) || (!cfg.allow_duplicates && trajectories.contains(&t)) {
            continue;
        }
        trajectories.push(t);
    }
}

/// A random graph plus up to `max_traj` random trajectories.
pub fn gen_dataset(cfg: &GenConfig) -> Result<Dataset> {
    let g = gen_digraph(cfg)?;
    let mut rng = cfg.rng(TRAJECTORY_STREAM);
    let mut trajectories = Vec::new();
    extend_random(&g, cfg, &mut rng, &mut trajectories, cfg.max_traj, |_| true);
    Ok(Dataset::from_parts_unchecked(g, trajectories))
}

/// Covers every edge with its own two-node trajectory, then adds up to
/// `max_traj` random extras.
pub fn gen_fully_utilized(cfg: &GenConfig) -> Result<Dataset> {
    let g = gen_digraph(cfg)?;
    let mut rng = cfg.rng(TRAJECTORY_STREAM);
    let mut trajectories: Vec<Trajectory> = g.edges().map(|(s, d)| Trajectory::new(vec![s, d])).collect();
    extend_random(&g, cfg, &mut rng, &mut trajectories, cfg.max_traj, |_| true);
    Ok(Dataset::from_parts_unchecked(g, trajectories))
}

/// Like [`gen_fully_utilized`] but one randomly chosen edge is never
/// traversed. Returns `None` when the graph has no edges.
pub fn gen_with_uncovered_edge(cfg: &GenConfig) -> Result<Option<(Dataset, (usize, usize))>> {
    let g = gen_digraph(cfg)?;
    let mut rng = cfg.rng(TRAJECTORY_STREAM);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let Some(&skipped) = edges.choose(&mut rng) else { return Ok(None) };
    let mut trajectories: Vec<Trajectory> = edges
        .iter()
        .filter(|&&e| e != skipped)
        .map(|&(s, d)| Trajectory::new(vec![s, d]))
        .collect();
    extend_random(&g, cfg, &mut rng, &mut trajectories, cfg.max_traj, |t| !t.uses_edge(skipped));
    Ok(Some((Dataset::from_parts_unchecked(g, trajectories), skipped)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::build_structure;
    use crate::utilization::{build_utilization, is_fully_utilized, validate_trajectory};

    fn cfg(n: usize, edge_prob: f64, seed: u64) -> GenConfig {
        GenConfig { n, edge_prob, max_traj: 12, max_len: n, allow_duplicates: false, seed }
    }

    #[test]
    fn config_validation() {
        assert!(matches!(gen_digraph(&cfg(0, 0.5, 1)), Err(Error::Config(_))));
        assert!(gen_digraph(&cfg(3, 1.5, 1)).is_err());
        assert!(gen_digraph(&GenConfig { max_len: 4, ..cfg(3, 0.5, 1) }).is_err());
    }

    #[test]
    fn edge_prob_extremes() {
        assert_eq!(gen_digraph(&cfg(5, 0.0, 3)).unwrap().edge_count(), 0);
        let g = gen_digraph(&cfg(5, 1.0, 3)).unwrap();
        assert_eq!(g.edge_count(), 20);
        assert!((0..5).all(|i| !g.has_edge(i, i)));
    }

    #[test]
    fn deterministic_per_seed() {
        let c = GenConfig { allow_duplicates: true, ..cfg(7, 0.35, 42) };
        assert_eq!(gen_digraph(&c).unwrap(), gen_digraph(&c).unwrap());
        assert_eq!(gen_dataset(&c).unwrap(), gen_dataset(&c).unwrap());
        let other = GenConfig { seed: 43, ..c.clone() };
        assert_ne!(gen_dataset(&c).unwrap(), gen_dataset(&other).unwrap());
    }

    #[test]
    fn trajectory_examples() {
        let empty = Graph::with_indices(4, []).unwrap();
        assert_eq!(gen_trajectory(&empty, 4, 1), None);
        let single = Graph::with_indices(3, [(2, 0)]).unwrap();
        for seed in 0..20 {
            assert_eq!(gen_trajectory(&single, 3, seed).unwrap().nodes(), &[2, 0]);
        }
        assert_eq!(gen_trajectory(&single, 1, 0), None);
    }

    #[test]
    fn generated_trajectories_validate() {
        for seed in 0..200 {
            let c = GenConfig { allow_duplicates: seed % 2 == 0, ..cfg(1 + (seed as usize % 9), 0.4, seed) };
            let d = gen_dataset(&c).unwrap();
            for t in d.trajectories() {
                validate_trajectory(t, d.graph()).unwrap();
                assert!(t.len() <= c.max_len);
            }
        }
    }

    #[test]
    fn max_traj_zero_is_empty() {
        let d = gen_dataset(&GenConfig { max_traj: 0, ..cfg(5, 0.6, 9) }).unwrap();
        assert!(d.trajectories().is_empty());
    }

    #[test]
    fn duplicates_only_when_allowed() {
        let mut saw_duplicate = false;
        for seed in 0..50 {
            let base = GenConfig { max_traj: 20, ..cfg(5, 0.5, seed) };
            let d = gen_dataset(&base).unwrap();
            let mut sorted = d.trajectories().to_vec();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), d.trajectories().len());

            let d = gen_dataset(&GenConfig { allow_duplicates: true, ..base }).unwrap();
            let mut sorted = d.trajectories().to_vec();
            sorted.sort();
            sorted.dedup();
            saw_duplicate |= sorted.len() < d.trajectories().len();
        }
        assert!(saw_duplicate);
    }

    #[test]
    fn fully_utilized_always() {
        for seed in 0..100 {
            let d = gen_fully_utilized(&cfg(2 + seed as usize % 8, 0.3, seed)).unwrap();
            let s = build_structure(d.graph()).unwrap();
            let u = build_utilization(&d, &s).unwrap();
            assert!(is_fully_utilized(&u, &s));
            assert!(d.trajectories().len() >= d.graph().edge_count());
        }
        let d = gen_fully_utilized(&cfg(4, 0.0, 1)).unwrap();
        assert!(d.trajectories().is_empty());
    }

    #[test]
    fn fig1_cover_has_one_trajectory_per_edge() {
        let g = Graph::parse("A B\nB C\nC D\nB D\n").unwrap();
        let covers: Vec<Trajectory> = g.edges().map(|(s, d)| Trajectory::new(vec![s, d])).collect();
        assert_eq!(covers.len(), 4);
        Dataset::new(g, covers).unwrap();
    }

    #[test]
    fn uncovered_edge_stays_uncovered() {
        let mut produced = 0;
        for seed in 0..100 {
            let Some((d, e)) = gen_with_uncovered_edge(&cfg(5, 0.5, seed)).unwrap() else { continue };
            produced += 1;
            assert!(d.trajectories().iter().all(|t| !t.uses_edge(e)));
            let s = build_structure(d.graph()).unwrap();
            assert!(!is_fully_utilized(&build_utilization(&d, &s).unwrap(), &s));
        }
        assert!(produced > 90);
        assert!(gen_with_uncovered_edge(&cfg(3, 0.0, 0)).unwrap().is_none());
    }

    #[test]
    fn config_json_field_names() {
        let c: GenConfig = serde_json::from_str(
            r#"{"n":4,"edge_prob":0.5,"max_traj":3,"max_len":4,"allow_duplicates":true,"seed":7}"#,
        )
        .unwrap();
        assert_eq!(c.seed, 7);
        assert!(serde_json::from_str::<GenConfig>(r#"{"n":4,"edge_prob":0.5,"max_traj":3,"max_len":4,"bogus":1}"#).is_err());
    }
}
