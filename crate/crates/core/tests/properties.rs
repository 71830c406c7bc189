use netmat::catalogue::{list_identities, IdentityClass};
use netmat::count::{ExtendedCount, Finite};
use netmat::generators::{gen_dataset, gen_fully_utilized, GenConfig};
use netmat::matrix::{ew_add, ew_leq, hadamard, is_zero, mutually_exclusive, Cells, CountMatrix};
use netmat::{audit_dataset, build_structure, build_utilization, is_fully_utilized, Dataset, UtilizationBundle};

fn sweep_config(seed: u64) -> GenConfig {
    let n = 1 + (seed % 10) as usize;
    GenConfig {
        n,
        edge_prob: [0.15, 0.3, 0.45, 0.6][(seed % 4) as usize],
        max_traj: (seed % 17) as usize,
        max_len: n,
        allow_duplicates: !seed.is_multiple_of(3),
        seed,
    }
}

/// Counts each utilization cell straight from its definition by locating
/// both nodes on every trajectory.
fn oracle(d: &Dataset) -> [CountMatrix; 5] {
    let n = d.n();
    let mut cells = vec![[0u64; 5]; n * n];
    for i in 0..n {
        for j in 0..n {
            for t in d.trajectories() {
                let pos = |v| t.nodes().iter().position(|&x| x == v);
                let (Some(pi), Some(pj)) = (pos(i), pos(j)) else { continue };
                if pi >= pj {
                    continue;
                }
                let c = &mut cells[i * n + j];
                c[1] += 1;
                if pj == pi + 1 {
                    c[0] += 1;
                } else {
                    c[2] += 1;
                    if d.graph().has_edge(i, j) {
                        c[3] += 1;
                    } else {
                        c[4] += 1;
                    }
                }
            }
        }
    }
    std::array::from_fn(|k| CountMatrix::from_cells(n, cells.iter().map(|c| Finite(c[k])).collect()).unwrap())
}

fn bundle(d: &Dataset) -> UtilizationBundle {
    build_utilization(d, &build_structure(d.graph()).unwrap()).unwrap()
}

#[test]
fn counting_matches_definitional_oracle() {
    for seed in 0..300 {
        let d = gen_dataset(&sweep_config(seed)).unwrap();
        let u = bundle(&d);
        let [f, dm, l, t, tc] = oracle(&d);
        assert_eq!(u.f, f, "F seed {seed}");
        assert_eq!(u.d, dm, "D seed {seed}");
        assert_eq!(u.l, l, "L seed {seed}");
        assert_eq!(u.t, t, "T seed {seed}");
        assert_eq!(u.tc, tc, "Tc seed {seed}");
    }
}

#[test]
fn table_rows_hold_on_every_dataset() {
    for seed in 0..300 {
        let d = gen_dataset(&sweep_config(seed)).unwrap();
        let s = build_structure(d.graph()).unwrap();
        let u = build_utilization(&d, &s).unwrap();
        assert!(ew_leq(&u.f_hat, &s.a).unwrap());
        assert_eq!(hadamard(&s.a, &u.f).unwrap(), u.f);
        assert!(ew_leq(&u.d_hat, &s.p_hat).unwrap());
        assert_eq!(hadamard(&s.p_hat, &u.d).unwrap(), u.d);
        assert!(ew_leq(&u.f, &u.d).unwrap());
        assert!(ew_leq(&u.f_hat, &u.d_hat).unwrap());
        for i in 0..d.n() {
            for m in [&u.f, &u.d, &u.l, &u.t, &u.tc] {
                assert_eq!(m.get(i, i), ExtendedCount::ZERO);
            }
        }
    }
}

#[test]
fn aggregation_is_additive_over_trajectories() {
    for seed in 0..100 {
        let d = gen_dataset(&sweep_config(seed)).unwrap();
        let s = build_structure(d.graph()).unwrap();
        let whole = build_utilization(&d, &s).unwrap();
        let empty = Dataset::new(d.graph().clone(), vec![]).unwrap();
        let mut acc = build_utilization(&empty, &s).unwrap();
        for t in d.trajectories() {
            let single = Dataset::new(d.graph().clone(), vec![t.clone()]).unwrap();
            let part = build_utilization(&single, &s).unwrap();
            acc.f = ew_add(&acc.f, &part.f).unwrap();
            acc.d = ew_add(&acc.d, &part.d).unwrap();
            acc.l = ew_add(&acc.l, &part.l).unwrap();
            acc.t = ew_add(&acc.t, &part.t).unwrap();
            acc.tc = ew_add(&acc.tc, &part.tc).unwrap();
        }
        assert_eq!((acc.f, acc.d, acc.l, acc.t, acc.tc), (whole.f, whole.d, whole.l, whole.t, whole.tc));
    }
}

#[test]
fn zero_product_derivation_replays() {
    for seed in 0..200 {
        let d = gen_dataset(&sweep_config(seed)).unwrap();
        let s = build_structure(d.graph()).unwrap();
        let u = build_utilization(&d, &s).unwrap();
        let direct = hadamard(&u.f, &u.tc).unwrap();
        let via = hadamard(&hadamard(&s.a, &u.f).unwrap(), &hadamard(&s.e_hat, &u.d).unwrap()).unwrap();
        assert_eq!(direct, via);
        assert!(is_zero(&direct));
    }
}

#[test]
fn exclusivity_predicate_matches_zero_products() {
    let specs = list_identities();
    for seed in 0..200 {
        let d = gen_dataset(&sweep_config(seed)).unwrap();
        let s = build_structure(d.graph()).unwrap();
        let u = build_utilization(&d, &s).unwrap();
        for spec in specs.iter().filter(|s| s.class == IdentityClass::MutualExclusivity) {
            let (x, y) = spec.exclusive_pair().unwrap();
            let (x, y) = (x.lookup(&s, &u), y.lookup(&s, &u));
            assert_eq!(mutually_exclusive(&x, &y).unwrap(), is_zero(&hadamard(&x, &y).unwrap()), "{}", spec.id);
        }
    }
}

#[test]
fn fully_utilized_implies_hat_equalities() {
    for seed in 0..200 {
        let d = gen_fully_utilized(&sweep_config(seed)).unwrap();
        let s = build_structure(d.graph()).unwrap();
        let u = build_utilization(&d, &s).unwrap();
        assert!(is_fully_utilized(&u, &s));
        assert_eq!(u.f_hat, s.a);
        // Edge coverage pins D̂ on edges only; pairs reachable solely through
        // intermediate nodes still need a trajectory of their own.
        assert_eq!(u.d_hat == s.p_hat, u.tc_hat == s.e_hat, "seed {seed}");
    }
}

#[test]
fn edge_coverage_does_not_imply_od_coverage() {
    let g = netmat::Graph::parse("A B\nB C\n").unwrap();
    let d = Dataset::parse(g, "A B\nB C\n").unwrap();
    let report = audit_dataset(&d).unwrap();
    assert!(report.fully_utilized);
    assert!(report.verdict("FU.FHAT_EQ_A").unwrap().holds);
    let v = report.verdict("FU.DHAT_EQ_PHAT").unwrap();
    let w = v.witness.as_ref().unwrap();
    assert_eq!((w.row_label.as_str(), w.col_label.as_str(), w.lhs, w.rhs), ("A", "C", Finite(0), Finite(1)));
}

#[test]
fn soundness_on_random_datasets() {
    for seed in 0..300 {
        let report = audit_dataset(&gen_dataset(&sweep_config(seed)).unwrap()).unwrap();
        assert!(report.is_sound(), "seed {seed}\n{}", report.to_table());
        assert_eq!(report.verdicts.len(), list_identities().len());
        for e in &report.verdicts {
            if e.verdict.id == "FU.FHAT_EQ_A" && report.fully_utilized {
                assert!(e.verdict.holds, "seed {seed}: {}", e.verdict.id);
            }
        }
    }
}

#[test]
fn dataset_text_round_trip() {
    for seed in 0..50 {
        let d = gen_dataset(&sweep_config(seed)).unwrap();
        let g = netmat::Graph::parse(&d.graph().to_edge_list()).unwrap();
        let back = Dataset::parse(g, &d.to_trajectory_text()).unwrap();
        assert_eq!(back, d);
        assert_eq!(netmat::structure::build_adjacency(back.graph()).dim(), d.n());
    }
}
