use std::fs;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use netmat::catalogue::{catalogue_json, load_catalogue, search_counterexample, Witness};
use netmat::generators::{gen_dataset, gen_fully_utilized, GenConfig};
use netmat::io::{to_csv, to_json};
use netmat::{
    audit_with, build_structure, build_utilization, find_identity, is_fully_utilized, list_identities,
    Dataset, Graph, SearchOptions, Symbol,
};

use crate::output::{RunManifest, Staged};
use crate::{Cli, Command, Format, GenArgs, HuntArgs, Inputs};

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Compute(inputs) => compute(cli, inputs),
        Command::Audit { inputs, catalogue } => audit(cli, inputs, catalogue.as_deref()),
        Command::Gen(args) => gen(cli, args),
        Command::Hunt(args) => hunt(cli, args),
        Command::Catalogue => export_catalogue(cli),
    }
}

fn manifest(cli: &Cli, subcommand: &'static str, inputs: Vec<String>, seed: Option<u64>, parameters: serde_json::Value) -> RunManifest {
    RunManifest {
        tool: "netmat",
        version: env!("CARGO_PKG_VERSION"),
        subcommand,
        inputs,
        seed,
        out_dir: cli.out.display().to_string(),
        format: cli.format.as_str(),
        parameters,
        files: Vec::new(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_dataset(inputs: &Inputs) -> Result<Dataset> {
    let graph = Graph::parse(&read(&inputs.graph)?)
        .with_context(|| format!("parsing {}", inputs.graph.display()))?;
    Dataset::parse(graph, &read(&inputs.trajectories)?)
        .with_context(|| format!("parsing {}", inputs.trajectories.display()))
}

fn input_names(inputs: &Inputs) -> Vec<String> {
    vec![inputs.graph.display().to_string(), inputs.trajectories.display().to_string()]
}

#[derive(Serialize)]
struct Summary {
    n: usize,
    edges: usize,
    trajectories: usize,
    fully_utilized: bool,
}

fn compute(cli: &Cli, inputs: &Inputs) -> Result<ExitCode> {
    let d = load_dataset(inputs)?;
    let s = build_structure(d.graph())?;
    let u = build_utilization(&d, &s)?;
    let labels = d.graph().labels();
    let mut staged = Staged::default();
    for sym in Symbol::ALL {
        let m = sym.lookup(&s, &u);
        let (ext, text) = match cli.format {
            Format::Csv => ("csv", to_csv(labels, &m)),
            Format::Json => ("json", to_json(labels, &m) + "\n"),
        };
        staged.add(format!("{}.{ext}", sym.file_stem()), text);
    }
    let summary = Summary {
        n: d.n(),
        edges: d.graph().edge_count(),
        trajectories: d.trajectories().len(),
        fully_utilized: is_fully_utilized(&u, &s),
    };
    staged.add_json("summary.json", &summary);
    let files = staged.commit(&cli.out, manifest(cli, "compute", input_names(inputs), None, json!({})))?;
    if !cli.quiet {
        println!(
            "n={} edges={} trajectories={} fully_utilized={}",
            summary.n, summary.edges, summary.trajectories, summary.fully_utilized
        );
        println!("wrote {} files to {}", files.len(), cli.out.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn audit(cli: &Cli, inputs: &Inputs, catalogue: Option<&Path>) -> Result<ExitCode> {
    let d = load_dataset(inputs)?;
    let specs = match catalogue {
        Some(p) => load_catalogue(&read(p)?).with_context(|| format!("loading {}", p.display()))?,
        None => list_identities(),
    };
    let report = audit_with(&d, &specs)?;
    let table = report.to_table();
    let mut staged = Staged::default();
    staged.add_json("audit.json", &report);
    staged.add("audit.txt", table.clone());
    let mut names = input_names(inputs);
    if let Some(p) = catalogue {
        names.push(p.display().to_string());
    }
    staged.commit(&cli.out, manifest(cli, "audit", names, None, json!({})))?;
    if !cli.quiet {
        print!("{table}");
    }
    Ok(if report.is_sound() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn resolve_gen_config(cli: &Cli, args: &GenArgs) -> Result<GenConfig> {
    let mut cfg = match &args.config {
        Some(p) => serde_json::from_str::<GenConfig>(&read(p)?)
            .with_context(|| format!("parsing config {}", p.display()))?,
        None => GenConfig::default(),
    };
    if let Some(n) = args.n {
        cfg.n = n;
        if args.max_len.is_none() && args.config.is_none() {
            cfg.max_len = n;
        }
    }
    if let Some(p) = args.edge_prob {
        cfg.edge_prob = p;
    }
    if let Some(m) = args.max_traj {
        cfg.max_traj = m;
    }
    if let Some(m) = args.max_len {
        cfg.max_len = m;
    }
    if args.allow_duplicates {
        cfg.allow_duplicates = true;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<ExitCode> {
    let cfg = resolve_gen_config(cli, args)?;
    let d = if args.fully_utilized { gen_fully_utilized(&cfg)? } else { gen_dataset(&cfg)? };
    let mut staged = Staged::default();
    staged.add("graph.txt", d.graph().to_edge_list());
    staged.add("trajectories.txt", d.to_trajectory_text());
    let mut inputs = Vec::new();
    if let Some(p) = &args.config {
        inputs.push(p.display().to_string());
    }
    let params = json!({ "config": cfg, "fully_utilized": args.fully_utilized });
    staged.commit(&cli.out, manifest(cli, "gen", inputs, Some(cfg.seed), params))?;
    if !cli.quiet {
        println!(
            "generated n={} edges={} trajectories={} in {}",
            d.n(),
            d.graph().edge_count(),
            d.trajectories().len(),
            cli.out.display()
        );
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct HuntReport {
    id: String,
    class: &'static str,
    formula: String,
    budget: usize,
    seed: u64,
    allow_duplicates: bool,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dataset: Option<serde_json::Value>,
}

fn hunt(cli: &Cli, args: &HuntArgs) -> Result<ExitCode> {
    let spec = find_identity(&args.id)?;
    if args.budget == 0 {
        bail!("--budget must be positive");
    }
    let seed = cli.seed.unwrap_or(0);
    let opts = SearchOptions {
        allow_duplicates: !args.no_duplicates,
        max_n: args.max_n,
        max_traj: args.max_traj,
    };
    let found = search_counterexample(&spec, args.budget, seed, &opts);
    let mut staged = Staged::default();
    let mut report = HuntReport {
        id: spec.id.clone(),
        class: spec.class.as_str(),
        formula: spec.formula(),
        budget: args.budget,
        seed,
        allow_duplicates: opts.allow_duplicates,
        found: found.is_some(),
        instance: None,
        witness: None,
        dataset: None,
    };
    if let Some(c) = &found {
        staged.add("graph.txt", c.dataset.graph().to_edge_list());
        staged.add("trajectories.txt", c.dataset.to_trajectory_text());
        report.instance = Some(c.instance);
        report.witness = c.verdict.witness.clone();
        report.dataset = Some(json!({
            "n": c.dataset.n(),
            "edges": c.dataset.graph().edge_count(),
            "trajectories": c.dataset.trajectories().len(),
            "graph_file": "graph.txt",
            "trajectories_file": "trajectories.txt",
        }));
    }
    staged.add_json("hunt.json", &report);
    let params = json!({
        "id": spec.id,
        "budget": args.budget,
        "allow_duplicates": opts.allow_duplicates,
        "max_n": opts.max_n,
        "max_traj": opts.max_traj,
    });
    staged.commit(&cli.out, manifest(cli, "hunt", Vec::new(), Some(seed), params))?;
    if !cli.quiet {
        match (&found, &report.witness) {
            (Some(c), Some(w)) => println!(
                "{}: counterexample found at instance {} ({} nodes, {} trajectories); witness ({}, {}): {} vs {}",
                spec.id,
                c.instance,
                c.dataset.n(),
                c.dataset.trajectories().len(),
                w.row_label,
                w.col_label,
                w.lhs,
                w.rhs
            ),
            _ => println!("{}: no counterexample found within {} instances", spec.id, args.budget),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn export_catalogue(cli: &Cli) -> Result<ExitCode> {
    let specs = list_identities();
    let mut staged = Staged::default();
    staged.add("catalogue.json", catalogue_json(&specs) + "\n");
    staged.commit(&cli.out, manifest(cli, "catalogue", Vec::new(), None, json!({})))?;
    if !cli.quiet {
        println!("wrote {} identities to {}", specs.len(), cli.out.join("catalogue.json").display());
    }
    Ok(ExitCode::SUCCESS)
}
