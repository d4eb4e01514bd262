use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use netgood::graph::{dump_edge_list, load_edge_list, preset, to_dot, TopologyJson};
use netgood::prover::Outcome;
use netgood::rational::{self, Rational};
use netgood::{
    br_dynamics, decide_pne_plus_with, enumerate_pne, gen_goyal_tree, is_pne, is_pne_plus,
    payoff_report, replay_certificate, Benefit, Certificate, GameSpec, Profile, ProverConfig,
    Schedule, Topology, TreeFamilyParams, DEFAULT_N_LIMIT,
};

/// Public-goods games on networks: equilibria, degree monotonicity, proofs.
#[derive(Parser)]
#[command(name = "netgood", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a topology and write edge list, DOT and JSON files.
    Gen(GenArgs),
    /// Enumerate equilibria or run best-response dynamics.
    Solve(SolveArgs),
    /// Check whether a profile is an equilibrium and whether it is monotone in degree.
    Check(CheckArgs),
    /// Decide whether a monotone equilibrium exists and write a certificate.
    Prove(ProveArgs),
    /// Re-check a certificate against a game.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Preset name (goyal-canonical, star:k, path:n, complete:n, cycle:n, empty:n, tree:d1,d2,...).
    preset: Option<String>,
    /// Per-level degrees of a tree, e.g. 1,3,4,5,6.
    #[arg(long, value_delimiter = ',', conflicts_with = "preset")]
    levels: Option<Vec<usize>>,
    /// Number of levels including the leaves; defaults to one more than the degree list.
    #[arg(long, requires = "levels")]
    depth: Option<usize>,
    /// Output prefix; writes PREFIX.edges, PREFIX.dot and PREFIX.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GameArgs {
    /// JSON game spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    cost: Option<String>,
    #[arg(long)]
    smax: Option<String>,
    /// exp-default or sqrt.
    #[arg(long)]
    benefit: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Synchronous,
    RoundRobin,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list or JSON file, or a preset name.
    graph: String,
    #[command(flatten)]
    game: GameArgs,
    /// Enumerate every equilibrium (the default).
    #[arg(long, conflicts_with = "dynamics")]
    enumerate: bool,
    /// Run best-response dynamics instead.
    #[arg(long)]
    dynamics: bool,
    #[arg(long, value_enum, default_value = "round-robin")]
    schedule: ScheduleArg,
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    /// Starting profile for dynamics (file or comma-separated rationals); all zeros by default.
    #[arg(long)]
    start: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    graph: String,
    /// Profile file (JSON array of "p/q" strings) or comma-separated rationals.
    profile: String,
    #[command(flatten)]
    game: GameArgs,
    /// Print the verdicts as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProveArgs {
    graph: String,
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value_t = 1_000_000)]
    budget_nodes: usize,
    #[arg(long, default_value_t = 300)]
    budget_secs: u64,
    /// Relaxed feasibility test every this many branch levels; 0 disables it.
    #[arg(long, default_value_t = 0)]
    interior_every: usize,
    /// Certificate path; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    graph: String,
    certificate: PathBuf,
    #[command(flatten)]
    game: GameArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Check(a) => check(a),
        Command::Prove(a) => prove(a),
        Command::Replay(a) => replay(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("NETGOOD_THREADS") {
        let threads: usize = v.parse().context("NETGOOD_THREADS must be a positive integer")?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring thread pool")?;
    }
    Ok(())
}

fn gen(a: GenArgs) -> Result<u8> {
    let (g, levels) = match (&a.preset, a.levels) {
        (_, Some(level_degrees)) => {
            let mut params = TreeFamilyParams::new(level_degrees);
            if let Some(d) = a.depth {
                params.depth = d;
            }
            if !params.meets_depth_condition() {
                eprintln!("note: depth {} is below 5", params.depth);
            }
            let tree = gen_goyal_tree(&params)?;
            (tree.topology, tree.levels)
        }
        (Some(name), None) => {
            let g = preset(name)?;
            let levels = g.bfs_levels(0);
            (g, levels)
        }
        (None, None) => bail!("give a preset name or --levels"),
    };
    println!("nodes {}", g.n());
    println!("edges {}", g.edge_count());
    for (k, level) in levels.iter().enumerate() {
        let mut degrees: Vec<usize> = level.iter().map(|&i| g.neighbors(i).len()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let degrees: Vec<String> = degrees.iter().map(usize::to_string).collect();
        println!("level {k}: {} nodes, degree {}", level.len(), degrees.join(","));
    }
    match a.out {
        Some(prefix) => {
            write(&with_ext(&prefix, "edges"), &dump_edge_list(&g))?;
            write(&with_ext(&prefix, "dot"), &to_dot(&g))?;
            let json = serde_json::to_string(&TopologyJson::from(&g))? + "\n";
            write(&with_ext(&prefix, "json"), &json)?;
        }
        None => print!("{}", dump_edge_list(&g)),
    }
    Ok(0)
}

fn solve(a: SolveArgs) -> Result<u8> {
    let g = load_graph(&a.graph)?;
    let spec = load_spec(&a.game)?;
    if a.dynamics {
        let s0 = match &a.start {
            Some(s) => load_profile(s)?,
            None => Profile::zeros(g.n()),
        };
        let schedule = match a.schedule {
            ScheduleArg::Synchronous => Schedule::Synchronous,
            ScheduleArg::RoundRobin => Schedule::RoundRobin,
        };
        let out = br_dynamics(&g, &spec, &s0, schedule, a.max_iters)?;
        let equilibrium = is_pne(&g, &spec, &out.profile)?.is_equilibrium();
        let json = serde_json::json!({
            "converged": out.converged,
            "equilibrium": equilibrium,
            "profile": out.profile.to_strings(),
            "trace": out.trace.iter().map(rational::format).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&json)?);
        return Ok(if out.converged && equilibrium { 0 } else { 1 });
    }
    let solutions = enumerate_pne(&g, &spec, DEFAULT_N_LIMIT)?;
    println!("{}", serde_json::to_string_pretty(&solutions)?);
    Ok(if solutions.is_empty() { 1 } else { 0 })
}

fn check(a: CheckArgs) -> Result<u8> {
    let g = load_graph(&a.graph)?;
    let spec = load_spec(&a.game)?;
    let s = load_profile(&a.profile)?;
    let pne = is_pne(&g, &spec, &s)?;
    let plus = if pne.is_equilibrium() { Some(is_pne_plus(&g, &spec, &s)?) } else { None };
    if a.json {
        let json = serde_json::json!({
            "pne": pne.is_equilibrium(),
            "pne_plus": plus,
        });
        println!("{}", serde_json::to_string_pretty(&json)?);
    } else {
        if pne.is_equilibrium() {
            println!("PNE: yes");
        } else {
            println!("PNE: no");
            for v in &pne.violations {
                println!(
                    "  player {} plays {} with neighbor sum {}, best response {}",
                    v.player,
                    rational::format(&v.played),
                    rational::format(&v.neighbor_sum),
                    rational::format(&v.required)
                );
            }
        }
        match &plus {
            Some(verdict) if verdict.member => println!("PNE+: yes"),
            Some(verdict) => {
                println!("PNE+: no");
                let report = payoff_report(&g, &spec, &s)?;
                for &(i, j) in &verdict.violations {
                    println!(
                        "  degree({i})={} > {}=degree({j}) but payoff {:.6} < {:.6} (approx.)",
                        g.neighbors(i).len(),
                        g.neighbors(j).len(),
                        report.players[i].payoff,
                        report.players[j].payoff
                    );
                }
            }
            None => println!("PNE+: n/a"),
        }
    }
    Ok(match plus {
        None => 3,
        Some(v) if v.member => 0,
        Some(_) => 1,
    })
}

fn prove(a: ProveArgs) -> Result<u8> {
    let g = load_graph(&a.graph)?;
    let spec = load_spec(&a.game)?;
    let config = ProverConfig {
        node_budget: a.budget_nodes,
        time_budget: Duration::from_secs(a.budget_secs),
        interior_check_every: a.interior_every,
    };
    let cert = decide_pne_plus_with(&g, &spec, &config);
    let json = cert.to_json();
    let mut summary = format!(
        "verdict {}\nnodes {}\nlp checks {}\n",
        cert.verdict_name(),
        cert.stats.nodes,
        cert.stats.lp_checks
    );
    match &cert.outcome {
        Outcome::Witness(p) => summary += &format!("witness {}\n", p.to_strings().join(" ")),
        Outcome::Empty(t) => summary += &format!("leaves {}\n", t.leaf_count()),
        Outcome::Undecided(r) => summary += &format!("reason {r}\n"),
    }
    match &a.out {
        Some(path) => {
            write(path, &json)?;
            print!("{summary}");
        }
        None => {
            eprint!("{summary}");
            print!("{json}");
        }
    }
    Ok(match cert.outcome {
        Outcome::Witness(_) => 0,
        Outcome::Empty(_) => 10,
        Outcome::Undecided(_) => 20,
    })
}

fn replay(a: ReplayArgs) -> Result<u8> {
    let g = load_graph(&a.graph)?;
    let spec = load_spec(&a.game)?;
    let text = read(&a.certificate)?;
    let cert = Certificate::from_json(&text)?;
    if replay_certificate(&g, &spec, &cert)? {
        println!("replay ok: {}", cert.verdict_name());
        Ok(0)
    } else {
        println!("replay failed");
        Ok(1)
    }
}

fn load_graph(arg: &str) -> Result<Topology> {
    let path = Path::new(arg);
    if !path.exists() {
        return preset(arg).with_context(|| format!("`{arg}` is neither a file nor a preset"));
    }
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        let json: TopologyJson =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(Topology::try_from(json)?)
    } else {
        Ok(load_edge_list(&text).with_context(|| format!("parsing {}", path.display()))?)
    }
}

fn load_spec(a: &GameArgs) -> Result<GameSpec> {
    let base = match &a.spec {
        Some(path) => Some(GameSpec::from_json(&read(path)?)?),
        None => None,
    };
    let parse = |flag: &Option<String>| -> Result<Option<Rational>> {
        flag.as_deref().map(rational::parse).transpose().map_err(Into::into)
    };
    let delta = parse(&a.delta)?;
    let cost = parse(&a.cost)?;
    let s_max = parse(&a.smax)?;
    let one = || rational::int(1);
    let mut spec = GameSpec::new(
        delta.clone().or_else(|| base.as_ref().map(|b| b.delta.clone())).unwrap_or_else(one),
        cost.or_else(|| base.as_ref().map(|b| b.cost.clone())).unwrap_or_else(one),
    )?;
    // a file's cap only applies while its delta does
    if let Some(s_max) = s_max.or_else(|| base.as_ref().filter(|_| delta.is_none()).map(|b| b.s_max.clone())) {
        spec = spec.with_s_max(s_max)?;
    }
    let benefit = match &a.benefit {
        Some(name) => Benefit::from_name(name)?,
        None => base.map(|b| b.benefit).unwrap_or_default(),
    };
    Ok(spec.with_benefit(benefit))
}

fn load_profile(arg: &str) -> Result<Profile> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(Profile::from_json(&read(path)?)?);
    }
    let values = arg
        .split(',')
        .map(|v| rational::parse(v.trim()))
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("`{arg}` is neither a file nor a profile"))?;
    Ok(Profile(values))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(".");
    name.push(ext);
    PathBuf::from(name)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
