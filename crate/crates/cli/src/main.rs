mod input;
mod recipes;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use num_bigint::BigUint;
use ramsey_mult::ap::{self, ZnColoring};
use ramsey_mult::blowup::{blowup_density_pair, cost, hom_clique_count, optimize_weights, BlowupObjective};
use ramsey_mult::flags::{sharp_graphs, verify_certificate, FlagCertificate};
use ramsey_mult::graphs::{count_cliques, emit_graph6, Graph};
use ramsey_mult::rational::{format_sig, rat, to_f64};
use ramsey_mult::region::{self, Bound};
use ramsey_mult::search::{
    exhaustive_search, load_group_table, parallel_restarts, state_from_hex, state_to_hex, Algorithm, BlowupProblem,
    Checkpoint, RunLog, Schedule, SearchProblem, SearchSpace,
};
use ramsey_mult::stability;
use ramsey_mult::xorprod::density_pair_of_product;
use ramsey_mult::Error as CoreError;
use serde_json::{json, Value};

use input::{fmt, graph_spec, one_graph, rational, vertex_set, weights};

#[derive(Parser)]
#[command(name = "ramsey-mult", version, about = "Blow-up densities, Cayley-graph search and certificate checking for Ramsey multiplicity problems")]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true, env = "RAMSEY_MULT_THREADS")]
    threads: Option<usize>,
    /// Also write a JSON summary to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// More logging (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GraphInput {
    /// Graph as a graph6 string.
    #[arg(long)]
    graph6: Option<String>,
    /// Graph by name (`schlafli`, `ramsey13`, `K3`, `C5`, ...), `@file`
    /// (graph6 or JSON with loops) or `g6:<string>`.
    #[arg(long)]
    graph: Option<String>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        one_graph(self.graph6.as_deref(), self.graph.as_deref())
    }
}

#[derive(Args, Clone)]
struct ObjectiveArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value = "1")]
    ws: String,
    #[arg(long, default_value = "1")]
    wt: String,
    #[arg(long, default_value = "1")]
    lambda: String,
}

impl ObjectiveArgs {
    fn objective(&self) -> Result<BlowupObjective> {
        let obj = BlowupObjective::new(self.s, self.t)
            .with_weights(rational(&self.ws)?, rational(&self.wt)?)
            .with_lambda(rational(&self.lambda)?);
        obj.validate()?;
        Ok(obj)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Clique, independent-set and homomorphism counts of a graph.
    Count {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        t: usize,
    },
    /// Limit densities (x, y) of the weighted blow-up sequence.
    Density {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Comma-separated vertex weights `p/q`; uniform if omitted.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Objective value `ws*x + lambda*wt*y` of a blow-up.
    Cost {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        objective: ObjectiveArgs,
        #[arg(long)]
        weights: Option<String>,
        /// Also look for better vertex weights.
        #[arg(long)]
        optimize: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimise the blow-up cost over graphs or Cayley graphs.
    Search(SearchArgs),
    /// Check a flag-algebra certificate and print the bound it proves.
    VerifyCert {
        path: PathBuf,
        /// Exit with status 1 unless the bound equals this value.
        #[arg(long)]
        expect: Option<String>,
    },
    /// List the graphs on which a certificate is tight.
    Sharp { path: PathBuf },
    /// Embedding and reconstruction checks.
    Stability {
        #[command(subcommand)]
        command: StabilityCommand,
    },
    /// Region of attainable density pairs.
    Region {
        #[command(subcommand)]
        command: RegionCommand,
    },
    /// Densities of blow-ups of XOR products.
    Xor {
        /// Comma-separated factor graphs, e.g. `K3,M4,M4,M4`.
        #[arg(long)]
        factors: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Monochromatic arithmetic progressions in colourings of Z_n.
    Ap {
        #[command(subcommand)]
        command: ApCommand,
    },
    /// Recompute a published value; `--list` shows the recipes.
    Reproduce {
        /// Recipe name, or `all`.
        recipe: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// `graph:<n>` or `cayley:<group>` with a group like `Z13` or `Z2^4`.
    #[arg(long, required_unless_present = "group_table")]
    space: Option<String>,
    /// Cayley graphs of the group in this multiplication-table file.
    #[arg(long, conflicts_with = "space")]
    group_table: Option<PathBuf>,
    #[command(flatten)]
    objective: ObjectiveArgs,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Tabu)]
    algorithm: AlgorithmArg,
    #[arg(long, default_value_t = 10_000)]
    iterations: usize,
    #[arg(long, default_value_t = 1e-3)]
    temperature: f64,
    /// Defaults to min(10, N - 1).
    #[arg(long)]
    tabu_length: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    restarts: usize,
    #[arg(long)]
    rejection_free: bool,
    /// Initial state as hex, or `@checkpoint.json`.
    #[arg(long)]
    init: Option<String>,
    /// JSON-lines log of every improvement.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Write the best state here when done.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Anneal,
    Tabu,
    Exhaustive,
}

#[derive(Subcommand)]
enum StabilityCommand {
    /// Does `source` embed into `target` uniquely up to automorphisms?
    Embeds {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Neighbourhood classes of a vertex set.
    Neighborhoods {
        #[arg(long)]
        target: String,
        /// Comma-separated vertices.
        #[arg(long)]
        x: String,
        #[arg(long)]
        one_based: bool,
    },
    /// Reconstructor conditions for a vertex set.
    Reconstructor {
        #[arg(long)]
        target: String,
        #[arg(long)]
        x: String,
        /// Subset X' for the strengthened conditions.
        #[arg(long)]
        x_prime: Option<String>,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        one_based: bool,
    },
}

#[derive(Subcommand)]
enum RegionCommand {
    /// Upper curve value at x.
    Curve {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        x: f64,
    },
    /// Points where the upper curve switches branch.
    Crossing {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Point of the weighted four-vertex gadget at s = t = 3.
    Gadget {
        #[arg(long)]
        b: String,
    },
    /// Propagate an upper bound from (s, t0) to (s, t).
    Erdos {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t0: usize,
        #[arg(long)]
        g: String,
        #[arg(long)]
        t: usize,
    },
    /// CSV of the upper curve and construction points.
    Csv {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Include the known constructions for s = 3, t = 4.
        #[arg(long)]
        c34: bool,
        /// Extra construction graphs (same syntax as --graph).
        #[arg(long)]
        construction: Vec<String>,
        /// Verified lower bound c; adds the line y = c - x.
        #[arg(long)]
        lower: Option<String>,
        #[arg(long)]
        csv: PathBuf,
    },
}

#[derive(Args)]
struct ColoringInput {
    /// Colouring over {0, 1, *}.
    #[arg(long)]
    coloring: Option<String>,
    /// File holding the colouring; whitespace is ignored.
    #[arg(long, conflicts_with = "coloring")]
    file: Option<PathBuf>,
}

impl ColoringInput {
    fn load(&self) -> Result<ZnColoring> {
        let text = match (&self.coloring, &self.file) {
            (Some(c), None) => c.clone(),
            (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?,
            _ => bail!("give exactly one of --coloring or --file"),
        };
        Ok(ZnColoring::parse(&text)?)
    }
}

#[derive(Subcommand)]
enum ApCommand {
    /// Fraction of monochromatic progressions in a total colouring.
    Count {
        #[command(flatten)]
        input: ColoringInput,
        #[arg(long)]
        k: usize,
    },
    /// Check a partial colouring and the bound it gives.
    Verify {
        #[command(flatten)]
        input: ColoringInput,
        #[arg(long)]
        k: usize,
    },
    /// Least fraction over all colourings of Z_n.
    Min {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Search partial colourings with l uncoloured cells.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Tabu)]
        algorithm: AlgorithmArg,
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        #[arg(long, default_value_t = 5)]
        tabu_length: usize,
        #[arg(long, default_value_t = 1.0)]
        temperature: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command reports: its JSON summary and whether it verified.
struct Report {
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(json: Value) -> Self {
        Self { json, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot set thread count: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.out {
                let text = serde_json::to_string_pretty(&report.json).expect("JSON value");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Count { graph, t } => count(&graph.load()?, *t),
        Command::Density { graph, s, t, weights: w } => {
            let g = graph.load()?;
            let (x, y) = blowup_density_pair(&g, *s, *t, &weights(w.as_deref(), g.order())?)?;
            let sum = &x + &y;
            println!("x={} y={} sum={}", fmt(&x), fmt(&y), fmt(&sum));
            Ok(Report::ok(json!({"s": s, "t": t, "x": fmt(&x), "y": fmt(&y), "sum": fmt(&sum)})))
        }
        Command::Cost {
            graph,
            objective,
            weights: w,
            optimize,
            seed,
        } => {
            let g = graph.load()?;
            let obj = objective.objective()?;
            let w = weights(w.as_deref(), g.order())?;
            let c = cost(&g, &obj, &w)?;
            println!("cost={} ~ {}", fmt(&c), format_sig(to_f64(&c), 12));
            let mut j = json!({"cost": fmt(&c)});
            if *optimize {
                let opt = optimize_weights(&g, &obj, &rat(1, 1_000_000_000), *seed)?;
                let ws: Vec<String> = opt.weights.as_slice().iter().map(fmt).collect();
                println!("optimised cost={} ~ {}", fmt(&opt.value), format_sig(to_f64(&opt.value), 12));
                println!("weights={}", ws.join(","));
                if !opt.converged {
                    println!("(iteration cap reached before convergence)");
                }
                j["optimised"] = json!({"cost": fmt(&opt.value), "weights": ws, "converged": opt.converged});
            }
            Ok(Report::ok(j))
        }
        Command::Search(args) => search(args),
        Command::VerifyCert { path, expect } => verify_cert(path, expect.as_deref()),
        Command::Sharp { path } => {
            let cert = FlagCertificate::load(path).with_context(|| format!("cannot load {}", path.display()))?;
            let r = match verify_certificate(&cert) {
                Ok(r) => r,
                Err(e @ CoreError::NotPsd { .. }) => {
                    println!("certificate rejected: {e}");
                    return Ok(Report {
                        json: json!({"psd": false, "error": e.to_string()}),
                        ok: false,
                    });
                }
                Err(e) => return Err(e.into()),
            };
            let sharp = sharp_graphs(&cert, &r.bound)?;
            let g6: Vec<String> = sharp.iter().map(emit_graph6).collect::<ramsey_mult::Result<_>>()?;
            println!("bound={} sharp={}", fmt(&r.bound), g6.len());
            for s in &g6 {
                println!("{s}");
            }
            Ok(Report::ok(json!({"bound": fmt(&r.bound), "sharp": g6})))
        }
        Command::Stability { command } => stability_cmd(command),
        Command::Region { command } => region_cmd(command),
        Command::Xor { factors, s, t } => {
            let gs = factors.split(',').map(|f| graph_spec(f.trim())).collect::<Result<Vec<_>>>()?;
            let order: usize = gs.iter().map(Graph::order).product();
            let (x, y) = density_pair_of_product(&gs, *s, *t)?;
            let sum = &x + &y;
            println!("order={order}");
            println!("x={} y={} sum={} ~ {}", fmt(&x), fmt(&y), fmt(&sum), format_sig(to_f64(&sum), 12));
            Ok(Report::ok(json!({"order": order, "x": fmt(&x), "y": fmt(&y), "sum": fmt(&sum)})))
        }
        Command::Ap { command } => ap_cmd(command),
        Command::Reproduce { recipe, list } => reproduce(recipe.as_deref(), *list),
    }
}

fn count(g: &Graph, t: usize) -> Result<Report> {
    let kt = count_cliques(g, t);
    let it = count_cliques(&g.complement(), t);
    let hom: BigUint = hom_clique_count(t, g);
    println!("n={} edges={} loops={}", g.order(), g.edge_count(), g.loops().count());
    println!("cliques({t})={kt} independent({t})={it} hom(K{t})={hom}");
    Ok(Report::ok(json!({
        "n": g.order(),
        "t": t,
        "cliques": kt,
        "independent_sets": it,
        "homomorphisms": hom.to_string(),
    })))
}

fn schedule(iterations: usize, temperature: f64, tabu_length: usize, seed: u64, rejection_free: bool) -> Schedule {
    Schedule {
        iterations,
        initial_temperature: temperature,
        temperatures: None,
        tabu_length,
        seed,
        rejection_free,
        record_steps: false,
    }
}

fn search(args: &SearchArgs) -> Result<Report> {
    let space = match (&args.space, &args.group_table) {
        (_, Some(path)) => SearchSpace::cayley(load_group_table(path)?),
        (Some(spec), None) => match spec.split_once(':') {
            Some(("graph", n)) => SearchSpace::graph(n.parse().with_context(|| format!("bad order {n:?}"))?),
            Some(("cayley", g)) => SearchSpace::cayley(input::group_spec(g)?),
            _ => bail!("--space must be graph:<n> or cayley:<group>"),
        },
        (None, None) => bail!("give --space or --group-table"),
    };
    let p = BlowupProblem::new(space, args.objective.objective()?)?;
    let n = p.num_bits();
    info!("searching {n} bits");
    let init = match &args.init {
        None => None,
        Some(s) => Some(match s.strip_prefix('@') {
            Some(path) => Checkpoint::load(path.as_ref())?.bits()?,
            None => state_from_hex(s, n)?,
        }),
    };
    let (state, score) = match args.algorithm {
        AlgorithmArg::Exhaustive => exhaustive_search(&p)?,
        alg => {
            let algorithm = if matches!(alg, AlgorithmArg::Anneal) { Algorithm::Anneal } else { Algorithm::Tabu };
            let tabu_length = args.tabu_length.unwrap_or(10.min(n.saturating_sub(1)));
            let sched = schedule(args.iterations, args.temperature, tabu_length, args.seed, args.rejection_free);
            let log = args.log.as_ref().map(|p| RunLog::create(p)).transpose()?.map(std::sync::Mutex::new);
            let observer = |r: usize, imp: &ramsey_mult::search::Improvement| {
                if let Some(log) = &log {
                    if let Err(e) = log.lock().unwrap().record(r, imp.iteration, &p.to_rational(imp.score), imp.state) {
                        log::warn!("run log: {e}");
                    }
                }
            };
            let (_, out) = parallel_restarts(&p, algorithm, &sched, args.restarts, init.as_deref(), &observer)?;
            (out.best_state, out.best_score)
        }
    };
    let c = p.to_rational(score);
    let g = p.space.decode(&state);
    let g6 = emit_graph6(&g)?;
    let hex = state_to_hex(&state);
    println!("cost={} ~ {}", fmt(&c), format_sig(to_f64(&c), 12));
    println!("graph6={g6}");
    println!("state={hex}");
    if let Some(path) = &args.checkpoint {
        Checkpoint::new(&state, &c, args.seed, args.iterations).save(path)?;
    }
    Ok(Report::ok(json!({"cost": fmt(&c), "graph6": g6, "state": hex, "bits": n})))
}

fn verify_cert(path: &std::path::Path, expect: Option<&str>) -> Result<Report> {
    let cert = FlagCertificate::load(path).with_context(|| format!("cannot load {}", path.display()))?;
    let r = match verify_certificate(&cert) {
        Ok(r) => r,
        Err(e @ CoreError::NotPsd { .. }) => {
            println!("certificate rejected: {e}");
            return Ok(Report {
                json: json!({"psd": false, "error": e.to_string()}),
                ok: false,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let sharp = r.sharp().len();
    println!("bound={} ~ {}", fmt(&r.bound), format_sig(to_f64(&r.bound), 12));
    println!("graphs={} sharp={}", r.rows.len(), sharp);
    println!("coranks={:?}", r.coranks);
    let mut ok = true;
    if let Some(e) = expect {
        let e = rational(e)?;
        if e != r.bound {
            println!("mismatch: expected {}, got {}", fmt(&e), fmt(&r.bound));
            ok = false;
        }
    }
    Ok(Report {
        json: json!({
            "psd": true,
            "bound": fmt(&r.bound),
            "graphs": r.rows.len(),
            "sharp": sharp,
            "coranks": r.coranks,
        }),
        ok,
    })
}

fn stability_cmd(cmd: &StabilityCommand) -> Result<Report> {
    match cmd {
        StabilityCommand::Embeds { source, target } => {
            let r = stability::uniquely_embeds(&graph_spec(source)?, &graph_spec(target)?)?;
            println!(
                "homomorphisms={} orbit={} |Aut(target)|={} |Aut(source)|={} unique={}",
                r.count, r.orbit_size, r.aut_target, r.aut_source, r.unique_up_to_automorphism
            );
            Ok(Report {
                ok: r.unique_up_to_automorphism,
                json: serde_json::to_value(&r)?,
            })
        }
        StabilityCommand::Neighborhoods { target, x, one_based } => {
            let c = graph_spec(target)?;
            let x = vertex_set(x, *one_based)?;
            let r = stability::defines_unique_neighborhoods(&x, &c)?;
            let classes = stability::neighborhood_classes(&x, &c);
            println!("classes={} unique={}", classes.len(), r.unique);
            Ok(Report {
                ok: r.unique,
                json: json!({"unique": r.unique, "classes": classes}),
            })
        }
        StabilityCommand::Reconstructor {
            target,
            x,
            x_prime,
            l,
            one_based,
        } => {
            let c = graph_spec(target)?;
            let x = vertex_set(x, *one_based)?;
            match x_prime {
                None => {
                    let r = stability::check_reconstructor_simple(&x, &c, *l)?;
                    println!(
                        "size={} embeds={} neighbourhoods={} holds={}",
                        r.size_ok, r.uniquely_embeds, r.unique_neighborhoods, r.holds
                    );
                    Ok(Report {
                        ok: r.holds,
                        json: serde_json::to_value(&r)?,
                    })
                }
                Some(xp) => {
                    let xp = vertex_set(xp, *one_based)?;
                    let r = stability::check_reconstructor_strong(&x, &xp, &c, *l)?;
                    println!(
                        "branch={:?} (1)={} (2)={} (3)={} holds={}",
                        r.branch, r.condition1, r.condition2, r.condition3, r.holds
                    );
                    Ok(Report {
                        ok: r.holds,
                        json: serde_json::to_value(&r)?,
                    })
                }
            }
        }
    }
}

fn region_cmd(cmd: &RegionCommand) -> Result<Report> {
    match cmd {
        RegionCommand::Curve { s, t, x } => {
            let y = region::upper_curve(*s, *t, *x)?;
            println!("{}", format_sig(y, 12));
            Ok(Report::ok(json!({"x": x, "y": y})))
        }
        RegionCommand::Crossing { s, t, samples } => {
            let xs = region::branch_crossings(*s, *t, *samples)?;
            for (x, y) in &xs {
                println!("({}, {})", format_sig(*x, 12), format_sig(*y, 12));
            }
            Ok(Report::ok(json!({"crossings": xs})))
        }
        RegionCommand::Gadget { b } => {
            let p = region::goodman_gadget_point(&rational(b)?)?;
            println!("x={} y={} sum={}", fmt(&p.x), fmt(&p.y), fmt(&p.sum()));
            Ok(Report::ok(json!({"x": fmt(&p.x), "y": fmt(&p.y)})))
        }
        RegionCommand::Erdos { s, t0, g, t } => {
            let b = region::erdos_propagate(*s, *t0, &rational(g)?, *t)?;
            let exact = matches!(b, Bound::Exact(_));
            println!("{b}{}", if exact { "" } else { " (approximate)" });
            Ok(Report::ok(json!({"bound": b.to_string(), "exact": exact})))
        }
        RegionCommand::Csv {
            s,
            t,
            grid,
            c34,
            construction,
            lower,
            csv,
        } => {
            let mut points = if *c34 {
                if (*s, *t) != (3, 4) {
                    bail!("--c34 needs --s 3 --t 4");
                }
                region::figure_constructions_c34()?
            } else {
                Vec::new()
            };
            for spec in construction {
                let g = graph_spec(spec)?;
                let w = ramsey_mult::blowup::WeightVector::uniform(g.order());
                points.push(region::construction_point(&g, *s, *t, &w, spec)?);
            }
            let lower = lower.as_deref().map(rational).transpose()?;
            region::export_region_csv(csv, *s, *t, &points, *grid, lower.as_ref())?;
            println!("wrote {} ({} curve points, {} constructions)", csv.display(), grid, points.len());
            Ok(Report::ok(json!({"csv": csv, "constructions": points.len()})))
        }
    }
}

fn ap_cmd(cmd: &ApCommand) -> Result<Report> {
    match cmd {
        ApCommand::Count { input, k } => {
            let c = input.load()?;
            let f = ap::mono_ap_fraction(&c, *k)?;
            println!("n={} fraction={}", c.n(), fmt(&f));
            Ok(Report::ok(json!({"n": c.n(), "fraction": fmt(&f)})))
        }
        ApCommand::Verify { input, k } => {
            let c = input.load()?;
            let r = ap::verify_partial(&c, *k)?;
            print_partial(&c, &r);
            Ok(partial_report(&c, &r))
        }
        ApCommand::Min { n, k } => {
            let (m, c) = ap::exhaustive_min(*n, *k)?;
            println!("min={} coloring={c}", fmt(&m));
            Ok(Report::ok(json!({"min": fmt(&m), "coloring": c.to_string()})))
        }
        ApCommand::Search {
            n,
            l,
            k,
            algorithm,
            iterations,
            tabu_length,
            temperature,
            seed,
        } => {
            let (c, r) = match algorithm {
                AlgorithmArg::Exhaustive => ap::exhaustive_partial(*n, *l, *k)?,
                alg => {
                    let a = if matches!(alg, AlgorithmArg::Anneal) { Algorithm::Anneal } else { Algorithm::Tabu };
                    let sched = schedule(*iterations, *temperature, *tabu_length, *seed, false);
                    ap::search_partial(*n, *l, *k, &sched, a, None)?
                }
            };
            print_partial(&c, &r);
            Ok(partial_report(&c, &r))
        }
    }
}

fn print_partial(c: &ZnColoring, r: &ap::PartialReport) {
    println!("coloring={c}");
    println!(
        "violations={} min={} max={}",
        r.violations,
        fmt(&r.min_fraction),
        fmt(&r.max_fraction)
    );
    match r.bound() {
        Some(b) => println!("bound={}", fmt(&b)),
        None => println!("bound=none"),
    }
}

fn partial_report(c: &ZnColoring, r: &ap::PartialReport) -> Report {
    Report {
        ok: r.bound().is_some(),
        json: json!({
            "coloring": c.to_string(),
            "violations": r.violations,
            "min_fraction": fmt(&r.min_fraction),
            "max_fraction": fmt(&r.max_fraction),
            "bound": r.bound().map(|b| fmt(&b)),
        }),
    }
}

fn reproduce(recipe: Option<&str>, list: bool) -> Result<Report> {
    if list || recipe.is_none() {
        for (name, what) in recipes::RECIPES {
            println!("{name:<26}{what}");
        }
        return Ok(Report::ok(json!({"recipes": recipes::RECIPES.iter().map(|r| r.0).collect::<Vec<_>>()})));
    }
    let names: Vec<&str> = match recipe.unwrap() {
        "all" => recipes::RECIPES.iter().map(|r| r.0).collect(),
        one => vec![one],
    };
    let mut ok = true;
    let mut out = Vec::new();
    for name in names {
        let c = recipes::run(name)?;
        println!(
            "{name}: {} {} (expected {}) {}",
            if c.ok { "ok" } else { "MISMATCH" },
            c.computed,
            c.expected,
            c.detail
        );
        ok &= c.ok;
        out.push(json!({"recipe": name, "ok": c.ok, "computed": c.computed, "expected": c.expected}));
    }
    Ok(Report {
        json: Value::Array(out),
        ok,
    })
}
