use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use necklace::format::{
    alpha_map, alpha_to_text, cut_to_text, evaluation_to_json, parse_alpha, parse_cut,
};
use necklace::generators::{
    catalogue_small, gen_irreducible, gen_irreducible_with_beads, gen_merged, gen_separable, Padding,
};
use necklace::hardness::{decide_alpha_or_complement, reduce_e3sat, Decision, E3SatFormula};
use necklace::oracle::{oracle_solve_with_budget, uniqueness_census_with_budget, DEFAULT_BUDGET};
use necklace::reduction::solve_alpha_pair_traced;
use necklace::walkgraph::{
    build_label_graph, build_walk_graph, label_graph_dot, max_cut_with_limit, MAX_CUT_LIMIT,
};
use necklace::{complement_alpha, evaluate_cut, AlphaVector, Cut, Error, Necklace};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "necklace", version, about = "Exact splitting of n-separable necklaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Find the cut for alpha and the cut for its complement.
    Solve {
        necklace: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        /// Also print the reduction steps taken.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a cut.
    Eval {
        necklace: PathBuf,
        #[arg(long)]
        cut: PathBuf,
    },
    /// Separability via the walk graph's maximum cut.
    Sep {
        necklace: PathBuf,
        /// Largest number of colours to brute-force.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Write the walk graph (or label graph) in DOT.
    Graph {
        necklace: PathBuf,
        /// Output file, or "-" for stdout.
        #[arg(long)]
        dot: PathBuf,
        /// Write the label graph instead.
        #[arg(long)]
        label: bool,
    },
    /// Generate necklaces.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Reductions from other problems.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Exhaustive ground truth.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Decide whether a cut for alpha or its complement exists.
    Decide {
        necklace: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        /// Time budget in seconds.
        #[arg(long, default_value_t = 10.0)]
        budget: f64,
    },
    /// Time the solver on a generated irreducible necklace.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beads: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct Seeded {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest component size.
    #[arg(long, default_value_t = 1)]
    max_size: usize,
}

#[derive(Subcommand)]
enum GenCommand {
    Irreducible {
        #[arg(long)]
        n: usize,
        /// Exact bead count; overrides --max-size.
        #[arg(long)]
        beads: Option<usize>,
        #[command(flatten)]
        seeded: Seeded,
    },
    Separable {
        /// Colours of the irreducible base.
        #[arg(long)]
        n: usize,
        /// Comma-separated list of pair, prepend, append, wrap.
        #[arg(long, default_value = "")]
        padding: String,
        #[command(flatten)]
        seeded: Seeded,
    },
    /// Colours with three or four components.
    Merged {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        merges: usize,
        #[command(flatten)]
        seeded: Seeded,
    },
    Catalogue {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long)]
        irreducible: bool,
    },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Turn a DIMACS E3-CNF formula into a necklace, alpha and legend.
    Sat {
        cnf: PathBuf,
        /// Write PREFIX.neck, PREFIX.alpha and PREFIX.legend.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    Solve {
        necklace: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    Census {
        necklace: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match e {
            Error::PromiseViolation(_) | Error::NotUnique(_) => (1, "promise"),
            Error::LimitExceeded { .. } => (3, "limit"),
            _ => (2, "input"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 2,
        kind: "io",
        message: format!("{}: {e}", path.display()),
    }
}

/// What a command prints, in both formats.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

type CmdResult = Result<Output, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn load_necklace(path: &Path) -> Result<Necklace, Failure> {
    Ok(Necklace::parse(&read(path)?)?)
}

fn load_alpha(neck: &Necklace, path: &Path) -> Result<AlphaVector, Failure> {
    Ok(parse_alpha(neck, &read(path)?)?)
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn cut_block(title: &str, neck: &Necklace, cut: &Cut) -> Result<(String, Value), Failure> {
    let ev = evaluate_cut(neck, cut)?;
    let text = format!("{title} (sign {})\n{}", ev.sign.symbol(), indent(&cut_to_text(neck, cut)));
    Ok((text, evaluation_to_json(neck, cut, &ev)))
}

fn solve(path: &Path, alpha_path: &Path, trace: bool) -> CmdResult {
    let neck = load_necklace(path)?;
    let alpha = load_alpha(&neck, alpha_path)?;
    let (pair, steps) = solve_alpha_pair_traced(&neck, &alpha)?;
    let bar = complement_alpha(&neck, &alpha)?;
    let ok = evaluate_cut(&neck, &pair.s)?.alpha == alpha && evaluate_cut(&neck, &pair.s_bar)?.alpha == bar;
    if !ok {
        return Err(Error::PromiseViolation("solver output failed verification".into()).into());
    }
    let (s_text, mut json) = cut_block("S", &neck, &pair.s)?;
    let (bar_text, bar_json) = cut_block("S_bar", &neck, &pair.s_bar)?;
    let mut text = format!("{s_text}{bar_text}verified: yes\n");
    let obj = json.as_object_mut().unwrap();
    obj.insert("complement".into(), bar_json);
    obj.insert("verified".into(), Value::Bool(true));
    if trace {
        let entries: Vec<Value> = steps
            .entries
            .iter()
            .map(|e| {
                let line = format!("{}{:?} n={} {}", "  ".repeat(e.depth), e.kind, e.colours, e.touched.join(" "));
                text.push_str(line.trim_end());
                text.push('\n');
                json!({
                    "depth": e.depth,
                    "kind": format!("{:?}", e.kind),
                    "colours": e.colours,
                    "touched": e.touched,
                    "parity_flip": e.parity_flip,
                })
            })
            .collect();
        obj.insert("trace".into(), Value::Array(entries));
    }
    Ok(Output::new(text, json))
}

fn eval(path: &Path, cut_path: &Path) -> CmdResult {
    let neck = load_necklace(path)?;
    let cut = parse_cut(&neck, &read(cut_path)?)?;
    let ev = evaluate_cut(&neck, &cut)?;
    let bounds: Vec<String> = ev
        .positive_intervals()
        .iter()
        .map(|&(lo, hi)| {
            let end = |b: Option<usize>, inf: &str| b.map_or(inf.to_string(), |x| x.to_string());
            format!("[{}, {}]", end(lo, "-inf"), end(hi, "+inf"))
        })
        .collect();
    let text = format!(
        "sign: {}\npositive: {}\nalpha\n{}",
        ev.sign.symbol(),
        bounds.join(" "),
        indent(&alpha_to_text(&neck, &ev.alpha))
    );
    Ok(Output::new(text, evaluation_to_json(&neck, &cut, &ev)))
}

fn sep(path: &Path, limit: usize) -> CmdResult {
    let neck = load_necklace(path)?;
    let g = build_walk_graph(&neck);
    let (mu, side) = max_cut_with_limit(&g, limit.min(MAX_CUT_LIMIT))?;
    let left: Vec<&str> = (0..neck.n()).filter(|&c| side[c]).map(|c| neck.name(c)).collect();
    Ok(Output::new(
        format!("{mu}\n"),
        json!({
            "separability": mu,
            "colours": neck.n(),
            "separable": mu <= neck.n(),
            "side": left,
        }),
    ))
}

fn graph(path: &Path, dot: &Path, label: bool) -> CmdResult {
    let neck = load_necklace(path)?;
    let (text, vertices, edges) = if label {
        let (lg, _) = build_label_graph(&neck)?;
        (label_graph_dot(&neck, &lg), lg.graph.vertex_count(), lg.graph.edge_count())
    } else {
        let g = build_walk_graph(&neck);
        (g.to_dot(neck.names()), g.vertex_count(), g.edge_count())
    };
    let json = json!({ "vertices": vertices, "edges": edges });
    if dot == Path::new("-") {
        let mut out = Output::new(text.clone(), json);
        out.json["dot"] = Value::String(text);
        return Ok(out);
    }
    write(dot, &text)?;
    let mut out = Output::new(format!("wrote {} ({vertices} vertices, {edges} edges)\n", dot.display()), json);
    out.json["path"] = Value::String(dot.display().to_string());
    Ok(out)
}

fn necklace_output(neck: &Necklace) -> Output {
    Output::new(
        format!("{}\n", neck.to_text()),
        json!({ "necklace": neck.to_text(), "colours": neck.n(), "beads": neck.len() }),
    )
}

fn gen(cmd: GenCommand) -> CmdResult {
    match cmd {
        GenCommand::Irreducible { n, beads, seeded } => {
            let neck = match beads {
                Some(b) => gen_irreducible_with_beads(n, b, seeded.seed)?,
                None => gen_irreducible(n, seeded.max_size, seeded.seed)?,
            };
            Ok(necklace_output(&neck))
        }
        GenCommand::Separable { n, padding, seeded } => {
            let pads = Padding::parse_list(&padding)?;
            Ok(necklace_output(&gen_separable(n, &pads, seeded.max_size, seeded.seed)?))
        }
        GenCommand::Merged { n, merges, seeded } => {
            Ok(necklace_output(&gen_merged(n, merges, seeded.max_size, seeded.seed)?))
        }
        GenCommand::Catalogue { n, max_len, irreducible } => {
            let list = catalogue_small(n, max_len, irreducible)?;
            let text = list.iter().map(|k| format!("{}\n", k.to_text())).collect();
            let json = Value::Array(list.iter().map(|k| Value::String(k.to_text())).collect());
            Ok(Output::new(text, json))
        }
    }
}

fn reduce_sat(cnf: &Path, out: Option<&Path>) -> CmdResult {
    let formula = E3SatFormula::parse_dimacs(&read(cnf)?)?;
    let red = reduce_e3sat(&formula)?;
    let neck_text = format!("{}\n", red.necklace.to_text());
    let alpha_text = alpha_to_text(&red.necklace, &red.alpha);
    let legend_text = red.legend_text();
    let legend: Map<String, Value> = red
        .legend
        .iter()
        .enumerate()
        .map(|(c, role)| (red.necklace.name(c).to_string(), Value::String(role.to_string())))
        .collect();
    let mut json = json!({
        "necklace": red.necklace.to_text(),
        "alpha": alpha_map(&red.necklace, &red.alpha),
        "legend": legend,
    });
    let text = match out {
        Some(prefix) => {
            let with = |ext: &str| PathBuf::from(format!("{}.{ext}", prefix.display()));
            write(&with("neck"), &neck_text)?;
            write(&with("alpha"), &alpha_text)?;
            write(&with("legend"), &legend_text)?;
            json["files"] = json!([with("neck"), with("alpha"), with("legend")]);
            format!(
                "wrote {}.{{neck,alpha,legend}} ({} colours, {} beads)\n",
                prefix.display(),
                red.necklace.n(),
                red.necklace.len()
            )
        }
        None => format!("# necklace\n{neck_text}# alpha\n{alpha_text}# legend\n{legend_text}"),
    };
    Ok(Output::new(text, json))
}

fn oracle(cmd: OracleCommand) -> CmdResult {
    match cmd {
        OracleCommand::Solve { necklace, alpha, budget } => {
            let neck = load_necklace(&necklace)?;
            let alpha = load_alpha(&neck, &alpha)?;
            match oracle_solve_with_budget(&neck, &alpha, budget)? {
                Some(cut) => {
                    let (text, json) = cut_block("S", &neck, &cut)?;
                    Ok(Output::new(text, json))
                }
                None => Ok(Output::new("none\n".into(), json!({ "cut": null }))),
            }
        }
        OracleCommand::Census { necklace, budget } => {
            let neck = load_necklace(&necklace)?;
            let census = uniqueness_census_with_budget(&neck, budget)?;
            let duplicates: Vec<Value> = census
                .duplicates()
                .map(|(a, cuts)| json!({ "alpha": alpha_map(&neck, a), "cuts": cuts.len() }))
                .collect();
            let json = json!({
                "cuts": census.total as u64,
                "alphas": census.entries.len(),
                "duplicates": duplicates,
                "missing": census.missing(&neck) as u64,
                "bijection": census.is_bijection(&neck),
            });
            Ok(Output::new(census.to_text(&neck), json))
        }
    }
}

fn decide(path: &Path, alpha_path: &Path, budget: f64) -> CmdResult {
    let neck = load_necklace(path)?;
    let alpha = load_alpha(&neck, alpha_path)?;
    let budget = Duration::try_from_secs_f64(budget).map_err(|e| Failure {
        code: 2,
        kind: "input",
        message: format!("bad budget: {e}"),
    })?;
    Ok(match decide_alpha_or_complement(&neck, &alpha, budget)? {
        Decision::Yes(cut) => {
            let (text, json) = cut_block("yes", &neck, &cut)?;
            Output::new(text, json!({ "decision": "yes", "witness": json }))
        }
        Decision::No => Output::new("no\n".into(), json!({ "decision": "no" })),
        Decision::Timeout => Output {
            text: "timeout\n".into(),
            json: json!({ "decision": "timeout" }),
            code: 3,
        },
    })
}

fn bench(n: usize, beads: usize, seed: u64) -> CmdResult {
    let start = Instant::now();
    let neck = gen_irreducible_with_beads(n, beads, seed)?;
    let generated = start.elapsed();
    let alpha = AlphaVector::new(neck.colour_sizes().iter().map(|&s| s.div_ceil(2)).collect());
    let start = Instant::now();
    let (pair, _) = solve_alpha_pair_traced(&neck, &alpha)?;
    let solved = start.elapsed();
    let verified = evaluate_cut(&neck, &pair.s)?.alpha == alpha;
    let text = format!(
        "n {n} beads {beads} generate {generated:.2?} solve {solved:.2?} verified {}\n",
        if verified { "yes" } else { "no" }
    );
    let json = json!({
        "n": n,
        "beads": beads,
        "generate_ms": generated.as_secs_f64() * 1e3,
        "solve_ms": solved.as_secs_f64() * 1e3,
        "verified": verified,
    });
    if !verified {
        return Err(Error::PromiseViolation("benchmark cut failed verification".into()).into());
    }
    Ok(Output::new(text, json))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Solve { necklace, alpha, trace } => solve(&necklace, &alpha, trace),
        Command::Eval { necklace, cut } => eval(&necklace, &cut),
        Command::Sep { necklace, limit } => sep(&necklace, limit),
        Command::Graph { necklace, dot, label } => graph(&necklace, &dot, label),
        Command::Gen(cmd) => gen(cmd),
        Command::Reduce(ReduceCommand::Sat { cnf, out }) => reduce_sat(&cnf, out.as_deref()),
        Command::Oracle(cmd) => oracle(cmd),
        Command::Decide { necklace, alpha, budget } => decide(&necklace, &alpha, budget),
        Command::Bench { n, beads, seed } => bench(n, beads, seed),
    }
}

// A closed pipe (`| head`) is not an error worth a panic.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Text => emit(&out.text),
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&out.json).unwrap())),
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            match format {
                Format::Text => eprintln!("error: {}", f.message),
                Format::Json => emit(&format!(
                    "{}\n",
                    json!({ "error": { "kind": f.kind, "message": f.message, "exit_code": f.code } })
                )),
            }
            ExitCode::from(f.code)
        }
    }
}
