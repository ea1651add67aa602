use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chromapath::circuits::{
    contract_circuit, handle_decomposition, k_good_circuit, shortest_circuit_at_least, Circuit,
};
use chromapath::coloring::{chromatic_number, clique_number};
use chromapath::forest::gallai_roy_path;
use chromapath::graph::{ContractMode, Contraction, DotStyle};
use chromapath::paths::{certify_two_block, find_p4, find_pattern, BlockPattern, CertifiedOutcome, PathEmbedding};
use chromapath::verify::{run_campaign, CampaignOptions, VerificationReport, CAMPAIGNS, DEFAULT_SEED};
use chromapath::{Digraph, Error, OutForest};

#[derive(Parser)]
#[command(name = "chromapath", version, about = "Certifying digraph algorithms for oriented paths and colorings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Input {
    /// Arc-list file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic number with a witness coloring.
    Chi(Input),
    /// Maximal spanning out-forest (maximal closure of the arcless forest).
    Forest(Input),
    /// Search for an oriented path.
    Find(FindArgs),
    /// Circuit searches and handle decompositions.
    Circuit(CircuitArgs),
    /// Contract a vertex set or a circuit into one vertex.
    Contract(ContractArgs),
    /// Run a verification campaign and print its report.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(id = "what", required = true, multiple = false)]
struct FindArgs {
    #[command(flatten)]
    input: Input,
    /// The antidirected path b1,f1,b1,f1.
    #[arg(long, group = "what")]
    p4: bool,
    /// Certified search for K forward arcs followed by L backward arcs.
    #[arg(long, num_args = 2, value_names = ["K", "L"], group = "what")]
    two_block: Option<Vec<usize>>,
    /// Block pattern such as `b1,f2`.
    #[arg(long, value_name = "SPEC", group = "what")]
    pattern: Option<String>,
}

#[derive(Args)]
struct CircuitArgs {
    #[command(flatten)]
    input: Input,
    /// Minimum circuit length.
    #[arg(long)]
    k: Option<usize>,
    /// Require the circuit to be K-good (needs a strongly connected input).
    #[arg(long, requires = "k")]
    good: bool,
    /// Print a handle decomposition instead.
    #[arg(long, conflicts_with_all = ["k", "good"])]
    handles: bool,
}

#[derive(Args)]
#[group(id = "target", required = true, multiple = false)]
struct ContractArgs {
    #[command(flatten)]
    input: Input,
    /// Comma-separated vertex set.
    #[arg(long, value_name = "CSV", group = "target")]
    set: Option<String>,
    /// Contract the shortest circuit of length at least `--k`.
    #[arg(long, group = "target")]
    circuit: bool,
    /// Minimum length of the contracted circuit.
    #[arg(long, default_value_t = 3, requires = "circuit")]
    k: usize,
    /// Contract a vertex set in multigraph mode (digons allowed).
    #[arg(long)]
    multi: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CAMPAIGNS))]
    campaign: String,
    /// Largest order of sampled digraphs.
    #[arg(long)]
    max_n: Option<usize>,
    /// Number of random samples.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = "CHROMAPATH_SEED")]
    seed: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Record wall-clock time in `elapsed_ms` (otherwise 0, keeping reports
    /// byte-identical across runs).
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Input(String),
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Input(_) => "input",
            Failure::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInconsistency(_) => Failure::Internal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// What a subcommand produced: its rendering and whether it counts as a hit.
struct Output {
    json: Value,
    text: String,
    dot: Option<String>,
    success: bool,
}

fn read_digraph(input: &Input) -> Result<Digraph, Failure> {
    let text = if input.input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.input).map_err(|e| Failure::Input(format!("{}: {e}", input.input)))?
    };
    Digraph::parse_arclist(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn path_dot(d: &Digraph, p: &PathEmbedding) -> String {
    let on_path = |u: usize, v: usize| {
        p.vertices.windows(2).any(|w| (w[0] == u && w[1] == v) || (w[0] == v && w[1] == u))
    };
    d.to_dot_with(|u, v| if on_path(u, v) { DotStyle::Solid } else { DotStyle::Dashed })
}

fn chi_cmd(d: &Digraph) -> Output {
    let r = chromatic_number(d);
    Output {
        json: json!({
            "chi": r.chi,
            "coloring": r.witness.colors(),
            "clique_number": clique_number(d),
        }),
        text: format!("chi {}\ncoloring {}\n", r.chi, join(r.witness.colors())),
        dot: None,
        success: true,
    }
}

fn forest_cmd(d: &Digraph) -> Result<Output, Failure> {
    let f = OutForest::maximal_closure(d, None)?;
    let path = gallai_roy_path(d);
    let mut text = String::from("vertex level parent\n");
    for v in 0..d.n() {
        let parent = f.parent(v).map_or("-".to_string(), |p| p.to_string());
        text.push_str(&format!("{v} {} {parent}\n", f.level(v)));
    }
    Ok(Output {
        json: json!({
            "levels": f.levels(),
            "parents": f.parents(),
            "max_level": f.max_level(),
            "longest_forest_path": path.vertices,
        }),
        text,
        dot: Some(d.to_dot_with(|u, v| if f.is_forest_arc(u, v) { DotStyle::Solid } else { DotStyle::Dashed })),
        success: true,
    })
}

fn embedding_output(d: &Digraph, pattern: &BlockPattern, found: Option<PathEmbedding>) -> Output {
    match found {
        Some(p) => Output {
            json: json!({ "found": true, "pattern": pattern.to_string(), "certificate": { "embedding": p } }),
            text: format!("found {pattern}: {}\n", join(&p.vertices)),
            dot: Some(path_dot(d, &p)),
            success: true,
        },
        None => Output {
            json: json!({ "found": false }),
            text: format!("no {pattern}\n"),
            dot: Some(d.to_dot()),
            success: false,
        },
    }
}

fn find_cmd(d: &Digraph, args: &FindArgs) -> Result<Output, Failure> {
    if args.p4 {
        return Ok(embedding_output(d, &BlockPattern::p4(), find_p4(d)));
    }
    if let Some(spec) = &args.pattern {
        let pattern: BlockPattern = spec.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
        return Ok(embedding_output(d, &pattern, find_pattern(d, &pattern)));
    }
    let kl = args.two_block.as_deref().expect("clap enforces one mode");
    let (k, l) = (kl[0], kl[1]);
    if k == 0 || l == 0 || k + l < 3 {
        return Err(Failure::Usage(format!("--two-block needs K, L >= 1 and K + L >= 3, got {k} {l}")));
    }
    let cert = certify_two_block(d, k, l)?;
    let pattern = BlockPattern::two_block(k, l)?;
    let rule = serde_json::to_value(cert.rule).expect("rule serializes");
    Ok(match cert.outcome {
        CertifiedOutcome::Embedding(p) => {
            let mut out = embedding_output(d, &pattern, Some(p));
            out.json["rule"] = rule;
            out
        }
        CertifiedOutcome::Coloring(c) => Output {
            json: json!({
                "found": false,
                "pattern": pattern.to_string(),
                "rule": rule,
                "certificate": { "coloring": c },
            }),
            text: format!("no {pattern}; proper {}-coloring: {}\n", k + l, join(c.colors())),
            dot: Some(d.to_dot()),
            success: false,
        },
    })
}

fn circuit_json(c: &Circuit) -> Value {
    json!({ "found": true, "circuit": c.vertices, "length": c.len() })
}

fn circuit_cmd(d: &Digraph, args: &CircuitArgs) -> Result<Output, Failure> {
    if args.handles {
        let h = handle_decomposition(d)?;
        let mut text = format!("r {} trivial {}\n", h.r(), h.trivial_count);
        for handle in &h.handles {
            text.push_str(&join(handle));
            text.push('\n');
        }
        return Ok(Output {
            json: json!({
                "handles": h.handles,
                "r": h.r(),
                "trivial": h.trivial_count,
                "arcs": d.arc_count(),
                "vertices": d.n(),
            }),
            text,
            dot: None,
            success: true,
        });
    }
    let Some(k) = args.k else {
        return Err(Failure::Usage("circuit needs --k K or --handles".into()));
    };
    let found = if args.good { Some(k_good_circuit(d, k)?) } else { shortest_circuit_at_least(d, k) };
    Ok(match found {
        Some(c) => Output {
            json: circuit_json(&c),
            text: format!("circuit {}\n", join(&c.vertices)),
            dot: None,
            success: true,
        },
        None => Output { json: json!({ "found": false }), text: "no circuit\n".into(), dot: None, success: false },
    })
}

fn contraction_output(con: &Contraction, circuit: Option<&Circuit>) -> Output {
    let mut json = json!({
        "n": con.digraph.n(),
        "arcs": con.digraph.arcs().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
        "merged": con.merged,
        "image": con.image,
        "oriented": con.digraph.is_oriented(),
        "arclist": con.digraph.to_arclist(),
    });
    if let Some(c) = circuit {
        json["circuit"] = json!(c.vertices);
    }
    Output { json, text: con.digraph.to_arclist(), dot: Some(con.digraph.to_dot()), success: true }
}

fn contract_cmd(d: &Digraph, args: &ContractArgs) -> Result<Output, Failure> {
    if let Some(csv) = &args.set {
        let set = csv
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad vertex {t:?} in --set"))))
            .collect::<Result<Vec<_>, _>>()?;
        let mode = if args.multi { ContractMode::Multigraph } else { ContractMode::Digraph };
        return Ok(contraction_output(&d.contract(&set, mode)?, None));
    }
    let Some(c) = shortest_circuit_at_least(d, args.k) else {
        return Ok(Output {
            json: json!({ "found": false }),
            text: "no circuit\n".into(),
            dot: None,
            success: false,
        });
    };
    Ok(contraction_output(&contract_circuit(d, &c)?, Some(&c)))
}

fn verify_cmd(args: &VerifyArgs) -> Result<Output, Failure> {
    let opts = CampaignOptions {
        seed: args.seed.unwrap_or(DEFAULT_SEED),
        max_n: args.max_n,
        samples: args.samples,
    };
    let run = || run_campaign(&args.campaign, &opts);
    let report: VerificationReport = match args.jobs {
        Some(0) => return Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Failure::Internal(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let report = if args.timing { report } else { report.without_timing() };
    let passed = report.passed();
    let mut text = format!(
        "{}: {} ({} checks, {} failures, {} observations)\n",
        report.campaign,
        if passed { "pass" } else { "FAIL" },
        report.scope.checked,
        report.failures.len(),
        report.observations.len()
    );
    for f in &report.failures {
        text.push_str(&format!("failure: {}\n{}", f.detail, f.arclist));
    }
    Ok(Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        text,
        dot: None,
        success: passed,
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Chi(i) => Ok(chi_cmd(&read_digraph(i)?)),
        Command::Forest(i) => forest_cmd(&read_digraph(i)?),
        Command::Find(a) => find_cmd(&read_digraph(&a.input)?, a),
        Command::Circuit(a) => circuit_cmd(&read_digraph(&a.input)?, a),
        Command::Contract(a) => contract_cmd(&read_digraph(&a.input)?, a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON value serializes"));
}

/// Best-effort look at the raw arguments, for reporting parse failures in
/// the requested format.
fn wants_json(args: &[String]) -> bool {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--format" {
            return it.next().is_none_or(|f| f == "json");
        }
        if let Some(f) = a.strip_prefix("--format=") {
            return f == "json";
        }
    }
    true
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&raw) {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            if usage && wants_json(&raw) {
                print_json(&json!({ "error": { "kind": "usage", "message": e.kind().to_string() } }));
            }
            return ExitCode::from(if usage { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => print_json(&out.json),
                Format::Text => print!("{}", out.text),
                Format::Dot => match out.dot {
                    Some(dot) => print!("{dot}"),
                    None => {
                        eprintln!("error: this subcommand has no DOT output");
                        return ExitCode::from(2);
                    }
                },
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            if cli.format == Format::Json {
                print_json(&json!({ "error": { "kind": f.kind(), "message": f.message() } }));
            }
            ExitCode::from(f.code())
        }
    }
}
