use clap::{Args, Parser, Subcommand, ValueEnum};
use scg_core::agreement::{enumerate_qualified_agreements, EffectiveCost};
use scg_core::belief::{effective_cost, outside_count_pmf, subgame, CountPmf};
use scg_core::cost::CostFunction;
use scg_core::equilibrium::{
    brute_force_profile_oracle, induce, partition_report, verify_theorem_1, Induced,
    InducedProfile, OracleGranularity, TheoremReport,
};
use scg_core::formats::{partition_from_lists, partition_to_lists, CostSpec, GameSpec, ReportJson};
use scg_core::game::Game;
use scg_core::partition::{classify, set_partitions, CoalitionClass, Partition};
use scg_core::rational::{format_rat, parse_rat, Rat};
use scg_core::weighted::{
    find_hat_c_optimal_partition, mnp_solve, structure_load_support,
    weighted_c_bar_equivalence_check, weighted_qualified_conditions, HatCRejection, MnpObjective,
    WeightedGame, WeightedStructure,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NO_EQUILIBRIUM: u8 = 3;
const EXIT_CAP: u8 = 4;

const DEFAULT_CAP: usize = 200_000;

#[derive(Parser)]
#[command(
    name = "scg",
    version,
    about = "Singleton congestion games with communication partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one partition of a game: beliefs, induced equilibrium, optimality
    Analyze(AnalyzeArgs),
    /// Enumerate the qualified agreements of a single coalition
    Agreements(AgreementsArgs),
    /// Run an invariant suite; exits 1 on any counterexample
    Verify(VerifyArgs),
    /// Exact multiway number partitioning over identical resources
    Mnp(MnpArgs),
    /// Weighted game: qualified structure and search for a good partition
    Weighted(WeightedArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
    Csv,
}

#[derive(Args)]
struct CommonArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Enumeration cap (overrides SCG_CAP)
    #[arg(long)]
    cap: Option<usize>,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    output: Option<String>,
    /// Re-parse and re-validate the emitted JSON before finishing
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Game description file (JSON: {"n": .., "m": .., "cost": ..})
    #[arg(long)]
    game: Option<String>,
    /// Number of players (alternative to --game)
    #[arg(long)]
    n: Option<usize>,
    /// Number of resources (alternative to --game)
    #[arg(long)]
    m: Option<usize>,
    /// Cost function, e.g. linear, linear:2,1, square, pow2, poly:0,1,1, exp:3/2, table:1,2,4
    #[arg(long)]
    cost: Option<String>,
    /// Partition: a JSON file, inline JSON [[0,1],[2]], or inline 0,1|2
    #[arg(long)]
    partition: String,
    /// Use the brute-force oracle instead of the structural route
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct AgreementsArgs {
    /// Coalition size
    #[arg(long)]
    size: usize,
    /// Number of resources
    #[arg(long)]
    m: usize,
    /// Cost function
    #[arg(long, default_value = "linear")]
    cost: String,
    /// Sizes of the other coalitions, for the outside-count belief (e.g. 2,2)
    #[arg(long)]
    others: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    scope: VerifyScope,
}

#[derive(Subcommand)]
enum VerifyScope {
    /// Pareto-covering equivalence over all agreements up to a size
    Prop2(VerifyProp2Args),
    /// Optimal-cost formulas against brute force
    Lemma1(VerifyLemma1Args),
    /// Equilibrium existence and optimality match balancedness
    Theorem1(VerifyTheorem1Args),
    /// Weighted invariants on one weight vector
    Weighted(VerifyWeightedArgs),
}

#[derive(Args)]
struct VerifyProp2Args {
    /// Largest coalition size to sweep
    #[arg(long, default_value_t = 6)]
    size: usize,
    /// Resource count; sweeps 2..=4 when omitted
    #[arg(long)]
    m: Option<usize>,
    /// Cost function
    #[arg(long, default_value = "linear")]
    cost: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyLemma1Args {
    /// Number of players
    #[arg(long)]
    n: usize,
    /// Number of resources
    #[arg(long)]
    m: usize,
    /// Cost function
    #[arg(long, default_value = "linear")]
    cost: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyTheorem1Args {
    /// Number of players
    #[arg(long)]
    n: usize,
    /// Number of resources
    #[arg(long)]
    m: usize,
    /// Cost function
    #[arg(long, default_value = "linear")]
    cost: String,
    /// Cross-check every row against the brute-force oracle
    #[arg(long)]
    oracle: bool,
    /// Sweep every set partition, not one per size multiset
    #[arg(long)]
    full_partitions: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyWeightedArgs {
    /// Player weights, e.g. 1,2,3
    #[arg(long)]
    weights: String,
    /// Number of resources
    #[arg(long)]
    m: usize,
    /// Cost function
    #[arg(long, default_value = "linear")]
    cost: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct MnpArgs {
    /// Weights to split, e.g. 5,3,2,2,1
    #[arg(long)]
    weights: String,
    /// Number of parts
    #[arg(long)]
    m: usize,
    /// Objective
    #[arg(long, value_enum, default_value = "minimax")]
    objective: Objective,
    /// Include the full argmin set of load vectors
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Objective {
    Minimax,
    Maximin,
    MinGap,
    MinVar,
}

impl Objective {
    fn to_core(self) -> MnpObjective {
        match self {
            Objective::Minimax => MnpObjective::Minimax,
            Objective::Maximin => MnpObjective::Maximin,
            Objective::MinGap => MnpObjective::MinGap,
            Objective::MinVar => MnpObjective::MinVar,
        }
    }
    fn name(self) -> &'static str {
        match self {
            Objective::Minimax => "minimax",
            Objective::Maximin => "maximin",
            Objective::MinGap => "min_gap",
            Objective::MinVar => "min_var",
        }
    }
}

#[derive(Args)]
struct WeightedArgs {
    /// Player weights, e.g. 4,4,2,2
    #[arg(long)]
    weights: String,
    /// Number of resources
    #[arg(long)]
    m: usize,
    /// Cost function
    #[arg(long, default_value = "linear")]
    cost: String,
    #[command(flatten)]
    common: CommonArgs,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
    fn cap(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_CAP,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Agreements(args) => cmd_agreements(args),
        Command::Verify(args) => match args.scope {
            VerifyScope::Prop2(a) => cmd_verify_prop2(a),
            VerifyScope::Lemma1(a) => cmd_verify_lemma1(a),
            VerifyScope::Theorem1(a) => cmd_verify_theorem1(a),
            VerifyScope::Weighted(a) => cmd_verify_weighted(a),
        },
        Command::Mnp(args) => cmd_mnp(args),
        Command::Weighted(args) => cmd_weighted(args),
    }
}

// ---------------------------------------------------------------- plumbing

fn effective_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        if cap == 0 {
            return Err(Failure::validation("--cap must be positive"));
        }
        return Ok(cap);
    }
    match std::env::var("SCG_CAP") {
        Ok(raw) => {
            let cap: usize = raw
                .parse()
                .map_err(|_| Failure::validation(format!("SCG_CAP is not a number: {raw}")))?;
            if cap == 0 {
                return Err(Failure::validation("SCG_CAP must be positive"));
            }
            Ok(cap)
        }
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn parse_cost_arg(text: &str) -> Result<CostSpec, Failure> {
    let (name, rest) = match text.split_once(':') {
        Some((name, rest)) => (name, Some(rest)),
        None => (text, None),
    };
    let rats = |rest: &str| -> Result<Vec<String>, Failure> {
        let parts: Vec<String> = rest.split(',').map(|p| p.trim().to_string()).collect();
        for p in &parts {
            parse_rat(p).map_err(|e| Failure::validation(format!("bad rational {p:?}: {e}")))?;
        }
        Ok(parts)
    };
    match (name, rest) {
        ("linear", None) => Ok(CostSpec::Linear {
            a: "1".into(),
            b: "0".into(),
        }),
        ("linear", Some(rest)) => {
            let parts = rats(rest)?;
            match parts.as_slice() {
                [a] => Ok(CostSpec::Linear {
                    a: a.clone(),
                    b: "0".into(),
                }),
                [a, b] => Ok(CostSpec::Linear {
                    a: a.clone(),
                    b: b.clone(),
                }),
                _ => Err(Failure::validation("linear takes at most two parameters")),
            }
        }
        ("square", None) => Ok(CostSpec::Poly {
            coeffs: vec!["0".into(), "0".into(), "1".into()],
        }),
        ("pow2", None) => Ok(CostSpec::Exp {
            base: "2".into(),
            scale: "1".into(),
        }),
        ("poly", Some(rest)) => Ok(CostSpec::Poly { coeffs: rats(rest)? }),
        ("exp", Some(rest)) => {
            let parts = rats(rest)?;
            match parts.as_slice() {
                [base] => Ok(CostSpec::Exp {
                    base: base.clone(),
                    scale: "1".into(),
                }),
                [base, scale] => Ok(CostSpec::Exp {
                    base: base.clone(),
                    scale: scale.clone(),
                }),
                _ => Err(Failure::validation("exp takes at most two parameters")),
            }
        }
        ("table", Some(rest)) => Ok(CostSpec::Table { values: rats(rest)? }),
        _ => Err(Failure::validation(format!(
            "unknown cost function {text:?}; try linear, linear:a,b, square, pow2, poly:c0,c1,.., exp:base,scale, or table:v1,v2,.."
        ))),
    }
}

fn parse_weights_arg(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Failure::validation(format!("bad weight {p:?}")))
        })
        .collect()
}

fn parse_partition_arg(text: &str, n: usize) -> Result<Partition, Failure> {
    let source = if Path::new(text).exists() {
        std::fs::read_to_string(text)
            .map_err(|e| Failure::validation(format!("cannot read {text}: {e}")))?
    } else {
        text.to_string()
    };
    let trimmed = source.trim();
    let lists: Vec<Vec<usize>> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed)
            .map_err(|e| Failure::validation(format!("bad partition JSON: {e}")))?
    } else {
        trimmed
            .split('|')
            .map(|group| {
                group
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<usize>()
                            .map_err(|_| Failure::validation(format!("bad player id {p:?}")))
                    })
                    .collect::<Result<Vec<usize>, Failure>>()
            })
            .collect::<Result<Vec<Vec<usize>>, Failure>>()?
    };
    partition_from_lists(lists, n).map_err(|e| Failure::validation(e.to_string()))
}

fn load_game(args: &AnalyzeArgs) -> Result<(Game, GameSpec), Failure> {
    if let Some(path) = &args.game {
        if args.n.is_some() || args.m.is_some() || args.cost.is_some() {
            return Err(Failure::validation(
                "--game conflicts with --n/--m/--cost; pick one way to describe the game",
            ));
        }
        let raw = std::fs::read_to_string(path)
            .map_err(|e| Failure::validation(format!("cannot read {path}: {e}")))?;
        let spec: GameSpec = serde_json::from_str(&raw)
            .map_err(|e| Failure::validation(format!("bad game JSON: {e}")))?;
        let game = spec.to_game().map_err(|e| Failure::validation(e.to_string()))?;
        Ok((game, spec))
    } else {
        let (n, m) = match (args.n, args.m) {
            (Some(n), Some(m)) => (n, m),
            _ => {
                return Err(Failure::validation(
                    "describe the game with --game FILE or with --n, --m and --cost",
                ))
            }
        };
        let cost = args.cost.as_deref().unwrap_or("linear");
        let spec = GameSpec {
            n,
            m,
            cost: parse_cost_arg(cost)?,
        };
        let game = spec.to_game().map_err(|e| Failure::validation(e.to_string()))?;
        Ok((game, spec))
    }
}

fn build_cost(spec: &CostSpec, max_load: usize) -> Result<CostFunction, Failure> {
    spec.build(max_load)
        .map_err(|e| Failure::validation(e.to_string()))
}

fn emit<T: Serialize>(common: &CommonArgs, text: &str, report: &T) -> Result<(), Failure> {
    if common.check && common.format == OutputFormat::Json {
        let parsed: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Failure::validation(format!("emitted JSON does not parse: {e}")))?;
        let expected = serde_json::to_value(report).expect("reports convert to JSON values");
        if parsed != expected {
            return Err(Failure::validation(
                "emitted JSON does not survive a parse round trip",
            ));
        }
    }
    match &common.output {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::validation(format!("cannot write {path}: {e}"))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Ok(()) => Ok(()),
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {
                    std::process::exit(0);
                }
                Err(e) => Err(Failure::validation(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn csv_join(row: &[String]) -> String {
    row.join(",")
}

fn loads_label(counts: &[usize]) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

fn weight_loads_label(loads: &[u64]) -> String {
    loads
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

fn class_name(class: CoalitionClass) -> &'static str {
    match class {
        CoalitionClass::Divisible => "divisible",
        CoalitionClass::Remainder => "remainder",
        CoalitionClass::Infeasible => "infeasible",
    }
}

fn pmf_json(mu: &CountPmf) -> BTreeMap<usize, String> {
    mu.support().map(|(c, p)| (c, format_rat(p))).collect()
}

// ---------------------------------------------------------------- analyze

#[derive(Serialize)]
struct CoalitionJson {
    members: Vec<usize>,
    size: usize,
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    outside_counts: Option<BTreeMap<usize, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    effective_cost: Option<Vec<String>>,
}

#[derive(Serialize)]
struct SupportRowJson {
    loads: Vec<usize>,
    probability: String,
}

#[derive(Serialize)]
struct EquilibriumJson {
    exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocking_coalition: Option<Vec<usize>>,
    support: Vec<SupportRowJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_total_cost: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_max_cost: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bar_c_optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hat_c_optimal: Option<bool>,
}

#[derive(Serialize)]
struct AnalyzeJson {
    n: usize,
    m: usize,
    cost: CostSpec,
    partition: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    balanced: bool,
    route: &'static str,
    optimal_total_cost: String,
    optimal_max_cost: String,
    coalitions: Vec<CoalitionJson>,
    equilibrium: EquilibriumJson,
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, Failure> {
    let cap = effective_cap(args.common.cap)?;
    let (game, spec) = load_game(&args)?;
    let partition = parse_partition_arg(&args.partition, game.n())?;

    let mut coalitions = Vec::new();
    for (idx, members) in partition.coalitions().iter().enumerate() {
        // beliefs only exist while every coalition has qualified agreements;
        // report the classification alone otherwise
        let sub = subgame(&partition, idx, game.m(), game.cost()).ok();
        coalitions.push(CoalitionJson {
            members: members.clone(),
            size: members.len(),
            class: class_name(classify(members.len(), game.m())),
            outside_counts: sub.as_ref().map(|s| pmf_json(&s.mu)),
            effective_cost: sub
                .as_ref()
                .map(|s| s.g.values().iter().map(format_rat).collect()),
        });
    }

    let induced = if args.oracle {
        brute_force_profile_oracle(&partition, &game, OracleGranularity::Loads, cap)
            .map_err(|e| Failure::cap(e.to_string()))?
    } else {
        induce(&partition, game.m())
    };
    let route = if args.oracle { "oracle" } else { "structural" };

    let opt = game.optimal_costs();
    let (equilibrium, exit) = match &induced {
        Induced::Equilibrium(profile) => (equilibrium_json(profile, &game), EXIT_OK),
        Induced::NoEquilibrium { coalition } => (
            EquilibriumJson {
                exists: false,
                blocking_coalition: Some(coalition.clone()),
                support: Vec::new(),
                expected_total_cost: None,
                expected_max_cost: None,
                bar_c_optimal: None,
                hat_c_optimal: None,
            },
            EXIT_NO_EQUILIBRIUM,
        ),
    };

    let report = AnalyzeJson {
        n: game.n(),
        m: game.m(),
        cost: spec.cost,
        partition: partition_to_lists(&partition),
        sizes: partition.sizes(),
        balanced: partition.is_balanced(game.m()),
        route,
        optimal_total_cost: format_rat(&opt.total),
        optimal_max_cost: format_rat(&opt.max),
        coalitions,
        equilibrium,
    };

    let text = match args.common.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => analyze_table(&report),
        OutputFormat::Csv => analyze_csv(&report),
    };
    emit(&args.common, &text, &report)?;
    Ok(exit)
}

fn equilibrium_json(profile: &InducedProfile, game: &Game) -> EquilibriumJson {
    EquilibriumJson {
        exists: true,
        blocking_coalition: None,
        support: profile
            .support()
            .map(|(lv, p)| SupportRowJson {
                loads: lv.counts().to_vec(),
                probability: format_rat(p),
            })
            .collect(),
        expected_total_cost: Some(format_rat(&profile.expected_total_cost(game))),
        expected_max_cost: Some(format_rat(&profile.expected_max_cost(game))),
        bar_c_optimal: Some(profile.is_bar_c_optimal(game)),
        hat_c_optimal: Some(profile.is_hat_c_optimal(game)),
    }
}

fn analyze_table(report: &AnalyzeJson) -> String {
    let mut out = String::new();
    let push = |out: &mut String, k: &str, v: String| {
        if k.len() >= 22 {
            out.push_str(&format!("{k} {v}\n"));
        } else {
            out.push_str(&format!("{k:<22}{v}\n"));
        }
    };
    push(&mut out, "players", report.n.to_string());
    push(&mut out, "resources", report.m.to_string());
    push(
        &mut out,
        "partition",
        report
            .partition
            .iter()
            .map(|c| {
                format!(
                    "{{{}}}",
                    c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" "),
    );
    push(&mut out, "balanced", report.balanced.to_string());
    push(&mut out, "route", report.route.to_string());
    push(
        &mut out,
        "optimal total cost",
        report.optimal_total_cost.clone(),
    );
    push(&mut out, "optimal max cost", report.optimal_max_cost.clone());
    for c in &report.coalitions {
        push(
            &mut out,
            &format!("coalition {:?}", c.members),
            format!("size {} class {}", c.size, c.class),
        );
        if let Some(counts) = &c.outside_counts {
            push(
                &mut out,
                "  outside counts",
                counts
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
        }
        if let Some(g) = &c.effective_cost {
            push(
                &mut out,
                "  effective cost",
                g.iter()
                    .enumerate()
                    .map(|(i, v)| format!("{}:{v}", i + 1))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
        }
    }
    let eq = &report.equilibrium;
    push(&mut out, "equilibrium", eq.exists.to_string());
    if let Some(coalition) = &eq.blocking_coalition {
        push(&mut out, "blocking coalition", format!("{coalition:?}"));
    }
    for row in &eq.support {
        push(
            &mut out,
            &format!("  loads {}", loads_label(&row.loads)),
            row.probability.clone(),
        );
    }
    if let Some(v) = &eq.expected_total_cost {
        push(&mut out, "expected total cost", v.clone());
    }
    if let Some(v) = &eq.expected_max_cost {
        push(&mut out, "expected max cost", v.clone());
    }
    if let Some(v) = eq.bar_c_optimal {
        push(&mut out, "total cost optimal", v.to_string());
    }
    if let Some(v) = eq.hat_c_optimal {
        push(&mut out, "max cost optimal", v.to_string());
    }
    out.trim_end().to_string()
}

fn analyze_csv(report: &AnalyzeJson) -> String {
    let mut rows = vec![csv_join(&[
        "loads".into(),
        "probability".into(),
    ])];
    for row in &report.equilibrium.support {
        rows.push(csv_join(&[loads_label(&row.loads), row.probability.clone()]));
    }
    rows.join("\n")
}

// ---------------------------------------------------------------- agreements

#[derive(Serialize)]
struct AgreementRowJson {
    actions: Vec<usize>,
    loads: Vec<usize>,
}

#[derive(Serialize)]
struct AgreementsJson {
    size: usize,
    m: usize,
    class: &'static str,
    cost: CostSpec,
    outside_counts: BTreeMap<usize, String>,
    effective_cost: Vec<String>,
    count: usize,
    agreements: Vec<AgreementRowJson>,
}

fn cmd_agreements(args: AgreementsArgs) -> Result<u8, Failure> {
    let cap = effective_cap(args.common.cap)?;
    if args.size == 0 {
        return Err(Failure::validation("--size must be positive"));
    }
    if args.m == 0 {
        return Err(Failure::validation("--m must be positive"));
    }
    let spec = parse_cost_arg(&args.cost)?;
    let mu = match &args.others {
        Some(raw) => {
            let sizes: Vec<usize> = raw
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| Failure::validation(format!("bad coalition size {p:?}")))
                })
                .collect::<Result<_, _>>()?;
            outside_count_pmf(&sizes, args.m).map_err(|e| Failure::validation(e.to_string()))?
        }
        None => CountPmf::point(0),
    };
    let f = build_cost(&spec, mu.max_count() + args.size)?;
    let g = effective_cost(&f, &mu, args.size).map_err(|e| Failure::validation(e.to_string()))?;

    let qualified = enumerate_qualified_agreements(args.size, args.m, &g, cap)
        .map_err(|e| Failure::cap(e.to_string()))?;
    let report = AgreementsJson {
        size: args.size,
        m: args.m,
        class: class_name(classify(args.size, args.m)),
        cost: spec,
        outside_counts: pmf_json(&mu),
        effective_cost: g.values().iter().map(format_rat).collect(),
        count: qualified.len(),
        agreements: qualified
            .iter()
            .map(|a| AgreementRowJson {
                actions: a.actions().to_vec(),
                loads: a.coalition_loads(args.m).counts().to_vec(),
            })
            .collect(),
    };

    let text = match args.common.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => {
            let mut out = String::new();
            out.push_str(&format!(
                "size {} on {} resources: class {}, {} qualified agreements\n",
                report.size, report.m, report.class, report.count
            ));
            for row in &report.agreements {
                out.push_str(&format!(
                    "  actions {:?} loads {}\n",
                    row.actions,
                    loads_label(&row.loads)
                ));
            }
            out.trim_end().to_string()
        }
        OutputFormat::Csv => {
            let mut rows = vec![csv_join(&["actions".into(), "loads".into()])];
            for row in &report.agreements {
                rows.push(csv_join(&[
                    row.actions
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join("|"),
                    loads_label(&row.loads),
                ]));
            }
            rows.join("\n")
        }
    };
    emit(&args.common, &text, &report)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct VennWitnessJson {
    covering: bool,
    envy_free: bool,
    credible: bool,
    actions: Vec<usize>,
    loads: Vec<usize>,
    m: usize,
}

#[derive(Serialize)]
struct Prop2Json {
    max_size: usize,
    resource_counts: Vec<usize>,
    cost: CostSpec,
    agreements_checked: usize,
    counterexamples: Vec<VennWitnessJson>,
    witnesses: Vec<VennWitnessJson>,
    pass: bool,
}

fn cmd_verify_prop2(args: VerifyProp2Args) -> Result<u8, Failure> {
    let cap = effective_cap(args.common.cap)?;
    let spec = parse_cost_arg(&args.cost)?;
    let resource_counts: Vec<usize> = match args.m {
        Some(m) if m > 0 => vec![m],
        Some(_) => return Err(Failure::validation("--m must be positive")),
        None => vec![2, 3, 4],
    };
    if args.size == 0 {
        return Err(Failure::validation("--size must be positive"));
    }

    let mut checked = 0usize;
    let mut counterexamples = Vec::new();
    let mut witnesses: BTreeMap<(bool, bool, bool), VennWitnessJson> = BTreeMap::new();
    for &m in &resource_counts {
        for size in 1..=args.size {
            let f = build_cost(&spec, size.max(2))?;
            let g = EffectiveCost::from_cost(&f);
            let space = (m as u128).pow(size as u32);
            if space > cap as u128 {
                return Err(Failure::cap(format!(
                    "size {size} on {m} resources needs {space} agreements, cap is {cap}"
                )));
            }
            for actions in scg_core::game::index_tuples(size, m) {
                let a = scg_core::agreement::Agreement::anonymous(actions, m)
                    .expect("generated actions are in range");
                checked += 1;
                let covering = a.is_covering(m);
                let envy_free = a.is_envy_free(m, &g);
                let credible = a.is_credible(m, &g);
                let witness = || VennWitnessJson {
                    covering,
                    envy_free,
                    credible,
                    actions: a.actions().to_vec(),
                    loads: a.coalition_loads(m).counts().to_vec(),
                    m,
                };
                let pareto = scg_core::agreement::pareto_oracle(&a, m, &g, cap)
                    .map_err(|e| Failure::cap(e.to_string()))?;
                let ok = (a.is_pareto_optimal(m) == pareto)
                    && (covering == pareto)
                    && (!credible || covering)
                    && (!(covering && envy_free) || credible);
                if !ok {
                    counterexamples.push(witness());
                } else {
                    witnesses.entry((covering, envy_free, credible)).or_insert_with(witness);
                }
            }
        }
    }

    let pass = counterexamples.is_empty();
    let report = Prop2Json {
        max_size: args.size,
        resource_counts,
        cost: spec,
        agreements_checked: checked,
        counterexamples,
        witnesses: witnesses.into_values().collect(),
        pass,
    };
    let text = match args.common.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => {
            let mut out = format!(
                "checked {} agreements up to size {}: {}\n",
                report.agreements_checked,
                report.max_size,
                if report.pass { "pass" } else { "FAIL" }
            );
            out.push_str("covering envy_free credible example_loads\n");
            for w in &report.witnesses {
                out.push_str(&format!(
                    "{:<9}{:<10}{:<9}{} (m={})\n",
                    w.covering,
                    w.envy_free,
                    w.credible,
                    loads_label(&w.loads),
                    w.m
                ));
            }
            out.trim_end().to_string()
        }
        OutputFormat::Csv => {
            let mut rows = vec![csv_join(&[
                "covering".into(),
                "envy_free".into(),
                "credible".into(),
                "loads".into(),
                "m".into(),
            ])];
            for w in &report.witnesses {
                rows.push(csv_join(&[
                    w.covering.to_string(),
                    w.envy_free.to_string(),
                    w.credible.to_string(),
                    loads_label(&w.loads),
                    w.m.to_string(),
                ]));
            }
            rows.join("\n")
        }
    };
    emit(&args.common, &text, &report)?;
    Ok(if pass { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

#[derive(Serialize)]
struct Lemma1Json {
    n: usize,
    m: usize,
    cost: CostSpec,
    optimal_total_cost: String,
    optimal_max_cost: String,
    brute_total_cost: String,
    brute_max_cost: String,
    even_loads: Vec<usize>,
    total_optimum_only_at_even: bool,
    outcomes_checked: usize,
    pass: bool,
}

fn cmd_verify_lemma1(args: VerifyLemma1Args) -> Result<u8, Failure> {
    let cap = effective_cap(args.common.cap)?;
    let spec = parse_cost_arg(&args.cost)?;
    let f = build_cost(&spec, args.n.max(2))?;
    let game = Game::new(args.n, args.m, f).map_err(|e| Failure::validation(e.to_string()))?;
    let space = game.outcome_count();
    if space > cap {
        return Err(Failure::cap(format!(
            "{} outcomes exceed cap {cap}",
            space
        )));
    }

    let opt = game.optimal_costs();
    let mut brute_total: Option<Rat> = None;
    let mut brute_max: Option<Rat> = None;
    let mut only_even = true;
    let mut checked = 0usize;
    for outcome in game.outcomes() {
        checked += 1;
        let lv = scg_core::game::loads(&outcome, game.m());
        let total = game.total_cost_of_loads(&lv);
        let max = game.max_cost_of_loads(&lv);
        if (total == opt.total) != lv.is_evenly_distributed() {
            only_even = false;
        }
        if brute_total.as_ref().is_none_or(|b| total < *b) {
            brute_total = Some(total);
        }
        if brute_max.as_ref().is_none_or(|b| max < *b) {
            brute_max = Some(max);
        }
    }
    let brute_total = brute_total.expect("at least one outcome");
    let brute_max = brute_max.expect("at least one outcome");
    let pass = brute_total == opt.total && brute_max == opt.max && only_even;

    let report = Lemma1Json {
        n: args.n,
        m: args.m,
        cost: spec,
        optimal_total_cost: format_rat(&opt.total),
        optimal_max_cost: format_rat(&opt.max),
        brute_total_cost: format_rat(&brute_total),
        brute_max_cost: format_rat(&brute_max),
        even_loads: Game::even_load_vector(args.n, args.m).counts().to_vec(),
        total_optimum_only_at_even: only_even,
        outcomes_checked: checked,
        pass,
    };
    let text = match args.common.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => format!(
            "n={} m={} outcomes={} optimal total {} (brute {}) optimal max {} (brute {}) even-only {} : {}",
            report.n,
            report.m,
            report.outcomes_checked,
            report.optimal_total_cost,
            report.brute_total_cost,
            report.optimal_max_cost,
            report.brute_max_cost,
            report.total_optimum_only_at_even,
            if report.pass { "pass" } else { "FAIL" }
        ),
        OutputFormat::Csv => {
            let header = csv_join(&[
                "n".into(),
                "m".into(),
                "optimal_total".into(),
                "brute_total".into(),
                "optimal_max".into(),
                "brute_max".into(),
                "pass".into(),
            ]);
            let row = csv_join(&[
                report.n.to_string(),
                report.m.to_string(),
                report.optimal_total_cost.clone(),
                report.brute_total_cost.clone(),
                report.optimal_max_cost.clone(),
                report.brute_max_cost.clone(),
                report.pass.to_string(),
            ]);
            format!("{header}\n{row}")
        }
    };
    emit(&args.common, &text, &report)?;
    Ok(if pass { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

#[derive(Serialize)]
struct Theorem1Json {
    #[serde(flatten)]
    report: ReportJson,
    cost: CostSpec,
    route: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    full_partitions_checked: Option<usize>,
}

fn cmd_verify_theorem1(args: VerifyTheorem1Args) -> Result<u8, Failure> {
    let cap = effective_cap(args.common.cap)?;
    let spec = parse_cost_arg(&args.cost)?;
    let f = build_cost(&spec, args.n.max(2))?;
    let game = Game::new(args.n, args.m, f).map_err(|e| Failure::validation(e.to_string()))?;

    let mut report = verify_theorem_1(&game);
    let route = if args.oracle {
        for partition in scg_core::partition::enumerate_partitions_by_sizes(args.n) {
            let literal =
                brute_force_profile_oracle(&partition, &game, OracleGranularity::Loads, cap)
                    .map_err(|e| Failure::cap(e.to_string()))?;
            let structural = induce(&partition, args.m);
            let agree = match (&structural, &literal) {
                (Induced::Equilibrium(a), Induced::Equilibrium(b)) => a == b,
                (Induced::NoEquilibrium { .. }, Induced::NoEquilibrium { .. }) => true,
                _ => false,
            };
            if !agree {
                report.holds = false;
            }
        }
        "oracle"
    } else {
        "structural"
    };

    let full_partitions_checked = if args.full_partitions {
        let mut checked = 0usize;
        for partition in set_partitions(args.n) {
            checked += 1;
            if checked > cap {
                return Err(Failure::cap(format!(
                    "more than {cap} set partitions of n={}",
                    args.n
                )));
            }
            let row = partition_report(&partition, &game);
            let balanced = partition.is_balanced(args.m);
            let fine = (row.exists && row.bar_c_optimal == Some(true)) == balanced
                && (!balanced || row.hat_c_optimal == Some(true));
            if !fine {
                report.holds = false;
            }
        }
        Some(checked)
    } else {
        None
    };

    let holds = report.holds;
    let json = Theorem1Json {
        report: ReportJson::from_report(&report, &game),
        cost: spec,
        route,
        full_partitions_checked,
    };
    let text = match args.common.format {
        OutputFormat::Json => to_json(&json),
        OutputFormat::Table => theorem_table(&report, &json),
        OutputFormat::Csv => theorem_csv(&json),
    };
    emit(&args.common, &text, &json)?;
    Ok(if holds { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn theorem_table(report: &TheoremReport, json: &Theorem1Json) -> String {
    let mut out = format!(
        "n={} m={} route={} : {}\n",
        report.n,
        report.m,
        json.route,
        if report.holds { "pass" } else { "FAIL" }
    );
    let labels: Vec<String> = json
        .report
        .partitions
        .iter()
        .map(|row| {
            row.sizes
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(5).max(5) + 2;
    out.push_str(&format!("{:<width$}balanced exists total_opt max_opt support\n", "sizes"));
    for (row, label) in json.report.partitions.iter().zip(&labels) {
        out.push_str(&format!(
            "{:<width$}{:<9}{:<7}{:<10}{:<8}{}\n",
            label,
            row.balanced,
            row.equilibrium_exists,
            row.bar_c_optimal.map_or("-".to_string(), |b| b.to_string()),
            row.hat_c_optimal.map_or("-".to_string(), |b| b.to_string()),
            row.support_size,
        ));
    }
    if let Some(checked) = json.full_partitions_checked {
        out.push_str(&format!("set partitions checked: {checked}\n"));
    }
    out.trim_end().to_string()
}

fn theorem_csv(json: &Theorem1Json) -> String {
    let mut rows = vec![csv_join(&[
        "sizes".into(),
        "balanced".into(),
        "equilibrium_exists".into(),
        "bar_c_optimal".into(),
        "hat_c_optimal".into(),
        "support_size".into(),
    ])];
    for row in &json.report.partitions {
        rows.push(csv_join(&[
            row.sizes
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join("|"),
            row.balanced.to_string(),
            row.equilibrium_exists.to_string(),
            row.bar_c_optimal.map_or("-".to_string(), |b| b.to_string()),
            row.hat_c_optimal.map_or("-".to_string(), |b| b.to_string()),
            row.support_size.to_string(),
        ]));
    }
    rows.join("\n")
}

#[derive(Serialize)]
struct VerifyWeightedJson {
    weights: Vec<u64>,
    m: usize,
    cost: CostSpec,
    minimax_optimum: u64,
    hat_c_partition_found: Option<Vec<Vec<usize>>>,
    message: String,
    rejections: usize,
    min_var_matches_min_total_cost: bool,
    pass: bool,
}

fn cmd_verify_weighted(args: VerifyWeightedArgs) -> Result<u8, Failure> {
    let cap = effective_cap(args.common.cap)?;
    let weights = parse_weights_arg(&args.weights)?;
    let spec = parse_cost_arg(&args.cost)?;
    let total: u64 = weights.iter().sum();
    let f = build_cost(&spec, (total as usize).max(2))?;
    let game =
        WeightedGame::new(weights.clone(), args.m, f).map_err(|e| Failure::validation(e.to_string()))?;

    let search = find_hat_c_optimal_partition(&game, cap).map_err(|e| Failure::cap(e.to_string()))?;
    let equivalence =
        weighted_c_bar_equivalence_check(&weights, args.m, cap).map_err(|e| Failure::cap(e.to_string()))?;

    let found = search
        .found
        .as_ref()
        .map(|hit| partition_to_lists(&hit.partition));
    let message = match &found {
        Some(lists) => format!("ĉ-optimal partition found: {lists:?}"),
        None => "no ĉ-optimal partition exists".to_string(),
    };
    let pass = equivalence.agrees;
    let report = VerifyWeightedJson {
        weights,
        m: args.m,
        cost: spec,
        minimax_optimum: search.t_star,
        hat_c_partition_found: found,
        message,
        rejections: search.rejections.len(),
        min_var_matches_min_total_cost: equivalence.agrees,
        pass,
    };
    let text = match args.common.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => format!(
            "weights {:?} on {} resources: minimax optimum {}\n{}\nrejected partitions: {}\nmin-var/total-cost agreement: {}\n{}",
            report.weights,
            report.m,
            report.minimax_optimum,
            report.message,
            report.rejections,
            report.min_var_matches_min_total_cost,
            if report.pass { "pass" } else { "FAIL" }
        ),
        OutputFormat::Csv => {
            let header = csv_join(&[
                "weights".into(),
                "m".into(),
                "minimax_optimum".into(),
                "found".into(),
                "rejections".into(),
                "pass".into(),
            ]);
            let row = csv_join(&[
                report
                    .weights
                    .iter()
                    .map(|w| w.to_string())
                    .collect::<Vec<_>>()
                    .join("|"),
                report.m.to_string(),
                report.minimax_optimum.to_string(),
                report.hat_c_partition_found.is_some().to_string(),
                report.rejections.to_string(),
                report.pass.to_string(),
            ]);
            format!("{header}\n{row}")
        }
    };
    emit(&args.common, &text, &report)?;
    Ok(if pass { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

// ---------------------------------------------------------------- mnp

#[derive(Serialize)]
struct MnpJson {
    weights: Vec<u64>,
    m: usize,
    objective: &'static str,
    value: u128,
    loads: Vec<u64>,
    assignment: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    argmin_loads: Option<Vec<Vec<u64>>>,
}

fn cmd_mnp(args: MnpArgs) -> Result<u8, Failure> {
    let cap = effective_cap(args.common.cap)?;
    let weights = parse_weights_arg(&args.weights)?;
    if args.m == 0 {
        return Err(Failure::validation("--m must be positive"));
    }
    if weights.is_empty() || weights.contains(&0) {
        return Err(Failure::validation("weights must be positive"));
    }
    let solution = mnp_solve(&weights, args.m, args.objective.to_core(), cap)
        .map_err(|e| Failure::cap(e.to_string()))?;
    let canonical = solution
        .loads
        .iter()
        .next()
        .expect("solver returns at least one load vector")
        .clone();
    let assignment = realize_assignment(&weights, &canonical)
        .expect("canonical loads are realizable by construction");

    let report = MnpJson {
        weights,
        m: args.m,
        objective: args.objective.name(),
        value: solution.value,
        loads: canonical,
        assignment,
        argmin_loads: if args.all {
            Some(solution.loads.iter().cloned().collect())
        } else {
            None
        },
    };
    let text = match args.common.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => {
            let mut out = format!(
                "weights {:?} into {} parts, objective {}: value {}\nloads {}\nassignment {:?}",
                report.weights,
                report.m,
                report.objective,
                report.value,
                weight_loads_label(&report.loads),
                report.assignment
            );
            if let Some(all) = &report.argmin_loads {
                out.push_str("\nargmin loads:");
                for loads in all {
                    out.push_str(&format!(" {}", weight_loads_label(loads)));
                }
            }
            out
        }
        OutputFormat::Csv => {
            let mut rows = vec![csv_join(&["loads".into(), "value".into()])];
            match &report.argmin_loads {
                Some(all) => {
                    for loads in all {
                        rows.push(csv_join(&[
                            weight_loads_label(loads),
                            report.value.to_string(),
                        ]));
                    }
                }
                None => rows.push(csv_join(&[
                    weight_loads_label(&report.loads),
                    report.value.to_string(),
                ])),
            }
            rows.join("\n")
        }
    };
    emit(&args.common, &text, &report)?;
    Ok(EXIT_OK)
}

/// Assigns each weight (in input order) a part index so the part totals
/// equal `target` as a multiset. Backtracking over parts, heaviest first.
fn realize_assignment(weights: &[u64], target: &[u64]) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(weights[i]));
    let mut remaining = target.to_vec();
    let mut assignment = vec![usize::MAX; weights.len()];
    fn place(
        pos: usize,
        order: &[usize],
        weights: &[u64],
        remaining: &mut Vec<u64>,
        assignment: &mut Vec<usize>,
    ) -> bool {
        if pos == order.len() {
            return remaining.iter().all(|&r| r == 0);
        }
        let player = order[pos];
        let w = weights[player];
        let mut seen = std::collections::BTreeSet::new();
        for part in 0..remaining.len() {
            if remaining[part] < w || !seen.insert(remaining[part]) {
                continue;
            }
            remaining[part] -= w;
            assignment[player] = part;
            if place(pos + 1, order, weights, remaining, assignment) {
                return true;
            }
            remaining[part] += w;
        }
        false
    }
    if place(0, &order, weights, &mut remaining, &mut assignment) {
        Some(assignment)
    } else {
        None
    }
}

// ---------------------------------------------------------------- weighted

#[derive(Serialize)]
struct RejectionJson {
    partition: Vec<Vec<usize>>,
    reason: String,
}

#[derive(Serialize)]
struct DiagnosisJson {
    groups: Vec<Vec<usize>>,
    loads: Vec<u64>,
    covering: bool,
    envy_free: bool,
    credible: bool,
    base_weights: Vec<u64>,
}

#[derive(Serialize)]
struct WeightedJson {
    weights: Vec<u64>,
    m: usize,
    cost: CostSpec,
    total_weight: u64,
    grand_structure: Option<String>,
    grand_support: Vec<Vec<u64>>,
    minimax_optimum: u64,
    found_partition: Option<Vec<Vec<usize>>>,
    found_support: Option<Vec<Vec<u64>>>,
    rejections: Vec<RejectionJson>,
    grand_minimax_diagnoses: Vec<DiagnosisJson>,
}

fn structure_label(structure: &WeightedStructure) -> String {
    match structure {
        WeightedStructure::AllDistinct => "all_distinct".to_string(),
        WeightedStructure::SingleResource => "single_resource".to_string(),
        WeightedStructure::Grouped { b } => format!("grouped:{b}"),
    }
}

fn cmd_weighted(args: WeightedArgs) -> Result<u8, Failure> {
    let cap = effective_cap(args.common.cap)?;
    let weights = parse_weights_arg(&args.weights)?;
    let spec = parse_cost_arg(&args.cost)?;
    let total: u64 = weights.iter().sum();
    let f = build_cost(&spec, (total as usize).max(2))?;
    let game = WeightedGame::new(weights.clone(), args.m, f)
        .map_err(|e| Failure::validation(e.to_string()))?;

    let structure = weighted_qualified_conditions(&weights, args.m);
    let grand_support = structure
        .as_ref()
        .map(|s| structure_load_support(&weights, args.m, s))
        .unwrap_or_default();
    let search = find_hat_c_optimal_partition(&game, cap).map_err(|e| Failure::cap(e.to_string()))?;

    let report = WeightedJson {
        weights,
        m: args.m,
        cost: spec,
        total_weight: total,
        grand_structure: structure.as_ref().map(structure_label),
        grand_support: grand_support.iter().cloned().collect(),
        minimax_optimum: search.t_star,
        found_partition: search
            .found
            .as_ref()
            .map(|hit| partition_to_lists(&hit.partition)),
        found_support: search
            .found
            .as_ref()
            .map(|hit| hit.support.iter().cloned().collect()),
        rejections: search
            .rejections
            .iter()
            .map(|(partition, reason)| RejectionJson {
                partition: partition_to_lists(partition),
                reason: match reason {
                    HatCRejection::NoQualifiedAgreement { coalition } => {
                        format!("no qualified agreement for coalition {coalition:?}")
                    }
                    HatCRejection::SupportExceedsOptimum { witness, max } => format!(
                        "support load vector {} has max {max} above the optimum",
                        weight_loads_label(witness)
                    ),
                },
            })
            .collect(),
        grand_minimax_diagnoses: search
            .grand_diagnoses
            .iter()
            .map(|d| DiagnosisJson {
                groups: d.groups.clone(),
                loads: d.loads.clone(),
                covering: d.covering,
                envy_free: d.envy_free,
                credible: d.credible,
                base_weights: d.base_weights.clone(),
            })
            .collect(),
    };

    let text = match args.common.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Table => {
            let mut out = format!(
                "weights {:?} on {} resources (total {})\n",
                report.weights, report.m, report.total_weight
            );
            out.push_str(&format!(
                "grand coalition structure: {}\n",
                report.grand_structure.as_deref().unwrap_or("none")
            ));
            if !report.grand_support.is_empty() {
                out.push_str("grand support:");
                for loads in &report.grand_support {
                    out.push_str(&format!(" {}", weight_loads_label(loads)));
                }
                out.push('\n');
            }
            out.push_str(&format!("minimax optimum: {}\n", report.minimax_optimum));
            match &report.found_partition {
                Some(lists) => out.push_str(&format!("max-cost optimal partition: {lists:?}\n")),
                None => out.push_str("no partition guarantees the minimax optimum\n"),
            }
            for r in &report.rejections {
                out.push_str(&format!("rejected {:?}: {}\n", r.partition, r.reason));
            }
            for d in &report.grand_minimax_diagnoses {
                out.push_str(&format!(
                    "optimal grand arrangement {:?} loads {}: covering {} envy_free {} credible {} base weights {:?}\n",
                    d.groups,
                    weight_loads_label(&d.loads),
                    d.covering,
                    d.envy_free,
                    d.credible,
                    d.base_weights
                ));
            }
            out.trim_end().to_string()
        }
        OutputFormat::Csv => {
            let mut rows = vec![csv_join(&["partition".into(), "status".into()])];
            if let Some(lists) = &report.found_partition {
                rows.push(csv_join(&[
                    lists
                        .iter()
                        .map(|c| {
                            c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("|")
                        })
                        .collect::<Vec<_>>()
                        .join(";"),
                    "found".into(),
                ]));
            }
            for r in &report.rejections {
                rows.push(csv_join(&[
                    r.partition
                        .iter()
                        .map(|c| {
                            c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("|")
                        })
                        .collect::<Vec<_>>()
                        .join(";"),
                    "rejected".into(),
                ]));
            }
            rows.join("\n")
        }
    };
    emit(&args.common, &text, &report)?;
    Ok(EXIT_OK)
}
