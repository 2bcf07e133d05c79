use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fqft_core::correlators::{closed_form_library, vertex_correlator, BracketParams, CorrelatorRequest, Normalization, CLOSED_FORM_NAMES};
use fqft_core::error::Error;
use fqft_core::exactalg::{check, Expr, Mode, QSeries, RationalFunction, Scalar, Verdict};
use fqft_core::hilbert::{
    chi_c2_series, parse_weight, toric_chi_series, toric_correlator_check, verify_main_identity, BundleInsertion, CentralTheorem, KParams,
    MainIdentity, MarkedInsertion, Operation, SurfaceData, ToricWhich,
};
use fqft_core::macdonald::{b_norm, eigen_e_r, eigen_tilde_e, macdonald_p, specialize_eps};
use fqft_core::partitions::Partition;
use fqft_core::symfun::{alpha_coefficients, basis_convert, beta_gamma_coefficients, Basis, SymmetricFunction};
use fqft_core::verify::{find_criterion, run_all, ClosedFormIdentity, RunConfig, VertexIdentity, CRITERIA};

#[derive(Parser)]
#[command(name = "fqft", version, about = "Exact localization sums, Macdonald operators and correlators on Hilbert schemes of points")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Truncation order N.
    #[arg(long, global = true, env = "FQFT_ORDER")]
    order: Option<usize>,
    /// Verification mode; defaults to evaluate for N >= 6 and symbolic below.
    #[arg(long, global = true, env = "FQFT_MODE", value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, global = true, env = "FQFT_SEED", default_value_t = 1)]
    seed: u64,
    /// Random points per identity in evaluate mode (at least 3).
    #[arg(long, global = true, env = "FQFT_TRIALS", default_value_t = 3)]
    trials: usize,
    #[arg(long, global = true, env = "FQFT_FORMAT", value_enum)]
    format: Option<Format>,
    /// Worker threads.
    #[arg(long, global = true, env = "FQFT_JOBS")]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Symbolic,
    Evaluate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Run the acceptance criteria.
    VerifyAll {
        /// Criterion numbers or identifiers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Expand a correlator of eigenoperators and check it against the partition sum.
    Correlate {
        /// Operator word, e.g. E2, E1E1, Psi1Psi1, Lambda2.
        #[arg(long)]
        word: String,
        /// Divide by <1> (the default).
        #[arg(long, conflicts_with = "raw")]
        normalized: bool,
        /// Keep the unnormalized bracket.
        #[arg(long)]
        raw: bool,
    },
    /// Symmetric-function bases and coefficient tables.
    Symfun {
        #[command(subcommand)]
        command: SymfunCommand,
    },
    /// Macdonald polynomials, norms, specializations and eigenvalues.
    Macdonald {
        #[command(subcommand)]
        command: MacdonaldCommand,
    },
    /// Equivariant Euler characteristics of tautological insertions.
    Chi {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// C2: psi:m:a,b, lambda:m:a,b, sigma:m:a,b or plain:a,b.
        /// Other surfaces: lambda:LABEL or sym:LABEL.
        #[arg(long = "insert")]
        inserts: Vec<String>,
        /// C2: weight a,b. Other surfaces: bundle label.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
        #[arg(long, default_value = "u", allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value = "v", allow_hyphen_values = true)]
        v: String,
        /// Highest total marker degree kept on toric surfaces.
        #[arg(long, default_value_t = 2)]
        marker_degree: usize,
    },
    /// Check a single identity.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Check the toric exterior-power identities on a surface.
    ToricCheck {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// lambda1, lambda1lambda1 or lambda2.
        #[arg(long)]
        which: String,
    },
}

#[derive(Args)]
struct SurfaceArgs {
    /// Built-in surface: C2, P2 or P1xP1.
    #[arg(long, default_value = "C2")]
    surface: String,
    /// Fixed-point data file; overrides --surface.
    #[arg(long)]
    surface_file: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum SymfunCommand {
    /// Expand a basis element in another basis.
    Convert {
        #[arg(long, default_value = "e")]
        from: String,
        #[arg(long, default_value = "p")]
        to: String,
        #[arg(long)]
        mu: String,
    },
    /// log of the E-series in the e-basis.
    Alpha {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// beta and gamma tables in q.
    Betagamma {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum MacdonaldCommand {
    /// P_mu in a chosen basis.
    #[command(name = "P")]
    P {
        #[arg(long)]
        mu: String,
        #[arg(long, default_value = "m")]
        basis: String,
    },
    /// b_mu(q,t).
    Norm {
        #[arg(long)]
        mu: String,
    },
    /// The specialization eps_{u,t} of P_mu.
    Eps {
        #[arg(long)]
        mu: String,
    },
    /// Eigenvalues of E^r and of the modified operator on P_mu.
    Eigen {
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The rank-one exponential identity at twist A.
    Main {
        #[arg(long = "A", allow_hyphen_values = true, default_value = "0,0")]
        a: String,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(_)
            | Error::UnknownName(_)
            | Error::UnknownKernel(_)
            | Error::Precondition(_)
            | Error::DegreeBound { .. }
            | Error::MissingBundle { .. }
            | Error::UnsupportedSurface(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Emitted text and whether every verification in it passed.
struct Outcome {
    text: String,
    verified: bool,
}

type Run = Result<Outcome, Failure>;

struct Ctx {
    order: Option<usize>,
    mode: Option<ModeArg>,
    seed: u64,
    trials: usize,
    format: Option<Format>,
}

impl Ctx {
    fn order(&self, default: usize) -> usize {
        self.order.unwrap_or(default)
    }

    fn mode(&self, order: usize) -> Mode {
        let evaluate = match self.mode {
            Some(m) => m == ModeArg::Evaluate,
            None => order >= 6,
        };
        if evaluate {
            Mode::Evaluate { trials: self.trials, seed: self.seed }
        } else {
            Mode::Symbolic
        }
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let g = &cli.global;
    if g.trials < 3 {
        eprintln!("error: --trials must be at least 3");
        return ExitCode::from(2);
    }
    if let Some(j) = g.jobs {
        if j == 0 || rayon::ThreadPoolBuilder::new().num_threads(j).build_global().is_err() {
            eprintln!("error: bad --jobs value");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx { order: g.order, mode: g.mode, seed: g.seed, trials: g.trials, format: g.format };
    match dispatch(&cli.command, &ctx) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            ExitCode::from(if out.verified { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Run {
    match cmd {
        Command::VerifyAll { only } => verify_all(only, ctx),
        Command::Correlate { word, raw, .. } => correlate(word, if *raw { Normalization::Raw } else { Normalization::Primed }, ctx),
        Command::Symfun { command } => symfun(command, ctx),
        Command::Macdonald { command } => macdonald(command, ctx),
        Command::Chi { surface, inserts, twist, u, v, marker_degree } => chi(surface, inserts, twist.as_deref(), u, v, *marker_degree, ctx),
        Command::Verify { command: VerifyCommand::Main { a } } => verify_main(a, ctx),
        Command::ToricCheck { surface, which } => toric_check(surface, which, ctx),
    }
}

fn render(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("json values serialize")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn series_json<F: Scalar>(s: &QSeries<F>) -> Value {
    Value::Array((0..=s.order()).map(|k| json!({"power": k, "coeff": s.coeff(k).to_string()})).collect())
}

fn series_rows<F: Scalar>(s: &QSeries<F>) -> Vec<(String, String)> {
    (0..=s.order()).map(|k| (format!("Q^{k}"), s.coeff(k).to_string())).collect()
}

/// Renders a JSON document, or key/value rows for csv and plain output.
fn emit(format: Format, doc: Value, rows: Vec<(String, String)>, header: (&str, &str)) -> String {
    match format {
        Format::Json => render(&doc),
        Format::Csv => {
            let mut out = vec![format!("{},{}", header.0, header.1)];
            out.extend(rows.iter().map(|(k, v)| format!("{},{}", csv_field(k), csv_field(v))));
            out.join("\n")
        }
        Format::Plain => rows.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n"),
    }
}

fn verdict_json(name: &str, v: &Verdict) -> Value {
    json!({"oracle": name, "verdict": serde_json::to_value(v).expect("verdicts serialize")})
}

fn verdict_rows(name: &str, v: &Verdict) -> Vec<(String, String)> {
    let mut rows = vec![(format!("check {name}"), if v.passed { "PASS".to_string() } else { "FAIL".to_string() })];
    if let Some(d) = &v.discrepancy {
        rows.push(("counterexample".into(), format!("{}: lhs = {}, rhs = {}", d.label, d.lhs, d.rhs)));
        if let Some(p) = &d.point {
            let pt: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
            rows.push(("point".into(), pt.join(" ")));
        }
    }
    rows
}

fn symbols() -> BracketParams<RationalFunction> {
    BracketParams::new(RationalFunction::var("q"), RationalFunction::var("t"), RationalFunction::var("u"), RationalFunction::var("v"))
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    Partition::from_str_list(s).map_err(Failure::Usage)
}

fn verify_all(only: &[String], ctx: &Ctx) -> Run {
    let numbers: Vec<usize> = if only.is_empty() {
        CRITERIA.iter().map(|c| c.number).collect()
    } else {
        only.iter().map(|k| find_criterion(k).map(|c| c.number)).collect::<Result<_, _>>()?
    };
    let cfg = RunConfig { order: ctx.order, seed: ctx.seed, trials: ctx.trials, symbolic: ctx.mode == Some(ModeArg::Symbolic) };
    let reports = run_all(&numbers, &cfg)?;
    let verified = reports.iter().all(|r| r.passed);
    let text = match ctx.format(Format::Plain) {
        Format::Json => render(&json!({"config": serde_json::to_value(&cfg).expect("config serializes"), "passed": verified, "criteria": reports})),
        Format::Csv => {
            let mut out = vec!["number,id,result,counterexample".to_string()];
            for r in &reports {
                let ce = r.counterexample.clone().unwrap_or_default();
                out.push(format!("{},{},{},{}", r.number, r.id, if r.passed { "PASS" } else { "FAIL" }, csv_field(&ce)));
            }
            out.join("\n")
        }
        Format::Plain => {
            let mut out = Vec::new();
            for r in &reports {
                out.push(r.summary_line());
                if let Some(ce) = &r.counterexample {
                    out.push(format!("    counterexample: {ce}"));
                }
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            out.push(format!("{passed}/{} criteria passed", reports.len()));
            out.join("\n")
        }
    };
    Ok(Outcome { text, verified })
}

fn correlate(word: &str, normalization: Normalization, ctx: &Ctx) -> Run {
    let order = ctx.order(4);
    let mode = ctx.mode(order);
    let req = CorrelatorRequest::parse(word, symbols(), order, normalization)?;
    let label = req.word_label();
    let series = vertex_correlator(&req)?;
    let mut checks = vec![(
        "partition-sum brute force",
        check(&VertexIdentity { word: word.to_string(), normalization, order }, &mode)?,
    )];
    if normalization == Normalization::Primed {
        for name in CLOSED_FORM_NAMES {
            let cf = closed_form_library(name)?;
            if cf.word == label && cf.multiplier == 1 {
                checks.push(("closed form", check(&ClosedFormIdentity { name, order }, &mode)?));
            }
        }
    }
    let verified = checks.iter().all(|(_, v)| v.passed);
    let doc = json!({
        "word": label,
        "order": order,
        "normalization": normalization,
        "mode": mode,
        "series": series_json(&series),
        "verified_against": checks.iter().filter(|(_, v)| v.passed).map(|(n, _)| *n).collect::<Vec<_>>(),
        "checks": checks.iter().map(|(n, v)| verdict_json(n, v)).collect::<Vec<_>>(),
    });
    let mut rows = series_rows(&series);
    for (n, v) in &checks {
        rows.extend(verdict_rows(n, v));
    }
    Ok(Outcome { text: emit(ctx.format(Format::Json), doc, rows, ("power", "coeff")), verified })
}

fn sym_json<F: Scalar>(f: &SymmetricFunction<F>) -> Value {
    json!({
        "basis": f.basis().symbol(),
        "terms": f.terms().iter().map(|(l, c)| json!({"partition": l.parts(), "coeff": c.to_string()})).collect::<Vec<_>>(),
    })
}

fn table_json<'a, F: Scalar + 'a>(basis: &str, entries: impl Iterator<Item = (&'a Partition, &'a F)>) -> Value {
    json!({
        "basis": basis,
        "terms": entries.filter(|(_, c)| !c.is_zero()).map(|(l, c)| json!({"partition": l.parts(), "coeff": c.to_string()})).collect::<Vec<_>>(),
    })
}

fn terms_rows(prefix: &str, v: &Value) -> Vec<(String, String)> {
    let basis = v["basis"].as_str().unwrap_or_default();
    v["terms"]
        .as_array()
        .map(|ts| {
            ts.iter()
                .map(|t| {
                    let parts: Vec<String> = t["partition"].as_array().into_iter().flatten().map(|x| x.to_string()).collect();
                    (format!("{prefix}{basis}({})", parts.join(",")), t["coeff"].as_str().unwrap_or_default().to_string())
                })
                .collect()
        })
        .unwrap_or_default()
}

fn symfun(cmd: &SymfunCommand, ctx: &Ctx) -> Run {
    let q = RationalFunction::var("q");
    let doc = match cmd {
        SymfunCommand::Convert { from, to, mu } => {
            let f: SymmetricFunction<RationalFunction> = SymmetricFunction::element(Basis::parse(from)?, parse_partition(mu)?);
            sym_json(&basis_convert(&f, Basis::parse(to)?)?)
        }
        SymfunCommand::Alpha { n } => {
            let t = alpha_coefficients(*n);
            table_json("e", t.entries.iter())
        }
        SymfunCommand::Betagamma { n } => {
            let (b, c) = beta_gamma_coefficients(*n, &q)?;
            json!({"beta": table_json("a", b.entries.iter()), "gamma": table_json("a", c.entries.iter())})
        }
    };
    let rows = if doc.get("beta").is_some() {
        [terms_rows("beta ", &doc["beta"]), terms_rows("gamma ", &doc["gamma"])].concat()
    } else {
        terms_rows("", &doc)
    };
    Ok(Outcome { text: emit(ctx.format(Format::Json), doc, rows, ("term", "coeff")), verified: true })
}

fn macdonald(cmd: &MacdonaldCommand, ctx: &Ctx) -> Run {
    let (q, t, u) = (RationalFunction::var("q"), RationalFunction::var("t"), RationalFunction::var("u"));
    let (doc, rows) = match cmd {
        MacdonaldCommand::P { mu, basis } => {
            let lam = parse_partition(mu)?;
            let target = Basis::parse(basis)?;
            let p = macdonald_p(&lam)?;
            let p = if target == p.basis() { p } else { basis_convert(&p, target)? };
            let mut doc = sym_json(&p);
            doc["mu"] = json!(lam.parts());
            let rows = terms_rows("", &doc);
            (doc, rows)
        }
        MacdonaldCommand::Norm { mu } => {
            let lam = parse_partition(mu)?;
            let v = b_norm(&lam, &q, &t)?.to_string();
            (json!({"mu": lam.parts(), "b": v}), vec![("b".to_string(), v)])
        }
        MacdonaldCommand::Eps { mu } => {
            let lam = parse_partition(mu)?;
            let v = specialize_eps(&lam, &q, &t, &u)?.to_string();
            (json!({"mu": lam.parts(), "eps": v}), vec![("eps".to_string(), v)])
        }
        MacdonaldCommand::Eigen { mu, r } => {
            let lam = parse_partition(mu)?;
            let e = eigen_e_r(&lam, *r, &q, &t)?.to_string();
            let et = eigen_tilde_e(&lam, *r, &q, &t)?.to_string();
            (
                json!({"mu": lam.parts(), "r": r, "eigenvalue": e, "tilde_eigenvalue": et}),
                vec![("eigenvalue".to_string(), e), ("tilde_eigenvalue".to_string(), et)],
            )
        }
    };
    Ok(Outcome { text: emit(ctx.format(Format::Json), doc, rows, ("key", "value")), verified: true })
}

fn load_surface(args: &SurfaceArgs) -> Result<SurfaceData, Failure> {
    match &args.surface_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let mut s = SurfaceData::from_json(&text)?;
            if s.name.is_empty() {
                s.name = path.display().to_string();
            }
            Ok(s)
        }
        None => Ok(SurfaceData::builtin(&args.surface)?),
    }
}

fn surface_json(s: &SurfaceData) -> Value {
    let labels: std::collections::BTreeSet<&String> = s.fixed_points.iter().flat_map(|p| p.bundles.keys()).collect();
    json!({"name": s.name, "fixed_points": s.fixed_points.len(), "bundles": labels, "data": s})
}

fn parse_value(src: &str) -> Result<RationalFunction, Failure> {
    let e = Expr::parse(src)?;
    Ok(e.eval_scalar(&|n| Ok(RationalFunction::var(n)))?)
}

fn chi(args: &SurfaceArgs, inserts: &[String], twist: Option<&str>, u: &str, v: &str, marker_degree: usize, ctx: &Ctx) -> Run {
    let surface = load_surface(args)?;
    let order = ctx.order(4);
    let p = KParams::new(RationalFunction::var("t1"), RationalFunction::var("t2"), parse_value(u)?, parse_value(v)?);
    let base = json!({"surface": surface_json(&surface), "order": order, "u": u, "v": v});
    if surface.name == "C2" {
        let ins: Vec<BundleInsertion> = inserts.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
        let a = parse_weight(twist.unwrap_or("0,0"))?;
        let series = chi_c2_series(&ins, a, &p, order)?;
        let mode = ctx.mode(order);
        let mut checks = Vec::new();
        if ins.is_empty() {
            checks.push(("exponential closed form", check(&MainIdentity { twist: a, order }, &mode)?));
        }
        if ins.iter().all(|i| matches!(i.op, Operation::Psi(_))) {
            checks.push(("vertex-operator correlators", check(&CentralTheorem { insertions: ins.clone(), twist: a, order }, &mode)?));
        }
        let verified = checks.iter().all(|(_, v)| v.passed);
        let mut doc = base;
        doc["insertions"] = json!(ins.iter().map(|i| i.to_string()).collect::<Vec<_>>());
        doc["twist"] = json!([a.0, a.1]);
        doc["mode"] = json!(mode);
        doc["series"] = series_json(&series);
        doc["verified_against"] = json!(checks.iter().filter(|(_, v)| v.passed).map(|(n, _)| *n).collect::<Vec<_>>());
        doc["checks"] = json!(checks.iter().map(|(n, v)| verdict_json(n, v)).collect::<Vec<_>>());
        let mut rows = series_rows(&series);
        for (n, v) in &checks {
            rows.extend(verdict_rows(n, v));
        }
        return Ok(Outcome { text: emit(ctx.format(Format::Json), doc, rows, ("power", "coeff")), verified });
    }
    let ins: Vec<MarkedInsertion> = inserts
        .iter()
        .map(|s| match s.split_once(':') {
            Some(("lambda", b)) => Ok(MarkedInsertion::exterior(b)),
            Some(("sym", b)) => Ok(MarkedInsertion::symmetric(b)),
            _ => Err(Failure::Usage(format!("bad insertion {s:?}; expected lambda:LABEL or sym:LABEL"))),
        })
        .collect::<Result<_, _>>()?;
    let twist = twist.unwrap_or("L");
    let series = toric_chi_series(&surface, &ins, twist, &p, order, marker_degree)?;
    let mut doc = base;
    doc["insertions"] = json!(ins);
    doc["twist"] = json!(twist);
    doc["marker_degree"] = json!(marker_degree);
    doc["series"] = Value::Array(series.iter().map(|(e, s)| json!({"markers": e, "series": series_json(s)})).collect());
    doc["verified_against"] = json!([]);
    let rows = series
        .iter()
        .flat_map(|(e, s)| {
            let tag: Vec<String> = e.iter().map(|k| k.to_string()).collect();
            series_rows(s).into_iter().map(move |(k, c)| (format!("x^({}) {k}", tag.join(",")), c))
        })
        .collect();
    Ok(Outcome { text: emit(ctx.format(Format::Json), doc, rows, ("term", "coeff")), verified: true })
}

fn verdict_outcome(doc: Value, name: &str, v: &Verdict, ctx: &Ctx) -> Outcome {
    let mut doc = doc;
    doc["verdict"] = serde_json::to_value(v).expect("verdicts serialize");
    doc["verified_against"] = if v.passed { json!([name]) } else { json!([]) };
    Outcome { text: emit(ctx.format(Format::Json), doc, verdict_rows(name, v), ("key", "value")), verified: v.passed }
}

fn verify_main(a: &str, ctx: &Ctx) -> Run {
    let w = parse_weight(a)?;
    let order = ctx.order(4);
    let v = verify_main_identity(w, order, &ctx.mode(order))?;
    let doc = json!({"identity": "main", "twist": [w.0, w.1], "order": order, "surface": surface_json(&SurfaceData::builtin("C2")?)});
    Ok(verdict_outcome(doc, "partition-sum localization", &v, ctx))
}

fn toric_check(args: &SurfaceArgs, which: &str, ctx: &Ctx) -> Run {
    let surface = load_surface(args)?;
    let which: ToricWhich = which.parse()?;
    let order = ctx.order(3);
    let v = toric_correlator_check(&surface, which, order, &ctx.mode(order))?;
    let doc = json!({"identity": "toric", "which": which, "order": order, "surface": surface_json(&surface)});
    Ok(verdict_outcome(doc, "fixed-point partition sums and local correlators", &v, ctx))
}
