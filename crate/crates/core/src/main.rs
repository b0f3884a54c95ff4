use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ctw::axioms::{
    cc_instance, dc_instance, dtb_bundle, ic_instance, order_axioms, pc_of, q_axioms, tarski_instances, AxiomBundle,
    Role,
};
use ctw::diagonal::{fixed_point, godel_sentence, loeb_bundle, theta_indexed, FixedPointResult};
use ctw::export::{to_tptp_with, NumeralStyle, SExpr, TptpOptions};
use ctw::goedel::{decode, encode, GoedelNumber, Syntax};
use ctw::interp::{build_iota, size_profile, translate, Interpretation, SizeMode, DEFAULT_BUDGET};
use ctw::semantics::{
    check_cc, check_claim_star, check_dc, check_dtb_finite, check_piecewise, check_triangle, load_corpus, padded,
    parse_corpus, seed_corpus, CheckReport,
};
use ctw::syntax::{big_and, big_or, desugar, free_variables, parse, parse_term, relativize, Formula, Ident, Sort};
use num_bigint::BigUint;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

/// Compositional truth workbench.
///
/// Formula and pool arguments are inline S-expressions when they start with
/// `(` (or are the atom `z`), and file paths otherwise. The seed corpus is the
/// default pool; `CTW_SEED_CORPUS` points at a replacement.
#[derive(Parser)]
#[command(name = "ctw", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Truth-unfolding depth and unbounded search range.
    #[arg(long, global = true, default_value_t = 64)]
    fuel: u64,
    /// Node budget for interpretations and translations.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Output format; reports default to JSON, size profiles to CSV and the rest to S-expressions.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Sexpr,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and describe it.
    Parse { formula: String },
    /// Print a formula in canonical form.
    Render {
        formula: String,
        /// Reduce to negation, disjunction and existential quantifiers first.
        #[arg(long)]
        desugar: bool,
    },
    /// Gödel code of a formula or term, in decimal.
    Encode { expr: String },
    /// The formula or term coded by a decimal number.
    Decode { code: String },
    /// Left-grouped disjunction of a pool.
    Bigor(PoolArgs),
    /// Conjunction of a pool, as `¬⋁¬`.
    Bigand(PoolArgs),
    /// Restrict the index quantifiers of a formula below `alpha`.
    Relativize {
        formula: String,
        #[arg(long)]
        alpha: String,
    },
    /// Emit an axiom bundle.
    Axioms {
        #[arg(value_enum)]
        kind: BundleKind,
        #[command(flatten)]
        pool: PoolArgs,
        /// Unary formula for `ic`, `pc` and the bounded existential clauses of `tarski`.
        #[arg(long)]
        phi: Option<String>,
        /// Witness bound for the existential clauses of `tarski`.
        #[arg(long, default_value_t = 4)]
        bound: u64,
    },
    /// The provability formula θ(x): the disjunction over a pool, or the
    /// indexed form when no pool is given.
    Theta {
        #[arg(long)]
        pool: Option<String>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Fixed point of a unary formula; the Gödel sentence when omitted.
    Fixedpoint { delta: Option<String> },
    /// The interpretation ι_n.
    Iota(IotaArgs),
    /// Translate a formula through ι_n.
    Translate {
        formula: String,
        #[command(flatten)]
        iota: IotaArgs,
    },
    /// Node counts of the translated biconditionals for n ≤ n-max, as CSV.
    SizeProfile {
        #[arg(long, default_value = "(eq z (s z))")]
        psi: String,
        #[command(flatten)]
        pool: PoolArgs,
        #[arg(long, default_value_t = 4)]
        n_max: u64,
        /// Measure checked against the budget.
        #[arg(long, value_enum, default_value_t = Mode::Literal)]
        mode: Mode,
    },
    /// Run a check suite.
    Check(CheckArgs),
    /// Write a bundle as a TPTP problem.
    ExportTptp {
        #[arg(value_enum, default_value_t = ExportKind::Dtb)]
        kind: ExportKind,
        #[command(flatten)]
        pool: PoolArgs,
        #[arg(long, value_enum, default_value_t = Numerals::Auto)]
        numerals: Numerals,
    },
}

#[derive(Args, Clone)]
struct PoolArgs {
    /// Pool of sentences: a file or inline S-expressions.
    #[arg(long)]
    pool: Option<String>,
    /// Use only the first `s` sentences.
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Args)]
struct IotaArgs {
    #[arg(long, default_value = "(eq z (s z))")]
    psi: String,
    /// Pool of ITB sentences; empty when omitted.
    #[arg(long)]
    pool: Option<String>,
    #[arg(long, default_value_t = 1)]
    n: u64,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Pool (defaults to the seed corpus).
    #[arg(long)]
    pool: Option<String>,
    /// Pool size for `dc` and `cc`.
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Prefix length for `star` (padded with `0 = S0` past the pool).
    #[arg(long, default_value_t = 16)]
    u: usize,
    /// Pool member for `triangle`.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Stage for `triangle`, largest stage for `dtb`.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value = "(eq z (s z))")]
    psi: String,
    /// Unary formula for `pc`.
    #[arg(long, default_value = "(eq (var x) (var x))")]
    phi: String,
    /// Prefix length for `pc`.
    #[arg(long = "pc-u", default_value_t = 16)]
    pc_u: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Dc,
    Cc,
    Star,
    Triangle,
    Pc,
    Dtb,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BundleKind {
    Q,
    Order,
    Tarski,
    Dc,
    Cc,
    Ic,
    Pc,
    Dtb,
    Loeb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Dtb,
    Loeb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Literal,
    Shared,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Numerals {
    Tower,
    Binary,
    Auto,
}

/// What a command produced: text plus whether it counts as a pass.
struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.config.out {
                Some(path) => {
                    std::fs::write(path, &out.text).with_context(|| format!("cannot write {}", path.display()))
                }
                None => std::io::stdout().write_all(out.text.as_bytes()).context("cannot write output"),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let cfg = &cli.config;
    if cfg.fuel < 1 {
        bail!("--fuel must be at least 1");
    }
    if cfg.budget < 1000 {
        bail!("--budget must be at least 1000");
    }
    let json = cfg.format == Some(Format::Json);
    let formula_out =
        |f: &Formula| Output::ok(if json { line(&json!({ "formula": f.to_string() })) } else { format!("{f}\n") });
    Ok(match &cli.command {
        Command::Parse { formula } => {
            let f = formula_arg(formula)?;
            let free: Vec<String> = free_variables(&f)
                .into_iter()
                .map(|v| format!("{}{}", if v.sort == Sort::Index { "ivar " } else { "var " }, v.name))
                .collect();
            if json {
                Output::ok(line(&json!({
                    "formula": f.to_string(),
                    "free": free,
                    "sentence": f.is_closed(),
                    "arithmetical": f.is_arithmetical(),
                    "bounded": f.is_bounded(),
                    "size": f.ast_size(),
                })))
            } else {
                let free: String = free.iter().map(|v| format!(" ({v})")).collect();
                Output::ok(format!(
                    "(parsed\n  (formula {f})\n  (free{free})\n  (sentence {})\n  (arithmetical {})\n  (bounded {})\n  (size {}))\n",
                    f.is_closed(),
                    f.is_arithmetical(),
                    f.is_bounded(),
                    f.ast_size()
                ))
            }
        }
        Command::Render { formula, desugar: d } => {
            let f = formula_arg(formula)?;
            formula_out(&if *d { desugar(&f) } else { f })
        }
        Command::Encode { expr } => {
            let text = read_arg(expr)?;
            let syntax = match parse(&text) {
                Ok(f) => Syntax::Formula(f),
                Err(formula_err) => parse_term(&text).map(Syntax::Term).map_err(|_| formula_err)?,
            };
            let code = encode(&syntax);
            Output::ok(if json { line(&json!({ "code": code.to_string() })) } else { format!("{code}\n") })
        }
        Command::Decode { code } => {
            let n: BigUint = code.trim().parse().map_err(|_| anyhow!("`{code}` is not a decimal natural number"))?;
            let (kind, text) = match decode(&GoedelNumber::new(n))? {
                Syntax::Formula(f) => ("formula", f.to_string()),
                Syntax::Term(t) => ("term", t.to_string()),
            };
            Output::ok(if json { line(&json!({ kind: text })) } else { format!("{text}\n") })
        }
        Command::Bigor(p) => formula_out(&big_or(&pool_arg(p)?)?),
        Command::Bigand(p) => formula_out(&big_and(&pool_arg(p)?)?),
        Command::Relativize { formula, alpha } => formula_out(&relativize(&formula_arg(formula)?, &Ident::new(alpha)?)),
        Command::Axioms { kind, pool, phi, bound } => {
            let needs_pool = matches!(kind, BundleKind::Tarski | BundleKind::Dc | BundleKind::Cc);
            let pool = if needs_pool || pool.pool.is_some() || pool.s.is_some() { pool_arg(pool)? } else { Vec::new() };
            let phi = phi.as_deref().map(formula_arg).transpose()?;
            let need_phi = || phi.clone().ok_or_else(|| anyhow!("this bundle needs --phi"));
            let bundle = match kind {
                BundleKind::Q => q_axioms(),
                BundleKind::Order => order_axioms(),
                BundleKind::Tarski => {
                    let forms: Vec<(Formula, u64)> = phi.iter().map(|f| (f.clone(), *bound)).collect();
                    tarski_instances(&pool, &[], &forms)?
                }
                BundleKind::Dc => single("dc", "disjunctive correctness instance", dc_instance(&pool)?)?,
                BundleKind::Cc => single("cc", "conjunctive correctness instance", cc_instance(&pool)?)?,
                BundleKind::Ic => single("ic", "internal induction instance", ic_instance(&need_phi()?)?)?,
                BundleKind::Pc => single("pc", "piecewise coding sentence", pc_of(&need_phi()?)?)?,
                BundleKind::Dtb => dtb_bundle(&pool)?,
                BundleKind::Loeb => loeb_bundle(&pool)?,
            };
            Output::ok(if json { line(&bundle_json(&bundle)) } else { format!("{}\n", bundle.to_sexpr()) })
        }
        Command::Theta { pool, s } => match pool {
            None if s.is_none() => formula_out(&theta_indexed()),
            _ => formula_out(&ctw::axioms::theta_disjunction(&pool_arg(&PoolArgs { pool: pool.clone(), s: *s })?)?),
        },
        Command::Fixedpoint { delta } => {
            let r = match delta {
                Some(d) => fixed_point(&formula_arg(d)?)?,
                None => godel_sentence()?,
            };
            Output::ok(fixed_point_text(&r, json))
        }
        Command::Iota(args) => {
            let iota = iota_arg(args, cfg.budget)?;
            Output::ok(if json { line(&iota_json(&iota)) } else { format!("{}\n", iota.to_sexpr()) })
        }
        Command::Translate { formula, iota } => {
            let iota = iota_arg(iota, cfg.budget)?;
            formula_out(&translate(&iota, &formula_arg(formula)?)?)
        }
        Command::SizeProfile { psi, pool, n_max, mode } => {
            let pool = if pool.pool.is_some() || pool.s.is_some() { pool_arg(pool)? } else { Vec::new() };
            let mode = if *mode == Mode::Literal { SizeMode::Literal } else { SizeMode::Shared };
            let report = size_profile(&formula_arg(psi)?, &pool, *n_max, mode, cfg.budget)?;
            if json {
                let rows: Vec<Value> =
                    report.rows.iter().map(|r| json!({ "n": r.n, "literal": r.literal, "shared": r.shared })).collect();
                Output::ok(line(&json!({ "psi": report.psi, "pool": report.pool, "rows": rows })))
            } else {
                Output::ok(report.to_csv())
            }
        }
        Command::Check(args) => {
            let reports = run_checks(args, cfg)?;
            let pass = reports.iter().all(|r| r.pass);
            let text = if cfg.format == Some(Format::Sexpr) {
                reports.iter().map(|r| format!("{}\n", r.to_sexpr())).collect()
            } else if reports.len() == 1 {
                format!("{}\n", reports[0].to_json())
            } else {
                format!("{}\n", serde_json::to_string_pretty(&reports)?)
            };
            Output { text, pass }
        }
        Command::ExportTptp { kind, pool, numerals } => {
            let pool = if pool.pool.is_some() || pool.s.is_some() { pool_arg(pool)? } else { Vec::new() };
            let bundle = match kind {
                ExportKind::Dtb => dtb_bundle(&pool)?,
                ExportKind::Loeb => loeb_bundle(&pool)?,
            };
            let numerals = match numerals {
                Numerals::Tower => NumeralStyle::Tower,
                Numerals::Binary => NumeralStyle::Binary,
                Numerals::Auto => NumeralStyle::Auto,
            };
            let problem = to_tptp_with(&bundle, &TptpOptions { numerals, ..TptpOptions::default() })?;
            for w in &problem.warnings {
                eprintln!("warning: {w}");
            }
            Output::ok(problem.text)
        }
    })
}

fn run_checks(args: &CheckArgs, cfg: &Config) -> anyhow::Result<Vec<CheckReport>> {
    let corpus = match &args.pool {
        Some(p) => pool_text(p)?,
        None => seed_corpus()?,
    };
    let prefix = |s: usize| -> anyhow::Result<Vec<Formula>> {
        if s == 0 || s > corpus.len() {
            bail!("--s must be between 1 and the pool size {}", corpus.len());
        }
        Ok(corpus[..s].to_vec())
    };
    let psi = formula_arg(&args.psi)?;
    let small_pool = &corpus[..corpus.len().min(2)];
    let fuel = cfg.fuel;
    let mut out = Vec::new();
    let all = args.suite == Suite::All;
    if matches!(args.suite, Suite::Dc | Suite::All) {
        out.push(check_dc(&prefix(args.s)?, fuel)?);
    }
    if matches!(args.suite, Suite::Cc | Suite::All) {
        out.push(check_cc(&prefix(args.s)?, fuel)?);
    }
    if matches!(args.suite, Suite::Star | Suite::All) {
        out.push(check_claim_star(&padded(&corpus, args.u), fuel)?);
    }
    if args.suite == Suite::Triangle {
        out.push(check_triangle(&psi, small_pool, args.n.unwrap_or(1), args.index, fuel, cfg.budget)?);
    }
    if all {
        let mut merged: Option<CheckReport> = None;
        for n in 0..=args.n.unwrap_or(3) {
            for s in 0..small_pool.len() {
                let r = check_triangle(&psi, small_pool, n, s, fuel, cfg.budget)?;
                match &mut merged {
                    None => merged = Some(r),
                    Some(m) => m.merge(r),
                }
            }
        }
        out.extend(merged);
    }
    if matches!(args.suite, Suite::Pc | Suite::All) {
        out.push(check_piecewise(&formula_arg(&args.phi)?, args.pc_u, fuel)?.report);
    }
    if matches!(args.suite, Suite::Dtb | Suite::All) {
        out.push(check_dtb_finite(&psi, small_pool, args.n.unwrap_or(5), fuel, cfg.budget)?);
    }
    Ok(out)
}

fn line(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize"))
}

fn is_inline(arg: &str) -> bool {
    let t = arg.trim_start();
    t.starts_with('(') || t == "z"
}

/// Inline text, or the contents of the named file.
fn read_arg(arg: &str) -> anyhow::Result<String> {
    if is_inline(arg) {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(Path::new(arg)).with_context(|| format!("cannot read `{arg}`"))
    }
}

fn formula_arg(arg: &str) -> anyhow::Result<Formula> {
    Ok(parse(read_arg(arg)?.trim())?)
}

fn pool_text(arg: &str) -> anyhow::Result<Vec<Formula>> {
    if is_inline(arg) {
        Ok(parse_corpus(arg)?)
    } else {
        Ok(load_corpus(Path::new(arg))?)
    }
}

fn pool_arg(p: &PoolArgs) -> anyhow::Result<Vec<Formula>> {
    let mut pool = match &p.pool {
        Some(arg) => pool_text(arg)?,
        None => seed_corpus()?,
    };
    if let Some(s) = p.s {
        if s > pool.len() {
            bail!("--s {s} exceeds the pool size {}", pool.len());
        }
        pool.truncate(s);
    }
    Ok(pool)
}

fn iota_arg(args: &IotaArgs, budget: u64) -> anyhow::Result<Interpretation> {
    let pool = match &args.pool {
        Some(p) => pool_text(p)?,
        None => Vec::new(),
    };
    Ok(build_iota(&formula_arg(&args.psi)?, &pool, args.n, budget)?)
}

fn single(name: &str, provenance: &str, body: Formula) -> anyhow::Result<AxiomBundle> {
    let mut b = AxiomBundle::new(name, provenance)?;
    b.push(name, Role::Axiom, body)?;
    Ok(b)
}

fn bundle_json(b: &AxiomBundle) -> Value {
    let sentences: Vec<Value> = b
        .sentences()
        .iter()
        .map(|s| json!({ "name": s.name.to_string(), "role": s.role.as_str(), "body": s.body.to_string() }))
        .collect();
    json!({ "name": b.name.to_string(), "provenance": b.provenance, "sentences": sentences })
}

fn iota_json(i: &Interpretation) -> Value {
    json!({
        "stage": i.stage,
        "psi": i.psi.to_string(),
        "pool": i.pool.iter().map(Formula::to_string).collect::<Vec<_>>(),
        "domain": i.domain.to_string(),
        "truth": i.truth.to_string(),
    })
}

fn fixed_point_text(r: &FixedPointResult, json: bool) -> String {
    if json {
        line(&json!({
            "delta": r.delta.to_string(),
            "delta_prime": r.delta_prime.to_string(),
            "gamma": r.gamma.to_string(),
            "unfolded": r.unfolded.to_string(),
        }))
    } else {
        format!(
            "(fixed-point\n  (delta {})\n  (delta-prime {})\n  (gamma {})\n  (unfolded {}))\n",
            r.delta, r.delta_prime, r.gamma, r.unfolded
        )
    }
}
