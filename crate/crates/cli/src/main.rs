//! `mult`: compare K-type multiplicities computed by the geometric formula
//! and by the branching oracle.
//!
//! Exit codes: 0 when every requested comparison holds, 1 on a mismatch or an
//! internal engine error, 2 on unparseable or out-of-range input.

mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ktype_core::compactrep::{dimension, CompactGroup, Family, IrrepLabel};
use ktype_core::exec::{default_jobs, par_map};
use ktype_core::finitemult::{m_geom_average, m_geom_classes};
use ktype_core::geommult::{geom_multiplicity_complex, GeomIntegrands};
use ktype_core::glstd::{Variant, VirtualRep};
use ktype_core::oracle::{self, branch_o_to_oo};
use ktype_core::selftest::{self, SelftestConfig};
use serde_json::{json, Value};

use input::{Group, InputError, Mode};
use output::{rat_value, Format, Table};

const MAX_N_VAR: &str = "KTYPE_MULT_MAX_N";
const DEFAULT_MAX_N: usize = 6;

#[derive(Parser)]
#[command(name = "mult", version, about = "Exact K-type multiplicities: geometric formula vs. branching oracle")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Both computations and their comparison.
    #[command(alias = "mult")]
    Both(Query),
    /// The geometric multiplicity only.
    Geom(Query),
    /// The branching oracle only.
    Oracle(Query),
    /// Restriction of an O(n)-type to O(n') x O(n'').
    Branch {
        /// O(n)-type such as `O(4)[1,0]+`.
        #[arg(long)]
        ktype: String,
        /// Block sizes `n',n''`.
        #[arg(long)]
        split: String,
    },
    /// Both forms of the finite-group formula for class-data files.
    Finite { files: Vec<PathBuf> },
    /// Run the built-in corpus and report every invariant.
    Selftest {
        /// Largest n in the corpus; defaults to 5, capped by KTYPE_MULT_MAX_N.
        #[arg(long)]
        max_n: Option<usize>,
        /// Random class-data sets for the finite-group check.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = SelftestConfig::default().seed)]
        seed: u64,
    },
    /// Execute a JSON or TOML job file.
    Run { job: PathBuf },
}

#[derive(Args)]
struct Query {
    /// `GL:n`, or `C:SU2` / `C:U2` for a complex group.
    #[arg(long)]
    group: String,
    /// Representation descriptor (JSON or TOML) for `GL:n`.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Inducing weight for a complex group, e.g. `1,0`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    tau: Vec<String>,
    /// K-type such as `SO:[0]`, `O(3)[1]+`, `U(2)[1,0]`; repeatable.
    #[arg(long, required = true)]
    ktype: Vec<String>,
}

enum Failure {
    Input(String),
    Engine(ktype_core::Error),
    Mismatch,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<ktype_core::Error> for Failure {
    fn from(e: ktype_core::Error) -> Self {
        if e.is_internal() {
            Failure::Engine(e)
        } else {
            Failure::Input(e.to_string())
        }
    }
}

struct Ctx {
    format: Format,
    jobs: usize,
    max_n: usize,
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var(MAX_N_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| Failure::Input(format!("{MAX_N_VAR}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn check_rank(n: usize, ctx: &Ctx) -> Result<(), Failure> {
    let cap = ctx.max_n.min(ktype_core::compactrep::MAX_ELEMENT_N);
    if n > cap {
        return Err(Failure::Input(ktype_core::Error::UnsupportedRank { n, max: cap }.to_string()));
    }
    Ok(())
}

fn rep_id(pi: &VirtualRep) -> String {
    pi.terms
        .iter()
        .map(|t| if t.coeff == 1 { t.module.to_string() } else { format!("{}*{}", t.coeff, t.module) })
        .collect::<Vec<_>>()
        .join(" + ")
}

const COMPARE_COLUMNS: [&str; 5] = ["rep", "ktype", "m_oracle", "m_geom", "equal"];

fn real_rows(pi: &VirtualRep, ktypes: &[IrrepLabel], mode: Mode, ctx: &Ctx) -> Result<Vec<Vec<Value>>, Failure> {
    let n = pi.check()?;
    check_rank(n, ctx)?;
    for k in ktypes {
        if !matches!(k.group.family, Family::SO | Family::O) || k.group.n != n {
            return Err(Failure::Input(format!("ktype {k} does not belong to O({n}) or SO({n})")));
        }
    }
    let want_geom = mode != Mode::Oracle;
    let want_oracle = mode != Mode::Geom;
    let integrands = |v: Variant| -> Result<Option<GeomIntegrands>, Failure> {
        let used = ktypes.iter().any(|k| (k.group.family == Family::SO) == (v == Variant::SO));
        Ok(if want_geom && used { Some(GeomIntegrands::new(pi, v)?) } else { None })
    };
    let (g_so, g_o) = (integrands(Variant::SO)?, integrands(Variant::O)?);
    let id = rep_id(pi);
    let rows = par_map(ktypes, ctx.jobs, |k| -> Result<Vec<Value>, ktype_core::Error> {
        let so = k.group.family == Family::SO;
        let geom = match (if so { &g_so } else { &g_o }).as_ref() {
            Some(g) => Some(g.evaluate(k)?.value),
            None => None,
        };
        let orac = if !want_oracle {
            None
        } else if so {
            Some(oracle::multiplicity_so(pi, k)?)
        } else {
            Some(oracle::multiplicity(pi, k)?)
        };
        let equal = match (&geom, orac) {
            (Some(g), Some(m)) => json!(*g == ktype_core::exactalg::rint(m)),
            _ => Value::Null,
        };
        Ok(vec![
            json!(id),
            json!(k.to_string()),
            orac.map_or(Value::Null, |m| json!(m)),
            geom.as_ref().map_or(Value::Null, rat_value),
            equal,
        ])
    });
    rows.into_iter().map(|r| r.map_err(Failure::from)).collect()
}

fn complex_rows(
    h: CompactGroup,
    taus: &[Vec<i32>],
    ktypes: &[IrrepLabel],
    mode: Mode,
    ctx: &Ctx,
) -> Result<Vec<Vec<Value>>, Failure> {
    for k in ktypes {
        if k.group != h {
            return Err(Failure::Input(format!("ktype {k} does not belong to {h}")));
        }
    }
    for t in taus {
        if t.len() != h.torus_rank() {
            return Err(Failure::Input(format!("tau {t:?}: expected {} entries for {h}", h.torus_rank())));
        }
    }
    let pairs: Vec<(&Vec<i32>, &IrrepLabel)> = taus.iter().flat_map(|t| ktypes.iter().map(move |k| (t, k))).collect();
    let rows = par_map(&pairs, ctx.jobs, |(t, k)| -> Result<Vec<Value>, ktype_core::Error> {
        let geom = if mode != Mode::Oracle { Some(geom_multiplicity_complex(h, t, k)?) } else { None };
        let orac = if mode != Mode::Geom { Some(oracle::weight_multiplicity(k, t)?) } else { None };
        let equal = match (&geom, orac) {
            (Some(g), Some(m)) => json!(*g == ktype_core::exactalg::rint(m)),
            _ => Value::Null,
        };
        Ok(vec![
            json!(format!("tau=[{}]", t.iter().map(i32::to_string).collect::<Vec<_>>().join(","))),
            json!(k.to_string()),
            orac.map_or(Value::Null, |m| json!(m)),
            geom.as_ref().map_or(Value::Null, rat_value),
            equal,
        ])
    });
    rows.into_iter().map(|r| r.map_err(Failure::from)).collect()
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Geom => "geom",
        Mode::Oracle => "oracle",
        Mode::Both => "both",
        Mode::Finite => "finite",
        Mode::Selftest => "selftest",
    }
}

fn compare(
    group: Group,
    rep: Option<VirtualRep>,
    taus: Vec<Vec<i32>>,
    ktypes: &[String],
    mode: Mode,
    ctx: &Ctx,
) -> Result<(), Failure> {
    let rows = match group {
        Group::Real(n) => {
            let pi = rep.ok_or_else(|| Failure::Input("rep: required for GL:n".into()))?;
            if pi.check()? != n {
                return Err(Failure::Input(format!("rep: module size {} does not match GL:{n}", pi.check()?)));
            }
            let labels = ktypes.iter().map(|s| input::label(s, Some(n))).collect::<Result<Vec<_>, _>>()?;
            real_rows(&pi, &labels, mode, ctx)?
        }
        Group::Complex(h) => {
            if taus.is_empty() {
                return Err(Failure::Input(format!("tau: at least one weight is required for {h}")));
            }
            let labels = ktypes.iter().map(|s| input::label(s, Some(h.n))).collect::<Result<Vec<_>, _>>()?;
            complex_rows(h, &taus, &labels, mode, ctx)?
        }
    };
    let mut table = Table::new(mode_name(mode), COMPARE_COLUMNS.to_vec());
    let mismatch = rows.iter().any(|r| r[4] == json!(false));
    table.rows = rows;
    print!("{}", table.render(ctx.format));
    if mismatch {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn query(q: Query, mode: Mode, ctx: &Ctx) -> Result<(), Failure> {
    let group = input::parse_group(&q.group)?;
    let rep = q.rep.as_deref().map(input::read_rep).transpose()?;
    let taus = q.tau.iter().map(|t| input::weight(t)).collect::<Result<Vec<_>, _>>()?;
    compare(group, rep, taus, &q.ktype, mode, ctx)
}

fn branch(ktype: &str, split: &str, ctx: &Ctx) -> Result<(), Failure> {
    let omega = input::label(ktype, None)?;
    if omega.group.family != Family::O {
        return Err(Failure::Input(format!("ktype {omega}: branching is defined for O(n)")));
    }
    check_rank(omega.group.n, ctx)?;
    let parts: Vec<usize> = split
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Input(format!("split {split:?}: expected n',n''")))?;
    let [n1, n2] = parts[..] else {
        return Err(Failure::Input(format!("split {split:?}: expected two sizes")));
    };
    let mut table = Table::new("branch", vec!["ktype", "first", "second", "multiplicity", "dimension"]);
    for ((a1, a2), m) in branch_o_to_oo(&omega, n1, n2)?.iter() {
        let d = dimension(a1)? * dimension(a2)?;
        table.rows.push(vec![
            json!(omega.to_string()),
            json!(a1.to_string()),
            json!(a2.to_string()),
            json!(m),
            json!(d),
        ]);
    }
    print!("{}", table.render(ctx.format));
    Ok(())
}

fn finite(data: Vec<(String, ktype_core::finitemult::FiniteGroupData)>, ctx: &Ctx) -> Result<(), Failure> {
    let mut table = Table::new("finite", vec!["source", "m_average", "m_classes", "equal"]);
    for (name, d) in data {
        let (a, b) = (m_geom_average(&d)?, m_geom_classes(&d)?);
        table.rows.push(vec![json!(name), json!(a.to_string()), json!(b.to_string()), json!(a == b)]);
    }
    let mismatch = table.rows.iter().any(|r| r[3] == json!(false));
    print!("{}", table.render(ctx.format));
    if mismatch {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn run_selftest(cfg: SelftestConfig, ctx: &Ctx) -> Result<(), Failure> {
    let cfg = SelftestConfig { max_n: cfg.max_n.min(ctx.max_n), ..cfg };
    let report = selftest::run(&cfg);
    match ctx.format {
        Format::Table => print!("{}", report.render()),
        _ => {
            let mut table = Table::new("selftest", vec!["check", "checked", "failed", "passed"]);
            for c in &report.checks {
                table.rows.push(vec![json!(c.name), json!(c.checked), json!(c.failed), json!(c.passed())]);
            }
            print!("{}", table.render(ctx.format));
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn run_job(path: &std::path::Path, ctx: &Ctx) -> Result<(), Failure> {
    let job = input::read_job(path)?;
    match job.mode {
        Mode::Selftest => {
            let cfg = SelftestConfig { max_n: job.max_n.unwrap_or(5), jobs: ctx.jobs, ..SelftestConfig::default() };
            run_selftest(cfg, ctx)
        }
        Mode::Finite => {
            let data = job.data.ok_or_else(|| Failure::Input("data: required in finite mode".into()))?;
            finite(vec![(path.display().to_string(), data)], ctx)
        }
        mode => {
            let group =
                input::parse_group(job.group.as_deref().ok_or_else(|| Failure::Input("group: missing".into()))?)?;
            let rep = job.rep.map(input::rep_from_value).transpose()?;
            if job.ktypes.is_empty() {
                return Err(Failure::Input("ktypes: at least one K-type is required".into()));
            }
            compare(group, rep, job.tau, &job.ktypes, mode, ctx)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let ctx = Ctx { format: cli.format, jobs: cli.jobs.unwrap_or_else(default_jobs).max(1), max_n: max_n()? };
    match cli.command {
        Command::Both(q) => query(q, Mode::Both, &ctx),
        Command::Geom(q) => query(q, Mode::Geom, &ctx),
        Command::Oracle(q) => query(q, Mode::Oracle, &ctx),
        Command::Branch { ktype, split } => branch(&ktype, &split, &ctx),
        Command::Finite { files } => {
            if files.is_empty() {
                return Err(Failure::Input("finite: no input files".into()));
            }
            let data = files
                .iter()
                .map(|f| Ok((f.display().to_string(), input::read_finite(f)?)))
                .collect::<Result<Vec<_>, InputError>>()?;
            finite(data, &ctx)
        }
        Command::Selftest { max_n, trials, seed } => {
            let cfg = SelftestConfig { max_n: max_n.unwrap_or(5), jobs: ctx.jobs, finite_trials: trials, seed };
            run_selftest(cfg, &ctx)
        }
        Command::Run { job } => run_job(&job, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Engine(e)) => {
            eprintln!("mult: internal error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("mult: {msg}");
            ExitCode::from(2)
        }
    }
}
