// SPDX-License-Identifier: Apache-2.0

//! `fnclass` command-line tool.
//!
//! Exit codes: 0 success, 1 verification or table mismatch, 2 usage or input
//! error, 3 budget exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fnclass::cache::{self, Cache};
use fnclass::classify::{self, table_text, ClassificationReport, Relation};
use fnclass::diagram::{self, complete_ordering, parse_ordering};
use fnclass::expr;
use fnclass::groups::GroupName;
use fnclass::scan::{ScanMode, ScanOptions};
use fnclass::separability::{self, distributive_sets, s_systems};
use fnclass::tables::{reproduce_table, TableId, TableOptions};
use fnclass::verify::{self, VerifyConfig};
use fnclass::{Error, KFunction, VarSet};

#[derive(Parser)]
#[command(name = "fnclass", version, about = "Complexity measures and classification of functions over Z_k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file (or directory for `classify`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Cache directory; FNCLASS_CACHE takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Essential variables, subfunction and separability profiles, imp(f).
    Analyze {
        #[command(flatten)]
        src: Source,
        /// Query Dis(M, f) and its s-systems for this set, e.g. "2,3".
        #[arg(long)]
        set: Option<String>,
    },
    /// Reduced ordered decision diagram for one ordering.
    Diagram {
        #[command(flatten)]
        src: Source,
        /// Variable ordering, e.g. "213" or "2,1,3"; missing variables follow.
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Partition a whole function space.
    Classify {
        #[arg(long, default_value_t = 2)]
        k: u8,
        #[arg(long)]
        n: usize,
        /// imp, sub or sep.
        #[arg(long, conflicts_with = "group")]
        relation: Option<String>,
        /// Orbits of a transformation group instead of a relation.
        #[arg(long)]
        group: Option<String>,
        /// Continue an interrupted scan from its checkpoint.
        #[arg(long)]
        resume: bool,
        /// Time budget in seconds.
        #[arg(long)]
        budget: Option<u64>,
        /// Scan every table instead of genus representatives (k=2, n=5 sep).
        #[arg(long)]
        full: bool,
    },
    /// Regenerate published tables and diff them against the embedded values.
    Tables {
        /// table1, table3, table4, table5 or figure4; all but table5 if omitted.
        #[arg(long)]
        table: Option<String>,
        /// Print the differing cells and fail on any.
        #[arg(long)]
        diff: bool,
        /// Time budget in seconds for table5.
        #[arg(long)]
        budget: Option<u64>,
        /// Fallback sample size for table5 when the budget runs out.
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        resume: bool,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long, default_value_t = 2)]
        k: u8,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Enumerate the space even when large.
        #[arg(long)]
        exhaustive: bool,
        /// Disable redundant-node removal; the label check must then fail.
        #[arg(long, hide = true)]
        mutant: bool,
    },
    /// Parse an expression and print its table and SP form.
    Parse {
        #[command(flatten)]
        src: Source,
    },
}

#[derive(Args)]
struct Source {
    #[arg(long, default_value_t = 2)]
    k: u8,
    #[arg(long)]
    n: Option<usize>,
    /// Truth table: hex for k = 2, otherwise a digit string.
    #[arg(long, conflicts_with_all = ["expr", "digits"])]
    table: Option<String>,
    /// Truth table as a digit string, any k.
    #[arg(long, conflicts_with = "expr")]
    digits: Option<String>,
    /// Sum-of-products expression, e.g. "x1*x2 + x1^0*x3".
    #[arg(long)]
    expr: Option<String>,
}

impl Source {
    fn function(&self) -> Result<KFunction, Error> {
        match (&self.table, &self.digits, &self.expr) {
            (Some(t), None, None) if self.k == 2 => KFunction::from_hex(t, self.n),
            (Some(t), None, None) => KFunction::from_digits(self.k, self.n, t),
            (None, Some(d), None) => KFunction::from_digits(self.k, self.n, d),
            (None, None, Some(e)) => expr::parse_with_arity(e, self.k, self.n),
            _ => Err(Error::Format("give exactly one of --table, --digits, --expr".into())),
        }
    }
}

enum Failure {
    Error(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(Error::Io(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Error(Error::Json(e))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Error(Error::Budget(msg))) => {
            eprintln!("fnclass: budget exceeded: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Error(e)) => {
            eprintln!("fnclass: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze { src, set } => analyze(cli, &src.function()?, set.as_deref()),
        Command::Diagram { src, ordering } => diagram_cmd(cli, &src.function()?, ordering.as_deref()),
        Command::Classify { k, n, relation, group, resume, budget, full } => {
            let relation = match (relation, group) {
                (_, Some(g)) => Relation::Group(g.parse::<GroupName>()?),
                (Some(r), None) => r.parse()?,
                (None, None) => return Err(Error::Format("give --relation or --group".into()).into()),
            };
            classify_cmd(cli, *k, *n, relation, *resume, *budget, *full)
        }
        Command::Tables { table, diff, budget, samples, seed, resume } => {
            tables_cmd(cli, table.as_deref(), *diff, *budget, *samples, *seed, *resume)
        }
        Command::Verify { k, n, samples, seed, exhaustive, mutant } => {
            let cfg = VerifyConfig {
                k: *k,
                n: *n,
                samples: *samples,
                seed: *seed,
                exhaustive: exhaustive.then_some(true),
                mutant: *mutant,
            };
            verify_cmd(cli, &cfg)
        }
        Command::Parse { src } => parse_cmd(cli, &src.function()?),
    }
}

fn emit(cli: &Cli, text: &str) -> Outcome {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => stdout(text)?,
    }
    Ok(())
}

/// Writes to stdout; a closed pipe is not an error.
fn stdout(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn analyze(cli: &Cli, f: &KFunction, set: Option<&str>) -> Outcome {
    let ess = f.essential_set();
    let sub = separability::sub_vector(f);
    let sep = separability::sep_vector(f);
    let sets: Vec<String> = separability::separable_sets(f).iter().map(VarSet::to_string).collect();
    let imp = if ess.len() <= diagram::DEFAULT_ORDERING_LIMIT { Some(diagram::imp_count(f)?) } else { None };
    let dis = match set {
        Some(text) => {
            let m = VarSet::parse(text)?;
            let family = distributive_sets(m, f)?;
            Some((m, family.sets().to_vec(), s_systems(&family)))
        }
        None => None,
    };
    let range: Vec<u8> = f.range_of().into_iter().collect();
    match cli.format {
        Format::Json => {
            let mut v = json!({
                "k": f.k(),
                "n": f.n(),
                "table": table_text(f),
                "sp": expr::to_sp(f),
                "ess": ess.len(),
                "essential": ess.to_string(),
                "strongly_essential": f.strongly_essential_set().to_string(),
                "range": range,
                "sub_vector": sub,
                "sub": sub.iter().sum::<u64>(),
                "sep_vector": sep,
                "sep": sep.iter().sum::<u64>(),
                "separable_sets": sets,
                "imp": imp,
            });
            if let Some((m, family, systems)) = &dis {
                v["dis"] = json!({
                    "set": m.to_string(),
                    "family": family.iter().map(VarSet::to_string).collect::<Vec<_>>(),
                    "s_systems": systems.iter().map(VarSet::to_string).collect::<Vec<_>>(),
                });
            }
            emit(cli, &(serde_json::to_string_pretty(&v)? + "\n"))
        }
        _ => {
            let mut out = String::new();
            out += &format!("table: {}\n", table_text(f));
            out += &format!("sp: {}\n", expr::to_sp(f));
            out += &format!("ess: {} {}\n", ess.len(), ess);
            out += &format!("strongly essential: {}\n", f.strongly_essential_set());
            out += &format!("range: {}\n", join(&range));
            out += &format!("sub vector: {}\n", join(&sub));
            out += &format!("sub(f)={}\n", sub.iter().sum::<u64>());
            out += &format!("sep vector: {}\n", join(&sep));
            out += &format!("sep(f)={}\n", sep.iter().sum::<u64>());
            out += &format!("separable sets: {}\n", sets.join(" "));
            match imp {
                Some(v) => out += &format!("imp(f)={v}\n"),
                None => out += "imp(f)=unavailable\n",
            }
            if let Some((m, family, systems)) = &dis {
                let render = |v: &[VarSet]| v.iter().map(VarSet::to_string).collect::<Vec<_>>().join(" ");
                out += &format!("Dis({m}): {}\n", render(family));
                out += &format!("s-systems: {}\n", render(systems));
            }
            emit(cli, &out)
        }
    }
}

fn diagram_cmd(cli: &Cli, f: &KFunction, ordering: Option<&str>) -> Outcome {
    let prefix = match ordering {
        Some(text) => parse_ordering(text)?,
        None => Vec::new(),
    };
    if prefix.iter().any(|&i| i == 0 || i > f.n()) {
        return Err(Error::InvalidOrdering(format!("{prefix:?} for n={}", f.n())).into());
    }
    let order = complete_ordering(f.n(), &prefix);
    let d = diagram::build_odd(f, &order)?;
    let depth = diagram::depth(&d)?;
    let imps = diagram::implementations_of(&d)?;
    let dot = diagram::to_dot(&d);
    let ordering_text = join(&order);
    match cli.format {
        Format::Json => {
            let v = json!({
                "ordering": order,
                "depth": depth,
                "imp": imps.len(),
                "internal_nodes": d.internal_count(),
                "terminals": d.terminal_count(),
                "implementations": imps.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "dot": dot,
            });
            emit(cli, &(serde_json::to_string_pretty(&v)? + "\n"))
        }
        Format::Dot => emit(cli, &dot),
        _ => {
            let mut text = format!("ordering: {ordering_text}\ndepth: {depth}\nimp(D)={}\n", imps.len());
            text += &format!("internal nodes: {}\n", d.internal_count());
            text += &format!("implementations: {}\n", imps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            match &cli.out {
                Some(path) => fs::write(path, &dot)?,
                None => text += &dot,
            }
            stdout(&text)?;
            Ok(())
        }
    }
}

fn classify_cmd(cli: &Cli, k: u8, n: usize, relation: Relation, resume: bool, budget: Option<u64>, full: bool) -> Outcome {
    let cache = cache::resolve_dir(cli.cache_dir.as_deref()).map(Cache::new);
    let name = relation.name();
    let cached = match &cache {
        Some(c) => c.load_report(k, n, &name)?,
        None => None,
    };
    let report = match cached {
        Some(r) => r,
        None => {
            let r = if k == 2 && n == 5 && relation == Relation::Sep {
                let mode = if full { ScanMode::Full } else { ScanMode::Orbit };
                let tag = if full { "full" } else { "orbit" };
                let opts = ScanOptions {
                    mode,
                    checkpoint: cache.as_ref().map(|c| c.checkpoint_path(&format!("sep-p2-5-{tag}"))),
                    resume,
                    time_budget: budget.map(Duration::from_secs),
                    chunk: 0,
                };
                fnclass::scan::sep_scan_p2_5(&opts)?
            } else {
                classify::classify_space(k, n, relation)?
            };
            if let Some(c) = &cache {
                c.store_report(&r)?;
            }
            r
        }
    };
    write_report(cli, &report)
}

fn write_report(cli: &Cli, report: &ClassificationReport) -> Outcome {
    let csv = report.to_csv()?;
    let json = serde_json::to_string_pretty(report)? + "\n";
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)?;
        let stem = format!("k{}-n{}-{}", report.k, report.n, report.relation);
        fs::write(dir.join(format!("{stem}.csv")), &csv)?;
        fs::write(dir.join(format!("{stem}.json")), &json)?;
        stdout(&format!("{} classes; wrote {}\n", report.class_count(), Path::new(dir).join(&stem).display()))?;
        return Ok(());
    }
    let text = match cli.format {
        Format::Json => json,
        Format::Csv => csv,
        _ => {
            let mut t = format!("{} classes of P_{}^{} under {}\n", report.class_count(), report.k, report.n, report.relation);
            for c in &report.classes {
                let imp = c.imp.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                t += &format!("{:>4}  size={:<12} imp={:<4} {}  {}\n", c.id, c.size, imp, c.key, c.representative);
            }
            t
        }
    };
    stdout(&text)?;
    Ok(())
}

fn tables_cmd(cli: &Cli, table: Option<&str>, diff: bool, budget: Option<u64>, samples: u64, seed: u64, resume: bool) -> Outcome {
    let ids: Vec<TableId> = match table {
        Some(t) => vec![t.parse()?],
        None => TableId::ALL.into_iter().filter(|t| *t != TableId::Table5).collect(),
    };
    let cache = cache::resolve_dir(cli.cache_dir.as_deref()).map(Cache::new);
    let opts = TableOptions {
        scan: ScanOptions {
            checkpoint: cache.as_ref().map(|c| c.checkpoint_path("sep-p2-5-orbit")),
            resume,
            time_budget: budget.map(Duration::from_secs),
            ..Default::default()
        },
        fallback_samples: if budget.is_some() { samples } else { 0 },
        seed,
    };
    let mut out = String::new();
    let mut mismatched = false;
    let mut artifacts = Vec::new();
    for id in ids {
        let art = reproduce_table(id, &opts)?;
        mismatched |= !art.matches();
        match cli.format {
            Format::Csv => out += &art.to_csv()?,
            Format::Json => {}
            _ => {
                out += &format!("== {} ==\n{}", art.name, art.to_text());
                for note in &art.notes {
                    out += &format!("note: {note}\n");
                }
                out += &format!("{}: {}\n", art.name, if art.matches() { "matches" } else { "DIFFERS" });
                if diff {
                    for d in &art.diffs {
                        out += &format!("  {d}\n");
                    }
                }
            }
        }
        artifacts.push(art);
    }
    if cli.format == Format::Json {
        out = serde_json::to_string_pretty(&artifacts)? + "\n";
    }
    emit(cli, &out)?;
    if diff && mismatched {
        return Err(Failure::Mismatch);
    }
    Ok(())
}

fn verify_cmd(cli: &Cli, cfg: &VerifyConfig) -> Outcome {
    let report = verify::run(cfg)?;
    match cli.format {
        Format::Json => emit(cli, &(serde_json::to_string_pretty(&report)? + "\n"))?,
        _ => {
            let mut out = format!(
                "k={} n={} functions={} mode={}\n",
                report.k,
                report.n,
                report.functions,
                if report.exhaustive { "exhaustive" } else { "sampled" }
            );
            for c in &report.checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                out += &format!("{status} {} cases={} violations={}", c.name, c.cases, c.violations);
                if let Some(t) = &c.counterexample {
                    out += &format!(" counterexample={t}");
                }
                out.push('\n');
            }
            emit(cli, &out)?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn parse_cmd(cli: &Cli, f: &KFunction) -> Outcome {
    match cli.format {
        Format::Json => {
            let v = json!({"k": f.k(), "n": f.n(), "table": table_text(f), "sp": expr::to_sp(f)});
            emit(cli, &(serde_json::to_string_pretty(&v)? + "\n"))
        }
        _ => emit(cli, &format!("table: {}\nsp: {}\n", table_text(f), expr::to_sp(f))),
    }
}
