//! Command-line front end. Every subcommand builds an ordered report that is
//! printed either as `key: value` lines or as one JSON object; both render
//! rationals through the same formatter so their values agree.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::gh::{approx_gh, GhMode};
use crate::hardness::{balpart_bruteforce, balpart_from_3partition, build_hard_pair, metadata, BalPartInstance};
use crate::interleave::{
    candidate_values, interleaving_bruteforce, interleaving_distance, interleaving_feasible, maps_to_text,
    parse_maps, verify_report, Prepared, Route, ShortPlan, TreeMap,
};
use crate::merge_tree::{build_merge_tree, MergePoint, MergeTree};
use crate::metric_tree::{gh_bruteforce_vertices, MetricTree};
use crate::rational::Rational;

/// Instances up to this many elements get a yes/no label from the
/// partition oracle.
const LABEL_LIMIT: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "treegh", version, about = "Gromov-Hausdorff bounds for metric trees via merge-tree interleaving")]
struct Cli {
    #[command(flatten)]
    output: OutputOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct OutputOpts {
    /// Print one JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Render rationals as decimals with this many fractional digits.
    #[arg(long, global = true, value_name = "K")]
    decimal: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket the GH distance between two metric trees.
    Gh {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "diameter", value_parser = parse_mode)]
        mode: GhMode,
    },
    /// Approximate the interleaving distance between two merge trees.
    Interleave {
        a: PathBuf,
        b: PathBuf,
        /// Also write the maps to this file in the format `verify` reads.
        #[arg(long, value_name = "FILE")]
        maps_out: Option<PathBuf>,
    },
    /// Run the decision procedure at one value.
    Decide {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        eps: Rational,
    },
    /// List the candidate values, one per line.
    Candidates { a: PathBuf, b: PathBuf },
    /// Merge tree of the distance from a root vertex, negated.
    MergeTree {
        tree: PathBuf,
        #[arg(long)]
        root: usize,
    },
    /// Write a pair of trees built from a balanced-partition instance.
    GenHard(GenHardArgs),
    /// Check a pair of maps against the compatibility conditions.
    Verify {
        a: PathBuf,
        b: PathBuf,
        maps: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        eps: Rational,
    },
    /// Exhaustive reference values for tiny inputs.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args, Debug)]
struct GenHardArgs {
    /// Balanced-partition elements, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "y", conflicts_with = "y")]
    x: Vec<u64>,
    #[arg(long, required_unless_present = "y", conflicts_with = "y")]
    m: Option<usize>,
    /// 3-PARTITION elements, comma separated; converted before building.
    #[arg(long, value_delimiter = ',')]
    y: Vec<u64>,
    #[arg(long, default_value = "7", value_parser = parse_rational)]
    lambda: Rational,
    #[arg(long, default_value = "1/2", value_parser = parse_rational)]
    rho: Rational,
    #[arg(long, value_name = "PREFIX")]
    out_prefix: PathBuf,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// GH distance between the vertex sets of two metric trees.
    Gh {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
    },
    /// Interleaving distance, or feasibility at `--eps`.
    Interleave {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_leaves: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        eps: Option<Rational>,
    },
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<GhMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Val {
    Num(Rational),
    Int(u64),
    Text(String),
    List(Vec<Val>),
}

impl Val {
    fn render(&self, o: OutputOpts) -> String {
        match self {
            Val::Num(q) => fmt_q(q, o),
            Val::Int(k) => k.to_string(),
            Val::Text(s) => s.clone(),
            Val::List(xs) => xs.iter().map(|x| x.render(o)).collect::<Vec<_>>().join(" "),
        }
    }

    fn json(&self, o: OutputOpts) -> Value {
        match self {
            Val::Num(q) => Value::String(fmt_q(q, o)),
            Val::Int(k) => Value::from(*k),
            Val::Text(s) => Value::String(s.clone()),
            Val::List(xs) => Value::Array(xs.iter().map(|x| x.json(o)).collect()),
        }
    }
}

fn fmt_q(q: &Rational, o: OutputOpts) -> String {
    match o.decimal {
        Some(k) => q.to_decimal_string(k),
        None => q.to_string(),
    }
}

/// Ordered fields plus an optional free-form tail for plain output.
#[derive(Default)]
struct Report {
    fields: Vec<(&'static str, Val)>,
    tail: Option<String>,
}

impl Report {
    fn put(&mut self, key: &'static str, v: Val) -> &mut Self {
        self.fields.push((key, v));
        self
    }

    fn emit(&self, o: OutputOpts, out: &mut dyn Write) -> std::io::Result<()> {
        if o.json {
            let mut m = Map::new();
            for (k, v) in &self.fields {
                m.insert((*k).to_string(), v.json(o));
            }
            writeln!(out, "{}", Value::Object(m))
        } else {
            for (k, v) in &self.fields {
                writeln!(out, "{k}: {}", v.render(o))?;
            }
            if let Some(t) = &self.tail {
                write!(out, "{t}")?;
            }
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn metric(path: &Path) -> Result<MetricTree> {
    MetricTree::parse(&read(path)?)
}

fn merge(path: &Path) -> Result<MergeTree> {
    MergeTree::parse(&read(path)?)
}

fn route_name(r: &Route) -> String {
    match r {
        Route::Long => "long".into(),
        Route::Short(ShortPlan::Trimmed { l }) => format!("short-trimmed L={l}"),
        Route::Short(ShortPlan::Untrimmed) => "short-untrimmed".into(),
        Route::Naive => "naive".into(),
    }
}

fn point_val(p: &MergePoint) -> Val {
    match p {
        MergePoint::Node { id } => Val::Text(format!("node {id}")),
        MergePoint::Edge { child, height } => Val::List(vec![
            Val::Text("edge".into()),
            Val::Int(*child as u64),
            Val::Num(height.clone()),
        ]),
        MergePoint::AboveRoot { height } => Val::List(vec![Val::Text("ray".into()), Val::Num(height.clone())]),
    }
}

fn map_val(m: &TreeMap) -> Val {
    Val::List(m.images.iter().map(point_val).collect())
}

fn execute(cmd: Command, o: OutputOpts) -> Result<Report> {
    let mut r = Report::default();
    match cmd {
        Command::Gh { a, b, mode } => {
            let e = approx_gh(&metric(&a)?, &metric(&b)?, mode)?;
            r.put("delta_hat", Val::Num(e.delta_hat))
                .put("certified", Val::Num(e.certified))
                .put("lower", Val::Num(e.lower_bound))
                .put("upper", Val::Num(e.upper_bound))
                .put(
                    "best_pair",
                    Val::List(vec![Val::Int(e.best_pair.0 as u64), Val::Int(e.best_pair.1 as u64)]),
                )
                .put("c_factor", Val::Int(e.c_factor))
                .put("mode", Val::Text(e.mode.to_string()))
                .put("pairs", Val::Int(e.pairs_evaluated as u64));
        }
        Command::Interleave { a, b, maps_out } => {
            let (mf, mg) = (merge(&a)?, merge(&b)?);
            let run = interleaving_distance(&mf, &mg)?;
            let text = maps_to_text(&run.alpha, &run.beta);
            if let Some(p) = maps_out {
                write(&p, &text)?;
            }
            r.put("pivot", Val::Num(run.value))
                .put("certified", Val::Num(run.certified))
                .put("factor", Val::Int(run.factor))
                .put("termination", Val::Text(format!("{:?}", run.termination).to_lowercase()))
                .put("candidates", Val::Int(run.candidate_count as u64))
                .put("probes", Val::Int(run.probes.len() as u64));
            if o.json {
                r.put("alpha", map_val(&run.alpha)).put("beta", map_val(&run.beta));
            } else {
                // maps as `verify` reads them, with heights in exact form
                r.tail = Some(text);
            }
        }
        Command::Decide { a, b, eps } => {
            let (mf, mg) = (merge(&a)?, merge(&b)?);
            let d = Prepared::new(&mf, &mg).decide(&eps)?;
            r.put("verdict", Val::Text(if d.is_yes() { "YES" } else { "NO" }.into()))
                .put("eps", Val::Num(eps))
                .put("route", Val::Text(route_name(&d.route)))
                .put("factor", Val::Int(d.factor));
            if let Some(c) = d.certified {
                r.put("certified", Val::Num(c));
            }
        }
        Command::Candidates { a, b } => {
            let c = candidate_values(&merge(&a)?, &merge(&b)?);
            if o.json {
                r.put("candidates", Val::List(c.values.into_iter().map(Val::Num).collect()));
            } else {
                r.tail = Some(c.values.iter().map(|q| fmt_q(q, o) + "\n").collect());
            }
        }
        Command::MergeTree { tree, root } => {
            let m = build_merge_tree(&metric(&tree)?, root)?;
            if o.json {
                r.put("tree", Val::Text(m.to_text()));
            } else {
                r.tail = Some(m.to_text());
            }
        }
        Command::GenHard(g) => gen_hard(g, &mut r)?,
        Command::Verify { a, b, maps, eps } => {
            let (mf, mg) = (merge(&a)?, merge(&b)?);
            let (alpha, beta) = parse_maps(&read(&maps)?)?;
            let rep = verify_report(&mf, &mg, &alpha, &beta, &eps)?;
            let pf = |ok: bool| Val::Text(if ok { "PASS" } else { "FAIL" }.into());
            r.put("eps", Val::Num(eps));
            for (name, ok) in rep.conditions() {
                r.put(name, pf(ok));
            }
            r.put("overall", pf(rep.passed()));
        }
        Command::Oracle(OracleCommand::Gh { a, b, max_size }) => {
            let d = gh_bruteforce_vertices(&metric(&a)?, &metric(&b)?, max_size)?;
            r.put("gh_vertices", Val::Num(d));
        }
        Command::Oracle(OracleCommand::Interleave {
            a,
            b,
            max_leaves,
            eps,
        }) => {
            let (mf, mg) = (merge(&a)?, merge(&b)?);
            match eps {
                Some(e) => {
                    let ok = interleaving_feasible(&mf, &mg, &e, max_leaves)?;
                    r.put("eps", Val::Num(e))
                        .put("feasible", Val::Text(if ok { "YES" } else { "NO" }.into()));
                }
                None => {
                    r.put("interleaving", Val::Num(interleaving_bruteforce(&mf, &mg, max_leaves)?));
                }
            }
        }
    }
    Ok(r)
}

fn gen_hard(g: GenHardArgs, r: &mut Report) -> Result<()> {
    let inst = if g.y.is_empty() {
        BalPartInstance::new(g.x, g.m.expect("required without --y"))?
    } else {
        balpart_from_3partition(&g.y)?
    };
    let pair = build_hard_pair(&inst, &g.lambda, &g.rho)?;
    let label = if inst.x.len() <= LABEL_LIMIT {
        Some(balpart_bruteforce(&inst, LABEL_LIMIT)?.is_some())
    } else {
        None
    };
    let prefix = g.out_prefix.into_os_string();
    let with = |ext: &str| {
        let mut p = prefix.clone();
        p.push(ext);
        PathBuf::from(p)
    };
    let (p1, p2, pm) = (with(".t1.tree"), with(".t2.tree"), with(".meta"));
    write(&p1, &pair.t1.to_text())?;
    write(&p2, &pair.t2.to_text())?;
    write(&pm, &metadata(&pair, label))?;
    r.put("t1", Val::Text(p1.display().to_string()))
        .put("t2", Val::Text(p2.display().to_string()))
        .put("meta", Val::Text(pm.display().to_string()))
        .put("t1_nodes", Val::Int(pair.t1.node_count() as u64))
        .put("t2_nodes", Val::Int(pair.t2.node_count() as u64))
        .put(
            "label",
            Val::Text(match label {
                Some(true) => "yes",
                Some(false) => "no",
                None => "unknown",
            }
            .into()),
        );
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, cli.output) {
        Ok(report) => match report.emit(cli.output, out) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main_exit_code() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
