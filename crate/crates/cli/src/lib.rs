//! Command-line surface over `recolor-core`. [`run`] takes the full argument
//! list (program name first) and returns the process exit code.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use recolor_core::discharge::{audit_planar, audit_sparse};
use recolor_core::generate::{generate_with, Family, GenOptions};
use recolor_core::io::{
    parse_coloring, parse_graph, parse_lists, parse_sequence, serialize_coloring, serialize_graph,
    serialize_lists, serialize_sequence, SequenceFile,
};
use recolor_core::oracle::{bfs_distance, kgood_reachable, KGood, OracleError};
use recolor_core::recolor::verify;
use recolor_core::reduce::driver::{reconfigure, Outcome, Theorem};
use recolor_core::reduce::PipelineError;
use recolor_core::structure::{class_check_planar6, mad};
use recolor_core::{Coloring, Graph, ListAssignment};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CLASS: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_NO_CONFIG: i32 = 5;
pub const EXIT_CAP: i32 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Class(String),
    #[error("{0}")]
    Verify(String),
    #[error("{0}")]
    NoConfig(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Class(_) => EXIT_CLASS,
            CliError::Verify(_) => EXIT_VERIFY,
            CliError::NoConfig(_) => EXIT_NO_CONFIG,
            CliError::Cap(_) => EXIT_CAP,
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        let msg = e.to_string();
        match e {
            PipelineError::ImproperEndpoint(_) => CliError::Parse(msg),
            PipelineError::ListTooSmall { .. }
            | PipelineError::NotPlanarClass(_)
            | PipelineError::MadTooLarge(_) => CliError::Class(msg),
            PipelineError::NoConfiguration(_) => CliError::NoConfig(msg),
            PipelineError::VerifyFailed(r) => CliError::Verify(match r.violation {
                Some(v) => format!("{msg}: step {}: {}", v.step, v.reason),
                None => msg,
            }),
            _ => CliError::Verify(msg),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::StateCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "recolor",
    version,
    about = "Bounded list-recoloring sequences for sparse and planar graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Planar6,
    Mad4,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Planar6 => Theorem::Planar6,
            TheoremArg::Mad4 => Theorem::Mad4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rules {
    Planar,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Dist,
    Kgood,
}

/// Paths of a graph, its lists and the two endpoint colorings.
#[derive(Debug, clap::Args)]
pub struct InstanceArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub lists: PathBuf,
    #[arg(long)]
    pub alpha: PathBuf,
    #[arg(long)]
    pub beta: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report triangles, intersecting 4-cycles, embedding and mad; with
    /// --theorem, exit 3 unless the graph is in that class.
    CheckClass {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        theorem: Option<TheoremArg>,
    },
    /// Build a k-good recoloring sequence from alpha to beta.
    Reconfigure {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[command(flatten)]
        instance: InstanceArgs,
        /// Sequence file to write.
        #[arg(long)]
        out: PathBuf,
        /// Realized counts table; defaults to `<out>.counts.csv`.
        #[arg(long)]
        counts: Option<PathBuf>,
        /// Run summary table; a row is appended, with a header if the file
        /// is new.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Name of the instance in the summary; defaults to the graph path.
        #[arg(long)]
        label: Option<String>,
        /// Record wall time in the summary.
        #[arg(long)]
        timing: bool,
    },
    /// Replay a sequence, checking every step, the budget and the target.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        beta: Option<PathBuf>,
        /// Overrides the budget in the sequence header.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Run a discharging system and write its ledger.
    Audit {
        #[arg(long, value_enum)]
        rules: Rules,
        #[arg(long)]
        graph: PathBuf,
        /// Report file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        transfers: Option<PathBuf>,
        #[arg(long)]
        charges: Option<PathBuf>,
    },
    /// Exhaustive search of the recoloring graph on small instances.
    Oracle {
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[command(flatten)]
        instance: InstanceArgs,
        /// Budget for kgood; unlimited when absent.
        #[arg(long)]
        k: Option<u32>,
        /// Colorings (dist) or stored search states (kgood) before giving up.
        #[arg(long, default_value_t = 10_000_000)]
        max_states: u64,
        /// Witness sequence file for kgood.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write graph.txt, lists.txt, alpha.txt and beta.txt for a generated
    /// instance.
    Gen {
        /// grid5, vertexdisjoint4cycles, girth10subdiv, sparsetree2threads or cycle
        #[arg(long)]
        family: Family,
        /// Number of vertices; exact for cycle and sparsetree2threads, an upper bound for the others
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        list_size: Option<usize>,
        #[arg(long)]
        palette: Option<u32>,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (code, text) = run_captured(args);
    if code == EXIT_OK {
        print!("{text}");
        let _ = std::io::stdout().flush();
    } else {
        eprint!("{text}");
    }
    code
}

/// Like [`run`], but returns the text instead of printing it: the command
/// output on success, the error or usage message otherwise.
pub fn run_captured<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match execute(cli.command) {
        Ok(out) => (EXIT_OK, out),
        Err(e) => (e.code(), format!("error: {e}\n")),
    }
}

/// Runs one command and returns what it prints on success.
pub fn execute(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::CheckClass { graph, theorem } => {
            check_class(&read_graph(&graph)?, theorem.map(Theorem::from))
        }
        Command::Reconfigure {
            theorem,
            instance,
            out,
            counts,
            summary,
            label,
            timing,
        } => {
            let inst = Instance::load(&instance)?;
            let counts = counts.unwrap_or_else(|| suffixed(&out, ".counts.csv"));
            let label = label.unwrap_or_else(|| instance.graph.display().to_string());
            run_reconfigure(
                theorem.into(),
                &inst,
                &out,
                &counts,
                summary.as_deref(),
                &label,
                timing,
            )
        }
        Command::Verify {
            graph,
            lists,
            alpha,
            seq,
            beta,
            k,
        } => {
            let g = read_graph(&graph)?;
            let lists = read(&lists, parse_lists)?;
            let alpha = read(&alpha, parse_coloring)?;
            let beta = beta.map(|b| read(&b, parse_coloring)).transpose()?;
            let file = read(&seq, parse_sequence)?;
            let k = k.or(file.k);
            let seq = file.into_sequence(alpha);
            let rep = verify(&g, &lists, &seq, beta.as_ref(), k);
            match rep.violation {
                None => Ok(format!(
                    "ok steps={} max_count={}\n",
                    seq.len(),
                    rep.max_count()
                )),
                Some(v) => Err(CliError::Verify(format!("step {}: {}", v.step, v.reason))),
            }
        }
        Command::Audit {
            rules,
            graph,
            out,
            transfers,
            charges,
        } => {
            let g = read_graph(&graph)?;
            let (report, ledger) = match rules {
                Rules::Planar => {
                    let a = audit_planar(&g).map_err(|e| CliError::Class(e.to_string()))?;
                    (a.report(), a.ledger)
                }
                Rules::Sparse => {
                    let a = audit_sparse(&g);
                    (a.report(), a.ledger)
                }
            };
            if let Some(p) = transfers {
                write(&p, &ledger.transfers_csv())?;
            }
            if let Some(p) = charges {
                write(&p, &ledger.charges_csv())?;
            }
            match out {
                Some(p) => write(&p, &report).map(|_| String::new()),
                None => Ok(report),
            }
        }
        Command::Oracle {
            mode,
            instance,
            k,
            max_states,
            out,
        } => {
            let inst = Instance::load(&instance)?;
            match mode {
                OracleMode::Dist => {
                    match bfs_distance(
                        &inst.graph,
                        &inst.lists,
                        &inst.alpha,
                        &inst.beta,
                        max_states,
                    )? {
                        Some(d) => Ok(format!("distance {d}\n")),
                        None => Ok("unreachable\n".to_string()),
                    }
                }
                OracleMode::Kgood => {
                    let cap = usize::try_from(max_states).unwrap_or(usize::MAX);
                    match kgood_reachable(
                        &inst.graph,
                        &inst.lists,
                        &inst.alpha,
                        &inst.beta,
                        k,
                        cap,
                    )? {
                        KGood::Yes(seq) => {
                            if let Some(p) = out {
                                write(&p, &serialize_sequence(&SequenceFile::from(&seq)))?;
                            }
                            Ok(format!("yes steps={}\n", seq.len()))
                        }
                        KGood::No => Ok("no\n".to_string()),
                        KGood::Unknown { explored } => Err(CliError::Cap(format!(
                            "unknown: state cap {max_states} reached after {explored} states"
                        ))),
                    }
                }
            }
        }
        Command::Gen {
            family,
            n,
            seed,
            out,
            list_size,
            palette,
        } => {
            let b = generate_with(family, n, seed, &GenOptions { list_size, palette })
                .map_err(|e| CliError::Io(e.to_string()))?;
            fs::create_dir_all(&out)
                .map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            write(&out.join("graph.txt"), &serialize_graph(&b.graph))?;
            write(&out.join("lists.txt"), &serialize_lists(&b.lists))?;
            write(&out.join("alpha.txt"), &serialize_coloring(&b.alpha))?;
            write(&out.join("beta.txt"), &serialize_coloring(&b.beta))?;
            Ok(format!(
                "{family} seed={seed} n={} m={}\n",
                b.graph.num_vertices(),
                b.graph.num_edges()
            ))
        }
    }
}

/// A graph, lists and two colorings that agree on the vertex ids.
pub struct Instance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub alpha: Coloring,
    pub beta: Coloring,
}

impl Instance {
    pub fn load(a: &InstanceArgs) -> Result<Self, CliError> {
        let inst = Instance {
            graph: read_graph(&a.graph)?,
            lists: read(&a.lists, parse_lists)?,
            alpha: read(&a.alpha, parse_coloring)?,
            beta: read(&a.beta, parse_coloring)?,
        };
        inst.cross_check()?;
        Ok(inst)
    }

    fn cross_check(&self) -> Result<(), CliError> {
        let n = self.graph.id_bound();
        for (what, bound) in [
            ("lists", self.lists.id_bound()),
            ("alpha", self.alpha.id_bound()),
            ("beta", self.beta.id_bound()),
        ] {
            if bound > n {
                return Err(CliError::Parse(format!(
                    "{what} mention vertex {} beyond the graph",
                    bound - 1
                )));
            }
        }
        for v in self.graph.vertices() {
            if self.lists.size(v) == 0 {
                return Err(CliError::Parse(format!("vertex {v} has no list")));
            }
            for (what, c) in [("alpha", &self.alpha), ("beta", &self.beta)] {
                if c.get(v).is_none() {
                    return Err(CliError::Parse(format!(
                        "{what} leaves vertex {v} uncolored"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn read<T>(
    path: &Path,
    parse: impl Fn(&str) -> Result<T, recolor_core::io::ParseError>,
) -> Result<T, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Parse(format!("{}: not UTF-8", path.display())))?;
    parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    read(path, parse_graph)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn suffixed(p: &Path, suffix: &str) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn check_class(g: &Graph, theorem: Option<Theorem>) -> Result<String, CliError> {
    let rep = class_check_planar6(g);
    let m = mad(g).ok();
    let sparse = m
        .as_ref()
        .is_none_or(|m| *m.value.numer() * 2 < *m.value.denom() * 5);
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", g.num_vertices());
    let _ = writeln!(out, "edges: {}", g.num_edges());
    let _ = writeln!(
        out,
        "rotation: {}",
        if rep.missing_rotation {
            "missing"
        } else {
            "present"
        }
    );
    let _ = writeln!(
        out,
        "non-planar components: {}",
        rep.non_planar_components.len()
    );
    let _ = writeln!(out, "triangles: {}", rep.triangle_count);
    let _ = writeln!(
        out,
        "intersecting 4-cycle pairs: {}",
        rep.intersecting_count
    );
    match &m {
        Some(m) => {
            let _ = writeln!(out, "mad: {}", m.value);
        }
        None => out.push_str("mad: undefined\n"),
    }
    let _ = writeln!(out, "planar6 class: {}", rep.in_class());
    let _ = writeln!(out, "mad4 class: {sparse}");
    match theorem {
        Some(Theorem::Planar6) if !rep.in_class() => {
            Err(CliError::Class(format!("{out}not in the planar6 class")))
        }
        Some(Theorem::Mad4) if !sparse => {
            Err(CliError::Class(format!("{out}not in the mad4 class")))
        }
        _ => Ok(out),
    }
}

const SUMMARY_HEADER: &str =
    "instance,theorem,vertices,edges,planar6_class,mad,mad_below_5_2,budget,max_count,steps,verify,wall_ms\n";

fn run_reconfigure(
    theorem: Theorem,
    inst: &Instance,
    out: &Path,
    counts_path: &Path,
    summary: Option<&Path>,
    label: &str,
    timing: bool,
) -> Result<String, CliError> {
    let clock = Instant::now();
    let result = reconfigure(theorem, &inst.graph, &inst.lists, &inst.alpha, &inst.beta);
    let wall = clock.elapsed();
    if let Some(p) = summary {
        let row = summary_row(
            theorem,
            inst,
            result.as_ref().ok(),
            label,
            timing.then_some(wall.as_millis()),
        );
        append_summary(p, &row)?;
    }
    let outcome = result?;
    write(
        out,
        &serialize_sequence(&SequenceFile::from(&outcome.sequence)),
    )?;
    write(counts_path, &counts_csv(&inst.graph, &outcome))?;
    Ok(format!(
        "ok theorem={theorem} steps={} max_count={} budget={}\n",
        outcome.sequence.len(),
        outcome.counts.iter().max().copied().unwrap_or(0),
        theorem.budget()
    ))
}

/// One row per vertex: realized count and the configuration that removed it.
fn counts_csv(g: &Graph, o: &Outcome) -> String {
    let mut pattern = vec![""; g.id_bound()];
    for m in &o.matches {
        for &v in &m.deleted {
            pattern[v] = m.pattern;
        }
    }
    let mut out = String::from("vertex,count,configuration\n");
    for v in g.vertices() {
        let _ = writeln!(
            out,
            "{v},{},{}",
            o.counts.get(v).copied().unwrap_or(0),
            pattern[v]
        );
    }
    out
}

fn summary_row(
    theorem: Theorem,
    inst: &Instance,
    o: Option<&Outcome>,
    label: &str,
    wall_ms: Option<u128>,
) -> String {
    let g = &inst.graph;
    let m = mad(g).ok();
    let (mad_s, below) = match &m {
        Some(m) => (
            m.value.to_string(),
            *m.value.numer() * 2 < *m.value.denom() * 5,
        ),
        None => (String::new(), true),
    };
    let label = label.replace([',', '\n'], "_");
    format!(
        "{label},{theorem},{},{},{},{mad_s},{below},{},{},{},{},{}\n",
        g.num_vertices(),
        g.num_edges(),
        class_check_planar6(g).in_class(),
        theorem.budget(),
        o.map_or(String::new(), |o| o
            .counts
            .iter()
            .max()
            .copied()
            .unwrap_or(0)
            .to_string()),
        o.map_or(String::new(), |o| o.sequence.len().to_string()),
        if o.is_some() { "pass" } else { "fail" },
        wall_ms.map_or(String::new(), |w| w.to_string()),
    )
}

fn append_summary(path: &Path, row: &str) -> Result<(), CliError> {
    let fresh = !path.exists();
    let mut f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = if fresh {
        format!("{SUMMARY_HEADER}{row}")
    } else {
        row.to_string()
    };
    f.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
