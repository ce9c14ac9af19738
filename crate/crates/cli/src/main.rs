//! Command-line front end: decomposition listings, Stirling tables, normal
//! ordering with a built-in cross-check, skew-symmetric evaluation, the
//! symmetrized characteristic, identity sweeps, counterexample graphs, and
//! signed shuffle values.
//!
//! Exit codes: 0 success; 2 unreadable or unparsable input; 3 precondition
//! violation; 4 budget exceeded without `--long`; 5 internal oracle mismatch
//! (a defect signal - the two normal-ordering routes disagreed).

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weylpath::skewsym::{self, IdentityOptions, IdentityVerdict};
use weylpath::{
    enumerate_principal, graph_expand, normal_order_product, q, stirling_table, Error,
    LabeledDigraph, VertexMultiset, WeylElement, WeylMonomial,
};

#[derive(Parser)]
#[command(
    name = "weylpath",
    version,
    about = "Path decompositions of labeled digraphs and Weyl algebra normal ordering"
)]
struct Cli {
    /// Emit line-oriented records instead of aligned text.
    #[arg(long, global = true)]
    records: bool,

    /// Worker threads for sweep subcommands.
    #[arg(long, short = 'j', global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the principal decompositions of a graph with sources and sinks.
    Decompose {
        /// Graph file (text format, or JSON with a .json extension).
        #[arg(long)]
        graph: PathBuf,
        /// Print only the total count.
        #[arg(long)]
        count: bool,
    },
    /// Print the Stirling table of a graph: one row (I, J, S_G(I)) per
    /// realizable source multiset.
    Stirling {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Normally order a product of length-0 monomials by both routes
    /// (commutation fold and graph expansion) and fail loudly on mismatch.
    NormalOrder {
        /// Number of variables (default: largest index mentioned).
        #[arg(long)]
        n: Option<usize>,
        /// Monomial factors, e.g. "x1 x2 d2 d1" "x4 d2".
        #[arg(required = true)]
        monomials: Vec<String>,
    },
    /// Evaluate the skew-symmetric polynomial s_m on basis monomials x_i d_j.
    Skew {
        /// Number of variables (default: largest index mentioned).
        #[arg(long)]
        n: Option<usize>,
        #[arg(required = true)]
        monomials: Vec<String>,
    },
    /// Print E_G(sources) for a blockless graph.
    Eg {
        #[arg(long)]
        graph: PathBuf,
        /// Source multiset as a comma-separated vertex list, e.g. 1,1.
        #[arg(long)]
        sources: String,
    },
    /// Sweep all unordered argument subsets to certify or refute s_m = 0 on
    /// the span of the n^2 basis monomials.
    IdentityCheck {
        /// Number of variables.
        #[arg(long)]
        n: u32,
        /// Arity of the skew-symmetric polynomial.
        #[arg(long)]
        m: usize,
        /// Permit sweeps beyond the default budget.
        #[arg(long)]
        long: bool,
    },
    /// Emit the counterexample graph with E_G({1,1}) != 0 for the given n.
    Fig3 {
        /// Number of vertices (n >= 4); the graph carries 2n labeled edges.
        #[arg(long)]
        n: u32,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the signed two-chain shuffle sum q(m, n).
    Q { m: u64, n: u64 },
}

enum CliError {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    OracleMismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "cannot read {}: {e}", path.display()),
            CliError::OracleMismatch(msg) => write!(f, "internal oracle mismatch: {msg}"),
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Io(..) | CliError::Lib(Error::Parse { .. }) => 2,
        CliError::Lib(Error::BudgetExceeded { .. }) => 4,
        CliError::OracleMismatch(_) => 5,
        CliError::Lib(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Decompose { graph, count } => decompose(&graph, count, cli.records),
        Command::Stirling { graph } => stirling(&graph, cli.records),
        Command::NormalOrder { n, monomials } => normal_order(n, &monomials, cli.records),
        Command::Skew { n, monomials } => skew(n, &monomials, cli.records),
        Command::Eg { graph, sources } => eg(&graph, &sources),
        Command::IdentityCheck { n, m, long } => identity_check(n, m, long, cli.jobs, cli.records),
        Command::Fig3 { n, out } => fig3(n, out.as_deref()),
        Command::Q { m, n } => {
            println!("{}", q(m, n));
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<LabeledDigraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    let graph = if path.extension().is_some_and(|ext| ext == "json") {
        LabeledDigraph::from_json(&text)?
    } else {
        LabeledDigraph::parse(&text)?
    };
    Ok(graph)
}

fn parse_sources(text: &str) -> Result<VertexMultiset, CliError> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "-" {
        return Ok(VertexMultiset::new());
    }
    let mut out = VertexMultiset::new();
    for part in trimmed.split(',') {
        let v: u32 = part.trim().parse().map_err(|_| {
            CliError::Lib(Error::Parse {
                line: 1,
                msg: format!("bad vertex id {part:?} in source list"),
            })
        })?;
        if v == 0 {
            return Err(CliError::Lib(Error::Parse {
                line: 1,
                msg: "vertex ids are 1-based".into(),
            }));
        }
        out.insert(v);
    }
    Ok(out)
}

/// Comma-joined elements of a multiset, `-` when empty.
fn multiset_record(m: &VertexMultiset) -> String {
    if m.is_empty() {
        return "-".into();
    }
    m.elements()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Largest variable index mentioned in monomial strings.
fn infer_dimension(texts: &[String]) -> Result<usize, CliError> {
    let mut max = 0usize;
    for text in texts {
        for token in text.split_whitespace() {
            let body = token
                .strip_prefix('x')
                .or_else(|| token.strip_prefix('d'))
                .unwrap_or("");
            let idx_str = body.split('^').next().unwrap_or("");
            if let Ok(idx) = idx_str.parse::<usize>() {
                max = max.max(idx);
            }
        }
    }
    if max == 0 {
        return Err(CliError::Lib(Error::Parse {
            line: 1,
            msg: "no variable indices found in the monomial list".into(),
        }));
    }
    Ok(max)
}

fn parse_monomials(
    n: Option<usize>,
    texts: &[String],
) -> Result<(usize, Vec<WeylMonomial>), CliError> {
    let n = match n {
        Some(n) => n,
        None => infer_dimension(texts)?,
    };
    let ws = texts
        .iter()
        .map(|t| WeylMonomial::parse(t, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((n, ws))
}

fn print_element(e: &WeylElement, records: bool) {
    if records {
        if e.is_zero() {
            println!("0\t1");
            return;
        }
        for (m, c) in e.terms() {
            println!("{c}\t{m}");
        }
    } else {
        println!("{e}");
    }
}

fn decompose(path: &Path, count_only: bool, records: bool) -> Result<(), CliError> {
    let g = load_graph(path)?;
    let all = enumerate_principal(&g);
    if count_only {
        println!("{}", all.len());
        return Ok(());
    }
    if records {
        for d in &all {
            let paths = d
                .paths()
                .iter()
                .map(|p| {
                    p.labels()
                        .iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("|");
            println!(
                "{paths}\t{}\t{}",
                multiset_record(&d.sources(&g)),
                multiset_record(&d.sinks(&g))
            );
        }
    } else {
        let rendered: Vec<(String, String, String)> = all
            .iter()
            .map(|d| {
                (
                    d.to_string(),
                    d.sources(&g).to_string(),
                    d.sinks(&g).to_string(),
                )
            })
            .collect();
        let w0 = rendered
            .iter()
            .map(|r| r.0.len())
            .max()
            .unwrap_or(0)
            .max("decomposition".len());
        let w1 = rendered
            .iter()
            .map(|r| r.1.len())
            .max()
            .unwrap_or(0)
            .max("sources".len());
        println!("{:w0$}  {:w1$}  sinks", "decomposition", "sources");
        for (d, i, j) in &rendered {
            println!("{d:w0$}  {i:w1$}  {j}");
        }
        println!("total: {}", all.len());
    }
    Ok(())
}

fn stirling(path: &Path, records: bool) -> Result<(), CliError> {
    let g = load_graph(path)?;
    let table = stirling_table(&g);
    if records {
        for (i, s) in table.rows() {
            let j = table.sinks_for(i);
            println!("{}\t{}\t{s}", multiset_record(i), multiset_record(&j));
        }
    } else {
        let rendered: Vec<(String, String, String)> = table
            .rows()
            .map(|(i, s)| (i.to_string(), table.sinks_for(i).to_string(), s.to_string()))
            .collect();
        let w0 = rendered.iter().map(|r| r.0.len()).max().unwrap_or(0).max(1);
        let w1 = rendered.iter().map(|r| r.1.len()).max().unwrap_or(0).max(1);
        println!("{:w0$}  {:w1$}  S", "I", "J");
        for (i, j, s) in &rendered {
            println!("{i:w0$}  {j:w1$}  {s}");
        }
    }
    Ok(())
}

fn normal_order(n: Option<usize>, texts: &[String], records: bool) -> Result<(), CliError> {
    let (_, ws) = parse_monomials(n, texts)?;
    for w in &ws {
        if !w.is_length_zero() {
            return Err(CliError::Lib(Error::NotLengthZero));
        }
    }
    let by_product = normal_order_product(&ws)?;
    let by_graph = graph_expand(&ws)?;
    if by_product != by_graph {
        return Err(CliError::OracleMismatch(format!(
            "commutation fold gave {by_product}, graph expansion gave {by_graph}"
        )));
    }
    print_element(&by_product, records);
    Ok(())
}

fn skew(n: Option<usize>, texts: &[String], records: bool) -> Result<(), CliError> {
    let (_, ws) = parse_monomials(n, texts)?;
    let value = skewsym::s_m_evaluate(&ws)?;
    print_element(&value, records);
    Ok(())
}

fn eg(path: &Path, sources: &str) -> Result<(), CliError> {
    let g = load_graph(path)?;
    let i = parse_sources(sources)?;
    println!("{}", skewsym::eg_value(&g, &i)?);
    Ok(())
}

fn identity_check(
    n: u32,
    m: usize,
    long: bool,
    jobs: usize,
    records: bool,
) -> Result<(), CliError> {
    let verdict = skewsym::identity_check(
        n,
        m,
        &IdentityOptions {
            long_running: long,
            use_symmetry: true,
            jobs: jobs.max(1),
        },
    )?;
    print_verdict(&verdict, records);
    Ok(())
}

fn plural(k: u64, one: &str, many: &str) -> String {
    if k == 1 {
        format!("{k} {one}")
    } else {
        format!("{k} {many}")
    }
}

fn edges_record(edges: &[weylpath::Edge]) -> String {
    edges
        .iter()
        .map(|e| format!("{}:{}", e.tail, e.head))
        .collect::<Vec<_>>()
        .join(",")
}

fn print_verdict(v: &IdentityVerdict, records: bool) {
    if records {
        let mut line = format!(
            "verdict={} cases={} classes={}",
            if v.holds { "holds" } else { "fails" },
            v.cases_checked,
            v.symmetry_classes
        );
        if let Some(w) = &v.witness {
            line.push_str(&format!(
                " witness_edges={} witness_sources={} witness_coefficient={}",
                edges_record(&w.edges),
                multiset_record(&w.sources),
                w.coefficient
            ));
        }
        println!("{line}");
        return;
    }
    if v.holds {
        println!(
            "holds ({}, {})",
            plural(v.cases_checked, "case", "cases"),
            plural(v.symmetry_classes, "class", "classes")
        );
    } else {
        println!(
            "fails ({}, {})",
            plural(v.cases_checked, "case", "cases"),
            plural(v.symmetry_classes, "class", "classes")
        );
        if let Some(w) = &v.witness {
            let edges = w
                .edges
                .iter()
                .map(|e| format!("({},{})", e.tail, e.head))
                .collect::<Vec<_>>()
                .join(" ");
            println!("witness edges: {edges}");
            println!("witness sources: {}", w.sources);
            println!("witness coefficient: {}", w.coefficient);
        }
    }
}

fn fig3(n: u32, out: Option<&Path>) -> Result<(), CliError> {
    let g = skewsym::fig3_graph(n)?;
    let text = g.to_string();
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))?
        }
        None => print!("{text}"),
    }
    Ok(())
}
