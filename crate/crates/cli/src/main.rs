use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use symbreak::enumerate::corpus_up_to;
use symbreak::equivalence::{classes_of_groups, compare_groups, Verdict, DEFAULT_NODE_BUDGET};
use symbreak::graph6::{read_records, Record};
use symbreak::metrics::{distinguishing_number_in, SearchBudget};
use symbreak::report::{analyze_with, AnalyzeOptions};
use symbreak::theory::{scan_corpus, ScanOptions};
use symbreak::{automorphism_group, encode_graph6, generate_family, FamilyKind, FamilySpec, Graph};

const DATA_ERROR: u8 = 1;
const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "symbreak", version, about = "Symmetry-breaking invariants of small graphs")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report |Aut|, D, Det and rho for every graph6 record.
    Analyze {
        /// graph6 file, or "-" for stdin.
        input: PathBuf,
        /// Stop at the first bad record.
        #[arg(long)]
        fail_fast: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Generate a named family member.
    Family {
        /// path, cycle, complete, hypercube or clique_with_tails.
        kind: String,
        parameter: usize,
        /// Print the graph6 encoding (default).
        #[arg(long, conflicts_with = "analyze")]
        emit: bool,
        /// Print the full report instead.
        #[arg(long)]
        analyze: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Decide distinguishable equivalence of the two graphs in a file.
    Equiv {
        input: PathBuf,
        /// Node budget for the bijection search.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Partition graphs into distinguishable-equivalence classes.
    Classes {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Check the cost bound over a corpus.
    Scan {
        /// graph6 corpus file, or "-" for stdin.
        #[arg(required_unless_present = "enumerate", conflicts_with = "enumerate")]
        input: Option<PathBuf>,
        /// Scan every graph on 1..=N vertices (N <= 7).
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
        /// Run the pair checks on each graph with D = Det = 2.
        #[arg(long)]
        props: bool,
        /// With --props, check every determining pair.
        #[arg(long, requires = "props")]
        all_pairs: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    /// Search node cap for the D, Det and rho searches.
    #[arg(long, default_value_t = 100_000_000)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    format: Format,
}

impl SearchArgs {
    fn options(self) -> AnalyzeOptions {
        AnalyzeOptions {
            budget: SearchBudget { subset_tests: self.budget, coloring_nodes: self.budget },
            ..AnalyzeOptions::default()
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Lines,
    Json,
}

fn open(path: &PathBuf) -> io::Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

fn read_all(path: &PathBuf) -> Result<Vec<Record>, ExitCode> {
    let reader = open(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(DATA_ERROR)
    })?;
    read_records(reader).collect::<io::Result<Vec<_>>>().map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(DATA_ERROR)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(USAGE_ERROR);
        }
        pool = pool.num_threads(jobs);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(DATA_ERROR);
        }
    };
    let mut out = BufWriter::new(io::stdout());
    let code = pool.install(|| run(cli.command, &mut out));
    if let Err(e) = out.flush() {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(DATA_ERROR);
        }
    }
    code
}

fn run(command: Command, out: &mut impl Write) -> ExitCode {
    let result = match command {
        Command::Analyze { input, fail_fast, search } => analyze(&input, fail_fast, search, out),
        Command::Family { kind, parameter, emit: _, analyze, search } => family(&kind, parameter, analyze, search, out),
        Command::Equiv { input, budget } => equiv(&input, budget, out),
        Command::Classes { input, budget } => classes(&input, budget, out),
        Command::Scan { input, enumerate, props, all_pairs, search } => {
            scan(input.as_ref(), enumerate, props, all_pairs, search, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(DATA_ERROR)
        }
    }
}

fn analyze(input: &PathBuf, fail_fast: bool, search: SearchArgs, out: &mut impl Write) -> io::Result<ExitCode> {
    let records = match read_all(input) {
        Ok(r) => r,
        Err(code) => return Ok(code),
    };
    let end = if fail_fast {
        records.iter().position(|r| r.graph.is_err()).map_or(records.len(), |i| i + 1)
    } else {
        records.len()
    };
    let records = &records[..end];
    let options = search.options();
    let results: Vec<_> = records
        .par_iter()
        .map(|r| r.graph.clone().and_then(|g| analyze_with(&g, &options).map(|a| a.report)))
        .collect();
    let mut failed = false;
    for (record, result) in records.iter().zip(results) {
        match result {
            Ok(report) => match search.format {
                Format::Lines => writeln!(out, "{report}")?,
                Format::Json => writeln!(out, "{}", report.to_json())?,
            },
            Err(e) => {
                failed = true;
                out.flush()?;
                eprintln!("error: line {}: {e}", record.line);
                if fail_fast {
                    break;
                }
            }
        }
    }
    Ok(if failed { ExitCode::from(DATA_ERROR) } else { ExitCode::SUCCESS })
}

fn family(
    kind: &str,
    parameter: usize,
    analyze: bool,
    search: SearchArgs,
    out: &mut impl Write,
) -> io::Result<ExitCode> {
    let graph = kind.parse::<FamilyKind>().and_then(|k| FamilySpec::new(k, parameter)).and_then(generate_family);
    let graph = match graph {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("usage: symbreak family <path|cycle|complete|hypercube|clique_with_tails> <parameter>");
            return Ok(ExitCode::from(USAGE_ERROR));
        }
    };
    if !analyze {
        match encode_graph6(&graph) {
            Ok(text) => writeln!(out, "{text}")?,
            Err(e) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(DATA_ERROR));
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    match analyze_with(&graph, &search.options()) {
        Ok(a) => {
            match search.format {
                Format::Lines => writeln!(out, "{}", a.report)?,
                Format::Json => writeln!(out, "{}", a.report.to_json())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(DATA_ERROR))
        }
    }
}

fn parsed_graphs(records: &[Record]) -> Result<Vec<Graph>, ExitCode> {
    let mut graphs = Vec::with_capacity(records.len());
    let mut failed = false;
    for r in records {
        match &r.graph {
            Ok(g) => graphs.push(g.clone()),
            Err(e) => {
                eprintln!("error: line {}: {e}", r.line);
                failed = true;
            }
        }
    }
    if failed {
        Err(ExitCode::from(DATA_ERROR))
    } else {
        Ok(graphs)
    }
}

fn equiv(input: &PathBuf, budget: u64, out: &mut impl Write) -> io::Result<ExitCode> {
    let records = match read_all(input) {
        Ok(r) => r,
        Err(code) => return Ok(code),
    };
    if records.len() != 2 {
        eprintln!("error: equiv needs exactly 2 graphs, found {}", records.len());
        return Ok(ExitCode::from(USAGE_ERROR));
    }
    let graphs = match parsed_graphs(&records) {
        Ok(g) => g,
        Err(code) => return Ok(code),
    };
    let groups: Result<Vec<_>, _> = graphs.iter().map(automorphism_group).collect();
    let verdict = groups.and_then(|g| compare_groups(&g[0], &g[1], budget));
    match verdict {
        Ok(Verdict::Equivalent(sigma)) => {
            let map: Vec<String> = sigma.images().enumerate().map(|(v, w)| format!("{v}->{w}")).collect();
            writeln!(out, "equivalent\t{}", map.join(","))?;
            Ok(ExitCode::SUCCESS)
        }
        Ok(other) => {
            writeln!(out, "not-equivalent\t{}", other.reason())?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(ExitCode::from(DATA_ERROR))
        }
    }
}

fn classes(input: &PathBuf, budget: u64, out: &mut impl Write) -> io::Result<ExitCode> {
    let records = match read_all(input) {
        Ok(r) => r,
        Err(code) => return Ok(code),
    };
    let graphs = match parsed_graphs(&records) {
        Ok(g) => g,
        Err(code) => return Ok(code),
    };
    let groups: Result<Vec<_>, _> = graphs.par_iter().map(automorphism_group).collect();
    let partition = match groups.and_then(|groups| {
        let partition = classes_of_groups(&groups, budget)?;
        Ok((groups, partition))
    }) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(DATA_ERROR));
        }
    };
    let (groups, partition) = partition;
    for (id, members) in partition.classes.iter().enumerate() {
        let rep = &groups[members[0]];
        let d = distinguishing_number_in(rep, SearchBudget::default()).map_or("?".to_string(), |(d, _)| d.to_string());
        let names: Vec<&str> = members.iter().map(|&i| records[i].text.as_str()).collect();
        writeln!(out, "class={id}\taut={}\tD={d}\tmembers={}", rep.order(), names.join(","))?;
    }
    for (a, b) in &partition.unresolved {
        writeln!(out, "unresolved\t{}\t{}", records[*a].text, records[*b].text)?;
    }
    Ok(if partition.unresolved.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(DATA_ERROR) })
}

fn scan(
    input: Option<&PathBuf>,
    enumerate: Option<usize>,
    props: bool,
    all_pairs: bool,
    search: SearchArgs,
    out: &mut impl Write,
) -> io::Result<ExitCode> {
    let mut data_error = false;
    let graphs = match (input, enumerate) {
        (_, Some(n)) => match corpus_up_to(n) {
            Ok(g) if n >= 1 => g,
            Ok(_) | Err(_) => {
                eprintln!("error: --enumerate takes 1..=7, got {n}");
                return Ok(ExitCode::from(USAGE_ERROR));
            }
        },
        (Some(path), None) => {
            let records = match read_all(path) {
                Ok(r) => r,
                Err(code) => return Ok(code),
            };
            let mut graphs = Vec::with_capacity(records.len());
            for r in records {
                match r.graph {
                    Ok(g) => graphs.push(g),
                    Err(e) => {
                        eprintln!("error: line {}: {e}", r.line);
                        data_error = true;
                    }
                }
            }
            graphs
        }
        (None, None) => unreachable!("clap requires an input"),
    };
    let options = ScanOptions { analyze: search.options(), props, all_pairs, ..ScanOptions::default() };
    let report = scan_corpus(&graphs, &options);
    for r in &report.reports {
        match search.format {
            Format::Lines => writeln!(out, "{r}")?,
            Format::Json => writeln!(out, "{}", r.to_json())?,
        }
    }
    writeln!(out, "{}", report.summary_json())?;
    Ok(if data_error || !report.passed() { ExitCode::from(DATA_ERROR) } else { ExitCode::SUCCESS })
}
