//! The `pdgn` command line: batch verification runs, table generation and
//! format conversion. Exit codes: 0 all checks pass, 1 a mathematical check
//! failed, 2 usage or input error.

use crate::error::Error;
use crate::gr36;
use crate::plucker::{self, SubsetOrder, WeightVector};
use crate::polygon::{enumerate_triangulations, Diagonal, Triangulation};
use crate::report::Report;
use crate::tree::{four_point_check, tree_from_triangulation, verify_mutation};
use crate::{flow, plabic};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeSet;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "pdgn", version, about = "Toric-degeneration data of Grassmannians from plabic graphs and triangulations")]
struct Cli {
    /// Bound on parallel workers (default: available parallelism; the
    /// PDGN_JOBS environment variable overrides the default).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write all triangulations of the n-gon as JSON lines.
    Triangulations {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Gr(2,n) checks.
    Gr2 {
        #[command(subcommand)]
        command: Gr2Command,
    },
    /// Flip a diagonal and verify how the degenerate relations change.
    Mutate {
        /// Triangulation JSON file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Diagonal to flip, e.g. "3,6".
        #[arg(long)]
        diagonal: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gr(3,6) commands.
    Gr36 {
        #[command(subcommand)]
        command: Gr36Command,
    },
    /// Tropical membership checks.
    Tropical {
        #[command(subcommand)]
        command: TropicalCommand,
    },
}

#[derive(Subcommand)]
enum Gr2Command {
    /// For every triangulation: tree vs plabic degrees, the four-point
    /// condition, and equality of the two initial ideals.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Engine::Generators)]
        engine: Engine,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Gr36Command {
    /// Write the 34-row table and verify it against the bundled reference
    /// data.
    Table {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(Subcommand)]
enum TropicalCommand {
    /// Check a weight vector file for tropical membership.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Generators,
    Buchberger,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    // PDGN_JOBS overrides the flag
    let jobs = std::env::var("PDGN_JOBS")
        .ok()
        .and_then(|v| v.parse().ok())
        .or(cli.jobs);
    if let Some(jobs) = jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().is_err() {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Internal(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

enum CliError {
    Usage(String),
    Internal(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(m) => CliError::Usage(m),
            other => CliError::Internal(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("io error: {e}"))
    }
}

fn dispatch(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Triangulations { n, out } => cmd_triangulations(n, &out),
        Command::Gr2 { command: Gr2Command::Verify { n, engine, out } } => {
            cmd_gr2_verify(n, engine, out.as_deref())
        }
        Command::Mutate { input, diagonal, out } => cmd_mutate(&input, &diagonal, out.as_deref()),
        Command::Gr36 { command: Gr36Command::Table { out, format } } => {
            cmd_gr36_table(&out, format)
        }
        Command::Tropical { command: TropicalCommand::Check { input } } => cmd_tropical_check(&input),
    }
}

fn emit(report: &Report, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_triangulations(n: usize, out: &std::path::Path) -> Result<i32, CliError> {
    if !(4..=12).contains(&n) {
        return Err(CliError::Usage(format!("--n must be in 4..=12, got {n}")));
    }
    let all = enumerate_triangulations(n)?;
    let mut text = String::new();
    for t in &all {
        text.push_str(&t.to_json().to_string());
        text.push('\n');
    }
    std::fs::write(out, text)?;
    Ok(0)
}

struct Gr2Case {
    triangulation: Triangulation,
    failure: Option<(String, serde_json::Value)>,
}

fn gr2_check_one(t: &Triangulation, engine: Engine) -> Gr2Case {
    let fail = |name: &str, extra: serde_json::Value| Gr2Case {
        triangulation: t.clone(),
        failure: Some((
            name.to_string(),
            json!({"triangulation": t.to_json(), "detail": extra}),
        )),
    };
    let n = t.n();
    let tree = tree_from_triangulation(t);
    let w_tree = match tree.weight_vector() {
        Ok(w) => w,
        Err(e) => return fail("tree-weights", json!(e.to_string())),
    };
    for s in w_tree.order.subsets() {
        let (i, j) = (s[0], s[1]);
        if w_tree.get(s) != t.a_degree(i, j).unwrap() as i64 {
            return fail("tree-degree-vs-a-degree", json!({"pair": [i, j]}));
        }
    }
    let graph = match plabic::kw_graph(t) {
        Ok(g) => g,
        Err(e) => return fail("plabic-graph", json!(e.to_string())),
    };
    let order = SubsetOrder::lex(2, n);
    let w_plabic = match flow::plabic_weight_vector(&graph, &order) {
        Ok(w) => w,
        Err(e) => return fail("plabic-weights", json!(e.to_string())),
    };
    for s in order.subsets() {
        let (i, j) = (s[0], s[1]);
        if w_plabic.get(s) != t.x_degree(i, j).unwrap() as i64 {
            return fail("plabic-degree-vs-x-degree", json!({"pair": [i, j]}));
        }
    }
    match four_point_check(&w_plabic, -1) {
        Ok(Ok(())) => {}
        Ok(Err(quad)) => return fail("four-point", json!({ "quadruple": quad })),
        Err(e) => return fail("four-point", json!(e.to_string())),
    }
    let from_tree = plucker::gr2_initial_generators(&w_tree.negated());
    let from_plabic = plucker::gr2_initial_generators(&w_plabic);
    let ((gens_t, cls_t), (gens_g, cls_g)) = match (from_tree, from_plabic) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail("initial-generators", json!(e.to_string())),
    };
    if cls_t != cls_g {
        let first = cls_t
            .iter()
            .zip(&cls_g)
            .find(|(a, b)| a != b)
            .map(|(a, _)| a.quad);
        return fail("initial-ideal-classification", json!({ "quadruple": first }));
    }
    if engine == Engine::Buchberger {
        let gens = match plucker::plucker_generators(&order) {
            Ok(g) => g,
            Err(e) => return fail("plucker-generators", json!(e.to_string())),
        };
        let neg_tree: Vec<i64> = w_tree.entries.iter().map(|&x| -x).collect();
        let lhs = plucker::initial_ideal(&gens, &order, &neg_tree);
        let rhs = plucker::initial_ideal(&gens, &order, &w_plabic.entries);
        let (lhs, rhs) = match (lhs, rhs) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return fail("initial-ideal", json!(e.to_string())),
        };
        match plucker::ideal_equal(&lhs.generators, &rhs.generators, &order) {
            Ok(true) => {}
            Ok(false) => return fail("initial-ideal-equality", json!("reduced bases differ")),
            Err(e) => return fail("initial-ideal-equality", json!(e.to_string())),
        }
        for (name, side, two_term) in [("tree", &lhs, &gens_t), ("plabic", &rhs, &gens_g)] {
            match plucker::ideal_equal(&side.generators, two_term, &order) {
                Ok(true) => {}
                Ok(false) => {
                    return fail("generated-by-initial-terms", json!({ "side": name }));
                }
                Err(e) => return fail("generated-by-initial-terms", json!(e.to_string())),
            }
        }
    }
    Gr2Case { triangulation: t.clone(), failure: None }
}

fn cmd_gr2_verify(n: usize, engine: Engine, out: Option<&std::path::Path>) -> Result<i32, CliError> {
    let max = match engine {
        Engine::Generators => 8,
        Engine::Buchberger => 6,
    };
    if !(4..=max).contains(&n) {
        return Err(CliError::Usage(format!("--n must be in 4..={max} for this engine, got {n}")));
    }
    let engine_name = match engine {
        Engine::Generators => "generators",
        Engine::Buchberger => "buchberger",
    };
    let mut report = Report::new("gr2 verify", &[&n.to_le_bytes(), engine_name.as_bytes()]);
    let cases = report.time("verify", || -> Result<Vec<Gr2Case>, Error> {
        let all = enumerate_triangulations(n)?;
        Ok(all.par_iter().map(|t| gr2_check_one(t, engine)).collect())
    })?;
    report.details.insert("cases_checked".into(), json!(cases.len()));
    let failure = cases.iter().find_map(|c| {
        c.failure
            .as_ref()
            .map(|(name, detail)| (name.clone(), detail.clone(), c.triangulation.clone()))
    });
    match failure {
        None => report.pass("all-triangulations"),
        Some((name, detail, _)) => report.fail(&name, detail),
    }
    emit(&report, out)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_mutate(input: &std::path::Path, diagonal: &str, out: Option<&std::path::Path>) -> Result<i32, CliError> {
    let raw = std::fs::read(input)?;
    let value: serde_json::Value = serde_json::from_slice(&raw)
        .map_err(|e| CliError::Usage(format!("bad JSON: {e}")))?;
    let t = Triangulation::from_json(&value)?;
    let parts: Vec<usize> = diagonal
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad diagonal {diagonal:?}")))?;
    if parts.len() != 2 {
        return Err(CliError::Usage("diagonal must be two comma-separated labels".into()));
    }
    let d = Diagonal::new(parts[0], parts[1], t.n())?;
    if !t.contains(&d) {
        return Err(CliError::Usage(format!(
            "diagonal ({},{}) is not in the triangulation",
            parts[0], parts[1]
        )));
    }
    let mut report = Report::new("mutate", &[&raw, diagonal.as_bytes()]);
    let outcome = report.time("mutate", || verify_mutation(&t, &d))?;
    report.details.insert("flipped".into(), outcome.flipped.to_json());
    report
        .details
        .insert("changed_quadruples".into(), json!(outcome.changed));
    report.check("mutation-prediction", outcome.violation);
    emit(&report, out)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_gr36_table(out: &std::path::Path, format: TableFormat) -> Result<i32, CliError> {
    let mut report = Report::new("gr36 table", &[]);
    let atlas = match report.time("atlas", gr36::atlas) {
        Ok(rows) => rows,
        Err(e) => {
            report.fail("atlas-construction", json!(e.to_string()));
            emit(&report, None)?;
            return Ok(1);
        }
    };
    match format {
        TableFormat::Csv => std::fs::write(out, gr36::atlas_csv(&atlas))?,
        TableFormat::Json => std::fs::write(
            out,
            serde_json::to_string_pretty(&gr36::atlas_json(&atlas)).expect("serializes") + "\n",
        )?,
    }
    report.check(
        "row-count",
        (atlas.len() != 34).then(|| json!({"rows": atlas.len()})),
    );
    // label sets equal column 1 as a set of sets
    let computed: BTreeSet<_> = atlas.iter().map(|r| r.internal_labels.clone()).collect();
    let reference: BTreeSet<_> = gr36::REFERENCE_TABLE
        .iter()
        .map(gr36::reference_label_set)
        .collect();
    report.check(
        "internal-labels",
        (computed != reference).then(|| json!("label families differ")),
    );
    // weights and classes row by row
    let mut weight_bad = None;
    let mut class_bad = None;
    for row in &atlas {
        let reference = gr36::reference_row_by_labels(&row.internal_labels);
        match reference {
            None => weight_bad = weight_bad.or_else(|| Some(json!({"labels": format!("{:?}", row.internal_labels)}))),
            Some(r) => {
                if row.weight.entries != r.weight.to_vec() {
                    weight_bad = weight_bad.or_else(|| Some(json!({
                        "labels": format!("{:?}", row.internal_labels),
                        "computed": row.weight.entries,
                        "reference": r.weight.to_vec(),
                    })));
                }
                if row.class_name != r.class_name {
                    class_bad = class_bad.or_else(|| Some(json!({
                        "labels": format!("{:?}", row.internal_labels),
                        "computed": row.class_name,
                        "reference": r.class_name,
                    })));
                }
            }
        }
    }
    report.check("weights", weight_bad);
    report.check("classes", class_bad);
    let class_summary = report.time("class-report", || gr36::class_report(&atlas))?;
    report.check(
        "monomial-free",
        (!class_summary.all_monomial_free).then(|| json!("an initial ideal contains a monomial")),
    );
    report.notices = class_summary.notices.clone();
    report.details.insert(
        "class_sizes".into(),
        json!(class_summary
            .classes
            .iter()
            .map(|c| (c.name.clone(), c.size))
            .collect::<Vec<_>>()),
    );
    emit(&report, None)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_tropical_check(input: &std::path::Path) -> Result<i32, CliError> {
    let raw = std::fs::read(input)?;
    let value: serde_json::Value = serde_json::from_slice(&raw)
        .map_err(|e| CliError::Usage(format!("bad JSON: {e}")))?;
    let w = WeightVector::from_json(&value)?;
    let mut report = Report::new("tropical check", &[&raw]);
    match (w.order.k, w.order.n) {
        (2, _) => {
            let outcome = report.time("four-point", || four_point_check(&w, -1))?;
            report.check(
                "four-point",
                outcome.err().map(|quad| json!({ "quadruple": quad })),
            );
        }
        (3, 6) => {
            let order = w.order.clone();
            let outcome = report.time("initial-ideal", || -> Result<(bool, Vec<String>), Error> {
                let gens = plucker::plucker_generators(&order)?;
                let ideal = plucker::initial_ideal(&gens, &order, &w.entries)?;
                let free = plucker::is_monomial_free(&ideal)?;
                Ok((free, ideal.render()))
            });
            match outcome {
                Ok((free, rendered)) => {
                    report.details.insert("reduced_basis".into(), json!(rendered));
                    report.check(
                        "monomial-free",
                        (!free).then(|| json!("initial ideal contains a monomial")),
                    );
                }
                Err(e) => return Err(e.into()),
            }
        }
        (k, n) => {
            return Err(CliError::Usage(format!(
                "tropical check supports k=2 or (k,n)=(3,6); got k={k}, n={n}"
            )))
        }
    }
    emit(&report, None)?;
    Ok(if report.passed() { 0 } else { 1 })
}
