//! Command-line front end: formula evaluation, construction emission,
//! packing checks, oracle runs, verification sweeps, and result tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 search budget exhausted. Freeness verdicts are data, not failures.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::time::Duration;
use turan_core::cache::{CacheRecord, OracleCache};
use turan_core::construct::{
    extremal_construction, four_partite_triangle_construction, ConstructionCertificate,
};
use turan_core::formulas::{
    four_partite_triangle_lower_bound, multipartite_matching_number, turan_number, FormulaResult,
    Validity,
};
use turan_core::graph::{HostSpec, MultipartiteGraph, PartSizes};
use turan_core::identities::{
    clique_count_lower_bound_check, deletion_identity_check, kr_free_weight_bound_check,
    weight_identity_check,
};
use turan_core::oracle::{
    extremal_number_general, sorted_tuples, theorem_grid, ExtremalResult, SearchBudget,
};
use turan_core::packing::{find_clique_packing, format_packing};
use turan_core::sample::{random_clique_free_subgraph, random_subgraph, seeded_rng};
use turan_core::text;
use turan_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "turan",
    about = "Turán numbers of vertex-disjoint cliques in complete multipartite graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed formula for a host and multiplicity
    Formula(FormulaArgs),
    /// Build the extremal (or conjectured) construction and certify it
    Construct(ConstructArgs),
    /// Test a graph file for a forbidden clique packing
    Check(CheckArgs),
    /// Compute the exact extremal number by branch and bound
    Oracle(OracleArgs),
    /// Run the identity checks and the formula-versus-oracle grid
    Verify(VerifyArgs),
    /// Emit a parameter sweep as CSV or JSONL
    Table(TableArgs),
}

/// Comma-separated part sizes as one argument value.
#[derive(Debug, Clone)]
struct PartsArg(Vec<usize>);

fn parse_parts(s: &str) -> Result<PartsArg, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad part size {t:?}: {e}"))
        })
        .collect::<Result<Vec<usize>, String>>()
        .map(PartsArg)
}

#[derive(Args)]
struct SpecArgs {
    /// Comma-separated part sizes, e.g. 2,2,3
    #[arg(long, value_parser = parse_parts, value_name = "N1,N2,...")]
    parts: PartsArg,
    /// Packing multiplicity k
    #[arg(long)]
    k: u64,
}

impl SpecArgs {
    fn host_spec(&self) -> Result<HostSpec, CoreError> {
        HostSpec::new(PartSizes::new(self.parts.0.clone())?, self.k)
    }
}

#[derive(Args)]
struct FormulaArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Clique size of the forbidden packing; defaults to the part count
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Build the 4-partite kK₃ construction instead of the kK_r one
    #[arg(long)]
    four_partite_triangle: bool,
    /// Write the graph here; without it the graph goes to stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Graph file in the text exchange format
    graph: PathBuf,
    #[arg(long)]
    k: u64,
    /// Clique size; defaults to the part count of the file
    #[arg(long)]
    r: Option<usize>,
    /// Print a packing certificate when one exists
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct BudgetArgs {
    /// Node limit for the search
    #[arg(long, default_value_t = 10_000_000)]
    budget_nodes: u64,
    /// Time limit in seconds
    #[arg(long, default_value_t = 60)]
    budget_seconds: u64,
    /// Worker count inside one search
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.budget_nodes,
            max_time: Duration::from_secs(self.budget_seconds),
            parallelism: self.parallel.max(1),
            ..SearchBudget::default()
        }
    }
}

#[derive(Args)]
struct CacheArgs {
    /// Cache file (default: $TURAN_CACHE, else ./turan-cache.jsonl)
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Ignore cached records and search again
    #[arg(long)]
    recompute: bool,
}

impl CacheArgs {
    fn open(&self) -> OracleCache {
        OracleCache::resolve(self.cache.as_deref())
    }
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Clique size; defaults to the part count
    #[arg(long)]
    r: Option<usize>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for the subgraph sampler (printed for reproduction)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random subgraph samples for the identity checks
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Largest part size in the verification grids
    #[arg(long, default_value_t = 3)]
    nmax: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct TableArgs {
    /// Number of parts in the sweep
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Largest part size in the sweep
    #[arg(long, default_value_t = 3)]
    nmax: usize,
    /// Cap on k (default: k runs up to n₁ of each tuple)
    #[arg(long)]
    kmax: Option<u64>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Compare the oracle against the 4-partite kK₃ bound (r is forced
    /// to 3 over 4-part hosts)
    #[arg(long)]
    explore_r3_in_4parts: bool,
    /// Write rows here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    cache: CacheArgs,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Formula(a) => cmd_formula(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Check(a) => cmd_check(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CoreError::SearchBudget { .. } => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn validity_label(result: &FormulaResult) -> String {
    if result.canonical_spec.r() == 2 {
        format!("{}, bipartite", result.validity)
    } else {
        result.validity.to_string()
    }
}

fn cmd_formula(args: FormulaArgs) -> Result<i32, CoreError> {
    let spec = args.spec.host_spec()?;
    let l = spec.parts().len();
    let r = args.r.unwrap_or(l);
    let result = match (r, l) {
        _ if r == l => turan_number(&spec)?,
        (2, _) => multipartite_matching_number(spec.parts(), spec.k())?,
        (3, 4) => four_partite_triangle_lower_bound(spec.parts(), spec.k())?,
        _ => {
            return Err(CoreError::OutOfRange(format!(
                "no formula for r={r} in an {l}-partite host; try the oracle"
            )))
        }
    };
    println!("{} ({})", result.value, validity_label(&result));
    println!(
        "spec: parts={} r={r} k={}",
        result.canonical_spec.parts(),
        result.canonical_spec.k()
    );
    Ok(0)
}

fn certificate_summary(cert: &mut ConstructionCertificate, formula: u64) -> String {
    let (k, r) = cert.forbidden();
    format!(
        "edges: {}\nformula: {formula}\nforbidden: {k}K_{r}\nfree: {}",
        cert.claimed_edges(),
        cert.ensure_freeness()
    )
}

fn cmd_construct(args: ConstructArgs) -> Result<i32, CoreError> {
    let spec = args.spec.host_spec()?;
    let (mut cert, formula) = if args.four_partite_triangle {
        let bound = four_partite_triangle_lower_bound(spec.parts(), spec.k())?;
        (
            four_partite_triangle_construction(spec.parts(), spec.k())?,
            bound.value,
        )
    } else {
        let formula = turan_number(&spec)?;
        (extremal_construction(&spec)?, formula.value)
    };
    let summary = format!(
        "parts: {}\n{}",
        spec.canonicalized().parts(),
        certificate_summary(&mut cert, formula)
    );
    match &args.output {
        Some(path) => {
            text::write_graph_file(cert.graph(), path)?;
            println!("{summary}");
            println!("wrote: {}", path.display());
        }
        None => {
            // summary on stderr so the graph alone streams to stdout
            eprintln!("{summary}");
            print!("{}", text::write_graph(cert.graph()));
        }
    }
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<i32, CoreError> {
    let graph = text::read_graph_file(&args.graph)?;
    graph.check_invariants()?;
    let r = args.r.unwrap_or(graph.part_count());
    if r < 2 || r > graph.part_count() {
        return Err(CoreError::OutOfRange(format!(
            "r={r} outside [2, {}]",
            graph.part_count()
        )));
    }
    match find_clique_packing(&graph, r, args.k) {
        Some(packing) => {
            println!("contains {}K_{}: yes", args.k, r);
            if args.witness {
                print!("{}", format_packing(&packing));
            }
        }
        None => println!("contains {}K_{}: no", args.k, r),
    }
    Ok(0)
}

/// Oracle run with cache hit/miss handling; returns the result plus
/// whether it came from the cache.
fn oracle_with_cache(
    parts: &PartSizes,
    r: usize,
    k: u64,
    budget: &SearchBudget,
    cache: &OracleCache,
    recompute: bool,
) -> Result<(ExtremalResult, bool), CoreError> {
    let sorted = parts.canonicalized();
    if !recompute {
        if let Some(rec) = cache.lookup(sorted.sizes(), r, k)? {
            let witness = rec.witness_graph()?;
            return Ok((
                ExtremalResult {
                    parts: sorted,
                    r,
                    k,
                    max_edges: rec.max_edges,
                    witness,
                    nodes_explored: rec.nodes,
                    elapsed: Duration::from_millis(rec.elapsed_ms),
                },
                true,
            ));
        }
    }
    let result = extremal_number_general(&sorted, r, k, budget)?;
    cache.append(&CacheRecord::from_result(&result))?;
    Ok((result, false))
}

fn cmd_oracle(args: OracleArgs) -> Result<i32, CoreError> {
    let spec = args.spec.host_spec()?.canonicalized();
    let l = spec.parts().len();
    let r = args.r.unwrap_or(l);
    let cache = args.cache.open();
    let budget = args.budget.budget();

    let (result, hit) = oracle_with_cache(
        spec.parts(),
        r,
        spec.k(),
        &budget,
        &cache,
        args.cache.recompute,
    )?;

    let mut exit = 0;
    if r == l {
        let formula = turan_number(&spec)?;
        if formula.value == result.max_edges {
            println!("{} (matches formula)", result.max_edges);
        } else {
            println!(
                "{} (MISMATCH: formula says {}, validity {})",
                result.max_edges, formula.value, formula.validity
            );
            exit = 1;
        }
    } else if r == 2 {
        let formula = multipartite_matching_number(spec.parts(), spec.k())?;
        match formula.validity {
            Validity::ExactTheorem if formula.value == result.max_edges => {
                println!("{} (matches matching formula)", result.max_edges);
            }
            Validity::ExactTheorem => {
                println!(
                    "{} (MISMATCH: matching formula says {})",
                    result.max_edges, formula.value
                );
                exit = 1;
            }
            _ => println!(
                "{} (matching formula out of range; value {})",
                result.max_edges, formula.value
            ),
        }
    } else if r == 3 && l == 4 {
        let bound = four_partite_triangle_lower_bound(spec.parts(), spec.k())?;
        println!(
            "{} (no formula; lower bound {}, gap {})",
            result.max_edges,
            bound.value,
            result.max_edges as i64 - bound.value as i64
        );
    } else {
        println!("{} (no formula)", result.max_edges);
    }
    println!("spec: parts={} r={r} k={}", result.parts, result.k);
    println!(
        "cache: {} ({})",
        if hit { "hit" } else { "miss" },
        cache.path().display()
    );
    println!(
        "nodes: {}, elapsed: {}ms",
        result.nodes_explored,
        result.elapsed.as_millis()
    );
    Ok(exit)
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, CoreError> {
    let budget = args.budget.budget();
    let cache = args.cache.open();
    let mut rng = seeded_rng(args.seed);
    println!("seed: {}", args.seed);

    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut first_failure: Option<String> = None;
    let mut note = |ok: bool, what: &str, dump: Option<String>| {
        if ok {
            passed += 1;
        } else {
            failed += 1;
            if first_failure.is_none() {
                first_failure = Some(format!(
                    "{what}\n{}",
                    dump.unwrap_or_else(|| "(no instance)".into())
                ));
            }
        }
    };

    // identities on random subgraphs
    let mut hosts = sorted_tuples(3, args.nmax);
    hosts.extend(sorted_tuples(4, args.nmax.min(3)));
    let per_host = (args.samples / hosts.len()).max(1);
    for sizes in &hosts {
        let host = MultipartiteGraph::complete(&PartSizes::new(sizes.clone())?);
        for _ in 0..per_host {
            let g = random_subgraph(&host, &mut rng);
            let w = weight_identity_check(&g)?;
            note(
                w.equal,
                &format!("weight identity {}!={} on {sizes:?}", w.lhs, w.rhs),
                Some(text::write_graph(&g)),
            );
            let d = deletion_identity_check(&g)?;
            note(
                d.equal,
                &format!("deletion identity {}!={} on {sizes:?}", d.lhs, d.rhs),
                Some(text::write_graph(&g)),
            );
        }
    }

    // inequalities on almost-balanced subgraphs
    let balanced: Vec<Vec<usize>> = sorted_tuples(3, args.nmax)
        .into_iter()
        .chain(sorted_tuples(4, args.nmax.min(3)))
        .filter(|s| s[1..].windows(2).all(|w| w[0] == w[1]))
        .collect();
    for sizes in &balanced {
        let host = MultipartiteGraph::complete(&PartSizes::new(sizes.clone())?);
        for _ in 0..per_host {
            let g = random_subgraph(&host, &mut rng);
            let c = clique_count_lower_bound_check(&g)?;
            note(
                c.holds,
                &format!("clique bound q={} < {} on {sizes:?}", c.q, c.bound),
                Some(text::write_graph(&g)),
            );
            let f = random_clique_free_subgraph(&host, &mut rng);
            note(
                kr_free_weight_bound_check(&f)?,
                &format!("clique-free weight bound broke on {sizes:?}"),
                Some(text::write_graph(&f)),
            );
        }
    }

    // formula versus oracle, consulting (and checking) the cache
    for spec in theorem_grid(3, args.nmax) {
        let formula = turan_number(&spec)?;
        match oracle_with_cache(
            spec.parts(),
            spec.r(),
            spec.k(),
            &budget,
            &cache,
            args.cache.recompute,
        ) {
            Ok((res, _)) => {
                let witness_ok = res.witness.edge_count() as u64 == res.max_edges
                    && find_clique_packing(&res.witness, res.r, res.k).is_none();
                note(
                    witness_ok && formula.value == res.max_edges,
                    &format!(
                        "grid point {}: formula {} oracle {} witness_ok={witness_ok}",
                        spec.canonicalized(),
                        formula.value,
                        res.max_edges
                    ),
                    Some(text::write_graph(&res.witness)),
                );
            }
            Err(CoreError::SearchBudget { lower, upper, .. }) => note(
                false,
                &format!(
                    "grid point {}: budget exhausted ({lower}..{upper})",
                    spec.canonicalized()
                ),
                None,
            ),
            Err(e) => return Err(e),
        }
    }

    println!("checks: {passed} passed, {failed} failed");
    if let Some(instance) = first_failure {
        println!("first failing instance:\n{instance}");
        Ok(1)
    } else {
        println!("all {passed} checks passed");
        Ok(0)
    }
}

struct TableRow {
    parts: Vec<usize>,
    k: u64,
    r: usize,
    formula: Option<u64>,
    validity: String,
    oracle: Option<u64>,
    oracle_note: Option<String>,
    construction: Option<u64>,
    nodes: u64,
    elapsed_ms: u128,
}

impl TableRow {
    fn gap(&self) -> Option<i64> {
        Some(self.oracle? as i64 - self.construction? as i64)
    }

    fn csv(&self) -> String {
        let parts = self
            .parts
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let opt = |v: &Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
        format!(
            "{parts};{};{};{};{};{};{};{};{};{}",
            self.k,
            self.r,
            opt(&self.formula),
            self.validity,
            self.oracle_note
                .clone()
                .unwrap_or_else(|| opt(&self.oracle)),
            opt(&self.construction),
            self.gap()
                .map(|g| g.to_string())
                .unwrap_or_else(|| "-".into()),
            self.nodes,
            self.elapsed_ms
        )
    }

    fn jsonl(&self) -> String {
        serde_json::json!({
            "parts": self.parts,
            "k": self.k,
            "r": self.r,
            "formula": self.formula,
            "validity": self.validity,
            "oracle": self.oracle,
            "oracle_note": self.oracle_note,
            "construction_edges": self.construction,
            "gap": self.gap(),
            "nodes": self.nodes,
            "elapsed_ms": self.elapsed_ms,
        })
        .to_string()
    }
}

const CSV_HEADER: &str =
    "parts;k;r;formula;validity;oracle;construction_edges;gap;nodes;elapsed_ms";

fn cmd_table(args: TableArgs) -> Result<i32, CoreError> {
    let budget = args.budget.budget();
    let cache = args.cache.open();
    let mut rows: Vec<TableRow> = Vec::new();

    let grid: Vec<(Vec<usize>, u64, usize)> = if args.explore_r3_in_4parts {
        sorted_tuples(4, args.nmax.min(2))
            .into_iter()
            .flat_map(|sizes| {
                let kmax = args.kmax.unwrap_or(2);
                (1..=kmax).map(move |k| (sizes.clone(), k, 3))
            })
            .collect()
    } else {
        sorted_tuples(args.r, args.nmax)
            .into_iter()
            .flat_map(|sizes| {
                // --kmax 0 selects an empty grid: header-only output
                let kmax = args.kmax.unwrap_or(sizes[0] as u64);
                (1..=kmax).map(move |k| (sizes.clone(), k, sizes.len()))
            })
            .collect()
    };

    for (sizes, k, r) in grid {
        let parts = PartSizes::new(sizes.clone())?;
        let l = parts.len();

        let (formula, validity) = if r == l {
            let f = turan_number(&HostSpec::new(parts.clone(), k)?)?;
            (Some(f.value), f.validity.to_string())
        } else if r == 3 && l == 4 {
            let f = four_partite_triangle_lower_bound(&parts, k)?;
            (Some(f.value), f.validity.to_string())
        } else if r == 2 {
            let f = multipartite_matching_number(&parts, k)?;
            (Some(f.value), f.validity.to_string())
        } else {
            (None, "-".into())
        };

        let construction = if r == l && l >= 3 && k <= sizes[0] as u64 {
            extremal_construction(&HostSpec::new(parts.clone(), k)?)
                .ok()
                .map(|c| c.claimed_edges())
        } else if r == 3 && l == 4 {
            four_partite_triangle_construction(&parts, k)
                .ok()
                .map(|c| c.claimed_edges())
        } else {
            None
        };

        let row = match oracle_with_cache(&parts, r, k, &budget, &cache, args.cache.recompute) {
            Ok((res, _)) => TableRow {
                parts: res.parts.sizes().to_vec(),
                k,
                r,
                formula,
                validity,
                oracle: Some(res.max_edges),
                oracle_note: None,
                construction,
                nodes: res.nodes_explored,
                elapsed_ms: res.elapsed.as_millis(),
            },
            Err(CoreError::SearchBudget {
                lower,
                upper,
                nodes,
            }) => TableRow {
                parts: parts.canonicalized().sizes().to_vec(),
                k,
                r,
                formula,
                validity,
                oracle: None,
                oracle_note: Some(format!("budget({lower}<=max<={upper})")),
                construction,
                nodes,
                elapsed_ms: budget.max_time.as_millis(),
            },
            Err(e) => return Err(e),
        };
        rows.push(row);
    }

    let mut out = String::new();
    match args.format {
        TableFormat::Csv => {
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in &rows {
                out.push_str(&row.csv());
                out.push('\n');
            }
        }
        TableFormat::Jsonl => {
            for row in &rows {
                out.push_str(&row.jsonl());
                out.push('\n');
            }
        }
    }
    match &args.output {
        Some(path) => std::fs::write(path, out).map_err(CoreError::from)?,
        None => print!("{out}"),
    }
    Ok(0)
}
