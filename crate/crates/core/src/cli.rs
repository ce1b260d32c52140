//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code: 0 on success, 1 when a
//! computed value disagrees with a check or reference table, 2 on usage or
//! input errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::avoidance::{CountTable, MemoStore, PatternSet};
use crate::bijection::{lambda_t, reduction_sides, slide_inverse, slide_trace, SuffixSet};
use crate::board::{
    enumerate_full_placements, enumerate_self_conjugate_shapes, enumerate_shapes,
    enumerate_symmetric_full_placements, BoardPlacement, Shape,
};
use crate::classify::{
    classify_sk, compute_table, render_table, scan_conjectures, verify_prefix_exchange, Counter,
    TableId,
};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tableau::{rsk, rsk_inverse, Tableau};
use crate::verify::{run_check, Check, CheckRecord};

pub const CACHE_ENV: &str = "INVOPAT_CACHE";

#[derive(Parser, Debug)]
#[command(name = "invopat", version, about = "Pattern avoidance by involutions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads. 1 runs everything on the calling thread.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    /// JSON file memoizing avoidance counts between runs.
    #[arg(long, env = CACHE_ENV, global = true)]
    pub cache: Option<PathBuf>,
    /// Leave out elapsed time.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count involutions of length n avoiding every given pattern.
    Count {
        #[arg(long)]
        n: usize,
        /// Count for every length from n to this one.
        #[arg(long)]
        to: Option<usize>,
        /// Comma-separated patterns, e.g. 1234 or 12453,21453.
        #[arg(long)]
        patterns: String,
    },
    /// List shapes fitting in a square box.
    Shapes {
        #[arg(long)]
        max_side: usize,
        #[arg(long)]
        self_conjugate: bool,
    },
    /// List full placements on a shape.
    Placements {
        #[arg(long)]
        shape: Shape,
        #[arg(long)]
        symmetric: bool,
        /// Keep only placements avoiding these patterns (bounded containment).
        #[arg(long)]
        avoid: Option<String>,
    },
    /// Insertion and recording tableaux of a permutation, or the inverse.
    Rsk {
        #[arg(long, conflicts_with_all = ["p", "q"])]
        perm: Option<Permutation>,
        /// Insertion tableau, rows bottom first, e.g. 1,2/3.
        #[arg(long, requires = "q")]
        p: Option<Tableau>,
        #[arg(long, requires = "p")]
        q: Option<Tableau>,
    },
    /// Reduce a symmetric full placement to its T-shape.
    Reduce {
        #[command(flatten)]
        placement: PlacementArg,
        /// Prefix length j.
        #[arg(long)]
        j: usize,
        /// Comma-separated suffixes on j+1.., e.g. 54.
        #[arg(long)]
        suffixes: String,
        /// Also compare containment of sigma with that of each sigma+suffix.
        #[arg(long)]
        sigma: Option<Permutation>,
    },
    /// Slide a 21-free column window one step right (or back).
    Slide {
        #[command(flatten)]
        placement: PlacementArg,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        inverse: bool,
        /// List every dot move.
        #[arg(long)]
        trace: bool,
    },
    /// Group the symmetry classes of S_k by their counts.
    Classify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Recompute a reference table.
    Table {
        #[arg(long)]
        id: TableId,
        /// Exit 1 if any cell differs from the reference.
        #[arg(long)]
        check: bool,
        /// Stop at this n.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Run exhaustive verification sweeps.
    Verify {
        /// Check name, or "all".
        #[arg(long, default_value = "all")]
        check: String,
        /// Largest board side (shape checks) or n (count checks).
        #[arg(long)]
        max_side: Option<usize>,
    },
    /// Evaluate open pattern pairs, or a prefix exchange with --alpha/--beta.
    Scan {
        #[arg(long, default_value_t = 11)]
        n_max: usize,
        /// Largest side for the increasing/decreasing shape comparison.
        #[arg(long, default_value_t = 5)]
        max_side: usize,
        #[arg(long, requires = "beta")]
        alpha: Option<Permutation>,
        #[arg(long, requires = "alpha")]
        beta: Option<Permutation>,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
    },
}

#[derive(Args, Debug)]
pub struct PlacementArg {
    /// Placement as "shape;x,y x,y ...", e.g. "3,3,2;1,1 2,3 3,2".
    #[arg(long, conflicts_with = "perm")]
    placement: Option<BoardPlacement>,
    /// Involution whose graph on the square board is the placement.
    #[arg(long)]
    perm: Option<Permutation>,
}

impl PlacementArg {
    fn get(&self) -> Result<BoardPlacement> {
        match (&self.placement, &self.perm) {
            (Some(p), _) => Ok(p.clone()),
            (None, Some(pi)) => Ok(BoardPlacement::from_permutation(pi)),
            (None, None) => Err(Error::InvalidInput(
                "one of --placement or --perm is required".into(),
            )),
        }
    }
}

/// What a command produced, before formatting.
struct Report {
    params: Value,
    results: Vec<Value>,
    text: String,
    csv: Option<String>,
    failed: bool,
}

impl Report {
    fn new(params: Value, results: Vec<Value>, text: String) -> Self {
        Report {
            params,
            results,
            text,
            csv: None,
            failed: false,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Parses `args` (program name first) and runs the command, writing output
/// to `out` and diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::TableMismatch { .. } => 1,
                Error::Io(_) => 1,
                _ => 2,
            }
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if cli.jobs == 0 {
        return Err(Error::InvalidInput("--jobs must be at least 1".into()));
    }
    let memo = match &cli.cache {
        Some(path) => MemoStore::open(path)?,
        None => MemoStore::in_memory(),
    };
    let counter = Counter::new(memo, cli.jobs > 1);
    let start = Instant::now();
    let report = if cli.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        pool.install(|| dispatch(&cli.command, &counter))?
    } else {
        dispatch(&cli.command, &counter)?
    };
    counter.memo.save()?;
    let elapsed = start.elapsed().as_secs_f64();

    match cli.format {
        Format::Text => {
            out.write_all(report.text.as_bytes())?;
            if !cli.no_timing {
                writeln!(err, "elapsed: {elapsed:.3}s")?;
            }
        }
        Format::Json => {
            let mut doc = json!({
                "command": command_name(&cli.command),
                "params": report.params,
                "results": report.results,
                "version": env!("CARGO_PKG_VERSION"),
            });
            if !cli.no_timing {
                doc["elapsed_seconds"] = json!(elapsed);
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => match &report.csv {
            Some(csv) => out.write_all(csv.as_bytes())?,
            None => {
                return Err(Error::InvalidInput(format!(
                    "csv output is not available for {}",
                    command_name(&cli.command)
                )))
            }
        },
    }
    Ok(if report.failed { 1 } else { 0 })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Count { .. } => "count",
        Command::Shapes { .. } => "shapes",
        Command::Placements { .. } => "placements",
        Command::Rsk { .. } => "rsk",
        Command::Reduce { .. } => "reduce",
        Command::Slide { .. } => "slide",
        Command::Classify { .. } => "classify",
        Command::Table { .. } => "table",
        Command::Verify { .. } => "verify",
        Command::Scan { .. } => "scan",
    }
}

fn dispatch(command: &Command, counter: &Counter) -> Result<Report> {
    match command {
        Command::Count { n, to, patterns } => count(*n, *to, patterns, counter),
        Command::Shapes {
            max_side,
            self_conjugate,
        } => Ok(shapes(*max_side, *self_conjugate)),
        Command::Placements {
            shape,
            symmetric,
            avoid,
        } => placements(shape, *symmetric, avoid.as_deref()),
        Command::Rsk { perm, p, q } => rsk_command(perm.as_ref(), p.as_ref(), q.as_ref()),
        Command::Reduce {
            placement,
            j,
            suffixes,
            sigma,
        } => reduce(&placement.get()?, *j, suffixes, sigma.as_ref()),
        Command::Slide {
            placement,
            i,
            j,
            inverse,
            trace,
        } => slide(&placement.get()?, *i, *j, *inverse, *trace),
        Command::Classify { k, n_max } => {
            let report = classify_sk(*k, *n_max, counter)?;
            let mut table = CountTable::default();
            for g in &report.groups {
                for class in &g.classes {
                    for (n, &c) in (report.n_range.0..).zip(&g.counts) {
                        table.insert(class[0].to_string(), n, c);
                    }
                }
            }
            let mut r = Report::new(
                json!({"k": k, "n_max": n_max}),
                report.groups.iter().map(to_value).collect(),
                report.to_text(),
            );
            r.csv = Some(table.to_csv());
            Ok(r)
        }
        Command::Table { id, check, n_max } => table(*id, *check, *n_max, counter),
        Command::Verify { check, max_side } => verify(check, *max_side, counter),
        Command::Scan {
            n_max,
            max_side,
            alpha,
            beta,
            k_max,
        } => match (alpha, beta) {
            (Some(a), Some(b)) => {
                let report = verify_prefix_exchange(a, b, *k_max, *n_max, counter)?;
                Ok(Report::new(
                    json!({"alpha": a, "beta": b, "k_max": k_max, "n_max": n_max}),
                    report.comparisons.iter().map(to_value).collect(),
                    report.to_text(),
                ))
            }
            _ => {
                let report = scan_conjectures(*n_max, *max_side, counter)?;
                Ok(Report::new(
                    json!({"n_max": n_max, "max_side": max_side}),
                    vec![to_value(&report)],
                    report.to_text(),
                ))
            }
        },
    }
}

fn count(n: usize, to: Option<usize>, patterns: &str, counter: &Counter) -> Result<Report> {
    let t: PatternSet = patterns.parse()?;
    let hi = to.unwrap_or(n);
    if hi < n {
        return Err(Error::InvalidInput(format!("--to {hi} is below --n {n}")));
    }
    let mut table = CountTable::default();
    let mut results = Vec::new();
    let mut text = String::new();
    for m in n..=hi {
        let c = counter.count(m, &t);
        table.insert(t.to_string(), m, c);
        results.push(json!({"patterns": t, "n": m, "count": c}));
        if to.is_some() {
            text.push_str(&format!("{m} {c}\n"));
        } else {
            text.push_str(&format!("{c}\n"));
        }
    }
    let csv = {
        let mut s = String::from("patterns,n,count\n");
        for (_, m, c) in table.iter() {
            s.push_str(&format!("\"{t}\",{m},{c}\n"));
        }
        s
    };
    let mut r = Report::new(json!({"n": n, "to": hi, "patterns": t}), results, text);
    r.csv = Some(csv);
    Ok(r)
}

fn shapes(max_side: usize, self_conjugate: bool) -> Report {
    let list = if self_conjugate {
        enumerate_self_conjugate_shapes(max_side)
    } else {
        enumerate_shapes(max_side)
    };
    let text: String = list.iter().map(|s| format!("{s}\n")).collect();
    Report::new(
        json!({"max_side": max_side, "self_conjugate": self_conjugate}),
        list.iter().map(to_value).collect(),
        text,
    )
}

fn placements(shape: &Shape, symmetric: bool, avoid: Option<&str>) -> Result<Report> {
    let all = if symmetric {
        enumerate_symmetric_full_placements(shape)?
    } else {
        enumerate_full_placements(shape)
    };
    let avoid: Option<PatternSet> = avoid.map(str::parse).transpose()?;
    let kept: Vec<BoardPlacement> = all
        .into_iter()
        .filter(|p| {
            avoid
                .as_ref()
                .map_or(true, |t| t.patterns().iter().all(|q| p.avoids(q)))
        })
        .collect();
    let mut text: String = kept.iter().map(|p| format!("{p}\n")).collect();
    text.push_str(&format!("total {}\n", kept.len()));
    Ok(Report::new(
        json!({"shape": shape, "symmetric": symmetric, "avoid": avoid}),
        kept.iter().map(to_value).collect(),
        text,
    ))
}

fn rsk_command(
    perm: Option<&Permutation>,
    p: Option<&Tableau>,
    q: Option<&Tableau>,
) -> Result<Report> {
    match (perm, p, q) {
        (Some(w), _, _) => {
            let (p, q) = rsk(w);
            Ok(Report::new(
                json!({"perm": w}),
                vec![json!({"p": p, "q": q, "shape": p.shape()})],
                format!("P {p}\nQ {q}\n"),
            ))
        }
        (None, Some(p), Some(q)) => {
            let w = rsk_inverse(p, q)?;
            Ok(Report::new(
                json!({"p": p, "q": q}),
                vec![json!({"perm": w})],
                format!("{w}\n"),
            ))
        }
        _ => Err(Error::InvalidInput(
            "give --perm, or both --p and --q".into(),
        )),
    }
}

fn reduce(
    placement: &BoardPlacement,
    j: usize,
    suffixes: &str,
    sigma: Option<&Permutation>,
) -> Result<Report> {
    let t = SuffixSet::parse(j, suffixes)?;
    let mu = placement.shape().clone();
    let reduced = lambda_t(&mu, placement, &t)?;
    let mut text = format!(
        "shape {}\nplacement {}\ncolumns {:?}\nrows {:?}\n",
        reduced.shape, reduced.induced, reduced.kept_columns, reduced.kept_rows
    );
    let mut result = to_value(&reduced);
    let mut failed = false;
    if let Some(sigma) = sigma {
        let (lhs, rhs) = reduction_sides(&mu, placement, sigma, &t)?;
        text.push_str(&format!(
            "contains {}: {lhs}\nreduced contains {sigma}: {rhs}\n",
            t.with_prefix(sigma)?
        ));
        result["contains_full"] = json!(lhs);
        result["reduced_contains"] = json!(rhs);
        failed = lhs != rhs;
    }
    let mut r = Report::new(
        json!({"placement": placement, "suffixes": t.to_string(), "sigma": sigma}),
        vec![result],
        text,
    );
    r.failed = failed;
    Ok(r)
}

fn slide(p: &BoardPlacement, i: usize, j: usize, inverse: bool, trace: bool) -> Result<Report> {
    let params = json!({"placement": p, "i": i, "j": j, "inverse": inverse});
    if inverse {
        let back = slide_inverse(p, i, j)?;
        return Ok(Report::new(
            params,
            vec![json!({"output": back})],
            format!("{back}\n"),
        ));
    }
    let t = slide_trace(p, i, j)?;
    let mut text = format!("case {}\n{}\n", t.case, t.output);
    if trace {
        for m in &t.moves {
            text.push_str(&format!(
                "  ({},{}) -> ({},{}) {}\n",
                m.from.0, m.from.1, m.to.0, m.to.1, m.step
            ));
        }
    }
    let mut result = json!({"case": t.case.label(), "output": t.output});
    if trace {
        result["moves"] = to_value(&t.moves);
    }
    Ok(Report::new(params, vec![result], text))
}

fn table(id: TableId, check: bool, n_max: Option<usize>, counter: &Counter) -> Result<Report> {
    let done = compute_table(id, n_max, counter);
    let (table, mismatches) = (done.table, done.mismatches);
    let mut text = render_table(id, &table);
    for e in &done.errata {
        text.push_str(&format!(
            "ERRATUM {} n={}: computed {}, published {}\n",
            e.class, e.n, e.recomputed, e.published
        ));
    }
    for m in &mismatches {
        text.push_str(&format!("MISMATCH {m}\n"));
    }
    let mut results: Vec<Value> = table
        .iter()
        .map(|(class, n, count)| json!({"class": class, "n": n, "count": count}))
        .collect();
    if !mismatches.is_empty() || !done.errata.is_empty() {
        results.push(json!({"mismatches": mismatches, "errata": done.errata}));
    }
    let mut r = Report::new(
        json!({"id": id, "check": check, "n_max": n_max}),
        results,
        text,
    );
    r.csv = Some(table.to_csv());
    r.failed = check && !mismatches.is_empty();
    Ok(r)
}

fn verify(check: &str, size: Option<usize>, counter: &Counter) -> Result<Report> {
    let checks: Vec<Check> = if check == "all" {
        Check::ALL.to_vec()
    } else {
        check
            .split(',')
            .map(|c| c.trim().parse())
            .collect::<Result<_>>()?
    };
    let mut records: Vec<CheckRecord> = Vec::new();
    for c in &checks {
        records.extend(run_check(*c, size, counter)?);
    }
    let failures = records.iter().filter(|r| !r.pass).count();
    let mut text = String::new();
    for c in &checks {
        let mine: Vec<&CheckRecord> = records.iter().filter(|r| r.check == c.name()).collect();
        let bad = mine.iter().filter(|r| !r.pass).count();
        text.push_str(&format!(
            "{} {}: {} cases, {} failed\n",
            if bad == 0 { "PASS" } else { "FAIL" },
            c,
            mine.len(),
            bad
        ));
        for r in mine.iter().filter(|r| !r.pass) {
            text.push_str(&format!("  {r}\n"));
        }
    }
    let mut csv = String::from("check,parameters,lhs,rhs,pass\n");
    for r in &records {
        let params = r.parameters.to_string().replace('"', "\"\"");
        csv.push_str(&format!(
            "{},\"{params}\",{},{},{}\n",
            r.check, r.lhs, r.rhs, r.pass
        ));
    }
    let mut r = Report::new(
        json!({"check": check, "max_side": size}),
        records.iter().map(to_value).collect(),
        text,
    );
    r.csv = Some(csv);
    r.failed = failures > 0;
    Ok(r)
}
