//! Grouping patterns by their involution-avoidance counts, reproducing the
//! reference count tables, and scanning prefix-exchange and conjectured
//! equalities.
//!
//! Equal count vectors are reported as empirical groups only: agreement up
//! to `n_max` is evidence, not a proof of equivalence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::avoidance::{lambda_sym, CountTable, MemoStore, PatternSet};
use crate::board::enumerate_self_conjugate_shapes;
use crate::error::{out_of_range, Error, Result};
use crate::perm::{permutations, Permutation};

const GOLDEN: &str = include_str!("../data/golden_tables.json");

/// Counts `I_n(T)` through a memo store, optionally splitting work across
/// the current rayon pool.
#[derive(Debug, Default)]
pub struct Counter {
    pub memo: MemoStore,
    pub parallel: bool,
}

impl Counter {
    pub fn new(memo: MemoStore, parallel: bool) -> Self {
        Counter { memo, parallel }
    }

    pub fn count(&self, n: usize, t: &PatternSet) -> u64 {
        self.memo.count(n, t, self.parallel)
    }

    pub fn count_one(&self, n: usize, sigma: &Permutation) -> u64 {
        self.count(n, &PatternSet::single(sigma.clone()).expect("nonempty"))
    }

    /// Counts every `(pattern, n)` job, in parallel when enabled. Output is
    /// in job order regardless of scheduling.
    pub fn count_many(&self, jobs: &[(Permutation, usize)]) -> Vec<u64> {
        if self.parallel {
            jobs.par_iter()
                .map(|(p, n)| self.count_one(*n, p))
                .collect()
        } else {
            jobs.iter().map(|(p, n)| self.count_one(*n, p)).collect()
        }
    }
}

/// Symmetry classes of `S_k`, each sorted, ordered by least member.
pub fn symmetry_classes(k: usize) -> Vec<Vec<Permutation>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in permutations(k) {
        if seen.contains(&p) {
            continue;
        }
        let class: Vec<Permutation> = p.symmetry_class().into_iter().collect();
        seen.extend(class.iter().cloned());
        out.push(class);
    }
    out
}

/// Symmetry classes sharing a count vector over the report's range.
#[derive(Clone, Debug, Serialize)]
pub struct CountGroup {
    pub classes: Vec<Vec<Permutation>>,
    pub counts: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub k: usize,
    pub n_range: (usize, usize),
    pub symmetry_classes: Vec<Vec<Permutation>>,
    pub groups: Vec<CountGroup>,
}

impl ClassReport {
    pub fn to_text(&self) -> String {
        let (lo, hi) = self.n_range;
        let mut out = format!(
            "S_{}: {} symmetry classes, {} groups (empirically equal for {lo} <= n <= {hi})\n",
            self.k,
            self.symmetry_classes.len(),
            self.groups.len()
        );
        let header: Vec<String> = (lo..=hi).map(|n| format!("n={n}")).collect();
        out.push_str(&format!("{:<40} {}\n", "classes", header.join(" ")));
        for g in &self.groups {
            let counts: Vec<String> = g.counts.iter().map(u64::to_string).collect();
            let classes: Vec<String> = g.classes.iter().map(|c| class_label(c)).collect();
            out.push_str(&format!("{:<40} {}\n", classes.join(" "), counts.join(" ")));
        }
        out
    }
}

fn class_label(class: &[Permutation]) -> String {
    let members: Vec<String> = class.iter().map(Permutation::to_string).collect();
    format!("{{{}}}", members.join(","))
}

/// Groups the symmetry classes of `S_k` by their counts for
/// `k+1 <= n <= n_max`.
pub fn classify_sk(k: usize, n_max: usize, counter: &Counter) -> Result<ClassReport> {
    if !(1..=6).contains(&k) {
        return Err(out_of_range("k", k, 1, 6));
    }
    if n_max > 12 {
        return Err(out_of_range("n_max", n_max, 0, 12));
    }
    let classes = symmetry_classes(k);
    let ns: Vec<usize> = (k + 1..=n_max).collect();
    let jobs: Vec<(Permutation, usize)> = classes
        .iter()
        .flat_map(|c| ns.iter().map(move |&n| (c[0].clone(), n)))
        .collect();
    let counts = counter.count_many(&jobs);
    let mut groups: BTreeMap<Vec<u64>, Vec<Vec<Permutation>>> = BTreeMap::new();
    for (c, chunk) in classes.iter().zip(counts.chunks(ns.len().max(1))) {
        let vector = if ns.is_empty() { vec![] } else { chunk.to_vec() };
        groups.entry(vector).or_default().push(c.clone());
    }
    Ok(ClassReport {
        k,
        n_range: (k + 1, n_max),
        symmetry_classes: classes,
        groups: groups
            .into_iter()
            .map(|(counts, classes)| CountGroup { classes, counts })
            .collect(),
    })
}

/// The four reference count tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::T1, TableId::T2, TableId::T3, TableId::T4];

    pub fn describe(self) -> &'static str {
        match self {
            TableId::T1 => "patterns of length 4",
            TableId::T2 => "involutions of length 5",
            TableId::T3 => "non-involutions of length 5",
            TableId::T4 => "length-6 classes with the counts of 123456",
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T1" | "1" => Ok(TableId::T1),
            "T2" | "2" => Ok(TableId::T2),
            "T3" | "3" => Ok(TableId::T3),
            "T4" | "4" => Ok(TableId::T4),
            _ => Err(Error::Parse(format!("unknown table {s:?}; expected T1..T4"))),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One row of a reference table: symmetry classes sharing the row's values.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GoldenRow {
    pub classes: Vec<Vec<Permutation>>,
    pub values: Vec<u64>,
}

/// A published cell known to be misprinted, with the value an independent
/// recount gives.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct Erratum {
    pub class: String,
    pub n: usize,
    pub published: u64,
    pub recomputed: u64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GoldenTable {
    pub n_min: usize,
    pub n_max: usize,
    pub rows: Vec<GoldenRow>,
    #[serde(default)]
    pub errata: Vec<Erratum>,
}

impl GoldenTable {
    pub fn ns(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min..=self.n_max
    }

    pub fn value(&self, row: usize, n: usize) -> u64 {
        self.rows[row].values[n - self.n_min]
    }
}

/// Reference values shipped with the crate.
pub fn golden_table(which: TableId) -> GoldenTable {
    let mut all: BTreeMap<String, GoldenTable> =
        serde_json::from_str(GOLDEN).expect("embedded table data is valid");
    all.remove(&which.to_string()).expect("every table is present")
}

/// A table cell that disagrees with the reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub class: String,
    pub n: usize,
    pub computed: u64,
    pub expected: u64,
}

impl fmt::Display for CellMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={}: computed {}, expected {}",
            self.class, self.n, self.computed, self.expected
        )
    }
}

/// Computed cells with their disagreements. A cell matching a recorded
/// erratum goes to `errata`, not `mismatches`.
#[derive(Clone, Debug)]
pub struct TableComputation {
    pub table: CountTable,
    pub mismatches: Vec<CellMismatch>,
    pub errata: Vec<Erratum>,
}

/// Computes the cells of a table for `n <= n_max` (capped at the table's
/// own range), one count per listed symmetry class keyed by its least
/// member, and diffs them against the reference.
pub fn compute_table(which: TableId, n_max: Option<usize>, counter: &Counter) -> TableComputation {
    let golden = golden_table(which);
    let hi = n_max.map_or(golden.n_max, |m| m.min(golden.n_max));
    let mut cells = Vec::new();
    for (r, row) in golden.rows.iter().enumerate() {
        for class in &row.classes {
            let rep = class.iter().min().expect("nonempty class").clone();
            for n in golden.n_min..=hi {
                cells.push((r, rep.clone(), n));
            }
        }
    }
    let jobs: Vec<(Permutation, usize)> = cells.iter().map(|(_, p, n)| (p.clone(), *n)).collect();
    let counts = counter.count_many(&jobs);
    let mut table = CountTable::default();
    let mut mismatches = Vec::new();
    let mut errata = Vec::new();
    for ((r, rep, n), count) in cells.into_iter().zip(counts) {
        let expected = golden.value(r, n);
        let class = rep.to_string();
        let erratum = golden
            .errata
            .iter()
            .find(|e| e.class == class && e.n == n && e.published == expected);
        match erratum {
            Some(e) if count == e.recomputed => errata.push(e.clone()),
            _ if count != expected => mismatches.push(CellMismatch {
                class: class.clone(),
                n,
                computed: count,
                expected,
            }),
            _ => {}
        }
        table.insert(class, n, count);
    }
    TableComputation {
        table,
        mismatches,
        errata,
    }
}

/// Recomputes a whole table, failing on any cell that differs from the
/// reference other than a recorded erratum.
pub fn reproduce_table(which: TableId, counter: &Counter) -> Result<CountTable> {
    let done = compute_table(which, None, counter);
    if done.mismatches.is_empty() {
        Ok(done.table)
    } else {
        Err(Error::TableMismatch {
            table: which.to_string(),
            cells: done.mismatches.iter().map(|m| m.to_string()).collect(),
        })
    }
}

/// Renders computed cells in the reference layout: one line per listed
/// symmetry class, rows of the same reference row kept together.
pub fn render_table(which: TableId, table: &CountTable) -> String {
    let golden = golden_table(which);
    let ns: Vec<usize> = golden
        .ns()
        .filter(|&n| table.iter().any(|(_, m, _)| m == n))
        .collect();
    let width = golden
        .rows
        .iter()
        .flat_map(|r| r.classes.iter().map(|c| class_label(c).len()))
        .max()
        .unwrap_or(0);
    let mut out = format!("{which}: {}\n", which.describe());
    out.push_str(&format!("{:<width$}", "class"));
    for n in &ns {
        out.push_str(&format!(" {:>6}", format!("n={n}")));
    }
    out.push('\n');
    for row in &golden.rows {
        for class in &row.classes {
            let rep = class.iter().min().expect("nonempty").to_string();
            out.push_str(&format!("{:<width$}", class_label(class)));
            for &n in &ns {
                let cell = table.get(&rep, n).map_or("-".to_string(), |c| c.to_string());
                out.push_str(&format!(" {cell:>6}"));
            }
            out.push('\n');
        }
        out.push_str(&"-".repeat(width + 7 * ns.len()));
        out.push('\n');
    }
    out
}

/// One comparison of two counts at a fixed `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub left: Permutation,
    pub right: Permutation,
    pub n: usize,
    pub lhs: u64,
    pub rhs: u64,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrefixExchangeReport {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub k_max: usize,
    pub n_max: usize,
    pub comparisons: Vec<Comparison>,
}

impl PrefixExchangeReport {
    pub fn violations(&self) -> Vec<&Comparison> {
        self.comparisons.iter().filter(|c| !c.equal()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "prefix exchange {} <-> {}, length <= {}, n <= {}: {} comparisons, {} violations\n",
            self.alpha,
            self.beta,
            self.k_max,
            self.n_max,
            self.comparisons.len(),
            self.violations().len()
        );
        for c in self.violations() {
            out.push_str(&format!(
                "  n={} I({})={} I({})={}\n",
                c.n, c.left, c.lhs, c.right, c.rhs
            ));
        }
        out
    }
}

/// Compares `I_n(ατ)` with `I_n(βτ)` for every ordering `τ` of
/// `j+1..=k`, `j < k <= k_max`, `k <= n <= n_max`.
pub fn verify_prefix_exchange(
    alpha: &Permutation,
    beta: &Permutation,
    k_max: usize,
    n_max: usize,
    counter: &Counter,
) -> Result<PrefixExchangeReport> {
    for p in [alpha, beta] {
        if !p.is_involution() {
            return Err(Error::InvalidPattern(format!("{p} is not an involution")));
        }
    }
    if alpha.len() != beta.len() {
        return Err(Error::InvalidPattern(format!(
            "{alpha} and {beta} have different lengths"
        )));
    }
    let j = alpha.len();
    let mut pairs = Vec::new();
    for k in j + 1..=k_max {
        for tau in permutations(k - j) {
            let suffix: Vec<usize> = tau.values().iter().map(|v| v + j).collect();
            pairs.push((alpha.with_suffix(&suffix)?, beta.with_suffix(&suffix)?));
        }
    }
    let mut jobs = Vec::new();
    let mut keys = Vec::new();
    for (l, r) in &pairs {
        for n in l.len()..=n_max {
            jobs.push((l.clone(), n));
            jobs.push((r.clone(), n));
            keys.push((l.clone(), r.clone(), n));
        }
    }
    let counts = counter.count_many(&jobs);
    let comparisons = keys
        .into_iter()
        .zip(counts.chunks(2))
        .map(|((left, right, n), c)| Comparison {
            left,
            right,
            n,
            lhs: c[0],
            rhs: c[1],
        })
        .collect();
    Ok(PrefixExchangeReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        k_max,
        n_max,
        comparisons,
    })
}

/// `μ_sym(12…k)` against `μ_sym(k…21)` on one shape.
#[derive(Clone, Debug, Serialize)]
pub struct ShapeComparison {
    pub shape: crate::board::Shape,
    pub k: usize,
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

/// A single count quoted for reference.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub pattern: Permutation,
    pub n: usize,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n_max: usize,
    pub pairs: Vec<Comparison>,
    pub shapes: Vec<ShapeComparison>,
    pub witnesses: Vec<Witness>,
}

/// Pattern pairs whose counts agree on every computed value but whose
/// equivalence is open.
pub const CONJECTURED_PAIRS: [(&str, &str); 4] = [
    ("12345", "43215"),
    ("12345", "45312"),
    ("123456", "456123"),
    ("123456", "564312"),
];

/// Isolated counts: a length-6 pattern beating 123456 at n = 8, and two
/// length-6 patterns differing at n = 10.
pub const WITNESSES: [(&str, usize); 4] = [
    ("453126", 8),
    ("123456", 8),
    ("231564", 10),
    ("312564", 10),
];

impl ScanReport {
    pub fn to_text(&self) -> String {
        let mut out = String::from("pattern pairs (report only):\n");
        for c in &self.pairs {
            out.push_str(&format!(
                "  n={:<2} I({})={:<6} I({})={:<6} {}\n",
                c.n,
                c.left,
                c.lhs,
                c.right,
                c.rhs,
                if c.equal() { "equal" } else { "UNEQUAL" }
            ));
        }
        let unequal = self.shapes.iter().filter(|s| !s.equal).count();
        out.push_str(&format!(
            "increasing vs decreasing on self-conjugate shapes: {} comparisons, {unequal} unequal\n",
            self.shapes.len()
        ));
        for s in self.shapes.iter().filter(|s| !s.equal) {
            out.push_str(&format!("  {} k={}: {} vs {}\n", s.shape, s.k, s.lhs, s.rhs));
        }
        out.push_str("witnesses:\n");
        for w in &self.witnesses {
            out.push_str(&format!("  I_{}({}) = {}\n", w.n, w.pattern, w.count));
        }
        out
    }
}

/// Evaluates the conjectured pairs for `len+1 <= n <= n_max`, the
/// increasing/decreasing comparison on self-conjugate shapes with side at
/// most `max_side` and `2 <= k <= 4`, and the witness counts (those with
/// `n <= n_max`).
pub fn scan_conjectures(n_max: usize, max_side: usize, counter: &Counter) -> Result<ScanReport> {
    if n_max > 12 {
        return Err(out_of_range("n_max", n_max, 0, 12));
    }
    let mut keys = Vec::new();
    let mut jobs = Vec::new();
    for (l, r) in CONJECTURED_PAIRS {
        let (l, r): (Permutation, Permutation) = (l.parse()?, r.parse()?);
        for n in l.len() + 1..=n_max {
            jobs.push((l.clone(), n));
            jobs.push((r.clone(), n));
            keys.push((l.clone(), r.clone(), n));
        }
    }
    let witness_jobs: Vec<(Permutation, usize)> = WITNESSES
        .iter()
        .filter(|(_, n)| *n <= n_max)
        .map(|(p, n)| Ok((p.parse()?, *n)))
        .collect::<Result<_>>()?;
    let n_pairs = jobs.len();
    jobs.extend(witness_jobs.iter().cloned());
    let counts = counter.count_many(&jobs);
    let pairs = keys
        .into_iter()
        .zip(counts[..n_pairs].chunks(2))
        .map(|((left, right, n), c)| Comparison {
            left,
            right,
            n,
            lhs: c[0],
            rhs: c[1],
        })
        .collect();
    let witnesses = witness_jobs
        .into_iter()
        .zip(&counts[n_pairs..])
        .map(|((pattern, n), &count)| Witness { pattern, n, count })
        .collect();
    let mut shapes = Vec::new();
    for shape in enumerate_self_conjugate_shapes(max_side) {
        for k in 2..=4 {
            let lhs = lambda_sym(&shape, &PatternSet::single(Permutation::identity(k))?)?;
            let rhs = lambda_sym(&shape, &PatternSet::single(Permutation::decreasing(k))?)?;
            shapes.push(ShapeComparison {
                shape: shape.clone(),
                k,
                lhs,
                rhs,
                equal: lhs == rhs,
            });
        }
    }
    Ok(ScanReport {
        n_max,
        pairs,
        shapes,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn class_counts() {
        let sizes: Vec<usize> = (1..=5).map(|k| symmetry_classes(k).len()).collect();
        // the two length-5 tables list 16 and 29 classes
        assert_eq!(sizes, vec![1, 2, 4, 13, 45]);
        let c4 = symmetry_classes(4);
        assert!(c4.contains(&vec![p("1342"), p("1423"), p("2314"), p("3124")]));
    }

    #[test]
    fn length_three_groups() {
        let r = classify_sk(3, 8, &Counter::default()).unwrap();
        let groups: Vec<Vec<String>> = r
            .groups
            .iter()
            .map(|g| g.classes.iter().flatten().map(|p| p.to_string()).collect())
            .collect();
        assert_eq!(groups.len(), 2);
        assert!(groups.contains(&vec!["123".into(), "132".into(), "213".into(), "321".into()]));
        assert!(groups.contains(&vec!["231".into(), "312".into()]));
        assert_eq!(classify_sk(1, 4, &Counter::default()).unwrap().groups.len(), 1);
        assert!(classify_sk(7, 8, &Counter::default()).is_err());
    }

    #[test]
    fn golden_classes_are_symmetry_classes() {
        for which in TableId::ALL {
            for row in golden_table(which).rows {
                for class in row.classes {
                    let orbit: Vec<Permutation> =
                        class[0].symmetry_class().into_iter().collect();
                    let mut sorted = class.clone();
                    sorted.sort();
                    assert_eq!(sorted, orbit, "{which}");
                }
            }
        }
    }

    #[test]
    fn table_prefix_matches() {
        let counter = Counter::default();
        for which in TableId::ALL {
            let golden = golden_table(which);
            let done = compute_table(which, Some(golden.n_min + 1), &counter);
            assert!(done.mismatches.is_empty(), "{:?}", done.mismatches);
            assert!(done.errata.is_empty());
            assert!(!done.table.is_empty());
            assert!(render_table(which, &done.table).starts_with(&format!("{which}:")));
        }
    }

    #[test]
    fn prefix_exchange_small() {
        let r = verify_prefix_exchange(&p("12"), &p("21"), 4, 7, &Counter::default()).unwrap();
        assert!(r.violations().is_empty());
        assert!(r
            .comparisons
            .iter()
            .any(|c| c.left == p("1243") && c.right == p("2143")));
        assert!(verify_prefix_exchange(&p("12"), &p("231"), 4, 6, &Counter::default()).is_err());
    }
}
