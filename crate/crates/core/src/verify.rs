//! Exhaustive verification sweeps. Each check produces flat records
//! `{check, parameters, lhs, rhs, pass}` so results can be diffed and
//! filtered.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::avoidance::{
    closed_form_123, closed_form_12345, closed_form_123456, closed_form_1234, closed_form_231,
    lambda_sym, PatternSet,
};
use crate::bijection::{
    class_decomposition, check_case_postconditions, f_stat, g_stat, hat, lambda_t,
    slide_inverse, slide_trace, Monotone, SuffixSet,
};
use crate::board::{
    enumerate_full_placements, enumerate_self_conjugate_shapes, enumerate_shapes,
    enumerate_symmetric_full_placements, BoardPlacement, Shape,
};
use crate::classify::{verify_prefix_exchange, Counter};
use crate::error::{Error, Result};
use crate::perm::{permutations, Permutation};
use crate::tableau::{check_reversal_property, rsk, rsk_inverse, standard_tableaux};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub parameters: Value,
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

impl CheckRecord {
    fn new(check: Check, parameters: Value, lhs: u64, rhs: u64, pass: bool) -> Self {
        CheckRecord {
            check: check.name().to_string(),
            parameters,
            lhs,
            rhs,
            pass,
        }
    }

    fn equal(check: Check, parameters: Value, lhs: u64, rhs: u64) -> Self {
        Self::new(check, parameters, lhs, rhs, lhs == rhs)
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} lhs={} rhs={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.parameters,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Containment of some `στ_i` against containment of `σ` in the
    /// reduced board, per placement.
    Reduction,
    /// Class sizes and avoider counts per class, and the resulting equality
    /// of `μ_sym(T_α)` and `μ_sym(T_β)`.
    ClassDecomposition,
    /// Exactly one full placement avoids 12 and exactly one avoids 21.
    UniqueMonotone,
    /// Windowed 123 and 321 counts on square boards.
    SquareBase,
    /// Top-row dot counts of 123- and 321-avoiders on non-square shapes.
    TopRow,
    /// Top-row counts equal windowed counts on the hatted shape.
    FgLink,
    /// The windowed-count recurrence through `hat`.
    GRecurrence,
    /// The window slide is a bijection satisfying its case postconditions.
    Slide,
    /// Prefix 12 exchanged with 21.
    Prefix12,
    /// Prefix 123 exchanged with 321.
    Prefix123,
    /// RSK bijectivity, involutions, evacuation and reversal.
    Rsk,
    /// Brute-force counts against closed forms.
    ClosedForms,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Reduction,
        Check::ClassDecomposition,
        Check::UniqueMonotone,
        Check::SquareBase,
        Check::TopRow,
        Check::FgLink,
        Check::GRecurrence,
        Check::Slide,
        Check::Prefix12,
        Check::Prefix123,
        Check::Rsk,
        Check::ClosedForms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Reduction => "reduction",
            Check::ClassDecomposition => "class-decomposition",
            Check::UniqueMonotone => "unique-monotone",
            Check::SquareBase => "square-base",
            Check::TopRow => "top-row",
            Check::FgLink => "fg-link",
            Check::GRecurrence => "g-recurrence",
            Check::Slide => "slide",
            Check::Prefix12 => "prefix-12",
            Check::Prefix123 => "prefix-123",
            Check::Rsk => "rsk",
            Check::ClosedForms => "closed-forms",
        }
    }

    /// Size parameter used when none is given: the largest board side for
    /// shape sweeps, the largest `n` for count sweeps.
    pub fn default_size(self) -> usize {
        match self {
            Check::Reduction => 5,
            Check::ClassDecomposition => 4,
            Check::UniqueMonotone => 5,
            Check::SquareBase => 7,
            Check::TopRow | Check::FgLink | Check::GRecurrence | Check::Slide => 6,
            Check::Prefix12 | Check::Prefix123 => 9,
            Check::Rsk => 7,
            Check::ClosedForms => 10,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                Error::Parse(format!("unknown check {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Runs one check with the given size (see [`Check::default_size`]).
pub fn run_check(check: Check, size: Option<usize>, counter: &Counter) -> Result<Vec<CheckRecord>> {
    let size = size.unwrap_or(check.default_size());
    match check {
        Check::Reduction => reduction(size),
        Check::ClassDecomposition => class_decomposition_sweep(size),
        Check::UniqueMonotone => unique_monotone(size),
        Check::SquareBase => square_base(size),
        Check::TopRow => top_row(size),
        Check::FgLink => fg_link(size),
        Check::GRecurrence => g_recurrence(size),
        Check::Slide => slide(size),
        Check::Prefix12 => prefix(check, "12", "21", size, counter),
        Check::Prefix123 => prefix(check, "123", "321", size, counter),
        Check::Rsk => rsk_checks(size),
        Check::ClosedForms => Ok(closed_forms(size, counter)),
    }
}

/// Suffix sets of at most two suffixes, each of length at most two.
pub fn small_suffix_sets(j: usize) -> Vec<SuffixSet> {
    SuffixSet::all_small(j, 2, 2)
}

fn reduction(max_side: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for mu in enumerate_self_conjugate_shapes(max_side) {
        let placements = enumerate_symmetric_full_placements(&mu)?;
        for sigma in ["1", "12", "21", "123", "321"] {
            let sigma: Permutation = sigma.parse()?;
            for t in small_suffix_sets(sigma.len()) {
                let full = t.with_prefix(&sigma)?;
                let (mut lhs, mut rhs, mut pass) = (0, 0, true);
                for p in &placements {
                    let a = full.patterns().iter().any(|q| p.contains(q));
                    let b = lambda_t(&mu, p, &t)?.induced.contains(&sigma);
                    lhs += a as u64;
                    rhs += b as u64;
                    pass &= a == b;
                }
                out.push(CheckRecord::new(
                    Check::Reduction,
                    json!({"shape": mu, "sigma": sigma, "suffixes": t.to_string()}),
                    lhs,
                    rhs,
                    pass,
                ));
            }
        }
    }
    Ok(out)
}

fn class_decomposition_sweep(max_side: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for mu in enumerate_self_conjugate_shapes(max_side) {
        for (alpha, beta) in [("12", "21"), ("123", "321")] {
            let (alpha, beta): (Permutation, Permutation) = (alpha.parse()?, beta.parse()?);
            for t in small_suffix_sets(alpha.len()) {
                let classes = class_decomposition(&mu, &t, &alpha, &beta)?;
                let lhs: u64 = classes.iter().map(|c| c.avoid_alpha).sum();
                let rhs: u64 = classes.iter().map(|c| c.avoid_beta).sum();
                let pass = lhs == rhs && classes.iter().all(|c| c.holds());
                out.push(CheckRecord::new(
                    Check::ClassDecomposition,
                    json!({"shape": mu, "alpha": alpha, "beta": beta,
                           "suffixes": t.to_string(), "classes": classes.len()}),
                    lhs,
                    rhs,
                    pass,
                ));
            }
        }
    }
    Ok(out)
}

fn unique_monotone(max_side: usize) -> Result<Vec<CheckRecord>> {
    let inc = Permutation::identity(2);
    let dec = Permutation::decreasing(2);
    let mut out = Vec::new();
    for shape in enumerate_shapes(max_side) {
        let full = enumerate_full_placements(&shape);
        let avoid_inc: Vec<&BoardPlacement> = full.iter().filter(|p| p.avoids(&inc)).collect();
        let avoid_dec: Vec<&BoardPlacement> = full.iter().filter(|p| p.avoids(&dec)).collect();
        let expected = usize::from(!full.is_empty());
        let mut pass = avoid_inc.len() == expected && avoid_dec.len() == expected;
        if shape.is_self_conjugate() {
            // the unique avoider equals its reflection
            pass &= avoid_inc.iter().chain(&avoid_dec).all(|p| p.is_symmetric());
            let sym_inc = lambda_sym(&shape, &PatternSet::single(inc.clone())?)?;
            let sym_dec = lambda_sym(&shape, &PatternSet::single(dec.clone())?)?;
            pass &= sym_inc == sym_dec && sym_inc as usize == expected;
        }
        out.push(CheckRecord::new(
            Check::UniqueMonotone,
            json!({"shape": shape, "full_placements": full.len()}),
            avoid_inc.len() as u64,
            avoid_dec.len() as u64,
            pass,
        ));
    }
    Ok(out)
}

fn square_base(max_n: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let sq = Shape::square(n);
        for i in 0..=n {
            out.push(CheckRecord::equal(
                Check::SquareBase,
                json!({"n": n, "i": i}),
                g_stat(&sq, Monotone::Increasing, i)?,
                g_stat(&sq, Monotone::Decreasing, i)?,
            ));
        }
    }
    Ok(out)
}

fn non_square(max_side: usize) -> impl Iterator<Item = Shape> {
    enumerate_self_conjugate_shapes(max_side)
        .into_iter()
        .filter(|s| !s.is_empty() && !s.is_square())
}

/// Non-square shapes with at least one full placement. On the others the
/// hatted shape can still carry placements while the shape itself has
/// none, so the deletion argument does not apply.
fn non_square_placeable(max_side: usize) -> impl Iterator<Item = Shape> {
    non_square(max_side).filter(Shape::admits_full_placement)
}

fn top_row(max_side: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for lambda in non_square(max_side) {
        for i in 1..=lambda.last_part() {
            out.push(CheckRecord::equal(
                Check::TopRow,
                json!({"shape": lambda, "i": i}),
                f_stat(&lambda, Monotone::Increasing, i)?,
                f_stat(&lambda, Monotone::Decreasing, i)?,
            ));
        }
    }
    Ok(out)
}

fn fg_link(max_side: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for lambda in non_square_placeable(max_side) {
        let hatted = hat(&lambda)?;
        if hatted.is_empty() {
            continue;
        }
        for i in 1..=lambda.last_part() {
            for m in [Monotone::Increasing, Monotone::Decreasing] {
                out.push(CheckRecord::equal(
                    Check::FgLink,
                    json!({"shape": lambda, "pattern": m, "i": i, "hat": hatted}),
                    f_stat(&lambda, m, i)?,
                    g_stat(&hatted, m, i - 1)?,
                ));
            }
        }
    }
    Ok(out)
}

fn g_recurrence(max_side: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for mu in non_square_placeable(max_side) {
        let hatted = hat(&mu)?;
        for i in 1..=mu.last_part() {
            for m in [Monotone::Increasing, Monotone::Decreasing] {
                let rhs = (i..=mu.last_part())
                    .map(|j| g_stat(&hatted, m, j - 1))
                    .sum::<Result<u64>>()?;
                out.push(CheckRecord::equal(
                    Check::GRecurrence,
                    json!({"shape": mu, "pattern": m, "i": i, "hat": hatted}),
                    g_stat(&mu, m, i)?,
                    rhs,
                ));
            }
        }
    }
    Ok(out)
}

/// 321-avoiding symmetric full placements with no 21 in columns
/// `from..from+j-1`, by brute-force filtering.
fn slide_side(lambda: &Shape, from: usize, j: usize) -> Result<Vec<BoardPlacement>> {
    let dec3 = Permutation::decreasing(3);
    let dec2 = Permutation::decreasing(2);
    Ok(enumerate_symmetric_full_placements(lambda)?
        .into_iter()
        .filter(|p| p.avoids(&dec3) && p.restrict_columns(from, from + j - 1).avoids(&dec2))
        .collect())
}

/// Verifies the slide for one `(λ, i, j)`: both sides have equal size,
/// every input maps into the target with its case postconditions, the map
/// is injective, its image is the whole target, and the inverse undoes it.
pub fn slide_cell(lambda: &Shape, i: usize, j: usize) -> Result<CheckRecord> {
    let domain = slide_side(lambda, i, j)?;
    let target: BTreeSet<BoardPlacement> = slide_side(lambda, i + 1, j)?.into_iter().collect();
    let dec3 = Permutation::decreasing(3);
    let mut image = BTreeSet::new();
    let mut pass = true;
    for p in &domain {
        let trace = slide_trace(p, i, j)?;
        let q = &trace.output;
        pass &= q.is_symmetric() && q.is_full() && q.avoids(&dec3);
        pass &= target.contains(q);
        pass &= check_case_postconditions(&trace.context, trace.case, q).is_ok();
        pass &= slide_inverse(q, i, j).map_or(false, |back| back == *p);
        pass &= image.insert(q.clone());
    }
    pass &= image == target;
    Ok(CheckRecord::new(
        Check::Slide,
        json!({"shape": lambda, "i": i, "j": j}),
        domain.len() as u64,
        target.len() as u64,
        pass && domain.len() == target.len(),
    ))
}

fn slide(max_side: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for lambda in enumerate_self_conjugate_shapes(max_side) {
        let last = lambda.last_part();
        for i in 1..last {
            for j in 1..=last - i {
                out.push(slide_cell(&lambda, i, j)?);
            }
        }
    }
    Ok(out)
}

fn prefix(
    check: Check,
    alpha: &str,
    beta: &str,
    n_max: usize,
    counter: &Counter,
) -> Result<Vec<CheckRecord>> {
    let report = verify_prefix_exchange(&alpha.parse()?, &beta.parse()?, 5, n_max, counter)?;
    Ok(report
        .comparisons
        .into_iter()
        .map(|c| {
            CheckRecord::equal(
                check,
                json!({"left": c.left, "right": c.right, "n": c.n}),
                c.lhs,
                c.rhs,
            )
        })
        .collect())
}

fn rsk_checks(max_n: usize) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let perms = permutations(n);
        let mut pairs = BTreeSet::new();
        let mut round_trip = true;
        let mut diagonal = true;
        for w in &perms {
            let (p, q) = rsk(w);
            round_trip &= rsk_inverse(&p, &q)? == *w;
            diagonal &= (p == q) == w.is_involution();
            pairs.insert((p, q));
        }
        out.push(CheckRecord::new(
            Check::Rsk,
            json!({"property": "bijective", "n": n}),
            pairs.len() as u64,
            perms.len() as u64,
            round_trip && pairs.len() == perms.len(),
        ));
        let involutions = perms.iter().filter(|w| w.is_involution()).count() as u64;
        let equal_pairs = pairs.iter().filter(|(p, q)| p == q).count() as u64;
        out.push(CheckRecord::new(
            Check::Rsk,
            json!({"property": "equal-tableaux-iff-involution", "n": n}),
            equal_pairs,
            involutions,
            diagonal && equal_pairs == involutions,
        ));
    }
    for n in 0..=max_n + 1 {
        let tableaux = standard_tableaux(n);
        let fixed = tableaux
            .iter()
            .filter(|t| t.evacuation().evacuation() == **t)
            .count() as u64;
        out.push(CheckRecord::equal(
            Check::Rsk,
            json!({"property": "evacuation-involution", "n": n}),
            fixed,
            tableaux.len() as u64,
        ));
    }
    for n in 0..=max_n.saturating_sub(1) {
        let perms = permutations(n);
        let holds = perms.iter().filter(|w| check_reversal_property(w)).count() as u64;
        out.push(CheckRecord::equal(
            Check::Rsk,
            json!({"property": "reversal", "n": n}),
            holds,
            perms.len() as u64,
        ));
    }
    Ok(out)
}

/// Brute-force counts against each closed form; the two-formula families
/// run to `min(n_max, 10)`, the rest to `n_max`.
fn closed_forms(n_max: usize, counter: &Counter) -> Vec<CheckRecord> {
    type Form = fn(u64) -> num_bigint::BigUint;
    let forms: [(&str, Form, usize); 5] = [
        ("123", closed_form_123, n_max.min(10)),
        ("231", closed_form_231, n_max.min(10)),
        ("1234", closed_form_1234, n_max),
        ("12345", closed_form_12345, n_max),
        ("123456", closed_form_123456, n_max),
    ];
    let mut out = Vec::new();
    for (pattern, form, hi) in forms {
        let sigma: Permutation = pattern.parse().expect("valid pattern");
        for n in 1..=hi {
            let brute = counter.count_one(n, &sigma);
            let formula = u64::try_from(form(n as u64)).expect("fits in u64");
            out.push(CheckRecord::equal(
                Check::ClosedForms,
                json!({"pattern": sigma, "n": n}),
                brute,
                formula,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        let counter = Counter::default();
        for c in Check::ALL {
            let size = match c {
                Check::Prefix12 | Check::Prefix123 | Check::ClosedForms | Check::Rsk => 6,
                _ => 4,
            };
            let records = run_check(c, Some(size), &counter).unwrap();
            assert!(!records.is_empty(), "{c}");
            for r in &records {
                assert!(r.pass, "{r}");
            }
        }
    }
}
