//! Reductions and bijections on symmetric full placements.
//!
//! * [`lambda_t`] reduces a symmetric full placement to the self-conjugate
//!   board of boxes lying strictly southwest of an occurrence of one of a
//!   set of suffix patterns, and [`class_decomposition_check`] verifies the
//!   resulting partition of placements into classes.
//! * [`hat`], [`f_stat`] and [`g_stat`] are the shape trimming and top-row
//!   statistics used to compare 123- and 321-avoiders.
//! * [`slide_transform`] and [`slide_inverse`] move a 21-free window of
//!   columns one step to the right on 321-avoiding symmetric placements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::avoidance::{count_with_window, lambda_sym, PatternSet};
use crate::board::{enumerate_symmetric_full_placements, BoardPlacement, Shape};
use crate::error::{out_of_range, Error, Result};
use crate::occurrence::Matcher;
use crate::perm::{pattern_of_usize, Permutation};

/// Suffixes `τ_i`, each an ordering of `j+1..=k_i` with `k_i > j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuffixSet {
    j: usize,
    suffixes: Vec<Vec<usize>>,
}

impl SuffixSet {
    pub fn new(j: usize, suffixes: Vec<Vec<usize>>) -> Result<Self> {
        if j == 0 {
            return Err(Error::InvalidInput("prefix length j must be positive".into()));
        }
        if suffixes.is_empty() {
            return Err(Error::InvalidInput("suffix set is empty".into()));
        }
        for s in &suffixes {
            // empty suffixes are rejected: the southwest-of-occurrence
            // condition has no clear meaning for them
            if s.is_empty() {
                return Err(Error::InvalidInput("empty suffix".into()));
            }
            let k = j + s.len();
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted != (j + 1..=k).collect::<Vec<_>>() {
                return Err(Error::InvalidInput(format!(
                    "suffix {s:?} is not an ordering of {}..={k}",
                    j + 1
                )));
            }
        }
        Ok(SuffixSet { j, suffixes })
    }

    /// Parses a comma-separated list of suffix words, e.g. `"54"` or
    /// `"43,435"` (entries of one suffix separated by spaces when any value
    /// exceeds 9).
    pub fn parse(j: usize, s: &str) -> Result<Self> {
        let suffixes = s
            .split(',')
            .map(|word| {
                let word = word.trim();
                if word.contains(' ') {
                    word.split_whitespace()
                        .map(|t| {
                            t.parse::<usize>()
                                .map_err(|_| Error::Parse(format!("bad suffix entry {t:?}")))
                        })
                        .collect::<Result<Vec<_>>>()
                } else {
                    word.chars()
                        .map(|c| {
                            c.to_digit(10)
                                .map(|d| d as usize)
                                .ok_or_else(|| Error::Parse(format!("bad suffix digit {c:?}")))
                        })
                        .collect::<Result<Vec<_>>>()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SuffixSet::new(j, suffixes)
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn suffixes(&self) -> &[Vec<usize>] {
        &self.suffixes
    }

    /// The patterns of the suffixes, relabelled to `1..`.
    pub fn suffix_patterns(&self) -> Vec<Permutation> {
        self.suffixes.iter().map(|s| pattern_of_usize(s)).collect()
    }

    /// `{σ τ_i}` for a prefix `σ` of length `j`.
    pub fn with_prefix(&self, sigma: &Permutation) -> Result<PatternSet> {
        if sigma.len() != self.j {
            return Err(Error::InvalidPattern(format!(
                "prefix {sigma} does not have length {}",
                self.j
            )));
        }
        PatternSet::new(
            self.suffixes
                .iter()
                .map(|s| sigma.with_suffix(s))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Every suffix set on prefix length `j` with at most `max_sets`
    /// suffixes, each of length at most `max_len`.
    pub fn all_small(j: usize, max_len: usize, max_sets: usize) -> Vec<SuffixSet> {
        let mut words: Vec<Vec<usize>> = Vec::new();
        for len in 1..=max_len {
            for p in crate::perm::permutations(len) {
                words.push(p.values().iter().map(|v| v + j).collect());
            }
        }
        let mut out = Vec::new();
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        fn step(
            j: usize,
            words: &[Vec<usize>],
            start: usize,
            max_sets: usize,
            chosen: &mut Vec<Vec<usize>>,
            out: &mut Vec<SuffixSet>,
        ) {
            if !chosen.is_empty() {
                out.push(SuffixSet::new(j, chosen.clone()).expect("valid suffixes"));
            }
            if chosen.len() == max_sets {
                return;
            }
            for w in start..words.len() {
                chosen.push(words[w].clone());
                step(j, words, w + 1, max_sets, chosen, out);
                chosen.pop();
            }
        }
        step(j, &words, 0, max_sets, &mut chosen, &mut out);
        out
    }
}

impl fmt::Display for SuffixSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .suffixes
            .iter()
            .map(|s| {
                if s.iter().all(|&v| v <= 9) {
                    s.iter().map(|v| v.to_string()).collect()
                } else {
                    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                }
            })
            .collect();
        write!(f, "j={}:{}", self.j, words.join(","))
    }
}

/// The reduced self-conjugate board with its induced symmetric full
/// placement. `kept_columns[a-1]` and `kept_rows[b-1]` give the column and
/// row of the parent board that box `(a, b)` came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedBoard {
    pub shape: Shape,
    pub induced: BoardPlacement,
    pub kept_columns: Vec<usize>,
    pub kept_rows: Vec<usize>,
}

impl ReducedBoard {
    /// Boxes of the parent board corresponding to boxes of `shape`.
    pub fn parent_boxes(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (b, &row) in self.kept_rows.iter().enumerate() {
            for &col in &self.kept_columns[..self.shape.row_len(b + 1)] {
                out.insert((col, row));
            }
        }
        out
    }

    /// Replaces the dots of `parent` inside the kept boxes with `inner`, a
    /// full placement on `shape`.
    pub fn lift(&self, parent: &BoardPlacement, inner: &BoardPlacement) -> Result<BoardPlacement> {
        if inner.shape() != &self.shape || !inner.is_full() {
            return Err(Error::InvalidPlacement(format!(
                "{inner} is not a full placement on {}",
                self.shape
            )));
        }
        let boxes = self.parent_boxes();
        let mut dots: Vec<_> = parent
            .dots()
            .iter()
            .copied()
            .filter(|d| !boxes.contains(d))
            .collect();
        dots.extend(
            inner
                .dots()
                .iter()
                .map(|&(a, b)| (self.kept_columns[a - 1], self.kept_rows[b - 1])),
        );
        BoardPlacement::new(parent.shape().clone(), dots)
    }
}

fn require_symmetric_full(mu: &Shape, p: &BoardPlacement) -> Result<()> {
    mu.require_self_conjugate()?;
    if p.shape() != mu {
        return Err(Error::InvalidPlacement(format!(
            "placement is on {}, expected {mu}",
            p.shape()
        )));
    }
    if !p.is_full() {
        return Err(Error::InvalidPlacement(format!("{p} is not full")));
    }
    if !p.is_symmetric() {
        return Err(Error::InvalidPlacement(format!("{p} is not symmetric")));
    }
    Ok(())
}

/// The self-conjugate `T`-shape of `(mu, p)` and the placement induced on
/// it.
///
/// A box `(x, y)` is taken when it lies strictly southwest of (to the left
/// of and below every dot of) an occurrence of some suffix pattern bounded
/// by a rectangular subshape of `mu`, or when its reflection does. Rows and
/// columns of that region holding no dot are then deleted.
pub fn lambda_t(mu: &Shape, p: &BoardPlacement, t: &SuffixSet) -> Result<ReducedBoard> {
    require_symmetric_full(mu, p)?;
    let (xs, ys): (Vec<usize>, Vec<usize>) = p.dots().iter().copied().unzip();
    // (min column, min height) over every occurrence
    let mut corners: BTreeSet<(usize, usize)> = BTreeSet::new();
    for pattern in t.suffix_patterns() {
        Matcher::new(pattern.values()).visit(&xs, &ys, Some(mu), &mut |pos| {
            let x = xs[pos[0]];
            let y = pos.iter().map(|&q| ys[q]).min().expect("nonempty");
            corners.insert((x, y));
            true
        });
    }
    let southwest = |x: usize, y: usize| corners.iter().any(|&(cx, cy)| x < cx && y < cy);
    let shaded = |x: usize, y: usize| southwest(x, y) || southwest(y, x);

    let kept_columns: Vec<usize> = p
        .dots()
        .iter()
        .filter(|&&(x, y)| shaded(x, y))
        .map(|d| d.0)
        .collect();
    let mut kept_rows: Vec<usize> = p
        .dots()
        .iter()
        .filter(|&&(x, y)| shaded(x, y))
        .map(|d| d.1)
        .collect();
    kept_rows.sort_unstable();

    let parts: Vec<usize> = kept_rows
        .iter()
        .map(|&row| kept_columns.iter().filter(|&&col| shaded(col, row)).count())
        .collect();
    let shape = Shape::new(parts)?;
    debug_assert!(shape.is_self_conjugate());
    let dots = p
        .dots()
        .iter()
        .filter(|&&(x, y)| shaded(x, y))
        .map(|&(x, y)| {
            let a = kept_columns.binary_search(&x).expect("kept") + 1;
            let b = kept_rows.binary_search(&y).expect("kept") + 1;
            (a, b)
        })
        .collect();
    let induced = BoardPlacement::new(shape.clone(), dots)?;
    debug_assert!(induced.is_full() && induced.is_symmetric());
    Ok(ReducedBoard {
        shape,
        induced,
        kept_columns,
        kept_rows,
    })
}

fn require_involution(sigma: &Permutation) -> Result<()> {
    if sigma.is_involution() {
        Ok(())
    } else {
        Err(Error::InvalidPattern(format!("{sigma} is not an involution")))
    }
}

/// Both sides of the reduction equivalence: whether `p` contains some
/// `σ τ_i`, and whether the induced placement contains `σ`.
pub fn reduction_sides(
    mu: &Shape,
    p: &BoardPlacement,
    sigma: &Permutation,
    t: &SuffixSet,
) -> Result<(bool, bool)> {
    require_involution(sigma)?;
    let full = t.with_prefix(sigma)?;
    let reduced = lambda_t(mu, p, t)?;
    let lhs = full.patterns().iter().any(|q| p.contains(q));
    let rhs = reduced.induced.contains(sigma);
    Ok((lhs, rhs))
}

pub fn verify_reduction_equivalence(
    mu: &Shape,
    p: &BoardPlacement,
    sigma: &Permutation,
    t: &SuffixSet,
) -> Result<bool> {
    let (lhs, rhs) = reduction_sides(mu, p, sigma, t)?;
    Ok(lhs == rhs)
}

/// Per-class tallies gathered by [`class_decomposition`].
#[derive(Clone, Debug, Serialize)]
pub struct ClassTally {
    pub reduced_shape: Shape,
    pub size: u64,
    pub reduced_placements: u64,
    pub avoid_alpha: u64,
    pub reduced_avoid_alpha: u64,
    pub avoid_beta: u64,
    pub reduced_avoid_beta: u64,
}

impl ClassTally {
    pub fn holds(&self) -> bool {
        self.size == self.reduced_placements
            && self.avoid_alpha == self.reduced_avoid_alpha
            && self.avoid_beta == self.reduced_avoid_beta
    }
}

/// Groups the symmetric full placements on `mu` by their dots outside the
/// boxes of their reduced board, and tallies each class.
pub fn class_decomposition(
    mu: &Shape,
    t: &SuffixSet,
    alpha: &Permutation,
    beta: &Permutation,
) -> Result<Vec<ClassTally>> {
    require_involution(alpha)?;
    require_involution(beta)?;
    let t_alpha = t.with_prefix(alpha)?;
    let t_beta = t.with_prefix(beta)?;
    let avoids = |p: &BoardPlacement, ts: &PatternSet| ts.patterns().iter().all(|q| p.avoids(q));

    type Key = (Vec<(usize, usize)>, Vec<(usize, usize)>);
    let mut classes: BTreeMap<Key, (Shape, u64, u64, u64)> = BTreeMap::new();
    for p in enumerate_symmetric_full_placements(mu)? {
        let reduced = lambda_t(mu, &p, t)?;
        let boxes = reduced.parent_boxes();
        let outside: Vec<_> = p
            .dots()
            .iter()
            .copied()
            .filter(|d| !boxes.contains(d))
            .collect();
        let entry = classes
            .entry((boxes.into_iter().collect(), outside))
            .or_insert((reduced.shape.clone(), 0, 0, 0));
        entry.1 += 1;
        entry.2 += avoids(&p, &t_alpha) as u64;
        entry.3 += avoids(&p, &t_beta) as u64;
    }
    let alpha_set = PatternSet::single(alpha.clone())?;
    let beta_set = PatternSet::single(beta.clone())?;
    classes
        .into_values()
        .map(|(shape, size, a, b)| {
            Ok(ClassTally {
                reduced_placements: enumerate_symmetric_full_placements(&shape)?.len() as u64,
                reduced_avoid_alpha: lambda_sym(&shape, &alpha_set)?,
                reduced_avoid_beta: lambda_sym(&shape, &beta_set)?,
                reduced_shape: shape,
                size,
                avoid_alpha: a,
                avoid_beta: b,
            })
        })
        .collect()
}

/// True when every class has as many members as its reduced board has
/// symmetric full placements, and the `T_α` / `T_β` avoiders in the class
/// match the `α` / `β` avoiders on the reduced board.
pub fn class_decomposition_check(
    mu: &Shape,
    t: &SuffixSet,
    alpha: &Permutation,
    beta: &Permutation,
) -> Result<bool> {
    if alpha.len() != t.j() || beta.len() != t.j() {
        return Err(Error::InvalidPattern(format!(
            "prefixes {alpha} and {beta} must have length {}",
            t.j()
        )));
    }
    Ok(class_decomposition(mu, t, alpha, beta)?
        .iter()
        .all(ClassTally::holds))
}

/// Removes the first and last columns and the bottom and top rows of a
/// non-square self-conjugate shape.
pub fn hat(lambda: &Shape) -> Result<Shape> {
    lambda.require_self_conjugate()?;
    if lambda.is_empty() {
        return Err(Error::InvalidShape("hat of the empty shape".into()));
    }
    if lambda.is_square() {
        return Err(Error::InvalidShape(format!("{lambda} is a square")));
    }
    let k = lambda.len();
    let parts = lambda.parts()[1..k - 1]
        .iter()
        .map(|&p| p - 1 - usize::from(p == k))
        .filter(|&p| p > 0)
        .collect();
    Shape::new(parts)
}

/// 123 or 321, the two monotone patterns of length three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Monotone {
    #[serde(rename = "123")]
    Increasing,
    #[serde(rename = "321")]
    Decreasing,
}

impl Monotone {
    pub fn pattern(self) -> Permutation {
        match self {
            Monotone::Increasing => Permutation::identity(3),
            Monotone::Decreasing => Permutation::decreasing(3),
        }
    }

    /// 12 or 21.
    pub fn flank(self) -> Permutation {
        match self {
            Monotone::Increasing => Permutation::identity(2),
            Monotone::Decreasing => Permutation::decreasing(2),
        }
    }
}

impl FromStr for Monotone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "123" => Ok(Monotone::Increasing),
            "321" => Ok(Monotone::Decreasing),
            _ => Err(Error::Parse(format!("expected 123 or 321, got {s:?}"))),
        }
    }
}

impl fmt::Display for Monotone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pattern())
    }
}

/// Symmetric full placements avoiding the pattern with their top-row dot
/// at column `i` (123) or `λ_k + 1 - i` (321).
pub fn f_stat(lambda: &Shape, pattern: Monotone, i: usize) -> Result<u64> {
    lambda.require_self_conjugate()?;
    let last = lambda.last_part();
    if i < 1 || i > last {
        return Err(out_of_range("i", i, 1, last));
    }
    let k = lambda.len();
    let column = match pattern {
        Monotone::Increasing => i,
        Monotone::Decreasing => last + 1 - i,
    };
    let sigma = pattern.pattern();
    Ok(enumerate_symmetric_full_placements(lambda)?
        .iter()
        .filter(|p| p.height_in_column(column) == Some(k) && p.avoids(&sigma))
        .count() as u64)
}

/// Symmetric full placements avoiding the pattern everywhere and its
/// length-two prefix in the first `i` columns (123) or in columns
/// `λ_k+1-i..=λ_k` (321). `i = 0` imposes no window.
pub fn g_stat(lambda: &Shape, pattern: Monotone, i: usize) -> Result<u64> {
    lambda.require_self_conjugate()?;
    let last = lambda.last_part();
    if i > last {
        return Err(out_of_range("i", i, 0, last));
    }
    let (from, to) = match pattern {
        Monotone::Increasing => (1, i),
        Monotone::Decreasing => (last + 1 - i, last),
    };
    count_with_window(
        lambda,
        &PatternSet::single(pattern.pattern())?,
        &pattern.flank(),
        from,
        to,
    )
}

/// Cases of the window slide, named by where the dot of column `i+j` sits
/// (`w` is its height). Labels I–VI follow the order of [`SlideCase::label`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SlideCase {
    /// `w` exceeds every height in the window: nothing moves.
    Unchanged,
    /// `w > i+j`.
    AboveWindow,
    /// `w = i+j`: the dot of column `i+j` is on the diagonal.
    DiagonalEnd,
    /// `w` is the first above-diagonal column of the window, no diagonal
    /// dots in the window.
    MirrorEnd,
    /// As [`SlideCase::MirrorEnd`] but with diagonal dots in the window.
    MirrorEndWithDiagonal,
    /// `w < i`.
    BelowWindow,
}

impl SlideCase {
    pub fn label(self) -> &'static str {
        match self {
            SlideCase::Unchanged => "I",
            SlideCase::AboveWindow => "II",
            SlideCase::DiagonalEnd => "III",
            SlideCase::MirrorEnd => "IV",
            SlideCase::MirrorEndWithDiagonal => "V",
            SlideCase::BelowWindow => "VI",
        }
    }
}

impl fmt::Display for SlideCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Dots of the window `i..i+j-1` split by position relative to the
/// diagonal, with the height `w` of the dot in column `i+j`. Dots are
/// `(column, height)`, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlideContext {
    pub i: usize,
    pub j: usize,
    pub below: Vec<(usize, usize)>,
    pub on: Vec<(usize, usize)>,
    pub above: Vec<(usize, usize)>,
    pub w: usize,
}

impl SlideContext {
    /// Extracts the context after checking every precondition of the slide:
    /// self-conjugate shape, `1 ≤ i`, `1 ≤ j`, `i + j ≤ λ_k`, a symmetric
    /// full 321-avoiding placement, and no 21 among columns `i..i+j-1`.
    pub fn from_placement(p: &BoardPlacement, i: usize, j: usize) -> Result<Self> {
        let heights = check_slide_domain(p, i, j, i)?;
        Ok(Self::from_heights(&heights, i, j))
    }

    fn from_heights(h: &[usize], i: usize, j: usize) -> Self {
        let mut ctx = SlideContext {
            i,
            j,
            below: vec![],
            on: vec![],
            above: vec![],
            w: h[i + j - 1],
        };
        for c in i..i + j {
            let y = h[c - 1];
            let class = match y.cmp(&c) {
                std::cmp::Ordering::Less => &mut ctx.below,
                std::cmp::Ordering::Equal => &mut ctx.on,
                std::cmp::Ordering::Greater => &mut ctx.above,
            };
            class.push((c, y));
        }
        ctx
    }

    fn window(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.below.iter().chain(&self.on).chain(&self.above)
    }

    /// Number of window dots higher than `w`; these are the rightmost ones.
    pub fn v(&self) -> usize {
        self.window().filter(|d| d.1 > self.w).count()
    }

    /// Number of above-diagonal window dots lower than `w`.
    pub fn d(&self) -> usize {
        self.above.iter().filter(|d| d.1 < self.w).count()
    }
}

pub fn classify_slide_case(ctx: &SlideContext) -> SlideCase {
    let (i, j, w) = (ctx.i, ctx.j, ctx.w);
    if ctx.window().all(|d| d.1 < w) {
        SlideCase::Unchanged
    } else if w > i + j {
        SlideCase::AboveWindow
    } else if w == i + j {
        SlideCase::DiagonalEnd
    } else if w >= i {
        // the dot of column w has height i+j, so it is the leftmost dot
        // above the diagonal
        debug_assert_eq!(ctx.above.first().map(|d| d.0), Some(w));
        if ctx.on.is_empty() {
            SlideCase::MirrorEnd
        } else {
            SlideCase::MirrorEndWithDiagonal
        }
    } else {
        SlideCase::BelowWindow
    }
}

fn heights_of(p: &BoardPlacement) -> Vec<usize> {
    p.heights().expect("full placement")
}

/// Checks the slide domain with the 21-free window starting at column
/// `window_start` (`i` for inputs, `i+1` for outputs).
fn check_slide_domain(
    p: &BoardPlacement,
    i: usize,
    j: usize,
    window_start: usize,
) -> Result<Vec<usize>> {
    let lambda = p.shape();
    if !lambda.is_self_conjugate() {
        return Err(Error::InvalidInput(format!("{lambda} is not self-conjugate")));
    }
    let last = lambda.last_part();
    if i < 1 || i >= last {
        return Err(Error::InvalidInput(format!(
            "i = {i} must satisfy 1 <= i < {last}"
        )));
    }
    if j < 1 || i + j > last {
        return Err(Error::InvalidInput(format!(
            "j = {j} must satisfy 1 <= j <= {}",
            last - i
        )));
    }
    // columns i..=i+j all reach the top row
    let k = lambda.len();
    if (i..=i + j).any(|c| lambda.column_height(c) != k) {
        return Err(Error::InvalidInput(format!(
            "columns {i}..={} do not all have height {k}",
            i + j
        )));
    }
    if !p.is_full() {
        return Err(Error::InvalidInput("placement is not full".into()));
    }
    if !p.is_symmetric() {
        return Err(Error::InvalidInput("placement is not symmetric".into()));
    }
    if p.contains(&Permutation::decreasing(3)) {
        return Err(Error::InvalidInput("placement contains 321".into()));
    }
    let window = p.restrict_columns(window_start, window_start + j - 1);
    if window.contains(&Permutation::decreasing(2)) {
        return Err(Error::InvalidInput(format!(
            "placement contains 21 in columns {window_start}..={}",
            window_start + j - 1
        )));
    }
    Ok(heights_of(p))
}

/// Relabelling of columns `i..=i+j` (identity elsewhere). The slide
/// conjugates the involution by it, which moves each dot's column and
/// mirrors the move on rows.
#[derive(Clone, Debug)]
struct ColumnMap {
    to: Vec<usize>,
}

impl ColumnMap {
    fn identity(n: usize) -> Self {
        ColumnMap {
            to: (0..=n).collect(),
        }
    }

    fn set(&mut self, from: usize, to: usize) {
        self.to[from] = to;
    }

    fn apply(&self, c: usize) -> usize {
        self.to[c]
    }

    fn inverse(&self) -> ColumnMap {
        let mut inv = vec![0; self.to.len()];
        for (c, &t) in self.to.iter().enumerate() {
            inv[t] = c;
        }
        ColumnMap { to: inv }
    }

    fn conjugate(&self, heights: &[usize]) -> Vec<usize> {
        let mut out = vec![0; heights.len()];
        for (c, &h) in heights.iter().enumerate() {
            out[self.apply(c + 1) - 1] = self.apply(h);
        }
        out
    }
}

/// Basic transformation: window columns other than `i+j-v` shift right,
/// column `i+j-v` goes to `i`, column `i+j` goes to `i+j-v+1`.
fn basic_map(n: usize, i: usize, j: usize, v: usize) -> ColumnMap {
    let mut m = ColumnMap::identity(n);
    let pivot = i + j - v;
    for c in i..i + j {
        if c != pivot {
            m.set(c, c + 1);
        }
    }
    m.set(pivot, i);
    m.set(i + j, pivot + 1);
    m
}

/// Variant used when the dot of column `i+j` mirrors the first
/// above-diagonal window dot and the window has diagonal dots: the pair at
/// `(i+j, c_1)`, `(c_1, i+j)` merges into a diagonal dot at `c_1+1` and the
/// first diagonal dot splits into `(i, b_1+1)`, `(b_1+1, i)`.
fn merge_split_map(n: usize, ctx: &SlideContext) -> ColumnMap {
    let mut m = ColumnMap::identity(n);
    let (i, j) = (ctx.i, ctx.j);
    let b1 = ctx.on[0].0;
    let c1 = ctx.above[0].0;
    for &(c, _) in ctx.below.iter().chain(&ctx.on[1..]).chain(&ctx.above[1..]) {
        m.set(c, c + 1);
    }
    m.set(b1, c1 + 1);
    m.set(c1, i);
    m.set(i + j, b1 + 1);
    m
}

fn slide_map(n: usize, ctx: &SlideContext, case: SlideCase) -> Option<ColumnMap> {
    match case {
        SlideCase::Unchanged => None,
        SlideCase::MirrorEndWithDiagonal => Some(merge_split_map(n, ctx)),
        _ => Some(basic_map(n, ctx.i, ctx.j, ctx.v())),
    }
}

/// One dot movement, for tracing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlideMove {
    pub from: (usize, usize),
    pub to: (usize, usize),
    pub step: String,
}

/// Result of a traced slide.
#[derive(Clone, Debug, Serialize)]
pub struct SlideTrace {
    pub case: SlideCase,
    pub context: SlideContext,
    pub output: BoardPlacement,
    pub moves: Vec<SlideMove>,
}

fn column_step(ctx: &SlideContext, case: SlideCase, c: usize) -> &'static str {
    let (i, j) = (ctx.i, ctx.j);
    if case == SlideCase::MirrorEndWithDiagonal {
        if c == i + j || Some(c) == ctx.above.first().map(|d| d.0) {
            "merge"
        } else if c == ctx.on[0].0 {
            "split"
        } else if ctx.on.iter().any(|d| d.0 == c) {
            "diagonal"
        } else {
            "shift"
        }
    } else {
        let pivot = i + j - ctx.v();
        if c == pivot {
            "(ii)"
        } else if c == i + j {
            "(iii)"
        } else {
            "(i)"
        }
    }
}

/// Slide with the individual dot moves recorded.
pub fn slide_trace(p: &BoardPlacement, i: usize, j: usize) -> Result<SlideTrace> {
    let heights = check_slide_domain(p, i, j, i)?;
    let ctx = SlideContext::from_heights(&heights, i, j);
    let case = if j == 1 {
        SlideCase::Unchanged
    } else {
        classify_slide_case(&ctx)
    };
    let Some(map) = slide_map(heights.len(), &ctx, case) else {
        return Ok(SlideTrace {
            case,
            context: ctx,
            output: p.clone(),
            moves: vec![],
        });
    };
    let out = map.conjugate(&heights);
    let mut moves = Vec::new();
    for (idx, &h) in heights.iter().enumerate() {
        let c = idx + 1;
        let to = (map.apply(c), map.apply(h));
        if to == (c, h) {
            continue;
        }
        let step = match (to.0 != c, to.1 != h) {
            (true, false) => column_step(&ctx, case, c).to_string(),
            (false, true) => format!("{}(S)", column_step(&ctx, case, h)),
            _ => format!(
                "{}+{}(S)",
                column_step(&ctx, case, c),
                column_step(&ctx, case, h)
            ),
        };
        moves.push(SlideMove {
            from: (c, h),
            to,
            step,
        });
    }
    Ok(SlideTrace {
        case,
        context: ctx,
        output: BoardPlacement::from_heights(p.shape().clone(), &out)?,
        moves,
    })
}

/// Maps a 321-avoiding symmetric full placement with no 21 in columns
/// `i..i+j-1` to one with no 21 in columns `i+1..i+j`.
pub fn slide_transform(p: &BoardPlacement, i: usize, j: usize) -> Result<BoardPlacement> {
    Ok(slide_trace(p, i, j)?.output)
}

/// Case of a placement in the image of the slide, read off from the
/// height `u` of its column-`i` dot.
pub fn image_case(q: &BoardPlacement, i: usize, j: usize) -> Result<SlideCase> {
    let h = check_slide_domain(q, i, j, i + 1)?;
    Ok(dispatch_image(&h, i, j))
}

fn dispatch_image(h: &[usize], i: usize, j: usize) -> SlideCase {
    if j == 1 {
        return SlideCase::Unchanged;
    }
    let u = h[i - 1];
    let rest = i + 1..=i + j;
    if rest.clone().all(|c| u < h[c - 1]) {
        return SlideCase::Unchanged;
    }
    let diagonal = rest.clone().any(|c| h[c - 1] == c);
    if u > i && u <= i + j {
        if diagonal {
            SlideCase::MirrorEndWithDiagonal
        } else {
            SlideCase::MirrorEnd
        }
    } else if u > i + j {
        let lower_above = rest.clone().any(|c| h[c - 1] > c && h[c - 1] < u);
        match (lower_above, diagonal) {
            (true, _) => SlideCase::AboveWindow,
            (false, true) => SlideCase::DiagonalEnd,
            (false, false) => SlideCase::BelowWindow,
        }
    } else {
        // u ≤ i with a lower dot to its right would give a 321
        SlideCase::Unchanged
    }
}

/// Inverse of [`slide_transform`].
pub fn slide_inverse(q: &BoardPlacement, i: usize, j: usize) -> Result<BoardPlacement> {
    let h = check_slide_domain(q, i, j, i + 1)?;
    let case = dispatch_image(&h, i, j);
    if case == SlideCase::Unchanged {
        if j > 1 && (i + 1..=i + j).any(|c| h[c - 1] < h[i - 1]) {
            return Err(Error::InvalidInput(format!(
                "{q} is not in the image of the slide"
            )));
        }
        return Ok(q.clone());
    }
    let n = h.len();
    let candidates: Vec<ColumnMap> = if case == SlideCase::MirrorEndWithDiagonal {
        // b_1 + 1 = u; the rightmost diagonal dot of i+1..=i+j is c_1 + 1
        let u = h[i - 1];
        let on: Vec<usize> = (i + 1..=i + j).filter(|&c| h[c - 1] == c).collect();
        let b1 = u - 1;
        let c1 = on.last().expect("diagonal dot") - 1;
        let l = b1 - i;
        let m = on.len();
        if c1 != i + l + m || b1 < i {
            return Err(Error::InvalidInput(format!(
                "{q} is not in the image of the slide"
            )));
        }
        let r = j - l - m;
        let pre = SlideContext {
            i,
            j,
            below: (i..i + l).map(|c| (c, 0)).collect(),
            on: (b1..b1 + m).map(|c| (c, c)).collect(),
            above: (c1..c1 + r).map(|c| (c, 0)).collect(),
            w: c1,
        };
        vec![merge_split_map(n, &pre)]
    } else {
        (1..=j).map(|v| basic_map(n, i, j, v)).collect()
    };
    for map in candidates {
        let pre = map.inverse().conjugate(&h);
        let Ok(pre) = BoardPlacement::from_heights(q.shape().clone(), &pre) else {
            continue;
        };
        let Ok(trace) = slide_trace(&pre, i, j) else {
            continue;
        };
        if trace.case == case && trace.output == *q {
            return Ok(pre);
        }
    }
    Err(Error::InvalidInput(format!(
        "{q} is not in the image of the slide"
    )))
}

/// Checks the dot distribution claimed for each case on the output columns
/// `i+1..=i+j` and the height of the output's column-`i` dot.
pub fn check_case_postconditions(
    ctx: &SlideContext,
    case: SlideCase,
    output: &BoardPlacement,
) -> std::result::Result<(), String> {
    let h = heights_of(output);
    let (i, j) = (ctx.i, ctx.j);
    let (l, m, r) = (ctx.below.len(), ctx.on.len(), ctx.above.len());
    let rest: Vec<(usize, usize)> = (i + 1..=i + j).map(|c| (c, h[c - 1])).collect();
    let below: Vec<usize> = rest.iter().filter(|d| d.1 < d.0).map(|d| d.1).collect();
    let on: Vec<usize> = rest.iter().filter(|d| d.1 == d.0).map(|d| d.1).collect();
    let above: Vec<usize> = rest.iter().filter(|d| d.1 > d.0).map(|d| d.1).collect();
    let u = h[i - 1];
    let counts = (below.len(), on.len(), above.len());
    let expect = |want: (usize, usize, usize)| {
        if counts == want {
            Ok(())
        } else {
            Err(format!("case {case}: (below, on, above) = {counts:?}, expected {want:?}"))
        }
    };
    let claim = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(format!("case {case}: {what} (u = {u})"))
        }
    };
    match case {
        SlideCase::Unchanged => claim(
            j == 1 || rest.iter().all(|d| d.1 > u),
            "window not increasing",
        ),
        SlideCase::AboveWindow => {
            expect((l, m, r))?;
            let lower = above.iter().filter(|&&y| y < u).count();
            claim(lower == ctx.d() + 1, "column-i dot not above exactly d+1 dots")
        }
        SlideCase::DiagonalEnd => {
            expect((l, m + 1, r - 1))?;
            claim(
                below.iter().chain(&on).all(|&y| y < u) && above.iter().all(|&y| y > u),
                "column-i dot not between diagonal and above-diagonal dots",
            )
        }
        SlideCase::MirrorEnd => {
            expect((l + 1, 0, r - 1))?;
            claim(
                below.iter().all(|&y| y < u) && above.iter().all(|&y| y > u),
                "column-i dot not between below- and above-diagonal dots",
            )
        }
        SlideCase::MirrorEndWithDiagonal => {
            expect((l + 1, m, r - 1))?;
            let lower = rest.iter().filter(|d| d.1 < u).count();
            claim(lower == l + 1, "column-i dot not above exactly l+1 dots")
        }
        SlideCase::BelowWindow => {
            expect((l + 1, 0, r - 1))?;
            claim(
                u > i + j && above.iter().all(|&y| y > u),
                "column-i dot not above i+j and below the above-diagonal dots",
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::enumerate_self_conjugate_shapes;

    fn sh(s: &str) -> Shape {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn suffix_validation() {
        assert!(SuffixSet::parse(3, "54").is_ok());
        assert!(SuffixSet::parse(3, "53").is_err());
        assert!(SuffixSet::parse(2, "").is_err());
        assert!(SuffixSet::new(2, vec![]).is_err());
        assert!(SuffixSet::new(0, vec![vec![1]]).is_err());
        let t = SuffixSet::parse(3, "54,4").unwrap();
        assert_eq!(
            t.with_prefix(&p("321")).unwrap().to_string(),
            "3214,32154"
        );
        assert_eq!(SuffixSet::all_small(2, 2, 2).len(), 6);
    }

    #[test]
    fn worked_reduction() {
        let mu = Shape::square(9);
        let pl = BoardPlacement::from_permutation(&p("127965384"));
        let t = SuffixSet::parse(3, "54").unwrap();
        let reduced = lambda_t(&mu, &pl, &t).unwrap();
        assert_eq!(reduced.shape, sh("4,4,4,3"));
        assert!(reduced.induced.is_symmetric() && reduced.induced.is_full());
        for sigma in ["123", "321"] {
            assert!(verify_reduction_equivalence(&mu, &pl, &p(sigma), &t).unwrap());
        }
    }

    #[test]
    fn increasing_placement_reduces_to_nothing() {
        for n in 0..=6 {
            let pl = BoardPlacement::from_permutation(&Permutation::identity(n));
            let t = SuffixSet::parse(3, "54").unwrap();
            let reduced = lambda_t(&Shape::square(n), &pl, &t).unwrap();
            assert!(reduced.shape.is_empty());
        }
    }

    #[test]
    fn reduction_rejects_bad_input() {
        let mu = sh("3,3,2");
        let asym: BoardPlacement = "3,3,2;1,2 2,3 3,1".parse().unwrap();
        let t = SuffixSet::parse(2, "3").unwrap();
        assert!(matches!(
            lambda_t(&mu, &asym, &t),
            Err(Error::InvalidPlacement(_))
        ));
        let sym: BoardPlacement = "3,3,2;1,1 2,3 3,2".parse().unwrap();
        assert!(matches!(
            verify_reduction_equivalence(&mu, &sym, &p("231"), &SuffixSet::parse(3, "4").unwrap()),
            Err(Error::InvalidPattern(_))
        ));
    }

    #[test]
    fn class_examples() {
        let t54 = SuffixSet::parse(2, "54").unwrap_err();
        assert!(matches!(t54, Error::InvalidInput(_)));
        let t = SuffixSet::parse(2, "43").unwrap();
        assert!(class_decomposition_check(&Shape::square(4), &t, &p("12"), &p("21")).unwrap());
        assert!(class_decomposition_check(&sh("3,3,2"), &t, &p("12"), &p("21")).unwrap());
        assert!(class_decomposition_check(&Shape::empty(), &t, &p("12"), &p("21")).unwrap());
        let t3 = SuffixSet::parse(3, "54").unwrap();
        assert!(class_decomposition_check(&Shape::square(4), &t3, &p("123"), &p("321")).unwrap());
    }

    #[test]
    fn hat_examples() {
        assert_eq!(hat(&sh("8,8,8,8,7,5,5,4")).unwrap(), sh("6,6,6,6,4,4"));
        assert_eq!(hat(&sh("2,1")).unwrap(), Shape::empty());
        assert!(hat(&sh("1")).is_err());
        assert!(hat(&Shape::square(3)).is_err());
        assert!(hat(&Shape::empty()).is_err());
        assert!(hat(&sh("2,1,1")).is_err());
        for s in enumerate_self_conjugate_shapes(7) {
            if !s.is_empty() && !s.is_square() {
                assert!(hat(&s).unwrap().is_self_conjugate());
            }
        }
    }

    #[test]
    fn top_row_counts() {
        let s = sh("3,3,2");
        for i in 1..=2 {
            assert_eq!(f_stat(&s, Monotone::Increasing, i).unwrap(), 1);
            assert_eq!(f_stat(&s, Monotone::Decreasing, i).unwrap(), 1);
        }
        let sq = Shape::square(3);
        assert_eq!(f_stat(&sq, Monotone::Increasing, 1).unwrap(), 1);
        assert_eq!(f_stat(&sq, Monotone::Decreasing, 1).unwrap(), 2);
        assert!(f_stat(&s, Monotone::Increasing, 0).is_err());
        assert!(f_stat(&s, Monotone::Increasing, 3).is_err());
        assert!(g_stat(&s, Monotone::Increasing, 3).is_err());
    }

    #[test]
    fn g_first_column_is_free() {
        for s in enumerate_self_conjugate_shapes(6) {
            if s.is_empty() {
                continue;
            }
            for m in [Monotone::Increasing, Monotone::Decreasing] {
                assert_eq!(g_stat(&s, m, 0).unwrap(), g_stat(&s, m, 1).unwrap());
            }
        }
    }

    fn slide_inputs(lambda: &Shape, i: usize, j: usize, start: usize) -> Vec<BoardPlacement> {
        enumerate_symmetric_full_placements(lambda)
            .unwrap()
            .into_iter()
            .filter(|q| check_slide_domain(q, i, j, start).is_ok())
            .collect()
    }

    #[test]
    fn slide_with_unit_window_is_identity() {
        let lambda = Shape::square(5);
        for q in slide_inputs(&lambda, 1, 1, 1) {
            assert_eq!(slide_transform(&q, 1, 1).unwrap(), q);
            assert_eq!(slide_inverse(&q, 1, 1).unwrap(), q);
        }
    }

    #[test]
    fn slide_rejects_out_of_domain() {
        let lambda = Shape::square(4);
        let q = BoardPlacement::from_permutation(&p("4321"));
        let err = slide_transform(&q, 1, 2).unwrap_err().to_string();
        assert!(err.contains("321"), "{err}");
        let q = BoardPlacement::from_permutation(&p("2143"));
        let err = slide_transform(&q, 1, 2).unwrap_err().to_string();
        assert!(err.contains("21 in columns 1..=2"), "{err}");
        let q = BoardPlacement::from_permutation(&p("1234"));
        assert!(slide_transform(&q, 0, 2).is_err());
        assert!(slide_transform(&q, 3, 2).is_err());
        assert!(slide_transform(&q, 4, 1).is_err());
        assert!(slide_inputs(&lambda, 1, 3, 1).len() > 1);
    }

    #[test]
    fn case_dispatch_examples() {
        // window columns 1,2 increasing and w above both: case I
        let q = BoardPlacement::from_permutation(&p("1234"));
        let ctx = SlideContext::from_placement(&q, 1, 2).unwrap();
        assert_eq!(classify_slide_case(&ctx), SlideCase::Unchanged);
        // 1243 with i=2, j=2: window 2,3 heights 2,4; w = 3 = i+j-1 is the
        // column of the first above-diagonal dot, with a diagonal dot
        let q = BoardPlacement::from_permutation(&p("1243"));
        let ctx = SlideContext::from_placement(&q, 2, 2).unwrap();
        assert_eq!(ctx.w, 3);
        assert_eq!(classify_slide_case(&ctx), SlideCase::MirrorEndWithDiagonal);
    }

    #[test]
    fn slide_round_trips_on_small_shapes() {
        for lambda in enumerate_self_conjugate_shapes(5) {
            let last = lambda.last_part();
            for i in 1..last {
                for j in 1..=last - i {
                    let inputs = slide_inputs(&lambda, i, j, i);
                    let targets = slide_inputs(&lambda, i, j, i + 1);
                    assert_eq!(inputs.len(), targets.len(), "{lambda} i={i} j={j}");
                    let mut images = BTreeSet::new();
                    for q in &inputs {
                        let trace = slide_trace(q, i, j).unwrap();
                        check_case_postconditions(&trace.context, trace.case, &trace.output)
                            .unwrap();
                        assert_eq!(slide_inverse(&trace.output, i, j).unwrap(), *q);
                        assert_eq!(image_case(&trace.output, i, j).unwrap(), trace.case);
                        images.insert(trace.output);
                    }
                    let targets: BTreeSet<_> = targets.into_iter().collect();
                    assert_eq!(images, targets);
                }
            }
        }
    }
}
