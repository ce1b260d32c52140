//! Ferrers shapes and rook placements on them.
//!
//! Coordinates are French: box `(x, y)` is column `x`, row `y`, both counted
//! from 1 at the bottom-left corner. Parts are stored largest first and row
//! `y` holds `λ_y` boxes, so the bottom row is the longest and, for a
//! self-conjugate shape of length `k`, the top row `y = k = λ_1` holds `λ_k`
//! boxes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::occurrence::Matcher;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Shape {
    parts: Vec<usize>,
}

impl Shape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidShape(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Shape { parts })
    }

    pub fn empty() -> Self {
        Shape { parts: vec![] }
    }

    pub fn square(n: usize) -> Self {
        Shape { parts: vec![n; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_1`, the number of columns.
    pub fn width(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `λ_k`, the length of the top row.
    pub fn last_part(&self) -> usize {
        self.parts.last().copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn row_len(&self, y: usize) -> usize {
        if y == 0 {
            return 0;
        }
        self.parts.get(y - 1).copied().unwrap_or(0)
    }

    pub fn column_height(&self, x: usize) -> usize {
        if x == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p >= x).count()
    }

    pub fn contains_box(&self, x: usize, y: usize) -> bool {
        x >= 1 && x <= self.row_len(y)
    }

    pub fn conjugate(&self) -> Shape {
        Shape {
            parts: (1..=self.width()).map(|x| self.column_height(x)).collect(),
        }
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn is_square(&self) -> bool {
        self.parts.iter().all(|&p| p == self.len())
    }

    /// Whether some full placement exists: as many rows as columns, and
    /// the shape contains the staircase `(k, k-1, …, 1)`.
    pub fn admits_full_placement(&self) -> bool {
        let k = self.len();
        self.width() == k && self.parts.iter().enumerate().all(|(y, &p)| p + y >= k)
    }

    pub(crate) fn require_self_conjugate(&self) -> Result<()> {
        if self.is_self_conjugate() {
            Ok(())
        } else {
            Err(Error::InvalidShape(format!(
                "{self} is not self-conjugate"
            )))
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Shape::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?} in shape {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Shape::new(parts)
    }
}

impl Serialize for Shape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Dots on a shape, at most one per row and column. Dots are kept sorted by
/// column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoardPlacement {
    shape: Shape,
    dots: Vec<(usize, usize)>,
}

impl BoardPlacement {
    pub fn new(shape: Shape, mut dots: Vec<(usize, usize)>) -> Result<Self> {
        dots.sort_unstable();
        for &(x, y) in &dots {
            if !shape.contains_box(x, y) {
                return Err(Error::InvalidPlacement(format!(
                    "dot ({x},{y}) is outside {shape}"
                )));
            }
        }
        let cols: BTreeSet<_> = dots.iter().map(|d| d.0).collect();
        let rows: BTreeSet<_> = dots.iter().map(|d| d.1).collect();
        if cols.len() != dots.len() || rows.len() != dots.len() {
            return Err(Error::InvalidPlacement(
                "a row or column holds more than one dot".into(),
            ));
        }
        Ok(BoardPlacement { shape, dots })
    }

    pub fn empty(shape: Shape) -> Self {
        BoardPlacement {
            shape,
            dots: vec![],
        }
    }

    /// Full placement with a dot at `(x, heights[x-1])` in every column.
    pub fn from_heights(shape: Shape, heights: &[usize]) -> Result<Self> {
        let dots = heights
            .iter()
            .enumerate()
            .map(|(i, &h)| (i + 1, h))
            .collect();
        BoardPlacement::new(shape, dots)
    }

    /// Graph of `pi` on the square board.
    pub fn from_permutation(pi: &Permutation) -> Self {
        BoardPlacement {
            shape: Shape::square(pi.len()),
            dots: pi.graph().dots,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dots(&self) -> &[(usize, usize)] {
        &self.dots
    }

    pub fn height_in_column(&self, x: usize) -> Option<usize> {
        self.dots.iter().find(|d| d.0 == x).map(|d| d.1)
    }

    /// Heights column by column, when every column holds a dot.
    pub fn heights(&self) -> Option<Vec<usize>> {
        if self.dots.len() != self.shape.width() {
            return None;
        }
        Some(self.dots.iter().map(|d| d.1).collect())
    }

    pub fn transpose(&self) -> BoardPlacement {
        let mut dots: Vec<_> = self.dots.iter().map(|&(x, y)| (y, x)).collect();
        dots.sort_unstable();
        BoardPlacement {
            shape: self.shape.conjugate(),
            dots,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.shape.is_self_conjugate() && self.transpose() == *self
    }

    pub fn is_full(&self) -> bool {
        self.dots.len() == self.shape.len() && self.dots.len() == self.shape.width()
    }

    /// Containment bounded by a rectangular subshape: the chosen dots must
    /// have pattern `sigma` and the box at (rightmost column, highest row)
    /// of the chosen dots must lie in the shape.
    pub fn contains(&self, sigma: &Permutation) -> bool {
        let (xs, ys): (Vec<usize>, Vec<usize>) = self.dots.iter().copied().unzip();
        Matcher::new(sigma.values()).occurs(&xs, &ys, Some(&self.shape))
    }

    pub fn avoids(&self, sigma: &Permutation) -> bool {
        !self.contains(sigma)
    }

    /// The dots lying in columns `from..=to`, on the same shape.
    pub fn restrict_columns(&self, from: usize, to: usize) -> BoardPlacement {
        BoardPlacement {
            shape: self.shape.clone(),
            dots: self
                .dots
                .iter()
                .copied()
                .filter(|d| d.0 >= from && d.0 <= to)
                .collect(),
        }
    }
}

impl fmt::Display for BoardPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.shape)?;
        let dots: Vec<String> = self.dots.iter().map(|(x, y)| format!("{x},{y}")).collect();
        f.write_str(&dots.join(" "))
    }
}

impl FromStr for BoardPlacement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (shape, dots) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("placement {s:?} has no ';'")))?;
        let shape: Shape = shape.parse()?;
        let dots = dots
            .split_whitespace()
            .map(|pair| {
                let (x, y) = pair
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad dot {pair:?}")))?;
                let x = x.parse::<usize>();
                let y = y.parse::<usize>();
                match (x, y) {
                    (Ok(x), Ok(y)) => Ok((x, y)),
                    _ => Err(Error::Parse(format!("bad dot {pair:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        BoardPlacement::new(shape, dots)
    }
}

impl Serialize for BoardPlacement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every full placement, columns filled left to right and rows tried
/// bottom to top.
pub fn enumerate_full_placements(shape: &Shape) -> Vec<BoardPlacement> {
    let n = shape.width();
    let mut out = Vec::new();
    if n != shape.len() {
        return out;
    }
    let mut heights = vec![0usize; n];
    let mut used = vec![false; n + 1];
    fn step(
        shape: &Shape,
        x: usize,
        heights: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<BoardPlacement>,
    ) {
        let n = heights.len();
        if x > n {
            out.push(BoardPlacement::from_heights(shape.clone(), heights).expect("valid"));
            return;
        }
        for y in 1..=shape.column_height(x) {
            if !used[y] {
                used[y] = true;
                heights[x - 1] = y;
                step(shape, x + 1, heights, used, out);
                used[y] = false;
            }
        }
    }
    step(shape, 1, &mut heights, &mut used, &mut out);
    out
}

/// Calls `f` with the column heights of every symmetric full placement on a
/// self-conjugate shape. Only boxes on or above the diagonal are chosen; the
/// mirror dot is implied.
pub(crate) fn for_each_symmetric_full(shape: &Shape, f: &mut dyn FnMut(&[usize])) {
    let n = shape.width();
    let mut heights = vec![0usize; n];
    fn step(shape: &Shape, from: usize, heights: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        let n = heights.len();
        let Some(c) = (from..n).find(|&c| heights[c] == 0) else {
            f(heights);
            return;
        };
        let x = c + 1;
        for y in x..=shape.column_height(x) {
            if heights[y - 1] != 0 {
                continue;
            }
            heights[c] = y;
            heights[y - 1] = x;
            step(shape, c + 1, heights, f);
            heights[y - 1] = 0;
            heights[c] = 0;
        }
    }
    step(shape, 0, &mut heights, f);
}

pub fn enumerate_symmetric_full_placements(shape: &Shape) -> Result<Vec<BoardPlacement>> {
    shape.require_self_conjugate()?;
    let mut out = Vec::new();
    for_each_symmetric_full(shape, &mut |h| {
        out.push(BoardPlacement {
            shape: shape.clone(),
            dots: h.iter().enumerate().map(|(i, &y)| (i + 1, y)).collect(),
        })
    });
    Ok(out)
}

/// All partitions fitting in a `max_side × max_side` box, by size and then
/// lexicographically.
pub fn enumerate_shapes(max_side: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn step(max_part: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Shape>) {
        out.push(Shape { parts: cur.clone() });
        if rows_left == 0 {
            return;
        }
        for p in 1..=max_part {
            cur.push(p);
            step(p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    step(max_side, max_side, &mut cur, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.parts.cmp(&b.parts)));
    out
}

/// Self-conjugate shapes with `λ_1 ≤ max_side`, including the empty shape.
pub fn enumerate_self_conjugate_shapes(max_side: usize) -> Vec<Shape> {
    enumerate_shapes(max_side)
        .into_iter()
        .filter(Shape::is_self_conjugate)
        .collect()
}
