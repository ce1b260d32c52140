//! Subsequence search shared by permutation and placement containment.
//!
//! Dots are given as parallel slices of columns (strictly increasing) and
//! heights. A candidate occurrence is grown left to right; each new height is
//! checked against the nearest already-chosen pattern values below and above
//! it, so the relative order is maintained incrementally.

use crate::board::Shape;

pub(crate) struct Matcher {
    pattern: Vec<usize>,
    // index (into the pattern prefix) of the closest smaller / larger value
    lower: Vec<Option<usize>>,
    upper: Vec<Option<usize>>,
}

impl Matcher {
    pub(crate) fn new(pattern: &[usize]) -> Self {
        let mut lower = Vec::with_capacity(pattern.len());
        let mut upper = Vec::with_capacity(pattern.len());
        for (t, &v) in pattern.iter().enumerate() {
            let mut lo: Option<usize> = None;
            let mut hi: Option<usize> = None;
            for (s, &u) in pattern[..t].iter().enumerate() {
                if u < v && lo.map_or(true, |l| pattern[l] < u) {
                    lo = Some(s);
                }
                if u > v && hi.map_or(true, |h| pattern[h] > u) {
                    hi = Some(s);
                }
            }
            lower.push(lo);
            upper.push(hi);
        }
        Matcher {
            pattern: pattern.to_vec(),
            lower,
            upper,
        }
    }

    /// True iff some occurrence exists. With a `bound`, the box at
    /// (last column, max height) of the occurrence must lie in the shape.
    pub(crate) fn occurs(&self, xs: &[usize], ys: &[usize], bound: Option<&Shape>) -> bool {
        let mut found = false;
        self.visit(xs, ys, bound, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// Calls `f` with the positions (indices into `xs`/`ys`) of every
    /// occurrence until it returns `false`.
    pub(crate) fn visit(
        &self,
        xs: &[usize],
        ys: &[usize],
        bound: Option<&Shape>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) {
        debug_assert_eq!(xs.len(), ys.len());
        let k = self.pattern.len();
        if k > ys.len() {
            return;
        }
        let mut heights = vec![0usize; k];
        let mut positions = vec![0usize; k];
        self.step(0, 0, 0, xs, ys, bound, &mut heights, &mut positions, f);
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        t: usize,
        start: usize,
        max_height: usize,
        xs: &[usize],
        ys: &[usize],
        bound: Option<&Shape>,
        heights: &mut [usize],
        positions: &mut [usize],
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let k = self.pattern.len();
        if t == k {
            return f(positions);
        }
        let last = ys.len() - (k - t);
        for p in start..=last {
            let y = ys[p];
            if let Some(l) = self.lower[t] {
                if y < heights[l] {
                    continue;
                }
            }
            if let Some(h) = self.upper[t] {
                if y > heights[h] {
                    continue;
                }
            }
            let m = max_height.max(y);
            if let Some(shape) = bound {
                // corners only move up and right from here
                if !shape.contains_box(xs[p], m) {
                    continue;
                }
            }
            heights[t] = y;
            positions[t] = p;
            if !self.step(t + 1, p + 1, m, xs, ys, bound, heights, positions, f) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbours_of_prefix() {
        let m = Matcher::new(&[2, 4, 1, 3]);
        assert_eq!(m.lower, vec![None, Some(0), None, Some(0)]);
        assert_eq!(m.upper, vec![None, None, Some(0), Some(1)]);
    }

    #[test]
    fn counts_all_occurrences() {
        let ys = [1, 2, 3, 4];
        let xs = [1, 2, 3, 4];
        let mut n = 0;
        Matcher::new(&[1, 2]).visit(&xs, &ys, None, &mut |_| {
            n += 1;
            true
        });
        assert_eq!(n, 6);
    }
}
