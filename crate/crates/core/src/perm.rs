//! Permutations in one-line notation, patterns and containment.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::occurrence::Matcher;

/// A permutation of `1..=n` in one-line notation. Also used as a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(Error::InvalidPattern(format!(
                    "value {v} outside 1..={n} in {values:?}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPattern(format!(
                    "value {v} repeated in {values:?}"
                )));
            }
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// The decreasing permutation `n … 2 1`.
    pub fn decreasing(n: usize) -> Self {
        Permutation {
            values: (1..=n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// Does some subsequence of `self` have pattern `sigma`?
    /// Every permutation contains the empty pattern.
    pub fn contains(&self, sigma: &Permutation) -> bool {
        let xs: Vec<usize> = (1..=self.len()).collect();
        Matcher::new(&sigma.values).occurs(&xs, &self.values, None)
    }

    pub fn avoids(&self, sigma: &Permutation) -> bool {
        !self.contains(sigma)
    }

    pub fn is_involution(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| self.values[v - 1] == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    /// `(k+1-τ_k) … (k+1-τ_1)`.
    pub fn reversed_complement(&self) -> Permutation {
        let k = self.len();
        Permutation {
            values: self.values.iter().rev().map(|&v| k + 1 - v).collect(),
        }
    }

    pub fn reverse(&self) -> Permutation {
        Permutation {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    /// Orbit under inverse and reversed complement. Size 1, 2 or 4.
    pub fn symmetry_class(&self) -> BTreeSet<Permutation> {
        let rc = self.reversed_complement();
        [self.inverse(), rc.inverse(), rc, self.clone()]
            .into_iter()
            .collect()
    }

    /// `self` followed by `suffix`, where `suffix` is a word on
    /// `len+1..=len+m` (e.g. prefix 123 and suffix 54 give 12354).
    pub fn with_suffix(&self, suffix: &[usize]) -> Result<Permutation> {
        let mut values = self.values.clone();
        values.extend_from_slice(suffix);
        Permutation::new(values)
    }

    pub fn graph(&self) -> Graph {
        Graph {
            n: self.len(),
            dots: self
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| (i + 1, v))
                .collect(),
        }
    }
}

/// The `n × n` board with a dot at `(i, π(i))`, coordinates from the
/// bottom-left corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub dots: Vec<(usize, usize)>,
}

impl Graph {
    /// Symmetric about the diagonal through the bottom-left corner.
    pub fn is_symmetric(&self) -> bool {
        let set: BTreeSet<_> = self.dots.iter().copied().collect();
        self.dots.iter().all(|&(x, y)| set.contains(&(y, x)))
    }
}

/// Order-preserving relabelling of a word of distinct integers.
pub fn pattern_of(word: &[i64]) -> Result<Permutation> {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidWord(format!(
            "entries of {word:?} are not distinct"
        )));
    }
    let values = word
        .iter()
        .map(|v| sorted.binary_search(v).expect("present") + 1)
        .collect();
    Ok(Permutation { values })
}

pub(crate) fn pattern_of_usize(word: &[usize]) -> Permutation {
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    Permutation {
        values: word
            .iter()
            .map(|v| sorted.binary_search(v).expect("present") + 1)
            .collect(),
    }
}

/// All of `S_n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation {
            values: cur.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Calls `f` on every involution of `S_n`, given as its one-line values.
///
/// Built column by column: the smallest unassigned position is either fixed
/// or paired with a larger unassigned position.
pub fn for_each_involution(n: usize, f: &mut dyn FnMut(&[usize])) {
    let mut values = vec![0usize; n];
    involution_step(&mut values, 0, f);
}

pub(crate) fn involution_step(values: &mut [usize], from: usize, f: &mut dyn FnMut(&[usize])) {
    let n = values.len();
    let Some(c) = (from..n).find(|&c| values[c] == 0) else {
        f(values);
        return;
    };
    values[c] = c + 1;
    involution_step(values, c + 1, f);
    values[c] = 0;
    for d in c + 1..n {
        if values[d] == 0 {
            values[c] = d + 1;
            values[d] = c + 1;
            involution_step(values, c + 1, f);
            values[d] = 0;
            values[c] = 0;
        }
    }
}

pub fn involutions(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_involution(n, &mut |v| {
        out.push(Permutation { values: v.to_vec() })
    });
    out
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit strings (`2413`) or comma lists (`10,2,3,…`), optionally
    /// bracketed. The empty string and `-` denote the empty permutation.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(s)
            .trim();
        if s.is_empty() || s == "-" {
            return Ok(Permutation { values: vec![] });
        }
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Independent check: try every index subset.
    fn contains_brute(pi: &Permutation, sigma: &Permutation) -> bool {
        let n = pi.len();
        let k = sigma.len();
        if k > n {
            return false;
        }
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .any(|m| {
                let sub: Vec<usize> = (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| pi.values[i])
                    .collect();
                pattern_of_usize(&sub) == *sigma
            })
    }

    #[test]
    fn pattern_of_words() {
        assert_eq!(pattern_of(&[1, 2, 3]).unwrap(), p("123"));
        assert_eq!(pattern_of(&[7, 9, 6]).unwrap(), p("231"));
        assert_eq!(pattern_of(&[9, 6, 5]).unwrap(), p("321"));
        assert!(matches!(
            pattern_of(&[3, 1, 3]),
            Err(Error::InvalidWord(_))
        ));
    }

    #[test]
    fn containment_examples() {
        assert!(contains_brute(&p("127965384"), &p("12354")));
        assert!(p("127965384").contains(&p("12354")));
        assert!(!p("123456789").contains(&p("21")));
        assert!(!contains_brute(&p("2143"), &p("1234")));
        assert!(!p("2143").contains(&p("1234")));
        assert!(p("2143").contains(&Permutation::identity(0)));
        assert!(Permutation::identity(0).contains(&Permutation::identity(0)));
    }

    #[test]
    fn containment_agrees_with_subsets() {
        for pi in permutations(6) {
            for k in 0..=4 {
                for sigma in permutations(k) {
                    assert_eq!(pi.contains(&sigma), contains_brute(&pi, &sigma));
                }
            }
        }
    }

    #[test]
    fn involution_examples() {
        assert!(p("127965384").is_involution());
        assert!(!p("497385621").is_involution());
        assert!(Permutation::identity(0).is_involution());
        assert!(p("127965384").graph().is_symmetric());
        assert!(!p("497385621").graph().is_symmetric());
    }

    #[test]
    fn symmetries() {
        assert_eq!(p("1243").reversed_complement(), p("2134"));
        assert_eq!(p("2413").inverse(), p("3142"));
        assert_eq!(p("1234").reversed_complement(), p("1234"));
        let set = |xs: &[&str]| xs.iter().map(|s| p(s)).collect::<BTreeSet<_>>();
        assert_eq!(p("1243").symmetry_class(), set(&["1243", "2134"]));
        assert_eq!(
            p("2431").symmetry_class(),
            set(&["2431", "4132", "3241", "4213"])
        );
        assert_eq!(p("1324").symmetry_class(), set(&["1324"]));
    }

    #[test]
    fn text_form() {
        assert_eq!(p("2413").to_string(), "2413");
        let long = p("10,2,3,4,5,6,7,8,9,1");
        assert_eq!(long.len(), 10);
        assert_eq!(long.to_string(), "10,2,3,4,5,6,7,8,9,1");
        assert_eq!(p("[3,1,2]"), p("312"));
        assert!("1,1".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
    }

    #[test]
    fn involution_counts() {
        let counts: Vec<usize> = (0..=7).map(|n| involutions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 10, 26, 76, 232]);
        assert!(involutions(6).iter().all(|p| p.is_involution()));
        assert_eq!(permutations(5).len(), 120);
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
