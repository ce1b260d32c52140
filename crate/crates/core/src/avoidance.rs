//! Exact counts of pattern-avoiding involutions and symmetric full
//! placements, with closed formulas as independent cross-checks.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::board::{for_each_symmetric_full, Shape};
use crate::error::{out_of_range, Error, Result};
use crate::occurrence::Matcher;
use crate::perm::{for_each_involution, involution_step, Permutation};

/// A nonempty set of nonempty patterns, kept shortest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet {
    patterns: Vec<Permutation>,
}

impl PatternSet {
    pub fn new(patterns: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut patterns: Vec<Permutation> = patterns.into_iter().collect();
        if patterns.is_empty() {
            return Err(Error::InvalidPattern("pattern set is empty".into()));
        }
        if patterns.iter().any(Permutation::is_empty) {
            return Err(Error::InvalidPattern("empty pattern in set".into()));
        }
        patterns.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        patterns.dedup();
        Ok(PatternSet { patterns })
    }

    pub fn single(p: Permutation) -> Result<Self> {
        PatternSet::new([p])
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn with(&self, p: Permutation) -> Result<Self> {
        PatternSet::new(self.patterns.iter().cloned().chain([p]))
    }

    fn matchers(&self) -> Vec<Matcher> {
        self.patterns.iter().map(|p| Matcher::new(p.values())).collect()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .patterns
            .iter()
            .map(|p| {
                if p.len() <= 9 {
                    p.to_string()
                } else {
                    format!("[{p}]")
                }
            })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    /// Comma-separated digit strings; patterns longer than nine are written
    /// as bracketed comma lists, e.g. `123,[1,2,3,4,5,6,7,8,9,10]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut patterns = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let (token, tail) = if rest.starts_with('[') {
                let end = rest
                    .find(']')
                    .ok_or_else(|| Error::Parse(format!("unclosed '[' in {s:?}")))?;
                (&rest[..=end], &rest[end + 1..])
            } else {
                match rest.find(',') {
                    Some(i) => (&rest[..i], &rest[i..]),
                    None => (rest, ""),
                }
            };
            patterns.push(token.parse::<Permutation>()?);
            rest = tail.trim_start();
            if let Some(t) = rest.strip_prefix(',') {
                rest = t.trim_start();
            } else if !rest.is_empty() {
                return Err(Error::Parse(format!("expected ',' in {s:?}")));
            }
        }
        PatternSet::new(patterns)
    }
}

impl Serialize for PatternSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn avoids_all(matchers: &[Matcher], xs: &[usize], ys: &[usize], bound: Option<&Shape>) -> bool {
    matchers.iter().all(|m| !m.occurs(xs, ys, bound))
}

/// Number of involutions of `S_n` avoiding every pattern of `t`.
pub fn count_avoiders(n: usize, t: &PatternSet) -> u64 {
    let matchers = t.matchers();
    let xs: Vec<usize> = (1..=n).collect();
    let mut count = 0u64;
    for_each_involution(n, &mut |ys| {
        if avoids_all(&matchers, &xs, ys, None) {
            count += 1;
        }
    });
    count
}

/// Same count, with the search tree split on the partner of position 1 and
/// the branches run on the current rayon pool.
pub fn par_count_avoiders(n: usize, t: &PatternSet) -> u64 {
    if n < 2 {
        return count_avoiders(n, t);
    }
    let matchers = t.matchers();
    let xs: Vec<usize> = (1..=n).collect();
    (1..=n)
        .into_par_iter()
        .map(|partner| {
            let mut values = vec![0usize; n];
            values[0] = partner;
            values[partner - 1] = 1;
            let mut count = 0u64;
            involution_step(&mut values, 1, &mut |ys| {
                if avoids_all(&matchers, &xs, ys, None) {
                    count += 1;
                }
            });
            count
        })
        .sum()
}

/// Symmetric full placements on a self-conjugate shape avoiding every
/// pattern of `t` (bounded containment).
pub fn lambda_sym(shape: &Shape, t: &PatternSet) -> Result<u64> {
    shape.require_self_conjugate()?;
    let matchers = t.matchers();
    let xs: Vec<usize> = (1..=shape.width()).collect();
    let mut count = 0u64;
    for_each_symmetric_full(shape, &mut |ys| {
        if avoids_all(&matchers, &xs, ys, Some(shape)) {
            count += 1;
        }
    });
    Ok(count)
}

/// Symmetric full placements on `shape` avoiding `main` everywhere and
/// `flank` among the dots of columns `from..=to`.
pub fn count_with_window(
    shape: &Shape,
    main: &PatternSet,
    flank: &Permutation,
    from: usize,
    to: usize,
) -> Result<u64> {
    shape.require_self_conjugate()?;
    let matchers = main.matchers();
    let flank = Matcher::new(flank.values());
    let xs: Vec<usize> = (1..=shape.width()).collect();
    let mut count = 0u64;
    for_each_symmetric_full(shape, &mut |ys| {
        if !avoids_all(&matchers, &xs, ys, Some(shape)) {
            return;
        }
        if from <= to && from >= 1 {
            let window = from - 1..to.min(ys.len());
            if flank.occurs(&xs[window.clone()], &ys[window], Some(shape)) {
                return;
            }
        }
        count += 1;
    });
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got {s:?}"))),
        }
    }
}

/// Involutions of `S_n` (symmetric full placements on the square) avoiding
/// `main`, whose `i` outermost columns on `side` avoid `flank`.
pub fn count_avoiders_with_column_constraint(
    n: usize,
    main: &PatternSet,
    flank: &Permutation,
    side: Side,
    i: usize,
) -> Result<u64> {
    if i > n {
        return Err(out_of_range("i", i, 0, n));
    }
    let (from, to) = match side {
        Side::Left => (1, i),
        Side::Right => (n + 1 - i, n),
    };
    count_with_window(&Shape::square(n), main, flank, from, to)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

fn catalan(k: u64) -> BigUint {
    binomial(2 * k, k) / (k + 1)
}

/// `C(n, ⌊n/2⌋)`: involutions avoiding 123 (also 132, 213, 321).
pub fn closed_form_123(n: u64) -> BigUint {
    binomial(n, n / 2)
}

/// `2^(n-1)`: involutions avoiding 231 or 312.
pub fn closed_form_231(n: u64) -> BigUint {
    assert!(n >= 1);
    BigUint::from(1u32) << (n - 1)
}

/// Motzkin number `M_n`.
pub fn closed_form_1234(n: u64) -> BigUint {
    (0..=n / 2)
        .map(|i| binomial(n, 2 * i) * binomial(2 * i, i) / (i + 1))
        .sum()
}

/// `C_k²` for `n = 2k-1` and `C_k C_{k+1}` for `n = 2k`.
pub fn closed_form_12345(n: u64) -> BigUint {
    assert!(n >= 1);
    if n % 2 == 1 {
        let k = n.div_ceil(2);
        catalan(k) * catalan(k)
    } else {
        let k = n / 2;
        catalan(k) * catalan(k + 1)
    }
}

pub fn closed_form_123456(n: u64) -> BigUint {
    (0..=n / 2)
        .map(|i| {
            let num = factorial(3) * factorial(n) * factorial(2 * i + 2);
            let den = factorial(n - 2 * i)
                * factorial(i)
                * factorial(i + 1)
                * factorial(i + 2)
                * factorial(i + 3);
            debug_assert!((&num % &den) == BigUint::from(0u32));
            num / den
        })
        .sum()
}

/// Exact counts keyed by (pattern-class label, n).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    entries: BTreeMap<(String, usize), u64>,
}

#[derive(Serialize)]
struct CountCell<'a> {
    class: &'a str,
    n: usize,
    count: u64,
}

impl CountTable {
    pub fn insert(&mut self, label: impl Into<String>, n: usize, count: u64) {
        self.entries.insert((label.into(), n), count);
    }

    pub fn get(&self, label: &str, n: usize) -> Option<u64> {
        self.entries.get(&(label.to_string(), n)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize, u64)> {
        self.entries.iter().map(|((l, n), c)| (l.as_str(), *n, *c))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,n,count\n");
        for (l, n, c) in self.iter() {
            out.push_str(&format!("{l},{n},{c}\n"));
        }
        out
    }
}

impl Serialize for CountTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|(class, n, count)| CountCell { class, n, count }))
    }
}

/// Persistent memo of counts, a JSON object mapping `"patterns|n"` to the
/// count. Writes go through the lock; reads may run concurrently.
#[derive(Debug, Default)]
pub struct MemoStore {
    path: Option<PathBuf>,
    map: RwLock<BTreeMap<String, u64>>,
}

impl MemoStore {
    pub fn in_memory() -> Self {
        MemoStore::default()
    }

    /// Opens (or starts) the store at `path`. A missing file is an empty
    /// store.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let map = match std::fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(MemoStore {
            path: Some(path),
            map: RwLock::new(map),
        })
    }

    pub fn key(t: &PatternSet, n: usize) -> String {
        format!("{t}|{n}")
    }

    pub fn get(&self, t: &PatternSet, n: usize) -> Option<u64> {
        self.map.read().unwrap().get(&Self::key(t, n)).copied()
    }

    pub fn insert(&self, t: &PatternSet, n: usize, count: u64) {
        self.map.write().unwrap().insert(Self::key(t, n), count);
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn save(&self) -> Result<()> {
        if let Some(path) = &self.path {
            let map = self.map.write().unwrap();
            let text = serde_json::to_string_pretty(&*map)?;
            std::fs::write(path, text + "\n")?;
        }
        Ok(())
    }

    /// Count from the store, computing and recording it on a miss.
    pub fn count(&self, n: usize, t: &PatternSet, parallel: bool) -> u64 {
        if let Some(c) = self.get(t, n) {
            return c;
        }
        let c = if parallel {
            par_count_avoiders(n, t)
        } else {
            count_avoiders(n, t)
        };
        self.insert(t, n, c);
        c
    }
}
