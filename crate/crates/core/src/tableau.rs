//! Standard Young tableaux, row-insertion RSK and evacuation.
//!
//! `rows[0]` is the longest row; rows increase left to right and columns
//! increase from `rows[0]` upwards.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Checks that `rows` is a standard tableau on `1..=n`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Tableau { rows };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::InvalidTableau(format!("row {r} is empty")));
            }
            if r > 0 && row.len() > self.rows[r - 1].len() {
                return Err(Error::InvalidTableau("row lengths increase".into()));
            }
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidTableau(format!(
                        "entries are not 1..={n} each once"
                    )));
                }
                if c > 0 && row[c - 1] >= v {
                    return Err(Error::InvalidTableau(format!("row {r} not increasing")));
                }
                if r > 0 && self.rows[r - 1][c] >= v {
                    return Err(Error::InvalidTableau(format!(
                        "column {c} not increasing"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn position(&self, v: usize) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&e| e == v).map(|c| (r, c)))
    }

    /// Reflection across the main diagonal.
    pub fn transpose(&self) -> Tableau {
        let width = self.rows.first().map_or(0, Vec::len);
        let rows = (0..width)
            .map(|c| {
                self.rows
                    .iter()
                    .take_while(|row| row.len() > c)
                    .map(|row| row[c])
                    .collect()
            })
            .collect();
        Tableau { rows }
    }

    /// Schützenberger involution via repeated promotion: remove the smallest
    /// entry, slide the hole outwards, and label the vacated outer corner
    /// with `n`, `n-1`, ….
    pub fn evacuation(&self) -> Tableau {
        let n = self.size();
        let mut work: Vec<Vec<Option<usize>>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&v| Some(v)).collect())
            .collect();
        let mut out: Vec<Vec<usize>> = self.rows.iter().map(|row| vec![0; row.len()]).collect();
        for step in 0..n {
            let (mut r, mut c) = (0usize, 0usize);
            work[0][0] = None;
            loop {
                let right = work[r].get(c + 1).copied().flatten();
                let up = work.get(r + 1).and_then(|row| row.get(c)).copied().flatten();
                match (right, up) {
                    (None, None) => break,
                    (Some(a), Some(b)) if b < a => {
                        work[r][c] = Some(b);
                        work[r + 1][c] = None;
                        r += 1;
                    }
                    (Some(a), _) => {
                        work[r][c] = Some(a);
                        work[r][c + 1] = None;
                        c += 1;
                    }
                    (None, Some(b)) => {
                        work[r][c] = Some(b);
                        work[r + 1][c] = None;
                        r += 1;
                    }
                }
            }
            // the hole is at an outer corner of what remains
            work[r].truncate(c);
            if work[r].is_empty() {
                work.truncate(r);
            }
            out[r][c] = n - step;
        }
        Tableau { rows: out }
    }
}

pub fn transpose_tableau(t: &Tableau) -> Tableau {
    t.transpose()
}

pub fn evacuation(t: &Tableau) -> Tableau {
    t.evacuation()
}

/// Row insertion. Returns the insertion tableau P and recording tableau Q.
pub fn rsk(pi: &Permutation) -> (Tableau, Tableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &v) in pi.values().iter().enumerate() {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == p.len() {
                p.push(vec![x]);
                q.push(vec![step + 1]);
                break;
            }
            match p[r].iter().position(|&e| e > x) {
                Some(c) => {
                    x = std::mem::replace(&mut p[r][c], x);
                    r += 1;
                }
                None => {
                    p[r].push(x);
                    q[r].push(step + 1);
                    break;
                }
            }
        }
    }
    (Tableau { rows: p }, Tableau { rows: q })
}

/// Reverse bumping, undoing [`rsk`].
pub fn rsk_inverse(p: &Tableau, q: &Tableau) -> Result<Permutation> {
    p.validate()?;
    q.validate()?;
    if p.shape() != q.shape() {
        return Err(Error::InvalidTableau(format!(
            "shapes {:?} and {:?} differ",
            p.shape(),
            q.shape()
        )));
    }
    let n = p.size();
    let mut p = p.rows.clone();
    let mut values = vec![0usize; n];
    for step in (1..=n).rev() {
        let (r, c) = q.position(step).expect("standard");
        let mut x = p[r].remove(c);
        if p[r].is_empty() {
            p.pop();
        }
        for row in p[..r].iter_mut().rev() {
            let c = row.iter().rposition(|&e| e < x).expect("bumped entry");
            x = std::mem::replace(&mut row[c], x);
        }
        values[step - 1] = x;
    }
    Permutation::new(values)
}

/// Does reversing `w` give `(Pᵗ, evac(Q)ᵗ)` where `(P, Q) = rsk(w)`?
pub fn check_reversal_property(w: &Permutation) -> bool {
    let (p, q) = rsk(w);
    rsk(&w.reverse()) == (p.transpose(), q.evacuation().transpose())
}

/// Every standard tableau with `n` boxes, built by placing `1..=n` at
/// addable corners.
pub fn standard_tableaux(n: usize) -> Vec<Tableau> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    fn step(next: usize, n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..=rows.len() {
            let len = rows.get(r).map_or(0, Vec::len);
            let addable = if r == 0 {
                true
            } else {
                rows[r - 1].len() > len
            };
            if !addable {
                continue;
            }
            if r == rows.len() {
                rows.push(vec![next]);
                step(next + 1, n, rows, out);
                rows.pop();
            } else {
                rows[r].push(next);
                step(next + 1, n, rows, out);
                rows[r].pop();
            }
        }
    }
    step(1, n, &mut rows, &mut out);
    out
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        f.write_str(&rows.join("/"))
    }
}

impl FromStr for Tableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Tableau::default());
        }
        let rows = s
            .split('/')
            .map(|row| {
                row.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(rows)
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
