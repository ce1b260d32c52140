//! Slow, obviously-correct reference implementations. Nothing here calls
//! into the library's search code.
#![allow(dead_code)]

/// All involutions of 1..=n as 0-based images.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(p: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(a) = p.iter().position(Option::is_none) else {
            out.push(p.iter().map(|v| v.unwrap()).collect());
            return;
        };
        p[a] = Some(a);
        go(p, out);
        for b in a + 1..p.len() {
            if p[b].is_none() {
                p[a] = Some(b);
                p[b] = Some(a);
                go(p, out);
                p[b] = None;
            }
        }
        p[a] = None;
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], &mut out);
    out
}

/// Every permutation of 0..n.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Ranks of a sequence of distinct values, 0-based.
pub fn pattern(seq: &[usize]) -> Vec<usize> {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    seq.iter()
        .map(|v| sorted.binary_search(v).unwrap())
        .collect()
}

/// Every k-subset of 0..n, increasing.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Containment by trying every subsequence. `sigma` is 0-based.
pub fn contains(p: &[usize], sigma: &[usize], subsets: &[Vec<usize>]) -> bool {
    subsets.iter().any(|idx| {
        let sub: Vec<usize> = idx.iter().map(|&i| p[i]).collect();
        pattern(&sub) == sigma
    })
}

/// Parses "1234" into 0-based values.
pub fn word(s: &str) -> Vec<usize> {
    s.bytes().map(|b| (b - b'1') as usize).collect()
}

/// Involutions of length n avoiding sigma, by exhaustive subsequence tests.
pub fn count_avoiding(n: usize, sigma: &str) -> u64 {
    let sigma = word(sigma);
    let subs = subsets(n, sigma.len());
    involutions(n)
        .iter()
        .filter(|p| !contains(p, &sigma, &subs))
        .count() as u64
}
