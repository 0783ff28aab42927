//! Exact combinatorial primitives: binomials, Stirling numbers of the second
//! kind, lexicographic k-subsets and set partitions in restricted-growth form.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` in machine words; panics on overflow. Only used for indexing.
pub(crate) fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    usize::try_from(acc).expect("binomial overflows usize")
}

/// Number of partitions of an `n`-set into exactly `b` nonempty blocks.
pub fn stirling2(n: usize, b: usize) -> BigUint {
    if b > n {
        return BigUint::zero();
    }
    // row[j] = S(i, j), built up to i = n
    let mut row = vec![BigUint::zero(); b + 1];
    row[0] = BigUint::one();
    for _ in 0..n {
        for j in (1..=b).rev() {
            let carried = &row[j] * j + &row[j - 1];
            row[j] = carried;
        }
        row[0] = BigUint::zero();
    }
    row[b].clone()
}

/// A strictly increasing selection of points from `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subset(Vec<usize>);

impl Subset {
    /// Validates and wraps `elements` as a subset of `1..=n`.
    pub fn new(elements: Vec<usize>, n: usize) -> Result<Self> {
        if elements.iter().any(|&e| e == 0 || e > n) {
            return Err(Error::invalid(format!("subset {elements:?} not inside 1..={n}")));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("subset {elements:?} not strictly increasing")));
        }
        Ok(Subset(elements))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// Size of the intersection with another subset (merge walk).
    pub fn overlap(&self, other: &Subset) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// Complement inside `1..=n`.
    pub fn complement(&self, n: usize) -> Subset {
        Subset((1..=n).filter(|e| !self.contains(*e)).collect())
    }

    /// Position of this subset in `k_subsets(n, self.len())`.
    pub fn lex_rank(&self, n: usize) -> usize {
        let k = self.0.len();
        let mut rank = 0;
        let mut prev = 0;
        for (i, &e) in self.0.iter().enumerate() {
            for skipped in prev + 1..e {
                rank += binomial_usize(n - skipped, k - i - 1);
            }
            prev = e;
        }
        rank
    }

    /// Inverse of [`Subset::lex_rank`].
    pub fn lex_unrank(mut rank: usize, n: usize, k: usize) -> Result<Subset> {
        if k > n || rank >= binomial_usize(n, k) {
            return Err(Error::invalid(format!("rank {rank} out of range for C({n},{k})")));
        }
        let mut out = Vec::with_capacity(k);
        let mut next = 1;
        for i in 0..k {
            loop {
                let block = binomial_usize(n - next, k - i - 1);
                if rank < block {
                    break;
                }
                rank -= block;
                next += 1;
            }
            out.push(next);
            next += 1;
        }
        Ok(Subset(out))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Result<Vec<Subset>> {
    if k > n {
        return Err(Error::invalid(format!("cannot choose {k} elements from {n}")));
    }
    let mut out = Vec::with_capacity(binomial_usize(n, k));
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Subset(cur.clone()));
        // rightmost position that can still advance
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    Ok(out)
}

/// A set partition of `1..=n` stored as a restricted-growth string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    labels: Vec<usize>,
    blocks: usize,
}

impl SetPartition {
    /// Validates a restricted-growth string (`labels[i]` is the block of point `i+1`).
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        let mut max_seen: Option<usize> = None;
        for &l in &labels {
            let limit = max_seen.map_or(0, |m| m + 1);
            if l > limit {
                return Err(Error::invalid(format!("{labels:?} is not a restricted-growth string")));
            }
            max_seen = Some(max_seen.map_or(l, |m| m.max(l)));
        }
        let blocks = max_seen.map_or(0, |m| m + 1);
        Ok(SetPartition { labels, blocks })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Size of the ground set.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    /// Blocks as sorted lists of 1-based points, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i + 1);
        }
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            write!(f, "{{")?;
            for (i, p) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// All partitions of `1..=n` into exactly `b` blocks, in lexicographic order
/// of their restricted-growth strings.
pub fn set_partitions(n: usize, b: usize) -> Result<Vec<SetPartition>> {
    if b > n {
        return Err(Error::invalid(format!("cannot split {n} points into {b} blocks")));
    }
    if b == 0 && n > 0 {
        return Err(Error::invalid("a nonempty set needs at least one block"));
    }
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(n);
    fill_rgs(n, b, &mut labels, 0, &mut out);
    Ok(out)
}

fn fill_rgs(n: usize, b: usize, labels: &mut Vec<usize>, used: usize, out: &mut Vec<SetPartition>) {
    let pos = labels.len();
    if pos == n {
        if used == b {
            out.push(SetPartition { labels: labels.clone(), blocks: b });
        }
        return;
    }
    // remaining points must be able to open the missing blocks
    let remaining = n - pos;
    for label in 0..=used.min(b - 1) {
        let new_used = used.max(label + 1);
        if b - new_used > remaining - 1 {
            continue;
        }
        labels.push(label);
        fill_rgs(n, b, labels, new_used, out);
        labels.pop();
    }
}
