//! Symmetric diagram matrices `A^{s+r,s}`.
//!
//! A diagram with `s` through classes among `s + r` components is identified
//! by the set of through positions. Rows and columns follow the lexicographic
//! order of those sets. Entry `(i, j)` holds the level `min(s,r) - f`, where
//! `f` counts positions that are through in `d_j` but horizontal in `d_i`;
//! level `v` stands for the symbol `x_v`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinat::{binomial, k_subsets, Subset};
use crate::error::{Error, Result};
use crate::par::{map_range, Exec};

pub const DEFAULT_MAX_SIZE: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramKey {
    s: usize,
    r: usize,
    through: Subset,
}

impl DiagramKey {
    pub fn new(s: usize, r: usize, through: Subset) -> Result<Self> {
        if through.len() != s {
            return Err(Error::invalid(format!("through set {through} must have {s} elements")));
        }
        if through.elements().last().is_some_and(|&e| e > s + r) {
            return Err(Error::invalid(format!("through set {through} exceeds {} components", s + r)));
        }
        Ok(Self { s, r, through })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn through_set(&self) -> &Subset {
        &self.through
    }

    /// The dual diagram in `Ω^{s+r,r}`: through and horizontal swap roles.
    pub fn dual(&self) -> DiagramKey {
        DiagramKey { s: self.r, r: self.s, through: self.through.complement(self.s + self.r) }
    }
}

/// Level (index of `x_v`) of the entry between two diagrams.
pub fn entry_level(d_i: &DiagramKey, d_j: &DiagramKey) -> Result<usize> {
    if (d_i.s, d_i.r) != (d_j.s, d_j.r) {
        return Err(Error::invalid(format!(
            "diagrams from different families: (s,r)=({},{}) vs ({},{})",
            d_i.s, d_i.r, d_j.s, d_j.r
        )));
    }
    Ok(level_of(d_i.s, d_i.r, &d_i.through, &d_j.through))
}

#[inline]
fn level_of(s: usize, r: usize, a: &Subset, b: &Subset) -> usize {
    let swapped = s - a.overlap(b);
    s.min(r) - swapped
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Largest admissible side length `C(s+r, s)`.
    pub max_size: usize,
    pub exec: Exec,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { max_size: DEFAULT_MAX_SIZE, exec: Exec::default() }
    }
}

/// The symbolic matrix `A^{s+r,s}`, stored as a dense row-major level table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryMatrix {
    s: usize,
    r: usize,
    n: usize,
    levels: Vec<u8>,
}

impl EntryMatrix {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Side length `C(s+r, s)`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Highest level, `min(s, r)`.
    pub fn top_level(&self) -> usize {
        self.s.min(self.r)
    }

    pub fn level(&self, i: usize, j: usize) -> usize {
        self.levels[i * self.n + j] as usize
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.levels[i * self.n..(i + 1) * self.n]
    }

    /// Row/column labels in index order.
    pub fn keys(&self) -> Vec<DiagramKey> {
        k_subsets(self.s + self.r, self.s)
            .expect("s <= s + r")
            .into_iter()
            .map(|through| DiagramKey { s: self.s, r: self.r, through })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.level(i, j) == self.level(j, i)))
    }

    /// Rows of symbol names `x0..xm`, suitable for CSV output.
    pub fn symbol_rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|v| format!("x{v}")).collect())
            .collect()
    }
}

impl Serialize for EntryMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[u8]> = (0..self.n).map(|i| self.row(i)).collect();
        let mut st = serializer.serialize_struct("EntryMatrix", 4)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("levels", &rows)?;
        st.end()
    }
}

pub fn build(s: usize, r: usize) -> Result<EntryMatrix> {
    build_with(s, r, &BuildOptions::default())
}

/// Builds `A^{s+r,s}` under an explicit size cap and execution strategy.
pub fn build_with(s: usize, r: usize, opts: &BuildOptions) -> Result<EntryMatrix> {
    if s + r == 0 {
        return Err(Error::invalid("need s + r >= 1"));
    }
    let size = binomial((s + r) as u64, s as i64);
    if size > opts.max_size.into() {
        return Err(Error::SizeCap { what: "symmetric diagram matrix", size: size.to_string(), cap: opts.max_size });
    }
    if s.min(r) > u8::MAX as usize {
        return Err(Error::invalid("level range exceeds u8"));
    }
    let keys = k_subsets(s + r, s)?;
    let n = keys.len();
    let rows = map_range(opts.exec, n, |i| {
        keys.iter().map(|kj| level_of(s, r, &keys[i], kj) as u8).collect::<Vec<u8>>()
    });
    Ok(EntryMatrix { s, r, n, levels: rows.concat() })
}

/// Replaces level `v` by `values[v]` everywhere.
pub fn substitute<T: Clone>(m: &EntryMatrix, values: &[T]) -> Result<Vec<Vec<T>>> {
    if values.len() != m.top_level() + 1 {
        return Err(Error::invalid(format!(
            "expected {} substitution values, got {}",
            m.top_level() + 1,
            values.len()
        )));
    }
    Ok((0..m.n).map(|i| m.row(i).iter().map(|&v| values[v as usize].clone()).collect()).collect())
}
