//! Gram matrices `G_s` of the partition algebra and their reduced block
//! spectra.
//!
//! A half diagram is a set partition `R` of `1..=k` with `s` designated
//! through blocks; the remaining `r` blocks are horizontal. The Gram entry
//! of two half diagrams is `x^m` when their through blocks pair up
//! bijectively inside the join `R_i ∨ R_j` (`m` counts join blocks touching
//! no through block), and `0` when the propagating number drops.
//!
//! Paired row and column operations bring `G_s` to a block-diagonal form with
//! one block per `r`, each a direct sum of `S(k, s+r)` copies of `A^{s+r,s}`
//! with `x_{min-t}` replaced by `(-1)^t t! prod_{m=t}^{r-1} (x - (s+m))`.
//! These operations preserve the determinant up to sign, not the spectrum of
//! `G_s` itself, so everything here is checked at determinant level.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinat::{binomial, k_subsets, set_partitions, stirling2, SetPartition, Subset};
use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::par::{map_range, Exec};
use crate::poly::{factor_product, integer_roots, Polynomial};
use crate::spectrum::{eberlein_coefficient, multiplicities};

pub const DEFAULT_MAX_SIZE: usize = 3_000;

/// `U^R_R`: a set partition of `1..=k` plus a choice of through blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfDiagram {
    partition: SetPartition,
    /// 1-based block indices (blocks ordered by their smallest point).
    through: Subset,
}

impl HalfDiagram {
    pub fn new(partition: SetPartition, through: Subset) -> Result<Self> {
        if through.elements().last().is_some_and(|&b| b > partition.num_blocks()) {
            return Err(Error::invalid(format!(
                "through block {through} out of range for {} blocks",
                partition.num_blocks()
            )));
        }
        Ok(Self { partition, through })
    }

    pub fn k(&self) -> usize {
        self.partition.len()
    }

    pub fn s(&self) -> usize {
        self.through.len()
    }

    /// Number of horizontal blocks.
    pub fn r(&self) -> usize {
        self.partition.num_blocks() - self.s()
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn through_blocks(&self) -> &Subset {
        &self.through
    }

    fn point_is_through(&self, point: usize) -> bool {
        self.through.contains(self.partition.labels()[point] + 1)
    }
}

impl fmt::Display for HalfDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, through {}]", self.partition, self.through)
    }
}

/// Half diagrams with `s` through blocks, grouped by ascending `r`, then by
/// partition order, then by through-set order.
pub fn enumerate_half_diagrams(k: usize, s: usize) -> Result<Vec<HalfDiagram>> {
    if s > k {
        return Err(Error::invalid(format!("s = {s} exceeds k = {k}")));
    }
    let mut out = Vec::new();
    for r in 0..=k - s {
        if s + r == 0 && k > 0 {
            continue;
        }
        let throughs = k_subsets(s + r, s)?;
        for partition in set_partitions(k, s + r)? {
            for through in &throughs {
                out.push(HalfDiagram { partition: partition.clone(), through: through.clone() });
            }
        }
    }
    Ok(out)
}

/// `f_s = sum_r S(k, s+r) C(s+r, s)`.
pub fn gram_size(k: usize, s: usize) -> BigUint {
    if s > k {
        return BigUint::zero();
    }
    (0..=k - s).map(|r| stirling2(k, s + r) * binomial((s + r) as u64, s as i64)).sum()
}

/// Gram entry `<h_i, h_j>`: `x^loops`, or zero when the propagating number drops.
pub fn gram_entry(h_i: &HalfDiagram, h_j: &HalfDiagram) -> Result<Polynomial> {
    if h_i.k() != h_j.k() || h_i.s() != h_j.s() {
        return Err(Error::invalid(format!("incompatible half diagrams {h_i} and {h_j}")));
    }
    Ok(match entry_exponent(h_i, h_j) {
        Some(m) => Polynomial::monomial(m),
        None => Polynomial::zero(),
    })
}

fn entry_exponent(h_i: &HalfDiagram, h_j: &HalfDiagram) -> Option<usize> {
    let k = h_i.k();
    let mut uf = UnionFind::new(k);
    for part in [&h_i.partition, &h_j.partition] {
        let mut first = vec![usize::MAX; part.num_blocks()];
        for (p, &b) in part.labels().iter().enumerate() {
            if first[b] == usize::MAX {
                first[b] = p;
            } else {
                uf.union(first[b], p);
            }
        }
    }
    // per join block: touched by a through block of h_i / of h_j
    let mut touch = vec![(false, false, false); k];
    for p in 0..k {
        let root = uf.find(p);
        let e = &mut touch[root];
        e.0 = true;
        e.1 |= h_i.point_is_through(p);
        e.2 |= h_j.point_is_through(p);
    }
    let mut matched = 0;
    let mut loops = 0;
    for &(present, a, b) in &touch {
        if !present {
            continue;
        }
        match (a, b) {
            (true, true) => matched += 1,
            (false, false) => loops += 1,
            _ => {}
        }
    }
    (matched == h_i.s()).then_some(loops)
}

#[derive(Debug, Clone, Copy)]
pub struct GramOptions {
    pub max_size: usize,
    pub exec: Exec,
}

impl Default for GramOptions {
    fn default() -> Self {
        Self { max_size: DEFAULT_MAX_SIZE, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub k: usize,
    pub s: usize,
    pub diagrams: Vec<HalfDiagram>,
    pub entries: Vec<Vec<Polynomial>>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.diagrams.len()
    }

    /// Entries rendered as `0`, `1`, `x`, `x^m`.
    pub fn monomial_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| match p.coeffs().len() {
                        0 => "0".to_string(),
                        1 => "1".to_string(),
                        2 => "x".to_string(),
                        n => format!("x^{}", n - 1),
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn build_gram(k: usize, s: usize) -> Result<GramMatrix> {
    build_gram_with(k, s, &GramOptions::default())
}

pub fn build_gram_with(k: usize, s: usize, opts: &GramOptions) -> Result<GramMatrix> {
    if s > k {
        return Err(Error::invalid(format!("s = {s} exceeds k = {k}")));
    }
    let size = gram_size(k, s);
    if size > opts.max_size.into() {
        return Err(Error::SizeCap { what: "Gram matrix", size: size.to_string(), cap: opts.max_size });
    }
    let diagrams = enumerate_half_diagrams(k, s)?;
    let entries = map_range(opts.exec, diagrams.len(), |i| {
        diagrams
            .iter()
            .map(|hj| match entry_exponent(&diagrams[i], hj) {
                Some(m) => Polynomial::monomial(m),
                None => Polynomial::zero(),
            })
            .collect()
    });
    Ok(GramMatrix { k, s, diagrams, entries })
}

/// `X_{min(s,r)-t} = (-1)^t t! prod_{m=t}^{r-1} (x - (s+m))`.
pub fn x_substitution_poly(s: usize, r: usize, t: usize) -> Result<Polynomial> {
    if t > s.min(r) {
        return Err(Error::invalid(format!("t = {t} exceeds min(s,r) = {}", s.min(r))));
    }
    let factors: Vec<Polynomial> = (t..r).map(|m| Polynomial::linear((s + m) as i64)).collect();
    Ok(factor_product(&factors).scale(&signed_factorial(t)))
}

/// `(-1)^t t!`.
pub(crate) fn signed_factorial(t: usize) -> BigInt {
    let f: BigInt = (1..=t).map(BigInt::from).product();
    if t.is_multiple_of(2) {
        f
    } else {
        -f
    }
}

/// Block eigenpolynomials `sum_t c(s,r,l,t) X_{min-t}` for `l = 0..=min(s,r)`.
pub fn block_eigenpolys(s: usize, r: usize) -> Vec<Polynomial> {
    let top = s.min(r);
    let xs: Vec<Polynomial> = (0..=top).map(|t| x_substitution_poly(s, r, t).expect("t <= top")).collect();
    (0..=top)
        .map(|l| {
            (0..=top).fold(Polynomial::zero(), |acc, t| {
                let c = eberlein_coefficient(s, r, l, t).expect("l, t <= top");
                &acc + &xs[t].scale(&c)
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEigen {
    pub l: usize,
    pub poly: Polynomial,
    pub multiplicity: BigUint,
}

impl Serialize for BlockEigen {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BlockEigen", 3)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("poly", &self.poly)?;
        st.serialize_field("multiplicity", &self.multiplicity.to_string())?;
        st.end()
    }
}

/// Reduced spectrum of the `r`-th diagonal block of `G_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpectrum {
    pub r: usize,
    /// Number of copies of `A^{s+r,s}` in the block, `S(k, s+r)`.
    pub copies: BigUint,
    pub eigen: Vec<BlockEigen>,
}

impl Serialize for BlockSpectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BlockSpectrum", 3)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("copies", &self.copies.to_string())?;
        st.serialize_field("eigen", &self.eigen)?;
        st.end()
    }
}

pub fn block_spectrum(k: usize, s: usize, r: usize) -> Result<BlockSpectrum> {
    if s > k || r > k - s {
        return Err(Error::invalid(format!("need 0 <= r <= k - s, got k={k} s={s} r={r}")));
    }
    let copies = stirling2(k, s + r);
    let eigen = block_eigenpolys(s, r)
        .into_iter()
        .zip(multiplicities(s, r))
        .enumerate()
        .map(|(l, (poly, m))| BlockEigen { l, poly, multiplicity: &copies * m })
        .collect();
    Ok(BlockSpectrum { r, copies, eigen })
}

/// Blocks of `G_s` that actually occur (at least one copy).
pub fn gram_blocks(k: usize, s: usize) -> Result<Vec<BlockSpectrum>> {
    if s > k {
        return Err(Error::invalid(format!("s = {s} exceeds k = {k}")));
    }
    let mut out = Vec::new();
    for r in 0..=k - s {
        let block = block_spectrum(k, s, r)?;
        if !block.copies.is_zero() {
            out.push(block);
        }
    }
    Ok(out)
}

/// `prod_{r,l} E_{r,l}^{mult}`: the determinant predicted by the block spectra.
pub fn predicted_determinant(k: usize, s: usize) -> Result<Polynomial> {
    let mut acc = Polynomial::one();
    for block in gram_blocks(k, s)? {
        for e in &block.eigen {
            let exp = u64::try_from(&e.multiplicity)
                .map_err(|_| Error::invalid("multiplicity exceeds u64"))?;
            acc = &acc * &e.poly.pow(exp);
        }
    }
    Ok(acc)
}

fn check_l(s: usize, r: usize, l: usize) -> Result<()> {
    if l > s.min(r) {
        return Err(Error::invalid(format!("l = {l} exceeds min(s,r) = {}", s.min(r))));
    }
    Ok(())
}

/// Factored block eigenpolynomial
/// `prod_{i=0}^{l-1} (x-(s-1+i)) * prod_{j=0}^{r-l-1} (x-(2s+j))`.
///
/// The second product runs to `r-l-1`. The bound `min(s,r)-l-1` agrees with
/// it only for `r <= s`; see [`printed_product_form`].
pub fn product_form(s: usize, r: usize, l: usize) -> Result<Polynomial> {
    check_l(s, r, l)?;
    Ok(two_run_product(s, l, r - l))
}

/// The factored form with the second run stopping at `min(s,r)-l-1`.
/// For `r > s` its degree is `min(s,r)` rather than `r`.
pub fn printed_product_form(s: usize, r: usize, l: usize) -> Result<Polynomial> {
    check_l(s, r, l)?;
    Ok(two_run_product(s, l, s.min(r) - l))
}

fn two_run_product(s: usize, first: usize, second: usize) -> Polynomial {
    let factors: Vec<Polynomial> = (0..first)
        .map(|i| Polynomial::linear(s as i64 - 1 + i as i64))
        .chain((0..second).map(|j| Polynomial::linear((2 * s + j) as i64)))
        .collect();
    factor_product(&factors)
}

/// Integer values of `x` where some block eigenpolynomial of `G_s` vanishes.
pub fn semisimple_exceptions(k: usize, s: usize) -> Result<BTreeSet<BigInt>> {
    let mut out = BTreeSet::new();
    for block in gram_blocks(k, s)? {
        for e in &block.eigen {
            out.extend(integer_roots(&e.poly)?);
        }
    }
    Ok(out)
}

/// Block spectra of `G_s` plus optional determinant and singularity data.
#[derive(Debug, Clone, Serialize)]
pub struct GramSpectrumReport {
    pub k: usize,
    pub s: usize,
    pub blocks: Vec<BlockSpectrum>,
    pub det_sign: Option<i8>,
    pub singular_x: Option<Vec<i64>>,
}

pub fn gram_report(k: usize, s: usize) -> Result<GramSpectrumReport> {
    Ok(GramSpectrumReport { k, s, blocks: gram_blocks(k, s)?, det_sign: None, singular_x: None })
}
