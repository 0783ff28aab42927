//! Reduced block spectra for the algebra of Z2-relations and the signed
//! partition algebra.
//!
//! Each diagonal block indexed by `(r1, r2)` is a tensor product of an
//! `{e}`-block `A^{s1+r1,s1}` and a Z2-block `A^{s2+r2,s2}`. The `{e}`
//! symbols are substituted by
//! `(-1)^t 2^t t! prod_{i=t}^{r1-1} (x^2 - x - 2(s1+i))` and the Z2 symbols
//! by `(-1)^t t! prod_{m=t}^{r2-1} (x - (s2+m))`, so block eigenpolynomials
//! are pairwise products of the two families.

use num_bigint::{BigInt, BigUint};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gram_partition::{block_eigenpolys, signed_factorial};
use crate::poly::{factor_product, Polynomial};
use crate::spectrum::{eberlein_coefficient, multiplicities};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Z2,
    Signed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedBlockKey {
    pub k: usize,
    pub s1: usize,
    pub s2: usize,
    pub r1: usize,
    pub r2: usize,
}

impl SignedBlockKey {
    /// Checks the per-mode ranges: `r1, r2 <= k-s1-s2`, and in signed mode
    /// `r2 <= k-s1-s2-1`.
    pub fn validate(&self, mode: Mode) -> Result<()> {
        let free = free_components(self.k, self.s1, self.s2, mode)?;
        if self.r1 > free || self.r2 > free {
            return Err(Error::invalid(format!("need r1, r2 <= {free}, got r1={} r2={}", self.r1, self.r2)));
        }
        if mode == Mode::Signed && self.r2 + 1 > free {
            return Err(Error::invalid(format!("signed mode needs r2 <= {}, got {}", free as isize - 1, self.r2)));
        }
        Ok(())
    }
}

/// `k - s1 - s2`, validated for the mode.
fn free_components(k: usize, s1: usize, s2: usize, mode: Mode) -> Result<usize> {
    let used = s1 + s2;
    match mode {
        Mode::Z2 if used <= k => Ok(k - used),
        Mode::Signed if used < k => Ok(k - used),
        Mode::Z2 => Err(Error::invalid(format!("need s1 + s2 <= k, got {used} > {k}"))),
        Mode::Signed => Err(Error::invalid(format!("signed mode needs s1 + s2 <= k - 1, got {used} >= {k}"))),
    }
}

fn quadratic(c: usize) -> Polynomial {
    // x^2 - x - 2c
    Polynomial::from_coeffs(vec![BigInt::from(-2 * c as i64), BigInt::from(-1), BigInt::from(1)])
}

/// `{e}` substitution `(-1)^t 2^t t! prod_{i=t}^{r1-1} (x^2 - x - 2(s1+i))`.
pub fn x_e_poly(s1: usize, r1: usize, t: usize) -> Result<Polynomial> {
    if t > s1.min(r1) {
        return Err(Error::invalid(format!("t = {t} exceeds min(s1,r1) = {}", s1.min(r1))));
    }
    let factors: Vec<Polynomial> = (t..r1).map(|i| quadratic(s1 + i)).collect();
    let scale = signed_factorial(t) * (BigInt::from(1) << t);
    Ok(factor_product(&factors).scale(&scale))
}

/// Z2 substitution `(-1)^t t! prod_{m=t}^{r2-1} (x - (s2+m))`.
pub fn x_z2_poly(s2: usize, r2: usize, t: usize) -> Result<Polynomial> {
    crate::gram_partition::x_substitution_poly(s2, r2, t)
}

/// `(l, E_l)` for the `{e}`-family, each of degree `2 r1`.
pub fn e_family_eigenvalues(s1: usize, r1: usize) -> Vec<(usize, Polynomial)> {
    let top = s1.min(r1);
    let xs: Vec<Polynomial> = (0..=top).map(|t| x_e_poly(s1, r1, t).expect("t <= top")).collect();
    (0..=top)
        .map(|l| {
            let e = (0..=top).fold(Polynomial::zero(), |acc, t| {
                &acc + &xs[t].scale(&eberlein_coefficient(s1, r1, l, t).expect("l, t <= top"))
            });
            (l, e)
        })
        .collect()
}

/// `(l, E'_l)` for the Z2-family; the partition-algebra block polynomials.
pub fn z2_family_eigenvalues(s2: usize, r2: usize) -> Vec<(usize, Polynomial)> {
    block_eigenpolys(s2, r2).into_iter().enumerate().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorEigen {
    pub l1: usize,
    pub l2: usize,
    pub poly: Polynomial,
    pub multiplicity_per_copy: BigUint,
}

impl Serialize for TensorEigen {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TensorEigen", 4)?;
        st.serialize_field("l1", &self.l1)?;
        st.serialize_field("l2", &self.l2)?;
        st.serialize_field("poly", &self.poly)?;
        st.serialize_field("multiplicity_per_copy", &self.multiplicity_per_copy.to_string())?;
        st.end()
    }
}

/// Eigenpolynomials of one tensor block, per copy.
pub fn block_spectrum_tensor(key: &SignedBlockKey, mode: Mode) -> Result<Vec<TensorEigen>> {
    key.validate(mode)?;
    let e_fam = e_family_eigenvalues(key.s1, key.r1);
    let z_fam = z2_family_eigenvalues(key.s2, key.r2);
    let e_mult = multiplicities(key.s1, key.r1);
    let z_mult = multiplicities(key.s2, key.r2);
    let mut out = Vec::with_capacity(e_fam.len() * z_fam.len());
    for (l1, e) in &e_fam {
        for (l2, z) in &z_fam {
            out.push(TensorEigen {
                l1: *l1,
                l2: *l2,
                poly: e * z,
                multiplicity_per_copy: &e_mult[*l1] * &z_mult[*l2],
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorBlock {
    pub r1: usize,
    pub r2: usize,
    pub eigen: Vec<TensorEigen>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignedReport {
    pub mode: Mode,
    pub k: usize,
    pub s1: usize,
    pub s2: usize,
    pub blocks: Vec<TensorBlock>,
}

/// All tensor blocks of `G_{2s1+s2}`: `r1 + r2 <= k - s1 - s2` within the
/// per-mode ranges of [`SignedBlockKey::validate`].
pub fn signed_report(mode: Mode, k: usize, s1: usize, s2: usize) -> Result<SignedReport> {
    let free = free_components(k, s1, s2, mode)?;
    let mut blocks = Vec::new();
    for r1 in 0..=free {
        for r2 in 0..=free - r1 {
            let key = SignedBlockKey { k, s1, s2, r1, r2 };
            if key.validate(mode).is_err() {
                continue;
            }
            blocks.push(TensorBlock { r1, r2, eigen: block_spectrum_tensor(&key, mode)? });
        }
    }
    Ok(SignedReport { mode, k, s1, s2, blocks })
}

/// How an off-diagonal entry of the exceptional block is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffDiagonal {
    Zero,
    /// Propagating number drops; `t1` `{e}`- and `t2` Z2-classes swap roles.
    Lowered { t1: usize, t2: usize },
    /// Propagating number is preserved.
    Propagating,
}

/// Row structure of the exceptional block `Ã'_λ'` (all-singleton partition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalLayout {
    /// `r'_1` of each row, `1 <= r'_1 <= k - s1 - s2`.
    pub row_r1: Vec<usize>,
    /// `rules[i][j]` for `i != j`; diagonal entries are ignored.
    pub rules: Vec<Vec<OffDiagonal>>,
}

impl ExceptionalLayout {
    /// `2(k-s1-s2)` rows, two per value of `r'_1`, every off-diagonal pair
    /// treated as propagating.
    pub fn standard(k: usize, s1: usize, s2: usize) -> Result<Self> {
        let free = free_components(k, s1, s2, Mode::Signed)?;
        let row_r1: Vec<usize> = (1..=free).flat_map(|r| [r, r]).collect();
        let n = row_r1.len();
        Ok(Self { row_r1, rules: vec![vec![OffDiagonal::Propagating; n]; n] })
    }
}

pub fn build_exceptional_block(k: usize, s1: usize, s2: usize) -> Result<Vec<Vec<Polynomial>>> {
    build_exceptional_block_with(k, s1, s2, &ExceptionalLayout::standard(k, s1, s2)?)
}

/// Fills the exceptional block entry by entry from its layout.
pub fn build_exceptional_block_with(
    k: usize,
    s1: usize,
    s2: usize,
    layout: &ExceptionalLayout,
) -> Result<Vec<Vec<Polynomial>>> {
    let free = free_components(k, s1, s2, Mode::Signed)?;
    let n = layout.row_r1.len();
    if layout.rules.len() != n || layout.rules.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("layout rules must be a square table matching the rows"));
    }
    if let Some(bad) = layout.row_r1.iter().find(|&&r| r == 0 || r > free) {
        return Err(Error::invalid(format!("r'_1 = {bad} outside 1..={free}")));
    }
    let z2_tail = factor_product(&(0..free).map(|m| Polynomial::linear((s2 + m) as i64)).collect::<Vec<_>>());
    let e_run = |from: usize, to: usize| {
        factor_product(&(from..to).map(|j| quadratic(s1 + j)).collect::<Vec<_>>())
    };
    let z_run = |from: usize, to: usize| {
        factor_product(&(from..to).map(|m| Polynomial::linear((s2 + m) as i64)).collect::<Vec<_>>())
    };
    let mut out = vec![vec![Polynomial::zero(); n]; n];
    for i in 0..n {
        let r1 = layout.row_r1[i];
        let r2 = free - r1;
        for j in 0..n {
            out[i][j] = if i == j {
                &(e_run(0, r1) * z_run(0, r2)) + &z2_tail
            } else {
                match layout.rules[i][j] {
                    OffDiagonal::Zero => Polynomial::zero(),
                    OffDiagonal::Lowered { t1, t2 } => {
                        if t1 > r1 || t2 > r2 {
                            return Err(Error::invalid(format!(
                                "rule ({t1},{t2}) exceeds row ({r1},{r2})"
                            )));
                        }
                        let scale = signed_factorial(t1)
                            * signed_factorial(t2)
                            * (BigInt::from(1) << t1);
                        let core = (e_run(t1, r1) * z_run(t2, r2)).scale(&scale);
                        &core + &z2_tail
                    }
                    OffDiagonal::Propagating => {
                        if (r1 + layout.row_r1[j]).is_multiple_of(2) {
                            z2_tail.clone()
                        } else {
                            -&z2_tail
                        }
                    }
                }
            };
        }
    }
    Ok(out)
}
