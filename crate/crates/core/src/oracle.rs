//! Exact verification: characteristic polynomials of integer matrices and
//! determinants of polynomial matrices.
//!
//! Nothing here reuses the closed-form eigenvalue arithmetic. The `verify_*`
//! functions call the closed forms only to obtain the value they compare
//! against.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{for_each_mut, map_range, Exec};
use crate::poly::Polynomial;
use crate::{gram_partition, sdm, spectrum};

pub const DEFAULT_CHARPOLY_CAP: usize = 300;
pub const DEFAULT_DET_CAP: usize = 120;
/// Largest side for which [`det_poly`] also runs the minor expansion.
pub const MINOR_CHECK_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::invalid(format!("matrix is not square: {n} rows, a row of length {}", bad.len())));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        Self { n, data }
    }

    /// The symbol matrix of `m` with `x_v` replaced by `values[v]`.
    pub fn from_entry_matrix(m: &sdm::EntryMatrix, values: &[BigInt]) -> Result<Self> {
        Self::new(sdm::substitute(m, values)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn kronecker(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        let mut data = vec![BigInt::zero(); n * n];
        for i1 in 0..a {
            for j1 in 0..a {
                let x = self.get(i1, j1);
                for i2 in 0..b {
                    for j2 in 0..b {
                        data[(i1 * b + i2) * n + j1 * b + j2] = x * other.get(i2, j2);
                    }
                }
            }
        }
        IntegerMatrix { n, data }
    }

    pub fn block_diagonal(blocks: &[IntegerMatrix]) -> IntegerMatrix {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut data = vec![BigInt::zero(); n * n];
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    data[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.n;
        }
        IntegerMatrix { n, data }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub charpoly_cap: usize,
    pub det_cap: usize,
    pub exec: Exec,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { charpoly_cap: DEFAULT_CHARPOLY_CAP, det_cap: DEFAULT_DET_CAP, exec: Exec::default() }
    }
}

/// `det(λI - m)` as a polynomial in `λ`.
pub fn charpoly(m: &IntegerMatrix) -> Result<Polynomial> {
    charpoly_with(m, &OracleOptions::default())
}

/// Faddeev–LeVerrier, run modulo a set of word-size primes whose product
/// exceeds twice a Hadamard-type bound on the coefficients, then lifted by
/// Chinese remaindering. The step division by `k` is exact over the integers,
/// so its residue is the modular quotient.
pub fn charpoly_with(m: &IntegerMatrix, opts: &OracleOptions) -> Result<Polynomial> {
    let n = m.n;
    if n > opts.charpoly_cap {
        return Err(Error::SizeCap { what: "charpoly input", size: n.to_string(), cap: opts.charpoly_cap });
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let bits = coefficient_bound_bits(m) + 2;
    let primes = primes_below_2_54((bits + PRIME_BITS - 2) / (PRIME_BITS - 1));
    let groups = row_groups(m);
    let symmetric = (0..n).all(|i| (0..i).all(|j| m.get(i, j) == m.get(j, i)));
    let residues = map_range(opts.exec, primes.len(), |pi| leverrier_mod(n, &groups, symmetric, primes[pi]));
    let coeffs = crt_lift(&primes, &residues);
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Faddeev–LeVerrier directly over the integers. Slow; kept as an
/// independent reference for the modular route.
pub fn charpoly_exact(m: &IntegerMatrix) -> Result<Polynomial> {
    let n = m.n;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntegerMatrix::identity(n);
    for k in 1..=n {
        let mut am = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = m.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    am[i * n + j] += a * mk.get(l, j);
                }
            }
        }
        let trace: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        let (c, rem) = (-trace).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!("trace at step {k} not divisible by {k}")));
        }
        for i in 0..n {
            am[i * n + i] += &c;
        }
        coeffs[n - k] = c;
        mk = IntegerMatrix { n, data: am };
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

const PRIME_BITS: usize = 54;

/// `log2` of `prod_i (1 + |row_i|_2)`, rounded up. Every principal minor is
/// bounded by the product of its row norms, so each charpoly coefficient is
/// bounded by this product.
fn coefficient_bound_bits(m: &IntegerMatrix) -> usize {
    (0..m.n)
        .map(|i| {
            let sq: BigInt = m.row(i).iter().map(|a| a * a).sum();
            // |row| <= 2^ceil(bits/2), and 1 + |row| <= 2^(ceil(bits/2)+1)
            (sq.bits() as usize).div_ceil(2) + 1
        })
        .sum()
}

/// Distinct nonzero values of each row with the columns holding them.
type RowGroups = Vec<Vec<(BigInt, Vec<usize>)>>;

fn row_groups(m: &IntegerMatrix) -> RowGroups {
    (0..m.n)
        .map(|i| {
            let mut by_value: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
            for (j, a) in m.row(i).iter().enumerate() {
                if !a.is_zero() {
                    by_value.entry(a).or_default().push(j);
                }
            }
            by_value.into_iter().map(|(v, cols)| (v.clone(), cols)).collect()
        })
        .collect()
}

fn residue(a: &BigInt, p: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue below p")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Charpoly coefficients modulo `p`, constant term first. For symmetric
/// input every iterate is symmetric, so only the upper triangle is formed.
fn leverrier_mod(n: usize, groups: &RowGroups, symmetric: bool, p: u64) -> Vec<u64> {
    let groups: Vec<Vec<(u64, &[usize])>> = groups
        .iter()
        .map(|row| row.iter().map(|(v, cols)| (residue(v, p), cols.as_slice())).collect())
        .collect();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut mk = vec![0u64; n * n];
    for i in 0..n {
        mk[i * n + i] = 1;
    }
    let mut am = vec![0u64; n * n];
    let mut acc = vec![0u64; n];
    for k in 1..=n {
        for i in 0..n {
            let from = if symmetric { i } else { 0 };
            let out = &mut am[i * n + from..(i + 1) * n];
            out.fill(0);
            let acc = &mut acc[from..];
            for &(v, cols) in &groups[i] {
                acc.fill(0);
                // at most 2^9 summands below 2^54 cannot overflow
                for &l in cols {
                    for (a, b) in acc.iter_mut().zip(&mk[l * n + from..(l + 1) * n]) {
                        *a += *b;
                    }
                }
                for (o, a) in out.iter_mut().zip(acc.iter()) {
                    *o = (*o + mul_mod(*a % p, v, p)) % p;
                }
            }
        }
        if symmetric {
            for i in 0..n {
                for j in 0..i {
                    am[i * n + j] = am[j * n + i];
                }
            }
        }
        let trace = (0..n).fold(0u64, |t, i| (t + am[i * n + i]) % p);
        let c = mul_mod((p - trace) % p, pow_mod(k as u64 % p, p - 2, p), p);
        coeffs[n - k] = c;
        for i in 0..n {
            am[i * n + i] = (am[i * n + i] + c) % p;
        }
        std::mem::swap(&mut mk, &mut am);
    }
    coeffs
}

/// Coefficientwise CRT into the symmetric range around zero.
fn crt_lift(primes: &[u64], residues: &[Vec<u64>]) -> Vec<BigInt> {
    let len = residues[0].len();
    let mut modulus = BigInt::one();
    let mut values = vec![BigInt::zero(); len];
    for (p, res) in primes.iter().zip(residues) {
        let pb = BigInt::from(*p);
        let inv = BigInt::from(pow_mod(residue(&modulus, *p), p - 2, *p));
        for (x, &r) in values.iter_mut().zip(res) {
            let delta = ((BigInt::from(r) - &*x) * &inv).mod_floor(&pb);
            *x += &modulus * delta;
        }
        modulus *= pb;
    }
    let half = &modulus >> 1;
    for x in values.iter_mut() {
        if *x > half {
            *x -= &modulus;
        }
    }
    values
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^54`, descending.
fn primes_below_2_54(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << PRIME_BITS) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Determinant of a square polynomial matrix.
pub fn det_poly(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    det_poly_with(m, &OracleOptions::default())
}

/// Fraction-free Bareiss elimination over `Z[x]`. For sides up to
/// [`MINOR_CHECK_MAX`] the result is also computed by minor expansion and a
/// mismatch is reported as [`Error::SelfCheck`].
pub fn det_poly_with(m: &[Vec<Polynomial>], opts: &OracleOptions) -> Result<Polynomial> {
    let n = m.len();
    if let Some(bad) = m.iter().find(|r| r.len() != n) {
        return Err(Error::invalid(format!("matrix is not square: {n} rows, a row of length {}", bad.len())));
    }
    if n > opts.det_cap {
        return Err(Error::SizeCap { what: "determinant input", size: n.to_string(), cap: opts.det_cap });
    }
    let det = bareiss(m.to_vec(), opts.exec)?;
    if n <= MINOR_CHECK_MAX {
        let check = det_poly_minors(m)?;
        if check != det {
            return Err(Error::SelfCheck(format!("Bareiss gave {det}, minor expansion gave {check}")));
        }
    }
    Ok(det)
}

fn bareiss(mut a: Vec<Vec<Polynomial>>, exec: Exec) -> Result<Polynomial> {
    let n = a.len();
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero()),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        let outcomes = {
            let mut status: Vec<Result<()>> = (0..tail.len()).map(|_| Ok(())).collect();
            let mut rows: Vec<(&mut Vec<Polynomial>, &mut Result<()>)> =
                tail.iter_mut().zip(status.iter_mut()).collect();
            for_each_mut(exec, &mut rows, |_, (row, st)| {
                let lead = std::mem::replace(&mut row[k], Polynomial::zero());
                for j in k + 1..n {
                    let num = &(&row[j] * pivot) - &(&lead * &pivot_row[j]);
                    match num.div_exact(&prev) {
                        Ok(q) => row[j] = q,
                        Err(e) => {
                            **st = Err(e);
                            return;
                        }
                    }
                }
            });
            status
        };
        outcomes.into_iter().collect::<Result<Vec<()>>>()?;
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant by Laplace expansion along successive rows, memoized on the
/// set of columns already used. Exponential; sides up to 20.
pub fn det_poly_minors(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    if n > 20 {
        return Err(Error::SizeCap { what: "minor expansion", size: n.to_string(), cap: 20 });
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("matrix is not square"));
    }
    // minor[mask] = det of rows n-|mask|.. against the columns in mask
    let mut minor: Vec<Polynomial> = vec![Polynomial::zero(); 1 << n];
    minor[0] = Polynomial::one();
    for mask in 1usize..(1 << n) {
        let row = n - mask.count_ones() as usize;
        let mut acc = Polynomial::zero();
        let mut sign_neg = false;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = &m[row][j];
            if !entry.is_zero() {
                let term = entry * &minor[mask & !(1 << j)];
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        minor[mask] = acc;
    }
    Ok(minor[(1 << n) - 1].clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    /// Values substituted for `x_0, x_1, ...`.
    pub substitution: Vec<i64>,
    pub expected: Polynomial,
    pub got: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub target: String,
    pub params: BTreeMap<String, i64>,
    pub trials: usize,
    pub passed: bool,
    pub failures: Vec<TrialFailure>,
}

/// Checks the closed-form spectrum of `A^{s+r,s}` against the oracle
/// charpoly at `trials` random substitutions with values in `[-9, 9]`.
pub fn verify_sdm_spectrum(s: usize, r: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    verify_sdm_spectrum_with(s, r, trials, seed, &OracleOptions::default())
}

pub fn verify_sdm_spectrum_with(
    s: usize,
    r: usize,
    trials: usize,
    seed: u64,
    opts: &OracleOptions,
) -> Result<VerificationReport> {
    let m = sdm::build_with(s, r, &sdm::BuildOptions { exec: opts.exec, ..Default::default() })?;
    if m.n() > opts.charpoly_cap {
        return Err(Error::SizeCap { what: "charpoly input", size: m.n().to_string(), cap: opts.charpoly_cap });
    }
    let forms = spectrum::distinct_eigenvalues(s, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let substitution: Vec<i64> = (0..=m.top_level()).map(|_| rng.gen_range(-9..=9)).collect();
        let values: Vec<BigInt> = substitution.iter().map(|&v| BigInt::from(v)).collect();
        let got = charpoly_with(&IntegerMatrix::from_entry_matrix(&m, &values)?, opts)?;
        let mut expected = Polynomial::one();
        for f in &forms {
            let exp = f.multiplicity.to_u64().ok_or_else(|| Error::invalid("multiplicity exceeds u64"))?;
            expected = &expected * &Polynomial::linear(f.eval_int(&values)).pow(exp);
        }
        if got != expected {
            failures.push(TrialFailure { substitution, expected, got });
        }
    }
    let params = BTreeMap::from([("s".to_string(), s as i64), ("r".to_string(), r as i64)]);
    Ok(VerificationReport {
        target: "sdm_spectrum".into(),
        params,
        trials,
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramDetReport {
    pub k: usize,
    pub s: usize,
    pub passed: bool,
    /// `det = sign * predicted`, when such a sign exists.
    pub sign: Option<i8>,
    pub det: Polynomial,
    pub predicted: Polynomial,
}

/// Compares the oracle determinant of `G_s` with the product of block
/// eigenpolynomials, up to a global sign.
pub fn verify_gram_det(k: usize, s: usize) -> Result<GramDetReport> {
    verify_gram_det_with(k, s, &OracleOptions::default())
}

pub fn verify_gram_det_with(k: usize, s: usize, opts: &OracleOptions) -> Result<GramDetReport> {
    let g = gram_partition::build_gram_with(
        k,
        s,
        &gram_partition::GramOptions { exec: opts.exec, ..Default::default() },
    )?;
    let det = det_poly_with(&g.entries, opts)?;
    let predicted = gram_partition::predicted_determinant(k, s)?;
    let sign = if det == predicted {
        Some(1)
    } else if det == -&predicted {
        Some(-1)
    } else {
        None
    };
    Ok(GramDetReport { k, s, passed: sign.is_some(), sign, det, predicted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    fn int_matrix(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly(&IntegerMatrix::identity(2)).unwrap(), p(&[1, -2, 1]));
        assert_eq!(charpoly(&int_matrix(&[&[3, 1], &[1, 3]])).unwrap(), p(&[8, -6, 1]));
        let a42 = sdm::build(2, 2).unwrap();
        let vals = [0, 1, 2].map(BigInt::from);
        let got = charpoly(&IntegerMatrix::from_entry_matrix(&a42, &vals).unwrap()).unwrap();
        let expect = Polynomial::linear(6) * Polynomial::linear(2).pow(3) * Polynomial::x().pow(2);
        assert_eq!(got, expect);
        assert_eq!(charpoly(&IntegerMatrix::identity(0)).unwrap(), Polynomial::one());
    }

    #[test]
    fn charpoly_cap() {
        let opts = OracleOptions { charpoly_cap: 3, ..Default::default() };
        assert!(charpoly_with(&IntegerMatrix::identity(4), &opts).unwrap_err().is_size_cap());
    }

    #[test]
    fn large_entries_lift_exactly() {
        let big = BigInt::from(10).pow(40);
        let m = IntegerMatrix::new(vec![
            vec![big.clone(), BigInt::from(1)],
            vec![BigInt::from(2), -big.clone()],
        ])
        .unwrap();
        // λ^2 - (10^80 + 2)
        let expect = Polynomial::from_coeffs(vec![-(&big * &big) - 2, BigInt::zero(), BigInt::one()]);
        assert_eq!(charpoly(&m).unwrap(), expect);
        assert_eq!(charpoly_exact(&m).unwrap(), expect);
    }

    #[test]
    fn det_examples() {
        let one = Polynomial::one();
        let x = Polynomial::x();
        let z = Polynomial::zero();
        let m = vec![
            vec![one.clone(), one.clone(), one.clone()],
            vec![one.clone(), x.clone(), z.clone()],
            vec![one.clone(), z.clone(), x.clone()],
        ];
        assert_eq!(det_poly(&m).unwrap(), p(&[0, -2, 1]));
        let d = vec![vec![p(&[1, 1]), z.clone()], vec![z.clone(), p(&[-3, 0, 2])]];
        assert_eq!(det_poly(&d).unwrap(), p(&[1, 1]) * p(&[-3, 0, 2]));
        let sing = vec![vec![x.clone(), one.clone()], vec![x.clone(), one.clone()]];
        assert!(det_poly(&sing).unwrap().is_zero());
        // zero pivot forces a row swap
        let swap = vec![vec![z.clone(), one.clone()], vec![x.clone(), z.clone()]];
        assert_eq!(det_poly(&swap).unwrap(), -x.clone());
        assert_eq!(det_poly(&[]).unwrap(), one);
    }

    #[test]
    fn gram_det_examples() {
        let rep = verify_gram_det(2, 1).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.sign, Some(1));
        assert_eq!(rep.det, p(&[0, -2, 1]));
        for k in 0..=3 {
            let rep = verify_gram_det(k, k).unwrap();
            assert_eq!((rep.sign, rep.det), (Some(1), Polynomial::one()));
        }
        assert!(verify_gram_det(3, 1).unwrap().passed);
    }

    #[test]
    fn sdm_verification_examples() {
        for (s, r) in [(4, 3), (1, 1), (3, 2)] {
            let rep = verify_sdm_spectrum(s, r, 3, 7).unwrap();
            assert!(rep.passed, "{rep:?}");
        }
        assert_eq!(
            spectrum::multiplicities(3, 2),
            [1u32, 4, 5].map(num_bigint::BigUint::from).to_vec()
        );
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes_below_2_54(3);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&q| q < 1 << 54 && is_prime_u64(q)));
        assert!(is_prime_u64(1_000_000_007) && !is_prime_u64(1_000_000_007 * 3));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    fn small_matrix(max_n: usize) -> impl Strategy<Value = IntegerMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-20i64..=20, n * n).prop_map(move |v| {
                IntegerMatrix::new(v.chunks(n).map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect())
                    .unwrap()
            })
        })
    }

    fn poly_matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<Polynomial>>> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, 0..=3), n * n).prop_map(move |v| {
                v.chunks(n).map(|r| r.iter().map(|c| Polynomial::from_i64s(c)).collect()).collect()
            })
        })
    }

    fn constant_embedding(m: &IntegerMatrix) -> Vec<Vec<Polynomial>> {
        m.to_rows().into_iter().map(|r| r.into_iter().map(Polynomial::constant).collect()).collect()
    }

    proptest! {
        #[test]
        fn charpoly_at_zero_is_signed_det(m in small_matrix(6)) {
            let cp = charpoly(&m).unwrap();
            let det = det_poly(&constant_embedding(&m)).unwrap();
            let sign = if m.n() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(cp.coeff(0), det.coeff(0) * sign);
            prop_assert_eq!(cp, charpoly_exact(&m).unwrap());
        }

        #[test]
        fn bareiss_matches_minors(m in poly_matrix(6)) {
            let fast = bareiss(m.clone(), Exec::Sequential).unwrap();
            prop_assert_eq!(&fast, &det_poly_minors(&m).unwrap());
            prop_assert_eq!(fast, bareiss(m, Exec::Parallel).unwrap());
        }

        #[test]
        fn block_diagonal_charpoly(a in small_matrix(4), b in small_matrix(4)) {
            let joined = IntegerMatrix::block_diagonal(&[a.clone(), b.clone()]);
            prop_assert_eq!(charpoly(&joined).unwrap(), charpoly(&a).unwrap() * charpoly(&b).unwrap());
        }
    }
}
