//! Closed-form spectrum of the symmetric diagram matrix `A^{s+r,s}`.
//!
//! Family `l` (for `0 <= l <= min(s,r)`) is the linear form
//!
//! ```text
//! E_l = sum_t  c(s,r,l,t) * x_{min(s,r)-t},
//! c(s,r,l,t) = sum_{j=0}^{l} (-1)^j C(l,j) C(s-l,t-j) C(r-l,t-j)
//! ```
//!
//! with multiplicity `C(s+r,l) - C(s+r,l-1)`. The multiplicity assignment is
//! not part of the closed form itself; it is certified against exact
//! characteristic polynomials by [`crate::oracle::verify_sdm_spectrum`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// One distinct eigenvalue `sum_v coeffs[v] * x_v` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueForm {
    pub l: usize,
    /// `coeffs[v]` multiplies `x_v`; length `min(s,r) + 1`.
    pub coeffs: Vec<BigInt>,
    pub multiplicity: BigUint,
}

impl EigenvalueForm {
    /// Value of the form at integer symbols `values[v] = x_v`.
    pub fn eval_int(&self, values: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(values).map(|(c, v)| c * v).sum()
    }

    /// Value of the form with polynomial symbols `values[v] = x_v`.
    pub fn eval_poly(&self, values: &[Polynomial]) -> Polynomial {
        self.coeffs
            .iter()
            .zip(values)
            .fold(Polynomial::zero(), |acc, (c, v)| &acc + &v.scale(c))
    }

    /// The coefficient vector as machine integers (for tests and display).
    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| i64::try_from(c).expect("coefficient fits i64")).collect()
    }
}

impl fmt::Display for EigenvalueForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, neg) => write!(f, " {} ", if neg { '-' } else { '+' })?,
            }
            first = false;
            if mag != BigInt::from(1) {
                write!(f, "{mag}")?;
            }
            write!(f, "x_{v}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for EigenvalueForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = serializer.serialize_struct("EigenvalueForm", 3)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("multiplicity", &self.multiplicity.to_string())?;
        st.end()
    }
}

fn c(n: usize, k: isize) -> BigInt {
    BigInt::from(binomial(n as u64, k as i64))
}

/// Coefficient of `x_{min(s,r)-t}` in eigenvalue family `l`.
pub fn eberlein_coefficient(s: usize, r: usize, l: usize, t: usize) -> Result<BigInt> {
    let top = s.min(r);
    if l > top || t > top {
        return Err(Error::invalid(format!("need l, t <= min(s,r) = {top}, got l={l}, t={t}")));
    }
    let mut acc = BigInt::zero();
    for j in 0..=l {
        let term = c(l, j as isize) * c(s - l, t as isize - j as isize) * c(r - l, t as isize - j as isize);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `m_l = C(s+r, l) - C(s+r, l-1)` for `l = 0..=min(s,r)`.
pub fn multiplicities(s: usize, r: usize) -> Vec<BigUint> {
    let n = (s + r) as u64;
    (0..=s.min(r) as i64).map(|l| binomial(n, l) - binomial(n, l - 1)).collect()
}

/// All `min(s,r) + 1` eigenvalue families of `A^{s+r,s}`.
pub fn distinct_eigenvalues(s: usize, r: usize) -> Result<Vec<EigenvalueForm>> {
    if s + r == 0 {
        return Err(Error::invalid("need s + r >= 1"));
    }
    let top = s.min(r);
    let mults = multiplicities(s, r);
    (0..=top)
        .map(|l| {
            let mut coeffs = vec![BigInt::zero(); top + 1];
            for t in 0..=top {
                coeffs[top - t] = eberlein_coefficient(s, r, l, t)?;
            }
            Ok(EigenvalueForm { l, coeffs, multiplicity: mults[l].clone() })
        })
        .collect()
}

/// `a^l_t = sum_{j=0}^{l} (-1)^j C(l,j) a_{t-j}`, with `a_i = 0` for `i < 0`.
pub fn difference_transform(base: &[BigInt], l: usize) -> Vec<BigInt> {
    (0..base.len())
        .map(|t| {
            (0..=l.min(t)).fold(BigInt::zero(), |acc, j| {
                let term = c(l, j as isize) * &base[t - j];
                if j % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect()
}

/// Eigenvalue report for one `(s, r)`.
#[derive(Debug, Clone, Serialize)]
pub struct SdmSpectrum {
    pub s: usize,
    pub r: usize,
    pub eigenvalues: Vec<EigenvalueForm>,
}

pub fn sdm_spectrum(s: usize, r: usize) -> Result<SdmSpectrum> {
    Ok(SdmSpectrum { s, r, eigenvalues: distinct_eigenvalues(s, r)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn forms(s: usize, r: usize) -> Vec<Vec<i64>> {
        distinct_eigenvalues(s, r).unwrap().iter().map(EigenvalueForm::coeffs_i64).collect()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(eberlein_coefficient(4, 3, 1, 1).unwrap(), b(5));
        assert_eq!(eberlein_coefficient(3, 2, 2, 1).unwrap(), b(-2));
        assert_eq!(eberlein_coefficient(2, 2, 1, 1).unwrap(), b(0));
        for (s, r) in [(3, 5), (4, 4), (6, 2)] {
            for t in 0..=s.min(r) {
                let expect = c(s, t as isize) * c(r, t as isize);
                assert_eq!(eberlein_coefficient(s, r, 0, t).unwrap(), expect);
            }
        }
        assert!(eberlein_coefficient(2, 1, 2, 0).is_err());
        assert!(eberlein_coefficient(2, 1, 0, 2).is_err());
    }

    // coefficient vectors are indexed x_0, x_1, ...
    #[test]
    fn family_examples() {
        assert_eq!(forms(1, 1), [[1, 1], [-1, 1]]);
        assert_eq!(forms(3, 2), [vec![3, 6, 1], vec![-2, 1, 1], vec![1, -2, 1]]);
        assert_eq!(
            forms(4, 3),
            [vec![4, 18, 12, 1], vec![-3, -3, 5, 1], vec![2, -3, 0, 1], vec![-1, 3, -3, 1]]
        );
        assert_eq!(forms(0, 5), [vec![1]]);
        assert!(distinct_eigenvalues(0, 0).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let m = |s, r| multiplicities(s, r).iter().map(|v| v.to_string()).collect::<Vec<_>>();
        assert_eq!(m(1, 1), ["1", "1"]);
        assert_eq!(m(2, 2), ["1", "3", "2"]);
        assert_eq!(m(4, 3), ["1", "6", "14", "14"]);
        assert_eq!(m(3, 2), ["1", "4", "5"]);
    }

    #[test]
    fn rendering() {
        let f = &distinct_eigenvalues(4, 3).unwrap()[1];
        assert_eq!(f.to_string(), "x_3 + 5x_2 - 3x_1 - 3x_0");
        let f = &distinct_eigenvalues(2, 2).unwrap()[1];
        assert_eq!(f.to_string(), "x_2 - x_0");
        let v = serde_json::to_value(f).unwrap();
        assert_eq!(v, serde_json::json!({"l": 1, "coeffs": ["-1", "0", "1"], "multiplicity": "3"}));
    }

    #[test]
    fn difference_transform_examples() {
        let base: Vec<BigInt> = [3, -1, 4, 1, 5].into_iter().map(b).collect();
        assert_eq!(difference_transform(&base, 0), base);
        let base: Vec<BigInt> = [1, 2, 0, 0].into_iter().map(b).collect();
        assert_eq!(difference_transform(&base, 1), [1, 1, -2, 0].map(b));
        let base: Vec<BigInt> = [1, 0, 0].into_iter().map(b).collect();
        assert_eq!(difference_transform(&base, 2), [1, -2, 1].map(b));
    }

    #[test]
    fn coefficients_follow_from_difference_transform() {
        // family l+1 of (s,r) is the l+1 transform of the l=0 row of (s-l-1, r-l-1)
        for s in 1..=6 {
            for r in 1..=6 {
                for l in 0..s.min(r) {
                    let inner_s = s - (l + 1);
                    let inner_r = r - (l + 1);
                    let base: Vec<BigInt> =
                        (0..=s.min(r)).map(|i| c(inner_s, i as isize) * c(inner_r, i as isize)).collect();
                    let a = difference_transform(&base, l + 1);
                    for t in 0..=s.min(r) {
                        assert_eq!(a[t], eberlein_coefficient(s, r, l + 1, t).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn trace_and_row_sum_identities() {
        for total in 1..=10usize {
            for s in 0..=total {
                let r = total - s;
                let top = s.min(r);
                let fams = distinct_eigenvalues(s, r).unwrap();
                let n = BigInt::from(binomial(total as u64, s as i64));
                let mult_sum: BigUint = fams.iter().map(|f| f.multiplicity.clone()).sum();
                assert_eq!(BigInt::from(mult_sum), n);
                for v in 0..=top {
                    let tr: BigInt = fams.iter().map(|f| BigInt::from(f.multiplicity.clone()) * &f.coeffs[v]).sum();
                    let expect = if v == top { n.clone() } else { BigInt::zero() };
                    assert_eq!(tr, expect, "trace identity fails at ({s},{r}) x_{v}");
                }
                for t in 0..=top {
                    assert_eq!(fams[0].coeffs[top - t], c(s, t as isize) * c(r, t as isize));
                }
                assert!(fams.iter().all(|f| f.coeffs[top] == BigInt::from(1)));
            }
        }
    }

    #[test]
    fn duality_of_spectra() {
        for s in 0..=6 {
            for r in 0..=6 {
                if s + r == 0 {
                    continue;
                }
                assert_eq!(distinct_eigenvalues(s, r).unwrap(), distinct_eigenvalues(r, s).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn difference_recurrence(base in prop::collection::vec(-1000i64..=1000, 1..=8), l in 0usize..=6) {
            let base: Vec<BigInt> = base.into_iter().map(BigInt::from).collect();
            let cur = difference_transform(&base, l);
            let next = difference_transform(&base, l + 1);
            for t in 0..base.len() {
                let prev = if t == 0 { BigInt::zero() } else { cur[t - 1].clone() };
                prop_assert_eq!(&next[t], &(&cur[t] - prev));
            }
        }
    }
}
