//! Acceptance suite. One line per criterion; exact arithmetic throughout, so
//! the only pinned tolerance is the runtime budget of criterion 2.
//!
//! A criterion listed in `KNOWN_UNATTAINABLE` still runs in full and still
//! prints `[FAIL]`; it just does not fail the process. If it ever passes the
//! process fails, so the list cannot go stale silently.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use diagspec::combinat::binomial;
use diagspec::gram_partition::{
    block_eigenpolys, build_gram, printed_product_form, product_form, semisimple_exceptions,
};
use diagspec::gram_signed_z2::{e_family_eigenvalues, x_e_poly, x_z2_poly, z2_family_eigenvalues};
use diagspec::oracle::{charpoly, det_poly, verify_gram_det, verify_sdm_spectrum, IntegerMatrix};
use diagspec::poly::Degree;
use diagspec::spectrum::{difference_transform, distinct_eigenvalues, multiplicities};
use diagspec::{sdm, Polynomial};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_d1a6;
const SPECTRAL_TRIALS: usize = 5;
const SPECTRAL_BUDGET: Duration = Duration::from_secs(60);

/// Criterion number and the reason it cannot pass as stated.
const KNOWN_UNATTAINABLE: &[(usize, &str)] = &[(
    8,
    "the Gram determinant for k=3, s=1 is nonzero at x=1, so 1 cannot be an exception",
)];

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn criterion_1() -> Outcome {
    let cases: [(usize, usize, &[&[i64]]); 4] = [
        (1, 1, &[&[1, 1], &[-1, 1]]),
        (2, 2, &[&[1, 4, 1], &[-1, 0, 1], &[1, -2, 1]]),
        (3, 2, &[&[3, 6, 1], &[-2, 1, 1], &[1, -2, 1]]),
        (4, 3, &[&[4, 18, 12, 1], &[-3, -3, 5, 1], &[2, -3, 0, 1], &[-1, 3, -3, 1]]),
    ];
    for (s, r, expect) in cases {
        let got: BTreeSet<Vec<i64>> =
            distinct_eigenvalues(s, r).map_err(|e| e.to_string())?.iter().map(|f| f.coeffs_i64()).collect();
        let want: BTreeSet<Vec<i64>> = expect.iter().map(|v| v.to_vec()).collect();
        if got != want {
            return Err(format!("(s,r)=({s},{r}): got {got:?}, want {want:?}"));
        }
    }
    Ok("4 worked spectra reproduced exactly".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for total in 1..=9usize {
        for s in 0..=total {
            let r = total - s;
            let rep = verify_sdm_spectrum(s, r, SPECTRAL_TRIALS, SEED ^ ((s as u64) << 8 | r as u64))
                .map_err(|e| format!("(s,r)=({s},{r}): {e}"))?;
            if !rep.passed {
                return Err(format!("(s,r)=({s},{r}): first failure {:?}", rep.failures[0]));
            }
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > SPECTRAL_BUDGET {
        return Err(format!("all {count} pairs verified but took {elapsed:.1?} (budget {SPECTRAL_BUDGET:?})"));
    }
    Ok(format!("{count} pairs with s+r <= 9, {SPECTRAL_TRIALS} trials each, {elapsed:.1?}"))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for total in 1..=10usize {
        for s in 0..=total {
            let r = total - s;
            let m = sdm::build(s, r).map_err(|e| e.to_string())?;
            let top = s.min(r);
            for i in 0..m.n() {
                if m.level(i, i) != top {
                    return Err(format!("(s,r)=({s},{r}) row {i}: diagonal level {}", m.level(i, i)));
                }
                let mut counts = vec![0u64; top + 1];
                for j in 0..m.n() {
                    if m.level(i, j) != m.level(j, i) {
                        return Err(format!("(s,r)=({s},{r}): asymmetric at ({i},{j})"));
                    }
                    counts[top - m.level(i, j)] += 1;
                }
                for (t, &c) in counts.iter().enumerate() {
                    let want = binomial(s as u64, t as i64) * binomial(r as u64, t as i64);
                    if want != c.into() {
                        return Err(format!("(s,r)=({s},{r}) row {i}: {c} entries at x_{}, want {want}", top - t));
                    }
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} matrices with s+r <= 10"))
}

fn criterion_4() -> Outcome {
    let mut signs = BTreeSet::new();
    for k in 0..=4 {
        for s in 0..=k {
            let rep = verify_gram_det(k, s).map_err(|e| format!("(k,s)=({k},{s}): {e}"))?;
            if !rep.passed {
                return Err(format!("(k,s)=({k},{s}): det {} vs predicted {}", rep.det, rep.predicted));
            }
            signs.extend(rep.sign);
        }
    }
    let pinned = verify_gram_det(2, 1).map_err(|e| e.to_string())?;
    if pinned.det != Polynomial::from_i64s(&[0, -2, 1]) || pinned.sign != Some(1) {
        return Err(format!("(2,1): det {} with sign {:?}", pinned.det, pinned.sign));
    }
    Ok(format!("all (k,s) with k <= 4 factor, signs {signs:?}; (2,1) gives {}", pinned.det))
}

fn criterion_5() -> Outcome {
    for s in 0..=6 {
        for r in 0..=6 {
            for (l, sigma) in block_eigenpolys(s, r).iter().enumerate() {
                let prod = product_form(s, r, l).map_err(|e| e.to_string())?;
                if *sigma != prod {
                    return Err(format!("(s,r,l)=({s},{r},{l}): sum form {sigma}, product form {prod}"));
                }
                if r <= s && printed_product_form(s, r, l).map_err(|e| e.to_string())? != prod {
                    return Err(format!("(s,r,l)=({s},{r},{l}): printed bound disagrees although r <= s"));
                }
            }
        }
    }
    let printed = printed_product_form(1, 2, 0).map_err(|e| e.to_string())?;
    let sigma = &block_eigenpolys(1, 2)[0];
    if printed.degree() != Degree::Finite(1) || sigma.degree() != Degree::Finite(2) {
        return Err(format!("(1,2,0): printed {printed} / sum form {sigma} not flagged"));
    }
    Ok(format!("s,r <= 6 agree; printed bound flagged at (1,2,0): {sigma} vs {printed}"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..100 {
        let len = rng.gen_range(1..=8);
        let base: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.gen_range(-50..=50))).collect();
        for l in 0..6 {
            let cur = difference_transform(&base, l);
            let next = difference_transform(&base, l + 1);
            for t in 0..len {
                let prev = if t == 0 { BigInt::zero() } else { cur[t - 1].clone() };
                if next[t] != &cur[t] - prev {
                    return Err(format!("case {case}, base {base:?}, l={l}, t={t}"));
                }
            }
        }
    }
    Ok("100 random base sequences, l <= 6".into())
}

fn substituted(s: usize, r: usize, sub: impl Fn(usize) -> Polynomial, at: &BigInt) -> IntegerMatrix {
    if s + r == 0 {
        return IntegerMatrix::identity(1);
    }
    let m = sdm::build(s, r).expect("small");
    let top = m.top_level();
    let values: Vec<BigInt> = (0..=top).map(|v| sub(top - v).eval_at(at)).collect();
    IntegerMatrix::from_entry_matrix(&m, &values).expect("square")
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut count = 0;
    for s1 in 0..=2usize {
        for s2 in 0..=2usize {
            for r1 in 0..=2usize {
                for r2 in 0..=2usize {
                    let size = binomial((s1 + r1) as u64, s1 as i64) * binomial((s2 + r2) as u64, s2 as i64);
                    if size > 36u32.into() {
                        continue;
                    }
                    let e_fam = e_family_eigenvalues(s1, r1);
                    let z_fam = z2_family_eigenvalues(s2, r2);
                    let (me, mz) = (multiplicities(s1, r1), multiplicities(s2, r2));
                    for _ in 0..3 {
                        let a = BigInt::from(rng.gen_range(-6..=6));
                        let e = substituted(s1, r1, |t| x_e_poly(s1, r1, t).unwrap(), &a);
                        let z = substituted(s2, r2, |t| x_z2_poly(s2, r2, t).unwrap(), &a);
                        let got = charpoly(&e.kronecker(&z)).map_err(|err| err.to_string())?;
                        let mut want = Polynomial::one();
                        for (l1, ep) in &e_fam {
                            for (l2, zp) in &z_fam {
                                let root = ep.eval_at(&a) * zp.eval_at(&a);
                                let mult = (&me[*l1] * &mz[*l2]).to_u64().unwrap();
                                want = want * Polynomial::linear(root).pow(mult);
                            }
                        }
                        if got != want {
                            return Err(format!("(s1,s2,r1,r2)=({s1},{s2},{r1},{r2}) at x={a}: {got} vs {want}"));
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} tensor blocks, 3 points each"))
}

fn criterion_8() -> Outcome {
    let literal: [(usize, usize, &[i64]); 2] = [(2, 1, &[0, 2]), (3, 1, &[0, 1, 2, 3])];
    let mut problems = Vec::new();
    for (k, s, want) in literal {
        let got = semisimple_exceptions(k, s).map_err(|e| e.to_string())?;
        let want: BTreeSet<BigInt> = want.iter().map(|&v| BigInt::from(v)).collect();
        let det = det_poly(&build_gram(k, s).map_err(|e| e.to_string())?.entries).map_err(|e| e.to_string())?;
        for x in -1..=(2 * k as i64) {
            let x = BigInt::from(x);
            let vanishes = det.eval_at(&x).is_zero();
            if got.contains(&x) != vanishes {
                problems.push(format!("(k,s)=({k},{s}): reported={} but det({x}) vanishes={vanishes}", got.contains(&x)));
            }
        }
        if got != want {
            let fmt = |set: &BTreeSet<BigInt>| set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            problems.push(format!(
                "(k,s)=({k},{s}): exceptions {{{}}} but the stated set is {{{}}}; det = {det}",
                fmt(&got),
                fmt(&want)
            ));
        }
    }
    if problems.is_empty() {
        Ok("literal sets match and cross-evaluate".into())
    } else {
        Err(problems.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "golden spectra", criterion_1),
        (2, "spectral certificate", criterion_2),
        (3, "matrix-shape laws", criterion_3),
        (4, "Gram determinant factorization", criterion_4),
        (5, "product-form identity", criterion_5),
        (6, "difference recurrence", criterion_6),
        (7, "tensor spectra", criterion_7),
        (8, "semisimplicity roots", criterion_8),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id);
        match (run(), known) {
            (Ok(detail), None) => println!("[PASS] {id} {name}: {detail}"),
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("[PASS] {id} {name}: {detail} (listed as unattainable; update the list)");
            }
            (Err(detail), Some((_, why))) => println!("[FAIL] {id} {name}: {detail} [known: {why}]"),
            (Err(detail), None) => {
                unexpected += 1;
                println!("[FAIL] {id} {name}: {detail}");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
