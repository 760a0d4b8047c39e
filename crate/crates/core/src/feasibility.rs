//! Exact feasibility of strict homogeneous linear systems by Fourier-Motzkin
//! elimination.
//!
//! Given integer rows `d`, find a strictly positive weight vector `w` with
//! `d . w > 0` for every row. Because the system is homogeneous, strict
//! inequalities need no closure trick inside the elimination itself: sums of
//! strict inequalities stay strict, and the system is infeasible exactly when
//! a zero row is produced. Chernikov's rule drops combinations whose history
//! exceeds the number of eliminated variables plus one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<i128>,
    history: Vec<u64>,
}

impl Row {
    fn history_len(&self) -> u32 {
        self.history.iter().map(|w| w.count_ones()).sum()
    }

    fn union(&self, other: &Row) -> Vec<u64> {
        self.history.iter().zip(&other.history).map(|(a, b)| a | b).collect()
    }
}

fn normalize(coeffs: &mut [i128]) {
    let g = coeffs.iter().fold(0i128, |acc, &c| acc.gcd(&c));
    if g > 1 {
        for c in coeffs.iter_mut() {
            *c /= g;
        }
    }
}

/// Rows implied by positivity of the variables from `from` onward.
fn implied_by_positivity(coeffs: &[i128], from: usize) -> bool {
    let tail = &coeffs[from..];
    tail.iter().all(|&c| c >= 0) && tail.iter().any(|&c| c > 0) && coeffs[..from].iter().all(|&c| c == 0)
}

fn push_dedup(rows: &mut Vec<Row>, row: Row) {
    if let Some(existing) = rows.iter_mut().find(|r| r.coeffs == row.coeffs) {
        if row.history_len() < existing.history_len() {
            *existing = row;
        }
        return;
    }
    rows.push(row);
}

/// Finds a strictly positive integer `w` with `d . w > 0` for all `d`.
///
/// Returns `Ok(None)` when no such vector exists. The witness is built by
/// back-substitution, picking the simplest rational inside each open interval,
/// then scaled to a primitive integer vector.
pub fn strict_positive_solution(n: usize, constraints: &[Vec<i64>]) -> Result<Option<Vec<i64>>> {
    let words = (constraints.len() + n).div_ceil(64).max(1);
    let mut rows: Vec<Row> = Vec::new();
    let mut tag = 0usize;
    let mut fresh = |coeffs: Vec<i128>| {
        let mut history = vec![0u64; words];
        history[tag / 64] |= 1 << (tag % 64);
        tag += 1;
        Row { coeffs, history }
    };
    for d in constraints {
        if d.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: d.len() });
        }
        let mut coeffs: Vec<i128> = d.iter().map(|&c| c as i128).collect();
        if coeffs.iter().all(|&c| c == 0) {
            return Ok(None);
        }
        if implied_by_positivity(&coeffs, 0) {
            continue;
        }
        normalize(&mut coeffs);
        let row = fresh(coeffs);
        push_dedup(&mut rows, row);
    }
    for i in 0..n {
        let mut coeffs = vec![0i128; n];
        coeffs[i] = 1;
        let row = fresh(coeffs);
        push_dedup(&mut rows, row);
    }

    // stages[k] holds the system before eliminating variable k
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(n);
    for k in 0..n {
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in &rows {
            match r.coeffs[k].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => next.push(r.clone()),
            }
        }
        let limit = k as u32 + 2;
        for p in &pos {
            for q in &neg {
                let history = p.union(q);
                let h: u32 = history.iter().map(|w| w.count_ones()).sum();
                if h > limit {
                    continue;
                }
                let (a, b) = (-q.coeffs[k], p.coeffs[k]);
                let mut coeffs = Vec::with_capacity(n);
                for j in 0..n {
                    let v = a
                        .checked_mul(p.coeffs[j])
                        .and_then(|x| b.checked_mul(q.coeffs[j]).and_then(|y| x.checked_add(y)))
                        .ok_or(Error::Overflow("Fourier-Motzkin elimination"))?;
                    coeffs.push(v);
                }
                debug_assert_eq!(coeffs[k], 0);
                if coeffs.iter().all(|&c| c == 0) {
                    return Ok(None);
                }
                if implied_by_positivity(&coeffs, k + 1) {
                    continue;
                }
                normalize(&mut coeffs);
                push_dedup(&mut next, Row { coeffs, history });
            }
        }
        stages.push(std::mem::replace(&mut rows, next));
    }
    debug_assert!(rows.is_empty());

    let mut w: Vec<BigRational> = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in &stages[k] {
            let c = r.coeffs[k];
            if c == 0 {
                continue;
            }
            let rest: BigRational = (k + 1..n)
                .map(|j| &w[j] * BigRational::from_integer(BigInt::from(r.coeffs[j])))
                .fold(BigRational::zero(), |a, b| a + b);
            let bound = -rest / BigRational::from_integer(BigInt::from(c));
            if c > 0 {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        let lo = lo.unwrap_or_else(BigRational::zero);
        w[k] = simplest_between(&lo, hi.as_ref());
    }

    let lcm = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = w.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let witness = ints
        .iter()
        .map(|x| (x / &g).to_i64().ok_or(Error::Overflow("witness weight")))
        .collect::<Result<Vec<i64>>>()?;

    let satisfied = witness.iter().all(|&x| x > 0)
        && constraints.iter().all(|d| {
            d.iter().zip(&witness).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>() > 0
        });
    if !satisfied {
        return Err(Error::Invalid(format!("back-substitution produced invalid witness {witness:?}")));
    }
    Ok(Some(witness))
}

/// The rational with the smallest denominator (then numerator) in the open
/// interval `(lo, hi)`, for `lo >= 0`; `hi = None` means unbounded.
fn simplest_between(lo: &BigRational, hi: Option<&BigRational>) -> BigRational {
    debug_assert!(!lo.is_negative());
    let fl = lo.floor();
    let next = &fl + BigRational::one();
    match hi {
        None => next,
        Some(h) if next < *h => next,
        Some(h) => {
            // lo and hi both lie in [fl, fl + 1]
            let upper_inv = BigRational::one() / (h - &fl);
            let lower_inv = if *lo > fl { Some(BigRational::one() / (lo - &fl)) } else { None };
            fl + BigRational::one() / simplest_between(&upper_inv, lower_inv.as_ref())
        }
    }
}
