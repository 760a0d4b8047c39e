//! Buchberger-Moller interpolation for the reduced basis of an ideal of points.

use std::collections::{HashMap, HashSet};

use super::ReducedGroebnerBasis;
use crate::error::{Error, Result};
use crate::points::{OrderIdealSet, PointSet};
use crate::poly::{ExponentVector, MarkedPolynomial, MonomialOrder, Polynomial};

/// Incremental echelon form of evaluation vectors, tracking each row as a
/// combination of the accepted standard monomials.
struct Echelon {
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
}

/// The unique reduced Groebner basis of I(V) for `order`.
///
/// Monomials are visited in ascending order from 1. A monomial whose
/// evaluation vector is independent of those already accepted becomes
/// standard; a dependent one gives the generator `m - sum c_k s_k`. Multiples
/// of marked terms are skipped, so every generator is already reduced.
pub fn bm_reduced_gb(v: &PointSet, order: &MonomialOrder) -> Result<ReducedGroebnerBasis> {
    if v.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = v.nvars();
    order.check_arity(n)?;
    let m = v.modulus();
    let p = m.get();
    let s = v.len();

    let mut standard: Vec<ExponentVector> = Vec::new();
    let mut evals: HashMap<ExponentVector, Vec<u32>> = HashMap::new();
    let mut echelon = Echelon { rows: Vec::new() };
    let mut marked: Vec<MarkedPolynomial> = Vec::new();
    let mut frontier: Vec<ExponentVector> = vec![ExponentVector::zero(n)];
    let mut seen: HashSet<ExponentVector> = frontier.iter().cloned().collect();

    while !frontier.is_empty() {
        let idx = (0..frontier.len())
            .min_by(|&a, &b| order.cmp(&frontier[a], &frontier[b]))
            .expect("nonempty");
        let mono = frontier.swap_remove(idx);
        if marked.iter().any(|g| g.leading().divides(&mono)) {
            continue;
        }
        let eval = match (0..n).find_map(|i| mono.predecessor(i).map(|u| (i, u))) {
            None => vec![1 % p; s],
            Some((i, pred)) => {
                let base = evals.get(&pred).expect("predecessor of a candidate is standard");
                base.iter().zip(v.points()).map(|(&e, pt)| m.mul(e, pt.get(i))).collect()
            }
        };

        // reduce against the echelon rows; combo is over standard monomials
        let mut residual = eval.clone();
        let mut combo = vec![0u32; standard.len()];
        for (pivot, row, row_combo) in &echelon.rows {
            let f = residual[*pivot];
            if f == 0 {
                continue;
            }
            for (r, &x) in residual.iter_mut().zip(row) {
                *r = m.sub(*r, m.mul(f, x));
            }
            for (c, &x) in combo.iter_mut().zip(row_combo) {
                *c = m.sub(*c, m.mul(f, x));
            }
        }

        match residual.iter().position(|&x| x != 0) {
            Some(pivot) => {
                // residual = eval(mono) + sum combo_k eval(s_k); mono becomes standard
                let inv = m.inv(residual[pivot])?;
                let row: Vec<u32> = residual.iter().map(|&x| m.mul(x, inv)).collect();
                let mut row_combo: Vec<u32> = combo.iter().map(|&x| m.mul(x, inv)).collect();
                row_combo.push(inv);
                for (_, _, c) in echelon.rows.iter_mut() {
                    c.push(0);
                }
                echelon.rows.push((pivot, row, row_combo));
                standard.push(mono.clone());
                evals.insert(mono.clone(), eval);
                for i in 0..n {
                    if mono.get(i) < p {
                        let next = mono.successor(i);
                        if seen.insert(next.clone()) {
                            frontier.push(next);
                        }
                    }
                }
            }
            None => {
                // eval(mono) + sum combo_k eval(s_k) = 0
                let terms = std::iter::once((mono.clone(), 1))
                    .chain(standard.iter().cloned().zip(combo.iter().copied()));
                let poly = Polynomial::from_terms(n, m, terms)?;
                marked.push(MarkedPolynomial::new(poly, mono)?);
            }
        }
    }

    marked.sort_by(|a, b| order.cmp(a.leading(), b.leading()));
    let standard_monomials = OrderIdealSet::new(m, n, standard)?;
    Ok(ReducedGroebnerBasis::from_parts(order.clone(), marked, standard_monomials))
}
