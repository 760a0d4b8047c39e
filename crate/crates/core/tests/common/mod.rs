#![allow(dead_code)]

use std::collections::BTreeSet;

use stairgb::groebner::bm_reduced_gb;
use stairgb::{MonomialOrder, OrderIdealSet, PointSet, PrimeModulus};

pub fn zp(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

pub fn pts(p: u64, n: usize, rows: &[&[u32]]) -> PointSet {
    PointSet::from_rows(zp(p), n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut q = rest.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Staircases reached by BM over weights {1..bound}^n with every tie-break.
pub fn grid_fan(v: &PointSet, bound: u64) -> BTreeSet<OrderIdealSet> {
    let n = v.nvars();
    let mut found = BTreeSet::new();
    let mut w = vec![1u64; n];
    let ties = permutations(n);
    loop {
        for tie in &ties {
            let o = MonomialOrder::weight_with_tie(&w, tie.clone()).unwrap();
            found.insert(bm_reduced_gb(v, &o).unwrap().standard_monomials().clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return found;
            }
            w[i] += 1;
            if w[i] <= bound {
                break;
            }
            w[i] = 1;
            i += 1;
        }
    }
}
