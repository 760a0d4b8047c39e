//! Coordinate-wise affine bijections of Z_p^n and the equivalence they induce
//! on point sets.

use std::collections::HashMap;
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::groebner::{all_reduced_gbs_with, FanBudget, StaircaseCatalog};
use crate::points::{enumerate_order_ideals, OrderIdealSet, PointSet};
use crate::poly::{ExponentVector, Polynomial};

/// x_i -> a_i x_i + b_i with every a_i nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearShift {
    modulus: PrimeModulus,
    a: Vec<u32>,
    b: Vec<u32>,
}

impl LinearShift {
    pub fn new(modulus: PrimeModulus, a: Vec<u32>, b: Vec<u32>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidShift(format!("{} multipliers but {} offsets", a.len(), b.len())));
        }
        let p = modulus.get();
        if let Some(i) = a.iter().position(|&x| x == 0 || x >= p) {
            return Err(Error::InvalidShift(format!("a_{} = {} is not a unit mod {p}", i + 1, a[i])));
        }
        if let Some(i) = b.iter().position(|&x| x >= p) {
            return Err(Error::InvalidShift(format!("b_{} = {} is not reduced mod {p}", i + 1, b[i])));
        }
        Ok(LinearShift { modulus, a, b })
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        LinearShift { modulus, a: vec![1; n], b: vec![0; n] }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a.iter().all(|&x| x == 1) && self.b.iter().all(|&x| x == 0)
    }

    /// The tuple (a_1, b_1, ..., a_n, b_n) that defines the canonical order.
    pub fn key(&self) -> Vec<u32> {
        self.a.iter().zip(&self.b).flat_map(|(&a, &b)| [a, b]).collect()
    }

    pub fn apply_point(&self, v: &ExponentVector) -> ExponentVector {
        let m = self.modulus;
        ExponentVector::new(
            v.iter().enumerate().map(|(i, &x)| m.add(m.mul(self.a[i], x), self.b[i])).collect(),
        )
    }

    pub fn apply(&self, v: &PointSet) -> Result<PointSet> {
        self.check(v.modulus(), v.nvars())?;
        let mut image: Vec<ExponentVector> = v.iter().map(|x| self.apply_point(x)).collect();
        image.sort();
        Ok(PointSet::from_sorted_unchecked(v.modulus(), v.nvars(), image))
    }

    pub fn invert(&self) -> LinearShift {
        let m = self.modulus;
        let a: Vec<u32> = self.a.iter().map(|&x| m.inv(x).expect("a_i is a unit")).collect();
        let b = a.iter().zip(&self.b).map(|(&ai, &bi)| m.neg(m.mul(ai, bi))).collect();
        LinearShift { modulus: m, a, b }
    }

    /// `self` after `inner`.
    pub fn compose(&self, inner: &LinearShift) -> Result<LinearShift> {
        self.check(inner.modulus, inner.nvars())?;
        let m = self.modulus;
        let a = self.a.iter().zip(&inner.a).map(|(&x, &y)| m.mul(x, y)).collect();
        let b = (0..self.nvars()).map(|i| m.add(m.mul(self.a[i], inner.b[i]), self.b[i])).collect();
        Ok(LinearShift { modulus: m, a, b })
    }

    /// f(a_1 x_1 + b_1, ..., a_n x_n + b_n).
    pub fn apply_to_polynomial(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f.modulus(), f.nvars())?;
        let n = self.nvars();
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                let x = Polynomial::variable(n, i, self.modulus).scale(self.a[i]);
                &x + &Polynomial::constant(n, self.modulus, self.b[i] as u64)
            })
            .collect();
        f.compose(&images)
    }

    fn check(&self, modulus: PrimeModulus, n: usize) -> Result<()> {
        if modulus != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), modulus.get()));
        }
        if n != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: n });
        }
        Ok(())
    }
}

impl fmt::Display for LinearShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.nvars() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match self.a[i] {
                1 => write!(f, "x{}", i + 1)?,
                a => write!(f, "{a}*x{}", i + 1)?,
            }
            if self.b[i] != 0 {
                write!(f, " + {}", self.b[i])?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LinearShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearShift{self} mod {}", self.modulus.get())
    }
}

/// Every shift of Z_p^n, ascending by [`LinearShift::key`].
pub fn all_shifts(modulus: PrimeModulus, n: usize) -> Vec<LinearShift> {
    let pairs = coordinate_pairs(modulus);
    let mut out = vec![LinearShift { modulus, a: Vec::new(), b: Vec::new() }];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                pairs.iter().map(move |&(a, b)| {
                    let mut t = s.clone();
                    t.a.push(a);
                    t.b.push(b);
                    t
                })
            })
            .collect();
    }
    out
}

fn coordinate_pairs(modulus: PrimeModulus) -> Vec<(u32, u32)> {
    let p = modulus.get();
    (1..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect()
}

fn sorted_column(v: &PointSet, j: usize) -> Vec<u32> {
    let mut col: Vec<u32> = v.iter().map(|x| x.get(j)).collect();
    col.sort_unstable();
    col
}

/// The smallest shift (by key) with phi(source) = target, if any.
pub fn detect_shift(source: &PointSet, target: &PointSet) -> Option<LinearShift> {
    let m = source.modulus();
    let n = source.nvars();
    if m != target.modulus() || n != target.nvars() || source.len() != target.len() {
        return None;
    }
    // per coordinate, the pairs that carry the source column multiset to the target's
    let mut candidates: Vec<Vec<(u32, u32)>> = Vec::with_capacity(n);
    for j in 0..n {
        let want = sorted_column(target, j);
        let src: Vec<u32> = source.iter().map(|x| x.get(j)).collect();
        let ok: Vec<(u32, u32)> = coordinate_pairs(m)
            .into_iter()
            .filter(|&(a, b)| {
                let mut img: Vec<u32> = src.iter().map(|&x| m.add(m.mul(a, x), b)).collect();
                img.sort_unstable();
                img == want
            })
            .collect();
        if ok.is_empty() {
            return None;
        }
        candidates.push(ok);
    }
    let mut chosen: Vec<(u32, u32)> = Vec::with_capacity(n);
    if search(source, target, &candidates, &mut chosen) {
        let (a, b) = chosen.into_iter().unzip();
        Some(LinearShift { modulus: m, a, b })
    } else {
        None
    }
}

/// Depth-first product search; prefixes are pruned by comparing projections.
fn search(
    source: &PointSet,
    target: &PointSet,
    candidates: &[Vec<(u32, u32)>],
    chosen: &mut Vec<(u32, u32)>,
) -> bool {
    let k = chosen.len();
    if k > 1 || k == candidates.len() {
        let m = source.modulus();
        let mut img: Vec<Vec<u32>> = source
            .iter()
            .map(|x| chosen.iter().enumerate().map(|(j, &(a, b))| m.add(m.mul(a, x.get(j)), b)).collect())
            .collect();
        img.sort_unstable();
        let mut want: Vec<Vec<u32>> = target.iter().map(|x| x.as_slice()[..k].to_vec()).collect();
        want.sort_unstable();
        if img != want {
            return false;
        }
    }
    if k == candidates.len() {
        return true;
    }
    for &pair in &candidates[k] {
        chosen.push(pair);
        if search(source, target, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A staircase S and the smallest shift with phi(S) = V, if V is a shifted staircase.
pub fn find_staircase_shift(v: &PointSet) -> Option<(LinearShift, OrderIdealSet)> {
    if v.is_empty() {
        return None;
    }
    enumerate_order_ideals(v.modulus(), v.nvars(), v.len())
        .into_iter()
        .filter_map(|s| detect_shift(&s.to_point_set(), v).map(|phi| (phi, s)))
        .min_by(|x, y| x.0.key().cmp(&y.0.key()).then_with(|| x.1.cmp(&y.1)))
}

/// The lexicographically smallest image of `v` over `shifts`.
pub fn canonical_representative(v: &PointSet, shifts: &[LinearShift]) -> Vec<ExponentVector> {
    let mut best: Option<Vec<ExponentVector>> = None;
    for phi in shifts {
        let mut img: Vec<ExponentVector> = v.iter().map(|x| phi.apply_point(x)).collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_else(|| v.points().to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifyMode {
    Exhaustive,
    /// `k` uniform m-subsets drawn independently from a seeded generator.
    Sample { k: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyBudget {
    /// Largest number of m-subsets an exhaustive run may visit.
    pub max_sets: u64,
    pub fan: FanBudget,
}

impl Default for ClassifyBudget {
    fn default() -> Self {
        ClassifyBudget { max_sets: 1_000_000, fan: FanBudget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub rep: Vec<Vec<u32>>,
    pub size: u64,
    pub gb_count: usize,
    pub unique: bool,
    pub shifted_staircase: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub p: u32,
    pub n: usize,
    pub m: usize,
    pub total: u64,
    pub classes: Vec<ClassSummary>,
    pub unique_sets: u64,
    pub unique_fraction: f64,
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Advances `idx` to the next m-combination of 0..universe; false when done.
fn next_combination(idx: &mut [usize], universe: usize) -> bool {
    let m = idx.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if idx[i] < universe - m + i {
            idx[i] += 1;
            for j in i + 1..m {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn classify(modulus: PrimeModulus, n: usize, m: usize, mode: ClassifyMode) -> Result<ClassificationReport> {
    classify_with(modulus, n, m, mode, &ClassifyBudget::default())
}

/// Partitions m-subsets of Z_p^n into shift classes and counts the reduced
/// bases of each class representative.
pub fn classify_with(
    modulus: PrimeModulus,
    n: usize,
    m: usize,
    mode: ClassifyMode,
    budget: &ClassifyBudget,
) -> Result<ClassificationReport> {
    let p = modulus.get();
    budget.fan.check(p, n, m)?;
    let space = PointSet::full(modulus, n);
    let universe = space.len();
    if m == 0 || m > universe {
        return Err(Error::Invalid(format!("m = {m} must lie in 1..={universe}")));
    }
    let shifts = all_shifts(modulus, n);
    let subset = |idx: &[usize]| -> PointSet {
        let pts: Vec<ExponentVector> = idx.iter().map(|&i| space.points()[i].clone()).collect();
        PointSet::from_sorted_unchecked(modulus, n, pts)
    };

    let mut counts: HashMap<Vec<ExponentVector>, u64> = HashMap::new();
    let total = match mode {
        ClassifyMode::Exhaustive => {
            let total = binomial(universe as u64, m as u64).unwrap_or(u64::MAX);
            if total > budget.max_sets {
                return Err(Error::BudgetExceeded(format!("C({universe}, {m}) = {total} > {}", budget.max_sets)));
            }
            let mut idx: Vec<usize> = (0..m).collect();
            loop {
                *counts.entry(canonical_representative(&subset(&idx), &shifts)).or_default() += 1;
                if !next_combination(&mut idx, universe) {
                    break;
                }
            }
            total
        }
        ClassifyMode::Sample { k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..k {
                let mut idx = sample(&mut rng, universe, m).into_vec();
                idx.sort_unstable();
                *counts.entry(canonical_representative(&subset(&idx), &shifts)).or_default() += 1;
            }
            k as u64
        }
    };

    let catalog = StaircaseCatalog::new(&subset(&(0..m).collect::<Vec<_>>()), &budget.fan)?;
    let mut reps: Vec<(Vec<ExponentVector>, u64)> = counts.into_iter().collect();
    reps.sort();
    let classes = reps
        .into_par_iter()
        .map(|(rep, size)| {
            let v = PointSet::from_sorted_unchecked(modulus, n, rep);
            let gb_count = all_reduced_gbs_with(&catalog, &v)?.len();
            Ok(ClassSummary {
                rep: v.to_rows(),
                size,
                gb_count,
                unique: gb_count == 1,
                shifted_staircase: find_staircase_shift(&v).is_some(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let unique_sets = classes.iter().filter(|c| c.unique).map(|c| c.size).sum();
    let unique_fraction = if total == 0 { 0.0 } else { unique_sets as f64 / total as f64 };
    Ok(ClassificationReport { p, n, m, total, classes, unique_sets, unique_fraction })
}
