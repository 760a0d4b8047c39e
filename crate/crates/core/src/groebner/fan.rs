use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bm_reduced_gb, ReducedGroebnerBasis};
use crate::error::{Error, Result};
use crate::feasibility::strict_positive_solution;
use crate::field::{rank, MatrixZp, PrimeModulus};
use crate::points::{enumerate_order_ideals, evaluation_matrix, OrderIdealSet, PointSet, PointSetFile};
use crate::poly::{monomial_value, ExponentVector, MonomialOrder, Polynomial};

/// Size limits for exhaustive fan enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanBudget {
    /// Largest admissible p^n.
    pub max_box: u64,
    /// Largest admissible |V|.
    pub max_points: usize,
}

impl Default for FanBudget {
    fn default() -> Self {
        FanBudget { max_box: 64, max_points: 16 }
    }
}

impl FanBudget {
    pub fn check(&self, p: u32, n: usize, m: usize) -> Result<()> {
        let size = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > self.max_box {
            return Err(Error::BudgetExceeded(format!("p^n = {size} > {}", self.max_box)));
        }
        if m > self.max_points {
            return Err(Error::BudgetExceeded(format!("|V| = {m} > {}", self.max_points)));
        }
        Ok(())
    }
}

/// Every order ideal of one size in `[0, p)^n`, with its corners.
///
/// Building this once and sharing it across many point sets of the same size
/// avoids re-enumerating staircases.
#[derive(Clone, Debug)]
pub struct StaircaseCatalog {
    p: u32,
    n: usize,
    m: usize,
    candidates: Vec<(OrderIdealSet, Vec<ExponentVector>)>,
}

impl StaircaseCatalog {
    pub fn new(v: &PointSet, budget: &FanBudget) -> Result<Self> {
        if v.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        Self::for_size(v.modulus(), v.nvars(), v.len(), budget)
    }

    pub fn for_size(modulus: PrimeModulus, n: usize, m: usize, budget: &FanBudget) -> Result<Self> {
        budget.check(modulus.get(), n, m)?;
        let candidates = enumerate_order_ideals(modulus, n, m)
            .into_iter()
            .map(|l| {
                let corners = l.corners();
                (l, corners)
            })
            .collect();
        Ok(StaircaseCatalog { p: modulus.get(), n, m, candidates })
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    fn check(&self, v: &PointSet) -> Result<()> {
        if (self.p, self.n, self.m) != (v.p(), v.nvars(), v.len()) {
            return Err(Error::Invalid(format!(
                "catalog built for p={} n={} m={}, got p={} n={} m={}",
                self.p,
                self.n,
                self.m,
                v.p(),
                v.nvars(),
                v.len()
            )));
        }
        Ok(())
    }
}

/// One reduced basis together with a weight vector that selects it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanEntry {
    pub basis: ReducedGroebnerBasis,
    pub witness_weight: Vec<u64>,
}

impl FanEntry {
    pub fn standard_monomials(&self) -> &OrderIdealSet {
        self.basis.standard_monomials()
    }
}

/// All distinct reduced Groebner bases of I(V), sorted by staircase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicFan {
    pub points: PointSet,
    pub entries: Vec<FanEntry>,
}

impl AlgebraicFan {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_file(&self) -> FanFile {
        FanFile {
            points: PointSetFile::from_set(&self.points),
            entries: self
                .entries
                .iter()
                .map(|e| FanEntryFile {
                    sm: e.standard_monomials().to_rows(),
                    gb: e.basis.to_strings(),
                    witness_weight: e.witness_weight.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub points: PointSetFile,
    pub entries: Vec<FanEntryFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanEntryFile {
    pub sm: Vec<Vec<u32>>,
    pub gb: Vec<String>,
    pub witness_weight: Vec<u64>,
}

fn monomial_column(e: &ExponentVector, v: &PointSet) -> Vec<u32> {
    let m = v.modulus();
    v.iter().map(|pt| monomial_value(m, e, pt.as_slice())).collect()
}

/// Normal forms of the corners when `lambda` is basic, else `None`.
fn corner_normal_forms(
    lambda: &OrderIdealSet,
    corners: &[ExponentVector],
    v: &PointSet,
) -> Result<Option<Vec<Vec<u32>>>> {
    let x = evaluation_matrix(lambda.members(), v)?;
    let inv = match x.inverse() {
        Ok(inv) => inv,
        Err(Error::SingularMatrix { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    corners
        .iter()
        .map(|c| inv.mul_vec(&monomial_column(c, v)))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn examine(
    lambda: &OrderIdealSet,
    corners: &[ExponentVector],
    v: &PointSet,
) -> Result<Option<FanEntry>> {
    let Some(normal_forms) = corner_normal_forms(lambda, corners, v)? else {
        return Ok(None);
    };
    // every corner must outweigh every monomial in its normal form
    let mut constraints: Vec<Vec<i64>> = Vec::new();
    for (c, coeffs) in corners.iter().zip(&normal_forms) {
        for (u, &k) in lambda.members().iter().zip(coeffs) {
            if k != 0 {
                constraints.push(c.iter().zip(u.iter()).map(|(&a, &b)| a as i64 - b as i64).collect());
            }
        }
    }
    let Some(witness) = strict_positive_solution(v.nvars(), &constraints)? else {
        return Ok(None);
    };
    let weights: Vec<u64> = witness.iter().map(|&w| w as u64).collect();
    let order = MonomialOrder::weight(&weights)?;
    let basis = bm_reduced_gb(v, &order)?;
    if basis.standard_monomials() != lambda {
        return Err(Error::WitnessMismatch(witness));
    }
    Ok(Some(FanEntry { basis, witness_weight: weights }))
}

/// Every reduced Groebner basis of I(V), within the default budget.
pub fn all_reduced_gbs(v: &PointSet) -> Result<AlgebraicFan> {
    let catalog = StaircaseCatalog::new(v, &FanBudget::default())?;
    all_reduced_gbs_with(&catalog, v)
}

/// [`all_reduced_gbs`] against a prebuilt catalog.
pub fn all_reduced_gbs_with(catalog: &StaircaseCatalog, v: &PointSet) -> Result<AlgebraicFan> {
    catalog.check(v)?;
    let found = catalog
        .candidates
        .par_iter()
        .map(|(lambda, corners)| examine(lambda, corners, v))
        .collect::<Result<Vec<_>>>()?;
    let mut entries: Vec<FanEntry> = found.into_iter().flatten().collect();
    entries.sort_by(|a, b| a.standard_monomials().cmp(b.standard_monomials()));
    Ok(AlgebraicFan { points: v.clone(), entries })
}

/// Counts basic staircases of size |V|; the basis is unique iff there is one.
pub fn is_unique_gb(v: &PointSet) -> Result<(bool, usize)> {
    let catalog = StaircaseCatalog::new(v, &FanBudget::default())?;
    is_unique_gb_with(&catalog, v)
}

pub fn is_unique_gb_with(catalog: &StaircaseCatalog, v: &PointSet) -> Result<(bool, usize)> {
    let count = count_basic(catalog, v, usize::MAX)?;
    Ok((count == 1, count))
}

/// Number of basic staircases in the catalog, counting stops at `limit`.
pub(crate) fn count_basic(catalog: &StaircaseCatalog, v: &PointSet, limit: usize) -> Result<usize> {
    catalog.check(v)?;
    let mut count = 0;
    for (lambda, _) in &catalog.candidates {
        let x: MatrixZp = evaluation_matrix(lambda.members(), v)?;
        if rank(&x) == v.len() {
            count += 1;
            if count >= limit {
                break;
            }
        }
    }
    Ok(count)
}

/// Union of the generators of every reduced basis, without repeats.
pub fn universal_basis(v: &PointSet) -> Result<Vec<Polynomial>> {
    let fan = all_reduced_gbs(v)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in &fan.entries {
        for g in e.basis.generators() {
            if seen.insert(g.poly().clone()) {
                out.push(g.poly().clone());
            }
        }
    }
    Ok(out)
}
