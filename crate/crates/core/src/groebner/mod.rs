//! Reduced Groebner bases of ideals of points.
//!
//! [`bm_reduced_gb`] computes the basis for one order. [`all_reduced_gbs`]
//! enumerates every reduced basis by testing each candidate staircase for
//! being basic and then for admitting a coherent positive weight vector.

mod bm;
mod fan;

pub use bm::bm_reduced_gb;
pub(crate) use fan::count_basic;
pub use fan::{
    all_reduced_gbs, all_reduced_gbs_with, is_unique_gb, is_unique_gb_with, universal_basis,
    AlgebraicFan, FanBudget, FanEntry, FanEntryFile, FanFile, StaircaseCatalog,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::points::{OrderIdealSet, PointSet};
use crate::poly::{format, normal_form, MarkedPolynomial, MonomialOrder, Polynomial};
use crate::shifts::LinearShift;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGroebnerBasis {
    order: MonomialOrder,
    generators: Vec<MarkedPolynomial>,
    standard_monomials: OrderIdealSet,
}

impl ReducedGroebnerBasis {
    pub(crate) fn from_parts(
        order: MonomialOrder,
        generators: Vec<MarkedPolynomial>,
        standard_monomials: OrderIdealSet,
    ) -> Self {
        ReducedGroebnerBasis { order, generators, standard_monomials }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Sorted by ascending marked term.
    pub fn generators(&self) -> &[MarkedPolynomial] {
        &self.generators
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly().clone()).collect()
    }

    pub fn standard_monomials(&self) -> &OrderIdealSet {
        &self.standard_monomials
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.generators, &self.order)
    }

    /// Generators as text, terms in descending order.
    pub fn to_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| format(g.poly(), &self.order)).collect()
    }

    /// Checks every structural invariant of a reduced basis for I(V).
    pub fn check_invariants(&self, v: &PointSet) -> Result<()> {
        let fail = |msg: String| Err(Error::Invalid(msg));
        if self.standard_monomials.len() != v.len() {
            return fail(format!("|SM| = {} but |V| = {}", self.standard_monomials.len(), v.len()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.poly().coefficient(g.leading()) != 1 {
                return fail(format!("generator {i} is not monic"));
            }
            if !g.is_marked_consistently(&self.order) {
                return fail(format!("generator {i} is not marked at its leading term"));
            }
            for (j, h) in self.generators.iter().enumerate() {
                if i != j && g.poly().support().any(|e| h.leading().divides(e)) {
                    return fail(format!("generator {i} has a term divisible by marked term {j}"));
                }
            }
            if !ideal_membership(g.poly(), v) {
                return fail(format!("generator {i} does not vanish on V"));
            }
        }
        for s in self.standard_monomials.members() {
            if self.generators.iter().any(|g| g.leading().divides(s)) {
                return fail(format!("standard monomial {s:?} is divisible by a marked term"));
            }
        }
        let mut corners: Vec<_> = self.generators.iter().map(|g| g.leading().clone()).collect();
        corners.sort();
        if corners != self.standard_monomials.corners() {
            return fail("marked terms are not the corners of the staircase".into());
        }
        Ok(())
    }
}

/// True iff `f` vanishes at every point of `v`.
pub fn ideal_membership(f: &Polynomial, v: &PointSet) -> bool {
    f.nvars() == v.nvars()
        && f.modulus() == v.modulus()
        && v.iter().all(|pt| f.evaluate_unchecked(pt.as_slice()) == 0)
}

/// Moves a reduced basis of I(V) to one of I(phi(V)).
///
/// Each generator is composed with the inverse shift, kept at its marked
/// term (shifts do not change leading monomials), made monic, and the tails
/// are reduced again.
pub fn transport_gb(g: &ReducedGroebnerBasis, shift: &LinearShift) -> Result<ReducedGroebnerBasis> {
    let inverse = shift.invert();
    let moved = g
        .generators
        .iter()
        .map(|h| {
            let f = inverse.apply_to_polynomial(h.poly())?;
            MarkedPolynomial::monic(f, h.leading().clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let reduced = moved
        .iter()
        .map(|h| {
            let tail = normal_form(&h.tail(), &moved, &g.order)?;
            let lead = Polynomial::monomial(h.leading().clone(), tail.modulus(), 1);
            MarkedPolynomial::new(&lead + &tail, h.leading().clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReducedGroebnerBasis {
        order: g.order.clone(),
        generators: reduced,
        standard_monomials: g.standard_monomials.clone(),
    })
}

/// Serialized form of a single reduced basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasisFile {
    pub order: String,
    pub gb: Vec<String>,
    pub leading: Vec<Vec<u32>>,
    pub sm: Vec<Vec<u32>>,
}

impl GroebnerBasisFile {
    pub fn from_basis(g: &ReducedGroebnerBasis) -> Self {
        GroebnerBasisFile {
            order: g.order.to_string(),
            gb: g.to_strings(),
            leading: g.generators.iter().map(|h| h.leading().as_slice().to_vec()).collect(),
            sm: g.standard_monomials.to_rows(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::poly::parse;

    fn zp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn pts(p: u64, n: usize, rows: &[&[u32]]) -> PointSet {
        PointSet::from_rows(zp(p), n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn lac_c1() -> PointSet {
        pts(2, 4, &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[1, 0, 0, 0], &[1, 1, 0, 0]])
    }

    fn polys(texts: &[&str], n: usize, p: u64) -> Vec<Polynomial> {
        texts.iter().map(|t| parse(t, n, zp(p)).unwrap()).collect()
    }

    #[test]
    fn lac_first_component() {
        let g = bm_reduced_gb(&lac_c1(), &MonomialOrder::GrevLex).unwrap();
        g.check_invariants(&lac_c1()).unwrap();
        let mut got = g.polynomials();
        got.sort_by_key(|f| format!("{f:?}"));
        let mut want = polys(&["x1^2 + x1", "x2^2 + x2", "x3", "x4"], 4, 2);
        want.sort_by_key(|f| format!("{f:?}"));
        assert_eq!(got, want);
        assert_eq!(
            g.standard_monomials().to_rows(),
            vec![vec![0, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![1, 1, 0, 0]]
        );
    }

    #[test]
    fn transport_examples() {
        let m = zp(2);
        let g1 = bm_reduced_gb(&lac_c1(), &MonomialOrder::GrLex).unwrap();
        let phi12 = LinearShift::new(m, vec![1, 1, 1, 1], vec![0, 0, 0, 1]).unwrap();
        let g2 = transport_gb(&g1, &phi12).unwrap();
        let c2 = phi12.apply(&lac_c1()).unwrap();
        assert_eq!(g2, bm_reduced_gb(&c2, &MonomialOrder::GrLex).unwrap());
        let has = |g: &ReducedGroebnerBasis, t: &str| g.polynomials().contains(&parse(t, 4, m).unwrap());
        assert!(has(&g2, "x4 + 1") && has(&g2, "x3") && has(&g2, "x1^2 + x1"));

        let ident = LinearShift::identity(m, 4);
        assert_eq!(transport_gb(&g1, &ident).unwrap(), g1);
    }

    #[test]
    fn transport_needs_reduction_over_z3() {
        let v = pts(3, 2, &[&[0, 0], &[1, 0], &[2, 1]]);
        let o = MonomialOrder::weight(&[1, 1]).unwrap();
        let g = bm_reduced_gb(&v, &o).unwrap();
        let phi = LinearShift::new(zp(3), vec![2, 1], vec![1, 2]).unwrap();
        let w = phi.apply(&v).unwrap();
        let moved = transport_gb(&g, &phi).unwrap();
        moved.check_invariants(&w).unwrap();
        assert_eq!(moved, bm_reduced_gb(&w, &o).unwrap());
    }

    #[test]
    fn membership() {
        let v = lac_c1();
        for i in 0..4 {
            let xi = Polynomial::variable(4, i, zp(2));
            assert!(ideal_membership(&(&xi.pow(2) - &xi), &v));
        }
        assert!(!ideal_membership(&Polynomial::constant(4, zp(2), 1), &v));
        for g in bm_reduced_gb(&v, &MonomialOrder::GrLex).unwrap().generators() {
            assert!(ideal_membership(g.poly(), &v));
        }
        assert!(!ideal_membership(&Polynomial::variable(3, 0, zp(2)), &v));
    }
}
