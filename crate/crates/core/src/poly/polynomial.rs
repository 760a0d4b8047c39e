use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExponentVector, MonomialOrder};
use crate::error::{Error, Result};
use crate::field::{PrimeModulus, Scalar};

/// Sparse polynomial over Z_p in `n` variables.
///
/// Terms are kept with nonzero coefficients, sorted by descending graded
/// reverse lex, so equal polynomials are structurally equal. Arithmetic
/// operators panic when the operands live in different rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    modulus: PrimeModulus,
    terms: Vec<(ExponentVector, u32)>,
}

fn storage_cmp(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    MonomialOrder::GrevLex.cmp(b, a)
}

impl Polynomial {
    pub fn zero(n: usize, modulus: PrimeModulus) -> Self {
        Polynomial { n, modulus, terms: Vec::new() }
    }

    pub fn constant(n: usize, modulus: PrimeModulus, c: u64) -> Self {
        Self::monomial(ExponentVector::zero(n), modulus, c)
    }

    pub fn monomial(exp: ExponentVector, modulus: PrimeModulus, c: u64) -> Self {
        let n = exp.len();
        let c = modulus.reduce(c);
        let terms = if c == 0 { Vec::new() } else { vec![(exp, c)] };
        Polynomial { n, modulus, terms }
    }

    pub fn variable(n: usize, i: usize, modulus: PrimeModulus) -> Self {
        Self::monomial(ExponentVector::unit(n, i), modulus, 1)
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I>(n: usize, modulus: PrimeModulus, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, u32)>,
    {
        let mut acc: HashMap<ExponentVector, u32> = HashMap::new();
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: e.len() });
            }
            let slot = acc.entry(e).or_insert(0);
            *slot = modulus.add(*slot, modulus.reduce(c as u64));
        }
        Ok(Self::from_map(n, modulus, acc))
    }

    fn from_map(n: usize, modulus: PrimeModulus, acc: HashMap<ExponentVector, u32>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| storage_cmp(&a.0, &b.0));
        Polynomial { n, modulus, terms }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending graded reverse lex) order.
    pub fn terms(&self) -> &[(ExponentVector, u32)] {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> + '_ {
        self.terms.iter().map(|(e, _)| e)
    }

    pub fn coefficient(&self, e: &ExponentVector) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| storage_cmp(t, e))
            .map_or(0, |i| self.terms[i].1)
    }

    /// Terms sorted by descending `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(ExponentVector, u32)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&ExponentVector, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(e, c)| (e, *c))
    }

    /// Largest exponent of any variable.
    pub fn max_exponent(&self) -> u32 {
        self.terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0)
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(
            self.n == other.n && self.modulus == other.modulus,
            "polynomial ring mismatch: Z_{}[{} vars] vs Z_{}[{} vars]",
            self.modulus,
            self.n,
            other.modulus,
            other.n
        );
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let m = self.modulus;
        let c = m.reduce(c as u64);
        if c == 0 {
            return Polynomial::zero(self.n, m);
        }
        Polynomial {
            n: self.n,
            modulus: m,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), m.mul(*a, c))).collect(),
        }
    }

    /// `self * c * x^shift`.
    pub fn mul_term(&self, shift: &ExponentVector, c: u32) -> Polynomial {
        let m = self.modulus;
        let c = m.reduce(c as u64);
        if c == 0 {
            return Polynomial::zero(self.n, m);
        }
        // multiplication by a monomial preserves grevlex order
        Polynomial {
            n: self.n,
            modulus: m,
            terms: self.terms.iter().map(|(e, a)| (e.mul(shift), m.mul(*a, c))).collect(),
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        self.assert_same_ring(other);
        let m = self.modulus;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let fix = |c: u32| if negate_other { m.neg(c) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match storage_cmp(&a.0, &b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.0.clone(), fix(b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = m.add(a.1, fix(b.1));
                    if c != 0 {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), fix(*c))));
        Polynomial { n: self.n, modulus: m, terms: out }
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.n, self.modulus, 1);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: point.len() });
        }
        Ok(self.evaluate_unchecked(point))
    }

    pub(crate) fn evaluate_unchecked(&self, point: &[u32]) -> u32 {
        let m = self.modulus;
        self.terms.iter().fold(0, |acc, (e, c)| {
            let mono = monomial_value(m, e, point);
            m.add(acc, m.mul(*c, mono))
        })
    }

    pub fn evaluate_scalars(&self, point: &[Scalar]) -> Result<Scalar> {
        for s in point {
            if s.modulus() != self.modulus {
                return Err(Error::ModulusMismatch(self.modulus.get(), s.modulus().get()));
            }
        }
        let raw: Vec<u32> = point.iter().map(|s| s.value()).collect();
        Ok(self.modulus.scalar(self.evaluate(&raw)? as u64))
    }

    /// Folds exponents with `x^p = x`, giving the canonical representative of
    /// the function Z_p^n -> Z_p that this polynomial defines.
    pub fn reduce_to_function(&self) -> Polynomial {
        let p = self.modulus.get();
        let fold = |e: u32| if e == 0 { 0 } else { (e - 1) % (p - 1) + 1 };
        let terms = self.terms.iter().map(|(e, c)| {
            (ExponentVector::new(e.iter().map(|&x| fold(x)).collect()), *c)
        });
        Polynomial::from_terms(self.n, self.modulus, terms).expect("same arity")
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: images.len() });
        }
        let target_n = images.first().map_or(self.n, Polynomial::nvars);
        let mut acc = Polynomial::zero(target_n, self.modulus);
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.n];
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target_n, self.modulus, *c as u64);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::constant(target_n, self.modulus, 1));
                }
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[k as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

#[inline]
pub(crate) fn monomial_value(m: PrimeModulus, e: &ExponentVector, point: &[u32]) -> u32 {
    e.iter().zip(point).fold(1 % m.get(), |acc, (&k, &x)| {
        if k == 0 {
            acc
        } else {
            m.mul(acc, m.pow(x, k as u64))
        }
    })
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let m = self.modulus;
        Polynomial {
            n: self.n,
            modulus: m,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), m.neg(*c))).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let m = self.modulus;
        let mut acc: HashMap<ExponentVector, u32> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let slot = acc.entry(a.mul(b)).or_insert(0);
                *slot = m.add(*slot, m.mul(*ca, *cb));
            }
        }
        Polynomial::from_map(self.n, m, acc)
    }
}

/// A monic polynomial with a designated leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedPolynomial {
    poly: Polynomial,
    leading: ExponentVector,
}

impl MarkedPolynomial {
    /// Requires `leading` to be a term of `poly` with coefficient 1.
    pub fn new(poly: Polynomial, leading: ExponentVector) -> Result<Self> {
        if poly.coefficient(&leading) != 1 {
            return Err(Error::Invalid(format!(
                "marked term {leading:?} must appear with coefficient 1"
            )));
        }
        Ok(MarkedPolynomial { poly, leading })
    }

    /// Marks `leading` and scales so that its coefficient is 1.
    pub fn monic(poly: Polynomial, leading: ExponentVector) -> Result<Self> {
        let c = poly.coefficient(&leading);
        if c == 0 {
            return Err(Error::Invalid(format!("{leading:?} is not a term")));
        }
        let inv = poly.modulus().inv(c)?;
        Self::new(poly.scale(inv), leading)
    }

    /// Marks the leading term under `order` and normalizes.
    pub fn from_order(poly: Polynomial, order: &MonomialOrder) -> Result<Self> {
        let lead = poly
            .leading_term(order)
            .map(|(e, _)| e.clone())
            .ok_or_else(|| Error::Invalid("cannot mark the zero polynomial".into()))?;
        Self::monic(poly, lead)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn leading(&self) -> &ExponentVector {
        &self.leading
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    /// The polynomial minus its marked term.
    pub fn tail(&self) -> Polynomial {
        let lead = Polynomial::monomial(self.leading.clone(), self.poly.modulus(), 1);
        &self.poly - &lead
    }

    pub fn is_marked_consistently(&self, order: &MonomialOrder) -> bool {
        self.poly
            .support()
            .all(|e| e == &self.leading || order.cmp(e, &self.leading) == Ordering::Less)
    }
}

/// Reduces `f` against the marked basis `basis`.
///
/// Always rewrites the largest reducible term first, using the first
/// generator in `basis` whose marked term divides it.
pub fn normal_form(
    f: &Polynomial,
    basis: &[MarkedPolynomial],
    order: &MonomialOrder,
) -> Result<Polynomial> {
    for (i, g) in basis.iter().enumerate() {
        if g.poly.n != f.n {
            return Err(Error::DimensionMismatch { expected: f.n, found: g.poly.n });
        }
        if g.poly.modulus != f.modulus {
            return Err(Error::ModulusMismatch(f.modulus.get(), g.poly.modulus.get()));
        }
        if !g.is_marked_consistently(order) {
            return Err(Error::InconsistentMarking(i));
        }
    }
    order.check_arity(f.n)?;
    let m = f.modulus;
    let mut work: HashMap<ExponentVector, u32> = f.terms.iter().cloned().collect();
    let mut rest: HashMap<ExponentVector, u32> = HashMap::new();
    while let Some(top) = work.keys().max_by(|a, b| order.cmp(a, b)).cloned() {
        let c = work.remove(&top).expect("present");
        let reducer = basis.iter().find_map(|g| top.checked_div(&g.leading).map(|q| (g, q)));
        match reducer {
            None => {
                rest.insert(top, c);
            }
            Some((g, q)) => {
                for (e, gc) in g.poly.terms() {
                    if e == &g.leading {
                        continue;
                    }
                    let key = e.mul(&q);
                    let slot = work.entry(key.clone()).or_insert(0);
                    *slot = m.sub(*slot, m.mul(c, *gc));
                    if *slot == 0 {
                        work.remove(&key);
                    }
                }
            }
        }
    }
    Ok(Polynomial::from_map(f.n, m, rest))
}
