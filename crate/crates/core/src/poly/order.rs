//! Monomial orders: lex under a variable permutation, graded lex, graded
//! reverse lex and positive weight vectors with a lex tie-break.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use super::ExponentVector;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic; `priority[0]` is the most significant variable.
    Lex(Vec<usize>),
    /// Total degree, ties by lex with `x1 > x2 > ... > xn`.
    GrLex,
    /// Total degree, ties by reverse lex.
    GrevLex,
    /// Weighted degree `w . u`, ties by lex under `tie`.
    ///
    /// Rational weights are scaled to integers at construction, which leaves
    /// the comparison unchanged.
    Weight { weights: Vec<u64>, tie: Vec<usize> },
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &i in perm {
        if i >= perm.len() || seen[i] {
            return Err(Error::InvalidOrder(format!("{perm:?} is not a permutation")));
        }
        seen[i] = true;
    }
    Ok(())
}

fn cmp_lex_by(perm: &[usize], u: &ExponentVector, v: &ExponentVector) -> Ordering {
    for &i in perm {
        match u.get(i).cmp(&v.get(i)) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Lex with `x1 > x2 > ... > xn`.
    pub fn lex(n: usize) -> Self {
        MonomialOrder::Lex((0..n).collect())
    }

    pub fn lex_with(priority: Vec<usize>) -> Result<Self> {
        check_permutation(&priority)?;
        Ok(MonomialOrder::Lex(priority))
    }

    /// Integer weights with the default tie-break `x1 > x2 > ... > xn`.
    pub fn weight(weights: &[u64]) -> Result<Self> {
        Self::weight_with_tie(weights, (0..weights.len()).collect())
    }

    pub fn weight_with_tie(weights: &[u64], tie: Vec<usize>) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::InvalidOrder("weights must be strictly positive".into()));
        }
        if tie.len() != weights.len() {
            return Err(Error::InvalidOrder("tie-break length differs from weight length".into()));
        }
        check_permutation(&tie)?;
        Ok(MonomialOrder::Weight { weights: weights.to_vec(), tie })
    }

    /// Positive rational weights; scaled by the lcm of the denominators.
    pub fn weight_rational(weights: &[Ratio<i64>], tie: Option<Vec<usize>>) -> Result<Self> {
        if weights.iter().any(|w| *w.numer() <= 0 || *w.denom() <= 0) {
            return Err(Error::InvalidOrder("weights must be strictly positive".into()));
        }
        let lcm = weights.iter().fold(1i64, |acc, w| acc.lcm(w.denom()));
        let scaled: Vec<u64> = weights
            .iter()
            .map(|w| (w.numer() * (lcm / w.denom())) as u64)
            .collect();
        let g = scaled.iter().fold(0u64, |acc, &w| acc.gcd(&w));
        let scaled: Vec<u64> = scaled.iter().map(|&w| w / g.max(1)).collect();
        let tie = tie.unwrap_or_else(|| (0..weights.len()).collect());
        Self::weight_with_tie(&scaled, tie)
    }

    /// Number of variables this order is tied to, if any.
    pub fn arity(&self) -> Option<usize> {
        match self {
            MonomialOrder::Lex(p) => Some(p.len()),
            MonomialOrder::Weight { weights, .. } => Some(weights.len()),
            _ => None,
        }
    }

    pub fn check_arity(&self, n: usize) -> Result<()> {
        match self.arity() {
            Some(k) if k != n => Err(Error::DimensionMismatch { expected: k, found: n }),
            _ => Ok(()),
        }
    }

    /// Order comparison without dimension checks.
    pub fn cmp(&self, u: &ExponentVector, v: &ExponentVector) -> Ordering {
        match self {
            MonomialOrder::Lex(perm) => cmp_lex_by(perm, u, v),
            MonomialOrder::GrLex => u
                .degree()
                .cmp(&v.degree())
                .then_with(|| u.as_slice().cmp(v.as_slice())),
            MonomialOrder::GrevLex => u.degree().cmp(&v.degree()).then_with(|| {
                for i in (0..u.len()).rev() {
                    match u.get(i).cmp(&v.get(i)) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Weight { weights, tie } => {
                let dot = |e: &ExponentVector| -> u128 {
                    weights.iter().zip(e.iter()).map(|(&w, &x)| w as u128 * x as u128).sum()
                };
                dot(u).cmp(&dot(v)).then_with(|| cmp_lex_by(tie, u, v))
            }
        }
    }

    /// Checked version of [`MonomialOrder::cmp`].
    pub fn compare(&self, u: &ExponentVector, v: &ExponentVector) -> Result<Ordering> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
        }
        self.check_arity(u.len())?;
        Ok(self.cmp(u, v))
    }

    /// Parses `lex[:<perm>] | grlex | grevlex | weight:<w1,..,wn>[:tie=<perm>]`.
    ///
    /// Permutations list 1-based variable indices from most to least
    /// significant; weights may be integers or fractions like `3/2`.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        let spec = spec.trim();
        let mut parts = spec.split(':');
        let kind = parts.next().unwrap_or_default().to_ascii_lowercase();
        let order = match kind.as_str() {
            "grlex" => MonomialOrder::GrLex,
            "grevlex" => MonomialOrder::GrevLex,
            "lex" => match parts.next() {
                None => MonomialOrder::lex(n),
                Some(p) => MonomialOrder::lex_with(parse_perm(p)?)?,
            },
            "weight" => {
                let ws = parts
                    .next()
                    .ok_or_else(|| Error::InvalidOrder("weight order needs weights".into()))?;
                let weights = ws
                    .split(',')
                    .map(|w| parse_ratio(w.trim()))
                    .collect::<Result<Vec<_>>>()?;
                let tie = match parts.next() {
                    None => None,
                    Some(t) => {
                        let t = t.strip_prefix("tie=").ok_or_else(|| {
                            Error::InvalidOrder(format!("expected tie=<perm>, got {t:?}"))
                        })?;
                        Some(parse_perm(t)?)
                    }
                };
                MonomialOrder::weight_rational(&weights, tie)?
            }
            _ => return Err(Error::InvalidOrder(format!("unknown order {spec:?}"))),
        };
        if parts.next().is_some() {
            return Err(Error::InvalidOrder(format!("trailing fields in {spec:?}")));
        }
        order.check_arity(n)?;
        Ok(order)
    }
}

fn parse_perm(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let t = t.strip_prefix('x').unwrap_or(t);
            match t.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::InvalidOrder(format!("bad variable index {t:?}"))),
            }
        })
        .collect()
}

fn parse_ratio(text: &str) -> Result<Ratio<i64>> {
    let bad = || Error::InvalidOrder(format!("bad weight {text:?}"));
    match text.split_once('/') {
        Some((a, b)) => {
            let d: i64 = b.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(a.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(Ratio::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm = |p: &[usize]| {
            p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        };
        match self {
            MonomialOrder::Lex(p) => write!(f, "lex:{}", perm(p)),
            MonomialOrder::GrLex => write!(f, "grlex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Weight { weights, tie } => {
                let ws = weights.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                write!(f, "weight:{ws}:tie={}", perm(tie))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomial::box_vectors;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::from(v)
    }

    #[test]
    fn weight_examples() {
        let w13 = MonomialOrder::weight(&[1, 3]).unwrap();
        assert_eq!(w13.cmp(&ev(&[0, 1]), &ev(&[2, 0])), Ordering::Greater);
        let w11 = MonomialOrder::weight(&[1, 1]).unwrap();
        assert_eq!(w11.cmp(&ev(&[2, 0]), &ev(&[0, 1])), Ordering::Greater);
        // equal weight, lex tie-break with x > y
        assert_eq!(w11.cmp(&ev(&[1, 0]), &ev(&[0, 1])), Ordering::Greater);
        assert_eq!(
            MonomialOrder::weight(&[1, 1, 1]).unwrap().compare(&ev(&[1, 0]), &ev(&[0, 1])),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn one_is_minimal() {
        let orders = [
            MonomialOrder::lex(3),
            MonomialOrder::GrLex,
            MonomialOrder::GrevLex,
            MonomialOrder::weight(&[2, 1, 5]).unwrap(),
        ];
        for o in &orders {
            for u in box_vectors(3, 3).iter().filter(|u| !u.is_zero()) {
                assert_eq!(o.cmp(u, &ExponentVector::zero(3)), Ordering::Greater);
            }
        }
    }

    #[test]
    fn grevlex_differs_from_grlex() {
        // x1*x3 vs x2^2
        let a = ev(&[1, 0, 1]);
        let b = ev(&[0, 2, 0]);
        assert_eq!(MonomialOrder::GrLex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn parse_specs() {
        assert_eq!(MonomialOrder::parse("grlex", 2).unwrap(), MonomialOrder::GrLex);
        assert_eq!(MonomialOrder::parse("lex:2,1", 2).unwrap(), MonomialOrder::Lex(vec![1, 0]));
        assert_eq!(MonomialOrder::parse("lex", 3).unwrap(), MonomialOrder::lex(3));
        assert_eq!(
            MonomialOrder::parse("weight:1,3", 2).unwrap(),
            MonomialOrder::weight(&[1, 3]).unwrap()
        );
        assert_eq!(
            MonomialOrder::parse("weight:1/2,3/2:tie=2,1", 2).unwrap(),
            MonomialOrder::weight_with_tie(&[1, 3], vec![1, 0]).unwrap()
        );
        assert!(MonomialOrder::parse("weight:0,1", 2).is_err());
        assert!(MonomialOrder::parse("lex:1,1", 2).is_err());
        assert!(MonomialOrder::parse("weight:1,1", 3).is_err());
        assert!(MonomialOrder::parse("banana", 3).is_err());
        let o = MonomialOrder::weight_with_tie(&[2, 1], vec![1, 0]).unwrap();
        assert_eq!(MonomialOrder::parse(&o.to_string(), 2).unwrap(), o);
    }

    fn panel(n: usize) -> Vec<MonomialOrder> {
        let mut v = vec![MonomialOrder::GrLex, MonomialOrder::GrevLex];
        let mut perm: Vec<usize> = (0..n).collect();
        v.push(MonomialOrder::Lex(perm.clone()));
        perm.reverse();
        v.push(MonomialOrder::Lex(perm.clone()));
        let ws: Vec<u64> = (1..=n as u64).collect();
        v.push(MonomialOrder::weight(&ws).unwrap());
        v.push(MonomialOrder::weight_with_tie(&vec![1; n], perm).unwrap());
        v
    }

    #[test]
    fn total_order_on_box_exhaustive() {
        for n in 1..=3 {
            for p in 2..=3u32 {
                let cube = box_vectors(n, p + 1);
                for o in panel(n) {
                    for u in &cube {
                        for v in &cube {
                            let uv = o.cmp(u, v);
                            assert_eq!(uv, o.cmp(v, u).reverse());
                            assert_eq!(uv == Ordering::Equal, u == v);
                            for w in &cube {
                                if uv == Ordering::Less && o.cmp(v, w) == Ordering::Less {
                                    assert_eq!(o.cmp(u, w), Ordering::Less);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_on_box() {
        for n in 1..=3 {
            let p = 3u32;
            let cube = box_vectors(n, p + 1);
            for o in panel(n) {
                for u in &cube {
                    for v in &cube {
                        for t in &cube {
                            let (ut, vt) = (u.mul(t), v.mul(t));
                            if ut.iter().chain(vt.iter()).all(|&e| e <= p) {
                                assert_eq!(o.cmp(&ut, &vt), o.cmp(u, v));
                            }
                        }
                    }
                }
            }
        }
    }
}
