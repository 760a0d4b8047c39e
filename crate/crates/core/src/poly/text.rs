//! Text form of polynomials.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' int)?
//! var    := 'x' int
//! ```
//!
//! Whitespace is ignored and coefficients are reduced mod p. Exponents above
//! p are rejected. Optional [`VarNames`] add aliases such as `M` for `x1`.

use super::{ExponentVector, MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::field::PrimeModulus;

/// Display names for the variables x1..xn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    pub fn standard(n: usize) -> Self {
        VarNames((1..=n).map(|i| format!("x{i}")).collect())
    }

    pub fn new(names: Vec<String>) -> Result<Self> {
        for (i, a) in names.iter().enumerate() {
            let valid = a.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Invalid(format!("bad variable name {a:?}")));
            }
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate variable name {a:?}")));
            }
        }
        Ok(VarNames(names))
    }

    /// Parses `x1=M,x2=L` style overrides on top of the standard names.
    pub fn from_assignments(n: usize, text: &str) -> Result<Self> {
        let mut names = Self::standard(n).0;
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (var, name) = part
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("expected xi=name, got {part:?}")))?;
            let idx = var
                .trim()
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| (1..=n).contains(&i))
                .ok_or_else(|| Error::Invalid(format!("bad variable {var:?}")))?;
            names[idx - 1] = name.trim().to_string();
        }
        Self::new(names)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    fn lookup(&self, ident: &str) -> Option<usize> {
        self.0.iter().position(|n| n == ident)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
    modulus: PrimeModulus,
    names: Option<&'a VarNames>,
}

impl Parser<'_> {
    fn err<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// Reads digits; returns the value mod p and the saturated exact value.
    fn number(&mut self) -> Result<(u64, u64)> {
        self.skip_ws();
        let start = self.pos;
        let p = self.modulus.get() as u64;
        let (mut residue, mut exact) = (0u64, 0u64);
        while let Some(&d) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            let d = (d - b'0') as u64;
            residue = (residue * 10 + d) % p;
            exact = exact.saturating_mul(10).saturating_add(d);
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected a number");
        }
        Ok((residue, exact))
    }

    fn variable(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if ident.is_empty() {
            return self.err(start, "expected a variable");
        }
        if let Some(i) = self.names.and_then(|n| n.lookup(ident)) {
            return Ok(i);
        }
        match ident.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
            Some(i) if (1..=self.n).contains(&i) => Ok(i - 1),
            Some(i) => self.err(start, format!("variable index {i} outside 1..={}", self.n)),
            None => self.err(start, format!("unknown variable {ident:?}")),
        }
    }

    fn factor(&mut self, exps: &mut [u32], term_start: usize) -> Result<()> {
        let var = self.variable()?;
        let mut k = 1u64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            k = self.number()?.1;
        }
        let total = exps[var] as u64 + k;
        if total > self.modulus.get() as u64 {
            return self.err(
                term_start,
                format!("exponent {total} of x{} exceeds p = {}", var + 1, self.modulus),
            );
        }
        exps[var] = total as u32;
        Ok(())
    }

    fn term(&mut self) -> Result<(ExponentVector, u32)> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let mut exps = vec![0u32; self.n];
        let mut coeff = 1u32;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => coeff = self.number()?.0 as u32,
            Some(_) => self.factor(&mut exps, start)?,
            None => return self.err(self.pos, "expected a term"),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut exps, start)?;
        }
        Ok((ExponentVector::new(exps), coeff))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(c) => return self.err(self.pos, format!("unexpected {:?}", c as char)),
            }
        }
        Polynomial::from_terms(self.n, self.modulus, terms)
    }
}

/// Parses a polynomial in `x1..xn` over Z_p.
pub fn parse(text: &str, n: usize, modulus: PrimeModulus) -> Result<Polynomial> {
    Parser { src: text.as_bytes(), pos: 0, n, modulus, names: None }.poly()
}

/// Like [`parse`], additionally accepting the aliases in `names`.
pub fn parse_with_names(text: &str, names: &VarNames, modulus: PrimeModulus) -> Result<Polynomial> {
    Parser { src: text.as_bytes(), pos: 0, n: names.len(), modulus, names: Some(names) }.poly()
}

/// Formats terms in strictly descending `order`.
pub fn format(f: &Polynomial, order: &MonomialOrder) -> String {
    format_with_names(f, order, &VarNames::standard(f.nvars()))
}

pub fn format_with_names(f: &Polynomial, order: &MonomialOrder, names: &VarNames) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    f.sorted_terms(order)
        .iter()
        .map(|(e, c)| {
            let mut factors = Vec::new();
            if *c != 1 || e.is_zero() {
                factors.push(c.to_string());
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names.name(i).to_string()),
                    _ => factors.push(format!("{}^{k}", names.name(i))),
                }
            }
            factors.join("*")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
