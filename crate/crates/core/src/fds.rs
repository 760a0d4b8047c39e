//! Polynomial dynamical systems over Z_p and algebraic model selection.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{solve_raw, PrimeModulus};
use crate::groebner::{all_reduced_gbs, count_basic, FanBudget, StaircaseCatalog};
use crate::points::{evaluation_matrix, OrderIdealSet, PointSet, PointSetFile};
use crate::poly::{parse_with_names, ExponentVector, MonomialOrder, Polynomial, VarNames};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BooleanExpression {
    /// Zero-based variable index.
    Var(usize),
    Not(Box<BooleanExpression>),
    And(Box<BooleanExpression>, Box<BooleanExpression>),
    Or(Box<BooleanExpression>, Box<BooleanExpression>),
}

impl BooleanExpression {
    pub fn var(i: usize) -> Self {
        BooleanExpression::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BooleanExpression) -> Self {
        BooleanExpression::Not(Box::new(e))
    }

    pub fn and(a: BooleanExpression, b: BooleanExpression) -> Self {
        BooleanExpression::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BooleanExpression, b: BooleanExpression) -> Self {
        BooleanExpression::Or(Box::new(a), Box::new(b))
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            BooleanExpression::Var(i) => Some(*i),
            BooleanExpression::Not(a) => a.max_var(),
            BooleanExpression::And(a, b) | BooleanExpression::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Infix text with `!`, `&` and `|`, fully parenthesized below the root.
    pub fn render(&self, names: &VarNames) -> String {
        fn go(e: &BooleanExpression, names: &VarNames, top: bool) -> String {
            let wrap = |s: String| if top { s } else { format!("({s})") };
            match e {
                BooleanExpression::Var(i) => names.name(*i).to_string(),
                BooleanExpression::Not(a) => format!("!{}", go(a, names, false)),
                BooleanExpression::And(a, b) => wrap(format!("{} & {}", go(a, names, false), go(b, names, false))),
                BooleanExpression::Or(a, b) => wrap(format!("{} | {}", go(a, names, false), go(b, names, false))),
            }
        }
        go(self, names, true)
    }

    pub fn eval(&self, state: &[bool]) -> bool {
        match self {
            BooleanExpression::Var(i) => state[*i],
            BooleanExpression::Not(a) => !a.eval(state),
            BooleanExpression::And(a, b) => a.eval(state) && b.eval(state),
            BooleanExpression::Or(a, b) => a.eval(state) || b.eval(state),
        }
    }
}

/// Polynomial function over Z_2 in `n` variables computing `e`.
pub fn boolean_to_poly(e: &BooleanExpression, n: usize) -> Result<Polynomial> {
    if let Some(i) = e.max_var().filter(|&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let z2 = PrimeModulus::new(2).expect("2 is prime");
    Ok(translate(e, n, z2))
}

fn translate(e: &BooleanExpression, n: usize, z2: PrimeModulus) -> Polynomial {
    let one = Polynomial::constant(n, z2, 1);
    match e {
        BooleanExpression::Var(i) => Polynomial::variable(n, *i, z2),
        BooleanExpression::Not(a) => &translate(a, n, z2) + &one,
        BooleanExpression::And(a, b) => (&translate(a, n, z2) * &translate(b, n, z2)).reduce_to_function(),
        BooleanExpression::Or(a, b) => {
            let (x, y) = (translate(a, n, z2), translate(b, n, z2));
            (&(&x + &y) + &(&x * &y)).reduce_to_function()
        }
    }
}

/// A map Z_p^n -> Z_p^n given by one polynomial per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDynamicalSystem {
    modulus: PrimeModulus,
    n: usize,
    functions: Vec<Polynomial>,
}

impl FiniteDynamicalSystem {
    pub fn new(modulus: PrimeModulus, n: usize, functions: Vec<Polynomial>) -> Result<Self> {
        if functions.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: functions.len() });
        }
        for f in &functions {
            if f.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: f.nvars() });
            }
            if f.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.get(), f.modulus().get()));
            }
        }
        Ok(FiniteDynamicalSystem { modulus, n, functions })
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        let functions = (0..n).map(|i| Polynomial::variable(n, i, modulus)).collect();
        FiniteDynamicalSystem { modulus, n, functions }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn functions(&self) -> &[Polynomial] {
        &self.functions
    }

    pub fn apply(&self, state: &[u32]) -> Result<Vec<u32>> {
        if state.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: state.len() });
        }
        let p = self.modulus.get();
        if let Some(&x) = state.iter().find(|&&x| x >= p) {
            return Err(Error::CoordinateOutOfRange { value: x, p });
        }
        Ok(self.functions.iter().map(|f| f.evaluate_unchecked(state)).collect())
    }

    /// Outputs of the system on `inputs`, as a data set.
    pub fn sample(&self, inputs: &PointSet) -> Result<DataSet> {
        let mut outputs = vec![Vec::with_capacity(inputs.len()); self.n];
        for pt in inputs.iter() {
            for (j, y) in self.apply(pt.as_slice())?.into_iter().enumerate() {
                outputs[j].push(y);
            }
        }
        DataSet::new(inputs.clone(), outputs)
    }
}

pub fn apply_fds(f: &FiniteDynamicalSystem, state: &[u32]) -> Result<Vec<u32>> {
    f.apply(state)
}

/// Functional graph of a system on all of Z_p^n, states in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpaceGraph {
    states: PointSet,
    successor: Vec<usize>,
}

impl StateSpaceGraph {
    pub fn states(&self) -> &[ExponentVector] {
        self.states.points()
    }

    pub fn successor(&self, i: usize) -> usize {
        self.successor[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&ExponentVector, &ExponentVector)> + '_ {
        let s = self.states.points();
        self.successor.iter().enumerate().map(move |(i, &j)| (&s[i], &s[j]))
    }

    pub fn fixed_points(&self) -> Vec<ExponentVector> {
        self.edges().filter(|(a, b)| a == b).map(|(a, _)| a.clone()).collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph state_space {\n");
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", label(a), label(b));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_file(&self) -> StateSpaceFile {
        StateSpaceFile {
            p: self.states.p(),
            n: self.states.nvars(),
            edges: self.edges().map(|(a, b)| [a.as_slice().to_vec(), b.as_slice().to_vec()]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSpaceFile {
    pub p: u32,
    pub n: usize,
    pub edges: Vec<[Vec<u32>; 2]>,
}

/// Digit string for small p, dot-separated otherwise.
pub fn label(state: &ExponentVector) -> String {
    if state.iter().all(|&x| x < 10) {
        state.iter().map(|x| x.to_string()).collect()
    } else {
        state.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

pub fn state_space(f: &FiniteDynamicalSystem, max_states: u64) -> Result<StateSpaceGraph> {
    let size = (f.modulus.get() as u64).checked_pow(f.n as u32).unwrap_or(u64::MAX);
    if size > max_states {
        return Err(Error::BudgetExceeded(format!("p^n = {size} > {max_states}")));
    }
    let states = PointSet::full(f.modulus, f.n);
    let successor = states
        .iter()
        .map(|s| {
            let image = ExponentVector::new(f.apply(s.as_slice())?);
            Ok(states.points().binary_search(&image).expect("image lies in Z_p^n"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StateSpaceGraph { states, successor })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Weakly connected components, each sorted, ordered by smallest state.
pub fn weak_components(g: &StateSpaceGraph) -> Vec<PointSet> {
    let size = g.successor.len();
    let mut parent: Vec<usize> = (0..size).collect();
    for (i, &j) in g.successor.iter().enumerate() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<ExponentVector>> = BTreeMap::new();
    for i in 0..size {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(g.states.points()[i].clone());
    }
    let m = g.states.modulus();
    let n = g.states.nvars();
    let mut out: Vec<PointSet> =
        groups.into_values().map(|pts| PointSet::from_sorted_unchecked(m, n, pts)).collect();
    out.sort_by(|a, b| a.points().cmp(b.points()));
    out
}

/// Inputs paired with one output column per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DataSet {
    inputs: PointSet,
    outputs: Vec<Vec<u32>>,
}

impl DataSet {
    /// `outputs[j][i]` is coordinate j of the image of the i-th sorted input.
    pub fn new(inputs: PointSet, outputs: Vec<Vec<u32>>) -> Result<Self> {
        let p = inputs.p();
        for col in &outputs {
            if col.len() != inputs.len() {
                return Err(Error::DimensionMismatch { expected: inputs.len(), found: col.len() });
            }
            if let Some(&x) = col.iter().find(|&&x| x >= p) {
                return Err(Error::CoordinateOutOfRange { value: x, p });
            }
        }
        Ok(DataSet { inputs, outputs })
    }

    pub fn inputs(&self) -> &PointSet {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Vec<u32>] {
        &self.outputs
    }

    pub fn coordinates(&self) -> usize {
        self.outputs.len()
    }
}

/// JSON form: a point set plus `"outputs": {"1": [...], ...}` in point order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataSetFile {
    pub p: u64,
    pub n: usize,
    pub points: Vec<Vec<u32>>,
    pub outputs: BTreeMap<String, Vec<u32>>,
}

impl DataSetFile {
    pub fn from_data(d: &DataSet) -> Self {
        let file = PointSetFile::from_set(&d.inputs);
        let outputs = d.outputs.iter().enumerate().map(|(j, col)| ((j + 1).to_string(), col.clone())).collect();
        DataSetFile { p: file.p, n: file.n, points: file.points, outputs }
    }

    pub fn to_data(&self) -> Result<DataSet> {
        let inputs = PointSetFile { p: self.p, n: self.n, points: self.points.clone() }.to_set()?;
        let mut keyed: Vec<(usize, &Vec<u32>)> = Vec::new();
        for (k, col) in &self.outputs {
            let j: usize = k
                .parse()
                .ok()
                .filter(|&j| j >= 1)
                .ok_or_else(|| Error::Invalid(format!("output key {k:?} is not a coordinate index")))?;
            if col.len() != self.points.len() {
                return Err(Error::DimensionMismatch { expected: self.points.len(), found: col.len() });
            }
            keyed.push((j, col));
        }
        keyed.sort();
        if keyed.iter().enumerate().any(|(i, (j, _))| *j != i + 1) {
            return Err(Error::Invalid("output keys must be 1, 2, ..., k".into()));
        }
        // reorder each column to follow the sorted inputs
        let outputs = keyed
            .into_iter()
            .map(|(_, col)| {
                inputs
                    .iter()
                    .map(|pt| {
                        let i = self.points.iter().position(|r| r.as_slice() == pt.as_slice()).expect("point came from file");
                        col[i]
                    })
                    .collect()
            })
            .collect();
        DataSet::new(inputs, outputs)
    }
}

/// The interpolating polynomial for coordinate `j` supported on `sm`.
pub fn model_select(d: &DataSet, sm: &OrderIdealSet, j: usize) -> Result<Polynomial> {
    if j >= d.coordinates() {
        return Err(Error::IndexOutOfRange { index: j, n: d.coordinates() });
    }
    if sm.len() != d.inputs.len() {
        return Err(Error::NotBasic);
    }
    let x = evaluation_matrix(sm.members(), &d.inputs)?;
    let coeffs = match solve_raw(&x, &d.outputs[j]) {
        Ok(c) => c,
        Err(Error::SingularMatrix { .. }) => return Err(Error::NotBasic),
        Err(e) => return Err(e),
    };
    Polynomial::from_terms(d.inputs.nvars(), d.inputs.modulus(), sm.members().iter().cloned().zip(coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelEnumeration {
    /// Distinct models per coordinate, in order of first appearance in the fan.
    pub models: Vec<Vec<Polynomial>>,
    pub counts: Vec<usize>,
    pub total: u128,
}

/// Every minimal model over every standard monomial basis of I(inputs).
pub fn enumerate_models(d: &DataSet) -> Result<ModelEnumeration> {
    let fan = all_reduced_gbs(&d.inputs)?;
    let mut models: Vec<Vec<Polynomial>> = vec![Vec::new(); d.coordinates()];
    let mut seen: Vec<HashSet<Polynomial>> = vec![HashSet::new(); d.coordinates()];
    for e in &fan.entries {
        for j in 0..d.coordinates() {
            let f = model_select(d, e.standard_monomials(), j)?;
            if seen[j].insert(f.clone()) {
                models[j].push(f);
            }
        }
    }
    let counts: Vec<usize> = models.iter().map(|m| m.len()).collect();
    let total = counts.iter().map(|&c| c as u128).product();
    Ok(ModelEnumeration { models, counts, total })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Augmentation {
    Found { k: usize, witness: PointSet },
    Exhausted { k_max: usize },
}

/// Smallest set of extra points making the reduced basis unique.
///
/// Sizes are tried in increasing order; within a size the lexicographically
/// first subset of the complement wins.
pub fn min_augmentation(v: &PointSet, k_max: usize, budget: &FanBudget) -> Result<Augmentation> {
    let m = v.modulus();
    let n = v.nvars();
    let complement = v.complement();
    for k in 0..=k_max.min(complement.len()) {
        let catalog = StaircaseCatalog::for_size(m, n, v.len() + k, budget)?;
        let combos = combinations(complement.len(), k);
        let hit = combos.par_iter().find_first(|idx| {
            let extra: Vec<ExponentVector> = idx.iter().map(|&i| complement.points()[i].clone()).collect();
            let w = PointSet::from_sorted_unchecked(m, n, extra);
            let union = v.union(&w).expect("disjoint sets over the same box");
            count_basic(&catalog, &union, 2).map(|c| c == 1).unwrap_or(false)
        });
        if let Some(idx) = hit {
            let extra = idx.iter().map(|&i| complement.points()[i].clone()).collect();
            return Ok(Augmentation::Found { k, witness: PointSet::from_sorted_unchecked(m, n, extra) });
        }
    }
    Ok(Augmentation::Exhausted { k_max })
}

fn combinations(universe: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > universe {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < universe - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// FDS file: `{"p": 2, "n": 4, "functions": ["x2*x3 + x1", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdsFile {
    pub p: u64,
    pub n: usize,
    pub functions: Vec<String>,
}

impl FdsFile {
    pub fn from_fds(f: &FiniteDynamicalSystem, names: &VarNames) -> Self {
        let order = MonomialOrder::GrLex;
        FdsFile {
            p: f.modulus.get() as u64,
            n: f.n,
            functions: f.functions.iter().map(|g| crate::poly::format_with_names(g, &order, names)).collect(),
        }
    }

    pub fn to_fds(&self, names: &VarNames) -> Result<FiniteDynamicalSystem> {
        let m = PrimeModulus::new(self.p)?;
        if names.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: names.len() });
        }
        let functions =
            self.functions.iter().map(|t| parse_with_names(t, names, m)).collect::<Result<Vec<_>>>()?;
        FiniteDynamicalSystem::new(m, self.n, functions)
    }
}

/// The four-variable lac operon network with x1 = M, x2 = L, x3 = Le, x4 = Ge.
pub mod lac {
    use super::*;

    pub const NAMES: [&str; 4] = ["M", "L", "Le", "Ge"];

    pub fn names() -> VarNames {
        VarNames::new(NAMES.iter().map(|s| s.to_string()).collect()).expect("valid names")
    }

    /// Boolean update rules.
    pub fn boolean_rules() -> Vec<BooleanExpression> {
        use BooleanExpression as B;
        let (m, l, le, ge) = (B::var(0), B::var(1), B::var(2), B::var(3));
        vec![
            B::and(B::not(ge.clone()), B::or(l.clone(), le.clone())),
            B::and(B::and(m, le.clone()), B::not(ge.clone())),
            le,
            ge,
        ]
    }

    /// Rule for M before the Lm variable is eliminated.
    pub fn unreduced_m_rule() -> BooleanExpression {
        use BooleanExpression as B;
        let (l, le, ge) = (B::var(1), B::var(2), B::var(3));
        B::and(B::not(ge.clone()), B::or(l, B::and(le, B::not(ge))))
    }

    pub fn polynomials() -> [&'static str; 4] {
        ["x2*x3*x4 + x2*x3 + x2*x4 + x3*x4 + x2 + x3", "x1*x3*x4 + x1*x3", "x3", "x4"]
    }

    pub fn system() -> FiniteDynamicalSystem {
        let functions = boolean_rules().iter().map(|e| boolean_to_poly(e, 4).expect("4 variables")).collect();
        FiniteDynamicalSystem::new(PrimeModulus::new(2).expect("prime"), 4, functions).expect("well formed")
    }

    /// Five states whose ideal has thirteen reduced bases.
    pub fn s5() -> PointSet {
        let rows = vec![vec![0, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 0, 0, 1], vec![1, 1, 0, 0], vec![1, 1, 1, 1]];
        PointSet::from_rows(PrimeModulus::new(2).expect("prime"), 4, &rows).expect("valid points")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{format, parse};
    use proptest::prelude::*;

    fn zp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn pts(p: u64, n: usize, rows: &[&[u32]]) -> PointSet {
        PointSet::from_rows(zp(p), n, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn lac_translation() {
        let f = lac::system();
        for (g, text) in f.functions().iter().zip(lac::polynomials()) {
            assert_eq!(g, &parse(text, 4, zp(2)).unwrap());
        }
        assert_eq!(format(&f.functions()[0], &MonomialOrder::GrLex), lac::polynomials()[0]);
        let reduced = boolean_to_poly(&lac::unreduced_m_rule(), 4).unwrap();
        assert_eq!(reduced, f.functions()[0]);
        let x = BooleanExpression::var(0);
        let nn = BooleanExpression::not(BooleanExpression::not(x.clone()));
        assert_eq!(lac::boolean_rules()[0].render(&lac::names()), "!Ge & (L | Le)");
        assert_eq!(boolean_to_poly(&nn, 1).unwrap(), boolean_to_poly(&x, 1).unwrap());
        assert!(boolean_to_poly(&x, 0).is_err());
    }

    #[test]
    fn lac_components() {
        let g = state_space(&lac::system(), 1 << 16).unwrap();
        assert_eq!(g.states().len(), 16);
        let comps = weak_components(&g);
        let want: Vec<PointSet> = (0..4u32)
            .map(|c| {
                let (x3, x4) = (c >> 1, c & 1);
                pts(2, 4, &[&[0, 0, x3, x4], &[0, 1, x3, x4], &[1, 0, x3, x4], &[1, 1, x3, x4]])
            })
            .collect();
        assert_eq!(comps, want);
        // x3 and x4 are fixed, so each component lives on one (x3, x4) slice
        for c in &comps {
            assert!(c.iter().all(|s| s.get(2) == c.points()[0].get(2) && s.get(3) == c.points()[0].get(3)));
        }
        assert_eq!(lac::system().apply(&[1, 1, 0, 0]).unwrap(), vec![1, 0, 0, 0]);
        let fixed: Vec<Vec<u32>> = g.fixed_points().iter().map(|s| s.as_slice().to_vec()).collect();
        let brute: Vec<Vec<u32>> = PointSet::full(zp(2), 4)
            .iter()
            .map(|s| s.as_slice().to_vec())
            .filter(|s| lac::system().apply(s).unwrap() == *s)
            .collect();
        assert_eq!(fixed, brute);
        assert!(g.to_dot().contains("\"1100\" -> \"1000\";"));
    }

    #[test]
    fn trivial_systems() {
        let id = FiniteDynamicalSystem::identity(zp(2), 2);
        let g = state_space(&id, 100).unwrap();
        assert_eq!(g.fixed_points().len(), 4);
        assert_eq!(weak_components(&g).len(), 4);
        let zero = FiniteDynamicalSystem::new(zp(3), 2, vec![Polynomial::zero(2, zp(3)); 2]).unwrap();
        assert_eq!(zero.apply(&[2, 1]).unwrap(), vec![0, 0]);
        assert_eq!(weak_components(&state_space(&zero, 100).unwrap()).len(), 1);
        assert!(matches!(state_space(&id, 3), Err(Error::BudgetExceeded(_))));
        assert!(matches!(id.apply(&[0]), Err(Error::DimensionMismatch { .. })));
    }

    fn toy_data() -> DataSet {
        DataSet::new(pts(3, 2, &[&[0, 0], &[1, 0], &[2, 1]]), vec![vec![0, 0, 1]]).unwrap()
    }

    #[test]
    fn toy_model_selection() {
        let d = toy_data();
        let sm1 = OrderIdealSet::from_rows(zp(3), 2, &[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
        let sm2 = OrderIdealSet::from_rows(zp(3), 2, &[vec![0, 0], vec![1, 0], vec![2, 0]]).unwrap();
        assert_eq!(model_select(&d, &sm1, 0).unwrap(), parse("x2", 2, zp(3)).unwrap());
        assert_eq!(model_select(&d, &sm2, 0).unwrap(), parse("2*x1^2 + x1", 2, zp(3)).unwrap());
        let zeros = DataSet::new(d.inputs().clone(), vec![vec![0; 3]]).unwrap();
        assert!(model_select(&zeros, &sm1, 0).unwrap().is_zero());
        let sm3 = OrderIdealSet::from_rows(zp(3), 2, &[vec![0, 0], vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(model_select(&d, &sm3, 0).unwrap_err(), Error::NotBasic);
        let e = enumerate_models(&d).unwrap();
        assert_eq!(e.counts, vec![2]);
    }

    #[test]
    fn c1_models_are_unique() {
        let c1 = pts(2, 4, &[&[0, 0, 0, 0], &[0, 1, 0, 0], &[1, 0, 0, 0], &[1, 1, 0, 0]]);
        let d = lac::system().sample(&c1).unwrap();
        let e = enumerate_models(&d).unwrap();
        assert_eq!(e.counts, vec![1; 4]);
        assert_eq!(e.total, 1);
    }

    #[test]
    fn dataset_file_reorders() {
        let file = DataSetFile {
            p: 3,
            n: 2,
            points: vec![vec![2, 1], vec![0, 0], vec![1, 0]],
            outputs: [("1".to_string(), vec![1, 0, 2])].into_iter().collect(),
        };
        let d = file.to_data().unwrap();
        assert_eq!(d.outputs(), &[vec![0, 2, 1]]);
        let back = DataSetFile::from_data(&d).to_data().unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn augmentation_trivial() {
        let st = pts(3, 2, &[&[0, 0], &[0, 1], &[1, 0]]);
        assert_eq!(
            min_augmentation(&st, 3, &FanBudget::default()).unwrap(),
            Augmentation::Found { k: 0, witness: PointSet::new(zp(3), 2, vec![]).unwrap() }
        );
        let toy = pts(3, 2, &[&[0, 0], &[1, 0], &[2, 1]]);
        assert_eq!(min_augmentation(&toy, 0, &FanBudget::default()).unwrap(), Augmentation::Exhausted { k_max: 0 });
    }

    #[test]
    fn combinations_in_lex_order() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    fn arb_expr(n: usize) -> impl Strategy<Value = BooleanExpression> {
        let leaf = (0..n).prop_map(BooleanExpression::Var);
        leaf.prop_recursive(5, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(BooleanExpression::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| BooleanExpression::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| BooleanExpression::or(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn translation_matches_truth_table(e in arb_expr(5)) {
            let f = boolean_to_poly(&e, 5).unwrap();
            prop_assert!(f.max_exponent() <= 1);
            for s in PointSet::full(zp(2), 5).iter() {
                let bits: Vec<bool> = s.iter().map(|&x| x == 1).collect();
                prop_assert_eq!(f.evaluate(s.as_slice()).unwrap() == 1, e.eval(&bits));
            }
        }

        #[test]
        fn selected_models_interpolate(outputs in prop::collection::vec(0u32..3, 3)) {
            let d = DataSet::new(pts(3, 2, &[&[0, 0], &[1, 0], &[2, 1]]), vec![outputs.clone()]).unwrap();
            let e = enumerate_models(&d).unwrap();
            for f in &e.models[0] {
                for (pt, &y) in d.inputs().iter().zip(&outputs) {
                    prop_assert_eq!(f.evaluate(pt.as_slice()).unwrap(), y);
                }
            }
        }
    }
}
