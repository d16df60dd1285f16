//! Sparse multivariate polynomials with exact rational coefficients.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable registries differ: {left:?} vs {right:?}")]
    RegistryMismatch { left: Vec<String>, right: Vec<String> },
    #[error("variable index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("variable index {0} fixed more than once")]
    DuplicateIndex(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` is not in the target registry")]
    MissingVariable(String),
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// Exponents of one monomial, one entry per registered variable.
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically in registry order (so `x^2 > x*y > y^2 > x`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn added(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// A polynomial over an ordered list of named variables.
///
/// Zero coefficients are never stored; the zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    /// The zero polynomial over `vars`.
    pub fn zero<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Self, PolyError> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Polynomial { vars, terms: BTreeMap::new() })
    }

    pub fn constant_like(&self, c: Rational) -> Polynomial {
        let mut p = self.zero_like();
        if !c.is_zero() {
            p.terms.insert(ExponentVector::zeros(self.nvars()), c);
        }
        p
    }

    pub fn zero_like(&self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one_like(&self) -> Polynomial {
        self.constant_like(Rational::one())
    }

    /// The polynomial `x_index` over this polynomial's registry.
    pub fn variable_like(&self, index: usize) -> Result<Polynomial, PolyError> {
        self.check_index(index)?;
        let mut e = vec![0; self.nvars()];
        e[index] = 1;
        let mut p = self.zero_like();
        p.terms.insert(ExponentVector(e), Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// like terms.
    pub fn from_terms<S, I>(vars: impl IntoIterator<Item = S>, terms: I) -> Result<Self, PolyError>
    where
        S: Into<String>,
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Polynomial::zero(vars)?;
        for (exps, coef) in terms {
            if exps.len() != p.nvars() {
                return Err(PolyError::LengthMismatch { expected: p.nvars(), found: exps.len() });
            }
            p.add_term(ExponentVector(exps), coef);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: ExponentVector, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coef);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no variable occurs (including the zero polynomial).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&x| x == 0))
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&ExponentVector(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Constant term; zero when absent.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars()])
    }

    /// Which registered variables actually occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars()];
        for e in self.terms.keys() {
            for (u, &x) in used.iter_mut().zip(&e.0) {
                *u |= x > 0;
            }
        }
        used
    }

    fn check_index(&self, index: usize) -> Result<(), PolyError> {
        if index >= self.nvars() {
            Err(PolyError::IndexOutOfRange { index, len: self.nvars() })
        } else {
            Ok(())
        }
    }

    fn check_registry(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.vars != other.vars {
            Err(PolyError::RegistryMismatch { left: self.vars.clone(), right: other.vars.clone() })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_registry(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_registry(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_registry(other)?;
        let mut acc: BTreeMap<ExponentVector, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let c = acc.entry(ea.added(eb)).or_insert_with(Rational::zero);
                *c += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial { vars: self.vars.clone(), terms: acc })
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return self.zero_like();
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses both operands over the union of their registries: this
    /// registry first, then names only `other` has, in its order.
    pub fn align(&self, other: &Polynomial) -> (Polynomial, Polynomial) {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        // Both registries are subsets of `vars`, so embedding cannot fail.
        let a = self.embed(&vars).expect("superset registry");
        let b = other.embed(&vars).expect("superset registry");
        (a, b)
    }

    /// Rewrites the polynomial over `vars`, which must contain every
    /// variable that occurs in it. Unused variables may be dropped.
    pub fn embed(&self, vars: &[String]) -> Result<Polynomial, PolyError> {
        let mut target = Polynomial::zero(vars.iter().cloned())?;
        let used = self.support();
        let mut map = Vec::with_capacity(self.nvars());
        for (name, &u) in self.vars.iter().zip(&used) {
            match vars.iter().position(|v| v == name) {
                Some(j) => map.push(Some(j)),
                None if !u => map.push(None),
                None => return Err(PolyError::MissingVariable(name.clone())),
            }
        }
        for (e, c) in &self.terms {
            let mut exps = vec![0; vars.len()];
            for (i, &x) in e.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] = x;
                }
            }
            target.add_term(ExponentVector(exps), c.clone());
        }
        Ok(target)
    }

    /// Same polynomial with the variables renamed positionally.
    pub fn with_var_names<S: Into<String>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Polynomial, PolyError> {
        let mut p = Polynomial::zero(names)?;
        if p.nvars() != self.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.nvars(), found: p.nvars() });
        }
        p.terms = self.terms.clone();
        Ok(p)
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial, PolyError> {
        self.check_index(index)?;
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let k = e.0[index];
            if k == 0 {
                continue;
            }
            let mut exps = e.0.clone();
            exps[index] = k - 1;
            out.add_term(ExponentVector(exps), c * Rational::from_integer(k.into()));
        }
        Ok(out)
    }

    /// Mixed partial derivative with `orders[i]` derivatives in `x_i`.
    pub fn derivative(&self, orders: &[u32]) -> Result<Polynomial, PolyError> {
        if orders.len() != self.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.nvars(), found: orders.len() });
        }
        let mut p = self.clone();
        for (i, &k) in orders.iter().enumerate() {
            for _ in 0..k {
                if p.is_zero() {
                    return Ok(p);
                }
                p = p.partial_derivative(i)?;
            }
        }
        Ok(p)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::LengthMismatch { expected: self.nvars(), found: point.len() });
        }
        let degrees = self.degrees_or_zero();
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .zip(&degrees)
            .map(|(x, &d)| power_table(x, d))
            .collect();
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Substitutes values for some variables and drops them from the
    /// registry: the margin of the polynomial at those values.
    pub fn margin(&self, fixed: &[(usize, Rational)]) -> Result<Polynomial, PolyError> {
        let kept = self.specialize(fixed)?;
        let keep: Vec<usize> = (0..self.nvars())
            .filter(|i| !fixed.iter().any(|(j, _)| j == i))
            .collect();
        let mut out = Polynomial::zero(keep.iter().map(|&i| self.vars[i].clone()))?;
        for (e, c) in kept.terms {
            out.add_term(ExponentVector(keep.iter().map(|&i| e.0[i]).collect()), c);
        }
        Ok(out)
    }

    /// Substitutes values for some variables, keeping the full registry.
    pub fn specialize(&self, fixed: &[(usize, Rational)]) -> Result<Polynomial, PolyError> {
        let mut value_of: Vec<Option<&Rational>> = vec![None; self.nvars()];
        for (i, v) in fixed {
            self.check_index(*i)?;
            if value_of[*i].is_some() {
                return Err(PolyError::DuplicateIndex(*i));
            }
            value_of[*i] = Some(v);
        }
        let degrees = self.degrees_or_zero();
        let powers: Vec<Option<Vec<Rational>>> = value_of
            .iter()
            .zip(&degrees)
            .map(|(v, &d)| v.map(|x| power_table(x, d)))
            .collect();
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            let mut exps = e.0.clone();
            for (i, table) in powers.iter().enumerate() {
                if let Some(table) = table {
                    coef *= &table[exps[i] as usize];
                    exps[i] = 0;
                }
            }
            out.add_term(ExponentVector(exps), coef);
        }
        Ok(out)
    }

    /// Per-variable maximum exponents.
    pub fn degree_vector(&self) -> Result<Vec<u32>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.degrees_or_zero())
    }

    fn degrees_or_zero(&self) -> Vec<u32> {
        let mut d = vec![0; self.nvars()];
        for e in self.terms.keys() {
            for (m, &x) in d.iter_mut().zip(&e.0) {
                *m = (*m).max(x);
            }
        }
        d
    }

    pub fn total_degree(&self) -> Result<u64, PolyError> {
        self.leading_term().map(|(e, _)| e.total_degree())
    }

    /// Greatest term under graded-lex order.
    pub fn leading_term(&self) -> Result<(&ExponentVector, &Rational), PolyError> {
        self.terms.iter().next_back().ok_or(PolyError::ZeroPolynomial)
    }

    /// Splits off the leading coefficient: `self = lc · monic`.
    pub fn monic(&self) -> Result<(Rational, Polynomial), PolyError> {
        let lc = self.leading_term()?.1.clone();
        let inv = lc.recip();
        Ok((lc, self.scale(&inv)))
    }

    /// Substitutes `x_i ↦ Σ_j t[i][j]·x_j + b[i]` for every variable.
    ///
    /// The result uses the same variable names, now standing for the new
    /// coordinates.
    pub fn apply_affine_transform(
        &self,
        t: &[Vec<Rational>],
        b: &[Rational],
    ) -> Result<Polynomial, PolyError> {
        let n = self.nvars();
        if t.len() != n {
            return Err(PolyError::LengthMismatch { expected: n, found: t.len() });
        }
        if let Some(row) = t.iter().find(|row| row.len() != n) {
            return Err(PolyError::LengthMismatch { expected: n, found: row.len() });
        }
        if b.len() != n {
            return Err(PolyError::LengthMismatch { expected: n, found: b.len() });
        }
        let images: Vec<Polynomial> = (0..n)
            .map(|i| {
                let mut img = self.constant_like(b[i].clone());
                for (j, coef) in t[i].iter().enumerate() {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    img.add_term(ExponentVector(e), coef.clone());
                }
                img
            })
            .collect();
        let degrees = self.degrees_or_zero();
        let powers: Vec<Vec<Polynomial>> = images
            .iter()
            .zip(&degrees)
            .map(|(img, &d)| {
                let mut table = Vec::with_capacity(d as usize + 1);
                table.push(self.one_like());
                for k in 0..d as usize {
                    let next = &table[k] * img;
                    table.push(next);
                }
                table
            })
            .collect();
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut term = self.constant_like(c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

fn power_table(x: &Rational, max: u32) -> Vec<Rational> {
    let mut table = Vec::with_capacity(max as usize + 1);
    table.push(Rational::one());
    for k in 0..max as usize {
        let next = &table[k] * x;
        table.push(next);
    }
    table
}

// Operator forms panic on registry mismatch; use the `checked_*` methods
// when the registries are not known to agree.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// Canonical text: graded-lex descending, explicit `*` and `^`, rational
/// coefficients as `p/q`. The output parses back through [`crate::expr`].
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let is_const = e.0.iter().all(|&x| x == 0);
            if is_const {
                write!(f, "{abs}")?;
                continue;
            }
            let mut first = true;
            if !abs.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (name, &x) in self.vars.iter().zip(&e.0) {
                if x == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(name)?;
                if x > 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}
