use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrdering, PolyError, VariableSet};

pub type Coeff = BigRational;

pub(crate) const STORAGE_ORDER: MonomialOrdering = MonomialOrdering::GrevLex;

/// A multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending grevlex order with no zero coefficients,
/// so structural equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VariableSet,
    terms: Vec<(Monomial, Coeff)>,
}

/// Merges two term lists sorted descending under `ord`, computing `a + factor * b`.
pub(crate) fn merge_terms(
    a: &[(Monomial, Coeff)],
    b: &[(Monomial, Coeff)],
    factor: &Coeff,
    ord: MonomialOrdering,
) -> Vec<(Monomial, Coeff)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ord.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), &b[j].1 * factor));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &b[j].1 * factor;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), c * factor)));
    out
}

pub(crate) fn sort_terms(terms: &mut [(Monomial, Coeff)], ord: MonomialOrdering) {
    terms.sort_by(|x, y| ord.cmp(&y.0, &x.0));
}

fn collect_terms(terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Vec<(Monomial, Coeff)> {
    let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
    for (m, c) in terms {
        *acc.entry(m).or_insert_with(Coeff::zero) += c;
    }
    let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    sort_terms(&mut out, STORAGE_ORDER);
    out
}

impl Polynomial {
    pub fn zero(vars: &VariableSet) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &VariableSet) -> Self {
        Self::constant(vars, Coeff::one())
    }

    pub fn constant(vars: &VariableSet, c: Coeff) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(vars.len()), c)]
        };
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_integer(vars: &VariableSet, c: i64) -> Self {
        Self::constant(vars, Coeff::from_integer(BigInt::from(c)))
    }

    pub fn variable(vars: &VariableSet, name: &str) -> Result<Self, PolyError> {
        let i = vars.require(name)?;
        Ok(Self::variable_at(vars, i))
    }

    pub fn variable_at(vars: &VariableSet, index: usize) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: vec![(Monomial::variable(vars.len(), index, 1), Coeff::one())],
        }
    }

    pub fn monomial(vars: &VariableSet, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.nvars(), vars.len());
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(
        vars: &VariableSet,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: collect_terms(terms),
        }
    }

    /// Terms already sorted under `ord`; re-sorted into storage order.
    pub(crate) fn from_sorted(
        vars: &VariableSet,
        mut terms: Vec<(Monomial, Coeff)>,
        ord: MonomialOrdering,
    ) -> Self {
        if ord != STORAGE_ORDER {
            sort_terms(&mut terms, STORAGE_ORDER);
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub(crate) fn terms_sorted(&self, ord: MonomialOrdering) -> Vec<(Monomial, Coeff)> {
        let mut t = self.terms.clone();
        if ord != STORAGE_ORDER {
            sort_terms(&mut t, ord);
        }
        t
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Coeff::zero(),
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        // grevlex sorts by degree first
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn leading_term(&self, ord: MonomialOrdering) -> Option<&(Monomial, Coeff)> {
        if ord == STORAGE_ORDER {
            self.terms.first()
        } else {
            self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
        }
    }

    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[index] > 0)
    }

    pub fn is_homogeneous_linear(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 1)
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableSetMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other, &Coeff::one()))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other, &-Coeff::one()))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Polynomial, factor: &Coeff) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: merge_terms(&self.terms, &other.terms, factor, STORAGE_ORDER),
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        // Monomial multiplication preserves the order, so each row is already sorted.
        let mut acc = Vec::new();
        for (m, c) in &short.terms {
            let row: Vec<_> = long.terms.iter().map(|(n, d)| (m.mul(n), c * d)).collect();
            acc = merge_terms(&acc, &row, &Coeff::one(), STORAGE_ORDER);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: acc,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self.vars.require(var)?;
        Ok(self.derivative_at(i))
    }

    pub fn derivative_at(&self, index: usize) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[index];
            (e > 0).then(|| {
                let mut ex = m.exponents().to_vec();
                ex[index] -= 1;
                (
                    Monomial::from_exponents(ex),
                    c * Coeff::from_integer(BigInt::from(e)),
                )
            })
        });
        Polynomial::from_terms(&self.vars, terms)
    }

    /// Simultaneous substitution. The result lives over the variable set shared by
    /// the substituted polynomials (or over `self`'s set when nothing is assigned);
    /// unassigned variables map to the same-named variable there.
    pub fn substitute(
        &self,
        assignment: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        let mut values = assignment.values();
        let target = match values.next() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        if values.any(|p| p.vars != target) {
            return Err(PolyError::VariableSetMismatch);
        }
        self.substitute_into(assignment, &target)
    }

    pub fn substitute_into(
        &self,
        assignment: &HashMap<String, Polynomial>,
        target: &VariableSet,
    ) -> Result<Polynomial, PolyError> {
        for name in assignment.keys() {
            self.vars.require(name)?;
        }
        let mut images = Vec::with_capacity(self.vars.len());
        for i in 0..self.vars.len() {
            let name = self.vars.name(i);
            let image = match assignment.get(name) {
                Some(p) if p.vars != *target => return Err(PolyError::VariableSetMismatch),
                Some(p) => Some(p.clone()),
                None if !self.terms.iter().any(|(m, _)| m.exponents()[i] > 0) => None,
                None => Some(Polynomial::variable(target, name)?),
            };
            images.push(image);
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images[i]
                    .as_ref()
                    .expect("image exists for occurring variable");
                let p = powers.entry((i, e)).or_insert_with(|| img.pow(e));
                t = t.mul_unchecked(p);
                if t.is_zero() {
                    break;
                }
            }
            acc = acc.add_unchecked(&t, &Coeff::one());
        }
        Ok(acc)
    }

    /// Moves the polynomial to `target`, sending variable `i` to `map[i]`.
    /// Returns `None` if a variable mapped to `None` actually occurs.
    pub(crate) fn remap(&self, target: &VariableSet, map: &[Option<usize>]) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                e[map[i]?] += x;
            }
            terms.push((Monomial::from_exponents(e), c.clone()));
        }
        Some(Polynomial::from_terms(target, terms))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        self.check_same(divisor)?;
        let Some((lm, lc)) = divisor.terms.first() else {
            return Err(PolyError::DivisionByZero);
        };
        let mut rest = self.terms.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.first() {
            let Some(q) = lm.quotient_of(m) else {
                return Ok(None);
            };
            let qc = c / lc;
            rest = merge_terms(
                &rest[1..],
                &divisor.terms[1..]
                    .iter()
                    .map(|(n, d)| (n.mul(&q), d.clone()))
                    .collect::<Vec<_>>(),
                &-qc.clone(),
                STORAGE_ORDER,
            );
            quotient.push((q, qc));
        }
        Ok(Some(Polynomial {
            vars: self.vars.clone(),
            terms: quotient,
        }))
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: MonomialOrdering) -> Polynomial {
        match self.leading_term(ord) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on mismatched variable sets; use [`Polynomial::try_add`] to check.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs)
            .expect("polynomials over different variable sets")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs)
            .expect("polynomials over different variable sets")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs)
            .expect("polynomials over different variable sets")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VariableSet, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(vars.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
