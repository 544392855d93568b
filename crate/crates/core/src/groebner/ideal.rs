use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::buchberger::{groebner_basis, GroebnerBasis};
use super::Limits;
use crate::polyring::{Monomial, MonomialOrdering, PolyError, Polynomial, VariableSet};
use crate::{Error, Result};

type BasisCache = Mutex<HashMap<MonomialOrdering, Arc<GroebnerBasis>>>;

/// An ideal given by generators, with reduced bases cached per ordering.
///
/// Clones share the cache; the cache is write-once per ordering.
#[derive(Clone)]
pub struct Ideal {
    vars: VariableSet,
    gens: Vec<Polynomial>,
    cache: Arc<BasisCache>,
}

impl Ideal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(vars: &VariableSet, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            if *g.vars() != *vars {
                return Err(PolyError::VariableSetMismatch.into());
            }
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal {
            vars: vars.clone(),
            gens: out,
            cache: Arc::default(),
        })
    }

    pub fn zero(vars: &VariableSet) -> Self {
        Ideal {
            vars: vars.clone(),
            gens: Vec::new(),
            cache: Arc::default(),
        }
    }

    pub fn unit(vars: &VariableSet) -> Self {
        Ideal {
            vars: vars.clone(),
            gens: vec![Polynomial::one(vars)],
            cache: Arc::default(),
        }
    }

    /// The ideal generated by all variables.
    pub fn maximal(vars: &VariableSet) -> Self {
        let gens = (0..vars.len())
            .map(|i| Polynomial::variable_at(vars, i))
            .collect();
        Ideal {
            vars: vars.clone(),
            gens,
            cache: Arc::default(),
        }
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner_basis(&self, ord: MonomialOrdering) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(&ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner_basis(
            &self.vars,
            &self.gens,
            ord,
            Limits::current(),
        )?);
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(cache.entry(ord).or_insert(gb).clone())
    }

    /// The reduced basis under the working order (grevlex unless changed
    /// through [`Limits`]).
    pub fn reduced_basis(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_basis(Limits::current().ordering)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.reduced_basis()?.contains(f)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.reduced_basis()?.normal_form(f)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.reduced_basis()?.is_unit())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        let gb = self.reduced_basis()?;
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals, decided by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        Ok(*self.reduced_basis()? == *other.reduced_basis()?)
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableSetMismatch.into())
        }
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ideal::new(&self.vars, self.gens.iter().cloned().chain(extra))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        self.with_generators(other.gens.iter().cloned())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a * b));
        Ideal::new(&self.vars, gens)
    }

    /// Generators of the intersection with the subring that omits the named variables.
    /// The result stays over the same variable set.
    pub fn eliminate(&self, drop: &[&str]) -> Result<Ideal> {
        let idx = drop
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.eliminate_indices(&idx)
    }

    pub(crate) fn eliminate_indices(&self, drop: &[usize]) -> Result<Ideal> {
        let n = self.vars.len();
        if drop.len() >= n {
            return Err(Error::Invalid("cannot eliminate every variable".into()));
        }
        if drop.is_empty() {
            return Ok(self.clone());
        }
        // Dropped variables first, so a block order eliminates them.
        let order: Vec<usize> = drop
            .iter()
            .copied()
            .chain((0..n).filter(|i| !drop.contains(i)))
            .collect();
        let permuted = self.vars.permuted(&order);
        let mut forward = vec![None; n];
        for (new, &old) in order.iter().enumerate() {
            forward[old] = Some(new);
        }
        let gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| g.remap(&permuted, &forward).expect("total map"))
            .collect();
        let gb = groebner_basis(
            &permuted,
            &gens,
            MonomialOrdering::BlockElimination(drop.len()),
            Limits::current(),
        )?;
        let back: Vec<Option<usize>> = order.iter().map(|&old| Some(old)).collect();
        let kept = gb
            .elements()
            .iter()
            .filter(|g| (0..drop.len()).all(|i| !g.involves(i)))
            .map(|g| g.remap(&self.vars, &back).expect("total map"));
        Ideal::new(&self.vars, kept)
    }

    /// Adds an auxiliary variable `t` (last position) and returns the lifted ideal.
    fn lift_with_tag(&self) -> (VariableSet, Vec<Option<usize>>) {
        let ext = self.vars.with_auxiliary("t");
        let map = (0..self.vars.len()).map(Some).collect();
        (ext, map)
    }

    fn lower_from_tag(ideal: &Ideal, target: &VariableSet) -> Ideal {
        let tag = target.len();
        let map: Vec<Option<usize>> = (0..ideal.vars.len())
            .map(|i| (i != tag).then_some(i))
            .collect();
        let gens = ideal.gens.iter().filter_map(|g| g.remap(target, &map));
        Ideal::new(target, gens).expect("same variable set")
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.vars));
        }
        let (ext, map) = self.lift_with_tag();
        let t = Polynomial::variable_at(&ext, self.vars.len());
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let lift = |g: &Polynomial| g.remap(&ext, &map).expect("total map");
        let gens = self
            .gens
            .iter()
            .map(|g| &t * &lift(g))
            .chain(other.gens.iter().map(|g| &one_minus_t * &lift(g)));
        let elim = Ideal::new(&ext, gens)?.eliminate_indices(&[self.vars.len()])?;
        Ok(Self::lower_from_tag(&elim, &self.vars))
    }

    /// `self : (g)`, computed from `self ∩ (g)`.
    pub fn quotient(&self, g: &Polynomial) -> Result<Ideal> {
        if *g.vars() != self.vars {
            return Err(PolyError::VariableSetMismatch.into());
        }
        if g.is_zero() {
            return Err(PolyError::DivisionByZero.into());
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.vars, [g.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(meet.gens.len());
        for h in &meet.gens {
            let q = h.div_exact(g)?.ok_or_else(|| {
                Error::Invalid("intersection generator not divisible by the divisor".into())
            })?;
            gens.push(q);
        }
        Ideal::new(&self.vars, gens)
    }

    /// `self : g^∞` by iterated quotients, stopping when the reduced basis repeats.
    pub fn saturate_by(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero.into());
        }
        let cap = Limits::current().max_saturation_steps;
        let mut current = self.clone();
        for _ in 0..cap {
            if current.is_unit()? {
                return Ok(Ideal::unit(&self.vars));
            }
            let next = current.quotient(g)?;
            if next.same_ideal(&current)? {
                return Ok(current);
            }
            current = next;
        }
        Err(Error::SaturationLimit(cap))
    }

    /// `self : other^∞`, the intersection of the saturations by each generator of `other`.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        if other.is_zero_ideal() {
            return Err(Error::Invalid("cannot saturate by the zero ideal".into()));
        }
        if other.gens.iter().any(|g| g.is_constant()) || self.is_unit()? {
            return Ok(self.clone());
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let s = self.saturate_by(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.expect("non-empty generator list"))
    }

    /// `self : g^∞` in one step via `(self + (1 - t g)) ∩ k[x]`.
    pub fn saturate_by_rabinowitsch(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero.into());
        }
        let (ext, map) = self.lift_with_tag();
        let t = Polynomial::variable_at(&ext, self.vars.len());
        let lifted_g = g.remap(&ext, &map).expect("total map");
        let gens = self
            .gens
            .iter()
            .map(|h| h.remap(&ext, &map).expect("total map"))
            .chain([&Polynomial::one(&ext) - &(&t * &lifted_g)]);
        let elim = Ideal::new(&ext, gens)?.eliminate_indices(&[self.vars.len()])?;
        Ok(Self::lower_from_tag(&elim, &self.vars))
    }

    /// True iff `g` lies in the radical: `1 ∈ self + (1 - t g)`.
    pub fn radical_contains(&self, g: &Polynomial) -> Result<bool> {
        let (ext, map) = self.lift_with_tag();
        let t = Polynomial::variable_at(&ext, self.vars.len());
        let lifted_g = g.remap(&ext, &map).expect("total map");
        let gens = self
            .gens
            .iter()
            .map(|h| h.remap(&ext, &map).expect("total map"))
            .chain([&Polynomial::one(&ext) - &(&t * &lifted_g)]);
        Ideal::new(&ext, gens)?.is_unit()
    }

    /// Krull dimension of the quotient ring; −1 for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        let gb = self.reduced_basis()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        Ok(
            super::quotient_ring::max_independent_set(self.vars.len(), gb.leading_monomials())
                as i64,
        )
    }

    /// True iff the variety lies inside the origin (every variable is in the radical).
    pub fn support_is_origin_only(&self) -> Result<bool> {
        if self.is_unit()? {
            return Ok(true);
        }
        for i in 0..self.vars.len() {
            if !self.radical_contains(&Polynomial::variable_at(&self.vars, i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Monomials outside the leading-term ideal under the working order. Requires a zero-dimensional ideal.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let gb = self.reduced_basis()?;
        super::quotient_ring::standard_monomials(self.vars.len(), gb.leading_monomials())
            .ok_or(Error::NotZeroDimensional)
    }

    /// Vector-space dimension of the quotient ring, which is the local colength at
    /// the origin because the support is required to be the origin alone.
    pub fn colength(&self) -> Result<u64> {
        if !self.support_is_origin_only()? {
            return Err(Error::SupportNotAtOrigin);
        }
        Ok(self.standard_monomials()?.len() as u64)
    }

    /// Colength of the component at the origin of a zero-dimensional ideal whose
    /// support may contain other points: `self : (self : m^∞)^∞`. Zero if the
    /// origin is not on the variety.
    pub fn local_colength(&self) -> Result<u64> {
        if self.is_unit()? || self.gens.iter().any(|g| !g.constant_term().is_zero()) {
            return Ok(0);
        }
        if self.support_is_origin_only()? {
            return self.colength();
        }
        if self.dimension()? != 0 {
            return Err(Error::NotZeroDimensional);
        }
        let away = self.saturate(&Ideal::maximal(&self.vars))?;
        let local = self.saturate(&away)?;
        local.colength()
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
