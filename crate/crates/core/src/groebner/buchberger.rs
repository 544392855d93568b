//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use num_traits::One;

use super::Limits;
use crate::polyring::{merge_terms, Coeff, Monomial, MonomialOrdering, Polynomial, VariableSet};
use crate::{Error, Result};

pub(crate) type Terms = Vec<(Monomial, Coeff)>;

/// A reduced Gröbner basis: monic elements, no term of one element divisible by
/// the leading monomial of another, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: VariableSet,
    ordering: MonomialOrdering,
    elements: Vec<Polynomial>,
    sorted: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn ordering(&self) -> MonomialOrdering {
        self.ordering
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Leading monomials under the basis ordering, in element order.
    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> + Clone {
        self.sorted.iter().map(|t| &t[0].0)
    }

    /// True iff the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0][0].0.is_one()
    }

    /// The remainder of `f` on division by the basis; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if *f.vars() != self.vars {
            return Err(crate::polyring::PolyError::VariableSetMismatch.into());
        }
        let refs: Vec<&Terms> = self.sorted.iter().collect();
        let rem = reduce(f.terms_sorted(self.ordering), &refs, self.ordering);
        Ok(Polynomial::from_sorted(&self.vars, rem, self.ordering))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks the defining properties of a reduced basis.
    pub fn is_reduced(&self) -> bool {
        self.sorted.iter().enumerate().all(|(i, g)| {
            g[0].1.is_one()
                && g.iter().all(|(m, _)| {
                    self.sorted
                        .iter()
                        .enumerate()
                        .all(|(j, h)| i == j || !h[0].0.divides(m))
                })
        })
    }
}

/// Fully reduces `p` (sorted under `ord`) by the monic polynomials in `basis`.
pub(crate) fn reduce(mut p: Terms, basis: &[&Terms], ord: MonomialOrdering) -> Terms {
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        let divisor = basis
            .iter()
            .find_map(|g| g[0].0.quotient_of(m).map(|q| (g, q)));
        match divisor {
            Some((g, q)) => {
                let factor = -c.clone();
                let shifted: Terms = g[1..].iter().map(|(n, d)| (n.mul(&q), d.clone())).collect();
                p = merge_terms(&p[start + 1..], &shifted, &factor, ord);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn make_monic(mut p: Terms) -> Terms {
    if let Some((_, lc)) = p.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in p.iter_mut() {
                *c *= &inv;
            }
        }
    }
    p
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine {
    ord: MonomialOrdering,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    /// Inserts a new monic element and updates pairs (Gebauer–Möller).
    fn update(&mut self, h: Terms) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let lm_h = self.lm(hi).clone();

        let mut candidates: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: lm_h.lcm(self.lm(g)),
            })
            .collect();
        let coprime = |e: &Engine, p: &Pair| lm_h.is_coprime(e.lm(p.i));

        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let redundant = !coprime(self, &p)
                && (candidates.iter().any(|q| q.lcm.divides(&p.lcm))
                    || kept.iter().any(|q| q.lcm.divides(&p.lcm)));
            if !redundant {
                kept.push(p);
            }
        }
        // Product criterion.
        kept.retain(|p| !coprime(self, p));

        // Old pairs made redundant by the new element.
        self.pairs.retain(|p| {
            let lh_i = lm_h.lcm(&self.polys[p.i][0].0);
            let lh_j = lm_h.lcm(&self.polys[p.j][0].0);
            !(lm_h.divides(&p.lcm) && lh_i != p.lcm && lh_j != p.lcm)
        });
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && lm_h.divides(&self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
    }

    /// Normal strategy: smallest lcm, ties by generator index.
    fn next_pair(&mut self) -> Option<Pair> {
        let ord = self.ord;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            ord.cmp(&pa.lcm, &pb.lcm)
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Terms {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let qf = f[0].0.quotient_of(&p.lcm).expect("lcm divisible");
        let qg = g[0].0.quotient_of(&p.lcm).expect("lcm divisible");
        let a: Terms = f[1..]
            .iter()
            .map(|(m, c)| (m.mul(&qf), c.clone()))
            .collect();
        let b: Terms = g[1..]
            .iter()
            .map(|(m, c)| (m.mul(&qg), c.clone()))
            .collect();
        merge_terms(&a, &b, &-Coeff::one(), self.ord)
    }

    fn active_refs(&self) -> Vec<&Terms> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub(crate) fn groebner_basis(
    vars: &VariableSet,
    gens: &[Polynomial],
    ord: MonomialOrdering,
    limits: Limits,
) -> Result<GroebnerBasis> {
    let mut input: Vec<Terms> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| make_monic(g.terms_sorted(ord)))
        .collect();
    input.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));

    let mut engine = Engine {
        ord,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let check_degree = |d: u32| match limits.max_degree {
        Some(cap) if d > cap => Err(Error::DegreeLimit { degree: d, cap }),
        _ => Ok(()),
    };

    for g in input {
        let r = reduce(g, &engine.active_refs(), ord);
        if r.is_empty() {
            continue;
        }
        check_degree(r[0].0.degree())?;
        if r[0].0.is_one() {
            return Ok(unit_basis(vars, ord));
        }
        engine.update(make_monic(r));
    }

    while let Some(pair) = engine.next_pair() {
        check_degree(pair.lcm.degree())?;
        let s = engine.spoly(&pair);
        if s.is_empty() {
            continue;
        }
        let r = reduce(s, &engine.active_refs(), ord);
        if r.is_empty() {
            continue;
        }
        if r[0].0.is_one() {
            return Ok(unit_basis(vars, ord));
        }
        engine.update(make_monic(r));
    }

    // Active elements have pairwise non-divisible leading monomials; interreduce tails.
    let mut minimal: Vec<Terms> = engine
        .polys
        .into_iter()
        .zip(engine.active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    minimal.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    let mut reduced: Vec<Terms> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, t)| t)
            .collect();
        let head = minimal[i][0].clone();
        let mut tail = reduce(minimal[i][1..].to_vec(), &others, ord);
        tail.insert(0, head);
        reduced.push(tail);
    }
    Ok(from_sorted_terms(vars, ord, reduced))
}

fn unit_basis(vars: &VariableSet, ord: MonomialOrdering) -> GroebnerBasis {
    from_sorted_terms(
        vars,
        ord,
        vec![vec![(Monomial::one(vars.len()), Coeff::one())]],
    )
}

fn from_sorted_terms(
    vars: &VariableSet,
    ord: MonomialOrdering,
    sorted: Vec<Terms>,
) -> GroebnerBasis {
    let elements = sorted
        .iter()
        .map(|t| Polynomial::from_sorted(vars, t.clone(), ord))
        .collect();
    GroebnerBasis {
        vars: vars.clone(),
        ordering: ord,
        elements,
        sorted,
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ordering == other.ordering
            && self.vars == other.vars
            && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}
