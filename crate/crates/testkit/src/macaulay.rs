//! Truncated Macaulay matrices: ideal membership and quotient dimension by plain
//! linear algebra, with no Gröbner machinery involved.

use std::collections::HashMap;

use detsing_core::polyring::{Coeff, Monomial, Polynomial};
use num_traits::Zero;

/// All exponent vectors in `nvars` variables of total degree at most `max_degree`,
/// ordered by degree.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut current = vec![0u32; nvars];
        exact_degree(nvars, 0, d, &mut current, &mut out);
    }
    out
}

fn exact_degree(nvars: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if nvars == 0 {
        if left == 0 {
            out.push(Monomial::from_exponents(Vec::new()));
        }
        return;
    }
    if pos == nvars - 1 {
        cur[pos] = left;
        out.push(Monomial::from_exponents(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        exact_degree(nvars, pos + 1, left - e, cur, out);
    }
    cur[pos] = 0;
}

/// Row-echelon span of `{m * g : deg(m * g) <= degree}`.
pub struct MacaulaySpan {
    columns: HashMap<Monomial, usize>,
    monomials: Vec<Monomial>,
    /// Pivot column -> reduced row (dense), pivot entry normalized to 1.
    rows: Vec<(usize, Vec<Coeff>)>,
}

impl MacaulaySpan {
    pub fn new(gens: &[Polynomial], degree: u32) -> Self {
        let nvars = gens.first().map_or(0, |g| g.vars().len());
        let monomials = monomials_up_to(nvars, degree);
        let columns: HashMap<Monomial, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut span = MacaulaySpan {
            columns,
            monomials,
            rows: Vec::new(),
        };
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let dg = g.total_degree().unwrap_or(0);
            if dg > degree {
                continue;
            }
            for m in monomials_up_to(nvars, degree - dg) {
                let v = span.dense(&g.mul_term(&m, &Coeff::from_integer(1.into())));
                span.insert(v.expect("within truncation"));
            }
        }
        span
    }

    fn dense(&self, p: &Polynomial) -> Option<Vec<Coeff>> {
        let mut v = vec![Coeff::zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            v[*self.columns.get(m)?] = c.clone();
        }
        Some(v)
    }

    fn reduce(&self, mut v: Vec<Coeff>) -> Vec<Coeff> {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Coeff>) {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // Keep rows fully reduced against the new pivot.
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        self.rows.push((pivot, v));
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn corank(&self) -> usize {
        self.monomials.len() - self.rows.len()
    }

    /// `None` if `f` has terms beyond the truncation degree.
    pub fn contains(&self, f: &Polynomial) -> Option<bool> {
        let v = self.dense(f)?;
        Some(self.reduce(v).iter().all(Zero::is_zero))
    }

    fn contains_monomial(&self, m: &Monomial) -> bool {
        let mut v = vec![Coeff::zero(); self.monomials.len()];
        v[self.columns[m]] = Coeff::from_integer(1.into());
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Smallest `s` such that every monomial of degree `s..=degree` lies in the span.
    pub fn saturated_from(&self, degree: u32) -> Option<u32> {
        let mut s = None;
        for d in (0..=degree).rev() {
            let all_in = self
                .monomials
                .iter()
                .filter(|m| m.degree() == d)
                .all(|m| self.contains_monomial(m));
            if !all_in {
                break;
            }
            s = Some(d);
        }
        s
    }
}

/// Colength of an ideal supported at the origin, certified by a truncation degree
/// `D` at which all monomials of degrees `s..=D` are in the span and
/// `D >= s + max generator degree - 1`. Returns `(colength, D)`.
pub fn certified_corank(gens: &[Polynomial], max_truncation: u32) -> Option<(usize, u32)> {
    let maxdeg = gens.iter().filter_map(Polynomial::total_degree).max()?;
    for d in maxdeg..=max_truncation {
        let span = MacaulaySpan::new(gens, d);
        if let Some(s) = span.saturated_from(d) {
            if d + 1 >= s + maxdeg {
                return Some((span.corank(), d));
            }
        }
    }
    None
}

/// Membership by truncated linear algebra. The truncation starts at
/// `max(deg f, max generator degree)` and is raised until the answer has been
/// unchanged over `stable_steps` consecutive increases (or a member is found,
/// which is certain). Returns the answer and the final truncation degree.
pub fn stable_membership(
    gens: &[Polynomial],
    f: &Polynomial,
    stable_steps: u32,
    max_truncation: u32,
) -> (bool, u32) {
    if f.is_zero() {
        return (true, 0);
    }
    let start = gens
        .iter()
        .filter_map(Polynomial::total_degree)
        .chain(f.total_degree())
        .max()
        .unwrap_or(0);
    let mut unchanged = 0;
    let mut d = start;
    loop {
        let span = MacaulaySpan::new(gens, d);
        if span.contains(f) == Some(true) {
            return (true, d);
        }
        unchanged += 1;
        if unchanged > stable_steps || d >= max_truncation {
            return (false, d);
        }
        d += 1;
    }
}
