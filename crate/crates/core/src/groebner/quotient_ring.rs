//! Combinatorics of the leading-term ideal: independent variable sets and
//! standard monomials.

use std::collections::{HashSet, VecDeque};

use crate::polyring::Monomial;

/// Largest set of variables containing the support of no leading monomial.
pub(crate) fn max_independent_set<'a>(
    nvars: usize,
    leading: impl Iterator<Item = &'a Monomial>,
) -> usize {
    assert!(nvars <= 64, "dimension supports at most 64 variables");
    let supports: Vec<u64> = leading.map(Monomial::support_mask).collect();
    let mut best = 0;
    search(0, nvars, 0, 0, &supports, &mut best);
    best
}

fn search(next: usize, nvars: usize, chosen: u64, size: usize, supports: &[u64], best: &mut usize) {
    if size + (nvars - next) <= *best {
        return;
    }
    if next == nvars {
        *best = size;
        return;
    }
    let with = chosen | (1 << next);
    if supports.iter().all(|&s| s & !with != 0) {
        search(next + 1, nvars, with, size + 1, supports, best);
    }
    search(next + 1, nvars, chosen, size, supports, best);
}

/// Monomials not divisible by any leading monomial, or `None` when there are
/// infinitely many (some variable has no pure power among the leading terms).
pub(crate) fn standard_monomials<'a>(
    nvars: usize,
    leading: impl Iterator<Item = &'a Monomial> + Clone,
) -> Option<Vec<Monomial>> {
    for v in 0..nvars {
        let has_pure_power = leading.clone().any(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| (i == v) == (e > 0))
        });
        if !has_pure_power {
            return None;
        }
    }
    let lts: Vec<&Monomial> = leading.collect();
    let in_lt = |m: &Monomial| lts.iter().any(|l| l.divides(m));
    let one = Monomial::one(nvars);
    if in_lt(&one) {
        return Some(Vec::new());
    }
    // The standard monomials form an order ideal; walk it upward from 1.
    let mut seen: HashSet<Monomial> = HashSet::from([one.clone()]);
    let mut queue = VecDeque::from([one]);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        for v in 0..nvars {
            let next = m.mul(&Monomial::variable(nvars, v, 1));
            if !seen.contains(&next) && !in_lt(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        out.push(m);
    }
    Some(out)
}
