//! Seeded generators for polynomials, ideals and matrices.

use detsing_core::polyring::{Coeff, Monomial, Polynomial, VariableSet};
use rand::Rng;
use std::collections::HashMap;

pub use rand_chacha::ChaCha8Rng as TestRng;

pub fn seeded(seed: u64) -> TestRng {
    use rand::SeedableRng;
    TestRng::seed_from_u64(seed)
}

fn int(c: i64) -> Coeff {
    Coeff::from_integer(c.into())
}

fn random_monomial(rng: &mut TestRng, nvars: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(e)
}

/// A polynomial with up to `max_terms` terms of degree `min_degree..=max_degree`
/// and nonzero integer coefficients in `-5..=5`.
pub fn random_poly(
    rng: &mut TestRng,
    vars: &VariableSet,
    min_degree: u32,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let n = rng.gen_range(1..=max_terms);
    let terms = (0..n).map(|_| {
        let d = rng.gen_range(min_degree..=max_degree);
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-5..=5);
        }
        (random_monomial(rng, vars.len(), d), int(c))
    });
    Polynomial::from_terms(vars, terms)
}

/// Up to three generators of degree at most three.
pub fn random_ideal(rng: &mut TestRng, vars: &VariableSet) -> Vec<Polynomial> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| loop {
            let p = random_poly(rng, vars, 0, 3, 4);
            if !p.is_zero() && !p.is_constant() {
                break p;
            }
        })
        .collect()
}

/// A homogeneous zero-dimensional ideal (so supported at the origin) with three
/// generators of degree at most three in the three given variables: a triangular system
/// `(z^c, y^b + z r, x^a + y s + z u)` under a random invertible linear change
/// of coordinates.
pub fn random_origin_ideal(rng: &mut TestRng, vars: &VariableSet) -> Vec<Polynomial> {
    assert_eq!(vars.len(), 3);
    let v = |i| Polynomial::variable_at(vars, i);
    let (x, y, z) = (v(0), v(1), v(2));
    let small = |rng: &mut TestRng, deg: u32| -> Polynomial {
        if deg == 0 {
            return Polynomial::constant(vars, int(rng.gen_range(-3..=3)));
        }
        random_poly(rng, vars, deg, deg, 3)
    };
    let a = rng.gen_range(1..=3);
    let b = rng.gen_range(1..=3);
    let c = rng.gen_range(1..=3);
    let g1 = z.pow(c);
    let g2 = &y.pow(b) + &(&z * &small(rng, b - 1));
    let g3 = &(&x.pow(a) + &(&y * &small(rng, a - 1))) + &(&z * &small(rng, a - 1));
    let change = loop {
        let m: Vec<Vec<i64>> = (0..3)
            .map(|_| (0..3).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det != 0 {
            break m;
        }
    };
    let assignment: HashMap<String, Polynomial> = (0..3)
        .map(|i| {
            let image = (0..3).fold(Polynomial::zero(vars), |acc, j| {
                &acc + &v(j).scale(&int(change[i][j]))
            });
            (vars.name(i).to_string(), image)
        })
        .collect();
    [g1, g2, g3]
        .iter()
        .map(|g| g.substitute(&assignment).expect("same variables"))
        .collect()
}

/// A polynomial in the ideal: a random combination of the generators.
pub fn random_member(
    rng: &mut TestRng,
    gens: &[Polynomial],
    max_cofactor_degree: u32,
) -> Polynomial {
    let vars = gens[0].vars();
    gens.iter().fold(Polynomial::zero(vars), |acc, g| {
        let h = if rng.gen_bool(0.7) {
            random_poly(rng, vars, 0, max_cofactor_degree, 3)
        } else {
            Polynomial::zero(vars)
        };
        &acc + &(&h * g)
    })
}

/// Entries of degree at most `max_degree` in the given variables.
pub fn random_entries(
    rng: &mut TestRng,
    vars: &VariableSet,
    count: usize,
    max_degree: u32,
) -> Vec<Polynomial> {
    (0..count)
        .map(|_| random_poly(rng, vars, 0, max_degree, 3))
        .collect()
}

pub fn random_integer_vector(rng: &mut TestRng, len: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(lo..=hi)).collect()
}
