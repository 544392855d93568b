use detsing_core::groebner::{buchberger, normal_form, Ideal, Limits};
use detsing_core::polyring::{parse_polynomial, MonomialOrdering, Polynomial, VariableSet};
use detsing_core::Error;
use detsing_testkit::macaulay::{certified_corank, stable_membership, MacaulaySpan};
use detsing_testkit::random::{
    random_ideal, random_member, random_origin_ideal, random_poly, seeded,
};
use rand::Rng;

fn vars(names: &[&str]) -> VariableSet {
    VariableSet::ambient(names.iter().copied()).unwrap()
}

fn ideal(v: &VariableSet, gens: &[&str]) -> Ideal {
    Ideal::new(v, gens.iter().map(|g| parse_polynomial(g, v).unwrap())).unwrap()
}

fn p(v: &VariableSet, text: &str) -> Polynomial {
    parse_polynomial(text, v).unwrap()
}

fn basis_strings(i: &Ideal, ord: MonomialOrdering) -> Vec<String> {
    buchberger(i, ord)
        .unwrap()
        .elements()
        .iter()
        .map(|g| g.to_string())
        .collect()
}

#[test]
fn circle_and_line_basis() {
    let v = vars(&["x", "y"]);
    let i = ideal(&v, &["x^2 + y^2 - 1", "x - y"]);
    let gb = buchberger(&i, MonomialOrdering::GrevLex).unwrap();
    assert_eq!(
        basis_strings(&i, MonomialOrdering::GrevLex),
        ["x - y", "y^2 - 1/2"]
    );
    assert!(gb.is_reduced());

    // Two-way membership, checked by truncated linear algebra.
    for g in gb.elements() {
        assert_eq!(stable_membership(i.generators(), g, 2, 8).0, true, "{g}");
    }
    for g in i.generators() {
        assert_eq!(stable_membership(gb.elements(), g, 2, 8).0, true, "{g}");
    }
}

#[test]
fn s_pairs_of_a_basis_reduce_to_zero() {
    let v = vars(&["x", "y", "z"]);
    let i = ideal(&v, &["x^2*y - z^3", "x*y^2 + y*z - 1", "x*z - y^2"]);
    for ord in [MonomialOrdering::GrevLex, MonomialOrdering::Lex] {
        let gb = buchberger(&i, ord).unwrap();
        let el = gb.elements();
        for a in 0..el.len() {
            for b in a + 1..el.len() {
                let (ma, ca) = el[a].leading_term(ord).unwrap().clone();
                let (mb, cb) = el[b].leading_term(ord).unwrap().clone();
                let l = ma.lcm(&mb);
                let s = &el[a].mul_term(&ma.quotient_of(&l).unwrap(), &cb)
                    - &el[b].mul_term(&mb.quotient_of(&l).unwrap(), &ca);
                assert!(normal_form(&s, &gb).unwrap().is_zero());
            }
        }
        for g in i.generators() {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }
}

#[test]
fn trivial_bases() {
    let v = vars(&["x", "y"]);
    assert_eq!(
        basis_strings(&ideal(&v, &["x", "y"]), MonomialOrdering::GrevLex),
        ["y", "x"]
    );
    assert_eq!(
        basis_strings(&ideal(&v, &["x", "x + 1"]), MonomialOrdering::GrevLex),
        ["1"]
    );
    assert!(ideal(&v, &["x", "x + 1"]).is_unit().unwrap());
}

#[test]
fn normal_form_examples() {
    let v = vars(&["x", "y"]);
    let i = ideal(&v, &["x^2 - y"]);
    let gb = i.reduced_basis().unwrap();
    assert_eq!(normal_form(&p(&v, "x^2*y"), &gb).unwrap(), p(&v, "y^2"));
    for g in gb.elements() {
        assert!(normal_form(g, &gb).unwrap().is_zero());
    }
    let m = ideal(&v, &["x", "y"]).reduced_basis().unwrap();
    assert_eq!(normal_form(&p(&v, "1"), &m).unwrap(), p(&v, "1"));

    let other = vars(&["a"]);
    assert!(normal_form(&p(&other, "a"), &gb).is_err());
}

#[test]
fn sums_and_products() {
    let v = vars(&["x", "y"]);
    let x = ideal(&v, &["x"]);
    let y = ideal(&v, &["y"]);
    assert!(x
        .sum(&y)
        .unwrap()
        .same_ideal(&ideal(&v, &["x", "y"]))
        .unwrap());
    assert!(x
        .product(&y)
        .unwrap()
        .same_ideal(&ideal(&v, &["x*y"]))
        .unwrap());
    let i = ideal(&v, &["x^2 - y", "x*y"]);
    assert!(i.sum(&i).unwrap().same_ideal(&i).unwrap());
    let w = vars(&["z"]);
    assert!(x.sum(&ideal(&w, &["z"])).is_err());
}

#[test]
fn elimination_examples() {
    let v = vars(&["x", "y"]);
    assert!(ideal(&v, &["x - y^2"])
        .eliminate(&["x"])
        .unwrap()
        .is_zero_ideal());

    let e = ideal(&v, &["x - y^2", "x"]).eliminate(&["x"]).unwrap();
    let expected = ideal(&v, &["y^2"]);
    assert!(e.contains_ideal(&expected).unwrap() && expected.contains_ideal(&e).unwrap());

    // Rabinowitsch pattern: x invertible, y = x. Projecting away t leaves the line y = x.
    let w = vars(&["x", "y", "t"]);
    let e = ideal(&w, &["x*t - 1", "y - x"]).eliminate(&["t"]).unwrap();
    assert!(e.same_ideal(&ideal(&w, &["x - y"])).unwrap());
    for g in e.generators() {
        assert!(!g.involves(2));
    }

    assert!(ideal(&v, &["x"]).eliminate(&["x", "y"]).is_err());
    assert!(ideal(&v, &["x"]).eliminate(&["q"]).is_err());
}

#[test]
fn quotient_and_saturation_examples() {
    let v = vars(&["x", "y", "z"]);
    let x = p(&v, "x");
    let s = ideal(&v, &["x*y", "x*z"])
        .saturate(&ideal(&v, &["x"]))
        .unwrap();
    assert!(s.same_ideal(&ideal(&v, &["y", "z"])).unwrap());
    let q = ideal(&v, &["x^2"]).quotient(&x).unwrap();
    assert!(q.same_ideal(&ideal(&v, &["x"])).unwrap());
    let i = ideal(&v, &["x^2*y - z", "y^3"]);
    assert!(i
        .saturate(&Ideal::unit(&v))
        .unwrap()
        .same_ideal(&i)
        .unwrap());
    assert!(matches!(
        i.quotient(&Polynomial::zero(&v)),
        Err(Error::Poly(
            detsing_core::polyring::PolyError::DivisionByZero
        ))
    ));
}

#[test]
fn saturation_cap_is_reported() {
    let v = vars(&["x", "y"]);
    let i = ideal(&v, &["x^5*y"]);
    let limits = Limits {
        max_saturation_steps: 2,
        ..Limits::default()
    };
    let err = limits.scope(|| i.saturate_by(&p(&v, "x"))).unwrap_err();
    assert_eq!(err, Error::SaturationLimit(2));
    assert_eq!(err.kind(), detsing_core::ErrorKind::Limit);
}

#[test]
fn degree_cap_is_reported() {
    let v = vars(&["x", "y", "z"]);
    let i = ideal(&v, &["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"]);
    let limits = Limits {
        max_degree: Some(2),
        ..Limits::default()
    };
    let err = limits.scope(|| i.reduced_basis()).unwrap_err();
    assert!(matches!(err, Error::DegreeLimit { cap: 2, .. }));
    // The failure is not cached.
    assert!(i.reduced_basis().is_ok());
}

#[test]
fn dimension_examples() {
    let v = vars(&["a", "b", "c", "d", "e", "f"]);
    let minors = ideal(&v, &["a*e - b*d", "a*f - c*d", "b*f - c*e"]);
    assert_eq!(minors.dimension().unwrap(), 4);

    let w = vars(&["x1", "x2", "x3", "x4", "x5", "y"]);
    assert_eq!(
        ideal(&w, &["x1", "x2", "x3", "x4", "x5", "y^2"])
            .dimension()
            .unwrap(),
        0
    );
    assert_eq!(Ideal::unit(&w).dimension().unwrap(), -1);
    assert_eq!(Ideal::zero(&w).dimension().unwrap(), 6);
}

#[test]
fn support_examples() {
    let w = vars(&["x1", "x2", "x3", "x4", "x5", "y"]);
    assert!(ideal(&w, &["x1", "x2", "x3", "x4", "x5", "y^4"])
        .support_is_origin_only()
        .unwrap());
    let v = vars(&["x", "y"]);
    assert!(!ideal(&v, &["x^2 - y^2"]).support_is_origin_only().unwrap());
    let i = ideal(&v, &["x*y", "x - y"]);
    assert!(i.support_is_origin_only().unwrap());
    assert!(i.contains(&p(&v, "y^2")).unwrap());
    // A single point away from the origin.
    assert!(!ideal(&v, &["x - 1", "y"]).support_is_origin_only().unwrap());
}

#[test]
fn colength_examples() {
    let w = vars(&["x1", "x2", "x3", "x4", "x5", "y"]);
    assert_eq!(
        ideal(&w, &["x1", "x2", "x3", "x4", "x5", "y^4"])
            .colength()
            .unwrap(),
        4
    );
    let v = vars(&["x", "y"]);
    assert_eq!(ideal(&v, &["x", "y"]).colength().unwrap(), 1);

    let staircase = ideal(&v, &["x^2", "x*y", "y^3"]);
    assert_eq!(staircase.colength().unwrap(), 4);
    let span = MacaulaySpan::new(staircase.generators(), 4);
    assert_eq!(span.corank(), 4);
    assert_eq!(certified_corank(staircase.generators(), 8).unwrap().0, 4);

    assert_eq!(
        ideal(&v, &["x^2 - y^2"]).colength().unwrap_err(),
        Error::SupportNotAtOrigin
    );
    assert_eq!(
        ideal(&v, &["x^2 - 1", "y"]).colength().unwrap_err(),
        Error::SupportNotAtOrigin
    );
}

#[test]
fn local_colength_isolates_the_origin() {
    let v = vars(&["x", "y"]);
    // y^4 + y = y (y^3 + 1): a reduced point at the origin plus three others.
    assert_eq!(ideal(&v, &["x", "y^4 + y"]).local_colength().unwrap(), 1);
    assert_eq!(ideal(&v, &["x", "y^3 - y^5"]).local_colength().unwrap(), 3);
    assert_eq!(ideal(&v, &["x - 1", "y"]).local_colength().unwrap(), 0);
    assert_eq!(ideal(&v, &["x^2", "y^2"]).local_colength().unwrap(), 4);
    assert_eq!(
        ideal(&v, &["x*y"]).local_colength().unwrap_err(),
        Error::NotZeroDimensional
    );
}

#[test]
fn reduced_basis_is_independent_of_generators() {
    let v = vars(&["x", "y", "z"]);
    let mut rng = seeded(11);
    for _ in 0..20 {
        let gens = random_ideal(&mut rng, &v);
        let mut mixed = gens.clone();
        for k in 1..mixed.len() {
            let h = random_poly(&mut rng, &v, 0, 1, 2);
            mixed[k] = &mixed[k] + &(&h * &gens[0]);
        }
        mixed.push(random_member(&mut rng, &gens, 1));
        mixed.reverse();
        let a = Ideal::new(&v, gens).unwrap();
        let b = Ideal::new(&v, mixed).unwrap();
        for ord in [MonomialOrdering::GrevLex, MonomialOrdering::Lex] {
            assert_eq!(*buchberger(&a, ord).unwrap(), *buchberger(&b, ord).unwrap());
        }
    }
}

#[test]
fn members_reduce_to_zero_under_every_ordering() {
    let v = vars(&["x", "y", "z"]);
    let mut rng = seeded(12);
    for _ in 0..20 {
        let i = Ideal::new(&v, random_ideal(&mut rng, &v)).unwrap();
        let f = random_member(&mut rng, i.generators(), 2);
        for ord in [
            MonomialOrdering::GrevLex,
            MonomialOrdering::Lex,
            MonomialOrdering::BlockElimination(1),
        ] {
            let gb = i.groebner_basis(ord).unwrap();
            assert!(gb.is_reduced());
            assert!(normal_form(&f, &gb).unwrap().is_zero());
        }
    }
}

#[test]
fn cached_basis_generates_the_same_ideal() {
    let v = vars(&["x", "y", "z"]);
    let mut rng = seeded(13);
    for _ in 0..10 {
        let i = Ideal::new(&v, random_ideal(&mut rng, &v)).unwrap();
        let gb = i.reduced_basis().unwrap();
        let from_basis = Ideal::new(&v, gb.elements().iter().cloned()).unwrap();
        assert!(from_basis.contains_ideal(&i).unwrap());
        assert!(i.contains_ideal(&from_basis).unwrap());
        // Second lookup hits the cache and returns the identical basis.
        assert!(std::sync::Arc::ptr_eq(&gb, &i.reduced_basis().unwrap()));
    }
}

#[test]
fn colength_matches_macaulay_corank_on_random_origin_ideals() {
    let v = vars(&["x", "y", "z"]);
    let mut rng = seeded(14);
    for _ in 0..8 {
        let gens = random_origin_ideal(&mut rng, &v);
        let i = Ideal::new(&v, gens.clone()).unwrap();
        let colength = i.colength().unwrap() as usize;
        assert_eq!(i.standard_monomials().unwrap().len(), colength);
        let Some((corank, _)) = certified_corank(&gens, 14) else {
            panic!("no certificate for {i} colength {colength}")
        };
        assert_eq!(colength, corank, "{i}");
    }
}

#[test]
fn monomial_ideal_dimension_matches_subset_enumeration() {
    let v = vars(&["a", "b", "c", "d", "e"]);
    let mut rng = seeded(15);
    for _ in 0..40 {
        let count = rng.gen_range(1..5);
        let gens: Vec<Polynomial> = (0..count)
            .map(|_| {
                let mut g = Polynomial::one(&v);
                for _ in 0..rng.gen_range(1..4) {
                    g = &g * &Polynomial::variable_at(&v, rng.gen_range(0..5));
                }
                g
            })
            .collect();
        // Brute force: largest coordinate subspace inside the variety.
        let brute = (0u32..32)
            .filter(|s| {
                gens.iter().all(|g| {
                    g.terms().iter().any(|(m, _)| {
                        m.exponents()
                            .iter()
                            .enumerate()
                            .any(|(i, &e)| e > 0 && s & (1 << i) == 0)
                    })
                })
            })
            .map(|s| s.count_ones() as i64)
            .max()
            .unwrap();
        let i = Ideal::new(&v, gens).unwrap();
        assert_eq!(i.dimension().unwrap(), brute, "{i}");
    }
}

#[test]
fn saturation_is_idempotent_and_matches_rabinowitsch() {
    let v = vars(&["x", "y", "z"]);
    let mut rng = seeded(16);
    for _ in 0..6 {
        let base = Ideal::new(&v, random_ideal(&mut rng, &v)).unwrap();
        let g = random_poly(&mut rng, &v, 1, 1, 2);
        let j = Ideal::new(&v, [g.clone()]).unwrap();
        // Multiply in a power of g so the saturation has something to strip.
        let i = base.product(&j.product(&j).unwrap()).unwrap();
        let s = i.saturate(&j).unwrap();
        assert!(s.saturate(&j).unwrap().same_ideal(&s).unwrap());
        assert!(s
            .same_ideal(&i.saturate_by_rabinowitsch(&g).unwrap())
            .unwrap());
        assert!(s.contains_ideal(&base).unwrap());
    }
}

#[test]
fn intersection_is_contained_in_both() {
    let v = vars(&["x", "y"]);
    let a = ideal(&v, &["x^2", "y"]);
    let b = ideal(&v, &["x", "y^2"]);
    let meet = a.intersect(&b).unwrap();
    assert!(meet.same_ideal(&ideal(&v, &["x^2", "x*y", "y^2"])).unwrap());
    assert!(a.contains_ideal(&meet).unwrap() && b.contains_ideal(&meet).unwrap());
}

#[test]
fn lex_working_order_gives_the_same_answers() {
    let v = vars(&["x", "y", "z"]);
    let mut rng = seeded(16);
    let lex = Limits {
        ordering: MonomialOrdering::Lex,
        ..Limits::default()
    };
    for _ in 0..6 {
        let gens = random_origin_ideal(&mut rng, &v);
        let i = Ideal::new(&v, gens.clone()).unwrap();
        let j = Ideal::new(&v, gens).unwrap();
        let f = random_poly(&mut rng, &v, 0, 3, 3);
        let grevlex = (
            i.dimension().unwrap(),
            i.colength().unwrap(),
            i.contains(&f).unwrap(),
        );
        let under_lex = lex.scope(|| {
            (
                j.dimension().unwrap(),
                j.colength().unwrap(),
                j.contains(&f).unwrap(),
            )
        });
        assert_eq!(grevlex, under_lex);
    }
    let curve = ideal(&v, &["x^2 - y*z", "x*y - z^2"]);
    assert_eq!(lex.scope(|| curve.dimension()).unwrap(), 1);
}
