use std::time::Instant;

use detsing_core::detmodel::{self, PresentationMatrix};
use detsing_core::genericity::{hyperplane_screen, section_invariant_compare, slice, Hyperplane};
use detsing_core::polyring::{Coeff, VariableSet};
use detsing_testkit::random::{random_integer_vector, seeded};

fn omega(k: u32) -> PresentationMatrix {
    let vars = VariableSet::ambient(["x1", "x2", "x3", "x4", "x5", "y"]).unwrap();
    let last = format!("x1 + y^{}", k + 1);
    PresentationMatrix::parse(&vars, 2, &[&["x1", "x2", "x3"], &["x4", "x5", &last]]).unwrap()
}

fn random_hyperplane(rng: &mut detsing_testkit::random::TestRng, q: usize) -> Hyperplane {
    loop {
        let c = random_integer_vector(rng, q, -3, 3);
        if c.iter().all(|&x| x != 0) {
            return Hyperplane::from_integers(&c).unwrap();
        }
    }
}

#[test]
fn x3_section_is_not_eids() {
    let m = omega(1);
    let h = Hyperplane::parse("x3", m.vars()).unwrap();
    let v = hyperplane_screen(&m, &h).unwrap();
    assert!(!v.pass);
    // The sliced top stratum still has the right dimension; the failure is the
    // non-smooth line x1 = x2 = y = 0 off the deeper stratum.
    assert_eq!(v.strata[1].actual_dim, 3);
    let eids = v.eids.as_ref().unwrap();
    assert!(!eids.strata[1].transversal_off_origin);
}

#[test]
fn y_section_meets_the_point_stratum_only_at_the_origin() {
    let m = omega(1);
    let h = Hyperplane::parse("y", m.vars()).unwrap();
    let v = hyperplane_screen(&m, &h).unwrap();
    assert_eq!(v.strata[0].expected_dim, -1);
    assert_eq!(v.strata[0].actual_dim, 0);
    assert!(v.strata[0].ok);
    assert!(v.pass);
}

#[test]
fn random_sections_pass_with_top_stratum_of_dimension_three() {
    let m = omega(1);
    let mut rng = seeded(9);
    let start = Instant::now();
    for _ in 0..3 {
        let h = random_hyperplane(&mut rng, 6);
        let v = hyperplane_screen(&m, &h).unwrap();
        assert!(v.pass, "{h:?}: {v:?}");
        let sliced = slice(&m, &h).unwrap();
        assert_eq!(
            detmodel::stratum(&sliced, 2).unwrap().dimension().unwrap(),
            3
        );
    }
    eprintln!("three random sections: {:?}", start.elapsed());
}

#[test]
fn slicing_is_scale_invariant_and_keeps_type() {
    let m = omega(2);
    let mut rng = seeded(10);
    for _ in 0..5 {
        let h = random_hyperplane(&mut rng, 6);
        let c = Coeff::new((-7).into(), 3.into());
        let scaled = Hyperplane::new(h.coefficients().iter().map(|x| x * &c).collect()).unwrap();
        let a = slice(&m, &h).unwrap();
        assert_eq!(a, slice(&m, &scaled).unwrap());
        assert_eq!(a.dtype(), m.dtype());
        assert_eq!(a.q(), m.q() - 1);
    }
}

#[test]
fn section_comparison_on_omega() {
    let m = omega(1);
    let hs = [
        Hyperplane::parse("x3", m.vars()).unwrap(),
        Hyperplane::parse("y", m.vars()).unwrap(),
        Hyperplane::parse("-2*y", m.vars()).unwrap(),
    ];
    let r = section_invariant_compare(&m, &hs, None).unwrap();
    assert_eq!(r.entries.len(), 3);
    assert!(!r.entries[0].screen_pass);
    assert!(!r.entries[0].minimal);
    assert_eq!(r.entries[0].colengths, [(1, 2)]);
    assert_eq!(r.entries[1].colengths, [(1, 1)]);
    assert!(r.entries[1].minimal && r.entries[2].minimal);
    assert_eq!(r.entries[1].dimensions, r.entries[2].dimensions);

    let single = section_invariant_compare(&m, &hs[1..2], None).unwrap();
    assert!(single.entries[0].minimal);
}
