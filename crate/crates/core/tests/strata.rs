use std::time::Instant;

use detsing_core::detmodel::{self, ParameterPoint, PresentationMatrix};
use detsing_core::groebner::Ideal;
use detsing_core::polyring::{parse_polynomial, Coeff, Polynomial, VariableSet};
use detsing_core::strata::{
    eids_check, good_family_scan, singular_locus_ideal, stably_isolated_check,
};

fn omega(k: u32) -> PresentationMatrix {
    let vars = VariableSet::ambient(["x1", "x2", "x3", "x4", "x5", "y"]).unwrap();
    let last = format!("x1 + y^{}", k + 1);
    PresentationMatrix::parse(&vars, 2, &[&["x1", "x2", "x3"], &["x4", "x5", &last]]).unwrap()
}

/// The model whose entries are independent variables.
fn generic(rows: usize, cols: usize, t: usize) -> PresentationMatrix {
    let names: Vec<String> = (0..rows * cols).map(|i| format!("z{i}")).collect();
    let vars = VariableSet::ambient(names).unwrap();
    let grid = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| Polynomial::variable_at(&vars, r * cols + c))
                .collect()
        })
        .collect();
    PresentationMatrix::new(&vars, t, grid).unwrap()
}

#[test]
fn omega_one_is_eids() {
    let m = omega(1);
    let start = Instant::now();
    let s2 = detmodel::stratum(&m, 2).unwrap();
    assert_eq!(s2.dimension().unwrap(), 4);
    let j = singular_locus_ideal(&s2.ideal, 2).unwrap();
    assert!(j.support_is_origin_only().unwrap());
    let v = eids_check(&m).unwrap();
    assert!(v.overall, "{v:?}");
    assert_eq!(v.strata.len(), 2);
    assert!(v.strata.iter().all(|s| s.witness.is_none()));
    eprintln!("omega_1 eids: {:?}", start.elapsed());
}

#[test]
fn omega_family_members_are_eids() {
    for k in 2..=3 {
        assert!(eids_check(&omega(k)).unwrap().overall);
    }
}

#[test]
fn generic_models_are_eids() {
    // Jacobian minors of the rank-2 stratum grow past reach for 4x3 and 5x3.
    let shapes = [
        (1, 1, 1),
        (2, 1, 1),
        (3, 1, 1),
        (2, 2, 2),
        (3, 2, 2),
        (4, 2, 2),
        (3, 3, 3),
        (4, 3, 1),
        (5, 3, 1),
    ];
    for (rows, cols, max_t) in shapes {
        for t in 1..=max_t {
            let start = Instant::now();
            let v = eids_check(&generic(rows, cols, t)).unwrap();
            assert!(v.overall, "{rows}x{cols} t={t}: {v:?}");
            eprintln!("generic {rows}x{cols} t={t}: {:?}", start.elapsed());
        }
    }
}

#[test]
fn generic_determinant_singular_locus_is_the_entry_locus() {
    let m = generic(2, 3, 2);
    let s = detmodel::stratum(&m, 2).unwrap();
    let j = singular_locus_ideal(&s.ideal, 2).unwrap();
    let entries = Ideal::maximal(m.vars());
    // Same variety: every entry is in the radical and the radical of j contains
    // nothing beyond the maximal ideal.
    for z in entries.generators() {
        assert!(j.radical_contains(z).unwrap());
    }
    assert!(entries.contains_ideal(&j).unwrap());
}

#[test]
fn failure_witness_lies_on_its_stratum() {
    // Cusp-like entry: the top stratum is singular along the y-axis.
    let v = VariableSet::ambient(["x", "y", "z"]).unwrap();
    let m = PresentationMatrix::parse(&v, 1, &[&["x^2 - z^3"]]).unwrap();
    let verdict = eids_check(&m).unwrap();
    assert!(!verdict.overall);
    let rec = &verdict.strata[0];
    let w = rec
        .witness
        .as_ref()
        .expect("failing stratum carries a witness");
    let s = detmodel::stratum(&m, 1).unwrap();
    assert!(w.contains_ideal(&s.ideal).unwrap());
    assert!(w.contains(&parse_polynomial("x", &v).unwrap()).unwrap());
}

#[test]
fn family_scan_over_translates() {
    // x1 + (y - u)^2 at u = 0 is Omega_1 itself; other values move the
    // singular point of the last entry off the origin.
    let vars = VariableSet::new(["x1", "x2", "x3", "x4", "x5", "y"], ["u"]).unwrap();
    let m = PresentationMatrix::parse(
        &vars,
        2,
        &[&["x1", "x2", "x3"], &["x4", "x5", "x1 + y^2 + u*y"]],
    )
    .unwrap();
    let samples: Vec<ParameterPoint> = [0, 1, -2]
        .iter()
        .map(|&u| ParameterPoint::from([("u".to_string(), Coeff::from_integer(u.into()))]))
        .collect();
    let scan = good_family_scan(&m, &samples).unwrap();
    assert_eq!(scan.len(), 3);
    assert!(scan.iter().all(|s| s.passes()));
    assert_eq!(scan[1].point["u"], Coeff::from_integer(1.into()));

    let constant = generic(2, 2, 2);
    assert!(good_family_scan(&constant, &[ParameterPoint::new()]).unwrap()[0].passes());
}

#[test]
fn stable_isolation_needs_matching_dimension() {
    let v = VariableSet::ambient(["a", "b"]).unwrap();
    let m = PresentationMatrix::parse(&v, 2, &[&["a", "b"], &["b", "-a"], &["a", "0"]]).unwrap();
    assert!(stably_isolated_check(&m, 1).unwrap());
    let w = VariableSet::ambient(["a", "b", "c"]).unwrap();
    let m = PresentationMatrix::parse(&w, 2, &[&["a", "b"], &["b", "a"], &["c", "0"]]).unwrap();
    assert!(!stably_isolated_check(&m, 1).unwrap());
}
