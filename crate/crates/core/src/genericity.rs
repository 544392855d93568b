//! Hyperplane sections of determinantal models: slicing, a transversality
//! screen for hyperplanes, and comparison of computable section invariants.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::detmodel::{self, PresentationMatrix};
use crate::invariants::{self, EulerData, MVector};
use crate::polyring::{parse_polynomial, Coeff, Polynomial, VariableSet};
use crate::strata::{self, EidsVerdict};
use crate::{Error, ErrorKind, Result};

/// A hyperplane `l = 0` through the origin, stored with its first nonzero
/// coefficient equal to 1. Coefficients are indexed by ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    coefficients: Vec<Coeff>,
}

impl Hyperplane {
    pub fn new(coefficients: Vec<Coeff>) -> Result<Self> {
        let Some(lead) = coefficients.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Invalid(
                "hyperplane with all coefficients zero".into(),
            ));
        };
        let coefficients = coefficients.into_iter().map(|c| c / &lead).collect();
        Ok(Hyperplane { coefficients })
    }

    pub fn from_integers(coefficients: &[i64]) -> Result<Self> {
        Hyperplane::new(
            coefficients
                .iter()
                .map(|&c| Coeff::from_integer(c.into()))
                .collect(),
        )
    }

    /// Parses a homogeneous linear form in the ambient variables, optionally
    /// followed by `= 0`.
    pub fn parse(text: &str, vars: &VariableSet) -> Result<Self> {
        let form = match text.split_once('=') {
            Some((lhs, rhs)) if rhs.trim() == "0" => lhs,
            Some(_) => {
                return Err(Error::Invalid(format!(
                    "`{text}`: the right-hand side must be 0"
                )))
            }
            None => text,
        };
        let p = parse_polynomial(form, vars)?;
        if !p.is_homogeneous_linear() {
            return Err(Error::Invalid(format!(
                "`{text}` is not a nonzero linear form"
            )));
        }
        if vars.parameter_indices().iter().any(|&i| p.involves(i)) {
            return Err(Error::Invalid(format!(
                "`{text}` involves a family parameter"
            )));
        }
        let coefficients = vars
            .ambient_indices()
            .into_iter()
            .map(|i| {
                p.terms()
                    .iter()
                    .find(|(m, _)| m.exponents()[i] == 1)
                    .map_or_else(Coeff::zero, |(_, c)| c.clone())
            })
            .collect();
        Hyperplane::new(coefficients)
    }

    pub fn coefficients(&self) -> &[Coeff] {
        &self.coefficients
    }

    /// Position, among the ambient variables, of the variable solved for.
    pub fn pivot(&self) -> usize {
        self.coefficients
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero hyperplane")
    }

    pub fn linear_form(&self, vars: &VariableSet) -> Result<Polynomial> {
        let ambient = vars.ambient_indices();
        if ambient.len() != self.coefficients.len() {
            return Err(Error::LengthMismatch {
                what: "hyperplane coefficients",
                expected: ambient.len(),
                actual: self.coefficients.len(),
            });
        }
        Ok(ambient
            .iter()
            .zip(&self.coefficients)
            .fold(Polynomial::zero(vars), |acc, (&i, c)| {
                &acc + &Polynomial::variable_at(vars, i).scale(c)
            }))
    }
}

/// Restricts the model to `h` by solving `l = 0` for the pivot variable. The
/// result has one ambient variable fewer and the same type.
pub fn slice(m: &PresentationMatrix, h: &Hyperplane) -> Result<PresentationMatrix> {
    let vars = m.vars();
    h.linear_form(vars)?;
    let ambient = vars.ambient_indices();
    let pivot = ambient[h.pivot()];
    let target = vars.without(&[pivot]);
    let mut image = Polynomial::zero(&target);
    for (&i, c) in ambient.iter().zip(h.coefficients()) {
        if i != pivot && !c.is_zero() {
            let v = Polynomial::variable(&target, vars.name(i))?;
            image = &image - &v.scale(c);
        }
    }
    debug_assert!(h.coefficients()[h.pivot()].is_one());
    let assignment = HashMap::from([(vars.name(pivot).to_string(), image)]);
    m.map_entries(&target, |e| Ok(e.substitute_into(&assignment, &target)?))
}

#[derive(Clone, Debug)]
pub struct SlicedStratum {
    pub index: usize,
    pub expected_dim: i64,
    pub actual_dim: i64,
    pub ok: bool,
}

/// Outcome of screening one hyperplane. A pass is a necessary condition for
/// genericity, not a certificate: limits of tangent hyperplanes are not computed.
#[derive(Clone, Debug)]
pub struct ScreenVerdict {
    pub hyperplane: Hyperplane,
    pub strata: Vec<SlicedStratum>,
    /// The EIDS verdict of the section, or the reason it could not be checked.
    pub eids: std::result::Result<EidsVerdict, Error>,
    pub pass: bool,
}

/// Checks that the section is again EIDS of the same type: every present
/// sliced stratum has its expected dimension, and every stratum of negative
/// expected dimension meets the section at most in the origin.
pub fn hyperplane_screen(m: &PresentationMatrix, h: &Hyperplane) -> Result<ScreenVerdict> {
    m.require_specialized()?;
    let sliced = slice(m, h)?;
    let mut records = Vec::new();
    for i in 1..=sliced.dtype().t() {
        let s = detmodel::stratum(&sliced, i)?;
        let actual = s.dimension()?;
        let ok = if s.is_present() {
            actual == s.expected_dim || (i < sliced.dtype().t() && actual < 0)
        } else {
            s.ideal.support_is_origin_only()?
        };
        records.push(SlicedStratum {
            index: i,
            expected_dim: s.expected_dim,
            actual_dim: actual,
            ok,
        });
    }
    let eids = match strata::eids_check(&sliced) {
        Ok(v) => Ok(v),
        Err(e) if e.kind() == ErrorKind::Precondition => Err(e),
        Err(e) => return Err(e),
    };
    let pass = records.iter().all(|r| r.ok) && matches!(&eids, Ok(v) if v.overall);
    Ok(ScreenVerdict {
        hyperplane: h.clone(),
        strata: records,
        eids,
        pass,
    })
}

#[derive(Clone, Debug)]
pub struct SectionEntry {
    pub hyperplane: Hyperplane,
    pub screen_pass: bool,
    pub dimensions: Vec<(usize, i64)>,
    /// Colength at the origin of every zero-dimensional sliced stratum.
    pub colengths: Vec<(usize, u64)>,
    pub m: Option<MVector>,
    /// Attains the componentwise minimum among passing hyperplanes.
    pub minimal: bool,
}

impl SectionEntry {
    fn proxy(&self, t: usize) -> Vec<i64> {
        let by_index: BTreeMap<usize, u64> = self.colengths.iter().copied().collect();
        let mut v: Vec<i64> = (1..=t)
            .map(|i| by_index.get(&i).map_or(0, |&c| c as i64))
            .collect();
        if let Some(m) = &self.m {
            v.extend(&m.values);
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct SectionReport {
    pub entries: Vec<SectionEntry>,
}

/// Computes section invariants for each hyperplane and marks the passing ones
/// that attain the componentwise minimum, a computable stand-in for topological
/// minimality.
pub fn section_invariant_compare(
    m: &PresentationMatrix,
    hs: &[Hyperplane],
    euler: Option<&[Option<EulerData>]>,
) -> Result<SectionReport> {
    if hs.is_empty() {
        return Err(Error::Invalid("no hyperplanes to compare".into()));
    }
    if let Some(data) = euler {
        if data.len() != hs.len() {
            return Err(Error::LengthMismatch {
                what: "per-section Euler data",
                expected: hs.len(),
                actual: data.len(),
            });
        }
    }
    let mut entries = Vec::with_capacity(hs.len());
    for (n, h) in hs.iter().enumerate() {
        let screen = hyperplane_screen(m, h)?;
        let sliced = slice(m, h)?;
        let mut dimensions = Vec::new();
        let mut colengths = Vec::new();
        for r in &screen.strata {
            dimensions.push((r.index, r.actual_dim));
            if r.actual_dim == 0 {
                let s = detmodel::stratum(&sliced, r.index)?;
                colengths.push((r.index, s.ideal.local_colength()?));
            }
        }
        let solved = match euler.and_then(|d| d[n].as_ref()) {
            Some(data) => {
                let sys = invariants::build_euler_system(&sliced)?;
                let c: BTreeMap<usize, u64> = colengths.iter().copied().collect();
                Some(invariants::solve_for_m(&sys, data, &c)?)
            }
            None => None,
        };
        entries.push(SectionEntry {
            hyperplane: h.clone(),
            screen_pass: screen.pass,
            dimensions,
            colengths,
            m: solved,
            minimal: false,
        });
    }
    let t = m.dtype().t();
    let passing: Vec<Vec<i64>> = entries
        .iter()
        .filter(|e| e.screen_pass)
        .map(|e| e.proxy(t))
        .collect();
    if let Some(first) = passing.first() {
        let comparable = passing.iter().all(|p| p.len() == first.len());
        let min: Vec<i64> = (0..first.len())
            .map(|j| passing.iter().map(|p| p[j]).min().expect("nonempty"))
            .collect();
        for e in entries.iter_mut().filter(|e| e.screen_pass) {
            e.minimal = comparable && e.proxy(t) == min;
        }
    }
    Ok(SectionReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega(k: u32) -> PresentationMatrix {
        let vars = VariableSet::ambient(["x1", "x2", "x3", "x4", "x5", "y"]).unwrap();
        let last = format!("x1 + y^{}", k + 1);
        PresentationMatrix::parse(&vars, 2, &[&["x1", "x2", "x3"], &["x4", "x5", &last]]).unwrap()
    }

    #[test]
    fn hyperplanes_are_normalized() {
        let h = Hyperplane::from_integers(&[0, 2, -4]).unwrap();
        assert_eq!(h, Hyperplane::from_integers(&[0, -1, 2]).unwrap());
        assert_eq!(h.pivot(), 1);
        assert!(Hyperplane::from_integers(&[0, 0]).is_err());
    }

    #[test]
    fn parsing_linear_forms() {
        let m = omega(1);
        let h = Hyperplane::parse("y = 0", m.vars()).unwrap();
        assert_eq!(h, Hyperplane::from_integers(&[0, 0, 0, 0, 0, 1]).unwrap());
        let g = Hyperplane::parse("2*x3 - 4*y", m.vars()).unwrap();
        assert_eq!(g, Hyperplane::from_integers(&[0, 0, 1, 0, 0, -2]).unwrap());
        assert!(Hyperplane::parse("x1 + 1", m.vars()).is_err());
        assert!(Hyperplane::parse("x1*y", m.vars()).is_err());
        assert!(Hyperplane::parse("x1 = 2", m.vars()).is_err());
    }

    #[test]
    fn slicing_examples() {
        let m = omega(1);
        let by_x3 = slice(&m, &Hyperplane::parse("x3", m.vars()).unwrap()).unwrap();
        assert_eq!(by_x3.q(), 5);
        assert_eq!(by_x3.dtype(), m.dtype());
        assert_eq!(by_x3.to_string(), "[x1, x2, 0]\n[x4, x5, y^2 + x1]");

        let by_y = slice(&m, &Hyperplane::parse("y", m.vars()).unwrap()).unwrap();
        assert_eq!(by_y.to_string(), "[x1, x2, x3]\n[x4, x5, x1]");

        let mixed = slice(&m, &Hyperplane::parse("x1 - x2 + y", m.vars()).unwrap()).unwrap();
        assert_eq!(
            mixed.vars().names().collect::<Vec<_>>(),
            ["x2", "x3", "x4", "x5", "y"]
        );
        assert_eq!(mixed.entry(0, 0).to_string(), "x2 - y");
    }

    #[test]
    fn slicing_by_an_unused_variable() {
        let vars = VariableSet::ambient(["a", "b", "c"]).unwrap();
        let m = PresentationMatrix::parse(&vars, 1, &[&["a", "b"]]).unwrap();
        let s = slice(&m, &Hyperplane::parse("c", &vars).unwrap()).unwrap();
        assert_eq!(s.q(), 2);
        assert_eq!(s.to_string(), "[a, b]");
    }

    #[test]
    fn empty_list_is_rejected() {
        assert!(section_invariant_compare(&omega(1), &[], None).is_err());
    }
}
