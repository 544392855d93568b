//! Geometric verdicts on determinantal models: singular loci, EIDS and
//! good-family checks, stable isolation and the conormal fiber gap.

use std::collections::BTreeSet;

use crate::detmodel::{self, DeterminantalType, ParameterPoint, PresentationMatrix};
use crate::groebner::Ideal;
use crate::polyring::Polynomial;
use crate::{Error, ErrorKind, Result};

/// `a` plus the `codim × codim` minors of the Jacobian matrix of its generators
/// (over the ambient variables). Its variety is where `V(a)` fails to be smooth
/// of codimension `codim`.
pub fn singular_locus_ideal(a: &Ideal, codim: usize) -> Result<Ideal> {
    let gens = a.generators();
    let vars = a.vars();
    let ambient = vars.ambient_indices();
    let max = gens.len().min(ambient.len());
    if codim == 0 || codim > max {
        return Err(Error::range("codimension", codim, 1, max as i64));
    }
    let jacobian: Vec<Polynomial> = gens
        .iter()
        .flat_map(|g| ambient.iter().map(move |&j| g.derivative_at(j)))
        .collect();
    let cols = ambient.len();
    let minors = detmodel::all_minors(
        vars,
        gens.len(),
        cols,
        |r, c| jacobian[r * cols + c].clone(),
        codim,
    );
    // Reducing modulo `a` does not change the ideal and keeps the generator list short.
    let gb = a.reduced_basis()?;
    let mut seen = BTreeSet::new();
    let mut extra = Vec::new();
    for m in minors {
        let r = gb.normal_form(&m)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(Ideal::unit(vars));
        }
        if seen.insert(r.to_string()) {
            extra.push(r);
        }
    }
    a.with_generators(extra)
}

/// Transversality record for one rank stratum.
#[derive(Clone, Debug)]
pub struct StratumVerdict {
    pub index: usize,
    pub expected_dim: i64,
    pub actual_dim: i64,
    /// Expected dimension is non-negative.
    pub present: bool,
    pub transversal_off_origin: bool,
    /// Ideal of the failure locus, present iff the check fails.
    pub witness: Option<Ideal>,
}

#[derive(Clone, Debug)]
pub struct EidsVerdict {
    pub strata: Vec<StratumVerdict>,
    pub overall: bool,
}

/// Checks that the model is transverse to every rank stratum off the origin.
///
/// A present stratum passes when its dimension is the expected one (or it is
/// empty, for strata below the top) and its non-smooth locus away from the next
/// deeper stratum lies inside the origin. A stratum of negative expected
/// dimension passes when its preimage lies inside the origin. A top stratum of the
/// wrong dimension is an error: the model is not determinantal of its type.
pub fn eids_check(m: &PresentationMatrix) -> Result<EidsVerdict> {
    m.require_specialized()?;
    let dtype = m.dtype();
    let mut strata = Vec::new();
    let mut deeper: Option<Ideal> = None;
    for i in 1..=dtype.t() {
        let s = detmodel::stratum(m, i)?;
        let actual = s.dimension()?;
        let record = if !s.is_present() {
            let ok = s.ideal.support_is_origin_only()?;
            StratumVerdict {
                index: i,
                expected_dim: s.expected_dim,
                actual_dim: actual,
                present: false,
                transversal_off_origin: ok,
                witness: (!ok).then(|| s.ideal.clone()),
            }
        } else if actual != s.expected_dim {
            if i == dtype.t() {
                return Err(Error::DimensionMismatch {
                    stratum: i,
                    expected: s.expected_dim,
                    actual,
                });
            }
            let ok = actual < 0;
            StratumVerdict {
                index: i,
                expected_dim: s.expected_dim,
                actual_dim: actual,
                present: true,
                transversal_off_origin: ok,
                witness: (!ok).then(|| s.ideal.clone()),
            }
        } else {
            let codim = s.expected_codim as usize;
            let j = singular_locus_ideal(&s.ideal, codim)?;
            let (ok, witness) = off_deeper_is_origin(&j, deeper.as_ref())?;
            StratumVerdict {
                index: i,
                expected_dim: s.expected_dim,
                actual_dim: actual,
                present: true,
                transversal_off_origin: ok,
                witness,
            }
        };
        strata.push(record);
        deeper = Some(s.ideal);
    }
    let overall = strata.iter().all(|s| s.transversal_off_origin);
    Ok(EidsVerdict { strata, overall })
}

/// Whether `V(j) \ V(deeper)` lies inside the origin. The closure of that set is
/// `V(j : deeper^∞)`, the union of `V(j : g^∞)` over generators `g`, so each
/// piece is tested on its own and the full saturation is only assembled as a
/// witness on failure.
fn off_deeper_is_origin(j: &Ideal, deeper: Option<&Ideal>) -> Result<(bool, Option<Ideal>)> {
    if j.is_unit()? {
        return Ok((true, None));
    }
    let Some(deeper) = deeper else {
        let ok = j.support_is_origin_only()?;
        return Ok((ok, (!ok).then(|| j.clone())));
    };
    for g in deeper.generators() {
        if !j.saturate_by(g)?.support_is_origin_only()? {
            return Ok((false, Some(j.saturate(deeper)?)));
        }
    }
    Ok((true, None))
}

#[derive(Clone, Debug)]
pub struct FamilySample {
    pub point: ParameterPoint,
    /// The verdict, or the precondition failure (such as a dimension mismatch)
    /// that kept the specialization from being checked.
    pub outcome: std::result::Result<EidsVerdict, Error>,
}

impl FamilySample {
    pub fn passes(&self) -> bool {
        matches!(&self.outcome, Ok(v) if v.overall)
    }
}

/// Runs [`eids_check`] at each sample point, in input order. Passing every sample
/// is evidence of a good family, not a proof.
pub fn good_family_scan(
    m: &PresentationMatrix,
    samples: &[ParameterPoint],
) -> Result<Vec<FamilySample>> {
    let mut out = Vec::with_capacity(samples.len());
    for point in samples {
        let fiber = m.specialize(point)?;
        let outcome = match eids_check(&fiber) {
            Ok(v) => Ok(v),
            Err(e) if e.kind() == ErrorKind::Precondition => Err(e),
            Err(e) => return Err(e),
        };
        out.push(FamilySample {
            point: point.clone(),
            outcome,
        });
    }
    Ok(out)
}

/// True iff `q` equals the codimension `(n−i)(n+k−i)` of `Σ_{i+1}` and the
/// preimage of that stratum is supported at the origin.
pub fn stably_isolated_check(m: &PresentationMatrix, i: usize) -> Result<bool> {
    let dtype = m.dtype();
    let n = dtype.n();
    if i == 0 || i >= n {
        return Err(Error::range("stratum index", i, 1, n as i64 - 1));
    }
    m.require_specialized()?;
    if m.q() as i64 != dtype.expected_codim(i + 1) {
        return Ok(false);
    }
    Ideal::new(m.vars(), detmodel::minors(m, i + 1)?)?.support_is_origin_only()
}

/// `dim C(X)` minus the dimension of its fiber over the origin, `k + 1`, for a
/// stably isolated model.
pub fn conormal_fiber_gap(dtype: DeterminantalType) -> usize {
    dtype.k() + 1
}
