//! Numerical invariants: the `n_it` coefficients, zero-dimensional colengths,
//! the triangular Euler-characteristic system and family constancy reports.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::detmodel::{self, DeterminantalType, ParameterPoint, PresentationMatrix};
use crate::strata;
use crate::{Error, Result};

fn binomial(n: u64, r: u64) -> BigInt {
    (0..r).fold(BigInt::from(1), |acc, j| acc * (n - j) / (j + 1))
}

/// `n_it = (−1)^{k(t−i)} · C(n−i, n−t)`.
pub fn nit_coefficient(n: usize, k: usize, t: usize, i: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::range("n", n, 1, i64::MAX));
    }
    if t == 0 || t > n {
        return Err(Error::range("t", t, 1, n as i64));
    }
    if i == 0 || i > t {
        return Err(Error::range("i", i, 1, t as i64));
    }
    let magnitude = binomial((n - i) as u64, (n - t) as u64);
    let magnitude = i64::try_from(magnitude)
        .map_err(|_| Error::Invalid(format!("C({}, {}) overflows i64", n - i, n - t)))?;
    Ok(if (k * (t - i)) % 2 == 0 {
        magnitude
    } else {
        -magnitude
    })
}

/// Row `j` reads `(−1)^{d_j} χ(_jX) + (−1)^{d_j−1} χ(_jX∩H) = Σ_{i≤j} n_ij m_i`,
/// over the present strata only, with unreduced Euler characteristics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerSystem {
    /// Present stratum indices, ascending; row and column `r` belong to `strata[r]`.
    pub strata: Vec<usize>,
    /// Expected dimension of each present stratum.
    pub dims: Vec<i64>,
    /// Lower-triangular with unit diagonal.
    pub coefficients: Vec<Vec<i64>>,
}

impl EulerSystem {
    /// The system depends only on the type and the ambient dimension.
    pub fn for_type(dtype: DeterminantalType, q: usize) -> Result<Self> {
        let strata = dtype.present_strata(q);
        if strata.is_empty() {
            return Err(Error::NoPresentStrata);
        }
        let dims = strata.iter().map(|&i| dtype.expected_dim(q, i)).collect();
        let mut coefficients = vec![vec![0; strata.len()]; strata.len()];
        for (r, &j) in strata.iter().enumerate() {
            for (c, &i) in strata.iter().enumerate().take(r + 1) {
                coefficients[r][c] = nit_coefficient(dtype.n(), dtype.k(), j, i)?;
            }
        }
        Ok(EulerSystem {
            strata,
            dims,
            coefficients,
        })
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Forward substitution `C m = lhs`, exact because the diagonal is 1.
    pub fn solve_lower(&self, lhs: &[i64]) -> Result<Vec<i64>> {
        self.check_len("left-hand side", lhs.len())?;
        let mut m = Vec::with_capacity(lhs.len());
        for (r, row) in self.coefficients.iter().enumerate() {
            let known: i64 = row[..r].iter().zip(&m).map(|(c, x)| c * x).sum();
            m.push(lhs[r] - known);
        }
        Ok(m)
    }

    fn check_len(&self, what: &'static str, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::LengthMismatch {
                what,
                expected: self.len(),
                actual: len,
            });
        }
        Ok(())
    }
}

pub fn build_euler_system(m: &PresentationMatrix) -> Result<EulerSystem> {
    EulerSystem::for_type(m.dtype(), m.q())
}

/// Euler characteristics of stabilizations, per stratum index. Zero-dimensional
/// strata need no entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EulerData {
    pub chi_stab: BTreeMap<usize, i64>,
    pub chi_section: BTreeMap<usize, i64>,
    /// Values are reduced Euler characteristics `χ̄ = χ − 1`.
    pub reduced: bool,
}

impl EulerData {
    fn unreduced(&self, map: &BTreeMap<usize, i64>, i: usize) -> Option<i64> {
        map.get(&i).map(|&v| if self.reduced { v + 1 } else { v })
    }

    /// `(−1)^d χ(_iX) + (−1)^{d−1} χ(_iX∩H)` with unreduced values.
    pub fn combination(&self, i: usize, dim: i64) -> Result<i64> {
        let stab = self
            .unreduced(&self.chi_stab, i)
            .ok_or(Error::MissingEulerData(i))?;
        let section = self
            .unreduced(&self.chi_section, i)
            .ok_or(Error::MissingEulerData(i))?;
        Ok(if dim % 2 == 0 {
            stab - section
        } else {
            section - stab
        })
    }
}

/// Polar multiplicities `m_i = m_{d_i}(_iX)` over the present strata.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MVector {
    pub strata: Vec<usize>,
    pub values: Vec<i64>,
}

impl MVector {
    pub fn get(&self, stratum: usize) -> Option<i64> {
        self.strata
            .iter()
            .position(|&s| s == stratum)
            .map(|p| self.values[p])
    }
}

/// Left-hand sides of the system: the χ combination for positive-dimensional
/// strata, the colength for a zero-dimensional one.
pub fn euler_lhs(
    sys: &EulerSystem,
    data: &EulerData,
    colengths: &BTreeMap<usize, u64>,
) -> Result<Vec<i64>> {
    sys.strata
        .iter()
        .zip(&sys.dims)
        .map(|(&i, &d)| {
            if d == 0 {
                colengths
                    .get(&i)
                    .map(|&c| c as i64)
                    .ok_or(Error::MissingColength(i))
            } else {
                data.combination(i, d)
            }
        })
        .collect()
}

/// Solves the triangular system for the m-vector. Zero-dimensional strata enter
/// as the given colengths.
pub fn solve_for_m(
    sys: &EulerSystem,
    data: &EulerData,
    colengths: &BTreeMap<usize, u64>,
) -> Result<MVector> {
    let lhs = euler_lhs(sys, data, colengths)?;
    let values = sys.solve_lower(&lhs)?;
    if let Some(p) = values.iter().position(|&v| v < 0) {
        return Err(Error::NegativeMultiplicity {
            stratum: sys.strata[p],
            value: values[p],
        });
    }
    Ok(MVector {
        strata: sys.strata.clone(),
        values,
    })
}

/// The χ combinations determined by an m-vector: `C m`.
pub fn solve_for_chi_diffs(sys: &EulerSystem, m: &MVector) -> Result<Vec<i64>> {
    if m.strata != sys.strata {
        return Err(Error::LengthMismatch {
            what: "m-vector strata",
            expected: sys.len(),
            actual: m.strata.len(),
        });
    }
    Ok(sys
        .coefficients
        .iter()
        .map(|row| row.iter().zip(&m.values).map(|(c, x)| c * x).sum())
        .collect())
}

/// Colength of a zero-dimensional stratum supported at the origin.
pub fn m0_colength(m: &PresentationMatrix, i: usize) -> Result<u64> {
    m.require_specialized()?;
    let s = detmodel::stratum(m, i)?;
    if s.expected_dim != 0 {
        return Err(Error::StratumNotZeroDimensional {
            stratum: i,
            expected_dim: s.expected_dim,
        });
    }
    s.ideal.colength()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarBound {
    Zero,
    Unknown,
}

/// The intersection number `M(ℂ^q) · Γ_d(Σⁱ)` vanishes once `q ≥ n(n+k)`, and for
/// `(n, k, i) = (2, 1, 2)` already from `q ≥ 5`.
pub fn polar_term_bound(dtype: DeterminantalType, q: usize, i: usize) -> PolarBound {
    let (n, k) = (dtype.n(), dtype.k());
    if q >= n * (n + k) || ((n, k, i) == (2, 1, 2) && q >= 5) {
        PolarBound::Zero
    } else {
        PolarBound::Unknown
    }
}

/// `e(JM, N) + M(ℂ^q)·Γ_d(Σⁱ) = m_d`.
pub fn md_consistency(e_pair: i64, polar_term: i64, m_d: i64) -> bool {
    e_pair + polar_term == m_d
}

/// Invariants of one member of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleInvariants {
    pub point: ParameterPoint,
    /// Dimension of every stratum `1..=t`.
    pub dimensions: Vec<(usize, i64)>,
    /// Colength at the origin of each present zero-dimensional stratum.
    pub colengths: Vec<(usize, u64)>,
    /// Solved m-vector when Euler data was supplied for the sample.
    pub m: Option<MVector>,
    pub eids: bool,
}

impl SampleInvariants {
    fn key(&self) -> (&[(usize, i64)], &[(usize, u64)], Option<&MVector>) {
        (&self.dimensions, &self.colengths, self.m.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyReport {
    pub samples: Vec<SampleInvariants>,
    /// Every sample passed the EIDS check; otherwise the comparison is unreliable.
    pub reliable: bool,
    /// All computable invariant vectors agree across samples.
    pub necessary_conditions_hold: bool,
    /// Invariants of the characterization that were not computed, so sufficiency
    /// is never claimed.
    pub not_computed: Vec<&'static str>,
}

/// Compares computable invariants across the specializations of a family.
/// Colengths are local at the origin, so points of a stratum that move away from
/// the origin are not counted.
pub fn whitney_report(
    m: &PresentationMatrix,
    samples: &[ParameterPoint],
    euler: Option<&[EulerData]>,
) -> Result<WhitneyReport> {
    if let Some(data) = euler {
        if data.len() != samples.len() {
            return Err(Error::LengthMismatch {
                what: "per-sample Euler data",
                expected: samples.len(),
                actual: data.len(),
            });
        }
    }
    let sys = build_euler_system(m)?;
    let mut out = Vec::with_capacity(samples.len());
    for (s, point) in samples.iter().enumerate() {
        let fiber = m.specialize(point)?;
        let eids = match strata::eids_check(&fiber) {
            Ok(v) => v.overall,
            Err(e) if e.kind() == crate::ErrorKind::Precondition => false,
            Err(e) => return Err(e),
        };
        let mut dimensions = Vec::new();
        let mut colengths = Vec::new();
        for i in 1..=fiber.dtype().t() {
            let st = detmodel::stratum(&fiber, i)?;
            dimensions.push((i, st.dimension()?));
            if st.expected_dim == 0 {
                colengths.push((i, st.ideal.local_colength()?));
            }
        }
        let m_vec = match euler {
            Some(data) => {
                let c: BTreeMap<usize, u64> = colengths.iter().copied().collect();
                Some(solve_for_m(&sys, &data[s], &c)?)
            }
            None => None,
        };
        out.push(SampleInvariants {
            point: point.clone(),
            dimensions,
            colengths,
            m: m_vec,
            eids,
        });
    }
    let reliable = out.iter().all(|s| s.eids);
    let necessary_conditions_hold = out.windows(2).all(|w| w[0].key() == w[1].key());
    let mut not_computed = vec!["e(JM, N) multiplicities", "polar intersection numbers"];
    if euler.is_none() {
        not_computed.push("polar multiplicities (no Euler data)");
    }
    Ok(WhitneyReport {
        samples: out,
        reliable,
        necessary_conditions_hold,
        not_computed,
    })
}
