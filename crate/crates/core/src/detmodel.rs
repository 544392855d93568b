//! Determinantal models: presentation matrices, rank strata and the generator
//! matrices of the Jacobian module and of determinantal deformations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::groebner::Ideal;
use crate::polyring::{Coeff, Polynomial, Role, VariableSet};
use crate::{Error, Result};

/// The type `(n+k, n, t)`: matrices with `n+k` rows and `n` columns, and the
/// variety where the `t × t` minors vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeterminantalType {
    n: usize,
    k: usize,
    t: usize,
}

impl DeterminantalType {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::range("column count n", n, 1, i64::MAX));
        }
        if t == 0 || t > n {
            return Err(Error::range("t", t, 1, n as i64));
        }
        Ok(DeterminantalType { n, k, t })
    }

    /// The type of a `rows × cols` matrix in either orientation: `n` is the
    /// smaller side and `k` the difference.
    pub fn from_shape(rows: usize, cols: usize, t: usize) -> Result<Self> {
        DeterminantalType::new(rows.min(cols), rows.abs_diff(cols), t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Codimension of the rank stratum `Σⁱ` in matrix space, `(n−i+1)(n+k−i+1)`.
    /// Defined for `1 ≤ i ≤ n`.
    pub fn expected_codim(&self, i: usize) -> i64 {
        let (n, k, i) = (self.n as i64, self.k as i64, i as i64);
        (n - i + 1) * (n + k - i + 1)
    }

    pub fn expected_dim(&self, q: usize, i: usize) -> i64 {
        q as i64 - self.expected_codim(i)
    }

    pub fn is_present(&self, q: usize, i: usize) -> bool {
        self.expected_dim(q, i) >= 0
    }

    /// Stratum indices `1..=t` whose expected dimension is non-negative, ascending.
    pub fn present_strata(&self, q: usize) -> Vec<usize> {
        (1..=self.t).filter(|&i| self.is_present(q, i)).collect()
    }

    pub(crate) fn check_stratum(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.t {
            return Err(Error::range("stratum index", i, 1, self.t as i64));
        }
        Ok(())
    }
}

impl fmt::Display for DeterminantalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n + self.k, self.n, self.t)
    }
}

/// Rational values for family parameters, keyed by name.
pub type ParameterPoint = BTreeMap<String, Coeff>;

/// A polynomial matrix together with its determinantal type. The matrix is kept
/// in the orientation it was given; the ambient dimension `q` counts the
/// ambient variables of the variable set, family parameters excluded.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationMatrix {
    vars: VariableSet,
    dtype: DeterminantalType,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PresentationMatrix {
    pub fn new(vars: &VariableSet, t: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::Invalid("presentation matrix is empty".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch {
                what: "matrix row",
                expected: ncols,
                actual: bad.len(),
            });
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.vars() != vars) {
            return Err(crate::polyring::PolyError::VariableSetMismatch.into());
        }
        let dtype = DeterminantalType::from_shape(nrows, ncols, t)?;
        Ok(PresentationMatrix {
            vars: vars.clone(),
            dtype,
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Parses row-major entries over `vars`.
    pub fn parse(vars: &VariableSet, t: usize, rows: &[&[&str]]) -> Result<Self> {
        let grid = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| crate::polyring::parse_polynomial(e, vars))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PresentationMatrix::new(vars, t, grid)
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn dtype(&self) -> DeterminantalType {
        self.dtype
    }

    pub fn q(&self) -> usize {
        self.vars.ambient_count()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Polynomial]> {
        self.entries.chunks(self.cols)
    }

    pub fn is_specialized(&self) -> bool {
        !self.vars.has_parameters()
    }

    pub fn require_specialized(&self) -> Result<()> {
        match self.vars.parameter_indices().first() {
            Some(&i) => Err(Error::Unspecialized(self.vars.name(i).to_string())),
            None => Ok(()),
        }
    }

    /// Substitutes rational values for every family parameter. The result lives
    /// over the ambient variables alone.
    pub fn specialize(&self, values: &ParameterPoint) -> Result<PresentationMatrix> {
        for name in values.keys() {
            match self.vars.index_of(name) {
                None => {
                    return Err(crate::polyring::PolyError::UnknownVariable(name.clone()).into())
                }
                Some(i) if self.vars.role(i) != Role::Parameter => {
                    return Err(Error::Invalid(format!(
                        "`{name}` is not a family parameter"
                    )))
                }
                Some(_) => {}
            }
        }
        let params = self.vars.parameter_indices();
        if let Some(&missing) = params
            .iter()
            .find(|&&i| !values.contains_key(self.vars.name(i)))
        {
            return Err(Error::Unspecialized(self.vars.name(missing).to_string()));
        }
        let target = self.vars.without(&params);
        let assignment: HashMap<String, Polynomial> = values
            .iter()
            .map(|(name, c)| (name.clone(), Polynomial::constant(&target, c.clone())))
            .collect();
        self.map_entries(&target, |e| Ok(e.substitute_into(&assignment, &target)?))
    }

    /// A matrix of the same shape and `t` over `target`, entry by entry.
    pub fn map_entries(
        &self,
        target: &VariableSet,
        mut f: impl FnMut(&Polynomial) -> Result<Polynomial>,
    ) -> Result<PresentationMatrix> {
        let entries = self
            .entries
            .iter()
            .map(&mut f)
            .collect::<Result<Vec<_>>>()?;
        let grid = entries
            .chunks(self.cols)
            .map(<[Polynomial]>::to_vec)
            .collect();
        PresentationMatrix::new(target, self.dtype.t, grid)
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The rank stratum `_iX = M⁻¹(Σⁱ)`, cut out by the `i × i` minors.
#[derive(Clone, Debug)]
pub struct StratumModel {
    pub index: usize,
    pub ideal: Ideal,
    pub expected_codim: i64,
    pub expected_dim: i64,
}

impl StratumModel {
    pub fn is_present(&self) -> bool {
        self.expected_dim >= 0
    }

    /// Krull dimension of the stratum ideal (−1 when the stratum is empty).
    pub fn dimension(&self) -> Result<i64> {
        self.ideal.dimension()
    }
}

/// A matrix of polynomials whose columns are generators of a submodule of a free
/// module, one row per defining equation.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorMatrix {
    vars: VariableSet,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl GeneratorMatrix {
    pub fn new(
        vars: &VariableSet,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                what: "generator matrix",
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        if entries.iter().any(|e| e.vars() != vars) {
            return Err(crate::polyring::PolyError::VariableSetMismatch.into());
        }
        Ok(GeneratorMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Polynomial) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &GeneratorMatrix) -> Result<GeneratorMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                what: "matrix product inner dimension",
                expected: self.cols,
                actual: other.rows,
            });
        }
        if self.vars != other.vars {
            return Err(crate::polyring::PolyError::VariableSetMismatch.into());
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Polynomial::zero(&self.vars);
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), other.get(j, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        GeneratorMatrix::new(&self.vars, self.rows, other.cols, entries)
    }

    /// First row-major position where the two matrices differ, or `None` if equal.
    /// Matrices of different shape differ at `(0, 0)`.
    pub fn first_mismatch(&self, other: &GeneratorMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.cols, p % self.cols))
    }
}

/// Increasing `size`-subsets of `0..n`, in lexicographic order.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Determinant of the square submatrix on `rows × cols` by cofactor expansion
/// along the first row. The empty determinant is 1.
fn determinant(
    vars: &VariableSet,
    entry: &impl Fn(usize, usize) -> Polynomial,
    rows: &[usize],
    cols: &[usize],
) -> Polynomial {
    match rows.len() {
        0 => Polynomial::one(vars),
        1 => entry(rows[0], cols[0]),
        _ => {
            let mut acc = Polynomial::zero(vars);
            for (j, &c) in cols.iter().enumerate() {
                let a = entry(rows[0], c);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = &a * &determinant(vars, entry, &rows[1..], &rest);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

pub(crate) fn all_minors(
    vars: &VariableSet,
    nrows: usize,
    ncols: usize,
    entry: impl Fn(usize, usize) -> Polynomial,
    size: usize,
) -> Vec<Polynomial> {
    let col_sets = subsets(ncols, size);
    let mut out = Vec::new();
    for rs in subsets(nrows, size) {
        for cs in &col_sets {
            out.push(determinant(vars, &entry, &rs, cs));
        }
    }
    out
}

/// All `size × size` minors, ordered lexicographically by (row subset, column subset).
pub fn minors(m: &PresentationMatrix, size: usize) -> Result<Vec<Polynomial>> {
    let n = m.dtype.n;
    if size == 0 || size > n {
        return Err(Error::range("minor size", size, 1, n as i64));
    }
    Ok(all_minors(
        &m.vars,
        m.rows,
        m.cols,
        |r, c| m.entry(r, c).clone(),
        size,
    ))
}

pub fn stratum(m: &PresentationMatrix, i: usize) -> Result<StratumModel> {
    m.dtype.check_stratum(i)?;
    Ok(StratumModel {
        index: i,
        ideal: Ideal::new(&m.vars, minors(m, i)?)?,
        expected_codim: m.dtype.expected_codim(i),
        expected_dim: m.dtype.expected_dim(m.q(), i),
    })
}

/// Jacobian matrix: one row per polynomial, one column per ambient variable.
pub fn jacobian_generators(polys: &[Polynomial], vars: &VariableSet) -> Result<GeneratorMatrix> {
    if polys.is_empty() {
        return Err(Error::Invalid("Jacobian of an empty list".into()));
    }
    let ambient = vars.ambient_indices();
    let mut entries = Vec::with_capacity(polys.len() * ambient.len());
    for p in polys {
        if p.vars() != vars {
            return Err(crate::polyring::PolyError::VariableSetMismatch.into());
        }
        entries.extend(ambient.iter().map(|&j| p.derivative_at(j)));
    }
    GeneratorMatrix::new(vars, polys.len(), ambient.len(), entries)
}

/// Derivative of the `i × i` minors of a generic matrix `T` with respect to each
/// entry `T_rs` (columns in row-major order of `(r, s)`), evaluated at `T = M`.
/// The derivative of the minor on `R × C` by `T_rs` is the signed complementary
/// minor when `r ∈ R` and `s ∈ C`, and zero otherwise.
pub fn n_generators(m: &PresentationMatrix, i: usize) -> Result<GeneratorMatrix> {
    m.dtype.check_stratum(i)?;
    let vars = &m.vars;
    let entry = |r: usize, c: usize| m.entry(r, c).clone();
    let col_sets = subsets(m.cols, i);
    let positions = m.rows * m.cols;
    let mut entries = Vec::new();
    for rs in subsets(m.rows, i) {
        for cs in &col_sets {
            let mut row = vec![Polynomial::zero(vars); positions];
            for (a, &r) in rs.iter().enumerate() {
                let rest_r: Vec<usize> = rs.iter().copied().filter(|&x| x != r).collect();
                for (b, &c) in cs.iter().enumerate() {
                    let rest_c: Vec<usize> = cs.iter().copied().filter(|&x| x != c).collect();
                    let minor = determinant(vars, &entry, &rest_r, &rest_c);
                    row[r * m.cols + c] = if (a + b) % 2 == 0 { minor } else { -&minor };
                }
            }
            entries.extend(row);
        }
    }
    let rows = entries.len() / positions;
    GeneratorMatrix::new(vars, rows, positions, entries)
}

/// Gradients of the entries over the ambient variables, one row per matrix
/// position in row-major order.
pub fn dm_matrix(m: &PresentationMatrix) -> GeneratorMatrix {
    jacobian_generators(&m.entries, &m.vars).expect("matrix has entries over its own variables")
}

/// Outcome of comparing `J(minors)` with `N · DM`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRule {
    pub holds: bool,
    /// First mismatching `(minor, variable)` position.
    pub mismatch: Option<(usize, usize)>,
}

/// Checks the chain rule identity `J(minors_i(M)) = N_i(M) · DM` exactly.
pub fn chain_rule_check(m: &PresentationMatrix, i: usize) -> Result<ChainRule> {
    chain_rule_check_with(m, i, &dm_matrix(m))
}

/// As [`chain_rule_check`], with a caller-supplied matrix in place of `DM`.
pub fn chain_rule_check_with(
    m: &PresentationMatrix,
    i: usize,
    dm: &GeneratorMatrix,
) -> Result<ChainRule> {
    m.dtype.check_stratum(i)?;
    let jacobian = jacobian_generators(&minors(m, i)?, &m.vars)?;
    let product = n_generators(m, i)?.mul(dm)?;
    let mismatch = jacobian.first_mismatch(&product);
    Ok(ChainRule {
        holds: mismatch.is_none(),
        mismatch,
    })
}

/// The `size × size` minors of the generic matrix of the given shape, in
/// variables `T_r_s` (1-based), as an oracle for the cofactor formulas.
pub fn generic_minors(rows: usize, cols: usize, size: usize) -> (VariableSet, Vec<Polynomial>) {
    let names: Vec<String> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| format!("T_{}_{}", r + 1, c + 1)))
        .collect();
    let vars = VariableSet::ambient(names).expect("generated names are valid");
    let minors = all_minors(
        &vars,
        rows,
        cols,
        |r, c| Polynomial::variable_at(&vars, r * cols + c),
        size,
    );
    (vars, minors)
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
    fn omega_type_and_dimensions() {
        let m = omega(1);
        let d = m.dtype();
        assert_eq!((d.n(), d.k(), d.t()), (2, 1, 2));
        assert_eq!(d.to_string(), "(3, 2, 2)");
        assert_eq!(m.q(), 6);
        assert_eq!(stratum(&m, 2).unwrap().expected_dim, 4);
        let s1 = stratum(&m, 1).unwrap();
        assert_eq!((s1.expected_codim, s1.expected_dim), (6, 0));
        assert!(stratum(&m, 3).is_err());
        assert!(stratum(&m, 0).is_err());
    }

    #[test]
    fn absent_stratum_in_five_variables() {
        let d = DeterminantalType::new(2, 1, 2).unwrap();
        assert_eq!(d.expected_dim(5, 1), -1);
        assert!(!d.is_present(5, 1));
        assert_eq!(d.present_strata(5), [2]);
    }

    #[test]
    fn type_validation() {
        assert!(DeterminantalType::new(0, 1, 1).is_err());
        assert!(DeterminantalType::new(2, 1, 3).is_err());
        assert!(DeterminantalType::new(2, 1, 0).is_err());
        assert_eq!(
            DeterminantalType::from_shape(2, 3, 2),
            DeterminantalType::from_shape(3, 2, 2)
        );
    }

    #[test]
    fn omega_minors() {
        let m = omega(1);
        let v = m.vars();
        let p = |s: &str| crate::polyring::parse_polynomial(s, v).unwrap();
        assert_eq!(
            minors(&m, 2).unwrap(),
            [
                p("x1*x5 - x2*x4"),
                p("x1*(x1 + y^2) - x3*x4"),
                p("x2*(x1 + y^2) - x3*x5")
            ]
        );
        assert_eq!(minors(&m, 1).unwrap(), m.entries());
        assert!(minors(&m, 3).is_err());
    }

    #[test]
    fn two_by_two_determinant() {
        let (_, g) = generic_minors(2, 2, 2);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].to_string(), "-T_1_2*T_2_1 + T_1_1*T_2_2");
    }

    #[test]
    fn n_generators_of_generic_determinant_are_cofactors() {
        let vars = VariableSet::ambient(["a", "b", "c", "d"]).unwrap();
        let m = PresentationMatrix::parse(&vars, 2, &[&["a", "b"], &["c", "d"]]).unwrap();
        let n = n_generators(&m, 2).unwrap();
        let got: Vec<String> = (0..4).map(|c| n.get(0, c).to_string()).collect();
        assert_eq!(got, ["d", "-c", "-b", "a"]);
    }

    #[test]
    fn n_generators_for_entries_are_unit_vectors() {
        let m = omega(2);
        let n = n_generators(&m, 1).unwrap();
        assert_eq!((n.nrows(), n.ncols()), (6, 6));
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(n.get(r, c).is_zero(), r != c);
                if r == c {
                    assert_eq!(*n.get(r, c), Polynomial::one(m.vars()));
                }
            }
        }
    }

    #[test]
    fn dm_row_of_last_entry() {
        let m = omega(1);
        let dm = dm_matrix(&m);
        assert_eq!((dm.nrows(), dm.ncols()), (6, 6));
        let row: Vec<String> = (0..6).map(|c| dm.get(5, c).to_string()).collect();
        assert_eq!(row, ["1", "0", "0", "0", "0", "2*y"]);
    }

    #[test]
    fn jacobian_examples() {
        let m = omega(1);
        let j = jacobian_generators(&minors(&m, 2).unwrap(), m.vars()).unwrap();
        assert_eq!((j.nrows(), j.ncols()), (3, 6));
        assert_eq!(
            *j.get(1, 0),
            crate::polyring::parse_polynomial("2*x1 + y^2", m.vars()).unwrap()
        );
        let consts = [Polynomial::from_integer(m.vars(), 5)];
        assert!(jacobian_generators(&consts, m.vars()).unwrap().is_zero());
        assert!(jacobian_generators(&[], m.vars()).is_err());
    }

    #[test]
    fn chain_rule_on_omega_and_corruption() {
        for k in 1..=5 {
            assert!(chain_rule_check(&omega(k), 2).unwrap().holds);
            assert!(chain_rule_check(&omega(k), 1).unwrap().holds);
        }
        let m = omega(1);
        let mut dm = dm_matrix(&m);
        dm.set(5, 5, Polynomial::zero(m.vars()));
        let outcome = chain_rule_check_with(&m, 2, &dm).unwrap();
        assert!(!outcome.holds);
        // Minor 2 is x1*(x1 + y^2) - x3*x4: its y-derivative is the first casualty.
        assert_eq!(outcome.mismatch, Some((1, 5)));
    }

    #[test]
    fn specialization() {
        let vars = VariableSet::new(["x", "y"], ["u"]).unwrap();
        let m = PresentationMatrix::parse(&vars, 1, &[&["x + u*y"], &["y"]]).unwrap();
        assert_eq!(m.q(), 2);
        assert_eq!(
            m.require_specialized(),
            Err(Error::Unspecialized("u".into()))
        );
        let mut values = ParameterPoint::new();
        assert!(m.specialize(&values).is_err());
        values.insert("u".to_string(), Coeff::from_integer(3.into()));
        let s = m.specialize(&values).unwrap();
        assert!(s.is_specialized());
        assert_eq!(s.entry(0, 0).to_string(), "x + 3*y");
        values.insert("x".to_string(), Coeff::from_integer(3.into()));
        assert!(m.specialize(&values).is_err());
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), [vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), [Vec::<usize>::new()]);
    }
}
