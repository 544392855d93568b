use std::collections::BTreeMap;

use detsing_core::detmodel::{self, ParameterPoint, PresentationMatrix};
use detsing_core::genericity::{self, Hyperplane};
use detsing_core::groebner::Limits;
use detsing_core::invariants::{self, EulerData, EulerSystem, PolarBound};
use detsing_core::polyring::MonomialOrdering;
use detsing_core::strata;
use detsing_core::{Error, ErrorKind};
use thiserror::Error;

use crate::model::{parse_model, ModelError, ModelFile};
use crate::report::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Minors { size: usize },
    Dim { stratum: usize },
    Colength { stratum: usize },
    EidsCheck,
    EulerSolve,
    Slice { hyperplane: String },
    ScreenHyperplanes,
    FamilyScan,
    Consistency,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Minors { .. } => "minors",
            Command::Dim { .. } => "dim",
            Command::Colength { .. } => "colength",
            Command::EidsCheck => "eids-check",
            Command::EulerSolve => "euler-solve",
            Command::Slice { .. } => "slice",
            Command::ScreenHyperplanes => "screen-hyperplanes",
            Command::FamilyScan => "family-scan",
            Command::Consistency => "consistency",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub ordering: MonomialOrdering,
    pub max_degree: Option<u32>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            ordering: MonomialOrdering::GrevLex,
            max_degree: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Model(_) | RunError::Usage(_) => 1,
            RunError::Core(e) => match e.kind() {
                ErrorKind::Validation => 1,
                ErrorKind::Precondition => 2,
                ErrorKind::Limit => 3,
            },
        }
    }
}

/// Parses the model and runs one command under the requested limits.
pub fn run(command: &Command, model_text: &str, options: &Options) -> Result<Report, RunError> {
    let model = parse_model(model_text)?;
    let limits = Limits {
        max_degree: options.max_degree,
        ordering: options.ordering,
        ..Limits::default()
    };
    limits.scope(|| execute(command, &model, options))
}

fn execute(command: &Command, model: &ModelFile, options: &Options) -> Result<Report, RunError> {
    let m = &model.matrix;
    let mut report = Report {
        schema: SCHEMA.to_string(),
        command: command.name().to_string(),
        settings: Settings {
            ordering: match options.ordering {
                MonomialOrdering::Lex => "lex".into(),
                _ => "grevlex".into(),
            },
            max_degree: options.max_degree,
        },
        model: echo(model),
        minors: None,
        strata: None,
        invariants: None,
        slice: None,
        genericity: None,
        family: None,
        warnings: Vec::new(),
    };
    let mut warnings = Warnings::default();
    match command {
        Command::Minors { size } => {
            let gens = detmodel::minors(m, *size)?;
            report.minors = Some(MinorsSection {
                size: *size,
                generators: gens.iter().map(ToString::to_string).collect(),
            });
        }
        Command::Dim { stratum } => {
            m.require_specialized()?;
            let s = detmodel::stratum(m, *stratum)?;
            let mut r = bare_record(&s);
            r.actual_dim = Quantity::computed(s.dimension()?);
            report.strata = Some(StrataSection {
                records: vec![r],
                eids: None,
            });
        }
        Command::Colength { stratum } => {
            let c = invariants::m0_colength(m, *stratum)?;
            let s = detmodel::stratum(m, *stratum)?;
            let mut r = bare_record(&s);
            r.actual_dim = Quantity::computed(s.dimension()?);
            r.colength = Some(Quantity::computed(c));
            report.strata = Some(StrataSection {
                records: vec![r],
                eids: None,
            });
        }
        Command::EidsCheck => {
            m.require_specialized()?;
            report.strata = Some(strata_section(m, true)?);
        }
        Command::EulerSolve => {
            m.require_specialized()?;
            report.invariants = Some(invariants_section(model, false, &mut warnings)?);
        }
        Command::Consistency => {
            report.invariants = Some(invariants_section(model, true, &mut warnings)?);
        }
        Command::Slice { hyperplane } => {
            let h = Hyperplane::parse(hyperplane, m.vars())?;
            let sliced = genericity::slice(m, &h)?;
            report.slice = Some(SliceSection {
                hyperplane: h.linear_form(m.vars())?.to_string(),
                pivot: m.vars().name(h.pivot()).to_string(),
                variables: sliced.vars().names().map(str::to_string).collect(),
                q: sliced.q(),
                matrix: matrix_strings(&sliced),
            });
        }
        Command::ScreenHyperplanes => {
            if model.hyperplanes.is_empty() {
                return Err(RunError::Usage(
                    "screen-hyperplanes needs a [hyperplanes] section".into(),
                ));
            }
            m.require_specialized()?;
            report.genericity = Some(genericity_section(model, &mut warnings)?);
        }
        Command::FamilyScan => {
            if model.parameters.is_empty() || model.samples.is_empty() {
                return Err(RunError::Usage(
                    "family-scan needs [parameters] and a non-empty [samples] section".into(),
                ));
            }
            report.family = Some(family_section(model, &mut warnings)?);
        }
        Command::Analyze => analyze(model, &mut report, &mut warnings)?,
    }
    report.warnings = warnings.0.into_iter().collect();
    Ok(report)
}

/// Deduplicated, sorted warnings.
#[derive(Default)]
struct Warnings(std::collections::BTreeSet<String>);

impl Warnings {
    fn add(&mut self, w: impl Into<String>) {
        self.0.insert(w.into());
    }
}

const PARAMETERIZED: &str = "the model has parameters; see the family section";

fn analyze(
    model: &ModelFile,
    report: &mut Report,
    warnings: &mut Warnings,
) -> Result<(), RunError> {
    let m = &model.matrix;
    if m.is_specialized() {
        report.strata = Some(strata_section(m, true)?);
    } else {
        let mut records = Vec::new();
        for i in 1..=m.dtype().t() {
            let mut r = bare_record(&detmodel::stratum(m, i)?);
            r.actual_dim = Quantity::missing(PARAMETERIZED);
            r.eids = Some(Quantity::missing(PARAMETERIZED));
            if r.expected_dim == 0 {
                r.colength = Some(Quantity::missing(PARAMETERIZED));
            }
            records.push(r);
        }
        report.strata = Some(StrataSection {
            records,
            eids: Some(Quantity::missing(PARAMETERIZED)),
        });
    }
    report.invariants = Some(invariants_section(model, true, warnings)?);
    if !model.hyperplanes.is_empty() {
        report.genericity = Some(genericity_section(model, warnings)?);
    }
    if !model.parameters.is_empty() && !model.samples.is_empty() {
        report.family = Some(family_section(model, warnings)?);
    }
    Ok(())
}

/// Turns precondition failures into a missing quantity; other errors propagate.
fn soft<T>(r: detsing_core::Result<T>) -> Result<Quantity<T>, RunError> {
    match r {
        Ok(v) => Ok(Quantity::computed(v)),
        Err(e) if e.kind() == ErrorKind::Precondition => Ok(Quantity::missing(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn echo(model: &ModelFile) -> ModelEcho {
    let d = model.matrix.dtype();
    ModelEcho {
        variables: model.variables.clone(),
        parameters: model.parameters.clone(),
        rows: model.rows,
        cols: model.cols,
        dtype: DtypeEcho {
            n: d.n(),
            k: d.k(),
            t: d.t(),
        },
        q: model.matrix.q(),
        matrix: matrix_strings(&model.matrix),
    }
}

fn matrix_strings(m: &PresentationMatrix) -> Vec<Vec<String>> {
    m.rows()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

fn point_strings(p: &ParameterPoint) -> BTreeMap<String, String> {
    p.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

fn bare_record(s: &detmodel::StratumModel) -> StratumRecord {
    StratumRecord {
        index: s.index,
        generators: s.ideal.generators().len(),
        expected_codim: s.expected_codim,
        expected_dim: s.expected_dim,
        present: s.is_present(),
        actual_dim: Quantity::missing("not requested"),
        eids: None,
        colength: None,
    }
}

fn strata_section(m: &PresentationMatrix, with_colength: bool) -> Result<StrataSection, RunError> {
    let verdict = soft(strata::eids_check(m))?;
    let mut records = Vec::new();
    for i in 1..=m.dtype().t() {
        let s = detmodel::stratum(m, i)?;
        let mut r = bare_record(&s);
        r.actual_dim = Quantity::computed(s.dimension()?);
        r.eids = Some(match &verdict.value {
            Some(v) => {
                let sv = v
                    .strata
                    .iter()
                    .find(|x| x.index == i)
                    .expect("verdict for every stratum");
                Quantity::computed(sv.transversal_off_origin)
            }
            None => Quantity::missing(verdict.note.clone().unwrap_or_default()),
        });
        if with_colength && s.expected_dim == 0 {
            r.colength = Some(soft(invariants::m0_colength(m, i))?);
        }
        records.push(r);
    }
    let eids = match verdict.value {
        Some(v) => Quantity::computed(v.overall),
        None => Quantity {
            value: None,
            provenance: verdict.provenance,
            note: verdict.note,
        },
    };
    Ok(StrataSection {
        records,
        eids: Some(eids),
    })
}

fn euler_input(e: &EulerData) -> EulerInput {
    EulerInput {
        reduced: e.reduced,
        chi_stab: e.chi_stab.clone(),
        chi_section: e.chi_section.clone(),
    }
}

/// Forward substitution over the longest prefix of rows whose left-hand side is known.
fn partial_solve(sys: &EulerSystem, lhs: &[Option<i64>]) -> Vec<i64> {
    let known = lhs.iter().take_while(|v| v.is_some()).count();
    let prefix = EulerSystem {
        strata: sys.strata[..known].to_vec(),
        dims: sys.dims[..known].to_vec(),
        coefficients: sys.coefficients[..known]
            .iter()
            .map(|r| r[..known].to_vec())
            .collect(),
    };
    let values: Vec<i64> = lhs[..known]
        .iter()
        .map(|v| v.expect("prefix is known"))
        .collect();
    prefix.solve_lower(&values).expect("prefix lengths agree")
}

fn invariants_section(
    model: &ModelFile,
    full: bool,
    warnings: &mut Warnings,
) -> Result<InvariantsSection, RunError> {
    let m = &model.matrix;
    let d = m.dtype();
    let (n, k, t) = (d.n(), d.k(), d.t());
    let mut nit = Vec::new();
    for j in 1..=t {
        for i in 1..=j {
            nit.push(NitEntry {
                i,
                t: j,
                value: invariants::nit_coefficient(n, k, j, i)?,
            });
        }
    }
    if model.euler.is_some() {
        warnings.add("Euler characteristics in [euler] are user-supplied topological input; m-values solved from them depend on it");
    }
    let sys = match invariants::build_euler_system(m) {
        Ok(s) => s,
        Err(Error::NoPresentStrata) => {
            return Ok(InvariantsSection {
                nit,
                euler_system: Quantity::missing(Error::NoPresentStrata.to_string()),
                euler_input: model.euler.as_ref().map(euler_input),
                colengths: Vec::new(),
                lhs: Quantity::missing(Error::NoPresentStrata.to_string()),
                m: Vec::new(),
                polar_terms: Vec::new(),
                e_pair: Vec::new(),
                md_consistency: Vec::new(),
                conormal_fiber_gap: full
                    .then(|| Quantity::computed(strata::conormal_fiber_gap(d) as u64)),
                stably_isolated: Vec::new(),
            })
        }
        Err(e) => return Err(e.into()),
    };

    let mut colengths = Vec::new();
    let mut known_colengths = BTreeMap::new();
    for (&i, &dim) in sys.strata.iter().zip(&sys.dims) {
        if dim != 0 {
            continue;
        }
        let q = if m.is_specialized() {
            soft(invariants::m0_colength(m, i))?
        } else {
            Quantity::missing(PARAMETERIZED)
        };
        if let Some(c) = q.value {
            known_colengths.insert(i, c);
        }
        colengths.push(StratumValue::new(i, q));
    }

    // Per-row left-hand sides, where they can be formed.
    let mut row_lhs: Vec<Option<i64>> = Vec::new();
    let mut row_note: Vec<Option<String>> = Vec::new();
    for (&i, &dim) in sys.strata.iter().zip(&sys.dims) {
        let r = if dim == 0 {
            known_colengths
                .get(&i)
                .map(|&c| c as i64)
                .ok_or_else(|| Error::MissingColength(i).to_string())
        } else {
            match &model.euler {
                Some(e) => e.combination(i, dim).map_err(|e| e.to_string()),
                None => Err("no [euler] section".to_string()),
            }
        };
        row_note.push(r.as_ref().err().cloned());
        row_lhs.push(r.ok());
    }
    let lhs = if row_lhs.iter().all(Option::is_some) {
        Quantity::computed(row_lhs.iter().map(|v| v.expect("all known")).collect())
    } else {
        let first = row_note
            .iter()
            .flatten()
            .next()
            .cloned()
            .unwrap_or_default();
        Quantity::missing(first)
    };

    let solved = partial_solve(&sys, &row_lhs);
    let mut m_values = Vec::new();
    let mut m_known = BTreeMap::new();
    let negative = solved.iter().position(|&v| v < 0);
    for (r, &i) in sys.strata.iter().enumerate() {
        let q = match solved.get(r) {
            Some(_) if negative.is_some_and(|p| p <= r) => {
                let p = negative.expect("checked");
                Quantity::missing(
                    Error::NegativeMultiplicity {
                        stratum: sys.strata[p],
                        value: solved[p],
                    }
                    .to_string(),
                )
            }
            Some(&v) => {
                m_known.insert(i, v);
                Quantity::computed(v)
            }
            None => Quantity::missing(
                row_note[..=r]
                    .iter()
                    .flatten()
                    .next()
                    .cloned()
                    .unwrap_or_default(),
            ),
        };
        m_values.push(StratumValue::new(i, q));
    }

    let mut section = InvariantsSection {
        nit,
        euler_system: Quantity::computed(EulerSystemRecord {
            strata: sys.strata.clone(),
            dims: sys.dims.clone(),
            coefficients: sys.coefficients.clone(),
        }),
        euler_input: model.euler.as_ref().map(euler_input),
        colengths,
        lhs,
        m: m_values,
        polar_terms: Vec::new(),
        e_pair: Vec::new(),
        md_consistency: Vec::new(),
        conormal_fiber_gap: None,
        stably_isolated: Vec::new(),
    };
    if !full {
        return Ok(section);
    }

    let supplied = &model.supplied;
    for (&i, _) in supplied.e_pair.iter().chain(&supplied.polar) {
        if !sys.strata.contains(&i) {
            return Err(RunError::Usage(format!(
                "[supplied] names stratum {i}, which is not present"
            )));
        }
    }
    for (&i, &dim) in sys.strata.iter().zip(&sys.dims) {
        if dim == 0 {
            continue;
        }
        let polar = match (
            invariants::polar_term_bound(d, m.q(), i),
            supplied.polar.get(&i),
        ) {
            (PolarBound::Zero, given) => {
                if given.is_some_and(|&v| v != 0) {
                    warnings.add(format!(
                        "supplied polar[{i}] ignored: the polar term vanishes for this type and q"
                    ));
                }
                Quantity::computed(0)
            }
            (PolarBound::Unknown, Some(&v)) => {
                warnings.add(format!(
                    "polar[{i}] is user-supplied; polar varieties are not computed"
                ));
                Quantity::supplied(v)
            }
            (PolarBound::Unknown, None) => Quantity::missing("polar varieties are not computed"),
        };
        let e_pair = match supplied.e_pair.get(&i) {
            Some(&v) => {
                warnings.add(format!(
                    "e_pair[{i}] is user-supplied; e(JM, N) is never computed"
                ));
                Quantity::supplied(v)
            }
            None => Quantity::missing("e(JM, N) is never computed; supply it as e_pair"),
        };
        let md = match (e_pair.value, polar.value, m_known.get(&i)) {
            (Some(e), Some(p), Some(&md)) => {
                Quantity::computed(invariants::md_consistency(e, p, md))
            }
            _ => Quantity::missing("needs e_pair, the polar term and the solved m-value"),
        };
        section.polar_terms.push(StratumValue::new(i, polar));
        section.e_pair.push(StratumValue::new(i, e_pair));
        section.md_consistency.push(StratumValue::new(i, md));
    }
    section.conormal_fiber_gap = Some(Quantity::computed(strata::conormal_fiber_gap(d) as u64));
    for i in 1..n {
        let q = if m.is_specialized() {
            soft(strata::stably_isolated_check(m, i))?
        } else {
            Quantity::missing(PARAMETERIZED)
        };
        section.stably_isolated.push(StratumValue::new(i, q));
    }
    Ok(section)
}

fn genericity_section(
    model: &ModelFile,
    warnings: &mut Warnings,
) -> Result<GenericitySection, RunError> {
    let m = &model.matrix;
    let mut records = Vec::new();
    if !m.is_specialized() {
        for (source, h) in &model.hyperplanes {
            records.push(HyperplaneRecord {
                source: source.clone(),
                form: h.linear_form(m.vars())?.to_string(),
                screen_pass: Quantity::missing(PARAMETERIZED),
                sliced: Vec::new(),
                eids: Quantity::missing(PARAMETERIZED),
                colengths: Vec::new(),
                minimal: Quantity::missing(PARAMETERIZED),
            });
        }
        return Ok(GenericitySection {
            hyperplanes: records,
        });
    }
    warnings.add(
        "a hyperplane screen pass is a necessary condition only; limits of tangent hyperplanes are not computed",
    );
    warnings.add(
        "section minimality compares colengths and dimensions, not Euler characteristics of stabilized sections",
    );
    let hs: Vec<Hyperplane> = model.hyperplanes.iter().map(|(_, h)| h.clone()).collect();
    let compare = genericity::section_invariant_compare(m, &hs, None)?;
    for ((source, h), entry) in model.hyperplanes.iter().zip(&compare.entries) {
        let screen = genericity::hyperplane_screen(m, h)?;
        let eids = match &screen.eids {
            Ok(v) => Quantity::computed(v.overall),
            Err(e) => Quantity::missing(e.to_string()),
        };
        records.push(HyperplaneRecord {
            source: source.clone(),
            form: h.linear_form(m.vars())?.to_string(),
            screen_pass: Quantity::computed(screen.pass),
            sliced: screen
                .strata
                .iter()
                .map(|s| SlicedStratumRecord {
                    index: s.index,
                    expected_dim: s.expected_dim,
                    actual_dim: s.actual_dim,
                    ok: s.ok,
                })
                .collect(),
            eids,
            colengths: entry
                .colengths
                .iter()
                .map(|&(i, c)| StratumValue::new(i, Quantity::computed(c)))
                .collect(),
            minimal: Quantity::computed(entry.minimal),
        });
    }
    Ok(GenericitySection {
        hyperplanes: records,
    })
}

fn family_section(model: &ModelFile, warnings: &mut Warnings) -> Result<FamilySection, RunError> {
    let m = &model.matrix;
    let scan = strata::good_family_scan(m, &model.samples)?;
    let data: Option<Vec<EulerData>> = model
        .euler
        .as_ref()
        .map(|e| vec![e.clone(); model.samples.len()]);
    let (whitney, euler_note) = match invariants::whitney_report(m, &model.samples, data.as_deref())
    {
        Ok(r) => (r, None),
        Err(e) if e.kind() == ErrorKind::Precondition && data.is_some() => (
            invariants::whitney_report(m, &model.samples, None)?,
            Some(e.to_string()),
        ),
        Err(e) => return Err(e.into()),
    };
    let mut samples = Vec::new();
    for (s, w) in scan.iter().zip(&whitney.samples) {
        let eids = match &s.outcome {
            Ok(v) => Quantity::computed(v.overall),
            Err(e) => Quantity::computed(false).with_note(e.to_string()),
        };
        samples.push(SampleRecord {
            point: point_strings(&s.point),
            eids,
            dimensions: w
                .dimensions
                .iter()
                .map(|&(i, d)| StratumValue::new(i, Quantity::computed(d)))
                .collect(),
            colengths: w
                .colengths
                .iter()
                .map(|&(i, c)| StratumValue::new(i, Quantity::computed(c)))
                .collect(),
            m: w.m.as_ref().map(|mv| {
                mv.strata
                    .iter()
                    .zip(&mv.values)
                    .map(|(&i, &v)| StratumValue::new(i, Quantity::computed(v)))
                    .collect()
            }),
        });
    }
    let mut constant = Quantity::computed(whitney.necessary_conditions_hold)
        .with_note("necessary conditions only");
    if let Some(n) = euler_note {
        constant = constant.with_note(format!(
            "necessary conditions only; Euler data unusable: {n}"
        ));
    }
    if !whitney.reliable {
        constant = Quantity {
            note: Some("some samples are not EIDS; comparison unreliable".into()),
            ..constant
        };
    }
    let not_computed: Vec<String> = whitney.not_computed.iter().map(|s| s.to_string()).collect();
    warnings.add(format!(
        "Whitney equisingularity is never certified; not computed: {}",
        not_computed.join(", ")
    ));
    Ok(FamilySection {
        samples,
        good_family: Quantity::computed(scan.iter().all(strata::FamilySample::passes)),
        invariants_constant: constant,
        not_computed,
    })
}
