//! Report schema. Every key is stable; optional sections are omitted when a
//! command does not produce them. Numeric results are wrapped in [`Quantity`]
//! so each one says where it came from.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "detsing-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    UserSupplied,
    NotComputable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quantity<T> {
    pub value: Option<T>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl<T> Quantity<T> {
    pub fn computed(value: T) -> Self {
        Quantity {
            value: Some(value),
            provenance: Provenance::Computed,
            note: None,
        }
    }

    pub fn supplied(value: T) -> Self {
        Quantity {
            value: Some(value),
            provenance: Provenance::UserSupplied,
            note: None,
        }
    }

    pub fn missing(note: impl Into<String>) -> Self {
        Quantity {
            value: None,
            provenance: Provenance::NotComputable,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub settings: Settings,
    pub model: ModelEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minors: Option<MinorsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<StrataSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genericity: Option<GenericitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySection>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub ordering: String,
    pub max_degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEcho {
    pub variables: Vec<String>,
    pub parameters: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    /// `(n + k, n, t)` together with its parts.
    pub dtype: DtypeEcho,
    pub q: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DtypeEcho {
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinorsSection {
    pub size: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataSection {
    pub records: Vec<StratumRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eids: Option<Quantity<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumRecord {
    pub index: usize,
    pub generators: usize,
    pub expected_codim: i64,
    pub expected_dim: i64,
    pub present: bool,
    pub actual_dim: Quantity<i64>,
    /// Transversality away from the origin, or support at the origin for an
    /// absent stratum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eids: Option<Quantity<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colength: Option<Quantity<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumValue<T> {
    pub stratum: usize,
    pub value: Option<T>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl<T> StratumValue<T> {
    pub fn new(stratum: usize, q: Quantity<T>) -> Self {
        StratumValue {
            stratum,
            value: q.value,
            provenance: q.provenance,
            note: q.note,
        }
    }
}

impl<T: Clone> StratumValue<T> {
    pub fn quantity(&self) -> Quantity<T> {
        Quantity {
            value: self.value.clone(),
            provenance: self.provenance,
            note: self.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerSystemRecord {
    pub strata: Vec<usize>,
    pub dims: Vec<i64>,
    pub coefficients: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EulerInput {
    pub reduced: bool,
    pub chi_stab: BTreeMap<usize, i64>,
    pub chi_section: BTreeMap<usize, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NitEntry {
    pub i: usize,
    pub t: usize,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantsSection {
    /// `n_{ij}` for `1 ≤ i ≤ j ≤ t`.
    pub nit: Vec<NitEntry>,
    pub euler_system: Quantity<EulerSystemRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_input: Option<EulerInput>,
    pub colengths: Vec<StratumValue<u64>>,
    pub lhs: Quantity<Vec<i64>>,
    pub m: Vec<StratumValue<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polar_terms: Vec<StratumValue<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub e_pair: Vec<StratumValue<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub md_consistency: Vec<StratumValue<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conormal_fiber_gap: Option<Quantity<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stably_isolated: Vec<StratumValue<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceSection {
    pub hyperplane: String,
    pub pivot: String,
    pub variables: Vec<String>,
    pub q: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlicedStratumRecord {
    pub index: usize,
    pub expected_dim: i64,
    pub actual_dim: i64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneRecord {
    pub source: String,
    /// Normalized linear form.
    pub form: String,
    pub screen_pass: Quantity<bool>,
    pub sliced: Vec<SlicedStratumRecord>,
    pub eids: Quantity<bool>,
    pub colengths: Vec<StratumValue<u64>>,
    pub minimal: Quantity<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenericitySection {
    pub hyperplanes: Vec<HyperplaneRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleRecord {
    pub point: BTreeMap<String, String>,
    pub eids: Quantity<bool>,
    pub dimensions: Vec<StratumValue<i64>>,
    pub colengths: Vec<StratumValue<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<StratumValue<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySection {
    pub samples: Vec<SampleRecord>,
    pub good_family: Quantity<bool>,
    pub invariants_constant: Quantity<bool>,
    pub not_computed: Vec<String>,
}

fn show<T: ToString>(q: &Quantity<T>) -> String {
    let mut s = match (&q.value, q.provenance) {
        (Some(v), Provenance::Computed) => v.to_string(),
        (Some(v), Provenance::UserSupplied) => format!("{} (user-supplied)", v.to_string()),
        (None, _) | (Some(_), Provenance::NotComputable) => "not computable".to_string(),
    };
    if let Some(n) = &q.note {
        let _ = write!(s, " [{n}]");
    }
    s
}

fn show_list(values: &[i64]) -> String {
    let parts: Vec<String> = values.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn show_values<T: ToString + Clone>(out: &mut String, label: &str, values: &[StratumValue<T>]) {
    for v in values {
        let _ = writeln!(out, "  {label}[{}] = {}", v.stratum, show(&v.quantity()));
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let m = &self.model;
        let _ = writeln!(
            o,
            "model: type ({}, {}, {}) with n = {}, k = {}, t = {}, q = {}",
            m.dtype.n + m.dtype.k,
            m.dtype.n,
            m.dtype.t,
            m.dtype.n,
            m.dtype.k,
            m.dtype.t,
            m.q
        );
        if !m.parameters.is_empty() {
            let _ = writeln!(o, "parameters: {}", m.parameters.join(", "));
        }
        for row in &m.matrix {
            let _ = writeln!(o, "  [{}]", row.join(", "));
        }
        if let Some(s) = &self.minors {
            let _ = writeln!(o, "{} minors of size {}:", s.generators.len(), s.size);
            for g in &s.generators {
                let _ = writeln!(o, "  {g}");
            }
        }
        if let Some(s) = &self.strata {
            let _ = writeln!(o, "strata:");
            for r in &s.records {
                let _ = write!(
                    o,
                    "  {}X: {} generators, expected dim {}, dim {}",
                    r.index,
                    r.generators,
                    r.expected_dim,
                    show(&r.actual_dim)
                );
                if let Some(e) = &r.eids {
                    let _ = write!(o, ", eids {}", show(e));
                }
                if let Some(c) = &r.colength {
                    let _ = write!(o, ", colength {}", show(c));
                }
                o.push('\n');
            }
            if let Some(e) = &s.eids {
                let _ = writeln!(o, "eids: {}", show(e));
            }
        }
        if let Some(inv) = &self.invariants {
            let _ = writeln!(o, "invariants:");
            let nit: Vec<String> = inv
                .nit
                .iter()
                .map(|e| format!("n[{},{}] = {}", e.i, e.t, e.value))
                .collect();
            let _ = writeln!(o, "  {}", nit.join(", "));
            match &inv.euler_system.value {
                Some(sys) => {
                    let _ = writeln!(o, "  euler system over strata {:?}:", sys.strata);
                    for (row, d) in sys.coefficients.iter().zip(&sys.dims) {
                        let _ = writeln!(o, "    {} (dim {d})", show_list(row));
                    }
                }
                None => {
                    let note = inv.euler_system.note.clone().unwrap_or_default();
                    let _ = writeln!(o, "  euler system: not computable [{note}]");
                }
            }
            show_values(&mut o, "colength", &inv.colengths);
            let lhs = match &inv.lhs.value {
                Some(v) => Quantity {
                    value: Some(show_list(v)),
                    provenance: inv.lhs.provenance,
                    note: None,
                },
                None => Quantity::missing(inv.lhs.note.clone().unwrap_or_default()),
            };
            let _ = writeln!(o, "  lhs = {}", show(&lhs));
            show_values(&mut o, "m", &inv.m);
            show_values(&mut o, "polar", &inv.polar_terms);
            show_values(&mut o, "e_pair", &inv.e_pair);
            show_values(&mut o, "md_consistent", &inv.md_consistency);
            if let Some(g) = &inv.conormal_fiber_gap {
                let _ = writeln!(o, "  conormal fiber gap = {}", show(g));
            }
            show_values(&mut o, "stably_isolated", &inv.stably_isolated);
        }
        if let Some(s) = &self.slice {
            let _ = writeln!(
                o,
                "slice by {} (eliminates {}), q = {}:",
                s.hyperplane, s.pivot, s.q
            );
            for row in &s.matrix {
                let _ = writeln!(o, "  [{}]", row.join(", "));
            }
        }
        if let Some(g) = &self.genericity {
            let _ = writeln!(o, "hyperplanes:");
            for h in &g.hyperplanes {
                let dims: Vec<String> = h
                    .sliced
                    .iter()
                    .map(|s| {
                        format!(
                            "{}X {}/{}{}",
                            s.index,
                            s.actual_dim,
                            s.expected_dim,
                            if s.ok { "" } else { "!" }
                        )
                    })
                    .collect();
                let _ = writeln!(
                    o,
                    "  {}: screen {}, eids {}, minimal {}, dims (actual/expected) {}",
                    h.form,
                    show(&h.screen_pass),
                    show(&h.eids),
                    show(&h.minimal),
                    dims.join(", ")
                );
                show_values(&mut o, "  colength", &h.colengths);
            }
        }
        if let Some(f) = &self.family {
            let _ = writeln!(o, "family:");
            for s in &f.samples {
                let point: Vec<String> =
                    s.point.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                let dims: Vec<String> = s
                    .dimensions
                    .iter()
                    .map(|d| format!("{}X {}", d.stratum, show(&d.quantity())))
                    .collect();
                let _ = writeln!(
                    o,
                    "  {}: eids {}, dims {}",
                    point.join(", "),
                    show(&s.eids),
                    dims.join(", ")
                );
                show_values(&mut o, "  colength", &s.colengths);
                if let Some(m) = &s.m {
                    show_values(&mut o, "  m", m);
                }
            }
            let _ = writeln!(o, "  good family: {}", show(&f.good_family));
            let _ = writeln!(o, "  invariants constant: {}", show(&f.invariants_constant));
            if !f.not_computed.is_empty() {
                let _ = writeln!(o, "  not computed: {}", f.not_computed.join("; "));
            }
        }
        for w in &self.warnings {
            let _ = writeln!(o, "warning: {w}");
        }
        o
    }
}
