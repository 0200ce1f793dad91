//! Catalog serializers. JSON is `{"meta": {..}, "records": [..]}` and
//! round-trips losslessly; CSV has a fixed header; the table is for people.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use selink::survey::{EuclideanClass, FamilyRecord, ScanConfig};

use crate::args::OutputFormat;
use crate::error::CliError;

/// Bumped whenever a JSON or CSV field is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: [&str; 25] = [
    "family",
    "m",
    "k",
    "base_weights",
    "base_degree",
    "case",
    "cover_weights",
    "cover_degree",
    "bp_exponents",
    "link_dimension",
    "torsion_base",
    "torsion_exponent",
    "genus",
    "moduli_complex",
    "moduli_real",
    "fano",
    "necessary_klt",
    "bp_applicable",
    "bp_sufficient",
    "gc_assumed",
    "left_value",
    "right_bound",
    "claimed_min_k",
    "literal_min_k",
    "flags",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub weight_bound: u64,
    pub k_bound: u64,
    pub m_range: [u64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub schema_version: u32,
    pub tool_version: String,
    pub bounds: Bounds,
    pub assumptions: Vec<String>,
    pub torsion_expanded: bool,
}

impl Meta {
    pub fn new(cfg: &ScanConfig, torsion_expanded: bool) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            bounds: Bounds {
                weight_bound: cfg.weight_bound,
                k_bound: cfg.k_bound,
                m_range: [*cfg.m_range.start(), *cfg.m_range.end()],
            },
            assumptions: vec![
                "genericity condition (GC) on perturbations is assumed, not verified".into(),
                "scans are exhaustive only up to the stated bounds".into(),
                "existence verdicts evaluate the displayed inequalities literally".into(),
            ],
            torsion_expanded,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    #[serde(flatten)]
    pub record: FamilyRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_decimal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub meta: Meta,
    pub records: Vec<Entry>,
}

impl Catalog {
    pub fn new(records: &[FamilyRecord], meta: Meta) -> Self {
        let expand = meta.torsion_expanded;
        Self {
            records: records
                .iter()
                .map(|r| Entry {
                    record: r.clone(),
                    torsion_decimal: expand.then(|| r.torsion.expand().to_string()),
                })
                .collect(),
            meta,
        }
    }

    pub fn into_records(self) -> Vec<FamilyRecord> {
        self.records.into_iter().map(|e| e.record).collect()
    }
}

pub fn parse_json_catalog(text: &str) -> Result<Catalog, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid catalog: {e}")))
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, T::to_string)
}

fn flags(r: &FamilyRecord) -> String {
    r.flags
        .iter()
        .map(|f| serde_json::to_value(f).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default())
        .collect::<Vec<_>>()
        .join(";")
}

/// Renders records (already in canonical order) in the requested format.
pub fn render_catalog(records: &[FamilyRecord], format: OutputFormat, meta: &Meta) -> Result<Vec<u8>, CliError> {
    let expand = meta.torsion_expanded;
    match format {
        OutputFormat::Json => {
            let catalog = Catalog::new(records, meta.clone());
            let mut out = serde_json::to_vec_pretty(&catalog).map_err(|e| CliError::Integrity(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<&str> = CSV_HEADER.to_vec();
            if expand {
                header.push("torsion_decimal");
            }
            w.write_record(&header).map_err(|e| CliError::io(None, e))?;
            for r in records {
                let c = &r.certificate;
                let mut row = vec![
                    r.family.as_str().to_string(),
                    r.m.to_string(),
                    r.k.to_string(),
                    join(r.base.weights()),
                    r.base.degree().to_string(),
                    r.case.to_string(),
                    join(r.cover.weights()),
                    r.cover.degree().to_string(),
                    r.bp_exponents.as_deref().map(join).unwrap_or_default(),
                    r.link_dimension.to_string(),
                    r.torsion.base.to_string(),
                    r.torsion.exponent.to_string(),
                    opt(&r.genus),
                    r.moduli.complex_dim.to_string(),
                    r.moduli.real_dim.to_string(),
                    c.fano.to_string(),
                    c.necessary_klt.to_string(),
                    c.bp_applicable.to_string(),
                    c.bp_sufficient.to_string(),
                    c.gc_assumed.to_string(),
                    c.left_value.to_string(),
                    c.right_bound.to_string(),
                    opt(&r.claimed_min_k),
                    opt(&r.literal_min_k),
                    flags(r),
                ];
                if expand {
                    row.push(r.torsion.expand().to_string());
                }
                w.write_record(&row).map_err(|e| CliError::io(None, e))?;
            }
            w.into_inner().map_err(|e| CliError::io(None, e.error()))
        }
        OutputFormat::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "# schema {} | weight_bound {} | k_bound {} | m {}..{}",
                meta.schema_version,
                meta.bounds.weight_bound,
                meta.bounds.k_bound,
                meta.bounds.m_range[0],
                meta.bounds.m_range[1]
            );
            let _ = writeln!(
                s,
                "{:<16} {:>2} {:>4} {:<22} {:>3} {:>11} {:>5} {:>8} {:>5} {:>5} {:>4} {:>8} {:>9} min_k",
                "family", "m", "k", "base", "dim", "torsion", "genus", "mu", "fano", "klt", "bp", "bp_left", "bp_right"
            );
            for r in records {
                let c = &r.certificate;
                let yn = |b: bool| if b { "yes" } else { "no" };
                let min_k = match (r.claimed_min_k, r.literal_min_k) {
                    (None, None) => String::new(),
                    (a, b) => format!("claimed {} literal {}", opt(&a), opt(&b)),
                };
                let _ = writeln!(
                    s,
                    "{:<16} {:>2} {:>4} {:<22} {:>3} {:>11} {:>5} {:>8} {:>5} {:>5} {:>4} {:>8} {:>9} {}",
                    r.family.as_str(),
                    r.m,
                    r.k,
                    r.base.to_string(),
                    r.link_dimension,
                    r.torsion.to_string(),
                    opt(&r.genus),
                    r.moduli.complex_dim.to_string(),
                    yn(c.fano),
                    yn(c.necessary_klt),
                    yn(c.bp_sufficient),
                    c.left_value.to_string(),
                    c.right_bound.to_string(),
                    min_k
                );
                if expand {
                    let _ = writeln!(s, "    |H| = {}", r.torsion.expand());
                }
            }
            Ok(s.into_bytes())
        }
    }
}

/// Renders the Euclidean classification rows.
pub fn render_classes(classes: &[EuclideanClass], format: OutputFormat, meta: &Meta) -> Result<Vec<u8>, CliError> {
    #[derive(Serialize)]
    struct Row<'a> {
        weights: &'a [u64],
        degree: u64,
        monomials: String,
    }
    #[derive(Serialize)]
    struct Doc<'a> {
        meta: &'a Meta,
        classes: Vec<Row<'a>>,
    }
    let rows: Vec<Row> = classes
        .iter()
        .map(|c| Row {
            weights: c.system.weights(),
            degree: c.system.degree(),
            monomials: c.monomials.to_string(),
        })
        .collect();
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(&Doc { meta, classes: rows })
                .map_err(|e| CliError::Integrity(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["weights", "degree", "monomials"]).map_err(|e| CliError::io(None, e))?;
            for r in &rows {
                w.write_record([join(r.weights), r.degree.to_string(), r.monomials.clone()])
                    .map_err(|e| CliError::io(None, e))?;
            }
            w.into_inner().map_err(|e| CliError::io(None, e.error()))
        }
        OutputFormat::Table => {
            let mut s = format!("# weight_bound {}\n{:<12} {:>3} {:>4}\n", meta.bounds.weight_bound, "w", "d", "n");
            for r in &rows {
                let _ = writeln!(s, "{:<12} {:>3} {:>4}", format!("({})", join(r.weights)), r.degree, r.monomials);
            }
            Ok(s.into_bytes())
        }
    }
}
