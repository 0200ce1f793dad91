use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, Write};

use num_bigint::BigInt;
use serde::Serialize;

use selink::arith::count_monomials;
use selink::ke_cert::{bp_sufficient_ke, certify, BpVerdict, KeCertificate};
use selink::links::{
    branched_cover, classify_case, first_torsion_obstruction, normalize_cover, quasi_smooth_generic,
    CaseClass, WeightSystem,
};
use selink::moduli::{moduli_count, ModuliCount};
use selink::serde_big::bigint;
use selink::survey::{self, ScanConfig};
use selink::topology::{genus, genus_one_criterion, milnor_orlik_betti, torsion_order, TorsionOrder};

use crate::args::{BoundArgs, CertifyArgs, Command, Invocation, OutputFormat, ScanFamily, SystemArgs};
use crate::catalog::{render_catalog, render_classes, Meta};
use crate::error::CliError;

#[derive(Serialize)]
struct InvariantsReport {
    system: WeightSystem,
    case: CaseClass,
    norm: u64,
    quasi_smooth: bool,
    reduced_ratios: Vec<(u64, u64)>,
    betti: u64,
    genus: Option<u64>,
    genus_one_criterion: Option<bool>,
    #[serde(with = "bigint")]
    monomials: BigInt,
}

#[derive(Serialize)]
struct CoverReport {
    k: u64,
    base: WeightSystem,
    cover: WeightSystem,
    bp_exponents: Option<Vec<u64>>,
    link_dimension: u64,
    needs_normalization: bool,
    torsion_hypothesis: bool,
    obstruction: Option<String>,
    normalized_base: Option<WeightSystem>,
    torsion: Option<TorsionOrder>,
    torsion_decimal: Option<String>,
}

#[derive(Serialize)]
struct CertificateReport {
    k: u64,
    base: WeightSystem,
    case: CaseClass,
    certificate: KeCertificate,
}

#[derive(Serialize)]
struct ModuliReport {
    system: WeightSystem,
    #[serde(flatten)]
    moduli: ModuliCount,
}

fn system(args: &SystemArgs) -> Result<WeightSystem, CliError> {
    Ok(WeightSystem::new(args.weights.0.clone(), args.degree)?)
}

fn require_quasi_smooth(ws: &WeightSystem) -> Result<(), CliError> {
    if quasi_smooth_generic(ws) {
        Ok(())
    } else {
        Err(CliError::Integrity(format!(
            "{ws}: quasi-smooth: false; refusing to compute Betti numbers for a non-isolated singularity"
        )))
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), T::to_string)
}

/// Single-object output: JSON, a one-row CSV, or `key = value` lines.
fn render_fields<T: Serialize>(
    value: &T,
    fields: &[(&str, String)],
    format: OutputFormat,
) -> Result<Vec<u8>, CliError> {
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(value).map_err(|e| CliError::Integrity(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(fields.iter().map(|(k, _)| *k)).map_err(|e| CliError::io(None, e))?;
            w.write_record(fields.iter().map(|(_, v)| v.as_str())).map_err(|e| CliError::io(None, e))?;
            w.into_inner().map_err(|e| CliError::io(None, e.error()))
        }
        OutputFormat::Table => {
            let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut s = String::new();
            for (k, v) in fields {
                let _ = writeln!(s, "{k:<width$} = {v}");
            }
            Ok(s.into_bytes())
        }
    }
}

fn invariants(args: &SystemArgs, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    let ws = system(args)?;
    require_quasi_smooth(&ws)?;
    let betti = milnor_orlik_betti(&ws)?;
    let (genus, criterion) = if ws.len() == 3 {
        (Some(genus(&ws)?), Some(genus_one_criterion(&ws)?))
    } else {
        (None, None)
    };
    let report = InvariantsReport {
        case: classify_case(&ws),
        norm: ws.norm(),
        quasi_smooth: true,
        reduced_ratios: ws.reduced_ratios(),
        betti,
        genus,
        genus_one_criterion: criterion,
        monomials: count_monomials(ws.weights(), ws.degree()).into(),
        system: ws,
    };
    let ratios: Vec<String> = report.reduced_ratios.iter().map(|(u, v)| format!("{u}/{v}")).collect();
    let fields = [
        ("system", report.system.to_string()),
        ("case", report.case.to_string()),
        ("norm", report.norm.to_string()),
        ("quasi_smooth", "true".into()),
        ("reduced_ratios", ratios.join(" ")),
        ("b", report.betti.to_string()),
        ("genus", opt(&report.genus)),
        ("genus_one_criterion", opt(&report.genus_one_criterion)),
        ("monomials", report.monomials.to_string()),
    ];
    render_fields(&report, &fields, format)
}

fn cover(k: u64, args: &SystemArgs, format: OutputFormat, expand: bool) -> Result<Vec<u8>, CliError> {
    let base = system(args)?;
    let data = branched_cover(k, &base)?;
    let obstruction = first_torsion_obstruction(k, &base)
        .map(|(i, u)| format!("gcd(k, u_{}) = gcd({k}, {u}) > 1", i + 1));
    let (normalized_base, torsion) = if obstruction.is_none() {
        require_quasi_smooth(&base)?;
        let (_, normalized) = normalize_cover(k, &base)?;
        let torsion = torsion_order(k, &normalized)?;
        ((normalized != base).then_some(normalized), Some(torsion))
    } else {
        (None, None)
    };
    let report = CoverReport {
        k,
        link_dimension: 2 * base.len() as u64 - 1,
        torsion_hypothesis: obstruction.is_none(),
        obstruction,
        needs_normalization: data.needs_normalization,
        bp_exponents: data.bp_exponents,
        cover: data.cover,
        base,
        normalized_base,
        torsion_decimal: torsion.filter(|_| expand).map(|t| t.expand().to_string()),
        torsion,
    };
    let fields = [
        ("k", report.k.to_string()),
        ("base", report.base.to_string()),
        ("cover", report.cover.to_string()),
        ("bp_exponents", report.bp_exponents.as_deref().map_or("-".into(), join)),
        ("link_dimension", report.link_dimension.to_string()),
        ("needs_normalization", report.needs_normalization.to_string()),
        ("torsion_hypothesis", report.torsion_hypothesis.to_string()),
        ("obstruction", opt(&report.obstruction)),
        ("normalized_base", opt(&report.normalized_base)),
        ("torsion", opt(&report.torsion)),
        ("torsion_decimal", opt(&report.torsion_decimal)),
    ];
    render_fields(&report, &fields, format)
}

fn certify_cmd(args: &CertifyArgs, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    if let Some(a) = &args.exponents {
        let v: BpVerdict = bp_sufficient_ke(a)?;
        let fields = [
            ("exponents", join(&v.data.exponents)),
            ("cofactor_lcms", join(&v.data.cofactor_lcms)),
            ("gcds", join(&v.data.gcds)),
            ("sum", v.data.reciprocal_sum.to_string()),
            ("bound", v.data.upper_bound.to_string()),
            ("witness", v.limiting_witness.to_string()),
            ("gc_assumed", "true".into()),
            ("verdict", v.verdict.to_string()),
        ];
        return render_fields(&v, &fields, format);
    }
    let (Some(k), Some(weights), Some(degree)) = (args.k, &args.weights, args.degree) else {
        return Err(CliError::Usage(
            "certify needs either --exponents or all of --k, --weights and --degree".into(),
        ));
    };
    let base = WeightSystem::new(weights.0.clone(), degree)?;
    let report = CertificateReport {
        k,
        case: classify_case(&base),
        certificate: certify(k, &base)?,
        base,
    };
    let c = &report.certificate;
    let fields = [
        ("k", k.to_string()),
        ("base", report.base.to_string()),
        ("case", report.case.to_string()),
        ("fano", c.fano.to_string()),
        ("necessary_klt", c.necessary_klt.to_string()),
        ("bp_applicable", c.bp_applicable.to_string()),
        ("bp_sufficient", c.bp_sufficient.to_string()),
        ("gc_assumed", c.gc_assumed.to_string()),
        ("decisive", format!("{:?}", c.decisive)),
        ("left", c.left_value.to_string()),
        ("right", c.right_bound.to_string()),
        ("witness", c.limiting_witness.to_string()),
    ];
    render_fields(&report, &fields, format)
}

fn moduli(args: &SystemArgs, k: Option<u64>, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    let mut ws = system(args)?;
    if let Some(k) = k {
        ws = branched_cover(k, &ws)?.cover;
    }
    let report = ModuliReport { moduli: moduli_count(&ws), system: ws };
    let m = &report.moduli;
    let fields = [
        ("system", report.system.to_string()),
        ("h0_degree", m.h0_degree.to_string()),
        ("h0_weights_sum", m.h0_weights_sum.to_string()),
        ("moduli_complex", m.complex_dim.to_string()),
        ("moduli_real", m.real_dim.to_string()),
    ];
    render_fields(&report, &fields, format)
}

fn scan_config(bounds: &BoundArgs, threads: usize) -> ScanConfig {
    ScanConfig {
        weight_bound: bounds.weight_bound,
        k_bound: bounds.k_bound,
        m_range: bounds.m_range.clone(),
        thread_budget: threads,
        ..ScanConfig::default()
    }
}

fn scan(family: ScanFamily, cfg: &ScanConfig, format: OutputFormat, expand: bool) -> Result<Vec<u8>, CliError> {
    let meta = Meta::new(cfg, expand);
    let records = match family {
        ScanFamily::Euclidean => {
            let classes = survey::scan_euclidean_classification(cfg)?;
            return render_classes(&classes, format, &meta);
        }
        ScanFamily::Theorem2 => survey::generate_theorem2_family(cfg)?,
        ScanFamily::FermatCy => survey::scan_fermat_cy(cfg)?,
        ScanFamily::Hyperbolic => survey::scan_hyperbolic(cfg)?,
        ScanFamily::MixedCanonical => survey::generate_mixed_canonical(cfg)?,
        ScanFamily::All => survey::scan_all(cfg)?,
    };
    render_catalog(&records, format, &meta)
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs an invocation, writing data to `out` (or `--out`) and diagnostics
/// to `err`.
pub fn execute(inv: &Invocation, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let threads = inv.threads.map_or_else(default_threads, |t| t as usize);
    let format = inv.format;
    let bytes = match &inv.command {
        Command::Invariants(args) => invariants(args, format)?,
        Command::Cover { k, system } => cover(*k, system, format, inv.expand_torsion)?,
        Command::Certify(args) => certify_cmd(args, format)?,
        Command::Moduli { system, k } => moduli(system, *k, format)?,
        Command::Scan { family, bounds } => scan(*family, &scan_config(bounds, threads), format, inv.expand_torsion)?,
        Command::Ingest { file, k_range } => {
            let source = File::open(file).map_err(|e| CliError::io(Some(file), e))?;
            let cfg = ScanConfig {
                k_bound: *k_range.end(),
                thread_budget: threads,
                ..ScanConfig::default()
            };
            let report = survey::ingest_weight_list(BufReader::new(source), k_range.clone(), &cfg)
                .map_err(|e| match e {
                    selink::Error::Input(m) => CliError::io(Some(file), m),
                    other => other.into(),
                })?;
            for issue in &report.issues {
                let k = issue.k.map(|k| format!(", k = {k}")).unwrap_or_default();
                let _ = writeln!(err, "{}:{}{k}: {}", file.display(), issue.line, issue.message);
            }
            render_catalog(&report.records, format, &Meta::new(&cfg, inv.expand_torsion))?
        }
    };
    match &inv.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::io(Some(path), e)),
        None => out.write_all(&bytes).map_err(|e| CliError::io(None, e)),
    }
}
