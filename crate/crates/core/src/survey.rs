//! Family generators and bounded scans producing catalog records.
//!
//! Every scan splits its work into independent jobs, runs them on a rayon
//! pool sized by [`ScanConfig::thread_budget`], and sorts the merged output by
//! [`FamilyRecord::sort_key`], so the thread count never changes the result.

use std::io::BufRead;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::ke_cert::{certify, hyperbolic_k_window, KeCertificate};
use crate::links::{
    branched_cover, classify_case, normalize_cover, quasi_smooth_generic, torsion_hypothesis,
    CaseClass, WeightSystem,
};
use crate::moduli::{moduli_count, ModuliCount};
use crate::topology::{genus, torsion_order, TorsionOrder, DEFAULT_ORACLE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Euclidean5,
    FermatCy,
    Hyperbolic,
    MixedCanonical,
    Ingested,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::Euclidean5 => "euclidean5",
            FamilyTag::FermatCy => "fermat_cy",
            FamilyTag::Hyperbolic => "hyperbolic",
            FamilyTag::MixedCanonical => "mixed_canonical",
            FamilyTag::Ingested => "ingested",
        }
    }
}

/// Places where a record's computed values differ from a published claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordFlag {
    /// `claimed_min_k` and `literal_min_k` disagree.
    MinKClaimDiffers,
    /// Two-real-parameter families were claimed only for `d = 3` and `d = 6`,
    /// but the literal count says otherwise for this record.
    ModuliClaimDiffers,
}

/// One catalog row: a k-fold branched cover of a base system in `m`
/// variables, whose link has dimension `2m - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub family: FamilyTag,
    pub m: u64,
    pub k: u64,
    pub base: WeightSystem,
    pub cover: WeightSystem,
    pub bp_exponents: Option<Vec<u64>>,
    pub case: CaseClass,
    pub link_dimension: u64,
    pub torsion: TorsionOrder,
    pub genus: Option<u64>,
    #[serde(flatten)]
    pub moduli: ModuliCount,
    pub certificate: KeCertificate,
    /// Smallest admissible `k` for which the existence bounds were claimed
    /// to hold.
    pub claimed_min_k: Option<u64>,
    /// Smallest admissible `k` for which the displayed Brieskorn–Pham
    /// inequality actually holds, found by sweeping.
    pub literal_min_k: Option<u64>,
    pub flags: Vec<RecordFlag>,
}

impl FamilyRecord {
    /// `(family, m, d, k, weights)` with weights in canonical order.
    pub fn sort_key(&self) -> (FamilyTag, u64, u64, u64, Vec<u64>) {
        (
            self.family,
            self.m,
            self.base.degree(),
            self.k,
            self.base.canonical().weights().to_vec(),
        )
    }
}

pub fn sort_records(records: &mut [FamilyRecord]) {
    records.sort_by_cached_key(FamilyRecord::sort_key);
}

/// Builds the record for the k-fold cover of `base`. The base must satisfy
/// the torsion hypothesis for `k`.
pub fn build_record(family: FamilyTag, k: u64, base: &WeightSystem) -> Result<FamilyRecord> {
    let base = base.canonical();
    let cover = branched_cover(k, &base)?;
    let m = base.len() as u64;
    let torsion = torsion_order(k, &base)?;
    let genus = if m == 3 { Some(genus(&base)?) } else { None };
    Ok(FamilyRecord {
        family,
        m,
        k,
        case: classify_case(&base),
        link_dimension: 2 * m - 1,
        torsion,
        genus,
        moduli: moduli_count(&cover.cover),
        certificate: certify(k, &base)?,
        bp_exponents: cover.bp_exponents,
        cover: cover.cover,
        base,
        claimed_min_k: None,
        literal_min_k: None,
        flags: Vec::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub weight_bound: u64,
    pub k_bound: u64,
    pub m_range: RangeInclusive<u64>,
    pub thread_budget: usize,
    pub oracle_budget: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            weight_bound: 60,
            k_bound: 60,
            m_range: 3..=8,
            thread_budget: std::thread::available_parallelism().map_or(1, |n| n.get()),
            oracle_budget: DEFAULT_ORACLE_BUDGET,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.weight_bound == 0 || self.k_bound == 0 || self.thread_budget == 0 || self.oracle_budget == 0 {
            return usage("scan bounds, thread budget and oracle budget must all be >= 1");
        }
        if self.m_range.is_empty() || *self.m_range.start() < 3 {
            return usage(format!(
                "m range {}..{} must be nonempty and start at 3 or above",
                self.m_range.start(),
                self.m_range.end()
            ));
        }
        if *self.m_range.end() > 24 {
            return usage("m above 24 is out of range for subset enumeration");
        }
        Ok(())
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.thread_budget)
            .build()
            .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(job))
    }
}

fn build_all(cfg: &ScanConfig, jobs: Vec<(FamilyTag, u64, WeightSystem)>) -> Result<Vec<FamilyRecord>> {
    let mut records = cfg.run(|| {
        jobs.par_iter()
            .map(|(tag, k, base)| build_record(*tag, *k, base))
            .collect::<Result<Vec<_>>>()
    })??;
    sort_records(&mut records);
    Ok(records)
}

/// A Euclidean (`|w| = d`) three-variable system admitting a quasi-smooth
/// member, with its number of degree-`d` monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanClass {
    pub system: WeightSystem,
    pub monomials: BigUint,
}

/// Exhaustive search over `w1 <= w2 <= w3 <= weight_bound`, `gcd = 1`,
/// `d = w1 + w2 + w3`.
pub fn scan_euclidean_classification(cfg: &ScanConfig) -> Result<Vec<EuclideanClass>> {
    cfg.validate()?;
    let bound = cfg.weight_bound;
    let mut found = cfg.run(|| {
        (1..=bound)
            .into_par_iter()
            .flat_map_iter(|w1| {
                (w1..=bound).flat_map(move |w2| {
                    (w2..=bound).filter_map(move |w3| {
                        if w1.gcd(&w2).gcd(&w3) != 1 {
                            return None;
                        }
                        let ws = WeightSystem::new(vec![w1, w2, w3], w1 + w2 + w3).ok()?;
                        quasi_smooth_generic(&ws).then_some(ws)
                    })
                })
            })
            .collect::<Vec<_>>()
    })?;
    found.sort_by(|a, b| a.weights().cmp(b.weights()));
    Ok(found
        .into_iter()
        .map(|system| EuclideanClass {
            monomials: crate::arith::count_monomials(system.weights(), system.degree()),
            system,
        })
        .collect())
}

/// Smallest `k` for which the Euclidean cover bounds were claimed to hold.
fn claimed_euclidean_min_k(d: u64) -> Option<u64> {
    match d {
        3 | 4 => Some(3),
        6 => Some(5),
        _ => None,
    }
}

fn admissible(k: u64, base: &WeightSystem) -> bool {
    k >= 2 && k.gcd(&base.degree()) == 1 && torsion_hypothesis(k, base)
}

/// Least admissible `k <= k_bound` at which the Brieskorn–Pham test holds.
pub fn literal_min_k(base: &WeightSystem, k_bound: u64) -> Result<Option<u64>> {
    for k in 2..=k_bound {
        if admissible(k, base) && certify(k, base)?.bp_sufficient {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Branched covers of the three Euclidean classes: rational homology
/// 5-spheres with torsion of order `k^2`.
pub fn generate_theorem2_family(cfg: &ScanConfig) -> Result<Vec<FamilyRecord>> {
    let classes = scan_euclidean_classification(cfg)?;
    let mut jobs = Vec::new();
    let mut thresholds = Vec::new();
    for class in &classes {
        let base = &class.system;
        thresholds.push((base.clone(), literal_min_k(base, cfg.k_bound)?));
        for k in 2..=cfg.k_bound {
            if admissible(k, base) {
                jobs.push((FamilyTag::Euclidean5, k, base.clone()));
            }
        }
    }
    let mut records = build_all(cfg, jobs)?;
    for r in &mut records {
        let d = r.base.degree();
        r.claimed_min_k = claimed_euclidean_min_k(d);
        r.literal_min_k = thresholds
            .iter()
            .find(|(b, _)| *b == r.base)
            .and_then(|(_, k)| *k);
        if r.claimed_min_k.is_some() && r.claimed_min_k != r.literal_min_k {
            r.flags.push(RecordFlag::MinKClaimDiffers);
        }
        let two_real = r.moduli.real_dim == BigInt::from(2);
        if two_real != matches!(d, 3 | 6) {
            r.flags.push(RecordFlag::ModuliClaimDiffers);
        }
    }
    Ok(records)
}

/// Covers of `z_1^m + ... + z_m^m` with `gcd(k, m) = 1`.
pub fn scan_fermat_cy(cfg: &ScanConfig) -> Result<Vec<FamilyRecord>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for m in cfg.m_range.clone() {
        let base = WeightSystem::fermat(m as usize, m)?;
        for k in (2..=cfg.k_bound).filter(|k| k.gcd(&m) == 1) {
            jobs.push((FamilyTag::FermatCy, k, base.clone()));
        }
    }
    build_all(cfg, jobs)
}

/// Covers of `z_1^l + ... + z_m^l` with `m+1 <= l <= 2m-1` and `k` in the
/// existence window.
pub fn scan_hyperbolic(cfg: &ScanConfig) -> Result<Vec<FamilyRecord>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for m in cfg.m_range.clone() {
        for l in m + 1..=2 * m - 1 {
            let base = WeightSystem::fermat(m as usize, l)?;
            for k in hyperbolic_k_window(m, l)?.solutions {
                if k <= cfg.k_bound {
                    jobs.push((FamilyTag::Hyperbolic, k, base.clone()));
                }
            }
        }
    }
    build_all(cfg, jobs)
}

/// `z_0^{2m-1} + z_1^{2m} + ... + z_{m-1}^{2m} + z_m^2`.
pub fn generate_mixed_canonical(cfg: &ScanConfig) -> Result<Vec<FamilyRecord>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for m in cfg.m_range.clone() {
        let mut weights = vec![1; m as usize - 1];
        weights.push(m);
        jobs.push((FamilyTag::MixedCanonical, 2 * m - 1, WeightSystem::new(weights, 2 * m)?));
    }
    build_all(cfg, jobs)
}

/// Every generated family, merged in canonical order.
pub fn scan_all(cfg: &ScanConfig) -> Result<Vec<FamilyRecord>> {
    let mut records = generate_theorem2_family(cfg)?;
    records.extend(scan_fermat_cy(cfg)?);
    records.extend(scan_hyperbolic(cfg)?);
    records.extend(generate_mixed_canonical(cfg)?);
    sort_records(&mut records);
    Ok(records)
}

/// A row of ingested input that was rejected, or a cover of it that was
/// skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestIssue {
    pub line: usize,
    pub k: Option<u64>,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub records: Vec<FamilyRecord>,
    pub issues: Vec<IngestIssue>,
}

/// Runs the full pipeline on user-supplied base systems, one `w1,...,wm;d`
/// per line with `#` comments. Row-level problems are collected in the
/// report; only a failure to read the source aborts.
pub fn ingest_weight_list<R: BufRead>(
    source: R,
    k_range: RangeInclusive<u64>,
    cfg: &ScanConfig,
) -> Result<IngestReport> {
    let mut report = IngestReport::default();
    let mut jobs = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Input(format!("line {line_no}: {e}")))?;
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let issue = |k: Option<u64>, message: String| IngestIssue { line: line_no, k, message };
        let base = match text.parse::<WeightSystem>() {
            Ok(b) => b,
            Err(e) => {
                report.issues.push(issue(None, e.to_string()));
                continue;
            }
        };
        if !quasi_smooth_generic(&base) {
            report
                .issues
                .push(issue(None, format!("{base} has no quasi-smooth member")));
            continue;
        }
        for k in k_range.clone() {
            if k < 2 {
                continue;
            }
            match normalize_cover(k, &base) {
                Ok((k, normalized)) => jobs.push((line_no, k, normalized)),
                Err(e) => report.issues.push(issue(Some(k), e.to_string())),
            }
        }
    }
    let built = cfg.run(|| {
        jobs.par_iter()
            .map(|(line, k, base)| (*line, *k, build_record(FamilyTag::Ingested, *k, base)))
            .collect::<Vec<_>>()
    })?;
    for (line, k, result) in built {
        match result {
            Ok(r) => report.records.push(r),
            Err(e) => report.issues.push(IngestIssue { line, k: Some(k), message: e.to_string() }),
        }
    }
    sort_records(&mut report.records);
    report.issues.sort_by_key(|i| (i.line, i.k));
    Ok(report)
}
