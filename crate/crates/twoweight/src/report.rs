//! Batch ingestion and machine-readable reports for the `twoweight` CLI.
//!
//! Parameter tables arrive as CSV with header
//! `N,k,lambda,mu[,rho1,m1,rho2,m2][,w1,w2][,id]`; the optional spectrum and
//! weight columns are cross-checked against the computed values during
//! screening. Reports serialize as JSON (struct field order, so repeated
//! runs are byte-identical) or as one-line-per-row CSV summaries. Verified
//! codes persist in the `.code` file format.

use crate::codes::{
    check_code_properties, load_code, weight_enumerator, write_code_file, CodeProperties, ExpandedCode,
};
use crate::constructions::{
    default_selection, enumerate_hjelmslev_family, gray_linear_check, gray_map, hjelmslev_code, hjelmslev_points,
    write_gray_image,
};
use crate::rings::{build_ring, hom_weight_table, parse_ring_spec, unit_gamma_weights, WeightTable};
use crate::screening::{screen, ParamSet, ScreenOptions, ScreenReport, Verdict};
use crate::srg::{certify_srg, verify_eigen_relations, SrgParams};
use crate::{Error, Rat, Result};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::sync::Arc;

/// Result of reading a parameter table: valid rows plus per-line complaints
/// about malformed ones.
#[derive(Debug)]
pub struct IngestResult {
    pub rows: Vec<ParamSet>,
    pub errors: Vec<String>,
}

/// Parses the parameter-table CSV. Malformed rows are reported with their
/// line numbers while the remaining rows are still returned.
pub fn ingest_param_table(text: &str) -> Result<IngestResult> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() || l.trim_start().starts_with('#') => continue,
            Some((_, l)) => break l,
            None => return Err(Error::invalid("empty parameter table")),
        }
    };
    let cols: Vec<String> = header.split(',').map(|c| c.trim().to_ascii_lowercase()).collect();
    let find = |name: &str| cols.iter().position(|c| c == name);
    let (in_, ik, il, im) = match (find("n"), find("k"), find("lambda"), find("mu")) {
        (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
        _ => return Err(Error::invalid("header must name N,k,lambda,mu")),
    };
    let spectrum_cols = match (find("rho1"), find("m1"), find("rho2"), find("m2")) {
        (Some(a), Some(b), Some(c), Some(d)) => Some((a, b, c, d)),
        _ => None,
    };
    let weight_cols = match (find("w1"), find("w2")) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    };
    let id_col = find("id");

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(|f| f.trim()).collect();
        let get = |i: usize| -> std::result::Result<i64, String> {
            fields
                .get(i)
                .ok_or_else(|| format!("line {}: missing column {}", lineno + 1, i + 1))?
                .parse::<i64>()
                .map_err(|_| format!("line {}: bad integer {:?}", lineno + 1, fields.get(i).unwrap_or(&"")))
        };
        let parsed = (|| -> std::result::Result<ParamSet, String> {
            let mut row = ParamSet::new(get(in_)? as u64, get(ik)? as u64, get(il)? as u64, get(im)? as u64);
            if let Some((a, b, c, d)) = spectrum_cols {
                row.declared = Some((get(a)?, get(b)? as u64, get(c)?, get(d)? as u64));
            }
            row.id = match id_col {
                Some(i) => fields.get(i).map(|s| s.to_string()),
                None => Some(format!("{},{},{},{}", row.n, row.k, row.lambda, row.mu)),
            };
            if let Some((a, b)) = weight_cols {
                row.declared_weights = Some((get(a)? as u64, get(b)? as u64));
            }
            Ok(row)
        })();
        match parsed {
            Ok(row) => rows.push(row),
            Err(msg) => errors.push(msg),
        }
    }
    Ok(IngestResult { rows, errors })
}

/// Run metadata stamped into every report. There is no randomness anywhere,
/// so inputs and caps determine the output bytes completely.
#[derive(Debug, Serialize)]
pub struct RunMeta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub node_cap: u64,
    pub max_order: u64,
    pub workers: usize,
}

impl RunMeta {
    pub fn new(command: impl Into<String>, options: &ScreenOptions, workers: usize) -> Self {
        RunMeta {
            tool: "twoweight",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            node_cap: options.search.node_cap,
            max_order: options.max_order,
            workers,
        }
    }
}

/// Screening a whole table, with deterministic row-indexed assembly across
/// the worker pool.
pub fn screen_table(rows: &[ParamSet], options: &ScreenOptions, workers: usize) -> Vec<ScreenReport> {
    if workers <= 1 || rows.len() <= 1 {
        return rows.iter().map(|r| screen(r, options)).collect();
    }
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, ScreenReport)>();
    std::thread::scope(|scope| {
        for _ in 0..workers.min(rows.len()) {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= rows.len() {
                    break;
                }
                let report = screen(&rows[i], options);
                if tx.send((i, report)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut slots: Vec<Option<ScreenReport>> = (0..rows.len()).map(|_| None).collect();
        for (i, report) in rx {
            slots[i] = Some(report);
        }
        slots.into_iter().map(|s| s.expect("every row screened")).collect()
    })
}

/// Table-level screening report.
#[derive(Serialize)]
pub struct ScreenRunReport {
    pub meta: RunMeta,
    pub ingest_errors: Vec<String>,
    pub rows: Vec<ScreenReport>,
}

impl ScreenRunReport {
    pub fn undecided_present(&self) -> bool {
        self.rows.iter().any(|r| matches!(r.verdict, Verdict::Undecided { .. }))
    }

    pub fn csv_summary(&self) -> String {
        let mut out = String::from("id,N,k,lambda,mu,verdict\n");
        for r in &self.rows {
            let verdict = match &r.verdict {
                Verdict::FailSpectrum { .. } => "fail-spectrum",
                Verdict::FailIntegrality { .. } => "fail-integrality",
                Verdict::FailUnitTuple => "fail-unit-tuple",
                Verdict::FailXt => "fail-xT",
                Verdict::Candidates { .. } => "candidates",
                Verdict::Eliminated { .. } => "eliminated",
                Verdict::Found { .. } => "found",
                Verdict::Undecided { .. } => "undecided",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.id.as_deref().unwrap_or(""),
                r.params.0,
                r.params.1,
                r.params.2,
                r.params.3,
                verdict
            );
        }
        out
    }

    /// Persists every found code under `dir` in the `.code` format,
    /// returning the written file names.
    pub fn write_codes(&self, dir: &Path) -> Result<Vec<String>> {
        let mut written = Vec::new();
        std::fs::create_dir_all(dir)?;
        for row in &self.rows {
            for (i, vc) in row.found_codes.iter().enumerate() {
                let name = format!(
                    "srg_{}_{}_{}_{}_{}_{}.code",
                    row.params.0,
                    row.params.1,
                    row.params.2,
                    row.params.3,
                    vc.code.ring().spec().to_string().replace(['(', ')', ','], "_").replace('x', "-"),
                    i
                );
                let gamma = Rat::from_integer(vc.code.ring().units_count() as i64);
                std::fs::write(dir.join(&name), write_code_file(&vc.code, gamma))?;
                written.push(name);
            }
        }
        Ok(written)
    }
}

/// Verification report for a single `.code` file.
#[derive(Serialize)]
pub struct VerifyReport {
    pub ring: String,
    pub shape: String,
    pub gamma: String,
    pub length: usize,
    pub size: usize,
    pub faithful: bool,
    pub proper: bool,
    pub regular: bool,
    pub projective: bool,
    pub enumerator: Vec<(String, u64)>,
    pub two_weight: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub srg: Option<SrgParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen_checks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub srg_error: Option<String>,
}

/// Loads, expands and fully verifies a `.code` file. `gamma` overrides the
/// file's γ; `"units"` selects `γ = |R^×|`.
pub fn run_verify(text: &str, gamma: Option<&str>) -> Result<VerifyReport> {
    let (expanded, file_weights) = load_code(text)?;
    let weights: WeightTable = match gamma {
        None => file_weights,
        Some("units") => unit_gamma_weights(expanded.ring()),
        Some(g) => hom_weight_table(expanded.ring(), crate::codes::parse_rational(g)?)?,
    };
    verify_expanded(&expanded, &weights)
}

pub fn verify_expanded(expanded: &ExpandedCode, weights: &WeightTable) -> Result<VerifyReport> {
    let props: CodeProperties = check_code_properties(expanded, weights);
    let enumerator = weight_enumerator(expanded, weights);
    let two_weight = enumerator.two_weights().is_some();
    let mut report = VerifyReport {
        ring: expanded.ring().spec().to_string(),
        shape: expanded.code().shape().to_field(),
        gamma: crate::codes::format_rational(weights.gamma()),
        length: expanded.length(),
        size: expanded.size(),
        faithful: expanded.is_faithful(),
        proper: props.proper,
        regular: props.regular,
        projective: props.projective,
        enumerator: enumerator
            .spectrum
            .iter()
            .map(|(w, c)| (crate::codes::format_rational(*w), *c))
            .collect(),
        two_weight,
        srg: None,
        eigen_checks: None,
        srg_error: None,
    };
    if two_weight && props.all() && expanded.is_faithful() {
        match certify_srg(expanded, weights) {
            Ok(cert) => {
                let checks = verify_eigen_relations(expanded, weights, &cert.params)?;
                report.eigen_checks = Some(checks.checks.len());
                report.srg = Some(cert.params);
            }
            Err(e) => report.srg_error = Some(e.to_string()),
        }
    }
    Ok(report)
}

/// Report of a Hjelmslev construction run.
#[derive(Serialize)]
pub struct HjelmslevReport {
    pub ring: String,
    pub q: usize,
    pub s: u32,
    pub points: usize,
    pub classes: usize,
    pub selections: u64,
    pub distinct_codes: usize,
    pub srg: SrgParams,
    pub w1: String,
    pub w2: String,
}

/// Builds the full family for `(ring, s)`, certifies the default selection
/// and reports the deduplicated code count. Found codes can be persisted by
/// the caller from `codes`.
pub fn run_hjelmslev(spec_text: &str, s: u32, cap: u64) -> Result<(HjelmslevReport, Vec<crate::codes::LinearCode>)> {
    let spec = parse_ring_spec(spec_text)?;
    let ring = Arc::new(build_ring(&spec)?);
    let line = hjelmslev_points(&ring)?;
    let family = enumerate_hjelmslev_family(&line, s, cap)?;
    let code = hjelmslev_code(&line, s, &default_selection(&line, s))?;
    let expanded = code.expand()?;
    let weights = unit_gamma_weights(&ring);
    let cert = certify_srg(&expanded, &weights)?;
    verify_eigen_relations(&expanded, &weights, &cert.params)?;
    let report = HjelmslevReport {
        ring: spec.to_string(),
        q: line.q,
        s,
        points: line.points.len(),
        classes: line.classes.len(),
        selections: family.selections,
        distinct_codes: family.codes.len(),
        srg: cert.params,
        w1: crate::codes::format_rational(cert.w1),
        w2: crate::codes::format_rational(cert.w2),
    };
    Ok((report, family.codes))
}

/// Report of a Gray linearity sweep over a Hjelmslev family.
#[derive(Serialize)]
pub struct GrayCheckReport {
    pub ring: String,
    pub q: usize,
    pub s: u32,
    pub selections: u64,
    pub distinct_codes: usize,
    /// Number of distinct codes with a linear Gray image.
    pub linear_images: usize,
    /// Gray-image length `q · s(q+1)`.
    pub image_length: usize,
}

/// Enumerates the family and checks every deduplicated member's Gray image
/// for residue-field linearity. Optionally writes the images to `out`.
pub fn run_gray_check(spec_text: &str, s: u32, cap: u64, out: Option<&Path>) -> Result<GrayCheckReport> {
    let spec = parse_ring_spec(spec_text)?;
    let ring = Arc::new(build_ring(&spec)?);
    let line = hjelmslev_points(&ring)?;
    let family = enumerate_hjelmslev_family(&line, s, cap)?;
    let map = gray_map(&ring)?;
    let mut linear = 0usize;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
    }
    for (i, code) in family.codes.iter().enumerate() {
        let expanded = code.expand()?;
        let check = gray_linear_check(&map, &expanded)?;
        if check.linear {
            linear += 1;
        }
        if let Some(dir) = out {
            std::fs::write(dir.join(format!("gray_{i:04}.txt")), write_gray_image(&map, &expanded))?;
        }
    }
    Ok(GrayCheckReport {
        ring: spec.to_string(),
        q: line.q,
        s,
        selections: family.selections,
        distinct_codes: family.codes.len(),
        linear_images: linear,
        image_length: line.q * family.codes.first().map(|c| c.length()).unwrap_or(0),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_with_spectrum() {
        let text = "N,k,lambda,mu,rho1,m1,rho2,m2\n96,45,24,18,-3,75,9,20\n5,2,0,1,-1,2,1,2\n";
        let result = ingest_param_table(text).unwrap();
        assert_eq!(result.rows.len(), 2);
        assert!(result.errors.is_empty());
        assert_eq!(result.rows[0].declared, Some((-3, 75, 9, 20)));
    }

    #[test]
    fn ingest_reports_bad_rows_and_keeps_good_ones() {
        let text = "N,k,lambda,mu\n96,45,24,18\n96,xx,24,18\n16,6,2,2\n";
        let result = ingest_param_table(text).unwrap();
        assert_eq!(result.rows.len(), 2);
        assert_eq!(result.errors.len(), 1);
        assert!(result.errors[0].contains("line 3"));
    }

    #[test]
    fn verify_the_bundled_example() {
        let text = "ring GF(4)xGF(2)\nshape 1;1,1\ngamma 3\n1 1 1\n4 4 0\n0 4 4\n";
        let report = run_verify(text, None).unwrap();
        assert!(report.proper && report.regular && report.projective);
        assert!(report.two_weight);
        let srg = report.srg.unwrap();
        assert_eq!((srg.n, srg.k, srg.lambda, srg.mu), (16, 9, 4, 6));
    }

    #[test]
    fn hjelmslev_run_z4() {
        let (report, codes) = run_hjelmslev("Z4", 1, 1 << 20).unwrap();
        assert_eq!(report.distinct_codes, 4);
        assert_eq!(codes.len(), 4);
        assert_eq!((report.srg.n, report.srg.k), (16, 6));
    }

    #[test]
    fn gray_check_z4() {
        let report = run_gray_check("Z4", 1, 1 << 20, None).unwrap();
        assert_eq!(report.distinct_codes, 4);
        assert_eq!(report.linear_images, 0);
    }

    #[test]
    fn parallel_screen_matches_sequential() {
        let rows: Vec<ParamSet> = vec![
            ParamSet::new(16, 6, 2, 2),
            ParamSet::new(5, 2, 0, 1),
            ParamSet::new(96, 45, 24, 18),
            ParamSet::new(100, 33, 8, 12),
        ];
        let opts = ScreenOptions::default();
        let seq = screen_table(&rows, &opts, 1);
        let par = screen_table(&rows, &opts, 3);
        let a: Vec<String> = seq.iter().map(to_json).collect();
        let b: Vec<String> = par.iter().map(to_json).collect();
        assert_eq!(a, b);
    }
}
