use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{compute_metrics, gen_chebvand, gen_moler, gen_rank_one, gen_spd_logspectrum, MetricSet, TestCase};
use crate::sqrtm::{sqrtm_drive, IterationOptions};
use crate::{Error, Result};

pub const BENCH_CSV_HEADER: &str = "case,method,iterations,rel_residual,rel_error,alpha_inf,kappa2";
const BENCH_N: usize = 16;
const LOGSPECTRUM_SEED: u64 = 2016;

/// One cell of the suite table.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRow {
    pub case: String,
    pub method: String,
    pub outcome: Result<MetricSet>,
}

fn run_cell(tc: &TestCase, opts: &IterationOptions) -> SuiteRow {
    let outcome = sqrtm_drive(&tc.matrix, opts).and_then(|r| compute_metrics(tc, &r.x, &r.report));
    SuiteRow { case: tc.name.clone(), method: opts.label(), outcome }
}

/// Runs every method on every case. Rows are ordered case-major, methods in
/// the given order; a failing cell records its error and the suite goes on.
pub fn run_suite(cases: &[TestCase], methods: &[IterationOptions]) -> Result<Vec<SuiteRow>> {
    if cases.is_empty() || methods.is_empty() {
        return Err(Error::InvalidParameter("suite needs at least one case and one method"));
    }
    let cells: Vec<(usize, usize)> = (0..cases.len()).flat_map(|c| (0..methods.len()).map(move |m| (c, m))).collect();
    #[cfg(feature = "parallel")]
    let rows = {
        use rayon::prelude::*;
        cells.par_iter().map(|&(c, m)| run_cell(&cases[c], &methods[m])).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows = cells.iter().map(|&(c, m)| run_cell(&cases[c], &methods[m])).collect();
    Ok(rows)
}

/// A1, moler and chebvand of order 16, and two log-spectrum SPD matrices
/// with `alpha = 1e-2` and `1e-5`.
pub fn bench_cases() -> Result<Vec<TestCase>> {
    Ok(alloc::vec![
        gen_rank_one(BENCH_N)?,
        gen_moler(BENCH_N)?,
        gen_chebvand(BENCH_N)?,
        gen_spd_logspectrum(BENCH_N, 1e-2, LOGSPECTRUM_SEED)?,
        gen_spd_logspectrum(BENCH_N, 1e-5, LOGSPECTRUM_SEED)?,
    ])
}

/// Z-(1,0), Z-(4,4), Z-(8,8), P-(1,0), P-(4,4), P-(8,8) and DB with default options.
pub fn bench_methods() -> Vec<IterationOptions> {
    let degrees = [(1, 0), (4, 4), (8, 8)];
    let mut v: Vec<IterationOptions> = degrees.iter().map(|&(m, l)| IterationOptions::zolotarev(m, l)).collect();
    v.extend(degrees.iter().map(|&(m, l)| IterationOptions::pade(m, l)));
    v.push(IterationOptions::denman_beavers());
    v
}

fn sci(x: f64) -> String {
    format!("{x:.5e}")
}

/// The suite table as CSV. Failed cells keep their case and method and
/// leave the numeric columns empty; so does a missing reference error.
pub fn bench_csv(rows: &[SuiteRow]) -> String {
    let mut out = String::from(BENCH_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let _ = match &row.outcome {
            Ok(m) => writeln!(
                out,
                "{},{},{},{},{},{},{}",
                row.case,
                row.method,
                m.iterations,
                sci(m.rel_residual),
                m.rel_error.map(sci).unwrap_or_default(),
                sci(m.alpha_inf),
                sci(m.kappa2_sqrt)
            ),
            Err(_) => writeln!(out, "{},{},,,,,", row.case, row.method),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;
    use crate::sqrtm::TerminationReason;

    #[test]
    fn single_cell() {
        let cases = [TestCase::new("I", DenseMatrix::identity(4))];
        let rows = run_suite(&cases, &[IterationOptions::zolotarev(2, 2)]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].method, "Z-2-2");
        assert!(run_suite(&[], &bench_methods()).is_err());
    }

    #[test]
    fn identity_converges_at_once_for_all_methods() {
        let cases = [TestCase::new("I", DenseMatrix::identity(4))];
        let rows = run_suite(&cases, &bench_methods()).unwrap();
        assert_eq!(rows.len(), 7);
        for row in rows {
            let m = row.outcome.unwrap();
            assert!(m.iterations <= 1, "{}", row.method);
            assert_eq!(m.reason, TerminationReason::CriterionSatisfied);
        }
    }

    #[test]
    fn failures_are_recorded() {
        let singular = DenseMatrix::from_real_fn(3, |_, _| 1.0).unwrap();
        let cases = [TestCase::new("ones", singular), TestCase::new("I", DenseMatrix::identity(3))];
        let rows = run_suite(&cases, &[IterationOptions::zolotarev(1, 0), IterationOptions::denman_beavers()]).unwrap();
        let order: Vec<(&str, &str)> = rows.iter().map(|r| (r.case.as_str(), r.method.as_str())).collect();
        assert_eq!(order, [("ones", "Z-1-0"), ("ones", "DB"), ("I", "Z-1-0"), ("I", "DB")]);
        assert!(rows[0].outcome.is_err() && rows[1].outcome.is_err());
        assert!(rows[2].outcome.is_ok() && rows[3].outcome.is_ok());
        let csv = bench_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], BENCH_CSV_HEADER);
        assert_eq!(lines[1], "ones,Z-1-0,,,,,");
        assert!(lines[3].starts_with("I,Z-1-0,"));
        assert!(lines.iter().all(|l| l.split(',').count() == 7));
    }

    #[test]
    fn csv_number_format() {
        assert_eq!(sci(1.0), "1.00000e0");
        assert_eq!(sci(1.234567e-17), "1.23457e-17");
    }

    #[test]
    fn bench_corpus_shape() {
        let cases = bench_cases().unwrap();
        assert_eq!(cases.len(), 5);
        assert!(cases.iter().all(|c| c.n() == 16));
        let labels: Vec<String> = bench_methods().iter().map(|m| m.label()).collect();
        assert_eq!(labels, ["Z-1-0", "Z-4-4", "Z-8-8", "P-1-0", "P-4-4", "P-8-8", "DB"]);
    }
}
