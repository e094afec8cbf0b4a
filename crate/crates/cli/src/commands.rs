use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use zolo_core::corpus::{bench_cases, bench_csv, bench_methods, reference_sqrt_hermitian, run_suite, TestCase};
use zolo_core::sqrtm::{sqrtm_drive, Form, IterationOptions, Warning};
use zolo_core::zolo::{coefficients, kappa_of, DEFAULT_DELTA};
use zolo_core::C64;

use crate::io::{read_matrix, write_matrix, write_text, Format};
use crate::{BenchArgs, CliError, CoeffsArgs, ContourArgs, FormArg, MethodArg, ModeArg, SqrtmArgs, EXIT_NUMERICAL};

fn sqrtm_options(args: &SqrtmArgs) -> Result<IterationOptions, CliError> {
    let ell = args.ell.unwrap_or(args.m);
    let mut opts = match args.method {
        MethodArg::Zolotarev => IterationOptions::zolotarev(args.m, ell),
        MethodArg::Pade => IterationOptions::pade(args.m, ell),
        MethodArg::Db => IterationOptions::denman_beavers(),
    };
    if let Some(alpha) = args.alpha {
        if args.method != MethodArg::Zolotarev {
            return Err(CliError::Usage("--alpha applies to the Zolotarev method only".into()));
        }
        opts = opts.with_alpha(alpha);
    }
    if let Some(delta) = args.delta {
        opts = opts.with_delta(delta);
    }
    opts = opts.with_max_iter(args.max_iter).with_form(match args.form {
        FormArg::Alt => Form::Alt,
        FormArg::Full => Form::Full,
    });
    opts.validate()?;
    Ok(opts)
}

pub fn cmd_sqrtm(args: &SqrtmArgs) -> Result<i32, CliError> {
    let opts = sqrtm_options(args)?;
    let a = read_matrix(&args.input, args.format)?;
    let r = sqrtm_drive(&a, &opts)?;
    write_matrix(&r.x, &args.output, args.format, args.force)?;
    if let Some(path) = &args.inverse {
        write_matrix(&r.x_inv, path, args.format, args.force)?;
    }
    let rep = &r.report;
    for w in &rep.warnings {
        match w {
            Warning::EigenEstimateNotConverged => {
                eprintln!("warning: extreme eigenvalue estimate did not converge; using a fallback alpha")
            }
        }
    }
    println!("method: {}", opts.label());
    println!("iterations: {}", rep.iterations);
    println!("reason: {:?}", rep.reason);
    println!("rel_residual: {:.6e}", rep.rel_residual);
    println!("alpha: {:.6e}", rep.alpha);
    println!("scale: {:.6e}", rep.scale);
    Ok(if rep.converged() { 0 } else { EXIT_NUMERICAL })
}

pub fn coeffs_csv(m: u32, ell: u32, alpha: f64) -> Result<String, CliError> {
    let pf = coefficients(m, ell, alpha)?;
    let mut out = String::from("kind,index,value\n");
    let _ = writeln!(out, "scale,0,{:.16e}", pf.scale());
    for (j, a) in pf.residues().iter().enumerate() {
        let _ = writeln!(out, "residue,{},{a:.16e}", j + 1);
    }
    for (j, c) in pf.shifts().iter().enumerate() {
        let _ = writeln!(out, "shift,{},{c:.16e}", 2 * j + 1);
    }
    for (j, c) in pf.all_c().iter().enumerate() {
        let _ = writeln!(out, "c,{},{c:.16e}", j + 1);
    }
    Ok(out)
}

pub fn cmd_coeffs(args: &CoeffsArgs) -> Result<i32, CliError> {
    print!("{}", coeffs_csv(args.m, args.ell, args.alpha)?);
    Ok(0)
}

/// `kappa` over a polar grid of the slit annulus `alpha^2 <= |z| <= 1`,
/// radii log-spaced, angles at cell midpoints of `(-pi, pi)`. Points where
/// the estimate is undefined are written as `inf`.
pub fn contour_csv(args: &ContourArgs) -> Result<String, CliError> {
    let ell = args.ell.unwrap_or(args.m);
    let delta = args.delta.unwrap_or(DEFAULT_DELTA);
    let alpha = args.alpha;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::Usage("--alpha must lie in (0, 1)".into()));
    }
    // surface invalid degrees or delta before filling the grid
    kappa_of(C64::new(alpha, 0.0), alpha, args.m, ell, delta)?;
    let (n_r, n_t) = args.grid;
    let lo = 2.0 * alpha.log10();
    let rows: Vec<String> = (0..n_r * n_t)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n_t, idx % n_t);
            let lr = lo * (1.0 - i as f64 / (n_r - 1) as f64) + 0.0;
            let theta = -std::f64::consts::PI + (j as f64 + 0.5) * 2.0 * std::f64::consts::PI / n_t as f64;
            let z = C64::from_polar(10f64.powf(lr), theta);
            let k = match args.mode {
                ModeArg::Zolotarev => kappa_of(z, alpha, args.m, ell, delta),
                ModeArg::Pade => kappa_of(z / alpha, 1.0, args.m, ell, delta),
            };
            match k {
                Ok(k) if k.is_finite() => format!("{lr:.6e},{theta:.6e},{k:.6e}"),
                _ => format!("{lr:.6e},{theta:.6e},inf"),
            }
        })
        .collect();
    let mut out = String::from("log10_abs_z,arg_z,kappa\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

fn emit(text: &str, output: Option<&Path>, force: bool) -> Result<(), CliError> {
    match output {
        Some(p) => write_text(p, text, force),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_contour(args: &ContourArgs) -> Result<i32, CliError> {
    let text = contour_csv(args)?;
    emit(&text, args.output.as_deref(), args.force)?;
    Ok(0)
}

/// Parses `Z-m-l`, `P-m-l` or `DB`.
pub fn parse_method_label(label: &str) -> Result<IterationOptions, CliError> {
    let bad = || CliError::Usage(format!("unknown method {label:?}; expected Z-m-l, P-m-l or DB"));
    let label = label.trim();
    if label.eq_ignore_ascii_case("db") {
        return Ok(IterationOptions::denman_beavers());
    }
    let mut parts = label.split('-');
    let kind = parts.next().ok_or_else(bad)?;
    let m: u32 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let ell: u32 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    let opts = match kind {
        "Z" | "z" => IterationOptions::zolotarev(m, ell),
        "P" | "p" => IterationOptions::pade(m, ell),
        _ => return Err(bad()),
    };
    opts.validate()?;
    Ok(opts)
}

fn load_dir(dir: &Path) -> Result<Vec<TestCase>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
    let mut paths = Vec::new();
    for entry in entries {
        let p = entry.map_err(|e| CliError::Io(dir.display().to_string(), e))?.path();
        let ext = p.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        if p.is_file() && matches!(ext.as_deref(), Some("mtx" | "csv")) {
            paths.push(p);
        }
    }
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Usage(format!("no .mtx or .csv files in {}", dir.display())));
    }
    paths
        .iter()
        .map(|p| {
            let a = read_matrix(p, Some(Format::from_path(p)))?;
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let mut tc = TestCase::new(name, a);
            if tc.matrix.is_hermitian(1e-12) {
                tc.hermitian = true;
                tc.reference = reference_sqrt_hermitian(&tc.matrix).ok();
            }
            Ok(tc)
        })
        .collect()
}

pub fn bench_table(args: &BenchArgs) -> Result<String, CliError> {
    let methods = match &args.methods {
        Some(labels) => labels.iter().map(|l| parse_method_label(l)).collect::<Result<Vec<_>, _>>()?,
        None => bench_methods(),
    };
    let cases = match &args.dir {
        Some(dir) => load_dir(dir)?,
        None => bench_cases()?,
    };
    Ok(bench_csv(&run_suite(&cases, &methods)?))
}

pub fn cmd_bench(args: &BenchArgs) -> Result<i32, CliError> {
    let text = bench_table(args)?;
    emit(&text, args.output.as_deref(), args.force)?;
    Ok(0)
}
