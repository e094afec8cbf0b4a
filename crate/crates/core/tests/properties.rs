use proptest::prelude::*;
use zolo_core::corpus::{compute_metrics, gen_spd_logspectrum};
use zolo_core::elliptic::{agm_k, inv_sn, jacobi_scd, ModulusPair, Which};
use zolo_core::linalg::{lu_factor, DenseMatrix, NormKind, Side};
use zolo_core::sqrtm::{sqrtm_drive, zolo_step, Form, IterationOptions, IterationState};
use zolo_core::zolo::{build_partial_fraction, epsilon_of, eval_rhat, next_alpha, rho_of, ZoloParams};
use zolo_core::{C64, UNIT_ROUNDOFF};

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn degrees() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=8).prop_flat_map(|m| (Just(m), prop_oneof![Just(m - 1), Just(m)]))
}

fn matrix(n: usize, entries: &[f64]) -> DenseMatrix {
    DenseMatrix::from_real_fn(n, |i, j| entries[i * n + j]).unwrap()
}

fn spd(n: usize, entries: &[f64]) -> DenseMatrix {
    let b = matrix(n, entries);
    b.transpose().matmul(&b).unwrap().shift(re(0.1)).unwrap()
}

fn rel(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    a.sub(b).unwrap().norm(NormKind::Inf) / b.norm(NormKind::Inf)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identities(k in 1e-6f64..0.999, t in 0.0f64..1.0) {
        let mp = ModulusPair::new(k).unwrap();
        let u = t * agm_k(mp, Which::Modulus).unwrap();
        let (sn, cn, dn) = jacobi_scd(u, mp);
        prop_assert!((sn * sn + cn * cn - 1.0).abs() <= 16.0 * UNIT_ROUNDOFF);
        prop_assert!((dn * dn + k * k * sn * sn - 1.0).abs() <= 16.0 * UNIT_ROUNDOFF);
        if t > 1e-3 && t < 0.9 {
            let back = inv_sn(re(sn), mp).unwrap();
            prop_assert!((back.re - u).abs() <= 1e-10 * u, "{} vs {}", back.re, u);
        }
    }

    #[test]
    fn shifts_pair_and_residues_positive((m, ell) in degrees(), la in -8.0f64..-0.1) {
        let alpha = 10f64.powf(la);
        let pf = build_partial_fraction(ZoloParams::new(m, ell, alpha).unwrap()).unwrap();
        let c = pf.all_c();
        let n = c.len() + 1;
        for j in 1..n {
            let pair = c[j - 1] * c[n - j - 1];
            prop_assert!((pair / (alpha * alpha) - 1.0).abs() < 1e-9, "c_{} c_{}", j, n - j);
        }
        prop_assert!(c.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(pf.residues().iter().all(|&a| a > 0.0));
        prop_assert!(pf.scale() > 0.0);
    }

    #[test]
    fn rhat_bounds_on_interval((m, ell) in degrees(), la in -6.0f64..-0.1, t in 0.0f64..1.0) {
        let alpha = 10f64.powf(la);
        let p = ZoloParams::new(m, ell, alpha).unwrap();
        let x = alpha + (1.0 - alpha) * t;
        let ratio = eval_rhat(p, re(x * x)).unwrap().re / x;
        let eps = epsilon_of(p).unwrap();
        prop_assert!(ratio >= 1.0 - 1e-12);
        prop_assert!(ratio <= (1.0 + eps) / (1.0 - eps) * (1.0 + 1e-12));
        prop_assert!(eps <= 4.0 * rho_of(alpha).unwrap().powi(-(p.order() as i32)) * (1.0 + 1e-12));
    }

    #[test]
    fn rhat_conjugate_symmetry((m, ell) in degrees(), x in 0.01f64..2.0, y in 0.01f64..2.0) {
        let p = ZoloParams::new(m, ell, 0.05).unwrap();
        let z = C64::new(x, y);
        let a = eval_rhat(p, z).unwrap();
        let b = eval_rhat(p, z.conj()).unwrap();
        prop_assert!((a.conj() - b).norm() <= 1e-13 * a.norm());
    }

    #[test]
    fn alpha_sequence_increases_to_one((m, ell) in degrees(), la in -10.0f64..-0.1) {
        let mut alpha = 10f64.powf(la);
        for _ in 0..12 {
            let next = next_alpha(m, ell, alpha).unwrap();
            prop_assert!(next >= alpha && next <= 1.0);
            alpha = next;
        }
        // the clamp to exactly 1 needs 1 - alpha < u; rounding may also park alpha at 1 - 2u
        prop_assert!(1.0 - alpha <= 4.0 * UNIT_ROUNDOFF, "{alpha}");
    }

    #[test]
    fn lu_solves(entries in proptest::collection::vec(-1.0f64..1.0, 36)) {
        let a = matrix(6, &entries).shift(re(3.0)).unwrap();
        let b = DenseMatrix::from_real_fn(6, |i, j| (i as f64 - j as f64).sin()).unwrap();
        let f = lu_factor(&a);
        let x = f.solve(&b, Side::Left).unwrap();
        prop_assert!(rel(&a.matmul(&x).unwrap(), &b) < 1e-13);
        let x = f.solve(&b, Side::Right).unwrap();
        prop_assert!(rel(&x.matmul(&a).unwrap(), &b) < 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sqrtm_of_spd_commutes_and_solves(entries in proptest::collection::vec(-1.0f64..1.0, 36), pick in 0usize..4) {
        let n = 6;
        let a = spd(n, &entries);
        let opts = [
            IterationOptions::zolotarev(4, 4),
            IterationOptions::zolotarev(2, 1).with_form(Form::Full),
            IterationOptions::pade(3, 3),
            IterationOptions::denman_beavers(),
        ][pick].clone();
        let r = sqrtm_drive(&a, &opts).unwrap();
        prop_assert!(r.report.converged(), "{} {:?}", opts.label(), r.report.reason);
        let x = &r.x;
        let comm = x.matmul(&a).unwrap().sub(&a.matmul(x).unwrap()).unwrap().norm(NormKind::Inf)
            / (x.norm(NormKind::Inf) * a.norm(NormKind::Inf));
        prop_assert!(comm <= 1e2 * n as f64 * UNIT_ROUNDOFF, "commutator {comm:e}");
        let alpha_inf = x.norm(NormKind::Inf).powi(2) / a.norm(NormKind::Inf);
        prop_assert!(r.report.rel_residual <= 1e3 * n as f64 * UNIT_ROUNDOFF * alpha_inf);
        let xz = x.matmul(&r.x_inv).unwrap();
        prop_assert!(rel(&xz, &DenseMatrix::identity(n)) < 1e-10);
    }

    #[test]
    fn full_and_alt_forms_agree(entries in proptest::collection::vec(-1.0f64..1.0, 100), (m, ell) in degrees()) {
        let n = 10;
        let a = matrix(n, &entries).scale(re(0.05)).unwrap().shift(re(1.0)).unwrap();
        let a = a.scale(re(1.0 / a.norm(NormKind::Inf))).unwrap();
        let mut full = IterationState::initial(&a, 0.3);
        let mut alt = full.clone();
        for _ in 0..3 {
            full = zolo_step(&full, m, ell, Form::Full, NormKind::Inf).unwrap().0;
            alt = zolo_step(&alt, m, ell, Form::Alt, NormKind::Inf).unwrap().0;
            prop_assert!(rel(&alt.y, &full.y) < 1e-10);
            prop_assert!(rel(&alt.z, &full.z) < 1e-10);
        }
    }

    #[test]
    fn normalized_error_order(la in -6.0f64..-1.0, seed in 0u64..1000) {
        // spectrum in [alpha^2, 1]: e_{k+1} <= C e_k^{m+ell+1} for (2,2)
        let alpha = 10f64.powf(la);
        let d: Vec<f64> = (0..8).map(|i| alpha.powf(2.0 * ((i as f64 * 0.37 + seed as f64 * 0.001) % 1.0))).collect();
        let a = DenseMatrix::from_real_diag(&d).unwrap();
        let mut st = IterationState::initial(&a, alpha);
        let mut prev = f64::INFINITY;
        for _ in 0..4 {
            st = zolo_step(&st, 2, 2, Form::Alt, NormKind::Inf).unwrap().0;
            let c = 2.0 * st.alpha / (1.0 + st.alpha);
            let e = (0..8).map(|i| (c / (st.z.get(i, i).re * d[i].sqrt()) - 1.0).abs()).fold(0.0, f64::max);
            if prev < 0.5 && prev > 1e-12 {
                prop_assert!(e <= 10.0 * prev.powi(5) + 1e3 * UNIT_ROUNDOFF, "{e:e} after {prev:e}");
            }
            prev = e;
        }
    }

    #[test]
    fn logspectrum_error_tracks_conditioning(la in -5.0f64..-1.0, seed in 0u64..1000) {
        let tc = gen_spd_logspectrum(8, 10f64.powf(la), seed).unwrap();
        let r = sqrtm_drive(&tc.matrix, &IterationOptions::zolotarev(8, 8)).unwrap();
        let m = compute_metrics(&tc, &r.x, &r.report).unwrap();
        let kappa = m.kappa_sqrt.unwrap();
        prop_assert!(m.rel_error.unwrap() <= 1e2 * UNIT_ROUNDOFF * kappa, "{:e} vs kappa {kappa:e}", m.rel_error.unwrap());
    }
}
