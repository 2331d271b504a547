use oddzeta::kernels::{
    dirac_resolvent_scalar, gaussian_time_integral, gaussian_time_integral_quadrature, heat_scalar_spinor,
    resolvent_scalar, KernelPoint,
};
use oddzeta::words::estimate_delta_with;
use oddzeta::zeta::{eta_all, zeta_odd};
use oddzeta::zograf::{check_eta_f_identity, pluriharmonicity_scan, ScanOptions, ScanOracle};
use oddzeta::{ClassTable, PoincareEstimate, TermSet, Variant, C64};
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{num, Meta, OutDir};
use crate::CliError;

fn delta(cfg: &RunConfig) -> Result<PoincareEstimate, CliError> {
    let t = &cfg.tolerances;
    Ok(estimate_delta_with(&cfg.generators, cfg.cutoffs.delta_word_length, t.delta_bracket, t.memory_budget)?)
}

fn table(cfg: &RunConfig) -> Result<ClassTable, CliError> {
    Ok(ClassTable::build_with_budget(&cfg.generators, cfg.cutoffs.word_length, cfg.tolerances.memory_budget)?)
}

fn pair(z: C64) -> serde_json::Value {
    json!([z.re, z.im])
}

pub fn spectrum(cfg: &RunConfig, meta: &Meta, out: &OutDir) -> Result<(), CliError> {
    let table = table(cfg)?;
    let rows: Vec<String> = table.csv_rows().collect();
    out.write_csv("spectrum.csv", meta, ClassTable::CSV_HEADER, &rows)?;
    Ok(())
}

pub fn zeta(cfg: &RunConfig, meta: &Meta, out: &OutDir) -> Result<(), CliError> {
    let est = delta(cfg)?;
    let ts = TermSet::from_table(&table(cfg)?, cfg.zeta.variant, cfg.zeta.swap_characters, Some(est.delta_hat));
    let mut evaluations = Vec::with_capacity(cfg.lambda.len());
    for &l in &cfg.lambda {
        if l.re <= est.delta_hat {
            evaluations.push(json!({ "lambda": pair(l), "nonconvergent": true }));
            continue;
        }
        let z = zeta_odd(&ts, l)?;
        evaluations.push(json!({
            "variant": z.variant,
            "lambda": pair(z.lambda),
            "value": pair(z.value),
            "tail_bound": z.tail_bound,
            "cutoff_L": z.cutoff_l,
            "nonconvergent": false,
        }));
    }
    out.write_json(
        "zeta.json",
        &json!({ "meta": meta, "delta_hat": est.delta_hat, "evaluations": evaluations }),
    )?;
    Ok(())
}

pub fn eta(cfg: &RunConfig, meta: &Meta, out: &OutDir) -> Result<(), CliError> {
    let est = delta(cfg)?;
    if !(est.delta_hat < 0.0) {
        return Err(oddzeta::Error::DeltaNotNegative(est.delta_hat).into());
    }
    let table = table(cfg)?;
    let ts = TermSet::from_table(&table, cfg.zeta.variant, cfg.zeta.swap_characters, Some(est.delta_hat));
    let mut by_route = serde_json::Map::new();
    for e in eta_all(&ts)? {
        by_route.insert(
            e.route.name().to_string(),
            json!({ "value": e.value, "error_bound": e.error_bound, "imaginary_residual": e.imaginary_residual }),
        );
    }
    let signature = TermSet::from_table(&table, Variant::Signature, cfg.zeta.swap_characters, Some(est.delta_hat));
    let chk = check_eta_f_identity(&signature, cfg.cutoffs.inner)?;
    out.write_json(
        "eta.json",
        &json!({
            "meta": meta,
            "eta_by_route": by_route,
            "delta_hat": est.delta_hat,
            "delta_bracket": [est.bracket.0, est.bracket.1],
            "residual_F_identity": chk.residual,
            "cross_check_F_identity": chk.cross_check,
            "error_budget_F_identity": chk.error_budget,
            "log_F": pair(chk.f.log_value),
        }),
    )?;
    Ok(())
}

fn cell<E>(r: Result<C64, E>) -> [String; 2] {
    match r {
        Ok(z) => [num(z.re), num(z.im)],
        Err(_) => [num(f64::NAN), num(f64::NAN)],
    }
}

pub fn kernels(cfg: &RunConfig, meta: &Meta, out: &OutDir) -> Result<(), CliError> {
    let mut heat = Vec::new();
    for &t in &cfg.t {
        for &r in &cfg.r {
            let (p, m) = heat_scalar_spinor(&KernelPoint::heat(r, t, cfg.heat_n))?;
            heat.push(
                [num(t), num(r), num(p.re), num(p.im), num(m.re), num(m.im), num((p + m).norm())].join(","),
            );
        }
    }
    out.write_csv(
        "kernels_heat.csv",
        meta,
        "t,r,p_plus_re,p_plus_im,p_minus_re,p_minus_im,abs_p_plus_plus_p_minus",
        &heat,
    )?;

    let d = cfg.kernel_dimension;
    let mut resolvent = Vec::new();
    for &l in &cfg.lambda {
        for &r in &cfg.r {
            let p = KernelPoint::resolvent(r, l);
            let closed = gaussian_time_integral(l, r);
            let quad = gaussian_time_integral_quadrature(l, r).map(|q| q.value);
            let diff = match (&closed, &quad) {
                (Ok(a), Ok(b)) => (a - b).norm() / a.norm(),
                _ => f64::NAN,
            };
            let mut row = vec![num(l.re), num(l.im), num(r)];
            row.extend(cell(resolvent_scalar(&p, d)));
            row.extend(cell(dirac_resolvent_scalar(&p, d)));
            row.extend(cell(closed));
            row.extend(cell(quad));
            row.push(num(diff));
            resolvent.push(row.join(","));
        }
    }
    out.write_csv(
        "kernels_resolvent.csv",
        meta,
        "lambda_re,lambda_im,r,resolvent_re,resolvent_im,dirac_re,dirac_im,gaussian_closed_re,gaussian_closed_im,gaussian_quadrature_re,gaussian_quadrature_im,gaussian_rel_diff",
        &resolvent,
    )?;
    Ok(())
}

pub fn scan(cfg: &RunConfig, meta: &Meta, out: &OutDir) -> Result<(), CliError> {
    let point = cfg
        .schottky
        .as_ref()
        .ok_or_else(|| CliError::Config("[group]: scan needs the schottky parameter form".into()))?;
    let indices: Vec<usize> = match cfg.scan.param_index {
        Some(k) if k >= point.params.len() => {
            return Err(CliError::Config(format!("[scan] param_index: {k} out of range for {} parameters", point.params.len())))
        }
        Some(k) => vec![k],
        None => (0..point.params.len()).collect(),
    };
    let opts = ScanOptions {
        cutoff_l: cfg.cutoffs.word_length,
        delta_cutoff: cfg.cutoffs.delta_word_length,
        h: cfg.scan.h,
        oracle: cfg.scan.oracle,
    };
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    let mut within = true;
    for &k in &indices {
        let rep = pluriharmonicity_scan(point, k, &opts)?;
        let harmonic = pluriharmonicity_scan(point, k, &ScanOptions { oracle: ScanOracle::HarmonicCubic, ..opts })?;
        let modulus = pluriharmonicity_scan(point, k, &ScanOptions { oracle: ScanOracle::Modulus, ..opts })?;
        within &= rep.fd_laplacian.abs() < rep.error_budget;
        rows.push(
            [
                k.to_string(),
                num(rep.h),
                num(rep.fd_laplacian),
                num(rep.error_budget),
                num(rep.fd_laplacian_half),
                num(harmonic.fd_laplacian),
                num(modulus.fd_laplacian),
            ]
            .join(","),
        );
        reports.push(json!({
            "report": rep,
            "oracle_harmonic": harmonic.fd_laplacian,
            "oracle_modulus": modulus.fd_laplacian,
        }));
    }
    out.write_csv(
        "scan.csv",
        meta,
        "param_index,h,fd_laplacian,error_budget,fd_laplacian_half,oracle_harmonic,oracle_modulus",
        &rows,
    )?;
    out.write_json(
        "scan.json",
        &json!({
            "meta": meta,
            "params": point.params.iter().map(|&z| pair(z)).collect::<Vec<_>>(),
            "oracle": cfg.scan.oracle,
            "reports": reports,
            "all_within_budget": within,
        }),
    )?;
    Ok(())
}
