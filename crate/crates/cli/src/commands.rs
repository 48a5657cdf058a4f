//! Subcommand implementations. Each builds a [`RunReport`]; errors at
//! individual points are recorded in the row instead of aborting the run.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use biortho_core::askey::{askey_certify, AskeyRequest};
use biortho_core::electro::{
    energy_grad, minimize_energy, para_poly, roots_on_circle, stationarity_residual, EnergyConfig,
    MinimizeOptions, ZeroConfiguration,
};
use biortho_core::expansion::{expand_p, xi_exact, ExpansionRequest, Series, BOUND_SLACK};
use biortho_core::hyp::{eval_p, eval_q};
use biortho_core::quad::{biorth_norm, inner_product_matrix};
use biortho_core::{c64, Complex, Params, QuadratureRule};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Record, RunReport};
use crate::{AskeyArgs, BiorthArgs, CertifyArgs, ElectroArgs, EvalArgs, ParamArgs, Settings, Which};

/// (α, β) = (1, 0.25) and (0.75, 0.6i).
pub const DEFAULT_PAIRS: [Params; 2] = [
    Params::new(c64(1.0, 0.0), c64(0.25, 0.0)),
    Params::new(c64(0.75, 0.0), c64(0.0, 0.6)),
];

/// Tolerance on inner-product entries.
pub const BIORTH_TOL: f64 = 1e-8;

/// Largest accepted angle difference between minimizer and zeros.
pub const ANGLE_TOL: f64 = 1e-6;

/// Largest accepted stationarity residual at the zeros.
pub const STATIONARITY_TOL: f64 = 1e-8;

/// Minimum gap between angles of a random start.
const START_GAP: f64 = 1e-3;

fn param_pairs(p: &ParamArgs) -> Vec<Params> {
    if p.alpha.is_none() && p.beta.is_none() {
        return DEFAULT_PAIRS.to_vec();
    }
    let alpha = p.alpha.map_or(c64(1.0, 0.0), |a| a.0);
    let beta = p.beta.map_or(c64(0.0, 0.0), |b| b.0);
    vec![Params::new(alpha, beta)]
}

fn fmt_c(z: Complex) -> String {
    format!("{},{}", z.re, z.im)
}

fn fmt_list<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn params_input(report: &mut RunReport, pairs: &[Params]) {
    report.input("alpha", fmt_list(pairs.iter().map(|p| fmt_c(p.alpha))));
    report.input("beta", fmt_list(pairs.iter().map(|p| fmt_c(p.beta))));
}

fn failed(mut r: Record, e: impl ToString) -> Record {
    r.detail = Some(e.to_string());
    r.pass = Some(false);
    r
}

fn all_pass(report: &RunReport) -> bool {
    report.outputs.iter().all(|r| r.pass != Some(false))
}

pub fn eval(a: &EvalArgs) -> RunReport {
    let mut report = RunReport::new("eval");
    let params = param_pairs(&a.params)[0];
    report.input("n", a.n);
    report.input("which", a.which.as_str());
    report.input("z", fmt_list(a.z.iter().map(|z| fmt_c(z.0))));
    params_input(&mut report, &[params]);
    for z in a.z.iter().map(|z| z.0) {
        let row = Record {
            n: Some(a.n),
            z: Some(z.into()),
            alpha: Some(params.alpha.into()),
            beta: Some(params.beta.into()),
            which: Some(a.which.as_str().into()),
            ..Record::default()
        };
        let v = match a.which {
            Which::P => eval_p(a.n, z, params),
            Which::Q => eval_q(a.n, z, params),
        };
        report.push(match v {
            Ok(v) => Record { value: Some(v.into()), ..row },
            Err(e) => Record { detail: Some(e.to_string()), ..row },
        });
    }
    report
}

fn rule_for(settings: Settings) -> QuadratureRule {
    settings.quad_nodes.map_or_else(QuadratureRule::default, QuadratureRule::tanh_sinh)
}

pub fn certify_expansion(a: &CertifyArgs, settings: Settings) -> RunReport {
    let mut report = RunReport::new("certify-expansion");
    let pairs = param_pairs(&a.params);
    let orders: Vec<(usize, usize)> = match (a.p1, a.p2) {
        (None, None) => a.p_list.iter().map(|&p| (p, p)).collect(),
        (p1, p2) => vec![(p1.or(p2).unwrap_or(0), p2.or(p1).unwrap_or(0))],
    };
    report.input("n_list", fmt_list(&a.n_list));
    report.input("z_list", fmt_list(a.z_list.0.iter().map(|&z| fmt_c(z))));
    report.input("orders", fmt_list(orders.iter().map(|(p1, p2)| format!("{p1},{p2}"))));
    report.input("which", a.which.as_str());
    report.input("quad_nodes", settings.quad_nodes.map_or("default".into(), |n| n.to_string()));
    params_input(&mut report, &pairs);
    let rule = rule_for(settings);

    let mut worst_ratio: f64 = 0.0;
    for params in &pairs {
        // Qₙ(z; α, β) = Pₙ(z; α, −β)
        let eff = match a.which {
            Which::P => *params,
            Which::Q => params.reflected(),
        };
        for &n in &a.n_list {
            for &z in &a.z_list.0 {
                for &(p1, p2) in &orders {
                    let row = Record {
                        n: Some(n),
                        z: Some(z.into()),
                        alpha: Some(params.alpha.into()),
                        beta: Some(params.beta.into()),
                        which: Some(a.which.as_str().into()),
                        p1: Some(p1),
                        p2: Some(p2),
                        ..Record::default()
                    };
                    let res = match expand_p(&ExpansionRequest { n, z, params: eff, p1, p2 }) {
                        Ok(r) => r,
                        Err(e) => {
                            report.push(failed(row, e));
                            continue;
                        }
                    };
                    let exact = match eval_p(n, z, eff) {
                        Ok(v) => v,
                        Err(e) => {
                            report.push(failed(row, e));
                            continue;
                        }
                    };
                    let err = (exact - res.value).norm();
                    let mut pass = err <= res.total_error_bound;
                    if res.total_error_bound > 0.0 {
                        worst_ratio = worst_ratio.max(err / res.total_error_bound);
                    }
                    // Remainders where computable; a ray obstruction is not a failure.
                    let xi1 = xi_exact(Series::First, n, p1, z, eff, &rule).ok().map(|x| x.norm());
                    let xi2 = xi_exact(Series::Second, n, p2, z, eff, &rule).ok().map(|x| x.norm());
                    for (xi, b) in [(xi1, res.bound_xi1), (xi2, res.bound_xi2)] {
                        if let Some(x) = xi {
                            pass &= x <= b * (1.0 + BOUND_SLACK);
                        }
                    }
                    report.push(Record {
                        value: Some(res.value.into()),
                        reference: Some(exact.into()),
                        error: Some(err),
                        bound: Some(res.total_error_bound),
                        xi1,
                        xi1_bound: Some(res.bound_xi1),
                        xi2,
                        xi2_bound: Some(res.bound_xi2),
                        pass: Some(pass),
                        ..row
                    });
                }
            }
        }
    }
    report.bounds = Some(BTreeMap::from([("max_error_to_bound_ratio".to_string(), worst_ratio)]));
    report.pass = Some(all_pass(&report));
    report
}

pub fn askey(a: &AskeyArgs) -> RunReport {
    let mut report = RunReport::new("askey");
    let pairs = param_pairs(&a.params);
    report.input("n", fmt_list(&a.n));
    report.input("theta", fmt_list(a.theta.iter().map(|t| t.0)));
    report.input("k", fmt_list(&a.k));
    params_input(&mut report, &pairs);
    for params in &pairs {
        for &n in &a.n {
            for theta in a.theta.iter().map(|t| t.0) {
                for &k in &a.k {
                    let row = Record {
                        n: Some(n),
                        theta: Some(theta),
                        k: Some(k),
                        alpha: Some(params.alpha.into()),
                        beta: Some(params.beta.into()),
                        ..Record::default()
                    };
                    report.push(match askey_certify(&AskeyRequest { n, theta, k, params: *params }) {
                        Ok(c) => Record {
                            value: Some(c.value.into()),
                            reference: Some(c.reference.into()),
                            error: Some(c.error),
                            bound: Some(c.remainder_bound),
                            pass: Some(c.pass),
                            ..row
                        },
                        Err(e) => failed(row, e),
                    });
                }
            }
        }
    }
    report.pass = Some(all_pass(&report));
    report
}

/// Uniformly random sorted angles in (0, 2π) with gaps of at least 1e−3.
pub fn random_start(rng: &mut ChaCha8Rng, n: usize) -> ZeroConfiguration {
    loop {
        let t: Vec<f64> = (0..n).map(|_| rng.random_range(START_GAP..TAU - START_GAP)).collect();
        if let Ok(z) = ZeroConfiguration::from_unsorted(t) {
            if z.thetas().windows(2).all(|w| w[1] - w[0] >= START_GAP) {
                return z;
            }
        }
    }
}

pub fn electro(a: &ElectroArgs) -> RunReport {
    let mut report = RunReport::new("electro");
    report.input("n", a.n);
    report.input("p", a.p);
    report.input("q", a.q);
    report.input("starts", a.starts);
    report.input("seed", a.seed);
    report.input("tol", a.tol);
    report.input("maxiter", a.maxiter);
    let base = Record {
        n: Some(a.n),
        p: Some(a.p),
        q: Some(a.q),
        ..Record::default()
    };
    let cfg = match EnergyConfig::new(a.n, a.p, a.q) {
        Ok(c) => c,
        Err(e) => {
            report.push(failed(base, e));
            report.pass = Some(false);
            return report;
        }
    };
    let zeros = match para_poly(a.n, cfg.params()).and_then(|b| roots_on_circle(&b, 1e-10)) {
        Ok(z) => z,
        Err(e) => {
            report.push(failed(base, e));
            report.pass = Some(false);
            return report;
        }
    };
    let mut bounds = BTreeMap::new();
    let residual = stationarity_residual(&zeros, &cfg).unwrap_or(f64::INFINITY);
    let grad = energy_grad(&cfg, &zeros).map_or(f64::INFINITY, |g| g.iter().fold(0.0, |m: f64, v| m.max(v.abs())));
    bounds.insert("stationarity_residual".to_string(), residual);
    bounds.insert("max_gradient_at_zeros".to_string(), grad);
    let mut pass = residual < STATIONARITY_TOL;

    for (j, &t) in zeros.thetas().iter().enumerate() {
        report.push(Record {
            k: Some(j),
            root_theta: Some(t),
            ..base.clone()
        });
    }
    let opts = MinimizeOptions { tol: a.tol, maxiter: a.maxiter };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut max_dev: f64 = 0.0;
    for s in 0..a.starts {
        let init = random_start(&mut rng, a.n);
        match minimize_energy(&cfg, &init, opts) {
            Ok(found) => {
                for (j, (&r, &m)) in zeros.thetas().iter().zip(found.thetas()).enumerate() {
                    let dev = (r - m).abs();
                    max_dev = max_dev.max(dev);
                    report.push(Record {
                        k: Some(j),
                        start: Some(s),
                        root_theta: Some(r),
                        min_theta: Some(m),
                        error: Some(dev),
                        pass: Some(dev < ANGLE_TOL),
                        ..base.clone()
                    });
                }
            }
            Err(e) => {
                pass = false;
                report.push(failed(Record { start: Some(s), ..base.clone() }, e));
            }
        }
    }
    bounds.insert("max_deviation".to_string(), max_dev);
    report.bounds = Some(bounds);
    report.pass = Some(pass && all_pass(&report));
    report
}

pub fn biorth(a: &BiorthArgs, settings: Settings) -> RunReport {
    let mut report = RunReport::new("biorth");
    let pairs = param_pairs(&a.params);
    report.input("nmax", a.nmax);
    report.input("quad_nodes", settings.quad_nodes.map_or("default".into(), |n| n.to_string()));
    params_input(&mut report, &pairs);
    let (mut max_off, mut max_diag): (f64, f64) = (0.0, 0.0);
    for params in &pairs {
        let base = Record {
            alpha: Some(params.alpha.into()),
            beta: Some(params.beta.into()),
            ..Record::default()
        };
        let matrix = match inner_product_matrix(a.nmax, *params, settings.quad_nodes) {
            Ok(m) => m,
            Err(e) => {
                report.push(failed(base, e));
                continue;
            }
        };
        for (n, row) in matrix.iter().enumerate() {
            for (m, &v) in row.iter().enumerate() {
                let cell = Record {
                    n: Some(n),
                    m: Some(m),
                    ..base.clone()
                };
                let expected = if n == m { biorth_norm(n, *params) } else { Ok(c64(0.0, 0.0)) };
                report.push(match expected {
                    Ok(e) => {
                        let err = (v - e).norm();
                        if n == m {
                            max_diag = max_diag.max(err);
                        } else {
                            max_off = max_off.max(err);
                        }
                        Record {
                            value: Some(v.into()),
                            reference: Some(e.into()),
                            error: Some(err),
                            pass: Some(err < BIORTH_TOL),
                            ..cell
                        }
                    }
                    Err(e) => failed(cell, e),
                });
            }
        }
    }
    report.bounds = Some(BTreeMap::from([
        ("max_diagonal_error".to_string(), max_diag),
        ("max_off_diagonal".to_string(), max_off),
    ]));
    report.pass = Some(all_pass(&report));
    report
}
