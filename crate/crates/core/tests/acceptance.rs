#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::f64::consts::PI;
use std::process::{Command, ExitCode};

use steklov_shell::eigensolver::{self, Problem, AUTO_MAX_ORDER, DEFAULT_ORDER, DEFAULT_POINTS};
use steklov_shell::geometry::ShellConfig;
use steklov_shell::oracle;
use steklov_shell::rayleigh::{self, tau1_concentric};
use steklov_shell::shell_spectrum::{
    delta0, delta_pair, normalized_increment, optimal_eps, scale_invariant, sigma1_closed_form,
};
use steklov_shell::special_fn::{catalan_series, log_series_identity};
use steklov_shell::verify::{concentric_spectrum_error, offset_grid};
use steklov_shell::Result;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

fn cfg(n: usize, a: f64, d: f64) -> Result<ShellConfig> {
    ShellConfig::new(n, a, d)
}

fn radius_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 * 0.05).collect()
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn closed_form_consistency() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in 2..=6 {
        for a in radius_grid() {
            let s = sigma1_closed_form(n, a)?;
            let root = delta_pair(n, a, 1)?.0;
            let bisect = oracle::lower_root_bisection(n, a, 1)?;
            worst = worst.max(((s - root) / s).abs()).max(((s - bisect) / s).abs());
            cases += 1;
        }
    }
    outcome(worst < 1e-12, format!("{cases} cases, max relative gap {worst:.2e}"))
}

fn lower_branch_monotone() -> Result<Outcome> {
    let mut violations = 0;
    for n in 2..=6 {
        for a in radius_grid() {
            let lows = (1..=50).map(|k| Ok(delta_pair(n, a, k)?.0)).collect::<Result<Vec<_>>>()?;
            violations += lows.windows(2).filter(|w| !(w[1] > w[0])).count();
            if !(sigma1_closed_form(n, a)? < delta0(n, a)?) {
                violations += 1;
            }
        }
    }
    outcome(violations == 0, format!("{violations} violations"))
}

fn identity_suite() -> Result<Outcome> {
    let (mut w2, mut v2, mut w1, mut v1) = (0f64, 0f64, 0f64, 0f64);
    let mut min_inc = f64::INFINITY;
    for n in [2, 3, 4] {
        for a in [0.3, 0.5, 0.7] {
            let c0 = cfg(n, a, 0.0)?;
            let (w1_0, v1_0) = (rayleigh::w1(&c0)?, rayleigh::v1(&c0)?);
            let ds = offset_grid(a, 11, 0.95);
            let mut w3s = Vec::new();
            let mut v3s = Vec::new();
            for &d in &ds {
                let c = cfg(n, a, d)?;
                if d > 0.0 {
                    w2 = w2.max(rayleigh::w2(&c)?.abs());
                    v2 = v2.max(rayleigh::v2(&c)?.abs());
                    w1 = w1.max((rayleigh::w1(&c)? - w1_0).abs());
                    v1 = v1.max((rayleigh::v1(&c)? - v1_0).abs());
                }
                w3s.push(rayleigh::w3(&c)?);
                v3s.push(rayleigh::v3(&c)?);
            }
            for j in 1..ds.len() {
                if ds[j - 1] >= 0.1 * (1.0 - a) {
                    min_inc = min_inc.min(w3s[j] - w3s[j - 1]).min(v3s[j] - v3s[j - 1]);
                }
            }
        }
    }
    let ok = w2 < 1e-10 && v2 < 1e-10 && w1 < 1e-10 && v1 < 1e-10 && min_inc > 1e-8;
    outcome(
        ok,
        format!("|W2| {w2:.1e}, |V2| {v2:.1e}, W1 drift {w1:.1e}, V1 drift {v1:.1e}, min W3/V3 increment {min_inc:.2e}"),
    )
}

fn energy_decomposition() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in [2, 3, 4] {
        for a in [0.3, 0.6] {
            for f in [0.3, 0.8] {
                let c = cfg(n, a, f * (1.0 - a))?;
                let direct = oracle::direct_energy(&c)?;
                worst = worst.max((direct - rayleigh::steklov_bound(&c)?.energy).abs());
                cases += 1;
            }
        }
    }
    outcome(worst < 1e-8, format!("{cases} triples, max gap {worst:.2e}"))
}

fn rayleigh_anchor() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut monotone = true;
    for n in 2..=6 {
        for a in [0.2, 0.5, 0.8] {
            let bounds = offset_grid(a, 21, 0.95)
                .into_iter()
                .map(|d| Ok(rayleigh::steklov_bound(&cfg(n, a, d)?)?.bound))
                .collect::<Result<Vec<_>>>()?;
            worst = worst.max((bounds[0] - sigma1_closed_form(n, a)?).abs());
            monotone &= strictly_decreasing(&bounds);
        }
    }
    outcome(
        worst < 1e-9 && monotone,
        format!("15 pairs, max |bound(0) - closed form| {worst:.2e}, strictly decreasing: {monotone}"),
    )
}

fn planar_solver_oracle() -> Result<Outcome> {
    let (mut err, mut split, mut spectrum_err) = (0f64, 0f64, 0f64);
    for a in [0.2, 0.5, 0.8] {
        let r = eigensolver::solve_steklov(&cfg(2, a, 0.0)?, DEFAULT_ORDER, DEFAULT_POINTS)?;
        err = err.max((r.first_eigenvalue() - sigma1_closed_form(2, a)?).abs());
        split = split.max((r.eigenvalues[2] - r.eigenvalues[1]).abs() / r.eigenvalues[1]);
        spectrum_err = spectrum_err.max(concentric_spectrum_error(a, &r.eigenvalues)?);
    }
    outcome(
        err < 1e-8 && split < 1e-8 && spectrum_err < 1e-7,
        format!("sigma1 error {err:.2e}, double-eigenvalue split {split:.2e}, spectrum below delta0 error {spectrum_err:.2e}"),
    )
}

fn planar_monotonicity() -> Result<Outcome> {
    let mut monotone = true;
    let mut excess = f64::NEG_INFINITY;
    let mut unconverged = 0;
    for a in [0.2, 0.5, 0.8] {
        let mut sigmas = Vec::new();
        for d in offset_grid(a, 20, 0.95) {
            let c = cfg(2, a, d)?;
            let s = eigensolver::solve_auto(&c, Problem::Steklov, AUTO_MAX_ORDER)?;
            unconverged += usize::from(!s.converged);
            let sigma = s.result.first_eigenvalue();
            excess = excess.max(sigma - rayleigh::steklov_bound(&c)?.bound);
            sigmas.push(sigma);
        }
        monotone &= strictly_decreasing(&sigmas);
    }
    outcome(
        monotone && excess <= 1e-8,
        format!(
            "strictly decreasing: {monotone}, max sigma1 - bound {excess:.2e}, \
             {unconverged}/60 points stopped by the conditioning cap"
        ),
    )
}

fn dirichlet_steklov() -> Result<Outcome> {
    let mut planar_err: f64 = 0.0;
    let mut monotone = true;
    for a in [0.2, 0.5, 0.8] {
        let r = eigensolver::solve_dirichlet_steklov(&cfg(2, a, 0.0)?, DEFAULT_ORDER, DEFAULT_POINTS)?;
        planar_err = planar_err.max((r.first_eigenvalue() - 1.0 / (1.0 / a).ln()).abs());
        let taus = offset_grid(a, 20, 0.95)
            .into_iter()
            .map(|d| {
                let s = eigensolver::solve_auto(&cfg(2, a, d)?, Problem::DirichletSteklov, AUTO_MAX_ORDER)?;
                Ok(s.result.first_eigenvalue())
            })
            .collect::<Result<Vec<_>>>()?;
        monotone &= strictly_decreasing(&taus);
    }
    let mut anchor: f64 = 0.0;
    let mut below = true;
    for n in [3, 4, 5] {
        for a in [0.2, 0.5, 0.8] {
            let b0 = rayleigh::ds_bound(&cfg(n, a, 0.0)?)?;
            anchor = anchor.max((b0 - tau1_concentric(n, a)?).abs());
            for d in offset_grid(a, 21, 0.95).into_iter().skip(1) {
                below &= rayleigh::ds_bound(&cfg(n, a, d)?)? < b0;
            }
        }
    }
    outcome(
        planar_err < 1e-8 && monotone && anchor < 1e-9 && below,
        format!(
            "planar tau1(0) error {planar_err:.2e}, tau1 strictly decreasing: {monotone}, \
             ds_bound(0) error {anchor:.2e}, ds_bound(d) < ds_bound(0): {below}"
        ),
    )
}

fn planar_identities() -> Result<Outcome> {
    let mut log_int: f64 = 0.0;
    for j in 1..=9 {
        log_int = log_int.max(oracle::planar_log_integral(0.1 * j as f64)?.abs());
    }
    let (mut cat, mut log_series) = (0f64, 0f64);
    for j in 1..=20 {
        let x = 0.012 * j as f64;
        let closed = 2.0 * (2.0 / (1.0 + (1.0 - 4.0 * x).sqrt())).ln();
        cat = cat.max((catalan_series(x)? - closed).abs());
        let d = 0.045 * j as f64;
        log_series = log_series.max((log_series_identity(d)? - 2.0 * PI * (1.0 + d * d).ln()).abs());
    }
    outcome(
        log_int < 1e-10 && cat < 1e-10 && log_series < 1e-10,
        format!("log integral {log_int:.1e}, catalan {cat:.1e}, log series {log_series:.1e}"),
    )
}

fn fraser_schoen() -> Result<Outcome> {
    let mut detail = Vec::new();
    let mut ok = true;
    for n in [3, 4] {
        let target = 1.0 / (n - 1) as f64;
        let r2 = ((normalized_increment(n, 1e-2)? - target) / target).abs();
        let r3 = ((normalized_increment(n, 1e-3)? - target) / target).abs();
        ok &= r2 < 0.05 && r3 < 0.005;
        detail.push(format!("n={n}: {:.2}% at 1e-2, {:.3}% at 1e-3", 100.0 * r2, 100.0 * r3));
    }
    outcome(ok, detail.join("; "))
}

fn eps_sweep() -> Result<Outcome> {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [2, 3, 4] {
        let (eps, value) = optimal_eps(n)?;
        let (grid_eps, _) = oracle::grid_argmax(n, 10_000)?;
        let interior = eps > 0.0 && eps < 1.0;
        let above = value > scale_invariant(n, 0.0)? && value > scale_invariant(n, 0.9999)?;
        let gap = (eps - grid_eps).abs();
        ok &= interior && above && gap < 1e-4;
        detail.push(format!("n={n}: eps {eps:.5}, grid gap {gap:.1e}"));
    }
    outcome(ok, detail.join("; "))
}

fn run_cli(args: &[&str]) -> Result<(Vec<u8>, bool)> {
    let out = Command::new(env!("CARGO_BIN_EXE_steklov-shell"))
        .args(args)
        .output()
        .expect("binary runs");
    Ok((out.stdout, out.status.success()))
}

fn determinism() -> Result<Outcome> {
    let runs: [&[&str]; 6] = [
        &["verify", "--level", "fast"],
        &["--format", "csv", "verify", "--level", "fast"],
        &["--format", "csv", "spectrum", "--dim", "3", "--a", "0.4", "--kmax", "10"],
        &["--format", "csv", "bound", "--dim", "3", "--a", "0.4", "--d", "0.2"],
        &["--format", "csv", "solve", "--a", "0.5", "--d", "0.3"],
        &["--format", "csv", "sweep", "--problem", "steklov", "--dim", "2", "--a", "0.5", "--d-steps", "6"],
    ];
    let mut stable = 0;
    for args in runs {
        let (first, ok1) = run_cli(args)?;
        let (second, ok2) = run_cli(args)?;
        if ok1 && ok2 && !first.is_empty() && first == second {
            stable += 1;
        }
    }
    outcome(stable == runs.len(), format!("{stable}/{} invocations byte-identical", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("closed-form consistency", closed_form_consistency),
        ("lower-branch monotonicity", lower_branch_monotone),
        ("identity suite", identity_suite),
        ("energy decomposition", energy_decomposition),
        ("rayleigh anchor", rayleigh_anchor),
        ("planar solver oracle", planar_solver_oracle),
        ("planar monotonicity", planar_monotonicity),
        ("dirichlet-steklov", dirichlet_steklov),
        ("planar identities", planar_identities),
        ("fraser-schoen expansion", fraser_schoen),
        ("optimal hole ratio", eps_sweep),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (status, detail) = match check() {
            Ok(o) => (if o.passed { "PASS" } else { "FAIL" }, o.detail),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("criterion {:>2} {status} {name}: {detail}", i + 1);
    }
    if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
