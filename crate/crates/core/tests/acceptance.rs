//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so that every criterion is evaluated and
//! reported even when an earlier one fails. Exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mathieu_wavelets::cascade;
use mathieu_wavelets::filterbank::{self, DEFAULT_THRESHOLD};
use mathieu_wavelets::mathieu::{solve_even, DEFAULT_TOLERANCE};
use mathieu_wavelets::ode;
use mathieu_wavelets::transform;
use mathieu_wavelets::{EigenSolution, FilterBank, MathieuParams, Result};

const A3_Q3: f64 = 9.915506290452134;
const A5_Q15: f64 = 31.957821252172874;
const EIGEN_TOL: f64 = 1e-9;
const EIGEN_TIME_LIMIT: Duration = Duration::from_secs(1);
const SHOOTING_TOL: f64 = 1e-8;
const TRAJECTORY_TOL: f64 = 1e-7;
const EXPECTED_TAPS: usize = 19;
const TAP_SLACK: usize = 1;
const NEAR_THRESHOLD_FACTOR: f64 = 10.0;
const LIMIT_EIGEN_TOL: f64 = 1e-12;
const HAAR_TAP_TOL: f64 = 1e-14;
const HAAR_ROUND_TRIP_TOL: f64 = 1e-12;
const BOX_TOL: f64 = 1e-12;
const PHASE_TOL: f64 = 1e-10;
const PHASE_SAMPLES: usize = 8192;
const CLOSED_FORM_TOL: f64 = 1e-8;
const SE_MAGNITUDE_TOL: f64 = 1e-8;
const SYMMETRY_TOL: f64 = 1e-10;
const ANTIPERIODIC_TOL: f64 = 1e-10;
const ANTIPERIODIC_POINTS: usize = 512;
const ORDERS: [i64; 4] = [1, 3, 5, 7];
const INTENSITIES: [f64; 4] = [0.0, 1.0, 3.0, 15.0];

// Measured power-complementarity residuals on 8192 frequencies, reported
// next to the fresh values but not asserted.
const QMF_GOLDEN: [(i64, f64, f64); 2] = [
    (3, 3.0, 9.562_843_301_500_21e-1),
    (5, 15.0, 6.945_812_905_396_975e-1),
];

type Check = fn() -> Result<Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn params(nu: i64, q: f64) -> MathieuParams {
    MathieuParams::new(nu, q).expect("valid parameters")
}

fn even(nu: i64, q: f64) -> Result<EigenSolution> {
    solve_even(params(nu, q), DEFAULT_TOLERANCE)
}

fn bank(nu: i64, q: f64, threshold: f64) -> Result<FilterBank> {
    FilterBank::build(params(nu, q), &even(nu, q)?, threshold)
}

fn grid(n: usize, span: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| span * k as f64 / n as f64)
}

fn eigenvalues() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (nu, q, want) in [(3, 3.0, A3_Q3), (5, 15.0, A5_Q15)] {
        let start = Instant::now();
        let a = even(nu, q)?.characteristic_value();
        let took = start.elapsed();
        let err = (a - want).abs();
        pass &= err <= EIGEN_TOL && took < EIGEN_TIME_LIMIT;
        parts.push(format!("a_{nu}({q}) = {a:.15} err {err:.1e} in {took:.1?}"));
    }
    Ok(Outcome::new(pass, parts.join("; ")))
}

fn oracle_agreement() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for nu in [1, 3, 5] {
        for q in INTENSITIES {
            let p = params(nu, q);
            let a = solve_even(p, DEFAULT_TOLERANCE)?.characteristic_value();
            let s = ode::shoot_even(p, ode::default_bracket(p)?, 1e-12)?;
            worst = worst.max((a - s).abs());
        }
    }
    let sol = even(3, 3.0)?;
    let traj = ode::integrate(
        sol.characteristic_value(),
        3.0,
        1.0,
        0.0,
        2.0 * PI,
        ode::DEFAULT_STEP,
    )?;
    let sup = ode::compare(&sol, &traj)?;
    Ok(Outcome::new(
        worst <= SHOOTING_TOL && sup <= TRAJECTORY_TOL,
        format!("max |shooting - matrix| {worst:.1e}; series vs trajectory (3,3) {sup:.1e}"),
    ))
}

fn tap_counts() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (nu, q) in [(3, 3.0), (5, 15.0)] {
        let truncated = bank(nu, q, DEFAULT_THRESHOLD)?;
        let full = bank(nu, q, 0.0)?;
        for (name, kept, all) in [
            ("h", truncated.h(), full.h()),
            ("g", truncated.g(), full.g()),
        ] {
            let count = kept.len();
            let smallest_kept = kept
                .iter()
                .map(|(_, v)| v.abs())
                .fold(f64::INFINITY, f64::min);
            let largest_dropped = all
                .iter()
                .filter(|(_, v)| v.abs() < DEFAULT_THRESHOLD)
                .map(|(_, v)| v.abs())
                .fold(0.0, f64::max);
            let window = DEFAULT_THRESHOLD / NEAR_THRESHOLD_FACTOR
                ..=DEFAULT_THRESHOLD * NEAR_THRESHOLD_FACTOR;
            let near = |v: f64| window.contains(&v);
            let slack = if near(smallest_kept) || near(largest_dropped) {
                TAP_SLACK
            } else {
                0
            };
            pass &= count.abs_diff(EXPECTED_TAPS) <= slack;
            parts.push(format!(
                "({nu},{q}) {name}: {count} taps, boundary kept {smallest_kept:.2e} dropped {largest_dropped:.2e}"
            ));
        }
    }
    Ok(Outcome::new(
        pass,
        format!("want {EXPECTED_TAPS}; {}", parts.join("; ")),
    ))
}

fn limits_and_haar() -> Result<Outcome> {
    let mut eig = 0.0f64;
    for nu in ORDERS {
        let a = even(nu, 0.0)?.characteristic_value();
        eig = eig.max((a - (nu * nu) as f64).abs());
    }
    let raw = bank(1, 0.0, DEFAULT_THRESHOLD)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let taps = [
        (raw.h().get(0), -r),
        (raw.h().get(1), -r),
        (raw.g().get(0), r),
        (raw.g().get(1), -r),
    ];
    let haar = taps
        .iter()
        .map(|(got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    let haar_len_ok = raw.h().len() == 2 && raw.g().len() == 2;

    let haar_bank = raw.sign_correct()?;
    let signal: Vec<f64> = (0..64)
        .map(|i| ((i * 7919) % 61) as f64 / 30.0 - 1.0)
        .collect();
    let round_trip = transform::round_trip_error(&signal, &haar_bank, 3)?;

    let out = cascade::run(&haar_bank, 6, 6)?;
    let boxed = out
        .t
        .iter()
        .zip(&out.phi)
        .map(|(&t, &p)| (p - if (0.0..1.0).contains(&t) { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max);

    Ok(Outcome::new(
        eig <= LIMIT_EIGEN_TOL
            && haar <= HAAR_TAP_TOL
            && haar_len_ok
            && round_trip <= HAAR_ROUND_TRIP_TOL
            && boxed <= BOX_TOL,
        format!("q=0 eigen {eig:.1e}; Haar taps {haar:.1e}; round trip {round_trip:.1e}; box {boxed:.1e}"),
    ))
}

fn identities() -> Result<Outcome> {
    let mut phase = 0.0f64;
    let mut closed = 0.0f64;
    let mut se = 0.0f64;
    let mut sym = 0.0f64;
    let mut norm = 0.0f64;
    for (nu, q) in [(1, 1.0), (3, 3.0), (5, 15.0), (7, 3.0)] {
        let sol = even(nu, q)?;
        phase = phase.max(filterbank::qmf_report(&sol, PHASE_SAMPLES)?.max_phase_residual());
        let full = FilterBank::build(params(nu, q), &sol, 0.0)?;
        for w in grid(512, 2.0 * PI) {
            closed = closed.max((full.h().dtft(w) - filterbank::transfer_h(&sol, w)?).norm());
            closed = closed.max((full.g().dtft(w) - filterbank::transfer_g(&sol, w)?).norm());
        }
        let omegas: Vec<f64> = grid(256, 2.0 * PI).collect();
        let via_se = filterbank::magnitudes_g_via_se(params(nu, q), &omegas)?;
        for (w, m) in omegas.iter().zip(via_se) {
            se = se.max((m - filterbank::transfer_g(&sol, *w)?.norm()).abs());
        }
        for b in [&full, &bank(nu, q, DEFAULT_THRESHOLD)?] {
            sym = sym.max(b.symmetry_defect());
            norm = norm.max((b.h().sum() / std::f64::consts::SQRT_2 + 1.0).abs());
            norm = norm.max(b.h().alternating_sum().abs());
        }
    }
    Ok(Outcome::new(
        phase <= PHASE_TOL
            && closed <= CLOSED_FORM_TOL
            && se <= SE_MAGNITUDE_TOL
            && sym <= SYMMETRY_TOL
            && norm <= SYMMETRY_TOL,
        format!(
            "phase {phase:.1e}; dtft vs closed form {closed:.1e}; se vs |G| {se:.1e}; symmetry {sym:.1e}; normalisation {norm:.1e}"
        ),
    ))
}

fn zero_design() -> Result<Outcome> {
    let mut bad = Vec::new();
    for nu in ORDERS {
        for q in INTENSITIES {
            let sol = even(nu, q)?;
            let (h, g) = (
                filterbank::zeros_of_h(&sol)?.len(),
                filterbank::zeros_of_g(&sol)?.len(),
            );
            if h != nu as usize || g != nu as usize {
                bad.push(format!("({nu},{q}) H {h} G {g}"));
            }
        }
    }
    let detail = if bad.is_empty() {
        "16 cases, H and G each with nu zeros".to_string()
    } else {
        bad.join("; ")
    };
    Ok(Outcome::new(bad.is_empty(), detail))
}

fn antiperiodicity() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for nu in ORDERS {
        for q in INTENSITIES {
            let sol = even(nu, q)?;
            for x in grid(ANTIPERIODIC_POINTS, PI) {
                worst = worst.max((sol.eval(x + PI) + sol.eval(x)).abs());
            }
        }
    }
    Ok(Outcome::new(
        worst <= ANTIPERIODIC_TOL,
        format!("max |ce(x+pi) + ce(x)| {worst:.1e}"),
    ))
}

fn honest_non_reproduction() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (nu, q) in [(3, 3.0), (5, 15.0)] {
        let b = bank(nu, q, DEFAULT_THRESHOLD)?.sign_correct()?;
        let deltas = [2, 4, 6]
            .iter()
            .map(|&i| Ok(cascade::run(&b, i, 6)?.delta))
            .collect::<Result<Vec<f64>>>()?;
        pass &= deltas[2] < deltas[1] && deltas[1] < deltas[0];
        parts.push(format!(
            "({nu},{q}) deltas {:.3} {:.3} {:.3}",
            deltas[0], deltas[1], deltas[2]
        ));
    }
    for (nu, q, golden) in QMF_GOLDEN {
        let r = filterbank::qmf_report(&even(nu, q)?, PHASE_SAMPLES)?.max_qmf_residual();
        parts.push(format!(
            "({nu},{q}) power residual {r:.6} (recorded {golden:.6})"
        ));
    }
    let decay = [0.1, 0.01, 0.001]
        .iter()
        .map(|&q| Ok(filterbank::qmf_report(&even(3, q)?, PHASE_SAMPLES)?.max_qmf_residual()))
        .collect::<Result<Vec<f64>>>()?;
    pass &= decay[1] < decay[0] && decay[2] < decay[1];
    parts.push(format!(
        "q -> 0 residuals {:.2e} {:.2e} {:.2e}",
        decay[0], decay[1], decay[2]
    ));
    Ok(Outcome::new(pass, parts.join("; ")))
}

fn determinism() -> Result<Outcome> {
    let dir = std::env::temp_dir().join(format!("mathieu-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir)
        .map_err(|e| mathieu_wavelets::Error::InvalidArgument(e.to_string()))?;
    let runs: [&[&str]; 4] = [
        &["eigen", "--nu", "3", "--q", "3", "--format", "json"],
        &["filters", "--nu", "5", "--q", "15"],
        &["spectrum", "--nu", "3", "--q", "3", "--samples", "256"],
        &["cascade", "--nu", "3", "--q", "3", "--iterations", "6"],
    ];
    let mut identical = 0;
    for args in runs {
        let mut files = Vec::new();
        for k in 0..2 {
            let path = dir.join(format!("{}-{k}", args[0]));
            let ok = Command::new(env!("CARGO_BIN_EXE_mathieu"))
                .args(args)
                .arg("-o")
                .arg(&path)
                .status()
                .map(|s| s.success())
                .unwrap_or(false);
            files.push(if ok { std::fs::read(&path).ok() } else { None });
        }
        if let [Some(a), Some(b)] = &files[..] {
            if !a.is_empty() && a == b {
                identical += 1;
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(Outcome::new(
        identical == runs.len(),
        format!(
            "{identical}/{} commands byte-identical across two runs",
            runs.len()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("eigenvalue reproduction", eigenvalues),
        ("oracle agreement", oracle_agreement),
        ("FIR truncation count", tap_counts),
        ("limit and Haar suite", limits_and_haar),
        ("identity suite", identities),
        ("zero design", zero_design),
        ("Floquet antiperiodicity", antiperiodicity),
        (
            "cascade and power residual diagnostics",
            honest_non_reproduction,
        ),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "criterion {} {}: {} ({})",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            name,
            outcome.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
