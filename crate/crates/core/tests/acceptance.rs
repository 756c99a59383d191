//! Acceptance run: one PASS/FAIL line per criterion, then details of any
//! failure. Every comparison is exact over the rationals.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treehopf::laws::{run_suite, LawReport, SweepConfig};
use treehopf::renorm::{dyson_check_electron, dyson_check_photon, make_toy_character, RingKind};
use treehopf::series::*;
use treehopf::*;

use AlgebraTag::{Alpha, Electron, Gamma};

/// Basis words of total order at most this are swept by the law suites.
const SWEEP_ORDER: usize = 4;
/// Sweep order for the negative controls: smaller, as every corruption
/// should already be caught at low order.
const CONTROL_ORDER: usize = 3;
const SERIES_ORDER: usize = 4;
const SERIES_INSTANCES: u64 = 50;
const SERIES_MATRIX_DIM: usize = 2;
const DYSON_ORDER: usize = 4;
const DYSON_SEEDS: u64 = 20;
const DYSON_MATRIX_DIM: usize = 4;
/// Nonzero residual coefficients allowed per Dyson check: none, the
/// identities must hold exactly.
const MAX_NONZERO_RESIDUALS: usize = 0;

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

fn suites(maps: &HopfMaps, names: &[&str], order: usize, keep: impl Fn(&LawReport) -> bool) -> Vec<LawReport> {
    let cfg = SweepConfig { order, jobs: 1 };
    names
        .iter()
        .flat_map(|s| run_suite(maps, s, cfg).expect("known suite"))
        .filter(|r| keep(r))
        .collect()
}

fn from_reports(reports: Vec<LawReport>) -> Outcome {
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect();
    Outcome {
        passed: failed.is_empty(),
        summary: format!("{} laws, {} instances, {} failing", reports.len(), checked, failed.len()),
        details: failed,
    }
}

fn is_qed_axiom(r: &LawReport) -> bool {
    r.law.starts_with("Delta^qed") || r.law.starts_with("S^x|") || r.law.starts_with("Halpha x|")
}

fn criterion_tables() -> Outcome {
    let (checked, bad) = common::table_mismatches(HopfMaps::standard());
    Outcome {
        passed: bad.is_empty(),
        summary: format!("{checked} table entries, {} mismatching", bad.len()),
        details: bad,
    }
}

fn criterion_hopf_axioms() -> Outcome {
    let maps = HopfMaps::standard();
    let mut reports = suites(maps, &["coassoc", "counit", "antipode"], SWEEP_ORDER, |_| true);
    reports.extend(suites(maps, &["qed"], SWEEP_ORDER, is_qed_axiom));
    from_reports(reports)
}

fn criterion_coactions() -> Outcome {
    let maps = HopfMaps::standard();
    let mut reports = suites(maps, &["coaction", "D1", "D2", "intertwining", "corollary"], SWEEP_ORDER, |_| true);
    reports.extend(suites(maps, &["qed"], SWEEP_ORDER, |r| !is_qed_axiom(r)));
    from_reports(reports)
}

fn criterion_counts() -> Outcome {
    from_reports(suites(HopfMaps::standard(), &["counts"], SWEEP_ORDER, |_| true))
}

fn scalar_identity_gc(r: &mut ChaCha8Rng, n: usize, dim: Option<usize>) -> TruncatedSeries {
    let s = TruncatedSeries::random_gc(r, n, None);
    match dim {
        None => s,
        Some(d) => TruncatedSeries::new(
            n,
            s.coeffs().iter().map(|c| RingValue::scalar_matrix(d, &c.as_scalar().unwrap())).collect(),
        ),
    }
}

fn criterion_series() -> Outcome {
    let n = SERIES_ORDER;
    let mut failures = Vec::new();
    let mut checks = 0usize;
    let mut check = |label: &str, seed: u64, ok: bool| {
        checks += 1;
        if !ok {
            failures.push(format!("{label}, seed {seed}"));
        }
    };
    for dim in [None, Some(SERIES_MATRIX_DIM)] {
        let ring = if dim.is_some() { "2x2" } else { "scalar" };
        for seed in 0..SERIES_INSTANCES {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            let (f, g, h) = (
                TruncatedSeries::random_gp(&mut r, n, dim),
                TruncatedSeries::random_gp(&mut r, n, dim),
                TruncatedSeries::random_gp(&mut r, n, dim),
            );
            let (a, b, c) = (
                scalar_identity_gc(&mut r, n, dim),
                scalar_identity_gc(&mut r, n, dim),
                scalar_identity_gc(&mut r, n, dim),
            );
            let mul = |x: &TruncatedSeries, y: &TruncatedSeries| gp_multiply(x, y).unwrap();
            let comp = |x: &TruncatedSeries, y: &TruncatedSeries| gc_compose(x, y).unwrap();
            let act = |x: &TruncatedSeries, p: &TruncatedSeries| gp_action(x, p).unwrap();
            let (one, id) = (TruncatedSeries::one(n), TruncatedSeries::alpha(n));

            check(&format!("{ring} G^p associativity"), seed, mul(&mul(&f, &g), &h) == mul(&f, &mul(&g, &h)));
            check(&format!("{ring} G^p unit"), seed, mul(&one, &f) == f && mul(&f, &one) == f);
            let fi = series_inverse(&f).unwrap();
            check(&format!("{ring} G^p inverse"), seed, mul(&f, &fi) == one && mul(&fi, &f) == one);
            check(&format!("{ring} G^c associativity"), seed, comp(&comp(&a, &b), &c) == comp(&a, &comp(&b, &c)));
            check(&format!("{ring} G^c unit"), seed, comp(&id, &a) == a && comp(&a, &id) == a);
            let ai = gc_inverse(&a).unwrap();
            check(&format!("{ring} G^c inverse"), seed, comp(&a, &ai) == id && comp(&ai, &a) == id);
            check(&format!("{ring} f^(phi psi) = (f^phi)^psi"), seed, act(&f, &comp(&a, &b)) == act(&act(&f, &a), &b));
            check(&format!("{ring} (fg)^phi = f^phi g^phi"), seed, act(&mul(&f, &g), &a) == mul(&act(&f, &a), &act(&g, &a)));

            if dim.is_none() {
                check("cocycle phi/alpha", seed, cocycle_check(divide_by_alpha, &a, &b).unwrap());
                let lhs = sigma_action(&sigma_action(&f, &a, divide_by_alpha).unwrap(), &b, divide_by_alpha).unwrap();
                let rhs = sigma_action(&f, &comp(&a, &b), divide_by_alpha).unwrap();
                check("sigma action law", seed, lhs == rhs);
            }
        }
    }
    Outcome {
        passed: failures.is_empty(),
        summary: format!("{checks} checks over {SERIES_INSTANCES} seeds (scalar and 2x2), {} failing", failures.len()),
        details: failures,
    }
}

fn dyson_runs(maps: &HopfMaps, seeds: u64) -> (usize, Vec<String>) {
    let mut runs = 0;
    let mut failures = Vec::new();
    for seed in 0..seeds {
        for (kind, d) in [(RingKind::Scalar, 1), (RingKind::Matrix, DYSON_MATRIX_DIM)] {
            let ug = make_toy_character(Gamma, seed, kind, d, DYSON_ORDER);
            let ue = make_toy_character(Electron, seed, kind, d, DYSON_ORDER);
            let cg = make_toy_character(Alpha, seed, RingKind::Scalar, 1, DYSON_ORDER);
            let ce = make_toy_character(Electron, seed + 1_000, RingKind::Scalar, 1, DYSON_ORDER);
            for report in [
                dyson_check_photon(maps, &ug, &cg, DYSON_ORDER).unwrap(),
                dyson_check_electron(maps, &ue, &cg, &ce, DYSON_ORDER).unwrap(),
            ] {
                runs += 1;
                let nonzero = report.residuals.iter().filter(|r| !r.is_zero()).count();
                if nonzero > MAX_NONZERO_RESIDUALS {
                    failures.push(format!("seed {seed}, d = {d}: {}", report.to_json()));
                }
            }
        }
    }
    (runs, failures)
}

fn criterion_dyson() -> Outcome {
    let (runs, failures) = dyson_runs(HopfMaps::standard(), DYSON_SEEDS);
    Outcome {
        passed: failures.is_empty(),
        summary: format!("{runs} Dyson checks to alpha^{DYSON_ORDER}, {} with nonzero residual", failures.len()),
        details: failures,
    }
}

fn criterion_negative_controls() -> Outcome {
    let mut caught = 0;
    let mut details = Vec::new();
    for corruption in Corruption::ALL {
        let maps = HopfMaps::with_corruption(corruption);
        let reports = suites(
            &maps,
            &["coassoc", "counit", "antipode", "coaction", "D1", "D2", "qed", "intertwining", "corollary"],
            CONTROL_ORDER,
            |_| true,
        );
        let failing: Vec<&LawReport> = reports.iter().filter(|r| !r.passed()).collect();
        let (_, dyson_failures) = dyson_runs(&maps, 2);
        if let Some(first) = failing.first() {
            caught += 1;
            details.push(format!(
                "{}: {} failing laws, {} failing Dyson checks; first:\n{first}",
                corruption.name(),
                failing.len(),
                dyson_failures.len()
            ));
        } else {
            details.push(format!("{}: NOT CAUGHT by any law", corruption.name()));
        }
    }
    Outcome {
        passed: caught == Corruption::ALL.len(),
        summary: format!("{caught}/{} corruptions caught with a counterexample", Corruption::ALL.len()),
        details,
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 worked-example tables", criterion_tables),
        ("2 Hopf axioms", criterion_hopf_axioms),
        ("3 coactions", criterion_coactions),
        ("4 combinatorial counts", criterion_counts),
        ("5 series groups", criterion_series),
        ("6 Dyson consistency", criterion_dyson),
        ("7 negative controls", criterion_negative_controls),
    ];
    let mut all = true;
    let mut notes = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let out = run();
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {name}: {} [{:.2?}]", out.summary, start.elapsed());
        all &= out.passed;
        // negative-control details are the evidence, so always shown
        if !out.passed || name.starts_with('7') {
            notes.push((name, out.details));
        }
    }
    for (name, details) in notes {
        println!("\n-- criterion {name}");
        for d in details {
            println!("{d}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
