//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};
use std::time::{Duration, Instant};

use lgsim_cli::{main_with, run_command, Command, RunConfig};
use lgsim_core::circuit::measurement_disturbance;
use lgsim_core::leggett_garg::{
    correlation_circuit, correlation_oracle, find_violations, k_at_phase, max_disturbance, sweep,
    theta_grid, time_pairs, EvolutionSpec, Observable,
};
use lgsim_core::noise::{k_attenuation_check, T2Config};
use lgsim_core::qm::{trace_distance, DensityMatrix};
use lgsim_core::states::{
    classical_mixture, gradient_dephase_prepare, maximally_mixed, pure_density, MixturePopulations,
    PureState,
};
use lgsim_core::tomography::fig2_fidelity_experiment;
use lgsim_core::{Complex, Density, Evolution, Matrix};
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn evo() -> Evolution {
    EvolutionSpec::new(1.0).unwrap()
}

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn analytic_curve() -> Outcome {
    let cfg = RunConfig::defaults(Command::Sweep);
    let start = Instant::now();
    let report = run_command(&cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let worst = report
        .column("abs_error")
        .unwrap()
        .into_iter()
        .fold(0.0, f64::max);
    check(
        report.rows.len() == 721 && worst <= 1e-9 && elapsed < Duration::from_secs(5),
        format!(
            "721 rows, max |K - K_analytic| = {worst:.3e}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn landmarks() -> Outcome {
    let obs = Observable::sigma_z();
    let rho = maximally_mixed();
    let at = |t: f64| {
        k_at_phase(&rho, &obs, &evo(), 1.0, t)
            .map(|r| r.k)
            .map_err(|e| e.to_string())
    };
    let (k1, k5) = (at(FRAC_PI_3)?, at(5.0 * FRAC_PI_3)?);
    let rs = sweep(&evo(), &rho, &obs, 1.0, 0.0, TAU, 721).map_err(|e| e.to_string())?;
    let best = rs.iter().map(|r| r.k).fold(f64::NEG_INFINITY, f64::max);
    let argmax: Vec<f64> = rs
        .iter()
        .filter(|r| (r.k - best).abs() <= 1e-12)
        .map(|r| r.theta)
        .collect();
    let landmarks_hit = argmax.len() == 2
        && (argmax[0] - FRAC_PI_3).abs() < 1e-12
        && (argmax[1] - 5.0 * FRAC_PI_3).abs() < 1e-12;
    check(
        (k1 - 1.5).abs() <= 1e-9 && (k5 - 1.5).abs() <= 1e-9 && landmarks_hit,
        format!("K(pi/3) = {k1:.12}, K(5pi/3) = {k5:.12}, grid argmax at {argmax:?}"),
    )
}

fn violation_region() -> Outcome {
    let obs = Observable::sigma_z();
    let rho = maximally_mixed();
    let rs = sweep(&evo(), &rho, &obs, 1.0, 0.0, TAU, 721).map_err(|e| e.to_string())?;
    let found = find_violations(&rs, 1.0, |t| Ok(k_at_phase(&rho, &obs, &evo(), 1.0, t)?.k))
        .map_err(|e| e.to_string())?;
    let expected = [(0.0, FRAC_PI_2), (3.0 * FRAC_PI_2, TAU)];
    let ok = found.len() == 2
        && found
            .iter()
            .zip(expected)
            .all(|(&(a, b), (x, y))| (a - x).abs() <= 1e-6 && (b - y).abs() <= 1e-6);
    check(ok, format!("intervals {found:?}"))
}

fn noninvasiveness() -> Outcome {
    let obs = Observable::sigma_z();
    let pairs = time_pairs(&evo(), 0.0, PI, 5).map_err(|e| e.to_string())?;
    let mixed =
        max_disturbance(&maximally_mixed(), &obs, &evo(), &pairs).map_err(|e| e.to_string())?;
    let pure = pure_density(&PureState::zero()).unwrap();
    let t_m = evo().spacing_for_phase(FRAC_PI_2).unwrap();
    let witness = measurement_disturbance(&evo().hamiltonian(), &obs, &pure, 0.0, t_m)
        .map_err(|e| e.to_string())?;
    check(
        pairs.len() == 25 && mixed <= 1e-12 && witness > 0.1 && (witness - 0.5).abs() <= 1e-12,
        format!(
            "I/2: max distance {mixed:.3e} over {} pairs; |0><0| witness {witness:.12}",
            pairs.len()
        ),
    )
}

fn random_density(rng: &mut impl Rng) -> Density {
    let data: Vec<Complex> = (0..4)
        .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let a = Matrix::from_row_major(2, data).unwrap();
    DensityMatrix::normalized(&a * &a.dagger()).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let obs = Observable::sigma_z();
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let rho = random_density(&mut rng);
        let mut t = [rng.random_range(0.0..TAU), rng.random_range(0.0..TAU)];
        t.sort_by(f64::total_cmp);
        let eps = rng.random_range(0.01..=1.0);
        let got =
            correlation_circuit(&rho, &obs, &evo(), t[0], t[1], eps).map_err(|e| e.to_string())?;
        let want = correlation_oracle(&rho, &obs, &evo(), t[0], t[1]).map_err(|e| e.to_string())?;
        worst = worst.max((got.normalized - want).abs());
    }
    check(
        worst <= 1e-10,
        format!("200 cases, max deviation {worst:.3e}"),
    )
}

fn mixedness_independence() -> Outcome {
    let obs = Observable::sigma_z();
    let states = [
        pure_density(&PureState::zero()).unwrap(),
        pure_density(&PureState::one()).unwrap(),
        maximally_mixed(),
        classical_mixture(MixturePopulations::new(0.3, 0.7).unwrap()).unwrap(),
    ];
    let mut spread: f64 = 0.0;
    for theta in theta_grid(0.0, TAU, 25).unwrap() {
        let ks: Vec<f64> = states
            .iter()
            .map(|rho| k_at_phase(rho, &obs, &evo(), 1.0, theta).map(|r| r.k))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for k in &ks {
            spread = spread.max((k - ks[0]).abs());
        }
    }
    check(
        spread <= 1e-10,
        format!("4 states x 25 phases, max spread {spread:.3e}"),
    )
}

fn pseudo_pure_linearity() -> Outcome {
    let obs = Observable::sigma_z();
    let rho = maximally_mixed();
    let (t_k, t_m) = (0.3, 1.1);
    let ideal =
        correlation_circuit(&rho, &obs, &evo(), t_k, t_m, 1.0).map_err(|e| e.to_string())?;
    let (mut lin, mut norm): (f64, f64) = (0.0, 0.0);
    for k in 1..=10 {
        let eps = k as f64 / 10.0;
        let s =
            correlation_circuit(&rho, &obs, &evo(), t_k, t_m, eps).map_err(|e| e.to_string())?;
        lin = lin.max((s.raw - eps * ideal.raw).abs());
        norm = norm.max((s.normalized - ideal.normalized).abs());
    }
    check(
        lin <= 1e-12 && norm <= 1e-10,
        format!("raw vs eps*ideal {lin:.3e}, normalized vs ideal {norm:.3e}"),
    )
}

fn preparation() -> Outcome {
    let target = maximally_mixed();
    let mut worst: f64 = 0.0;
    for n in [2, 3, 5, 8, 360] {
        let rho = gradient_dephase_prepare(n).map_err(|e| e.to_string())?;
        worst = worst.max(trace_distance(&rho, &target).map_err(|e| e.to_string())?);
    }
    check(
        worst <= 1e-12,
        format!("n in {{2,3,5,8,360}}, max distance to I/2 {worst:.3e}"),
    )
}

fn decoherence() -> Outcome {
    let cfg = T2Config::new(3.0, 0.8, 0.01).map_err(|e| e.to_string())?;
    let (ideal, noisy) = k_attenuation_check(&cfg, FRAC_PI_3).map_err(|e| e.to_string())?;
    let ratio = noisy / ideal;
    check(
        ratio >= 0.98,
        format!("K_ideal {ideal:.9}, K_noisy {noisy:.9}, ratio {ratio:.6}"),
    )
}

fn tomography_fidelity() -> Outcome {
    let clean: f64 = fig2_fidelity_experiment(0.0, 42).map_err(|e| e.to_string())?;
    let mut sum = 0.0;
    for seed in 0..100 {
        sum += fig2_fidelity_experiment::<f64>(0.03, seed).map_err(|e| e.to_string())?;
    }
    let mean = sum / 100.0;
    check(
        (clean - 1.0).abs() <= 1e-12 && (0.98..=1.0).contains(&mean),
        format!("sigma 0: {clean:.12}; sigma 0.03 mean over 100 seeds: {mean:.6}"),
    )
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with(args.iter().copied(), None, &mut out, &mut err);
    if code != 0 {
        return Err(format!(
            "{args:?} exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut checked = Vec::new();
    for (label, args) in [
        ("sweep csv", vec!["lgsim", "sweep"]),
        ("sweep json", vec!["lgsim", "sweep", "--format", "json"]),
        (
            "correlations csv",
            vec!["lgsim", "correlations", "--steps", "91"],
        ),
        (
            "tomography csv",
            vec![
                "lgsim",
                "tomography",
                "--noise-sigma",
                "0.03",
                "--seed",
                "7",
            ],
        ),
        (
            "tomography json",
            vec![
                "lgsim",
                "tomography",
                "--noise-sigma",
                "0.03",
                "--format",
                "json",
            ],
        ),
    ] {
        if run_cli(&args)? != run_cli(&args)? {
            return Err(format!("{label} differs between runs"));
        }
        checked.push(label);
    }
    for command in ["sweep", "correlations"] {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{command}-{run}.svg"));
            let path = path.to_str().unwrap().to_string();
            run_cli(&["lgsim", command, "--format", "svg", "--output", &path])?;
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{command} svg differs between runs"));
        }
        checked.push(if command == "sweep" {
            "sweep svg"
        } else {
            "correlations svg"
        });
    }
    Ok(format!("byte-identical: {}", checked.join(", ")))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("analytic curve reproduction", analytic_curve),
        ("landmark values", landmarks),
        ("violation region", violation_region),
        ("noninvasiveness", noninvasiveness),
        ("oracle equivalence", oracle_equivalence),
        ("mixedness independence", mixedness_independence),
        ("pseudo-pure linearity", pseudo_pure_linearity),
        ("preparation", preparation),
        ("decoherence negligibility", decoherence),
        ("tomography fidelity envelope", tomography_fidelity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
