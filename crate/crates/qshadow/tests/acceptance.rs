//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its measurements. Budgets are wall-clock upper bounds
//! on this desk-scale configuration.

mod common;

use std::time::Instant;

use num_bigint::{BigUint, RandBigInt};
use num_traits::ToPrimitive;
use qshadow::dcr::{
    classical_baseline, concept_label, cube, cube_root, generate_dataset, generate_modulus,
    hypothesis_eval, quantum_learn, required_training_size, DcrConcept, DcrModulus,
};
use qshadow::fixtures::{input_grid, random_conventional_model, random_flipped_model};
use qshadow::flipper::{algorithm1_eval, flip_conventional, term_norm_ledger};
use qshadow::fourier::{
    blackbox_search, flipped_shadow_recover, grover_eval, search_query_statistics, GroverModel,
    QueryMode,
};
use qshadow::models::{eval_conventional_exact, eval_flipped_exact};
use qshadow::rng::{stream, substream};
use qshadow::shadows::{
    collect_pauli_shadow, shadow_model_eval, shadow_sample_bound, MoMConfig,
};
use rand::Rng;

fn report(criterion: &str, detail: String, started: Instant, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("acceptance {criterion}: PASS — {detail} ({elapsed:.1}s, budget {budget_s:.0}s)");
    assert!(
        elapsed < budget_s,
        "{criterion} exceeded its runtime budget: {elapsed:.1}s"
    );
}

#[test]
fn acceptance_1_shadow_coverage() {
    let started = Instant::now();
    let (epsilon, delta) = (0.2, 0.1);
    let mut rng = stream(0xac1);
    let trials = 20u64;
    let mut successes = 0usize;
    for trial in 0..trials {
        let bound = rng.gen_range(0.4..1.0);
        let model = random_flipped_model(3, 5, 2, bound, &mut rng);
        let (t, k) =
            shadow_sample_bound(2, model.weights.bound(), epsilon, delta, model.paulis.len())
                .unwrap();
        let shadow =
            collect_pauli_shadow(&model.state_prep, t as usize, 0x5eed + trial).unwrap();
        let cfg = MoMConfig::new(k as usize);
        let ok = input_grid(10, -1.0, 1.0).iter().all(|x| {
            let approx = shadow_model_eval(&shadow, &model, x, cfg).unwrap();
            let exact = eval_flipped_exact(&model, x).unwrap();
            (approx - exact).abs() <= epsilon
        });
        successes += usize::from(ok);
    }
    assert!(
        successes as f64 >= 0.9 * trials as f64,
        "{successes}/{trials} within tolerance"
    );
    report(
        "1 (shadow coverage)",
        format!("{successes}/{trials} models within 0.2 on the full grid"),
        started,
        120.0,
    );
}

#[test]
fn acceptance_2_algorithm1_unbiasedness() {
    let started = Instant::now();
    let mut rng = stream(0xac2);

    // exhaustive branch enumeration on 10 random instances at n <= 2
    let mut worst_gap: f64 = 0.0;
    for trial in 0..10 {
        let n = 1 + (trial % 2);
        let model = random_conventional_model(n, 2, trial % 3 != 0, &mut rng);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let enumerated = common::algorithm1_branch_enumeration(&model, &x, None);
        let exact = eval_conventional_exact(&model, &x).unwrap();
        worst_gap = worst_gap.max((enumerated - exact).abs());
    }
    assert!(worst_gap < 1e-9, "worst enumeration gap {worst_gap:e}");

    // sampled runs within epsilon in at least 95 of 100 seeded trials
    let (epsilon, delta) = (0.1, 0.05);
    let model = random_conventional_model(2, 2, true, &mut rng);
    let x = [0.7, -0.4];
    let exact = eval_conventional_exact(&model, &x).unwrap();
    let t = term_norm_ledger(&model).unwrap().trace_norm;
    let n_iters = (8.0 * t * t * (2.0f64 / delta).ln() / (epsilon * epsilon)).ceil() as u64;
    let hits = (0..100u64)
        .filter(|seed| {
            let est = algorithm1_eval(&model, &x, n_iters, 0xa110 + seed).unwrap();
            (est - exact).abs() <= epsilon
        })
        .count();
    assert!(hits >= 95, "{hits}/100 sampled runs within 0.1");
    report(
        "2 (algorithm 1)",
        format!("enumeration gap {worst_gap:.1e}; {hits}/100 sampled runs within 0.1"),
        started,
        60.0,
    );
}

#[test]
fn acceptance_3_flipping_construction() {
    let started = Instant::now();
    let mut rng = stream(0xac3);
    let mut worst_trace_gap: f64 = 0.0;
    let mut worst_norm_gap: f64 = 0.0;
    for _ in 0..20 {
        let model = random_conventional_model(2, 3, true, &mut rng);
        let form = flip_conventional(&model).unwrap();
        let budget = form.ledger().trace_norm;
        for _ in 0..20 {
            let x: Vec<f64> = (0..2).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let gap = (form.eval(&x).unwrap() - eval_conventional_exact(&model, &x).unwrap()).abs();
            worst_trace_gap = worst_trace_gap.max(gap);
        }
        let x: Vec<f64> = (0..2).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let spectral = form
            .observable(&x)
            .unwrap()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(0.0f64, |acc, l| acc.max(l.abs()));
        worst_norm_gap = worst_norm_gap.max((spectral - budget).abs());
    }
    assert!(worst_trace_gap < 1e-8, "trace gap {worst_trace_gap:e}");
    assert!(worst_norm_gap < 1e-8, "norm gap {worst_norm_gap:e}");
    report(
        "3 (flipping construction)",
        format!(
            "trace equality within {worst_trace_gap:.1e}, spectral norm within {worst_norm_gap:.1e}"
        ),
        started,
        30.0,
    );
}

#[test]
fn acceptance_4_dcr_correctness() {
    let started = Instant::now();
    let mut rng = stream(0xac4);

    // p = 5, q = 11 fixture
    let fixture = DcrModulus::from_primes(BigUint::from(5u32), BigUint::from(11u32)).unwrap();
    assert_eq!(fixture.d, BigUint::from(27u32));

    // trapdoor identity on ten 16..=32-bit moduli
    for i in 0..10u64 {
        let bits = 16 + (i * 16) / 9; // spread over 16..=32
        let modulus = generate_modulus(bits.min(32), &mut rng).unwrap();
        for _ in 0..1000 {
            let y = rng.gen_biguint_below(&modulus.n);
            let x = cube(&y, &modulus).unwrap();
            assert_eq!(cube_root(&x, &modulus).unwrap(), y, "N = {}", modulus.n);
        }
    }

    // exhaustive bijectivity for exhaustively checkable sizes
    let mut checked = 0;
    for bits in [8u64, 9, 10, 11, 12, 13] {
        let modulus = generate_modulus(bits, &mut rng).unwrap();
        assert!(modulus.n <= BigUint::from(10_000u32));
        let n = modulus.n.to_usize().unwrap();
        let mut seen = vec![false; n];
        for y in 0..n {
            let x = cube(&BigUint::from(y), &modulus)
                .unwrap()
                .to_usize()
                .unwrap();
            assert!(!seen[x], "cube collision mod {n}");
            seen[x] = true;
        }
        checked += 1;
    }
    report(
        "4 (DCR correctness)",
        format!("10 trapdoor moduli verified, {checked} exhaustive bijectivity checks, d = 27 fixture"),
        started,
        60.0,
    );
}

#[test]
fn acceptance_5_dcr_learning_guarantee() {
    let started = Instant::now();
    let (epsilon, delta) = (0.1, 0.05);
    let train_size = required_training_size(epsilon, delta).unwrap() as usize;
    assert_eq!(train_size, 14);
    let mut rng = stream(0xac5);
    let modulus = generate_modulus(16, &mut rng).unwrap();
    let n = modulus.n.clone();
    let trials = 100u64;
    let mut hits = 0usize;
    for trial in 0..trials {
        let mut trial_rng = substream(0x1ea2, trial);
        let s = trial_rng.gen_biguint_below(&n);
        let concept = DcrConcept::new(modulus.clone(), s).unwrap();
        let train = generate_dataset(&concept, train_size, &mut trial_rng).unwrap();
        let hypothesis = quantum_learn(&train, &n, epsilon, delta).unwrap();
        let errors = (0..10_000)
            .filter(|_| {
                let x = trial_rng.gen_biguint_below(&n);
                hypothesis_eval(&hypothesis, &x, &n).unwrap()
                    != concept_label(&x, &concept).unwrap()
            })
            .count();
        hits += usize::from(errors as f64 / 10_000.0 <= 2.0 * epsilon);
    }
    assert!(hits >= 90, "{hits}/100 trials with held-out error <= 0.2");
    report(
        "5 (DCR learning guarantee)",
        format!("{hits}/100 trials with held-out error <= 0.2 from 14 samples"),
        started,
        120.0,
    );
}

#[test]
fn acceptance_6_separation_exhibit() {
    let started = Instant::now();
    let mut rng = stream(0xac6);
    let modulus = generate_modulus(32, &mut rng).unwrap();
    let n = modulus.n.clone();
    let s = rng.gen_biguint_below(&n);
    let concept = DcrConcept::new(modulus, s).unwrap();
    let train = generate_dataset(&concept, 200, &mut rng).unwrap();
    let heldout = generate_dataset(&concept, 2000, &mut rng).unwrap();

    let hypothesis = quantum_learn(&train, &n, 0.1, 0.05).unwrap();
    let shadow_accuracy = heldout
        .iter()
        .filter(|sample| hypothesis_eval(&hypothesis, &sample.x, &n).unwrap() == sample.label)
        .count() as f64
        / heldout.len() as f64;
    let baselines = classical_baseline(&train, &heldout, &n).unwrap();
    assert!(shadow_accuracy >= 0.8, "shadow accuracy {shadow_accuracy}");
    assert!(
        baselines.best() <= 0.6,
        "baseline exceeded the random-guessing band: {baselines:?}"
    );
    report(
        "6 (separation exhibit)",
        format!(
            "shadow accuracy {shadow_accuracy:.3} vs baselines (threshold {:.3}, perceptron {:.3}, knn {:.3}); empirical desk-scale surrogate",
            baselines.threshold_accuracy, baselines.perceptron_accuracy, baselines.knn_accuracy
        ),
        started,
        180.0,
    );
}

#[test]
fn acceptance_7_grover_demo() {
    let started = Instant::now();
    let (mean_expected, variance) = search_query_statistics(10);
    let trials = 200u64;
    let mut total_queries = 0u64;
    for trial in 0..trials {
        let mut rng = substream(0xac7, trial);
        let target = rng.gen_range(0..1024);
        let model = GroverModel::from_index(10, target).unwrap();
        total_queries += blackbox_search(&model, QueryMode::Expectation, &mut rng).unwrap();
    }
    let mean = total_queries as f64 / trials as f64;
    let band = 3.0 * (variance / trials as f64).sqrt();
    assert!(
        (mean - mean_expected).abs() < band,
        "mean {mean} outside {mean_expected} +- {band}"
    );

    // flipped shadowing: one measurement, zero evaluation error
    let mut rng = stream(0xac7);
    let model = GroverModel::from_index(10, rng.gen_range(0..1024)).unwrap();
    let recovered = flipped_shadow_recover(&model, &mut rng).unwrap();
    assert_eq!(recovered.measurements_used, 1);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let x: Vec<f64> = (0..10)
            .map(|_| rng.gen_range(0.0..std::f64::consts::PI))
            .collect();
        worst = worst
            .max((recovered.eval(&x).unwrap() - grover_eval(&model, &x).unwrap()).abs());
    }
    assert_eq!(worst, 0.0, "recovered evaluator deviates");
    report(
        "7 (search demo)",
        format!(
            "mean queries {mean:.1} in {mean_expected} +- {band:.1}; shadow used 1 measurement with zero error"
        ),
        started,
        60.0,
    );
}

#[test]
fn acceptance_8_determinism() {
    let started = Instant::now();

    // shadow collection replays byte-identically
    let mut rng = stream(0xac8);
    let model = random_flipped_model(3, 4, 2, 0.8, &mut rng);
    let a = collect_pauli_shadow(&model.state_prep, 5000, 0xd5).unwrap();
    let b = collect_pauli_shadow(&model.state_prep, 5000, 0xd5).unwrap();
    assert_eq!(
        serde_json::to_vec(&a).unwrap(),
        serde_json::to_vec(&b).unwrap()
    );

    // sampled evaluations replay exactly
    let conventional = random_conventional_model(2, 2, true, &mut rng);
    assert_eq!(
        algorithm1_eval(&conventional, &[0.2, 0.4], 5000, 0xd6).unwrap(),
        algorithm1_eval(&conventional, &[0.2, 0.4], 5000, 0xd6).unwrap()
    );

    // dataset generation replays exactly
    let modulus = generate_modulus(20, &mut stream(0xd7)).unwrap();
    let concept = DcrConcept::new(modulus, BigUint::from(77u32)).unwrap();
    let da = generate_dataset(&concept, 500, &mut stream(0xd8)).unwrap();
    let db = generate_dataset(&concept, 500, &mut stream(0xd8)).unwrap();
    assert_eq!(da, db);

    // search trials replay exactly
    let grover = GroverModel::from_index(8, 33).unwrap();
    assert_eq!(
        blackbox_search(&grover, QueryMode::Bernoulli, &mut stream(0xd9)).unwrap(),
        blackbox_search(&grover, QueryMode::Bernoulli, &mut stream(0xd9)).unwrap()
    );

    report(
        "8 (determinism)",
        "shadows, sampled evaluations, datasets and searches replay from their seeds".to_string(),
        started,
        30.0,
    );
}
