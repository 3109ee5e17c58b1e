//! Number-theoretic and learning-guarantee checks for the discrete cube
//! root task.

mod common;

use num_bigint::{BigUint, RandBigInt};
use num_traits::ToPrimitive;
use qshadow::dcr::{
    classical_baseline, concept_label, cube, cube_root, factor_semiprime, generate_dataset,
    generate_modulus, hypothesis_eval, quantum_learn, required_training_size, DcrConcept,
    DcrModulus,
};
use qshadow::rng::{stream, substream};

#[test]
fn trapdoor_identity_on_random_residues() {
    let mut rng = stream(501);
    for bits in [16u64, 20, 24] {
        let modulus = generate_modulus(bits, &mut rng).unwrap();
        for _ in 0..1000 {
            let y = rng.gen_biguint_below(&modulus.n);
            let x = cube(&y, &modulus).unwrap();
            assert_eq!(cube_root(&x, &modulus).unwrap(), y, "N = {}", modulus.n);
        }
    }
}

#[test]
fn small_moduli_cube_bijectively() {
    // exhaustive over Z_N for every generated N <= 10^4
    let mut rng = stream(502);
    for bits in [8u64, 10, 12, 13] {
        let modulus = generate_modulus(bits, &mut rng).unwrap();
        assert!(modulus.n <= BigUint::from(10_000u32));
        let n = modulus.n.to_usize().unwrap();
        let mut seen = vec![false; n];
        for y in 0..n {
            let x = cube(&BigUint::from(y), &modulus)
                .unwrap()
                .to_usize()
                .unwrap();
            assert!(!seen[x], "collision at {x} for N = {n}");
            seen[x] = true;
        }
    }
}

#[test]
fn generated_48_bit_modulus_refactors() {
    let mut rng = stream(503);
    let modulus = generate_modulus(48, &mut rng).unwrap();
    let (p, q) = factor_semiprime(&modulus.n).unwrap();
    assert_eq!(&p * &q, modulus.n);
    assert_eq!(&p % BigUint::from(3u32), BigUint::from(2u32));
    assert_eq!(&q % BigUint::from(3u32), BigUint::from(2u32));
    let recovered = [p, q];
    assert!(recovered.contains(&modulus.p) && recovered.contains(&modulus.q));
}

#[test]
fn label_distribution_matches_interval_mass() {
    let modulus =
        DcrModulus::from_primes(BigUint::from(5u32), BigUint::from(11u32)).unwrap();
    let concept = DcrConcept::new(modulus, BigUint::from(10u32)).unwrap();
    let mut rng = stream(504);
    let m = 10_000usize;
    let data = generate_dataset(&concept, m, &mut rng).unwrap();
    let ones = data.iter().filter(|s| s.label).count() as f64 / m as f64;
    // interval mass is (floor((N-1)/2) + 1) / N = 28/55
    let expected = 28.0 / 55.0;
    assert!((ones - expected).abs() < 0.02, "fraction {ones}");
    let sigma = (expected * (1.0 - expected) / m as f64).sqrt();
    assert!((ones - expected).abs() < 3.0 * sigma + 1e-9);
}

#[test]
fn learner_meets_the_pac_guarantee() {
    // moderate version of the acceptance experiment: 16-bit modulus,
    // |X| = required_training_size(0.1, 0.05) = 14, 40 seeded trials
    let (epsilon, delta) = (0.1, 0.05);
    let train_size = required_training_size(epsilon, delta).unwrap() as usize;
    assert_eq!(train_size, 14);
    let mut rng = stream(505);
    let modulus = generate_modulus(16, &mut rng).unwrap();
    let n = modulus.n.clone();
    let trials = 40u64;
    let mut hits = 0usize;
    for trial in 0..trials {
        let mut trial_rng = substream(506, trial);
        let s = trial_rng.gen_biguint_below(&n);
        let concept = DcrConcept::new(modulus.clone(), s).unwrap();
        let train = generate_dataset(&concept, train_size, &mut trial_rng).unwrap();
        let hypothesis = quantum_learn(&train, &n, epsilon, delta).unwrap();
        // key identity always holds
        assert_eq!(
            (&hypothesis.d_prime * 3u32) % &modulus.phi,
            BigUint::from(1u32)
        );
        let errors = (0..10_000)
            .filter(|_| {
                let x = trial_rng.gen_biguint_below(&n);
                hypothesis_eval(&hypothesis, &x, &n).unwrap()
                    != concept_label(&x, &concept).unwrap()
            })
            .count();
        if errors as f64 / 10_000.0 <= 2.0 * epsilon {
            hits += 1;
        }
    }
    // expected failure rate is at most delta plus Monte Carlo slack
    let floor = ((1.0 - delta - 0.05) * trials as f64).floor() as usize;
    assert!(hits >= floor, "{hits}/{trials} trials within 2 epsilon");
}

#[test]
fn learned_hypothesis_beats_baselines_on_obfuscated_data() {
    // smoke-scale version of the separation exhibit at 24 bits
    let mut rng = stream(507);
    let modulus = generate_modulus(24, &mut rng).unwrap();
    let n = modulus.n.clone();
    let s = rng.gen_biguint_below(&n);
    let concept = DcrConcept::new(modulus, s).unwrap();
    let train = generate_dataset(&concept, 150, &mut rng).unwrap();
    let heldout = generate_dataset(&concept, 1500, &mut rng).unwrap();

    let hypothesis = quantum_learn(&train, &n, 0.1, 0.05).unwrap();
    let shadow_accuracy = heldout
        .iter()
        .filter(|sample| hypothesis_eval(&hypothesis, &sample.x, &n).unwrap() == sample.label)
        .count() as f64
        / heldout.len() as f64;
    let report = classical_baseline(&train, &heldout, &n).unwrap();
    assert!(
        shadow_accuracy >= 0.8,
        "shadow hypothesis accuracy {shadow_accuracy}"
    );
    assert!(
        report.best() <= 0.65,
        "a baseline learned obfuscated data: {report:?}"
    );
}

#[test]
fn learning_rejects_wrong_modulus() {
    // a prime N cannot be factored into two primes
    let mut rng = stream(508);
    let modulus = generate_modulus(16, &mut rng).unwrap();
    let concept = DcrConcept::new(modulus, BigUint::from(5u32)).unwrap();
    let data = generate_dataset(&concept, 20, &mut rng).unwrap();
    assert!(quantum_learn(&data, &BigUint::from(65537u32), 0.1, 0.05).is_err());
}
