use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spcpc::channels::{awgn_llr_transmit, sigma_from_ebn0};
use spcpc::codes::{BitWord, ProductCodeSpec};
use spcpc::density_evolution::*;
use spcpc::sc::{genie_llrs, genie_sc, Observation};

fn ebn0_for_bound(spec: &ProductCodeSpec, target: f64) -> f64 {
    let grid = DeGrid::default_grid();
    let (mut lo, mut hi) = (3.0, 6.0);
    while hi - lo > 0.02 {
        let mid = 0.5 * (lo + hi);
        let s = sigma_from_ebn0(mid, spec.rate()).unwrap();
        if de_bit_error_probs(spec, s, &grid).unwrap().union_bound > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn union_bound_matches_genie_simulation() {
    let spec = ProductCodeSpec::new(&[5, 5, 5]).unwrap();
    let ebn0 = ebn0_for_bound(&spec, 1e-2);
    let sigma = sigma_from_ebn0(ebn0, spec.rate()).unwrap();
    let grid = DeGrid::default_grid();
    let de = de_bit_error_probs(&spec, sigma, &grid).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut events, mut trials) = (0usize, 0usize);
    while events < 300 || trials < 50_000 {
        let bits: Vec<u8> = (0..spec.k()).map(|_| rng.random_range(0..2)).collect();
        let u = BitWord::from_bits(&bits);
        let llr = awgn_llr_transmit(&spec.encode(&u).unwrap(), sigma, &mut rng);
        events += genie_sc(&spec, &Observation::Llr(llr), &u).unwrap().first_error_indices.len();
        trials += 1;
    }
    let mc = events as f64 / trials as f64;
    assert!((mc / de.union_bound - 1.0).abs() < 0.15, "mc {mc} vs de {}", de.union_bound);

    let fine = DeGrid::new(grid.delta() / 2.0, 40.0).unwrap();
    let refined = de_bit_error_probs(&spec, sigma, &fine).unwrap();
    assert!((refined.union_bound / de.union_bound - 1.0).abs() < 0.02);
}

#[test]
fn evolved_densities_stay_symmetric() {
    let spec = ProductCodeSpec::new(&[3, 4]).unwrap();
    let grid = DeGrid::default_grid();
    for d in de_bit_densities(&spec, 0.8, &grid).unwrap() {
        assert!((d.total() - 1.0).abs() < 1e-9);
        assert!(d.symmetry_defect() < 1e-3);
    }
}

#[test]
fn single_spc_matches_exact_metric_samples() {
    let spec = ProductCodeSpec::new(&[5]).unwrap();
    let sigma = 0.9;
    let de = de_bit_error_probs(&spec, sigma, &DeGrid::default_grid()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let zeros = BitWord::zeros(spec.k());
    let x = BitWord::zeros(spec.n());
    let trials = 1_000_000;
    let mut errors = vec![0.0; spec.k()];
    for _ in 0..trials {
        let llr = awgn_llr_transmit(&x, sigma, &mut rng);
        for (e, l) in errors.iter_mut().zip(genie_llrs(&spec, &llr, &zeros).unwrap()) {
            *e += if l < 0.0 {
                1.0
            } else if l == 0.0 {
                0.5
            } else {
                0.0
            };
        }
    }
    for (e, p) in errors.iter().zip(&de.bit_error_probs) {
        let freq = e / trials as f64;
        let sd = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((freq - p).abs() < 3.0 * sd, "{freq} vs {p}");
    }
}

#[test]
fn near_noiseless_channel() {
    let spec = ProductCodeSpec::new(&[5, 5, 5]).unwrap();
    let r = de_bit_error_probs(&spec, 0.05, &DeGrid::default_grid()).unwrap();
    assert!(r.bit_error_probs.iter().all(|&p| p < 1e-9));
}

#[test]
fn variable_node_adds_means() {
    let grid = DeGrid::default_grid();
    let d = awgn_llr_density(1.0, &grid).unwrap();
    let s = vn_convolve(&d, &d).unwrap();
    assert!((s.mean() - 4.0).abs() < grid.delta());
}

#[test]
fn check_node_degrades() {
    let grid = DeGrid::default_grid();
    let sigmas = [0.4, 0.7, 1.0, 1.5];
    for &a in &sigmas {
        let d = awgn_llr_density(a, &grid).unwrap();
        for &b in &sigmas {
            let e = awgn_llr_density(b, &grid).unwrap();
            let c = cn_convolve(&d, &e).unwrap();
            assert!(c.error_probability() >= d.error_probability().max(e.error_probability()) - 1e-12);
        }
    }
}
