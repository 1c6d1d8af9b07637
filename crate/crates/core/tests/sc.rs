use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spcpc::channels::{awgn_llr_transmit, bec_transmit, LlrWord, Ternary, TernaryWord};
use spcpc::codes::{BitWord, ProductCodeSpec};
use spcpc::sc::{
    elias_decode, genie_sc, sc_bit_metric_oracle, sc_decode, sc_decode_bec, sc_decode_llr,
    ChannelProbs, Observation,
};

fn random_message(k: usize, rng: &mut impl Rng) -> BitWord {
    let bits: Vec<u8> = (0..k).map(|_| rng.random_range(0..2)).collect();
    BitWord::from_bits(&bits)
}

#[test]
fn nine_four_erasure_pattern() {
    let spec = ProductCodeSpec::new(&[3, 3]).unwrap();
    let y = TernaryWord::parse("0???0?000").unwrap();
    let sc = sc_decode_bec(&spec, &y).unwrap();
    assert_eq!(sc.bits, vec![Ternary::Zero; 4]);
    let elias = elias_decode(&spec, &Observation::Bec(y)).unwrap();
    assert_eq!(elias.bits[2], Ternary::Erasure);
    assert_eq!(elias.bits.iter().filter(|b| b.is_erasure()).count(), 1);
}

#[test]
fn noiseless_inputs_decode_exhaustively() {
    for dims in [&[3, 3][..], &[2, 3, 4], &[5, 5], &[2, 2, 2, 2], &[4, 5]] {
        let spec = ProductCodeSpec::new(dims).unwrap();
        for m in 0u64..(1 << spec.k()) {
            let u = BitWord::from_u64(m, spec.k());
            let x = spec.encode(&u).unwrap();
            let llr = Observation::Llr(LlrWord::noiseless(&x));
            assert!(sc_decode(&spec, &llr).unwrap().is_correct(&u));
            assert!(elias_decode(&spec, &llr).unwrap().is_correct(&u));
            let bec = Observation::Bec(TernaryWord::from_bits(&x));
            assert!(sc_decode(&spec, &bec).unwrap().is_correct(&u));
            assert!(genie_sc(&spec, &llr, &u).unwrap().is_empty());
        }
    }
}

#[test]
fn fast_llrs_match_literal_recursion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for dims in [&[3, 3][..], &[2, 3], &[3, 2], &[2, 2, 3], &[5, 5]] {
        let spec = ProductCodeSpec::with_order(dims).unwrap();
        let trials = if spec.k() > 8 { 20 } else { 100 };
        for _ in 0..trials {
            let u = random_message(spec.k(), &mut rng);
            let llr = awgn_llr_transmit(&spec.encode(&u).unwrap(), 0.9, &mut rng);
            let dec = sc_decode_llr(&spec, &llr).unwrap();
            let fast = dec.llrs.as_ref().unwrap();
            let prefix: Vec<u8> = dec.bits.iter().map(|&b| (b == Ternary::One) as u8).collect();
            let probs = ChannelProbs::from_llr(&llr);
            for i in 1..=spec.k() {
                let slow = sc_bit_metric_oracle(&spec, &probs, i, &prefix[..i - 1]).unwrap();
                assert!(
                    (slow.llr() - fast[i - 1]).abs() < 1e-9,
                    "{dims:?} bit {i}: {} vs {}",
                    slow.llr(),
                    fast[i - 1]
                );
            }
        }
    }
}

/// Exact a-posteriori LLR of u_i given u_1..u_{i-1}, summing over the rest.
fn brute_force_app(spec: &ProductCodeSpec, llr: &LlrWord, prefix: &[u8]) -> f64 {
    let i = prefix.len();
    let mut p = [0.0f64; 2];
    for m in 0u64..(1 << spec.k()) {
        let u = BitWord::from_u64(m, spec.k());
        if (0..i).any(|j| u.get(j) as u8 != prefix[j]) {
            continue;
        }
        let x = spec.encode(&u).unwrap();
        let logp: f64 = x
            .iter()
            .zip(&llr.0)
            .map(|(b, &l)| if b { -l / 2.0 } else { l / 2.0 })
            .sum();
        p[u.get(i) as usize] += logp.exp();
    }
    (p[0] / p[1]).ln()
}

#[test]
fn single_component_metrics_are_exact_posteriors() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in [3, 5] {
        let spec = ProductCodeSpec::new(&[n]).unwrap();
        for _ in 0..50 {
            let u = random_message(spec.k(), &mut rng);
            let llr = awgn_llr_transmit(&spec.encode(&u).unwrap(), 1.0, &mut rng);
            let dec = sc_decode_llr(&spec, &llr).unwrap();
            let prefix: Vec<u8> = dec.bits.iter().map(|&b| (b == Ternary::One) as u8).collect();
            for i in 0..spec.k() {
                let exact = brute_force_app(&spec, &llr, &prefix[..i]);
                assert!((exact - dec.llrs.as_ref().unwrap()[i]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn genie_report_empty_iff_sc_correct() {
    let spec = ProductCodeSpec::new(&[3, 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut errors = 0;
    for _ in 0..10_000 {
        let u = random_message(spec.k(), &mut rng);
        let y = Observation::Bec(bec_transmit(&spec.encode(&u).unwrap(), 0.4, &mut rng));
        let correct = sc_decode(&spec, &y).unwrap().is_correct(&u);
        let report = genie_sc(&spec, &y, &u).unwrap();
        assert_eq!(correct, report.is_empty());
        errors += !correct as usize;
    }
    assert!(errors > 100);
}

#[test]
fn genie_first_bit_erasure_rate_single_spc() {
    let spec = ProductCodeSpec::new(&[5]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let trials = 40_000;
    let mut hits = 0;
    for _ in 0..trials {
        let u = random_message(spec.k(), &mut rng);
        let y = Observation::Bec(bec_transmit(&spec.encode(&u).unwrap(), 0.5, &mut rng));
        hits += genie_sc(&spec, &y, &u).unwrap().first_error_indices.contains(&1) as usize;
    }
    let p = 0.46875;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let freq = hits as f64 / trials as f64;
    assert!((freq - p).abs() < 3.0 * sigma, "{freq}");
}

#[test]
fn sc_errors_imply_elias_errors_on_bec() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for dims in [&[3, 3][..], &[5, 5, 5]] {
        let spec = ProductCodeSpec::new(dims).unwrap();
        for _ in 0..5_000 {
            let u = random_message(spec.k(), &mut rng);
            let y = Observation::Bec(bec_transmit(&spec.encode(&u).unwrap(), 0.35, &mut rng));
            let genie = genie_sc(&spec, &y, &u).unwrap();
            let elias = elias_decode(&spec, &y).unwrap().error_positions(&u);
            for i in &genie.first_error_indices {
                assert!(elias.contains(i));
            }
        }
    }
}
