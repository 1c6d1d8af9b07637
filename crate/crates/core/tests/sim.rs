use spcpc::bec_analysis::product_bit_erasures;
use spcpc::channels::{sigma_from_ebn0, ChannelParams};
use spcpc::codes::ProductCodeSpec;
use spcpc::crc::CrcSpec;
use spcpc::sim::*;
use statrs::distribution::{ContinuousCDF, Normal};

fn json(r: &impl serde::Serialize) -> String {
    serde_json::to_string(r).unwrap()
}

#[test]
fn identical_across_thread_counts() {
    let sigma = sigma_from_ebn0(2.0, 0.5).unwrap();
    let mut cfg = SimConfig::new(&[5, 5, 5], ChannelParams::Bawgn { sigma }, DecoderSpec::Scl { list_size: 4 });
    cfg.seed = 99;
    cfg.max_trials = 1500;
    cfg.target_block_errors = 40;
    let mut bec = SimConfig::new(&[4, 4], ChannelParams::Bec { epsilon: 0.3 }, DecoderSpec::Sc);
    bec.record_first_errors = true;
    bec.max_trials = 3000;
    let runs: Vec<(String, String)> = [1, 4, 16]
        .into_iter()
        .map(|t| with_threads(t, || (json(&run_bler(&cfg).unwrap()), json(&run_bler(&bec).unwrap()))).unwrap())
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn trials_are_addressable() {
    let mut cfg = SimConfig::new(&[3, 4], ChannelParams::Bec { epsilon: 0.4 }, DecoderSpec::Sc);
    cfg.max_trials = 400;
    cfg.target_block_errors = 400;
    let total = run_bler(&cfg).unwrap().block_errors;
    let recount = (0..400).filter(|&i| simulate_trial(&cfg, i).unwrap().block_error).count() as u64;
    assert_eq!(total, recount);
}

#[test]
fn sc_never_beats_elias_on_the_same_erasures() {
    for dims in [&[3, 3][..], &[5, 5, 5]] {
        let mut cfg = SimConfig::new(dims, ChannelParams::Bec { epsilon: 0.3 }, DecoderSpec::Sc);
        cfg.max_trials = 20_000;
        cfg.target_block_errors = u64::MAX;
        let r = run_paired(&cfg, DecoderSpec::Sc, DecoderSpec::Elias).unwrap();
        assert_eq!(r.a_only_errors, 0);
        assert!(r.a.block_errors <= r.b.block_errors);
    }
}

#[test]
fn paired_identical_decoders() {
    let mut cfg = SimConfig::new(&[4, 4], ChannelParams::Bawgn { sigma: 0.8 }, DecoderSpec::Sc);
    cfg.max_trials = 2000;
    let r = run_paired(&cfg, DecoderSpec::Sc, DecoderSpec::Sc).unwrap();
    assert_eq!((r.a_only_errors, r.b_only_errors), (0, 0));
    assert_eq!(r.a.block_errors, r.b.block_errors);
    assert_eq!(r.a.block_errors, run_bler(&SimConfig { max_trials: r.a.trials, ..cfg }).unwrap().block_errors);
}

#[test]
fn longer_lists_help() {
    let spec = ProductCodeSpec::new(&[5, 5, 5]).unwrap();
    let sigma = sigma_from_ebn0(3.0, spec.rate()).unwrap();
    let mut cfg = SimConfig::new(&[5, 5, 5], ChannelParams::Bawgn { sigma }, DecoderSpec::Sc);
    cfg.max_trials = 3000;
    cfg.target_block_errors = u64::MAX;
    let r = run_paired(&cfg, DecoderSpec::Scl { list_size: 8 }, DecoderSpec::Scl { list_size: 1 }).unwrap();
    assert!(r.a.bler <= r.b.bler);
    assert!(r.a_only_errors * 10 <= r.b_only_errors.max(1) * 2);
}

#[test]
fn crc_concatenation_runs() {
    let spec = ProductCodeSpec::new(&[5, 5, 5]).unwrap();
    let rate = (spec.k() - 8) as f64 / spec.n() as f64;
    let sigma = sigma_from_ebn0(20.0, rate).unwrap();
    let mut cfg = SimConfig::new(&[5, 5, 5], ChannelParams::Bawgn { sigma }, DecoderSpec::Scl { list_size: 4 });
    cfg.crc = Some(CrcSpec::CRC8_SPC);
    cfg.max_trials = 200;
    assert_eq!(run_bler(&cfg).unwrap().block_errors, 0);
    cfg.decoder = DecoderSpec::Ml;
    assert!(run_bler(&cfg).is_err());
}

#[test]
fn sc_bler_between_erasure_bounds() {
    let spec = ProductCodeSpec::new(&[5, 5, 5]).unwrap();
    let (mut lo, mut hi) = (0.0, 0.5);
    while hi - lo > 1e-5 {
        let mid = 0.5 * (lo + hi);
        if product_bit_erasures(&spec, mid).unwrap().upper < 3e-2 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let profile = product_bit_erasures(&spec, lo).unwrap();
    let mut cfg = SimConfig::new(&[5, 5, 5], ChannelParams::Bec { epsilon: lo }, DecoderSpec::Sc);
    cfg.max_trials = 100_000;
    cfg.target_block_errors = u64::MAX;
    let r = run_bler(&cfg).unwrap();
    assert!(r.ci_high >= profile.lower && r.ci_low <= profile.upper, "{r:?}");
    assert!(r.ci_low <= r.bler && r.bler <= r.ci_high);
}

#[test]
fn error_indicators_pass_runs_test() {
    let mut cfg = SimConfig::new(&[3, 3], ChannelParams::Bec { epsilon: 0.45 }, DecoderSpec::Sc);
    cfg.seed = 7;
    let x: Vec<bool> = (0..20_000).map(|i| simulate_trial(&cfg, i).unwrap().block_error).collect();
    let n1 = x.iter().filter(|&&b| b).count() as f64;
    let n0 = x.len() as f64 - n1;
    let runs = 1.0 + x.windows(2).filter(|w| w[0] != w[1]).count() as f64;
    let n = n0 + n1;
    let mean = 2.0 * n0 * n1 / n + 1.0;
    let var = 2.0 * n0 * n1 * (2.0 * n0 * n1 - n) / (n * n * (n - 1.0));
    let z = (runs - mean) / var.sqrt();
    let p = 2.0 * (1.0 - Normal::standard().cdf(z.abs()));
    assert!(p > 0.001, "runs test p = {p}");
}
