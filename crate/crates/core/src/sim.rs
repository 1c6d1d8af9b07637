//! Reproducible Monte Carlo estimation of block error rates.
//!
//! Trial `i` draws its message from ChaCha8 stream `2i` and its channel noise
//! from stream `2i + 1` of the master seed, so results depend only on the
//! configuration and never on how trials are spread over threads.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{awgn_llr_transmit, bec_transmit, ChannelParams};
use crate::codes::{BitWord, ProductCodeSpec};
use crate::crc::CrcSpec;
use crate::error::{invalid, Result};
use crate::sc::{elias_decode, genie_sc, sc_decode, Observation};
use crate::scl::{bec_ml_decode, ml_exhaustive, scl_decode, BecMl, SclConfig};

const BATCH: u64 = 256;

/// Which decoder a simulation runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DecoderSpec {
    Sc,
    Elias,
    Scl { list_size: usize },
    /// Gaussian elimination over the BEC, exhaustive search over the B-AWGN channel.
    Ml,
}

impl std::fmt::Display for DecoderSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecoderSpec::Sc => write!(f, "sc"),
            DecoderSpec::Elias => write!(f, "elias"),
            DecoderSpec::Scl { list_size } => write!(f, "scl{list_size}"),
            DecoderSpec::Ml => write!(f, "ml"),
        }
    }
}

/// One simulation point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dims: Vec<usize>,
    pub seed: u64,
    pub max_trials: u64,
    pub target_block_errors: u64,
    pub channel: ChannelParams,
    pub decoder: DecoderSpec,
    /// Outer CRC; messages then carry `k - r` bits.
    #[serde(default, with = "crc_hex")]
    pub crc: Option<CrcSpec>,
    /// Send the all-zero message instead of random ones.
    #[serde(default)]
    pub all_zero: bool,
    /// Count genie-aided SC first errors per information bit.
    #[serde(default)]
    pub record_first_errors: bool,
}

mod crc_hex {
    use super::CrcSpec;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(crc: &Option<CrcSpec>, s: S) -> Result<S::Ok, S::Error> {
        crc.map(|c| c.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<CrcSpec>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl SimConfig {
    pub fn new(dims: &[usize], channel: ChannelParams, decoder: DecoderSpec) -> Self {
        SimConfig {
            dims: dims.to_vec(),
            seed: 1,
            max_trials: 10_000,
            target_block_errors: 100,
            channel,
            decoder,
            crc: None,
            all_zero: false,
            record_first_errors: false,
        }
    }

    fn validate(&self) -> Result<ProductCodeSpec> {
        if self.max_trials == 0 || self.target_block_errors == 0 {
            return invalid("max_trials and target_block_errors must be at least 1");
        }
        let spec = ProductCodeSpec::new(&self.dims)?;
        check_pairing(&spec, self, self.decoder)?;
        Ok(spec)
    }
}

fn check_pairing(spec: &ProductCodeSpec, cfg: &SimConfig, decoder: DecoderSpec) -> Result<()> {
    if let Some(crc) = cfg.crc {
        if crc.degree() >= spec.k() {
            return invalid(format!("CRC degree {} leaves no message bits in k = {}", crc.degree(), spec.k()));
        }
    }
    match (decoder, cfg.channel) {
        (DecoderSpec::Scl { .. }, ChannelParams::Bec { .. }) => {
            invalid("list decoding is defined for LLR observations; use ml over the BEC")
        }
        (DecoderSpec::Scl { list_size: 0 }, _) => invalid("list size must be at least 1"),
        (DecoderSpec::Ml, _) if cfg.crc.is_some() => invalid("ml decoding with an outer CRC is not supported"),
        (_, _) if cfg.record_first_errors && cfg.crc.is_some() => {
            invalid("first-error recording needs the plain product code")
        }
        _ => Ok(()),
    }
}

/// Outcome of a single trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub block_error: bool,
    /// 1-based indices of genie-aided SC errors, when recorded.
    pub first_errors: Vec<usize>,
}

/// Aggregated estimate for one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub trials: u64,
    pub block_errors: u64,
    pub bler: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_error_counts: Option<Vec<u64>>,
    pub config: SimConfig,
    pub version: String,
    /// Elapsed seconds; not serialized so outputs stay reproducible.
    #[serde(skip)]
    pub wall_time_s: f64,
}

/// Two decoders run on identical channel outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairedResult {
    pub a: SimResult,
    pub b: SimResult,
    /// Trials where `a` fails and `b` succeeds.
    pub a_only_errors: u64,
    /// Trials where `b` fails and `a` succeeds.
    pub b_only_errors: u64,
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(errors: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = errors as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (p + z * z / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn trial_rngs(seed: u64, index: u64) -> (ChaCha8Rng, ChaCha8Rng) {
    let mut msg = ChaCha8Rng::seed_from_u64(seed);
    msg.set_stream(2 * index);
    let mut noise = ChaCha8Rng::seed_from_u64(seed);
    noise.set_stream(2 * index + 1);
    (msg, noise)
}

struct Prepared {
    spec: ProductCodeSpec,
    crc: Option<CrcSpec>,
}

impl Prepared {
    fn message_len(&self) -> usize {
        self.spec.k() - self.crc.map_or(0, |c| c.degree())
    }

    fn observe(&self, cfg: &SimConfig, index: u64) -> Result<(BitWord, BitWord, Observation)> {
        let (mut msg_rng, mut noise_rng) = trial_rngs(cfg.seed, index);
        let k_o = self.message_len();
        let message = if cfg.all_zero {
            BitWord::zeros(k_o)
        } else {
            let bits: Vec<u8> = (0..k_o).map(|_| msg_rng.random::<bool>() as u8).collect();
            BitWord::from_bits(&bits)
        };
        let inner = match self.crc {
            Some(c) => c.encode(&message),
            None => message.clone(),
        };
        let x = self.spec.encode(&inner)?;
        let obs = match cfg.channel {
            ChannelParams::Bec { epsilon } => Observation::Bec(bec_transmit(&x, epsilon, &mut noise_rng)),
            ChannelParams::Bawgn { sigma } => Observation::Llr(awgn_llr_transmit(&x, sigma, &mut noise_rng)),
        };
        Ok((message, inner, obs))
    }

    /// Decoded outer message, `None` on an unresolved erasure.
    fn decode(&self, decoder: DecoderSpec, obs: &Observation) -> Result<Option<BitWord>> {
        let inner = match (decoder, obs) {
            (DecoderSpec::Sc, _) => sc_decode(&self.spec, obs)?.message(),
            (DecoderSpec::Elias, _) => elias_decode(&self.spec, obs)?.message(),
            (DecoderSpec::Scl { list_size }, Observation::Llr(llr)) => {
                let cfg = match self.crc {
                    Some(c) => SclConfig::with_crc(list_size, c)?,
                    None => SclConfig::new(list_size)?,
                };
                Some(scl_decode(&self.spec, llr, &cfg)?.message)
            }
            (DecoderSpec::Ml, Observation::Llr(llr)) => Some(ml_exhaustive(&self.spec, llr)?),
            (DecoderSpec::Ml, Observation::Bec(y)) => match bec_ml_decode(&self.spec, y)? {
                BecMl::Unique(u) => Some(u),
                BecMl::Ambiguous => None,
            },
            (DecoderSpec::Scl { .. }, Observation::Bec(_)) => {
                return invalid("list decoding is defined for LLR observations")
            }
        };
        Ok(match (inner, self.crc) {
            (Some(u), Some(c)) => Some(c.strip(&u)),
            (u, _) => u,
        })
    }

    fn run_trial(&self, cfg: &SimConfig, decoders: &[DecoderSpec], index: u64) -> Result<Vec<TrialOutcome>> {
        let (message, inner, obs) = self.observe(cfg, index)?;
        let first_errors = if cfg.record_first_errors {
            genie_sc(&self.spec, &obs, &inner)?.first_error_indices
        } else {
            Vec::new()
        };
        decoders
            .iter()
            .map(|&d| {
                Ok(TrialOutcome {
                    block_error: self.decode(d, &obs)?.as_ref() != Some(&message),
                    first_errors: first_errors.clone(),
                })
            })
            .collect()
    }
}

/// Runs trial `index` of `cfg` on its own.
pub fn simulate_trial(cfg: &SimConfig, index: u64) -> Result<TrialOutcome> {
    let spec = cfg.validate()?;
    let p = Prepared { spec, crc: cfg.crc };
    Ok(p.run_trial(cfg, &[cfg.decoder], index)?.remove(0))
}

struct Tally {
    trials: u64,
    errors: Vec<u64>,
    joint: [u64; 2],
    first: Option<Vec<u64>>,
}

/// Runs trials in order-preserving parallel batches; `done` sees the
/// per-decoder error counts after every trial.
fn run_core(cfg: &SimConfig, decoders: &[DecoderSpec], done: impl Fn(&[u64]) -> bool) -> Result<Tally> {
    let spec = cfg.validate()?;
    for &d in decoders {
        check_pairing(&spec, cfg, d)?;
    }
    let prepared = Prepared { spec, crc: cfg.crc };
    let mut tally = Tally {
        trials: 0,
        errors: vec![0; decoders.len()],
        joint: [0; 2],
        first: cfg.record_first_errors.then(|| vec![0; prepared.spec.k()]),
    };
    let mut next = 0u64;
    'outer: while next < cfg.max_trials {
        let end = (next + BATCH).min(cfg.max_trials);
        let outcomes: Vec<Vec<TrialOutcome>> = (next..end)
            .into_par_iter()
            .map(|i| prepared.run_trial(cfg, decoders, i))
            .collect::<Result<_>>()?;
        for trial in outcomes {
            tally.trials += 1;
            for (e, o) in tally.errors.iter_mut().zip(&trial) {
                *e += o.block_error as u64;
            }
            if let [a, b] = &trial[..] {
                tally.joint[0] += (a.block_error && !b.block_error) as u64;
                tally.joint[1] += (b.block_error && !a.block_error) as u64;
            }
            if let Some(first) = &mut tally.first {
                for &i in &trial[0].first_errors {
                    first[i - 1] += 1;
                }
            }
            if done(&tally.errors) {
                break 'outer;
            }
        }
        next = end;
    }
    Ok(tally)
}

fn result(cfg: &SimConfig, decoder: DecoderSpec, tally: &Tally, errors: u64, started: Instant) -> SimResult {
    let (ci_low, ci_high) = wilson_interval(errors, tally.trials);
    SimResult {
        trials: tally.trials,
        block_errors: errors,
        bler: errors as f64 / tally.trials as f64,
        ci_low,
        ci_high,
        first_error_counts: tally.first.clone(),
        config: SimConfig {
            decoder,
            ..cfg.clone()
        },
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_s: started.elapsed().as_secs_f64(),
    }
}

/// Estimates the block error rate, stopping at `target_block_errors` or `max_trials`.
pub fn run_bler(cfg: &SimConfig) -> Result<SimResult> {
    let started = Instant::now();
    let target = cfg.target_block_errors;
    let tally = run_core(cfg, &[cfg.decoder], |e| e[0] >= target)?;
    Ok(result(cfg, cfg.decoder, &tally, tally.errors[0], started))
}

/// Runs `a` and `b` on the same channel outputs until both have reached the
/// error target or `max_trials` is exhausted. `cfg.decoder` is ignored.
pub fn run_paired(cfg: &SimConfig, a: DecoderSpec, b: DecoderSpec) -> Result<PairedResult> {
    let started = Instant::now();
    let target = cfg.target_block_errors;
    let tally = run_core(cfg, &[a, b], |e| e.iter().all(|&x| x >= target))?;
    Ok(PairedResult {
        a: result(cfg, a, &tally, tally.errors[0], started),
        b: result(cfg, b, &tally, tally.errors[1], started),
        a_only_errors: tally.joint[0],
        b_only_errors: tally.joint[1],
    })
}

/// Runs `f` on a pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| crate::Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
