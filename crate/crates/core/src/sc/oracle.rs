//! Literal evaluation of the SC likelihood recursion in the probability domain.
//!
//! Exponential in the component lengths; intended as a reference for the fast
//! decoders on small codes.

use crate::channels::{LlrWord, Ternary, TernaryWord};
use crate::codes::ProductCodeSpec;
use crate::error::{invalid, Error, Result};

const MAX_ORACLE_K: usize = 16;

/// Per-position channel likelihoods `(W(y|0), W(y|1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelProbs(pub Vec<(f64, f64)>);

impl ChannelProbs {
    /// Likelihoods proportional to `(1, e^{-L})`, normalized per position.
    pub fn from_llr(llr: &LlrWord) -> Self {
        ChannelProbs(
            llr.0
                .iter()
                .map(|&l| (1.0 / (1.0 + (-l).exp()), 1.0 / (1.0 + l.exp())))
                .collect(),
        )
    }

    pub fn from_bec(y: &TernaryWord, epsilon: f64) -> Self {
        ChannelProbs(
            y.0.iter()
                .map(|t| match t {
                    Ternary::Zero => (1.0 - epsilon, 0.0),
                    Ternary::One => (0.0, 1.0 - epsilon),
                    Ternary::Erasure => (epsilon, epsilon),
                })
                .collect(),
        )
    }
}

/// Bit-channel likelihoods for both hypotheses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BitLikelihood {
    pub w0: f64,
    pub w1: f64,
}

impl BitLikelihood {
    pub fn llr(&self) -> f64 {
        (self.w0 / self.w1).ln()
    }
}

/// Likelihood of information bit `i` (1-based) given `u_prefix = u_1..u_{i-1}`,
/// summing explicitly over the undecided bits of its group at every level.
pub fn sc_bit_metric_oracle(
    spec: &ProductCodeSpec,
    probs: &ChannelProbs,
    i: usize,
    u_prefix: &[u8],
) -> Result<BitLikelihood> {
    if spec.k() > MAX_ORACLE_K {
        return Err(Error::SizeLimit {
            what: "oracle dimension",
            limit: MAX_ORACLE_K,
            actual: spec.k(),
        });
    }
    if probs.0.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            actual: probs.0.len(),
        });
    }
    if i == 0 || i > spec.k() || u_prefix.len() != i - 1 {
        return invalid(format!("bit index {i} with prefix of length {}", u_prefix.len()));
    }
    Ok(BitLikelihood {
        w0: likelihood(spec.dims(), &probs.0, u_prefix, 0),
        w1: likelihood(spec.dims(), &probs.0, u_prefix, 1),
    })
}

fn likelihood(dims: &[usize], y: &[(f64, f64)], prefix: &[u8], ui: u8) -> f64 {
    let Some((&nm, inner)) = dims.split_last() else {
        debug_assert!(prefix.is_empty() && y.len() == 1);
        return if ui == 0 { y[0].0 } else { y[0].1 };
    };
    let km = nm - 1;
    let block = y.len() / nm;
    let i = prefix.len() + 1;
    let j = (i - 1) / km;
    let t = (i - 1) % km + 1;

    // Stream j' collects u_{j'}, u_{j'+k_m}, … from completed groups.
    let mut streams: Vec<Vec<u8>> = (1..=km)
        .map(|jp| (0..j).map(|q| prefix[q * km + jp - 1]).collect())
        .collect();
    let parity_stream: Vec<u8> = (0..j)
        .map(|q| streams.iter().fold(0, |acc, s| acc ^ s[q]))
        .collect();
    streams.insert(0, parity_stream);

    let known = &prefix[j * km..];
    let free = km - t;
    let scale = 0.5f64.powi(km as i32 - 1);
    let mut total = 0.0;
    for rest in 0u64..(1 << free) {
        let mut group: Vec<u8> = known.to_vec();
        group.push(ui);
        group.extend((0..free).map(|b| ((rest >> b) & 1) as u8));
        let parity = group.iter().fold(0, |a, b| a ^ b);
        let mut term = scale * likelihood(inner, &y[..block], &streams[0], parity);
        for (jp, &g) in group.iter().enumerate() {
            let yb = &y[(jp + 1) * block..(jp + 2) * block];
            term *= likelihood(inner, yb, &streams[jp + 1], g);
        }
        total += term;
    }
    total
}
