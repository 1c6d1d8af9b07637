//! Binary erasure and binary-input AWGN channels.
//!
//! LLRs follow the convention `L = ln W(y|0) / W(y|1)`: positive values favour 0.

use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::codes::BitWord;
use crate::error::{invalid, Result};

/// Saturation magnitude for channel LLRs.
pub const LLR_MAX: f64 = 40.0;

/// A BEC output symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ternary {
    Zero,
    One,
    Erasure,
}

impl Ternary {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }

    pub fn is_erasure(self) -> bool {
        self == Ternary::Erasure
    }

    pub fn as_char(self) -> char {
        match self {
            Ternary::Zero => '0',
            Ternary::One => '1',
            Ternary::Erasure => '?',
        }
    }
}

/// A word over `{0, 1, ?}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryWord(pub Vec<Ternary>);

impl TernaryWord {
    pub fn from_bits(x: &BitWord) -> Self {
        TernaryWord(x.iter().map(Ternary::from_bit).collect())
    }

    /// Parses `0`, `1` and `?` (or `e`); commas and whitespace are ignored.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(Ternary::Zero),
                '1' => Ok(Ternary::One),
                '?' | 'e' | 'E' => Ok(Ternary::Erasure),
                other => invalid(format!("not a BEC symbol: {other:?}")),
            })
            .collect::<Result<Vec<_>>>()
            .map(TernaryWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn erasures(&self) -> usize {
        self.0.iter().filter(|t| t.is_erasure()).count()
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.as_char())?;
        }
        Ok(())
    }
}

/// A vector of finite channel LLRs.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LlrWord(pub Vec<f64>);

impl LlrWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Noiseless observation of `x` at the saturation level.
    pub fn noiseless(x: &BitWord) -> Self {
        LlrWord(x.iter().map(|b| if b { -LLR_MAX } else { LLR_MAX }).collect())
    }
}

/// A memoryless binary-input channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelParams {
    Bec { epsilon: f64 },
    Bawgn { sigma: f64 },
}

impl ChannelParams {
    pub fn bec(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return invalid(format!("erasure probability {epsilon} outside [0, 1]"));
        }
        Ok(ChannelParams::Bec { epsilon })
    }

    pub fn bawgn(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return invalid(format!("noise deviation must be positive, got {sigma}"));
        }
        Ok(ChannelParams::Bawgn { sigma })
    }

    /// B-AWGN channel at `ebn0_db` for a code of rate `rate`.
    pub fn bawgn_ebn0(ebn0_db: f64, rate: f64) -> Result<Self> {
        Self::bawgn(sigma_from_ebn0(ebn0_db, rate)?)
    }
}

/// `σ = (2 R 10^{Eb/N0 / 10})^{-1/2}`.
pub fn sigma_from_ebn0(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return invalid(format!("code rate must lie in (0, 1], got {rate}"));
    }
    if !ebn0_db.is_finite() {
        return invalid("Eb/N0 must be finite");
    }
    Ok((2.0 * rate * 10f64.powf(ebn0_db / 10.0)).powf(-0.5))
}

/// Erases each symbol independently with probability `epsilon`.
pub fn bec_transmit<R: Rng + ?Sized>(x: &BitWord, epsilon: f64, rng: &mut R) -> TernaryWord {
    TernaryWord(
        x.iter()
            .map(|b| {
                if rng.random::<f64>() < epsilon {
                    Ternary::Erasure
                } else {
                    Ternary::from_bit(b)
                }
            })
            .collect(),
    )
}

/// BPSK (`0 → +1`, `1 → -1`) over AWGN, returning clamped LLRs `2y/σ²`.
///
/// The noise sample for position `i` is drawn as `s_i g_i`. Since `g_i` is
/// symmetric this does not change the channel law, and it makes the LLRs for
/// any codeword an exact sign flip of the all-zero LLRs drawn from the same stream.
pub fn awgn_llr_transmit<R: Rng + ?Sized>(x: &BitWord, sigma: f64, rng: &mut R) -> LlrWord {
    let normal = Normal::new(0.0, sigma).expect("positive sigma");
    let scale = 2.0 / (sigma * sigma);
    LlrWord(
        x.iter()
            .map(|b| {
                let s = if b { -1.0 } else { 1.0 };
                let y = s * (1.0 + normal.sample(rng));
                (scale * y).clamp(-LLR_MAX, LLR_MAX)
            })
            .collect(),
    )
}

/// LLR of a single received value.
pub fn awgn_llr(y: f64, sigma: f64) -> f64 {
    (2.0 * y / (sigma * sigma)).clamp(-LLR_MAX, LLR_MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bec_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = BitWord::from_bits(&[0, 1, 1, 0, 1]);
        assert_eq!(bec_transmit(&x, 0.0, &mut rng), TernaryWord::from_bits(&x));
        assert_eq!(bec_transmit(&x, 1.0, &mut rng).erasures(), 5);
    }

    #[test]
    fn bec_fraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let y = bec_transmit(&BitWord::zeros(1_000_000), 0.5, &mut rng);
        let frac = y.erasures() as f64 / 1e6;
        assert!((frac - 0.5).abs() < 0.002, "{frac}");
    }

    #[test]
    fn awgn_near_noiseless() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = awgn_llr_transmit(&BitWord::zeros(100), 1e-3, &mut rng);
        assert!(l.0.iter().all(|&v| v == LLR_MAX));
        assert_eq!(awgn_llr(0.0, 1.0), 0.0);
    }

    #[test]
    fn awgn_llr_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l = awgn_llr_transmit(&BitWord::zeros(1_000_000), 1.0, &mut rng);
        let n = l.len() as f64;
        let mean = l.0.iter().sum::<f64>() / n;
        let var = l.0.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        assert!((mean - 2.0).abs() < 0.02, "{mean}");
        // consistency of a symmetric LLR density: mean = variance / 2
        assert!((mean - var / 2.0).abs() < 0.05, "{mean} {var}");
    }

    #[test]
    fn awgn_codeword_mirrors_all_zero() {
        let x = BitWord::from_bits(&[1, 0, 1, 1, 0, 0, 1]);
        let a = awgn_llr_transmit(&BitWord::zeros(7), 0.8, &mut ChaCha8Rng::seed_from_u64(5));
        let b = awgn_llr_transmit(&x, 0.8, &mut ChaCha8Rng::seed_from_u64(5));
        for (i, (p, q)) in a.0.iter().zip(&b.0).enumerate() {
            let s = if x.get(i) { -1.0 } else { 1.0 };
            assert_eq!(s * p, *q);
        }
    }

    #[test]
    fn sigma_conversion() {
        let s = sigma_from_ebn0(0.0, 0.5).unwrap();
        assert!((s - 1.0).abs() < 1e-12);
        assert!(sigma_from_ebn0(1.0, 0.0).is_err());
        assert!(ChannelParams::bec(1.5).is_err());
        assert!(ChannelParams::bawgn(0.0).is_err());
    }

    #[test]
    fn ternary_parse() {
        let y = TernaryWord::parse("0??1,e").unwrap();
        assert_eq!(y.to_string(), "0??1?");
        assert!(TernaryWord::parse("012").is_err());
    }
}
