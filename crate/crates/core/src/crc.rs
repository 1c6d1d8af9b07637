//! Systematic CRC outer codes.
//!
//! Messages enter the division register most significant (first) bit first,
//! the register starts at zero, and the `r` parity bits are appended after the
//! message, highest-degree remainder coefficient first.

use std::fmt;
use std::str::FromStr;

use crate::codes::{BitMatrix, BitWord};
use crate::error::{invalid, Error, Result};

/// A CRC generator polynomial `g(x)` of degree `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrcSpec {
    degree: usize,
    /// Coefficients of `g(x)`, bit `i` holding the coefficient of `x^i`.
    poly: u64,
}

impl CrcSpec {
    /// `x^8 + x^6 + x^5 + x^4 + x^2 + x + 1`, used with SPC product codes.
    pub const CRC8_SPC: CrcSpec = CrcSpec {
        degree: 8,
        poly: 0x1D7,
    };
    /// `x^8 + x^7 + x^6 + x^5 + 1`, used with the polar comparison code.
    pub const CRC8_POLAR: CrcSpec = CrcSpec {
        degree: 8,
        poly: 0x1E1,
    };

    /// Builds a spec from coefficient bits including the leading term.
    pub fn from_poly(poly: u64) -> Result<Self> {
        if poly < 2 {
            return invalid("CRC polynomial must have degree at least 1");
        }
        let degree = 63 - poly.leading_zeros() as usize;
        if poly & 1 == 0 {
            return invalid(format!("CRC polynomial {poly:#x} has no constant term"));
        }
        Ok(CrcSpec { degree, poly })
    }

    /// Parses `0x1D7`-style hex or a preset name (`crc8-spc`, `crc8-polar`).
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "crc8-spc" => Ok(Self::CRC8_SPC),
            "crc8-polar" => Ok(Self::CRC8_POLAR),
            other => {
                let hex = other.strip_prefix("0x").unwrap_or(other);
                let poly = u64::from_str_radix(hex, 16)
                    .map_err(|e| Error::InvalidArgument(format!("bad CRC polynomial {s:?}: {e}")))?;
                Self::from_poly(poly)
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> u64 {
        self.poly
    }

    fn remainder(&self, bits: impl Iterator<Item = bool>) -> u64 {
        let r = self.degree;
        let top = 1u64 << (r - 1);
        let mask = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        let low = self.poly & mask;
        let mut reg = 0u64;
        for b in bits {
            let feedback = ((reg & top) != 0) ^ b;
            reg = (reg << 1) & mask;
            if feedback {
                reg ^= low;
            }
        }
        reg
    }

    /// Appends the `r` parity bits of `msg · x^r mod g(x)`.
    pub fn encode(&self, msg: &BitWord) -> BitWord {
        let rem = self.remainder(msg.iter());
        let mut out = BitWord::zeros(msg.len() + self.degree);
        for (i, b) in msg.iter().enumerate() {
            out.set(i, b);
        }
        for j in 0..self.degree {
            out.set(msg.len() + j, (rem >> (self.degree - 1 - j)) & 1 == 1);
        }
        out
    }

    /// True when `word(x)` is divisible by `g(x)`.
    pub fn check(&self, word: &BitWord) -> Result<bool> {
        if word.len() < self.degree + 1 {
            return invalid(format!(
                "word of length {} is shorter than degree + 1 = {}",
                word.len(),
                self.degree + 1
            ));
        }
        // Dividing the full word: the remainder of word(x) mod g(x) equals
        // the register after shifting in all but the last r bits, combined with them.
        let k = word.len() - self.degree;
        let rem = self.remainder((0..k).map(|i| word.get(i)));
        let tail = (0..self.degree).fold(0u64, |acc, j| (acc << 1) | word.get(k + j) as u64);
        Ok(rem == tail)
    }

    /// Message with its parity bits stripped.
    pub fn strip(&self, word: &BitWord) -> BitWord {
        let k = word.len().saturating_sub(self.degree);
        BitWord::from_bits(&word.to_bits()[..k])
    }

    /// Systematic generator of the `(k_o + r, k_o)` code.
    pub fn generator_matrix(&self, k_o: usize) -> BitMatrix {
        let rows = (0..k_o)
            .map(|i| {
                let mut e = BitWord::zeros(k_o);
                e.set(i, true);
                self.encode(&e)
            })
            .collect();
        BitMatrix::from_words(k_o + self.degree, rows).expect("consistent lengths")
    }

    /// `r x n_o` parity-check matrix; column `j` holds `x^{n_o-1-j} mod g(x)`.
    pub fn parity_check_matrix(&self, n_o: usize) -> BitMatrix {
        let mut h = BitMatrix::zeros(self.degree, n_o);
        let mask = (1u64 << self.degree) - 1;
        let mut power = 1u64; // x^0 mod g
        for j in (0..n_o).rev() {
            for row in 0..self.degree {
                if (power >> (self.degree - 1 - row)) & 1 == 1 {
                    h.set(row, j, true);
                }
            }
            let overflow = power & (1 << (self.degree - 1)) != 0;
            power = (power << 1) & mask;
            if overflow {
                power ^= self.poly & mask;
            }
        }
        h
    }
}

impl fmt::Display for CrcSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#X}", self.poly)
    }
}

impl FromStr for CrcSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
