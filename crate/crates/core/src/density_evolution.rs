//! Quantized density evolution for SC decoding over the B-AWGN channel.
//!
//! Densities live on the lattice `j δ` for `|j| ≤ H`, the extreme bins absorbing
//! the tails. All densities describe the all-zero codeword.

use std::sync::{Arc, OnceLock};

use statrs::function::erf::erfc;

use crate::codes::ProductCodeSpec;
use crate::error::{invalid, Error, Result};
use crate::sc::boxplus;

/// A uniform LLR lattice with a cached check-node bin map.
#[derive(Debug)]
pub struct DeGrid {
    delta: f64,
    half_bins: usize,
    /// `cn_bin[a * (H+1) + b]` is the bin nearest to `boxplus(aδ, bδ)` for `a, b ≥ 0`.
    cn_bin: OnceLock<Vec<u16>>,
}

impl DeGrid {
    pub const DEFAULT_DELTA: f64 = 1.0 / 16.0;
    pub const DEFAULT_LMAX: f64 = 40.0;

    /// Grid with step `delta` covering `[-lmax, lmax]`.
    pub fn new(delta: f64, lmax: f64) -> Result<Arc<Self>> {
        if !(delta > 0.0 && lmax > delta && lmax.is_finite()) {
            return invalid(format!("invalid grid: delta {delta}, lmax {lmax}"));
        }
        let half_bins = (lmax / delta).round() as usize;
        if half_bins > u16::MAX as usize {
            return Err(Error::SizeLimit {
                what: "half-grid bins",
                limit: u16::MAX as usize,
                actual: half_bins,
            });
        }
        Ok(Arc::new(DeGrid {
            delta,
            half_bins,
            cn_bin: OnceLock::new(),
        }))
    }

    pub fn default_grid() -> Arc<Self> {
        Self::new(Self::DEFAULT_DELTA, Self::DEFAULT_LMAX).expect("valid defaults")
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn half_bins(&self) -> usize {
        self.half_bins
    }

    pub fn bins(&self) -> usize {
        2 * self.half_bins + 1
    }

    /// Bin index (offset by `H`) nearest to `v`, clamped to the support.
    pub fn bin_of(&self, v: f64) -> usize {
        let h = self.half_bins as f64;
        ((v / self.delta).round().clamp(-h, h) + h) as usize
    }

    pub fn value(&self, bin: usize) -> f64 {
        (bin as f64 - self.half_bins as f64) * self.delta
    }

    fn same_as(&self, other: &DeGrid) -> bool {
        self.delta == other.delta && self.half_bins == other.half_bins
    }

    fn cn_table(&self) -> &[u16] {
        self.cn_bin.get_or_init(|| {
            let w = self.half_bins + 1;
            let mut t = vec![0u16; w * w];
            for a in 0..w {
                for b in a..w {
                    let v = boxplus(a as f64 * self.delta, b as f64 * self.delta);
                    let j = (v / self.delta).round() as u16;
                    t[a * w + b] = j;
                    t[b * w + a] = j;
                }
            }
            t
        })
    }
}

/// Probability masses on a [`DeGrid`].
#[derive(Clone, Debug)]
pub struct QuantizedDensity {
    grid: Arc<DeGrid>,
    masses: Vec<f64>,
}

impl QuantizedDensity {
    pub fn point_mass(grid: &Arc<DeGrid>, value: f64) -> Self {
        let mut masses = vec![0.0; grid.bins()];
        masses[grid.bin_of(value)] = 1.0;
        QuantizedDensity {
            grid: grid.clone(),
            masses,
        }
    }

    /// Normalizes arbitrary non-negative masses.
    pub fn from_masses(grid: &Arc<DeGrid>, masses: Vec<f64>) -> Result<Self> {
        if masses.len() != grid.bins() {
            return Err(Error::LengthMismatch {
                expected: grid.bins(),
                actual: masses.len(),
            });
        }
        if masses.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
            return invalid("masses must be finite and non-negative");
        }
        let mut d = QuantizedDensity {
            grid: grid.clone(),
            masses,
        };
        d.normalize()?;
        Ok(d)
    }

    pub fn grid(&self) -> &Arc<DeGrid> {
        &self.grid
    }

    /// Masses indexed by bin, bin `H` holding LLR 0.
    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.masses
            .iter()
            .enumerate()
            .map(|(j, p)| p * self.grid.value(j))
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        self.masses
            .iter()
            .enumerate()
            .map(|(j, p)| p * (self.grid.value(j) - mu).powi(2))
            .sum()
    }

    /// `P(L < 0) + P(L = 0) / 2`.
    pub fn error_probability(&self) -> f64 {
        let h = self.grid.half_bins;
        self.masses[..h].iter().sum::<f64>() + 0.5 * self.masses[h]
    }

    /// `Σ_{j>0} |p(-j) - p(j) e^{-jδ}|` over bins strictly inside the support.
    pub fn symmetry_defect(&self) -> f64 {
        let h = self.grid.half_bins;
        (1..h)
            .map(|j| (self.masses[h - j] - self.masses[h + j] * (-(j as f64) * self.grid.delta).exp()).abs())
            .sum()
    }

    fn normalize(&mut self) -> Result<()> {
        let s = self.total();
        if !(s > 0.0) {
            return Err(Error::Internal("density lost all mass".into()));
        }
        self.masses.iter_mut().for_each(|m| *m /= s);
        Ok(())
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// LLR density of the all-zero codeword: Gaussian with mean `2/σ²` and variance `4/σ²`.
pub fn awgn_llr_density(sigma: f64, grid: &Arc<DeGrid>) -> Result<QuantizedDensity> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return invalid(format!("noise deviation must be positive, got {sigma}"));
    }
    let mu = 2.0 / (sigma * sigma);
    let sd = 2.0 / sigma;
    // Q(z) = P(Z > z) for the standardized variable
    let q = |x: f64| 0.5 * erfc((x - mu) / (sd * std::f64::consts::SQRT_2));
    let h = grid.half_bins as isize;
    let masses = (-h..=h)
        .map(|j| {
            let lo = (j as f64 - 0.5) * grid.delta;
            let hi = (j as f64 + 0.5) * grid.delta;
            match (j == -h, j == h) {
                (true, _) => 1.0 - q(hi),
                (_, true) => q(lo),
                _ if lo >= mu => q(lo) - q(hi),
                _ => (1.0 - q(hi)) - (1.0 - q(lo)),
            }
        })
        .map(|m: f64| m.max(0.0))
        .collect();
    QuantizedDensity::from_masses(grid, masses)
}

/// Density of `L1 + L2`, saturated at the grid edges.
pub fn vn_convolve(d1: &QuantizedDensity, d2: &QuantizedDensity) -> Result<QuantizedDensity> {
    d1.check_grid(d2)?;
    let h = d1.grid.half_bins as isize;
    let nb = d1.grid.bins();
    let mut out = vec![0.0; nb];
    for (i, &p) in d1.masses.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let off = i as isize - h;
        for (j, &q) in d2.masses.iter().enumerate() {
            if q == 0.0 {
                continue;
            }
            let s = (off + j as isize).clamp(0, 2 * h) as usize;
            out[s] += p * q;
        }
    }
    let mut d = QuantizedDensity {
        grid: d1.grid.clone(),
        masses: out,
    };
    d.normalize()?;
    Ok(d)
}

/// Density of `boxplus(L1, L2)`, each pair mapped to the nearest bin.
pub fn cn_convolve(d1: &QuantizedDensity, d2: &QuantizedDensity) -> Result<QuantizedDensity> {
    d1.check_grid(d2)?;
    let grid = &d1.grid;
    let h = grid.half_bins;
    let w = h + 1;
    let table = grid.cn_table();
    let mut out = vec![0.0; grid.bins()];
    for (i, &p) in d1.masses.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let (a, neg_a) = if i >= h { (i - h, false) } else { (h - i, true) };
        let row = &table[a * w..(a + 1) * w];
        for (j, &q) in d2.masses.iter().enumerate() {
            if q == 0.0 {
                continue;
            }
            let (b, neg_b) = if j >= h { (j - h, false) } else { (h - j, true) };
            let t = row[b] as usize;
            let idx = if neg_a != neg_b { h - t } else { h + t };
            out[idx] += p * q;
        }
    }
    let mut d = QuantizedDensity {
        grid: grid.clone(),
        masses: out,
    };
    d.normalize()?;
    Ok(d)
}

/// `t`-fold check-node convolution of `d` with itself (left fold).
pub fn cn_power(d: &QuantizedDensity, t: usize) -> Result<QuantizedDensity> {
    if t == 0 {
        return invalid("check-node power must be at least 1");
    }
    let mut acc = d.clone();
    for _ in 1..t {
        acc = cn_convolve(&acc, d)?;
    }
    Ok(acc)
}

/// Genie-aided per-bit error probabilities and their union bound.
#[derive(Clone, Debug, PartialEq)]
pub struct DeResult {
    /// `P(B_i)` for information bits `i = 1..k` in decoding order.
    pub bit_error_probs: Vec<f64>,
    pub union_bound: f64,
}

/// Evolves the channel density through the levels of `spec`.
///
/// Bit `t` of an `(n, n-1)` level sees its parent's density combined at a
/// variable node with the `(n - t)`-fold check-node power of the same density.
pub fn de_bit_error_probs(spec: &ProductCodeSpec, sigma: f64, grid: &Arc<DeGrid>) -> Result<DeResult> {
    Ok(finish(evolve(spec, awgn_llr_density(sigma, grid)?)?))
}

fn evolve(spec: &ProductCodeSpec, channel: QuantizedDensity) -> Result<Vec<QuantizedDensity>> {
    let mut level = vec![channel];
    for &nl in spec.dims() {
        let mut next = Vec::with_capacity(level.len() * (nl - 1));
        for parent in &level {
            // powers[j] = parent^{⊞(j+1)}
            let mut powers = Vec::with_capacity(nl - 1);
            powers.push(parent.clone());
            for _ in 1..nl - 1 {
                let p = cn_convolve(powers.last().expect("non-empty"), parent)?;
                powers.push(p);
            }
            for t in 1..nl {
                next.push(vn_convolve(parent, &powers[nl - t - 1])?);
            }
        }
        level = next;
    }
    Ok(level)
}

fn finish(densities: Vec<QuantizedDensity>) -> DeResult {
    let bit_error_probs: Vec<f64> = densities.iter().map(QuantizedDensity::error_probability).collect();
    DeResult {
        union_bound: bit_error_probs.iter().sum(),
        bit_error_probs,
    }
}

/// Final bit-channel densities (decoding order), for inspection.
pub fn de_bit_densities(spec: &ProductCodeSpec, sigma: f64, grid: &Arc<DeGrid>) -> Result<Vec<QuantizedDensity>> {
    evolve(spec, awgn_llr_density(sigma, grid)?)
}
