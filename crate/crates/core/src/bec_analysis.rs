//! Closed-form analysis over the binary erasure channel.

use serde::{Deserialize, Serialize};

use crate::codes::ProductCodeSpec;
use crate::error::{invalid, Error, Result};

/// Erasure probability of the `i`-th information bit (1-based) of an
/// `(n, n-1)` SPC code under SC decoding: `ε (1 - (1-ε)^{n-i})`.
///
/// ```
/// use spcpc::bec_analysis::spc_bit_erasure;
/// assert_eq!(spc_bit_erasure(0.5, 5, 1).unwrap(), 0.46875);
/// ```
pub fn spc_bit_erasure(eps: f64, n: usize, i: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return invalid(format!("erasure probability {eps} outside [0, 1]"));
    }
    if n < 2 || i == 0 || i >= n {
        return invalid(format!("bit index {i} out of range for length {n}"));
    }
    Ok(spc_erasure_unchecked(eps, n, i))
}

#[inline]
fn spc_erasure_unchecked(eps: f64, n: usize, i: usize) -> f64 {
    eps * -((n - i) as f64 * (-eps).ln_1p()).exp_m1()
}

/// Per-bit SC erasure probabilities of a product code and the bounds they imply.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErasureProfile {
    /// `ε_1, …, ε_k` in decoding order.
    pub eps: Vec<f64>,
    pub eps_max: f64,
    /// `max_i ε_i`, a lower bound on the block erasure probability.
    pub lower: f64,
    /// `Σ_i ε_i`, the union bound.
    pub upper: f64,
    /// `k · ε_max`.
    pub loose: f64,
}

/// Evolves the channel erasure probability through the levels of `spec`.
/// Bit `i` of level `l` takes the value of bit `⌊(i-1)/k_l⌋ + 1` of level `l-1`
/// through [`spc_bit_erasure`] at position `t = (i-1) mod k_l + 1`.
pub fn product_bit_erasures(spec: &ProductCodeSpec, eps: f64) -> Result<ErasureProfile> {
    if !(0.0..=1.0).contains(&eps) {
        return invalid(format!("erasure probability {eps} outside [0, 1]"));
    }
    let mut profile = vec![eps];
    for &nl in spec.dims() {
        let kl = nl - 1;
        profile = (0..profile.len() * kl)
            .map(|i| spc_erasure_unchecked(profile[i / kl], nl, i % kl + 1))
            .collect();
    }
    let eps_max = profile.iter().copied().fold(0.0, f64::max);
    let upper = profile.iter().sum();
    Ok(ErasureProfile {
        loose: profile.len() as f64 * eps_max,
        eps: profile,
        eps_max,
        lower: eps_max,
        upper,
    })
}

/// Erasure probability of every bit under Elias' decoder, equal to the first
/// bit's SC erasure probability.
pub fn elias_bit_erasure(spec: &ProductCodeSpec, eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return invalid(format!("erasure probability {eps} outside [0, 1]"));
    }
    Ok(spec
        .dims()
        .iter()
        .fold(eps, |e, &nl| spc_erasure_unchecked(e, nl, 1)))
}

/// Mutual-information map of the first bit of an `(n, n-1)` SPC code:
/// `f(I) = I + I^{n-1} - I^n`.
pub fn mi_map(i: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&i) {
        return invalid(format!("mutual information {i} outside [0, 1]"));
    }
    if n < 2 {
        return invalid("component length must be at least 2");
    }
    Ok(i + i.powi(n as i32 - 1) - i.powi(n as i32))
}

/// `[I, f(I), f(f(I)), …]` with `m + 1` entries, using `n_l = m` at every level.
pub fn mi_trajectory(i_ch: f64, m: usize) -> Result<Vec<f64>> {
    if m < 2 {
        return invalid("the self-similar family needs m >= 2");
    }
    let mut out = Vec::with_capacity(m + 1);
    out.push(i_ch);
    let mut cur = i_ch;
    for _ in 0..m {
        cur = mi_map(cur, m)?;
        out.push(cur);
    }
    Ok(out)
}

/// A rule generating component lengths for every number of dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SequenceFamily {
    /// `n_l = a² l²`.
    Euler { a2: u64 },
    /// `n_l = m` for all `l`.
    SelfSimilar { m: usize },
}

impl SequenceFamily {
    pub fn euler(a2: u64) -> Result<Self> {
        if a2 < 2 {
            return invalid("a² must be at least 2");
        }
        Ok(SequenceFamily::Euler { a2 })
    }

    /// Component length of level `l` (1-based).
    pub fn component(&self, l: usize) -> usize {
        match *self {
            SequenceFamily::Euler { a2 } => (a2 as usize) * l * l,
            SequenceFamily::SelfSimilar { m } => m,
        }
    }

    /// Component lengths of the `m`-dimensional member (ignored for the self-similar family's own `m`).
    pub fn dims(&self, m: usize) -> Vec<usize> {
        match *self {
            SequenceFamily::Euler { .. } => (1..=m).map(|l| self.component(l)).collect(),
            SequenceFamily::SelfSimilar { m } => vec![m; m],
        }
    }
}

/// `∏_{l=1}^{m} (1 - 1/(a² l²))`.
pub fn euler_rate(a2: u64, m: usize) -> f64 {
    let a2 = a2 as f64;
    (1..=m)
        .map(|l| (-1.0 / (a2 * (l * l) as f64)).ln_1p())
        .sum::<f64>()
        .exp()
}

/// Limit of [`euler_rate`]: `(a/π) sin(π/a)`.
pub fn euler_rate_limit(a2: u64) -> f64 {
    let a = (a2 as f64).sqrt();
    a / std::f64::consts::PI * (std::f64::consts::PI / a).sin()
}

/// Budget and decision rule for the convergence predicate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRule {
    pub max_levels: usize,
    pub window: usize,
    /// `ln` of the level below which `k · ε_max` counts as vanished.
    pub log_floor: f64,
}

impl Default for ConvergenceRule {
    fn default() -> Self {
        ConvergenceRule {
            max_levels: 400,
            window: 50,
            log_floor: (1e-12f64).ln(),
        }
    }
}

/// `ln ε'` for `ε' = ε (1 - (1-ε)^{n-1})`, given `ln ε`.
fn log_first_bit_step(le: f64, n: usize) -> f64 {
    let ln_nm1 = ((n - 1) as f64).ln();
    if le + ln_nm1 < -30.0 {
        // 1 - (1-ε)^{n-1} = (n-1) ε (1 + O((n-1) ε))
        le + ln_nm1 + le
    } else {
        let eps = le.exp();
        le + (-((n - 1) as f64 * (-eps).ln_1p()).exp_m1()).ln()
    }
}

/// Whether `k(m) · ε_max(m)` vanishes along `family` at channel erasure `eps`.
///
/// Returns [`Error::Undecided`] when neither a sustained decrease below the
/// floor nor a sustained increase is seen within the level budget.
pub fn block_erasure_vanishes(family: &SequenceFamily, eps: f64, rule: &ConvergenceRule) -> Result<bool> {
    if !(0.0..=1.0).contains(&eps) {
        return invalid(format!("erasure probability {eps} outside [0, 1]"));
    }
    if eps == 0.0 {
        return Ok(true);
    }
    let mut le = eps.ln();
    let mut log_k = 0.0;
    let mut prev = f64::NAN;
    let (mut up, mut down) = (0usize, 0usize);
    for l in 1..=rule.max_levels {
        let n = family.component(l);
        if n < 2 {
            return invalid(format!("level {l} has component length {n}"));
        }
        le = log_first_bit_step(le, n);
        log_k += ((n - 1) as f64).ln();
        let s = log_k + le;
        if l > 1 {
            if s < prev {
                down += 1;
                up = 0;
            } else if s > prev {
                up += 1;
                down = 0;
            } else {
                up = 0;
                down = 0;
            }
        }
        prev = s;
        if s < rule.log_floor && down >= rule.window {
            return Ok(true);
        }
        if up >= rule.window {
            return Ok(false);
        }
    }
    Err(Error::Undecided {
        epsilon: eps,
        levels: rule.max_levels,
    })
}

/// Largest channel erasure probability for which the loose block bound
/// `k ε_max` vanishes along the Euler family, found by bisection to within `tol`.
/// The returned value is the convergent end of the final bracket.
pub fn threshold_lower_bound(family: &SequenceFamily, tol: f64) -> Result<f64> {
    threshold_with_rule(family, tol, &ConvergenceRule::default())
}

pub fn threshold_with_rule(family: &SequenceFamily, tol: f64, rule: &ConvergenceRule) -> Result<f64> {
    if !matches!(family, SequenceFamily::Euler { .. }) {
        return invalid("thresholds are defined for the Euler family only");
    }
    if !(tol > 0.0 && tol < 0.5) {
        return invalid(format!("tolerance {tol} outside (0, 0.5)"));
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if block_erasure_vanishes(family, mid, rule)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
