//! Successive cancellation, genie-aided SC and Elias decoding.
//!
//! The decoders walk a tree whose root handles the first component code.
//! A node of size `N` with component length `n_d` sees its input as an
//! `(N / n_d) x n_d` array `L[a][b] = input[a * n_d + b]`; column 0 is the
//! parity position of each local SPC codeword. It has `n_d` children, one per
//! column. Child 0 only carries frozen bits, so it is never visited: its
//! re-encoded word is zero. Child `c >= 1` receives
//! `L[a][c] + (±) boxplus(L[a][0], L[a][c+1], …, L[a][n_d-1])`, the sign given by the
//! XOR of the words already returned by children `1..c`. Leaves are the
//! information bits, visited in index order.

mod oracle;
pub mod soft;

pub use oracle::{sc_bit_metric_oracle, BitLikelihood, ChannelProbs};
pub use soft::{boxplus, softplus, HardBit, SoftBit};

use crate::channels::{LlrWord, Ternary, TernaryWord};
use crate::codes::{BitWord, ProductCodeSpec};
use crate::error::{Error, Result};

/// A channel observation handed to a decoder.
#[derive(Clone, Debug, PartialEq)]
pub enum Observation {
    Llr(LlrWord),
    Bec(TernaryWord),
}

impl Observation {
    pub fn len(&self) -> usize {
        match self {
            Observation::Llr(l) => l.len(),
            Observation::Bec(y) => y.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<LlrWord> for Observation {
    fn from(l: LlrWord) -> Self {
        Observation::Llr(l)
    }
}

impl From<TernaryWord> for Observation {
    fn from(y: TernaryWord) -> Self {
        Observation::Bec(y)
    }
}

/// Decoder output: one symbol per information bit.
#[derive(Clone, Debug, PartialEq)]
pub struct ScDecision {
    pub bits: Vec<Ternary>,
    /// Decision LLRs, kept for soft observations only.
    pub llrs: Option<Vec<f64>>,
}

impl ScDecision {
    pub fn has_erasure(&self) -> bool {
        self.bits.iter().any(|b| b.is_erasure())
    }

    /// The decoded message, or `None` if any bit is erased.
    pub fn message(&self) -> Option<BitWord> {
        if self.has_erasure() {
            return None;
        }
        let bits: Vec<u8> = self.bits.iter().map(|&b| (b == Ternary::One) as u8).collect();
        Some(BitWord::from_bits(&bits))
    }

    /// True when every bit is decided and equal to `u`.
    pub fn is_correct(&self, u: &BitWord) -> bool {
        self.bits.len() == u.len()
            && self
                .bits
                .iter()
                .zip(u.iter())
                .all(|(&b, t)| b == Ternary::from_bit(t))
    }

    /// 1-based positions that are erased or differ from `u`.
    pub fn error_positions(&self, u: &BitWord) -> Vec<usize> {
        self.bits
            .iter()
            .zip(u.iter())
            .enumerate()
            .filter(|(_, (&b, t))| b != Ternary::from_bit(*t))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Positions where genie-aided SC decisions are wrong or erased.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenieReport {
    /// 1-based information-bit indices.
    pub first_error_indices: Vec<usize>,
}

impl GenieReport {
    pub fn is_empty(&self) -> bool {
        self.first_error_indices.is_empty()
    }
}

#[derive(Clone, Copy)]
enum Mode<'a> {
    Sc,
    Genie(&'a BitWord),
    Elias,
}

struct Walker<'a, S: SoftBit> {
    dims: &'a [usize],
    mode: Mode<'a>,
    decisions: Vec<S::Hard>,
    metrics: Vec<S>,
    genie_errors: Vec<usize>,
}

/// Per-column suffix combinations `T_c = boxplus(L_0, L_{c+1}, …, L_{n_d-1})`,
/// stored as `t[c * rows + a]`. `T_0` is the message about the frozen child.
pub(crate) fn column_checks<S: SoftBit>(l: &[S], nd: usize) -> Vec<S> {
    let rows = l.len() / nd;
    let mut t = Vec::with_capacity(l.len());
    // Fill back to front, then reverse the column order.
    let mut suffix: Vec<S> = Vec::new();
    for c in (0..nd).rev() {
        for a in 0..rows {
            let l0 = l[a * nd];
            let v = if c + 1 == nd { l0 } else { l0.check(suffix[a]) };
            t.push(v);
        }
        if c >= 1 {
            if c + 1 == nd {
                suffix = (0..rows).map(|a| l[a * nd + c]).collect();
            } else {
                for (a, s) in suffix.iter_mut().enumerate() {
                    *s = l[a * nd + c].check(*s);
                }
            }
        }
    }
    let mut out = Vec::with_capacity(l.len());
    for c in 0..nd {
        let src = (nd - 1 - c) * rows;
        out.extend_from_slice(&t[src..src + rows]);
    }
    out
}

/// Input to child `c >= 1` given the XOR `acc` of earlier children.
#[inline]
pub(crate) fn child_input<S: SoftBit>(l: &[S], t: &[S], acc: &[S::Hard], nd: usize, c: usize) -> Vec<S> {
    let rows = acc.len();
    (0..rows)
        .map(|a| l[a * nd + c].var(t[c * rows + a].flip(acc[a])))
        .collect()
}

/// Input to child `c >= 1` when no decisions are fed back.
fn elias_input<S: SoftBit>(l: &[S], nd: usize, c: usize) -> Vec<S> {
    let rows = l.len() / nd;
    (0..rows)
        .map(|a| {
            let row = &l[a * nd..(a + 1) * nd];
            let mut ext = row[0];
            for (b, &v) in row.iter().enumerate().skip(1) {
                if b != c {
                    ext = ext.check(v);
                }
            }
            row[c].var(ext)
        })
        .collect()
}

impl<'a, S: SoftBit> Walker<'a, S> {
    fn new(dims: &'a [usize], mode: Mode<'a>, k: usize) -> Self {
        Walker {
            dims,
            mode,
            decisions: Vec::with_capacity(k),
            metrics: Vec::with_capacity(k),
            genie_errors: Vec::new(),
        }
    }

    /// Decodes the subtree fed by `l`, returning its re-encoded word.
    fn node(&mut self, depth: usize, l: &[S]) -> Vec<S::Hard> {
        if depth == self.dims.len() {
            return vec![self.leaf(l[0])];
        }
        let nd = self.dims[depth];
        let rows = l.len() / nd;
        let mut out = vec![S::Hard::zero(); l.len()];
        if let Mode::Elias = self.mode {
            for c in 1..nd {
                let child = elias_input(l, nd, c);
                self.node(depth + 1, &child);
            }
            return out;
        }
        let t = column_checks(l, nd);
        let mut acc = vec![S::Hard::zero(); rows];
        for c in 1..nd {
            let child = child_input(l, &t, &acc, nd, c);
            let v = self.node(depth + 1, &child);
            for a in 0..rows {
                out[a * nd + c] = v[a];
                acc[a] = acc[a].xor(v[a]);
            }
        }
        for a in 0..rows {
            out[a * nd] = acc[a];
        }
        out
    }

    fn leaf(&mut self, metric: S) -> S::Hard {
        let index = self.decisions.len();
        let decision = metric.decide();
        self.decisions.push(decision);
        self.metrics.push(metric);
        match self.mode {
            Mode::Genie(u) => {
                let truth = S::Hard::from_bit(u.get(index));
                if decision != truth {
                    self.genie_errors.push(index + 1);
                }
                truth
            }
            _ => decision,
        }
    }
}

fn check_len(spec: &ProductCodeSpec, len: usize) -> Result<()> {
    if len != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            actual: len,
        });
    }
    Ok(())
}

fn run<'a, S: SoftBit>(spec: &'a ProductCodeSpec, input: &[S], mode: Mode<'a>) -> Walker<'a, S> {
    let mut w = Walker::new(spec.dims(), mode, spec.k());
    w.node(0, input);
    debug_assert_eq!(w.decisions.len(), spec.k());
    w
}

fn decision_from<S: SoftBit>(w: Walker<'_, S>, keep: impl FnOnce(Vec<S>) -> Option<Vec<f64>>) -> ScDecision {
    ScDecision {
        bits: w.decisions.iter().map(|d| d.to_ternary()).collect(),
        llrs: keep(w.metrics),
    }
}

/// SC decoding of a soft observation.
pub fn sc_decode_llr(spec: &ProductCodeSpec, llr: &LlrWord) -> Result<ScDecision> {
    check_len(spec, llr.len())?;
    Ok(decision_from(run(spec, &llr.0, Mode::Sc), Some))
}

/// SC decoding of a BEC observation; ties are reported as erasures.
pub fn sc_decode_bec(spec: &ProductCodeSpec, y: &TernaryWord) -> Result<ScDecision> {
    check_len(spec, y.len())?;
    Ok(decision_from(run(spec, &y.0, Mode::Sc), |_| None))
}

pub fn sc_decode(spec: &ProductCodeSpec, obs: &Observation) -> Result<ScDecision> {
    match obs {
        Observation::Llr(l) => sc_decode_llr(spec, l),
        Observation::Bec(y) => sc_decode_bec(spec, y),
    }
}

/// Elias' one-sweep decoder: every bit is decided without using other decisions.
pub fn elias_decode(spec: &ProductCodeSpec, obs: &Observation) -> Result<ScDecision> {
    check_len(spec, obs.len())?;
    Ok(match obs {
        Observation::Llr(l) => decision_from(run(spec, &l.0, Mode::Elias), Some),
        Observation::Bec(y) => decision_from(run(spec, &y.0, Mode::Elias), |_| None),
    })
}

/// SC decoding where each bit sees the true earlier bits.
pub fn genie_sc(spec: &ProductCodeSpec, obs: &Observation, u_true: &BitWord) -> Result<GenieReport> {
    check_len(spec, obs.len())?;
    if u_true.len() != spec.k() {
        return Err(Error::LengthMismatch {
            expected: spec.k(),
            actual: u_true.len(),
        });
    }
    let errors = match obs {
        Observation::Llr(l) => run(spec, &l.0, Mode::Genie(u_true)).genie_errors,
        Observation::Bec(y) => run(spec, &y.0, Mode::Genie(u_true)).genie_errors,
    };
    Ok(GenieReport {
        first_error_indices: errors,
    })
}

/// Genie-aided decision LLRs for the all-zero message (used by density evolution tests).
pub fn genie_llrs(spec: &ProductCodeSpec, llr: &LlrWord, u_true: &BitWord) -> Result<Vec<f64>> {
    check_len(spec, llr.len())?;
    Ok(run(spec, &llr.0, Mode::Genie(u_true)).metrics)
}
