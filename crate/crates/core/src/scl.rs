//! Successive cancellation list decoding, CRC-aided selection and exact ML oracles.
//!
//! Path metrics are negative log-likelihoods: every decision on a bit whose
//! decision LLR is `λ` adds `ln(1 + e^{-(1-2b)λ})`. Frozen bits are charged the
//! same way with `b = 0`; a subtree whose inputs are all frozen is charged in
//! one step as `Σ_a ln(1 + e^{-λ_a})` over its input LLRs. The metric of a
//! complete path is then `-ln P(x | y)` for the channel LLRs as given, so a
//! list that is never pruned returns the ML codeword.
//!
//! Pruning keeps the `L` best candidates by metric; equal metrics are ordered
//! by message prefix, lexicographically (0 before 1).

use std::rc::Rc;

use crate::channels::{LlrWord, Ternary, TernaryWord};
use crate::codes::{BitWord, ProductCodeSpec};
use crate::crc::CrcSpec;
use crate::error::{invalid, Error, Result};
use crate::sc::soft::softplus;
use crate::sc::{child_input, column_checks};

/// How the final list is reduced to one message.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    MostLikely,
    CrcThenMostLikely(CrcSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SclConfig {
    pub list_size: usize,
    pub selection: Selection,
}

impl SclConfig {
    pub fn new(list_size: usize) -> Result<Self> {
        if list_size == 0 {
            return invalid("list size must be at least 1");
        }
        Ok(SclConfig {
            list_size,
            selection: Selection::MostLikely,
        })
    }

    pub fn with_crc(list_size: usize, crc: CrcSpec) -> Result<Self> {
        Ok(SclConfig {
            selection: Selection::CrcThenMostLikely(crc),
            ..Self::new(list_size)?
        })
    }

    pub fn crc(&self) -> Option<CrcSpec> {
        match self.selection {
            Selection::MostLikely => None,
            Selection::CrcThenMostLikely(c) => Some(c),
        }
    }
}

/// A finished candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct SclPath {
    pub message: BitWord,
    pub metric: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SclOutput {
    /// The selected inner message (CRC bits included when present).
    pub message: BitWord,
    pub metric: f64,
    /// Set when CRC selection was requested and no candidate passed.
    pub crc_failed: bool,
    /// Surviving candidates, best first.
    pub list: Vec<SclPath>,
}

struct Step {
    parent: Vec<usize>,
    bit: Vec<bool>,
}

struct ListDecoder<'a> {
    dims: &'a [usize],
    cap: usize,
    metrics: Vec<f64>,
    ranks: Vec<usize>,
    history: Vec<Step>,
}

type Words = Vec<Rc<Vec<bool>>>;

fn reindex<T: Clone>(v: &[T], origin: &[usize]) -> Vec<T> {
    origin.iter().map(|&q| v[q].clone()).collect()
}

impl ListDecoder<'_> {
    fn node(&mut self, depth: usize, inputs: Vec<Rc<Vec<f64>>>) -> (Words, Vec<usize>) {
        if depth == self.dims.len() {
            return self.leaf(&inputs);
        }
        let nd = self.dims[depth];
        let size = inputs[0].len();
        let rows = size / nd;
        let mut checks: Vec<Rc<Vec<f64>>> =
            inputs.iter().map(|l| Rc::new(column_checks(l, nd))).collect();
        for (m, t) in self.metrics.iter_mut().zip(&checks) {
            *m += t[..rows].iter().map(|&v| softplus(-v)).sum::<f64>();
        }
        let mut llrs = inputs;
        let mut acc: Vec<Rc<Vec<bool>>> = vec![Rc::new(vec![false; rows]); llrs.len()];
        let mut out: Words = vec![Rc::new(vec![false; size]); llrs.len()];
        let mut origin: Vec<usize> = (0..llrs.len()).collect();
        for c in 1..nd {
            let child: Vec<Rc<Vec<f64>>> = (0..llrs.len())
                .map(|p| Rc::new(child_input(&llrs[p], &checks[p], &acc[p], nd, c)))
                .collect();
            let (v, o) = self.node(depth + 1, child);
            llrs = reindex(&llrs, &o);
            checks = reindex(&checks, &o);
            acc = reindex(&acc, &o);
            out = reindex(&out, &o);
            origin = reindex(&origin, &o);
            for p in 0..v.len() {
                let acc_p = Rc::make_mut(&mut acc[p]);
                let out_p = Rc::make_mut(&mut out[p]);
                for a in 0..rows {
                    out_p[a * nd + c] = v[p][a];
                    acc_p[a] ^= v[p][a];
                }
            }
        }
        for p in 0..out.len() {
            let out_p = Rc::make_mut(&mut out[p]);
            for a in 0..rows {
                out_p[a * nd] = acc[p][a];
            }
        }
        (out, origin)
    }

    fn leaf(&mut self, inputs: &[Rc<Vec<f64>>]) -> (Words, Vec<usize>) {
        let mut cands: Vec<(f64, usize, usize, bool)> = Vec::with_capacity(2 * inputs.len());
        for (p, l) in inputs.iter().enumerate() {
            let lambda = l[0];
            let m = self.metrics[p];
            cands.push((m + softplus(-lambda), 2 * self.ranks[p], p, false));
            cands.push((m + softplus(lambda), 2 * self.ranks[p] + 1, p, true));
        }
        cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        cands.truncate(self.cap);
        // New lexicographic ranks: order survivors by (parent rank, bit).
        let mut order: Vec<usize> = (0..cands.len()).collect();
        order.sort_by_key(|&i| cands[i].1);
        let mut ranks = vec![0; cands.len()];
        for (r, &i) in order.iter().enumerate() {
            ranks[i] = r;
        }
        self.ranks = ranks;
        self.metrics = cands.iter().map(|c| c.0).collect();
        let parent: Vec<usize> = cands.iter().map(|c| c.2).collect();
        let bit: Vec<bool> = cands.iter().map(|c| c.3).collect();
        let words = bit.iter().map(|&b| Rc::new(vec![b])).collect();
        self.history.push(Step {
            parent: parent.clone(),
            bit,
        });
        (words, parent)
    }

    fn messages(&self) -> Vec<BitWord> {
        let k = self.history.len();
        let count = self.metrics.len();
        let mut msgs = vec![BitWord::zeros(k); count];
        for (p, msg) in msgs.iter_mut().enumerate() {
            let mut cur = p;
            for (i, step) in self.history.iter().enumerate().rev() {
                msg.set(i, step.bit[cur]);
                cur = step.parent[cur];
            }
        }
        msgs
    }
}

fn check_llr(spec: &ProductCodeSpec, llr: &LlrWord) -> Result<()> {
    if llr.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            actual: llr.len(),
        });
    }
    if llr.0.iter().any(|v| !v.is_finite()) {
        return invalid("LLRs must be finite");
    }
    Ok(())
}

/// Runs the list search and returns every surviving path, best first.
pub fn scl_list(spec: &ProductCodeSpec, llr: &LlrWord, list_size: usize) -> Result<Vec<SclPath>> {
    check_llr(spec, llr)?;
    if list_size == 0 {
        return invalid("list size must be at least 1");
    }
    let mut dec = ListDecoder {
        dims: spec.dims(),
        cap: list_size,
        metrics: vec![0.0],
        ranks: vec![0],
        history: Vec::with_capacity(spec.k()),
    };
    dec.node(0, vec![Rc::new(llr.0.clone())]);
    let msgs = dec.messages();
    let mut order: Vec<usize> = (0..msgs.len()).collect();
    order.sort_by(|&a, &b| dec.metrics[a].total_cmp(&dec.metrics[b]).then(dec.ranks[a].cmp(&dec.ranks[b])));
    Ok(order
        .into_iter()
        .map(|i| SclPath {
            message: msgs[i].clone(),
            metric: dec.metrics[i],
        })
        .collect())
}

fn select(list: Vec<SclPath>, cfg: &SclConfig) -> Result<SclOutput> {
    let (chosen, crc_failed) = match cfg.selection {
        Selection::MostLikely => (0, false),
        Selection::CrcThenMostLikely(crc) => {
            let mut hit = None;
            for (i, p) in list.iter().enumerate() {
                if crc.check(&p.message)? {
                    hit = Some(i);
                    break;
                }
            }
            match hit {
                Some(i) => (i, false),
                None => (0, true),
            }
        }
    };
    Ok(SclOutput {
        message: list[chosen].message.clone(),
        metric: list[chosen].metric,
        crc_failed,
        list,
    })
}

/// SCL decoding with the configured final selection.
pub fn scl_decode(spec: &ProductCodeSpec, llr: &LlrWord, cfg: &SclConfig) -> Result<SclOutput> {
    select(scl_list(spec, llr, cfg.list_size)?, cfg)
}

/// `-ln P(x | y)` computed directly from the channel LLRs.
pub fn codeword_metric(x: &BitWord, llr: &LlrWord) -> f64 {
    x.iter()
        .zip(&llr.0)
        .map(|(b, &l)| softplus(if b { l } else { -l }))
        .sum()
}

/// SCL decoding where the transmitted message is added to the final list if
/// it was pruned. Its BLER lower-bounds ML decoding with the same metric.
pub fn scl_decode_genie(
    spec: &ProductCodeSpec,
    llr: &LlrWord,
    cfg: &SclConfig,
    u_true: &BitWord,
) -> Result<SclOutput> {
    let mut list = scl_list(spec, llr, cfg.list_size)?;
    if !list.iter().any(|p| &p.message == u_true) {
        let metric = codeword_metric(&spec.encode(u_true)?, llr);
        let pos = list.partition_point(|p| p.metric <= metric);
        list.insert(
            pos,
            SclPath {
                message: u_true.clone(),
                metric,
            },
        );
    }
    select(list, cfg)
}

const MAX_EXHAUSTIVE_K: usize = 20;

/// Exhaustive ML decoding: maximizes `Σ (1 - 2x_j) L_j / 2` over all codewords.
/// Ties go to the lexicographically smallest message.
pub fn ml_exhaustive(spec: &ProductCodeSpec, llr: &LlrWord) -> Result<BitWord> {
    check_llr(spec, llr)?;
    let k = spec.k();
    if k > MAX_EXHAUSTIVE_K {
        return Err(Error::SizeLimit {
            what: "exhaustive ML dimension",
            limit: MAX_EXHAUSTIVE_K,
            actual: k,
        });
    }
    let g = spec.generator_matrix()?;
    let score = |x: &BitWord| -> f64 {
        x.iter()
            .zip(&llr.0)
            .map(|(b, &l)| if b { -l } else { l })
            .sum::<f64>()
            / 2.0
    };
    let mut u = BitWord::zeros(k);
    let mut x = BitWord::zeros(spec.n());
    let mut best = (score(&x), u.clone());
    for i in 1u64..(1u64 << k) {
        let row = i.trailing_zeros() as usize;
        u.set(row, !u.get(row));
        x.xor_assign(g.row(row));
        let s = score(&x);
        if s > best.0 || (s == best.0 && u.to_bits() < best.1.to_bits()) {
            best = (s, u.clone());
        }
    }
    Ok(best.1)
}

/// Outcome of ML decoding over the BEC.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BecMl {
    Unique(BitWord),
    Ambiguous,
}

/// Solves `u G = y` on the unerased positions by Gaussian elimination.
pub fn bec_ml_decode(spec: &ProductCodeSpec, y: &TernaryWord) -> Result<BecMl> {
    if y.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            actual: y.len(),
        });
    }
    let k = spec.k();
    let g = spec.generator_matrix()?;
    // One equation per unerased position: column j of G, augmented with y_j.
    let mut eqs: Vec<BitWord> = Vec::new();
    for (j, &t) in y.0.iter().enumerate() {
        if t == Ternary::Erasure {
            continue;
        }
        let mut row = BitWord::zeros(k + 1);
        for i in 0..k {
            if g.get(i, j) {
                row.set(i, true);
            }
        }
        row.set(k, t == Ternary::One);
        eqs.push(row);
    }
    let mut rank = 0;
    let mut pivots = Vec::with_capacity(k);
    for col in 0..k {
        let Some(p) = (rank..eqs.len()).find(|&r| eqs[r].get(col)) else {
            continue;
        };
        eqs.swap(rank, p);
        let pivot = eqs[rank].clone();
        for (r, row) in eqs.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if eqs[rank..].iter().any(|r| r.get(k)) {
        return Err(Error::Internal("inconsistent BEC observation".into()));
    }
    if rank < k {
        return Ok(BecMl::Ambiguous);
    }
    let mut u = BitWord::zeros(k);
    for (r, &col) in pivots.iter().enumerate() {
        u.set(col, eqs[r].get(k));
    }
    Ok(BecMl::Unique(u))
}
