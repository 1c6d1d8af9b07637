//! Exact weight enumerators of SPC product codes, ensemble averages and union bounds.
//!
//! A product of a code `C1` with generator `G1` and an `(ν, ν-1)` SPC code has
//! `A(z) = 2^{-k1} Σ_v P_v(z)^ν` where `P_v(z) = Σ_u (-1)^{u·v} z^{w(u G1)}`.
//! Tracking the input weight of the systematic encoder gives
//! `A(x, z) = 2^{-k1} Σ_v P_v(x, z)^{ν-1} P_v(1, z)`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::codes::{component_generator, BitMatrix, BitWord, ProductCodeSpec};
use crate::crc::CrcSpec;
use crate::error::{invalid, Error, Result};

/// Largest `k1` accepted by the character-sum evaluation.
pub const MAX_CHARACTER_DIM: usize = 24;
/// Largest dimension accepted by exhaustive enumeration.
pub const MAX_BRUTE_FORCE_DIM: usize = 20;

/// `A_0, …, A_n` of an `(n, k)` code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    k: usize,
    coeffs: Vec<BigUint>,
}

impl WeightEnumerator {
    pub fn new(k: usize, coeffs: Vec<BigUint>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("an enumerator needs at least A_0");
        }
        let total: BigUint = coeffs.iter().sum();
        if total != BigUint::one() << k {
            return invalid(format!("coefficients sum to {total}, not 2^{k}"));
        }
        Ok(WeightEnumerator { k, coeffs })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// `A_w`, zero outside `0..=n`.
    pub fn get(&self, w: usize) -> BigUint {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    /// Smallest nonzero weight, if the code has a nonzero codeword.
    pub fn min_distance(&self) -> Option<usize> {
        (1..self.coeffs.len()).find(|&w| !self.coeffs[w].is_zero())
    }

    /// Enumerator of the whole space `F_2^n`.
    pub fn full_space(n: usize) -> Self {
        WeightEnumerator {
            k: n,
            coeffs: (0..=n).map(|w| binomial(BigUint::from(n), BigUint::from(w))).collect(),
        }
    }

    pub fn to_json_repr(&self) -> WefJson {
        WefJson {
            n: self.n(),
            k: self.k,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(w, a)| [w.to_string(), a.to_string()])
                .collect(),
        }
    }

    pub fn from_json_repr(repr: &WefJson) -> Result<Self> {
        let mut coeffs = vec![BigUint::zero(); repr.n + 1];
        for [w, a] in &repr.coeffs {
            let w: usize = w
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad weight {w:?}")))?;
            if w > repr.n {
                return invalid(format!("weight {w} exceeds length {}", repr.n));
            }
            coeffs[w] = a
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad coefficient {a:?}")))?;
        }
        Self::new(repr.k, coeffs)
    }
}

/// JSON form `{n, k, coeffs: [["w", "A_w"], …]}` listing nonzero terms as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WefJson {
    pub n: usize,
    pub k: usize,
    pub coeffs: Vec<[String; 2]>,
}

/// `A_{i,w}`: codewords of weight `w` produced by inputs of weight `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iowef {
    k: usize,
    n: usize,
    /// Row-major `(k+1) x (n+1)`.
    coeffs: Vec<BigUint>,
}

impl Iowef {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, w: usize) -> BigUint {
        if i > self.k || w > self.n {
            return BigUint::zero();
        }
        self.coeffs[i * (self.n + 1) + w].clone()
    }

    /// Marginal over input weights.
    pub fn wef(&self) -> WeightEnumerator {
        let coeffs = (0..=self.n)
            .map(|w| (0..=self.k).map(|i| self.get(i, w)).sum())
            .collect();
        WeightEnumerator { k: self.k, coeffs }
    }

    pub fn to_json_repr(&self) -> IowefJson {
        let mut coeffs = Vec::new();
        for i in 0..=self.k {
            for w in 0..=self.n {
                let a = self.get(i, w);
                if !a.is_zero() {
                    coeffs.push([i.to_string(), w.to_string(), a.to_string()]);
                }
            }
        }
        IowefJson {
            n: self.n,
            k: self.k,
            coeffs,
        }
    }
}

/// JSON form `{n, k, coeffs: [["i", "w", "A_iw"], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IowefJson {
    pub n: usize,
    pub k: usize,
    pub coeffs: Vec<[String; 3]>,
}

/// `Ā_w` of a concatenated ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageEnumerator {
    pub coeffs: Vec<BigRational>,
}

impl AverageEnumerator {
    pub fn get(&self, w: usize) -> BigRational {
        self.coeffs.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
    }
}

/// Weights `w(uG)` and `w(u)` for every message `u`, indexed by `u` as an integer
/// whose bit `r` selects row `r`.
fn codeword_weights(g: &BitMatrix) -> Vec<u32> {
    let k = g.rows();
    let mut out = vec![0u32; 1 << k];
    let mut x = BitWord::zeros(g.cols());
    let mut u = 0usize;
    for step in 1usize..(1 << k) {
        let r = step.trailing_zeros() as usize;
        u ^= 1 << r;
        x.xor_assign(g.row(r));
        out[u] = x.weight() as u32;
    }
    out
}

fn walsh_hadamard(f: &mut [i64]) {
    let mut h = 1;
    while h < f.len() {
        for chunk in f.chunks_mut(2 * h) {
            let (a, b) = chunk.split_at_mut(h);
            for (x, y) in a.iter_mut().zip(b.iter_mut()) {
                let (s, d) = (*x + *y, *x - *y);
                *x = s;
                *y = d;
            }
        }
        h *= 2;
    }
}

/// Sparse bivariate polynomial: `(i, w, coefficient)` terms.
type Sparse = Vec<(usize, usize, i64)>;

/// The distinct polynomials `P_v(x, z)` over all `v`, with multiplicities.
/// Without input tracking every term has `i = 0`.
fn distinct_character_sums(g: &BitMatrix, track_input: bool) -> Vec<(Sparse, u64)> {
    let k = g.rows();
    let n = g.cols();
    let size = 1usize << k;
    let cw = codeword_weights(g);
    let key = |u: usize| {
        let i = if track_input { u.count_ones() as usize } else { 0 };
        i * (n + 1) + cw[u] as usize
    };
    let mut classes: Vec<usize> = (0..size).map(key).collect();
    classes.sort_unstable();
    classes.dedup();

    // Fingerprint every v by the transforms of all class indicators.
    let mut h1 = vec![0u64; size];
    let mut h2 = vec![0u64; size];
    let mut f = vec![0i64; size];
    for &c in &classes {
        for (u, slot) in f.iter_mut().enumerate() {
            *slot = (key(u) == c) as i64;
        }
        walsh_hadamard(&mut f);
        for v in 0..size {
            let x = f[v] as u64;
            h1[v] = h1[v].wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(x);
            h2[v] = (h2[v] ^ x).wrapping_mul(0xC2B2_AE3D_27D4_EB4F).rotate_left(29);
        }
    }
    let mut groups: HashMap<(u64, u64), (usize, u64)> = HashMap::new();
    for v in 0..size {
        groups.entry((h1[v], h2[v])).or_insert((v, 0)).1 += 1;
    }
    let mut reps: Vec<(usize, u64)> = groups.into_values().collect();
    reps.sort_unstable();

    reps.into_iter()
        .map(|(v, count)| {
            let mut dense: HashMap<usize, i64> = HashMap::new();
            for u in 0..size {
                let s = if (u & v).count_ones() % 2 == 0 { 1 } else { -1 };
                *dense.entry(key(u)).or_default() += s;
            }
            let mut terms: Sparse = dense
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(key, c)| (key / (n + 1), key % (n + 1), c))
                .collect();
            terms.sort_unstable();
            (terms, count)
        })
        .collect()
}

trait Coeff: Clone + Zero + One + Signed + From<i64> + std::ops::AddAssign {}
impl Coeff for i128 {}
impl Coeff for BigInt {}

/// Dense bivariate polynomial with `rows` input-weight rows and `cols` codeword-weight columns.
#[derive(Clone)]
struct Dense<T> {
    rows: usize,
    cols: usize,
    c: Vec<T>,
}

impl<T: Coeff> Dense<T> {
    fn from_sparse(p: &Sparse, rows: usize, cols: usize) -> Self {
        let mut c = vec![T::zero(); rows * cols];
        for &(i, w, a) in p {
            c[i * cols + w] += T::from(a);
        }
        Dense { rows, cols, c }
    }

    fn mul_sparse(&self, p: &Sparse, p_rows: usize, p_cols: usize) -> Self {
        let rows = self.rows + p_rows - 1;
        let cols = self.cols + p_cols - 1;
        let mut c = vec![T::zero(); rows * cols];
        for i in 0..self.rows {
            for w in 0..self.cols {
                let a = &self.c[i * self.cols + w];
                if a.is_zero() {
                    continue;
                }
                for &(pi, pw, b) in p {
                    c[(i + pi) * cols + w + pw] += a.clone() * T::from(b);
                }
            }
        }
        Dense { rows, cols, c }
    }
}

fn collapse_input(p: &Sparse) -> Sparse {
    let mut m: HashMap<usize, i64> = HashMap::new();
    for &(_, w, a) in p {
        *m.entry(w).or_default() += a;
    }
    let mut out: Sparse = m.into_iter().filter(|(_, a)| *a != 0).map(|(w, a)| (0, w, a)).collect();
    out.sort_unstable();
    out
}

/// `Σ_v count_v · P_v^{ν-1} · Q_v`, divided exactly by `2^{k1}`.
fn sum_of_powers<T: Coeff + Into<BigInt>>(
    sums: &[(Sparse, u64)],
    k1: usize,
    n1: usize,
    nu: usize,
    track_input: bool,
) -> Result<Dense<BigUint>> {
    let p_rows = if track_input { k1 + 1 } else { 1 };
    let p_cols = n1 + 1;
    let mut total: Option<Dense<T>> = None;
    for (p, count) in sums {
        let last = if track_input { collapse_input(p) } else { p.clone() };
        let mut acc = Dense::<T>::from_sparse(p, p_rows, p_cols);
        if nu == 1 {
            acc = Dense::from_sparse(&last, 1, p_cols);
        } else {
            for _ in 2..nu {
                acc = acc.mul_sparse(p, p_rows, p_cols);
            }
            acc = acc.mul_sparse(&last, 1, p_cols);
        }
        let weight = T::from(*count as i64);
        match &mut total {
            None => {
                acc.c.iter_mut().for_each(|a| *a = a.clone() * weight.clone());
                total = Some(acc);
            }
            Some(t) => {
                for (x, a) in t.c.iter_mut().zip(acc.c) {
                    *x += a * weight.clone();
                }
            }
        }
    }
    let total = total.ok_or_else(|| Error::Internal("no character sums".into()))?;
    let divisor = BigInt::one() << k1;
    let c = total
        .c
        .into_iter()
        .map(|a| {
            let a: BigInt = a.into();
            let (q, r) = (&a / &divisor, &a % &divisor);
            if !r.is_zero() || q.is_negative() {
                return Err(Error::Internal(format!("coefficient {a} not a non-negative multiple of 2^{k1}")));
            }
            Ok(q.to_biguint().expect("non-negative"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Dense {
        rows: total.rows,
        cols: total.cols,
        c,
    })
}

fn product_enumerator(g1: &BitMatrix, nu: usize, track_input: bool) -> Result<Dense<BigUint>> {
    let k1 = g1.rows();
    if k1 > MAX_CHARACTER_DIM {
        return Err(Error::SizeLimit {
            what: "component dimension k1",
            limit: MAX_CHARACTER_DIM,
            actual: k1,
        });
    }
    if nu == 0 {
        return invalid("ν must be at least 1");
    }
    let sums = distinct_character_sums(g1, track_input);
    // |coefficients| stay below 2^{k1 (ν + 1)}
    if k1 * (nu + 1) <= 120 {
        sum_of_powers::<i128>(&sums, k1, g1.cols(), nu, track_input)
    } else {
        sum_of_powers::<BigInt>(&sums, k1, g1.cols(), nu, track_input)
    }
}

/// WEF of the product of the code generated by `g1` with an `(ν, ν-1)` SPC code.
/// For `ν = 1` the second factor is the trivial length-1 code with no information.
///
/// ```
/// use spcpc::codes::component_generator;
/// use spcpc::enumerators::wef_from_component;
/// let a = wef_from_component(&component_generator(3).unwrap(), 3).unwrap();
/// let coeffs: Vec<u32> = a.coeffs().iter().map(|c| c.try_into().unwrap()).collect();
/// assert_eq!(coeffs, vec![1, 0, 0, 0, 9, 0, 6, 0, 0, 0]);
/// ```
pub fn wef_from_component(g1: &BitMatrix, nu: usize) -> Result<WeightEnumerator> {
    let d = product_enumerator(g1, nu, false)?;
    WeightEnumerator::new(g1.rows() * (nu - 1), d.c)
}

/// Whether every row of `g` has a unit column of its own.
pub fn is_systematic(g: &BitMatrix) -> bool {
    let cols: Vec<BitWord> = (0..g.cols()).map(|c| g.column(c)).collect();
    (0..g.rows()).all(|r| cols.iter().any(|c| c.weight() == 1 && c.get(r)))
}

/// IOWEF of the systematic product encoder `u_1..u_{ν-1} ↦ (Σ u_j G1, u_1 G1, …, u_{ν-1} G1)`.
pub fn iowef_from_component(g1: &BitMatrix, nu: usize) -> Result<Iowef> {
    if !is_systematic(g1) {
        return invalid("the component generator must be systematic");
    }
    if nu < 2 {
        return invalid("ν must be at least 2 for an input-output enumerator");
    }
    let d = product_enumerator(g1, nu, true)?;
    let k = g1.rows() * (nu - 1);
    let n = g1.cols() * nu;
    debug_assert_eq!(d.cols, n + 1);
    // Rows beyond k carry only zeros.
    let c = d.c[..(k + 1) * (n + 1)].to_vec();
    if d.c[(k + 1) * (n + 1)..].iter().any(|a| !a.is_zero()) {
        return Err(Error::Internal("input weight exceeds dimension".into()));
    }
    Ok(Iowef { k, n, coeffs: c })
}

/// `(G_{dims[1]} ⊗ …, n_{dims[0]})`: the folding used for a multi-dimensional product.
fn fold(spec: &ProductCodeSpec) -> Result<(BitMatrix, usize)> {
    let dims = spec.dims();
    let mut g1 = BitMatrix::identity(1);
    for &nl in &dims[1..] {
        g1 = g1.kron(&component_generator(nl)?);
    }
    Ok((g1, dims[0]))
}

/// WEF of an SPC product code.
pub fn product_wef(spec: &ProductCodeSpec) -> Result<WeightEnumerator> {
    let (g1, nu) = fold(spec)?;
    wef_from_component(&g1, nu)
}

/// IOWEF of an SPC product code under the encoder `u ↦ u (G_1 ⊗ … ⊗ G_m)`.
pub fn product_iowef(spec: &ProductCodeSpec) -> Result<Iowef> {
    let (g1, nu) = fold(spec)?;
    iowef_from_component(&g1, nu)
}

fn brute_force_guard(g: &BitMatrix) -> Result<()> {
    if g.rows() > MAX_BRUTE_FORCE_DIM {
        return Err(Error::SizeLimit {
            what: "code dimension for exhaustive enumeration",
            limit: MAX_BRUTE_FORCE_DIM,
            actual: g.rows(),
        });
    }
    Ok(())
}

/// WEF by listing all `2^k` codewords.
pub fn wef_brute_force(g: &BitMatrix) -> Result<WeightEnumerator> {
    brute_force_guard(g)?;
    let mut counts = vec![0u64; g.cols() + 1];
    for w in codeword_weights(g) {
        counts[w as usize] += 1;
    }
    WeightEnumerator::new(g.rows(), counts.into_iter().map(BigUint::from).collect())
}

/// IOWEF of `u ↦ uG` by listing all `2^k` messages.
pub fn iowef_brute_force(g: &BitMatrix) -> Result<Iowef> {
    brute_force_guard(g)?;
    let (k, n) = (g.rows(), g.cols());
    let mut counts = vec![0u64; (k + 1) * (n + 1)];
    for (u, w) in codeword_weights(g).into_iter().enumerate() {
        counts[u.count_ones() as usize * (n + 1) + w as usize] += 1;
    }
    Ok(Iowef {
        k,
        n,
        coeffs: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// MacWilliams transform: WEF of the code whose dual has enumerator `dual`.
pub fn macwilliams(dual: &WeightEnumerator) -> Result<WeightEnumerator> {
    let n = dual.n();
    // (1+z)^{n-j} (1-z)^j expanded with exact integers
    let mut acc = vec![BigInt::zero(); n + 1];
    for (j, b) in dual.coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let mut poly = vec![BigInt::zero(); n + 1];
        for a in 0..=(n - j) {
            for c in 0..=j {
                let term = binomial(BigInt::from(n - j), BigInt::from(a)) * binomial(BigInt::from(j), BigInt::from(c));
                if c % 2 == 0 {
                    poly[a + c] += term;
                } else {
                    poly[a + c] -= term;
                }
            }
        }
        let b = BigInt::from(b.clone());
        for (x, p) in acc.iter_mut().zip(poly) {
            *x += &b * p;
        }
    }
    let divisor = BigInt::one() << dual.k();
    let coeffs = acc
        .into_iter()
        .map(|a| {
            if !(&a % &divisor).is_zero() || a.is_negative() {
                return Err(Error::Internal("MacWilliams transform is not integral".into()));
            }
            Ok((a / &divisor).to_biguint().expect("non-negative"))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightEnumerator::new(n - dual.k(), coeffs)
}

/// WEF of the `(k_o + r, k_o)` CRC code, through its `2^r`-word dual.
pub fn crc_wef(crc: &CrcSpec, k_o: usize) -> Result<WeightEnumerator> {
    let h = crc.parity_check_matrix(k_o + crc.degree());
    if h.rank() != crc.degree() {
        return Err(Error::Internal("CRC parity checks are dependent".into()));
    }
    macwilliams(&wef_brute_force(&h)?)
}

/// Average enumerator of the ensemble formed by an outer code, a uniform
/// interleaver and an inner encoder: `Ā_w = Σ_j A^o_j A^{IO}_{j,w} / C(n_o, j)`.
pub fn ensemble_average(outer: &WeightEnumerator, inner: &Iowef) -> Result<AverageEnumerator> {
    if outer.n() != inner.k() {
        return Err(Error::LengthMismatch {
            expected: inner.k(),
            actual: outer.n(),
        });
    }
    let n_o = outer.n();
    let weights: Vec<BigRational> = (0..=n_o)
        .map(|j| {
            BigRational::new(
                BigInt::from(outer.get(j)),
                binomial(BigInt::from(n_o), BigInt::from(j)),
            )
        })
        .collect();
    let coeffs = (0..=inner.n())
        .map(|w| {
            weights
                .iter()
                .enumerate()
                .filter(|(_, f)| !f.is_zero())
                .map(|(j, f)| f * BigRational::from_integer(BigInt::from(inner.get(j, w))))
                .fold(BigRational::zero(), |a, b| a + b)
        })
        .collect();
    Ok(AverageEnumerator { coeffs })
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    statrs::function::factorial::ln_binomial(n as u64, k as u64)
}

/// Union bound on ML block erasure probability over the BEC:
/// `Σ_e C(n,e) ε^e (1-ε)^{n-e} min{1, Σ_{0<w≤e} A_w C(n-w, e-w) / C(n, e)}`.
pub fn bec_union_bound(wef: &[f64], eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return invalid(format!("erasure probability {eps} outside [0, 1]"));
    }
    if wef.is_empty() {
        return invalid("empty enumerator");
    }
    let n = wef.len() - 1;
    let mut total = 0.0;
    for e in 1..=n {
        let ln_p = if eps == 0.0 {
            break;
        } else if eps == 1.0 {
            if e < n {
                continue;
            }
            0.0
        } else {
            ln_binomial(n, e) + e as f64 * eps.ln() + (n - e) as f64 * (-eps).ln_1p()
        };
        let ratio: f64 = (1..=e)
            .filter(|&w| wef[w] > 0.0)
            .map(|w| wef[w] * (ln_binomial(n - w, e - w) - ln_binomial(n, e)).exp())
            .sum();
        total += ln_p.exp() * ratio.min(1.0);
    }
    Ok(total.min(1.0))
}

/// `Σ_{w>0} A_w Q(√(2 w R 10^{Eb/N0/10}))` over the B-AWGN channel.
pub fn awgn_union_bound(wef: &[f64], rate: f64, ebn0_db: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return invalid(format!("code rate must lie in (0, 1], got {rate}"));
    }
    let snr = 10f64.powf(ebn0_db / 10.0);
    Ok(wef
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, a)| **a > 0.0)
        .map(|(w, a)| a * q_function((2.0 * w as f64 * rate * snr).sqrt()))
        .sum())
}

/// Gaussian tail `P(Z > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// Floating-point view of exact coefficients.
pub fn to_f64(coeffs: &[BigUint]) -> Vec<f64> {
    coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_u64(w: &WeightEnumerator) -> Vec<u64> {
        w.coeffs().iter().map(|c| c.to_u64().unwrap()).collect()
    }

    #[test]
    fn wht_inverts_up_to_scale() {
        let mut f = vec![3, -1, 4, 1, -5, 9, 2, 6];
        let orig = f.clone();
        walsh_hadamard(&mut f);
        walsh_hadamard(&mut f);
        assert_eq!(f, orig.iter().map(|x| x * 8).collect::<Vec<_>>());
    }

    #[test]
    fn small_examples() {
        let trivial = BitMatrix::identity(1);
        assert_eq!(as_u64(&wef_from_component(&trivial, 2).unwrap()), vec![1, 0, 1]);
        let spc = component_generator(3).unwrap();
        assert_eq!(as_u64(&wef_brute_force(&spc).unwrap()), vec![1, 0, 3, 0]);
        let rep = component_generator(2).unwrap();
        assert_eq!(as_u64(&wef_from_component(&rep, 2).unwrap()), vec![1, 0, 0, 0, 1]);
        assert_eq!(wef_from_component(&spc, 3).unwrap().min_distance(), Some(4));
    }

    #[test]
    fn systematic_detection() {
        assert!(is_systematic(&component_generator(4).unwrap()));
        let g = BitMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        assert!(!is_systematic(&g));
        assert!(iowef_from_component(&g, 3).is_err());
    }

    #[test]
    fn macwilliams_of_repetition() {
        // dual of the (3,1) repetition code is the (3,2) SPC code
        let rep = WeightEnumerator::new(1, vec![1u32, 0, 0, 1].into_iter().map(BigUint::from).collect()).unwrap();
        assert_eq!(as_u64(&macwilliams(&rep).unwrap()), vec![1, 0, 3, 0]);
    }

    #[test]
    fn json_round_trip() {
        let w = wef_from_component(&component_generator(3).unwrap(), 3).unwrap();
        let j = w.to_json_repr();
        assert_eq!(j.coeffs[1], ["4".to_string(), "9".to_string()]);
        assert_eq!(WeightEnumerator::from_json_repr(&j).unwrap(), w);
    }

    #[test]
    fn bounds_edge_cases() {
        assert_eq!(bec_union_bound(&[1.0, 0.0, 3.0, 0.0], 0.0).unwrap(), 0.0);
        assert_eq!(awgn_union_bound(&[1.0, 0.0, 0.0], 0.5, 1.0).unwrap(), 0.0);
        assert!(bec_union_bound(&[1.0], 2.0).is_err());
    }
}
