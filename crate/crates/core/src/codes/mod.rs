//! Construction of SPC product codes as multi-kernel polar codes.
//!
//! Indices exposed to callers (frozen and information sets) are 1-based.
//! Everything positional inside the crate, including [`ProductCodeSpec::info_positions`],
//! is 0-based.

mod gf2;
mod index;

use std::sync::OnceLock;

pub use gf2::{BitMatrix, BitWord, MatrixJson};
pub use index::{apply_permutation, multibase_digits, multibase_value, perfect_shuffle};

use crate::error::{invalid, Error, Result};

/// Largest blocklength for which dense `n`-column matrices are materialized.
pub const MAX_MATRIX_N: usize = 1 << 14;

/// An `m`-dimensional product of `(n_l, n_l - 1)` single parity-check codes.
#[derive(Debug, Clone)]
pub struct ProductCodeSpec {
    dims: Vec<usize>,
    n: usize,
    k: usize,
    info: Vec<usize>,
    frozen: Vec<usize>,
    transform: OnceLock<BitMatrix>,
    generator: OnceLock<BitMatrix>,
}

impl PartialEq for ProductCodeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims
    }
}

impl Eq for ProductCodeSpec {}

impl ProductCodeSpec {
    /// Builds a spec with the component lengths sorted ascending, so the
    /// lowest-rate component is decoded first.
    pub fn new(dims: &[usize]) -> Result<Self> {
        let mut sorted = dims.to_vec();
        sorted.sort_unstable();
        Self::with_order(&sorted)
    }

    /// Builds a spec that keeps the given component order.
    pub fn with_order(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return invalid("at least one component length is required");
        }
        if let Some(&bad) = dims.iter().find(|&&d| d < 2) {
            return invalid(format!("component lengths must be at least 2, got {bad}"));
        }
        let n = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&n| n <= isize::MAX as usize / 8)
            .ok_or_else(|| Error::InvalidArgument(format!("blocklength of {dims:?} overflows")))?;
        let k = dims.iter().map(|d| d - 1).product();
        let mut info = Vec::with_capacity(k);
        let mut frozen = Vec::with_capacity(n - k);
        let mut digits = vec![0usize; dims.len()];
        for i in 0..n {
            if digits.iter().all(|&d| d != 0) {
                info.push(i);
            } else {
                frozen.push(i);
            }
            // Increment the mixed-radix counter, least significant digit last.
            for (d, &b) in digits.iter_mut().zip(dims).rev() {
                *d += 1;
                if *d < b {
                    break;
                }
                *d = 0;
            }
        }
        Ok(ProductCodeSpec {
            dims: dims.to_vec(),
            n,
            k,
            info,
            frozen,
            transform: OnceLock::new(),
            generator: OnceLock::new(),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of component codes.
    pub fn m(&self) -> usize {
        self.dims.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance `2^m`.
    pub fn d(&self) -> usize {
        1usize << self.m()
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Frozen transform inputs, 1-based and sorted.
    pub fn frozen(&self) -> Vec<usize> {
        self.frozen.iter().map(|i| i + 1).collect()
    }

    /// Information transform inputs, 1-based and sorted.
    pub fn info(&self) -> Vec<usize> {
        self.info.iter().map(|i| i + 1).collect()
    }

    /// Information transform inputs, 0-based and sorted.
    pub fn info_positions(&self) -> &[usize] {
        &self.info
    }

    /// Number of minimum-weight codewords, `prod C(n_l, 2)`.
    pub fn min_weight_multiplicity(&self) -> u128 {
        self.dims
            .iter()
            .map(|&d| (d * (d - 1) / 2) as u128)
            .product()
    }

    fn check_matrix_size(&self) -> Result<()> {
        if self.n > MAX_MATRIX_N {
            return Err(Error::SizeLimit {
                what: "dense matrix blocklength",
                limit: MAX_MATRIX_N,
                actual: self.n,
            });
        }
        Ok(())
    }

    /// The `n x n` transform, built once and cached.
    pub fn transform_matrix(&self) -> Result<&BitMatrix> {
        self.check_matrix_size()?;
        Ok(self.transform.get_or_init(|| transform_matrix(&self.dims)))
    }

    /// The `k x n` generator: transform rows at the information positions.
    pub fn generator_matrix(&self) -> Result<&BitMatrix> {
        self.check_matrix_size()?;
        Ok(self.generator.get_or_init(|| {
            let t = self.transform.get_or_init(|| transform_matrix(&self.dims));
            t.select_rows(&self.info)
        }))
    }

    /// Places `u` at the information positions of an otherwise zero transform input.
    pub fn embed(&self, u: &BitWord) -> Result<BitWord> {
        if u.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: u.len(),
            });
        }
        let mut w = BitWord::zeros(self.n);
        for (j, &pos) in self.info.iter().enumerate() {
            if u.get(j) {
                w.set(pos, true);
            }
        }
        Ok(w)
    }

    /// Encodes `x = u G` by XOR-folding generator rows.
    pub fn encode(&self, u: &BitWord) -> Result<BitWord> {
        if u.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                actual: u.len(),
            });
        }
        if self.n <= MAX_MATRIX_N {
            self.generator_matrix()?.left_mul(u)
        } else {
            self.transform_word(&self.embed(u)?)
        }
    }

    /// Computes `w 𝗚` without materializing the transform.
    ///
    /// Each kernel replaces the first entry of every fibre along its axis
    /// with the XOR of the whole fibre; the result is then re-indexed with
    /// the digit order reversed.
    pub fn transform_word(&self, w: &BitWord) -> Result<BitWord> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: w.len(),
            });
        }
        let mut t = w.to_bits();
        // stride of digit l in w-indexing (digit 0 most significant)
        let mut stride = self.n;
        for &nl in &self.dims {
            stride /= nl;
            let block = stride * nl;
            for base in (0..self.n).step_by(block) {
                for off in 0..stride {
                    let mut acc = 0u8;
                    for j in 0..nl {
                        acc ^= t[base + off + j * stride];
                    }
                    t[base + off] = acc;
                }
            }
        }
        let mut x = BitWord::zeros(self.n);
        let reversed: Vec<usize> = self.dims.iter().rev().copied().collect();
        let mut digits = vec![0usize; self.m()];
        for (i, &bit) in t.iter().enumerate() {
            if bit == 1 {
                let mut rest = i;
                for (d, &b) in digits.iter_mut().zip(&self.dims).rev() {
                    *d = rest % b;
                    rest /= b;
                }
                digits.reverse();
                x.set(multibase_value(&digits, &reversed), true);
            }
        }
        Ok(x)
    }

    /// True when every fibre of `x`, viewed as an `m`-dimensional array, has even weight.
    pub fn is_codeword(&self, x: &BitWord) -> bool {
        if x.len() != self.n {
            return false;
        }
        // codeword positions use the component order reversed
        let mut stride = self.n;
        for &nl in self.dims.iter().rev() {
            stride /= nl;
            let block = stride * nl;
            for base in (0..self.n).step_by(block) {
                for off in 0..stride {
                    let parity = (0..nl).filter(|&j| x.get(base + off + j * stride)).count();
                    if parity % 2 == 1 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The `n_l x n_l` kernel: all-ones first column, identity below the first row.
pub fn kernel_matrix(nl: usize) -> Result<BitMatrix> {
    if nl < 2 {
        return invalid(format!("kernel size must be at least 2, got {nl}"));
    }
    let mut k = BitMatrix::zeros(nl, nl);
    for r in 0..nl {
        k.set(r, 0, true);
        if r > 0 {
            k.set(r, r, true);
        }
    }
    Ok(k)
}

/// Generator of the `(n_l, n_l - 1)` SPC code: the kernel without its first row.
pub fn component_generator(nl: usize) -> Result<BitMatrix> {
    let k = kernel_matrix(nl)?;
    Ok(k.select_rows(&(1..nl).collect::<Vec<_>>()))
}

fn shuffle_matrix(a: usize, b: usize) -> BitMatrix {
    BitMatrix::permutation(&perfect_shuffle(a, b).expect("positive sizes"))
}

/// `𝗚 = (I_a ⊗ K_{n_m}) Π_{a,n_m} (I_{n_m} ⊗ 𝗚')` with `a` the length of `𝗚'`.
fn transform_matrix(dims: &[usize]) -> BitMatrix {
    let mut g = BitMatrix::identity(1);
    for &nl in dims {
        let a = g.rows();
        let left = BitMatrix::identity(a).kron(&kernel_matrix(nl).expect("validated"));
        let right = BitMatrix::identity(nl).kron(&g);
        g = left
            .mul(&shuffle_matrix(a, nl))
            .and_then(|p| p.mul(&right))
            .expect("conformable");
    }
    g
}

/// Generator through the product recursion
/// `G = (I_{k'} ⊗ G_m) Π_{k',n_m} (I_{n_m} ⊗ G')`.
pub fn generator_by_recursion(spec: &ProductCodeSpec) -> Result<BitMatrix> {
    spec.check_matrix_size()?;
    let mut g = BitMatrix::identity(1);
    for &nl in spec.dims() {
        let kp = g.rows();
        let left = BitMatrix::identity(kp).kron(&component_generator(nl)?);
        let right = BitMatrix::identity(nl).kron(&g);
        g = left.mul(&shuffle_matrix(kp, nl))?.mul(&right)?;
    }
    Ok(g)
}

/// `G_1 ⊗ G_2 ⊗ … ⊗ G_m`.
pub fn kronecker_generator(spec: &ProductCodeSpec) -> Result<BitMatrix> {
    spec.check_matrix_size()?;
    let mut g = BitMatrix::identity(1);
    for &nl in spec.dims() {
        g = g.kron(&component_generator(nl)?);
    }
    Ok(g)
}

/// `∏_i (Π_{n^[i-1], n_i} ⊗ I_{n / n^[i]})`, the column permutation relating
/// the Kronecker generator to the recursive one.
pub fn equivalence_permutation(spec: &ProductCodeSpec) -> Result<BitMatrix> {
    spec.check_matrix_size()?;
    let n = spec.n();
    let mut p = BitMatrix::identity(n);
    let mut prefix = 1;
    for &nl in spec.dims() {
        let factor = shuffle_matrix(prefix, nl).kron(&BitMatrix::identity(n / (prefix * nl)));
        p = p.mul(&factor)?;
        prefix *= nl;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters() {
        let s = ProductCodeSpec::new(&[5, 5, 5]).unwrap();
        assert_eq!((s.n(), s.k(), s.d()), (125, 64, 8));
        assert_eq!(s.min_weight_multiplicity(), 1000);
        assert_eq!(s.frozen().len() + s.info().len(), 125);
    }

    #[test]
    fn dims_are_sorted_unless_asked() {
        assert_eq!(ProductCodeSpec::new(&[4, 2, 3]).unwrap().dims(), &[2, 3, 4]);
        assert_eq!(ProductCodeSpec::with_order(&[4, 2, 3]).unwrap().dims(), &[4, 2, 3]);
    }

    #[test]
    fn rejects_short_components() {
        assert!(ProductCodeSpec::new(&[3, 1]).is_err());
        assert!(ProductCodeSpec::new(&[]).is_err());
        assert!(kernel_matrix(1).is_err());
    }

    #[test]
    fn frozen_sets() {
        assert_eq!(ProductCodeSpec::new(&[3, 3]).unwrap().frozen(), vec![1, 2, 3, 4, 7]);
        assert_eq!(ProductCodeSpec::new(&[2]).unwrap().frozen(), vec![1]);
        assert_eq!(ProductCodeSpec::new(&[2, 2]).unwrap().frozen(), vec![1, 2, 3]);
    }

    #[test]
    fn two_by_two_is_arikan_transform() {
        let s = ProductCodeSpec::new(&[2, 2]).unwrap();
        let expected =
            BitMatrix::from_rows(&[vec![1, 0, 0, 0], vec![1, 0, 1, 0], vec![1, 1, 0, 0], vec![1, 1, 1, 1]])
                .unwrap();
        assert_eq!(s.transform_matrix().unwrap(), &expected);
    }

    #[test]
    fn single_component_generators() {
        let g = ProductCodeSpec::new(&[2]).unwrap();
        assert_eq!(g.generator_matrix().unwrap().to_rows(), vec![vec![1, 1]]);
        let g = ProductCodeSpec::new(&[3]).unwrap();
        assert_eq!(g.generator_matrix().unwrap().to_rows(), vec![vec![1, 1, 0], vec![1, 0, 1]]);
        let x = g.encode(&BitWord::from_bits(&[1, 1])).unwrap();
        assert_eq!(x.to_bits(), vec![0, 1, 1]);
    }

    #[test]
    fn transform_word_matches_matrix() {
        for dims in [vec![3, 3], vec![2, 3, 4], vec![4, 2], vec![5, 3]] {
            let s = ProductCodeSpec::with_order(&dims).unwrap();
            let t = s.transform_matrix().unwrap();
            for i in 0..s.n() {
                let mut w = BitWord::zeros(s.n());
                w.set(i, true);
                assert_eq!(&s.transform_word(&w).unwrap(), t.row(i), "dims {dims:?} row {i}");
            }
        }
    }

    #[test]
    fn encode_length_is_checked() {
        let s = ProductCodeSpec::new(&[3, 3]).unwrap();
        assert!(s.encode(&BitWord::zeros(3)).is_err());
    }
}
