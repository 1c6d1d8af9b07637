//! Dense GF(2) vectors and matrices packed into 64-bit words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A packed binary vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitWord {
    len: usize,
    words: Vec<u64>,
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        BitWord {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a word from a slice of `0`/`1` values. Any nonzero entry is a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut w = BitWord::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                w.set(i, true);
            }
        }
        w
    }

    /// The low `len` bits of `value`, least significant bit first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mut w = BitWord::zeros(len);
        if len > 0 {
            let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            w.words[0] = value & mask;
        }
        w
    }

    /// Parses a string of `0` and `1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let bits: Vec<u8> = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => invalid(format!("not a bit: {other:?}")),
            })
            .collect::<Result<_>>()?;
        Ok(BitWord::from_bits(&bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitWord) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Parity of `self AND other`.
    pub fn dot(&self, other: &BitWord) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord(")?;
        for b in self.iter() {
            write!(f, "{}", b as u8)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", b as u8)?;
        }
        Ok(())
    }
}

/// A dense binary matrix stored row-major, one packed [`BitWord`] per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitWord>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitWord::zeros(cols); rows],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = BitMatrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from nested `0`/`1` rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("ragged matrix rows");
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| BitWord::from_bits(r)).collect(),
        })
    }

    pub fn from_words(cols: usize, rows: Vec<BitWord>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("row length differs from column count");
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// The permutation matrix `P` with `(x P)[p] = x[perm[p]]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = BitMatrix::zeros(n, n);
        for (p, &src) in perm.iter().enumerate() {
            m.set(src, p, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range");
        self.data[r].set(c, value)
    }

    pub fn row(&self, r: usize) -> &BitWord {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitWord {
        let mut w = BitWord::zeros(self.rows);
        for r in 0..self.rows {
            w.set(r, self.get(r, c));
        }
        w
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.data.iter().map(BitWord::to_bits).collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Row-vector product `v · self`, computed as the XOR of the rows selected by `v`.
    pub fn left_mul(&self, v: &BitWord) -> Result<BitWord> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                actual: v.len(),
            });
        }
        let mut out = BitWord::zeros(self.cols);
        for (r, row) in self.data.iter().enumerate() {
            if v.get(r) {
                out.xor_assign(row);
            }
        }
        Ok(out)
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: rhs.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| rhs.left_mul(row))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                if !self.get(r1, c1) {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        if rhs.get(r2, c2) {
                            out.set(r1 * rhs.rows + r2, c1 * rhs.cols + c2, true);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        BitMatrix {
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    /// Rank over GF(2) by forward elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Row `r` as hex, column 0 in the most significant bit of the first digit,
    /// zero-padded on the right to a multiple of four bits.
    pub fn row_hex(&self, r: usize) -> String {
        let row = &self.data[r];
        let digits = self.cols.div_ceil(4);
        (0..digits)
            .map(|d| {
                let mut nibble = 0u32;
                for b in 0..4 {
                    let c = 4 * d + b;
                    nibble <<= 1;
                    if c < self.cols && row.get(c) {
                        nibble |= 1;
                    }
                }
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn to_json_repr(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            row_hex: (0..self.rows).map(|r| self.row_hex(r)).collect(),
        }
    }

    pub fn from_json_repr(repr: &MatrixJson) -> Result<Self> {
        if repr.row_hex.len() != repr.rows {
            return invalid("row_hex length differs from rows");
        }
        let digits = repr.cols.div_ceil(4);
        let mut m = BitMatrix::zeros(repr.rows, repr.cols);
        for (r, hex) in repr.row_hex.iter().enumerate() {
            if hex.len() != digits {
                return invalid(format!("row {r}: expected {digits} hex digits"));
            }
            for (d, ch) in hex.chars().enumerate() {
                let nibble = ch
                    .to_digit(16)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad hex digit {ch:?}")))?;
                for b in 0..4 {
                    let c = 4 * d + b;
                    let bit = (nibble >> (3 - b)) & 1 == 1;
                    if c < repr.cols {
                        m.set(r, c, bit);
                    } else if bit {
                        return invalid(format!("row {r}: nonzero padding bit"));
                    }
                }
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// Wire form of a [`BitMatrix`]: `{rows, cols, row_hex: [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub row_hex: Vec<String>,
}
