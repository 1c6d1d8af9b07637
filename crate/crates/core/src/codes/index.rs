//! Mixed-radix indexing and the perfect shuffle permutation.

use crate::error::{invalid, Result};

/// Digits of `a` in the mixed radix `bases`, most significant digit first.
///
/// ```
/// use spcpc::codes::multibase_digits;
/// assert_eq!(multibase_digits(5, &[3, 3]).unwrap(), vec![1, 2]);
/// ```
pub fn multibase_digits(a: usize, bases: &[usize]) -> Result<Vec<usize>> {
    if let Some(&b) = bases.iter().find(|&&b| b < 2) {
        return invalid(format!("multibase radix must be at least 2, got {b}"));
    }
    let total = bases
        .iter()
        .try_fold(1usize, |acc, &b| acc.checked_mul(b))
        .ok_or_else(|| crate::Error::InvalidArgument("radix product overflows".into()))?;
    if a >= total {
        return invalid(format!("{a} is not representable with bases {bases:?}"));
    }
    let mut digits = vec![0; bases.len()];
    let mut rest = a;
    for (slot, &b) in digits.iter_mut().zip(bases).rev() {
        *slot = rest % b;
        rest /= b;
    }
    Ok(digits)
}

/// The inverse of [`multibase_digits`].
pub fn multibase_value(digits: &[usize], bases: &[usize]) -> usize {
    digits
        .iter()
        .zip(bases)
        .fold(0, |acc, (&d, &b)| acc * b + d)
}

/// Perfect shuffle of length `a*b` as a gather table: output position `p`
/// takes input `perm[p]` (both 0-based).
///
/// The output lists the inputs of residue 1 modulo `b`, then residue 2, and
/// so on, finishing with residue 0. For `a = 2, b = 3` the 1-based inputs
/// `(1..=6)` come out as `(1, 4, 2, 5, 3, 6)`.
///
/// ```
/// use spcpc::codes::perfect_shuffle;
/// let p = perfect_shuffle(2, 3).unwrap();
/// assert_eq!(p, vec![0, 3, 1, 4, 2, 5]);
/// ```
pub fn perfect_shuffle(a: usize, b: usize) -> Result<Vec<usize>> {
    if a == 0 || b == 0 {
        return invalid(format!("perfect shuffle needs a, b >= 1, got ({a}, {b})"));
    }
    let mut perm = Vec::with_capacity(a * b);
    for r in 0..b {
        for q in 0..a {
            perm.push(q * b + r);
        }
    }
    Ok(perm)
}

/// Applies a gather table to a slice: `out[p] = x[perm[p]]`.
pub fn apply_permutation<T: Clone>(x: &[T], perm: &[usize]) -> Vec<T> {
    assert_eq!(x.len(), perm.len());
    perm.iter().map(|&i| x[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_of_small_values() {
        assert_eq!(multibase_digits(0, &[3, 3]).unwrap(), vec![0, 0]);
        assert_eq!(multibase_digits(6, &[3, 3]).unwrap(), vec![2, 0]);
        assert_eq!(multibase_digits(7, &[2, 4]).unwrap(), vec![1, 3]);
    }

    #[test]
    fn digits_reject_bad_input() {
        assert!(multibase_digits(9, &[3, 3]).is_err());
        assert!(multibase_digits(0, &[3, 1]).is_err());
    }

    #[test]
    fn digits_round_trip() {
        let bases = [2, 5, 3];
        for a in 0..30 {
            let d = multibase_digits(a, &bases).unwrap();
            assert_eq!(multibase_value(&d, &bases), a);
        }
    }

    #[test]
    fn shuffle_small_cases() {
        assert_eq!(perfect_shuffle(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(perfect_shuffle(2, 2).unwrap(), vec![0, 2, 1, 3]);
        assert!(perfect_shuffle(0, 2).is_err());
    }
}
