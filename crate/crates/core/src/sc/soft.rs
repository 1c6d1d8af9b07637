//! Message algebras shared by the SC-family decoders.

use crate::channels::Ternary;

/// Hard values fed back through the decoding tree.
pub trait HardBit: Copy + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn from_bit(bit: bool) -> Self;
    fn xor(self, other: Self) -> Self;
    fn to_ternary(self) -> Ternary;
}

impl HardBit for bool {
    fn zero() -> Self {
        false
    }

    fn from_bit(bit: bool) -> Self {
        bit
    }

    fn xor(self, other: Self) -> Self {
        self ^ other
    }

    fn to_ternary(self) -> Ternary {
        Ternary::from_bit(self)
    }
}

impl HardBit for Ternary {
    fn zero() -> Self {
        Ternary::Zero
    }

    fn from_bit(bit: bool) -> Self {
        Ternary::from_bit(bit)
    }

    fn xor(self, other: Self) -> Self {
        match (self, other) {
            (Ternary::Erasure, _) | (_, Ternary::Erasure) => Ternary::Erasure,
            (a, b) => Ternary::from_bit((a == Ternary::One) ^ (b == Ternary::One)),
        }
    }

    fn to_ternary(self) -> Ternary {
        self
    }
}

/// Soft information about one bit.
pub trait SoftBit: Copy + std::fmt::Debug {
    type Hard: HardBit;

    /// Message about `a ⊕ b` (check node).
    fn check(self, other: Self) -> Self;
    /// Message combining two independent observations of one bit (variable node).
    fn var(self, other: Self) -> Self;
    /// Message about `b` given this message about `b ⊕ h`.
    fn flip(self, h: Self::Hard) -> Self;
    /// Hard decision.
    fn decide(self) -> Self::Hard;
}

impl SoftBit for f64 {
    type Hard = bool;

    #[inline]
    fn check(self, other: Self) -> Self {
        boxplus(self, other)
    }

    #[inline]
    fn var(self, other: Self) -> Self {
        self + other
    }

    #[inline]
    fn flip(self, h: bool) -> Self {
        if h {
            -self
        } else {
            self
        }
    }

    /// Zero LLRs decide for 0.
    #[inline]
    fn decide(self) -> bool {
        self < 0.0
    }
}

impl SoftBit for Ternary {
    type Hard = Ternary;

    fn check(self, other: Self) -> Self {
        self.xor(other)
    }

    fn var(self, other: Self) -> Self {
        if self == Ternary::Erasure {
            other
        } else {
            self
        }
    }

    fn flip(self, h: Ternary) -> Self {
        self.xor(h)
    }

    fn decide(self) -> Ternary {
        self
    }
}

/// Exact check-node combination `2 atanh(tanh(a/2) tanh(b/2))`, evaluated as
/// `sign(a) sign(b) min(|a|,|b|) + ln(1+e^{-|a+b|}) - ln(1+e^{-|a-b|})`.
#[inline]
pub fn boxplus(a: f64, b: f64) -> f64 {
    let m = a.abs().min(b.abs());
    let s = if (a < 0.0) != (b < 0.0) { -m } else { m };
    s + ((-(a + b).abs()).exp().ln_1p() - (-(a - b).abs()).exp().ln_1p())
}

/// `ln(1 + e^x)` without overflow.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}
