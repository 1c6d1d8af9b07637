use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spcpc::codes::{BitWord, ProductCodeSpec};
use spcpc::crc::CrcSpec;

/// Long division of `bits(x) * x^r` by `g`, on explicit coefficient vectors.
fn long_division_parity(msg: &[u8], poly: u64, r: usize) -> Vec<u8> {
    let mut dividend: Vec<u8> = msg.to_vec();
    dividend.extend(std::iter::repeat_n(0, r));
    let g: Vec<u8> = (0..=r).rev().map(|i| ((poly >> i) & 1) as u8).collect();
    for i in 0..msg.len() {
        if dividend[i] == 1 {
            for (j, &gj) in g.iter().enumerate() {
                dividend[i + j] ^= gj;
            }
        }
    }
    dividend[msg.len()..].to_vec()
}

#[test]
fn single_bit_messages_match_long_division() {
    for crc in [CrcSpec::CRC8_SPC, CrcSpec::CRC8_POLAR, CrcSpec::from_poly(0b1011).unwrap()] {
        for pos in 0..56 {
            let mut bits = vec![0u8; 56];
            bits[pos] = 1;
            let w = crc.encode(&BitWord::from_bits(&bits));
            let parity: Vec<u8> = w.to_bits()[56..].to_vec();
            assert_eq!(parity, long_division_parity(&bits, crc.poly(), crc.degree()));
        }
    }
}

#[test]
fn spc_polynomial_sizes() {
    let w = CrcSpec::CRC8_SPC.encode(&BitWord::zeros(56));
    assert_eq!(w.len(), 64);
    assert_eq!(CrcSpec::parse("0x1D7").unwrap().to_string(), "0x1D7");
}

#[test]
fn single_bit_errors_are_detected() {
    let crc = CrcSpec::CRC8_SPC;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let bits: Vec<u8> = (0..56).map(|_| rng.random_range(0..2)).collect();
        let w = crc.encode(&BitWord::from_bits(&bits));
        for i in 0..64 {
            let mut v = w.clone();
            v.set(i, !v.get(i));
            assert!(!crc.check(&v).unwrap());
        }
    }
}

#[test]
fn random_words_pass_at_two_to_minus_r() {
    let crc = CrcSpec::CRC8_SPC;
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let trials = 100_000;
    let mut pass = 0;
    for _ in 0..trials {
        let bits: Vec<u8> = (0..64).map(|_| rng.random_range(0..2)).collect();
        pass += crc.check(&BitWord::from_bits(&bits)).unwrap() as usize;
    }
    let p = 1.0 / 256.0;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    assert!((pass as f64 / trials as f64 - p).abs() < 3.0 * sigma);
}

#[test]
fn concatenation_equals_product_of_generators() {
    let crc = CrcSpec::CRC8_SPC;
    let inner = ProductCodeSpec::new(&[5, 5, 5]).unwrap();
    let g = crc.generator_matrix(56).mul(inner.generator_matrix().unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..100 {
        let bits: Vec<u8> = (0..56).map(|_| rng.random_range(0..2)).collect();
        let m = BitWord::from_bits(&bits);
        let x = inner.encode(&crc.encode(&m)).unwrap();
        assert_eq!(x, g.left_mul(&m).unwrap());
    }
}

proptest! {
    #[test]
    fn encode_is_linear_and_checks(a in prop::collection::vec(0u8..2, 56), b in prop::collection::vec(0u8..2, 56)) {
        let crc = CrcSpec::CRC8_SPC;
        let (wa, wb) = (BitWord::from_bits(&a), BitWord::from_bits(&b));
        let mut sum = wa.clone();
        sum.xor_assign(&wb);
        let mut enc_sum = crc.encode(&wa);
        enc_sum.xor_assign(&crc.encode(&wb));
        prop_assert_eq!(crc.encode(&sum), enc_sum);
        prop_assert!(crc.check(&crc.encode(&wa)).unwrap());
    }
}
