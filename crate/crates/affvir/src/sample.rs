//! Seeded sampling of small-height parameters.

use affvir_core::exact::Scalar;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `n/d` with `|n| <= 3`, `d <= 3`, plus an imaginary integer part a quarter
/// of the time.
pub fn scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let re = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    if rng.gen_bool(0.25) {
        re + Scalar::I * Scalar::int(rng.gen_range(-2..=2))
    } else {
        re
    }
}

pub fn nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// `β` with `2β ∉ Z_+`.
pub fn admissible_beta(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let b = scalar(rng);
        if !(Scalar::int(2) * &b).is_nonneg_integer() {
            return b;
        }
    }
}

/// `m` pairwise distinct nonzero values.
pub fn distinct(rng: &mut ChaCha8Rng, m: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(m);
    while out.len() < m {
        let x = nonzero(rng);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}
