//! Seeded samplers for the property suites.

use rand::Rng;

use crate::construct::scaling_lemma;
use crate::element::PlElement;
use crate::nadic::Rational;
use crate::structure::semidirect_decompose;
use crate::word::random_word;

/// Random N-adic `0 < lo < hi < 1` with `hi - lo` a power of N.
pub fn random_scaling_interval<R: Rng + ?Sized>(base: u32, rng: &mut R) -> (Rational, Rational) {
    loop {
        let width = Rational::power_of(base, -rng.random_range(1..=5i64));
        let k = rng.random_range(1..=5u32);
        let den = u64::from(base).pow(k);
        let lo = Rational::new(rng.random_range(1..den), den);
        let hi = &lo + &width;
        if hi < Rational::one() {
            return (lo, hi);
        }
    }
}

/// Nontrivial element of F′ from the scaling construction on a random interval.
pub fn random_fprime<R: Rng + ?Sized>(base: u32, rng: &mut R) -> PlElement {
    let (lo, hi) = random_scaling_interval(base, rng);
    scaling_lemma(base, &lo, &hi, None).expect("sampled interval is valid")
}

/// Element of a random word of length `1..=max_len`.
pub fn random_element_upto<R: Rng + ?Sized>(base: u32, max_len: usize, rng: &mut R) -> PlElement {
    let len = rng.random_range(1..=max_len.max(1));
    random_word(base, len, rng)
        .evaluate()
        .expect("random words evaluate")
}

/// Random nontrivial element from words of length at most `max_len`.
pub fn random_nontrivial<R: Rng + ?Sized>(base: u32, max_len: usize, rng: &mut R) -> PlElement {
    loop {
        let f = random_element_upto(base, max_len, rng);
        if !f.is_identity() {
            return f;
        }
    }
}

/// Random element of D: the D-factor of a random element.
pub fn random_d<R: Rng + ?Sized>(base: u32, max_len: usize, rng: &mut R) -> PlElement {
    let f = random_element_upto(base, max_len, rng);
    semidirect_decompose(&f).expect("decomposition holds").0
}
