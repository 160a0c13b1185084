//! Exact computation in the generalized Thompson groups F(N).
//!
//! Elements are canonical piecewise-linear homeomorphisms of `[0,1]` with
//! N-adic breakpoints and slopes that are powers of N. All arithmetic is
//! exact; equality of elements is equality of canonical breakpoint lists.
//!
//! The group product is composition of maps: `g · h` is `x ↦ g(h(x))`.

// Errors carry the offending exact values, which makes them large.
#![allow(clippy::result_large_err)]

pub mod checks;
pub mod construct;
pub mod document;
pub mod element;
pub mod grouprep;
pub mod nadic;
pub mod sample;
pub mod structure;
pub mod word;

pub use construct::{
    make_a, make_a_inverse, make_f1, make_f2, scaling_lemma, shift_element, standard_generator,
    ADParams, AffineChart, ConstructError,
};
pub use element::{ElementError, FixedSet, PlElement};
pub use grouprep::AlgebraElement;
pub use nadic::{is_nadic, is_power_of_n, NAdic, PowerOfN, Rational};
pub use word::{evaluate_word, random_element, GroupWord, Symbol};
