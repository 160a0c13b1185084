//! Finitely supported group algebra over the rationals.
//!
//! An [`AlgebraElement`] is a formal sum `Σ c_g δ_g` with finitely many
//! nonzero rational coefficients. The basis `{δ_g}` is orthonormal for the
//! trace inner product, so the squared 2-norm is the sum of squared
//! coefficients. Norms are kept squared to stay exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::element::{ElementError, PlElement};
use crate::nadic::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    base: u32,
    terms: BTreeMap<PlElement, Rational>,
}

impl AlgebraElement {
    pub fn zero(base: u32) -> Self {
        AlgebraElement {
            base,
            terms: BTreeMap::new(),
        }
    }

    /// The basis vector `δ_g`.
    pub fn basis(g: PlElement) -> Self {
        AlgebraElement::term(g, Rational::one())
    }

    pub fn term(g: PlElement, coeff: Rational) -> Self {
        let mut x = AlgebraElement::zero(g.base());
        x.add_term(g, coeff);
        x
    }

    /// `c · δ_e`.
    pub fn scalar(base: u32, coeff: Rational) -> Self {
        AlgebraElement::term(PlElement::identity(base), coeff)
    }

    /// Builds a sum from `(element, coefficient)` pairs, merging repeats.
    pub fn from_terms(
        base: u32,
        terms: impl IntoIterator<Item = (PlElement, Rational)>,
    ) -> Result<Self, ElementError> {
        let mut x = AlgebraElement::zero(base);
        for (g, c) in terms {
            if g.base() != base {
                return Err(ElementError::BaseMismatch {
                    left: base,
                    right: g.base(),
                });
            }
            x.add_term(g, c);
        }
        Ok(x)
    }

    fn add_term(&mut self, g: PlElement, coeff: Rational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                if !coeff.is_zero() {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PlElement, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &PlElement) -> Rational {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    fn check_same_base(&self, other: &AlgebraElement) -> Result<(), ElementError> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(ElementError::BaseMismatch {
                left: self.base,
                right: other.base,
            })
        }
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement, ElementError> {
        self.check_same_base(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, ElementError> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.base);
        }
        AlgebraElement {
            base: self.base,
            terms: self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect(),
        }
    }

    /// Convolution product: bilinear extension of `δ_g δ_h = δ_{gh}`.
    pub fn algebra_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, ElementError> {
        self.check_same_base(other)?;
        let mut out = AlgebraElement::zero(self.base);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(g.compose(h)?, a * b);
            }
        }
        Ok(out)
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> Rational {
        self.coefficient(&PlElement::identity(self.base))
    }

    /// `Σ c_g²`.
    pub fn two_norm_sq(&self) -> Rational {
        self.terms.values().map(|c| c * c).sum()
    }

    /// `Σ c_g δ_{g⁻¹}`.
    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement {
            base: self.base,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.inverse(), c.clone()))
                .collect(),
        }
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &AlgebraElement) -> Result<AlgebraElement, ElementError> {
        self.algebra_mul(other)?.try_sub(&other.algebra_mul(self)?)
    }
}

pub fn algebra_mul(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, ElementError> {
    x.algebra_mul(y)
}

pub fn trace(x: &AlgebraElement) -> Rational {
    x.trace()
}

pub fn two_norm_sq(x: &AlgebraElement) -> Rational {
    x.two_norm_sq()
}

pub fn adjoint(x: &AlgebraElement) -> AlgebraElement {
    x.adjoint()
}

/// `|xy - yx|₂²`.
pub fn commutator_norm_sq(
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<Rational, ElementError> {
    Ok(x.commutator(y)?.two_norm_sq())
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            base: self.base,
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

/// Panics on base mismatch; use [`AlgebraElement::try_add`] otherwise.
impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("base mismatch")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("base mismatch")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.algebra_mul(rhs).expect("base mismatch")
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{make_f1, standard_generator};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn gens() -> (PlElement, PlElement) {
        (
            standard_generator(2, 0).unwrap(),
            standard_generator(2, 1).unwrap(),
        )
    }

    #[test]
    fn mul_examples() {
        let (g, h) = gens();
        let e = PlElement::identity(2);
        let prod = &AlgebraElement::basis(g.clone()) * &AlgebraElement::basis(g.inverse());
        assert_eq!(prod, AlgebraElement::basis(e.clone()));
        let sum = &AlgebraElement::basis(g.clone()) + &AlgebraElement::basis(h.clone());
        assert_eq!(&sum * &AlgebraElement::basis(e), sum);
        let c = AlgebraElement::basis(g.clone())
            .commutator(&AlgebraElement::basis(h.clone()))
            .unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.coefficient(&(&g * &h)), q("1"));
        assert_eq!(c.coefficient(&(&h * &g)), q("-1"));
    }

    #[test]
    fn trace_examples() {
        let e = PlElement::identity(2);
        let f1 = make_f1(&q("1/4"), 2).unwrap();
        assert_eq!(AlgebraElement::basis(e.clone()).trace(), q("1"));
        assert_eq!(AlgebraElement::basis(f1.clone()).trace(), q("0"));
        let x = AlgebraElement::from_terms(2, [(e, q("3")), (f1, q("-2"))]).unwrap();
        assert_eq!(x.trace(), q("3"));
    }

    #[test]
    fn norm_examples() {
        let (g, h) = gens();
        let diff = &AlgebraElement::basis(g) - &AlgebraElement::basis(h);
        assert_eq!(diff.two_norm_sq(), q("2"));
        assert_eq!(AlgebraElement::scalar(2, q("1")).two_norm_sq(), q("1"));
        assert_eq!(AlgebraElement::zero(2).two_norm_sq(), q("0"));
        assert_eq!(
            diff.two_norm_sq(),
            trace(&algebra_mul(&adjoint(&diff), &diff).unwrap())
        );
    }

    #[test]
    fn adjoint_examples() {
        let (g, h) = gens();
        assert_eq!(
            AlgebraElement::basis(g.clone()).adjoint(),
            AlgebraElement::basis(g.inverse())
        );
        let x = AlgebraElement::from_terms(2, [(g, q("1/2")), (h, q("-3"))]).unwrap();
        assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn commutator_norm_examples() {
        let (g, h) = gens();
        let bg = AlgebraElement::basis(g.clone());
        assert_eq!(commutator_norm_sq(&bg, &bg).unwrap(), q("0"));
        assert_eq!(
            commutator_norm_sq(&bg, &AlgebraElement::basis(h)).unwrap(),
            q("2")
        );
        // g commutes with its own powers
        let g3 = AlgebraElement::basis(g.pow(3));
        assert_eq!(commutator_norm_sq(&bg, &g3).unwrap(), q("0"));
    }

    #[test]
    fn cancellation_prunes_terms() {
        let (g, _) = gens();
        let x = AlgebraElement::basis(g.clone());
        assert!((&x - &x).is_zero());
        assert!(x.scale(&q("0")).is_zero());
        assert!(AlgebraElement::from_terms(3, [(g, q("1"))]).is_err());
        assert!(AlgebraElement::zero(2)
            .algebra_mul(&AlgebraElement::zero(3))
            .is_err());
    }
}
