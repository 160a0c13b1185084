//! Group elements of F(N) as canonical piecewise-linear homeomorphisms.
//!
//! An element is stored as its list of breakpoints `(x, y)`, starting at
//! `(0, 0)` and ending at `(1, 1)`, with no interior breakpoint between two
//! segments of equal slope. Because that form is unique, structural equality
//! of [`PlElement`] is group equality and the word problem is a list
//! comparison.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::nadic::{check_base, is_nadic, is_power_of_n, NAdicError, PowerOfN, Rational};

pub type Breakpoint = (Rational, Rational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("breakpoint list is empty")]
    Empty,
    #[error("breakpoints must start at (0,0) and end at (1,1)")]
    EndpointNotFixed,
    #[error("breakpoints are not strictly increasing at index {index}")]
    NonMonotone { index: usize },
    #[error("coordinate {value} is not {base}-adic")]
    NonNAdic { value: Rational, base: u32 },
    #[error("slope {slope} on segment {index} is not a power of {base}")]
    NonPowerSlope {
        index: usize,
        slope: Rational,
        base: u32,
    },
    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u32, right: u32 },
    #[error("{0} lies outside [0,1]")]
    OutOfDomain(Rational),
}

impl From<NAdicError> for ElementError {
    fn from(err: NAdicError) -> Self {
        match err {
            NAdicError::InvalidBase(n) => ElementError::InvalidBase(n),
            NAdicError::NotNAdic { value, base } => ElementError::NonNAdic { value, base },
            // only reachable through slopes of non-monotone input
            NAdicError::NotPositive(_) => ElementError::NonMonotone { index: 0 },
        }
    }
}

/// A canonical element of F(N).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlElement {
    base: u32,
    breaks: Vec<Breakpoint>,
}

fn slope(a: &Breakpoint, b: &Breakpoint) -> Rational {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

/// Value at `t` of the line through `a` and `b`.
fn interpolate(a: &Breakpoint, b: &Breakpoint, t: &Rational) -> Rational {
    &a.1 + (t - &a.0) * slope(a, b)
}

fn collinear(a: &Breakpoint, b: &Breakpoint, c: &Breakpoint) -> bool {
    (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0)
}

/// Drops interior breakpoints whose neighbouring segments have equal slope.
fn canonicalize(points: Vec<Breakpoint>) -> Vec<Breakpoint> {
    let mut out: Vec<Breakpoint> = Vec::with_capacity(points.len());
    for p in points {
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    out
}

impl PlElement {
    /// Validates a breakpoint list and returns the canonical element.
    pub fn new(base: u32, breaks: Vec<Breakpoint>) -> Result<Self, ElementError> {
        check_base(base)?;
        if breaks.is_empty() {
            return Err(ElementError::Empty);
        }
        let zero = Rational::zero();
        let one = Rational::one();
        let first = &breaks[0];
        let last = &breaks[breaks.len() - 1];
        if breaks.len() < 2 || first.0 != zero || first.1 != zero || last.0 != one || last.1 != one
        {
            return Err(ElementError::EndpointNotFixed);
        }
        for (i, w) in breaks.windows(2).enumerate() {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(ElementError::NonMonotone { index: i + 1 });
            }
        }
        for (x, y) in &breaks {
            for v in [x, y] {
                if !is_nadic(v, base) {
                    return Err(ElementError::NonNAdic {
                        value: v.clone(),
                        base,
                    });
                }
            }
        }
        for (index, w) in breaks.windows(2).enumerate() {
            let s = slope(&w[0], &w[1]);
            if is_power_of_n(&s, base)?.is_none() {
                return Err(ElementError::NonPowerSlope {
                    index,
                    slope: s,
                    base,
                });
            }
        }
        Ok(PlElement {
            base,
            breaks: canonicalize(breaks),
        })
    }

    /// Builds an element from points already known to satisfy every
    /// invariant except possibly canonical form.
    pub(crate) fn from_valid(base: u32, breaks: Vec<Breakpoint>) -> Self {
        let e = PlElement {
            base,
            breaks: canonicalize(breaks),
        };
        debug_assert!(PlElement::new(base, e.breaks.clone()).as_ref() == Ok(&e));
        e
    }

    /// The identity of F(`base`).
    ///
    /// Panics if `base < 2`.
    pub fn identity(base: u32) -> Self {
        assert!(base >= 2, "base must be at least 2");
        PlElement {
            base,
            breaks: vec![
                (Rational::zero(), Rational::zero()),
                (Rational::one(), Rational::one()),
            ],
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn breaks(&self) -> &[Breakpoint] {
        &self.breaks
    }

    pub fn is_identity(&self) -> bool {
        self.breaks.len() == 2
    }

    fn check_same_base(&self, other: &PlElement) -> Result<(), ElementError> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(ElementError::BaseMismatch {
                left: self.base,
                right: other.base,
            })
        }
    }

    /// Index `i` of the segment `[x_i, x_{i+1}]` containing `x`; `x` in [0,1].
    fn segment_of(&self, x: &Rational) -> usize {
        let i = self.breaks.partition_point(|(bx, _)| bx <= x);
        i.clamp(1, self.breaks.len() - 1) - 1
    }

    fn eval_unchecked(&self, x: &Rational) -> Rational {
        let i = self.segment_of(x);
        interpolate(&self.breaks[i], &self.breaks[i + 1], x)
    }

    /// Exact image of `x`.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational, ElementError> {
        if x.is_negative() || *x > Rational::one() {
            return Err(ElementError::OutOfDomain(x.clone()));
        }
        Ok(self.eval_unchecked(x))
    }

    /// Exact preimage of `y`.
    pub fn preimage(&self, y: &Rational) -> Result<Rational, ElementError> {
        if y.is_negative() || *y > Rational::one() {
            return Err(ElementError::OutOfDomain(y.clone()));
        }
        let i = self.breaks.partition_point(|(_, by)| by <= y);
        let i = i.clamp(1, self.breaks.len() - 1) - 1;
        let (a, b) = (&self.breaks[i], &self.breaks[i + 1]);
        Ok(interpolate(
            &(a.1.clone(), a.0.clone()),
            &(b.1.clone(), b.0.clone()),
            y,
        ))
    }

    /// The element `x ↦ self(other(x))`.
    ///
    /// Breakpoints of the result are those of `other` together with the
    /// `other`-preimages of the breakpoints of `self`. Both lists are walked
    /// in order of the intermediate value `other(x)`.
    pub fn compose(&self, other: &PlElement) -> Result<PlElement, ElementError> {
        self.check_same_base(other)?;
        let (outer, inner) = (&self.breaks, &other.breaks);
        let mut points = Vec::with_capacity(outer.len() + inner.len());
        let (mut i, mut j) = (0, 0);
        while i < inner.len() && j < outer.len() {
            match inner[i].1.cmp(&outer[j].0) {
                Ordering::Equal => {
                    points.push((inner[i].0.clone(), outer[j].1.clone()));
                    i += 1;
                    j += 1;
                }
                Ordering::Less => {
                    let y = interpolate(&outer[j - 1], &outer[j], &inner[i].1);
                    points.push((inner[i].0.clone(), y));
                    i += 1;
                }
                Ordering::Greater => {
                    let a = (inner[i - 1].1.clone(), inner[i - 1].0.clone());
                    let b = (inner[i].1.clone(), inner[i].0.clone());
                    points.push((interpolate(&a, &b, &outer[j].0), outer[j].1.clone()));
                    j += 1;
                }
            }
        }
        Ok(PlElement::from_valid(self.base, points))
    }

    pub fn inverse(&self) -> PlElement {
        PlElement {
            base: self.base,
            breaks: self
                .breaks
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: i64) -> PlElement {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = PlElement::identity(self.base);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `h · self · h⁻¹`.
    pub fn conjugate_by(&self, h: &PlElement) -> Result<PlElement, ElementError> {
        h.compose(self)?.compose(&h.inverse())
    }

    pub fn commutes_with(&self, other: &PlElement) -> Result<bool, ElementError> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    /// Group equality, which is canonical-form identity.
    pub fn equals(&self, other: &PlElement) -> Result<bool, ElementError> {
        self.check_same_base(other)?;
        Ok(self == other)
    }

    /// Slope exponents of every segment, left to right.
    pub fn slope_exponents(&self) -> Vec<i64> {
        self.breaks
            .windows(2)
            .map(|w| self.exponent_of(&slope(&w[0], &w[1])))
            .collect()
    }

    fn exponent_of(&self, s: &Rational) -> i64 {
        PowerOfN::from_rational(s, self.base)
            .ok()
            .flatten()
            .expect("validated element has power-of-N slopes")
            .exponent
    }

    /// Slope exponents `(a, b)` of the first and last segments.
    pub fn boundary_slopes(&self) -> (i64, i64) {
        let n = self.breaks.len();
        (
            self.exponent_of(&slope(&self.breaks[0], &self.breaks[1])),
            self.exponent_of(&slope(&self.breaks[n - 2], &self.breaks[n - 1])),
        )
    }

    /// True if the first segment lies on the diagonal.
    pub fn is_identity_near_zero(&self) -> bool {
        let p = &self.breaks[1];
        p.0 == p.1
    }

    /// True if the last segment lies on the diagonal.
    pub fn is_identity_near_one(&self) -> bool {
        let p = &self.breaks[self.breaks.len() - 2];
        p.0 == p.1
    }

    /// Maximal closed intervals of fixed points.
    pub fn fixed_set(&self) -> FixedSet {
        let mut pieces: Vec<(Rational, Rational)> = Vec::new();
        for w in self.breaks.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let ha = &a.1 - &a.0;
            let hb = &b.1 - &b.0;
            if ha.is_zero() && hb.is_zero() {
                pieces.push((a.0.clone(), b.0.clone()));
            } else if ha.is_zero() {
                pieces.push((a.0.clone(), a.0.clone()));
            } else if hb.is_zero() {
                pieces.push((b.0.clone(), b.0.clone()));
            } else if ha.is_positive() != hb.is_positive() {
                // f(x) - x changes sign inside the segment
                let t = &ha / (&ha - &hb);
                let x = &a.0 + t * (&b.0 - &a.0);
                pieces.push((x.clone(), x));
            }
        }
        let mut intervals: Vec<(Rational, Rational)> = Vec::new();
        for (lo, hi) in pieces {
            match intervals.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => intervals.push((lo, hi)),
            }
        }
        FixedSet { intervals }
    }
}

impl Mul for &PlElement {
    type Output = PlElement;

    /// Group product `self · rhs = self ∘ rhs`. Panics on base mismatch.
    fn mul(self, rhs: &PlElement) -> PlElement {
        self.compose(rhs).expect("base mismatch in product")
    }
}

impl fmt::Display for PlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})[", self.base)?;
        for (i, (x, y)) in self.breaks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Fixed points of an element as sorted, disjoint closed intervals; isolated
/// points appear as `[x, x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSet {
    intervals: Vec<(Rational, Rational)>,
}

impl FixedSet {
    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo <= x && x <= hi)
    }

    /// True if some fixed point lies strictly between `lo` and `hi`.
    pub fn meets_open(&self, lo: &Rational, hi: &Rational) -> bool {
        self.intervals.iter().any(|(a, b)| a < hi && b > lo)
    }

    /// Image of every interval under an increasing map.
    pub fn map(&self, f: &PlElement) -> FixedSet {
        FixedSet {
            intervals: self
                .intervals
                .iter()
                .map(|(lo, hi)| (f.eval_unchecked(lo), f.eval_unchecked(hi)))
                .collect(),
        }
    }
}
