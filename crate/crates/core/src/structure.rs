//! Subgroups `F′ ⊂ D ⊂ F(N)` and the constructions built on them: the
//! identity-region bounds ε and ε̄, conjugacy witnesses, commuting pairs,
//! the abelianization onto Z², the decomposition `F(N) = D ⋊ Z`, and the
//! central sequence supported near 1.

use std::collections::HashSet;
use std::ops::Add;

use serde::Serialize;
use thiserror::Error;

use crate::construct::{make_a, scaling_lemma, shift_element, ADParams, ConstructError};
use crate::element::{ElementError, PlElement};
use crate::grouprep::AlgebraElement;
use crate::nadic::{check_base, NAdicError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("operation is undefined for the identity")]
    Identity,
    #[error("element is not the identity near 0")]
    NotIdentityNearZero,
    #[error("element is not the identity near 1")]
    NotIdentityNearOne,
    #[error("element {0} is not in D")]
    NotInD(PlElement),
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("central sequence index must be at least 1, got {0}")]
    IndexTooSmall(u32),
    #[error("witness conjugates collided: only {distinct} of {count} distinct")]
    WitnessCollision { distinct: usize, count: usize },
    #[error("postcondition failed: {0}")]
    Postcondition(&'static str),
}

impl From<NAdicError> for StructureError {
    fn from(err: NAdicError) -> Self {
        StructureError::Construct(err.into())
    }
}

type Result<T> = std::result::Result<T, StructureError>;

/// Identity near 1.
pub fn member_d(f: &PlElement) -> bool {
    f.is_identity_near_one()
}

/// Identity near both 0 and 1.
pub fn member_fprime(f: &PlElement) -> bool {
    f.is_identity_near_zero() && f.is_identity_near_one()
}

/// Largest `ε` with `g = id` on `[0, ε]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonLower(pub Rational);

/// Smallest `ε̄` with `f = id` on `[ε̄, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsilonUpper(pub Rational);

/// For a PL map the identity region near 0 ends at the first breakpoint,
/// since canonical form forces the next slope to differ from 1.
pub fn epsilon_lower(g: &PlElement) -> Result<EpsilonLower> {
    if g.is_identity() {
        return Err(StructureError::Identity);
    }
    if !g.is_identity_near_zero() {
        return Err(StructureError::NotIdentityNearZero);
    }
    Ok(EpsilonLower(g.breaks()[1].0.clone()))
}

pub fn epsilon_upper(f: &PlElement) -> Result<EpsilonUpper> {
    if f.is_identity() {
        return Err(StructureError::Identity);
    }
    if !f.is_identity_near_one() {
        return Err(StructureError::NotIdentityNearOne);
    }
    let b = f.breaks();
    Ok(EpsilonUpper(b[b.len() - 2].0.clone()))
}

/// Checks `ε(h g h⁻¹) = h(ε(g))`.
pub fn check_conjugation_identity(g: &PlElement, h: &PlElement) -> Result<bool> {
    let lhs = epsilon_lower(&g.conjugate_by(h)?)?;
    let rhs = h.evaluate(&epsilon_lower(g)?.0)?;
    Ok(lhs.0 == rhs)
}

/// Checks `ε̄(h g h⁻¹) = h(ε̄(g))`.
pub fn check_conjugation_identity_upper(g: &PlElement, h: &PlElement) -> Result<bool> {
    let lhs = epsilon_upper(&g.conjugate_by(h)?)?;
    let rhs = h.evaluate(&epsilon_upper(g)?.0)?;
    Ok(lhs.0 == rhs)
}

/// Parameters of the conjugacy witness for elements with slope `N^n`,
/// `n > 0`, near 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPlan {
    /// Slope exponent near 0.
    pub n: i64,
    /// `f(x) = N^n x` on `[0, d1]`.
    #[serde(serialize_with = "ser_rational")]
    pub d1: Rational,
    pub p: i64,
    pub alpha: u32,
    pub ks: Vec<u32>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl WitnessPlan {
    /// Smallest `α >= 1` with `1/N^{α+p} < d1` and `N^n/N^{α+p} < 1 - 1/N^α`.
    pub fn new(base: u32, n: i64, d1: Rational, p: i64, count: usize) -> Self {
        let mut alpha = 1u32;
        while !Self::holds(base, n, &d1, p, alpha) {
            alpha += 1;
        }
        let ks = (1..=count as u32).map(|i| alpha + i).collect();
        WitnessPlan {
            n,
            d1,
            p,
            alpha,
            ks,
        }
    }

    fn holds(base: u32, n: i64, d1: &Rational, p: i64, alpha: u32) -> bool {
        let (m1, m2) = Self::margins_for(base, n, d1, p, alpha);
        m1.is_positive() && m2.is_positive()
    }

    fn margins_for(base: u32, n: i64, d1: &Rational, p: i64, alpha: u32) -> (Rational, Rational) {
        let a = i64::from(alpha);
        let m1 = d1 - Rational::power_of(base, -(a + p));
        let m2 =
            Rational::one() - Rational::power_of(base, -a) - Rational::power_of(base, n - a - p);
        (m1, m2)
    }

    /// Slack in both inequalities; both positive for a valid plan.
    pub fn margins(&self, base: u32) -> (Rational, Rational) {
        Self::margins_for(base, self.n, &self.d1, self.p, self.alpha)
    }
}

/// Which branch of the witness construction was used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCase {
    /// Identity near 0: conjugation by `A_{ε,p}` moves `ε` to `ε/N^p`.
    IdentityNearZero {
        epsilon: Rational,
        ps: Vec<i64>,
    },
    /// Negative slope exponent near 0: the plan was built for the inverse.
    NegativeSlope(WitnessPlan),
    PositiveSlope(WitnessPlan),
}

#[derive(Clone, Debug)]
pub struct IccWitness {
    pub case: WitnessCase,
    pub conjugates: Vec<PlElement>,
}

/// `count` pairwise-distinct conjugates of a nontrivial `f`, with `p = 1`.
pub fn icc_witness(f: &PlElement, count: usize) -> Result<IccWitness> {
    icc_witness_with_p(f, count, 1)
}

/// As [`icc_witness`], with the exponent `p ≠ 0` used for the slope branches.
pub fn icc_witness_with_p(f: &PlElement, count: usize, p: i64) -> Result<IccWitness> {
    if f.is_identity() {
        return Err(StructureError::Identity);
    }
    if p == 0 {
        return Err(StructureError::ZeroExponent);
    }
    let base = f.base();
    let (n, _) = f.boundary_slopes();
    let witness = if n == 0 {
        let epsilon = epsilon_lower(f)?.0;
        // d = ε needs ε(1 + N^-p) <= 1
        let mut first = 1i64;
        while ADParams::new(epsilon.clone(), first, base).is_err() {
            first += 1;
        }
        let ps: Vec<i64> = (first..first + count as i64).collect();
        let conjugates = ps
            .iter()
            .map(|&q| {
                let a = make_a(&ADParams::new(epsilon.clone(), q, base)?);
                Ok(f.conjugate_by(&a)?)
            })
            .collect::<Result<Vec<_>>>()?;
        IccWitness {
            case: WitnessCase::IdentityNearZero { epsilon, ps },
            conjugates,
        }
    } else if n < 0 {
        let inner = icc_witness_with_p(&f.inverse(), count, p)?;
        let plan = match inner.case {
            WitnessCase::PositiveSlope(plan) => plan,
            _ => unreachable!("inverse has positive slope exponent near 0"),
        };
        IccWitness {
            case: WitnessCase::NegativeSlope(plan),
            conjugates: inner.conjugates.iter().map(PlElement::inverse).collect(),
        }
    } else {
        let d1 = f.breaks()[1].0.clone();
        let plan = WitnessPlan::new(base, n, d1, p, count);
        let conjugates = plan
            .ks
            .iter()
            .map(|&k| {
                let a = make_a(&ADParams::new(
                    Rational::power_of(base, -i64::from(k)),
                    p,
                    base,
                )?);
                // A⁻¹ f A
                Ok(f.conjugate_by(&a.inverse())?)
            })
            .collect::<Result<Vec<_>>>()?;
        IccWitness {
            case: WitnessCase::PositiveSlope(plan),
            conjugates,
        }
    };
    let distinct = witness.conjugates.iter().collect::<HashSet<_>>().len();
    if distinct != count {
        return Err(StructureError::WitnessCollision { distinct, count });
    }
    Ok(witness)
}

#[derive(Clone, Debug)]
pub struct CommutingPair {
    pub g: PlElement,
    pub h: PlElement,
    pub delta: Rational,
    pub eps1: Rational,
    pub eps2: Rational,
}

/// Nontrivial distinct `g, h ∈ F′` commuting with every element of `set ⊂ D`
/// but not with each other.
pub fn commuting_pair(base: u32, set: &[PlElement]) -> Result<CommutingPair> {
    check_base(base)?;
    let mut delta: Option<Rational> = None;
    for e in set {
        if e.base() != base {
            return Err(ElementError::BaseMismatch {
                left: base,
                right: e.base(),
            }
            .into());
        }
        if !member_d(e) {
            return Err(StructureError::NotInD(e.clone()));
        }
        if e.is_identity() {
            continue;
        }
        let eu = epsilon_upper(e)?.0;
        if delta.as_ref().is_none_or(|d| eu > *d) {
            delta = Some(eu);
        }
    }
    let delta = delta.unwrap_or_else(|| Rational::one() - Rational::power_of(base, -1));
    let mut k = 1i64;
    while &delta + Rational::power_of(base, 1 - k) >= Rational::one() {
        k += 1;
    }
    let eps1 = &delta + Rational::power_of(base, -k);
    let eps2 = &delta + Rational::power_of(base, 1 - k);
    let g = scaling_lemma(base, &delta, &eps1, None)?;
    let h = scaling_lemma(base, &delta, &eps2, None)?;

    for e in set {
        if !g.commutes_with(e)? || !h.commutes_with(e)? {
            return Err(StructureError::Postcondition(
                "pair must commute with the set",
            ));
        }
    }
    if g == h || g.commutes_with(&h)? {
        return Err(StructureError::Postcondition("pair must not commute"));
    }
    Ok(CommutingPair {
        g,
        h,
        delta,
        eps1,
        eps2,
    })
}

/// Image `(a, b)` in Z²: slopes `N^a` near 0 and `N^b` near 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct AbelianImage {
    pub a: i64,
    pub b: i64,
}

impl Add for AbelianImage {
    type Output = AbelianImage;
    fn add(self, rhs: AbelianImage) -> AbelianImage {
        AbelianImage {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

pub fn abelianization(f: &PlElement) -> AbelianImage {
    let (a, b) = f.boundary_slopes();
    AbelianImage { a, b }
}

/// True iff `f ∈ F′` and `φ(f) = (0,0)` agree.
pub fn kernel_is_fprime_check(f: &PlElement) -> bool {
    (abelianization(f) == AbelianImage::default()) == member_fprime(f)
}

/// Writes `f = d · s^{-n}` with `d ∈ D`, `s` the shift element.
pub fn semidirect_decompose(f: &PlElement) -> Result<(PlElement, i64)> {
    let s = shift_element(f.base())?;
    let (_, b) = f.boundary_slopes();
    let n = -b;
    let d = f.compose(&s.pow(n))?;
    if !member_d(&d) {
        return Err(StructureError::Postcondition(
            "decomposed factor must lie in D",
        ));
    }
    if d.compose(&s.pow(-n))? != *f {
        return Err(StructureError::Postcondition(
            "decomposition must recompose",
        ));
    }
    Ok((d, n))
}

/// `α(n)(f) = s^n f s^{-n}` for `f ∈ D`.
pub fn alpha_action(n: i64, f: &PlElement) -> Result<PlElement> {
    if !member_d(f) {
        return Err(StructureError::NotInD(f.clone()));
    }
    let s = shift_element(f.base())?;
    let out = f.conjugate_by(&s.pow(n))?;
    if !member_d(&out) {
        return Err(StructureError::Postcondition("action must preserve D"));
    }
    Ok(out)
}

/// Term `n` of the central sequence: `a_n` supported on `(d_n, d̄_n)` with
/// `d̄_n = 1 - N^-(n+1)` and `d_n = 1 - 2 N^-(n+1)`.
#[derive(Clone, Debug)]
pub struct CentralSequenceSpec {
    pub index: u32,
    pub lower: Rational,
    pub upper: Rational,
    pub element: PlElement,
}

pub fn central_sequence(base: u32, index: u32) -> Result<CentralSequenceSpec> {
    check_base(base)?;
    if index < 1 {
        return Err(StructureError::IndexTooSmall(index));
    }
    let gap = Rational::power_of(base, -(i64::from(index) + 1));
    let upper = Rational::one() - &gap;
    let lower = &upper - &gap;
    let element = scaling_lemma(base, &lower, &upper, None)?;
    Ok(CentralSequenceSpec {
        index,
        lower,
        upper,
        element,
    })
}

/// First index whose `d_n` is at least every `ε̄` of the nontrivial elements
/// of `set ⊂ D`; from there on `a_n` commutes with all of `set`.
pub fn central_index(base: u32, set: &[PlElement]) -> Result<u32> {
    check_base(base)?;
    let mut target = Rational::zero();
    for e in set {
        if !member_d(e) {
            return Err(StructureError::NotInD(e.clone()));
        }
        if !e.is_identity() {
            let eu = epsilon_upper(e)?.0;
            if eu > target {
                target = eu;
            }
        }
    }
    let mut index = 1u32;
    loop {
        let gap = Rational::power_of(base, -(i64::from(index) + 1));
        let lower = Rational::one() - &gap - &gap;
        if lower >= target {
            return Ok(index);
        }
        index += 1;
    }
}

/// True when `α^m(a_n) ≠ a_n`, confirmed by `|δ_{α^m(a_n)} - δ_{a_n}|₂² = 2`.
pub fn centrally_free_check(base: u32, m: i64, index: u32) -> Result<bool> {
    if m == 0 {
        return Err(StructureError::ZeroExponent);
    }
    let a = central_sequence(base, index)?.element;
    let moved = alpha_action(m, &a)?;
    let diff = AlgebraElement::basis(moved.clone()).try_sub(&AlgebraElement::basis(a.clone()))?;
    Ok(moved != a && diff.two_norm_sq() == Rational::from_integer(2))
}
