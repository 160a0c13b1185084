//! Named elements and element families of F(N).
//!
//! Standard generators: `x_0 = A_{1/N, N-1}`, and for `i >= 1`, `x_i` is a
//! copy of `x_0` squeezed onto `[1 - N^-i, 1]` and extended by the identity.
//! The last segment of `x_0` is `y = 1 - (1 - x) N^{N-1}` on
//! `[1 - N^-N, 1]`, so conjugating `x_j` by `x_i` (`i < j`) rescales its
//! support from `[1 - N^-j, 1]` to `[1 - N^-(j+N-1), 1]`, which yields
//! `x_j x_i = x_i x_{j+N-1}` with the product `g·h = g ∘ h`.

use thiserror::Error;

use crate::element::{Breakpoint, ElementError, PlElement};
use crate::nadic::{check_base, is_nadic, is_power_of_n, NAdicError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    NAdic(#[from] NAdicError),
    #[error("A-family parameter d = {d} must lie in (0,1)")]
    DOutOfRange { d: Rational },
    #[error(
        "A-family parameters d = {d}, p = {p} violate d/N^p < 1 or d + d/N^p <= 1 (N = {base})"
    )]
    ADConstraint { d: Rational, p: i64, base: u32 },
    #[error("exponent p must be nonzero")]
    ZeroExponent,
    #[error("chart [{lo}, {hi}] must satisfy 0 <= lo < hi <= 1")]
    ChartBounds { lo: Rational, hi: Rational },
    #[error("chart width {width} is not a power of {base}")]
    WidthNotPower { width: Rational, base: u32 },
    #[error("scaling interval ({lo}, {hi}) must satisfy 0 < lo < hi < 1")]
    ScalingBounds { lo: Rational, hi: Rational },
    #[error("f1 parameter d = {d} must be 1/N^p with p > 0 and d(N+1) < 1 (N = {base})")]
    F1Constraint { d: Rational, base: u32 },
}

/// Parameters `(d, p)` of the three-branch map `A_{d,p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ADParams {
    d: Rational,
    p: i64,
    base: u32,
}

impl ADParams {
    /// `d` must be N-adic in (0,1) with `d + d/N^p <= 1`, so the middle
    /// branch has non-negative length; this also gives `d/N^p < 1`.
    pub fn new(d: Rational, p: i64, base: u32) -> Result<Self, ConstructError> {
        check_base(base)?;
        if !is_nadic(&d, base) {
            return Err(NAdicError::NotNAdic { value: d, base }.into());
        }
        if !d.is_positive() || d >= Rational::one() {
            return Err(ConstructError::DOutOfRange { d });
        }
        let image = &d / Rational::power_of(base, p);
        if image >= Rational::one() || &d + &image > Rational::one() {
            return Err(ConstructError::ADConstraint { d, p, base });
        }
        Ok(ADParams { d, p, base })
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// `d / N^p`, the image of `d`.
    fn shrunk(&self) -> Rational {
        &self.d / Rational::power_of(self.base, self.p)
    }
}

/// Drops consecutive duplicate points, as when a chart touches 0 or 1.
fn dedup_points(mut pts: Vec<Breakpoint>) -> Vec<Breakpoint> {
    pts.dedup();
    pts
}

/// `A_{d,p}`: slope `N^-p` on `[0,d]`, slope 1 on `[d, 1 - d/N^p]`, slope
/// `N^p` on `[1 - d/N^p, 1]`.
pub fn make_a(params: &ADParams) -> PlElement {
    let one = Rational::one();
    let shrunk = params.shrunk();
    let pts = vec![
        (Rational::zero(), Rational::zero()),
        (params.d.clone(), shrunk.clone()),
        (&one - &shrunk, &one - &params.d),
        (one.clone(), one),
    ];
    PlElement::from_valid(params.base, dedup_points(pts))
}

/// Closed form of `A_{d,p}^{-1}`: `x N^p` on `[0, d/N^p]`, `x + d - d/N^p`
/// on `[d/N^p, 1 - d]`, `(x + N^p - 1)/N^p` on `[1 - d, 1]`.
pub fn make_a_inverse(params: &ADParams) -> PlElement {
    let one = Rational::one();
    let scale = Rational::power_of(params.base, params.p);
    let first = |x: &Rational| x * &scale;
    let middle = |x: &Rational| x + &params.d - params.shrunk();
    let last = |x: &Rational| (x + &scale - &one) / &scale;
    let b1 = params.shrunk();
    let b2 = &one - &params.d;
    debug_assert_eq!(first(&b1), middle(&b1));
    debug_assert_eq!(middle(&b2), last(&b2));
    let pts = vec![
        (Rational::zero(), first(&Rational::zero())),
        (b1.clone(), first(&b1)),
        (b2.clone(), last(&b2)),
        (one.clone(), last(&one)),
    ];
    PlElement::from_valid(params.base, dedup_points(pts))
}

/// The affine chart `r(x) = (x - lo)/(hi - lo)` from `[lo, hi]` onto `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    lo: Rational,
    hi: Rational,
    base: u32,
}

impl AffineChart {
    pub fn new(lo: Rational, hi: Rational, base: u32) -> Result<Self, ConstructError> {
        check_base(base)?;
        for v in [&lo, &hi] {
            if !is_nadic(v, base) {
                return Err(NAdicError::NotNAdic {
                    value: v.clone(),
                    base,
                }
                .into());
            }
        }
        if lo.is_negative() || lo >= hi || hi > Rational::one() {
            return Err(ConstructError::ChartBounds { lo, hi });
        }
        let width = &hi - &lo;
        if is_power_of_n(&width, base)?.is_none() {
            return Err(ConstructError::WidthNotPower { width, base });
        }
        Ok(AffineChart { lo, hi, base })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn to_unit(&self, x: &Rational) -> Rational {
        (x - &self.lo) / self.width()
    }

    pub fn from_unit(&self, t: &Rational) -> Rational {
        &self.lo + t * self.width()
    }

    /// `r⁻¹ ∘ f ∘ r` on `[lo, hi]`, identity elsewhere.
    pub fn embed(&self, f: &PlElement) -> Result<PlElement, ConstructError> {
        if f.base() != self.base {
            return Err(ElementError::BaseMismatch {
                left: self.base,
                right: f.base(),
            }
            .into());
        }
        let mut pts = Vec::with_capacity(f.breaks().len() + 2);
        pts.push((Rational::zero(), Rational::zero()));
        pts.extend(
            f.breaks()
                .iter()
                .map(|(x, y)| (self.from_unit(x), self.from_unit(y))),
        );
        pts.push((Rational::one(), Rational::one()));
        Ok(PlElement::from_valid(self.base, dedup_points(pts)))
    }
}

/// Default fixed-point-free model map used by [`scaling_lemma`]: `d = 1/N, p = 1`.
pub fn default_inner(base: u32) -> Result<ADParams, ConstructError> {
    ADParams::new(Rational::new(1, base), 1, base)
}

/// An element that is the identity on `[0,lo]` and `[hi,1]` and has no fixed
/// point in `(lo,hi)`: the conjugate of `A_{d,p}` into the chart `[lo,hi]`.
/// `inner` defaults to [`default_inner`].
pub fn scaling_lemma(
    base: u32,
    lo: &Rational,
    hi: &Rational,
    inner: Option<&ADParams>,
) -> Result<PlElement, ConstructError> {
    if !lo.is_positive() || lo >= hi || *hi >= Rational::one() {
        return Err(ConstructError::ScalingBounds {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    let params = match inner {
        Some(p) => p.clone(),
        None => default_inner(base)?,
    };
    if params.p() == 0 {
        return Err(ConstructError::ZeroExponent);
    }
    let chart = AffineChart::new(lo.clone(), hi.clone(), base)?;
    chart.embed(&make_a(&params))
}

fn f1_breaks(d: &Rational, base: u32) -> Result<Vec<Breakpoint>, ConstructError> {
    check_base(base)?;
    let n = Rational::from_integer(base);
    let on_text = d.numer() == &1.into() && matches!(is_power_of_n(d, base), Ok(Some(p)) if p < 0);
    let end = d * (&n + Rational::one());
    if !on_text || end >= Rational::one() {
        return Err(ConstructError::F1Constraint { d: d.clone(), base });
    }
    Ok(vec![
        (Rational::zero(), Rational::zero()),
        (d.clone(), &n * d),
        (end.clone(), end),
        (Rational::one(), Rational::one()),
    ])
}

/// `f₁`: slope N on `[0,d]`, slope 1/N on `[d, d(N+1)]`, identity after.
/// Only `d = 1/N^p` with `p > 0` and `d(N+1) < 1` is accepted.
pub fn make_f1(d: &Rational, base: u32) -> Result<PlElement, ConstructError> {
    Ok(PlElement::from_valid(base, f1_breaks(d, base)?))
}

/// `f₂(x) = 1 - f₁(1 - x)`: identity near 0, slope N on the last segment.
pub fn make_f2(d: &Rational, base: u32) -> Result<PlElement, ConstructError> {
    let one = Rational::one();
    let pts = f1_breaks(d, base)?
        .into_iter()
        .rev()
        .map(|(x, y)| (&one - x, &one - y))
        .collect();
    Ok(PlElement::from_valid(base, pts))
}

/// The shift element `s = f₂(1/N²)`: trivial first piece, last slope N.
pub fn shift_element(base: u32) -> Result<PlElement, ConstructError> {
    let d = Rational::power_of(check_base(base)?, -2);
    make_f2(&d, base)
}

/// Standard generator `x_i` of F(`base`); see the module docs.
pub fn standard_generator(base: u32, i: u32) -> Result<PlElement, ConstructError> {
    check_base(base)?;
    let x0 = make_a(&ADParams::new(
        Rational::new(1, base),
        i64::from(base) - 1,
        base,
    )?);
    if i == 0 {
        return Ok(x0);
    }
    let one = Rational::one();
    let chart = AffineChart::new(&one - Rational::power_of(base, -i64::from(i)), one, base)?;
    chart.embed(&x0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ad(d: &str, p: i64, base: u32) -> ADParams {
        ADParams::new(q(d), p, base).unwrap()
    }

    #[test]
    fn make_a_examples() {
        let a = make_a(&ad("1/2", 1, 2));
        let expect: Vec<_> = [("0", "0"), ("1/2", "1/4"), ("3/4", "1/2"), ("1", "1")]
            .iter()
            .map(|(x, y)| (q(x), q(y)))
            .collect();
        assert_eq!(a.breaks(), expect.as_slice());
        assert_eq!(a.evaluate(&q("3/4")).unwrap(), q("1/2"));
        assert!(a
            .compose(&make_a_inverse(&ad("1/2", 1, 2)))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn make_a_middle_branch_formula() {
        // x - d + d/N^p on the middle branch
        let params = ad("1/9", 2, 3);
        let a = make_a(&params);
        for x in ["1/9", "1/3", "2/3", "80/81"] {
            let x = q(x);
            assert_eq!(a.evaluate(&x).unwrap(), &x - q("1/9") + q("1/81"));
        }
    }

    #[test]
    fn make_a_slope_pattern() {
        for (d, p, n) in [
            ("1/2", 1, 2),
            ("1/4", -1, 2),
            ("2/9", 2, 3),
            ("1/25", -1, 5),
        ] {
            let params = ad(d, p, n);
            assert_eq!(make_a(&params).slope_exponents(), vec![-p, 0, p]);
        }
    }

    #[test]
    fn degenerate_middle_branch_is_never_nadic() {
        // d + d/N^p = 1 forces d = N^p / (N^p + 1)
        for n in 2u32..6 {
            for p in [-3i64, -2, -1, 1, 2, 3] {
                for k in 0..6u32 {
                    let den = i64::from(n).pow(k);
                    for m in 1..den {
                        assert!(ADParams::new(Rational::new(m, den), p, n)
                            .map(|a| a.d() + a.shrunk() != Rational::one())
                            .unwrap_or(true));
                    }
                }
            }
        }
    }

    #[test]
    fn ad_params_constraints() {
        assert!(matches!(
            ADParams::new(q("3/4"), 1, 2),
            Err(ConstructError::ADConstraint { .. })
        ));
        assert!(matches!(
            ADParams::new(q("1/2"), -1, 2),
            Err(ConstructError::ADConstraint { .. })
        ));
        assert!(matches!(
            ADParams::new(q("1/3"), 1, 2),
            Err(ConstructError::NAdic(NAdicError::NotNAdic { .. }))
        ));
        assert!(matches!(
            ADParams::new(q("0"), 1, 2),
            Err(ConstructError::DOutOfRange { .. })
        ));
        assert!(ADParams::new(q("1/3"), -1, 3).is_err());
        assert!(ADParams::new(q("1/9"), -1, 3).is_ok());
    }

    #[test]
    fn make_a_inverse_examples() {
        let params = ad("1/2", 1, 2);
        let inv = make_a_inverse(&params);
        assert_eq!(inv.evaluate(&q("1/4")).unwrap(), q("1/2"));
        assert_eq!(inv.evaluate(&q("1")).unwrap(), q("1"));
        assert_eq!(inv, make_a(&params).inverse());
    }

    #[test]
    fn scaling_lemma_examples() {
        let inner = ad("1/2", 1, 2);
        let f = scaling_lemma(2, &q("1/4"), &q("1/2"), Some(&inner)).unwrap();
        assert_eq!(f.evaluate(&q("3/8")).unwrap(), q("5/16"));
        // r(3/8) = 1/2, A(1/2) = 1/4, r^-1(1/4) = 5/16
        let chart = AffineChart::new(q("1/4"), q("1/2"), 2).unwrap();
        let a = make_a(&inner);
        let via_chart = chart.from_unit(&a.evaluate(&chart.to_unit(&q("3/8"))).unwrap());
        assert_eq!(via_chart, q("5/16"));
        assert_eq!(f.evaluate(&q("1/4")).unwrap(), q("1/4"));
        let mid = q("3/8");
        assert_ne!(f.evaluate(&mid).unwrap(), mid);
        assert_eq!(
            f.fixed_set().intervals(),
            &[(q("0"), q("1/4")), (q("1/2"), q("1"))]
        );
        for k in 1..32 {
            let x = q("1/4") + Rational::new(k, 128);
            assert_ne!(f.evaluate(&x).unwrap(), x);
        }
    }

    #[test]
    fn scaling_lemma_errors() {
        assert!(matches!(
            scaling_lemma(2, &q("1/4"), &q("5/8"), None),
            Err(ConstructError::WidthNotPower { .. })
        ));
        assert!(matches!(
            scaling_lemma(2, &q("0"), &q("1/2"), None),
            Err(ConstructError::ScalingBounds { .. })
        ));
        assert!(matches!(
            scaling_lemma(2, &q("1/2"), &q("1"), None),
            Err(ConstructError::ScalingBounds { .. })
        ));
        assert!(matches!(
            scaling_lemma(2, &q("1/2"), &q("1/4"), None),
            Err(ConstructError::ScalingBounds { .. })
        ));
        let f = scaling_lemma(3, &q("1/3"), &q("4/9"), None).unwrap();
        assert_eq!(
            f.fixed_set().intervals(),
            &[(q("0"), q("1/3")), (q("4/9"), q("1"))]
        );
    }

    #[test]
    fn f1_examples() {
        let f1 = make_f1(&q("1/4"), 2).unwrap();
        assert_eq!(f1.evaluate(&q("1/4")).unwrap(), q("1/2"));
        assert_eq!(f1.evaluate(&q("3/4")).unwrap(), q("3/4"));
        // middle branch x/N + Nd - d/N
        assert_eq!(
            f1.evaluate(&q("1/2")).unwrap(),
            q("1/4") + q("1/2") - q("1/8")
        );
        assert_eq!(f1.evaluate(&q("1/2")).unwrap(), q("5/8"));
        assert_eq!(f1.boundary_slopes(), (1, 0));
        assert_eq!(f1.inverse().evaluate(&q("1/2")).unwrap(), q("1/4"));
        assert!(make_f1(&q("1/2"), 2).is_err());
        assert!(make_f1(&q("3/8"), 2).is_err());
        assert!(make_f1(&q("1"), 2).is_err());
        assert!(make_f1(&q("1/3"), 3).is_err());
        assert!(make_f1(&q("1/9"), 3).is_ok());
    }

    #[test]
    fn f2_examples() {
        let f2 = make_f2(&q("1/4"), 2).unwrap();
        assert_eq!(f2.evaluate(&q("1/16")).unwrap(), q("1/16"));
        assert_eq!(f2.boundary_slopes(), (0, 1));
        assert_eq!(f2.evaluate(&q("1")).unwrap(), q("1"));
        let f1 = make_f1(&q("1/4"), 2).unwrap();
        for k in 0..=32 {
            let x = Rational::new(k, 32);
            let mirrored = Rational::one() - f1.evaluate(&(Rational::one() - &x)).unwrap();
            assert_eq!(f2.evaluate(&x).unwrap(), mirrored);
        }
    }

    #[test]
    fn shift_examples() {
        let s = shift_element(2).unwrap();
        assert_eq!(s.boundary_slopes(), (0, 1));
        assert!(s.is_identity_near_zero());
        assert_eq!(s.evaluate(&q("1/1024")).unwrap(), q("1/1024"));
        let s3 = shift_element(3).unwrap();
        assert_eq!(PlElement::new(3, s3.breaks().to_vec()).unwrap(), s3);
        assert_eq!(s3.boundary_slopes(), (0, 1));
    }

    #[test]
    fn generators_and_first_relation() {
        let x0 = standard_generator(2, 0).unwrap();
        assert!(!x0.is_identity());
        assert_eq!(x0, make_a(&ad("1/2", 1, 2)));
        let x1 = standard_generator(2, 1).unwrap();
        let x2 = standard_generator(2, 2).unwrap();
        assert_eq!(&x1 * &x0, &x0 * &x2);
    }

    #[test]
    fn chart_embed_rejects_base_mismatch() {
        let chart = AffineChart::new(q("1/2"), q("1"), 2).unwrap();
        assert!(chart.embed(&PlElement::identity(3)).is_err());
        assert!(matches!(
            AffineChart::new(q("1/2"), q("1/2"), 2),
            Err(ConstructError::ChartBounds { .. })
        ));
    }
}
