//! Seeded verification suites behind `thompson-fn check <suite>`.
//!
//! Each suite draws its cases from a ChaCha stream seeded with
//! [`SuiteOptions::seed`], so a report is a pure function of its inputs.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::construct::{make_f1, make_f2, scaling_lemma, standard_generator};
use crate::document::{CheckRecord, ReportDocument};
use crate::element::PlElement;
use crate::grouprep::{commutator_norm_sq, AlgebraElement};
use crate::nadic::{check_base, NAdicError, Rational};
use crate::sample::{
    random_d, random_element_upto, random_fprime, random_nontrivial, random_scaling_interval,
};
use crate::structure::{
    abelianization, alpha_action, central_index, central_sequence, centrally_free_check,
    check_conjugation_identity, check_conjugation_identity_upper, commuting_pair, epsilon_lower,
    icc_witness, kernel_is_fprime_check, member_d, member_fprime, semidirect_decompose,
    WitnessCase,
};

pub const SUITES: &[&str] = &[
    "eq1",
    "icc",
    "lemma32",
    "prop33",
    "relations",
    "phi",
    "semidirect",
    "central",
];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; expected one of {SUITES:?}")]
    Unknown(String),
    #[error(transparent)]
    Base(#[from] NAdicError),
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub base: u32,
    pub seed: u64,
    /// Case count; each suite has its own default.
    pub samples: Option<usize>,
    /// Largest generator index for the relation suite.
    pub max_j: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            base: 2,
            seed: 0,
            samples: None,
            max_j: 6,
        }
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<ReportDocument, SuiteError> {
    check_base(opts.base)?;
    let default_samples = match name {
        "eq1" | "phi" | "semidirect" => 500,
        "icc" | "prop33" => 100,
        "lemma32" => 200,
        "relations" | "central" => 0,
        other => return Err(SuiteError::Unknown(other.to_string())),
    };
    let samples = opts.samples.unwrap_or(default_samples);
    let mut inputs = BTreeMap::new();
    inputs.insert("base".to_string(), opts.base.to_string());
    inputs.insert("seed".to_string(), opts.seed.to_string());
    match name {
        "relations" => inputs.insert("maxj".to_string(), opts.max_j.to_string()),
        "central" => None,
        _ => inputs.insert("samples".to_string(), samples.to_string()),
    };
    let mut report = ReportDocument::new(format!("check {name}"), inputs);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let base = opts.base;
    match name {
        "eq1" => eq1(&mut report, base, samples, &mut rng),
        "icc" => icc(&mut report, base, samples, &mut rng),
        "lemma32" => lemma32(&mut report, base, samples, &mut rng),
        "prop33" => prop33(&mut report, base, samples, &mut rng),
        "relations" => relations(&mut report, base, opts.max_j),
        "phi" => phi(&mut report, base, samples, &mut rng),
        "semidirect" => semidirect(&mut report, base, samples, &mut rng),
        "central" => central(&mut report, base, &mut rng),
        _ => unreachable!(),
    }
    Ok(report)
}

/// Counts passing cases and keeps the first failure.
struct Tally {
    name: &'static str,
    total: usize,
    failed: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            total: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, case: usize, ok: Result<bool, String>) {
        self.total += 1;
        let failure = match ok {
            Ok(true) => None,
            Ok(false) => Some(format!("case {case}: check returned false")),
            Err(e) => Some(format!("case {case}: {e}")),
        };
        if let Some(msg) = failure {
            self.failed += 1;
            self.first_failure.get_or_insert(msg);
        }
    }

    fn finish(self) -> CheckRecord {
        let mut rec = CheckRecord::new(self.name, self.failed == 0)
            .detail("cases", self.total)
            .detail("failed", self.failed);
        if let Some(msg) = self.first_failure {
            rec = rec.detail("first_failure", msg);
        }
        rec
    }
}

fn eq1<R: Rng>(report: &mut ReportDocument, base: u32, samples: usize, rng: &mut R) {
    let mut lower = Tally::new("epsilon_lower_conjugation");
    let mut upper = Tally::new("epsilon_upper_conjugation");
    for case in 0..samples {
        let g = random_fprime(base, rng);
        let h = random_element_upto(base, 10, rng);
        lower.record(
            case,
            check_conjugation_identity(&g, &h).map_err(|e| e.to_string()),
        );
        upper.record(
            case,
            check_conjugation_identity_upper(&g, &h).map_err(|e| e.to_string()),
        );
    }
    report.push(lower.finish());
    report.push(upper.finish());
}

fn icc<R: Rng>(report: &mut ReportDocument, base: u32, samples: usize, rng: &mut R) {
    let join = |v: &[String]| v.join(",");
    for case in 0..samples {
        let f = random_nontrivial(base, 10, rng);
        let name = format!("case_{case:03}");
        let rec = match icc_witness(&f, 10) {
            Err(e) => CheckRecord::new(name, false).detail("error", e),
            Ok(w) => {
                let c = &w.conjugates;
                let ok =
                    c.len() == 10 && (0..c.len()).all(|i| (i + 1..c.len()).all(|j| c[i] != c[j]));
                let rec = CheckRecord::new(name, ok).detail("conjugates", c.len());
                match &w.case {
                    WitnessCase::IdentityNearZero { epsilon, ps } => rec
                        .detail("branch", "identity_near_zero")
                        .detail("epsilon", epsilon)
                        .detail(
                            "p",
                            join(&ps.iter().map(i64::to_string).collect::<Vec<_>>()),
                        ),
                    WitnessCase::NegativeSlope(plan) | WitnessCase::PositiveSlope(plan) => {
                        let branch = match w.case {
                            WitnessCase::NegativeSlope(_) => "negative_slope",
                            _ => "positive_slope",
                        };
                        let (m1, m2) = plan.margins(base);
                        rec.detail("branch", branch)
                            .detail("n", plan.n)
                            .detail("alpha", plan.alpha)
                            .detail(
                                "k",
                                join(&plan.ks.iter().map(u32::to_string).collect::<Vec<_>>()),
                            )
                            .detail("margin_d1", m1)
                            .detail("margin_one", m2)
                    }
                }
            }
        };
        report.push(rec);
    }
}

fn lemma32<R: Rng>(report: &mut ReportDocument, base: u32, samples: usize, rng: &mut R) {
    let mut tally = Tally::new("scaling_lemma_support");
    for case in 0..samples {
        let (lo, hi) = random_scaling_interval(base, rng);
        let result = scaling_lemma(base, &lo, &hi, None)
            .map_err(|e| e.to_string())
            .map(|f| {
                member_fprime(&f)
                    && f.fixed_set().intervals()
                        == [
                            (Rational::zero(), lo.clone()),
                            (hi.clone(), Rational::one()),
                        ]
            });
        tally.record(case, result);
    }
    report.push(tally.finish());
}

fn prop33<R: Rng>(report: &mut ReportDocument, base: u32, samples: usize, rng: &mut R) {
    for case in 0..samples {
        let size = rng.random_range(0..=5usize);
        let set: Vec<PlElement> = (0..size).map(|_| random_d(base, 8, rng)).collect();
        let name = format!("set_{case:03}");
        let rec = match commuting_pair(base, &set) {
            Err(e) => CheckRecord::new(name, false).detail("error", e),
            Ok(pair) => {
                let commute = set.iter().all(|e| {
                    pair.g.commutes_with(e).unwrap_or(false)
                        && pair.h.commutes_with(e).unwrap_or(false)
                });
                let gh = &pair.g * &pair.h;
                let hg = &pair.h * &pair.g;
                let norm = commutator_norm_sq(
                    &AlgebraElement::basis(pair.g.clone()),
                    &AlgebraElement::basis(pair.h.clone()),
                )
                .map(|n| n == Rational::from_integer(2))
                .unwrap_or(false);
                let ok = commute
                    && pair.g != pair.h
                    && !pair.g.is_identity()
                    && !pair.h.is_identity()
                    && member_fprime(&pair.g)
                    && member_fprime(&pair.h)
                    && gh != hg
                    && norm;
                CheckRecord::new(name, ok)
                    .detail("set_size", size)
                    .detail("delta", &pair.delta)
                    .detail("eps1", &pair.eps1)
                    .detail("eps2", &pair.eps2)
            }
        };
        report.push(rec);
    }
}

fn relations(report: &mut ReportDocument, base: u32, max_j: u32) {
    for j in 1..=max_j {
        for i in 0..j {
            let name = format!("x{j}*x{i}=x{i}*x{}", j + base - 1);
            let ok = (|| {
                let xi = standard_generator(base, i)?;
                let xj = standard_generator(base, j)?;
                let xk = standard_generator(base, j + base - 1)?;
                Ok::<_, crate::construct::ConstructError>(&xj * &xi == &xi * &xk)
            })();
            report.push(match ok {
                Ok(ok) => CheckRecord::new(name, ok),
                Err(e) => CheckRecord::new(name, false).detail("error", e),
            });
        }
    }
}

fn phi<R: Rng>(report: &mut ReportDocument, base: u32, samples: usize, rng: &mut R) {
    let mut hom = Tally::new("homomorphism");
    let mut kernel = Tally::new("kernel_equals_fprime");
    for case in 0..samples {
        let f = random_element_upto(base, 10, rng);
        let g = random_element_upto(base, 10, rng);
        hom.record(
            case,
            Ok(abelianization(&(&f * &g)) == abelianization(&f) + abelianization(&g)),
        );
        kernel.record(case, Ok(kernel_is_fprime_check(&f)));
    }
    report.push(hom.finish());
    report.push(kernel.finish());

    let d = Rational::power_of(base, -2);
    let rec = match (make_f1(&d, base), make_f2(&d, base)) {
        (Ok(f1), Ok(f2)) => {
            let (u, v) = (abelianization(&f1), abelianization(&f2));
            let det = u.a * v.b - u.b * v.a;
            CheckRecord::new("surjective", det.abs() == 1)
                .detail("phi_f1", format!("({},{})", u.a, u.b))
                .detail("phi_f2", format!("({},{})", v.a, v.b))
                .detail("determinant", det)
        }
        (Err(e), _) | (_, Err(e)) => CheckRecord::new("surjective", false).detail("error", e),
    };
    report.push(rec);
}

fn semidirect<R: Rng>(report: &mut ReportDocument, base: u32, samples: usize, rng: &mut R) {
    let mut round = Tally::new("round_trip");
    for case in 0..samples {
        let f = random_element_upto(base, 10, rng);
        let ok = semidirect_decompose(&f)
            .and_then(|(d, n)| {
                let s = crate::construct::shift_element(base)?;
                let again = semidirect_decompose(&(&d * &s.pow(-n)))?;
                Ok(member_d(&d) && &d * &s.pow(-n) == f && again == (d, n))
            })
            .map_err(|e| e.to_string());
        round.record(case, ok);
    }
    report.push(round.finish());

    let mut stays = Tally::new("action_preserves_d");
    for case in 0..samples.min(200) {
        let f = random_d(base, 8, rng);
        let n = rng.random_range(-3..=3i64);
        let ok = alpha_action(n, &f)
            .map(|g| member_d(&g))
            .map_err(|e| e.to_string());
        stays.record(case, ok);
    }
    report.push(stays.finish());

    let mut law = Tally::new("action_law");
    for case in 0..samples.min(100) {
        let f = random_d(base, 8, rng);
        let m = rng.random_range(-3..=3i64);
        let n = rng.random_range(-3..=3i64);
        let ok = alpha_action(n, &f)
            .and_then(|g| alpha_action(m, &g))
            .and_then(|lhs| Ok(lhs == alpha_action(m + n, &f)?))
            .map_err(|e| e.to_string());
        law.record(case, ok);
    }
    report.push(law.finish());
}

fn central<R: Rng>(report: &mut ReportDocument, base: u32, rng: &mut R) {
    let set: Vec<PlElement> = (0..3).map(|_| random_d(base, 8, rng)).collect();
    let start = match central_index(base, &set) {
        Ok(i) => i,
        Err(e) => {
            report.push(CheckRecord::new("central_index", false).detail("error", e));
            return;
        }
    };
    let mut commute = Tally::new("eventual_commutation");
    for n in start..=start + 10 {
        let ok = central_sequence(base, n)
            .map_err(|e| e.to_string())
            .map(|c| {
                set.iter().all(|e| {
                    commutator_norm_sq(
                        &AlgebraElement::basis(e.clone()),
                        &AlgebraElement::basis(c.element.clone()),
                    )
                    .map(|v| v.is_zero())
                    .unwrap_or(false)
                })
            });
        commute.record(n as usize, ok);
    }
    report.push(commute.finish().detail("index0", start));

    let mut eps = Tally::new("epsilon_of_a_n");
    for n in 1..=20u32 {
        let ok = central_sequence(base, n)
            .map_err(|e| e.to_string())
            .and_then(|c| {
                epsilon_lower(&c.element)
                    .map(|e| e.0 == c.lower)
                    .map_err(|e| e.to_string())
            });
        eps.record(n as usize, ok);
    }
    report.push(eps.finish());

    let mut free = Tally::new("centrally_free");
    for n in 1..=20u32 {
        for m in (-3..=3i64).filter(|&m| m != 0) {
            free.record(
                n as usize,
                centrally_free_check(base, m, n).map_err(|e| e.to_string()),
            );
        }
    }
    report.push(free.finish());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(
            run_suite("nope", &SuiteOptions::default()),
            Err(SuiteError::Unknown(_))
        ));
        let opts = SuiteOptions {
            base: 1,
            ..SuiteOptions::default()
        };
        assert!(matches!(run_suite("eq1", &opts), Err(SuiteError::Base(_))));
    }

    #[test]
    fn small_runs_pass() {
        for name in SUITES {
            let opts = SuiteOptions {
                base: 3,
                seed: 9,
                samples: Some(5),
                max_j: 3,
            };
            let report = run_suite(name, &opts).unwrap();
            assert!(report.passed(), "{name}: {}", report.to_json());
        }
    }
}
