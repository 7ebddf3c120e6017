//! Sweeps of the Fibonacci/Lucas permanent identities, proof-trace checks and
//! the permanent/determinant conversion checks.
//!
//! Two kinds of disagreement are kept apart. An evaluator disagreeing with
//! the Ryser oracle is a bug and surfaces as [`Error::OracleDisagreement`].
//! A computed permanent disagreeing with a claimed closed form is a finding
//! and is reported as [`Status::Mismatch`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::contraction::{per_contraction, ContractionKind};
use crate::error::{Error, Result};
use crate::families::{build_family, expected_contraction, proof_displays, Family, FamilySpec};
use crate::matrix::IntMatrix;
use crate::method::Method;
use crate::permanent::{det_bareiss, per_ryser};
use crate::sequences::{fib, fib_sum, lucas, lucas_sum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremTag {
    /// `per H_n = F_{n+1}`
    T1HFib,
    /// `per K_n = L_{n-2}`
    T2KLucas,
    /// `per M_n` against Fibonacci partial sums
    T3MFibSum,
    /// `per N_n = L_0 + ... + L_n`
    T4NLucasSum,
    /// `per £_n = L_{n-1}`
    LeeLucas,
    PerDetTridiag,
    PerDetS,
}

impl TheoremTag {
    pub const SEQUENCE_IDENTITIES: [TheoremTag; 5] = [
        TheoremTag::T1HFib,
        TheoremTag::T2KLucas,
        TheoremTag::T3MFibSum,
        TheoremTag::T4NLucasSum,
        TheoremTag::LeeLucas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremTag::T1HFib => "T1_H_FIB",
            TheoremTag::T2KLucas => "T2_K_LUCAS",
            TheoremTag::T3MFibSum => "T3_M_FIBSUM",
            TheoremTag::T4NLucasSum => "T4_N_LUCASSUM",
            TheoremTag::LeeLucas => "LEE_LUCAS",
            TheoremTag::PerDetTridiag => "PERDET_TRIDIAG",
            TheoremTag::PerDetS => "PERDET_S",
        }
    }

    fn short(self) -> &'static str {
        match self {
            TheoremTag::T1HFib => "T1",
            TheoremTag::T2KLucas => "T2",
            TheoremTag::T3MFibSum => "T3",
            TheoremTag::T4NLucasSum => "T4",
            TheoremTag::LeeLucas => "LEE",
            TheoremTag::PerDetTridiag => "PERDET",
            TheoremTag::PerDetS => "PERDET_S",
        }
    }
}

/// Which right-hand side of the M-family identity is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum Variant {
    /// `F_0 + ... + F_{n-1}`, as published.
    #[default]
    PaperStated,
    /// `F_0 + ... + F_{n+1}`, the index that direct evaluation supports.
    DerivedCorrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::PaperStated => "PAPER_STATED",
            Variant::DerivedCorrected => "DERIVED_CORRECTED",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "paper" | "paper_stated" => Ok(Variant::PaperStated),
            "corrected" | "derived" | "derived_corrected" => Ok(Variant::DerivedCorrected),
            _ => Err(Error::Unsupported {
                what: format!("unknown variant {s:?} (expected paper or corrected)"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoremId {
    pub tag: TheoremTag,
    pub variant: Variant,
}

impl TheoremId {
    pub const T1: TheoremId = TheoremId::new(TheoremTag::T1HFib);
    pub const T2: TheoremId = TheoremId::new(TheoremTag::T2KLucas);
    pub const T3_STATED: TheoremId = TheoremId {
        tag: TheoremTag::T3MFibSum,
        variant: Variant::PaperStated,
    };
    pub const T3_CORRECTED: TheoremId = TheoremId {
        tag: TheoremTag::T3MFibSum,
        variant: Variant::DerivedCorrected,
    };
    pub const T4: TheoremId = TheoremId::new(TheoremTag::T4NLucasSum);
    pub const LEE: TheoremId = TheoremId::new(TheoremTag::LeeLucas);

    pub const fn new(tag: TheoremTag) -> Self {
        TheoremId {
            tag,
            variant: Variant::PaperStated,
        }
    }

    pub fn with_variant(self, variant: Variant) -> Self {
        TheoremId { variant, ..self }
    }

    /// Smallest order the identity is claimed for.
    pub fn floor(self) -> Result<usize> {
        match self.tag {
            TheoremTag::T1HFib | TheoremTag::T3MFibSum => Ok(1),
            TheoremTag::T2KLucas | TheoremTag::T4NLucasSum | TheoremTag::LeeLucas => Ok(2),
            TheoremTag::PerDetTridiag | TheoremTag::PerDetS => Err(self.not_a_sequence_identity()),
        }
    }

    pub fn family(self) -> Result<Family> {
        match self.tag {
            TheoremTag::T1HFib => Ok(Family::H),
            TheoremTag::T2KLucas => Ok(Family::K),
            TheoremTag::T3MFibSum => Ok(Family::M),
            TheoremTag::T4NLucasSum => Ok(Family::N),
            TheoremTag::LeeLucas => Ok(Family::Lee),
            TheoremTag::PerDetTridiag | TheoremTag::PerDetS => Err(self.not_a_sequence_identity()),
        }
    }

    fn not_a_sequence_identity(self) -> Error {
        Error::Unsupported {
            what: format!("{self} is a permanent/determinant check, see verify_perdet"),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag.name())?;
        if self.tag == TheoremTag::T3MFibSum {
            write!(f, ":{}", self.variant.name())?;
        }
        Ok(())
    }
}

/// Accepts the short names `T1`..`T4`, `LEE` as well as the full tag names;
/// a `:paper` / `:corrected` suffix selects the variant.
impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, variant) = match s.split_once(':') {
            Some((tag, variant)) => (tag, Some(variant.parse::<Variant>()?)),
            None => (s, None),
        };
        let tag = [
            TheoremTag::T1HFib,
            TheoremTag::T2KLucas,
            TheoremTag::T3MFibSum,
            TheoremTag::T4NLucasSum,
            TheoremTag::LeeLucas,
            TheoremTag::PerDetTridiag,
            TheoremTag::PerDetS,
        ]
        .into_iter()
        .find(|t| t.name().eq_ignore_ascii_case(tag) || t.short().eq_ignore_ascii_case(tag))
        .ok_or_else(|| Error::Unsupported {
            what: format!("unknown theorem {s:?}"),
        })?;
        Ok(TheoremId {
            tag,
            variant: variant.unwrap_or_default(),
        })
    }
}

/// The claimed closed form for `per` of the theorem's family at order `n`.
pub fn claimed_value(theorem: TheoremId, n: usize) -> Result<BigInt> {
    let floor = theorem.floor()?;
    if n < floor {
        return Err(Error::BelowFloor {
            theorem: theorem.to_string(),
            n,
            floor,
        });
    }
    Ok(match (theorem.tag, theorem.variant) {
        (TheoremTag::T1HFib, _) => fib(n + 1),
        (TheoremTag::T2KLucas, _) => lucas(n - 2),
        (TheoremTag::T3MFibSum, Variant::PaperStated) => fib_sum(n - 1),
        (TheoremTag::T3MFibSum, Variant::DerivedCorrected) => fib_sum(n + 1),
        (TheoremTag::T4NLucasSum, _) => lucas_sum(n),
        (TheoremTag::LeeLucas, _) => lucas(n - 1),
        (TheoremTag::PerDetTridiag | TheoremTag::PerDetS, _) => unreachable!("floor() rejects these"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Match,
    Mismatch,
}

impl Status {
    fn of(equal: bool) -> Self {
        if equal {
            Status::Match
        } else {
            Status::Mismatch
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub computed: BigInt,
    pub claimed: BigInt,
    pub method: Method,
    pub status: Status,
    /// Set when the Ryser oracle recomputed the permanent and agreed.
    pub oracle_checked: bool,
}

/// One report per `n` in `n_min..=n_max`, in ascending order.
///
/// Orders up to `oracle_max_n` are recomputed with [`per_ryser`]; an
/// evaluator that disagrees with it aborts the sweep.
pub fn verify_theorem(
    theorem: TheoremId,
    n_min: usize,
    n_max: usize,
    method: Method,
    oracle_max_n: usize,
) -> Result<Vec<IdentityReport>> {
    if n_min > n_max {
        return Err(Error::EmptyRange { n_min, n_max });
    }
    let family = theorem.family()?;
    claimed_value(theorem, n_min)?;
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let a = build_family(&FamilySpec::new(family, n))?;
            let computed = method.evaluate(&a)?;
            let claimed = claimed_value(theorem, n)?;
            let oracle_checked = n <= oracle_max_n;
            if oracle_checked {
                let oracle = per_ryser(&a)?;
                if oracle != computed {
                    return Err(Error::OracleDisagreement {
                        theorem: theorem.to_string(),
                        n,
                        method: method.name(),
                        computed,
                        oracle,
                    });
                }
            }
            Ok(IdentityReport {
                theorem,
                n,
                status: Status::of(computed == claimed),
                computed,
                claimed,
                method,
                oracle_checked,
            })
        })
        .collect()
}

pub fn first_mismatch(reports: &[IdentityReport]) -> Option<&IdentityReport> {
    reports.iter().find(|r| r.status == Status::Mismatch)
}

pub fn all_match(reports: &[IdentityReport]) -> bool {
    first_mismatch(reports).is_none()
}

/// Both readings of the M-family identity swept over the same range.
#[derive(Debug, Clone)]
pub struct T3Adjudication {
    pub stated: Vec<IdentityReport>,
    pub corrected: Vec<IdentityReport>,
}

impl T3Adjudication {
    /// Variants whose sweep matched at every `n`.
    pub fn all_match_variants(&self) -> Vec<Variant> {
        [(Variant::PaperStated, &self.stated), (Variant::DerivedCorrected, &self.corrected)]
            .into_iter()
            .filter(|(_, reports)| all_match(reports))
            .map(|(v, _)| v)
            .collect()
    }

    /// The single all-match variant and the first mismatch of the other one,
    /// or `None` when the sweeps do not separate the two readings.
    pub fn verdict(&self) -> Option<(Variant, &IdentityReport)> {
        match self.all_match_variants().as_slice() {
            [Variant::PaperStated] => Some((Variant::PaperStated, first_mismatch(&self.corrected)?)),
            [Variant::DerivedCorrected] => Some((Variant::DerivedCorrected, first_mismatch(&self.stated)?)),
            _ => None,
        }
    }
}

pub fn adjudicate_t3(
    n_min: usize,
    n_max: usize,
    method: Method,
    oracle_max_n: usize,
) -> Result<T3Adjudication> {
    Ok(T3Adjudication {
        stated: verify_theorem(TheoremId::T3_STATED, n_min, n_max, method, oracle_max_n)?,
        corrected: verify_theorem(TheoremId::T3_CORRECTED, n_min, n_max, method, oracle_max_n)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayCheck {
    pub label: String,
    pub shown: IntMatrix,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCheck {
    pub r: usize,
    pub computed: IntMatrix,
    pub expected: IntMatrix,
    /// Computed step against the confirmed closed form.
    pub expected_status: Status,
    /// The step contracted the last column on its last two rows.
    pub on_schedule: bool,
    /// Computed step against each published display covering step `r`.
    pub displays: Vec<DisplayCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    pub family: Family,
    pub n: usize,
    pub value: BigInt,
    pub steps: Vec<StepCheck>,
}

impl TraceReport {
    pub fn all_expected_match(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.expected_status == Status::Match && s.on_schedule)
    }

    /// `(r, label)` for every published display the computed chain contradicts.
    pub fn display_mismatches(&self) -> Vec<(usize, &str)> {
        self.steps
            .iter()
            .flat_map(|s| {
                s.displays
                    .iter()
                    .filter(|d| d.status == Status::Mismatch)
                    .map(move |d| (s.r, d.label.as_str()))
            })
            .collect()
    }
}

/// Runs the contraction chain of `family` at order `n` and compares each
/// intermediate with [`expected_contraction`] and with [`proof_displays`].
pub fn verify_trace(family: Family, n: usize) -> Result<TraceReport> {
    let spec = FamilySpec::new(family, n);
    // Validates family and n >= 4 up front.
    expected_contraction(&spec, 1)?;
    let a = build_family(&spec)?;
    let (value, trace) = per_contraction(&a)?;
    let steps = trace
        .intermediates
        .iter()
        .zip(&trace.steps)
        .enumerate()
        .map(|(idx, (computed, step))| {
            let r = idx + 1;
            let expected = expected_contraction(&spec, r)?;
            let before = n - idx;
            let on_schedule = step.kind == ContractionKind::Column
                && step.index_k == before
                && step.kept_i == before - 1
                && step.removed_j == before;
            let displays = proof_displays(&spec, r)?
                .into_iter()
                .map(|d| DisplayCheck {
                    status: Status::of(&d.matrix == computed),
                    label: d.label,
                    shown: d.matrix,
                })
                .collect();
            Ok(StepCheck {
                r,
                expected_status: Status::of(&expected == computed),
                computed: computed.clone(),
                expected,
                on_schedule,
                displays,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if steps.len() != n - 2 {
        return Err(Error::Unsupported {
            what: format!("{spec} chain took {} steps, expected {}", steps.len(), n - 2),
        });
    }
    Ok(TraceReport {
        family,
        n,
        value,
        steps,
    })
}

/// Permanent of a tridiagonal matrix next to the three determinants that
/// should equal it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerdetCase {
    pub matrix: IntMatrix,
    pub permanent: BigInt,
    /// `det T(-a, b, c)`
    pub det_negated_sub: BigInt,
    /// `det T(a, b, -c)`
    pub det_negated_super: BigInt,
    /// `det (T ∘ S)`
    pub det_sign_matrix: BigInt,
}

impl PerdetCase {
    pub fn holds(&self) -> bool {
        self.permanent == self.det_negated_sub
            && self.permanent == self.det_negated_super
            && self.permanent == self.det_sign_matrix
    }
}

pub fn perdet_case(sub: &[BigInt], main: &[BigInt], sup: &[BigInt]) -> Result<PerdetCase> {
    let negate = |v: &[BigInt]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let t = build_family(&FamilySpec::tridiagonal(sub.to_vec(), main.to_vec(), sup.to_vec()))?;
    let t_neg_sub = build_family(&FamilySpec::tridiagonal(negate(sub), main.to_vec(), sup.to_vec()))?;
    let t_neg_sup = build_family(&FamilySpec::tridiagonal(sub.to_vec(), main.to_vec(), negate(sup)))?;
    let s = build_family(&FamilySpec::new(Family::SignS, t.n_rows()))?;
    Ok(PerdetCase {
        permanent: per_ryser(&t)?,
        det_negated_sub: det_bareiss(&t_neg_sub)?,
        det_negated_super: det_bareiss(&t_neg_sup)?,
        det_sign_matrix: det_bareiss(&t.hadamard(&s)?)?,
        matrix: t,
    })
}

/// Largest order [`verify_perdet`] draws.
pub const PERDET_MAX_N: usize = 10;
/// Random tridiagonal entries are drawn from `-PERDET_ENTRY..=PERDET_ENTRY`.
pub const PERDET_ENTRY: i64 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerdetReport {
    pub seed: u64,
    pub trials: usize,
    pub n_max: usize,
    pub passes: usize,
    pub failures: Vec<PerdetCase>,
}

/// Checks [`PerdetCase::holds`] on `trials` random tridiagonal matrices of
/// order `1..=n_max`, drawn from a generator seeded with `seed`.
pub fn verify_perdet(trials: usize, n_max: usize, seed: u64) -> Result<PerdetReport> {
    if n_max == 0 || n_max > PERDET_MAX_N {
        return Err(Error::SizeGuard {
            method: "perdet",
            n: n_max,
            max: PERDET_MAX_N,
        });
    }
    fn draw(rng: &mut ChaCha8Rng, len: usize) -> Vec<BigInt> {
        (0..len)
            .map(|_| BigInt::from(rng.random_range(-PERDET_ENTRY..=PERDET_ENTRY)))
            .collect()
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passes = 0;
    let mut failures = Vec::new();
    for _ in 0..trials {
        let n = rng.random_range(1..=n_max);
        let sub = draw(&mut rng, n - 1);
        let main = draw(&mut rng, n);
        let sup = draw(&mut rng, n - 1);
        let case = perdet_case(&sub, &main, &sup)?;
        if case.holds() {
            passes += 1;
        } else {
            failures.push(case);
        }
    }
    Ok(PerdetReport {
        seed,
        trials,
        n_max,
        passes,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claimed_value_examples() {
        assert_eq!(claimed_value(TheoremId::T1, 5).unwrap(), 8.into());
        assert_eq!(claimed_value(TheoremId::T2, 5).unwrap(), 4.into());
        assert_eq!(claimed_value(TheoremId::T3_STATED, 4).unwrap(), 4.into());
        assert_eq!(claimed_value(TheoremId::T3_CORRECTED, 4).unwrap(), 12.into());
        assert_eq!(claimed_value(TheoremId::T4, 4).unwrap(), 17.into());
        assert_eq!(claimed_value(TheoremId::LEE, 2).unwrap(), 1.into());
    }

    #[test]
    fn floors_enforced() {
        assert!(matches!(
            claimed_value(TheoremId::T1, 0),
            Err(Error::BelowFloor { floor: 1, .. })
        ));
        for t in [TheoremId::T2, TheoremId::T4, TheoremId::LEE] {
            assert!(matches!(claimed_value(t, 1), Err(Error::BelowFloor { floor: 2, .. })));
        }
        assert!(claimed_value(TheoremId::new(TheoremTag::PerDetS), 3).is_err());
    }

    #[test]
    fn theorem_ids_parse() {
        assert_eq!("T1".parse::<TheoremId>().unwrap(), TheoremId::T1);
        assert_eq!("lee".parse::<TheoremId>().unwrap(), TheoremId::LEE);
        assert_eq!("T3:corrected".parse::<TheoremId>().unwrap(), TheoremId::T3_CORRECTED);
        assert_eq!(
            "T3_M_FIBSUM:PAPER_STATED".parse::<TheoremId>().unwrap(),
            TheoremId::T3_STATED
        );
        for t in [TheoremId::T1, TheoremId::T3_CORRECTED, TheoremId::T4] {
            assert_eq!(t.to_string().parse::<TheoremId>().unwrap(), t);
        }
        assert!("T9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn t1_sweep_matches() {
        let reports = verify_theorem(TheoremId::T1, 1, 20, Method::Contraction, 18).unwrap();
        assert_eq!(reports.len(), 20);
        assert!(all_match(&reports));
        assert!(reports.iter().all(|r| r.oracle_checked == (r.n <= 18)));
        assert!(reports.windows(2).all(|w| w[0].n < w[1].n));
    }

    #[test]
    fn t3_stated_sweep_mismatches() {
        let reports = verify_theorem(TheoremId::T3_STATED, 2, 10, Method::Contraction, 10).unwrap();
        assert!(reports.iter().all(|r| r.status == Status::Mismatch));
        let n4 = &reports[2];
        assert_eq!((n4.n, n4.computed.clone(), n4.claimed.clone()), (4, 12.into(), 4.into()));
    }

    #[test]
    fn t4_sweep_with_hessenberg() {
        let reports = verify_theorem(TheoremId::T4, 2, 20, Method::Hessenberg, 18).unwrap();
        assert!(all_match(&reports));
        assert_eq!(reports[2].computed, 17.into());
    }

    #[test]
    fn sweep_errors() {
        assert!(matches!(
            verify_theorem(TheoremId::T1, 0, 0, Method::Contraction, 0),
            Err(Error::BelowFloor { .. })
        ));
        assert!(matches!(
            verify_theorem(TheoremId::T1, 5, 4, Method::Contraction, 0),
            Err(Error::EmptyRange { .. })
        ));
        assert!(matches!(
            verify_theorem(TheoremId::T1, 9, 12, Method::Naive, 0),
            Err(Error::SizeGuard { method: "naive", n: 11, .. })
        ));
    }

    #[test]
    fn trace_examples() {
        let h5 = verify_trace(Family::H, 5).unwrap();
        assert!(h5.all_expected_match());
        assert!(h5.display_mismatches().is_empty());
        assert_eq!(h5.value, 8.into());

        let m5 = verify_trace(Family::M, 5).unwrap();
        assert!(m5.all_expected_match());
        assert_eq!(m5.display_mismatches(), vec![(3, "M^(n-2)")]);
        assert_eq!(m5.steps[2].computed, m5.steps[2].expected);

        let k4 = verify_trace(Family::K, 4).unwrap();
        assert!(k4.all_expected_match());
        assert!(k4.display_mismatches().is_empty());
        let last = &k4.steps[1].computed;
        assert_eq!(last, &IntMatrix::from_rows([[2, -3], [1, 3]]).unwrap());

        assert!(verify_trace(Family::H, 3).is_err());
        assert!(verify_trace(Family::Lee, 6).is_err());
    }

    #[test]
    fn perdet_examples() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let case = perdet_case(&b(&[1, 1]), &b(&[1, 1, 1]), &b(&[1, 1])).unwrap();
        assert_eq!(case.permanent, 3.into());
        assert!(case.holds());
        let single = perdet_case(&[], &b(&[7]), &[]).unwrap();
        assert_eq!(single.permanent, 7.into());
        assert!(single.holds());

        let report = verify_perdet(100, 8, 1).unwrap();
        assert_eq!(report.passes, 100);
        assert!(report.failures.is_empty());
        assert_eq!(verify_perdet(100, 8, 1).unwrap(), report);
        assert!(verify_perdet(5, 11, 1).is_err());
        assert!(verify_perdet(5, 0, 1).is_err());
    }
}
