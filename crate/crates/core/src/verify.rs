//! Named checks and the dispatcher behind `hallforge verify`, plus the
//! count table behind `hallforge table`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::bijection::{phi, phi_inverse, GrowthState};
use crate::partition::{IncrementVector, Partition};
use crate::qseries::{
    reduced_size_degree, verify_lhp, verify_q_analogue, verify_refined_lhp, verify_refined_rlhp,
    verify_rlhp,
};
use crate::report::{Counterexample, VerificationReport, VerifyError};
use crate::sets::{
    enumerate_lh_up_to, enumerate_op_up_to, enumerate_reduced_lh, enumerate_reduced_odd,
    is_lecture_hall, is_reduced_lh,
};
use crate::trapezoid::{
    factorial_identity_check, skip_permutation_check, trapezoid_partition,
};

/// Fixed seed for the randomized parts of the suites; results are
/// reproducible run to run.
const SUITE_SEED: u64 = 0x4841_4C4C;
/// Random inputs checked by the growth-invariant suite.
const LEMMA_SAMPLES: usize = 10_000;
/// Size cap for sampled odd partitions.
const SAMPLE_MAX_SIZE: i64 = 60;
/// Size cap for the round-trip halves of the bijection suite.
const ROUNDTRIP_MAX_SIZE: i64 = 40;

/// Every identity the verifier knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityId {
    Thm21,
    Skip,
    Rlhp,
    Lhp,
    RefinedLhp,
    RefinedRlhp,
    QAnalogue2,
    Lemmas,
    Bijection,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        IdentityId::Thm21,
        IdentityId::Skip,
        IdentityId::Rlhp,
        IdentityId::Lhp,
        IdentityId::RefinedLhp,
        IdentityId::RefinedRlhp,
        IdentityId::QAnalogue2,
        IdentityId::Lemmas,
        IdentityId::Bijection,
    ];

    pub fn code(self) -> &'static str {
        match self {
            IdentityId::Thm21 => "thm2.1",
            IdentityId::Skip => "skip",
            IdentityId::Rlhp => "rlhp",
            IdentityId::Lhp => "lhp",
            IdentityId::RefinedLhp => "refined-lhp",
            IdentityId::RefinedRlhp => "refined-rlhp",
            IdentityId::QAnalogue2 => "q-analogue-2",
            IdentityId::Lemmas => "lemmas",
            IdentityId::Bijection => "bijection",
        }
    }

    pub fn parse(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.code() == code)
    }
}

/// One fully resolved check: an identity at a single parameter point.
#[derive(Clone, Copy, Debug)]
pub struct SingleCheck {
    pub identity: IdentityId,
    pub n: usize,
    pub qmax: Option<usize>,
}

/// A user-level request, possibly covering a range of widths.
#[derive(Clone, Copy, Debug)]
pub struct VerifyRequest {
    pub identity: IdentityId,
    pub n: Option<usize>,
    pub qmax: Option<usize>,
    pub n_max: Option<usize>,
}

fn default_width(identity: IdentityId) -> usize {
    match identity {
        IdentityId::Thm21 => 20,
        IdentityId::Skip => 60,
        IdentityId::Rlhp => 7,
        IdentityId::Lhp => 5,
        IdentityId::RefinedLhp => 4,
        IdentityId::RefinedRlhp => 6,
        IdentityId::QAnalogue2 => 5,
        IdentityId::Lemmas => 6,
        IdentityId::Bijection => 7,
    }
}

fn default_qmax(identity: IdentityId) -> Option<usize> {
    match identity {
        IdentityId::Lhp => Some(60),
        IdentityId::RefinedLhp => Some(40),
        _ => None,
    }
}

/// Expands a request into the individual checks it asks for, in parameter
/// order. `--n-max` fans the identity out over `1..=n_max`; the two
/// numeric identities default to a range, everything else to a single width.
pub fn expand_request(req: &VerifyRequest) -> Result<Vec<SingleCheck>, VerifyError> {
    if req.n.is_some() && req.n_max.is_some() {
        return Err(VerifyError::BadRequest(
            "--N and --n-max are mutually exclusive".to_string(),
        ));
    }
    let ranged_by_default = matches!(req.identity, IdentityId::Thm21 | IdentityId::Skip);
    if req.n_max.is_some() && matches!(req.identity, IdentityId::Lemmas | IdentityId::Bijection) {
        return Err(VerifyError::BadRequest(format!(
            "{} runs at a single width; use --N",
            req.identity.code()
        )));
    }
    let qmax = req.qmax.or_else(|| default_qmax(req.identity));
    let ns: Vec<usize> = match (req.n, req.n_max) {
        (Some(n), None) => vec![n],
        (None, Some(n_max)) => (1..=n_max).collect(),
        (None, None) => {
            if ranged_by_default {
                (1..=default_width(req.identity)).collect()
            } else {
                vec![default_width(req.identity)]
            }
        }
        (Some(_), Some(_)) => unreachable!(),
    };
    if ns.is_empty() {
        return Err(VerifyError::BadRequest("the width range is empty".to_string()));
    }
    if ns.contains(&0) {
        return Err(VerifyError::BadRequest("width must be at least 1".to_string()));
    }
    Ok(ns
        .into_iter()
        .map(|n| SingleCheck {
            identity: req.identity,
            n,
            qmax,
        })
        .collect())
}

/// Runs one check.
pub fn run_single(check: &SingleCheck) -> Result<VerificationReport, VerifyError> {
    match check.identity {
        IdentityId::Thm21 => Ok(factorial_identity_check(check.n)),
        IdentityId::Skip => Ok(skip_permutation_check(check.n)),
        IdentityId::Rlhp => verify_rlhp(check.n),
        IdentityId::Lhp => verify_lhp(check.n, check.qmax.unwrap_or(60)),
        IdentityId::RefinedLhp => verify_refined_lhp(check.n, check.qmax.unwrap_or(40)),
        IdentityId::RefinedRlhp => verify_refined_rlhp(check.n),
        IdentityId::QAnalogue2 => verify_q_analogue(check.n, check.qmax),
        IdentityId::Lemmas => lemma_suite(check.n),
        IdentityId::Bijection => bijection_suite(check.n),
    }
}

/// Expands and runs a request serially. The command line front end fans the
/// expanded checks out over worker threads instead.
pub fn run_request(req: &VerifyRequest) -> Result<Vec<VerificationReport>, VerifyError> {
    expand_request(req)?.iter().map(run_single).collect()
}

fn sample_bounded_odd(
    rng: &mut ChaCha8Rng,
    width: usize,
    min_index: usize,
    max_size: i64,
) -> Partition {
    let mut budget = max_size;
    let mut pairs = Vec::new();
    for k in (min_index..=width).rev() {
        let part = 2 * k as i64 - 1;
        let cap = (budget / part) as u64;
        let m = if cap == 0 { 0 } else { rng.next_u64() % (cap + 1) };
        if m > 0 {
            pairs.push((part, m as usize));
            budget -= part * m as i64;
        }
    }
    Partition::from_multiplicities(pairs).expect("sampled parts are positive")
}

fn fold_with_checks(
    width: usize,
    lambda: &Partition,
    report: &mut VerificationReport,
) -> Option<GrowthState> {
    let mut state = GrowthState::new(width);
    for &part in lambda.parts() {
        state = match state.feed(part) {
            Ok(s) => s,
            Err(e) => {
                report.record_failure(Counterexample {
                    location: format!("feeding {part} of {lambda} at width {width}"),
                    lhs: e.to_string(),
                    rhs: "a valid feed".to_string(),
                });
                return None;
            }
        };
        report.cases_checked += 1;
        if let Err(msg) = state.check_invariants() {
            report.record_failure(Counterexample {
                location: format!("after feeding {part} of {lambda} at width {width}"),
                lhs: msg,
                rhs: "growth invariants".to_string(),
            });
            return None;
        }
    }
    Some(state)
}

/// The growth-invariant suite at one width: the linear identities hold after
/// every feed over the whole reduced odd family and over random bounded odd
/// inputs; action counts step down by 0 or 1 along rows on reduced inputs;
/// and feeding a full block of `width-k+1` copies of `2k-1` adds exactly the
/// `(width, k)` staircase while restoring the counter.
pub fn lemma_suite(width: usize) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("lemmas")
        .param("N", width as i64)
        .param("samples", LEMMA_SAMPLES as i64)
        .param("max_size", SAMPLE_MAX_SIZE);
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);

    let rop = enumerate_reduced_odd(width)?;
    for lambda in &rop {
        let Some(state) = fold_with_checks(width, lambda, &mut report) else {
            break;
        };
        let d = state.action_counts();
        for j in 0..width.saturating_sub(1) {
            report.cases_checked += 1;
            let diff = d[j] as i64 - d[j + 1] as i64;
            if !(0..=1).contains(&diff) {
                report.record_failure(Counterexample {
                    location: format!("action counts of {lambda}, rows {}..{}", j + 1, j + 2),
                    lhs: diff.to_string(),
                    rhs: "0 or 1".to_string(),
                });
            }
        }
    }

    for _ in 0..LEMMA_SAMPLES {
        if !report.pass {
            break;
        }
        let lambda = sample_bounded_odd(&mut rng, width, 1, SAMPLE_MAX_SIZE);
        fold_with_checks(width, &lambda, &mut report);
    }

    let mut block_cases = 0u64;
    for w in 1..=width {
        for k in 1..=w {
            let part = 2 * k as i64 - 1;
            let block = Partition::repeated(part, w - k + 1).expect("odd part");
            let mut bases = vec![Partition::empty()];
            for _ in 0..25 {
                bases.push(sample_bounded_odd(&mut rng, w, k, SAMPLE_MAX_SIZE));
            }
            for base in bases {
                block_cases += 1;
                let fold = |lam: &Partition| -> Result<GrowthState, String> {
                    let mut s = GrowthState::new(w);
                    for &q in lam.parts() {
                        s = s.feed(q).map_err(|e| e.to_string())?;
                    }
                    Ok(s)
                };
                let (s_base, s_full) = match (fold(&base), fold(&base.union(&block))) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => {
                        report.record_failure(Counterexample {
                            location: format!("block fold, width {w}, k={k}, base {base}"),
                            lhs: e,
                            rhs: "a valid fold".to_string(),
                        });
                        continue;
                    }
                };
                let expected = IncrementVector::from(&s_base.image_partition())
                    .comp_add(&IncrementVector::from(&trapezoid_partition(w, k)));
                if s_full.image_partition() != expected.to_partition().expect("staircase sum") {
                    report.record_failure(Counterexample {
                        location: format!("block image, width {w}, k={k}, base {base}"),
                        lhs: s_full.image_partition().to_string(),
                        rhs: expected.to_string(),
                    });
                }
                if s_full.counter() != s_base.counter() {
                    report.record_failure(Counterexample {
                        location: format!("block counter, width {w}, k={k}, base {base}"),
                        lhs: format!("{:?}", s_full.counter()),
                        rhs: format!("{:?}", s_base.counter()),
                    });
                }
            }
        }
    }
    report.cases_checked += block_cases;
    report.detail("reduced_inputs", rop.len().to_string());
    report.detail("block_cases", block_cases.to_string());
    report.headline = format!(
        "per-feed identities over {} reduced and {LEMMA_SAMPLES} random inputs; \
         {block_cases} block absorptions",
        rop.len()
    );
    Ok(report)
}

/// The bijection suite at one width: the growth map sends the reduced odd
/// family onto the reduced hall family bijectively, preserving size and
/// turning length into alternating size; full blocks produce non-reduced
/// images; and both round trips are the identity on size-truncated families.
pub fn bijection_suite(width: usize) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::new("bijection")
        .param("N", width as i64)
        .param("max_size", ROUNDTRIP_MAX_SIZE);

    let rop = enumerate_reduced_odd(width)?;
    let rl = enumerate_reduced_lh(width)?;
    let mut images = Vec::with_capacity(rop.len());
    for lambda in &rop {
        let mu = phi(width, lambda)?;
        report.cases_checked += 1;
        if mu.size() != lambda.size() {
            report.record_failure(Counterexample {
                location: format!("size of image of {lambda}"),
                lhs: mu.size().to_string(),
                rhs: lambda.size().to_string(),
            });
        }
        if mu.alt_size() != lambda.length() as i64 {
            report.record_failure(Counterexample {
                location: format!("alternating size of image of {lambda}"),
                lhs: mu.alt_size().to_string(),
                rhs: lambda.length().to_string(),
            });
        }
        images.push(mu);
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    report.cases_checked += 2;
    if sorted.len() != rop.len() {
        report.record_failure(Counterexample {
            location: "image count".to_string(),
            lhs: sorted.len().to_string(),
            rhs: rop.len().to_string(),
        });
    }
    if sorted != rl {
        report.record_failure(Counterexample {
            location: "image set vs reduced hall family".to_string(),
            lhs: format!("{} images", sorted.len()),
            rhs: format!("{} reduced hall partitions", rl.len()),
        });
    }

    // full blocks leave the reduced set, and so do their images
    for k in 1..=width {
        let block = Partition::repeated(2 * k as i64 - 1, width - k + 1).expect("odd part");
        let image = phi(width, &block)?;
        report.cases_checked += 1;
        if is_reduced_lh(&image, width)? {
            report.record_failure(Counterexample {
                location: format!("image of the full k={k} block"),
                lhs: format!("{image} is reduced"),
                rhs: "a non-reduced image".to_string(),
            });
        }
    }

    let op = enumerate_op_up_to(width, ROUNDTRIP_MAX_SIZE)?;
    for lambda in &op {
        let mu = phi(width, lambda)?;
        report.cases_checked += 1;
        if !is_lecture_hall(mu.parts(), width) {
            report.record_failure(Counterexample {
                location: format!("image of {lambda}"),
                lhs: mu.to_string(),
                rhs: "a lecture hall partition".to_string(),
            });
            continue;
        }
        let back = phi_inverse(width, &mu)?;
        if back != *lambda {
            report.record_failure(Counterexample {
                location: format!("round trip of {lambda}"),
                lhs: back.to_string(),
                rhs: lambda.to_string(),
            });
        }
    }
    let lh = enumerate_lh_up_to(width, ROUNDTRIP_MAX_SIZE)?;
    for mu in &lh {
        let lambda = phi_inverse(width, mu)?;
        report.cases_checked += 1;
        let forward = phi(width, &lambda)?;
        if forward != *mu {
            report.record_failure(Counterexample {
                location: format!("round trip of {mu}"),
                lhs: forward.to_string(),
                rhs: mu.to_string(),
            });
        }
    }
    report.detail("finite_side", rop.len().to_string());
    report.detail("truncated_odd", op.len().to_string());
    report.detail("truncated_hall", lh.len().to_string());
    report.headline = format!(
        "bijective on {} reduced pairs; round trips on {}+{} truncated partitions",
        rop.len(),
        op.len(),
        lh.len()
    );
    Ok(report)
}

/// One row of the count table.
#[derive(Clone, Debug, Serialize)]
pub struct CountRow {
    pub size: i64,
    pub rl: u64,
    pub rop: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<u64>,
}

/// Counts by size for one width.
#[derive(Clone, Debug, Serialize)]
pub struct WidthCounts {
    pub width: usize,
    pub rows: Vec<CountRow>,
    pub sum_rl: u64,
    pub sum_rop: u64,
    /// Present when the rows cover the whole reduced range, in which case
    /// both sums equal this factorial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorial: Option<u64>,
}

/// The count table for widths `1..=n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct CountTable {
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_size: Option<i64>,
    pub widths: Vec<WidthCounts>,
}

/// Width guard for the table.
pub const MAX_TABLE_N: usize = 7;

/// Builds the per-size count table: for every width, the reduced hall and
/// reduced odd counts agree row by row; with a size bound the truncated
/// infinite families are tallied alongside.
pub fn count_table(n_max: usize, max_size: Option<i64>) -> Result<CountTable, VerifyError> {
    if n_max == 0 || n_max > MAX_TABLE_N {
        return Err(VerifyError::BadRequest(format!(
            "table width must lie in 1..={MAX_TABLE_N}"
        )));
    }
    let mut widths = Vec::with_capacity(n_max);
    for width in 1..=n_max {
        let full_degree = reduced_size_degree(width) as i64;
        let top = match max_size {
            Some(s) => s,
            None => full_degree,
        };
        let mut rows: Vec<CountRow> = (0..=top.max(0))
            .map(|size| CountRow {
                size,
                rl: 0,
                rop: 0,
                l: max_size.map(|_| 0),
                op: max_size.map(|_| 0),
            })
            .collect();
        for p in enumerate_reduced_lh(width)? {
            if p.size() <= top {
                rows[p.size() as usize].rl += 1;
            }
        }
        for p in enumerate_reduced_odd(width)? {
            if p.size() <= top {
                rows[p.size() as usize].rop += 1;
            }
        }
        if let Some(s) = max_size {
            for p in enumerate_lh_up_to(width, s)? {
                if let Some(c) = rows[p.size() as usize].l.as_mut() {
                    *c += 1;
                }
            }
            for p in enumerate_op_up_to(width, s)? {
                if let Some(c) = rows[p.size() as usize].op.as_mut() {
                    *c += 1;
                }
            }
        }
        let sum_rl: u64 = rows.iter().map(|r| r.rl).sum();
        let sum_rop: u64 = rows.iter().map(|r| r.rop).sum();
        let factorial = if top >= full_degree {
            Some((1..=width as u64).product())
        } else {
            None
        };
        widths.push(WidthCounts {
            width,
            rows,
            sum_rl,
            sum_rop,
            factorial,
        });
    }
    Ok(CountTable {
        n_max,
        max_size,
        widths,
    })
}
