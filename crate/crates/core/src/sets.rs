//! Membership predicates and exhaustive enumerators for the four partition
//! families of a given width: lecture hall partitions, their reduced form,
//! odd partitions with bounded parts, and their reduced form.
//!
//! All ratio comparisons are done by cross multiplication on integers.

use std::fmt;

use crate::partition::Partition;

/// Hard guard on enumerator width; the reduced families have `width!`
/// elements.
pub const MAX_ENUM_WIDTH: usize = 9;
/// Hard guard on size-truncated enumeration.
pub const MAX_ENUM_SIZE: i64 = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetsError {
    InvalidWidth,
    WidthTooLarge { width: usize, max: usize },
    MaxSizeTooLarge { max_size: i64, max: i64 },
    /// Listing an infinite family needs a size bound.
    SizeBoundRequired,
    /// The argument was required to be a lecture hall partition.
    NotLectureHall,
}

impl fmt::Display for SetsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetsError::InvalidWidth => write!(f, "width must be at least 1"),
            SetsError::WidthTooLarge { width, max } => {
                write!(f, "width {width} exceeds the enumeration guard {max}")
            }
            SetsError::MaxSizeTooLarge { max_size, max } => {
                write!(f, "max size {max_size} exceeds the enumeration guard {max}")
            }
            SetsError::SizeBoundRequired => {
                write!(f, "this family is infinite; a --max-size bound is required")
            }
            SetsError::NotLectureHall => write!(f, "not a lecture hall partition"),
        }
    }
}

impl std::error::Error for SetsError {}

/// The four partition families sharing a width parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyId {
    LectureHall,
    ReducedLectureHall,
    OddParty,
    ReducedOddParty,
}

impl FamilyId {
    pub fn code(self) -> &'static str {
        match self {
            FamilyId::LectureHall => "l",
            FamilyId::ReducedLectureHall => "rl",
            FamilyId::OddParty => "op",
            FamilyId::ReducedOddParty => "rop",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "l" => Some(FamilyId::LectureHall),
            "rl" => Some(FamilyId::ReducedLectureHall),
            "op" => Some(FamilyId::OddParty),
            "rop" => Some(FamilyId::ReducedOddParty),
            _ => None,
        }
    }

    /// Whether the family is finite for a fixed width.
    pub fn is_finite(self) -> bool {
        matches!(self, FamilyId::ReducedLectureHall | FamilyId::ReducedOddParty)
    }
}

/// Lecture hall test on a raw integer sequence: after ignoring trailing
/// zeros, the entries must be strictly positive, at most `width` many, and
/// satisfy the descending ratio chain
/// `e[1]/width >= e[2]/(width-1) >= ...` (cross-multiplied). Raw sequences
/// are accepted so that single-entry perturbations can be classified; any
/// negative entry or interior zero yields false.
pub fn is_lecture_hall(entries: &[i64], width: usize) -> bool {
    assert!(width >= 1, "width must be positive");
    let mut len = entries.len();
    while len > 0 && entries[len - 1] == 0 {
        len -= 1;
    }
    let entries = &entries[..len];
    if entries.len() > width {
        return false;
    }
    if entries.iter().any(|&e| e <= 0) {
        return false;
    }
    let w = width as i64;
    for i in 0..entries.len().saturating_sub(1) {
        let j = i as i64 + 1; // 1-based position of entries[i]
        if entries[i] * (w - j) < entries[i + 1] * (w - j + 1) {
            return false;
        }
    }
    true
}

/// A lecture hall partition is reduced when no single part can lose
/// `width - position + 1` and leave a lecture hall sequence.
pub fn is_reduced_lh(mu: &Partition, width: usize) -> Result<bool, SetsError> {
    if !is_lecture_hall(mu.parts(), width) {
        return Err(SetsError::NotLectureHall);
    }
    let parts = mu.parts();
    for i in 0..parts.len() {
        let mut probe = parts.to_vec();
        probe[i] -= width as i64 - i as i64;
        if is_lecture_hall(&probe, width) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All parts odd and at most `2*width - 1`.
pub fn is_odd_party(lambda: &Partition, width: usize) -> bool {
    assert!(width >= 1, "width must be positive");
    lambda
        .parts()
        .iter()
        .all(|&p| p % 2 == 1 && p <= 2 * width as i64 - 1)
}

/// Odd party with every multiplicity bounded: part `2k-1` occurs at most
/// `width - k` times.
pub fn is_reduced_odd(lambda: &Partition, width: usize) -> bool {
    if !is_odd_party(lambda, width) {
        return false;
    }
    for (&part, &m) in lambda.multiplicities().iter() {
        let k = ((part + 1) / 2) as usize;
        if m > width - k {
            return false;
        }
    }
    true
}

fn check_enum_width(width: usize) -> Result<(), SetsError> {
    if width == 0 {
        return Err(SetsError::InvalidWidth);
    }
    if width > MAX_ENUM_WIDTH {
        return Err(SetsError::WidthTooLarge {
            width,
            max: MAX_ENUM_WIDTH,
        });
    }
    Ok(())
}

fn check_enum_size(max_size: i64) -> Result<(), SetsError> {
    if max_size > MAX_ENUM_SIZE {
        return Err(SetsError::MaxSizeTooLarge {
            max_size,
            max: MAX_ENUM_SIZE,
        });
    }
    Ok(())
}

/// Enumerates the reduced lecture hall partitions of the given width, in
/// canonical order. Built by recursion on the tail: every element arises
/// from a reduced tail one width down, with exactly `width` head choices
/// (the empty head counting as one choice when the tail is empty).
pub fn enumerate_reduced_lh(width: usize) -> Result<Vec<Partition>, SetsError> {
    check_enum_width(width)?;
    let mut current = vec![Partition::empty()];
    for w in 1..=width {
        let mut next = Vec::with_capacity(current.len() * w);
        for tail in &current {
            if tail.is_empty() {
                next.push(Partition::empty());
                for head in 1..w as i64 {
                    next.push(Partition::new(vec![head]).expect("positive head"));
                }
            } else {
                let first = tail.parts()[0];
                // least head with head/(w) >= first/(w-1)
                let head_min = (w as i64 * first + w as i64 - 2) / (w as i64 - 1);
                for head in head_min..head_min + w as i64 {
                    let mut parts = Vec::with_capacity(tail.length() + 1);
                    parts.push(head);
                    parts.extend_from_slice(tail.parts());
                    next.push(Partition::new(parts).expect("head dominates tail"));
                }
            }
        }
        current = next;
    }
    current.sort();
    Ok(current)
}

/// Enumerates the reduced odd partitions of the given width: every choice of
/// multiplicity `0..=width-k` for part `2k-1`, `k = 1..=width`. Exactly
/// `width!` elements, in canonical order.
pub fn enumerate_reduced_odd(width: usize) -> Result<Vec<Partition>, SetsError> {
    check_enum_width(width)?;
    let mut acc: Vec<Vec<i64>> = vec![Vec::new()];
    for k in (1..=width).rev() {
        let part = 2 * k as i64 - 1;
        let bound = width - k;
        let mut next = Vec::with_capacity(acc.len() * (bound + 1));
        for prefix in &acc {
            for m in 0..=bound {
                let mut parts = prefix.clone();
                parts.extend(std::iter::repeat(part).take(m));
                next.push(parts);
            }
        }
        acc = next;
    }
    let mut out: Vec<Partition> = acc
        .into_iter()
        .map(|parts| Partition::new(parts).expect("descending odd parts"))
        .collect();
    out.sort();
    Ok(out)
}

/// All lecture hall partitions of the given width with size at most
/// `max_size`, generated by depth-first extension along the ratio chain.
pub fn enumerate_lh_up_to(width: usize, max_size: i64) -> Result<Vec<Partition>, SetsError> {
    check_enum_width(width)?;
    check_enum_size(max_size)?;
    let mut out = Vec::new();
    if max_size >= 0 {
        let mut prefix = Vec::new();
        extend_lh(width, max_size, &mut prefix, &mut out);
    }
    out.sort();
    Ok(out)
}

fn extend_lh(width: usize, budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
    out.push(Partition::new(prefix.clone()).expect("chain prefix is a partition"));
    let pos = prefix.len() + 1; // 1-based position being filled
    if pos > width {
        return;
    }
    let w = width as i64;
    let cap = if pos == 1 {
        budget
    } else {
        let prev = prefix[pos - 2];
        // prev/(w-pos+2) >= v/(w-pos+1)
        budget.min(prev * (w - pos as i64 + 1) / (w - pos as i64 + 2))
    };
    for v in 1..=cap {
        prefix.push(v);
        extend_lh(width, budget - v, prefix, out);
        prefix.pop();
    }
}

/// All odd partitions with parts at most `2*width - 1` and size at most
/// `max_size`.
pub fn enumerate_op_up_to(width: usize, max_size: i64) -> Result<Vec<Partition>, SetsError> {
    check_enum_width(width)?;
    check_enum_size(max_size)?;
    let mut out = Vec::new();
    if max_size >= 0 {
        let mut parts = Vec::new();
        extend_op(width, max_size, &mut parts, &mut out);
    }
    out.sort();
    Ok(out)
}

fn extend_op(k: usize, budget: i64, parts: &mut Vec<i64>, out: &mut Vec<Partition>) {
    if k == 0 {
        out.push(Partition::new(parts.clone()).expect("descending odd parts"));
        return;
    }
    let part = 2 * k as i64 - 1;
    let max_m = (budget / part) as usize;
    for m in 0..=max_m {
        let before = parts.len();
        parts.extend(std::iter::repeat(part).take(m));
        extend_op(k - 1, budget - part * m as i64, parts, out);
        parts.truncate(before);
    }
}

/// Lists one family in canonical order. The infinite families require a size
/// bound; for the finite reduced families the bound is an optional filter.
pub fn enumerate_family(
    family: FamilyId,
    width: usize,
    max_size: Option<i64>,
) -> Result<Vec<Partition>, SetsError> {
    match family {
        FamilyId::LectureHall => {
            enumerate_lh_up_to(width, max_size.ok_or(SetsError::SizeBoundRequired)?)
        }
        FamilyId::OddParty => {
            enumerate_op_up_to(width, max_size.ok_or(SetsError::SizeBoundRequired)?)
        }
        FamilyId::ReducedLectureHall => {
            let mut v = enumerate_reduced_lh(width)?;
            if let Some(s) = max_size {
                v.retain(|p| p.size() <= s);
            }
            Ok(v)
        }
        FamilyId::ReducedOddParty => {
            let mut v = enumerate_reduced_odd(width)?;
            if let Some(s) = max_size {
                v.retain(|p| p.size() <= s);
            }
            Ok(v)
        }
    }
}

/// Membership test for one family.
pub fn family_contains(family: FamilyId, width: usize, p: &Partition) -> bool {
    match family {
        FamilyId::LectureHall => is_lecture_hall(p.parts(), width),
        FamilyId::ReducedLectureHall => is_reduced_lh(p, width).unwrap_or(false),
        FamilyId::OddParty => is_odd_party(p, width),
        FamilyId::ReducedOddParty => is_reduced_odd(p, width),
    }
}
