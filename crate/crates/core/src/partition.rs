//! Integer partitions and raw integer sequences.
//!
//! [`Partition`] keeps its parts as a weakly decreasing vector of positive
//! integers and exposes the multiplicity view on demand; the two views are
//! always consistent because one is derived from the other. [`IncrementVector`]
//! is an unconstrained integer sequence used for componentwise sums and
//! differences, which in general are not partitions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

/// Errors from partition construction, parsing, and multiset subtraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionError {
    /// Multiset subtraction asked for more copies of this part than exist.
    UnderflowAtPart(i64),
    /// Malformed input text; `pos` is the byte offset of the offending token.
    Syntax { pos: usize },
    /// The entries do not form a partition (a nonpositive part, or a zero
    /// followed by a positive entry).
    NotAPartition,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::UnderflowAtPart(p) => {
                write!(f, "multiset subtraction underflow at part {p}")
            }
            PartitionError::Syntax { pos } => write!(f, "syntax error at byte {pos}"),
            PartitionError::NotAPartition => write!(f, "entries do not form a partition"),
        }
    }
}

impl std::error::Error for PartitionError {}

/// A partition: weakly decreasing positive integer parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts that are already weakly decreasing.
    pub fn new(parts: Vec<i64>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p <= 0) {
            return Err(PartitionError::NotAPartition);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotAPartition);
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts into weakly decreasing order, then builds.
    pub fn from_unsorted(mut parts: Vec<i64>) -> Result<Self, PartitionError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    /// Builds from `(part, multiplicity)` pairs; duplicate parts accumulate.
    pub fn from_multiplicities<I>(mults: I) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = (i64, usize)>,
    {
        let mut map: BTreeMap<i64, usize> = BTreeMap::new();
        for (part, m) in mults {
            if part <= 0 {
                return Err(PartitionError::NotAPartition);
            }
            *map.entry(part).or_insert(0) += m;
        }
        let mut parts = Vec::new();
        for (&part, &m) in map.iter().rev() {
            parts.extend(std::iter::repeat(part).take(m));
        }
        Ok(Partition { parts })
    }

    /// `count` copies of a single part value.
    pub fn repeated(part: i64, count: usize) -> Result<Self, PartitionError> {
        if part <= 0 && count > 0 {
            return Err(PartitionError::NotAPartition);
        }
        Ok(Partition {
            parts: vec![part; count],
        })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts; 0 for the empty partition.
    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Alternating sum of the parts, first part counted positive.
    pub fn alt_size(&self) -> i64 {
        alt_sum(&self.parts)
    }

    /// Part at 1-based position `pos`, or 0 past the end.
    pub fn part_or_zero(&self, pos: usize) -> i64 {
        if pos >= 1 {
            self.parts.get(pos - 1).copied().unwrap_or(0)
        } else {
            0
        }
    }

    /// How many parts equal `part`.
    pub fn multiplicity(&self, part: i64) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Multiplicity view, keyed by part value.
    pub fn multiplicities(&self) -> BTreeMap<i64, usize> {
        let mut map = BTreeMap::new();
        for &p in &self.parts {
            *map.entry(p).or_insert(0) += 1;
        }
        map
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Multiset difference: multiplicities subtract, erroring when a part of
    /// `other` is not fully present in `self`.
    pub fn multiset_diff(&self, other: &Partition) -> Result<Partition, PartitionError> {
        let mut mine = self.multiplicities();
        for (&part, &m) in other.multiplicities().iter() {
            let have = mine.get(&part).copied().unwrap_or(0);
            if have < m {
                return Err(PartitionError::UnderflowAtPart(part));
            }
            mine.insert(part, have - m);
        }
        Partition::from_multiplicities(mine)
    }

    /// Parses either a comma list (`"11,9,7"`, sorted descending for the
    /// caller) or multiplicity notation (`"1^4 3^2 7^3 9 11"`).
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        if text.trim().is_empty() {
            return Ok(Partition::empty());
        }
        if text.contains(',') {
            parse_comma_list(text)
        } else {
            parse_multiplicity(text)
        }
    }

    /// Canonical text form: the comma list, largest part first. Empty string
    /// for the empty partition. Round-trips through [`Partition::parse`].
    pub fn to_comma_string(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Multiplicity text form, smallest part first: `"1^4 3^2 7^3 9 11"`.
    pub fn to_multiplicity_string(&self) -> String {
        self.multiplicities()
            .iter()
            .map(|(&part, &m)| {
                if m == 1 {
                    part.to_string()
                } else {
                    format!("{part}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn alt_sum(entries: &[i64]) -> i64 {
    entries
        .iter()
        .enumerate()
        .map(|(i, &e)| if i % 2 == 0 { e } else { -e })
        .sum()
}

fn parse_comma_list(text: &str) -> Result<Partition, PartitionError> {
    let mut parts = Vec::new();
    let mut offset = 0usize;
    for seg in text.split(',') {
        let trimmed = seg.trim();
        let pos = offset + (seg.len() - seg.trim_start().len());
        if trimmed.is_empty() {
            return Err(PartitionError::Syntax { pos });
        }
        let value: i64 = trimmed
            .parse()
            .map_err(|_| PartitionError::Syntax { pos })?;
        if value <= 0 {
            return Err(PartitionError::NotAPartition);
        }
        parts.push(value);
        offset += seg.len() + 1;
    }
    Partition::from_unsorted(parts)
}

fn parse_multiplicity(text: &str) -> Result<Partition, PartitionError> {
    let mut pairs = Vec::new();
    let mut base = 0usize;
    let mut rest = text;
    while let Some(start_rel) = rest.find(|c: char| !c.is_whitespace()) {
        let start = base + start_rel;
        let after = &rest[start_rel..];
        let end_rel = after
            .find(char::is_whitespace)
            .unwrap_or(after.len());
        let token = &after[..end_rel];
        let (part_text, mult) = match token.split_once('^') {
            Some((b, e)) => {
                let m: usize = e.parse().map_err(|_| PartitionError::Syntax {
                    pos: start + b.len() + 1,
                })?;
                (b, m)
            }
            None => (token, 1),
        };
        let part: i64 = part_text
            .parse()
            .map_err(|_| PartitionError::Syntax { pos: start })?;
        if part <= 0 {
            return Err(PartitionError::NotAPartition);
        }
        pairs.push((part, mult));
        rest = &after[end_rel..];
        base = start + end_rel;
    }
    Partition::from_multiplicities(pairs)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    /// Canonical listing order: ascending by size, then lexicographically
    /// larger part sequences first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Partition", 4)?;
        st.serialize_field("parts", &self.parts)?;
        st.serialize_field("size", &self.size())?;
        st.serialize_field("length", &self.length())?;
        st.serialize_field("alt_size", &self.alt_size())?;
        st.end()
    }
}

/// An arbitrary finite integer sequence. Componentwise sums and differences
/// zero-pad the shorter operand on the right and keep the longer length.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IncrementVector {
    entries: Vec<i64>,
}

impl IncrementVector {
    pub fn new(entries: Vec<i64>) -> Self {
        IncrementVector { entries }
    }

    pub fn empty() -> Self {
        IncrementVector {
            entries: Vec::new(),
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Componentwise sum, zero-padded to the longer length.
    pub fn comp_add(&self, other: &IncrementVector) -> IncrementVector {
        self.zip_with(other, |a, b| a + b)
    }

    /// Componentwise difference, zero-padded to the longer length.
    pub fn comp_sub(&self, other: &IncrementVector) -> IncrementVector {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &IncrementVector, f: impl Fn(i64, i64) -> i64) -> IncrementVector {
        let n = self.entries.len().max(other.entries.len());
        let entries = (0..n)
            .map(|i| {
                f(
                    self.entries.get(i).copied().unwrap_or(0),
                    other.entries.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        IncrementVector { entries }
    }

    /// Sum of the entries.
    pub fn entry_sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Alternating sum of the entries, first entry counted positive.
    pub fn alt_size(&self) -> i64 {
        alt_sum(&self.entries)
    }

    /// Strips trailing zeros, then requires weakly decreasing positive
    /// entries. A zero in front of a positive entry fails.
    pub fn to_partition(&self) -> Result<Partition, PartitionError> {
        let mut parts = self.entries.clone();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }
}

impl From<&Partition> for IncrementVector {
    fn from(p: &Partition) -> Self {
        IncrementVector {
            entries: p.parts().to_vec(),
        }
    }
}

impl fmt::Display for IncrementVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for IncrementVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for e in &self.entries {
            seq.serialize_element(e)?;
        }
        seq.end()
    }
}
