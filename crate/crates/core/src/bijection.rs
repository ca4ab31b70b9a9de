//! The growth machine mapping bounded odd partitions to lecture hall
//! partitions of the same size, together with its trace, the reduction maps,
//! and a table-backed inverse.
//!
//! Parts are fed largest first. Feeding part `2k-1` into a machine of width
//! `N` fires the lowest row whose counter entry is zero, adds the growth
//! increment `A(row, k)` to the image componentwise, decrements every counter
//! entry above the fired row, and reloads the fired row with `N - k - row + 1`.
//! The image stays a lecture hall partition of width `N` throughout, the size
//! grows by exactly the fed part, and the alternating size grows by one, so
//! the finished image records both the size and the length of the input.
//!
//! Two linear identities tie the state together after every feed: writing
//! `d_j` for the number of times row `j` fired, `I_j` for its counter entry,
//! and `2k-1` for the most recent part,
//!
//! ```text
//! mu[2j-1] = (N - 2j + 2) * d_j - I_j   for j <= k
//! mu[2j]   = (N - 2j + 1) * d_j - I_j   for j <  k
//! ```
//!
//! (1-based image positions, missing entries read as zero). These are checked
//! after every feed in debug builds and exposed through
//! [`GrowthState::check_invariants`] for the verification drivers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::partition::{IncrementVector, Partition};
use crate::sets::{
    enumerate_reduced_odd, is_lecture_hall, is_odd_party, SetsError, MAX_ENUM_WIDTH,
};
use crate::trapezoid::increment;

/// Widest machine for which the inverse lookup table may be built.
pub const MAX_TABLE_WIDTH: usize = MAX_ENUM_WIDTH;

/// Errors from feeding a single part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeedError {
    EvenPart { part: i64 },
    /// Parts must lie in `1..=2*width-1`.
    PartOutOfRange { part: i64, width: usize },
    /// Parts must be fed in weakly decreasing order.
    OrderViolation { part: i64, last: i64 },
}

impl fmt::Display for FeedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeedError::EvenPart { part } => write!(f, "part {part} is even"),
            FeedError::PartOutOfRange { part, width } => {
                write!(f, "part {part} outside 1..={}", 2 * width - 1)
            }
            FeedError::OrderViolation { part, last } => {
                write!(f, "part {part} fed after smaller part {last}")
            }
        }
    }
}

impl std::error::Error for FeedError {}

#[derive(Debug)]
pub enum BijectionError {
    NotOddParty { width: usize },
    NotLectureHall { width: usize },
    WidthTooLarge { width: usize, max: usize },
    /// The reduced image was missing from the inverse table. This cannot
    /// happen if the finite bijection is what it claims to be; it is kept as
    /// an error so a defect would surface as data, not silence.
    TableMiss { width: usize, reduced: String },
    Feed(FeedError),
    Sets(SetsError),
}

impl fmt::Display for BijectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BijectionError::NotOddParty { width } => {
                write!(f, "not an odd partition with parts <= {}", 2 * width - 1)
            }
            BijectionError::NotLectureHall { width } => {
                write!(f, "not a lecture hall partition of width {width}")
            }
            BijectionError::WidthTooLarge { width, max } => {
                write!(f, "width {width} exceeds the inverse-table guard {max}")
            }
            BijectionError::TableMiss { width, reduced } => {
                write!(f, "reduced image {reduced} missing from the width-{width} table")
            }
            BijectionError::Feed(e) => write!(f, "{e}"),
            BijectionError::Sets(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BijectionError {}

impl From<FeedError> for BijectionError {
    fn from(e: FeedError) -> Self {
        BijectionError::Feed(e)
    }
}

impl From<SetsError> for BijectionError {
    fn from(e: SetsError) -> Self {
        BijectionError::Sets(e)
    }
}

/// The growth machine state. Values are immutable; [`GrowthState::feed`]
/// returns a new state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthState {
    width: usize,
    counter: Vec<i64>,
    actions: Vec<u64>,
    image: IncrementVector,
    last_part: Option<i64>,
}

impl GrowthState {
    /// Fresh machine: all counters and action counts zero, empty image, no
    /// part fed yet.
    pub fn new(width: usize) -> Self {
        assert!(width >= 1, "width must be positive");
        GrowthState {
            width,
            counter: vec![0; width],
            actions: vec![0; width],
            image: IncrementVector::empty(),
            last_part: None,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// The counter `I`, one entry per row.
    pub fn counter(&self) -> &[i64] {
        &self.counter
    }

    /// How many times each row has fired.
    pub fn action_counts(&self) -> &[u64] {
        &self.actions
    }

    pub fn image(&self) -> &IncrementVector {
        &self.image
    }

    /// The image as a partition; the growth rules keep it one at every step.
    pub fn image_partition(&self) -> Partition {
        self.image
            .to_partition()
            .expect("growth image is always a partition")
    }

    /// The most recently fed part, if any.
    pub fn last_part(&self) -> Option<i64> {
        self.last_part
    }

    /// The row the next feed will fire: the lowest row with counter zero.
    /// Always exists because the last row never leaves zero.
    pub fn next_row(&self) -> usize {
        self.counter
            .iter()
            .position(|&c| c == 0)
            .expect("the last counter entry never leaves zero")
            + 1
    }

    /// Feeds one odd part, no larger than the previous one, and returns the
    /// grown state.
    pub fn feed(&self, part: i64) -> Result<GrowthState, FeedError> {
        let width = self.width;
        if part < 1 || part > 2 * width as i64 - 1 {
            return Err(FeedError::PartOutOfRange { part, width });
        }
        if part % 2 == 0 {
            return Err(FeedError::EvenPart { part });
        }
        if let Some(last) = self.last_part {
            if part > last {
                return Err(FeedError::OrderViolation { part, last });
            }
        }
        let k = ((part + 1) / 2) as usize;
        let row = self.next_row();
        let reload = width as i64 - k as i64 - row as i64 + 1;
        assert!(
            reload >= 0,
            "counter underflow firing row {row} for part {part} at width {width}"
        );
        let mut next = self.clone();
        for j in 0..row - 1 {
            next.counter[j] -= 1;
        }
        next.counter[row - 1] = reload;
        next.actions[row - 1] += 1;
        next.image = next.image.comp_add(&increment(row, k));
        next.last_part = Some(part);
        #[cfg(debug_assertions)]
        if let Err(msg) = next.check_invariants() {
            panic!("growth invariants broken after feeding {part}: {msg}");
        }
        Ok(next)
    }

    /// Verifies every structural invariant of the state, including the two
    /// linear identities relating image entries, action counts, and counter.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.width as i64;
        for (j0, &c) in self.counter.iter().enumerate() {
            let j = j0 as i64 + 1;
            if c < 0 || c > n - j {
                return Err(format!("counter row {j} holds {c}, outside 0..={}", n - j));
            }
        }
        if self.counter[self.width - 1] != 0 {
            return Err("last counter row left zero".to_string());
        }
        if let Some(last) = self.last_part {
            let k = (last + 1) / 2;
            // rows from N-k+1 on must be zero once the smallest part is 2k-1
            for j in (n - k + 1)..=n {
                if j >= 1 && self.counter[j as usize - 1] != 0 {
                    return Err(format!(
                        "counter row {j} nonzero although smallest part is {last}"
                    ));
                }
            }
        }
        let mu = self
            .image
            .to_partition()
            .map_err(|e| format!("image is not a partition: {e}"))?;
        if !is_lecture_hall(mu.parts(), self.width) {
            return Err(format!("image {mu} is not lecture hall at width {n}"));
        }
        let k_bound = self.last_part.map(|p| (p + 1) / 2).unwrap_or(n + 1);
        for j in 1..=self.width {
            let d = self.actions[j - 1] as i64;
            let c = self.counter[j - 1];
            let j_i = j as i64;
            if j_i <= k_bound {
                let lhs = mu.part_or_zero(2 * j - 1);
                let rhs = (n - 2 * j_i + 2) * d - c;
                if lhs != rhs {
                    return Err(format!(
                        "odd-position identity fails at row {j}: mu[{}]={lhs} vs {rhs}",
                        2 * j - 1
                    ));
                }
            }
            if j_i < k_bound {
                let lhs = mu.part_or_zero(2 * j);
                let rhs = (n - 2 * j_i + 1) * d - c;
                if lhs != rhs {
                    return Err(format!(
                        "even-position identity fails at row {j}: mu[{}]={lhs} vs {rhs}",
                        2 * j
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One recorded feed of [`trace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub part: i64,
    pub k: usize,
    pub row: usize,
    pub increment: IncrementVector,
    pub counter: Vec<i64>,
    pub actions: Vec<u64>,
    pub image: Partition,
}

/// A full growth run: one step per fed part plus the final state.
#[derive(Clone, Debug)]
pub struct GrowthTrace {
    pub steps: Vec<TraceStep>,
    pub final_state: GrowthState,
}

fn require_odd_party(width: usize, lambda: &Partition) -> Result<(), BijectionError> {
    if is_odd_party(lambda, width) {
        Ok(())
    } else {
        Err(BijectionError::NotOddParty { width })
    }
}

/// The growth map: folds the parts of `lambda` (largest first) through a
/// fresh machine of the given width. Preserves size; the alternating size of
/// the result is the length of `lambda`.
pub fn phi(width: usize, lambda: &Partition) -> Result<Partition, BijectionError> {
    require_odd_party(width, lambda)?;
    let mut state = GrowthState::new(width);
    for &part in lambda.parts() {
        state = state.feed(part)?;
    }
    Ok(state.image_partition())
}

/// Like [`phi`], recording every step.
pub fn trace(width: usize, lambda: &Partition) -> Result<GrowthTrace, BijectionError> {
    require_odd_party(width, lambda)?;
    let mut state = GrowthState::new(width);
    let mut steps = Vec::with_capacity(lambda.length());
    for &part in lambda.parts() {
        let k = ((part + 1) / 2) as usize;
        let row = state.next_row();
        state = state.feed(part)?;
        steps.push(TraceStep {
            part,
            k,
            row,
            increment: increment(row, k),
            counter: state.counter().to_vec(),
            actions: state.action_counts().to_vec(),
            image: state.image_partition(),
        });
    }
    Ok(GrowthTrace {
        steps,
        final_state: state,
    })
}

/// Result of a reduction: the reduced partition plus how many blocks were
/// extracted per odd-part index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduced: Partition,
    /// `counts[k-1]` blocks were removed for index `k`.
    pub counts: Vec<u64>,
}

/// Strips full blocks from an odd partition: for each `k`, removes copies of
/// `2k-1` in groups of `width - k + 1` until at most `width - k` remain. The
/// result is a reduced odd partition and the input is recovered by unioning
/// the extracted blocks back in.
pub fn reduce_odd(width: usize, lambda: &Partition) -> Result<ReductionResult, BijectionError> {
    require_odd_party(width, lambda)?;
    let mut mults = lambda.multiplicities();
    let mut counts = vec![0u64; width];
    for k in 1..=width {
        let part = 2 * k as i64 - 1;
        let have = mults.get(&part).copied().unwrap_or(0);
        let block = width - k + 1;
        let c = have / block;
        if c > 0 {
            counts[k - 1] = c as u64;
            mults.insert(part, have - c * block);
        }
    }
    let reduced = Partition::from_multiplicities(mults).expect("odd parts stay positive");
    Ok(ReductionResult { reduced, counts })
}

/// Whether the staircase prefix of length `j` can be removed at this point:
/// `mu[j]/(width-j+1) - 1 >= mu[j+1]/(width-j)`, cross-multiplied, with the
/// entry past the end read as zero.
fn staircase_removable(parts: &[i64], width: usize, j: usize) -> bool {
    let w = width as i64;
    let j_i = j as i64;
    let next = if j < parts.len() { parts[j] } else { 0 };
    (parts[j - 1] - (w - j_i + 1)) * (w - j_i) >= next * (w - j_i + 1)
}

/// The staircase index: removing the prefix staircase of length `j` takes
/// away exactly the trapezoid staircase for this `k`.
fn staircase_index(width: usize, j: usize) -> usize {
    if j % 2 == 1 {
        (j + 1) / 2
    } else {
        width + 1 - j / 2
    }
}

/// Repeatedly subtracts the longest-possible prefix staircase at the
/// smallest removable position until the partition is reduced. Each removed
/// staircase is a trapezoid staircase; the input is recovered by adding them
/// back componentwise.
pub fn reduce_lh(width: usize, mu: &Partition) -> Result<ReductionResult, BijectionError> {
    if !is_lecture_hall(mu.parts(), width) {
        return Err(BijectionError::NotLectureHall { width });
    }
    let mut parts = mu.parts().to_vec();
    let mut counts = vec![0u64; width];
    loop {
        let len = parts.len();
        let fired = (1..=len).find(|&j| staircase_removable(&parts, width, j));
        match fired {
            None => break,
            Some(j) => {
                for (idx, entry) in parts.iter_mut().take(j).enumerate() {
                    *entry -= width as i64 - idx as i64;
                }
                while parts.last() == Some(&0) {
                    parts.pop();
                }
                counts[staircase_index(width, j) - 1] += 1;
                debug_assert!(is_lecture_hall(&parts, width));
            }
        }
    }
    let reduced = Partition::new(parts).expect("reduction preserves the partition shape");
    Ok(ReductionResult { reduced, counts })
}

type PhiTable = Arc<BTreeMap<Partition, Partition>>;

fn phi_table(width: usize) -> Result<PhiTable, BijectionError> {
    static TABLES: OnceLock<Mutex<BTreeMap<usize, PhiTable>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&width) {
        return Ok(t.clone());
    }
    // Built outside the lock; a concurrent duplicate build is idempotent.
    let mut table = BTreeMap::new();
    for lambda in enumerate_reduced_odd(width)? {
        let image = phi(width, &lambda)?;
        table.insert(image, lambda);
    }
    let arc: PhiTable = Arc::new(table);
    Ok(tables
        .lock()
        .unwrap()
        .entry(width)
        .or_insert(arc)
        .clone())
}

/// Inverts the growth map on a lecture hall partition: reduce, look the
/// reduced image up in the finite table, and union the extracted blocks back
/// as runs of odd parts.
pub fn phi_inverse(width: usize, mu: &Partition) -> Result<Partition, BijectionError> {
    if width > MAX_TABLE_WIDTH {
        return Err(BijectionError::WidthTooLarge {
            width,
            max: MAX_TABLE_WIDTH,
        });
    }
    let reduction = reduce_lh(width, mu)?;
    let table = phi_table(width)?;
    let mut answer = table
        .get(&reduction.reduced)
        .ok_or_else(|| BijectionError::TableMiss {
            width,
            reduced: reduction.reduced.to_string(),
        })?
        .clone();
    for (k0, &c) in reduction.counts.iter().enumerate() {
        if c > 0 {
            let k = k0 + 1;
            let part = 2 * k as i64 - 1;
            let copies = c as usize * (width - k + 1);
            answer = answer.union(&Partition::repeated(part, copies).expect("odd part"));
        }
    }
    Ok(answer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use crate::sets::{enumerate_lh_up_to, enumerate_op_up_to, is_reduced_lh, is_reduced_odd};
    use crate::trapezoid::trapezoid_partition;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn iv(entries: &[i64]) -> IncrementVector {
        IncrementVector::new(entries.to_vec())
    }

    #[test]
    fn fresh_state() {
        let s = GrowthState::new(7);
        assert_eq!(s.counter(), &[0; 7]);
        assert_eq!(s.action_counts(), &[0; 7]);
        assert!(s.image().is_empty());
        assert_eq!(s.last_part(), None);
        assert_eq!(GrowthState::new(1).counter(), &[0]);
        assert_eq!(s.image_partition().size(), 0);
    }

    #[test]
    fn feed_reproduces_the_worked_width_7_run() {
        let s = GrowthState::new(7);
        let s = s.feed(11).unwrap();
        assert_eq!(s.image_partition(), p(&[6, 5]));
        assert_eq!(s.counter(), &[1, 0, 0, 0, 0, 0, 0]);
        let s = s.feed(9).unwrap();
        assert_eq!(s.image_partition(), p(&[7, 6, 4, 3]));
        assert_eq!(s.counter(), &[0, 1, 0, 0, 0, 0, 0]);
        let s = s.feed(7).unwrap();
        assert_eq!(s.image_partition(), p(&[11, 9, 4, 3]));
        assert_eq!(s.counter(), &[3, 1, 0, 0, 0, 0, 0]);
        let s = s.feed(7).unwrap();
        assert_eq!(s.image_partition(), p(&[12, 10, 5, 4, 2, 1]));
        assert_eq!(s.counter(), &[2, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn feed_errors() {
        let s = GrowthState::new(4);
        assert_eq!(s.feed(4), Err(FeedError::EvenPart { part: 4 }));
        assert_eq!(
            s.feed(9),
            Err(FeedError::PartOutOfRange { part: 9, width: 4 })
        );
        assert_eq!(
            s.feed(0),
            Err(FeedError::PartOutOfRange { part: 0, width: 4 })
        );
        let s = s.feed(3).unwrap();
        assert_eq!(s.feed(5), Err(FeedError::OrderViolation { part: 5, last: 3 }));
        assert!(s.feed(3).is_ok());
    }

    #[test]
    fn phi_examples() {
        let lam = Partition::parse("1^4 3^2 7^3 9 11").unwrap();
        assert_eq!(phi(7, &lam).unwrap(), p(&[20, 13, 9, 6, 2, 1]));
        assert_eq!(phi(4, &p(&[5, 5])).unwrap(), p(&[4, 3, 2, 1]));
        // at width 3 the second 5 fires row 1 again: image entries are
        // 3*d_1 - I_1 = 6 and 2*d_1 - I_1 = 4
        assert_eq!(phi(3, &p(&[5, 5])).unwrap(), p(&[6, 4]));
        assert_eq!(phi(5, &Partition::empty()).unwrap(), Partition::empty());
        assert!(matches!(
            phi(3, &p(&[2])),
            Err(BijectionError::NotOddParty { .. })
        ));
        assert!(matches!(
            phi(3, &p(&[9])),
            Err(BijectionError::NotOddParty { .. })
        ));
    }

    #[test]
    fn phi_of_repeated_part_is_a_staircase() {
        for k in 1..=4usize {
            let part = 2 * k as i64 - 1;
            for m in 0..=4usize {
                let width = k + m; // wide enough that rows fire in order
                let lam = Partition::repeated(part, m).unwrap();
                assert_eq!(
                    phi(width, &lam).unwrap(),
                    trapezoid_partition(k + m - 1, k),
                    "k={k} m={m}"
                );
            }
        }
    }

    #[test]
    fn trace_matches_the_worked_example() {
        let lam = Partition::parse("1^4 3^2 7^3 9 11").unwrap();
        let tr = trace(7, &lam).unwrap();
        assert_eq!(tr.steps.len(), 11);
        assert_eq!(tr.final_state.counter(), &[1, 3, 2, 0, 1, 1, 0]);
        assert_eq!(tr.final_state.action_counts(), &[3, 3, 2, 1, 1, 1, 0]);
        assert_eq!(tr.steps[0].increment, iv(&[6, 5]));
        assert_eq!(tr.steps[1].increment, iv(&[1, 1, 4, 3]));
        assert_eq!(tr.steps[10].image, p(&[20, 13, 9, 6, 2, 1]));
        let empty = trace(3, &Partition::empty()).unwrap();
        assert!(empty.steps.is_empty());
    }

    #[test]
    fn reduce_odd_examples() {
        let r = reduce_odd(3, &p(&[1, 1, 1])).unwrap();
        assert_eq!(r.reduced, Partition::empty());
        assert_eq!(r.counts, vec![1, 0, 0]);

        for lam in enumerate_reduced_odd(3).unwrap() {
            let r = reduce_odd(3, &lam).unwrap();
            assert_eq!(r.reduced, lam);
            assert_eq!(r.counts, vec![0, 0, 0]);
        }

        let r = reduce_odd(2, &p(&[3, 3, 1, 1, 1])).unwrap();
        assert_eq!(r.reduced, p(&[1]));
        assert_eq!(r.counts, vec![1, 2]);
    }

    #[test]
    fn reduce_odd_reconstructs_the_input() {
        for lam in enumerate_op_up_to(4, 25).unwrap() {
            let r = reduce_odd(4, &lam).unwrap();
            assert!(is_reduced_odd(&r.reduced, 4));
            let mut rebuilt = r.reduced.clone();
            for (k0, &c) in r.counts.iter().enumerate() {
                let k = k0 + 1;
                rebuilt = rebuilt.union(
                    &Partition::repeated(2 * k as i64 - 1, c as usize * (4 - k + 1)).unwrap(),
                );
            }
            assert_eq!(rebuilt, lam);
        }
    }

    #[test]
    fn reduce_lh_examples() {
        let r = reduce_lh(3, &p(&[5, 1])).unwrap();
        assert_eq!(r.reduced, p(&[2, 1]));
        assert_eq!(r.counts, vec![1, 0, 0]);

        let r = reduce_lh(3, &p(&[4, 1])).unwrap();
        assert_eq!(r.reduced, p(&[4, 1]));
        assert_eq!(r.counts, vec![0, 0, 0]);

        // (4,3,2,1) is itself the k=3 staircase of width 4 (even prefix
        // length 4 maps to index 4+1-2=3)
        let r = reduce_lh(4, &p(&[4, 3, 2, 1])).unwrap();
        assert_eq!(r.reduced, Partition::empty());
        assert_eq!(r.counts, vec![0, 0, 1, 0]);

        assert!(matches!(
            reduce_lh(3, &p(&[4, 3, 1])),
            Err(BijectionError::NotLectureHall { .. })
        ));
    }

    #[test]
    fn reduce_lh_reconstructs_and_lands_reduced() {
        for width in 1..=4usize {
            for mu in enumerate_lh_up_to(width, 25).unwrap() {
                let r = reduce_lh(width, &mu).unwrap();
                assert!(is_reduced_lh(&r.reduced, width).unwrap(), "mu={mu}");
                let mut rebuilt = IncrementVector::from(&r.reduced);
                for (k0, &c) in r.counts.iter().enumerate() {
                    let stair = IncrementVector::from(&trapezoid_partition(width, k0 + 1));
                    for _ in 0..c {
                        rebuilt = rebuilt.comp_add(&stair);
                    }
                }
                assert_eq!(rebuilt.to_partition().unwrap(), mu, "width={width}");
            }
        }
    }

    // independent largest-position reducer; the reduced output must agree
    fn reduce_lh_largest_first(width: usize, mu: &Partition) -> Partition {
        let mut parts = mu.parts().to_vec();
        loop {
            let len = parts.len();
            let fired = (1..=len)
                .rev()
                .find(|&j| staircase_removable(&parts, width, j));
            match fired {
                None => break,
                Some(j) => {
                    for (idx, entry) in parts.iter_mut().take(j).enumerate() {
                        *entry -= width as i64 - idx as i64;
                    }
                    while parts.last() == Some(&0) {
                        parts.pop();
                    }
                }
            }
        }
        Partition::new(parts).unwrap()
    }

    #[test]
    fn reduce_lh_order_does_not_matter() {
        for width in 1..=5usize {
            for mu in enumerate_lh_up_to(width, 40).unwrap() {
                let smallest = reduce_lh(width, &mu).unwrap().reduced;
                let largest = reduce_lh_largest_first(width, &mu);
                assert_eq!(smallest, largest, "width={width} mu={mu}");
            }
        }
    }

    #[test]
    fn phi_inverse_examples() {
        let lam = Partition::parse("1^4 3^2 7^3 9 11").unwrap();
        assert_eq!(phi_inverse(7, &p(&[20, 13, 9, 6, 2, 1])).unwrap(), lam);
        assert_eq!(phi_inverse(4, &Partition::empty()).unwrap(), Partition::empty());
        assert_eq!(phi_inverse(3, &p(&[5, 1])).unwrap(), p(&[3, 1, 1, 1]));
        assert!(matches!(
            phi_inverse(3, &p(&[4, 3, 1])),
            Err(BijectionError::NotLectureHall { .. })
        ));
        assert!(matches!(
            phi_inverse(10, &Partition::empty()),
            Err(BijectionError::WidthTooLarge { .. })
        ));
    }

    #[test]
    fn phi_inverse_round_trips_exhaustively() {
        for lam in enumerate_op_up_to(3, 25).unwrap() {
            let mu = phi(3, &lam).unwrap();
            assert_eq!(mu.size(), lam.size());
            assert_eq!(mu.alt_size(), lam.length() as i64);
            assert_eq!(phi_inverse(3, &mu).unwrap(), lam, "lam={lam}");
        }
        for mu in enumerate_lh_up_to(3, 25).unwrap() {
            let lam = phi_inverse(3, &mu).unwrap();
            assert_eq!(phi(3, &lam).unwrap(), mu, "mu={mu}");
        }
    }

    #[test]
    fn block_feeds_add_a_staircase_and_restore_the_counter() {
        for width in 1..=5usize {
            for k in 1..=width {
                let part = 2 * k as i64 - 1;
                let block = Partition::repeated(part, width - k + 1).unwrap();
                let base_candidates = [
                    Partition::empty(),
                    Partition::repeated(2 * width as i64 - 1, 2).unwrap(),
                    Partition::repeated(part, 1).unwrap(),
                ];
                for base in base_candidates {
                    if !is_odd_party(&base, width) {
                        continue;
                    }
                    let fold = |lam: &Partition| {
                        let mut s = GrowthState::new(width);
                        for &q in lam.parts() {
                            s = s.feed(q).unwrap();
                        }
                        s
                    };
                    let s_base = fold(&base);
                    let s_full = fold(&base.union(&block));
                    assert_eq!(s_base.counter(), s_full.counter(), "width={width} k={k}");
                    let expected = IncrementVector::from(&s_base.image_partition())
                        .comp_add(&IncrementVector::from(&trapezoid_partition(width, k)));
                    assert_eq!(
                        s_full.image_partition(),
                        expected.to_partition().unwrap(),
                        "width={width} k={k} base={base}"
                    );
                }
            }
        }
    }

    #[test]
    fn invariants_hold_on_every_feed_for_small_reduced_inputs() {
        for lam in enumerate_reduced_odd(4).unwrap() {
            let mut s = GrowthState::new(4);
            for &part in lam.parts() {
                s = s.feed(part).unwrap();
                s.check_invariants().unwrap();
            }
            for j in 0..3 {
                let diff = s.action_counts()[j] as i64 - s.action_counts()[j + 1] as i64;
                assert!((0..=1).contains(&diff), "lam={lam} j={j}");
            }
        }
    }
}
