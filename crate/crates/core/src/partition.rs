//! Integer partitions: the universal currency of the library.
//!
//! A [`Partition`] is a weakly decreasing sequence of positive integers.
//! Constructors validate; nothing is silently reordered, because in the
//! bijection code the order of entries is semantic. Use
//! [`Partition::from_unsorted`] when starting from a raw multiset.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition of a nonnegative integer: parts weakly decreasing, all >= 1.
///
/// The empty partition is allowed and prints as `()`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validating constructor: rejects non-positive or increasing entries.
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        for window in parts.windows(2) {
            if window[0] < window[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts must be weakly decreasing, got {} before {}",
                    window[0], window[1]
                )));
            }
        }
        if let Some(&last) = parts.last() {
            if last < 1 {
                return Err(Error::InvalidPartition(format!(
                    "parts must be positive, got {last}"
                )));
            }
        }
        Ok(Partition { parts })
    }

    /// Normalizing builder: sorts a raw multiset descending and drops zeros.
    /// Negative entries are rejected.
    pub fn from_unsorted(parts: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut parts: Vec<i64> = parts.into_iter().collect();
        if let Some(&bad) = parts.iter().find(|&&p| p < 0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be nonnegative, got {bad}"
            )));
        }
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Sum of parts.
    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part minus number of parts; 0 for the empty partition.
    pub fn rank(&self) -> i64 {
        if self.parts.is_empty() {
            0
        } else {
            self.parts[0] - self.parts.len() as i64
        }
    }

    /// Reflect the Ferrers diagram about the main diagonal.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let mut cols = Vec::with_capacity(self.parts[0] as usize);
        for j in 1..=self.parts[0] {
            cols.push(self.parts.iter().take_while(|&&p| p >= j).count() as i64);
        }
        Partition { parts: cols }
    }

    /// Multiply every part by `c` (c >= 1).
    pub fn scale(&self, c: i64) -> Result<Partition> {
        if c < 1 {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be positive, got {c}"
            )));
        }
        Ok(Partition {
            parts: self.parts.iter().map(|&p| p * c).collect(),
        })
    }

    /// Multiset union of parts, sorted weakly decreasing.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut a, mut b) = (self.parts.iter().peekable(), other.parts.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition { parts }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, part) in self.parts.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, ")")
    }
}

/// JSON form: a bare array of parts, descending, e.g. `[7,5,5,3,2,2,1]`.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<i64>::deserialize(deserializer)?;
        Partition::new(parts).map_err(D::Error::custom)
    }
}

/// Iterator over all partitions of `n` in lexicographically decreasing
/// order: `(n)` first, `(1^n)` last. For `n = 0` it yields the empty
/// partition once. This order is fixed; test fixtures rely on it.
pub struct PartitionIter {
    current: Option<Vec<i64>>,
}

impl PartitionIter {
    pub fn new(n: i64) -> Self {
        let current = if n < 0 {
            None
        } else if n == 0 {
            Some(Vec::new())
        } else {
            Some(vec![n])
        };
        PartitionIter { current }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let parts = self.current.take()?;
        // Successor: decrement the rightmost part > 1, then repack the tail
        // weight greedily with parts of the decremented size.
        let succ = parts.iter().rposition(|&p| p > 1).map(|idx| {
            let new_size = parts[idx] - 1;
            let tail_weight: i64 = parts[idx..].iter().sum();
            let mut next = parts[..idx].to_vec();
            let q = tail_weight / new_size;
            let rem = tail_weight % new_size;
            next.extend(std::iter::repeat_n(new_size, q as usize));
            if rem > 0 {
                next.push(rem);
            }
            next
        });
        self.current = succ;
        Some(Partition { parts })
    }
}

/// All partitions of `n`, lexicographically decreasing.
pub fn enumerate_partitions(n: i64) -> PartitionIter {
    PartitionIter::new(n)
}

/// All partitions of `n` whose every part satisfies `allowed`, in
/// lexicographically decreasing order.
pub fn enumerate_partitions_filtered(n: i64, allowed: impl Fn(i64) -> bool) -> Vec<Partition> {
    fn rec(
        remaining: i64,
        max_part: i64,
        allowed: &impl Fn(i64) -> bool,
        stack: &mut Vec<i64>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        for v in (1..=max_part.min(remaining)).rev() {
            if allowed(v) {
                stack.push(v);
                rec(remaining - v, v, allowed, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        rec(n, n, &allowed, &mut Vec::new(), &mut out);
    }
    out
}

/// Growable table of partition numbers p(0), p(1), ... computed with the
/// Euler pentagonal-number recurrence. All values are exact.
pub struct PartitionTable {
    values: Vec<BigUint>,
}

impl PartitionTable {
    pub fn new() -> Self {
        PartitionTable {
            values: vec![BigUint::from(1u32)],
        }
    }

    /// p(n); 0 for negative n.
    pub fn get(&mut self, n: i64) -> BigUint {
        if n < 0 {
            return BigUint::zero();
        }
        let n = n as usize;
        while self.values.len() <= n {
            let target = self.values.len() as i64;
            // p(target) = sum_{j>=1} (-1)^{j-1} [p(target - j(3j-1)/2) + p(target - j(3j+1)/2)]
            let mut acc_plus = BigUint::zero();
            let mut acc_minus = BigUint::zero();
            let mut j = 1i64;
            loop {
                let g1 = j * (3 * j - 1) / 2;
                let g2 = j * (3 * j + 1) / 2;
                if g1 > target {
                    break;
                }
                let sign_plus = j % 2 == 1;
                for g in [g1, g2] {
                    if g <= target {
                        let term = &self.values[(target - g) as usize];
                        if sign_plus {
                            acc_plus += term;
                        } else {
                            acc_minus += term;
                        }
                    }
                }
                j += 1;
            }
            self.values.push(acc_plus - acc_minus);
        }
        self.values[n].clone()
    }
}

impl Default for PartitionTable {
    fn default() -> Self {
        Self::new()
    }
}

/// p(n) via the pentagonal recurrence; 0 for n < 0.
pub fn partition_count(n: i64) -> BigUint {
    PartitionTable::new().get(n)
}
