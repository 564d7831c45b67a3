//! Frobenius symbols and their correspondence with partitions.
//!
//! A Frobenius symbol is a two-rowed array with both rows strictly
//! decreasing and nonnegative, of common length delta (the side of the
//! Durfee square of the corresponding partition). Column t of the symbol of
//! a partition p is `(p[t] - t, p'[t] - t)` where p' is the conjugate.
//! The weight is `sum_t (top[t] + bottom[t] + 1)` and equals the weight of
//! the partition.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Two equal-length strictly decreasing rows of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FrobeniusSymbol {
    top: Vec<i64>,
    bottom: Vec<i64>,
}

fn check_row(row: &[i64], name: &str) -> Result<()> {
    for window in row.windows(2) {
        if window[0] <= window[1] {
            return Err(Error::InvalidSymbol(format!(
                "{name} row must be strictly decreasing, got {} before {}",
                window[0], window[1]
            )));
        }
    }
    if let Some(&last) = row.last() {
        if last < 0 {
            return Err(Error::InvalidSymbol(format!(
                "{name} row must be nonnegative, got {last}"
            )));
        }
    }
    Ok(())
}

impl FrobeniusSymbol {
    pub fn empty() -> Self {
        FrobeniusSymbol {
            top: Vec::new(),
            bottom: Vec::new(),
        }
    }

    /// Validating constructor.
    pub fn new(top: Vec<i64>, bottom: Vec<i64>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::InvalidSymbol(format!(
                "rows must have equal length, got {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        check_row(&top, "top")?;
        check_row(&bottom, "bottom")?;
        Ok(FrobeniusSymbol { top, bottom })
    }

    pub fn top(&self) -> &[i64] {
        &self.top
    }

    pub fn bottom(&self) -> &[i64] {
        &self.bottom
    }

    /// Number of columns (the Durfee side delta).
    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    /// Column `t`, 0-based, as `(top, bottom)`.
    pub fn column(&self, t: usize) -> (i64, i64) {
        (self.top[t], self.bottom[t])
    }

    pub fn columns(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.top.iter().copied().zip(self.bottom.iter().copied())
    }

    /// `sum_t (top[t] + bottom[t] + 1)`.
    pub fn weight(&self) -> i64 {
        self.columns().map(|(a, b)| a + b + 1).sum()
    }

    /// `top[0] - bottom[0]`; 0 when empty. Equals the rank of the partition.
    pub fn rank(&self) -> i64 {
        if self.is_empty() {
            0
        } else {
            self.top[0] - self.bottom[0]
        }
    }

    /// Exchange the rows; the symbol of the conjugate partition.
    pub fn swap_rows(&self) -> FrobeniusSymbol {
        FrobeniusSymbol {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    /// Contiguous columns `range` (0-based) as a symbol; always valid.
    pub fn section(&self, range: std::ops::Range<usize>) -> FrobeniusSymbol {
        FrobeniusSymbol {
            top: self.top[range.clone()].to_vec(),
            bottom: self.bottom[range].to_vec(),
        }
    }

    /// Place the columns of `self` before the columns of `right`,
    /// validating strict decrease across the seam.
    pub fn join(&self, right: &FrobeniusSymbol) -> Result<FrobeniusSymbol> {
        let mut top = self.top.clone();
        let mut bottom = self.bottom.clone();
        top.extend_from_slice(&right.top);
        bottom.extend_from_slice(&right.bottom);
        FrobeniusSymbol::new(top, bottom)
    }

    /// The partition this symbol encodes. Rows 1..=delta are `top[t] + t`;
    /// the rows below the Durfee square are read off the bottom row.
    pub fn to_partition(&self) -> Partition {
        let delta = self.len();
        let mut parts: Vec<i64> = self
            .top
            .iter()
            .enumerate()
            .map(|(idx, &a)| a + idx as i64 + 1)
            .collect();
        // heights of the first delta columns; weakly decreasing because the
        // bottom row decreases strictly
        let heights: Vec<i64> = self
            .bottom
            .iter()
            .enumerate()
            .map(|(idx, &b)| b + idx as i64 + 1)
            .collect();
        let mut j = delta as i64 + 1;
        loop {
            let row = heights.iter().take_while(|&&h| h >= j).count() as i64;
            if row == 0 {
                break;
            }
            parts.push(row);
            j += 1;
        }
        Partition::new(parts).expect("symbol rows decode to a valid partition")
    }
}

impl Partition {
    /// The Frobenius symbol of this partition.
    pub fn to_frobenius(&self) -> FrobeniusSymbol {
        let parts = self.parts();
        let delta = parts
            .iter()
            .enumerate()
            .take_while(|&(idx, &p)| p - idx as i64 > 0)
            .count();
        let conj = self.conjugate();
        let top = (0..delta).map(|t| parts[t] - t as i64 - 1).collect();
        let bottom = (0..delta).map(|t| conj.parts()[t] - t as i64 - 1).collect();
        FrobeniusSymbol { top, bottom }
    }
}

/// Spec-level free functions mirroring the conversion methods.
pub fn to_frobenius(p: &Partition) -> FrobeniusSymbol {
    p.to_frobenius()
}

pub fn from_frobenius(f: &FrobeniusSymbol) -> Partition {
    f.to_partition()
}

impl fmt::Debug for FrobeniusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} / {:?})", self.top, self.bottom)
    }
}

impl fmt::Display for FrobeniusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[i64]| {
            r.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "({} / {})", row(&self.top), row(&self.bottom))
    }
}

#[derive(Serialize, Deserialize)]
struct SymbolRepr {
    top: Vec<i64>,
    bottom: Vec<i64>,
}

/// JSON form: `{"top":[...],"bottom":[...]}`.
impl Serialize for FrobeniusSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SymbolRepr {
            top: self.top.clone(),
            bottom: self.bottom.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FrobeniusSymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SymbolRepr::deserialize(deserializer)?;
        FrobeniusSymbol::new(repr.top, repr.bottom).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sym(top: &[i64], bottom: &[i64]) -> FrobeniusSymbol {
        FrobeniusSymbol::new(top.to_vec(), bottom.to_vec()).unwrap()
    }

    #[test]
    fn constructor_rejects_malformed() {
        assert!(FrobeniusSymbol::new(vec![2, 2], vec![1, 0]).is_err());
        assert!(FrobeniusSymbol::new(vec![2], vec![1, 0]).is_err());
        assert!(FrobeniusSymbol::new(vec![2, -1], vec![1, 0]).is_err());
    }

    #[test]
    fn worked_conversion() {
        let q = p(&[7, 5, 5, 3, 2, 2, 1]);
        assert_eq!(q.to_frobenius(), sym(&[6, 3, 2], &[6, 4, 1]));
        assert_eq!(sym(&[6, 3, 2], &[6, 4, 1]).to_partition(), q);
    }

    #[test]
    fn small_conversions() {
        assert_eq!(Partition::empty().to_frobenius(), FrobeniusSymbol::empty());
        assert_eq!(FrobeniusSymbol::empty().to_partition(), Partition::empty());
        assert_eq!(p(&[1]).to_frobenius(), sym(&[0], &[0]));
        assert_eq!(sym(&[1, 0], &[2, 0]).to_partition(), p(&[2, 2, 1]));
    }

    #[test]
    fn roundtrip_weight_and_rank_up_to_18() {
        for n in 0..=18 {
            for q in enumerate_partitions(n) {
                let f = q.to_frobenius();
                assert_eq!(f.weight(), q.weight());
                assert_eq!(f.to_partition(), q);
                if !q.is_empty() {
                    assert_eq!(f.rank(), q.rank());
                }
            }
        }
    }

    #[test]
    fn conjugate_is_row_swap_up_to_18() {
        for n in 0..=18 {
            for q in enumerate_partitions(n) {
                assert_eq!(q.conjugate().to_frobenius(), q.to_frobenius().swap_rows());
            }
        }
    }

    #[test]
    fn join_validates_seam() {
        let left = sym(&[5, 4], &[3, 2]);
        let right = sym(&[3], &[1]);
        assert_eq!(left.join(&right).unwrap(), sym(&[5, 4, 3], &[3, 2, 1]));
        assert!(left.join(&sym(&[4], &[0])).is_err());
        assert!(left.join(&sym(&[3], &[2])).is_err());
    }

    #[test]
    fn json_shapes() {
        let f = sym(&[6, 3, 2], &[6, 4, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"top":[6,3,2],"bottom":[6,4,1]}"#);
        assert_eq!(serde_json::from_str::<FrobeniusSymbol>(&s).unwrap(), f);
        assert!(serde_json::from_str::<FrobeniusSymbol>(r#"{"top":[1,2],"bottom":[1,0]}"#).is_err());
        let q = p(&[3, 1]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[3,1]");
    }
}
