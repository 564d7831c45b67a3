//! (k,i)-parity blocks, anchors, singularity, and dotted runs.
//!
//! Fix integers k >= 3 and 1 <= i <= k-1. A column `(a, b)` of a Frobenius
//! symbol is (k,i)-positive if `a - b >= k-i-1`, (k,i)-negative if
//! `a - b <= -i+1`, and (k,i)-neutral in between (the neutral range may be
//! empty). The symbol splits into parity blocks: the columns before the
//! first non-neutral column form the block `E` (absent when empty), and
//! each following block starts at an anchor (a non-neutral column) and
//! extends maximally to the right over neutral and same-parity columns.
//! Anchor parities alternate.
//!
//! A singular overpartition places at most one overline per row, only at
//! anchors, per four conditions; equivalently it dots a run of consecutive
//! blocks. The correspondence implemented here:
//!
//! * no overline <-> no dotted blocks;
//! * one overline at the anchor of block v (top row if positive, bottom if
//!   negative) <-> blocks dotted from the first non-E block through v;
//! * two overlines at adjacent anchors (top on the positive block, bottom
//!   on the negative) <-> blocks dotted from the second non-E block through
//!   the block of the rightmost overlined entry.
//!
//! A symbol with B >= 1 non-E blocks therefore has exactly 2B dotted
//! configurations (1 undotted, B runs from the first block, B-1 from the
//! second); an all-neutral symbol has only the undotted one.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frobenius::FrobeniusSymbol;

/// The modulus pair (k, i): k >= 3, 1 <= i <= k-1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModulusPair {
    k: i64,
    i: i64,
}

impl ModulusPair {
    pub fn new(k: i64, i: i64) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidModulus(format!("k must be >= 3, got {k}")));
        }
        if i < 1 || i > k - 1 {
            return Err(Error::InvalidModulus(format!(
                "i must satisfy 1 <= i <= k-1, got i={i} for k={k}"
            )));
        }
        Ok(ModulusPair { k, i })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn i(&self) -> i64 {
        self.i
    }

    /// The mirrored pair (k, k-i); always valid.
    pub fn flip(&self) -> ModulusPair {
        ModulusPair {
            k: self.k,
            i: self.k - self.i,
        }
    }

    /// True when i = -i mod k, the case where the two overlinable residues
    /// collide and the restricted-overpartition side is undefined.
    pub fn residues_collide(&self) -> bool {
        self.k == 2 * self.i
    }
}

impl fmt::Debug for ModulusPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.i)
    }
}

impl fmt::Display for ModulusPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.i)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum ColumnParity {
    Positive,
    Negative,
    Neutral,
}

/// Classify the column `(a, b)` under `(k, i)`.
pub fn column_parity(modulus: ModulusPair, a: i64, b: i64) -> ColumnParity {
    let diff = a - b;
    if diff >= modulus.k - modulus.i - 1 {
        ColumnParity::Positive
    } else if diff <= -modulus.i + 1 {
        ColumnParity::Negative
    } else {
        ColumnParity::Neutral
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum BlockKind {
    /// Leading all-neutral block.
    E,
    /// Positive-anchored block.
    P,
    /// Negative-anchored block.
    N,
}

impl BlockKind {
    fn of(parity: ColumnParity) -> BlockKind {
        match parity {
            ColumnParity::Positive => BlockKind::P,
            ColumnParity::Negative => BlockKind::N,
            ColumnParity::Neutral => BlockKind::E,
        }
    }

    pub fn opposite(self) -> BlockKind {
        match self {
            BlockKind::P => BlockKind::N,
            BlockKind::N => BlockKind::P,
            BlockKind::E => BlockKind::E,
        }
    }
}

/// One parity block: a contiguous 1-based column range. The anchor of a
/// non-E block is its first column.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub kind: BlockKind,
    pub anchor: Option<usize>,
}

impl Block {
    pub fn contains(&self, column: usize) -> bool {
        self.start <= column && column <= self.end
    }
}

/// The ordered parity blocks of a symbol. At most one E block, always
/// first; anchor parities strictly alternate across the non-E blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn has_e_block(&self) -> bool {
        self.blocks.first().is_some_and(|b| b.kind == BlockKind::E)
    }

    /// The non-E blocks in order.
    pub fn non_e_blocks(&self) -> &[Block] {
        if self.has_e_block() {
            &self.blocks[1..]
        } else {
            &self.blocks
        }
    }

    /// B, the number of non-E blocks.
    pub fn non_e_count(&self) -> usize {
        self.non_e_blocks().len()
    }

    /// 1-based index among non-E blocks of the block containing `column`,
    /// or None if the column is in the E block or out of range.
    pub fn non_e_index_of_column(&self, column: usize) -> Option<usize> {
        self.non_e_blocks()
            .iter()
            .position(|b| b.contains(column))
            .map(|idx| idx + 1)
    }
}

/// Split a symbol into its (k,i)-parity blocks.
pub fn decompose_blocks(modulus: ModulusPair, symbol: &FrobeniusSymbol) -> BlockDecomposition {
    let parities: Vec<ColumnParity> = symbol
        .columns()
        .map(|(a, b)| column_parity(modulus, a, b))
        .collect();
    let delta = parities.len();
    let mut blocks = Vec::new();
    let Some(first_anchor) = parities.iter().position(|&p| p != ColumnParity::Neutral) else {
        if delta > 0 {
            blocks.push(Block {
                start: 1,
                end: delta,
                kind: BlockKind::E,
                anchor: None,
            });
        }
        return BlockDecomposition { blocks };
    };
    if first_anchor > 0 {
        blocks.push(Block {
            start: 1,
            end: first_anchor,
            kind: BlockKind::E,
            anchor: None,
        });
    }
    let mut start = first_anchor; // 0-based anchor of the current block
    let mut kind = BlockKind::of(parities[start]);
    for (idx, &parity) in parities.iter().enumerate().skip(first_anchor + 1) {
        if parity != ColumnParity::Neutral && BlockKind::of(parity) != kind {
            blocks.push(Block {
                start: start + 1,
                end: idx,
                kind,
                anchor: Some(start + 1),
            });
            start = idx;
            kind = BlockKind::of(parity);
        }
    }
    blocks.push(Block {
        start: start + 1,
        end: delta,
        kind,
        anchor: Some(start + 1),
    });
    BlockDecomposition { blocks }
}

/// A Frobenius symbol with at most one overlined entry per row, recorded
/// by 1-based column index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OverlinedFrobenius {
    symbol: FrobeniusSymbol,
    top_overline: Option<usize>,
    bottom_overline: Option<usize>,
}

impl OverlinedFrobenius {
    pub fn new(
        symbol: FrobeniusSymbol,
        top_overline: Option<usize>,
        bottom_overline: Option<usize>,
    ) -> Result<Self> {
        let delta = symbol.len();
        for (row, idx) in [("top", top_overline), ("bottom", bottom_overline)] {
            if let Some(idx) = idx {
                if idx < 1 || idx > delta {
                    return Err(Error::InvalidSymbol(format!(
                        "{row} overline column {idx} out of range 1..={delta}"
                    )));
                }
            }
        }
        Ok(OverlinedFrobenius {
            symbol,
            top_overline,
            bottom_overline,
        })
    }

    pub fn symbol(&self) -> &FrobeniusSymbol {
        &self.symbol
    }

    pub fn top_overline(&self) -> Option<usize> {
        self.top_overline
    }

    pub fn bottom_overline(&self) -> Option<usize> {
        self.bottom_overline
    }
}

/// The four singularity conditions: no overlines; a lone top overline at
/// the anchor of a positive block; a lone bottom overline at the anchor of
/// a negative block; or two overlines at adjacent anchors, top on the
/// positive block and bottom on the negative one.
pub fn is_singular(modulus: ModulusPair, overlined: &OverlinedFrobenius) -> bool {
    let decomposition = decompose_blocks(modulus, overlined.symbol());
    let non_e = decomposition.non_e_blocks();
    let anchor_of = |kind: BlockKind, column: usize| -> Option<usize> {
        non_e
            .iter()
            .position(|b| b.kind == kind && b.anchor == Some(column))
    };
    match (overlined.top_overline(), overlined.bottom_overline()) {
        (None, None) => true,
        (Some(col), None) => anchor_of(BlockKind::P, col).is_some(),
        (None, Some(col)) => anchor_of(BlockKind::N, col).is_some(),
        (Some(top_col), Some(bottom_col)) => {
            match (
                anchor_of(BlockKind::P, top_col),
                anchor_of(BlockKind::N, bottom_col),
            ) {
                (Some(p_idx), Some(n_idx)) => p_idx.abs_diff(n_idx) == 1,
                _ => false,
            }
        }
    }
}

/// Where a dotted run starts: at the first or the second non-E block.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DotStart {
    FirstNonNeutral,
    SecondNonNeutral,
}

impl DotStart {
    /// 1-based non-E index of the first dotted block.
    pub fn index(self) -> usize {
        match self {
            DotStart::FirstNonNeutral => 1,
            DotStart::SecondNonNeutral => 2,
        }
    }
}

/// A contiguous dotted run of blocks: from the start block through
/// `end_block` (1-based index among non-E blocks).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DottedRun {
    pub start: DotStart,
    pub end_block: usize,
}

impl DottedRun {
    /// Number of dotted blocks.
    pub fn count(&self) -> usize {
        self.end_block - self.start.index() + 1
    }
}

/// The canonical form of a singular overpartition: a Frobenius symbol, its
/// block decomposition, and an optional dotted run.
#[derive(Clone)]
pub struct DottedSymbol {
    modulus: ModulusPair,
    symbol: FrobeniusSymbol,
    decomposition: BlockDecomposition,
    run: Option<DottedRun>,
}

impl DottedSymbol {
    pub fn new(
        modulus: ModulusPair,
        symbol: FrobeniusSymbol,
        run: Option<DottedRun>,
    ) -> Result<Self> {
        let decomposition = decompose_blocks(modulus, &symbol);
        if let Some(run) = run {
            let b = decomposition.non_e_count();
            let start = run.start.index();
            if b < start {
                return Err(Error::InvalidArgument(format!(
                    "dotted run starts at non-E block {start}, but the symbol has only {b}"
                )));
            }
            if run.end_block < start || run.end_block > b {
                return Err(Error::InvalidArgument(format!(
                    "dotted run end block {} out of range {start}..={b}",
                    run.end_block
                )));
            }
        }
        Ok(DottedSymbol {
            modulus,
            symbol,
            decomposition,
            run,
        })
    }

    pub fn modulus(&self) -> ModulusPair {
        self.modulus
    }

    pub fn symbol(&self) -> &FrobeniusSymbol {
        &self.symbol
    }

    pub fn decomposition(&self) -> &BlockDecomposition {
        &self.decomposition
    }

    pub fn run(&self) -> Option<DottedRun> {
        self.run
    }

    pub fn weight(&self) -> i64 {
        self.symbol.weight()
    }

    /// The kind of the last dotted block, if any dots are present.
    pub fn last_dotted_kind(&self) -> Option<BlockKind> {
        self.run
            .map(|run| self.decomposition.non_e_blocks()[run.end_block - 1].kind)
    }

    /// Signed dot count m: +count if the last dotted block is negative,
    /// -count if positive, 0 if there are no dots.
    pub fn signed_dot_count(&self) -> i64 {
        match (self.run, self.last_dotted_kind()) {
            (Some(run), Some(BlockKind::N)) => run.count() as i64,
            (Some(run), Some(BlockKind::P)) => -(run.count() as i64),
            _ => 0,
        }
    }

    /// The block sequence with dots, e.g. `EPṄṖṄ`.
    pub fn sequence_string(&self) -> String {
        let mut out = String::new();
        let dotted_range = self.run.map(|run| (run.start.index(), run.end_block));
        let mut non_e_idx = 0;
        for block in &self.decomposition.blocks {
            let letter = match block.kind {
                BlockKind::E => 'E',
                BlockKind::P => 'P',
                BlockKind::N => 'N',
            };
            out.push(letter);
            if block.kind != BlockKind::E {
                non_e_idx += 1;
                if let Some((start, end)) = dotted_range {
                    if start <= non_e_idx && non_e_idx <= end {
                        out.push('\u{0307}'); // combining dot above
                    }
                }
            }
        }
        out
    }
}

impl PartialEq for DottedSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.symbol == other.symbol && self.run == other.run
    }
}

impl Eq for DottedSymbol {}

impl std::hash::Hash for DottedSymbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        self.symbol.hash(state);
        self.run.hash(state);
    }
}

impl fmt::Debug for DottedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DottedSymbol{{{} {:?} {}}}",
            self.modulus,
            self.symbol,
            self.sequence_string()
        )
    }
}

/// Convert a singular overlined symbol to its dotted form. The run always
/// ends at the block of the (rightmost) overlined entry.
pub fn dotted_from_overlined(
    modulus: ModulusPair,
    overlined: &OverlinedFrobenius,
) -> Result<DottedSymbol> {
    if !is_singular(modulus, overlined) {
        return Err(Error::Domain(
            "symbol is not singular for this modulus".into(),
        ));
    }
    let decomposition = decompose_blocks(modulus, overlined.symbol());
    let run = match (overlined.top_overline(), overlined.bottom_overline()) {
        (None, None) => None,
        (Some(col), None) | (None, Some(col)) => Some(DottedRun {
            start: DotStart::FirstNonNeutral,
            end_block: decomposition
                .non_e_index_of_column(col)
                .expect("overline sits in a non-E block"),
        }),
        (Some(top_col), Some(bottom_col)) => {
            let p_idx = decomposition.non_e_index_of_column(top_col).unwrap();
            let n_idx = decomposition.non_e_index_of_column(bottom_col).unwrap();
            Some(DottedRun {
                start: DotStart::SecondNonNeutral,
                end_block: p_idx.max(n_idx),
            })
        }
    };
    DottedSymbol::new(modulus, overlined.symbol().clone(), run)
}

/// Inverse of [`dotted_from_overlined`]: place overlines back on anchors.
pub fn from_dotted(dotted: &DottedSymbol) -> OverlinedFrobenius {
    let non_e = dotted.decomposition().non_e_blocks();
    let overline_at = |block: &Block| {
        let anchor = block.anchor.expect("non-E block has an anchor");
        match block.kind {
            BlockKind::P => (Some(anchor), None),
            BlockKind::N => (None, Some(anchor)),
            BlockKind::E => unreachable!(),
        }
    };
    let (top, bottom) = match dotted.run() {
        None => (None, None),
        Some(run) => {
            let last = &non_e[run.end_block - 1];
            match run.start {
                DotStart::FirstNonNeutral => overline_at(last),
                DotStart::SecondNonNeutral => {
                    let previous = &non_e[run.end_block - 2];
                    let (t1, b1) = overline_at(last);
                    let (t2, b2) = overline_at(previous);
                    (t1.or(t2), b1.or(b2))
                }
            }
        }
    };
    OverlinedFrobenius::new(dotted.symbol().clone(), top, bottom)
        .expect("anchors are in-range columns")
}

/// All valid dotted runs for a symbol: exactly 1 when there is no non-E
/// block, otherwise 2B where B is the number of non-E blocks. Order:
/// undotted, then runs from the first block by increasing end, then runs
/// from the second block.
pub fn dotted_configurations(
    modulus: ModulusPair,
    symbol: &FrobeniusSymbol,
) -> Vec<DottedSymbol> {
    let decomposition = decompose_blocks(modulus, symbol);
    let b = decomposition.non_e_count();
    let mut configurations = Vec::with_capacity(if b == 0 { 1 } else { 2 * b });
    let mut push = |run| {
        configurations.push(
            DottedSymbol::new(modulus, symbol.clone(), run).expect("run bounds already checked"),
        );
    };
    push(None);
    for end_block in 1..=b {
        push(Some(DottedRun {
            start: DotStart::FirstNonNeutral,
            end_block,
        }));
    }
    for end_block in 2..=b {
        push(Some(DottedRun {
            start: DotStart::SecondNonNeutral,
            end_block,
        }));
    }
    configurations
}

#[derive(Serialize, Deserialize)]
struct DotsRepr {
    start: Option<String>,
    end_block: usize,
}

#[derive(Serialize, Deserialize)]
struct DottedRepr {
    k: i64,
    i: i64,
    top: Vec<i64>,
    bottom: Vec<i64>,
    dots: DotsRepr,
}

/// JSON form:
/// `{"k":5,"i":2,"top":[...],"bottom":[...],"dots":{"start":"first"|"second"|null,"end_block":N}}`.
impl Serialize for DottedSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dots = match self.run {
            None => DotsRepr {
                start: None,
                end_block: 0,
            },
            Some(run) => DotsRepr {
                start: Some(
                    match run.start {
                        DotStart::FirstNonNeutral => "first",
                        DotStart::SecondNonNeutral => "second",
                    }
                    .to_string(),
                ),
                end_block: run.end_block,
            },
        };
        DottedRepr {
            k: self.modulus.k(),
            i: self.modulus.i(),
            top: self.symbol.top().to_vec(),
            bottom: self.symbol.bottom().to_vec(),
            dots,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DottedSymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = DottedRepr::deserialize(deserializer)?;
        let modulus = ModulusPair::new(repr.k, repr.i).map_err(D::Error::custom)?;
        let symbol = FrobeniusSymbol::new(repr.top, repr.bottom).map_err(D::Error::custom)?;
        let run = match repr.dots.start.as_deref() {
            None => None,
            Some("first") => Some(DotStart::FirstNonNeutral),
            Some("second") => Some(DotStart::SecondNonNeutral),
            Some(other) => {
                return Err(D::Error::custom(format!(
                    "dots.start must be \"first\", \"second\", or null, got {other:?}"
                )))
            }
        }
        .map(|start| DottedRun {
            start,
            end_block: repr.dots.end_block,
        });
        DottedSymbol::new(modulus, symbol, run).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    fn modulus(k: i64, i: i64) -> ModulusPair {
        ModulusPair::new(k, i).unwrap()
    }

    fn sym(top: &[i64], bottom: &[i64]) -> FrobeniusSymbol {
        FrobeniusSymbol::new(top.to_vec(), bottom.to_vec()).unwrap()
    }

    /// The 16-column symbol used throughout: weight 469.
    fn big_symbol() -> FrobeniusSymbol {
        sym(
            &[31, 28, 27, 25, 22, 18, 16, 14, 13, 9, 8, 7, 6, 4, 1, 0],
            &[30, 28, 25, 24, 20, 19, 16, 15, 12, 11, 8, 7, 4, 3, 2, 0],
        )
    }

    #[test]
    fn parity_thresholds() {
        let m = modulus(5, 2);
        assert_eq!(column_parity(m, 27, 25), ColumnParity::Positive);
        assert_eq!(column_parity(m, 18, 19), ColumnParity::Negative);
        assert_eq!(column_parity(m, 31, 30), ColumnParity::Neutral);
    }

    fn ranges(decomposition: &BlockDecomposition) -> Vec<(usize, usize, BlockKind)> {
        decomposition
            .blocks
            .iter()
            .map(|b| (b.start, b.end, b.kind))
            .collect()
    }

    #[test]
    fn blocks_5_2_on_big_symbol() {
        use BlockKind::*;
        let decomposition = decompose_blocks(modulus(5, 2), &big_symbol());
        assert_eq!(
            ranges(&decomposition),
            vec![(1, 2, E), (3, 5, P), (6, 12, N), (13, 14, P), (15, 16, N)]
        );
        assert_eq!(decomposition.non_e_count(), 4);
    }

    #[test]
    fn blocks_3_1_on_big_symbol() {
        use BlockKind::*;
        let decomposition = decompose_blocks(modulus(3, 1), &big_symbol());
        assert_eq!(
            ranges(&decomposition),
            vec![
                (1, 1, P),
                (2, 2, N),
                (3, 5, P),
                (6, 8, N),
                (9, 9, P),
                (10, 12, N),
                (13, 14, P),
                (15, 16, N)
            ]
        );
    }

    #[test]
    fn all_neutral_symbol_is_one_e_block() {
        // (5,2): diffs 0 and 1 are neutral
        let f = sym(&[4, 2], &[3, 2]);
        let decomposition = decompose_blocks(modulus(5, 2), &f);
        assert_eq!(ranges(&decomposition), vec![(1, 2, BlockKind::E)]);
        assert!(decompose_blocks(modulus(5, 2), &FrobeniusSymbol::empty())
            .blocks
            .is_empty());
    }

    fn over(
        symbol: &FrobeniusSymbol,
        top: Option<usize>,
        bottom: Option<usize>,
    ) -> OverlinedFrobenius {
        OverlinedFrobenius::new(symbol.clone(), top, bottom).unwrap()
    }

    #[test]
    fn two_overline_singular_cases_5_2() {
        let m = modulus(5, 2);
        let f = big_symbol();
        // the three displayed placements: (27,19), (19,6), (6,2)
        assert!(is_singular(m, &over(&f, Some(3), Some(6))));
        assert!(is_singular(m, &over(&f, Some(13), Some(6))));
        assert!(is_singular(m, &over(&f, Some(13), Some(15))));
        // non-adjacent anchors
        assert!(!is_singular(m, &over(&f, Some(3), Some(15))));
        // rows exchanged
        assert!(!is_singular(m, &over(&f, Some(6), Some(3))));
    }

    #[test]
    fn single_and_zero_overline_cases() {
        let m = modulus(5, 2);
        let f = big_symbol();
        assert!(is_singular(m, &over(&f, None, None)));
        // neutral non-anchor column 2 (entry 28)
        assert!(!is_singular(m, &over(&f, Some(2), None)));
        // top overline must be at a positive anchor
        assert!(is_singular(m, &over(&f, Some(3), None)));
        assert!(!is_singular(m, &over(&f, Some(6), None)));
        // bottom overline must be at a negative anchor
        assert!(is_singular(m, &over(&f, None, Some(6))));
        assert!(!is_singular(m, &over(&f, None, Some(3))));
    }

    #[test]
    fn dot_rules_match_worked_placements() {
        let m = modulus(5, 2);
        let f = big_symbol();
        // two overlines {27, 19}: dots on block 2 only -> E P Ndot P N
        let d = dotted_from_overlined(m, &over(&f, Some(3), Some(6))).unwrap();
        assert_eq!(
            d.run(),
            Some(DottedRun {
                start: DotStart::SecondNonNeutral,
                end_block: 2
            })
        );
        assert_eq!(d.signed_dot_count(), 1);
        // one bottom overline 19
        let d = dotted_from_overlined(m, &over(&f, None, Some(6))).unwrap();
        assert_eq!(
            d.run(),
            Some(DottedRun {
                start: DotStart::FirstNonNeutral,
                end_block: 2
            })
        );
        assert_eq!(d.signed_dot_count(), 2);
        // no overlines
        let d = dotted_from_overlined(m, &over(&f, None, None)).unwrap();
        assert_eq!(d.run(), None);
        assert_eq!(d.signed_dot_count(), 0);
        // non-singular input is rejected
        assert!(dotted_from_overlined(m, &over(&f, Some(2), None)).is_err());
    }

    #[test]
    fn from_dotted_restores_overlines() {
        let m = modulus(5, 2);
        let f = big_symbol();
        // run blocks 2..=4 (two overlines at anchors of blocks 3 and 4)
        let d = DottedSymbol::new(
            m,
            f.clone(),
            Some(DottedRun {
                start: DotStart::SecondNonNeutral,
                end_block: 4,
            }),
        )
        .unwrap();
        let o = from_dotted(&d);
        assert_eq!(o.top_overline(), Some(13)); // entry 6, positive anchor
        assert_eq!(o.bottom_overline(), Some(15)); // entry 2, negative anchor
        assert_eq!(d.sequence_string(), "EPN\u{307}P\u{307}N\u{307}");

        let d = DottedSymbol::new(
            m,
            f.clone(),
            Some(DottedRun {
                start: DotStart::SecondNonNeutral,
                end_block: 2,
            }),
        )
        .unwrap();
        let o = from_dotted(&d);
        assert_eq!(o.top_overline(), Some(3)); // entry 27
        assert_eq!(o.bottom_overline(), Some(6)); // entry 19

        let undotted = DottedSymbol::new(m, f, None).unwrap();
        let o = from_dotted(&undotted);
        assert_eq!((o.top_overline(), o.bottom_overline()), (None, None));
    }

    #[test]
    fn configuration_counts() {
        let m = modulus(5, 2);
        // EPNPN: 8 configurations
        let configs = dotted_configurations(m, &big_symbol());
        assert_eq!(configs.len(), 8);
        let sequences: Vec<String> = configs.iter().map(|d| d.sequence_string()).collect();
        assert_eq!(
            sequences,
            vec![
                "EPNPN".to_string(),
                "EP\u{307}NPN".to_string(),
                "EP\u{307}N\u{307}PN".to_string(),
                "EP\u{307}N\u{307}P\u{307}N".to_string(),
                "EP\u{307}N\u{307}P\u{307}N\u{307}".to_string(),
                "EPN\u{307}PN".to_string(),
                "EPN\u{307}P\u{307}N".to_string(),
                "EPN\u{307}P\u{307}N\u{307}".to_string(),
            ]
        );
        // all-neutral: 1
        assert_eq!(dotted_configurations(m, &sym(&[4, 2], &[3, 2])).len(), 1);
        // single non-E block: 2
        assert_eq!(dotted_configurations(m, &sym(&[3], &[0])).len(), 2);
    }

    #[test]
    fn overline_dot_roundtrip_exhaustive() {
        for (k, i) in [(3, 1), (5, 2)] {
            let m = modulus(k, i);
            for n in 0..=16 {
                for q in enumerate_partitions(n) {
                    let f = q.to_frobenius();
                    let decomposition = decompose_blocks(m, &f);
                    let non_e = decomposition.non_e_blocks().to_vec();
                    // every singular overline placement
                    let mut placements = vec![(None, None)];
                    for block in &non_e {
                        match block.kind {
                            BlockKind::P => placements.push((block.anchor, None)),
                            BlockKind::N => placements.push((None, block.anchor)),
                            BlockKind::E => unreachable!(),
                        }
                    }
                    for pair in non_e.windows(2) {
                        let (p_block, n_block) = if pair[0].kind == BlockKind::P {
                            (&pair[0], &pair[1])
                        } else {
                            (&pair[1], &pair[0])
                        };
                        placements.push((p_block.anchor, n_block.anchor));
                    }
                    assert_eq!(
                        placements.len(),
                        if non_e.is_empty() {
                            1
                        } else {
                            2 * non_e.len()
                        }
                    );
                    for (top, bottom) in placements {
                        let o = over(&f, top, bottom);
                        assert!(is_singular(m, &o));
                        let d = dotted_from_overlined(m, &o).unwrap();
                        assert_eq!(from_dotted(&d), o);
                    }
                }
            }
        }
    }

    #[test]
    fn configurations_are_singular_and_anchors_alternate() {
        for (k, i) in [(3, 1), (3, 2), (4, 1), (5, 2)] {
            let m = modulus(k, i);
            for n in 0..=12 {
                for q in enumerate_partitions(n) {
                    let f = q.to_frobenius();
                    let decomposition = decompose_blocks(m, &f);
                    for pair in decomposition.non_e_blocks().windows(2) {
                        assert_eq!(pair[1].kind, pair[0].kind.opposite());
                    }
                    let configs = dotted_configurations(m, &f);
                    let b = decomposition.non_e_count();
                    assert_eq!(configs.len(), if b == 0 { 1 } else { 2 * b });
                    for d in configs {
                        assert!(is_singular(m, &from_dotted(&d)));
                    }
                }
            }
        }
    }

    #[test]
    fn row_swap_duality_up_to_14() {
        for (k, i) in [(3, 1), (4, 1), (5, 2), (5, 3)] {
            let m = modulus(k, i);
            for n in 0..=14 {
                for q in enumerate_partitions(n) {
                    let f = q.to_frobenius();
                    let direct = decompose_blocks(m, &f);
                    let swapped = decompose_blocks(m.flip(), &f.swap_rows());
                    assert_eq!(direct.blocks.len(), swapped.blocks.len());
                    for (x, y) in direct.blocks.iter().zip(&swapped.blocks) {
                        assert_eq!((x.start, x.end, x.anchor), (y.start, y.end, y.anchor));
                        assert_eq!(x.kind, y.kind.opposite());
                    }
                }
            }
        }
    }

    #[test]
    fn dotted_json_shape() {
        let m = modulus(5, 2);
        let d = DottedSymbol::new(
            m,
            sym(&[3], &[0]),
            Some(DottedRun {
                start: DotStart::FirstNonNeutral,
                end_block: 1,
            }),
        )
        .unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"k":5,"i":2,"top":[3],"bottom":[0],"dots":{"start":"first","end_block":1}}"#
        );
        assert_eq!(serde_json::from_str::<DottedSymbol>(&s).unwrap(), d);
        // run out of range is rejected
        assert!(serde_json::from_str::<DottedSymbol>(
            r#"{"k":5,"i":2,"top":[3],"bottom":[0],"dots":{"start":"second","end_block":1}}"#
        )
        .is_err());
    }
}
