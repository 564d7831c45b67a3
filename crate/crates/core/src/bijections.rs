//! The staged bijection psi_m and the composed bijection between singular
//! overpartitions and restricted overpartitions.
//!
//! For a dotted symbol whose last dotted block is negative, with m dotted
//! blocks: D_1 is the last dotted block together with everything to its
//! right; D_2..D_m are the remaining dotted blocks read right to left;
//! D_{m+1} is everything to the left of the run. Then
//!
//! ```text
//! Gamma_1 = D_1
//! Gamma_{v+1} = c_{i+wk}(D_{v+1}) d_{1-i-(v-1)k}(Gamma_v)   v = 2w+1
//! Gamma_{v+1} = s_{wk}(D_{v+1})   d_{1-i-(v-1)k}(Gamma_v)   v = 2w, w > 0
//! psi_m = Gamma_{m+1}
//! ```
//!
//! Each concatenation step is an instance of one of two splice lemmas
//! (conjugate+Dyson and shift+Dyson); their hypotheses i)-iv), the rank
//! bound rank(Gamma_v) <= 1-i-(v-1)k, and the per-step weight ledger
//! |D_{v+1} Gamma_v| - |Gamma_{v+1}| = i+(v-1)k are asserted at every
//! step. A failed assertion is returned as [`Error::Invariant`]: it can
//! only mean an implementation bug, never bad input.
//!
//! When the last dotted block is positive the pipeline runs on the
//! row-swapped symbol under the flipped modulus (k, k-i), which exchanges
//! positive and negative blocks and reduces to the first case.
//!
//! The inverse splits Gamma_{v+1} at the first column with
//! a_t - b_t >= -(v-1)k - i - 1 and undoes the two maps. Composing psi
//! with the Wright map on the multiples of k yields the bijection onto
//! overpartitions with no part divisible by k and overlines only on parts
//! congruent to +-i mod k.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::blocks::{
    decompose_blocks, BlockKind, DotStart, DottedRun, DottedSymbol, ModulusPair,
};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusSymbol;
use crate::maps::{
    choose2, dyson_frobenius, dyson_inverse, shift, shifted_conjugate, wright_forward,
    wright_inverse, WrightInput,
};
use crate::partition::Partition;

/// The full ladder of a psi run: blocks D_1..D_{m+1} and partial results
/// Gamma_1..Gamma_{m+1}. For an input whose last dotted block is positive,
/// the trace records the row-swapped pipeline under the flipped modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsiTrace {
    modulus: ModulusPair,
    m: usize,
    blocks: Vec<FrobeniusSymbol>,
    gammas: Vec<FrobeniusSymbol>,
}

impl PsiTrace {
    /// The modulus the pipeline actually ran under.
    pub fn modulus(&self) -> ModulusPair {
        self.modulus
    }

    /// Number of dotted blocks.
    pub fn m(&self) -> usize {
        self.m
    }

    /// D_1..D_{m+1}; D_{m+1} may be empty.
    pub fn blocks(&self) -> &[FrobeniusSymbol] {
        &self.blocks
    }

    /// Gamma_1..Gamma_{m+1}; the final entry may be empty.
    pub fn gammas(&self) -> &[FrobeniusSymbol] {
        &self.gammas
    }

    /// The pipeline output Gamma_{m+1} as a partition.
    pub fn result(&self) -> Partition {
        self.gammas.last().expect("m >= 1").to_partition()
    }
}

#[derive(Serialize, Deserialize)]
struct TraceRepr {
    k: i64,
    i: i64,
    m: usize,
    blocks: Vec<FrobeniusSymbol>,
    gammas: Vec<FrobeniusSymbol>,
}

impl Serialize for PsiTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TraceRepr {
            k: self.modulus.k(),
            i: self.modulus.i(),
            m: self.m,
            blocks: self.blocks.clone(),
            gammas: self.gammas.clone(),
        }
        .serialize(serializer)
    }
}

// Lemma parameters for step v (1-based): case 1 splices with the shifted
// conjugate, case 2 with the shift.
struct StepLaw {
    f: i64,
    g: i64,
    conjugate_case: bool,
    w: i64,
}

impl StepLaw {
    fn for_step(modulus: ModulusPair, v: i64) -> StepLaw {
        let (k, i) = (modulus.k(), modulus.i());
        if v % 2 == 1 {
            let w = (v - 1) / 2;
            StepLaw {
                f: 2 - i,
                g: w * k + 1,
                conjugate_case: true,
                w,
            }
        } else {
            let w = v / 2;
            StepLaw {
                f: k - i - 2,
                g: w * k - 1,
                conjugate_case: false,
                w,
            }
        }
    }

    /// The Dyson parameter r = f - 2g + 1 = 1 - i - (v-1)k.
    fn dyson_r(&self) -> i64 {
        self.f - 2 * self.g + 1
    }

    fn splice_u(&self, modulus: ModulusPair) -> i64 {
        if self.conjugate_case {
            modulus.i() + self.w * modulus.k()
        } else {
            self.w * modulus.k()
        }
    }
}

fn invariant(step: i64, what: impl fmt::Display) -> Error {
    Error::Invariant(format!("psi step v={step}: {what}"))
}

// Check hypotheses i)-iv) of the splice lemma for L = left, R = right.
// The inequalities are written exactly as stated.
#[allow(clippy::int_plus_one)]
fn check_lemma_conditions(
    law: &StepLaw,
    step: i64,
    left: &FrobeniusSymbol,
    right: &FrobeniusSymbol,
) -> Result<()> {
    let (f, g) = (law.f, law.g);
    if right.is_empty() {
        return Err(invariant(step, "right operand is empty"));
    }
    // i): every column of L is on the f side
    for (y, (a, b)) in left.columns().enumerate() {
        let ok = if law.conjugate_case {
            a - b >= f
        } else {
            a - b <= f
        };
        if !ok {
            return Err(invariant(
                step,
                format!("condition i) fails at column {} of the left part", y + 1),
            ));
        }
    }
    // ii): rank(R) <= f - 2g + 1, the rank bound on Gamma_v
    if right.rank() > f - 2 * g + 1 {
        return Err(invariant(
            step,
            format!(
                "condition ii) / rank bound fails: rank {} > {}",
                right.rank(),
                f - 2 * g + 1
            ),
        ));
    }
    if !left.is_empty() {
        let (last_a, last_b) = left.column(left.len() - 1);
        let (alpha, beta) = right.column(0);
        let (iii_ok, iv_ok) = if law.conjugate_case {
            (
                last_a > alpha + g - 1,
                last_b > beta - g + 1 && beta - g + 1 >= 0,
            )
        } else {
            (
                last_a > beta - g + f + 1,
                last_b > alpha + g - f - 1 && alpha + g - f - 1 >= 0,
            )
        };
        if !iii_ok {
            return Err(invariant(step, "condition iii) fails"));
        }
        if !iv_ok {
            return Err(invariant(step, "condition iv) fails"));
        }
    }
    Ok(())
}

// One forward splice: Gamma_{v+1} from D_{v+1} and Gamma_v, with all
// conclusions re-checked on the output.
fn splice_step(
    modulus: ModulusPair,
    step: i64,
    left: &FrobeniusSymbol,
    right: &FrobeniusSymbol,
) -> Result<FrobeniusSymbol> {
    let law = StepLaw::for_step(modulus, step);
    check_lemma_conditions(&law, step, left, right)?;
    let u = law.splice_u(modulus);
    let mapped_left = if law.conjugate_case {
        shifted_conjugate(u, left)
    } else {
        shift(u, left)
    }
    .map_err(|e| invariant(step, e))?;
    let mapped_right = dyson_frobenius(law.dyson_r(), right).map_err(|e| invariant(step, e))?;
    let joined = mapped_left
        .join(&mapped_right)
        .map_err(|e| invariant(step, format!("concatenation is not a symbol: {e}")))?;
    // conclusions: left columns sit strictly below the split threshold,
    // the joint column at or above it
    let threshold = law.f - 2 * law.g - 1;
    for (y, (a, b)) in joined.columns().take(left.len()).enumerate() {
        if a - b > threshold - 1 {
            return Err(invariant(
                step,
                format!("left column {} violates the split threshold", y + 1),
            ));
        }
    }
    if !mapped_right.is_empty() {
        let (a, b) = joined.column(left.len());
        if a - b < threshold {
            return Err(invariant(step, "joint column violates the split threshold"));
        }
    }
    // per-step weight ledger
    let expected_drop = modulus.i() + (step - 1) * modulus.k();
    if left.weight() + right.weight() - joined.weight() != expected_drop {
        return Err(invariant(
            step,
            format!("weight ledger violated: expected drop {expected_drop}"),
        ));
    }
    Ok(joined)
}

// Reduce to the negative-last case: row-swap under the flipped modulus.
fn normalize_to_negative_last(d: &DottedSymbol) -> Result<(ModulusPair, DottedSymbol)> {
    let run = d
        .run()
        .ok_or_else(|| Error::Precondition("psi requires at least one dotted block".into()))?;
    match d.last_dotted_kind() {
        Some(BlockKind::N) => Ok((d.modulus(), d.clone())),
        Some(BlockKind::P) => {
            let flipped = d.modulus().flip();
            let swapped = DottedSymbol::new(flipped, d.symbol().swap_rows(), Some(run))?;
            Ok((flipped, swapped))
        }
        _ => Err(Error::Invariant("dotted run on a neutral block".into())),
    }
}

/// Run the pipeline and keep every intermediate.
pub fn gamma_trace(d: &DottedSymbol) -> Result<PsiTrace> {
    let (modulus, d) = normalize_to_negative_last(d)?;
    let run = d.run().expect("normalized symbol keeps its run");
    let decomposition = d.decomposition();
    let non_e = decomposition.non_e_blocks();
    let m = run.count();
    let symbol = d.symbol();
    let delta = symbol.len();
    let start_idx = run.start.index();

    let col_range = |block: &crate::blocks::Block| (block.start - 1)..block.end;
    // D_1: last dotted block plus everything to its right
    let last_block = &non_e[run.end_block - 1];
    let mut blocks = vec![symbol.section((last_block.start - 1)..delta)];
    // D_2..D_m: remaining dotted blocks right to left
    for v in 2..=m {
        blocks.push(symbol.section(col_range(&non_e[run.end_block - v])));
    }
    // D_{m+1}: everything left of the run
    let run_first_col = non_e[start_idx - 1].start;
    blocks.push(symbol.section(0..run_first_col - 1));

    let mut gammas = vec![blocks[0].clone()];
    for v in 1..=m as i64 {
        let next = splice_step(modulus, v, &blocks[v as usize], &gammas[v as usize - 1])?;
        gammas.push(next);
    }
    Ok(PsiTrace {
        modulus,
        m,
        blocks,
        gammas,
    })
}

/// psi: map a dotted symbol with at least one dot to a partition. With n
/// the weight and m the signed dot count, the image has weight
/// n - k*m(m-1)/2 - i*m.
pub fn psi_forward(d: &DottedSymbol) -> Result<Partition> {
    Ok(gamma_trace(d)?.result())
}

/// Inverse of psi. The sign of m selects the parity of the last dotted
/// block: m > 0 restores a negative-last run with m dots, m < 0 a
/// positive-last run with |m| dots.
pub fn psi_inverse(modulus: ModulusPair, m: i64, p: &Partition) -> Result<DottedSymbol> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "psi inverse requires a nonzero dot count".into(),
        ));
    }
    if m < 0 {
        let inner = psi_inverse(modulus.flip(), -m, p)?;
        return DottedSymbol::new(modulus, inner.symbol().swap_rows(), inner.run());
    }
    let (k, i) = (modulus.k(), modulus.i());
    let not_in_image = |what: String| Error::Domain(format!("not in the psi image: {what}"));
    let mut gamma = p.to_frobenius();
    let mut blocks_rev = Vec::with_capacity(m as usize + 1); // D_{m+1} first
    for v in (1..=m).rev() {
        let law = StepLaw::for_step(modulus, v);
        let threshold = -(v - 1) * k - i - 1;
        let split = gamma
            .columns()
            .position(|(a, b)| a - b >= threshold)
            .unwrap_or(gamma.len());
        let left = gamma.section(0..split);
        let right = gamma.section(split..gamma.len());
        let u = law.splice_u(modulus);
        let block = if law.conjugate_case {
            shifted_conjugate(u, &left)
        } else {
            shift(-u, &left)
        }
        .map_err(|e| not_in_image(e.to_string()))?;
        blocks_rev.push(block);
        gamma = dyson_inverse(law.dyson_r(), &right.to_partition())
            .map_err(|e| not_in_image(e.to_string()))?
            .to_frobenius();
    }
    blocks_rev.push(gamma);

    // reassemble and recover the dotted run
    let mut symbol = FrobeniusSymbol::empty();
    for block in &blocks_rev {
        symbol = symbol
            .join(block)
            .map_err(|e| not_in_image(format!("blocks do not concatenate: {e}")))?;
    }
    let decomposition = decompose_blocks(modulus, &symbol);
    let d1 = blocks_rev.last().expect("m >= 1 blocks were produced");
    let d1_first_col = symbol.len() - d1.len() + 1;
    let end_block = decomposition
        .non_e_index_of_column(d1_first_col)
        .ok_or_else(|| not_in_image("the final block starts in the E block".into()))?;
    let non_e = decomposition.non_e_blocks();
    let last = &non_e[end_block - 1];
    if last.start != d1_first_col || last.kind != BlockKind::N {
        return Err(not_in_image(
            "the final block is not a negative anchor block".into(),
        ));
    }
    // each middle D_v must be exactly one parity block
    let mut col = d1_first_col;
    for (v, block) in blocks_rev.iter().rev().enumerate().skip(1).take(m as usize - 1) {
        col -= block.len();
        let idx = end_block
            .checked_sub(v)
            .ok_or_else(|| not_in_image("too few parity blocks for the dot count".into()))?;
        if idx == 0 {
            return Err(not_in_image("too few parity blocks for the dot count".into()));
        }
        let parity_block = &non_e[idx - 1];
        if parity_block.start != col || parity_block.end != col + block.len() - 1 {
            return Err(not_in_image(format!(
                "recovered block {v} does not align with a parity block"
            )));
        }
    }
    let start_index = end_block as i64 - m + 1;
    let start = match start_index {
        1 => DotStart::FirstNonNeutral,
        2 => DotStart::SecondNonNeutral,
        _ => {
            return Err(not_in_image(format!(
                "dotted run would start at non-E block {start_index}"
            )))
        }
    };
    DottedSymbol::new(modulus, symbol, Some(DottedRun { start, end_block }))
}

/// An overpartition with no part divisible by k and overlines only on
/// parts congruent to +-i mod k, stored as the plain parts plus the two
/// strictly decreasing overlined groups. Requires k != 2i: otherwise the
/// two overlinable residues coincide and the object is ill-defined.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RestrictedOverpartition {
    modulus: ModulusPair,
    plain: Partition,
    over_i: Partition,
    over_minus_i: Partition,
}

impl RestrictedOverpartition {
    pub fn new(
        modulus: ModulusPair,
        plain: Partition,
        over_i: Partition,
        over_minus_i: Partition,
    ) -> Result<Self> {
        if modulus.residues_collide() {
            return Err(Error::Unsupported(format!(
                "k = 2i (k = {}): the overlinable residues coincide",
                modulus.k()
            )));
        }
        let k = modulus.k();
        if let Some(&bad) = plain.parts().iter().find(|&&x| x % k == 0) {
            return Err(Error::InvalidArgument(format!(
                "no part may be divisible by {k}, got {bad}"
            )));
        }
        // the overlined groups carry the distinctness and residue checks
        let _ = WrightInput::new(modulus, over_i.clone(), over_minus_i.clone())?;
        Ok(RestrictedOverpartition {
            modulus,
            plain,
            over_i,
            over_minus_i,
        })
    }

    pub fn modulus(&self) -> ModulusPair {
        self.modulus
    }

    pub fn plain(&self) -> &Partition {
        &self.plain
    }

    pub fn over_i(&self) -> &Partition {
        &self.over_i
    }

    pub fn over_minus_i(&self) -> &Partition {
        &self.over_minus_i
    }

    /// Overlined parts congruent to i minus overlined parts congruent to -i.
    pub fn statistic(&self) -> i64 {
        self.over_i.len() as i64 - self.over_minus_i.len() as i64
    }

    pub fn weight(&self) -> i64 {
        self.plain.weight() + self.over_i.weight() + self.over_minus_i.weight()
    }

    /// All parts as one partition, overlines forgotten.
    pub fn flattened(&self) -> Partition {
        self.plain.union(&self.over_i).union(&self.over_minus_i)
    }
}

impl fmt::Display for RestrictedOverpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // merged descending, overlined parts marked
        let mut entries: Vec<(i64, bool)> = self
            .plain
            .parts()
            .iter()
            .map(|&x| (x, false))
            .chain(
                self.over_i
                    .parts()
                    .iter()
                    .chain(self.over_minus_i.parts())
                    .map(|&x| (x, true)),
            )
            .collect();
        entries.sort_by_key(|&(value, overlined)| std::cmp::Reverse((value, overlined)));
        write!(f, "(")?;
        for (idx, (value, overlined)) in entries.iter().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            if *overlined {
                write!(f, "{value}\u{0305}")?;
            } else {
                write!(f, "{value}")?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct RestrictedRepr {
    k: i64,
    i: i64,
    plain: Vec<i64>,
    over_i: Vec<i64>,
    over_minus_i: Vec<i64>,
}

/// JSON form: `{"k":5,"i":2,"plain":[...],"over_i":[...],"over_minus_i":[...]}`.
impl Serialize for RestrictedOverpartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RestrictedRepr {
            k: self.modulus.k(),
            i: self.modulus.i(),
            plain: self.plain.parts().to_vec(),
            over_i: self.over_i.parts().to_vec(),
            over_minus_i: self.over_minus_i.parts().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RestrictedOverpartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = RestrictedRepr::deserialize(deserializer)?;
        let modulus = ModulusPair::new(repr.k, repr.i).map_err(D::Error::custom)?;
        let build = || -> Result<RestrictedOverpartition> {
            RestrictedOverpartition::new(
                modulus,
                Partition::new(repr.plain)?,
                Partition::new(repr.over_i)?,
                Partition::new(repr.over_minus_i)?,
            )
        };
        build().map_err(D::Error::custom)
    }
}

/// The composed bijection: dotted symbol -> restricted overpartition.
/// Weight is preserved and the signed dot count becomes the overline
/// statistic.
pub fn andrews_forward(d: &DottedSymbol) -> Result<RestrictedOverpartition> {
    let modulus = d.modulus();
    if modulus.residues_collide() {
        return Err(Error::Unsupported(format!(
            "k = 2i (k = {}): the restricted side is undefined",
            modulus.k()
        )));
    }
    let m = d.signed_dot_count();
    let sigma = if m == 0 {
        d.symbol().to_partition()
    } else {
        psi_forward(d)?
    };
    let k = modulus.k();
    let kappa = Partition::new(
        sigma
            .parts()
            .iter()
            .copied()
            .filter(|&x| x % k == 0)
            .collect(),
    )?;
    let gamma = Partition::new(
        sigma
            .parts()
            .iter()
            .copied()
            .filter(|&x| x % k != 0)
            .collect(),
    )?;
    let pair = wright_inverse(modulus, &kappa, m)?;
    let result =
        RestrictedOverpartition::new(modulus, gamma, pair.mu1().clone(), pair.mu2().clone())?;
    debug_assert_eq!(result.weight(), d.weight());
    debug_assert_eq!(result.statistic(), m);
    Ok(result)
}

/// Inverse of [`andrews_forward`].
pub fn andrews_inverse(r: &RestrictedOverpartition) -> Result<DottedSymbol> {
    let modulus = r.modulus();
    let m = r.statistic();
    let pair = WrightInput::new(modulus, r.over_i().clone(), r.over_minus_i().clone())?;
    let output = wright_forward(&pair);
    debug_assert_eq!(output.m, m);
    let sigma = output.kappa.union(r.plain());
    let result = if m == 0 {
        DottedSymbol::new(modulus, sigma.to_frobenius(), None)?
    } else {
        psi_inverse(modulus, m, &sigma)?
    };
    debug_assert_eq!(result.weight(), r.weight());
    Ok(result)
}

/// The weight of the psi image for a dotted symbol of weight n with
/// signed dot count m: n - k*m(m-1)/2 - i*m.
pub fn psi_image_weight(modulus: ModulusPair, n: i64, m: i64) -> i64 {
    n - modulus.k() * choose2(m) - modulus.i() * m
}
