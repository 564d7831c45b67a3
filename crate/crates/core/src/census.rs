//! Exhaustive enumeration, exact counting, and identity verification.
//!
//! Counts:
//! * `Q(n)` / `Q(n, m)`: dotted symbols of weight n (refined by the signed
//!   dot count), obtained by direct enumeration of all partitions of n and
//!   their dotted configurations.
//! * `C(n)` / `C(n, m)`: restricted overpartitions of n (no part divisible
//!   by k, overlines only on parts congruent to +-i mod k), refined by the
//!   overline statistic.
//!
//! The verifier checks, for every n up to a bound: the refined count law
//! `Q(n, m) = p(n - k*m(m-1)/2 - i*m)`, the agreement of the total with
//! the coefficient of the product series, the equality `Q(n, m) = C(n, m)`
//! (skipped when k = 2i), and all bijection roundtrips on every enumerated
//! object. Work is split by n across worker threads; workers share nothing
//! mutable and the merged report is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bijections::{
    andrews_forward, andrews_inverse, psi_forward, psi_image_weight, psi_inverse,
    RestrictedOverpartition,
};
use crate::blocks::{
    dotted_configurations, dotted_from_overlined, from_dotted, is_singular, DottedSymbol,
    ModulusPair,
};
use crate::error::Result;
use crate::maps::choose2;
use crate::partition::{
    enumerate_partitions, enumerate_partitions_filtered, Partition, PartitionTable,
};

/// Exact coefficients of a formal power series up to a cutoff.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesTruncation {
    coefficients: Vec<BigUint>,
}

impl SeriesTruncation {
    /// Coefficients of q^0 .. q^cutoff.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    pub fn cutoff(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, n: usize) -> &BigUint {
        &self.coefficients[n]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cutoff": self.cutoff(),
            "coefficients": self
                .coefficients
                .iter()
                .map(big_to_json)
                .collect::<Vec<_>>(),
        })
    }
}

/// Render a big integer as an exact JSON number.
fn big_to_json(value: &BigUint) -> Value {
    serde_json::from_str(&value.to_string()).expect("decimal digits parse as a JSON number")
}

/// Coefficients up to q^cutoff of
/// `prod_{n>=0} (1+q^{nk+i})(1+q^{(n+1)k-i}) / prod_{j=1}^{k-1} (1-q^{nk+j})`.
/// Only factors with exponent <= cutoff contribute.
pub fn product_series(modulus: ModulusPair, cutoff: usize) -> SeriesTruncation {
    let (k, i) = (modulus.k() as usize, modulus.i() as usize);
    let mut coefficients = vec![BigUint::zero(); cutoff + 1];
    coefficients[0] = BigUint::one();
    // multiply by (1 + q^e): downward sweep
    let times_one_plus = |coefficients: &mut Vec<BigUint>, e: usize| {
        for idx in (e..=cutoff).rev() {
            let add = coefficients[idx - e].clone();
            coefficients[idx] += add;
        }
    };
    // divide by (1 - q^e), i.e. multiply by 1 + q^e + q^{2e} + ...: upward sweep
    let times_geometric = |coefficients: &mut Vec<BigUint>, e: usize| {
        for idx in e..=cutoff {
            let add = coefficients[idx - e].clone();
            coefficients[idx] += add;
        }
    };
    let mut base = 0usize;
    while base <= cutoff {
        let numerators = [base + i, base + k - i];
        for e in numerators {
            if e >= 1 && e <= cutoff {
                times_one_plus(&mut coefficients, e);
            }
        }
        for j in 1..k {
            let e = base + j;
            if e >= 1 && e <= cutoff {
                times_geometric(&mut coefficients, e);
            }
        }
        base += k;
    }
    SeriesTruncation { coefficients }
}

/// All dotted symbols of weight n, each exactly once. Partitions are
/// visited in lexicographically decreasing order; for each symbol the
/// undotted configuration comes first, then runs from the first non-E
/// block by increasing end, then runs from the second.
pub fn enumerate_singular(modulus: ModulusPair, n: i64) -> Vec<DottedSymbol> {
    let mut out = Vec::new();
    if n < 0 {
        return out;
    }
    for q in enumerate_partitions(n) {
        out.extend(dotted_configurations(modulus, &q.to_frobenius()));
    }
    out
}

/// Q(n): the number of dotted symbols of weight n, by direct enumeration.
pub fn count_singular(modulus: ModulusPair, n: i64, m: Option<i64>) -> BigUint {
    match m {
        None => count_singular_by_m(modulus, n)
            .values()
            .fold(BigUint::zero(), |acc, c| acc + c),
        Some(m) => count_singular_by_m(modulus, n)
            .remove(&m)
            .unwrap_or_else(BigUint::zero),
    }
}

/// Q(n, m) for every m with a nonzero count.
pub fn count_singular_by_m(modulus: ModulusPair, n: i64) -> BTreeMap<i64, BigUint> {
    let mut by_m = BTreeMap::new();
    for d in enumerate_singular(modulus, n) {
        *by_m
            .entry(d.signed_dot_count())
            .or_insert_with(BigUint::zero) += 1u32;
    }
    by_m
}

/// All restricted overpartitions of weight n: plain partitions into parts
/// not divisible by k, with every subset of the distinct part values
/// congruent to +-i mod k overlined in turn. Errors when k = 2i.
pub fn enumerate_restricted(modulus: ModulusPair, n: i64) -> Result<Vec<RestrictedOverpartition>> {
    let (k, i) = (modulus.k(), modulus.i());
    if modulus.residues_collide() {
        return Err(crate::error::Error::Unsupported(format!(
            "k = 2i (k = {k}): restricted overpartitions are undefined"
        )));
    }
    let mut out = Vec::new();
    if n < 0 {
        return Ok(out);
    }
    for q in enumerate_partitions_filtered(n, |v| v % k != 0) {
        let mut values: Vec<i64> = q.parts().to_vec();
        values.dedup();
        let eligible: Vec<i64> = values
            .into_iter()
            .filter(|&v| v % k == i || v % k == k - i)
            .collect();
        for mask in 0u64..(1 << eligible.len()) {
            let chosen: Vec<i64> = eligible
                .iter()
                .enumerate()
                .filter(|(idx, _)| mask & (1 << idx) != 0)
                .map(|(_, &v)| v)
                .collect();
            let mut remaining = q.parts().to_vec();
            for &v in &chosen {
                let pos = remaining.iter().position(|&x| x == v).expect("value present");
                remaining.remove(pos);
            }
            let over_i = Partition::new(chosen.iter().copied().filter(|&v| v % k == i).collect())?;
            let over_minus_i =
                Partition::new(chosen.iter().copied().filter(|&v| v % k == k - i).collect())?;
            out.push(RestrictedOverpartition::new(
                modulus,
                Partition::new(remaining)?,
                over_i,
                over_minus_i,
            )?);
        }
    }
    Ok(out)
}

/// C(n), by direct enumeration.
pub fn count_restricted(modulus: ModulusPair, n: i64, m: Option<i64>) -> Result<BigUint> {
    Ok(match m {
        None => count_restricted_by_m(modulus, n)?
            .values()
            .fold(BigUint::zero(), |acc, c| acc + c),
        Some(m) => count_restricted_by_m(modulus, n)?
            .remove(&m)
            .unwrap_or_else(BigUint::zero),
    })
}

/// C(n, m) for every m with a nonzero count.
pub fn count_restricted_by_m(modulus: ModulusPair, n: i64) -> Result<BTreeMap<i64, BigUint>> {
    let mut by_m = BTreeMap::new();
    for r in enumerate_restricted(modulus, n)? {
        *by_m.entry(r.statistic()).or_insert_with(BigUint::zero) += 1u32;
    }
    Ok(by_m)
}

/// The refined counts and verdicts for one weight n.
#[derive(Clone, Debug)]
pub struct WeightRecord {
    pub n: i64,
    /// (m, Q(n,m), p-formula value, C(n,m) if defined)
    pub by_m: Vec<(i64, BigUint, BigUint, Option<BigUint>)>,
    pub singular_total: BigUint,
    pub restricted_total: Option<BigUint>,
    pub series_coefficient: BigUint,
    pub refined_ok: bool,
    pub series_ok: bool,
    pub restricted_ok: bool,
    pub roundtrips_ok: bool,
    pub failures: Vec<String>,
}

/// Outcome of [`verify_identities`]: per-weight records plus overall
/// verdicts. The report serializes to JSON and prints as an aligned table.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub k: i64,
    pub i: i64,
    pub n_max: i64,
    /// True when k = 2i and the restricted-side comparison was skipped.
    pub restricted_skipped: bool,
    pub records: Vec<WeightRecord>,
}

impl VerificationReport {
    pub fn refined_ok(&self) -> bool {
        self.records.iter().all(|r| r.refined_ok)
    }

    pub fn series_ok(&self) -> bool {
        self.records.iter().all(|r| r.series_ok)
    }

    pub fn restricted_ok(&self) -> bool {
        self.records.iter().all(|r| r.restricted_ok)
    }

    pub fn roundtrips_ok(&self) -> bool {
        self.records.iter().all(|r| r.roundtrips_ok)
    }

    pub fn all_ok(&self) -> bool {
        self.refined_ok() && self.series_ok() && self.restricted_ok() && self.roundtrips_ok()
    }

    pub fn failures(&self) -> Vec<&str> {
        self.records
            .iter()
            .flat_map(|r| r.failures.iter().map(String::as_str))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "i": self.i,
            "n_max": self.n_max,
            "restricted_skipped": self.restricted_skipped,
            "verdicts": {
                "refined_formula": self.refined_ok(),
                "series_totals": self.series_ok(),
                "restricted_refinement": self.restricted_ok(),
                "roundtrips": self.roundtrips_ok(),
                "all": self.all_ok(),
            },
            "records": self.records.iter().map(|r| json!({
                "n": r.n,
                "singular_total": big_to_json(&r.singular_total),
                "restricted_total": r.restricted_total.as_ref().map(big_to_json),
                "series_coefficient": big_to_json(&r.series_coefficient),
                "by_m": r.by_m.iter().map(|(m, q, formula, c)| json!({
                    "m": m,
                    "singular": big_to_json(q),
                    "formula": big_to_json(formula),
                    "restricted": c.as_ref().map(big_to_json),
                })).collect::<Vec<_>>(),
                "failures": r.failures,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identities for (k,i) = ({},{}), n <= {}{}",
            self.k,
            self.i,
            self.n_max,
            if self.restricted_skipped {
                "  [k = 2i: restricted side skipped]"
            } else {
                ""
            }
        )?;
        writeln!(
            f,
            "{:>4} {:>12} {:>12} {:>12}  by m (m:singular/formula/restricted)",
            "n", "singular", "restricted", "series"
        )?;
        for r in &self.records {
            let restricted = r
                .restricted_total
                .as_ref()
                .map_or("-".to_string(), |c| c.to_string());
            let by_m = r
                .by_m
                .iter()
                .map(|(m, q, formula, c)| {
                    format!(
                        "{m}:{q}/{formula}/{}",
                        c.as_ref().map_or("-".to_string(), |c| c.to_string())
                    )
                })
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(
                f,
                "{:>4} {:>12} {:>12} {:>12}  {}",
                r.n, r.singular_total, restricted, r.series_coefficient, by_m
            )?;
            for failure in &r.failures {
                writeln!(f, "     FAIL {failure}")?;
            }
        }
        writeln!(
            f,
            "refined formula: {}   series totals: {}   restricted refinement: {}   roundtrips: {}",
            verdict(self.refined_ok()),
            verdict(self.series_ok()),
            verdict(self.restricted_ok()),
            verdict(self.roundtrips_ok())
        )
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// The formula side of the refined identity: m -> p(n - k*C(m,2) - i*m)
/// over every integer m with a nonnegative argument.
fn formula_by_m(modulus: ModulusPair, n: i64, table: &mut PartitionTable) -> BTreeMap<i64, BigUint> {
    let (k, i) = (modulus.k(), modulus.i());
    let mut out = BTreeMap::new();
    for direction in [1i64, -1] {
        let mut m = if direction == 1 { 0 } else { -1 };
        loop {
            let argument = n - k * choose2(m) - i * m;
            if argument < 0 {
                break;
            }
            out.insert(m, table.get(argument));
            m += direction;
        }
    }
    out
}

fn verify_weight(modulus: ModulusPair, n: i64, series_coefficient: BigUint) -> WeightRecord {
    let mut failures = Vec::new();
    let mut table = PartitionTable::new();
    let singular = enumerate_singular(modulus, n);
    let mut singular_by_m: BTreeMap<i64, BigUint> = BTreeMap::new();
    for d in &singular {
        *singular_by_m
            .entry(d.signed_dot_count())
            .or_insert_with(BigUint::zero) += 1u32;
    }
    let formula = formula_by_m(modulus, n, &mut table);
    let refined_ok = singular_by_m == formula;
    if !refined_ok {
        failures.push(format!(
            "n={n}: refined counts {singular_by_m:?} != formula {formula:?}"
        ));
    }

    let singular_total = singular_by_m
        .values()
        .fold(BigUint::zero(), |acc, c| acc + c);
    let series_ok = singular_total == series_coefficient;
    if !series_ok {
        failures.push(format!(
            "n={n}: total {singular_total} != series coefficient {series_coefficient}"
        ));
    }

    let (restricted_by_m, restricted_total, restricted_ok) = if modulus.residues_collide() {
        (None, None, true)
    } else {
        let restricted = enumerate_restricted(modulus, n).expect("k != 2i");
        let mut by_m: BTreeMap<i64, BigUint> = BTreeMap::new();
        for r in &restricted {
            *by_m.entry(r.statistic()).or_insert_with(BigUint::zero) += 1u32;
        }
        let total = by_m.values().fold(BigUint::zero(), |acc, c| acc + c);
        let ok = by_m == singular_by_m;
        if !ok {
            failures.push(format!(
                "n={n}: restricted counts {by_m:?} != singular counts {singular_by_m:?}"
            ));
        }
        (Some(by_m), Some(total), ok)
    };

    // roundtrips on every enumerated object
    let mut roundtrips_ok = true;
    let fail = |message: String, roundtrips_ok: &mut bool, failures: &mut Vec<String>| {
        *roundtrips_ok = false;
        if failures.len() < 20 {
            failures.push(message);
        }
    };
    for d in &singular {
        let overlined = from_dotted(d);
        if !is_singular(modulus, &overlined) {
            fail(
                format!("n={n}: {d:?} yields a non-singular overline placement"),
                &mut roundtrips_ok,
                &mut failures,
            );
            continue;
        }
        match dotted_from_overlined(modulus, &overlined) {
            Ok(back) if back == *d => {}
            other => fail(
                format!("n={n}: overline roundtrip failed for {d:?}: {other:?}"),
                &mut roundtrips_ok,
                &mut failures,
            ),
        }
        let m = d.signed_dot_count();
        if m != 0 {
            match psi_forward(d) {
                Ok(image) => {
                    if image.weight() != psi_image_weight(modulus, n, m) {
                        fail(
                            format!("n={n}: psi weight law failed for {d:?}"),
                            &mut roundtrips_ok,
                            &mut failures,
                        );
                    }
                    match psi_inverse(modulus, m, &image) {
                        Ok(back) if back == *d => {}
                        other => fail(
                            format!("n={n}: psi roundtrip failed for {d:?}: {other:?}"),
                            &mut roundtrips_ok,
                            &mut failures,
                        ),
                    }
                }
                Err(e) => fail(
                    format!("n={n}: psi failed on {d:?}: {e}"),
                    &mut roundtrips_ok,
                    &mut failures,
                ),
            }
        }
        if !modulus.residues_collide() {
            match andrews_forward(d) {
                Ok(r) => match andrews_inverse(&r) {
                    Ok(back) if back == *d => {}
                    other => fail(
                        format!("n={n}: composed roundtrip failed for {d:?}: {other:?}"),
                        &mut roundtrips_ok,
                        &mut failures,
                    ),
                },
                Err(e) => fail(
                    format!("n={n}: composed map failed on {d:?}: {e}"),
                    &mut roundtrips_ok,
                    &mut failures,
                ),
            }
        }
    }
    if !modulus.residues_collide() {
        for r in enumerate_restricted(modulus, n).expect("k != 2i") {
            match andrews_inverse(&r).and_then(|d| andrews_forward(&d).map(|rr| (d, rr))) {
                Ok((_, rr)) if rr == r => {}
                other => fail(
                    format!("n={n}: inverse-first roundtrip failed for {r}: {other:?}"),
                    &mut roundtrips_ok,
                    &mut failures,
                ),
            }
        }
    }

    let by_m: Vec<(i64, BigUint, BigUint, Option<BigUint>)> = {
        let mut keys: Vec<i64> = singular_by_m
            .keys()
            .chain(formula.keys())
            .copied()
            .collect();
        if let Some(restricted) = &restricted_by_m {
            keys.extend(restricted.keys().copied());
        }
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|m| {
                (
                    m,
                    singular_by_m.get(&m).cloned().unwrap_or_default(),
                    formula.get(&m).cloned().unwrap_or_default(),
                    restricted_by_m
                        .as_ref()
                        .map(|r| r.get(&m).cloned().unwrap_or_default()),
                )
            })
            .collect()
    };

    WeightRecord {
        n,
        by_m,
        singular_total,
        restricted_total,
        series_coefficient,
        refined_ok,
        series_ok,
        restricted_ok,
        roundtrips_ok,
        failures,
    }
}

/// Check every identity for all n <= n_max. `threads` limits the worker
/// pool; `None` uses the global default. Results are merged in weight
/// order, so the report does not depend on scheduling.
pub fn verify_identities(
    modulus: ModulusPair,
    n_max: i64,
    threads: Option<usize>,
) -> VerificationReport {
    let n_max = n_max.max(0);
    let series = product_series(modulus, n_max as usize);
    let run = || -> Vec<WeightRecord> {
        (0..=n_max)
            .into_par_iter()
            .map(|n| verify_weight(modulus, n, series.coefficient(n as usize).clone()))
            .collect()
    };
    let records = match threads {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("worker pool")
            .install(run),
        None => run(),
    };
    VerificationReport {
        k: modulus.k(),
        i: modulus.i(),
        n_max,
        restricted_skipped: modulus.residues_collide(),
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(k: i64, i: i64) -> ModulusPair {
        ModulusPair::new(k, i).unwrap()
    }

    #[test]
    fn singular_enumeration_counts() {
        assert_eq!(enumerate_singular(modulus(3, 1), 1).len(), 2);
        assert_eq!(enumerate_singular(modulus(5, 2), 0).len(), 1);
        assert_eq!(enumerate_singular(modulus(3, 1), 4).len(), 10);
    }

    #[test]
    fn singular_counts_by_m() {
        let m = modulus(3, 1);
        assert_eq!(count_singular(m, 1, None), BigUint::from(2u32));
        assert_eq!(count_singular(m, 1, Some(0)), BigUint::from(1u32));
        assert_eq!(count_singular(m, 1, Some(1)), BigUint::from(1u32));
        assert_eq!(count_singular(m, 0, None), BigUint::from(1u32));
        let by_m = count_singular_by_m(m, 4);
        let expected: BTreeMap<i64, BigUint> = [
            (-1, BigUint::from(2u32)),
            (0, BigUint::from(5u32)),
            (1, BigUint::from(3u32)),
        ]
        .into_iter()
        .collect();
        assert_eq!(by_m, expected);
        assert_eq!(count_singular(m, 4, None), BigUint::from(10u32));
    }

    #[test]
    fn restricted_enumeration_examples() {
        let m = modulus(3, 1);
        let one = enumerate_restricted(m, 1).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(enumerate_restricted(m, 0).unwrap().len(), 1);
        assert!(matches!(
            enumerate_restricted(ModulusPair::new(4, 2).unwrap(), 3),
            Err(crate::error::Error::Unsupported(_))
        ));
        assert_eq!(
            count_restricted(m, 1, Some(1)).unwrap(),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn series_small_coefficients() {
        let s = product_series(modulus(3, 1), 8);
        assert_eq!(s.coefficient(0), &BigUint::from(1u32));
        assert_eq!(s.coefficient(1), &BigUint::from(2u32));
        assert_eq!(s.coefficient(4), &BigUint::from(10u32));
        assert_eq!(s.cutoff(), 8);
    }

    #[test]
    fn no_dot_counts_are_partition_numbers() {
        let m = modulus(5, 2);
        let mut table = PartitionTable::new();
        for n in 0..=12 {
            assert_eq!(count_singular(m, n, Some(0)), table.get(n));
        }
    }

    #[test]
    fn verify_small_grids() {
        for (k, i) in [(3, 1), (5, 2)] {
            let report = verify_identities(modulus(k, i), 12, Some(2));
            assert!(report.all_ok(), "failures: {:?}", report.failures());
        }
        let trivial = verify_identities(modulus(3, 1), 0, None);
        assert_eq!(trivial.records.len(), 1);
        assert!(trivial.all_ok());
        assert_eq!(trivial.records[0].singular_total, BigUint::from(1u32));
    }

    #[test]
    fn verify_flags_skip_at_colliding_residues() {
        let report = verify_identities(ModulusPair::new(4, 2).unwrap(), 8, None);
        assert!(report.restricted_skipped);
        assert!(report.all_ok(), "failures: {:?}", report.failures());
        assert!(report.records.iter().all(|r| r.restricted_total.is_none()));
    }

    #[test]
    fn report_serializes() {
        let report = verify_identities(modulus(3, 1), 3, None);
        let value = report.to_json();
        assert_eq!(value["verdicts"]["all"], Value::Bool(true));
        assert_eq!(value["records"][1]["singular_total"], json!(2));
        let table = report.to_string();
        assert!(table.contains("refined formula: ok"));
    }
}
