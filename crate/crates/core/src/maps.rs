//! The primitive bijective maps: Dyson's map d_r, the shift s_u, the
//! shifted conjugate c_u, and the Wright bijection in its residue-encoded
//! form.
//!
//! Dyson's map d_r applies to a partition of rank <= r: subtract 1 from
//! every part, drop zeros, and append a part of size r - 1 + (number of
//! parts). The result has weight increased by r - 1 and rank >= r - 2.
//! On Frobenius symbols the same map is given by explicit casework on the
//! last columns; both forms are implemented and tested against each other.
//!
//! s_u maps columns (a, b) to (a-u, b+u); c_u maps (a, b) to (b-u, a+u).
//! Both preserve weight; s_u inverts as s_{-u} and c_u is an involution.
//! On the empty symbol both act as the identity.

use serde::{Deserialize, Serialize};

use crate::blocks::ModulusPair;
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusSymbol;
use crate::partition::Partition;

/// Dyson's map d_r on partitions. Requires rank(p) <= r; on the empty
/// partition it is defined for r >= 1 (append a part of size r - 1, which
/// vanishes when r = 1).
pub fn dyson(r: i64, p: &Partition) -> Result<Partition> {
    if p.is_empty() {
        return match r {
            1 => Ok(Partition::empty()),
            _ if r >= 2 => Partition::new(vec![r - 1]),
            _ => Err(Error::Precondition(format!(
                "d_{r} is undefined on the empty partition for r <= 0"
            ))),
        };
    }
    if p.rank() > r {
        return Err(Error::Precondition(format!(
            "d_{r} requires rank <= {r}, got {}",
            p.rank()
        )));
    }
    let new_part = r - 1 + p.len() as i64;
    let mut parts = Vec::with_capacity(p.len() + 1);
    if new_part > 0 {
        parts.push(new_part);
    }
    parts.extend(p.parts().iter().filter(|&&x| x > 1).map(|&x| x - 1));
    // new_part >= p[0] - 1 because rank(p) <= r, so the order is correct
    Partition::new(parts)
}

/// Inverse of [`dyson`]: defined exactly on the image of d_r.
pub fn dyson_inverse(r: i64, p: &Partition) -> Result<Partition> {
    if p.is_empty() {
        return match r {
            1 => Ok(Partition::empty()),
            _ if r <= 0 => Ok(Partition::new(vec![1; (1 - r) as usize]).unwrap()),
            _ => Err(Error::Domain(format!(
                "the empty partition is not in the image of d_{r} for r >= 2"
            ))),
        };
    }
    if p.rank() < r - 2 {
        return Err(Error::Domain(format!(
            "not in the image of d_{r}: rank {} < {}",
            p.rank(),
            r - 2
        )));
    }
    let length = p.parts()[0] - r + 1; // the original number of parts
    let mut parts: Vec<i64> = p.parts()[1..].iter().map(|&x| x + 1).collect();
    parts.resize(length as usize, 1);
    Partition::new(parts)
}

/// Dyson's map in Frobenius-symbol casework form. Agrees with [`dyson`]
/// through the partition correspondence.
pub fn dyson_frobenius(r: i64, f: &FrobeniusSymbol) -> Result<FrobeniusSymbol> {
    if f.is_empty() {
        return match r {
            1 => Ok(FrobeniusSymbol::empty()),
            _ if r >= 2 => FrobeniusSymbol::new(vec![r - 2], vec![0]),
            _ => Err(Error::Precondition(format!(
                "d_{r} is undefined on the empty symbol for r <= 0"
            ))),
        };
    }
    if f.rank() > r {
        return Err(Error::Precondition(format!(
            "d_{r} requires rank <= {r}, got {}",
            f.rank()
        )));
    }
    let delta = f.len();
    let a = f.top();
    let b = f.bottom();
    let head = b[0] + r - 1;
    let (top, bottom): (Vec<i64>, Vec<i64>) = if delta >= 2 {
        let shifted_top = |upto: usize| -> Vec<i64> {
            let mut row = vec![head];
            row.extend(a[..upto].iter().map(|&x| x - 2));
            row
        };
        let shifted_bottom = |extra: &[i64]| -> Vec<i64> {
            let mut row: Vec<i64> = b[1..].iter().map(|&x| x + 2).collect();
            row.extend_from_slice(extra);
            row
        };
        if a[delta - 1] >= 2 {
            (shifted_top(delta), shifted_bottom(&[1, 0]))
        } else if a[delta - 1] == 1 {
            (shifted_top(delta - 1), shifted_bottom(&[1]))
        } else if a[delta - 2] == 1 {
            (shifted_top(delta - 2), shifted_bottom(&[]))
        } else {
            (shifted_top(delta - 1), shifted_bottom(&[0]))
        }
    } else if a[0] >= 2 {
        (vec![head, a[0] - 2], vec![1, 0])
    } else if a[0] == 1 {
        (vec![head], vec![1])
    } else if b[0] == -r {
        return Ok(FrobeniusSymbol::empty());
    } else {
        (vec![head], vec![0])
    };
    FrobeniusSymbol::new(top, bottom)
        .map_err(|e| Error::Invariant(format!("Dyson casework produced an invalid symbol: {e}")))
}

/// The shift map s_u: column-wise (a, b) -> (a-u, b+u).
pub fn shift(u: i64, f: &FrobeniusSymbol) -> Result<FrobeniusSymbol> {
    if f.is_empty() {
        return Ok(FrobeniusSymbol::empty());
    }
    let top: Vec<i64> = f.top().iter().map(|&x| x - u).collect();
    let bottom: Vec<i64> = f.bottom().iter().map(|&x| x + u).collect();
    FrobeniusSymbol::new(top, bottom)
        .map_err(|_| Error::Domain(format!("s_{u} drives an entry of {f} negative")))
}

/// The shifted conjugate c_u: column-wise (a, b) -> (b-u, a+u). An
/// involution: c_u(c_u(f)) = f.
pub fn shifted_conjugate(u: i64, f: &FrobeniusSymbol) -> Result<FrobeniusSymbol> {
    if f.is_empty() {
        return Ok(FrobeniusSymbol::empty());
    }
    let top: Vec<i64> = f.bottom().iter().map(|&x| x - u).collect();
    let bottom: Vec<i64> = f.top().iter().map(|&x| x + u).collect();
    FrobeniusSymbol::new(top, bottom)
        .map_err(|_| Error::Domain(format!("c_{u} drives an entry of {f} negative")))
}

/// A pair of partitions into distinct parts: mu1 with parts congruent to
/// i mod k, mu2 with parts congruent to k-i mod k.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WrightInput {
    modulus: ModulusPair,
    mu1: Partition,
    mu2: Partition,
}

impl WrightInput {
    pub fn new(modulus: ModulusPair, mu1: Partition, mu2: Partition) -> Result<Self> {
        let (k, i) = (modulus.k(), modulus.i());
        for (name, mu, residue) in [("mu1", &mu1, i), ("mu2", &mu2, k - i)] {
            for window in mu.parts().windows(2) {
                if window[0] == window[1] {
                    return Err(Error::InvalidArgument(format!(
                        "{name} must have distinct parts, got {} twice",
                        window[0]
                    )));
                }
            }
            if let Some(&bad) = mu.parts().iter().find(|&&x| x % k != residue % k) {
                return Err(Error::InvalidArgument(format!(
                    "{name} parts must be congruent to {residue} mod {k}, got {bad}"
                )));
            }
        }
        Ok(WrightInput { modulus, mu1, mu2 })
    }

    pub fn modulus(&self) -> ModulusPair {
        self.modulus
    }

    pub fn mu1(&self) -> &Partition {
        &self.mu1
    }

    pub fn mu2(&self) -> &Partition {
        &self.mu2
    }

    /// The statistic m = (number of parts of mu1) - (number of parts of mu2).
    pub fn statistic(&self) -> i64 {
        self.mu1.len() as i64 - self.mu2.len() as i64
    }

    pub fn weight(&self) -> i64 {
        self.mu1.weight() + self.mu2.weight()
    }
}

/// A partition into multiples of k together with the statistic m,
/// satisfying `weight(input) = |kappa| + k*m(m-1)/2 + i*m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WrightOutput {
    pub kappa: Partition,
    pub m: i64,
}

/// m(m-1)/2 for any integer m (the binomial C(m,2) extended to negatives).
pub fn choose2(m: i64) -> i64 {
    m * (m - 1) / 2
}

// Decode residue classes to the base sequences: mu1 = k*a + i, mu2 = k*b + (k-i).
fn decode(input: &WrightInput) -> (Vec<i64>, Vec<i64>) {
    let (k, i) = (input.modulus.k(), input.modulus.i());
    let a = input.mu1.parts().iter().map(|&x| (x - i) / k).collect();
    let b = input
        .mu2
        .parts()
        .iter()
        .map(|&x| (x - (k - i)) / k)
        .collect();
    (a, b)
}

// Core of the forward map for m >= 0: from strictly decreasing sequences
// a (length s+m) and b (length s), build nu and the symbol mu, and return
// the unscaled partition nu U mu.
fn wright_core(a: &[i64], b: &[i64]) -> Partition {
    let m = a.len() - b.len();
    let symbol = FrobeniusSymbol::new(a[m..].to_vec(), b.to_vec())
        .expect("tails of strictly decreasing sequences form a symbol");
    let nu = Partition::from_unsorted(
        (0..m).map(|j| a[j] - m as i64 + j as i64 + 1), // nu_j = a_j - m + j, 1-based
    )
    .expect("nu entries are nonnegative");
    nu.union(&symbol.to_partition())
}

/// The Wright map: (mu1, mu2) -> (kappa, m) with kappa a partition into
/// multiples of k. For m < 0 the construction mirrors through the
/// conjugate, which is implemented by exchanging the roles of the two
/// inputs under the flipped modulus (k, k-i).
pub fn wright_forward(input: &WrightInput) -> WrightOutput {
    let modulus = input.modulus;
    let m = input.statistic();
    let kappa = if m >= 0 {
        let (a, b) = decode(input);
        wright_core(&a, &b)
    } else {
        let mirrored = WrightInput::new(modulus.flip(), input.mu2.clone(), input.mu1.clone())
            .expect("mirrored residues stay valid");
        let (a, b) = decode(&mirrored);
        wright_core(&a, &b).conjugate()
    }
    .scale(modulus.k())
    .expect("k >= 3");
    debug_assert_eq!(
        input.weight(),
        kappa.weight() + modulus.k() * choose2(m) + modulus.i() * m
    );
    WrightOutput { kappa, m }
}

/// Inverse of the Wright map. `kappa` must consist of multiples of k.
///
/// For m >= 0 the split of rho = kappa/k into nu and mu takes the m
/// largest parts as nu (zero-padded when rho is short): this is the
/// canonical split because nu_m = a_m >= a_{m+1} + 1 = mu_1, so the m
/// largest parts of nu U mu are exactly the parts of nu.
pub fn wright_inverse(modulus: ModulusPair, kappa: &Partition, m: i64) -> Result<WrightInput> {
    let k = modulus.k();
    if let Some(&bad) = kappa.parts().iter().find(|&&x| x % k != 0) {
        return Err(Error::InvalidArgument(format!(
            "kappa must consist of multiples of {k}, got {bad}"
        )));
    }
    if m < 0 {
        // mirror of the forward m < 0 case: undo the conjugate, then swap roles
        let rho = Partition::new(kappa.parts().iter().map(|&x| x / k).collect())?;
        let sigma = rho.conjugate().scale(k)?;
        let mirrored = wright_inverse(modulus.flip(), &sigma, -m)?;
        return WrightInput::new(modulus, mirrored.mu2, mirrored.mu1);
    }
    let i = modulus.i();
    let rho: Vec<i64> = kappa.parts().iter().map(|&x| x / k).collect();
    let m_usize = m as usize;
    let mut nu: Vec<i64> = rho.iter().take(m_usize).copied().collect();
    nu.resize(m_usize, 0);
    let mu_part = Partition::new(rho.get(m_usize..).unwrap_or(&[]).to_vec())?;
    let symbol = mu_part.to_frobenius();
    let mut a: Vec<i64> = nu
        .iter()
        .enumerate()
        .map(|(j, &v)| v + m - j as i64 - 1) // a_j = nu_j + m - j, 1-based
        .collect();
    a.extend_from_slice(symbol.top());
    for window in a.windows(2) {
        if window[0] <= window[1] {
            return Err(Error::Domain(format!(
                "(kappa, m) = ({kappa}, {m}) does not decode to strictly decreasing parts"
            )));
        }
    }
    let mu1 = Partition::new(a.iter().map(|&x| k * x + i).collect())?;
    let mu2 = Partition::new(symbol.bottom().iter().map(|&x| k * x + (k - i)).collect())?;
    WrightInput::new(modulus, mu1, mu2)
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

    fn modulus(k: i64, i: i64) -> ModulusPair {
        ModulusPair::new(k, i).unwrap()
    }

    #[test]
    fn dyson_worked_cases() {
        assert_eq!(dyson(-1, &p(&[2, 2, 1])).unwrap(), p(&[1, 1, 1]));
        assert_eq!(dyson(1, &Partition::empty()).unwrap(), Partition::empty());
        assert_eq!(dyson(2, &p(&[1])).unwrap(), p(&[2]));
        assert_eq!(dyson(3, &Partition::empty()).unwrap(), p(&[2]));
        assert!(dyson(0, &Partition::empty()).is_err());
        assert!(dyson(-1, &p(&[3])).is_err()); // rank 2 > -1
    }

    #[test]
    fn dyson_weight_and_rank_laws() {
        for n in 0..=14 {
            for q in enumerate_partitions(n) {
                for r in q.rank()..=q.rank() + 6 {
                    if q.is_empty() && r < 1 {
                        continue;
                    }
                    let image = dyson(r, &q).unwrap();
                    assert_eq!(image.weight(), q.weight() + r - 1);
                    assert!(image.rank() >= r - 2 || image.is_empty());
                }
            }
        }
    }

    #[test]
    fn dyson_inverse_worked_cases() {
        assert_eq!(dyson_inverse(-1, &p(&[1, 1, 1])).unwrap(), p(&[2, 2, 1]));
        // d_{1-i}^{-1}(empty) at (k,i)=(5,2): the column (0 / 1)
        let q = dyson_inverse(-1, &Partition::empty()).unwrap();
        assert_eq!(q.to_frobenius(), sym(&[0], &[1]));
        assert_eq!(
            dyson_inverse(1, &Partition::empty()).unwrap(),
            Partition::empty()
        );
        assert!(dyson_inverse(2, &Partition::empty()).is_err());
    }

    #[test]
    fn dyson_roundtrips() {
        for n in 0..=12 {
            for q in enumerate_partitions(n) {
                for r in q.rank()..=q.rank() + 6 {
                    if q.is_empty() && r < 1 {
                        continue;
                    }
                    let image = dyson(r, &q).unwrap();
                    assert_eq!(dyson_inverse(r, &image).unwrap(), q, "r={r} q={q}");
                }
                // inverse first: q must be in the image, i.e. rank >= r-2
                for r in (q.rank() - 4)..=(q.rank() + 2) {
                    if q.is_empty() && r >= 2 {
                        continue;
                    }
                    let preimage = dyson_inverse(r, &q).unwrap();
                    assert_eq!(dyson(r, &preimage).unwrap(), q, "r={r} q={q}");
                }
            }
        }
    }

    #[test]
    fn dyson_frobenius_matches_partition_form() {
        for n in 0..=14 {
            for q in enumerate_partitions(n) {
                let f = q.to_frobenius();
                for r in q.rank()..=q.rank() + 6 {
                    if q.is_empty() && r < 1 {
                        continue;
                    }
                    let by_casework = dyson_frobenius(r, &f).unwrap();
                    let by_partition = dyson(r, &q).unwrap().to_frobenius();
                    assert_eq!(by_casework, by_partition, "r={r} q={q}");
                }
            }
        }
    }

    #[test]
    fn dyson_frobenius_worked_cases() {
        // the third gamma of the 469-trace, mapped with r = -11
        let gamma3 = sym(
            &[13, 11, 9, 8, 4, 3, 2, 1, 0],
            &[24, 21, 20, 17, 15, 13, 12, 8, 4],
        );
        assert_eq!(
            dyson_frobenius(-11, &gamma3).unwrap(),
            sym(
                &[12, 11, 9, 7, 6, 2, 1, 0],
                &[23, 22, 19, 17, 15, 14, 10, 6]
            )
        );
        // the vanishing branch: a_1 = 0, b_1 = -r
        assert_eq!(
            dyson_frobenius(-1, &sym(&[0], &[1])).unwrap(),
            FrobeniusSymbol::empty()
        );
    }

    #[test]
    fn shift_worked_case_and_inverse() {
        let d3 = sym(
            &[18, 16, 14, 13, 9, 8, 7],
            &[19, 16, 15, 12, 10, 8, 7],
        );
        let shifted = shift(5, &d3).unwrap();
        assert_eq!(
            shifted,
            sym(
                &[13, 11, 9, 8, 4, 3, 2],
                &[24, 21, 20, 17, 15, 13, 12]
            )
        );
        assert_eq!(shift(-5, &shifted).unwrap(), d3);
        assert_eq!(shift(0, &d3).unwrap(), d3);
        assert_eq!(shifted.weight(), d3.weight());
        assert!(shift(100, &d3).is_err());
        assert_eq!(
            shift(7, &FrobeniusSymbol::empty()).unwrap(),
            FrobeniusSymbol::empty()
        );
    }

    #[test]
    fn shifted_conjugate_worked_cases() {
        assert_eq!(
            shifted_conjugate(2, &sym(&[6, 4], &[4, 3])).unwrap(),
            sym(&[2, 1], &[8, 6])
        );
        let d4 = sym(&[31, 28, 27, 25, 23], &[30, 28, 25, 24, 20]);
        let image = shifted_conjugate(7, &d4).unwrap();
        assert_eq!(
            image,
            sym(&[23, 21, 18, 17, 13], &[38, 35, 34, 32, 30])
        );
        assert_eq!(shifted_conjugate(7, &image).unwrap(), d4);
        assert_eq!(image.weight(), d4.weight());
    }

    #[test]
    fn shift_conjugate_laws_exhaustive() {
        for n in 0..=10 {
            for q in enumerate_partitions(n) {
                let f = q.to_frobenius();
                for u in -4..=4 {
                    if let Ok(s) = shift(u, &f) {
                        assert_eq!(s.weight(), f.weight());
                        assert_eq!(shift(-u, &s).unwrap(), f);
                    }
                    if let Ok(c) = shifted_conjugate(u, &f) {
                        assert_eq!(c.weight(), f.weight());
                        assert_eq!(shifted_conjugate(u, &c).unwrap(), f);
                    }
                }
            }
        }
    }

    #[test]
    fn wright_forward_worked_example() {
        let m = modulus(5, 2);
        let input = WrightInput::new(m, p(&[37, 27, 22, 7]), p(&[18, 13])).unwrap();
        let output = wright_forward(&input);
        assert_eq!(output.kappa, p(&[30, 25, 25, 15, 10, 10]));
        assert_eq!(output.m, 2);
    }

    #[test]
    fn wright_forward_edge_cases() {
        let m = modulus(5, 2);
        let empty = WrightInput::new(m, Partition::empty(), Partition::empty()).unwrap();
        let output = wright_forward(&empty);
        assert_eq!(output.kappa, Partition::empty());
        assert_eq!(output.m, 0);

        // negative statistic
        let input = WrightInput::new(m, p(&[7]), p(&[18, 13])).unwrap();
        let output = wright_forward(&input);
        assert_eq!(output.m, -1);
        assert_eq!(
            input.weight(),
            output.kappa.weight() + 5 * choose2(-1) - 2
        );
        assert_eq!(
            wright_inverse(m, &output.kappa, output.m).unwrap(),
            input
        );
    }

    #[test]
    fn wright_input_validation() {
        let m = modulus(5, 2);
        assert!(WrightInput::new(m, p(&[7, 7]), Partition::empty()).is_err());
        assert!(WrightInput::new(m, p(&[8]), Partition::empty()).is_err());
        assert!(WrightInput::new(m, Partition::empty(), p(&[2])).is_err());
        assert!(wright_inverse(m, &p(&[7]), 0).is_err());
    }

    #[test]
    fn wright_inverse_worked_example() {
        let m = modulus(5, 2);
        let input = wright_inverse(m, &p(&[5, 5, 5, 5, 5, 5]), 3).unwrap();
        assert_eq!(input.mu1(), &p(&[17, 12, 7, 2]));
        assert_eq!(input.mu2(), &p(&[13]));
        let empty = wright_inverse(m, &Partition::empty(), 0).unwrap();
        assert_eq!(empty.mu1(), &Partition::empty());
        assert_eq!(empty.mu2(), &Partition::empty());
    }

    /// All strictly decreasing sequences of parts congruent to `residue`
    /// mod k with the given weight.
    fn distinct_residue_partitions(n: i64, k: i64, residue: i64) -> Vec<Partition> {
        fn rec(remaining: i64, max_part: i64, k: i64, residue: i64, stack: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition::new(stack.clone()).unwrap());
                return;
            }
            let mut v = max_part.min(remaining);
            while v >= 1 {
                if v % k == residue % k {
                    stack.push(v);
                    rec(remaining - v, v - 1, k, residue, stack, out);
                    stack.pop();
                }
                v -= 1;
            }
        }
        let mut out = Vec::new();
        rec(n, n, k, residue, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn wright_roundtrip_exhaustive_up_to_60() {
        let m = modulus(5, 2);
        let mut total = 0u64;
        for w1 in 0..=60 {
            let mu1s = distinct_residue_partitions(w1, 5, 2);
            if mu1s.is_empty() {
                continue;
            }
            for w2 in 0..=(60 - w1) {
                let mu2s = distinct_residue_partitions(w2, 5, 3);
                for mu1 in &mu1s {
                    for mu2 in &mu2s {
                        let input = WrightInput::new(m, mu1.clone(), mu2.clone()).unwrap();
                        let output = wright_forward(&input);
                        assert!(output.kappa.parts().iter().all(|&x| x % 5 == 0));
                        assert_eq!(
                            input.weight(),
                            output.kappa.weight() + 5 * choose2(output.m) + 2 * output.m
                        );
                        let back = wright_inverse(m, &output.kappa, output.m).unwrap();
                        assert_eq!(back, input);
                        total += 1;
                    }
                }
            }
        }
        assert!(total > 1000, "exhaustive sweep looks too small: {total}");
    }

    #[test]
    fn wright_count_law_up_to_60() {
        // the number of pairs with weight n and statistic m equals
        // p((n - k*C(m,2) - i*m)/k) when that argument is a nonnegative
        // multiple of 1/k, else 0
        let (k, i) = (5i64, 2i64);
        let mut counts = std::collections::BTreeMap::<(i64, i64), u64>::new();
        for w1 in 0..=60 {
            for mu1 in distinct_residue_partitions(w1, k, i) {
                for w2 in 0..=(60 - w1) {
                    for mu2 in distinct_residue_partitions(w2, k, k - i) {
                        let m = mu1.len() as i64 - mu2.len() as i64;
                        *counts.entry((w1 + w2, m)).or_default() += 1;
                    }
                }
            }
        }
        let mut table = crate::partition::PartitionTable::new();
        for n in 0..=60 {
            for m in -3..=3 {
                let numerator = n - k * choose2(m) - i * m;
                let expected = if numerator >= 0 && numerator % k == 0 {
                    table.get(numerator / k)
                } else {
                    num_bigint::BigUint::from(0u32)
                };
                let actual = counts.get(&(n, m)).copied().unwrap_or(0);
                assert_eq!(
                    num_bigint::BigUint::from(actual),
                    expected,
                    "n={n} m={m}"
                );
            }
        }
    }
}
