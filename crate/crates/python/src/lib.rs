//! Python extension module `singular_lab`: the main types and operations
//! of `singular-core` behind thin immutable wrappers. Counts come back as
//! Python ints of arbitrary size; structured values round-trip through the
//! same JSON encodings the CLI uses.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use singular_core as core;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn modulus(k: i64, i: i64) -> PyResult<core::ModulusPair> {
    core::ModulusPair::new(k, i).map_err(err)
}

/// A partition: weakly decreasing positive parts.
#[pyclass(frozen, eq, hash, from_py_object)]
#[derive(PartialEq, Eq, Hash, Clone)]
struct Partition {
    inner: core::Partition,
}

#[pymethods]
impl Partition {
    #[new]
    fn new(parts: Vec<i64>) -> PyResult<Self> {
        Ok(Partition {
            inner: core::Partition::new(parts).map_err(err)?,
        })
    }

    /// Build from an unsorted multiset, dropping zeros.
    #[staticmethod]
    fn from_unsorted(parts: Vec<i64>) -> PyResult<Self> {
        Ok(Partition {
            inner: core::Partition::from_unsorted(parts).map_err(err)?,
        })
    }

    #[getter]
    fn parts(&self) -> Vec<i64> {
        self.inner.parts().to_vec()
    }

    #[getter]
    fn weight(&self) -> i64 {
        self.inner.weight()
    }

    #[getter]
    fn rank(&self) -> i64 {
        self.inner.rank()
    }

    fn conjugate(&self) -> Partition {
        Partition {
            inner: self.inner.conjugate(),
        }
    }

    fn scale(&self, c: i64) -> PyResult<Partition> {
        Ok(Partition {
            inner: self.inner.scale(c).map_err(err)?,
        })
    }

    fn union(&self, other: &Partition) -> Partition {
        Partition {
            inner: self.inner.union(&other.inner),
        }
    }

    fn to_frobenius(&self) -> FrobeniusSymbol {
        FrobeniusSymbol {
            inner: self.inner.to_frobenius(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Partition{}", self.inner)
    }
}

/// A Frobenius symbol: two strictly decreasing nonnegative rows.
#[pyclass(frozen, eq, hash, from_py_object)]
#[derive(PartialEq, Eq, Hash, Clone)]
struct FrobeniusSymbol {
    inner: core::FrobeniusSymbol,
}

#[pymethods]
impl FrobeniusSymbol {
    #[new]
    fn new(top: Vec<i64>, bottom: Vec<i64>) -> PyResult<Self> {
        Ok(FrobeniusSymbol {
            inner: core::FrobeniusSymbol::new(top, bottom).map_err(err)?,
        })
    }

    #[getter]
    fn top(&self) -> Vec<i64> {
        self.inner.top().to_vec()
    }

    #[getter]
    fn bottom(&self) -> Vec<i64> {
        self.inner.bottom().to_vec()
    }

    #[getter]
    fn weight(&self) -> i64 {
        self.inner.weight()
    }

    #[getter]
    fn rank(&self) -> i64 {
        self.inner.rank()
    }

    fn swap_rows(&self) -> FrobeniusSymbol {
        FrobeniusSymbol {
            inner: self.inner.swap_rows(),
        }
    }

    fn to_partition(&self) -> Partition {
        Partition {
            inner: self.inner.to_partition(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("FrobeniusSymbol{}", self.inner)
    }
}

/// A Frobenius symbol with a dotted run of parity blocks; the canonical
/// form of a singular overpartition.
#[pyclass(frozen, eq, hash, from_py_object)]
#[derive(PartialEq, Eq, Hash, Clone)]
struct DottedSymbol {
    inner: core::DottedSymbol,
}

fn run_from_args(start: Option<&str>, end_block: Option<usize>) -> PyResult<Option<core::DottedRun>> {
    match start {
        None => Ok(None),
        Some(text) => {
            let start = match text {
                "first" => core::DotStart::FirstNonNeutral,
                "second" => core::DotStart::SecondNonNeutral,
                other => {
                    return Err(PyValueError::new_err(format!(
                        "start must be 'first', 'second', or None, got {other:?}"
                    )))
                }
            };
            let end_block = end_block.ok_or_else(|| {
                PyValueError::new_err("end_block is required when start is given")
            })?;
            Ok(Some(core::DottedRun { start, end_block }))
        }
    }
}

#[pymethods]
impl DottedSymbol {
    #[new]
    #[pyo3(signature = (k, i, top, bottom, start=None, end_block=None))]
    fn new(
        k: i64,
        i: i64,
        top: Vec<i64>,
        bottom: Vec<i64>,
        start: Option<&str>,
        end_block: Option<usize>,
    ) -> PyResult<Self> {
        let symbol = core::FrobeniusSymbol::new(top, bottom).map_err(err)?;
        let run = run_from_args(start, end_block)?;
        Ok(DottedSymbol {
            inner: core::DottedSymbol::new(modulus(k, i)?, symbol, run).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(DottedSymbol {
            inner: serde_json::from_str(text)
                .map_err(|e| PyValueError::new_err(e.to_string()))?,
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("dotted symbols serialize")
    }

    #[getter]
    fn k(&self) -> i64 {
        self.inner.modulus().k()
    }

    #[getter]
    fn i(&self) -> i64 {
        self.inner.modulus().i()
    }

    #[getter]
    fn symbol(&self) -> FrobeniusSymbol {
        FrobeniusSymbol {
            inner: self.inner.symbol().clone(),
        }
    }

    #[getter]
    fn weight(&self) -> i64 {
        self.inner.weight()
    }

    /// Signed dot count m: positive for a negative-last run.
    #[getter]
    fn signed_dot_count(&self) -> i64 {
        self.inner.signed_dot_count()
    }

    /// The block sequence with combining dots, e.g. "EPN\u{0307}".
    #[getter]
    fn sequence(&self) -> String {
        self.inner.sequence_string()
    }

    /// The parity blocks as (start, end, kind, anchor) tuples, 1-based.
    fn blocks(&self) -> Vec<(usize, usize, String, Option<usize>)> {
        self.inner
            .decomposition()
            .blocks
            .iter()
            .map(|b| (b.start, b.end, format!("{:?}", b.kind), b.anchor))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("DottedSymbol({:?})", self.inner)
    }
}

/// An overpartition with no part divisible by k and overlines only on
/// parts congruent to +-i mod k.
#[pyclass(frozen, eq, hash, from_py_object)]
#[derive(PartialEq, Eq, Hash, Clone)]
struct RestrictedOverpartition {
    inner: core::RestrictedOverpartition,
}

#[pymethods]
impl RestrictedOverpartition {
    #[new]
    fn new(
        k: i64,
        i: i64,
        plain: Vec<i64>,
        over_i: Vec<i64>,
        over_minus_i: Vec<i64>,
    ) -> PyResult<Self> {
        let build = || -> core::Result<core::RestrictedOverpartition> {
            core::RestrictedOverpartition::new(
                core::ModulusPair::new(k, i)?,
                core::Partition::new(plain)?,
                core::Partition::new(over_i)?,
                core::Partition::new(over_minus_i)?,
            )
        };
        Ok(RestrictedOverpartition {
            inner: build().map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(RestrictedOverpartition {
            inner: serde_json::from_str(text)
                .map_err(|e| PyValueError::new_err(e.to_string()))?,
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("overpartitions serialize")
    }

    #[getter]
    fn plain(&self) -> Vec<i64> {
        self.inner.plain().parts().to_vec()
    }

    #[getter]
    fn over_i(&self) -> Vec<i64> {
        self.inner.over_i().parts().to_vec()
    }

    #[getter]
    fn over_minus_i(&self) -> Vec<i64> {
        self.inner.over_minus_i().parts().to_vec()
    }

    #[getter]
    fn weight(&self) -> i64 {
        self.inner.weight()
    }

    #[getter]
    fn statistic(&self) -> i64 {
        self.inner.statistic()
    }

    fn __repr__(&self) -> String {
        format!("RestrictedOverpartition{}", self.inner)
    }
}

/// p(n), the number of partitions of n; 0 for n < 0.
#[pyfunction]
fn partition_count(n: i64) -> BigUint {
    core::partition_count(n)
}

/// All partitions of n in lexicographically decreasing order.
#[pyfunction]
fn enumerate_partitions(n: i64) -> Vec<Partition> {
    core::enumerate_partitions(n)
        .map(|inner| Partition { inner })
        .collect()
}

/// Dyson's map d_r.
#[pyfunction]
fn dyson(r: i64, p: &Partition) -> PyResult<Partition> {
    Ok(Partition {
        inner: core::dyson(r, &p.inner).map_err(err)?,
    })
}

/// Inverse of Dyson's map.
#[pyfunction]
fn dyson_inverse(r: i64, p: &Partition) -> PyResult<Partition> {
    Ok(Partition {
        inner: core::dyson_inverse(r, &p.inner).map_err(err)?,
    })
}

/// The shift map s_u on a Frobenius symbol.
#[pyfunction]
fn shift(u: i64, f: &FrobeniusSymbol) -> PyResult<FrobeniusSymbol> {
    Ok(FrobeniusSymbol {
        inner: core::shift(u, &f.inner).map_err(err)?,
    })
}

/// The shifted conjugate c_u on a Frobenius symbol.
#[pyfunction]
fn shifted_conjugate(u: i64, f: &FrobeniusSymbol) -> PyResult<FrobeniusSymbol> {
    Ok(FrobeniusSymbol {
        inner: core::shifted_conjugate(u, &f.inner).map_err(err)?,
    })
}

/// All dotted configurations of a symbol under (k, i).
#[pyfunction]
fn dotted_configurations(k: i64, i: i64, f: &FrobeniusSymbol) -> PyResult<Vec<DottedSymbol>> {
    Ok(core::dotted_configurations(modulus(k, i)?, &f.inner)
        .into_iter()
        .map(|inner| DottedSymbol { inner })
        .collect())
}

/// The staged bijection: dotted symbol -> partition.
#[pyfunction]
fn psi_forward(d: &DottedSymbol) -> PyResult<Partition> {
    Ok(Partition {
        inner: core::psi_forward(&d.inner).map_err(err)?,
    })
}

/// Inverse of the staged bijection for a nonzero signed dot count m.
#[pyfunction]
fn psi_inverse(k: i64, i: i64, m: i64, p: &Partition) -> PyResult<DottedSymbol> {
    Ok(DottedSymbol {
        inner: core::psi_inverse(modulus(k, i)?, m, &p.inner).map_err(err)?,
    })
}

/// The D and Gamma ladders of a run as two lists of symbols.
#[pyfunction]
fn gamma_trace(d: &DottedSymbol) -> PyResult<(Vec<FrobeniusSymbol>, Vec<FrobeniusSymbol>)> {
    let trace = core::gamma_trace(&d.inner).map_err(err)?;
    let wrap = |symbols: &[core::FrobeniusSymbol]| {
        symbols
            .iter()
            .map(|inner| FrobeniusSymbol {
                inner: inner.clone(),
            })
            .collect()
    };
    Ok((wrap(trace.blocks()), wrap(trace.gammas())))
}

/// Dotted symbol -> restricted overpartition.
#[pyfunction]
fn andrews_forward(d: &DottedSymbol) -> PyResult<RestrictedOverpartition> {
    Ok(RestrictedOverpartition {
        inner: core::andrews_forward(&d.inner).map_err(err)?,
    })
}

/// Restricted overpartition -> dotted symbol.
#[pyfunction]
fn andrews_inverse(r: &RestrictedOverpartition) -> PyResult<DottedSymbol> {
    Ok(DottedSymbol {
        inner: core::andrews_inverse(&r.inner).map_err(err)?,
    })
}

/// The Wright map: (mu1, mu2) -> (kappa, m).
#[pyfunction]
fn wright_forward(k: i64, i: i64, mu1: Vec<i64>, mu2: Vec<i64>) -> PyResult<(Vec<i64>, i64)> {
    let input = core::WrightInput::new(
        modulus(k, i)?,
        core::Partition::new(mu1).map_err(err)?,
        core::Partition::new(mu2).map_err(err)?,
    )
    .map_err(err)?;
    let output = core::wright_forward(&input);
    Ok((output.kappa.parts().to_vec(), output.m))
}

/// Inverse of the Wright map: (kappa, m) -> (mu1, mu2).
#[pyfunction]
fn wright_inverse(k: i64, i: i64, kappa: Vec<i64>, m: i64) -> PyResult<(Vec<i64>, Vec<i64>)> {
    let pair = core::wright_inverse(
        modulus(k, i)?,
        &core::Partition::new(kappa).map_err(err)?,
        m,
    )
    .map_err(err)?;
    Ok((pair.mu1().parts().to_vec(), pair.mu2().parts().to_vec()))
}

/// Number of singular overpartitions of n, optionally refined by m.
#[pyfunction]
#[pyo3(signature = (k, i, n, m=None))]
fn count_singular(k: i64, i: i64, n: i64, m: Option<i64>) -> PyResult<BigUint> {
    Ok(core::count_singular(modulus(k, i)?, n, m))
}

/// Refined counts of singular overpartitions as a dict m -> count.
#[pyfunction]
fn count_singular_by_m(k: i64, i: i64, n: i64) -> PyResult<std::collections::BTreeMap<i64, BigUint>> {
    Ok(core::count_singular_by_m(modulus(k, i)?, n))
}

/// Number of restricted overpartitions of n, optionally refined by m.
#[pyfunction]
#[pyo3(signature = (k, i, n, m=None))]
fn count_restricted(k: i64, i: i64, n: i64, m: Option<i64>) -> PyResult<BigUint> {
    core::count_restricted(modulus(k, i)?, n, m).map_err(err)
}

/// Exact product-series coefficients for exponents 0..=limit.
#[pyfunction]
fn series_coefficients(k: i64, i: i64, limit: usize) -> PyResult<Vec<BigUint>> {
    Ok(core::product_series(modulus(k, i)?, limit)
        .coefficients()
        .to_vec())
}

/// Run the full identity verifier; returns a dict of verdicts plus the
/// JSON report.
#[pyfunction]
#[pyo3(signature = (k, i, n_max, threads=None))]
fn verify(
    py: Python<'_>,
    k: i64,
    i: i64,
    n_max: i64,
    threads: Option<usize>,
) -> PyResult<Py<pyo3::types::PyDict>> {
    use pyo3::types::PyDict;
    let report = core::verify_identities(modulus(k, i)?, n_max, threads);
    let dict = PyDict::new(py);
    dict.set_item("all_ok", report.all_ok())?;
    dict.set_item("refined_formula", report.refined_ok())?;
    dict.set_item("series_totals", report.series_ok())?;
    dict.set_item("restricted_refinement", report.restricted_ok())?;
    dict.set_item("roundtrips", report.roundtrips_ok())?;
    dict.set_item("restricted_skipped", report.restricted_skipped)?;
    dict.set_item("json", report.to_json().to_string())?;
    Ok(dict.into())
}

#[pymodule]
fn singular_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Partition>()?;
    m.add_class::<FrobeniusSymbol>()?;
    m.add_class::<DottedSymbol>()?;
    m.add_class::<RestrictedOverpartition>()?;
    m.add_function(wrap_pyfunction!(partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(dyson, m)?)?;
    m.add_function(wrap_pyfunction!(dyson_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(shift, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(dotted_configurations, m)?)?;
    m.add_function(wrap_pyfunction!(psi_forward, m)?)?;
    m.add_function(wrap_pyfunction!(psi_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_trace, m)?)?;
    m.add_function(wrap_pyfunction!(andrews_forward, m)?)?;
    m.add_function(wrap_pyfunction!(andrews_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(wright_forward, m)?)?;
    m.add_function(wrap_pyfunction!(wright_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(count_singular, m)?)?;
    m.add_function(wrap_pyfunction!(count_singular_by_m, m)?)?;
    m.add_function(wrap_pyfunction!(count_restricted, m)?)?;
    m.add_function(wrap_pyfunction!(series_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
