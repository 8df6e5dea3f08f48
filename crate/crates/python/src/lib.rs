//! Python bindings for `selberg-core`.

use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use selberg_core::config::ConfigOverrides;
use selberg_core::polyalg::IntPolynomial;
use selberg_core::{construct as cons, numfield, selberg as sel, torsion as tor, Error};

create_exception!(selberg, SelbergError, PyException);
create_exception!(selberg, ResourceCapError, SelbergError);

fn to_py(e: Error) -> PyErr {
    if e.is_resource_cap() {
        ResourceCapError::new_err(e.to_string())
    } else {
        SelbergError::new_err(e.to_string())
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Numeric constants; unspecified keywords keep their defaults.
#[pyclass(name = "Config", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyConfig {
    inner: selberg_core::Config,
    #[pyo3(get)]
    defaulted: Vec<&'static str>,
}

#[pymethods]
impl PyConfig {
    #[new]
    #[pyo3(signature = (*, prasad_c1=None, prasad_c2=None, belolipetsky_a=None, belolipetsky_b=None,
                        jordan_index=None, epsilon=None, prime_scan_cap=None, lemma_c=None, volume_log_c=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        prasad_c1: Option<f64>,
        prasad_c2: Option<f64>,
        belolipetsky_a: Option<f64>,
        belolipetsky_b: Option<f64>,
        jordan_index: Option<f64>,
        epsilon: Option<f64>,
        prime_scan_cap: Option<u64>,
        lemma_c: Option<f64>,
        volume_log_c: Option<f64>,
    ) -> PyResult<Self> {
        let o = ConfigOverrides {
            prasad_c1,
            prasad_c2,
            belolipetsky_a,
            belolipetsky_b,
            jordan_index,
            epsilon,
            prime_scan_cap,
            lemma_c,
            volume_log_c,
        };
        let (inner, defaulted) = selberg_core::Config::with_overrides(&o);
        inner.validate().map_err(to_py)?;
        Ok(PyConfig { inner, defaulted })
    }

    fn to_json(&self) -> String {
        json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Config({})", self.to_json())
    }
}

fn cfg_or_default(c: Option<&PyConfig>) -> selberg_core::Config {
    c.map(|c| c.inner.clone()).unwrap_or_default()
}

#[pyclass(name = "NumberField", frozen)]
struct PyNumberField {
    inner: Arc<numfield::NumberField>,
}

#[pymethods]
impl PyNumberField {
    /// Field defined by a monic irreducible polynomial, coefficients lowest
    /// degree first.
    #[new]
    fn new(coeffs: Vec<BigInt>) -> PyResult<Self> {
        let f = IntPolynomial::new(coeffs);
        Ok(PyNumberField { inner: Arc::new(numfield::make_field(&f).map_err(to_py)?) })
    }

    /// `Q(2cos 2π/p)`.
    #[staticmethod]
    fn two_cos(p: u64) -> PyResult<Self> {
        Ok(PyNumberField { inner: Arc::new(numfield::two_cos_field(p).map_err(to_py)?) })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let f = selberg_core::polyalg::parse_poly_text(text).map_err(to_py)?;
        Ok(PyNumberField { inner: Arc::new(numfield::make_field(&f).map_err(to_py)?) })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn poly(&self) -> Vec<BigInt> {
        self.inner.defining_poly().coeffs().to_vec()
    }

    #[getter]
    fn disc_poly(&self) -> BigInt {
        self.inner.disc_poly().clone()
    }

    #[getter]
    fn field_disc(&self) -> BigInt {
        self.inner.field_disc().clone()
    }

    #[getter]
    fn log_abs_disc(&self) -> f64 {
        self.inner.log_abs_disc()
    }

    #[getter]
    fn monogenic(&self) -> bool {
        self.inner.monogenic_certified()
    }

    /// Real embeddings in increasing order, as floats.
    fn embeddings(&self) -> Vec<f64> {
        (0..self.inner.real_embeddings().len()).map(|i| self.inner.real_root(i).approx()).collect()
    }

    /// `[(e, f), ...]` for the primes above `p`, and whether `p` divides
    /// the index of `Z[θ]`.
    fn split(&self, p: u64) -> PyResult<(Vec<(usize, usize)>, bool)> {
        let s = numfield::dedekind_split(&self.inner, p).map_err(to_py)?;
        Ok((s.factors, s.index_divisible))
    }

    fn count_prime_ideals(&self, x: u64) -> PyResult<(u64, Vec<u64>)> {
        let c = numfield::count_prime_ideals(&self.inner, x).map_err(to_py)?;
        Ok((c.count, c.skipped_primes))
    }

    fn to_json(&self) -> String {
        json(&*self.inner)
    }

    fn __repr__(&self) -> String {
        format!("NumberField({:?})", self.poly().iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

#[pyclass(name = "CongruenceLevel", frozen)]
struct PyCongruenceLevel {
    inner: sel::CongruenceLevel,
}

#[pymethods]
impl PyCongruenceLevel {
    #[getter]
    fn q(&self) -> u64 {
        self.inner.q
    }
    #[getter]
    fn f(&self) -> usize {
        self.inner.f
    }
    #[getter]
    fn e(&self) -> usize {
        self.inner.e
    }
    #[getter]
    fn norm(&self) -> BigInt {
        self.inner.norm.clone()
    }
    #[getter]
    fn index_bound(&self) -> BigInt {
        self.inner.index_bound.clone()
    }
    #[getter]
    fn skipped_primes(&self) -> Vec<u64> {
        self.inner.skipped_primes.clone()
    }
    fn to_json(&self) -> String {
        json(&self.inner)
    }
    fn __repr__(&self) -> String {
        format!("CongruenceLevel(q={}, f={}, e={}, index_bound={})", self.q(), self.f(), self.e(), self.inner.index_bound)
    }
}

#[pyclass(name = "TorsionProfile", frozen)]
struct PyTorsionProfile {
    inner: tor::TorsionProfile,
}

#[pymethods]
impl PyTorsionProfile {
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }
    #[getter]
    fn d(&self) -> u32 {
        self.inner.d
    }
    #[getter]
    fn exact_max_order(&self) -> BigInt {
        self.inner.exact_max_order.clone()
    }
    #[getter]
    fn witness_orders(&self) -> Vec<u64> {
        self.inner.witness_orders.clone()
    }
    #[getter]
    fn stated_bound(&self) -> BigInt {
        self.inner.stated_bound.clone()
    }
    #[getter]
    fn proof_bound(&self) -> BigInt {
        self.inner.proof_bound.clone()
    }
    #[getter]
    fn stated_holds(&self) -> bool {
        self.inner.stated_holds
    }
    fn to_json(&self) -> String {
        json(&self.inner)
    }
    fn __repr__(&self) -> String {
        format!("TorsionProfile(n={}, d={}, exact_max_order={})", self.inner.n, self.inner.d, self.inner.exact_max_order)
    }
}

#[pyclass(name = "LatticeConstruction", frozen)]
struct PyLatticeConstruction {
    inner: cons::LatticeConstruction,
}

#[pymethods]
impl PyLatticeConstruction {
    #[getter]
    fn p(&self) -> u64 {
        self.inner.p
    }
    /// `T` as `(numerator, denominator)`.
    #[getter]
    fn t(&self) -> (BigInt, BigInt) {
        (self.inner.t.numer().clone(), self.inner.t.denom().clone())
    }
    #[getter]
    fn disc(&self) -> BigInt {
        self.inner.disc_used.clone()
    }
    #[getter]
    fn log_v_hat(&self) -> f64 {
        self.inner.log_volume_estimate
    }
    #[getter]
    fn ratio(&self) -> f64 {
        self.inner.ratio
    }
    #[getter]
    fn discrepancies(&self) -> Vec<String> {
        self.inner.discrepancies.clone()
    }
    /// Check name → result.
    fn checks(&self) -> Vec<(&'static str, bool)> {
        let c = &self.inner.checks;
        vec![
            ("interval_ok", c.interval_ok),
            ("archimedean_ok", c.archimedean_ok),
            ("two_adic_ok", c.two_adic_ok),
            ("form_preserved", c.form_preserved),
            ("order_verified", c.order_verified),
        ]
    }
    /// Recomputes every check from the stored data.
    fn reverify(&self) -> PyResult<bool> {
        Ok(self.inner.reverify().map_err(to_py)?.all())
    }
    fn to_json(&self) -> String {
        json(&self.inner)
    }
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(s).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyLatticeConstruction { inner })
    }
    fn __repr__(&self) -> String {
        format!("LatticeConstruction(p={}, t={})", self.inner.p, self.inner.t)
    }
}

#[pyfunction]
fn kionke_criterion(q: u64, e: usize) -> PyResult<bool> {
    sel::kionke_criterion(q, e).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (field, dim_g, cap=1_000_000, threads=1))]
fn find_congruence_level(field: &PyNumberField, dim_g: u32, cap: u64, threads: usize) -> PyResult<PyCongruenceLevel> {
    let inner = sel::find_congruence_level(&field.inner, dim_g, cap, threads).map_err(to_py)?;
    Ok(PyCongruenceLevel { inner })
}

#[pyfunction]
fn unconditional_index_bound(d: u32, dim_h: u32) -> PyResult<BigInt> {
    sel::unconditional_index_bound(d, dim_h).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (v, dim_h, config=None))]
fn volume_index_bound_grh(v: f64, dim_h: u32, config: Option<&PyConfig>) -> PyResult<f64> {
    let c = cfg_or_default(config);
    sel::volume_index_bound_grh(v, dim_h, c.epsilon, c.prasad_c1, c.prasad_c2, c.lemma_c).map_err(to_py)
}

#[pyfunction]
fn logarithmic_integral(x: f64) -> PyResult<f64> {
    sel::logarithmic_integral(x).map_err(to_py)
}

/// Threshold report as a JSON string.
#[pyfunction]
#[pyo3(signature = (d, log_d, config=None))]
fn grh_threshold(d: u32, log_d: f64, config: Option<&PyConfig>) -> PyResult<String> {
    Ok(json(&sel::grh_threshold(d, log_d, &cfg_or_default(config)).map_err(to_py)?))
}

/// `f(u) = u^(1-alpha)` if `alpha` is given, else `(log u)^kappa`.
#[pyfunction]
#[pyo3(signature = (v, c, *, alpha=None, kappa=None))]
fn generator_bound(v: f64, c: f64, alpha: Option<f64>, kappa: Option<f64>) -> PyResult<f64> {
    let form = match (alpha, kappa) {
        (Some(alpha), None) => sel::GrowthForm::Power { alpha },
        (None, Some(kappa)) => sel::GrowthForm::LogPower { kappa },
        _ => return Err(PyValueError::new_err("give exactly one of alpha or kappa")),
    };
    sel::generator_bound_pipeline(v, c, form).map_err(to_py)
}

#[pyfunction]
fn max_torsion_order(n: u32, d: u32) -> PyResult<PyTorsionProfile> {
    Ok(PyTorsionProfile { inner: tor::max_torsion_order(n, d).map_err(to_py)? })
}

#[pyfunction]
fn totient(m: u64) -> PyResult<u64> {
    tor::totient(m).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (p, dencap=65536, probe_k=None, config=None))]
fn construct(p: u64, dencap: u64, probe_k: Option<u32>, config: Option<&PyConfig>) -> PyResult<PyLatticeConstruction> {
    let inner = cons::construct(p, dencap, probe_k, &cfg_or_default(config)).map_err(to_py)?;
    Ok(PyLatticeConstruction { inner })
}

/// Rows `(p, disc, log_v_hat, ratio)` for primes `5 ≤ p ≤ pmax`.
#[pyfunction]
#[pyo3(signature = (pmax, config=None, threads=1))]
fn construct_sweep(pmax: u64, config: Option<&PyConfig>, threads: usize) -> PyResult<Vec<(u64, BigInt, f64, f64)>> {
    let rows = cons::construct_sweep(pmax, &cfg_or_default(config), threads).map_err(to_py)?;
    Ok(rows.into_iter().map(|r| (r.p, r.disc, r.log_v_hat, r.ratio)).collect())
}

#[pymodule]
fn selberg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SelbergError", m.py().get_type::<SelbergError>())?;
    m.add("ResourceCapError", m.py().get_type::<ResourceCapError>())?;
    m.add_class::<PyConfig>()?;
    m.add_class::<PyNumberField>()?;
    m.add_class::<PyCongruenceLevel>()?;
    m.add_class::<PyTorsionProfile>()?;
    m.add_class::<PyLatticeConstruction>()?;
    m.add_function(wrap_pyfunction!(kionke_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(find_congruence_level, m)?)?;
    m.add_function(wrap_pyfunction!(unconditional_index_bound, m)?)?;
    m.add_function(wrap_pyfunction!(volume_index_bound_grh, m)?)?;
    m.add_function(wrap_pyfunction!(logarithmic_integral, m)?)?;
    m.add_function(wrap_pyfunction!(grh_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(generator_bound, m)?)?;
    m.add_function(wrap_pyfunction!(max_torsion_order, m)?)?;
    m.add_function(wrap_pyfunction!(totient, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(construct_sweep, m)?)?;
    Ok(())
}
