//! Python bindings for the liedsw engine: exact polynomials over the free
//! associative algebra, the bracketing projections, splittings, BCH
//! generation, odd Kashiwara-Vergne solutions and the verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use liedsw::bchgen::{bch as bch_series, BchMethod};
use liedsw::kv::{solve_odd, KvVariant};
use liedsw::lieops::{
    dsw_central, dsw_project, eulerian_idempotent_poly, is_lie, BracketSide, WeightAssignment,
};
use liedsw::parse::{parse_poly_or_tree, poly_to_json};
use liedsw::splitting::{delta_l, delta_l_weighted};
use liedsw::suites::run_suite;
use liedsw::{Alphabet, LieError, NcPoly, Rational};

fn err(e: LieError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An exact rational polynomial in noncommuting generators.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Poly {
    inner: NcPoly,
    vars: usize,
}

impl Poly {
    fn alpha(&self) -> Alphabet {
        Alphabet::new(self.vars)
    }

    fn wrap(&self, inner: NcPoly) -> Poly {
        Poly {
            inner,
            vars: self.vars,
        }
    }

    fn same_vars(&self, other: &Poly) -> PyResult<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PyValueError::new_err("operands use different alphabets"))
        }
    }
}

#[pymethods]
impl Poly {
    /// Parses either a dotted-word polynomial like `"2*X.Y - Y.X"` or a
    /// bracketed Lie tree like `"[X1,[X2,X3]]"`.
    #[new]
    #[pyo3(signature = (expr, vars = 2))]
    fn new(expr: &str, vars: usize) -> PyResult<Poly> {
        if vars == 0 || vars > 64 {
            return Err(PyValueError::new_err("vars must be between 1 and 64"));
        }
        let alpha = Alphabet::new(vars);
        let inner = parse_poly_or_tree(expr, &alpha).map_err(err)?;
        Ok(Poly { inner, vars })
    }

    fn __str__(&self) -> String {
        self.inner.display(&self.alpha())
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?}, vars={})", self.__str__(), self.vars)
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        self.same_vars(other)?;
        Ok(self.wrap(self.inner.add(&other.inner)))
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        self.same_vars(other)?;
        Ok(self.wrap(self.inner.sub(&other.inner)))
    }

    fn __neg__(&self) -> Poly {
        self.wrap(self.inner.neg())
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        self.same_vars(other)?;
        Ok(self.wrap(self.inner.mul(&other.inner, None)))
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.vars == other.vars && self.inner == other.inner
    }

    /// Scales by an exact rational given as `"p"` or `"p/q"`.
    fn scale(&self, c: &str) -> PyResult<Poly> {
        let c: Rational = c.parse().map_err(err)?;
        Ok(self.wrap(self.inner.scale(&c)))
    }

    fn commutator(&self, other: &Poly) -> PyResult<Poly> {
        self.same_vars(other)?;
        Ok(self.wrap(self.inner.commutator(&other.inner)))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// True when every homogeneous component lies in the free Lie algebra.
    fn is_lie(&self) -> bool {
        is_lie(&self.inner)
    }

    /// Formal trace: words identified up to cyclic rotation.
    fn trace(&self) -> String {
        self.inner.formal_trace().display(&self.alpha())
    }

    fn to_json(&self) -> String {
        poly_to_json(&self.inner, self.vars).to_string()
    }
}

fn weight_assignment(weights: Option<Vec<String>>, vars: usize) -> PyResult<WeightAssignment> {
    match weights {
        None => Ok(WeightAssignment::unit(vars)),
        Some(ws) => {
            if ws.len() != vars {
                return Err(PyValueError::new_err(format!(
                    "expected {vars} weights, got {}",
                    ws.len()
                )));
            }
            let mut parsed = Vec::with_capacity(ws.len());
            for w in &ws {
                parsed.push(w.parse::<Rational>().map_err(err)?);
            }
            Ok(WeightAssignment::new(parsed))
        }
    }
}

/// The Baker-Campbell-Hausdorff series truncated at `degree`;
/// `method` is one of `log`, `dynkin`, `variant`, `resolvent`.
#[pyfunction]
#[pyo3(signature = (degree, method = "log"))]
fn bch(degree: usize, method: &str) -> PyResult<Poly> {
    let m = match method {
        "variant" | "dynkin-variant" => BchMethod::DynkinVariant,
        other => BchMethod::from_name(other)
            .ok_or_else(|| PyValueError::new_err(format!("unknown method {other:?}")))?,
    };
    let series = bch_series(degree, m).map_err(err)?;
    Ok(Poly {
        inner: series.to_poly(),
        vars: 2,
    })
}

/// Iterated-bracketing projection: weighted (left or right side) or, with
/// `central=True`, the centrally bracketed form.
#[pyfunction]
#[pyo3(signature = (p, weights = None, central = false, side = "left"))]
fn dsw(p: &Poly, weights: Option<Vec<String>>, central: bool, side: &str) -> PyResult<Poly> {
    if central {
        return Ok(p.wrap(dsw_central(&p.inner)));
    }
    let side = match side {
        "left" => BracketSide::Left,
        "right" => BracketSide::Right,
        other => return Err(PyValueError::new_err(format!("unknown side {other:?}"))),
    };
    let w = weight_assignment(weights, p.vars)?;
    Ok(p.wrap(dsw_project(&p.inner, &w, side)))
}

/// The canonical Lie idempotent applied per homogeneous component.
#[pyfunction]
fn eulerian(p: &Poly) -> PyResult<Poly> {
    Ok(p.wrap(eulerian_idempotent_poly(&p.inner).map_err(err)?))
}

/// Splits a homogeneous Lie element into `{generator name: cofactor}`;
/// `weights` selects the weighted splitting, `extended=True` the extension
/// to all of the associative algebra.
#[pyfunction]
#[pyo3(signature = (p, weights = None, extended = false))]
fn split(
    p: &Poly,
    weights: Option<Vec<String>>,
    extended: bool,
) -> PyResult<Vec<(String, Poly)>> {
    let s = match weights {
        None => delta_l(&p.inner, extended).map_err(err)?,
        Some(_) if extended => {
            return Err(PyValueError::new_err(
                "weights apply to the Lie splitting only",
            ))
        }
        Some(ws) => {
            let w = weight_assignment(Some(ws), p.vars)?;
            delta_l_weighted(&p.inner, &w).map_err(err)?
        }
    };
    let alpha = p.alpha();
    Ok(s.parts()
        .map(|(&g, cof)| (alpha.name(g).to_string(), p.wrap(cof.clone())))
        .collect())
}

/// Rebuilds `sum_g [X_g, cofactor]` from the output of `split`.
#[pyfunction]
fn unsplit(parts: Vec<(String, Poly)>) -> PyResult<Poly> {
    let Some((_, first)) = parts.first() else {
        return Ok(Poly {
            inner: NcPoly::zero(),
            vars: 2,
        });
    };
    let vars = first.vars;
    let alpha = first.alpha();
    let mut acc = NcPoly::zero();
    for (name, cof) in &parts {
        let g = alpha
            .resolve(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown generator {name:?}")))?;
        acc = acc.add(&NcPoly::gen(g).commutator(&cof.inner));
    }
    Ok(Poly { inner: acc, vars })
}

/// Solves the odd Kashiwara-Vergne part up to `degree` for the A and B
/// series; `variant` is `X`, `Y` or `symm`. Returns `(A, B)`.
#[pyfunction]
#[pyo3(signature = (degree, variant = "symm"))]
fn kv_odd(degree: usize, variant: &str) -> PyResult<(Poly, Poly)> {
    let v = KvVariant::from_name(variant)
        .ok_or_else(|| PyValueError::new_err(format!("unknown variant {variant:?}")))?;
    let sol = solve_odd(degree, v).map_err(err)?;
    Ok((
        Poly {
            inner: sol.a.to_poly(),
            vars: 2,
        },
        Poly {
            inner: sol.b.to_poly(),
            vars: 2,
        },
    ))
}

/// Runs a named verification suite and returns `(name, passed)` pairs.
#[pyfunction]
#[pyo3(signature = (suite = "all", max_degree = 5, seed = 42))]
fn verify(suite: &str, max_degree: usize, seed: u64) -> PyResult<Vec<(String, bool)>> {
    let report = run_suite(suite, max_degree, seed).map_err(err)?;
    Ok(report
        .items
        .into_iter()
        .map(|i| (i.name, i.pass))
        .collect())
}

#[pymodule]
fn liedsw_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_function(wrap_pyfunction!(bch, m)?)?;
    m.add_function(wrap_pyfunction!(dsw, m)?)?;
    m.add_function(wrap_pyfunction!(eulerian, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    m.add_function(wrap_pyfunction!(unsplit, m)?)?;
    m.add_function(wrap_pyfunction!(kv_odd, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
