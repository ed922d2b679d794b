//! The formal resolvent calculus: truncated graded series whose scalar
//! coefficients are exact polynomials in `λ`, the resolvent of a
//! perturbation of 1, exact integration over `λ ∈ [0,1]`, and the
//! structural decomposition lemmas.

use std::collections::BTreeMap;

use crate::error::LieError;
use crate::freealg::{Gen, GradedSeries, NcPoly, Parity, Word};
use crate::kv::PowerSeriesTable;
use crate::report::Report;
use crate::rng::Rng;
use crate::scalar::{LambdaPoly, Rational};

/// A truncated graded noncommutative series with `λ`-polynomial
/// coefficients. No zero coefficient is stored; degree-d words have
/// length d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LambdaSeries {
    cutoff: usize,
    components: Vec<BTreeMap<Word, LambdaPoly>>,
}

impl LambdaSeries {
    pub fn zero(cutoff: usize) -> Self {
        LambdaSeries {
            cutoff,
            components: vec![BTreeMap::new(); cutoff + 1],
        }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        s.add_term(Word::empty(), LambdaPoly::one());
        s
    }

    /// Embeds a graded series with λ-constant coefficients.
    pub fn from_graded(g: &GradedSeries) -> Self {
        let mut s = Self::zero(g.cutoff());
        for (_, poly) in g.components() {
            for (w, c) in poly.terms() {
                s.add_term(w.clone(), LambdaPoly::constant(c.clone()));
            }
        }
        s
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    pub fn coeff(&self, w: &Word) -> LambdaPoly {
        self.components[w.len()]
            .get(w)
            .cloned()
            .unwrap_or_else(LambdaPoly::zero)
    }

    pub fn add_term(&mut self, w: Word, c: LambdaPoly) {
        if c.is_zero() || w.len() > self.cutoff {
            return;
        }
        let comp = &mut self.components[w.len()];
        use std::collections::btree_map::Entry;
        match comp.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LambdaPoly)> {
        self.components.iter().flat_map(BTreeMap::iter)
    }

    pub fn add(&self, other: &LambdaSeries) -> LambdaSeries {
        let mut out = self.truncated(self.cutoff.min(other.cutoff));
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LambdaSeries) -> LambdaSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LambdaSeries {
        LambdaSeries {
            cutoff: self.cutoff,
            components: self
                .components
                .iter()
                .map(|m| m.iter().map(|(w, c)| (w.clone(), -c)).collect())
                .collect(),
        }
    }

    pub fn truncated(&self, cutoff: usize) -> LambdaSeries {
        let mut out = LambdaSeries::zero(cutoff);
        for d in 0..=cutoff.min(self.cutoff) {
            out.components[d] = self.components[d].clone();
        }
        out
    }

    pub fn mul(&self, other: &LambdaSeries) -> LambdaSeries {
        let n = self.cutoff.min(other.cutoff);
        let mut out = LambdaSeries::zero(n);
        for d1 in 0..=n {
            for (w1, c1) in &self.components[d1] {
                for d2 in 0..=(n - d1) {
                    for (w2, c2) in &other.components[d2] {
                        out.add_term(w1.concat(w2), c1 * c2);
                    }
                }
            }
        }
        out
    }

    pub fn scale_poly(&self, p: &LambdaPoly) -> LambdaSeries {
        if p.is_zero() {
            return LambdaSeries::zero(self.cutoff);
        }
        LambdaSeries {
            cutoff: self.cutoff,
            components: self
                .components
                .iter()
                .map(|m| {
                    m.iter()
                        .filter_map(|(w, c)| {
                            let q = c * p;
                            (!q.is_zero()).then(|| (w.clone(), q))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Coefficient-wise substitution `λ → 1-λ`.
    pub fn subst_one_minus_lambda(&self) -> LambdaSeries {
        LambdaSeries {
            cutoff: self.cutoff,
            components: self
                .components
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|(w, c)| (w.clone(), c.subst_one_minus_lambda()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Sub-sum of terms whose word starts with `g`.
    pub fn select_starting(&self, g: Gen) -> LambdaSeries {
        LambdaSeries {
            cutoff: self.cutoff,
            components: self
                .components
                .iter()
                .map(|m| {
                    m.iter()
                        .filter(|(w, _)| w.0.first() == Some(&g))
                        .map(|(w, c)| (w.clone(), c.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Exact coefficient-wise `∫_0^1 … dλ`.
    pub fn integrate01(&self) -> GradedSeries {
        let mut out = GradedSeries::zero(self.cutoff);
        for d in 0..=self.cutoff {
            let mut comp = NcPoly::zero();
            for (w, c) in &self.components[d] {
                comp.add_term(w.clone(), c.integrate01());
            }
            out.set_component(d, comp);
        }
        out
    }

    /// The degree-d coefficients must have λ-degree at most d-1
    /// (structural bound for resolvents of perturbations of 1).
    pub fn lambda_degree_within_bound(&self) -> bool {
        self.components.iter().enumerate().all(|(d, m)| {
            m.values()
                .all(|c| c.degree().is_none_or(|ld| d >= 1 && ld <= d - 1))
        })
    }

    /// First word (by the canonical order) on which two series differ.
    pub fn first_difference(&self, other: &LambdaSeries) -> Option<Word> {
        let n = self.cutoff.min(other.cutoff);
        for d in 0..=n {
            let keys: std::collections::BTreeSet<&Word> = self.components[d]
                .keys()
                .chain(other.components[d].keys())
                .collect();
            for w in keys {
                if self.coeff(w) != other.coeff(w) {
                    return Some(w.clone());
                }
            }
        }
        None
    }
}

fn one_minus_lambda() -> LambdaPoly {
    &LambdaPoly::one() - &LambdaPoly::lambda()
}

fn lambda_minus_one() -> LambdaPoly {
    &LambdaPoly::lambda() - &LambdaPoly::one()
}

/// The resolvent `(A-1)·(λ+(1-λ)A)^{-1}` of a formal perturbation `A` of
/// 1, expanded with the geometric series
/// `Σ_j (-1)^j (1-λ)^j (A-1)^{j+1}`.
pub fn resolvent(a: &GradedSeries) -> Result<LambdaSeries, LieError> {
    if a.component(0) != &NcPoly::one() {
        return Err(LieError::BadConstantTerm {
            expected: "1".into(),
            found: a.component(0).constant_term().to_string(),
        });
    }
    let n = a.cutoff();
    let u = LambdaSeries::from_graded(&a.sub(&GradedSeries::one(n)));
    let neg_oml = -&one_minus_lambda();
    let mut term = u.clone();
    let mut out = term.clone();
    for _ in 1..n {
        term = term.mul(&u).scale_poly(&neg_oml);
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// `(λ+(1-λ)A)^{-1}` for a perturbation `A` of 1, by the geometric series.
pub fn lambda_denominator_inverse(a: &GradedSeries) -> Result<LambdaSeries, LieError> {
    if a.component(0) != &NcPoly::one() {
        return Err(LieError::BadConstantTerm {
            expected: "1".into(),
            found: a.component(0).constant_term().to_string(),
        });
    }
    let n = a.cutoff();
    let u = LambdaSeries::from_graded(&a.sub(&GradedSeries::one(n)));
    let neg_oml = -&one_minus_lambda();
    let mut out = LambdaSeries::one(n);
    let mut term = LambdaSeries::one(n);
    for _ in 1..=n {
        term = term.mul(&u).scale_poly(&neg_oml);
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Coefficient-wise integration of the resolvent recovers the logarithm.
pub fn integrate_series(s: &LambdaSeries) -> GradedSeries {
    s.integrate01()
}

/// Checks the inversion symmetry `R^{(λ)}(A^{-1}) = -R^{(1-λ)}(A)`.
pub fn verify_inversion(a: &GradedSeries) -> Result<bool, LieError> {
    let lhs = resolvent(&a.inverse()?)?;
    let rhs = resolvent(a)?.subst_one_minus_lambda().neg();
    Ok(lhs == rhs)
}

fn check_eq(report: &mut Report, name: &str, lhs: &LambdaSeries, rhs: &LambdaSeries) {
    match lhs.first_difference(rhs) {
        None => report.check(name, true),
        Some(w) => report.push(name, false, Some(format!("first difference at {w:?}"))),
    }
}

/// Verifies the two starting-term formulas and the two recursions for
/// `R^{(λ)}(e^X e^Y)` over the alphabet {X, Y}, up to degree `n`.
pub fn starting_decomposition(n: usize) -> Result<Report, LieError> {
    let ex = GradedSeries::gen(0, n).exp()?;
    let ey = GradedSeries::gen(1, n).exp()?;
    let a = ex.mul(&ey);
    let r = resolvent(&a)?;
    let sx = r.select_starting(0);
    let sy = r.select_starting(1);

    let mut report = Report::new();

    let dinv = lambda_denominator_inverse(&a)?;
    let ex_m1 = LambdaSeries::from_graded(&ex.sub(&GradedSeries::one(n)));
    let ey_m1 = LambdaSeries::from_graded(&ey.sub(&GradedSeries::one(n)));
    let ey_l = LambdaSeries::from_graded(&ey);

    // Starting_X R = (e^X - 1) e^Y (λ+(1-λ)e^X e^Y)^{-1}
    check_eq(&mut report, "start1:X", &sx, &ex_m1.mul(&ey_l).mul(&dinv));
    // Starting_Y R = (e^Y - 1)(λ+(1-λ)e^X e^Y)^{-1}
    check_eq(&mut report, "start1:Y", &sy, &ey_m1.mul(&dinv));
    // their sum reassembles the resolvent
    check_eq(&mut report, "start1:sum", &sx.add(&sy), &r);

    let rx = resolvent(&ex)?;
    let ry = resolvent(&ey)?;
    // Starting_X R = R(e^X) + λ R(e^X) Starting_Y R
    let rec_x = rx.add(&rx.scale_poly(&LambdaPoly::lambda()).mul(&sy));
    check_eq(&mut report, "start2:X", &sx, &rec_x);
    // Starting_Y R = R(e^Y) + (λ-1) R(e^Y) Starting_X R
    let rec_y = ry.add(&ry.scale_poly(&lambda_minus_one()).mul(&sx));
    check_eq(&mut report, "start2:Y", &sy, &rec_y);

    Ok(report)
}

/// The right-hand side of the resolvent decomposition: the sum of
/// nonempty interlaced products of `rx` and `ry` with a factor `λ` per
/// XY-adjacency and `λ-1` per YX-adjacency.
pub fn interlaced_decomposition(rx: &LambdaSeries, ry: &LambdaSeries) -> LambdaSeries {
    let n = rx.cutoff().min(ry.cutoff());
    let lam = LambdaPoly::lambda();
    let lm1 = lambda_minus_one();
    let mut out = LambdaSeries::zero(n);
    let rxry = rx.mul(ry);
    let ryrx = ry.mul(rx);
    // each factor has order >= 1: family with m factors vanishes above m
    let mut k = 0usize;
    loop {
        if 2 * k + 1 > n {
            break;
        }
        // λ^k (λ-1)^k as a polynomial
        let mut lk = LambdaPoly::one();
        for _ in 0..k {
            lk = &(&lk * &lam) * &lm1;
        }
        // (rx ry)^k, (ry rx)^k
        let mut pxy = LambdaSeries::one(n);
        let mut pyx = LambdaSeries::one(n);
        for _ in 0..k {
            pxy = pxy.mul(&rxry);
            pyx = pyx.mul(&ryrx);
        }
        out = out.add(&ry.mul(&pxy).scale_poly(&lk));
        out = out.add(&rx.mul(&pyx).scale_poly(&lk));
        if 2 * k + 2 <= n {
            out = out.add(&pxy.mul(&rxry).scale_poly(&(&lk * &lam)));
            out = out.add(&pyx.mul(&ryrx).scale_poly(&(&lk * &lm1)));
        }
        k += 1;
    }
    out
}

/// Verifies the resolvent decomposition against `R(e^X e^Y)` exactly, and
/// re-runs it with two pseudo-random perturbations of 1 in place of the
/// exponentials.
pub fn resolvent_decomposition(n: usize, seed: u64) -> Result<Report, LieError> {
    let mut report = Report::new();
    let ex = GradedSeries::gen(0, n).exp()?;
    let ey = GradedSeries::gen(1, n).exp()?;
    let lhs = resolvent(&ex.mul(&ey))?;
    let rhs = interlaced_decomposition(&resolvent(&ex)?, &resolvent(&ey)?);
    check_eq(&mut report, "dresdec:exp", &lhs, &rhs);

    let mut rng = Rng::new(seed);
    let p = single_generator_perturbation(&mut rng, n, 0);
    let q = single_generator_perturbation(&mut rng, n, 1);
    let lhs = resolvent(&p.mul(&q))?;
    let rhs = interlaced_decomposition(&resolvent(&p)?, &resolvent(&q)?);
    check_eq(&mut report, "dresdec:random", &lhs, &rhs);
    Ok(report)
}

/// A perturbation of 1 supported on powers of one generator (the
/// decomposition interlaces pure-X and pure-Y factors).
fn single_generator_perturbation(rng: &mut Rng, cutoff: usize, g: Gen) -> GradedSeries {
    let mut s = GradedSeries::one(cutoff);
    for d in 1..=cutoff {
        let w = Word(vec![g; d]);
        s.set_component(d, NcPoly::monomial(w, rng.small_rational()));
    }
    s
}

/// Computes `W(X,Y) = ∫(λ-½)R(e^X e^Y) - ∫(λ-½)R(e^Y e^X)` and verifies
/// its tracelessness together with the β-series consequences.
pub fn w_series(n: usize) -> Result<(GradedSeries, Report), LieError> {
    let ex = GradedSeries::gen(0, n).exp()?;
    let ey = GradedSeries::gen(1, n).exp()?;
    let lam_half = &LambdaPoly::lambda() - &LambdaPoly::constant(Rational::new(1, 2));
    let rxy = resolvent(&ex.mul(&ey))?;
    let ryx = resolvent(&ey.mul(&ex))?;
    let w = rxy
        .scale_poly(&lam_half)
        .integrate01()
        .sub(&ryx.scale_poly(&lam_half).integrate01());

    let mut report = Report::new();
    report.check("W:trace", w.formal_trace().is_zero());

    let tables = PowerSeriesTable::new(n);
    let bch = ex.mul(&ey).log()?;
    let bch_odd = bch.parity_part(Parity::Odd);
    // β(BCH)_odd = ½(−BCH_odd + W)
    let beta_bch = bch.compose_scalar_series(tables.beta())?;
    let lhs = beta_bch.parity_part(Parity::Odd);
    let rhs = w.sub(&bch_odd).scale(&Rational::new(1, 2));
    report.check("W:beta-bch-odd", lhs == rhs);

    // Tr(β(X)+β(Y)−β(BCH)−1)_odd = 0
    let beta_x = GradedSeries::gen(0, n).compose_scalar_series(tables.beta())?;
    let beta_y = GradedSeries::gen(1, n).compose_scalar_series(tables.beta())?;
    let expr = beta_x
        .add(&beta_y)
        .sub(&beta_bch)
        .sub(&GradedSeries::one(n))
        .parity_part(Parity::Odd);
    report.check("W:etrace", expr.formal_trace().is_zero());

    Ok((w, report))
}
