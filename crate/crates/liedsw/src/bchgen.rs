//! Baker-Campbell-Hausdorff series generators over the alphabet {X, Y}:
//! the direct logarithm, the Dynkin commutator formula, its one-sided
//! variant, and the resolvent-integral route. All methods agree degree by
//! degree; the cross-checks live in the verification suites.

use crate::error::LieError;
use crate::freealg::{Gen, GradedSeries, NcPoly, Word};
use crate::lieops::{dsw_project, dynkin_bracket, BracketSide, WeightAssignment};
use crate::resolvent::{integrate_series, resolvent};
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BchMethod {
    /// log(e^X e^Y) by series arithmetic.
    Log,
    /// The commutator-bracketed composition sum.
    Dynkin,
    /// The one-sided variant with every bracket ending in X.
    DynkinVariant,
    /// Coefficient-wise integration of the resolvent of e^X e^Y.
    Resolvent,
}

impl BchMethod {
    pub fn from_name(name: &str) -> Option<BchMethod> {
        match name {
            "log" => Some(BchMethod::Log),
            "dynkin" => Some(BchMethod::Dynkin),
            "dynkin-variant" => Some(BchMethod::DynkinVariant),
            "resolvent" => Some(BchMethod::Resolvent),
            _ => None,
        }
    }
}

/// The BCH series up to total degree `n` by the requested method.
pub fn bch(n: usize, method: BchMethod) -> Result<GradedSeries, LieError> {
    match method {
        BchMethod::Log => bch_log(n),
        BchMethod::Dynkin => Ok(bch_dynkin(n)),
        BchMethod::DynkinVariant => Ok(bch_dynkin_variant(n)),
        BchMethod::Resolvent => bch_resolvent(n),
    }
}

/// log(e^X e^Y), truncated at degree `n`.
pub fn bch_log(n: usize) -> Result<GradedSeries, LieError> {
    let ex = GradedSeries::gen(0, n).exp()?;
    let ey = GradedSeries::gen(1, n).exp()?;
    ex.mul(&ey).log()
}

/// log(e^A e^B) for arbitrary zero-constant-term arguments.
pub fn bch_of(a: &GradedSeries, b: &GradedSeries) -> Result<GradedSeries, LieError> {
    a.exp()?.mul(&b.exp()?).log()
}

fn factorial_recip(k: usize) -> Rational {
    Rational::factorial(k).recip().unwrap()
}

/// Enumerates block sequences ((p_1,q_1),...,(p_k,q_k)), p_i+q_i >= 1, of
/// the given total degree, calling `f(word, k, 1/(Π p_i! q_i!))`.
fn for_each_composition(total: usize, f: &mut impl FnMut(&[Gen], usize, &Rational)) {
    fn rec(
        remaining: usize,
        word: &mut Vec<Gen>,
        k: usize,
        fact: &Rational,
        f: &mut impl FnMut(&[Gen], usize, &Rational),
    ) {
        if remaining == 0 {
            if k > 0 {
                f(word, k, fact);
            }
            return;
        }
        for p in 0..=remaining {
            for q in 0..=(remaining - p) {
                if p + q == 0 {
                    continue;
                }
                let start = word.len();
                word.extend(std::iter::repeat(0).take(p));
                word.extend(std::iter::repeat(1).take(q));
                let nf = &(fact * &factorial_recip(p)) * &factorial_recip(q);
                rec(remaining - p - q, word, k + 1, &nf, f);
                word.truncate(start);
            }
        }
    }
    let mut word = Vec::with_capacity(total);
    rec(total, &mut word, 0, &Rational::one(), f);
}

/// Dynkin's commutator formula:
/// `Σ_k (-1)^{k-1}/k Σ [X^{p_1}Y^{q_1}…X^{p_k}Y^{q_k}]_L / (n·Πp_i!q_i!)`.
///
/// Distinct block sequences can produce the same word, so the rational
/// coefficients are accumulated word-wise first and the left bracketing is
/// applied once per homogeneous component.
pub fn bch_dynkin(n: usize) -> GradedSeries {
    let mut out = GradedSeries::zero(n);
    for d in 1..=n {
        let mut assoc = NcPoly::zero();
        let deg_recip = Rational::new(1, d as i64);
        for_each_composition(d, &mut |word, k, fact| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = &(&Rational::new(sign, k as i64) * &deg_recip) * fact;
            assoc.add_term(Word(word.to_vec()), c);
        });
        out.set_component(d, dynkin_bracket(&assoc, BracketSide::Left));
    }
    out
}

/// The one-sided variant:
/// `Y + Σ_{k>=0} (-1)^k/(k+1) Σ [X^{p_1}Y^{q_1}…X^{p_k}Y^{q_k}X]_L /
/// ((p_1+…+p_k+1)·Πp_i!q_i!)`.
pub fn bch_dynkin_variant(n: usize) -> GradedSeries {
    let mut out = GradedSeries::zero(n);
    if n >= 1 {
        out.set_component(1, NcPoly::gen(1));
    }
    for d in 1..=n {
        let mut assoc = NcPoly::zero();
        // blocks fill degree d-1; the trailing X brings the total to d
        for_each_composition(d - 1, &mut |word, k, fact| {
            let x_count = word.iter().filter(|&&g| g == 0).count();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = &(&Rational::new(sign, k as i64 + 1)
                * &Rational::new(1, x_count as i64 + 1))
                * fact;
            let mut w = word.to_vec();
            w.push(0);
            assoc.add_term(Word(w), c);
        });
        if d == 1 {
            // the empty composition contributes the bare X
            assoc.add_term(Word(vec![0]), Rational::one());
        }
        out.set_component(d, out.component(d).add(&dynkin_bracket(&assoc, BracketSide::Left)));
    }
    out
}

/// BCH as `∫_0^1 R^{(λ)}(e^X e^Y) dλ`.
pub fn bch_resolvent(n: usize) -> Result<GradedSeries, LieError> {
    let ex = GradedSeries::gen(0, n).exp()?;
    let ey = GradedSeries::gen(1, n).exp()?;
    Ok(integrate_series(&resolvent(&ex.mul(&ey))?))
}

/// Reconstruction of the BCH series from its associative expansion by the
/// weighted projection with weight 1 on X only: the pure-Y part is Y, and
/// on the rest the projection acts as multiplication by the X-degree.
pub fn bch_via_weighted_projection(n: usize) -> Result<GradedSeries, LieError> {
    let raw = bch_log(n)?;
    let wx = WeightAssignment::indicator(0, 2);
    let mut out = GradedSeries::zero(n);
    if n >= 1 {
        out.set_component(1, NcPoly::gen(1).add(&NcPoly::gen(0)));
    }
    for d in 2..=n {
        let projected = dsw_project(raw.component(d), &wx, BracketSide::Left);
        let mut comp = NcPoly::zero();
        for (w, c) in projected.terms() {
            let xdeg = w.0.iter().filter(|&&g| g == 0).count();
            comp.add_term(w.clone(), c / &Rational::from_int(xdeg as i64));
        }
        out.set_component(d, comp);
    }
    Ok(out)
}

/// The coefficient of one word in the BCH series (degree = word length).
pub fn word_coefficient(w: &Word, method: BchMethod) -> Result<Rational, LieError> {
    Ok(bch(w.len(), method)?.component(w.len()).coeff(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lieops::is_lie_series;

    fn w(letters: &[u8]) -> Word {
        Word(letters.to_vec())
    }

    #[test]
    fn low_degree_table() {
        let b = bch_log(4).unwrap();
        assert_eq!(b.component(1), &NcPoly::gen(0).add(&NcPoly::gen(1)));
        // degree 2: ½[X,Y]
        assert_eq!(
            b.component(2),
            &NcPoly::gen(0)
                .commutator(&NcPoly::gen(1))
                .scale(&Rational::new(1, 2))
        );
        // degree 3: 1/12[X,[X,Y]] + 1/12[Y,[Y,X]]
        let x = NcPoly::gen(0);
        let y = NcPoly::gen(1);
        let d3 = x
            .commutator(&x.commutator(&y))
            .add(&y.commutator(&y.commutator(&x)))
            .scale(&Rational::new(1, 12));
        assert_eq!(b.component(3), &d3);
        // degree 4: -1/24 [Y,[X,[X,Y]]]
        let d4 = y
            .commutator(&x.commutator(&x.commutator(&y)))
            .scale(&Rational::new(-1, 24));
        assert_eq!(b.component(4), &d4);
    }

    #[test]
    fn methods_agree() {
        let n = 6;
        let reference = bch_log(n).unwrap();
        assert_eq!(bch_dynkin(n), reference);
        assert_eq!(bch_dynkin_variant(n), reference);
        assert_eq!(bch_resolvent(n).unwrap(), reference);
        assert_eq!(bch_via_weighted_projection(n).unwrap(), reference);
    }

    #[test]
    fn result_is_lie() {
        assert!(is_lie_series(&bch_log(6).unwrap()));
    }

    #[test]
    fn antisymmetry() {
        // BCH(X,Y) = -BCH(-Y,-X)
        let n = 6;
        let b = bch_log(n).unwrap();
        let neg_y = NcPoly::gen(1).neg();
        let neg_x = NcPoly::gen(0).neg();
        let swapped = bch_of(
            &GradedSeries::from_poly(&neg_y, n),
            &GradedSeries::from_poly(&neg_x, n),
        )
        .unwrap();
        assert_eq!(b, swapped.neg());
    }

    #[test]
    fn known_word_coefficients() {
        assert_eq!(
            word_coefficient(&w(&[0, 1]), BchMethod::Dynkin).unwrap(),
            Rational::new(1, 2)
        );
        assert_eq!(
            word_coefficient(&w(&[0, 0, 1]), BchMethod::Log).unwrap(),
            Rational::new(1, 12)
        );
        assert_eq!(
            word_coefficient(&w(&[0, 1, 0]), BchMethod::Resolvent).unwrap(),
            Rational::new(-1, 6)
        );
        assert_eq!(
            word_coefficient(&w(&[0, 0, 1, 1]), BchMethod::DynkinVariant).unwrap(),
            Rational::new(1, 24)
        );
        assert_eq!(
            word_coefficient(&w(&[1, 0, 0, 1]), BchMethod::DynkinVariant).unwrap(),
            Rational::zero()
        );
    }
}
