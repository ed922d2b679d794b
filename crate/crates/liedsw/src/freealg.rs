//! The free associative algebra over the rationals: words, polynomials,
//! truncated graded series, the selection operators, parity decomposition
//! and the formal trace.
//!
//! Words are index sequences over a fixed alphabet; polynomial terms are
//! stored in a `BTreeMap` keyed by words ordered by length then
//! lexicographically, which makes display and serialization deterministic.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::LieError;
use crate::scalar::Rational;

/// A generator index, 0-based.
pub type Gen = u8;

/// The generator alphabet: a size and display names.
///
/// Defaults to `X1..Xk`; for k = 2 the aliases `X`, `Y` are accepted and
/// used for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(size: usize) -> Self {
        assert!(size >= 1, "alphabet must have at least one generator");
        if size == 2 {
            return Alphabet {
                names: vec!["X".into(), "Y".into()],
            };
        }
        Alphabet {
            names: (1..=size).map(|i| format!("X{i}")).collect(),
        }
    }

    pub fn with_names(names: Vec<String>) -> Result<Self, LieError> {
        if names.is_empty() {
            return Err(LieError::Invalid("empty alphabet".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(LieError::Invalid(format!("duplicate name {n:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// The two-generator alphabet {X, Y} used by the BCH and KV modules.
    pub fn xy() -> Self {
        Alphabet::new(2)
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> {
        (0..self.size() as u8).map(|g| g as Gen)
    }

    /// Looks up a generator by name; `X1..Xk` always work, plus `X`/`Y`
    /// aliases when the alphabet has two generators.
    pub fn resolve(&self, name: &str) -> Option<Gen> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some(i as Gen);
        }
        if let Some(num) = name.strip_prefix('X') {
            if let Ok(i) = num.parse::<usize>() {
                if i >= 1 && i <= self.size() {
                    return Some((i - 1) as Gen);
                }
            }
        }
        match (self.size(), name) {
            (2, "X") => Some(0),
            (2, "Y") => Some(1),
            _ => None,
        }
    }
}

/// An associative monomial: a finite sequence of generator indices.
/// The empty word is the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The lexicographically least cyclic rotation (necklace representative).
    pub fn necklace_canonical(&self) -> Word {
        let n = self.0.len();
        if n <= 1 {
            return self.clone();
        }
        let mut best = 0usize;
        for cand in 1..n {
            for k in 0..n {
                let a = self.0[(cand + k) % n];
                let b = self.0[(best + k) % n];
                if a < b {
                    best = cand;
                    break;
                }
                if a > b {
                    break;
                }
            }
        }
        Word((0..n).map(|k| self.0[(best + k) % n]).collect())
    }

    /// Per-generator multiplicities over an alphabet of `k` generators.
    pub fn multigrade(&self, k: usize) -> Vec<usize> {
        let mut m = vec![0usize; k];
        for &g in &self.0 {
            m[g as usize] += 1;
        }
        m
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&g| alpha.name(g))
            .collect::<Vec<_>>()
            .join(".")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("X{}", g + 1)).collect();
        write!(f, "{}", parts.join("."))
    }
}

// Ordering: by length, then lexicographic on letter indices.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the free associative algebra: a finitely supported
/// assignment of rationals to words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::monomial(Word::empty(), Rational::one())
    }

    pub fn gen(g: Gen) -> Self {
        NcPoly::monomial(Word::gen(g), Rational::one())
    }

    pub fn monomial(w: Word, c: Rational) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Concatenation product, bilinearly extended; terms above `cutoff`
    /// are dropped when a cutoff is given.
    pub fn mul(&self, other: &NcPoly, cutoff: Option<usize>) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in self.terms() {
            for (w2, c2) in other.terms() {
                if let Some(n) = cutoff {
                    if w1.len() + w2.len() > n {
                        continue;
                    }
                }
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// pq - qp.
    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        self.mul(other, None).sub(&other.mul(self, None))
    }

    pub fn commutator_cut(&self, other: &NcPoly, cutoff: usize) -> NcPoly {
        self.mul(other, Some(cutoff))
            .sub(&other.mul(self, Some(cutoff)))
    }

    /// The degree-d homogeneous part.
    pub fn homogeneous_part(&self, d: usize) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// True if all words share one length (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.len();
        it.all(|w| w.len() == d).then_some(d)
    }

    /// Sub-sum of terms whose word starts (resp. ends) with `g`.
    pub fn select_boundary(&self, g: Gen, side: Side) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| match side {
                    Side::Starting => w.0.first() == Some(&g),
                    Side::Ending => w.0.last() == Some(&g),
                })
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// ∂: selects words starting (resp. ending) with `g` and deletes that
    /// boundary letter.
    pub fn partial_remove(&self, g: Gen, side: Side) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in self.terms() {
            match side {
                Side::Starting => {
                    if w.0.first() == Some(&g) {
                        out.add_term(Word(w.0[1..].to_vec()), c.clone());
                    }
                }
                Side::Ending => {
                    if w.0.last() == Some(&g) {
                        out.add_term(Word(w.0[..w.len() - 1].to_vec()), c.clone());
                    }
                }
            }
        }
        out
    }

    /// Replaces each word by its necklace representative, accumulating.
    pub fn formal_trace(&self) -> CyclicPoly {
        let mut out = CyclicPoly::zero();
        for (w, c) in self.terms() {
            out.add_term(w.necklace_canonical(), c.clone());
        }
        out
    }

    /// Multiplicative-linear extension of a letter substitution, truncated.
    pub fn substitute(&self, images: &[NcPoly], cutoff: usize) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in self.terms() {
            let mut acc = NcPoly::monomial(Word::empty(), c.clone());
            for &g in &w.0 {
                acc = acc.mul(&images[g as usize], Some(cutoff));
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Relabels generators through an injective map.
    pub fn relabel(&self, map: impl Fn(Gen) -> Gen) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word(w.0.iter().map(|&g| map(g)).collect()), c.clone()))
                .collect(),
        }
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let a = c.abs();
            if w.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&w.display(alpha));
            } else {
                out.push_str(&format!("{}*{}", a, w.display(alpha)));
            }
        }
        out
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, c)| format!("{c}*{w:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which boundary of a word an operator refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Starting,
    Ending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A truncated graded series: one homogeneous `NcPoly` per degree `0..=N`.
/// Arithmetic never produces terms above the cutoff.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSeries {
    cutoff: usize,
    components: Vec<NcPoly>,
}

impl GradedSeries {
    pub fn zero(cutoff: usize) -> Self {
        GradedSeries {
            cutoff,
            components: vec![NcPoly::zero(); cutoff + 1],
        }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        s.components[0] = NcPoly::one();
        s
    }

    pub fn gen(g: Gen, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        if cutoff >= 1 {
            s.components[1] = NcPoly::gen(g);
        }
        s
    }

    /// Splits a polynomial into homogeneous components, truncating.
    pub fn from_poly(p: &NcPoly, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        for (w, c) in p.terms() {
            if w.len() <= cutoff {
                s.components[w.len()].add_term(w.clone(), c.clone());
            }
        }
        s
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn component(&self, d: usize) -> &NcPoly {
        &self.components[d]
    }

    pub fn set_component(&mut self, d: usize, p: NcPoly) {
        debug_assert!(p.is_homogeneous().is_none_or(|h| h == d));
        self.components[d] = p;
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &NcPoly)> {
        self.components.iter().enumerate()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(NcPoly::is_zero)
    }

    /// Collapses the series into a single polynomial.
    pub fn to_poly(&self) -> NcPoly {
        let mut out = NcPoly::zero();
        for c in &self.components {
            out = out.add(c);
        }
        out
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        let n = self.cutoff.min(other.cutoff);
        let mut out = GradedSeries::zero(n);
        for d in 0..=n {
            out.components[d] = self.components[d].add(&other.components[d]);
        }
        out
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        let n = self.cutoff.min(other.cutoff);
        let mut out = GradedSeries::zero(n);
        for d in 0..=n {
            out.components[d] = self.components[d].sub(&other.components[d]);
        }
        out
    }

    pub fn neg(&self) -> GradedSeries {
        GradedSeries {
            cutoff: self.cutoff,
            components: self.components.iter().map(NcPoly::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedSeries {
        GradedSeries {
            cutoff: self.cutoff,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let n = self.cutoff.min(other.cutoff);
        let mut out = GradedSeries::zero(n);
        for d1 in 0..=n {
            if self.components[d1].is_zero() {
                continue;
            }
            for d2 in 0..=(n - d1) {
                if other.components[d2].is_zero() {
                    continue;
                }
                let prod = self.components[d1].mul(&other.components[d2], Some(n));
                out.components[d1 + d2] = out.components[d1 + d2].add(&prod);
            }
        }
        out
    }

    /// Σ p^n / n!, requires zero constant term.
    pub fn exp(&self) -> Result<GradedSeries, LieError> {
        if !self.components[0].is_zero() {
            return Err(LieError::BadConstantTerm {
                expected: "0".into(),
                found: self.components[0].constant_term().to_string(),
            });
        }
        let mut out = GradedSeries::one(self.cutoff);
        let mut pow = GradedSeries::one(self.cutoff);
        for k in 1..=self.cutoff {
            pow = pow.mul(self);
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow.scale(&Rational::factorial(k).recip().unwrap()));
        }
        Ok(out)
    }

    /// Σ (-1)^{k-1} (s-1)^k / k, requires constant term 1.
    pub fn log(&self) -> Result<GradedSeries, LieError> {
        if self.components[0] != NcPoly::one() {
            return Err(LieError::BadConstantTerm {
                expected: "1".into(),
                found: self.components[0].constant_term().to_string(),
            });
        }
        let u = self.sub(&GradedSeries::one(self.cutoff));
        let mut out = GradedSeries::zero(self.cutoff);
        let mut pow = GradedSeries::one(self.cutoff);
        for k in 1..=self.cutoff {
            pow = pow.mul(&u);
            if pow.is_zero() {
                break;
            }
            let c = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            out = out.add(&pow.scale(&c));
        }
        Ok(out)
    }

    /// Geometric inverse, requires constant term 1.
    pub fn inverse(&self) -> Result<GradedSeries, LieError> {
        if self.components[0] != NcPoly::one() {
            return Err(LieError::BadConstantTerm {
                expected: "1".into(),
                found: self.components[0].constant_term().to_string(),
            });
        }
        let u = self.sub(&GradedSeries::one(self.cutoff));
        let mut out = GradedSeries::one(self.cutoff);
        let mut pow = GradedSeries::one(self.cutoff);
        for k in 1..=self.cutoff {
            pow = pow.mul(&u);
            if pow.is_zero() {
                break;
            }
            if k % 2 == 1 {
                out = out.sub(&pow);
            } else {
                out = out.add(&pow);
            }
        }
        Ok(out)
    }

    /// Keeps exactly the components of the given total-degree parity.
    pub fn parity_part(&self, parity: Parity) -> GradedSeries {
        let keep = |d: usize| match parity {
            Parity::Even => d % 2 == 0,
            Parity::Odd => d % 2 == 1,
        };
        GradedSeries {
            cutoff: self.cutoff,
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(d, p)| if keep(d) { p.clone() } else { NcPoly::zero() })
                .collect(),
        }
    }

    /// Applies a scalar power series to a positive-order argument:
    /// `Σ_k f_k · self^k`, truncated.
    pub fn compose_scalar_series(&self, f: &[Rational]) -> Result<GradedSeries, LieError> {
        if !self.components[0].is_zero() {
            return Err(LieError::BadConstantTerm {
                expected: "0".into(),
                found: self.components[0].constant_term().to_string(),
            });
        }
        let mut out = GradedSeries::zero(self.cutoff);
        if let Some(f0) = f.first() {
            out.components[0] = NcPoly::monomial(Word::empty(), f0.clone());
        }
        let mut pow = GradedSeries::one(self.cutoff);
        for fk in f.iter().take(self.cutoff + 1).skip(1) {
            pow = pow.mul(self);
            if pow.is_zero() {
                break;
            }
            out = out.add(&pow.scale(fk));
        }
        Ok(out)
    }

    /// `Σ_k f_k (ad g)^k` applied to the series, truncated at the cutoff.
    pub fn ad_power_series(&self, f: &[Rational], g: Gen) -> GradedSeries {
        let x = NcPoly::gen(g);
        let mut out = GradedSeries::zero(self.cutoff);
        if let Some(f0) = f.first() {
            out = self.scale(f0);
        }
        let mut cur = self.clone();
        for fk in f.iter().take(self.cutoff + 1).skip(1) {
            // (ad g) applied degree-wise
            let mut next = GradedSeries::zero(self.cutoff);
            for d in 0..self.cutoff {
                if !cur.components[d].is_zero() {
                    next.components[d + 1] = x.commutator(&cur.components[d]);
                }
            }
            cur = next;
            if cur.is_zero() {
                break;
            }
            out = out.add(&cur.scale(fk));
        }
        out
    }

    pub fn formal_trace(&self) -> CyclicPoly {
        self.to_poly().formal_trace()
    }

    /// Sends each generator through `images` with multiplicative extension.
    pub fn substitute(&self, images: &[NcPoly]) -> GradedSeries {
        GradedSeries::from_poly(&self.to_poly().substitute(images, self.cutoff), self.cutoff)
    }

    /// Truncates (or zero-extends) to a new cutoff.
    pub fn truncated(&self, cutoff: usize) -> GradedSeries {
        let mut out = GradedSeries::zero(cutoff);
        for d in 0..=cutoff.min(self.cutoff) {
            out.components[d] = self.components[d].clone();
        }
        out
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        let p = self.to_poly();
        p.display(alpha)
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_poly())
    }
}

/// The codomain of the formal trace: rationals assigned to
/// necklace-canonical words.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CyclicPoly {
    terms: BTreeMap<Word, Rational>,
}

impl CyclicPoly {
    pub fn zero() -> Self {
        CyclicPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        let w = w.necklace_canonical();
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &CyclicPoly) -> CyclicPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CyclicPoly) -> CyclicPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms
            .get(&w.necklace_canonical())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Restricts to one homogeneous degree.
    pub fn homogeneous_part(&self, d: usize) -> CyclicPoly {
        CyclicPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, c)| format!("{}*({})", c, w.display(alpha)))
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(w, c)| format!("{c}*({w:?})")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> NcPoly {
        NcPoly::gen(0)
    }

    fn y() -> NcPoly {
        NcPoly::gen(1)
    }

    fn w(letters: &[u8]) -> Word {
        Word(letters.to_vec())
    }

    #[test]
    fn poly_mul_basics() {
        assert_eq!(x().mul(&y(), None), NcPoly::monomial(w(&[0, 1]), Rational::one()));
        // bilinearity: (X+Y)(X-Y) = XX - XY + YX - YY
        let p = x().add(&y()).mul(&x().sub(&y()), None);
        assert_eq!(p.coeff(&w(&[0, 0])), Rational::one());
        assert_eq!(p.coeff(&w(&[0, 1])), Rational::from_int(-1));
        assert_eq!(p.coeff(&w(&[1, 0])), Rational::one());
        assert_eq!(p.coeff(&w(&[1, 1])), Rational::from_int(-1));
        // unit law
        let xy = NcPoly::monomial(w(&[0, 1]), Rational::one());
        assert_eq!(xy.mul(&NcPoly::one(), None), xy);
    }

    #[test]
    fn commutator_basics() {
        assert!(x().commutator(&x()).is_zero());
        let c = x().commutator(&y());
        assert_eq!(c.coeff(&w(&[0, 1])), Rational::one());
        assert_eq!(c.coeff(&w(&[1, 0])), Rational::from_int(-1));
        // [[X1,X2],X3] over a 3-letter alphabet
        let z = NcPoly::gen(2);
        let cc = x().commutator(&y()).commutator(&z);
        assert_eq!(cc.coeff(&w(&[0, 1, 2])), Rational::one());
        assert_eq!(cc.coeff(&w(&[1, 0, 2])), Rational::from_int(-1));
        assert_eq!(cc.coeff(&w(&[2, 0, 1])), Rational::from_int(-1));
        assert_eq!(cc.coeff(&w(&[2, 1, 0])), Rational::one());
        assert_eq!(cc.num_terms(), 4);
    }

    #[test]
    fn exp_log_inverse_pair() {
        let xs = GradedSeries::gen(0, 5);
        assert_eq!(xs.exp().unwrap().log().unwrap(), xs);
        // exp(0) = 1
        assert_eq!(GradedSeries::zero(4).exp().unwrap(), GradedSeries::one(4));
        // log rejects wrong constant term
        assert!(GradedSeries::zero(3).log().is_err());
        assert!(GradedSeries::one(3).exp().is_err());
    }

    #[test]
    fn bch_degree_two() {
        let n = 3;
        let ex = GradedSeries::gen(0, n).exp().unwrap();
        let ey = GradedSeries::gen(1, n).exp().unwrap();
        let bch = ex.mul(&ey).log().unwrap();
        let d2 = bch.component(2);
        // ½(XY − YX)
        assert_eq!(d2.coeff(&w(&[0, 1])), Rational::new(1, 2));
        assert_eq!(d2.coeff(&w(&[1, 0])), Rational::new(-1, 2));
        assert_eq!(d2.num_terms(), 2);
    }

    #[test]
    fn boundary_selection() {
        // XY + YX
        let p = x().mul(&y(), None).add(&y().mul(&x(), None));
        assert_eq!(
            p.select_boundary(0, Side::Ending),
            NcPoly::monomial(w(&[1, 0]), Rational::one())
        );
        assert_eq!(
            p.select_boundary(0, Side::Starting),
            NcPoly::monomial(w(&[0, 1]), Rational::one())
        );
        // Ending_Y [X,Y] = XY
        assert_eq!(
            x().commutator(&y()).select_boundary(1, Side::Ending),
            NcPoly::monomial(w(&[0, 1]), Rational::one())
        );
    }

    #[test]
    fn partial_remove_examples() {
        // XYX + YXX
        let p = NcPoly::monomial(w(&[0, 1, 0]), Rational::one())
            .add(&NcPoly::monomial(w(&[1, 0, 0]), Rational::one()));
        assert_eq!(
            p.partial_remove(0, Side::Starting),
            NcPoly::monomial(w(&[1, 0]), Rational::one())
        );
        let right = p.partial_remove(0, Side::Ending);
        assert_eq!(right.coeff(&w(&[0, 1])), Rational::one());
        assert_eq!(right.coeff(&w(&[1, 0])), Rational::one());
        // ∂^L_X(X) = 1 (empty word)
        assert_eq!(x().partial_remove(0, Side::Starting), NcPoly::one());
    }

    #[test]
    fn trace_examples() {
        assert!(x().commutator(&y()).formal_trace().is_zero());
        // Tr(XXY + XYX) = 2·necklace(XXY)
        let p = NcPoly::monomial(w(&[0, 0, 1]), Rational::one())
            .add(&NcPoly::monomial(w(&[0, 1, 0]), Rational::one()));
        let t = p.formal_trace();
        assert_eq!(t.coeff(&w(&[0, 0, 1])), Rational::from_int(2));
    }

    #[test]
    fn trace_kills_commutators() {
        // Tr([p, q]) = 0 for products of generators
        let p = x().mul(&y(), None).mul(&x(), None);
        let q = y().mul(&y(), None);
        assert!(p.commutator(&q).formal_trace().is_zero());
    }

    #[test]
    fn parity_split() {
        let mut s = GradedSeries::zero(2);
        s.set_component(1, x());
        s.set_component(2, x().mul(&y(), None));
        let odd = s.parity_part(Parity::Odd);
        assert_eq!(odd.component(1), &x());
        assert!(odd.component(2).is_zero());
        assert_eq!(odd.add(&s.parity_part(Parity::Even)), s);
    }

    #[test]
    fn substitution() {
        // X1→X1, X2→X1 kills [X1,X2]
        let c = x().commutator(&y());
        assert!(c.substitute(&[x(), x()], 4).is_zero());
        // X→[X,Y] in X
        let img = x().commutator(&y());
        assert_eq!(x().substitute(&[img.clone(), y()], 4), img);
    }

    #[test]
    fn necklace_canonical() {
        assert_eq!(w(&[1, 0, 0]).necklace_canonical(), w(&[0, 0, 1]));
        assert_eq!(w(&[0, 1, 0]).necklace_canonical(), w(&[0, 0, 1]));
        assert_eq!(w(&[1, 0, 1, 0]).necklace_canonical(), w(&[0, 1, 0, 1]));
        assert_eq!(Word::empty().necklace_canonical(), Word::empty());
    }

    #[test]
    fn word_ordering_is_length_then_lex() {
        let mut ws = [w(&[1]), w(&[0, 0]), w(&[0]), w(&[1, 0]), w(&[0, 1])];
        ws.sort();
        assert_eq!(
            ws.to_vec(),
            vec![w(&[0]), w(&[1]), w(&[0, 0]), w(&[0, 1]), w(&[1, 0])]
        );
    }

    #[test]
    fn starting_partition() {
        // Σ_g Starting_g(p) + constant = p
        let p = x()
            .mul(&y(), None)
            .add(&y().mul(&x(), None))
            .add(&NcPoly::one().scale(&Rational::new(3, 7)))
            .add(&x());
        let mut sum = NcPoly::monomial(Word::empty(), p.constant_term());
        for g in 0..2 {
            sum = sum.add(&p.select_boundary(g, Side::Starting));
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn ad_series() {
        let mut a = GradedSeries::zero(3);
        a.set_component(1, y());
        // identity series
        assert_eq!(a.ad_power_series(&[Rational::one()], 0), a);
        // f = (0,1): [X, Y]
        let r = a.ad_power_series(&[Rational::zero(), Rational::one()], 0);
        assert_eq!(r.component(2), &x().commutator(&y()));
        // η = 1 + u²/12: A + [X,[X,A]]/12
        let eta = vec![
            Rational::one(),
            Rational::zero(),
            Rational::new(1, 12),
        ];
        let r = a.ad_power_series(&eta, 0);
        assert_eq!(r.component(1), &y());
        assert!(r.component(2).is_zero());
        assert_eq!(
            r.component(3),
            &x().commutator(&x().commutator(&y())).scale(&Rational::new(1, 12))
        );
    }
}
