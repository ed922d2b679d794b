//! Lie-side operators: commutator evaluation of bracketed monomials, the
//! left/right Dynkin bracketing maps, the weighted and centrally bracketed
//! projections, the Lie-element criterion and the Eulerian idempotent.

use std::fmt;

use crate::error::LieError;
use crate::freealg::{Alphabet, Gen, GradedSeries, NcPoly, Word};
use crate::scalar::Rational;

/// A commutator monomial before expansion: an unsigned binary bracketing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LieShape {
    Leaf(Gen),
    Pair(Box<LieShape>, Box<LieShape>),
}

impl LieShape {
    pub fn pair(l: LieShape, r: LieShape) -> LieShape {
        LieShape::Pair(Box::new(l), Box::new(r))
    }

    pub fn degree(&self) -> usize {
        match self {
            LieShape::Leaf(_) => 1,
            LieShape::Pair(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn leaves(&self, out: &mut Vec<Gen>) {
        match self {
            LieShape::Leaf(g) => out.push(*g),
            LieShape::Pair(l, r) => {
                l.leaves(out);
                r.leaves(out);
            }
        }
    }

    pub fn contains(&self, g: Gen) -> bool {
        match self {
            LieShape::Leaf(h) => *h == g,
            LieShape::Pair(l, r) => l.contains(g) || r.contains(g),
        }
    }

    pub fn count(&self, g: Gen) -> usize {
        match self {
            LieShape::Leaf(h) => usize::from(*h == g),
            LieShape::Pair(l, r) => l.count(g) + r.count(g),
        }
    }

    pub fn expand(&self) -> NcPoly {
        match self {
            LieShape::Leaf(g) => NcPoly::gen(*g),
            LieShape::Pair(l, r) => l.expand().commutator(&r.expand()),
        }
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        match self {
            LieShape::Leaf(g) => alpha.name(*g).to_string(),
            LieShape::Pair(l, r) => format!("[{},{}]", l.display(alpha), r.display(alpha)),
        }
    }
}

/// A signed commutator monomial with generator leaves.
#[derive(Clone, PartialEq, Eq)]
pub struct LieTree {
    pub sign: i8,
    pub shape: LieShape,
}

impl LieTree {
    pub fn leaf(g: Gen) -> LieTree {
        LieTree {
            sign: 1,
            shape: LieShape::Leaf(g),
        }
    }

    pub fn bracket(l: LieTree, r: LieTree) -> LieTree {
        LieTree {
            sign: l.sign * r.sign,
            shape: LieShape::pair(l.shape, r.shape),
        }
    }

    pub fn negated(mut self) -> LieTree {
        self.sign = -self.sign;
        self
    }

    pub fn degree(&self) -> usize {
        self.shape.degree()
    }

    /// The natural commutator evaluation into the free associative algebra.
    pub fn expand(&self) -> NcPoly {
        let p = self.shape.expand();
        if self.sign < 0 {
            p.neg()
        } else {
            p
        }
    }

    pub fn display(&self, alpha: &Alphabet) -> String {
        let body = self.shape.display(alpha);
        if self.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl fmt::Debug for LieTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn shape(s: &LieShape, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match s {
                LieShape::Leaf(g) => write!(f, "X{}", g + 1),
                LieShape::Pair(l, r) => {
                    write!(f, "[")?;
                    shape(l, f)?;
                    write!(f, ",")?;
                    shape(r, f)?;
                    write!(f, "]")
                }
            }
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        shape(&self.shape, f)
    }
}

/// A weight per generator, entering the weighted DSW lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    weights: Vec<Rational>,
}

impl WeightAssignment {
    pub fn new(weights: Vec<Rational>) -> Self {
        WeightAssignment { weights }
    }

    pub fn unit(k: usize) -> Self {
        WeightAssignment {
            weights: vec![Rational::one(); k],
        }
    }

    /// Weight 1 on `g`, 0 elsewhere (the `deg_g` prescription).
    pub fn indicator(g: Gen, k: usize) -> Self {
        let mut weights = vec![Rational::zero(); k];
        weights[g as usize] = Rational::one();
        WeightAssignment { weights }
    }

    pub fn weight(&self, g: Gen) -> &Rational {
        &self.weights[g as usize]
    }

    /// Sum of letter weights of a word.
    pub fn word_weight(&self, w: &Word) -> Rational {
        let mut acc = Rational::zero();
        for &g in &w.0 {
            acc += self.weight(g);
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketSide {
    Left,
    Right,
}

/// Expansion of the left-iterated commutator `[x1,[x2,...[x_{n-1},xn]...]]`.
pub fn left_comb_expand(letters: &[Gen]) -> NcPoly {
    match letters {
        [] => NcPoly::zero(),
        [g] => NcPoly::gen(*g),
        [g, rest @ ..] => NcPoly::gen(*g).commutator(&left_comb_expand(rest)),
    }
}

/// Expansion of the right-iterated commutator `[[x1,x2],...,xn]`.
pub fn right_comb_expand(letters: &[Gen]) -> NcPoly {
    let mut it = letters.iter();
    let Some(&first) = it.next() else {
        return NcPoly::zero();
    };
    let mut acc = NcPoly::gen(first);
    for &g in it {
        acc = acc.commutator(&NcPoly::gen(g));
    }
    acc
}

/// The Dynkin bracketing map: word-wise replacement by the iterated
/// commutator, linearly extended. Degree-1 words map to themselves,
/// degree-0 terms to zero.
pub fn dynkin_bracket(p: &NcPoly, side: BracketSide) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        if w.is_empty() {
            continue;
        }
        let br = match side {
            BracketSide::Left => left_comb_expand(&w.0),
            BracketSide::Right => right_comb_expand(&w.0),
        };
        out = out.add(&br.scale(c));
    }
    out
}

/// The weighted Dynkin-Specht-Wever projection.
///
/// Left side puts the weight on the last letter of each word, the right
/// side on the first; on a Lie element the result is the multigrade-wise
/// multiplication by the total weight.
pub fn dsw_project(p: &NcPoly, w: &WeightAssignment, side: BracketSide) -> NcPoly {
    let mut out = NcPoly::zero();
    for (word, c) in p.terms() {
        if word.is_empty() {
            continue;
        }
        let weight = match side {
            BracketSide::Left => w.weight(*word.0.last().unwrap()),
            BracketSide::Right => w.weight(word.0[0]),
        };
        if weight.is_zero() {
            continue;
        }
        let br = match side {
            BracketSide::Left => left_comb_expand(&word.0),
            BracketSide::Right => right_comb_expand(&word.0),
        };
        out = out.add(&br.scale(&(c * weight)));
    }
    out
}

/// Centrally bracketed DSW map: each length-h word is split at every
/// interior position into a left-iterated and a right-iterated factor.
/// Equals `h(h-1)·p` on Lie elements; degree <= 1 contributes zero.
pub fn dsw_central(p: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (word, c) in p.terms() {
        let h = word.len();
        if h < 2 {
            continue;
        }
        for q in 1..h {
            let left = left_comb_expand(&word.0[..q]);
            let right = right_comb_expand(&word.0[q..]);
            out = out.add(&left.commutator(&right).scale(c));
        }
    }
    out
}

/// Weighted central DSW: restricts the split sum to positions where the
/// adjacent letters are `(k, l)`. On a Lie element with X_k-degree h_k and
/// X_l-degree h_l this yields `h_k·h_l·p` for k != l and `h_k(h_k-1)·p`
/// for k = l.
pub fn dsw_central_weighted(p: &NcPoly, k: Gen, l: Gen) -> NcPoly {
    let mut out = NcPoly::zero();
    for (word, c) in p.terms() {
        let h = word.len();
        if h < 2 {
            continue;
        }
        for r in 1..h {
            if word.0[r - 1] == k && word.0[r] == l {
                let left = left_comb_expand(&word.0[..r]);
                let right = right_comb_expand(&word.0[r..]);
                out = out.add(&left.commutator(&right).scale(c));
            }
        }
    }
    out
}

/// The Dynkin criterion over the rationals: `p` is a Lie element iff every
/// homogeneous component satisfies `D^L(p_n) = n·p_n`. A nonzero constant
/// term disqualifies immediately.
pub fn is_lie(p: &NcPoly) -> bool {
    if !p.constant_term().is_zero() {
        return false;
    }
    for d in 1..=p.max_degree() {
        let comp = p.homogeneous_part(d);
        if comp.is_zero() {
            continue;
        }
        let lhs = dynkin_bracket(&comp, BracketSide::Left);
        if lhs != comp.scale(&Rational::from_int(d as i64)) {
            return false;
        }
    }
    true
}

/// Every homogeneous component of the series passes the Dynkin criterion.
pub fn is_lie_series(s: &GradedSeries) -> bool {
    s.components().all(|(_, p)| is_lie(p))
}

/// The Eulerian idempotent (first canonical projection) applied to a word,
/// computed via the convolution logarithm over the deshuffle coproduct:
/// `μ = Σ_k (-1)^{k-1}/k · J^{*k}` with `J` killing the empty word, so
/// `J^{*k}(w)` sums the concatenations over ordered partitions of the
/// positions of `w` into `k` nonempty blocks.
pub fn eulerian_idempotent(word: &Word) -> Result<NcPoly, LieError> {
    let n = word.len();
    if n == 0 {
        return Err(LieError::EmptyWord);
    }
    let mut out = NcPoly::zero();
    // positions still unassigned are carried as a bitmask
    fn rec(
        word: &Word,
        remaining: u32,
        blocks: usize,
        prefix: &mut Vec<Gen>,
        out: &mut NcPoly,
    ) {
        if remaining == 0 {
            let k = blocks as i64;
            let c = Rational::new(if blocks % 2 == 1 { 1 } else { -1 }, k);
            out.add_term(Word(prefix.clone()), c);
            return;
        }
        // enumerate nonempty submasks of `remaining` as the next block
        let positions: Vec<usize> = (0..word.len()).filter(|i| remaining >> i & 1 == 1).collect();
        let m = positions.len();
        for sub in 1u32..(1 << m) {
            let start = prefix.len();
            let mut mask = remaining;
            for (j, &pos) in positions.iter().enumerate() {
                if sub >> j & 1 == 1 {
                    prefix.push(word.0[pos]);
                    mask &= !(1 << pos);
                }
            }
            rec(word, mask, blocks + 1, prefix, out);
            prefix.truncate(start);
        }
    }
    let full = (1u32 << n) - 1;
    let mut prefix = Vec::with_capacity(n);
    rec(word, full, 0, &mut prefix, &mut out);
    Ok(out)
}

/// Linear extension of the Eulerian idempotent to polynomials with zero
/// constant term.
pub fn eulerian_idempotent_poly(p: &NcPoly) -> Result<NcPoly, LieError> {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        if w.is_empty() {
            return Err(LieError::EmptyWord);
        }
        out = out.add(&eulerian_idempotent(w)?.scale(c));
    }
    Ok(out)
}

/// Number of descents of a permutation given in one-line notation.
pub fn descent_count(perm: &[usize]) -> usize {
    perm.windows(2).filter(|p| p[0] > p[1]).count()
}

/// The Solomon descent-class coefficient of the Eulerian idempotent:
/// `μ_σ = (-1)^{d(σ)} / (n · C(n-1, d(σ)))` with `d` the descent count.
pub fn mu_sigma(n: usize, perm: &[usize]) -> Rational {
    assert_eq!(perm.len(), n);
    let d = descent_count(perm);
    let mut binom = Rational::one();
    for j in 0..d {
        binom = binom * Rational::from_int((n - 1 - j) as i64) / Rational::from_int(j as i64 + 1);
    }
    let sign = if d % 2 == 0 { 1 } else { -1 };
    Rational::from_int(sign) / (Rational::from_int(n as i64) * binom)
}

/// All permutations of {0..n-1} in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Checks the Eulerian-idempotent identities as exact multilinear
/// polynomial identities in `X1..Xn`: `n·μ_n` against the left-bracketed
/// permutation sum, its weighted analogue, and `n(n-1)·μ_n` against the
/// centrally bracketed sum.
pub fn verify_uea_identities(n: usize, weights: &WeightAssignment) -> bool {
    let word = Word((0..n as u8).collect());
    let mu = eulerian_idempotent(&word).expect("nonempty word");
    let perms = permutations(n);

    // n·μ_n = Σ_σ μ_σ [X_σ(1),...,X_σ(n)]_L
    let mut lhs_sum = NcPoly::zero();
    for p in &perms {
        let letters: Vec<Gen> = p.iter().map(|&i| i as Gen).collect();
        lhs_sum = lhs_sum.add(&left_comb_expand(&letters).scale(&mu_sigma(n, p)));
    }
    if lhs_sum != mu.scale(&Rational::from_int(n as i64)) {
        return false;
    }

    // (w_1+...+w_n)·μ_n = Σ_σ μ_σ [X_σ(1),...,w_σ(n)·X_σ(n)]_L
    let mut w_sum = NcPoly::zero();
    for p in &perms {
        let letters: Vec<Gen> = p.iter().map(|&i| i as Gen).collect();
        let w_last = weights.weight(*letters.last().unwrap());
        w_sum = w_sum.add(&left_comb_expand(&letters).scale(&(&mu_sigma(n, p) * w_last)));
    }
    let total: Rational = weights.word_weight(&word);
    if w_sum != mu.scale(&total) {
        return false;
    }

    // n(n-1)·μ_n = Σ_σ Σ_p μ_σ [[..]_L, [..]_R]
    let mut c_sum = NcPoly::zero();
    for p in &perms {
        let letters: Vec<Gen> = p.iter().map(|&i| i as Gen).collect();
        let coeff = mu_sigma(n, p);
        for q in 1..n {
            let left = left_comb_expand(&letters[..q]);
            let right = right_comb_expand(&letters[q..]);
            c_sum = c_sum.add(&left.commutator(&right).scale(&coeff));
        }
    }
    c_sum == mu.scale(&Rational::from_int((n * (n - 1)) as i64))
}

/// Multigrade-wise multiplication by total weight (the map `w` of the
/// weighted DSW lemma). Used as an oracle for `dsw_project`.
pub fn weight_map(p: &NcPoly, w: &WeightAssignment) -> NcPoly {
    let mut out = NcPoly::zero();
    for (word, c) in p.terms() {
        out.add_term(word.clone(), c * &w.word_weight(word));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LieTree {
        crate::parse::parse_lie_tree(s, &Alphabet::new(9)).unwrap()
    }

    #[test]
    fn lie_expand_examples() {
        assert_eq!(t("X1").expand(), NcPoly::gen(0));
        assert_eq!(
            t("[X1,X2]").expand(),
            NcPoly::gen(0).commutator(&NcPoly::gen(1))
        );
        let p = t("-[[X1,X3],[X2,X4]]").expand();
        let oracle = NcPoly::gen(0)
            .commutator(&NcPoly::gen(2))
            .commutator(&NcPoly::gen(1).commutator(&NcPoly::gen(3)))
            .neg();
        assert_eq!(p, oracle);
        assert_eq!(p.num_terms(), 8);
    }

    #[test]
    fn dynkin_bracket_examples() {
        let x1x2 = NcPoly::gen(0).mul(&NcPoly::gen(1), None);
        assert_eq!(
            dynkin_bracket(&x1x2, BracketSide::Left),
            t("[X1,X2]").expand()
        );
        // Dynkin idempotent on degree 2: D^L of [X1,X2]-expansion is 2[X1,X2]
        let c = t("[X1,X2]").expand();
        assert_eq!(
            dynkin_bracket(&c, BracketSide::Left),
            c.scale(&Rational::from_int(2))
        );
        // D^L(X1X2X3) = [X1,[X2,X3]] expanded
        let w123 = NcPoly::monomial(Word(vec![0, 1, 2]), Rational::one());
        assert_eq!(
            dynkin_bracket(&w123, BracketSide::Left),
            t("[X1,[X2,X3]]").expand()
        );
    }

    #[test]
    fn dsw_project_examples() {
        let c = t("[X1,X2]").expand();
        let w23 = WeightAssignment::new(vec![Rational::from_int(2), Rational::from_int(3)]);
        assert_eq!(
            dsw_project(&c, &w23, BracketSide::Left),
            c.scale(&Rational::from_int(5))
        );
        let unit = WeightAssignment::unit(2);
        assert_eq!(
            dsw_project(&c, &unit, BracketSide::Left),
            c.scale(&Rational::from_int(2))
        );
        // [X,[X,Y]] with weights (1,0): multiply by X-degree 2
        let p = t("[X1,[X1,X2]]").expand();
        let wx = WeightAssignment::indicator(0, 2);
        assert_eq!(
            dsw_project(&p, &wx, BracketSide::Left),
            weight_map(&p, &wx)
        );
        assert_eq!(
            dsw_project(&p, &wx, BracketSide::Left),
            p.scale(&Rational::from_int(2))
        );
    }

    #[test]
    fn dsw_central_examples() {
        let c = t("[X1,X2]").expand();
        assert_eq!(dsw_central(&c), c.scale(&Rational::from_int(2)));
        let p = t("[X1,[X2,X3]]").expand();
        assert_eq!(dsw_central(&p), p.scale(&Rational::from_int(6)));
        // off the Lie subspace the identity fails
        let x1x2 = NcPoly::gen(0).mul(&NcPoly::gen(1), None);
        assert_eq!(dsw_central(&x1x2), c);
        assert_ne!(dsw_central(&x1x2), x1x2.scale(&Rational::from_int(2)));
    }

    #[test]
    fn dsw_central_weighted_examples() {
        let c = t("[X1,X2]").expand();
        assert_eq!(dsw_central_weighted(&c, 0, 1), c);
        assert!(dsw_central_weighted(&c, 0, 0).is_zero());
        let p = t("[X1,[X1,X2]]").expand();
        assert_eq!(dsw_central_weighted(&p, 0, 0), p.scale(&Rational::from_int(2)));
    }

    #[test]
    fn is_lie_examples() {
        assert!(is_lie(&t("[X1,X2]").expand()));
        assert!(!is_lie(&NcPoly::gen(0).mul(&NcPoly::gen(1), None)));
        assert!(is_lie(&t("[[X1,X2],[X1,X3]]").expand()));
        assert!(is_lie(&NcPoly::zero()));
        assert!(!is_lie(&NcPoly::one()));
    }

    #[test]
    fn eulerian_small() {
        let x1 = Word(vec![0]);
        assert_eq!(eulerian_idempotent(&x1).unwrap(), NcPoly::gen(0));
        let x1x2 = Word(vec![0, 1]);
        let mu2 = eulerian_idempotent(&x1x2).unwrap();
        assert_eq!(
            mu2,
            t("[X1,X2]").expand().scale(&Rational::new(1, 2))
        );
        // idempotency instance
        let mu3 = eulerian_idempotent(&Word(vec![0, 1, 2])).unwrap();
        assert_eq!(eulerian_idempotent_poly(&mu3).unwrap(), mu3);
        assert!(eulerian_idempotent(&Word::empty()).is_err());
    }

    #[test]
    fn eulerian_matches_descent_formula() {
        for n in 1..=5 {
            let word = Word((0..n as u8).collect());
            let mu = eulerian_idempotent(&word).unwrap();
            for p in permutations(n) {
                let w = Word(p.iter().map(|&i| i as Gen).collect());
                assert_eq!(mu.coeff(&w), mu_sigma(n, &p), "n={n} perm={p:?}");
            }
        }
    }

    #[test]
    fn uea_identities_small() {
        let w = WeightAssignment::new(vec![
            Rational::new(2, 3),
            Rational::from_int(-1),
            Rational::new(5, 7),
            Rational::from_int(4),
            Rational::new(-3, 2),
        ]);
        assert!(verify_uea_identities(1, &w));
        assert!(verify_uea_identities(2, &w));
        assert!(verify_uea_identities(3, &w));
    }

    #[test]
    fn permutations_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(1), vec![vec![0]]);
        assert_eq!(descent_count(&[1, 0, 2]), 1);
        assert_eq!(descent_count(&[2, 1, 0]), 2);
    }
}
