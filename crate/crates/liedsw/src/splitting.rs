//! Burgunder-style splitting maps: the left splitting, its extended and
//! weighted variants, the monomial-level description through co-weights
//! and left removal, and the right-iterated mirror with the switch
//! relation.

use std::collections::BTreeMap;

use crate::error::LieError;
use crate::freealg::{Gen, NcPoly, Word};
use crate::lieops::{dynkin_bracket, is_lie, left_comb_expand, right_comb_expand, BracketSide,
    eulerian_idempotent_poly, LieShape, LieTree, WeightAssignment};
use crate::scalar::Rational;

/// Which slot of the tensor holds the single generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `Σ_g X_g ⊗ parts[g]` (the left splitting).
    GenLeft,
    /// `Σ_g parts[g] ⊗ X_g` (the right splitting, roles mirrored).
    GenRight,
}

/// A (1, n-1) tensor splitting: per generator, the degree-(n-1) cofactor.
/// Absent generators mean zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Splitting {
    degree: usize,
    orientation: Orientation,
    parts: BTreeMap<Gen, NcPoly>,
}

impl Splitting {
    pub fn zero(degree: usize, orientation: Orientation) -> Self {
        Splitting {
            degree,
            orientation,
            parts: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn part(&self, g: Gen) -> NcPoly {
        self.parts.get(&g).cloned().unwrap_or_else(NcPoly::zero)
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Gen, &NcPoly)> {
        self.parts.iter()
    }

    pub fn add_part(&mut self, g: Gen, p: &NcPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.parts.entry(g).or_insert_with(NcPoly::zero);
        *entry = entry.add(p);
        if entry.is_zero() {
            self.parts.remove(&g);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// The fully expanded two-slot tensor as `(left word, right word) →
    /// coefficient` pairs; used for the exact switch comparison.
    pub fn tensor_pairs(&self) -> BTreeMap<(Word, Word), Rational> {
        let mut out = BTreeMap::new();
        for (&g, poly) in &self.parts {
            for (w, c) in poly.terms() {
                let key = match self.orientation {
                    Orientation::GenLeft => (Word::gen(g), w.clone()),
                    Orientation::GenRight => (w.clone(), Word::gen(g)),
                };
                let e = out.entry(key).or_insert_with(Rational::zero);
                *e += c;
            }
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        out
    }

    /// The image under the switch map generated by `x⊗y ↦ -y⊗x`, as
    /// expanded tensor pairs.
    pub fn switched_pairs(&self) -> BTreeMap<(Word, Word), Rational> {
        self.tensor_pairs()
            .into_iter()
            .map(|((a, b), c)| ((b, a), -&c))
            .collect()
    }
}

/// `{"degree": n, "parts": [{"gen": i, "poly": {…}}]}` with 1-based
/// generator indices.
pub fn splitting_to_json(s: &Splitting, vars: usize) -> serde_json::Value {
    let parts: Vec<serde_json::Value> = s
        .parts()
        .map(|(&g, poly)| {
            serde_json::json!({
                "gen": g as usize + 1,
                "poly": crate::parse::poly_to_json(poly, vars),
            })
        })
        .collect();
    serde_json::json!({ "degree": s.degree(), "parts": parts })
}

/// One line per generator: `name ⊗ cofactor`.
pub fn splitting_display(s: &Splitting, alpha: &crate::freealg::Alphabet) -> String {
    if s.is_zero() {
        return "0".into();
    }
    s.parts()
        .map(|(&g, poly)| format!("{} ⊗ {}", alpha.name(g), poly.display(alpha)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn require_homogeneous(p: &NcPoly) -> Result<usize, LieError> {
    match p.is_homogeneous() {
        Some(n) if n >= 2 => Ok(n),
        Some(n) => Err(LieError::DegreeTooLow(n)),
        None => {
            if p.is_zero() {
                Err(LieError::DegreeTooLow(0))
            } else {
                Err(LieError::Invalid(
                    "splitting requires a homogeneous input; apply per degree".into(),
                ))
            }
        }
    }
}

/// The left splitting `δ^L_n`: term-wise
/// `c·X_{λ1}…X_{λn} ↦ (1/n)·c·X_{λ1} ⊗ [X_{λ2},…,X_{λn}]_L`.
///
/// With `extended = false` the input must be a Lie element and the result
/// reconstructs it; `extended = true` applies the same formula on the
/// whole free algebra.
pub fn delta_l(p: &NcPoly, extended: bool) -> Result<Splitting, LieError> {
    let n = require_homogeneous(p)?;
    if !extended && !is_lie(p) {
        return Err(LieError::NotLie);
    }
    let inv_n = Rational::from_int(n as i64).recip().unwrap();
    let mut out = Splitting::zero(n, Orientation::GenLeft);
    for (w, c) in p.terms() {
        let g = w.0[0];
        let tail = left_comb_expand(&w.0[1..]);
        out.add_part(g, &tail.scale(&(c * &inv_n)));
    }
    Ok(out)
}

/// The weighted splitting `δ^L_w`: term-wise factor
/// `w_{λn} / (w_{λ1}+…+w_{λn})` instead of `1/n`. Every supported word
/// must have nonzero total weight.
pub fn delta_l_weighted(p: &NcPoly, w: &WeightAssignment) -> Result<Splitting, LieError> {
    let n = require_homogeneous(p)?;
    let mut out = Splitting::zero(n, Orientation::GenLeft);
    for (word, c) in p.terms() {
        let total = w.word_weight(word);
        if total.is_zero() {
            let k = word.multigrade(word.0.iter().map(|&g| g as usize + 1).max().unwrap_or(1));
            return Err(LieError::ZeroWeight(format!("{k:?}")));
        }
        let last = w.weight(*word.0.last().unwrap());
        if last.is_zero() {
            continue;
        }
        let factor = &(c * last) / &total;
        let g = word.0[0];
        let tail = left_comb_expand(&word.0[1..]);
        out.add_part(g, &tail.scale(&factor));
    }
    Ok(out)
}

/// The right splitting `δ^R_n`: term-wise
/// `c·X_{λ1}…X_{λn} ↦ (1/n)·c·[X_{λ1},…,X_{λ_{n-1}}]_R ⊗ X_{λn}`.
pub fn delta_r(p: &NcPoly, extended: bool) -> Result<Splitting, LieError> {
    let n = require_homogeneous(p)?;
    if !extended && !is_lie(p) {
        return Err(LieError::NotLie);
    }
    let inv_n = Rational::from_int(n as i64).recip().unwrap();
    let mut out = Splitting::zero(n, Orientation::GenRight);
    for (w, c) in p.terms() {
        let g = *w.0.last().unwrap();
        let head = right_comb_expand(&w.0[..n - 1]);
        out.add_part(g, &head.scale(&(c * &inv_n)));
    }
    Ok(out)
}

/// Burgunder's own variant: Eulerian projection first, then the left
/// splitting.
pub fn delta_burgunder(p: &NcPoly) -> Result<Splitting, LieError> {
    let projected = eulerian_idempotent_poly(p)?;
    delta_l(&projected, true)
}

/// `Σ_g [X_g, parts[g]]` (or the mirrored commutator for a right
/// splitting); the section property gives back the original Lie element.
pub fn reconstruct(s: &Splitting) -> NcPoly {
    let mut out = NcPoly::zero();
    for (&g, poly) in s.parts() {
        let x = NcPoly::gen(g);
        let c = match s.orientation {
            Orientation::GenLeft => x.commutator(poly),
            Orientation::GenRight => poly.commutator(&x),
        };
        out = out.add(&c);
    }
    out
}

/// Writes a multiplicity-free commutator monomial as
/// `(-1)^l [[…[[X_g,N1],N2],…],Ns]` by switches and returns the sign and
/// the factors `N1..Ns`.
fn comb_decompose(shape: &LieShape, g: Gen) -> Option<(i8, Vec<LieShape>)> {
    match shape {
        LieShape::Leaf(h) => (*h == g).then_some((1, Vec::new())),
        LieShape::Pair(l, r) => {
            if l.contains(g) {
                let (s, mut ns) = comb_decompose(l, g)?;
                ns.push((**r).clone());
                Some((s, ns))
            } else {
                let (s, mut ns) = comb_decompose(r, g)?;
                ns.push((**l).clone());
                Some((-s, ns))
            }
        }
    }
}

fn check_multiplicity_free(t: &LieTree) -> Result<Vec<Gen>, LieError> {
    let mut leaves = Vec::new();
    t.shape.leaves(&mut leaves);
    let mut seen = leaves.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != leaves.len() {
        return Err(LieError::NotMultiplicityFree(format!(
            "X{}",
            leaves
                .iter()
                .find(|&&g| leaves.iter().filter(|&&h| h == g).count() > 1)
                .map(|&g| g as usize + 1)
                .unwrap_or(0)
        )));
    }
    Ok(leaves)
}

/// The co-weight of `g` in a multiplicity-free monomial `±[M1,M2]`: the
/// weight (degree, under unit weights) of the sibling top factor.
pub fn coweight(t: &LieTree, g: Gen, w: Option<&WeightAssignment>) -> Result<Rational, LieError> {
    check_multiplicity_free(t)?;
    let LieShape::Pair(m1, m2) = &t.shape else {
        return Err(LieError::DegreeTooLow(1));
    };
    let sibling = if m1.contains(g) {
        m2
    } else if m2.contains(g) {
        m1
    } else {
        return Err(LieError::Invalid(format!("generator X{} absent", g + 1)));
    };
    let mut leaves = Vec::new();
    sibling.leaves(&mut leaves);
    Ok(match w {
        None => Rational::from_int(sibling.degree() as i64),
        Some(w) => {
            let mut acc = Rational::zero();
            for h in leaves {
                acc += w.weight(h);
            }
            acc
        }
    })
}

/// Removal of `g` to the left: rotates `g` to the leftmost position by
/// switches and deletes it, keeping the accumulated sign.
pub fn rem_left(t: &LieTree, g: Gen) -> Result<LieTree, LieError> {
    check_multiplicity_free(t)?;
    if t.degree() < 2 {
        return Err(LieError::DegreeTooLow(t.degree()));
    }
    let (s, ns) = comb_decompose(&t.shape, g)
        .ok_or_else(|| LieError::Invalid(format!("generator X{} absent", g + 1)))?;
    // [N1,[N2,…[N_{s-1},Ns]…]]
    let mut it = ns.into_iter().rev();
    let mut acc = it.next().expect("degree >= 2 leaves at least one factor");
    for n in it {
        acc = LieShape::pair(n, acc);
    }
    Ok(LieTree {
        sign: t.sign * s,
        shape: acc,
    })
}

/// Splits a multiplicity-free commutator monomial directly:
/// `(1/w_M)·Σ_k cw_{X_k}(M)·X_k ⊗ rem^L_{X_k}(M)`, with unit weights when
/// none are given. Agrees with the expansion route through `delta_l`.
pub fn split_monomial(
    t: &LieTree,
    w: Option<&WeightAssignment>,
) -> Result<Splitting, LieError> {
    let leaves = check_multiplicity_free(t)?;
    let n = t.degree();
    if n < 2 {
        return Err(LieError::DegreeTooLow(n));
    }
    let total = match w {
        None => Rational::from_int(n as i64),
        Some(w) => {
            let mut acc = Rational::zero();
            for &g in &leaves {
                acc += w.weight(g);
            }
            acc
        }
    };
    if total.is_zero() {
        return Err(LieError::ZeroWeight("whole monomial".into()));
    }
    let mut out = Splitting::zero(n, Orientation::GenLeft);
    for &g in &leaves {
        let cw = coweight(t, g, w)?;
        if cw.is_zero() {
            continue;
        }
        let removed = rem_left(t, g)?;
        out.add_part(g, &removed.expand().scale(&(&cw / &total)));
    }
    Ok(out)
}

/// `D^L ∘ ∂^L_g`, the building block of the compact splitting formula.
pub fn dynkin_of_left_removal(p: &NcPoly, g: Gen) -> NcPoly {
    dynkin_bracket(
        &p.partial_remove(g, crate::freealg::Side::Starting),
        BracketSide::Left,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Alphabet;
    use crate::parse::parse_lie_tree;

    fn t(s: &str) -> LieTree {
        parse_lie_tree(s, &Alphabet::new(9)).unwrap()
    }

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn delta_l_degree_two() {
        let p = t("[X1,X2]").expand();
        let s = delta_l(&p, false).unwrap();
        assert_eq!(s.part(0), NcPoly::gen(1).scale(&half()));
        assert_eq!(s.part(1), NcPoly::gen(0).scale(&half()).neg());
        assert_eq!(reconstruct(&s), p);
    }

    #[test]
    fn delta_l_rejects_non_lie() {
        let p = NcPoly::gen(0).mul(&NcPoly::gen(1), None);
        assert!(matches!(delta_l(&p, false), Err(LieError::NotLie)));
        assert!(delta_l(&p, true).is_ok());
        assert!(matches!(
            delta_l(&NcPoly::gen(0), true),
            Err(LieError::DegreeTooLow(1))
        ));
    }

    #[test]
    fn weighted_degenerates_to_plain() {
        let p = t("[X1,[X2,X3]]").expand();
        let unit = WeightAssignment::unit(3);
        let a = delta_l(&p, false).unwrap();
        let b = delta_l_weighted(&p, &unit).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn weighted_lineff2() {
        // δ^L_X of [X,[X,Y]] → X ⊗ [X,Y]
        let alpha = Alphabet::xy();
        let p = parse_lie_tree("[X,[X,Y]]", &alpha).unwrap().expand();
        let wx = WeightAssignment::indicator(0, 2);
        let s = delta_l_weighted(&p, &wx).unwrap();
        assert_eq!(s.part(0), parse_lie_tree("[X,Y]", &alpha).unwrap().expand());
        assert!(s.part(1).is_zero());
        // pure-Y word: zero weight sum is an error
        let yy = NcPoly::gen(1).mul(&NcPoly::gen(1), None);
        assert!(matches!(
            delta_l_weighted(&yy, &wx),
            Err(LieError::ZeroWeight(_))
        ));
    }

    #[test]
    fn split_monomial_degree_two() {
        let s = split_monomial(&t("[X1,X2]"), None).unwrap();
        assert_eq!(s.part(0), NcPoly::gen(1).scale(&half()));
        assert_eq!(s.part(1), NcPoly::gen(0).scale(&half()).neg());
        // rem_left(t, X2) = -X1
        let r = rem_left(&t("[X1,X2]"), 1).unwrap();
        assert_eq!(r.expand(), NcPoly::gen(0).neg());
        assert_eq!(
            coweight(&t("[X1,X2]"), 0, None).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn split_monomial_matches_expansion() {
        for src in [
            "[X1,[X2,X3]]",
            "[[X1,X2],X3]",
            "-[[X1,X3],[X2,X4]]",
            "[[X1,[X2,[X3,X4]]],[[X5,X6],X7]]",
        ] {
            let tree = t(src);
            let direct = split_monomial(&tree, None).unwrap();
            let via_expansion = delta_l(&tree.expand(), false).unwrap();
            assert_eq!(direct, via_expansion, "{src}");
        }
    }

    #[test]
    fn split_monomial_rejects_multiplicity() {
        assert!(matches!(
            split_monomial(&t("[X1,[X1,X2]]"), None),
            Err(LieError::NotMultiplicityFree(_))
        ));
    }

    #[test]
    fn right_splitting_mirror() {
        let p = t("[X1,X2]").expand();
        let s = delta_r(&p, false).unwrap();
        assert_eq!(reconstruct(&s), p);
        // switch relation at degree 2
        let l = delta_l(&p, false).unwrap();
        assert_eq!(s.tensor_pairs(), l.switched_pairs());
    }

    #[test]
    fn extended_switch_fails_off_lie() {
        // no analogous relation holds for the extended maps
        let p = NcPoly::gen(0).mul(&NcPoly::gen(1), None);
        let l = delta_l(&p, true).unwrap();
        let r = delta_r(&p, true).unwrap();
        assert_ne!(r.tensor_pairs(), l.switched_pairs());
    }

    #[test]
    fn burgunder_variant_projects_first() {
        let p = NcPoly::gen(0).mul(&NcPoly::gen(1), None);
        let s = delta_burgunder(&p).unwrap();
        // μ(XY) = ½[X,Y]; δ^L of that splits as half the degree-2 case
        let c = t("[X1,X2]").expand().scale(&half());
        assert_eq!(reconstruct(&s), c);
    }
}
