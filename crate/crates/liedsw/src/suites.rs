//! Named verification suites: batched exact identity checks over random
//! and golden inputs, shared by the CLI `verify` subcommand and the
//! integration tests. Every suite is deterministic for a fixed seed.

use crate::bchgen::{bch_log, BchMethod};
use crate::error::LieError;
use crate::freealg::{Alphabet, Word};
use crate::kv;
use crate::lieops::{
    dsw_central, dsw_project, eulerian_idempotent, eulerian_idempotent_poly, is_lie, mu_sigma,
    permutations, verify_uea_identities, weight_map, BracketSide, WeightAssignment,
};
use crate::parse::parse_lie_tree;
use crate::report::Report;
use crate::resolvent;
use crate::rng::Rng;
use crate::scalar::Rational;
use crate::splitting::{delta_l, delta_r, reconstruct, split_monomial, Splitting};

pub const SUITE_NAMES: &[&str] = &[
    "all",
    "dsw",
    "uea",
    "split",
    "resolvent",
    "bch",
    "kv",
    "trace",
];

/// Dispatches one suite by name.
pub fn run_suite(name: &str, max_degree: usize, seed: u64) -> Result<Report, LieError> {
    match name {
        "dsw" => suite_dsw(max_degree, seed),
        "uea" => Ok(suite_uea(max_degree, seed)),
        "split" => suite_split(max_degree, seed),
        "resolvent" => suite_resolvent(max_degree, seed),
        "bch" => suite_bch(max_degree),
        "kv" => suite_kv(max_degree),
        "trace" => Ok(suite_trace(max_degree, seed)),
        "all" => {
            let mut report = Report::new();
            for s in SUITE_NAMES.iter().filter(|&&s| s != "all") {
                report.merge(run_suite(s, max_degree, seed)?);
            }
            Ok(report)
        }
        other => Err(LieError::Invalid(format!("unknown suite {other:?}"))),
    }
}

fn random_weights(rng: &mut Rng, k: usize) -> WeightAssignment {
    WeightAssignment::new((0..k).map(|_| rng.small_rational()).collect())
}

/// Projection identities on random Lie elements: the unit-weight
/// projection multiplies by the degree, the central variant by
/// degree·(degree-1), and a random-weight projection matches the
/// multigrade-weight multiplication.
pub fn suite_dsw(max_degree: usize, seed: u64) -> Result<Report, LieError> {
    suite_dsw_sized(max_degree, seed, 10)
}

/// The same identities with a configurable sample count per degree.
pub fn suite_dsw_sized(max_degree: usize, seed: u64, samples: usize) -> Result<Report, LieError> {
    let mut rng = Rng::new(seed);
    let mut report = Report::new();
    for k in [2usize, 3] {
        let mut ok_unit = true;
        let mut ok_central = true;
        let mut ok_weighted = true;
        let mut detail = None;
        'outer: for d in 2..=max_degree.max(2) {
            for _ in 0..samples {
                let p = rng.lie_element(d, k, 3);
                let unit = WeightAssignment::unit(k);
                if dsw_project(&p, &unit, BracketSide::Left)
                    != p.scale(&Rational::from_int(d as i64))
                {
                    ok_unit = false;
                } else if dsw_project(&p, &unit, BracketSide::Right)
                    != p.scale(&Rational::from_int(d as i64))
                {
                    ok_unit = false;
                }
                if dsw_central(&p) != p.scale(&Rational::from_int((d * (d - 1)) as i64)) {
                    ok_central = false;
                }
                let w = random_weights(&mut rng, k);
                if dsw_project(&p, &w, BracketSide::Left) != weight_map(&p, &w) {
                    ok_weighted = false;
                }
                if !(ok_unit && ok_central && ok_weighted) {
                    detail = Some(format!("degree {d}, {k} generators"));
                    break 'outer;
                }
            }
        }
        report.push(format!("dsw:unit:k={k}"), ok_unit, detail.clone());
        report.push(format!("dsw:central:k={k}"), ok_central, detail.clone());
        report.push(format!("dsw:weighted:k={k}"), ok_weighted, detail.clone());
    }
    Ok(report)
}

/// Eulerian idempotent: the convolution-logarithm construction agrees
/// with the descent-class formula, is idempotent, lands in the Lie
/// subspace, and the bracketing identities hold with random weights.
pub fn suite_uea(max_degree: usize, seed: u64) -> Report {
    let mut rng = Rng::new(seed);
    let mut report = Report::new();
    let n_max = max_degree.min(6);
    let mut descent_ok = true;
    let mut idem_ok = true;
    let mut lie_ok = true;
    for n in 1..=n_max {
        let word = Word((0..n as u8).collect());
        let mu = eulerian_idempotent(&word).expect("nonempty");
        for p in permutations(n) {
            let w = Word(p.iter().map(|&i| i as u8).collect());
            if mu.coeff(&w) != mu_sigma(n, &p) {
                descent_ok = false;
            }
        }
        if eulerian_idempotent_poly(&mu).expect("no constant") != mu {
            idem_ok = false;
        }
        if !is_lie(&mu) {
            lie_ok = false;
        }
    }
    report.check("uea:descent-formula", descent_ok);
    report.check("uea:idempotent", idem_ok);
    report.check("uea:lie", lie_ok);
    let mut ids_ok = true;
    for n in 1..=n_max.min(5) {
        let w = random_weights(&mut rng, n);
        if !verify_uea_identities(n, &w) {
            ids_ok = false;
        }
    }
    report.check("uea:bracket-identities", ids_ok);
    report
}

/// One golden splitting: (tree, expected (generator name, coefficient
/// numerator, cofactor tree) rows, common denominator 7).
pub struct GoldenSplit {
    pub tree: &'static str,
    pub rows: &'static [(u8, i64, &'static str)],
}

/// A degree-7 multiplicity-free monomial whose splitting is known in
/// closed form.
pub const GOLDEN_SPLIT_MONOMIAL: GoldenSplit = GoldenSplit {
    tree: "[[X1,[X2,[X3,X4]]],[[X5,X6],X7]]",
    rows: &[
        (0, 3, "[[X2,[X3,X4]],[[X5,X6],X7]]"),
        (1, -3, "[[X3,X4],[X1,[[X5,X6],X7]]]"),
        (2, 3, "[X4,[X2,[X1,[[X5,X6],X7]]]]"),
        (3, -3, "[X3,[X2,[X1,[[X5,X6],X7]]]]"),
        (4, -4, "[X6,[X7,[X1,[X2,[X3,X4]]]]]"),
        (5, 4, "[X5,[X7,[X1,[X2,[X3,X4]]]]]"),
        (6, 4, "[[X5,X6],[X1,[X2,[X3,X4]]]]"),
    ],
};

/// The degree-7 left-iterated bracket with its known splitting.
pub const GOLDEN_SPLIT_LEFT_COMB: GoldenSplit = GoldenSplit {
    tree: "[X1,[X2,[X3,[X4,[X5,[X6,X7]]]]]]",
    rows: &[
        (0, 6, "[X2,[X3,[X4,[X5,[X6,X7]]]]]"),
        (1, 1, "[X1,[X3,[X4,[X5,[X6,X7]]]]]"),
        (2, 1, "[[X1,X2],[X4,[X5,[X6,X7]]]]"),
        (3, 1, "[[[X1,X2],X3],[X5,[X6,X7]]]"),
        (4, 1, "[[[[X1,X2],X3],X4],[X6,X7]]"),
        (5, 1, "[[[[[X1,X2],X3],X4],X5],X7]"),
        (6, -1, "[[[[[X1,X2],X3],X4],X5],X6]"),
    ],
};

/// Checks a splitting against its golden rows.
pub fn check_golden(golden: &GoldenSplit, split: &Splitting) -> bool {
    let alpha = Alphabet::new(7);
    let seventh = Rational::new(1, 7);
    for &(g, num, tree_src) in golden.rows {
        let expected = parse_lie_tree(tree_src, &alpha)
            .expect("golden tree parses")
            .expand()
            .scale(&(&Rational::from_int(num) * &seventh));
        if split.part(g) != expected {
            return false;
        }
    }
    split.parts().count() == golden.rows.len()
}

/// Splitting identities: the golden examples, reconstruction as a section
/// of the commutator on random Lie elements, the monomial fast path
/// against the expansion route, and the switch relation between the left
/// and right splittings on Lie elements.
pub fn suite_split(max_degree: usize, seed: u64) -> Result<Report, LieError> {
    let mut rng = Rng::new(seed);
    let mut report = Report::new();

    let alpha = Alphabet::new(7);
    for (name, golden) in [
        ("split:golden-monomial", &GOLDEN_SPLIT_MONOMIAL),
        ("split:golden-left-comb", &GOLDEN_SPLIT_LEFT_COMB),
    ] {
        let tree = parse_lie_tree(golden.tree, &alpha)?;
        let split = split_monomial(&tree, None)?;
        report.check(name, check_golden(golden, &split));
        // and the expansion route produces the same splitting
        report.check(
            format!("{name}:expansion"),
            delta_l(&tree.expand(), false)? == split,
        );
    }

    let mut recon_ok = true;
    let mut switch_ok = true;
    let mut detail = None;
    'outer: for k in [2usize, 3] {
        for d in 2..=max_degree.max(2) {
            for _ in 0..10 {
                let p = rng.lie_element(d, k, 3);
                if p.is_zero() {
                    continue;
                }
                let s = delta_l(&p, false)?;
                if reconstruct(&s) != p {
                    recon_ok = false;
                }
                let r = delta_r(&p, false)?;
                if r.tensor_pairs() != s.switched_pairs() {
                    switch_ok = false;
                }
                if !(recon_ok && switch_ok) {
                    detail = Some(format!("degree {d}, {k} generators"));
                    break 'outer;
                }
            }
        }
    }
    report.push("split:reconstruct", recon_ok, detail.clone());
    report.push("split:switch", switch_ok, detail);

    let mut mono_ok = true;
    for d in 2..=max_degree.min(7).max(2) {
        for _ in 0..10 {
            // multiplicity-free: a random bracketing of X1..Xd
            let tree = random_permutation_tree(&mut rng, d);
            let direct = split_monomial(&tree, None)?;
            if delta_l(&tree.expand(), false)? != direct {
                mono_ok = false;
            }
            // and with random nonzero-total weights
            let w = loop {
                let w = random_weights(&mut rng, d);
                let total: Rational = (0..d as u8)
                    .map(|g| w.weight(g).clone())
                    .fold(Rational::zero(), |a, b| a + b);
                if !total.is_zero() {
                    break w;
                }
            };
            if crate::splitting::delta_l_weighted(&tree.expand(), &w)?
                != split_monomial(&tree, Some(&w))?
            {
                mono_ok = false;
            }
        }
    }
    report.check("split:monomial-fast-path", mono_ok);
    Ok(report)
}

/// A random bracketing whose leaves are X1..Xd in random order.
pub fn random_permutation_tree(rng: &mut Rng, d: usize) -> crate::lieops::LieTree {
    use crate::lieops::LieTree;
    fn build(rng: &mut Rng, labels: &[u8]) -> LieTree {
        if labels.len() == 1 {
            return LieTree::leaf(labels[0]);
        }
        let split = rng.below(labels.len() - 1) + 1;
        LieTree::bracket(build(rng, &labels[..split]), build(rng, &labels[split..]))
    }
    let mut labels: Vec<u8> = (0..d as u8).collect();
    // Fisher-Yates
    for i in (1..labels.len()).rev() {
        let j = rng.below(i + 1);
        labels.swap(i, j);
    }
    build(rng, &labels)
}

/// Resolvent calculus: inversion symmetry, starting decompositions, the
/// interlaced-product decomposition, the λ-degree bound, and integration
/// back to the logarithm on random perturbations of 1.
pub fn suite_resolvent(max_degree: usize, seed: u64) -> Result<Report, LieError> {
    let n = max_degree.max(2);
    let mut report = Report::new();

    let ex = crate::freealg::GradedSeries::gen(0, n).exp()?;
    let ey = crate::freealg::GradedSeries::gen(1, n).exp()?;
    report.check("resolvent:inversion:exp", resolvent::verify_inversion(&ex.mul(&ey))?);
    report.merge(resolvent::starting_decomposition(n)?);
    report.merge(resolvent::resolvent_decomposition(n, seed)?);
    report.check(
        "resolvent:lambda-degree-bound",
        resolvent::resolvent(&ex.mul(&ey))?.lambda_degree_within_bound(),
    );

    let mut rng = Rng::new(seed);
    let mut log_ok = true;
    let mut inv_ok = true;
    for _ in 0..5 {
        let p = rng.perturbation_of_one(n.min(7), 2);
        let r = resolvent::resolvent(&p)?;
        if resolvent::integrate_series(&r) != p.log()? {
            log_ok = false;
        }
        if !resolvent::verify_inversion(&p)? {
            inv_ok = false;
        }
    }
    report.check("resolvent:integral-is-log", log_ok);
    report.check("resolvent:inversion:random", inv_ok);

    let (_, w_report) = resolvent::w_series(n)?;
    report.merge(w_report);
    Ok(report)
}

/// All four BCH generators agree exactly and produce a Lie series.
pub fn suite_bch(max_degree: usize) -> Result<Report, LieError> {
    let n = max_degree.max(1);
    let mut report = Report::new();
    let reference = bch_log(n)?;
    for method in [
        BchMethod::Dynkin,
        BchMethod::DynkinVariant,
        BchMethod::Resolvent,
    ] {
        report.check(
            format!("bch:agree:{method:?}"),
            crate::bchgen::bch(n, method)? == reference,
        );
    }
    report.check(
        "bch:agree:weighted-projection",
        crate::bchgen::bch_via_weighted_projection(n)? == reference,
    );
    report.check("bch:lie", crate::lieops::is_lie_series(&reference));
    Ok(report)
}

/// Kashiwara-Vergne odd part: the supporting identities and both
/// conditions for all three variants.
pub fn suite_kv(max_degree: usize) -> Result<Report, LieError> {
    let n = max_degree.max(1);
    let mut report = Report::new();
    report.merge(kv::verify_lemma_oddkv(n)?);
    report.merge(kv::verify_kv_conditions(n)?);
    Ok(report)
}

/// The trace reformulation identity on random single-Z monomials.
pub fn suite_trace(max_degree: usize, seed: u64) -> Report {
    let mut report = kv::verify_trace_remark(max_degree.max(2), 50, seed);
    // the trace kills commutators of random polynomials
    let mut rng = Rng::new(seed ^ 0x5EED);
    let mut ok = true;
    for d in 2..=max_degree.min(6).max(2) {
        let p = rng.lie_element(d, 2, 2);
        let q = rng.lie_element(d, 2, 2);
        if !p.commutator(&q).formal_trace().is_zero() {
            ok = false;
        }
        if !is_lie(&p) || !p.formal_trace().is_zero() {
            // expanded Lie elements of degree >= 2 are traceless
            ok = false;
        }
    }
    report.check("trace:kills-commutators", ok);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_small() {
        for name in SUITE_NAMES {
            let r = run_suite(name, 4, 42).unwrap();
            assert!(r.all_pass(), "suite {name}:\n{r}");
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("nope", 3, 1).is_err());
    }
}
