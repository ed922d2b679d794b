//! Small deterministic pseudo-random generator for the property suites.
//!
//! The verification suites must produce byte-identical output for a fixed
//! seed, so a self-contained xorshift keeps the whole pipeline
//! reproducible without pulling in an external RNG.

use crate::freealg::Gen;
use crate::lieops::LieTree;
use crate::scalar::Rational;

/// xorshift64* with a nonzero state.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            state: seed.wrapping_mul(0x9E3779B97F4A7C15) | 1,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform in `0..bound`.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// A small nonzero rational with numerator in ±1..=5 and denominator
    /// in 1..=4.
    pub fn small_rational(&mut self) -> Rational {
        let num = self.below(5) as i64 + 1;
        let den = self.below(4) as i64 + 1;
        let sign = if self.below(2) == 0 { 1 } else { -1 };
        Rational::new(sign * num, den)
    }

    /// A random binary bracketing of the given degree with leaves drawn
    /// from `k` generators.
    pub fn lie_tree(&mut self, degree: usize, k: usize) -> LieTree {
        assert!(degree >= 1);
        if degree == 1 {
            return LieTree::leaf(self.below(k) as Gen);
        }
        let split = self.below(degree - 1) + 1;
        let left = self.lie_tree(split, k);
        let right = self.lie_tree(degree - split, k);
        LieTree::bracket(left, right)
    }

    /// A random Lie element: a small rational combination of random
    /// bracketings, homogeneous of `degree`.
    pub fn lie_element(&mut self, degree: usize, k: usize, terms: usize) -> crate::freealg::NcPoly {
        let mut out = crate::freealg::NcPoly::zero();
        for _ in 0..terms {
            let t = self.lie_tree(degree, k);
            out = out.add(&t.expand().scale(&self.small_rational()));
        }
        out
    }

    /// A random formal perturbation of 1 over `k` generators up to the
    /// cutoff: constant term one, small random homogeneous parts above.
    pub fn perturbation_of_one(&mut self, cutoff: usize, k: usize) -> crate::freealg::GradedSeries {
        use crate::freealg::{NcPoly, Word};
        let mut s = crate::freealg::GradedSeries::one(cutoff);
        for d in 1..=cutoff {
            let mut comp = NcPoly::zero();
            // a couple of random words per degree
            for _ in 0..2 {
                let letters: Vec<Gen> = (0..d).map(|_| self.below(k) as Gen).collect();
                comp.add_term(Word(letters), self.small_rational());
            }
            s.set_component(d, comp);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lieops::is_lie;

    #[test]
    fn deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_trees_are_lie() {
        let mut rng = Rng::new(7);
        for d in 1..=5 {
            let p = rng.lie_element(d, 2, 3);
            assert!(is_lie(&p));
        }
    }
}
