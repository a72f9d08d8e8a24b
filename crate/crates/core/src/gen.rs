//! Deterministic pseudo-random formulas for tests and benchmarks.
//!
//! The generator is seeded and self-contained so that a reported seed
//! reproduces the exact same stream on any platform, independent of any
//! external randomness library's version. It is not for cryptography and
//! uniformity is approximate; both are fine for exercising deciders.

use crate::formula::Formula;
use crate::rat::Rat;

/// SplitMix64 stream; a fixed seed fixes the whole stream.
pub struct Generator {
    state: u64,
}

impl Generator {
    pub fn new(seed: u64) -> Generator {
        Generator { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform-enough value in 0..n (n ≥ 1); modulo bias is irrelevant here.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n >= 1);
        self.next_u64() % n
    }

    /// Random formula whose length (in core-syntax characters) is at most
    /// `budget`; any budget ≥ 1 yields a formula.
    pub fn formula(&mut self, budget: u64) -> Formula {
        if budget >= 5 && self.below(100) < 55 {
            // plus costs the two sides and three characters
            let inner = budget - 3;
            let left = 1 + self.below(inner - 1);
            return Formula::plus(self.formula(left), self.formula(inner - left));
        }
        if budget >= 2 && self.below(100) < 40 {
            return Formula::star(self.formula(budget - 1));
        }
        if self.below(100) < 80 {
            Formula::Gen
        } else {
            Formula::Zero
        }
    }

    /// Random rational c/d in [0,1] with 1 ≤ d ≤ max_den.
    pub fn rational(&mut self, max_den: u64) -> Rat {
        let d = 1 + self.below(max_den);
        let c = self.below(d + 1);
        Rat::new(c.into(), d.into())
    }

    /// Random interior rational, 0 < c/d < 1 (needs max_den ≥ 2).
    pub fn interior_rational(&mut self, max_den: u64) -> Rat {
        debug_assert!(max_den >= 2);
        let d = 2 + self.below(max_den - 1);
        let c = 1 + self.below(d - 1);
        Rat::new(c.into(), d.into())
    }

    /// A formula with the same semantics as `f` but (usually) different
    /// syntax: a few applications of ⊕-unit, double-negation, commutation,
    /// and reassociation rewrites at random positions.
    pub fn equivalent_variant(&mut self, f: &Formula) -> Formula {
        let mut out = f.clone();
        for _ in 0..=self.below(3) {
            out = self.rewrite(out);
        }
        out
    }

    fn rewrite(&mut self, f: Formula) -> Formula {
        match self.below(6) {
            0 => Formula::plus(f, Formula::Zero),
            1 => Formula::plus(Formula::Zero, f),
            2 => Formula::star(Formula::star(f)),
            _ => match f {
                Formula::Plus(lhs, rhs) => {
                    match self.below(4) {
                        // commute
                        0 => Formula::plus(*rhs, *lhs),
                        // reassociate when the left side is itself a sum
                        1 => {
                            if let Formula::Plus(a, b) = *lhs {
                                Formula::plus(*a, Formula::plus(*b, *rhs))
                            } else {
                                Formula::plus(self.rewrite(*lhs), *rhs)
                            }
                        }
                        2 => Formula::plus(self.rewrite(*lhs), *rhs),
                        _ => Formula::plus(*lhs, self.rewrite(*rhs)),
                    }
                }
                Formula::Star(inner) => Formula::star(self.rewrite(*inner)),
                leaf => Formula::star(Formula::star(leaf)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwl::semantics;

    #[test]
    fn streams_are_reproducible() {
        let mut a = Generator::new(42);
        let mut b = Generator::new(42);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert_ne!(Generator::new(1).next_u64(), Generator::new(2).next_u64());
    }

    #[test]
    fn formulas_respect_the_length_budget() {
        let mut g = Generator::new(7);
        for budget in [1u64, 2, 5, 12, 30, 60] {
            for _ in 0..50 {
                let f = g.formula(budget);
                assert!(f.length() <= budget, "{f} exceeds {budget}");
            }
        }
    }

    #[test]
    fn generated_formulas_usually_mention_the_generator() {
        let mut g = Generator::new(11);
        let with_gen = (0..200)
            .filter(|_| {
                let f = g.formula(25);
                f.print().contains('X')
            })
            .count();
        assert!(with_gen > 150, "only {with_gen} of 200 mention X");
    }

    #[test]
    fn rationals_stay_in_range() {
        let mut g = Generator::new(3);
        for _ in 0..200 {
            let r = g.rational(17);
            assert!(crate::rat::in_unit_interval(&r));
            let s = g.interior_rational(17);
            assert!(s > crate::rat::rat_int(0) && s < crate::rat::rat_int(1));
        }
    }

    #[test]
    fn variants_preserve_semantics() {
        let mut g = Generator::new(9);
        let mut changed = 0;
        for _ in 0..100 {
            let f = g.formula(20);
            let v = g.equivalent_variant(&f);
            assert_eq!(semantics(&f), semantics(&v), "variant of {f} diverged");
            if v.print() != f.print() {
                changed += 1;
            }
        }
        assert!(changed > 60, "only {changed} variants changed the syntax");
    }
}
