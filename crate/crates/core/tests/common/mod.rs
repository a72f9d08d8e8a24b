//! Exact arithmetic in a real quadratic field ℚ(√d): an evaluation oracle
//! for formulas at quadratic irrational points that shares no code with the
//! deciders under test.

use std::cmp::Ordering;

use farey_core::rat::{rat, rat_int, Rat};
use farey_core::Formula;

/// a + b·√d with rational a, b and fixed nonsquare d ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quad {
    a: Rat,
    b: Rat,
    d: u64,
}

fn is_square(d: u64) -> bool {
    let r = (d as f64).sqrt().round() as u64;
    r * r == d
}

impl Quad {
    pub fn new(a: Rat, b: Rat, d: u64) -> Quad {
        assert!(d >= 2 && !is_square(d), "d must be a nonsquare >= 2");
        Quad { a, b, d }
    }

    fn rational(a: Rat, d: u64) -> Quad {
        Quad {
            a,
            b: rat_int(0),
            d,
        }
    }

    /// (√5 − 1)/2, the golden ratio's fractional part.
    pub fn golden_conjugate() -> Quad {
        Quad::new(rat(-1, 2), rat(1, 2), 5)
    }

    pub fn sqrt2_minus_1() -> Quad {
        Quad::new(rat_int(-1), rat_int(1), 2)
    }

    pub fn mul(&self, other: &Quad) -> Quad {
        assert_eq!(self.d, other.d);
        let d = Rat::from_integer(self.d.into());
        Quad {
            a: &self.a * &other.a + &self.b * &other.b * &d,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        }
    }

    pub fn add(&self, other: &Quad) -> Quad {
        assert_eq!(self.d, other.d);
        Quad {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d,
        }
    }

    pub fn one_minus(&self) -> Quad {
        Quad {
            a: rat_int(1) - &self.a,
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Exact sign of a + b√d, decided by comparing a² with d·b² when the
    /// two terms pull in opposite directions. Irrationality of √d rules out
    /// a tie there.
    pub fn sign(&self) -> Ordering {
        let zero = rat_int(0);
        let sa = self.a.cmp(&zero);
        let sb = self.b.cmp(&zero);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            _ => {
                let aa = &self.a * &self.a;
                let dbb = &self.b * &self.b * Rat::from_integer(self.d.into());
                match aa.cmp(&dbb) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => {
                        unreachable!("√{} would be rational", self.d)
                    }
                }
            }
        }
    }

    fn is_at_least_one(&self) -> bool {
        let shifted = Quad {
            a: &self.a - rat_int(1),
            b: self.b.clone(),
            d: self.d,
        };
        shifted.sign() != Ordering::Less
    }
}

/// Structural evaluation of a formula at a quadratic irrational, entirely
/// inside ℚ(√d).
pub fn eval_formula_quad(f: &Formula, x: &Quad) -> Quad {
    match f {
        Formula::Zero => Quad::rational(rat_int(0), x.d),
        Formula::Gen => x.clone(),
        Formula::Star(inner) => eval_formula_quad(inner, x).one_minus(),
        Formula::Plus(lhs, rhs) => {
            let sum = eval_formula_quad(lhs, x).add(&eval_formula_quad(rhs, x));
            if sum.is_at_least_one() {
                Quad::rational(rat_int(1), x.d)
            } else {
                sum
            }
        }
    }
}

/// Internal consistency checks for the oracle itself: the defining
/// quadratic identities and a few sign decisions.
pub fn quad_self_check() {
    let golden = Quad::golden_conjugate();
    // θ² = 1 − θ
    assert_eq!(golden.mul(&golden), golden.one_minus());
    assert_eq!(golden.sign(), Ordering::Greater);
    assert!(!golden.is_at_least_one());

    let silver = Quad::sqrt2_minus_1();
    // θ² = 1 − 2θ
    assert_eq!(silver.mul(&silver), silver.add(&silver).one_minus());
    assert_eq!(silver.sign(), Ordering::Greater);
    assert!(!silver.is_at_least_one());

    // x ⊕ x at θ = golden conjugate saturates: 2θ > 1
    let two_theta = golden.add(&golden);
    assert!(two_theta.is_at_least_one());
    // while 2(√2−1) < 1
    assert!(!silver.add(&silver).is_at_least_one());
}
