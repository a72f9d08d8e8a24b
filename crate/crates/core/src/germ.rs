//! Word problems modulo the prime quotients at rational points.
//!
//! A formula's class in the quotient by a maximal ideal at rational ξ is its
//! value f(ξ); the class modulo a germ ideal at p/q from one side is the
//! germ (value, one-sided slope). Quotients at irrational points delegate to
//! the continued-fraction decider. The finite-dimensional and matrix-algebra
//! parameters attached to these quotients are computed exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::contfrac::ThetaSpec;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::pwl::{value_and_slope, Side};
use crate::rat::{rat, Rat};

/// A prime quotient of the formula algebra: evaluation at a rational point,
/// evaluation at an irrational point, or a one-sided germ at a rational.
#[derive(Clone, Debug)]
pub enum PrimeIdealSpec {
    MaximalRational(Rat),
    MaximalIrrational(ThetaSpec),
    GermIdeal { point: Rat, side: Side },
}

/// Value and one-sided slope of a function at a rational point: the full
/// invariant of its class modulo the corresponding germ ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub point: Rat,
    pub side: Side,
    pub value: Rat,
    pub slope: BigInt,
}

/// Germ of f_f at `point` from `side`. Right germs exist for 0 ≤ point < 1,
/// left germs for 0 < point ≤ 1.
pub fn germ_at(f: &Formula, point: &Rat, side: Side) -> Result<Germ> {
    let (value, slope) = value_and_slope(f, point, side)?;
    debug_assert!(
        (&value * Rat::from_integer(point.denom().clone())).is_integer(),
        "value denominator must divide the point denominator"
    );
    Ok(Germ {
        point: point.clone(),
        side,
        value,
        slope,
    })
}

/// Equality of φ and ψ in the chosen prime quotient.
pub fn equal_in_prime_quotient(
    phi: &Formula,
    psi: &Formula,
    ideal: &PrimeIdealSpec,
) -> Result<bool> {
    match ideal {
        PrimeIdealSpec::MaximalRational(xi) => {
            let a = crate::pwl::eval_formula(phi, xi)?;
            let b = crate::pwl::eval_formula(psi, xi)?;
            Ok(a == b)
        }
        PrimeIdealSpec::MaximalIrrational(spec) => crate::effros_shen::equal_cf(phi, psi, spec),
        PrimeIdealSpec::GermIdeal { point, side } => {
            let a = germ_at(phi, point, *side)?;
            let b = germ_at(psi, point, *side)?;
            Ok(a == b)
        }
    }
}

/// Parameters (k, q) of the matrix-over-circle algebra presented by the germ
/// quotient at p/q: k is (−p)⁻¹ mod q for a right germ and p⁻¹ mod q for a
/// left germ, always in {1, …, q−1}.
pub fn bl_parameters(p_over_q: &Rat, side: Side) -> Result<(BigUint, BigUint)> {
    if !p_over_q.is_positive() || *p_over_q >= Rat::one() {
        return Err(Error::NotInteriorPoint(Box::new(p_over_q.clone())));
    }
    let p = p_over_q.numer();
    let q = p_over_q.denom();
    let ext = p.extended_gcd(q);
    debug_assert!(ext.gcd.is_one(), "reduced fraction has coprime parts");
    // ext.x satisfies ext.x·p ≡ 1 (mod q)
    let inverse = ext.x.mod_floor(q);
    let k = match side {
        Side::Right => (-&inverse).mod_floor(q),
        Side::Left => inverse,
    };
    debug_assert!(k.is_positive() && k < *q);
    Ok((
        k.to_biguint().expect("k is positive"),
        q.to_biguint().expect("q is positive"),
    ))
}

/// The coordinate pair of a right germ at 3/5 in the lexicographic group
/// presentation with order unit (5, −2): (value, slope) ↦ (5·value,
/// (slope − 10·value)/5). Both coordinates must come out integral.
pub fn lex_coordinates_3_5(germ: &Germ) -> Result<(BigInt, BigInt)> {
    if germ.point != rat(3, 5) || germ.side != Side::Right {
        return Err(Error::WrongGermSite {
            found: format!("{}{}", crate::rat::rat_to_string(&germ.point), germ.side),
        });
    }
    let five = Rat::from_integer(BigInt::from(5));
    let first = &germ.value * &five;
    let second = (Rat::from_integer(germ.slope.clone())
        - Rat::from_integer(BigInt::from(10)) * &germ.value)
        / five;
    if !first.is_integer() || !second.is_integer() {
        return Err(Error::NonIntegralCoordinate {
            value: Box::new(germ.value.clone()),
            slope: germ.slope.clone(),
        });
    }
    Ok((first.to_integer(), second.to_integer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;
    use num_traits::Zero;

    fn p(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn germ_examples() {
        let g = germ_at(&p("(X+X)"), &rat(1, 2), Side::Right).unwrap();
        assert_eq!((g.value, g.slope), (rat_int(1), BigInt::zero()));
        let g = germ_at(&p("(X+X)"), &rat(1, 2), Side::Left).unwrap();
        assert_eq!((g.value, g.slope), (rat_int(1), BigInt::from(2)));
        let g = germ_at(&p("X"), &rat_int(0), Side::Right).unwrap();
        assert_eq!((g.value, g.slope), (rat_int(0), BigInt::one()));
    }

    #[test]
    fn germ_rejects_outward_sides() {
        assert!(germ_at(&p("X"), &rat_int(0), Side::Left).is_err());
        assert!(germ_at(&p("X"), &rat_int(1), Side::Right).is_err());
        assert!(germ_at(&p("X"), &rat(3, 2), Side::Right).is_err());
    }

    #[test]
    fn quotient_equalities() {
        let at_half = PrimeIdealSpec::MaximalRational(rat(1, 2));
        assert!(equal_in_prime_quotient(&p("X"), &p("X*"), &at_half).unwrap());
        let right_half = PrimeIdealSpec::GermIdeal {
            point: rat(1, 2),
            side: Side::Right,
        };
        assert!(!equal_in_prime_quotient(&p("X"), &p("X*"), &right_half).unwrap());
        let right_34 = PrimeIdealSpec::GermIdeal {
            point: rat(3, 4),
            side: Side::Right,
        };
        assert!(equal_in_prime_quotient(&p("(X+X)"), &p("0*"), &right_34).unwrap());
        let golden =
            PrimeIdealSpec::MaximalIrrational(ThetaSpec::periodic_cf(vec![0], vec![1]).unwrap());
        assert!(equal_in_prime_quotient(&p("(X+X)"), &p("0*"), &golden).unwrap());
    }

    #[test]
    fn germ_quotient_is_a_congruence_on_samples() {
        let site = |f: &Formula| germ_at(f, &rat(2, 5), Side::Left).unwrap();
        // pairs equal in the germ quotient at 2/5 from the left; the last one
        // agrees only on [1/3, 1], so the congruence is not just pointwise
        let pairs = [("X", "(X+0)"), ("(X+X*)", "0*"), ("((X+X)+X)", "0*")];
        for (a, b) in pairs {
            let (fa, fb) = (p(a), p(b));
            assert_eq!(site(&fa), site(&fb));
            // compatibility with star and with ⊕ by a fixed formula
            assert_eq!(
                site(&Formula::star(fa.clone())),
                site(&Formula::star(fb.clone()))
            );
            let ctx = p("(X*+X)");
            assert_eq!(
                site(&Formula::plus(fa, ctx.clone())),
                site(&Formula::plus(fb, ctx))
            );
        }
    }

    #[test]
    fn rational_quotient_values_have_denominator_dividing_q() {
        let xi = rat(3, 7);
        for s in ["X", "(X+X)", "(X*+(X+X))*", "((X|0)&X*)", "3.X*"] {
            let v = crate::pwl::eval_formula(&p(s), &xi).unwrap();
            assert!(
                (v * rat_int(7)).is_integer(),
                "value of {s} at 3/7 outside (1/7)·ℤ"
            );
        }
    }

    #[test]
    fn matrix_parameters() {
        assert_eq!(
            bl_parameters(&rat(3, 5), Side::Right).unwrap(),
            (big(3), big(5))
        );
        assert_eq!(
            bl_parameters(&rat(1, 2), Side::Right).unwrap(),
            (big(1), big(2))
        );
        assert_eq!(
            bl_parameters(&rat(2, 5), Side::Left).unwrap(),
            (big(3), big(5))
        );
        assert_eq!(
            bl_parameters(&rat(2, 5), Side::Right).unwrap(),
            (big(2), big(5))
        );
        assert!(matches!(
            bl_parameters(&rat_int(0), Side::Right),
            Err(Error::NotInteriorPoint(_))
        ));
        assert!(matches!(
            bl_parameters(&rat_int(1), Side::Left),
            Err(Error::NotInteriorPoint(_))
        ));
    }

    #[test]
    fn lex_coordinates_at_three_fifths() {
        let gen = germ_at(&p("X"), &rat(3, 5), Side::Right).unwrap();
        assert_eq!(
            lex_coordinates_3_5(&gen).unwrap(),
            (BigInt::from(3), BigInt::from(-1))
        );
        let zero = germ_at(&p("0"), &rat(3, 5), Side::Right).unwrap();
        assert_eq!(
            lex_coordinates_3_5(&zero).unwrap(),
            (BigInt::zero(), BigInt::zero())
        );
        let unit = germ_at(&p("0*"), &rat(3, 5), Side::Right).unwrap();
        assert_eq!(
            lex_coordinates_3_5(&unit).unwrap(),
            (BigInt::from(5), BigInt::from(-2))
        );
    }

    #[test]
    fn lex_coordinates_reject_wrong_site_and_synthetic_germs() {
        let elsewhere = germ_at(&p("X"), &rat(1, 2), Side::Right).unwrap();
        assert!(matches!(
            lex_coordinates_3_5(&elsewhere),
            Err(Error::WrongGermSite { .. })
        ));
        let left = germ_at(&p("X"), &rat(3, 5), Side::Left).unwrap();
        assert!(matches!(
            lex_coordinates_3_5(&left),
            Err(Error::WrongGermSite { .. })
        ));
        let synthetic = Germ {
            point: rat(3, 5),
            side: Side::Right,
            value: rat(1, 2),
            slope: BigInt::one(),
        };
        assert!(matches!(
            lex_coordinates_3_5(&synthetic),
            Err(Error::NonIntegralCoordinate { .. })
        ));
    }
}
