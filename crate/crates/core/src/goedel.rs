//! Hat functions, formula synthesis for clipped lines, and bounded
//! ideal-membership testing against a pluggable enumeration.
//!
//! The synthesis route and the direct piecewise-linear route are independent;
//! `epsilon_formula` verifies every synthesized formula against the clipped
//! line it is supposed to denote and panics on any mismatch, so a successful
//! return is a certificate.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::pwl::{clipped_line, semantics, LinearPiece, PwlFunction};
use crate::rat::{rat, rat_int, Rat};

/// The k-th hat function, assembled directly from its corner points:
/// zero outside [1/(k+1), 1/(k−1)], peak value 1/k at 1/k. The 0th hat is
/// the zero function and the 1st rises from (1/2, 0) to (1, 1).
pub fn hat(k: u64) -> PwlFunction {
    let kk = BigInt::from(k);
    let unit_frac = |den: BigInt| Rat::new(BigInt::one(), den);
    let (breakpoints, pieces) = match k {
        0 => return PwlFunction::constant_zero(),
        1 => (
            vec![rat_int(0), rat(1, 2), rat_int(1)],
            vec![LinearPiece::new(0, 0), LinearPiece::new(2, -1)],
        ),
        2 => (
            vec![rat_int(0), rat(1, 3), rat(1, 2), rat_int(1)],
            vec![
                LinearPiece::new(0, 0),
                LinearPiece::new(3, -1),
                LinearPiece::new(-1, 1),
            ],
        ),
        _ => (
            vec![
                rat_int(0),
                unit_frac(&kk + BigInt::one()),
                unit_frac(kk.clone()),
                unit_frac(&kk - BigInt::one()),
                rat_int(1),
            ],
            vec![
                LinearPiece::new(0, 0),
                LinearPiece::new(&kk + BigInt::one(), -1),
                LinearPiece::new(BigInt::one() - &kk, 1),
                LinearPiece::new(0, 0),
            ],
        ),
    };
    PwlFunction::from_segments_checked(breakpoints, pieces).expect("hat segments are valid")
}

/// Formula for clip(mx − c) with 0 ≤ c ≤ m − 1, by structural recursion:
/// c = 0 is m.X, c = m−1 is (m.(X*))*, common factors of (m, c) split off as
/// scalars, common factors of (m, c+1) as ⊙-powers, and otherwise one step
/// of the two-term decomposition
///   clip(mx − c) = (x ⊖ clip((m−1)x − (c−1))*) ⊕ (clip((m−1)x − c) ∧ x*)
/// reduces m by one. Any odd m splits after at most one such step, so sizes
/// stay near-linear in m.
fn r_formula(m: u64, c: u64, memo: &mut HashMap<(u64, u64), Formula>) -> Formula {
    debug_assert!(m >= 1 && c < m);
    if let Some(f) = memo.get(&(m, c)) {
        return f.clone();
    }
    let result = if c == 0 {
        Formula::scalar_multiple(m, &Formula::Gen).expect("m >= 1")
    } else if c == m - 1 {
        Formula::star(Formula::scalar_multiple(m, &Formula::star(Formula::Gen)).expect("m >= 1"))
    } else {
        let g = m.gcd(&c);
        let k = m.gcd(&(c + 1));
        if g > 1 {
            Formula::scalar_multiple(g, &r_formula(m / g, c / g, memo)).expect("g >= 2")
        } else if k > 1 {
            let base = r_formula(m / k, (c + 1) / k - 1, memo);
            let mut acc = base.clone();
            for _ in 1..k {
                acc = Formula::odot(acc, base.clone());
            }
            acc
        } else {
            let shifted = r_formula(m - 1, c - 1, memo);
            let same = r_formula(m - 1, c, memo);
            Formula::plus(
                Formula::ominus(Formula::Gen, Formula::star(shifted)),
                Formula::meet(same, Formula::star(Formula::Gen)),
            )
        }
    };
    memo.insert((m, c), result.clone());
    result
}

/// A formula denoting the clipped line 0∨(1∧(mx+n)). Negative slopes go
/// through clip(−mx+n) = 1 − clip(mx+1−n); lines missing (0,1) on [0,1]
/// come back as the constants. The result is verified against the directly
/// built piecewise-linear function before being returned.
pub fn epsilon_formula(m: i64, n: i64) -> Result<Formula> {
    if m == 0 {
        return Err(Error::ZeroSlope);
    }
    let formula = if m < 0 {
        let reflected = 1i64
            .checked_sub(n)
            .ok_or_else(|| Error::TooLarge("epsilon intercept overflows".into()))?;
        Formula::star(epsilon_formula(-m, reflected)?)
    } else if n >= 1 {
        Formula::star(Formula::Zero)
    } else if n <= -m {
        Formula::Zero
    } else {
        let mut memo = HashMap::new();
        r_formula(m as u64, n.unsigned_abs(), &mut memo)
    };
    assert_eq!(
        semantics(&formula),
        clipped_line(&BigInt::from(m), &BigInt::from(n)),
        "synthesized formula must denote clip({m}x + {n})"
    );
    Ok(formula)
}

/// Formula whose semantics is exactly hat(k): the two base cases are fixed
/// formulas, and k ≥ 2 is the meet of the rising clipped line (k+1)x − 1 and
/// the falling clipped line −(k−1)x + 1.
pub fn beta(k: u64) -> Formula {
    match k {
        0 => Formula::star(Formula::plus(Formula::Gen, Formula::star(Formula::Gen))),
        1 => Formula::star(Formula::plus(
            Formula::star(Formula::Gen),
            Formula::star(Formula::Gen),
        )),
        _ => {
            let m = i64::try_from(k)
                .ok()
                .and_then(|v| v.checked_add(1))
                .expect("hat index fits in i64");
            let rising = epsilon_formula(m, -1).expect("slope k+1 is nonzero");
            let falling = epsilon_formula(-(m - 2), 1).expect("slope -(k-1) is nonzero");
            Formula::meet(rising, falling)
        }
    }
}

/// A total map i ↦ η(i) of naturals whose range stays clear of 0 and 1,
/// optionally with a decision procedure for range membership.
pub struct EnumerationOracle {
    description: String,
    eta: Box<dyn Fn(u64) -> u64 + Send + Sync>,
    range: Option<Box<dyn Fn(u64) -> bool + Send + Sync>>,
}

impl EnumerationOracle {
    /// η(i) = step·i + offset with its decidable range; needs step ≥ 1 and
    /// offset ≥ 2 so that 0 and 1 never appear.
    pub fn affine(step: u64, offset: u64) -> Result<EnumerationOracle> {
        if step == 0 || offset < 2 {
            return Err(Error::InvalidEnumeration(format!(
                "affine enumeration needs step >= 1 and offset >= 2, got {step}i+{offset}"
            )));
        }
        Ok(EnumerationOracle {
            description: format!("{step}i+{offset}"),
            eta: Box::new(move |i| {
                step.checked_mul(i)
                    .and_then(|v| v.checked_add(offset))
                    .expect("enumeration value overflows")
            }),
            range: Some(Box::new(move |v| {
                v >= offset && (v - offset).is_multiple_of(step)
            })),
        })
    }

    /// Arbitrary total map without a range decider. The caller is
    /// responsible for keeping 0 and 1 out of the range; violations are
    /// caught when the offending index is queried.
    pub fn from_fn(
        description: impl Into<String>,
        eta: impl Fn(u64) -> u64 + Send + Sync + 'static,
    ) -> EnumerationOracle {
        EnumerationOracle {
            description: description.into(),
            eta: Box::new(eta),
            range: None,
        }
    }

    pub fn eta(&self, i: u64) -> u64 {
        let v = (self.eta)(i);
        assert!(
            v >= 2,
            "enumeration produced {v} at index {i}; 0 and 1 are excluded"
        );
        v
    }

    /// Some(answer) when the range is decidable, None otherwise.
    pub fn range_contains(&self, v: u64) -> Option<bool> {
        self.range.as_ref().map(|decide| decide(v))
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

impl fmt::Debug for EnumerationOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumerationOracle")
            .field("description", &self.description)
            .field("decidable_range", &self.range.is_some())
            .finish()
    }
}

/// γ(t) = β(η(0)) ∨ β(η(1)) ∨ … ∨ β(η(t)), joined left to right.
pub fn gamma(t: u64, eta: &EnumerationOracle) -> Formula {
    let mut acc = beta(eta.eta(0));
    for i in 1..=t {
        acc = Formula::join(acc, beta(eta.eta(i)));
    }
    acc
}

/// Smallest t ≤ t_max with t.γ(t) ≥ f pointwise, if any. Works on the
/// piecewise-linear side: the semantics of t.γ(t) is the t-fold truncated
/// sum of the semantics of γ(t), built incrementally. Absence only means
/// the bound was reached, never non-membership.
pub fn member_ideal_bounded(f: &Formula, eta: &EnumerationOracle, t_max: u64) -> Option<u64> {
    let target = semantics(f);
    let mut joined = semantics(&beta(eta.eta(0)));
    for t in 1..=t_max {
        joined = joined.pointwise_max(&semantics(&beta(eta.eta(t))));
        let mut scaled = joined.clone();
        for _ in 1..t {
            scaled = scaled.oplus(&joined);
        }
        if scaled.dominates(&target) {
            return Some(t);
        }
    }
    None
}
