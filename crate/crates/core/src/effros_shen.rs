//! Word problems at an irrational point θ.
//!
//! Two formulas agree in the quotient at θ iff the distance formula δ
//! vanishes at θ. Since f_δ is linear on a small interval around θ with
//! rational endpoints, that infinite-precision condition reduces to two
//! exact rational evaluations. `equal_cf` gets the interval from
//! continued-fraction convergents of index read off length(δ);
//! `equal_left_cut` gets it by binary-searching a Farey sequence with a
//! left-cut oracle. The two are independent algorithms used to check each
//! other.

use num_traits::Zero;

use crate::contfrac::{convergents, farey_sequence, LeftCutOracle, ThetaSpec};
use crate::error::Result;
use crate::formula::Formula;
use crate::pwl::eval_formula;
use crate::rat::{ceil_log2, Rat};

/// Decides f_φ(θ) = f_ψ(θ) via convergents p_n/q_n of θ at
/// n = 2·⌈log₂(8·length(δ))⌉: the denominators then exceed every breakpoint
/// denominator of f_δ, so f_δ is linear between consecutive convergents and
/// vanishes at θ iff it vanishes at both.
pub fn equal_cf(phi: &Formula, psi: &Formula, spec: &ThetaSpec) -> Result<bool> {
    let delta = Formula::distance(phi, psi);
    let n_rho = 2 * ceil_log2(8 * delta.length()) as usize;
    let cs = convergents(spec, n_rho + 1)?;
    let lo = cs[n_rho].value();
    let hi = cs[n_rho + 1].value();
    debug_assert!(
        lo < hi,
        "even-index convergent must sit left of its successor"
    );
    #[cfg(debug_assertions)]
    {
        let compiled = crate::pwl::semantics(&delta);
        debug_assert!(
            compiled
                .is_linear_on(&lo, &hi)
                .expect("convergents lie in [0,1]"),
            "distance function must be linear between the chosen convergents"
        );
    }
    Ok(eval_formula(&delta, &lo)?.is_zero() && eval_formula(&delta, &hi)?.is_zero())
}

/// Same decision driven by a rational left-cut oracle: binary-search the
/// Farey sequence of denominator ≤ 2·length(δ) for the interval bracketing
/// θ; f_δ is linear on every such interval, so θ-vanishing is equivalent to
/// vanishing at both bracketing endpoints.
pub fn equal_left_cut(phi: &Formula, psi: &Formula, oracle: &LeftCutOracle) -> Result<bool> {
    let delta = Formula::distance(phi, psi);
    let farey = farey_sequence(2 * delta.length());
    let mut lo_i = 0usize;
    let mut hi_i = farey.len() - 1;
    // invariant: farey[lo_i] < θ < farey[hi_i]
    while hi_i - lo_i > 1 {
        let mid = lo_i + (hi_i - lo_i) / 2;
        if oracle.is_less(&farey[mid])? {
            lo_i = mid;
        } else {
            hi_i = mid;
        }
    }
    #[cfg(debug_assertions)]
    {
        let compiled = crate::pwl::semantics(&delta);
        debug_assert!(
            compiled
                .is_linear_on(&farey[lo_i], &farey[hi_i])
                .expect("Farey points lie in [0,1]"),
            "distance function must be linear on the bracketing Farey interval"
        );
    }
    Ok(eval_formula(&delta, &farey[lo_i])?.is_zero()
        && eval_formula(&delta, &farey[hi_i])?.is_zero())
}

/// A rational interval [lo, hi] of width ≤ 1/precision_denominator certified
/// to contain f_φ(θ): shrink convergent intervals around θ until the
/// compiled function is linear across one and its image is narrow enough.
pub fn value_at_theta(
    phi: &Formula,
    spec: &ThetaSpec,
    precision_denominator: u64,
) -> Result<(Rat, Rat)> {
    let q = crate::pwl::semantics(phi);
    let target = Rat::new(1.into(), precision_denominator.max(1).into());
    let mut n = 2usize;
    loop {
        let cs = convergents(spec, n + 1)?;
        let lo = cs[n].value();
        let hi = cs[n + 1].value();
        debug_assert!(lo < hi);
        if q.is_linear_on(&lo, &hi)? {
            let va = q.eval(&lo)?;
            let vb = q.eval(&hi)?;
            let (a, b) = if va <= vb { (va, vb) } else { (vb, va) };
            if &b - &a <= target {
                return Ok((a, b));
            }
        }
        n += 2;
    }
}
