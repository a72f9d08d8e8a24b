//! The word problem for formulas: do two formulas denote the same function?
//!
//! Two independent deciders answer it. `equal_search` follows the
//! finite-search argument: the distance formula δ vanishes everywhere iff it
//! vanishes at all rationals of denominator up to a bound read off from
//! `length(δ)`. `equal_canonical` compiles both sides to canonical piecewise
//! form and compares structurally. Each serves as an oracle for the other.

use num_integer::Integer;
use num_traits::Zero;

use crate::formula::Formula;
use crate::pwl::{eval_formula, semantics};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Search,
    Canonical,
}

/// Outcome of a word-problem decision. `equal` holds iff `witness` is absent;
/// a witness is a rational where the two functions take different values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub equal: bool,
    pub witness: Option<Rat>,
    pub method: Method,
}

impl Verdict {
    fn equal(method: Method) -> Verdict {
        Verdict {
            equal: true,
            witness: None,
            method,
        }
    }

    fn unequal(witness: Rat, method: Method) -> Verdict {
        Verdict {
            equal: false,
            witness: Some(witness),
            method,
        }
    }
}

/// Denominator bound for the finite search: 2·length(δ). The proof chain
/// bounds a witness denominator by twice the maximal slope of f_δ, which is
/// at most length(δ).
pub fn search_bound(phi: &Formula, psi: &Formula) -> u64 {
    2 * Formula::distance(phi, psi).length()
}

/// Decides equality by scanning f_δ over every c/d with 1 ≤ d ≤ 2·length(δ),
/// 0 ≤ c ≤ d. The first nonzero point (ascending d, then c) is the witness;
/// it is always in lowest terms, since an unreduced point repeats a value
/// already scanned at a smaller denominator.
pub fn equal_search(phi: &Formula, psi: &Formula) -> Verdict {
    let delta = Formula::distance(phi, psi);
    let bound = 2 * delta.length();
    for d in 1..=bound {
        for c in 0..=d {
            let r = Rat::new(c.into(), d.into());
            let v = eval_formula(&delta, &r).expect("scan points lie in [0,1]");
            if !v.is_zero() {
                return Verdict::unequal(r, Method::Search);
            }
        }
    }
    Verdict::equal(Method::Search)
}

/// Decides equality by comparing canonical compiled functions; a difference
/// is witnessed at the first merged breakpoint where the values differ.
pub fn equal_canonical(phi: &Formula, psi: &Formula) -> Verdict {
    let p = semantics(phi);
    let q = semantics(psi);
    if p == q {
        Verdict::equal(Method::Canonical)
    } else {
        let w = p
            .first_difference(&q)
            .expect("distinct canonical functions differ at a merged breakpoint");
        Verdict::unequal(w, Method::Canonical)
    }
}

/// The differing rational of smallest denominator, ties broken by smallest
/// numerator; `None` when the functions are equal.
pub fn minimal_witness(phi: &Formula, psi: &Formula) -> Option<Rat> {
    if equal_canonical(phi, psi).equal {
        return None;
    }
    let bound = search_bound(phi, psi);
    for d in 1..=bound {
        for c in 0..=d {
            if c.gcd(&d) != 1 {
                continue;
            }
            let r = Rat::new(c.into(), d.into());
            let vp = eval_formula(phi, &r).expect("scan points lie in [0,1]");
            let vq = eval_formula(psi, &r).expect("scan points lie in [0,1]");
            if vp != vq {
                return Some(r);
            }
        }
    }
    unreachable!("unequal functions must differ within the search bound");
}
