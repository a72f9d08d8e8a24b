//! Exact piecewise-linear engine.
//!
//! A `PwlFunction` is a continuous [0,1]→[0,1] function made of finitely many
//! integer-coefficient linear pieces over rational breakpoints, the semantic
//! value of a one-variable formula. Everything here is exact rational
//! arithmetic; there is no floating-point path.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::rat::{in_unit_interval, rat_to_string, Rat};

/// Orientation of a one-sided limit or derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "-",
            Side::Right => "+",
        })
    }
}

/// One linear piece `m·x + n` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearPiece {
    pub slope: BigInt,
    pub intercept: BigInt,
}

impl LinearPiece {
    pub fn new(slope: impl Into<BigInt>, intercept: impl Into<BigInt>) -> LinearPiece {
        LinearPiece {
            slope: slope.into(),
            intercept: intercept.into(),
        }
    }

    pub fn value_at(&self, x: &Rat) -> Rat {
        x * Rat::from_integer(self.slope.clone()) + Rat::from_integer(self.intercept.clone())
    }
}

/// Canonical continuous piecewise-linear function on [0,1].
///
/// `pieces[i]` is valid on `[breakpoints[i], breakpoints[i+1]]`; adjacent
/// pieces are never identical, so equality of functions is plain structural
/// equality of the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PwlFunction {
    breakpoints: Vec<Rat>,
    pieces: Vec<LinearPiece>,
}

/// Accumulates segments left to right, merging collinear neighbours and
/// dropping empty ones, so every construction path canonicalizes the same way.
struct Builder {
    xs: Vec<Rat>,
    pieces: Vec<LinearPiece>,
}

impl Builder {
    fn new() -> Builder {
        Builder {
            xs: vec![Rat::zero()],
            pieces: Vec::new(),
        }
    }

    fn push(&mut self, end: Rat, piece: LinearPiece) {
        let last = self.xs.last().expect("builder always holds a start point");
        if end == *last {
            return;
        }
        debug_assert!(end > *last, "segments must arrive in order");
        if self.pieces.last() == Some(&piece) {
            *self.xs.last_mut().unwrap() = end;
        } else {
            self.xs.push(end);
            self.pieces.push(piece);
        }
    }

    fn finish(self) -> PwlFunction {
        let p = PwlFunction {
            breakpoints: self.xs,
            pieces: self.pieces,
        };
        debug_assert!(
            validate(&p.breakpoints, &p.pieces).is_ok(),
            "builder output must be valid"
        );
        p
    }
}

/// Full invariant check: counts, domain ends, monotone breakpoints,
/// continuity, and range at every breakpoint.
fn validate(breakpoints: &[Rat], pieces: &[LinearPiece]) -> Result<()> {
    if breakpoints.len() != pieces.len() + 1 || pieces.is_empty() {
        return Err(Error::InvalidPwl(format!(
            "{} breakpoints do not delimit {} pieces",
            breakpoints.len(),
            pieces.len()
        )));
    }
    if breakpoints[0] != Rat::zero() {
        return Err(Error::InvalidPwl("domain must start at 0".into()));
    }
    if *breakpoints.last().unwrap() != Rat::one() {
        return Err(Error::InvalidPwl("domain must end at 1".into()));
    }
    for w in breakpoints.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidPwl(format!(
                "breakpoints not strictly increasing at {}",
                rat_to_string(&w[0])
            )));
        }
    }
    for (i, w) in breakpoints.windows(2).enumerate() {
        if i + 1 < pieces.len() && pieces[i].value_at(&w[1]) != pieces[i + 1].value_at(&w[1]) {
            return Err(Error::InvalidPwl(format!(
                "discontinuity at {}",
                rat_to_string(&w[1])
            )));
        }
    }
    for (i, x) in breakpoints.iter().enumerate() {
        let piece = &pieces[i.min(pieces.len() - 1)];
        let v = piece.value_at(x);
        if !in_unit_interval(&v) {
            return Err(Error::InvalidPwl(format!(
                "value {} at {} leaves [0,1]",
                rat_to_string(&v),
                rat_to_string(x)
            )));
        }
    }
    Ok(())
}

impl PwlFunction {
    pub fn constant_zero() -> PwlFunction {
        PwlFunction {
            breakpoints: vec![Rat::zero(), Rat::one()],
            pieces: vec![LinearPiece::new(0, 0)],
        }
    }

    pub fn constant_one() -> PwlFunction {
        PwlFunction {
            breakpoints: vec![Rat::zero(), Rat::one()],
            pieces: vec![LinearPiece::new(0, 1)],
        }
    }

    pub fn identity() -> PwlFunction {
        PwlFunction {
            breakpoints: vec![Rat::zero(), Rat::one()],
            pieces: vec![LinearPiece::new(1, 0)],
        }
    }

    /// Validates the invariants (ordered breakpoints spanning [0,1],
    /// continuity, range) and canonicalizes by merging collinear neighbours.
    pub fn from_segments_checked(
        breakpoints: Vec<Rat>,
        pieces: Vec<LinearPiece>,
    ) -> Result<PwlFunction> {
        validate(&breakpoints, &pieces)?;
        let mut b = Builder::new();
        for (i, piece) in pieces.into_iter().enumerate() {
            b.push(breakpoints[i + 1].clone(), piece);
        }
        Ok(b.finish())
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[LinearPiece] {
        &self.pieces
    }

    /// Index of the piece valid on `[r, r+ε)` for r < 1, else the last piece.
    fn piece_index_at(&self, r: &Rat) -> usize {
        let count = self.breakpoints.partition_point(|b| b <= r);
        debug_assert!(count >= 1);
        (count - 1).min(self.pieces.len() - 1)
    }

    pub fn eval(&self, r: &Rat) -> Result<Rat> {
        if !in_unit_interval(r) {
            return Err(Error::OutsideUnitInterval(Box::new(r.clone())));
        }
        Ok(self.pieces[self.piece_index_at(r)].value_at(r))
    }

    /// Slope of the piece immediately right (resp. left) of z. Only the
    /// inward side exists at an endpoint.
    pub fn one_sided_slope(&self, z: &Rat, side: Side) -> Result<BigInt> {
        if !in_unit_interval(z) {
            return Err(Error::OutsideUnitInterval(Box::new(z.clone())));
        }
        match side {
            Side::Right => {
                if z >= &Rat::one() {
                    return Err(Error::SideNotAdmissible(Box::new(z.clone())));
                }
                Ok(self.pieces[self.piece_index_at(z)].slope.clone())
            }
            Side::Left => {
                if z <= &Rat::zero() {
                    return Err(Error::SideNotAdmissible(Box::new(z.clone())));
                }
                let count = self.breakpoints.partition_point(|b| b < z);
                debug_assert!(count >= 1);
                Ok(self.pieces[count - 1].slope.clone())
            }
        }
    }

    /// True iff a single linear piece covers [lo, hi].
    pub fn is_linear_on(&self, lo: &Rat, hi: &Rat) -> Result<bool> {
        if !in_unit_interval(lo) {
            return Err(Error::OutsideUnitInterval(Box::new(lo.clone())));
        }
        if !in_unit_interval(hi) {
            return Err(Error::OutsideUnitInterval(Box::new(hi.clone())));
        }
        if lo >= hi {
            return Err(Error::EmptyInterval(
                Box::new(lo.clone()),
                Box::new(hi.clone()),
            ));
        }
        let right_of_lo = self.piece_index_at(lo);
        let left_of_hi = self.breakpoints.partition_point(|b| b < hi) - 1;
        Ok(right_of_lo == left_of_hi)
    }

    /// Pointwise `1 - f`; an involution on the same breakpoints.
    pub fn star(&self) -> PwlFunction {
        PwlFunction {
            breakpoints: self.breakpoints.clone(),
            pieces: self
                .pieces
                .iter()
                .map(|p| LinearPiece {
                    slope: -&p.slope,
                    intercept: BigInt::one() - &p.intercept,
                })
                .collect(),
        }
    }

    /// Pointwise `min(1, f + g)`, cut at the rational crossings with 1.
    pub fn oplus(&self, other: &PwlFunction) -> PwlFunction {
        let one = Rat::one();
        let mut b = Builder::new();
        for (lo, hi, p, q) in zipped_segments(self, other) {
            let sum = LinearPiece {
                slope: &p.slope + &q.slope,
                intercept: &p.intercept + &q.intercept,
            };
            let va = sum.value_at(&lo);
            let vb = sum.value_at(&hi);
            if va <= one && vb <= one {
                b.push(hi, sum);
            } else if va >= one && vb >= one {
                b.push(hi, LinearPiece::new(0, 1));
            } else {
                // the sum line crosses 1 strictly inside (lo, hi)
                let cross = Rat::new(BigInt::one() - &sum.intercept, sum.slope.clone());
                debug_assert!(lo < cross && cross < hi);
                if va < one {
                    b.push(cross, sum);
                    b.push(hi, LinearPiece::new(0, 1));
                } else {
                    b.push(cross, LinearPiece::new(0, 1));
                    b.push(hi, sum);
                }
            }
        }
        b.finish()
    }

    /// Pointwise maximum, split at the sign changes of f - g.
    pub fn pointwise_max(&self, other: &PwlFunction) -> PwlFunction {
        self.select_by_sign(other, true)
    }

    /// Pointwise minimum, split at the sign changes of f - g.
    pub fn pointwise_min(&self, other: &PwlFunction) -> PwlFunction {
        self.select_by_sign(other, false)
    }

    fn select_by_sign(&self, other: &PwlFunction, want_upper: bool) -> PwlFunction {
        let mut b = Builder::new();
        for (lo, hi, p, q) in zipped_segments(self, other) {
            let diff = LinearPiece {
                slope: &p.slope - &q.slope,
                intercept: &p.intercept - &q.intercept,
            };
            let da = diff.value_at(&lo);
            let db = diff.value_at(&hi);
            let pick = |upper: bool| {
                if upper == want_upper {
                    p.clone()
                } else {
                    q.clone()
                }
            };
            if !da.is_negative() && !db.is_negative() {
                b.push(hi, pick(true));
            } else if !da.is_positive() && !db.is_positive() {
                b.push(hi, pick(false));
            } else {
                let cross = Rat::new(-diff.intercept.clone(), diff.slope.clone());
                debug_assert!(lo < cross && cross < hi);
                b.push(cross, pick(da.is_positive()));
                b.push(hi, pick(db.is_positive()));
            }
        }
        b.finish()
    }

    /// Pointwise `|f - g|` by breakpoint-merge subtraction; the independent
    /// route against which the distance formula's semantics is checked.
    pub fn pointwise_abs_diff(&self, other: &PwlFunction) -> PwlFunction {
        let mut b = Builder::new();
        for (lo, hi, p, q) in zipped_segments(self, other) {
            let diff = LinearPiece {
                slope: &p.slope - &q.slope,
                intercept: &p.intercept - &q.intercept,
            };
            let neg = LinearPiece {
                slope: -&diff.slope,
                intercept: -&diff.intercept,
            };
            let da = diff.value_at(&lo);
            let db = diff.value_at(&hi);
            if !da.is_negative() && !db.is_negative() {
                b.push(hi, diff);
            } else if !da.is_positive() && !db.is_positive() {
                b.push(hi, neg);
            } else {
                let cross = Rat::new(-diff.intercept.clone(), diff.slope.clone());
                debug_assert!(lo < cross && cross < hi);
                if da.is_positive() {
                    b.push(cross, diff);
                    b.push(hi, neg);
                } else {
                    b.push(cross, neg);
                    b.push(hi, diff);
                }
            }
        }
        b.finish()
    }

    /// True iff `f(x) >= g(x)` everywhere. Checking every merged breakpoint
    /// suffices: both functions are linear between adjacent merged points.
    pub fn dominates(&self, other: &PwlFunction) -> bool {
        let mut points = self.breakpoints.clone();
        points.extend(other.breakpoints.iter().cloned());
        points.sort();
        points.dedup();
        points.iter().all(|x| {
            self.eval(x).expect("breakpoint lies in domain")
                >= other.eval(x).expect("breakpoint lies in domain")
        })
    }

    /// Smallest merged breakpoint where the functions differ; `None` iff the
    /// functions are equal.
    pub fn first_difference(&self, other: &PwlFunction) -> Option<Rat> {
        let mut points = self.breakpoints.clone();
        points.extend(other.breakpoints.iter().cloned());
        points.sort();
        points.dedup();
        points.into_iter().find(|x| {
            self.eval(x).expect("breakpoint lies in domain")
                != other.eval(x).expect("breakpoint lies in domain")
        })
    }

    /// Segment list as JSON: `[{x_lo, x_hi, m, n}, …]` with exact decimal and
    /// `p/q` strings. Round-trips bit-exactly through `from_json`.
    pub fn to_json(&self) -> Value {
        let segments: Vec<Value> = self
            .pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                json!({
                    "x_lo": rat_to_string(&self.breakpoints[i]),
                    "x_hi": rat_to_string(&self.breakpoints[i + 1]),
                    "m": p.slope.to_string(),
                    "n": p.intercept.to_string(),
                })
            })
            .collect();
        Value::Array(segments)
    }

    pub fn from_json(value: &Value) -> Result<PwlFunction> {
        let invalid = |msg: &str| Error::InvalidPwl(msg.to_string());
        let segments = value
            .as_array()
            .ok_or_else(|| invalid("expected an array"))?;
        if segments.is_empty() {
            return Err(invalid("expected at least one segment"));
        }
        let mut breakpoints = Vec::with_capacity(segments.len() + 1);
        let mut pieces = Vec::with_capacity(segments.len());
        for seg in segments {
            let field = |name: &str| -> Result<&str> {
                seg.get(name)
                    .and_then(Value::as_str)
                    .ok_or_else(|| invalid(&format!("segment lacks string field {name:?}")))
            };
            let x_lo = crate::rat::parse_rat(field("x_lo")?)?;
            let x_hi = crate::rat::parse_rat(field("x_hi")?)?;
            let m =
                BigInt::from_str(field("m")?).map_err(|_| invalid("slope is not an integer"))?;
            let n = BigInt::from_str(field("n")?)
                .map_err(|_| invalid("intercept is not an integer"))?;
            match breakpoints.last() {
                None => breakpoints.push(x_lo),
                Some(prev) if *prev == x_lo => {}
                Some(_) => return Err(invalid("segments do not chain: x_lo mismatch")),
            }
            breakpoints.push(x_hi);
            pieces.push(LinearPiece {
                slope: m,
                intercept: n,
            });
        }
        PwlFunction::from_segments_checked(breakpoints, pieces)
    }
}

impl fmt::Display for PwlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let (op, mag) = if p.intercept.is_negative() {
                ("-", -&p.intercept)
            } else {
                ("+", p.intercept.clone())
            };
            write!(
                f,
                "[{}, {}]  {}*x {} {}",
                rat_to_string(&self.breakpoints[i]),
                rat_to_string(&self.breakpoints[i + 1]),
                p.slope,
                op,
                mag
            )?;
        }
        Ok(())
    }
}

/// Merged-breakpoint walk: each yielded segment carries the pieces of both
/// functions valid there.
fn zipped_segments<'a>(
    p: &'a PwlFunction,
    q: &'a PwlFunction,
) -> Vec<(Rat, Rat, &'a LinearPiece, &'a LinearPiece)> {
    let mut points = p.breakpoints.clone();
    points.extend(q.breakpoints.iter().cloned());
    points.sort();
    points.dedup();
    let mut out = Vec::with_capacity(points.len() - 1);
    let (mut pi, mut qi) = (0usize, 0usize);
    for w in points.windows(2) {
        out.push((w[0].clone(), w[1].clone(), &p.pieces[pi], &q.pieces[qi]));
        if pi + 1 < p.pieces.len() && p.breakpoints[pi + 1] == w[1] {
            pi += 1;
        }
        if qi + 1 < q.pieces.len() && q.breakpoints[qi + 1] == w[1] {
            qi += 1;
        }
    }
    out
}

/// Compiles a formula to its canonical McNaughton function.
pub fn semantics(f: &Formula) -> PwlFunction {
    match f {
        Formula::Zero => PwlFunction::constant_zero(),
        Formula::Gen => PwlFunction::identity(),
        Formula::Star(g) => semantics(g).star(),
        Formula::Plus(l, r) => semantics(l).oplus(&semantics(r)),
    }
}

/// Evaluates a formula at a point by structural induction, without ever
/// building a `PwlFunction`; serves as an independent oracle for `semantics`.
pub fn eval_formula(f: &Formula, r: &Rat) -> Result<Rat> {
    if !in_unit_interval(r) {
        return Err(Error::OutsideUnitInterval(Box::new(r.clone())));
    }
    fn go(f: &Formula, r: &Rat) -> Rat {
        match f {
            Formula::Zero => Rat::zero(),
            Formula::Gen => r.clone(),
            Formula::Star(g) => Rat::one() - go(g, r),
            Formula::Plus(l, r2) => {
                let sum = go(l, r) + go(r2, r);
                if sum > Rat::one() {
                    Rat::one()
                } else {
                    sum
                }
            }
        }
    }
    Ok(go(f, r))
}

/// One-sided value and derivative at z, by a single structural induction.
///
/// The ⊕ step distinguishes three cases by the value sum v = f_α(z) + f_β(z):
/// below 1 the slopes add; above 1 the sum is saturated near z and the slope
/// is 0; exactly at 1 the truncation clips only the increasing direction, so
/// the slope is min(0, s) on the right and max(0, s) on the left.
pub fn value_and_slope(f: &Formula, z: &Rat, side: Side) -> Result<(Rat, BigInt)> {
    if !in_unit_interval(z) {
        return Err(Error::OutsideUnitInterval(Box::new(z.clone())));
    }
    match side {
        Side::Right if z >= &Rat::one() => {
            return Err(Error::SideNotAdmissible(Box::new(z.clone())))
        }
        Side::Left if z <= &Rat::zero() => {
            return Err(Error::SideNotAdmissible(Box::new(z.clone())))
        }
        _ => {}
    }
    fn go(f: &Formula, z: &Rat, side: Side) -> (Rat, BigInt) {
        match f {
            Formula::Zero => (Rat::zero(), BigInt::zero()),
            Formula::Gen => (z.clone(), BigInt::one()),
            Formula::Star(g) => {
                let (v, s) = go(g, z, side);
                (Rat::one() - v, -s)
            }
            Formula::Plus(l, r) => {
                let (va, sa) = go(l, z, side);
                let (vb, sb) = go(r, z, side);
                let v = va + vb;
                let s = sa + sb;
                let one = Rat::one();
                if v < one {
                    (v, s)
                } else if v > one {
                    (one, BigInt::zero())
                } else {
                    let clipped = match side {
                        Side::Right => s.min(BigInt::zero()),
                        Side::Left => s.max(BigInt::zero()),
                    };
                    (one, clipped)
                }
            }
        }
    }
    Ok(go(f, z, side))
}

/// One-sided derivative of f_f at z by structural induction; agrees with
/// `one_sided_slope` of the compiled function.
pub fn slope_by_induction(f: &Formula, z: &Rat, side: Side) -> Result<BigInt> {
    value_and_slope(f, z, side).map(|(_, s)| s)
}

/// The distance formula `δ = ((φ*⊕ψ)*⊕(ψ*⊕φ)*)` and its compiled semantics,
/// which equals the pointwise `|f_φ - f_ψ|`.
pub fn abs_diff(phi: &Formula, psi: &Formula) -> (Formula, PwlFunction) {
    let delta = Formula::distance(phi, psi);
    let p = semantics(&delta);
    (delta, p)
}

/// The function `max(0, min(1, m·x + n))` on [0,1], built directly from the
/// line rather than from any formula.
pub fn clipped_line(m: &BigInt, n: &BigInt) -> PwlFunction {
    let line = LinearPiece {
        slope: m.clone(),
        intercept: n.clone(),
    };
    let mut cuts = vec![Rat::zero(), Rat::one()];
    if !m.is_zero() {
        for target in [BigInt::zero(), BigInt::one()] {
            let x = Rat::new(target - n, m.clone());
            if x > Rat::zero() && x < Rat::one() {
                cuts.push(x);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut b = Builder::new();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) * &half;
        let v = line.value_at(&mid);
        let piece = if v <= Rat::zero() {
            LinearPiece::new(0, 0)
        } else if v >= Rat::one() {
            LinearPiece::new(0, 1)
        } else {
            line.clone()
        };
        b.push(w[1].clone(), piece);
    }
    b.finish()
}
