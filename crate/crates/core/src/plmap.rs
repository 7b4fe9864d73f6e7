//! Piecewise linear homeomorphisms between closed intervals.
//!
//! A [`PlMap`] is an increasing PL bijection `[a,b] -> [c,d]` stored as its
//! breakpoint list. The list is always normalized (no interior breakpoint is
//! collinear with its neighbours), so interior breakpoints are exactly the
//! nodes and two maps are equal iff their lists are equal.
//!
//! Elements of PL⁺(0,1) are the maps with first point `(0,0)` and last point
//! `(1,1)`; restrictions to bump domains and conjugators between them are
//! the same type on other intervals.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::exact::{describe, is_dyadic, pow2_exponent, Rational};
use crate::{Error, Result};

pub type Point = (Rational, Rational);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlMap {
    points: Vec<Point>,
}

fn show_point((x, y): &Point) -> String {
    alloc::format!("({}, {})", describe(x), describe(y))
}

fn collinear(p0: &Point, p1: &Point, p2: &Point) -> bool {
    (&p1.1 - &p0.1) * (&p2.0 - &p1.0) == (&p2.1 - &p1.1) * (&p1.0 - &p0.0)
}

impl PlMap {
    /// Builds a map from raw breakpoints on any interval, dropping
    /// collinear interior points.
    pub fn new(points: Vec<Point>) -> Result<PlMap> {
        if points.len() < 2 {
            return Err(Error::Invalid("need at least two breakpoints".into()));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::Invalid(alloc::format!(
                    "breakpoint {} does not increase strictly after {}",
                    show_point(&w[1]),
                    show_point(&w[0])
                )));
            }
        }
        Ok(PlMap::from_increasing(points))
    }

    /// Normalizes a breakpoint list for an element of PL⁺(0,1).
    pub fn normalize(points: Vec<Point>) -> Result<PlMap> {
        if let Some(first) = points.first() {
            if !first.0.is_zero() || !first.1.is_zero() {
                return Err(Error::Invalid(alloc::format!(
                    "first breakpoint {} must be (0, 0)",
                    show_point(first)
                )));
            }
        }
        if let Some(last) = points.last() {
            if !last.0.is_one() || !last.1.is_one() {
                return Err(Error::Invalid(alloc::format!(
                    "last breakpoint {} must be (1, 1)",
                    show_point(last)
                )));
            }
        }
        PlMap::new(points)
    }

    // Caller guarantees strict monotonicity.
    pub(crate) fn from_increasing(points: Vec<Point>) -> PlMap {
        let mut out: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
                out.pop();
            }
            out.push(p);
        }
        PlMap { points: out }
    }

    pub fn identity() -> PlMap {
        PlMap::identity_on(Rational::zero(), Rational::one())
    }

    pub fn identity_on(a: Rational, b: Rational) -> PlMap {
        PlMap::affine(a.clone(), b.clone(), a, b)
    }

    /// The affine increasing map `[a,b] -> [c,d]`.
    pub fn affine(a: Rational, b: Rational, c: Rational, d: Rational) -> PlMap {
        debug_assert!(a < b && c < d);
        PlMap {
            points: alloc::vec![(a, c), (b, d)],
        }
    }

    pub fn breakpoints(&self) -> &[Point] {
        &self.points
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.points[0].0, &self.points[self.points.len() - 1].0)
    }

    pub fn range(&self) -> (&Rational, &Rational) {
        (&self.points[0].1, &self.points[self.points.len() - 1].1)
    }

    pub fn is_self_map(&self) -> bool {
        self.domain() == self.range()
    }

    pub fn is_affine(&self) -> bool {
        self.points.len() == 2
    }

    pub fn is_identity(&self) -> bool {
        self.is_affine() && self.is_self_map()
    }

    /// Interior breakpoints, i.e. the nodes.
    pub fn nodes(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.points[1..self.points.len() - 1].iter().map(|p| &p.0)
    }

    pub fn node_count(&self) -> usize {
        self.points.len() - 2
    }

    /// Slope of segment `i` (between breakpoints `i` and `i+1`).
    pub fn slope(&self, i: usize) -> Rational {
        let (p, q) = (&self.points[i], &self.points[i + 1]);
        (&q.1 - &p.1) / (&q.0 - &p.0)
    }

    pub fn slopes(&self) -> Vec<Rational> {
        (0..self.points.len() - 1).map(|i| self.slope(i)).collect()
    }

    pub fn initial_slope(&self) -> Rational {
        self.slope(0)
    }

    pub fn final_slope(&self) -> Rational {
        self.slope(self.points.len() - 2)
    }

    /// Right slope over left slope at the `i`-th node (0-based among nodes).
    pub fn node_ratio(&self, i: usize) -> Rational {
        self.slope(i + 1) / self.slope(i)
    }

    /// Image of a point known to lie in the domain.
    pub(crate) fn image(&self, x: &Rational) -> Rational {
        let idx = self.points.partition_point(|p| &p.0 <= x);
        debug_assert!(idx >= 1, "point below domain");
        if idx >= self.points.len() {
            return self.points[self.points.len() - 1].1.clone();
        }
        let (p, q) = (&self.points[idx - 1], &self.points[idx]);
        if &p.0 == x {
            return p.1.clone();
        }
        &p.1 + (x - &p.0) * (&q.1 - &p.1) / (&q.0 - &p.0)
    }

    /// Preimage of a point known to lie in the range.
    pub(crate) fn preimage(&self, y: &Rational) -> Rational {
        let idx = self.points.partition_point(|p| &p.1 <= y);
        debug_assert!(idx >= 1, "point below range");
        if idx >= self.points.len() {
            return self.points[self.points.len() - 1].0.clone();
        }
        let (p, q) = (&self.points[idx - 1], &self.points[idx]);
        if &p.1 == y {
            return p.0.clone();
        }
        &p.0 + (y - &p.1) * (&q.0 - &p.0) / (&q.1 - &p.1)
    }

    /// Exact image of `x`; errors when `x` is outside the domain.
    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        let (a, b) = self.domain();
        if x < a || x > b {
            return Err(Error::Domain(alloc::format!(
                "{} lies outside [{}, {}]",
                describe(x),
                describe(a),
                describe(b)
            )));
        }
        Ok(self.image(x))
    }

    /// `self ∘ g`, i.e. `x ↦ self(g(x))`.
    pub fn compose(&self, g: &PlMap) -> Result<PlMap> {
        if g.range() != self.domain() {
            return Err(Error::Domain(alloc::format!(
                "cannot compose: range [{}, {}] does not match domain [{}, {}]",
                describe(g.range().0),
                describe(g.range().1),
                describe(self.domain().0),
                describe(self.domain().1)
            )));
        }
        // Merge g's y-breakpoints with self's x-breakpoints.
        let mut middle: Vec<&Rational> = Vec::with_capacity(g.points.len() + self.points.len());
        let (mut i, mut j) = (0, 0);
        while i < g.points.len() || j < self.points.len() {
            let next = match (g.points.get(i), self.points.get(j)) {
                (Some(u), Some(v)) if u.1 < v.0 => {
                    i += 1;
                    &u.1
                }
                (Some(u), Some(v)) if u.1 > v.0 => {
                    j += 1;
                    &v.0
                }
                (Some(u), Some(_)) => {
                    i += 1;
                    j += 1;
                    &u.1
                }
                (Some(u), None) => {
                    i += 1;
                    &u.1
                }
                (None, Some(v)) => {
                    j += 1;
                    &v.0
                }
                (None, None) => unreachable!(),
            };
            middle.push(next);
        }
        let points = middle
            .into_iter()
            .map(|m| (g.preimage(m), self.image(m)))
            .collect();
        Ok(PlMap::from_increasing(points))
    }

    pub fn inverse(&self) -> PlMap {
        PlMap {
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    /// `self^n` for a self-map; negative powers go through the inverse.
    pub fn power(&self, n: i64) -> Result<PlMap> {
        if !self.is_self_map() {
            return Err(Error::Domain("power of a map that is not a self-map".into()));
        }
        let (a, b) = self.domain();
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = PlMap::identity_on(a.clone(), b.clone());
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(acc)
    }

    /// The map restricted to `[lo, hi]` inside its domain.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Result<PlMap> {
        let (a, b) = self.domain();
        if lo < a || hi > b || lo >= hi {
            return Err(Error::Domain(alloc::format!(
                "[{}, {}] is not a subinterval of [{}, {}]",
                describe(lo),
                describe(hi),
                describe(a),
                describe(b)
            )));
        }
        let mut points = Vec::new();
        points.push((lo.clone(), self.image(lo)));
        points.extend(
            self.points
                .iter()
                .filter(|p| &p.0 > lo && &p.0 < hi)
                .cloned(),
        );
        points.push((hi.clone(), self.image(hi)));
        Ok(PlMap::from_increasing(points))
    }

    /// Concatenates maps on adjacent intervals into one map.
    pub fn glue<'a, I>(pieces: I) -> Result<PlMap>
    where
        I: IntoIterator<Item = &'a PlMap>,
    {
        let mut points: Vec<Point> = Vec::new();
        for piece in pieces {
            match points.last() {
                None => points.extend(piece.points.iter().cloned()),
                Some(last) if last == &piece.points[0] => {
                    points.extend(piece.points[1..].iter().cloned())
                }
                Some(last) => {
                    return Err(Error::Domain(alloc::format!(
                        "pieces do not meet: {} then {}",
                        show_point(last),
                        show_point(&piece.points[0])
                    )))
                }
            }
        }
        if points.len() < 2 {
            return Err(Error::Invalid("nothing to glue".into()));
        }
        Ok(PlMap::from_increasing(points))
    }

    /// Conjugate by the reflection `x ↦ a + b - x` of the domain of a
    /// self-map of `[a,b]`.
    pub fn reflect(&self) -> PlMap {
        debug_assert!(self.is_self_map());
        let (a, b) = self.domain();
        let s = a + b;
        PlMap {
            points: self
                .points
                .iter()
                .rev()
                .map(|(x, y)| (&s - x, &s - y))
                .collect(),
        }
    }
}

impl fmt::Display for PlMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&show_point(p))?;
        }
        f.write_str("]")
    }
}

/// Why a PL map is not an element of F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FDiagnosis {
    NotUnitInterval,
    NonDyadicNode { x: Rational, y: Rational },
    NonPowerOfTwoSlope { from: Rational, to: Rational, slope: Rational },
}

impl fmt::Display for FDiagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FDiagnosis::NotUnitInterval => f.write_str("map is not a homeomorphism of [0, 1]"),
            FDiagnosis::NonDyadicNode { x, y } => {
                write!(f, "node {} is not dyadic", show_point(&(x.clone(), y.clone())))
            }
            FDiagnosis::NonPowerOfTwoSlope { from, to, slope } => write!(
                f,
                "slope {} on [{}, {}] is not a power of 2",
                describe(slope),
                describe(from),
                describe(to)
            ),
        }
    }
}

/// An element of Thompson's group F: a PL map of `[0,1]` with dyadic
/// nodes and power-of-two slopes. Only built through [`check_in_f`] or
/// closed group operations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FElement(PlMap);

/// Certifies membership in F, or reports the first offending node/slope.
pub fn check_in_f(f: &PlMap) -> core::result::Result<FElement, FDiagnosis> {
    let (a, b) = f.domain();
    if !a.is_zero() || !b.is_one() || !f.is_self_map() {
        return Err(FDiagnosis::NotUnitInterval);
    }
    for (i, (x, y)) in f.points.iter().enumerate() {
        if !is_dyadic(x) || !is_dyadic(y) {
            return Err(FDiagnosis::NonDyadicNode {
                x: x.clone(),
                y: y.clone(),
            });
        }
        if i + 1 < f.points.len() {
            let s = f.slope(i);
            if !matches!(pow2_exponent(&s), Ok(Some(_))) {
                return Err(FDiagnosis::NonPowerOfTwoSlope {
                    from: x.clone(),
                    to: f.points[i + 1].0.clone(),
                    slope: s,
                });
            }
        }
    }
    Ok(FElement(f.clone()))
}

impl FElement {
    pub fn identity() -> FElement {
        FElement(PlMap::identity())
    }

    pub fn map(&self) -> &PlMap {
        &self.0
    }

    pub fn into_map(self) -> PlMap {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn compose(&self, g: &FElement) -> FElement {
        FElement(self.0.compose(&g.0).expect("elements of F share [0,1]"))
    }

    pub fn inverse(&self) -> FElement {
        FElement(self.0.inverse())
    }

    pub fn power(&self, n: i64) -> FElement {
        FElement(self.0.power(n).expect("elements of F are self-maps"))
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &FElement) -> FElement {
        h.compose(self).compose(&h.inverse())
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational> {
        self.0.evaluate(x)
    }

    pub fn fixed_structure(&self) -> FixedStructure {
        fixed_structure(&self.0)
    }
}

impl fmt::Display for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Value of the signature `ε` on an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_positive() {
            Sign::Pos
        } else if q.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Neg),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Pos),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedInterval {
    pub start: Rational,
    pub end: Rational,
    pub sign: Sign,
}

/// Partition of the domain into maximal open intervals on which `ε` is
/// constant and which contain no fixed point of a bump. Consecutive bump
/// intervals are separated by an isolated fixed point; they may share a
/// sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedStructure {
    pub intervals: Vec<FixedInterval>,
    /// Dyadicity of `p_0, …, p_m`, one flag per interval endpoint.
    pub dyadic: Vec<bool>,
}

impl FixedStructure {
    pub fn signs(&self) -> Vec<Sign> {
        self.intervals.iter().map(|i| i.sign).collect()
    }

    /// `p_0 < p_1 < … < p_m`.
    pub fn endpoints(&self) -> Vec<&Rational> {
        let mut out: Vec<&Rational> = self.intervals.iter().map(|i| &i.start).collect();
        if let Some(last) = self.intervals.last() {
            out.push(&last.end);
        }
        out
    }

    pub fn bump_count(&self) -> usize {
        self.intervals.iter().filter(|i| i.sign != Sign::Zero).count()
    }
}

/// Exact fixed-point structure of a self-map.
pub fn fixed_structure(f: &PlMap) -> FixedStructure {
    debug_assert!(f.is_self_map());
    let disp = |p: &Point| &p.1 - &p.0;
    // Breakpoints plus the isolated crossings inside segments.
    let mut cuts: Vec<Rational> = Vec::with_capacity(f.points.len() * 2);
    for (i, w) in f.points.windows(2).enumerate() {
        if i == 0 {
            cuts.push(w[0].0.clone());
        }
        let (d0, d1) = (disp(&w[0]), disp(&w[1]));
        if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
            // f(x) - x is affine on the segment; solve for its zero.
            let t = &d0 / (&d0 - &d1);
            cuts.push(&w[0].0 + t * (&w[1].0 - &w[0].0));
        }
        cuts.push(w[1].0.clone());
    }
    let two = Rational::from_integer(2.into());
    let mut intervals: Vec<FixedInterval> = Vec::new();
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) / &two;
        let sign = Sign::of(&(f.image(&mid) - &mid));
        if let Some(last) = intervals.last_mut() {
            let joint_is_fixed = f.image(&last.end) == last.end;
            if last.sign == sign && (sign == Sign::Zero || !joint_is_fixed) {
                last.end = w[1].clone();
                continue;
            }
        }
        intervals.push(FixedInterval {
            start: w[0].clone(),
            end: w[1].clone(),
            sign,
        });
    }
    let mut dyadic: Vec<bool> = intervals.iter().map(|i| is_dyadic(&i.start)).collect();
    if let Some(last) = intervals.last() {
        dyadic.push(is_dyadic(&last.end));
    }
    FixedStructure { intervals, dyadic }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fixtures;
    use alloc::vec;

    fn pts(raw: &[(i64, i64, i64, i64)]) -> Vec<Point> {
        raw.iter()
            .map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
            .collect()
    }

    #[test]
    fn normalize_removes_collinear_points() {
        let id = PlMap::normalize(pts(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 1, 1, 1)])).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.node_count(), 0);
        let x0 = PlMap::normalize(pts(&[(0, 1, 0, 1), (1, 2, 1, 4), (3, 4, 1, 2), (1, 1, 1, 1)]))
            .unwrap();
        assert_eq!(x0.breakpoints().len(), 4);
        assert_eq!(x0.slopes(), vec![rat(1, 2), int(1), int(2)]);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        let err = PlMap::normalize(pts(&[(0, 1, 0, 1), (1, 1, 1, 2)])).unwrap_err();
        assert!(matches!(err, Error::Invalid(ref m) if m.contains("(1, 1/2)")));
        let err = PlMap::normalize(pts(&[(0, 1, 0, 1), (1, 2, 1, 2), (1, 4, 3, 4), (1, 1, 1, 1)]))
            .unwrap_err();
        assert!(matches!(err, Error::Invalid(ref m) if m.contains("(1/4, 3/4)")));
        assert!(PlMap::normalize(pts(&[(1, 8, 0, 1), (1, 1, 1, 1)])).is_err());
        assert!(PlMap::normalize(vec![]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let x0 = fixtures::x0();
        assert_eq!(x0.evaluate(&rat(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(x0.evaluate(&int(0)).unwrap(), int(0));
        assert_eq!(x0.evaluate(&int(1)).unwrap(), int(1));
        assert_eq!(PlMap::identity().evaluate(&rat(5, 7)).unwrap(), rat(5, 7));
        assert_eq!(x0.inverse().evaluate(&rat(1, 4)).unwrap(), rat(1, 2));
        assert!(x0.evaluate(&rat(3, 2)).is_err());
        assert!(x0.evaluate(&rat(-1, 2)).is_err());
    }

    #[test]
    fn group_operation_examples() {
        let x0 = fixtures::x0();
        assert!(x0.compose(&x0.inverse()).unwrap().is_identity());
        assert_eq!(x0.power(2).unwrap().evaluate(&rat(1, 2)).unwrap(), rat(1, 8));
        assert!(x0.power(0).unwrap().is_identity());
        assert_eq!(x0.power(-3).unwrap(), x0.inverse().power(3).unwrap());
        assert!(PlMap::identity().inverse().is_identity());
        let l = fixtures::l_minus();
        assert_eq!(l.compose(&l).unwrap(), fixtures::l2());
    }

    #[test]
    fn compose_rejects_mismatched_intervals() {
        let a = PlMap::affine(int(0), int(1), int(0), rat(1, 2));
        assert!(a.compose(&a).is_err());
        assert!(a.power(2).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(check_in_f(&fixtures::x0()).is_ok());
        assert!(check_in_f(&fixtures::x1()).is_ok());
        assert!(check_in_f(&fixtures::w()).is_ok());
        match check_in_f(&fixtures::l_minus()) {
            Err(FDiagnosis::NonDyadicNode { x, .. }) => assert_eq!(x, rat(1, 3)),
            other => panic!("unexpected {other:?}"),
        }
        let bad_slope =
            PlMap::normalize(pts(&[(0, 1, 0, 1), (1, 2, 3, 8), (1, 1, 1, 1)])).unwrap();
        match check_in_f(&bad_slope) {
            Err(FDiagnosis::NonPowerOfTwoSlope { slope, .. }) => assert_eq!(slope, rat(3, 4)),
            other => panic!("unexpected {other:?}"),
        }
        let half = PlMap::identity_on(int(0), rat(1, 2));
        assert_eq!(check_in_f(&half), Err(FDiagnosis::NotUnitInterval));
    }

    #[test]
    fn fixed_structure_examples() {
        let fs = fixed_structure(&fixtures::x0());
        assert_eq!(fs.signs(), vec![Sign::Neg]);
        assert_eq!(fs.endpoints(), vec![&int(0), &int(1)]);
        assert_eq!(fs.dyadic, vec![true, true]);

        let fs = fixed_structure(&fixtures::x1());
        assert_eq!(fs.signs(), vec![Sign::Zero, Sign::Neg]);
        assert_eq!(fs.endpoints(), vec![&int(0), &rat(1, 2), &int(1)]);

        let fs = fixed_structure(&fixtures::w());
        assert_eq!(fs.signs(), vec![Sign::Neg, Sign::Pos]);
        assert_eq!(fs.endpoints(), vec![&int(0), &rat(1, 3), &int(1)]);
        assert_eq!(fs.dyadic, vec![true, false, true]);

        let fs = fixed_structure(&PlMap::identity());
        assert_eq!(fs.signs(), vec![Sign::Zero]);
    }

    #[test]
    fn adjacent_bumps_with_the_same_sign_stay_separate() {
        // x0 squeezed into [0,1/2] and again into [1/2,1].
        let f = PlMap::normalize(pts(&[
            (0, 1, 0, 1),
            (1, 4, 1, 8),
            (3, 8, 1, 4),
            (1, 2, 1, 2),
            (3, 4, 5, 8),
            (7, 8, 3, 4),
            (1, 1, 1, 1),
        ]))
        .unwrap();
        let fs = fixed_structure(&f);
        assert_eq!(fs.signs(), vec![Sign::Neg, Sign::Neg]);
        assert_eq!(fs.endpoints()[1], &rat(1, 2));
    }

    #[test]
    fn glue_and_restrict() {
        let w = fixtures::w();
        let left = w.restrict(&int(0), &rat(1, 3)).unwrap();
        let right = w.restrict(&rat(1, 3), &int(1)).unwrap();
        assert_eq!(PlMap::glue([&left, &right]).unwrap(), w);
        assert!(PlMap::glue([&right, &left]).is_err());
        assert!(w.restrict(&rat(1, 2), &rat(1, 4)).is_err());
    }

    #[test]
    fn reflection_is_an_involution() {
        let x0 = fixtures::x0();
        let r = x0.reflect();
        assert_eq!(r.reflect(), x0);
        // x0 pushes points left, its reflection pushes them right.
        assert!(r.evaluate(&rat(1, 2)).unwrap() > rat(1, 2));
    }
}
