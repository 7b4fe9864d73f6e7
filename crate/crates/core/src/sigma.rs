//! The conjugacy invariant `Σ = (Σ1, Σ2, Σ3)` of PL⁺(0,1).
//!
//! * `Σ1` is the list of signs of `f(x) - x` on the intervals of the
//!   fixed-point structure;
//! * `Σ2` lists the initial slope of `f` on each bump;
//! * `Σ3` lists, per bump, the rotation class of the bump's
//!   [`FiniteFunction`].
//!
//! A finite function is stored in multiplicative coordinates: a point at
//! `s ∈ [0,1)` is kept as its position `Λ^s ∈ [1, Λ)`, which is rational
//! even though `s` usually is not. Translating `s` modulo 1 becomes
//! multiplying positions modulo `Λ`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::exact::{describe, is_dyadic, rational_root, Rational};
use crate::plmap::{fixed_structure, FixedStructure, PlMap, Sign};
use crate::{Error, Result};

/// A maximal interval without fixed points, with the map restricted to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bump {
    pub start: Rational,
    pub end: Rational,
    pub sign: Sign,
    pub restriction: PlMap,
}

impl Bump {
    pub fn width(&self) -> Rational {
        &self.end - &self.start
    }

    /// Initial slope of the map itself (below 1 on a decreasing bump).
    pub fn initial_slope(&self) -> Rational {
        self.restriction.initial_slope()
    }

    pub fn final_slope(&self) -> Rational {
        self.restriction.final_slope()
    }

    /// The restriction if it moves points right, otherwise its inverse.
    pub fn increasing(&self) -> PlMap {
        match self.sign {
            Sign::Pos => self.restriction.clone(),
            _ => self.restriction.inverse(),
        }
    }
}

/// The bumps of a self-map, left to right.
pub fn bumps(f: &PlMap, fs: &FixedStructure) -> Vec<Bump> {
    fs.intervals
        .iter()
        .filter(|i| i.sign != Sign::Zero)
        .map(|i| Bump {
            start: i.start.clone(),
            end: i.end.clone(),
            sign: i.sign,
            restriction: f.restrict(&i.start, &i.end).expect("bump lies in the domain"),
        })
        .collect()
}

/// Groups consecutive bumps whose separating fixed point is not dyadic.
pub fn bump_chains(f: &PlMap, fs: &FixedStructure) -> Vec<Vec<Bump>> {
    let mut chains: Vec<Vec<Bump>> = Vec::new();
    let mut prev_bump_end: Option<Rational> = None;
    for bump in bumps(f, fs) {
        let joins = matches!(&prev_bump_end, Some(e) if *e == bump.start && !is_dyadic(e));
        prev_bump_end = Some(bump.end.clone());
        match chains.last_mut() {
            Some(chain) if joins => chain.push(bump),
            _ => chains.push(alloc::vec![bump]),
        }
    }
    chains
}

/// A function `[0,1) -> R⁺` equal to 1 off finitely many points, in
/// multiplicative coordinates: `period` is `Λ > 1` and each point is a
/// `(position, value)` pair with position in `[1, Λ)` and value `≠ 1`.
/// The first point sits at position 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteFunction {
    period: Rational,
    points: Vec<(Rational, Rational)>,
}

impl FiniteFunction {
    pub fn new(period: Rational, points: Vec<(Rational, Rational)>) -> Result<FiniteFunction> {
        if period <= Rational::one() {
            return Err(Error::Invalid(alloc::format!(
                "period {} must exceed 1",
                describe(&period)
            )));
        }
        match points.first() {
            None => return Err(Error::Invalid("a finite function needs a point".into())),
            Some((q, _)) if !q.is_one() => {
                return Err(Error::Invalid("first position must be 1".into()))
            }
            _ => {}
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::Invalid("positions must increase".into()));
            }
        }
        for (q, z) in &points {
            if q >= &period {
                return Err(Error::Invalid(alloc::format!(
                    "position {} not below the period",
                    describe(q)
                )));
            }
            if z.is_one() || *z <= Rational::zero() {
                return Err(Error::Invalid(alloc::format!(
                    "value {} must be positive and differ from 1",
                    describe(z)
                )));
            }
        }
        Ok(FiniteFunction { period, points })
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Value at a position in `[1, Λ)`; 1 away from the points.
    pub fn value_at(&self, position: &Rational) -> Rational {
        match self.points.binary_search_by(|p| p.0.cmp(position)) {
            Ok(i) => self.points[i].1.clone(),
            Err(_) => Rational::one(),
        }
    }

    /// Re-anchors at point `k`: positions are divided by `q_k`, and the
    /// points before `k` wrap around by a factor `Λ`.
    pub fn rotate(&self, k: usize) -> FiniteFunction {
        let qk = &self.points[k].0;
        let mut points = Vec::with_capacity(self.points.len());
        for (q, z) in &self.points[k..] {
            points.push((q / qk, z.clone()));
        }
        for (q, z) in &self.points[..k] {
            points.push((q * &self.period / qk, z.clone()));
        }
        FiniteFunction {
            period: self.period.clone(),
            points,
        }
    }

    pub fn rotations(&self) -> impl Iterator<Item = FiniteFunction> + '_ {
        (0..self.points.len()).map(|k| self.rotate(k))
    }

    /// Lexicographically least rotation; equal for equivalent functions.
    pub fn canonical(&self) -> FiniteFunction {
        self.rotations().min().expect("at least one point")
    }

    /// Product of all values.
    pub fn total(&self) -> Rational {
        self.points.iter().map(|p| &p.1).product()
    }

    /// Multiplies every position by `shift` (in `[1, Λ)`) modulo `Λ`.
    fn translate(&self, shift: &Rational) -> Vec<(Rational, Rational)> {
        let mut out: Vec<_> = self
            .points
            .iter()
            .map(|(q, z)| {
                let mut q = q * shift;
                if q >= self.period {
                    q /= &self.period;
                }
                (q, z.clone())
            })
            .collect();
        out.sort();
        out
    }
}

/// Orbit-collapsed node data of an increasing bump map, together with the
/// representative of the anchor orbit inside the initial linear piece.
#[derive(Clone, Debug)]
pub(crate) struct OrbitData {
    pub ff: FiniteFunction,
    pub anchor_rep: Rational,
}

fn reduce_mod_period(mut q: Rational, period: &Rational) -> Rational {
    let one = Rational::one();
    while &q >= period {
        q /= period;
    }
    while q < one {
        q *= period;
    }
    q
}

/// Computes the finite function of an increasing bump map `g` on `[a,b]`
/// (`g(x) > x` inside).
pub(crate) fn orbit_data(g: &PlMap) -> Result<OrbitData> {
    let (a, _) = g.domain();
    let lambda = g.initial_slope();
    if lambda <= Rational::one() {
        return Err(Error::Internal("increasing bump with initial slope <= 1".into()));
    }
    let nodes: Vec<(Rational, Rational)> = g
        .nodes()
        .enumerate()
        .map(|(i, x)| (x.clone(), g.node_ratio(i)))
        .collect();
    let Some(p_min) = nodes.first().map(|n| n.0.clone()) else {
        return Err(Error::Internal("bump map without nodes".into()));
    };
    let ginv = g.inverse();
    // Walk back into (a, p_min], where g is multiplication by λ about a.
    let representative = |x: &Rational| {
        let mut r = x.clone();
        while r > p_min {
            r = ginv.image(&r);
        }
        r
    };
    let base = &p_min - a;
    let mut orbits: BTreeMap<Rational, Rational> = BTreeMap::new();
    let mut node_orbit: Vec<(Rational, Rational)> = Vec::with_capacity(nodes.len());
    for (x, ratio) in &nodes {
        let rep = representative(x);
        let pos = reduce_mod_period((&rep - a) / &base, &lambda);
        *orbits.entry(pos.clone()).or_insert_with(Rational::one) *= ratio;
        node_orbit.push((pos, rep));
    }
    let anchor = node_orbit
        .iter()
        .find(|(pos, _)| !orbits[pos].is_one())
        .cloned()
        .ok_or_else(|| Error::Internal("every orbit has trivial slope-ratio product".into()))?;
    let mut points: Vec<(Rational, Rational)> = orbits
        .into_iter()
        .filter(|(_, z)| !z.is_one())
        .map(|(pos, z)| (reduce_mod_period(pos / &anchor.0, &lambda), z))
        .collect();
    points.sort();
    Ok(OrbitData {
        ff: FiniteFunction::new(lambda, points)?,
        anchor_rep: anchor.1,
    })
}

/// The finite function `ψ` of a bump, anchored at the orbit of the least
/// node with nontrivial orbit product. Decreasing bumps use the inverse.
pub fn finite_function_of_bump(bump: &Bump) -> Result<FiniteFunction> {
    Ok(orbit_data(&bump.increasing())?.ff)
}

/// Finite function of a single-bump map given on its own interval.
pub fn finite_function_of_map(g: &PlMap) -> Result<FiniteFunction> {
    let fs = fixed_structure(g);
    let bs = bumps(g, &fs);
    match bs.as_slice() {
        [b] if b.start == *g.domain().0 && b.end == *g.domain().1 => finite_function_of_bump(b),
        _ => Err(Error::Domain("map is not a single bump".into())),
    }
}

/// Equivalence under translation of `[0,1)` modulo 1.
pub fn ff_equivalent(c1: &FiniteFunction, c2: &FiniteFunction) -> bool {
    c1.period == c2.period && c1.len() == c2.len() && c1.rotations().any(|r| &r == c2)
}

/// Largest `p` such that the function is invariant under translation by
/// `1/p`. Only `p` with `Λ^{1/p}` rational can qualify.
pub fn ff_max_symmetry(c: &FiniteFunction) -> u64 {
    let n = c.len();
    for p in (2..=n).rev() {
        if n % p != 0 {
            continue;
        }
        let Some(shift) = rational_root(&c.period, p as u32) else {
            continue;
        };
        if c.translate(&shift) == c.points {
            return p as u64;
        }
    }
    1
}

/// Order on anchored finite functions: compare values at the least
/// position where they differ, absent positions counting as 1.
pub fn compare_finite(c1: &FiniteFunction, c2: &FiniteFunction) -> Ordering {
    let (mut i, mut j) = (0, 0);
    let one = Rational::one();
    loop {
        let (pos_a, pos_b) = (c1.points.get(i).map(|p| &p.0), c2.points.get(j).map(|p| &p.0));
        let (va, vb) = match (pos_a, pos_b) {
            (None, None) => return Ordering::Equal,
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
                (&c1.points[i - 1].1, &c2.points[j - 1].1)
            }
            (Some(x), Some(y)) if x < y => {
                i += 1;
                (&c1.points[i - 1].1, &one)
            }
            (Some(_), None) => {
                i += 1;
                (&c1.points[i - 1].1, &one)
            }
            _ => {
                j += 1;
                (&one, &c2.points[j - 1].1)
            }
        };
        match va.cmp(vb) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
}

/// `(Σ1, Σ2, Σ3)`, with each `Σ3` entry in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaInvariant {
    pub sign_seq: Vec<Sign>,
    pub slopes: Vec<Rational>,
    pub classes: Vec<FiniteFunction>,
}

pub fn sigma_of(f: &PlMap) -> Result<SigmaInvariant> {
    let fs = fixed_structure(f);
    let bs = bumps(f, &fs);
    let mut classes = Vec::with_capacity(bs.len());
    for b in &bs {
        classes.push(finite_function_of_bump(b)?.canonical());
    }
    Ok(SigmaInvariant {
        sign_seq: fs.signs(),
        slopes: bs.iter().map(Bump::initial_slope).collect(),
        classes,
    })
}

/// Which layer of `Σ` separates two maps, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaMismatch {
    Sigma1,
    Sigma2,
    Sigma3,
}

pub fn sigma_mismatch(s: &SigmaInvariant, t: &SigmaInvariant) -> Option<SigmaMismatch> {
    if s.sign_seq != t.sign_seq {
        Some(SigmaMismatch::Sigma1)
    } else if s.slopes != t.slopes {
        Some(SigmaMismatch::Sigma2)
    } else if s.classes.iter().zip(&t.classes).any(|(c, d)| !ff_equivalent(c, d)) {
        Some(SigmaMismatch::Sigma3)
    } else {
        None
    }
}

/// Conjugacy in PL⁺(0,1).
pub fn sigma_equal(f: &PlMap, g: &PlMap) -> Result<bool> {
    Ok(sigma_mismatch(&sigma_of(f)?, &sigma_of(g)?).is_none())
}
