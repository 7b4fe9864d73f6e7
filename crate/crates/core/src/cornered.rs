//! Cornered functions and the slope data of conjugators onto them.
//!
//! A one-bump map is *cornered* when all its nodes fit inside a single
//! fundamental domain `(x, l(x))`. For a given initial slope `λ` and a
//! finite function `c` there is exactly one cornered map `l` with `ψ_l = c`,
//! and its nodes are given in closed form ([`cornered_from_ff`]).
//!
//! For a bump of `f`, the *minimum* cornered function uses the least
//! rotation of the bump's finite function under [`compare_finite`]. Every
//! conjugator `k` with `k f k⁻¹ = l` is determined by its initial slope;
//! [`alpha_beta`] computes the initial slope in closed form and the final
//! slope of that same conjugator.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exact::{describe, Rational};
use crate::plmap::{PlMap, Sign};
use crate::sigma::{compare_finite, orbit_data, Bump, FiniteFunction, OrbitData};
use crate::{Error, Result};

/// Upper bound on elementary conjugation steps before giving up.
const MAX_ELEMENTARY_STEPS: usize = 100_000;
/// Upper bound on fundamental domains visited when extending a germ.
const MAX_GERM_STEPS: usize = 100_000;

/// A one-bump map whose nodes lie in `(x, l(x))` (increasing) or
/// `(l(x), x)` (decreasing), with the point `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorneredFunction {
    pub map: PlMap,
    pub sign: Sign,
    pub witness: Rational,
}

impl CorneredFunction {
    /// Recognises a cornered single-bump self-map of its domain.
    pub fn recognize(map: &PlMap) -> Option<CorneredFunction> {
        let (a, _) = map.domain();
        let probe = (a + map.nodes().next().unwrap_or(map.domain().1)) / Rational::from_integer(2.into());
        let sign = Sign::of(&(map.image(&probe) - &probe));
        let inc = match sign {
            Sign::Pos => map.clone(),
            Sign::Neg => map.inverse(),
            Sign::Zero => return None,
        };
        let x = increasing_witness(&inc)?;
        let witness = match sign {
            Sign::Pos => x,
            _ => map.image(&x),
        };
        Some(CorneredFunction {
            map: map.clone(),
            sign,
            witness,
        })
    }

    pub fn inverse(&self) -> CorneredFunction {
        CorneredFunction {
            map: self.map.inverse(),
            sign: match self.sign {
                Sign::Pos => Sign::Neg,
                Sign::Neg => Sign::Pos,
                Sign::Zero => Sign::Zero,
            },
            witness: self.map.image(&self.witness),
        }
    }
}

/// For an increasing bump map: a point `x` with every node in `(x, g(x))`.
fn increasing_witness(g: &PlMap) -> Option<Rational> {
    let first = g.nodes().next()?;
    let last = g.nodes().last()?;
    if *last >= g.image(first) {
        return None;
    }
    let lo = g.preimage(last);
    let lo = if &lo > g.domain().0 { lo } else { g.domain().0.clone() };
    Some((lo + first) / Rational::from_integer(2.into()))
}

/// Least rotation under [`compare_finite`].
pub fn minimum_rotation(c: &FiniteFunction) -> FiniteFunction {
    c.rotations()
        .min_by(compare_finite)
        .expect("finite functions have a point")
}

fn check_period(c: &FiniteFunction, lambda: &Rational) -> Result<()> {
    if c.period() != lambda {
        return Err(Error::Domain(alloc::format!(
            "initial slope {} differs from the period {}",
            describe(lambda),
            describe(c.period())
        )));
    }
    Ok(())
}

/// First node `q_0` of the cornered map with initial slope `λ` and finite
/// function `c` on `(a,b)`.
pub fn first_node(c: &FiniteFunction, lambda: &Rational, a: &Rational, b: &Rational) -> Result<Rational> {
    check_period(c, lambda)?;
    if lambda * c.total() >= Rational::one() {
        return Err(Error::Domain(alloc::format!(
            "final slope {} of the cornered map would not be below 1",
            describe(&(lambda * c.total()))
        )));
    }
    let mut prefix = Rational::one();
    let mut denom = Rational::zero();
    for (pos, z) in c.points() {
        denom += lambda * pos * &prefix * (Rational::one() - z);
        prefix *= z;
    }
    let numer = (b - a) * (Rational::one() - lambda * &prefix);
    if denom.is_zero() {
        return Err(Error::Domain("degenerate finite function".into()));
    }
    Ok(a + numer / denom)
}

/// The unique increasing cornered map on `(a,b)` with initial slope `λ`
/// and finite function `c`.
pub fn cornered_from_ff(
    c: &FiniteFunction,
    lambda: &Rational,
    a: &Rational,
    b: &Rational,
) -> Result<CorneredFunction> {
    let q0 = first_node(c, lambda, a, b)?;
    let offset = &q0 - a;
    let mut points = Vec::with_capacity(c.len() + 2);
    points.push((a.clone(), a.clone()));
    let mut slope = lambda.clone();
    for (pos, z) in c.points() {
        let x = a + pos * &offset;
        let (px, py) = points.last().expect("nonempty");
        let y = py + &slope * (&x - px);
        points.push((x, y));
        slope *= z;
    }
    let (px, py) = points.last().expect("nonempty");
    if px >= b {
        return Err(Error::Domain("nodes do not fit inside the interval".into()));
    }
    let end = py + &slope * (b - px);
    if &end != b {
        return Err(Error::Internal(alloc::format!(
            "cornered map ends at {} instead of {}",
            describe(&end),
            describe(b)
        )));
    }
    points.push((b.clone(), b.clone()));
    let map = PlMap::new(points)?;
    let witness = increasing_witness(&map)
        .ok_or_else(|| Error::Internal("constructed map is not cornered".into()))?;
    Ok(CorneredFunction {
        map,
        sign: Sign::Pos,
        witness,
    })
}

/// The map of `(a,b)` affine on `(a,x)` and `(x,b)` with slope ratio `r`
/// at `x`.
pub fn elementary_map(a: &Rational, b: &Rational, x: &Rational, r: &Rational) -> Result<PlMap> {
    if !(a < x && x < b) || *r <= Rational::zero() {
        return Err(Error::Domain(alloc::format!(
            "elementary map needs a < x < b and r > 0, got x = {}, r = {}",
            describe(x),
            describe(r)
        )));
    }
    let zeta = (b - a) / ((x - a) + r * (b - x));
    PlMap::new(alloc::vec![
        (a.clone(), a.clone()),
        (x.clone(), a + zeta * (x - a)),
        (b.clone(), b.clone()),
    ])
}

/// Initial slope of the elementary map at the final node of the cornered
/// map for `c`, with the final value of `c` as ratio.
pub fn zeta_of(c: &FiniteFunction, lambda: &Rational, a: &Rational, b: &Rational) -> Result<Rational> {
    let q0 = first_node(c, lambda, a, b)?;
    let (pos, z) = c.points().last().expect("nonempty");
    Ok((b - a) / (pos * (&q0 - a) * (Rational::one() - z) + (b - a) * z))
}

fn conjugate(h: &PlMap, g: &PlMap) -> Result<PlMap> {
    h.compose(g)?.compose(&h.inverse())
}

/// Conjugates an increasing bump map onto its minimum cornered form by
/// elementary conjugations. Returns `(k, l)` with `k g k⁻¹ = l`.
fn elementary_normal_form(g: &PlMap) -> Result<(PlMap, PlMap)> {
    let (a, b) = g.domain();
    let (a, b) = (a.clone(), b.clone());
    let data = orbit_data(g)?;
    let lambda = g.initial_slope();
    let target = cornered_from_ff(&minimum_rotation(&data.ff), &lambda, &a, &b)?.map;

    let step = |cur: &PlMap| -> Result<PlMap> {
        let last = cur.node_count() - 1;
        let x = cur.nodes().last().expect("bump has nodes").clone();
        elementary_map(&a, &b, &x, &cur.node_ratio(last))
    };

    let mut k = PlMap::identity_on(a.clone(), b.clone());
    let mut cur = g.clone();
    let mut steps = 0;
    while increasing_witness(&cur).is_none() {
        let h = step(&cur)?;
        cur = conjugate(&h, &cur)?;
        k = h.compose(&k)?;
        steps += 1;
        if steps > MAX_ELEMENTARY_STEPS {
            return Err(Error::Internal("elementary conjugation did not corner the bump".into()));
        }
    }
    // Cycle through the cornered rotations.
    for _ in 0..=data.ff.len() {
        if cur == target {
            break;
        }
        let h = step(&cur)?;
        cur = conjugate(&h, &cur)?;
        k = h.compose(&k)?;
    }
    if cur != target || k.compose(g)? != target.compose(&k)? {
        return Err(Error::Internal("elementary conjugator failed verification".into()));
    }
    Ok((k, target))
}

/// `(k, l)` with `k f| k⁻¹ = l` and `l` the minimum cornered function of
/// the bump (decreasing when the bump is). Built by elementary
/// conjugations and verified exactly.
pub fn conjugator_to_min_cornered(bump: &Bump) -> Result<(PlMap, CorneredFunction)> {
    let (k, l) = elementary_normal_form(&bump.increasing())?;
    let l = CorneredFunction::recognize(&l)
        .ok_or_else(|| Error::Internal("normal form is not cornered".into()))?;
    let l = if bump.sign == Sign::Pos { l } else { l.inverse() };
    if k.compose(&bump.restriction)? != l.map.compose(&k)? {
        return Err(Error::Internal("conjugator does not conjugate the bump".into()));
    }
    Ok((k, l))
}

/// The unique map `k: [a,b] -> [c,d]` with `k g = l k` whose initial
/// slope is `slope`, for increasing bump maps `g` on `[a,b]` and `l` on
/// `[c,d]`. `None` when that germ does not extend to a PL map.
pub fn extend_conjugator(g: &PlMap, l: &PlMap, slope: &Rational) -> Result<Option<PlMap>> {
    if g.initial_slope() != l.initial_slope() || *slope <= Rational::zero() {
        return Ok(None);
    }
    let (a, b) = g.domain();
    let (c, d) = l.domain();
    let (g_first, g_last) = match (g.nodes().next(), g.nodes().last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Domain("not a bump map".into())),
    };
    let (l_first, l_last) = match (l.nodes().next(), l.nodes().last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::Domain("not a bump map".into())),
    };
    // k is affine wherever both g and l are still in their initial pieces.
    let reach = core::cmp::min(g_first - a, (l_first - c) / slope);
    let x0 = a + &reach;
    let mut k = PlMap::affine(a.clone(), x0, c.clone(), c + slope * reach);
    let ginv = g.inverse();
    for _ in 0..MAX_GERM_STEPS {
        let x = k.domain().1.clone();
        let lo = ginv.image(&x);
        if &lo >= g_last && &k.image(&lo) >= l_last {
            // Past every node: k repeats one affine piece up to b.
            let piece = k.restrict(&lo, &x)?;
            if !piece.is_affine() {
                return Ok(None);
            }
            let kx = k.image(&x);
            if &kx + piece.initial_slope() * (b - &x) != *d {
                return Ok(None);
            }
            let tail = PlMap::affine(x, b.clone(), kx, d.clone());
            let k = PlMap::glue([&k, &tail])?;
            if k.compose(g)? != l.compose(&k)? {
                return Err(Error::Internal("germ extension failed verification".into()));
            }
            return Ok(Some(k));
        }
        let gx = g.image(&x);
        let back = ginv.restrict(&x, &gx)?;
        let known = k.restrict(&lo, &x)?;
        let forward = l.restrict(&k.image(&lo), &k.image(&x))?;
        let piece = forward.compose(&known)?.compose(&back)?;
        k = PlMap::glue([&k, &piece])?;
    }
    Err(Error::Internal("germ extension did not reach the end of the bump".into()))
}

/// Product `ζ_t ⋯ ζ_{n+1} · (q - a)/(r - a)`: the initial slope of a
/// conjugator from `g` to the cornered map whose (anchored) finite
/// function is `target`. `q` is the first node of the cornered map for the
/// unrotated class and `r` the anchor orbit's point in the initial piece.
fn slope_towards(g: &PlMap, data: &OrbitData, target: &FiniteFunction) -> Result<Rational> {
    let (a, b) = g.domain();
    let lambda = g.initial_slope();
    let c = &data.ff;
    let count = c.len();
    // c_j is anchored at point j+1, so c_t = c and c_j's last point is j.
    let rotation = |j: usize| c.rotate((j + 1) % count);
    let n = (0..count)
        .rev()
        .find(|&j| &rotation(j) == target)
        .ok_or_else(|| Error::Internal("target is not a rotation of the class".into()))?;
    let mut product = Rational::one();
    for j in n + 1..count {
        product *= zeta_of(&rotation(j), &lambda, a, b)?;
    }
    let q0 = first_node(c, &lambda, a, b)?;
    Ok(product * (q0 - a) / (&data.anchor_rep - a))
}

/// Initial and final slope of one conjugator onto the minimum cornered
/// function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBeta {
    pub alpha: Rational,
    pub beta: Rational,
}

/// Everything about a bump's conjugation onto its minimum cornered form.
#[derive(Clone, Debug)]
pub struct BumpNormalForm {
    /// The bump map if increasing, else its inverse.
    pub increasing: PlMap,
    /// Minimum rotation of the bump's finite function.
    pub class: FiniteFunction,
    /// Increasing minimum cornered map on the bump's interval.
    pub cornered: PlMap,
    /// `k` with `k g k⁻¹ = cornered` and initial slope `alpha`.
    pub conjugator: PlMap,
    pub slopes: AlphaBeta,
}

pub fn normal_form(bump: &Bump) -> Result<BumpNormalForm> {
    let g = bump.increasing();
    let data = orbit_data(&g)?;
    let (a, b) = g.domain();
    let lambda = g.initial_slope();
    let class = minimum_rotation(&data.ff);
    let alpha = slope_towards(&g, &data, &class)?;
    let cornered = cornered_from_ff(&class, &lambda, a, b)?.map;
    let conjugator = extend_conjugator(&g, &cornered, &alpha)?.ok_or_else(|| {
        Error::Internal(alloc::format!(
            "initial slope {} does not give a conjugator",
            describe(&alpha)
        ))
    })?;
    let beta = conjugator.final_slope();
    Ok(BumpNormalForm {
        increasing: g,
        class,
        cornered,
        conjugator,
        slopes: AlphaBeta { alpha, beta },
    })
}

/// `α` in closed form and `β` as the final slope of the conjugator with
/// initial slope `α`.
pub fn alpha_beta(bump: &Bump) -> Result<AlphaBeta> {
    Ok(normal_form(bump)?.slopes)
}

/// Final slope of some conjugator onto the minimum cornered function,
/// computed in closed form on the reflected bump `τ g⁻¹ τ`. Agrees with
/// [`alpha_beta`]'s `β` up to a power of the final slope of the bump's
/// centralizer generator.
pub fn beta_by_reflection(bump: &Bump) -> Result<Rational> {
    let g = bump.increasing();
    let (a, b) = g.domain();
    let class = minimum_rotation(&orbit_data(&g)?.ff);
    let l = cornered_from_ff(&class, &g.initial_slope(), a, b)?.map;
    let reflected = g.inverse().reflect();
    let target = orbit_data(&l.inverse().reflect())?.ff;
    slope_towards(&reflected, &orbit_data(&reflected)?, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fixtures;
    use crate::plmap::fixed_structure;
    use crate::sigma::{bumps, finite_function_of_map};
    use alloc::vec;

    fn ff(period: i64, pts: &[(i64, i64, i64)]) -> FiniteFunction {
        FiniteFunction::new(
            int(period),
            pts.iter().map(|&(q, n, d)| (int(q), rat(n, d))).collect(),
        )
        .unwrap()
    }

    fn only_bump(f: &PlMap) -> Bump {
        let mut b = bumps(f, &fixed_structure(f));
        assert_eq!(b.len(), 1);
        b.pop().unwrap()
    }

    #[test]
    fn minimum_rotation_examples() {
        assert_eq!(
            minimum_rotation(&ff(4, &[(1, 1, 2), (2, 1, 4)])),
            ff(4, &[(1, 1, 4), (2, 1, 2)])
        );
        assert_eq!(minimum_rotation(&ff(2, &[(1, 1, 4)])), ff(2, &[(1, 1, 4)]));
        let sym = ff(4, &[(1, 1, 4), (2, 1, 4)]);
        assert_eq!(minimum_rotation(&sym), sym);
    }

    #[test]
    fn first_node_formula() {
        let (a, b) = (int(0), int(1));
        assert_eq!(first_node(&ff(2, &[(1, 1, 8)]), &int(2), &a, &b).unwrap(), rat(3, 7));
        assert_eq!(first_node(&ff(2, &[(1, 1, 4)]), &int(2), &a, &b).unwrap(), rat(1, 3));
        let c = cornered_from_ff(&ff(2, &[(1, 1, 8)]), &int(2), &a, &b).unwrap();
        assert_eq!(c.map.slopes(), vec![int(2), rat(1, 4)]);
    }

    #[test]
    fn cornered_examples() {
        let (a, b) = (int(0), int(1));
        let l = cornered_from_ff(&ff(2, &[(1, 1, 4)]), &int(2), &a, &b).unwrap();
        assert_eq!(l.map, fixtures::l_minus());
        let l = cornered_from_ff(&ff(4, &[(1, 1, 4), (2, 1, 4)]), &int(4), &a, &b).unwrap();
        assert_eq!(l.map, fixtures::l2());
        assert!(l.witness < rat(1, 6));
        assert!(l.map.image(&l.witness) > rat(1, 3));
    }

    #[test]
    fn cornered_preconditions() {
        let (a, b) = (int(0), int(1));
        // Wrong λ for the period.
        assert!(cornered_from_ff(&ff(2, &[(1, 1, 4)]), &int(4), &a, &b).is_err());
        // λ·z = 1: no final slope below 1.
        assert!(cornered_from_ff(&ff(2, &[(1, 1, 2)]), &int(2), &a, &b).is_err());
    }

    #[test]
    fn cornered_round_trip_on_subinterval() {
        let c = ff(8, &[(1, 1, 2), (3, 1, 4), (5, 1, 2)]);
        let (a, b) = (rat(1, 3), rat(7, 8));
        let l = cornered_from_ff(&c, &int(8), &a, &b).unwrap();
        assert_eq!(finite_function_of_map(&l.map).unwrap(), c);
    }

    #[test]
    fn elementary_examples() {
        let (a, b) = (int(0), int(1));
        let h = elementary_map(&a, &b, &rat(1, 2), &rat(1, 2)).unwrap();
        assert_eq!(
            h.breakpoints(),
            &[(int(0), int(0)), (rat(1, 2), rat(2, 3)), (int(1), int(1))]
        );
        assert_eq!(h.initial_slope(), rat(4, 3));
        let h = elementary_map(&a, &b, &rat(3, 7), &rat(1, 8)).unwrap();
        assert_eq!(h.initial_slope(), int(2));
        assert!(elementary_map(&a, &b, &rat(1, 3), &int(1)).unwrap().is_identity());
        assert!(elementary_map(&a, &b, &int(1), &int(2)).is_err());
        assert!(elementary_map(&a, &b, &rat(1, 2), &int(0)).is_err());
    }

    #[test]
    fn zeta_examples() {
        let (a, b) = (int(0), int(1));
        assert_eq!(zeta_of(&ff(2, &[(1, 1, 8)]), &int(2), &a, &b).unwrap(), int(2));
        assert_eq!(zeta_of(&ff(4, &[(1, 1, 4), (2, 1, 4)]), &int(4), &a, &b).unwrap(), int(2));
    }

    #[test]
    fn x0_conjugates_onto_reflected_l_minus() {
        let bump = only_bump(&fixtures::x0());
        let (k, l) = conjugator_to_min_cornered(&bump).unwrap();
        assert_eq!(l.map, fixtures::l_minus().inverse());
        assert_eq!(l.sign, Sign::Neg);
        assert_eq!(k.compose(&fixtures::x0()).unwrap(), l.map.compose(&k).unwrap());
        let ab = alpha_beta(&bump).unwrap();
        assert_eq!(ab.alpha, rat(4, 3));
        assert_eq!(k.initial_slope(), rat(4, 3));
    }

    #[test]
    fn x1_alpha() {
        let x1 = fixtures::x1();
        let bs = bumps(&x1, &fixed_structure(&x1));
        assert_eq!(alpha_beta(&bs[0]).unwrap().alpha, rat(4, 3));
    }

    #[test]
    fn already_minimum_cornered() {
        let bump = only_bump(&fixtures::l_minus());
        let (k, l) = conjugator_to_min_cornered(&bump).unwrap();
        assert!(k.is_identity());
        assert_eq!(l.map, fixtures::l_minus());
        assert_eq!(alpha_beta(&bump).unwrap(), AlphaBeta { alpha: int(1), beta: int(1) });
    }

    #[test]
    fn x0_squared_pairs_with_l2() {
        let f = fixtures::x0().power(2).unwrap();
        let bump = only_bump(&f);
        let (k, l) = conjugator_to_min_cornered(&bump).unwrap();
        assert_eq!(l.map, fixtures::l2().inverse());
        assert_eq!(k.compose(&f).unwrap(), l.map.compose(&k).unwrap());
    }

    #[test]
    fn germ_extension_rejects_wrong_slopes() {
        let g = fixtures::x0().inverse();
        let l = fixtures::l_minus();
        assert!(extend_conjugator(&g, &l, &rat(4, 3)).unwrap().is_some());
        // The centralizer of x0 is generated by x0 itself: slopes 4/3 · 2^k.
        assert!(extend_conjugator(&g, &l, &rat(8, 3)).unwrap().is_some());
        assert!(extend_conjugator(&g, &l, &rat(5, 3)).unwrap().is_none());
        assert!(extend_conjugator(&g, &fixtures::l2(), &int(1)).unwrap().is_none());
    }

    #[test]
    fn reflection_route_agrees_up_to_centralizer() {
        let bump = only_bump(&fixtures::x0());
        let ab = alpha_beta(&bump).unwrap();
        let reflected = beta_by_reflection(&bump).unwrap();
        let ratio = reflected / ab.beta;
        assert!(crate::exact::pow2_exponent(&ratio).unwrap().is_some());
    }

    #[test]
    fn recognize_cornered() {
        assert!(CorneredFunction::recognize(&fixtures::l_minus()).is_some());
        let dec = CorneredFunction::recognize(&fixtures::l_minus().inverse()).unwrap();
        assert_eq!(dec.sign, Sign::Neg);
        assert!(CorneredFunction::recognize(&fixtures::x0()).is_none());
    }
}
