//! Deciding conjugacy and building conjugators.
//!
//! `f` and `g` are conjugate in PL⁺(0,1) iff their `Σ` agree, and in F iff
//! additionally their bump chains line up and every chain's `Δ` entries
//! are equivalent. A witness is assembled piece by piece: staircase maps
//! on intervals of fixed points, and on each bump
//! `h_i = (k'_i)⁻¹ ∘ u_i ∘ k_i ∘ f̂_i^{-n_i}` where `k_i`, `k'_i` conjugate
//! the bumps onto their minimum cornered maps, `u_i` is affine and the
//! `n_i` come from the Δ solver.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::delta::{chain_data, delta_equivalent, symmetry_order, ChainDelta, DeltaWitness};
use crate::exact::{describe, is_dyadic, pow2, pow2_exponent, Rational};
use crate::plmap::{check_in_f, FElement, PlMap, Sign};
use crate::roots::pl_root_of_bump;
use crate::cornered::BumpNormalForm;
use crate::sigma::{bump_chains, ff_equivalent, finite_function_of_bump, sigma_mismatch, sigma_of, Bump, SigmaMismatch};
use crate::{Error, Result};

/// The first invariant layer that separates two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    Sigma1,
    Sigma2,
    Sigma3,
    ChainStructure,
    Delta,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::Sigma1 => "sigma1",
            Reason::Sigma2 => "sigma2",
            Reason::Sigma3 => "sigma3",
            Reason::ChainStructure => "chain-structure",
            Reason::Delta => "delta",
        }
    }
}

impl core::fmt::Display for Reason {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of the decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub conjugate: bool,
    pub reason: Option<Reason>,
}

impl Verdict {
    fn yes() -> Verdict {
        Verdict { conjugate: true, reason: None }
    }

    fn no(reason: Reason) -> Verdict {
        Verdict { conjugate: false, reason: Some(reason) }
    }
}

fn sigma_reason(m: SigmaMismatch) -> Reason {
    match m {
        SigmaMismatch::Sigma1 => Reason::Sigma1,
        SigmaMismatch::Sigma2 => Reason::Sigma2,
        SigmaMismatch::Sigma3 => Reason::Sigma3,
    }
}

pub fn conjugate_in_pl(f: &FElement, g: &FElement) -> Result<bool> {
    Ok(sigma_mismatch(&sigma_of(f.map())?, &sigma_of(g.map())?).is_none())
}

/// Per-chain data needed both for the decision and the witness.
struct Chains {
    bumps: Vec<Vec<Bump>>,
    deltas: Vec<ChainDelta>,
    forms: Vec<Vec<BumpNormalForm>>,
}

fn chains_of(f: &FElement) -> Result<Chains> {
    let bumps = bump_chains(f.map(), &f.fixed_structure());
    let mut deltas = Vec::with_capacity(bumps.len());
    let mut forms = Vec::with_capacity(bumps.len());
    for chain in &bumps {
        let (d, nf) = chain_data(chain)?;
        deltas.push(d);
        forms.push(nf);
    }
    Ok(Chains { bumps, deltas, forms })
}

fn chain_shape(c: &Chains) -> Vec<usize> {
    c.bumps.iter().map(Vec::len).collect()
}

/// Decides and, on success, returns the chain data and Δ witnesses.
fn decide_with_data(f: &FElement, g: &FElement) -> Result<(Verdict, Option<(Chains, Chains, Vec<DeltaWitness>)>)> {
    if let Some(m) = sigma_mismatch(&sigma_of(f.map())?, &sigma_of(g.map())?) {
        return Ok((Verdict::no(sigma_reason(m)), None));
    }
    let (cf, cg) = (chains_of(f)?, chains_of(g)?);
    if chain_shape(&cf) != chain_shape(&cg) {
        return Ok((Verdict::no(Reason::ChainStructure), None));
    }
    let mut witnesses = Vec::with_capacity(cf.deltas.len());
    for (x, y) in cf.deltas.iter().zip(&cg.deltas) {
        if x.lambdas != y.lambdas || x.mus != y.mus {
            return Ok((Verdict::no(Reason::ChainStructure), None));
        }
        match delta_equivalent(x, y)? {
            Some(w) => witnesses.push(w),
            None => return Ok((Verdict::no(Reason::Delta), None)),
        }
    }
    Ok((Verdict::yes(), Some((cf, cg, witnesses))))
}

/// Conjugacy in F with the first separating layer.
pub fn decide(f: &FElement, g: &FElement) -> Result<Verdict> {
    Ok(decide_with_data(f, g)?.0)
}

pub fn conjugate_in_f(f: &FElement, g: &FElement) -> Result<bool> {
    Ok(decide(f, g)?.conjugate)
}

/// Powers of 2 summing to a dyadic length, largest first.
fn binary_pieces(len: &Rational) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    let mut rest = len.clone();
    let mut k = pow2_exponent(&rest)?.map_or_else(|| floor_log2(&rest), |e| e);
    while rest > Rational::from_integer(0.into()) {
        let piece = pow2(k);
        if piece <= rest {
            rest -= &piece;
            out.push(piece);
        }
        k -= 1;
    }
    Ok(out)
}

fn floor_log2(q: &Rational) -> i64 {
    let bits = |n: &BigInt| n.bits() as i64;
    let mut k = bits(q.numer()) - bits(q.denom());
    while pow2(k) > *q {
        k -= 1;
    }
    while pow2(k + 1) <= *q {
        k += 1;
    }
    k
}

/// Splits the largest piece in half until there are `count` pieces.
fn refine(mut pieces: Vec<Rational>, count: usize) -> Vec<Rational> {
    while pieces.len() < count {
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .fold((0, &pieces[0]), |best, (i, p)| if p > best.1 { (i, p) } else { best });
        let half = &pieces[idx] / Rational::from_integer(2.into());
        pieces[idx] = half.clone();
        pieces.insert(idx + 1, half);
    }
    pieces
}

/// A map `[a,b] → [c,d]` between dyadic intervals with dyadic nodes and
/// power-of-2 slopes.
pub fn staircase_map(src: (&Rational, &Rational), dst: (&Rational, &Rational)) -> Result<PlMap> {
    let ends = [src.0, src.1, dst.0, dst.1];
    if let Some(bad) = ends.iter().find(|q| !is_dyadic(q)) {
        return Err(Error::Domain(alloc::format!("endpoint {} is not dyadic", describe(bad))));
    }
    if src.0 >= src.1 || dst.0 >= dst.1 {
        return Err(Error::Domain("intervals must be nondegenerate".into()));
    }
    let s = binary_pieces(&(src.1 - src.0))?;
    let d = binary_pieces(&(dst.1 - dst.0))?;
    let n = s.len().max(d.len());
    let (s, d) = (refine(s, n), refine(d, n));
    let mut points = Vec::with_capacity(n + 1);
    let (mut x, mut y) = (src.0.clone(), dst.0.clone());
    points.push((x.clone(), y.clone()));
    for (ps, pd) in s.iter().zip(&d) {
        x += ps;
        y += pd;
        points.push((x.clone(), y.clone()));
    }
    Ok(PlMap::from_increasing(points))
}

fn check_bumps_match(bf: &Bump, bg: &Bump) -> Result<()> {
    let same = bf.sign == bg.sign
        && bf.initial_slope() == bg.initial_slope()
        && ff_equivalent(&finite_function_of_bump(bf)?, &finite_function_of_bump(bg)?);
    if same {
        Ok(())
    } else {
        Err(Error::Domain("bumps are not conjugate in PL⁺".into()))
    }
}

fn bump_conjugator_from_forms(nf: &BumpNormalForm, ng: &BumpNormalForm) -> Result<PlMap> {
    let (a, b) = nf.increasing.domain();
    let (c, d) = ng.increasing.domain();
    let u = PlMap::affine(a.clone(), b.clone(), c.clone(), d.clone());
    ng.conjugator.inverse().compose(&u)?.compose(&nf.conjugator)
}

/// `h` with `h f| h⁻¹ = g|` for PL⁺-conjugate bumps.
pub fn pl_bump_conjugator(bf: &Bump, bg: &Bump) -> Result<PlMap> {
    check_bumps_match(bf, bg)?;
    let nf = crate::cornered::normal_form(bf)?;
    let ng = crate::cornered::normal_form(bg)?;
    let h = bump_conjugator_from_forms(&nf, &ng)?;
    if h.compose(&bf.restriction)? != bg.restriction.compose(&h)? {
        return Err(Error::Internal("bump conjugator failed verification".into()));
    }
    Ok(h)
}

fn big_to_i64(n: &BigInt) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::Internal("exponent out of range".into()))
}

/// A verified `h ∈ F` with `h f h⁻¹ = g`, or `None` if none exists.
pub fn conjugator_witness(f: &FElement, g: &FElement) -> Result<Option<FElement>> {
    let (verdict, data) = decide_with_data(f, g)?;
    if !verdict.conjugate {
        return Ok(None);
    }
    let (cf, cg, witnesses) = data.expect("conjugate verdicts carry data");

    // Bump pieces, keyed by the start of the bump in f's coordinates.
    let mut bump_pieces: Vec<(Rational, PlMap)> = Vec::new();
    for (ci, chain) in cf.bumps.iter().enumerate() {
        let w = &witnesses[ci];
        for (bi, bump) in chain.iter().enumerate() {
            let base = bump_conjugator_from_forms(&cf.forms[ci][bi], &cg.forms[ci][bi])?;
            let n = big_to_i64(&w.n[bi])?;
            let piece = if n == 0 {
                base
            } else {
                let root = pl_root_of_bump(bump, symmetry_order(bump)?)?;
                base.compose(&root.power(-n)?)?
            };
            if bi == 0 {
                let expected = pow2(-big_to_i64(&w.m)?);
                if piece.initial_slope() != expected {
                    return Err(Error::Internal("chain conjugator has the wrong initial slope".into()));
                }
            }
            bump_pieces.push((bump.start.clone(), piece));
        }
    }

    let fs_f = f.fixed_structure();
    let fs_g = g.fixed_structure();
    let mut pieces = Vec::with_capacity(fs_f.intervals.len());
    let mut next_bump = bump_pieces.into_iter();
    for (i_f, i_g) in fs_f.intervals.iter().zip(&fs_g.intervals) {
        if i_f.sign == Sign::Zero {
            pieces.push(staircase_map((&i_f.start, &i_f.end), (&i_g.start, &i_g.end))?);
        } else {
            let (start, piece) = next_bump
                .next()
                .ok_or_else(|| Error::Internal("bump count mismatch".into()))?;
            debug_assert_eq!(start, i_f.start);
            pieces.push(piece);
        }
    }
    let h = PlMap::glue(pieces.iter())?;
    let h = check_in_f(&h)
        .map_err(|d| Error::Internal(alloc::format!("assembled conjugator left F: {d}")))?;
    if h.compose(f) != g.compose(&h) {
        return Err(Error::Internal("assembled conjugator does not conjugate".into()));
    }
    Ok(Some(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::fixtures;
    use crate::plmap::fixed_structure;
    use crate::sigma::bumps;
    use crate::word::{parse_word, word_to_element};

    fn elem(f: PlMap) -> FElement {
        check_in_f(&f).unwrap()
    }

    fn word(text: &str) -> FElement {
        word_to_element(&parse_word(text).unwrap())
    }

    #[test]
    fn pl_examples() {
        let x0 = elem(fixtures::x0());
        assert!(!conjugate_in_pl(&x0, &x0.inverse()).unwrap());
        assert!(!conjugate_in_pl(&x0, &x0.power(2)).unwrap());
        let h = elem(fixtures::x1());
        assert!(conjugate_in_pl(&x0, &x0.conjugate_by(&h)).unwrap());
    }

    #[test]
    fn known_verdicts() {
        let x0 = elem(fixtures::x0());
        let x1 = elem(fixtures::x1());
        assert_eq!(decide(&x0, &x1).unwrap(), Verdict::no(Reason::Sigma1));
        assert_eq!(decide(&x0, &x0.inverse()).unwrap(), Verdict::no(Reason::Sigma1));
        assert_eq!(decide(&x0, &x0.power(2)).unwrap(), Verdict::no(Reason::Sigma2));
        assert_eq!(decide(&x0, &x0).unwrap(), Verdict::yes());
    }

    #[test]
    fn staircase_examples() {
        let m = staircase_map((&int(0), &rat(1, 2)), (&int(0), &rat(3, 4))).unwrap();
        assert_eq!(m.slopes(), alloc::vec![int(2), int(1)]);
        assert_eq!(m.breakpoints()[1], (rat(1, 4), rat(1, 2)));
        let m = staircase_map((&rat(1, 4), &rat(5, 8)), (&rat(1, 4), &rat(5, 8))).unwrap();
        assert!(m.is_identity());
        assert!(staircase_map((&int(0), &rat(1, 3)), (&int(0), &int(1))).is_err());
        let m = staircase_map((&rat(3, 8), &rat(15, 16)), (&rat(1, 16), &rat(1, 2))).unwrap();
        assert!(m.slopes().iter().all(|s| pow2_exponent(s).unwrap().is_some()));
        assert!(m.nodes().all(is_dyadic));
    }

    #[test]
    fn bump_conjugators() {
        let x0 = fixtures::x0();
        let b = bumps(&x0, &fixed_structure(&x0)).pop().unwrap();
        let h = pl_bump_conjugator(&b, &b).unwrap();
        assert_eq!(h.compose(&x0).unwrap(), x0.compose(&h).unwrap());
        let l = fixtures::l_minus().inverse();
        let bl = bumps(&l, &fixed_structure(&l)).pop().unwrap();
        let h = pl_bump_conjugator(&b, &bl).unwrap();
        assert_eq!(h.compose(&x0).unwrap(), l.compose(&h).unwrap());
        let x0sq = x0.power(2).unwrap();
        let b2 = bumps(&x0sq, &fixed_structure(&x0sq)).pop().unwrap();
        assert!(matches!(pl_bump_conjugator(&b, &b2), Err(Error::Domain(_))));
    }

    #[test]
    fn witnesses() {
        let x0 = elem(fixtures::x0());
        assert!(conjugator_witness(&x0, &x0).unwrap().unwrap().is_identity());
        assert_eq!(conjugator_witness(&x0, &elem(fixtures::x1())).unwrap(), None);
        for (fw, hw) in [
            ("x0", "x1"),
            ("x1", "x0 x1^-1"),
            ("x0^2 x1^-1", "x1 x0^-1 x1"),
            ("x1 x0^-1 x1^2", "x0^-2 x1"),
        ] {
            let (f, h) = (word(fw), word(hw));
            let g = f.conjugate_by(&h);
            let w = conjugator_witness(&f, &g).unwrap().expect("conjugate");
            assert_eq!(w.compose(&f), g.compose(&w));
        }
    }

    #[test]
    fn chain_witness() {
        let w = elem(fixtures::w());
        let h = word("x1 x0 x1^-1");
        let g = w.conjugate_by(&h);
        let k = conjugator_witness(&w, &g).unwrap().unwrap();
        assert_eq!(k.compose(&w), g.compose(&k));
    }
}
