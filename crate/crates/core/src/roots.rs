//! Roots and centralizers.
//!
//! The centralizer of a bump map `g` in PL⁺ of its interval is infinite
//! cyclic, and each element is determined by its initial slope. A `p`-th
//! root of `g` is therefore the centralizer element with initial slope
//! `λ^{1/p}`, obtained by extending that germ.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::cornered::extend_conjugator;
use crate::delta::symmetry_order;
use crate::exact::{describe, pow2_exponent, rational_root};
use crate::plmap::{check_in_f, FElement, PlMap, Sign};
use crate::sigma::{bump_chains, bumps, Bump};
use crate::{Error, Result};

/// The `p`-th root of an increasing bump map, if it exists with rational
/// initial slope.
fn increasing_root(g: &PlMap, p: u64) -> Result<Option<PlMap>> {
    if p == 1 {
        return Ok(Some(g.clone()));
    }
    let exponent = u32::try_from(p).map_err(|_| Error::Domain("root order too large".into()))?;
    let Some(slope) = rational_root(&g.initial_slope(), exponent) else {
        return Ok(None);
    };
    let Some(root) = extend_conjugator(g, g, &slope)? else {
        return Ok(None);
    };
    let exp = i64::try_from(p).map_err(|_| Error::Domain("root order too large".into()))?;
    if root.power(exp)? != *g {
        return Err(Error::Internal("centralizer element is not a root".into()));
    }
    Ok(Some(root))
}

/// The unique `ĝ` with `ĝ^p = f|` on the bump.
pub fn pl_root_of_bump(bump: &Bump, p: u64) -> Result<PlMap> {
    if p == 0 {
        return Err(Error::Domain("root order must be positive".into()));
    }
    let sym = symmetry_order(bump)?;
    if sym % p != 0 {
        return Err(Error::Domain(alloc::format!(
            "order {p} does not divide the symmetry order {sym} of the bump"
        )));
    }
    let root = increasing_root(&bump.increasing(), p)?.ok_or_else(|| {
        Error::Internal(alloc::format!("no root of order {p} despite {sym}-fold symmetry"))
    })?;
    Ok(match bump.sign {
        Sign::Pos => root,
        _ => root.inverse(),
    })
}

/// `(p_i, m_i)`: symmetry order and initial-slope exponent per bump.
fn bump_orders(bs: &[Bump]) -> Result<Vec<(u64, i64)>> {
    bs.iter()
        .map(|b| {
            let m = pow2_exponent(&b.initial_slope())?.ok_or_else(|| {
                Error::Domain(alloc::format!(
                    "initial slope {} is not a power of 2",
                    describe(&b.initial_slope())
                ))
            })?;
            Ok((symmetry_order(b)?, m))
        })
        .collect()
}

fn nontrivial_bumps(f: &FElement) -> Result<Vec<Bump>> {
    if f.is_identity() {
        return Err(Error::Domain("the identity has no distinguished roots".into()));
    }
    Ok(bumps(f.map(), &f.fixed_structure()))
}

pub fn root_in_f(f: &FElement, p: u64) -> Result<bool> {
    if p == 0 {
        return Err(Error::Domain("root order must be positive".into()));
    }
    let bs = nontrivial_bumps(f)?;
    Ok(bump_orders(&bs)?
        .iter()
        .all(|&(pi, mi)| pi % p == 0 && mi % p as i64 == 0))
}

/// Roots of the given bumps glued with the identity elsewhere.
fn glue_roots(f: &FElement, selected: &[Bump], p: u64) -> Result<PlMap> {
    let mut pieces = Vec::new();
    let mut cursor = crate::exact::int(0);
    for bump in selected {
        if cursor < bump.start {
            pieces.push(PlMap::identity_on(cursor.clone(), bump.start.clone()));
        }
        pieces.push(pl_root_of_bump(bump, p)?);
        cursor = bump.end.clone();
    }
    let one = crate::exact::int(1);
    if cursor < one {
        pieces.push(PlMap::identity_on(cursor, one));
    }
    let _ = f;
    PlMap::glue(pieces.iter())
}

/// The unique `g ∈ F` with `g^p = f`, when it exists.
pub fn root_extract(f: &FElement, p: u64) -> Result<Option<FElement>> {
    if !root_in_f(f, p)? {
        return Ok(None);
    }
    let bs = nontrivial_bumps(f)?;
    let g = glue_roots(f, &bs, p)?;
    let g = check_in_f(&g)
        .map_err(|d| Error::Internal(alloc::format!("root left F: {d}")))?;
    let exp = i64::try_from(p).map_err(|_| Error::Domain("root order too large".into()))?;
    if g.power(exp) != *f {
        return Err(Error::Internal("extracted root does not power back".into()));
    }
    Ok(Some(g))
}

fn gcd_of_orders(orders: &[(u64, i64)]) -> u64 {
    orders
        .iter()
        .fold(0u64, |acc, &(p, m)| acc.gcd(&p).gcd(&m.unsigned_abs()))
}

/// `(g, N)` with `g` generating the group of all roots of `f` in F and
/// `g^N = f`.
pub fn r_generator(f: &FElement) -> Result<(FElement, u64)> {
    let bs = nontrivial_bumps(f)?;
    let n = gcd_of_orders(&bump_orders(&bs)?);
    let g = root_extract(f, n)?
        .ok_or_else(|| Error::Internal(alloc::format!("no root of order {n}")))?;
    Ok((g, n))
}

/// `C_F(f) ≅ F^a × ℤ^b`, with one generator of each `ℤ` factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerStructure {
    /// `a`: number of open intervals of fixed points.
    pub fixed_intervals: usize,
    /// `b`: number of bump chains.
    pub chains: usize,
    pub generators: Vec<FElement>,
}

pub fn centralizer_structure(f: &FElement) -> Result<CentralizerStructure> {
    if f.is_identity() {
        return Ok(CentralizerStructure {
            fixed_intervals: 1,
            chains: 0,
            generators: Vec::new(),
        });
    }
    let fs = f.fixed_structure();
    let chains = bump_chains(f.map(), &fs);
    let mut generators = Vec::with_capacity(chains.len());
    for chain in &chains {
        let n = gcd_of_orders(&bump_orders(chain)?);
        let gen = glue_roots(f, chain, n)?;
        let gen = check_in_f(&gen)
            .map_err(|d| Error::Internal(alloc::format!("chain generator left F: {d}")))?;
        if gen.compose(f) != f.compose(&gen) {
            return Err(Error::Internal("chain generator does not commute".into()));
        }
        generators.push(gen);
    }
    Ok(CentralizerStructure {
        fixed_intervals: fs.intervals.iter().filter(|i| i.sign == Sign::Zero).count(),
        chains: chains.len(),
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::plmap::fixed_structure;

    fn elem(f: PlMap) -> FElement {
        check_in_f(&f).unwrap()
    }

    fn only_bump(f: &PlMap) -> Bump {
        let mut b = bumps(f, &fixed_structure(f));
        assert_eq!(b.len(), 1);
        b.pop().unwrap()
    }

    #[test]
    fn bump_roots() {
        let l2 = only_bump(&fixtures::l2());
        assert_eq!(pl_root_of_bump(&l2, 2).unwrap(), fixtures::l_minus());
        let x0 = only_bump(&fixtures::x0());
        assert_eq!(pl_root_of_bump(&x0, 1).unwrap(), fixtures::x0());
        let sq = only_bump(&fixtures::x0().power(-2).unwrap());
        assert_eq!(pl_root_of_bump(&sq, 2).unwrap(), fixtures::x0().inverse());
        assert!(matches!(pl_root_of_bump(&x0, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn roots_in_f() {
        let x0 = elem(fixtures::x0());
        let sq = x0.power(2);
        assert!(!root_in_f(&x0, 2).unwrap());
        assert!(root_in_f(&sq, 2).unwrap());
        assert!(root_in_f(&x0, 1).unwrap());
        assert!(root_in_f(&FElement::identity(), 2).is_err());
        assert_eq!(root_extract(&sq, 2).unwrap(), Some(x0.clone()));
        assert_eq!(root_extract(&x0, 2).unwrap(), None);
    }

    #[test]
    fn generators_of_roots() {
        let x0 = elem(fixtures::x0());
        assert_eq!(r_generator(&x0).unwrap(), (x0.clone(), 1));
        assert_eq!(r_generator(&x0.power(4)).unwrap(), (x0.clone(), 4));
        let w = elem(fixtures::w());
        let (g, n) = r_generator(&w).unwrap();
        assert_eq!(g.power(n as i64), w);
    }

    #[test]
    fn centralizers() {
        let x0 = elem(fixtures::x0());
        let c = centralizer_structure(&x0).unwrap();
        assert_eq!((c.fixed_intervals, c.chains), (0, 1));
        assert_eq!(c.generators, alloc::vec![x0]);
        let x1 = elem(fixtures::x1());
        let c = centralizer_structure(&x1).unwrap();
        assert_eq!((c.fixed_intervals, c.chains), (1, 1));
        assert_eq!(c.generators, alloc::vec![x1]);
        let c = centralizer_structure(&FElement::identity()).unwrap();
        assert_eq!((c.fixed_intervals, c.chains, c.generators.len()), (1, 0, 0));
        let w = elem(fixtures::w());
        let c = centralizer_structure(&w).unwrap();
        assert_eq!((c.fixed_intervals, c.chains), (0, 1));
    }
}
