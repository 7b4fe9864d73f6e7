//! The invariant `Δ`: per bump chain, a tuple of rationals taken up to an
//! explicitly solvable equivalence.
//!
//! For a chain of bumps `f_1, …, f_s` with intervals of widths `w_i` and
//! conjugators onto their minimum cornered functions with initial and
//! final slopes `α_i`, `β_i`, the tuple is
//! `(α_1/w_1, (α_2/w_2)(w_1/β_1), …)`. Two tuples `x`, `y` with the same
//! centralizer slopes `λ_i`, `μ_i` are equivalent when there are integers
//! `m, n_1, …, n_s` with
//!
//! ```text
//! 2^m x_1 = λ_1^{n_1} y_1,   μ_{i-1}^{n_{i-1}} x_i = λ_i^{n_i} y_i.
//! ```

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cornered::{normal_form, BumpNormalForm};
use crate::exact::{pow2_exponent, Pow2Exp, Rational};
use crate::plmap::FElement;
use crate::sigma::{bump_chains, finite_function_of_bump, ff_max_symmetry, Bump};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDelta {
    pub entries: Vec<Rational>,
    pub lambdas: Vec<Pow2Exp>,
    pub mus: Vec<Pow2Exp>,
}

impl ChainDelta {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One [`ChainDelta`] per bump chain, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DeltaInvariant {
    pub chains: Vec<ChainDelta>,
}

/// Integers solving the defining equations of the equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWitness {
    pub m: BigInt,
    pub n: Vec<BigInt>,
}

fn slope_exponent(q: &Rational) -> Result<i64> {
    pow2_exponent(q)?.ok_or_else(|| {
        Error::Domain(alloc::format!("slope {} is not a power of 2", crate::exact::describe(q)))
    })
}

/// Order of the largest root of the bump inside PL⁺ of its interval.
pub fn symmetry_order(bump: &Bump) -> Result<u64> {
    Ok(ff_max_symmetry(&finite_function_of_bump(bump)?))
}

/// Initial and final slopes of the bump's centralizer generator `f̂`.
pub fn lambda_mu(bump: &Bump) -> Result<(Pow2Exp, Pow2Exp)> {
    let p = symmetry_order(bump)?;
    let m = slope_exponent(&bump.initial_slope())?;
    let m_final = slope_exponent(&bump.final_slope())?;
    Ok((Pow2Exp::from_int(m).root(p), Pow2Exp::from_int(m_final).root(p)))
}

/// Δ entries of one chain plus the normal forms they came from.
pub(crate) fn chain_data(chain: &[Bump]) -> Result<(ChainDelta, Vec<BumpNormalForm>)> {
    let mut forms = Vec::with_capacity(chain.len());
    let mut delta = ChainDelta {
        entries: Vec::with_capacity(chain.len()),
        lambdas: Vec::with_capacity(chain.len()),
        mus: Vec::with_capacity(chain.len()),
    };
    for (i, bump) in chain.iter().enumerate() {
        let form = normal_form(bump)?;
        let mut entry = &form.slopes.alpha / bump.width();
        if i > 0 {
            let prev: &BumpNormalForm = &forms[i - 1];
            entry *= chain[i - 1].width() / &prev.slopes.beta;
        }
        let (lambda, mu) = lambda_mu(bump)?;
        delta.entries.push(entry);
        delta.lambdas.push(lambda);
        delta.mus.push(mu);
        forms.push(form);
    }
    Ok((delta, forms))
}

pub fn delta_of(f: &FElement) -> Result<DeltaInvariant> {
    let fs = f.fixed_structure();
    let mut chains = Vec::new();
    for chain in bump_chains(f.map(), &fs) {
        chains.push(chain_data(&chain)?.0);
    }
    Ok(DeltaInvariant { chains })
}

/// `n_j = base_j + step_j · s` for one free integer `s`.
struct Progression {
    base: Vec<BigInt>,
    step: Vec<BigInt>,
}

impl Progression {
    /// Restricts the parameter to `s = s0 + t · period`.
    fn substitute(&mut self, s0: &BigInt, period: &BigInt) {
        for (b, d) in self.base.iter_mut().zip(self.step.iter_mut()) {
            *b += &*d * s0;
            *d *= period;
        }
    }
}

/// Solves `a·s ≡ r (mod modulus)`, `modulus > 0`. Returns `(s0, period)`.
fn linear_congruence(a: &BigInt, r: &BigInt, modulus: &BigInt) -> Option<(BigInt, BigInt)> {
    let a = a.mod_floor(modulus);
    let r = r.mod_floor(modulus);
    let eg = a.extended_gcd(modulus);
    let g = eg.gcd;
    if !r.is_multiple_of(&g) {
        return None;
    }
    let period = modulus / &g;
    let s0 = (eg.x * (&r / &g)).mod_floor(&period);
    Some((s0, period))
}

fn exponents(d: &[Pow2Exp]) -> impl Iterator<Item = &Rational> {
    d.iter().map(Pow2Exp::exponent)
}

fn check_compatible(d1: &ChainDelta, d2: &ChainDelta) -> Result<()> {
    let ok = d1.len() == d2.len()
        && d1.lambdas == d2.lambdas
        && d1.mus == d2.mus
        && d1.lambdas.len() == d1.len()
        && d1.mus.len() == d1.len();
    if !ok {
        return Err(Error::Usage("chain data with different lengths or slopes".into()));
    }
    if d1.lambdas.iter().chain(&d1.mus).any(Pow2Exp::is_one) {
        return Err(Error::Usage("centralizer slope equal to 1".into()));
    }
    if d1.entries.iter().chain(&d2.entries).any(|e| !e.is_positive()) {
        return Err(Error::Usage("entries must be positive".into()));
    }
    Ok(())
}

/// The exponents `c_i` with `x_i / y_i = 2^{c_i}`, if all exist.
fn ratio_exponents(d1: &ChainDelta, d2: &ChainDelta) -> Result<Option<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(d1.len());
    for (x, y) in d1.entries.iter().zip(&d2.entries) {
        match pow2_exponent(&(x / y))? {
            Some(c) => out.push(BigInt::from(c)),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// A witness `(m, n_1, …, n_s)` of equivalence, or `None`.
pub fn delta_equivalent(d1: &ChainDelta, d2: &ChainDelta) -> Result<Option<DeltaWitness>> {
    check_compatible(d1, d2)?;
    if d1.is_empty() {
        return Ok(Some(DeltaWitness { m: BigInt::zero(), n: Vec::new() }));
    }
    let Some(c) = ratio_exponents(d1, d2)? else {
        return Ok(None);
    };
    let ls: Vec<&Rational> = exponents(&d1.lambdas).collect();
    let ms: Vec<&Rational> = exponents(&d1.mus).collect();

    // m = n_1 L_1 - c_1 is an integer iff the denominator of L_1 divides n_1.
    let mut prog = Progression {
        base: alloc::vec![BigInt::zero()],
        step: alloc::vec![ls[0].denom().clone()],
    };
    for i in 1..d1.len() {
        // n_i = Q (n_{i-1} R + c_i S) / (P S) with L_i = P/Q, M_{i-1} = R/S.
        let (p, q) = (ls[i].numer(), ls[i].denom());
        let (r, s) = (ms[i - 1].numer(), ms[i - 1].denom());
        let (a, d) = (&prog.base[i - 1], &prog.step[i - 1]);
        let num0 = q * (a * r + &c[i] * s);
        let num1 = q * d * r;
        let den = (p * s).abs();
        if num1.is_multiple_of(&den) {
            if !num0.is_multiple_of(&den) {
                return Ok(None);
            }
        } else {
            let Some((s0, period)) = linear_congruence(&num1, &(-&num0), &den) else {
                return Ok(None);
            };
            prog.substitute(&s0, &period);
        }
        let a = &prog.base[i - 1];
        let d = &prog.step[i - 1];
        let sign = if (p * s).is_negative() { -BigInt::one() } else { BigInt::one() };
        let base = (q * (a * r + &c[i] * s)) / (p * s);
        let step = &sign * q * d * r / &den;
        prog.base.push(base);
        prog.step.push(step);
    }
    let n = prog.base;
    let m = n[0].clone() * ls[0].numer() / ls[0].denom() - &c[0];
    let witness = DeltaWitness { m, n };
    if !verify_witness(d1, d2, &witness)? {
        return Err(Error::Internal("Δ witness failed substitution".into()));
    }
    Ok(Some(witness))
}

/// Substitutes a witness into the defining equations.
pub fn verify_witness(d1: &ChainDelta, d2: &ChainDelta, w: &DeltaWitness) -> Result<bool> {
    check_compatible(d1, d2)?;
    if w.n.len() != d1.len() {
        return Ok(false);
    }
    let two_m = Pow2Exp::new(Rational::from_integer(w.m.clone()));
    for i in 0..d1.len() {
        // left · x_i = right · y_i with left, right powers of 2.
        let left = if i == 0 { two_m.clone() } else { d1.mus[i - 1].powi(&w.n[i - 1]) };
        let right = d1.lambdas[i].powi(&w.n[i]);
        let ratio = &right * &left.recip();
        match ratio.to_rational() {
            Some(q) if &q * &d2.entries[i] == d1.entries[i] => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

pub fn delta_equal(d1: &DeltaInvariant, d2: &DeltaInvariant) -> bool {
    d1.chains.len() == d2.chains.len()
        && d1.chains.iter().zip(&d2.chains).all(|(a, b)| {
            check_compatible(a, b).is_ok() && matches!(delta_equivalent(a, b), Ok(Some(_)))
        })
}
