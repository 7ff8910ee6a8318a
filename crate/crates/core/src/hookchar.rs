//! The character-variety side: the variant E-polynomial of the Betti moduli
//! space rebuilt from the two special multi-partition types whose constants
//! differ between the `SL_n` and `PGL_n` point counts.
//!
//! For prime `n` the divisor `t` in the `SL_n` sum is either `1` or `n`, and
//! every other type cancels in the difference, leaving
//!
//! ```text
//! E_var = sum_{tau in {tau1, tau2}} T_tau(q) * (C_tau^1 - C_tau^0 + n^{2g-1} C_tau^n)
//! T_tau = ( q^{n^2/2} H_tau'(q) / (q - 1) )^{2g-2}
//! ```
//!
//! with `H_tau'` the normalized hook polynomials returned by [`hook_special`].

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::epoly::{bracket, exp, mirror_factor, ModuliParams};
use crate::error::{Error, Result};
use crate::laurent::{HalfExp, LaurentPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialType {
    /// Only multiplicity `m_{(1),1} = n`.
    Tau1,
    /// Only multiplicity `m_{(1),n} = 1`.
    Tau2,
}

impl SpecialType {
    pub const ALL: [SpecialType; 2] = [SpecialType::Tau1, SpecialType::Tau2];
}

/// The constants of the two special types, as differences from `C_tau^0`.
///
/// The published list assigns `C^n = -1` to `tau1` a second time in the
/// `tau2` item; the derivation only works with `C_{tau2}^n = -1`, which is
/// what is stored here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookData {
    /// `C_{tau1}^1 - C_{tau1}^0 = -1/n`
    pub c1_shift_tau1: Rational,
    /// `C_{tau1}^n = 1`
    pub cn_tau1: Rational,
    /// `C_{tau2}^1 - C_{tau2}^0 = 1/n`
    pub c1_shift_tau2: Rational,
    /// `C_{tau2}^n = -1`
    pub cn_tau2: Rational,
}

impl HookData {
    pub fn new(n: u32) -> Self {
        let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
        HookData {
            c1_shift_tau1: -inv_n.clone(),
            cn_tau1: Rational::one(),
            c1_shift_tau2: inv_n,
            cn_tau2: -Rational::one(),
        }
    }

    pub fn c1_shift(&self, t: SpecialType) -> &Rational {
        match t {
            SpecialType::Tau1 => &self.c1_shift_tau1,
            SpecialType::Tau2 => &self.c1_shift_tau2,
        }
    }

    pub fn cn(&self, t: SpecialType) -> &Rational {
        match t {
            SpecialType::Tau1 => &self.cn_tau1,
            SpecialType::Tau2 => &self.cn_tau2,
        }
    }
}

/// `tau1 -> q^{-n/2}(1-q)^n`, `tau2 -> q^{-n/2}(1-q^n)`.
pub fn hook_special(n: u32, t: SpecialType) -> LaurentPoly {
    assert!(n >= 2, "hook polynomials need n >= 2");
    let shift = LaurentPoly::q_pow(HalfExp::from_twice(-i64::from(n)));
    let body = match t {
        SpecialType::Tau1 => LaurentPoly::from_int_terms(&[(0, 1), (1, -1)]).pow(n),
        SpecialType::Tau2 => LaurentPoly::from_int_terms(&[(0, 1), (i64::from(n), -1)]),
    };
    &shift * &body
}

/// `( q^{n^2/2} H(q) / (q - 1) )^{2g-2}`, which must have integral exponents.
pub fn hrv_term(hook: &LaurentPoly, n: u32, g: u32) -> Result<LaurentPoly> {
    assert!(g >= 1, "genus must be positive");
    let q_minus_one = LaurentPoly::from_int_terms(&[(1, 1), (0, -1)]);
    let n2 = i64::from(n) * i64::from(n);
    let base = hook
        .div_exact(&q_minus_one)?
        .shift(HalfExp::from_twice(n2));
    let term = base.pow(2 * g - 2);
    term.ensure_integral_exponents("normalized hook term")?;
    Ok(term)
}

/// `E_var(M_B; sqrt q, sqrt q)` summed over the two special types.
pub fn evar_via_types(params: &ModuliParams) -> Result<LaurentPoly> {
    params.require_prime()?;
    let (n, g) = (params.n, params.g);
    let data = HookData::new(n);
    let n_pow: BigInt = Pow::pow(&BigInt::from(n), 2 * g - 1);
    let n_pow = Rational::from_integer(n_pow);
    let mut total = LaurentPoly::zero();
    for t in SpecialType::ALL {
        let term = hrv_term(&hook_special(n, t), n, g)?;
        // t = 1 contributes C^1 - C^0; t = n contributes n^{2g-1} C^n
        let weight = data.c1_shift(t) + &n_pow * data.cn(t);
        total = &total + &term.scale(&weight);
    }
    Ok(total)
}

/// `(n^{2g}-1)/n * q^{(n^2-n)(g-1)} * ((q-1)^{(n-1)(2g-2)} - (1+...+q^{n-1})^{2g-2})`
pub fn evar_direct(params: &ModuliParams) -> Result<LaurentPoly> {
    params.require_prime()?;
    let n = u64::from(params.n);
    let shift = (n * n - n) * (u64::from(params.g) - 1);
    Ok(bracket(params)
        .shift(exp(shift))
        .scale(&mirror_factor(params.n, params.g)))
}

/// The variant E-polynomial of the Betti moduli space in `q = uv`, computed
/// through the special types and checked against the direct closed form.
pub fn evar_from_types(params: &ModuliParams) -> Result<LaurentPoly> {
    let via_types = evar_via_types(params)?;
    let direct = evar_direct(params)?;
    if via_types != direct {
        return Err(Error::IdentityFailure(format!(
            "type sum {via_types} differs from closed form {direct}"
        )));
    }
    Ok(via_types)
}
