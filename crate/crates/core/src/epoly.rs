//! Closed-form variant E-polynomials at prime rank and the variant Betti
//! numbers read off from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{BiLaurentPoly, HalfExp, LaurentPoly, Rational};

/// Largest dimension accepted by [`make_params`]; keeps every derived exponent
/// comfortably inside `i64` and every power inside `u32`.
const MAX_DIM: u64 = 1 << 30;

/// Discrete invariants of the `SL_n` Dolbeault moduli space of rank `n`,
/// degree `d` over a curve of genus `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuliParams {
    pub n: u32,
    pub g: u32,
    pub d: i64,
    /// `(n^2 - 1)(2g - 2)`
    pub dim: u64,
    /// `dim / 2`
    pub m: u64,
    /// `n(n - 1)(g - 1)`, the perverse shift.
    pub c: u64,
    /// Smallest prime divisor of `n`.
    pub p: u32,
    /// `n(n - n/p)(g - 1)`, the codimension of the endoscopic locus.
    pub endo_codim: u64,
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && smallest_prime_divisor(n) == n
}

pub fn smallest_prime_divisor(n: u32) -> u32 {
    assert!(n >= 2);
    let mut k = 2u32;
    while u64::from(k) * u64::from(k) <= u64::from(n) {
        if n.is_multiple_of(k) {
            return k;
        }
        k += 1;
    }
    n
}

pub fn make_params(n: u32, g: u32, d: i64) -> Result<ModuliParams> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    if i64::from(n).gcd(&d) != 1 {
        return Err(Error::NotCoprime { n, d });
    }
    let (nn, gg) = (u64::from(n), u64::from(g));
    let overflow = || Error::ParamsOverflow { n, g };
    let dim = (nn * nn - 1).checked_mul(2 * gg - 2).ok_or_else(overflow)?;
    if dim > MAX_DIM {
        return Err(overflow());
    }
    let p = smallest_prime_divisor(n);
    let pp = u64::from(p);
    Ok(ModuliParams {
        n,
        g,
        d,
        dim,
        m: dim / 2,
        c: nn * (nn - 1) * (gg - 1),
        p,
        endo_codim: nn * (nn - nn / pp) * (gg - 1),
    })
}

impl ModuliParams {
    pub fn is_prime_rank(&self) -> bool {
        is_prime(self.n)
    }

    pub(crate) fn require_prime(&self) -> Result<()> {
        if self.is_prime_rank() {
            Ok(())
        } else {
            Err(Error::NotPrime(self.n))
        }
    }

    /// `(2g - 2)(2n^2 + n - 3)`, the palindromy center of the closed E-polynomial.
    pub fn palindromy_center(&self) -> u64 {
        let n = u64::from(self.n);
        (2 * u64::from(self.g) - 2) * (2 * n * n + n - 3)
    }

    /// `(n^2 + n - 2)(g - 1)`, the shift between the Betti and Dolbeault sides.
    pub fn mirror_shift(&self) -> u64 {
        let n = u64::from(self.n);
        (n * n + n - 2) * (u64::from(self.g) - 1)
    }

    /// `(n - 1)(2g - 2)`, the common degree of both bracketed factors.
    pub(crate) fn bracket_degree(&self) -> u32 {
        (self.n - 1) * (2 * self.g - 2)
    }
}

/// `(n^{2g} - 1) / n`
pub fn mirror_factor(n: u32, g: u32) -> Rational {
    let n_big = BigInt::from(n);
    let top: BigInt = Pow::pow(&n_big, 2 * g);
    Rational::new(top - BigInt::one(), n_big)
}

pub(crate) fn exp(e: u64) -> HalfExp {
    HalfExp::int(e as i64)
}

/// `(q - 1)^{(n-1)(2g-2)} - (1 + q + ... + q^{n-1})^{2g-2}`
pub(crate) fn bracket(params: &ModuliParams) -> LaurentPoly {
    let q_minus_one = LaurentPoly::from_int_terms(&[(1, 1), (0, -1)]);
    &q_minus_one.pow(params.bracket_degree())
        - &LaurentPoly::geometric(params.n).pow(2 * params.g - 2)
}

/// The variant E-polynomial `E(q)` of the Dolbeault moduli space, obtained by
/// putting `u = v = q` in the mirror-symmetry difference.
pub fn closed_e(params: &ModuliParams) -> Result<LaurentPoly> {
    params.require_prime()?;
    let e = bracket(params)
        .shift(exp(params.dim))
        .scale(&mirror_factor(params.n, params.g));
    e.ensure_integral_exponents("E(q)")?;
    if let Some((x, c)) = e.terms().find(|(_, c)| !c.is_integer()) {
        return Err(Error::InconsistentFormula(format!(
            "E(q) has non-integral coefficient {c} at q^{x}"
        )));
    }
    Ok(e)
}

/// `E(M_Dol; u, v) - E(M^_Dol; u, v)` as an explicit polynomial in `u`, `v`.
pub fn mirror_difference(params: &ModuliParams) -> Result<BiLaurentPoly> {
    params.require_prime()?;
    let (n, g) = (params.n, params.g);
    let q_minus_one = LaurentPoly::from_int_terms(&[(1, 1), (0, -1)]);
    let linear = &BiLaurentPoly::in_u(&q_minus_one) * &BiLaurentPoly::in_v(&q_minus_one);
    let geometric = LaurentPoly::geometric(n);
    let cyclic = &BiLaurentPoly::in_u(&geometric) * &BiLaurentPoly::in_v(&geometric);
    let diff = &linear.pow((n - 1) * (g - 1)) - &cyclic.pow(g - 1);
    let uv_m = BiLaurentPoly::monomial(mirror_factor(n, g), exp(params.m), exp(params.m));
    Ok(&uv_m * &diff)
}

/// Variant Betti numbers, degree to dimension; absent degrees are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohomologyProfile {
    dims: BTreeMap<u64, u128>,
}

impl CohomologyProfile {
    /// Zero dimensions are dropped.
    pub fn from_dims<I: IntoIterator<Item = (u64, u128)>>(dims: I) -> Self {
        CohomologyProfile {
            dims: dims.into_iter().filter(|(_, v)| *v > 0).collect(),
        }
    }

    pub fn get(&self, degree: i64) -> u128 {
        u64::try_from(degree)
            .ok()
            .and_then(|d| self.dims.get(&d).copied())
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u128)> + '_ {
        self.dims.iter().map(|(d, v)| (*d, *v))
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn min_degree(&self) -> Option<u64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.dims.keys().next_back().copied()
    }

    /// True iff `dim H^{center - i} = dim H^{center + i}` for every `i`.
    pub fn is_symmetric_about(&self, center: u64) -> bool {
        let center = center as i64;
        self.dims
            .iter()
            .all(|(&d, &v)| self.get(2 * center - d as i64) == v)
    }

    /// `sum (-1)^d dim H^d`
    pub fn alternating_sum(&self) -> BigInt {
        self.dims.iter().fold(BigInt::zero(), |acc, (&d, &v)| {
            if d % 2 == 0 {
                acc + v
            } else {
                acc - v
            }
        })
    }

    /// `degree,dimension` lines sorted by degree.
    pub fn to_csv(&self) -> String {
        self.dims.iter().map(|(d, v)| format!("{d},{v}\n")).collect()
    }
}

/// `dim H^d_var = (-1)^d [E(q)]_{q^{2 dim - d}}`.
pub fn variant_betti(params: &ModuliParams) -> Result<CohomologyProfile> {
    let e = closed_e(params)?;
    let top = 2 * params.dim as i64;
    let mut dims = BTreeMap::new();
    for (x, c) in e.terms() {
        let x = x.to_integer().expect("closed_e has integral exponents");
        let degree = top - x;
        if !(0..=top).contains(&degree) {
            return Err(Error::InconsistentFormula(format!(
                "E(q) term at q^{x} maps to degree {degree} outside [0, {top}]"
            )));
        }
        let signed = if degree % 2 == 0 { c.clone() } else { -c.clone() };
        let value = signed
            .is_integer()
            .then(|| signed.to_integer())
            .filter(|v| v.is_positive())
            .and_then(|v| v.to_u128())
            .ok_or_else(|| {
                Error::InconsistentFormula(format!("dim H^{degree}_var would be {signed}"))
            })?;
        dims.insert(degree as u64, value);
    }
    Ok(CohomologyProfile { dims })
}

/// Euler characteristic of the variant cohomology, cross-checked against
/// `E(1)`.
pub fn euler_variant(params: &ModuliParams) -> Result<BigInt> {
    let sum = variant_betti(params)?.alternating_sum();
    let at_one = closed_e(params)?.eval(&Rational::one())?;
    if at_one != Rational::from_integer(sum.clone()) {
        return Err(Error::IdentityFailure(format!(
            "alternating Betti sum {sum} differs from E(1) = {at_one}"
        )));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rational;

    fn params(n: u32, g: u32) -> ModuliParams {
        make_params(n, g, 1).unwrap()
    }

    #[test]
    fn params_examples() {
        let p = params(2, 2);
        assert_eq!((p.dim, p.m, p.c, p.p, p.endo_codim), (6, 3, 2, 2, 2));
        let p = params(3, 2);
        assert_eq!((p.dim, p.m, p.c, p.p, p.endo_codim), (16, 8, 6, 3, 6));
        let p = make_params(6, 2, 1).unwrap();
        assert_eq!((p.p, p.endo_codim), (2, 18));
    }

    #[test]
    fn params_rejections() {
        assert_eq!(make_params(2, 2, 2), Err(Error::NotCoprime { n: 2, d: 2 }));
        assert_eq!(make_params(2, 2, 0), Err(Error::NotCoprime { n: 2, d: 0 }));
        assert_eq!(make_params(1, 2, 1), Err(Error::RankTooSmall(1)));
        assert_eq!(make_params(2, 1, 1), Err(Error::GenusTooSmall(1)));
        assert!(matches!(make_params(60_000, 60_000, 1), Err(Error::ParamsOverflow { .. })));
        assert!(make_params(3, 2, -2).is_ok());
    }

    #[test]
    fn prime_rank_endo_codim_is_c() {
        for n in [2, 3, 5, 7, 11] {
            for g in 2..6 {
                let p = params(n, g);
                assert_eq!(p.endo_codim, p.c);
            }
        }
    }

    #[test]
    fn primes() {
        let found: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(found, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(smallest_prime_divisor(91), 7);
    }

    #[test]
    fn closed_e_examples() {
        assert_eq!(closed_e(&params(2, 2)).unwrap(), LaurentPoly::from_int_terms(&[(7, -30)]));
        assert_eq!(
            closed_e(&params(3, 2)).unwrap(),
            LaurentPoly::from_int_terms(&[(17, -160), (18, 80), (19, -160)])
        );
        assert_eq!(closed_e(&params(3, 2)).unwrap().coeff(HalfExp::int(18)), rational(80));
        assert_eq!(closed_e(&make_params(4, 2, 1).unwrap()), Err(Error::NotPrime(4)));
    }

    #[test]
    fn mirror_difference_examples() {
        let diff = mirror_difference(&params(2, 2)).unwrap();
        let expected = BiLaurentPoly::from_terms([
            ((HalfExp::int(4), HalfExp::int(3)), rational(-15)),
            ((HalfExp::int(3), HalfExp::int(4)), rational(-15)),
        ]);
        assert_eq!(diff, expected);
        assert_eq!(diff.specialize_diagonal(), closed_e(&params(2, 2)).unwrap());
        assert_eq!(mirror_difference(&make_params(6, 2, 1).unwrap()), Err(Error::NotPrime(6)));
    }

    #[test]
    fn betti_examples() {
        let b = variant_betti(&params(2, 2)).unwrap();
        assert_eq!(b, CohomologyProfile::from_dims([(5, 30)]));
        let b = variant_betti(&params(3, 2)).unwrap();
        assert_eq!(b, CohomologyProfile::from_dims([(13, 160), (14, 80), (15, 160)]));
        assert_eq!(b.to_csv(), "13,160\n14,80\n15,160\n");
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"13":160,"14":80,"15":160}"#);
        // (63/2) q^12 ((q-1)^4 - (1+q)^4) = -252 q^13 - 252 q^15
        let b = variant_betti(&params(2, 3)).unwrap();
        assert_eq!(b, CohomologyProfile::from_dims([(9, 252), (11, 252)]));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_variant(&params(2, 2)).unwrap(), BigInt::from(-30));
        assert_eq!(euler_variant(&params(3, 2)).unwrap(), BigInt::from(-240));
        assert_eq!(euler_variant(&params(2, 3)).unwrap(), BigInt::from(-504));
        assert_eq!(euler_variant(&make_params(9, 2, 1).unwrap()), Err(Error::NotPrime(9)));
    }

    #[test]
    fn profile_symmetry() {
        let b = CohomologyProfile::from_dims([(13, 160), (14, 80), (15, 160)]);
        assert!(b.is_symmetric_about(14));
        assert!(!b.is_symmetric_about(13));
        assert!(CohomologyProfile::default().is_symmetric_about(0));
        assert_eq!(b.alternating_sum(), BigInt::from(-240));
    }
}
