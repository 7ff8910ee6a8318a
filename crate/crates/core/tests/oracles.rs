//! Independent dense-integer oracles for the closed formulas.
//!
//! These never touch `LaurentPoly` arithmetic: binomial coefficients and
//! repeated convolution of integer vectors produce the expected coefficients,
//! which are then compared with the sparse rational pipeline.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use varpw_core::laurent::rational;
use varpw_core::{
    closed_e, euler_variant, evar_from_types, make_params, mirror_difference, variant_betti,
    HalfExp, LaurentPoly, Rational,
};

const GRID: [(u32, u32); 12] = [
    (2, 2), (2, 3), (2, 4),
    (3, 2), (3, 3), (3, 4),
    (5, 2), (5, 3), (5, 4),
    (7, 2), (7, 3), (7, 4),
];

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn dense_pow(base: &[BigInt], e: u32) -> Vec<BigInt> {
    (0..e).fold(vec![BigInt::one()], |acc, _| convolve(&acc, base))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Dense coefficients of `(q-1)^N - (1+...+q^{n-1})^M`, index = exponent.
fn dense_bracket(n: u32, g: u32) -> Vec<BigInt> {
    let big_n = u64::from((n - 1) * (2 * g - 2));
    let linear: Vec<BigInt> = (0..=big_n)
        .map(|k| {
            let sign = if (big_n - k) % 2 == 0 { 1 } else { -1 };
            binomial(big_n, k) * sign
        })
        .collect();
    let cyclic = dense_pow(&vec![BigInt::one(); n as usize], 2 * g - 2);
    assert_eq!(linear.len(), cyclic.len());
    linear.iter().zip(&cyclic).map(|(a, b)| a - b).collect()
}

fn oracle_closed_e(n: u32, g: u32) -> Vec<(i64, Rational)> {
    let dim = i64::from((n * n - 1) * (2 * g - 2));
    let top: BigInt = Pow::pow(&BigInt::from(n), 2 * g);
    let factor = Rational::new(top - BigInt::one(), BigInt::from(n));
    dense_bracket(n, g)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (dim + e as i64, Rational::from_integer(c) * &factor))
        .collect()
}

#[test]
fn closed_e_matches_dense_oracle() {
    for (n, g) in GRID {
        let params = make_params(n, g, 1).unwrap();
        let expected = LaurentPoly::from_terms(
            oracle_closed_e(n, g).into_iter().map(|(e, c)| (HalfExp::int(e), c)),
        );
        assert_eq!(closed_e(&params).unwrap(), expected, "n={n} g={g}");
    }
}

#[test]
fn frozen_coefficients() {
    // hand expansions: 80/3 * q^16 * (-6q + 3q^2 - 6q^3) and 15/2 * q^6 * (-4q)
    let e = closed_e(&make_params(3, 2, 1).unwrap()).unwrap();
    assert_eq!(e.coeff(HalfExp::int(18)), rational(80));
    assert_eq!(e.coeff(HalfExp::int(17)), rational(-160));
    let e = closed_e(&make_params(2, 2, 1).unwrap()).unwrap();
    assert_eq!(e, LaurentPoly::from_int_terms(&[(7, -30)]));
}

#[test]
fn mirror_difference_matches_dense_oracle() {
    for (n, g) in GRID {
        let params = make_params(n, g, 1).unwrap();
        let m = i64::from((n * n - 1) * (g - 1));
        // 1-D factors in u (and identically in v)
        let linear = [BigInt::from(-1), BigInt::one()];
        let lin = dense_pow(&linear, (n - 1) * (g - 1));
        let cyc = dense_pow(&vec![BigInt::one(); n as usize], g - 1);
        let top: BigInt = Pow::pow(&BigInt::from(n), 2 * g);
        let factor = Rational::new(top - BigInt::one(), BigInt::from(n));
        let got = mirror_difference(&params).unwrap();
        let mut count = 0;
        for a in 0..lin.len().max(cyc.len()) {
            for b in 0..lin.len().max(cyc.len()) {
                let l = lin.get(a).zip(lin.get(b)).map(|(x, y)| x * y).unwrap_or_default();
                let c = cyc.get(a).zip(cyc.get(b)).map(|(x, y)| x * y).unwrap_or_default();
                let expected = Rational::from_integer(l - c) * &factor;
                let (eu, ev) = (HalfExp::int(m + a as i64), HalfExp::int(m + b as i64));
                assert_eq!(got.coeff(eu, ev), expected, "n={n} g={g} u^{a} v^{b}");
                if !expected.is_zero() {
                    count += 1;
                }
            }
        }
        assert_eq!(got.len(), count, "n={n} g={g}: stray terms");
    }
}

#[test]
fn betti_and_euler_from_oracle() {
    for (n, g) in GRID {
        let params = make_params(n, g, 1).unwrap();
        let dim = 2 * params.dim as i64;
        let betti = variant_betti(&params).unwrap();
        let mut euler = BigInt::zero();
        for (e, c) in oracle_closed_e(n, g) {
            let d = dim - e;
            let signed = if d % 2 == 0 { c } else { -c };
            assert!(signed.is_integer());
            assert_eq!(BigInt::from(betti.get(d)), signed.to_integer(), "n={n} g={g} d={d}");
            euler += if d % 2 == 0 { BigInt::from(betti.get(d)) } else { -BigInt::from(betti.get(d)) };
        }
        assert_eq!(euler_variant(&params).unwrap(), euler);
        let top: BigInt = Pow::pow(&BigInt::from(n), 2 * g);
        let tail: BigInt = Pow::pow(&BigInt::from(n), 2 * g - 3);
        assert_eq!(euler, -(top - BigInt::one()) * tail);
    }
}

#[test]
fn betti_side_by_direct_substitution() {
    // E_var(M_B) for n = 2 is (2^{2g} - 1)/2 * ((q(q-1))^{2g-2} - (q(q+1))^{2g-2});
    // the odd binomial terms survive with coefficient -2 C(2g-2, k).
    for g in 2..=4u32 {
        let params = make_params(2, g, 1).unwrap();
        let e = 2 * g - 2;
        let factor = Rational::new(BigInt::from(4u32.pow(g) - 1), BigInt::from(2));
        let expected = LaurentPoly::from_terms((0..=u64::from(e)).filter(|k| k % 2 == 1).map(|k| {
            // (q(q-1))^e = q^e sum C(e,k) q^k (-1)^{e-k}; difference with (q(q+1))^e
            let exp = i64::from(e) + k as i64;
            (HalfExp::int(exp), Rational::from_integer(binomial(u64::from(e), k) * -2) * &factor)
        }));
        assert_eq!(evar_from_types(&params).unwrap(), expected, "g={g}");
    }
}
