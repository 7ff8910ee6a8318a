//! The full identity suite for one `(n, g)` point.

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::epoly::{closed_e, exp, mirror_difference, variant_betti, ModuliParams};
use crate::error::Result;
use crate::hitchin::{evar_from_weight_table, has_hodge_tate_signs, prop14_bound, verify_pw};
use crate::hookchar::{evar_direct, evar_via_types};
use crate::laurent::{LaurentPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_outcome(name: &'static str, outcome: Result<(bool, String)>) -> Self {
        match outcome {
            Ok((passed, detail)) => CheckResult { name, passed, detail },
            Err(e) => CheckResult { name, passed: false, detail: e.to_string() },
        }
    }
}

/// `-(n^{2g} - 1) n^{2g-3}`
fn expected_euler(params: &ModuliParams) -> BigInt {
    let n = BigInt::from(params.n);
    let top: BigInt = Pow::pow(&n, 2 * params.g);
    let tail: BigInt = Pow::pow(&n, 2 * params.g - 3);
    -(top - BigInt::one()) * tail
}

fn equal(a: &LaurentPoly, b: &LaurentPoly, what: &str) -> (bool, String) {
    if a == b {
        (true, format!("{what}: {} terms agree", a.len()))
    } else {
        (false, format!("{what}: {a} != {b}"))
    }
}

/// Runs every check for `params`, continuing past failures.
///
/// Only input errors (composite rank) abort the run; failures inside a
/// check are reported as a failed [`CheckResult`].
pub fn run_suite(params: &ModuliParams) -> Result<Vec<CheckResult>> {
    params.require_prime()?;
    let closed = closed_e(params);
    let shift = exp(params.mirror_shift());
    let mut out = Vec::new();
    let mut push = |name, outcome| out.push(CheckResult::from_outcome(name, outcome));

    push(
        "palindromy",
        closed.clone().map(|e| {
            let center = params.palindromy_center();
            (e.is_palindromic(exp(center)), format!("E(q) = q^{center} E(1/q)"))
        }),
    );

    push(
        "mirror_diagonal",
        closed.clone().and_then(|e| {
            let diag = mirror_difference(params)?.specialize_diagonal();
            Ok(equal(&diag, &e, "u = v = q"))
        }),
    );

    push(
        "betti_mirror_identity",
        closed.clone().and_then(|e| {
            let lifted = evar_via_types(params)?.shift(shift);
            Ok(equal(&lifted, &e, "E_var(M_B) q^shift vs E(q)"))
        }),
    );

    push(
        "type_derivation",
        (|| {
            let via_types = evar_via_types(params)?;
            Ok(equal(&via_types, &evar_direct(params)?, "type sum vs closed form"))
        })(),
    );

    push(
        "hodge_tate_parity",
        closed.clone().and_then(|e| {
            let evar = evar_via_types(params)?;
            let dilated = evar.dilate(2).shift(shift * 2);
            let identity = dilated == e.dilate(2);
            let signs = has_hodge_tate_signs(&evar);
            Ok((identity && signs, format!("dilation identity {identity}, sign pattern {signs}")))
        }),
    );

    let betti = variant_betti(params);
    push(
        "betti_positivity",
        betti.clone().map(|b| (true, format!("{} positive integral degrees", b.len()))),
    );

    push(
        "support_bound",
        betti.clone().map(|b| {
            let (lo, hi) = (2 * params.c + 1, params.dim - 1);
            let ok = b.iter().all(|(d, _)| (lo..=hi).contains(&d));
            (ok, format!("support in [{lo}, {hi}]"))
        }),
    );

    push(
        "euler_characteristic",
        (|| {
            let sum = betti.clone()?.alternating_sum();
            let at_one = closed.clone()?.eval(&Rational::one())?;
            let expected = expected_euler(params);
            let ok = at_one == Rational::from_integer(sum.clone()) && sum == expected;
            Ok((ok, format!("sum {sum}, E(1) = {at_one}, closed form {expected}")))
        })(),
    );

    push(
        "curious_hard_lefschetz",
        betti.clone().map(|b| {
            let center = params.m + params.c;
            (b.is_symmetric_about(center), format!("symmetric about degree {center}"))
        }),
    );

    let report = verify_pw(params);
    push(
        "perverse_first_criterion",
        report.clone().map(|r| {
            let rep = &r.perverse_report;
            (rep.passes() && rep.is_k_seq, format!("m = {}, k = {}: {:?}", params.m, params.c, rep.first_violation))
        }),
    );

    push(
        "weight_second_criterion",
        report.clone().map(|r| {
            let rep = &r.weight_report;
            (rep.passes() && rep.is_k_seq, format!("m = {}, k = {}: {:?}", params.m, params.c, rep.first_violation))
        }),
    );

    push(
        "p_equals_w",
        report.clone().map(|r| (r.pw_holds, format!("{} occupied cells", r.perverse.len()))),
    );

    push(
        "endoscopic_bound",
        prop14_bound(params).map(|b| (b == params.c, format!("bound {b}, c = {}", params.c))),
    );

    push(
        "weight_table_vs_betti_epoly",
        report.and_then(|r| {
            let rebuilt = evar_from_weight_table(params, &r.weight);
            Ok(equal(&rebuilt, &evar_via_types(params)?, "weight table vs E_var(M_B)"))
        }),
    );

    Ok(out)
}
