//! Perverse and weight filtration tables on variant cohomology at prime rank.
//!
//! Both tables are placed on the single column `j = c_n`: degree `d` Betti
//! data goes to `(d - c_n, c_n)`. For the perverse side this is
//! `P_{d-c_n-1} = 0 ⊂ P_{d-c_n} = H^d`; for the weight side the jump
//! `W_{2(d-c_n)}` is recorded at the Hodge level `d - c_n`, which the
//! Hodge-Tate property makes unambiguous. The placement is then validated
//! against the matching k-sequence criterion with `(m, k) = (dim/2, c_n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::epoly::{variant_betti, CohomologyProfile, ModuliParams};
use crate::error::{Error, Result};
use crate::filtration::{check_prop21, check_prop22, CriterionReport, FiltrationTable};
use crate::laurent::{HalfExp, LaurentPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PWReport {
    pub params: ModuliParams,
    pub betti: CohomologyProfile,
    pub perverse: FiltrationTable,
    pub weight: FiltrationTable,
    pub perverse_report: CriterionReport,
    pub weight_report: CriterionReport,
    pub pw_holds: bool,
    pub curious_hl_holds: bool,
}

impl PWReport {
    pub fn all_pass(&self) -> bool {
        self.pw_holds
            && self.curious_hl_holds
            && self.perverse_report.passes()
            && self.perverse_report.is_k_seq
            && self.weight_report.passes()
            && self.weight_report.is_k_seq
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for PWReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(f, "n = {}, g = {}, d = {}", p.n, p.g, p.d)?;
        writeln!(f, "dim = {}, m = {}, c = {}", p.dim, p.m, p.c)?;
        let degrees: Vec<String> = self.betti.iter().map(|(d, _)| d.to_string()).collect();
        writeln!(f, "occupied degrees: {}", degrees.join(" "))?;
        for ((i, j), v) in self.perverse.iter() {
            writeln!(f, "  H^{}_var: dim {v}, perverse level {i}, weight {}", i + j, 2 * i)?;
        }
        writeln!(f, "perverse table, first criterion: {}", verdict(self.perverse_report.passes()))?;
        writeln!(f, "weight table, second criterion: {}", verdict(self.weight_report.passes()))?;
        writeln!(f, "curious hard Lefschetz symmetry: {}", verdict(self.curious_hl_holds))?;
        write!(f, "P = W: {}", verdict(self.pw_holds))
    }
}

fn place_on_column(params: &ModuliParams, betti: &CohomologyProfile) -> Result<FiltrationTable> {
    let c = params.c;
    let mut table = FiltrationTable::new();
    for (d, v) in betti.iter() {
        let level = d.checked_sub(c).ok_or_else(|| {
            Error::InconsistentFormula(format!("degree {d} lies below c = {c}"))
        })?;
        table.set(level as u32, c as u32, v);
    }
    Ok(table)
}

fn mk(params: &ModuliParams) -> (u32, u32) {
    (params.m as u32, params.c as u32)
}

pub fn perverse_table(params: &ModuliParams) -> Result<FiltrationTable> {
    let table = place_on_column(params, &variant_betti(params)?)?;
    let (m, k) = mk(params);
    let report = check_prop21(&table, m, k);
    if !report.passes() {
        return Err(Error::CriterionFailure(format!(
            "perverse table: {:?}",
            report.first_violation
        )));
    }
    Ok(table)
}

pub fn weight_table(params: &ModuliParams) -> Result<FiltrationTable> {
    let table = place_on_column(params, &variant_betti(params)?)?;
    let (m, k) = mk(params);
    let report = check_prop22(&table, m, k);
    if !report.passes() {
        return Err(Error::CriterionFailure(format!(
            "weight table: {:?}",
            report.first_violation
        )));
    }
    Ok(table)
}

/// Builds both tables and their criterion reports without stopping at a
/// failed criterion, so the report shows every outcome.
pub fn verify_pw(params: &ModuliParams) -> Result<PWReport> {
    let betti = variant_betti(params)?;
    let perverse = place_on_column(params, &betti)?;
    let weight = place_on_column(params, &betti)?;
    let (m, k) = mk(params);
    let perverse_report = check_prop21(&perverse, m, k);
    let weight_report = check_prop22(&weight, m, k);
    let pw_holds = perverse == weight;
    let curious_hl_holds = betti.is_symmetric_about(params.m + params.c);
    Ok(PWReport {
        params: *params,
        betti,
        perverse,
        weight,
        perverse_report,
        weight_report,
        pw_holds,
        curious_hl_holds,
    })
}

/// The endoscopic lower bound `n(n - n/p)(g - 1)` on perverse levels.
///
/// At prime rank this must coincide with `c_n` and with the lowest column of
/// the realized perverse table.
pub fn prop14_bound(params: &ModuliParams) -> Result<u64> {
    let bound = params.endo_codim;
    if params.is_prime_rank() {
        if bound != params.c {
            return Err(Error::IdentityFailure(format!(
                "endoscopic codimension {bound} differs from c = {}",
                params.c
            )));
        }
        let table = perverse_table(params)?;
        let stray = table.iter().map(|((_, j), _)| j).find(|&j| u64::from(j) != bound);
        if let Some(j) = stray {
            return Err(Error::IdentityFailure(format!(
                "perverse table occupies column {j}, bound is {bound}"
            )));
        }
    }
    Ok(bound)
}

/// Rebuilds `E_var(M_B; q, q)` in `q = uv` from a weight table: the entry at
/// Hodge level `i` of `H^{i+c}` is, by Poincaré duality, weight `2(dim - i)`
/// in compactly supported degree `2 dim - i - c`.
pub fn evar_from_weight_table(params: &ModuliParams, weight: &FiltrationTable) -> LaurentPoly {
    let dim = params.dim as i64;
    LaurentPoly::from_terms(weight.iter().map(|((i, j), v)| {
        let degree_c = 2 * dim - i64::from(i) - i64::from(j);
        let value = Rational::from_integer(v.into());
        let signed = if degree_c % 2 == 0 { value } else { -value };
        (HalfExp::int(dim - i64::from(i)), signed)
    }))
}

/// Every coefficient of `q^e` has sign `(-1)^e`: the compactly supported
/// classes of weight `2e` sit in degrees of the parity of `e`, so nothing
/// cancels.
pub fn has_hodge_tate_signs(evar: &LaurentPoly) -> bool {
    use num_traits::Signed;
    evar.terms().all(|(e, c)| match e.to_integer() {
        Some(e) => c.is_positive() == (e % 2 == 0),
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epoly::make_params;
    use crate::hookchar::evar_from_types;

    fn table(entries: &[((u32, u32), u128)]) -> FiltrationTable {
        FiltrationTable::from_entries(entries.iter().copied())
    }

    #[test]
    fn tables_small_cases() {
        let p = make_params(2, 2, 1).unwrap();
        assert_eq!(perverse_table(&p).unwrap(), table(&[((3, 2), 30)]));
        assert_eq!(weight_table(&p).unwrap(), table(&[((3, 2), 30)]));
        let p = make_params(3, 2, 1).unwrap();
        let expected = table(&[((7, 6), 160), ((8, 6), 80), ((9, 6), 160)]);
        assert_eq!(perverse_table(&p).unwrap(), expected);
        assert_eq!(weight_table(&p).unwrap(), expected);
    }

    #[test]
    fn rank_five_table_shape() {
        let p = make_params(5, 2, 1).unwrap();
        let t = perverse_table(&p).unwrap();
        assert!(t.iter().all(|((_, j), _)| j == 20));
        assert!(t.iter().all(|((i, j), v)| t.get(48 - i64::from(i), i64::from(j)) == v));
    }

    #[test]
    fn composite_rank_rejected() {
        for n in [4, 6, 9] {
            let p = make_params(n, 2, 1).unwrap();
            assert_eq!(weight_table(&p), Err(Error::NotPrime(n)));
            assert_eq!(verify_pw(&p), Err(Error::NotPrime(n)));
        }
    }

    #[test]
    fn verify_small_cases() {
        for (n, g) in [(2, 2), (3, 2)] {
            let report = verify_pw(&make_params(n, g, 1).unwrap()).unwrap();
            assert!(report.pw_holds && report.curious_hl_holds && report.all_pass());
        }
    }

    #[test]
    fn endoscopic_bound_examples() {
        assert_eq!(prop14_bound(&make_params(2, 2, 1).unwrap()).unwrap(), 2);
        assert_eq!(prop14_bound(&make_params(6, 2, 1).unwrap()).unwrap(), 18);
        assert_eq!(prop14_bound(&make_params(3, 3, 1).unwrap()).unwrap(), 12);
    }

    #[test]
    fn weight_table_reproduces_betti_side() {
        for (n, g) in [(2, 2), (3, 2), (2, 3)] {
            let p = make_params(n, g, 1).unwrap();
            let evar = evar_from_types(&p).unwrap();
            assert_eq!(evar_from_weight_table(&p, &weight_table(&p).unwrap()), evar);
            assert!(has_hodge_tate_signs(&evar));
        }
        assert!(!has_hodge_tate_signs(&LaurentPoly::from_int_terms(&[(3, 30)])));
    }

    #[test]
    fn text_summary() {
        let report = verify_pw(&make_params(2, 2, 1).unwrap()).unwrap();
        let text = report.to_string();
        assert!(text.contains("occupied degrees: 5"));
        assert!(text.contains("H^5_var: dim 30, perverse level 3, weight 6"));
        assert!(text.ends_with("P = W: PASS"));
    }
}
