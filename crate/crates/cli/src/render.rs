//! Text, JSON and CSV renderings of each command's result.

use std::fmt::Write;

use serde_json::json;
use varpw_core::filtration::SearchBounds;
use varpw_core::laurent::format_rational;
use varpw_core::{
    closed_e, mirror_difference, variant_betti, verify_pw, CheckResult, Counterexample, Criterion,
    ModuliParams, Result,
};

use crate::{Format, Outcome};

fn ok(text: String) -> Outcome {
    Outcome { text, ok: true }
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn header(p: &ModuliParams) -> String {
    format!("n = {}, g = {}, d = {}, dim = {}, m = {}, c = {}\n", p.n, p.g, p.d, p.dim, p.m, p.c)
}

pub fn epoly(p: &ModuliParams, format: Format, verbose: bool) -> Result<Outcome> {
    let e = closed_e(p)?;
    let text = match format {
        Format::Text => {
            let mut s = header(p);
            writeln!(s, "E(q) = {e}").unwrap();
            if verbose {
                writeln!(s, "E(M_Dol; u,v) - E(M^_Dol; u,v) = {}", mirror_difference(p)?).unwrap();
                writeln!(s, "palindromic about q^{}", p.palindromy_center()).unwrap();
            }
            s
        }
        Format::Json => to_json(&json!({
            "params": p,
            "e_polynomial": e,
            "mirror_difference": mirror_difference(p)?,
        })),
        Format::Csv => e
            .terms()
            .map(|(x, c)| format!("{x},{}\n", format_rational(c)))
            .collect(),
    };
    Ok(ok(text))
}

pub fn betti(p: &ModuliParams, format: Format) -> Result<Outcome> {
    let betti = variant_betti(p)?;
    let text = match format {
        Format::Text => {
            let mut s = header(p);
            for (d, v) in betti.iter() {
                writeln!(s, "H^{d}_var: {v}").unwrap();
            }
            s
        }
        Format::Json => to_json(&json!(betti)),
        Format::Csv => betti.to_csv(),
    };
    Ok(ok(text))
}

pub fn pw(p: &ModuliParams, format: Format) -> Result<Outcome> {
    let report = verify_pw(p)?;
    let text = match format {
        Format::Text => format!("{report}\n"),
        Format::Json => to_json(&json!(report)),
        // P = W makes the two tables one; CSV carries a single table
        Format::Csv => report.perverse.to_csv(),
    };
    Ok(Outcome { text, ok: report.all_pass() })
}

pub fn verify(suites: &[(ModuliParams, Vec<CheckResult>)], format: Format, verbose: bool) -> Outcome {
    let all_ok = suites.iter().all(|(_, checks)| checks.iter().all(|c| c.passed));
    let text = match format {
        Format::Text => {
            let mut s = String::new();
            for (p, checks) in suites {
                s.push_str(&header(p));
                for c in checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    if verbose || !c.passed {
                        writeln!(s, "[{status}] {}: {}", c.name, c.detail).unwrap();
                    } else {
                        writeln!(s, "[{status}] {}", c.name).unwrap();
                    }
                }
            }
            let failed: usize = suites
                .iter()
                .map(|(_, checks)| checks.iter().filter(|c| !c.passed).count())
                .sum();
            writeln!(s, "{}: {failed} failed", if all_ok { "ALL PASS" } else { "FAILURES" }).unwrap();
            s
        }
        Format::Json => {
            let points: Vec<_> = suites
                .iter()
                .map(|(p, checks)| {
                    json!({
                        "params": p,
                        "checks": checks,
                        "all_passed": checks.iter().all(|c| c.passed),
                    })
                })
                .collect();
            if points.len() == 1 {
                to_json(&points[0])
            } else {
                to_json(&json!(points))
            }
        }
        Format::Csv => {
            let mut s = String::new();
            for (p, checks) in suites {
                for c in checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(s, "{},{},{},{status}", p.n, p.g, c.name).unwrap();
                }
            }
            s
        }
    };
    Outcome { text, ok: all_ok }
}

pub fn ksearch(
    bounds: &SearchBounds,
    results: &[(Criterion, Vec<Counterexample>)],
    format: Format,
) -> Outcome {
    let all_ok = results.iter().all(|(_, found)| found.is_empty());
    let text = match format {
        Format::Text => {
            let mut s = format!(
                "tables with i <= {}, j <= {}, values <= {}; m in {:?}, k in {:?}\n",
                bounds.i_max, bounds.j_max, bounds.v_max, bounds.m_range, bounds.k_range
            );
            for (c, found) in results {
                writeln!(s, "{c}: {} counterexamples", found.len()).unwrap();
                for ce in found {
                    let cells: Vec<String> =
                        ce.table.iter().map(|((i, j), v)| format!("({i},{j})={v}")).collect();
                    writeln!(s, "  m = {}, k = {}: {}", ce.m, ce.k, cells.join(" ")).unwrap();
                }
            }
            s
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = results
                .iter()
                .map(|(c, found)| (c.to_string(), json!(found)))
                .collect();
            to_json(&json!({
                "cases": bounds.enumeration_count().to_string(),
                "results": map,
            }))
        }
        Format::Csv => {
            let mut s = String::new();
            for (c, found) in results {
                for (idx, ce) in found.iter().enumerate() {
                    for ((i, j), v) in ce.table.iter() {
                        writeln!(s, "{c},{idx},{},{},{i},{j},{v}", ce.m, ce.k).unwrap();
                    }
                }
            }
            s
        }
    };
    Outcome { text, ok: all_ok }
}
