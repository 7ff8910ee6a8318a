//! Double-indexed dimension tables and the two numerical criteria that force
//! such a table onto a single column `j = k`.
//!
//! Both criteria quantify over infinitely many indices. A table has finite
//! support, so every condition only has to be tested at indices that touch
//! the support: an index pair whose two sides are both outside the support
//! compares zero with zero. Each check below enumerates exactly those
//! indices and reports the lexicographically smallest failing witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `v^{i,j}` with non-negative indices; absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiltrationTable {
    entries: BTreeMap<(u32, u32), u128>,
}

impl FiltrationTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Later duplicates overwrite earlier ones; zeros are dropped.
    pub fn from_entries<I: IntoIterator<Item = ((u32, u32), u128)>>(entries: I) -> Self {
        let mut table = Self::new();
        for ((i, j), v) in entries {
            table.set(i, j, v);
        }
        table
    }

    pub fn set(&mut self, i: u32, j: u32, value: u128) {
        if value == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    /// Zero for any index outside the support, including negative ones.
    pub fn get(&self, i: i64, j: i64) -> u128 {
        match (u32::try_from(i), u32::try_from(j)) {
            (Ok(i), Ok(j)) => self.entries.get(&(i, j)).copied().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), u128)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// `sum_{i+j=s} v^{i,j}` for every anti-diagonal `s` that is nonzero.
    fn diagonal_sums(&self) -> BTreeMap<i64, u128> {
        let mut sums = BTreeMap::new();
        for ((i, j), v) in self.iter() {
            add_to(&mut sums, i64::from(i) + i64::from(j), v);
        }
        sums
    }

    /// `sum_j v^{i,j}` for every row `i` that is nonzero.
    fn row_sums(&self) -> BTreeMap<i64, u128> {
        let mut sums = BTreeMap::new();
        for ((i, _), v) in self.iter() {
            add_to(&mut sums, i64::from(i), v);
        }
        sums
    }

    /// `i,j,value` lines in index order.
    pub fn to_csv(&self) -> String {
        self.iter().map(|((i, j), v)| format!("{i},{j},{v}\n")).collect()
    }

    /// Parses `i,j,value` lines. Values must be positive and each index pair
    /// may occur once; blank lines are ignored.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut table = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("line {}: {what}: {line:?}", lineno + 1));
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let [i, j, v] = fields[..] else {
                return Err(bad("expected three fields"));
            };
            let i: u32 = i.parse().map_err(|_| bad("bad index i"))?;
            let j: u32 = j.parse().map_err(|_| bad("bad index j"))?;
            let v: u128 = v.parse().map_err(|_| bad("bad value"))?;
            if v == 0 {
                return Err(bad("zero values are not listed"));
            }
            if table.entries.insert((i, j), v).is_some() {
                return Err(bad("duplicate index pair"));
            }
        }
        Ok(table)
    }
}

fn add_to(sums: &mut BTreeMap<i64, u128>, key: i64, v: u128) {
    let slot = sums.entry(key).or_insert(0);
    *slot = slot.checked_add(v).expect("filtration table sum overflows u128");
}

fn lookup(sums: &BTreeMap<i64, u128>, key: i64) -> u128 {
    sums.get(&key).copied().unwrap_or(0)
}

impl Serialize for FiltrationTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for ((i, j), v) in &self.entries {
            seq.serialize_element(&(i, j, v))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FiltrationTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(u32, u32, u128)> = Vec::deserialize(deserializer)?;
        let mut table = FiltrationTable::new();
        for (i, j, v) in raw {
            if v == 0 {
                return Err(de::Error::custom("zero values are not listed"));
            }
            if table.entries.insert((i, j), v).is_some() {
                return Err(de::Error::custom("duplicate index pair"));
            }
        }
        Ok(table)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Criterion {
    /// Lower bound, symmetry about `m`, anti-diagonal symmetry about `m + k`.
    Prop21,
    /// Skew symmetry, anti-diagonal/row balance, row symmetry about `m`.
    Prop22,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Prop21 => "Prop21",
            Criterion::Prop22 => "Prop22",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
        })
    }
}

/// The first failing condition and the index tuple it fails at, in the
/// order the condition quantifies them (`(i, j)`, `(l)` or `(i)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub is_k_seq: bool,
    pub first_violation: Option<Violation>,
}

impl CriterionReport {
    fn assemble(
        criterion: Criterion,
        checks: [Option<Vec<i64>>; 3],
        is_k_seq: bool,
    ) -> CriterionReport {
        let first_violation = [Condition::I, Condition::II, Condition::III]
            .into_iter()
            .zip(checks.iter())
            .find_map(|(condition, w)| {
                w.clone().map(|witness| Violation { condition, witness })
            });
        CriterionReport {
            criterion,
            cond_i: checks[0].is_none(),
            cond_ii: checks[1].is_none(),
            cond_iii: checks[2].is_none(),
            is_k_seq,
            first_violation,
        }
    }

    /// All three hypotheses hold.
    pub fn passes(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii
    }

    /// The hypotheses hold but the conclusion does not.
    pub fn is_counterexample(&self) -> bool {
        self.passes() && !self.is_k_seq
    }
}

/// Every nonzero entry sits in column `j = k`.
pub fn is_k_sequence(table: &FiltrationTable, k: u32) -> bool {
    table.iter().all(|((_, j), _)| j == k)
}

/// Smallest candidate witness at which `fails` holds.
fn first_failure<W: Ord, F: Fn(&W) -> bool>(candidates: BTreeSet<W>, fails: F) -> Option<W> {
    candidates.into_iter().find(|w| fails(w))
}

pub fn check_prop21(table: &FiltrationTable, m: u32, k: u32) -> CriterionReport {
    let (m, k) = (i64::from(m), i64::from(k));

    // (i) v^{i,j} = 0 for j < k
    let cond_i = table
        .iter()
        .find(|((_, j), _)| i64::from(*j) < k)
        .map(|((i, j), _)| vec![i64::from(i), i64::from(j)]);

    // (ii) v^{m-i,j} = v^{m+i,j}; i and -i give the same equation
    let candidates = table
        .iter()
        .map(|((a, j), _)| ((i64::from(a) - m).abs(), i64::from(j)))
        .collect();
    let cond_ii = first_failure(candidates, |&(i, j)| table.get(m - i, j) != table.get(m + i, j))
        .map(|(i, j)| vec![i, j]);

    // (iii) anti-diagonal sums at m+k-l and m+k+l agree for l >= 0
    let diag = table.diagonal_sums();
    let center = m + k;
    let candidates = diag.keys().map(|s| (s - center).abs()).collect();
    let cond_iii = first_failure(candidates, |&l| {
        lookup(&diag, center - l) != lookup(&diag, center + l)
    })
    .map(|l| vec![l]);

    CriterionReport::assemble(
        Criterion::Prop21,
        [cond_i, cond_ii, cond_iii],
        is_k_sequence(table, k as u32),
    )
}

pub fn check_prop22(table: &FiltrationTable, m: u32, k: u32) -> CriterionReport {
    let (m, k) = (i64::from(m), i64::from(k));

    // (i) v^{i,j} = v^{2m+2k-i-2j,j}
    let mirror = |i: i64, j: i64| 2 * m + 2 * k - i - 2 * j;
    let mut candidates = BTreeSet::new();
    for ((a, j), _) in table.iter() {
        let (a, j) = (i64::from(a), i64::from(j));
        candidates.insert((a, j));
        let b = mirror(a, j);
        if b >= 0 {
            candidates.insert((b, j));
        }
    }
    let cond_i = first_failure(candidates, |&(i, j)| table.get(i, j) != table.get(mirror(i, j), j))
        .map(|(i, j)| vec![i, j]);

    // (ii) sum_{i+j=k+l} v^{i,j} = sum_j v^{l,j} for l >= 0
    let diag = table.diagonal_sums();
    let rows = table.row_sums();
    let candidates = diag
        .keys()
        .filter(|&&s| s >= k)
        .map(|s| s - k)
        .chain(rows.keys().copied())
        .collect();
    let cond_ii = first_failure(candidates, |&l| lookup(&diag, k + l) != lookup(&rows, l))
        .map(|l| vec![l]);

    // (iii) sum_j v^{m+i,j} = sum_j v^{m-i,j} for i >= 0
    let candidates = rows.keys().map(|a| (a - m).abs()).collect();
    let cond_iii = first_failure(candidates, |&i| lookup(&rows, m + i) != lookup(&rows, m - i))
        .map(|i| vec![i]);

    CriterionReport::assemble(
        Criterion::Prop22,
        [cond_i, cond_ii, cond_iii],
        is_k_sequence(table, k as u32),
    )
}

pub fn check(criterion: Criterion, table: &FiltrationTable, m: u32, k: u32) -> CriterionReport {
    match criterion {
        Criterion::Prop21 => check_prop21(table, m, k),
        Criterion::Prop22 => check_prop22(table, m, k),
    }
}

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Bounds of an exhaustive table search: every table with `i <= i_max`,
/// `j <= j_max` and entries in `0..=v_max`, against every `(m, k)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub i_max: u32,
    pub j_max: u32,
    pub v_max: u32,
    pub m_range: RangeInclusive<u32>,
    pub k_range: RangeInclusive<u32>,
    pub budget: u128,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            i_max: 3,
            j_max: 2,
            v_max: 1,
            m_range: 1..=3,
            k_range: 0..=2,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl SearchBounds {
    /// `(v_max+1)^{(i_max+1)(j_max+1)} * |m_range| * |k_range|`
    pub fn enumeration_count(&self) -> BigUint {
        let cells = (u64::from(self.i_max) + 1) * (u64::from(self.j_max) + 1);
        let base = BigUint::from(self.v_max) + 1u32;
        let tables: BigUint = match u32::try_from(cells) {
            Ok(cells) => Pow::pow(&base, cells),
            // absurd shapes; any base >= 2 blows the budget anyway
            Err(_) => Pow::pow(&base, 64u32),
        };
        let span = |r: &RangeInclusive<u32>| {
            BigUint::from(if r.is_empty() { 0 } else { r.end() - r.start() + 1 })
        };
        tables * span(&self.m_range) * span(&self.k_range)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub criterion: Criterion,
    pub m: u32,
    pub k: u32,
    pub table: FiltrationTable,
}

/// Enumerates every table within `bounds` and returns those that satisfy all
/// hypotheses of `which` without being `k`-sequences.
pub fn falsification_search(which: Criterion, bounds: &SearchBounds) -> Result<Vec<Counterexample>> {
    let count = bounds.enumeration_count();
    if count.to_u128().is_none_or(|c| c > bounds.budget) {
        return Err(Error::BudgetExceeded {
            count: count.to_string(),
            budget: bounds.budget,
        });
    }
    let cells: Vec<(u32, u32)> = (0..=bounds.i_max)
        .flat_map(|i| (0..=bounds.j_max).map(move |j| (i, j)))
        .collect();
    let mut digits = vec![0u32; cells.len()];
    let mut found = Vec::new();
    loop {
        let table = FiltrationTable::from_entries(
            cells.iter().zip(&digits).map(|(&cell, &v)| (cell, u128::from(v))),
        );
        for m in bounds.m_range.clone() {
            for k in bounds.k_range.clone() {
                if check(which, &table, m, k).is_counterexample() {
                    found.push(Counterexample {
                        criterion: which,
                        m,
                        k,
                        table: table.clone(),
                    });
                }
            }
        }
        // odometer increment, least significant cell first
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(found);
            }
            if digits[pos] < bounds.v_max {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
