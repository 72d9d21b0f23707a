//! Residue-conditioned gap rules, overpartitions, and the enumerators for
//! the dilated and classical identities.
//!
//! A [`ResidueRuleSet`] describes a family of (over)partitions by
//!
//! - a modulus `m`,
//! - the residues whose parts may be overlined,
//! - forbidden parts,
//! - for each residue (and overline state) of the larger part, the allowed
//!   differences to the next part, possibly depending on whether that next
//!   part is overlined,
//! - a weight table mapping each part class to its `(u, v)` contribution.
//!
//! Rule sets are data, not code: the dilated theorems differ only in their
//! tables, which ship as JSON fixtures.

use serde::{Deserialize, Serialize};

use crate::series::Caps;
use crate::table::CountTable;
use crate::{Error, Result};

/// Allowed differences: a finite set plus an optional tail `>= at_least`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapPred {
    #[serde(default)]
    pub exact: Vec<u32>,
    #[serde(default)]
    pub at_least: Option<u32>,
}

impl GapPred {
    pub fn allows(&self, diff: u32) -> bool {
        self.exact.contains(&diff) || self.at_least.is_some_and(|t| diff >= t)
    }
}

/// Gap rule for a larger part with the given residue and overline state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRule {
    pub residue: u32,
    #[serde(default)]
    pub overlined: bool,
    /// Allowed differences when the next part is not overlined.
    pub plain: GapPred,
    /// Allowed differences when the next part is overlined; required when
    /// any residue is overlinable.
    #[serde(default)]
    pub over: Option<GapPred>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRule {
    pub residues: Vec<u32>,
    #[serde(default)]
    pub overlined: bool,
    #[serde(default)]
    pub du: u32,
    #[serde(default)]
    pub dv: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenPart {
    pub value: u32,
    #[serde(default)]
    pub overlined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRuleSet {
    pub name: String,
    pub version: u32,
    #[serde(default)]
    pub description: String,
    pub modulus: u32,
    #[serde(default)]
    pub overlinable: Vec<u32>,
    #[serde(default)]
    pub forbidden: Vec<ForbiddenPart>,
    pub gap_rules: Vec<GapRule>,
    pub weights: Vec<WeightRule>,
}

impl ResidueRuleSet {
    pub fn from_json(json: &str) -> Result<ResidueRuleSet> {
        let rules: ResidueRuleSet = serde_json::from_str(json)?;
        rules.validate()?;
        Ok(rules)
    }

    /// Rules must be total: every residue needs a gap rule and a weight rule
    /// for each overline state it can occur in.
    pub fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(Error::RuleSet("modulus must be positive".into()));
        }
        let m = self.modulus;
        if let Some(r) = self.overlinable.iter().find(|&&r| r >= m) {
            return Err(Error::RuleSet(format!("overlinable residue {r} >= modulus {m}")));
        }
        for r in 0..m {
            for over in [false, true] {
                if over && !self.overlinable.contains(&r) {
                    continue;
                }
                let n_gap = self
                    .gap_rules
                    .iter()
                    .filter(|g| g.residue == r && g.overlined == over)
                    .count();
                if n_gap != 1 {
                    return Err(Error::RuleSet(format!(
                        "residue {r} (overlined: {over}) has {n_gap} gap rules, need exactly 1"
                    )));
                }
                let n_w = self
                    .weights
                    .iter()
                    .filter(|w| w.residues.contains(&r) && w.overlined == over)
                    .count();
                if n_w != 1 {
                    return Err(Error::RuleSet(format!(
                        "residue {r} (overlined: {over}) has {n_w} weight rules, need exactly 1"
                    )));
                }
            }
        }
        if !self.overlinable.is_empty() {
            if let Some(g) = self.gap_rules.iter().find(|g| g.over.is_none()) {
                return Err(Error::RuleSet(format!(
                    "residue {} lacks a predicate for overlined successors",
                    g.residue
                )));
            }
        }
        for g in &self.gap_rules {
            if g.residue >= m {
                return Err(Error::RuleSet(format!("gap rule residue {} >= modulus {m}", g.residue)));
            }
        }
        Ok(())
    }

    pub fn can_overline(&self, value: u32) -> bool {
        self.overlinable.contains(&(value % self.modulus))
    }

    pub fn is_forbidden(&self, value: u32, overlined: bool) -> bool {
        self.forbidden.iter().any(|f| f.value == value && f.overlined == overlined)
    }

    /// May `smaller` (with overline state) follow `larger` (with state)?
    pub fn gap_allowed(&self, larger: u32, larger_over: bool, smaller: u32, smaller_over: bool) -> bool {
        if smaller >= larger {
            return false;
        }
        let r = larger % self.modulus;
        let rule = self
            .gap_rules
            .iter()
            .find(|g| g.residue == r && g.overlined == larger_over)
            .expect("validated rule set is total");
        let pred = if smaller_over {
            rule.over.as_ref().expect("validated rule set covers overlined successors")
        } else {
            &rule.plain
        };
        pred.allows(larger - smaller)
    }

    /// `(u, v)` contribution of a single part.
    pub fn part_weight(&self, value: u32, overlined: bool) -> (u32, u32) {
        let r = value % self.modulus;
        let rule = self
            .weights
            .iter()
            .find(|w| w.residues.contains(&r) && w.overlined == overlined)
            .expect("validated rule set is total");
        (rule.du, rule.dv)
    }

    /// A part is usable if it is positive, not forbidden, and overlined only
    /// at an overlinable residue.
    pub fn part_ok(&self, value: u32, overlined: bool) -> bool {
        value >= 1 && !(overlined && !self.can_overline(value)) && !self.is_forbidden(value, overlined)
    }
}

/// A partition into positive parts where parts may carry an overline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverPartition {
    parts: Vec<(u32, bool)>,
}

impl OverPartition {
    /// Validate a largest-first sequence against a rule set.
    pub fn new(parts: Vec<(u32, bool)>, rules: &ResidueRuleSet) -> Result<OverPartition> {
        for &(value, over) in &parts {
            if !rules.part_ok(value, over) {
                return Err(Error::RuleSet(format!(
                    "part {value}{} not allowed",
                    if over { "~" } else { "" }
                )));
            }
        }
        for w in parts.windows(2) {
            let ((hi, hi_o), (lo, lo_o)) = (w[0], w[1]);
            if !rules.gap_allowed(hi, hi_o, lo, lo_o) {
                return Err(Error::RuleSet(format!("difference {hi} - {lo} not allowed")));
            }
        }
        Ok(OverPartition { parts })
    }

    pub fn parts(&self) -> &[(u32, bool)] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().map(|&(v, _)| v).sum()
    }

    pub fn weights(&self, rules: &ResidueRuleSet) -> (u32, u32) {
        self.parts.iter().fold((0, 0), |(u, v), &(value, over)| {
            let (du, dv) = rules.part_weight(value, over);
            (u + du, v + dv)
        })
    }
}

impl std::fmt::Display for OverPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rendered: Vec<String> = self
            .parts
            .iter()
            .map(|&(v, o)| if o { format!("{v}~") } else { v.to_string() })
            .collect();
        write!(f, "[{}]", rendered.join(", "))
    }
}

/// Visit every (over)partition admissible under the rule set with total at
/// most `n_max`, passing `(u, v, n)`. The empty partition is included.
pub fn for_each_rule_partition<F>(rules: &ResidueRuleSet, n_max: u32, mut visit: F)
where
    F: FnMut(&[(u32, bool)], u32, u32, u32),
{
    fn rec<F>(
        rules: &ResidueRuleSet,
        budget: u32,
        stack: &mut Vec<(u32, bool)>,
        u: u32,
        v: u32,
        n: u32,
        visit: &mut F,
    ) where
        F: FnMut(&[(u32, bool)], u32, u32, u32),
    {
        let &(prev, prev_over) = stack.last().expect("called with at least one part");
        for value in (1..=budget.min(prev.saturating_sub(1))).rev() {
            for over in [false, true] {
                if over && !rules.can_overline(value) {
                    continue;
                }
                if !rules.part_ok(value, over) || !rules.gap_allowed(prev, prev_over, value, over) {
                    continue;
                }
                let (du, dv) = rules.part_weight(value, over);
                let (u2, v2, n2) = (u + du, v + dv, n + value);
                stack.push((value, over));
                visit(stack, u2, v2, n2);
                rec(rules, budget - value, stack, u2, v2, n2, visit);
                stack.pop();
            }
        }
    }

    let mut stack = Vec::new();
    visit(&stack, 0, 0, 0);
    for value in (1..=n_max).rev() {
        for over in [false, true] {
            if over && !rules.can_overline(value) {
                continue;
            }
            if !rules.part_ok(value, over) {
                continue;
            }
            let (du, dv) = rules.part_weight(value, over);
            stack.push((value, over));
            visit(&stack, du, dv, value);
            rec(rules, n_max - value, &mut stack, du, dv, value, &mut visit);
            stack.pop();
        }
    }
}

/// Counts `(u, v, n)` of the (over)partitions admissible under the rule set.
pub fn enumerate_residue_rule(rules: &ResidueRuleSet, caps: Caps) -> CountTable {
    let mut table = CountTable::new(caps);
    for_each_rule_partition(rules, caps.n, |_, u, v, n| table.record(u, v, n));
    table
}

/// Visit every set of distinct positive integers congruent to `r (mod m)`
/// with sum at most `n_max`, passing (number of elements, sum).
fn for_each_residue_subset<F: FnMut(u32, u32)>(m: u32, r: u32, n_max: u32, f: &mut F) {
    fn rec<F: FnMut(u32, u32)>(m: u32, min: u32, left: u32, parts: u32, sum: u32, f: &mut F) {
        f(parts, sum);
        let mut val = min;
        while val <= left {
            rec(m, val + m, left - val, parts + 1, sum + val, f);
            val += m;
        }
    }
    let first = if r % m == 0 { m } else { r % m };
    rec(m, first, n_max, 0, 0, f);
}

/// Counts `C(u, v, n)`: partitions of `n` into `u` distinct parts congruent
/// to `r_a (mod m)` and `v` distinct parts congruent to `r_b (mod m)`.
pub fn enumerate_two_residue_distinct(m: u32, r_a: u32, r_b: u32, caps: Caps) -> CountTable {
    assert!(m >= 1 && r_a % m != r_b % m, "residue classes must differ");
    let mut table = CountTable::new(caps);
    for_each_residue_subset(m, r_a, caps.n, &mut |ua, sa| {
        for_each_residue_subset(m, r_b, caps.n - sa, &mut |vb, sb| {
            table.record(ua, vb, sa + sb);
        });
    });
    table
}

/// Counts of partitions into distinct odd parts, tabulated at
/// `(number of parts, 0, n)`.
pub fn enumerate_distinct_odd(caps: Caps) -> CountTable {
    let mut table = CountTable::new(caps);
    fn rec(min: u32, left: u32, parts: u32, sum: u32, table: &mut CountTable) {
        table.record(parts, 0, sum);
        let mut val = min;
        while val <= left {
            rec(val + 2, left - val, parts + 1, sum + val, table);
            val += 2;
        }
    }
    rec(1, caps.n, 0, 0, &mut table);
    table
}

/// Both sides of the Rogers-Ramanujan identity with parameter `a = 0` or 1,
/// as count sequences indexed by `n`:
/// difference side (gaps at least 2, smallest part at least `1 + a`) and
/// congruence side (parts congruent to `±(1 + a) mod 5`, with repetition).
pub fn rr_sides(a_param: u32, n_max: u32) -> (Vec<u64>, Vec<u64>) {
    assert!(a_param <= 1);
    let mut diff = vec![0u64; n_max as usize + 1];
    fn rec_gap(max: u32, min_part: u32, left: u32, sum: u32, out: &mut [u64]) {
        out[sum as usize] += 1;
        for v in (min_part..=max.min(left)).rev() {
            rec_gap(v.saturating_sub(2), min_part, left - v, sum + v, out);
        }
    }
    rec_gap(n_max, 1 + a_param, n_max, 0, &mut diff);

    let mut cong = vec![0u64; n_max as usize + 1];
    let allowed: Vec<u32> = (1..=n_max)
        .filter(|v| v % 5 == (1 + a_param) % 5 || v % 5 == (5 - (1 + a_param)) % 5)
        .collect();
    fn rec_rep(allowed: &[u32], max: u32, left: u32, sum: u32, out: &mut [u64]) {
        out[sum as usize] += 1;
        for &v in allowed.iter().rev() {
            if v <= max && v <= left {
                rec_rep(allowed, v, left - v, sum + v, out);
            }
        }
    }
    rec_rep(&allowed, n_max, n_max, 0, &mut cong);
    (diff, cong)
}

/// Both sides of Schur's identity as count sequences indexed by `n`:
/// distinct parts congruent to 1 or 2 mod 3, and partitions with differences
/// at least 3 where a difference of exactly 3 is disallowed between two
/// multiples of 3.
pub fn schur_sides(n_max: u32) -> (Vec<u64>, Vec<u64>) {
    let mut a_side = vec![0u64; n_max as usize + 1];
    fn rec_a(min: u32, left: u32, sum: u32, out: &mut [u64]) {
        out[sum as usize] += 1;
        let mut v = min;
        while v <= left {
            if v % 3 != 0 {
                rec_a(v + 1, left - v, sum + v, out);
            }
            v += 1;
        }
    }
    rec_a(1, n_max, 0, &mut a_side);

    let mut b_side = vec![0u64; n_max as usize + 1];
    // The next part after v must be at most v - 3, or v - 4 when v is a
    // multiple of 3 (a difference of exactly 3 would give two consecutive
    // multiples of 3).
    fn next_bound(v: u32) -> u32 {
        v.saturating_sub(if v % 3 == 0 { 4 } else { 3 })
    }
    fn rec_b(max: u32, left: u32, sum: u32, out: &mut [u64]) {
        out[sum as usize] += 1;
        for v in (1..=max.min(left)).rev() {
            rec_b(next_bound(v), left - v, sum + v, out);
        }
    }
    rec_b(n_max, n_max, 0, &mut b_side);
    (a_side, b_side)
}
