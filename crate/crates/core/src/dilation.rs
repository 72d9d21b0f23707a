//! Dilations of coloured partitions and the dilated/classical theorem
//! verifiers.
//!
//! A dilation `q -> q^M, a -> a q^-m_a, b -> b q^-m_b` acts on a coloured
//! part of value `l` as an affine map `l -> M l - offset(colour)` with
//!
//! ```text
//! offset(a) = m_a     offset(b) = m_b     offset(ab) = m_a + m_b
//! offset(a²) = 2 m_a  offset(b²) = 2 m_b
//! ```
//!
//! (the squared colours substitute twice). Three dilations are used:
//! `4,3,1` turns the coloured order into the natural order `0, 1, 2, ...`
//! and admissibility into the refined difference conditions mod 8;
//! `4,1,3` gives the companion conditions; `3,2,1` lands on Schur-type
//! conditions, with squared colours becoming overlined parts.
//!
//! Every dilated theorem is verified three ways: congruence side and rule
//! side by direct enumeration, plus the coloured enumeration transported
//! through the part map. A failure therefore localizes to either the rule
//! transcription or the dilation map.

use crate::colored::{Color, ColoredInt, ColoredPartition};
use crate::enumerate::{enumerate_d, for_each_partition, Bound};
use crate::ladder::series_report;
use crate::report::{ReplayReport, Witness};
use crate::rules::{
    enumerate_distinct_odd, enumerate_residue_rule, enumerate_two_residue_distinct, rr_sides,
    schur_sides, ResidueRuleSet,
};
use crate::series::{two_residue_product, Caps, DilationSpec, TriSeries};
use crate::table::CountTable;
use crate::{Error, Result};

/// `q -> q^4, a -> a q^-3, b -> b q^-1`: coloured order becomes natural order.
pub const DILATION_SILADIC: DilationSpec = DilationSpec { m: 4, m_a: 3, m_b: 1 };
/// `q -> q^4, a -> a q^-1, b -> b q^-3`: the companion dilation.
pub const DILATION_COMPANION: DilationSpec = DilationSpec { m: 4, m_a: 1, m_b: 3 };
/// `q -> q^3, a -> a q^-2, b -> b q^-1`: the Schur dilation.
pub const DILATION_SCHUR: DilationSpec = DilationSpec { m: 3, m_a: 2, m_b: 1 };

/// Offset subtracted from `M * value` for each colour.
pub fn color_offset(spec: DilationSpec, color: Color) -> u32 {
    match color {
        Color::A => spec.m_a,
        Color::B => spec.m_b,
        Color::Ab => spec.m_a + spec.m_b,
        Color::A2 => 2 * spec.m_a,
        Color::B2 => 2 * spec.m_b,
    }
}

/// Image of a single coloured integer (may be non-positive for parts that
/// cannot occur in admissible partitions, e.g. `1_ab` under `4,3,1`).
pub fn dilated_value(x: ColoredInt, spec: DilationSpec) -> i64 {
    spec.m as i64 * x.value() as i64 - color_offset(spec, x.color()) as i64
}

/// A dilated part: plain integer plus an overline marker carried by the
/// squared colours (meaningful for the Schur dilation, harmless metadata
/// for the others).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DilatedPart {
    pub value: u32,
    pub overlined: bool,
}

/// Map an admissible coloured partition through the dilation.
pub fn dilate_partition(p: &ColoredPartition, spec: DilationSpec) -> Result<Vec<DilatedPart>> {
    p.parts()
        .iter()
        .map(|&part| {
            let value = dilated_value(part, spec);
            if value <= 0 {
                return Err(Error::NonPositiveDilatedPart(value));
            }
            Ok(DilatedPart { value: value as u32, overlined: part.color().is_squared() })
        })
        .collect()
}

/// Transport the coloured enumeration through a dilation: counts indexed by
/// the coloured weights and the dilated total `M n - m_a u - m_b v`. For
/// the three dilations here every part image is at least its source value,
/// so enumerating preimages up to `N` covers every dilated total up to `N`.
pub fn transport_counts(spec: DilationSpec, caps: Caps) -> CountTable {
    let mut table = CountTable::new(caps);
    for_each_partition(caps.n, Bound::All, |_, u, v, n| {
        let image = spec.m as i64 * n as i64 - spec.m_a as i64 * u as i64 - spec.m_b as i64 * v as i64;
        debug_assert!(image >= 0);
        if image <= caps.n as i64 {
            table.record(u, v, image as u32);
        }
    });
    table
}

/// The four dilated identities, each with its dilation, rule fixture and
/// congruence side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DilatedTheorem {
    /// Distinct parts `= 1, 3 (mod 4)` vs mod-8 difference conditions.
    Refdilat,
    /// Distinct parts `= 3, 1 (mod 4)` vs the companion conditions.
    Comp,
    /// Distinct parts `= 1, 2 (mod 3)` vs overpartition conditions.
    Newschur,
    /// Distinct odd parts counted by number of parts vs the mod-8
    /// conditions weighted by odd parts plus twice even parts.
    Refinement,
}

impl DilatedTheorem {
    pub const ALL: [DilatedTheorem; 4] = [
        DilatedTheorem::Refdilat,
        DilatedTheorem::Comp,
        DilatedTheorem::Newschur,
        DilatedTheorem::Refinement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DilatedTheorem::Refdilat => "refdilat",
            DilatedTheorem::Comp => "comp",
            DilatedTheorem::Newschur => "newschur",
            DilatedTheorem::Refinement => "refinement",
        }
    }

    pub fn spec(self) -> DilationSpec {
        match self {
            DilatedTheorem::Refdilat | DilatedTheorem::Refinement => DILATION_SILADIC,
            DilatedTheorem::Comp => DILATION_COMPANION,
            DilatedTheorem::Newschur => DILATION_SCHUR,
        }
    }

    /// The versioned rule-set fixture shipped with the crate.
    pub fn rules(self) -> ResidueRuleSet {
        let json = match self {
            DilatedTheorem::Refdilat => include_str!("../fixtures/refdilat.json"),
            DilatedTheorem::Comp => include_str!("../fixtures/comp.json"),
            DilatedTheorem::Newschur => include_str!("../fixtures/newschur.json"),
            DilatedTheorem::Refinement => include_str!("../fixtures/refinement.json"),
        };
        ResidueRuleSet::from_json(json).expect("builtin fixture is valid")
    }

    /// Congruence (product) side by direct enumeration.
    pub fn c_side(self, caps: Caps) -> CountTable {
        match self {
            DilatedTheorem::Refdilat => enumerate_two_residue_distinct(4, 1, 3, caps),
            DilatedTheorem::Comp => enumerate_two_residue_distinct(4, 3, 1, caps),
            DilatedTheorem::Newschur => enumerate_two_residue_distinct(3, 1, 2, caps),
            DilatedTheorem::Refinement => enumerate_distinct_odd(caps),
        }
    }

    /// Difference-condition side by rule-set enumeration.
    pub fn d_side(self, caps: Caps) -> CountTable {
        enumerate_residue_rule(&self.rules(), caps)
    }

    /// Coloured enumeration transported through the dilation.
    pub fn transported(self, caps: Caps) -> CountTable {
        match self {
            DilatedTheorem::Refinement => transport_counts(self.spec(), caps).aggregate_weights(),
            _ => transport_counts(self.spec(), caps),
        }
    }
}

fn table_pair_report(id: String, caps: Caps, lhs: &CountTable, rhs: &CountTable) -> ReplayReport {
    match lhs.first_discrepancy(rhs) {
        None => ReplayReport::pass(id, None, caps),
        Some(((u, v, n), l, r)) => ReplayReport::fail(
            id,
            None,
            caps,
            Witness { u, v, n, lhs: l.to_string(), rhs: r.to_string() },
        ),
    }
}

/// Three-way verification of a dilated theorem for all `(u, v, n)` with
/// `n <= n_max`: congruence side vs rule side vs transported counts.
pub fn verify_dilated_theorem(which: DilatedTheorem, n_max: u32) -> Vec<ReplayReport> {
    let caps = Caps::square(n_max);
    let name = which.name();
    let c = which.c_side(caps);
    let d = which.d_side(caps);
    let t = which.transported(caps);
    vec![
        table_pair_report(format!("{name}_c_vs_d"), caps, &c, &d),
        table_pair_report(format!("{name}_c_vs_transport"), caps, &c, &t),
        table_pair_report(format!("{name}_d_vs_transport"), caps, &d, &t),
    ]
}

/// The classical reference checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classical {
    /// Rogers-Ramanujan, parameter 0.
    Rr0,
    /// Rogers-Ramanujan, parameter 1.
    Rr1,
    /// Schur count equality.
    Schur,
    /// Dilated coloured series vs the Schur-type product
    /// `prod (1 + a q^{3k+1})(1 + b q^{3k+2})`.
    SchurProduct,
}

impl Classical {
    pub fn name(self) -> &'static str {
        match self {
            Classical::Rr0 => "rr0",
            Classical::Rr1 => "rr1",
            Classical::Schur => "schur",
            Classical::SchurProduct => "schur_product",
        }
    }
}

fn sequence_report(id: &str, caps: Caps, lhs: &[u64], rhs: &[u64]) -> ReplayReport {
    for (n, (l, r)) in lhs.iter().zip(rhs.iter()).enumerate() {
        if l != r {
            return ReplayReport::fail(
                id,
                None,
                caps,
                Witness { u: 0, v: 0, n: n as u32, lhs: l.to_string(), rhs: r.to_string() },
            );
        }
    }
    ReplayReport::pass(id, None, caps)
}

pub fn verify_classical(which: Classical, n_max: u32) -> ReplayReport {
    let caps = Caps::square(n_max);
    match which {
        Classical::Rr0 => {
            let (diff, cong) = rr_sides(0, n_max);
            sequence_report("rr0", caps, &diff, &cong)
        }
        Classical::Rr1 => {
            let (diff, cong) = rr_sides(1, n_max);
            sequence_report("rr1", caps, &diff, &cong)
        }
        Classical::Schur => {
            let (a, b) = schur_sides(n_max);
            sequence_report("schur", caps, &a, &b)
        }
        Classical::SchurProduct => {
            let dilated = enumerate_d(caps)
                .to_series()
                .dilate(DILATION_SCHUR)
                .expect("coloured counts dominate the Schur dilation");
            let product = two_residue_product(caps, 3, 1, 2);
            series_report("schur_product", None, &dilated, &product, n_max)
        }
    }
}

/// Dilated series of the coloured enumeration (used by the CLI).
pub fn dilated_d_series(spec: DilationSpec, caps: Caps) -> Result<TriSeries> {
    enumerate_d(caps).to_series().dilate(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    use crate::colored::weights;

    fn ci(s: &str) -> ColoredInt {
        s.parse().unwrap()
    }

    fn part(parts: &[&str]) -> ColoredPartition {
        ColoredPartition::new(parts.iter().map(|s| ci(s)).collect()).unwrap()
    }

    #[test]
    fn natural_order_dilation_reproduces_rank() {
        // Under 4,3,1 the image of the chain is 0, 1, 2, ...: the image of
        // every coloured integer equals its rank.
        for x in ColoredInt::all_up_to_value(50) {
            assert_eq!(dilated_value(x, DILATION_SILADIC), x.rank() as i64, "{x}");
        }
    }

    #[test]
    fn schur_dilation_chain_values() {
        let chain = [
            ("1_ab", 0),
            ("1_a", 1),
            ("1_b2", 1),
            ("1_b", 2),
            ("2_ab", 3),
            ("2_a", 4),
            ("3_a2", 5),
            ("2_b", 5),
            ("3_ab", 6),
            ("3_a", 7),
            ("3_b2", 7),
            ("3_b", 8),
        ];
        for (s, expected) in chain {
            assert_eq!(dilated_value(ci(s), DILATION_SCHUR), expected, "{s}");
        }
    }

    #[test]
    fn dilate_partition_examples() {
        let p = part(&["3_a2"]);
        assert_eq!(
            dilate_partition(&p, DILATION_SILADIC).unwrap(),
            vec![DilatedPart { value: 6, overlined: true }]
        );
        assert_eq!(
            dilate_partition(&p, DILATION_SCHUR).unwrap(),
            vec![DilatedPart { value: 5, overlined: true }]
        );
        // the printed chain maps 2_ab to 4 and 1_a to 1 (the two parts do
        // not form an admissible partition together: row ab_even needs a
        // gap of 2 over colour a)
        assert_eq!(dilated_value(ci("2_ab"), DILATION_SILADIC), 4);
        assert_eq!(dilated_value(ci("1_a"), DILATION_SILADIC), 1);
        let p = part(&["2_b", "1_a"]);
        assert_eq!(
            dilate_partition(&p, DILATION_SILADIC)
                .unwrap()
                .iter()
                .map(|d| d.value)
                .collect::<Vec<_>>(),
            vec![7, 1]
        );
    }

    #[test]
    fn per_part_image_at_least_preimage() {
        // Horizon soundness for the three dilations, every allowed part of
        // value <= 50.
        for spec in [DILATION_SILADIC, DILATION_COMPANION, DILATION_SCHUR] {
            for x in ColoredInt::all_up_to_value(50) {
                if !x.is_allowed_part() {
                    continue;
                }
                let image = dilated_value(x, spec);
                assert!(image >= x.value() as i64, "{x} under {spec}");
            }
        }
    }

    #[test]
    fn images_are_injective_on_admissible_partitions() {
        for spec in [DILATION_SILADIC, DILATION_COMPANION, DILATION_SCHUR] {
            let mut seen: BTreeMap<Vec<DilatedPart>, Vec<ColoredInt>> = BTreeMap::new();
            for_each_partition(20, Bound::All, |parts, _, _, _| {
                let p = ColoredPartition::new(parts.to_vec()).unwrap();
                let image = dilate_partition(&p, spec).unwrap();
                if let Some(prev) = seen.insert(image, parts.to_vec()) {
                    panic!("collision under {spec}: {prev:?} vs {parts:?}");
                }
            });
        }
    }

    #[test]
    fn weights_are_preserved_by_the_rule_sets() {
        // The rule-set weight tables evaluate each dilated partition to the
        // coloured weights, n <= 40.
        for theorem in [DilatedTheorem::Refdilat, DilatedTheorem::Comp, DilatedTheorem::Newschur] {
            let rules = theorem.rules();
            let spec = theorem.spec();
            // the overline marker only means something under the Schur
            // dilation; the mod-8 theorems see plain integers
            let keep_overlines = !rules.overlinable.is_empty();
            for_each_partition(40, Bound::All, |parts, u, v, _| {
                let p = ColoredPartition::new(parts.to_vec()).unwrap();
                let (mut du, mut dv) = (0, 0);
                for d in dilate_partition(&p, spec).unwrap() {
                    let (wu, wv) = rules.part_weight(d.value, d.overlined && keep_overlines);
                    du += wu;
                    dv += wv;
                }
                assert_eq!((du, dv), (u, v), "{} on {:?}", theorem.name(), parts);
                assert_eq!(weights(parts), (u, v));
            });
        }
    }

    #[test]
    fn dilated_theorems_small_scale() {
        for (theorem, n) in [
            (DilatedTheorem::Refdilat, 16),
            (DilatedTheorem::Comp, 16),
            (DilatedTheorem::Newschur, 12),
            (DilatedTheorem::Refinement, 16),
        ] {
            for r in verify_dilated_theorem(theorem, n) {
                assert!(r.is_pass(), "{}", r.summary_line());
            }
        }
    }

    #[test]
    fn refdilat_example_entry() {
        let c = DilatedTheorem::Refdilat.c_side(Caps::square(8));
        let d = DilatedTheorem::Refdilat.d_side(Caps::square(8));
        assert_eq!(c.get(1, 1, 4), 1);
        assert_eq!(d.get(1, 1, 4), 1);
        assert_eq!(DilatedTheorem::Comp.d_side(Caps::square(4)).get(0, 0, 0), 1);
    }

    #[test]
    fn unrefined_rule_side_examples() {
        // The refinement rule set carries the plain difference conditions:
        // no partition of 2 satisfies them, and 3 has exactly one.
        let d = DilatedTheorem::Refinement.d_side(Caps::square(10));
        assert_eq!(d.total_at(2), 0);
        assert_eq!(d.total_at(3), 1);
        // and the congruence side counts distinct odd partitions
        let c = DilatedTheorem::Refinement.c_side(Caps::square(10));
        assert_eq!(c.total_at(2), 0); // 2 is not a sum of distinct odd parts... it is not: 1+1 no
        assert_eq!(c.total_at(3), 1);
        assert_eq!(c.total_at(8), 2); // 1+7, 3+5
    }

    #[test]
    fn newschur_excludes_overlined_one() {
        let d = DilatedTheorem::Newschur.d_side(Caps::square(6));
        assert_eq!(d.total_at(1), 1); // plain [1] only
        // weight check: the overlined 5 contributes (2, 0)
        let rules = DilatedTheorem::Newschur.rules();
        assert_eq!(rules.part_weight(5, true), (2, 0));
        assert_eq!(rules.part_weight(5, false), (0, 1));
        assert!(!rules.part_ok(1, true));
        assert!(rules.part_ok(1, false));
    }

    #[test]
    fn classical_checks_small() {
        for which in [Classical::Rr0, Classical::Rr1, Classical::Schur] {
            let r = verify_classical(which, 24);
            assert!(r.is_pass(), "{}", r.summary_line());
        }
        let r = verify_classical(Classical::SchurProduct, 20);
        assert!(r.is_pass(), "{}", r.summary_line());
    }

    #[test]
    fn schur_product_has_the_expected_small_coefficient() {
        let p = two_residue_product(Caps::square(6), 3, 1, 2);
        assert_eq!(p.coeff(1, 1, 3).unwrap(), 1.into()); // parts 1 and 2
    }

    #[test]
    fn order_dilation_consistency() {
        let all = ColoredInt::all_up_to_value(50);
        for &x in &all {
            for &y in &all {
                assert_eq!(
                    x.rank() < y.rank(),
                    dilated_value(x, DILATION_SILADIC) < dilated_value(y, DILATION_SILADIC)
                );
            }
        }
    }
}
