//! Brute-force enumeration of admissible coloured partitions.
//!
//! The walker generates parts largest-first, pruning with the gap matrix:
//! after a part `p`, the next part of colour `c` may take any value between
//! the colour's minimum and `value(p) - gap(p, c)`. Every admissible
//! partition is visited exactly once (each prefix of an admissible partition
//! is admissible, so the search tree *is* the set of partitions). No
//! recurrence knowledge enters here; this module is the independent oracle
//! the series side is checked against.

use crate::colored::{min_gap_below, Color, ColoredInt};
use crate::series::Caps;
use crate::table::CountTable;

/// Restriction on the largest part.
#[derive(Debug, Clone, Copy)]
pub enum Bound {
    /// No restriction.
    All,
    /// Largest part at most this coloured integer in the total order.
    RankAtMost(ColoredInt),
    /// Largest part exactly this coloured integer.
    Exactly(ColoredInt),
}

fn min_value(color: Color) -> u32 {
    match color {
        Color::A | Color::B => 1,
        // 1_ab and 1_b2 are forbidden parts and a2 starts at 3.
        Color::Ab => 2,
        Color::A2 | Color::B2 => 3,
    }
}

fn for_each_next_part<F: FnMut(ColoredInt)>(prev: ColoredInt, budget: u32, f: &mut F) {
    for color in Color::ALL {
        let gap = min_gap_below(prev, color);
        if prev.value() <= gap {
            continue;
        }
        let hi = (prev.value() - gap).min(budget);
        let lo = min_value(color);
        if hi < lo {
            continue;
        }
        let (mut val, step) = if color.is_squared() {
            (if hi % 2 == 0 { hi - 1 } else { hi }, 2)
        } else {
            (hi, 1)
        };
        while val >= lo {
            f(ColoredInt::new(val, color).expect("valid candidate"));
            if val < lo + step {
                break;
            }
            val -= step;
        }
    }
}

fn walk<F>(prev: ColoredInt, budget: u32, stack: &mut Vec<ColoredInt>, u: u32, v: u32, n: u32, visit: &mut F)
where
    F: FnMut(&[ColoredInt], u32, u32, u32),
{
    let mut nexts = Vec::new();
    for_each_next_part(prev, budget, &mut |p| nexts.push(p));
    for next in nexts {
        let (du, dv) = next.weight();
        let (u2, v2, n2) = (u + du, v + dv, n + next.value());
        stack.push(next);
        visit(stack, u2, v2, n2);
        walk(next, budget - next.value(), stack, u2, v2, n2, visit);
        stack.pop();
    }
}

/// Visit every admissible coloured partition of total at most `n_max` whose
/// largest part satisfies `bound`, passing the parts (largest first) and the
/// accumulated `(u, v, n)`. The empty partition is visited first except
/// under [`Bound::Exactly`], which requires a largest part.
pub fn for_each_partition<F>(n_max: u32, bound: Bound, mut visit: F)
where
    F: FnMut(&[ColoredInt], u32, u32, u32),
{
    let mut stack = Vec::new();
    let mut starts: Vec<ColoredInt> = Vec::new();
    match bound {
        Bound::All => {
            visit(&stack, 0, 0, 0);
            starts.extend(
                ColoredInt::all_up_to_value(n_max).into_iter().filter(|p| p.is_allowed_part()),
            );
        }
        Bound::RankAtMost(k) => {
            visit(&stack, 0, 0, 0);
            starts.extend(
                ColoredInt::all_up_to_value(n_max)
                    .into_iter()
                    .filter(|p| p.is_allowed_part() && p.rank() <= k.rank()),
            );
        }
        Bound::Exactly(k) => {
            if k.is_allowed_part() && k.value() <= n_max {
                starts.push(k);
            }
        }
    }
    for first in starts {
        let (u, v, n) = {
            let (du, dv) = first.weight();
            (du, dv, first.value())
        };
        stack.push(first);
        visit(&stack, u, v, n);
        walk(first, n_max - first.value(), &mut stack, u, v, n, &mut visit);
        stack.pop();
    }
}

/// Counts `D(u, v, n)` of all admissible coloured partitions, `n <= N`.
pub fn enumerate_d(caps: Caps) -> CountTable {
    let mut table = CountTable::new(caps);
    for_each_partition(caps.n, Bound::All, |_, u, v, n| table.record(u, v, n));
    table
}

/// Counts `d_k(u, v, n)`: largest part at most `k` in the total order.
pub fn enumerate_dk(k: ColoredInt, caps: Caps) -> CountTable {
    let mut table = CountTable::new(caps);
    for_each_partition(caps.n, Bound::RankAtMost(k), |_, u, v, n| table.record(u, v, n));
    table
}

/// Counts `e_k(u, v, n)`: largest part exactly `k`.
pub fn enumerate_ek(k: ColoredInt, caps: Caps) -> CountTable {
    let mut table = CountTable::new(caps);
    for_each_partition(caps.n, Bound::Exactly(k), |_, u, v, n| table.record(u, v, n));
    table
}

/// Debug listing of the partitions behind a table entry selection.
pub fn list_partitions(n_max: u32, bound: Bound) -> Vec<Vec<ColoredInt>> {
    let mut out = Vec::new();
    for_each_partition(n_max, bound, |parts, _, _, _| out.push(parts.to_vec()));
    out
}
