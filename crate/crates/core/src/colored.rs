//! Coloured integers, their total order, and the gap matrix.
//!
//! Integers appear in five colours `a`, `b`, `ab`, `a²`, `b²`, ordered as
//!
//! ```text
//! 1_ab < 1_a < 1_b² < 1_b < 2_ab < 2_a < 3_a² < 2_b < 3_ab < 3_a < 3_b² < 3_b < ...
//! ```
//!
//! The squared colours exist only at odd values, and `a²` first appears at 3.
//! The chain repeats in blocks of eight: block `j >= 1` lists
//! `(2j-1)_ab, (2j-1)_a, (2j-1)_b², (2j-1)_b, (2j)_ab, (2j)_a, (2j+1)_a², (2j)_b`.
//!
//! A sequence of coloured parts is admissible when consecutive values differ
//! by at least the gap-matrix entry for (colour and parity of the larger
//! part, colour of the smaller part), and no part equals `1_ab` or `1_b²`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One of the five part colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "ab")]
    Ab,
    #[serde(rename = "a2")]
    A2,
    #[serde(rename = "b2")]
    B2,
}

impl Color {
    pub const ALL: [Color; 5] = [Color::A, Color::B, Color::Ab, Color::A2, Color::B2];

    /// The squared colours only occur at odd values.
    pub fn is_squared(self) -> bool {
        matches!(self, Color::A2 | Color::B2)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Color::A => "a",
            Color::B => "b",
            Color::Ab => "ab",
            Color::A2 => "a2",
            Color::B2 => "b2",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Color::A),
            "b" => Ok(Color::B),
            "ab" => Ok(Color::Ab),
            "a2" => Ok(Color::A2),
            "b2" => Ok(Color::B2),
            other => Err(Error::Parse(format!("unknown colour {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(value: u32) -> Parity {
        if value % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// A positive integer together with a colour.
///
/// Valid combinations are exactly the members of the ordered chain: any value
/// for `a`, `b`, `ab`; odd values for `b²`; odd values `>= 3` for `a²`
/// (the chain has no `1_a²`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredInt {
    value: u32,
    color: Color,
}

impl ColoredInt {
    pub fn new(value: u32, color: Color) -> Result<ColoredInt> {
        if value == 0 {
            return Err(Error::InvalidColoredInt(format!("{value}_{color}: value must be positive")));
        }
        if color.is_squared() && value % 2 == 0 {
            return Err(Error::InvalidColoredInt(format!(
                "{value}_{color}: squared colours only occur at odd values"
            )));
        }
        if color == Color::A2 && value < 3 {
            return Err(Error::InvalidColoredInt(format!(
                "{value}_{color}: colour a2 first occurs at value 3"
            )));
        }
        Ok(ColoredInt { value, color })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn color(self) -> Color {
        self.color
    }

    pub fn parity(self) -> Parity {
        Parity::of(self.value)
    }

    /// Position in the total order, starting from `rank(1_ab) = 0`.
    pub fn rank(self) -> u32 {
        let v = self.value;
        // Block j holds ranks 8(j-1)..8(j-1)+7.
        let (block, pos) = match (self.color, v % 2) {
            (Color::Ab, 1) => ((v + 1) / 2, 0),
            (Color::A, 1) => ((v + 1) / 2, 1),
            (Color::B2, _) => ((v + 1) / 2, 2),
            (Color::B, 1) => ((v + 1) / 2, 3),
            (Color::Ab, _) => (v / 2, 4),
            (Color::A, _) => (v / 2, 5),
            (Color::A2, _) => ((v - 1) / 2, 6),
            (Color::B, _) => (v / 2, 7),
        };
        8 * (block - 1) + pos
    }

    /// Inverse of [`ColoredInt::rank`].
    pub fn from_rank(rank: u32) -> ColoredInt {
        let block = rank / 8 + 1;
        let (value, color) = match rank % 8 {
            0 => (2 * block - 1, Color::Ab),
            1 => (2 * block - 1, Color::A),
            2 => (2 * block - 1, Color::B2),
            3 => (2 * block - 1, Color::B),
            4 => (2 * block, Color::Ab),
            5 => (2 * block, Color::A),
            6 => (2 * block + 1, Color::A2),
            _ => (2 * block, Color::B),
        };
        ColoredInt { value, color }
    }

    /// Predecessor in the total order; `None` for `1_ab`.
    pub fn pred(self) -> Option<ColoredInt> {
        let r = self.rank();
        if r == 0 {
            None
        } else {
            Some(ColoredInt::from_rank(r - 1))
        }
    }

    /// Coloured integers that may occur as parts of an admissible partition:
    /// `1_ab` and `1_b²` are excluded.
    pub fn is_allowed_part(self) -> bool {
        !(self.value == 1 && matches!(self.color, Color::Ab | Color::B2))
    }

    /// Weight contribution of this integer as a part: `u` counts colours
    /// `a` and `ab` once and `a²` twice; `v` counts `b` and `ab` once and
    /// `b²` twice.
    pub fn weight(self) -> (u32, u32) {
        match self.color {
            Color::A => (1, 0),
            Color::B => (0, 1),
            Color::Ab => (1, 1),
            Color::A2 => (2, 0),
            Color::B2 => (0, 2),
        }
    }

    /// All valid coloured integers of value at most `max_value`, in rank order.
    pub fn all_up_to_value(max_value: u32) -> Vec<ColoredInt> {
        let mut out = Vec::new();
        let mut rank = 0;
        loop {
            let x = ColoredInt::from_rank(rank);
            // Ranks are ordered by block; once a whole block exceeds
            // max_value we are done.
            if x.value > max_value {
                if rank % 8 == 0 {
                    break;
                }
            } else {
                out.push(x);
            }
            rank += 1;
        }
        out
    }
}

impl PartialOrd for ColoredInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ColoredInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for ColoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.value, self.color)
    }
}

impl FromStr for ColoredInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (value, color) = s
            .split_once('_')
            .ok_or_else(|| Error::Parse(format!("expected <value>_<colour>, got {s:?}")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad value in {s:?}")))?;
        ColoredInt::new(value, color.parse()?)
    }
}

/// Gap matrix: rows indexed by (colour, parity) of the larger part (squared
/// colours have fixed odd parity), columns by the colour of the smaller part
/// in the order `a, b, ab, a², b²`. Entry = minimal admissible difference.
const GAP: [[u32; 5]; 8] = [
    [2, 2, 1, 2, 2], // a, odd
    [2, 3, 2, 2, 4], // b²
    [1, 2, 1, 2, 2], // b, odd
    [2, 2, 2, 3, 3], // ab, even
    [2, 2, 2, 3, 3], // a, even
    [3, 3, 3, 4, 4], // a²
    [1, 2, 1, 1, 3], // b, even
    [2, 3, 2, 2, 3], // ab, odd
];

fn gap_row(color: Color, parity: Parity) -> Result<usize> {
    match (color, parity) {
        (Color::A, Parity::Odd) => Ok(0),
        (Color::B2, Parity::Odd) => Ok(1),
        (Color::B, Parity::Odd) => Ok(2),
        (Color::Ab, Parity::Even) => Ok(3),
        (Color::A, Parity::Even) => Ok(4),
        (Color::A2, Parity::Odd) => Ok(5),
        (Color::B, Parity::Even) => Ok(6),
        (Color::Ab, Parity::Odd) => Ok(7),
        (c, Parity::Even) => Err(Error::InvalidColoredInt(format!(
            "no even coloured integers of colour {c}"
        ))),
    }
}

fn gap_col(color: Color) -> usize {
    match color {
        Color::A => 0,
        Color::B => 1,
        Color::Ab => 2,
        Color::A2 => 3,
        Color::B2 => 4,
    }
}

/// Minimal difference between a larger part of the given colour and parity
/// and a smaller part of colour `smaller`.
pub fn min_gap(larger: Color, larger_parity: Parity, smaller: Color) -> Result<u32> {
    Ok(GAP[gap_row(larger, larger_parity)?][gap_col(smaller)])
}

/// Infallible gap lookup for a valid coloured integer on the larger side.
pub fn min_gap_below(larger: ColoredInt, smaller: Color) -> u32 {
    let row = gap_row(larger.color(), larger.parity()).expect("valid coloured integer");
    GAP[row][gap_col(smaller)]
}

/// True iff the sequence (largest part first) is an admissible coloured
/// partition: no `1_ab` or `1_b²`, every consecutive pair respects the gap
/// matrix, and ranks strictly decrease.
pub fn is_admissible(parts: &[ColoredInt]) -> bool {
    if !parts.iter().all(|p| p.is_allowed_part()) {
        return false;
    }
    parts.windows(2).all(|w| {
        let (hi, lo) = (w[0], w[1]);
        hi.value() >= lo.value() + min_gap_below(hi, lo.color()) && hi.rank() > lo.rank()
    })
}

/// Total (u, v) weight of a sequence of parts.
pub fn weights(parts: &[ColoredInt]) -> (u32, u32) {
    parts.iter().fold((0, 0), |(u, v), p| {
        let (du, dv) = p.weight();
        (u + du, v + dv)
    })
}

/// An admissible coloured partition, stored largest part first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPartition {
    parts: Vec<ColoredInt>,
}

impl ColoredPartition {
    pub fn new(parts: Vec<ColoredInt>) -> Result<ColoredPartition> {
        if !is_admissible(&parts) {
            return Err(Error::InvalidColoredInt(format!(
                "not an admissible partition: [{}]",
                parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
            )));
        }
        Ok(ColoredPartition { parts })
    }

    pub fn parts(&self) -> &[ColoredInt] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().map(|p| p.value()).sum()
    }

    pub fn weights(&self) -> (u32, u32) {
        weights(&self.parts)
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(s: &str) -> ColoredInt {
        s.parse().unwrap()
    }

    #[test]
    fn rank_matches_printed_chain() {
        let chain = [
            "1_ab", "1_a", "1_b2", "1_b", "2_ab", "2_a", "3_a2", "2_b", "3_ab", "3_a", "3_b2",
            "3_b",
        ];
        for (r, s) in chain.iter().enumerate() {
            assert_eq!(ci(s).rank(), r as u32, "{s}");
        }
        assert_eq!(ci("1_ab").rank(), 0);
        assert_eq!(ci("3_a2").rank(), 6);
        assert_eq!(ci("3_b").rank(), 11);
        // One period further along the chain.
        assert_eq!(ci("5_a2").rank(), 14);
        assert_eq!(ci("4_b").rank(), 15);
        assert_eq!(ci("5_b").rank(), 19);
    }

    #[test]
    fn rank_is_a_bijection() {
        for r in 0..400 {
            let x = ColoredInt::from_rank(r);
            assert_eq!(x.rank(), r);
            assert!(ColoredInt::new(x.value(), x.color()).is_ok());
        }
        let all = ColoredInt::all_up_to_value(50);
        let mut ranks: Vec<u32> = all.iter().map(|x| x.rank()).collect();
        let n = ranks.len();
        ranks.sort_unstable();
        ranks.dedup();
        assert_eq!(ranks.len(), n);
    }

    #[test]
    fn invalid_coloured_integers_rejected() {
        assert!(ColoredInt::new(0, Color::A).is_err());
        assert!(ColoredInt::new(2, Color::A2).is_err());
        assert!(ColoredInt::new(4, Color::B2).is_err());
        // The chain has no 1_a2; b2 does start at 1.
        assert!(ColoredInt::new(1, Color::A2).is_err());
        assert!(ColoredInt::new(1, Color::B2).is_ok());
    }

    #[test]
    fn min_gap_printed_entries() {
        assert_eq!(min_gap(Color::A, Parity::Odd, Color::Ab).unwrap(), 1);
        assert_eq!(min_gap(Color::A2, Parity::Odd, Color::B2).unwrap(), 4);
        assert_eq!(min_gap(Color::B, Parity::Even, Color::A2).unwrap(), 1);
        assert!(min_gap(Color::A2, Parity::Even, Color::A).is_err());
        assert!(min_gap(Color::B2, Parity::Even, Color::B).is_err());
        // Every entry is at least 1.
        for row in GAP.iter() {
            for &e in row {
                assert!(e >= 1);
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&[]));
        assert!(is_admissible(&[ci("3_a"), ci("2_ab")]));
        assert!(!is_admissible(&[ci("1_b2")]));
        assert!(!is_admissible(&[ci("1_ab")]));
        assert!(is_admissible(&[ci("3_a2")]));
        // a_even over a needs a gap of 2.
        assert!(!is_admissible(&[ci("2_a"), ci("1_a")]));
        assert!(is_admissible(&[ci("2_b"), ci("1_a")]));
        assert!(!is_admissible(&[ci("2_b"), ci("1_b")]));
    }

    #[test]
    fn weights_examples() {
        assert_eq!(weights(&[]), (0, 0));
        assert_eq!(weights(&[ci("3_a2")]), (2, 0));
        assert_eq!(weights(&[ci("2_ab"), ci("1_a")]), (2, 1));
    }

    #[test]
    fn weights_additive_over_concatenation() {
        let xs = [ci("7_b"), ci("5_a2"), ci("2_ab")];
        let ys = [ci("9_b2"), ci("4_a")];
        let (ux, vx) = weights(&xs);
        let (uy, vy) = weights(&ys);
        let all: Vec<_> = xs.iter().chain(ys.iter()).copied().collect();
        assert_eq!(weights(&all), (ux + uy, vx + vy));
    }

    #[test]
    fn display_parse_round_trip() {
        for r in 0..200 {
            let x = ColoredInt::from_rank(r);
            let back: ColoredInt = x.to_string().parse().unwrap();
            assert_eq!(back, x);
        }
        assert_eq!(ci("3_a2").to_string(), "3_a2");
        assert!("3_c".parse::<ColoredInt>().is_err());
        assert!("x_a".parse::<ColoredInt>().is_err());
        assert!("3a".parse::<ColoredInt>().is_err());
    }

    #[test]
    fn partition_type_checks_admissibility() {
        let p = ColoredPartition::new(vec![ci("2_b"), ci("1_a")]).unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p.weights(), (1, 1));
        assert!(ColoredPartition::new(vec![ci("1_b2")]).is_err());
    }
}
