//! Exact count tables indexed by `(u, v, n)`.
//!
//! A [`CountTable`] is the common currency between the brute-force
//! enumerators and the series engine: enumerators fill tables, the series
//! side converts them to [`TriSeries`] for algebraic checks. Counts are
//! exact non-negative integers; all table entries with exponents inside the
//! caps are populated by a complete enumeration, so conversion yields a
//! series with full horizon.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::series::{Caps, TriSeries};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    caps: Caps,
    counts: BTreeMap<(u32, u32, u32), u64>,
}

impl CountTable {
    pub fn new(caps: Caps) -> CountTable {
        CountTable { caps, counts: BTreeMap::new() }
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Record one object with weight `(u, v)` and size `n`. Objects outside
    /// the cap box are ignored (with square caps `U = V = N` this never
    /// happens: weights cannot exceed the partitioned number).
    pub fn record(&mut self, u: u32, v: u32, n: u32) {
        self.add(u, v, n, 1);
    }

    pub fn add(&mut self, u: u32, v: u32, n: u32, count: u64) {
        if self.caps.contains(u, v, n) {
            let c = self.counts.entry((u, v, n)).or_insert(0);
            *c = c.checked_add(count).expect("count overflow");
        }
    }

    pub fn get(&self, u: u32, v: u32, n: u32) -> u64 {
        self.counts.get(&(u, v, n)).copied().unwrap_or(0)
    }

    /// Signed lookup: any negative index yields 0. This is the shape used
    /// by the shifted recurrence identities.
    pub fn get_shifted(&self, u: i64, v: i64, n: i64) -> i128 {
        if u < 0 || v < 0 || n < 0 {
            return 0;
        }
        self.get(u as u32, v as u32, n as u32) as i128
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32, u32), &u64)> {
        self.counts.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total count over all weights at size `n`.
    pub fn total_at(&self, n: u32) -> u64 {
        self.counts
            .iter()
            .filter(|(&(_, _, m), _)| m == n)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Sum over all entries.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Collapse the two weights into one: entry `(u, v, n)` is added at
    /// `(u + v, 0, n)`.
    pub fn aggregate_weights(&self) -> CountTable {
        let mut out = CountTable::new(self.caps);
        for (&(u, v, n), &c) in &self.counts {
            out.add(u + v, 0, n, c);
        }
        out
    }

    /// Exact conversion to a series with full horizon.
    pub fn to_series(&self) -> TriSeries {
        TriSeries::from_terms(
            self.caps,
            self.caps.n,
            self.counts.iter().map(|(&k, &c)| (k, BigInt::from(c))),
        )
        .expect("entries are inside the caps")
    }

    /// First `(u, v, n)` (lexicographic) where the two tables differ.
    pub fn first_discrepancy(&self, other: &CountTable) -> Option<((u32, u32, u32), u64, u64)> {
        let mut keys: Vec<(u32, u32, u32)> =
            self.counts.keys().chain(other.counts.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let l = self.counts.get(&k).copied().unwrap_or(0);
            let r = other.counts.get(&k).copied().unwrap_or(0);
            if l != r {
                return Some((k, l, r));
            }
        }
        None
    }

    /// Serialize as lines `u v n count`, sorted lexicographically.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (&(u, v, n), c) in &self.counts {
            out.push_str(&format!("{u} {v} {n} {c}\n"));
        }
        out
    }

    pub fn from_text(caps: Caps, text: &str) -> Result<CountTable> {
        let mut table = CountTable::new(caps);
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 fields", idx + 1)));
            }
            let parse = |i: usize| -> Result<u64> {
                fields[i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {}: bad field {:?}", idx + 1, fields[i])))
            };
            let (u, v, n) = (parse(0)? as u32, parse(1)? as u32, parse(2)? as u32);
            if !caps.contains(u, v, n) {
                return Err(Error::OutsideCaps { u, v, n });
            }
            table.add(u, v, n, parse(3)?);
        }
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        let data = TableData {
            caps: [self.caps.u, self.caps.v, self.caps.n],
            counts: self.counts.iter().map(|(&(u, v, n), &c)| (u, v, n, c)).collect(),
        };
        serde_json::to_string(&data).expect("serializable")
    }

    pub fn from_json(json: &str) -> Result<CountTable> {
        let data: TableData = serde_json::from_str(json)?;
        let caps = Caps::new(data.caps[0], data.caps[1], data.caps[2]);
        let mut table = CountTable::new(caps);
        for (u, v, n, c) in data.counts {
            if !caps.contains(u, v, n) {
                return Err(Error::OutsideCaps { u, v, n });
            }
            table.add(u, v, n, c);
        }
        Ok(table)
    }

    /// CSV with header `u,v,n,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,n,count\n");
        for (&(u, v, n), c) in &self.counts {
            out.push_str(&format!("{u},{v},{n},{c}\n"));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TableData {
    caps: [u32; 3],
    counts: Vec<(u32, u32, u32, u64)>,
}
