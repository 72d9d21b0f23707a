//! Exact truncated formal series in the three variables `a`, `b`, `q`.
//!
//! A [`TriSeries`] stores integer coefficients for monomials
//! `a^u b^v q^n` with exponents inside a fixed cap box `(U, V, N)`, together
//! with a completeness horizon `H <= N`: every coefficient with `n <= H`
//! (inside the box) is exactly the coefficient of the series being
//! represented, while coefficients with `n > H` may be missing
//! contributions that were truncated away. Operations propagate the horizon
//! so a comparison can never silently read corrupted coefficients:
//!
//! - `add`/`mul` keep `min` of the horizons (exponents only grow, so terms
//!   outside the box never influence coefficients inside it);
//! - the substitution `(a, b) -> (b, aq)` maps monomials bijectively, so
//!   with square exponent caps it keeps the horizon;
//! - a dilation `q -> q^M, a -> a q^-ma, b -> b q^-mb` keeps the horizon
//!   when every monomial's image lands at or above its source q-exponent,
//!   which is checked term by term.
//!
//! Coefficients are arbitrary-precision integers; no operation rounds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Maximum retained exponents of `a`, `b` and `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub u: u32,
    pub v: u32,
    pub n: u32,
}

impl Caps {
    pub fn new(u: u32, v: u32, n: u32) -> Caps {
        Caps { u, v, n }
    }

    /// Square caps `(n, n, n)`, the default shape for everything in this
    /// crate: partition weights never exceed the partitioned number.
    pub fn square(n: u32) -> Caps {
        Caps { u: n, v: n, n }
    }

    pub fn contains(&self, u: u32, v: u32, n: u32) -> bool {
        u <= self.u && v <= self.v && n <= self.n
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U={} V={} N={}", self.u, self.v, self.n)
    }
}

/// The substitution `q -> q^M, a -> a q^-m_a, b -> b q^-m_b`.
///
/// On monomials: `a^u b^v q^n  ->  a^u b^v q^(M n - m_a u - m_b v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationSpec {
    pub m: u32,
    pub m_a: u32,
    pub m_b: u32,
}

impl DilationSpec {
    pub fn new(m: u32, m_a: u32, m_b: u32) -> DilationSpec {
        assert!(m >= 1, "dilation modulus must be positive");
        DilationSpec { m, m_a, m_b }
    }

    /// Image of the q-exponent of the monomial `a^u b^v q^n`.
    pub fn image_exponent(&self, u: u32, v: u32, n: u32) -> i64 {
        self.m as i64 * n as i64 - self.m_a as i64 * u as i64 - self.m_b as i64 * v as i64
    }
}

impl fmt::Display for DilationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.m, self.m_a, self.m_b)
    }
}

impl FromStr for DilationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected M,m_a,m_b, got {s:?}")));
        }
        let nums: Vec<u32> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad dilation component {p:?}"))))
            .collect::<Result<_>>()?;
        if nums[0] == 0 {
            return Err(Error::Parse("dilation modulus must be positive".into()));
        }
        Ok(DilationSpec { m: nums[0], m_a: nums[1], m_b: nums[2] })
    }
}

/// A truncated formal series with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriSeries {
    caps: Caps,
    horizon: u32,
    terms: BTreeMap<(u32, u32, u32), BigInt>,
}

impl TriSeries {
    pub fn zero(caps: Caps) -> TriSeries {
        TriSeries { caps, horizon: caps.n, terms: BTreeMap::new() }
    }

    pub fn one(caps: Caps) -> TriSeries {
        Self::monomial(caps, 0, 0, 0, 1)
    }

    /// The monomial `c * a^u b^v q^n`. A monomial outside the cap box has a
    /// zero restriction to the box, so the result is exact to the cap.
    pub fn monomial(caps: Caps, u: u32, v: u32, n: u32, c: i64) -> TriSeries {
        let mut s = Self::zero(caps);
        if c != 0 && caps.contains(u, v, n) {
            s.terms.insert((u, v, n), BigInt::from(c));
        }
        s
    }

    /// Build from explicit terms; terms outside the caps are rejected.
    pub fn from_terms<I>(caps: Caps, horizon: u32, terms: I) -> Result<TriSeries>
    where
        I: IntoIterator<Item = ((u32, u32, u32), BigInt)>,
    {
        let mut map = BTreeMap::new();
        for ((u, v, n), c) in terms {
            if !caps.contains(u, v, n) {
                return Err(Error::OutsideCaps { u, v, n });
            }
            if !c.is_zero() {
                map.insert((u, v, n), c);
            }
        }
        Ok(TriSeries { caps, horizon: horizon.min(caps.n), terms: map })
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Largest q-exponent up to which all boxed coefficients are exact.
    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32, u32), &BigInt)> {
        self.terms.iter()
    }

    /// Exact coefficient of `a^u b^v q^n` (0 if absent). Rejected outside
    /// the caps or beyond the horizon, where exactness is not guaranteed.
    pub fn coeff(&self, u: u32, v: u32, n: u32) -> Result<BigInt> {
        if !self.caps.contains(u, v, n) {
            return Err(Error::OutsideCaps { u, v, n });
        }
        if n > self.horizon {
            return Err(Error::BeyondHorizon { requested: n, horizon: self.horizon });
        }
        Ok(self.terms.get(&(u, v, n)).cloned().unwrap_or_else(BigInt::zero))
    }

    fn check_caps(&self, other: &TriSeries) -> Result<()> {
        if self.caps != other.caps {
            return Err(Error::CapsMismatch(self.caps, other.caps));
        }
        Ok(())
    }

    pub fn add(&self, other: &TriSeries) -> Result<TriSeries> {
        self.check_caps(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(*k).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Ok(TriSeries { caps: self.caps, horizon: self.horizon.min(other.horizon), terms })
    }

    /// Cauchy product truncated to the caps. A product term is retained iff
    /// its exponents lie in the box; since exponents only grow, truncated
    /// terms can never influence retained ones, and the horizon is the
    /// minimum of the factors' horizons.
    pub fn mul(&self, other: &TriSeries) -> Result<TriSeries> {
        self.check_caps(other)?;
        let caps = self.caps;
        let mut terms: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
        for (&(u1, v1, n1), c1) in &self.terms {
            for (&(u2, v2, n2), c2) in &other.terms {
                if n1 + n2 > caps.n {
                    continue;
                }
                let (u, v, n) = (u1 + u2, v1 + v2, n1 + n2);
                if u > caps.u || v > caps.v {
                    continue;
                }
                let entry = terms.entry((u, v, n)).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(TriSeries { caps, horizon: self.horizon.min(other.horizon), terms })
    }

    /// The substitution `(a, b) -> (b, a q)`: `a^u b^v q^n -> a^v b^u q^(n+v)`.
    ///
    /// Monomials map bijectively and, with square exponent caps, the unique
    /// preimage of any boxed image monomial lies in the box with a q-exponent
    /// no larger than the image's, so the horizon is preserved.
    pub fn swap_sub(&self) -> Result<TriSeries> {
        if self.caps.u != self.caps.v {
            return Err(Error::NonSquareCaps(self.caps.u, self.caps.v));
        }
        let caps = self.caps;
        let mut terms = BTreeMap::new();
        for (&(u, v, n), c) in &self.terms {
            let image = (v, u, n + v);
            if image.2 <= caps.n {
                terms.insert(image, c.clone());
            }
        }
        Ok(TriSeries { caps, horizon: self.horizon, terms })
    }

    /// Apply a dilation to every monomial. A negative image exponent is
    /// rejected with the offending monomial.
    ///
    /// The input must be complete to its cap. When every stored monomial
    /// satisfies `u + v <= n` (the shape of every partition generating
    /// series: each coloured part contributes at least its weight to the
    /// partitioned number, and the shape persists in the tail beyond the
    /// cap) and maps to an image at or above its source q-exponent, the
    /// result is again exact to the cap. Otherwise nothing can be said
    /// about coefficients beyond `q^0` and the horizon collapses, which
    /// blocks comparisons instead of letting them read corrupted terms.
    pub fn dilate(&self, spec: DilationSpec) -> Result<TriSeries> {
        if self.horizon < self.caps.n {
            return Err(Error::IncompleteInput { horizon: self.horizon, cap: self.caps.n });
        }
        let caps = self.caps;
        let mut full_horizon = true;
        let mut terms = BTreeMap::new();
        for (&(u, v, n), c) in &self.terms {
            let out = spec.image_exponent(u, v, n);
            if out < 0 {
                return Err(Error::NegativeExponent { u, v, n, out });
            }
            if u + v > n || out < n as i64 {
                full_horizon = false;
            }
            if out <= caps.n as i64 {
                terms.insert((u, v, out as u32), c.clone());
            }
        }
        Ok(TriSeries { caps, horizon: if full_horizon { caps.n } else { 0 }, terms })
    }

    /// True iff all coefficients with `n <= n_max` agree. `n_max` beyond
    /// either horizon is rejected so truncation artifacts can never produce
    /// a vacuous pass.
    pub fn eq_up_to(&self, other: &TriSeries, n_max: u32) -> Result<bool> {
        Ok(self.first_discrepancy(other, n_max)?.is_none())
    }

    /// First `(u, v, n)` (lexicographic) with differing coefficients, with
    /// both values; `None` when equal up to `n_max`.
    pub fn first_discrepancy(
        &self,
        other: &TriSeries,
        n_max: u32,
    ) -> Result<Option<((u32, u32, u32), BigInt, BigInt)>> {
        self.check_caps(other)?;
        let joint = self.horizon.min(other.horizon);
        if n_max > joint {
            return Err(Error::BeyondHorizon { requested: n_max, horizon: joint });
        }
        let zero = BigInt::zero();
        let mut keys: Vec<(u32, u32, u32)> = Vec::new();
        for k in self.terms.keys().chain(other.terms.keys()) {
            if k.2 <= n_max {
                keys.push(*k);
            }
        }
        keys.sort_unstable();
        keys.dedup();
        for k in keys {
            let l = self.terms.get(&k).unwrap_or(&zero);
            let r = other.terms.get(&k).unwrap_or(&zero);
            if l != r {
                return Ok(Some((k, l.clone(), r.clone())));
            }
        }
        Ok(None)
    }

    /// Serialize as lines `u v n coefficient`, sorted lexicographically.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (&(u, v, n), c) in &self.terms {
            out.push_str(&format!("{u} {v} {n} {c}\n"));
        }
        out
    }

    /// Parse the line format produced by [`TriSeries::to_text`].
    pub fn from_text(caps: Caps, horizon: u32, text: &str) -> Result<TriSeries> {
        let mut terms = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 fields", idx + 1)));
            }
            let u: u32 = fields[0].parse().map_err(|_| Error::Parse(format!("line {}", idx + 1)))?;
            let v: u32 = fields[1].parse().map_err(|_| Error::Parse(format!("line {}", idx + 1)))?;
            let n: u32 = fields[2].parse().map_err(|_| Error::Parse(format!("line {}", idx + 1)))?;
            let c = BigInt::from_str(fields[3])
                .map_err(|_| Error::Parse(format!("line {}: bad coefficient", idx + 1)))?;
            terms.push(((u, v, n), c));
        }
        TriSeries::from_terms(caps, horizon, terms)
    }

    pub fn to_json(&self) -> String {
        let data = SeriesData {
            caps: [self.caps.u, self.caps.v, self.caps.n],
            horizon: self.horizon,
            terms: self
                .terms
                .iter()
                .map(|(&(u, v, n), c)| (u, v, n, c.to_string()))
                .collect(),
        };
        serde_json::to_string(&data).expect("serializable")
    }

    pub fn from_json(json: &str) -> Result<TriSeries> {
        let data: SeriesData = serde_json::from_str(json)?;
        let caps = Caps::new(data.caps[0], data.caps[1], data.caps[2]);
        let terms = data
            .terms
            .into_iter()
            .map(|(u, v, n, c)| {
                BigInt::from_str(&c)
                    .map(|c| ((u, v, n), c))
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TriSeries::from_terms(caps, data.horizon, terms)
    }

    /// Human-readable polynomial, terms ordered by `(n, u, v)`.
    pub fn to_polynomial_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut ordered: Vec<(&(u32, u32, u32), &BigInt)> = self.terms.iter().collect();
        ordered.sort_by_key(|(&(u, v, n), _)| (n, u, v));
        let mut out = String::new();
        for (i, (&(u, v, n), c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (u, v, n) == (0, 0, 0) {
                factors.push(abs.to_string());
            }
            for (sym, e) in [("a", u), ("b", v), ("q", n)] {
                match e {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{e}")),
                }
            }
            out.push_str(&factors.join(" "));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesData {
    caps: [u32; 3],
    horizon: u32,
    terms: Vec<(u32, u32, u32, String)>,
}

/// The product `prod_{k >= 1} (1 + a q^k)(1 + b q^k)` truncated to the caps.
/// Factors with `k > N` contribute only the constant 1, so the result is
/// exact to the cap.
pub fn two_color_product(caps: Caps) -> TriSeries {
    let mut acc = TriSeries::one(caps);
    for k in 1..=caps.n {
        let fa = TriSeries::one(caps)
            .add(&TriSeries::monomial(caps, 1, 0, k, 1))
            .expect("same caps");
        let fb = TriSeries::one(caps)
            .add(&TriSeries::monomial(caps, 0, 1, k, 1))
            .expect("same caps");
        acc = acc.mul(&fa).expect("same caps").mul(&fb).expect("same caps");
    }
    acc
}

/// The product over `k >= 1` of `(1 + a q^k)` for `k = r_a (mod m)` and
/// `(1 + b q^k)` for `k = r_b (mod m)`, truncated to the caps.
pub fn two_residue_product(caps: Caps, modulus: u32, r_a: u32, r_b: u32) -> TriSeries {
    assert!(modulus >= 1);
    let mut acc = TriSeries::one(caps);
    for k in 1..=caps.n {
        if k % modulus == r_a % modulus {
            let f = TriSeries::one(caps)
                .add(&TriSeries::monomial(caps, 1, 0, k, 1))
                .expect("same caps");
            acc = acc.mul(&f).expect("same caps");
        }
        if k % modulus == r_b % modulus {
            let f = TriSeries::one(caps)
                .add(&TriSeries::monomial(caps, 0, 1, k, 1))
                .expect("same caps");
            acc = acc.mul(&f).expect("same caps");
        }
    }
    acc
}
