//! Truncated power series in `q` with exact `i64` coefficients.
//!
//! A [`QSeries`] stores the coefficients of `q^offset ..= q^truncation` densely.
//! Coefficients above the truncation are unknown; coefficients below the offset
//! are zero. Stored vectors may be shorter than the guaranteed range, in which
//! case the missing tail is zero. A truncation of [`EXACT`] marks a polynomial
//! whose every coefficient is known.
//!
//! Every operation reports overflow instead of wrapping, and every result
//! carries the tightest truncation its inputs can guarantee.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation value for series known exactly in every degree.
pub const EXACT: i64 = i64::MAX;

/// Products shorter than this are computed sequentially.
const PAR_MUL_THRESHOLD: usize = 4096;

#[derive(Clone, Debug)]
pub struct QSeries {
    offset: i64,
    truncation: i64,
    coeffs: Vec<i64>,
}

impl QSeries {
    /// Builds a series from coefficients of `q^offset, q^(offset+1), ...`.
    ///
    /// Values beyond `truncation` are dropped.
    pub fn new(offset: i64, coeffs: Vec<i64>, truncation: i64) -> Result<Self> {
        if offset < 0 {
            return Err(Error::InvalidSeries(format!("negative offset {offset}")));
        }
        if truncation < offset - 1 {
            return Err(Error::InvalidSeries(format!(
                "truncation {truncation} below offset {offset} - 1"
            )));
        }
        Ok(Self::from_parts(offset, coeffs, truncation))
    }

    /// Series with coefficients `coeffs[k]` at `q^(offset+k)`, exact through the last entry.
    pub fn from_dense(offset: i64, coeffs: Vec<i64>) -> Result<Self> {
        let truncation = offset + coeffs.len() as i64 - 1;
        Self::new(offset, coeffs, truncation)
    }

    /// An exact polynomial `sum coeffs[k] q^k`.
    pub fn polynomial(coeffs: Vec<i64>) -> Self {
        Self::from_parts(0, coeffs, EXACT)
    }

    pub fn zero(truncation: i64) -> Self {
        Self::from_parts(0, Vec::new(), truncation.max(-1))
    }

    pub fn one(truncation: i64) -> Self {
        Self::monomial(1, 0, truncation)
    }

    /// `c q^exponent`, known through `truncation`.
    pub fn monomial(c: i64, exponent: i64, truncation: i64) -> Self {
        assert!(exponent >= 0, "monomial exponent must be non-negative");
        if truncation < exponent {
            return Self::from_parts(0, Vec::new(), truncation.max(-1));
        }
        Self::from_parts(exponent, vec![c], truncation)
    }

    // Invariants are the caller's responsibility; trims the tail and any data past truncation.
    fn from_parts(offset: i64, mut coeffs: Vec<i64>, truncation: i64) -> Self {
        if truncation != EXACT {
            let span = (truncation - offset + 1).max(0) as usize;
            coeffs.truncate(span);
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self {
            offset,
            truncation,
            coeffs,
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.truncation == EXACT
    }

    /// Coefficient of `q^n`, or `None` when `n` lies above the truncation.
    pub fn coeff(&self, n: i64) -> Option<i64> {
        if n > self.truncation {
            return None;
        }
        if n < self.offset {
            return Some(0);
        }
        Some(
            self.coeffs
                .get((n - self.offset) as usize)
                .copied()
                .unwrap_or(0),
        )
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let offset = self.offset;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (offset + k as i64, c))
    }

    /// Coefficients of `q^0 ..= q^upto` (clamped to the truncation).
    pub fn dense(&self, upto: i64) -> Vec<i64> {
        let top = upto.min(self.truncation);
        (0..=top).map(|n| self.coeff(n).unwrap_or(0)).collect()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn leading_exponent(&self) -> Option<i64> {
        self.terms().next().map(|(n, _)| n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Forgets everything above `q^n`.
    pub fn truncate(&self, n: i64) -> Self {
        let t = self.truncation.min(n.max(self.offset - 1));
        Self::from_parts(self.offset, self.coeffs.clone(), t)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.checked_add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.checked_sub(b))
    }

    fn combine(&self, other: &Self, op: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        let truncation = self.truncation.min(other.truncation);
        let offset = self.offset.min(other.offset);
        let top = [self.top(), other.top()]
            .into_iter()
            .flatten()
            .max()
            .map(|t| t.min(truncation));
        let Some(top) = top else {
            return Ok(Self::from_parts(offset, Vec::new(), truncation));
        };
        let coeffs = (offset..=top)
            .map(|n| {
                let a = self.stored(n);
                let b = other.stored(n);
                op(a, b).ok_or(Error::Overflow { exponent: n })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(offset, coeffs, truncation))
    }

    // highest stored exponent
    fn top(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    fn stored(&self, n: i64) -> i64 {
        if n < self.offset {
            return 0;
        }
        self.coeffs
            .get((n - self.offset) as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                a.checked_mul(c).ok_or(Error::Overflow {
                    exponent: self.offset + k as i64,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(self.offset, coeffs, self.truncation))
    }

    /// Cauchy product. The result is exact through
    /// `min(a.truncation + b.offset, b.truncation + a.offset)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let offset = self.offset + other.offset;
        let truncation = self
            .truncation
            .saturating_add(other.offset)
            .min(other.truncation.saturating_add(self.offset));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Self::from_parts(offset, Vec::new(), truncation.max(offset - 1)));
        }
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = if truncation == EXACT {
            full
        } else {
            full.min((truncation - offset + 1).max(0) as usize)
        };
        let (a, b) = (&self.coeffs, &other.coeffs);
        let cell = |k: usize| -> Result<i64> {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            let mut acc: i128 = 0;
            for i in lo..=hi {
                let term = a[i] as i128 * b[k - i] as i128;
                acc = acc.checked_add(term).ok_or(Error::Overflow {
                    exponent: offset + k as i64,
                })?;
            }
            i64::try_from(acc).map_err(|_| Error::Overflow {
                exponent: offset + k as i64,
            })
        };
        let coeffs = if len >= PAR_MUL_THRESHOLD {
            (0..len).into_par_iter().map(cell).collect::<Result<Vec<_>>>()?
        } else {
            (0..len).map(cell).collect::<Result<Vec<_>>>()?
        };
        Ok(Self::from_parts(offset, coeffs, truncation))
    }

    /// The substitution `q -> q^k`.
    pub fn substitute_power(&self, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidSeries(format!("substitution power {k} < 1")));
        }
        let scale = |n: i64| n.checked_mul(k).ok_or(Error::Overflow { exponent: n });
        let offset = scale(self.offset)?;
        // degrees between multiples of k are exactly zero
        let truncation = if self.truncation == EXACT {
            EXACT
        } else {
            scale(self.truncation)?
                .checked_add(k - 1)
                .ok_or(Error::Overflow {
                    exponent: self.truncation,
                })?
        };
        let mut coeffs = vec![0; self.coeffs.len().saturating_sub(1) * k as usize + 1];
        if self.coeffs.is_empty() {
            coeffs.clear();
        }
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * k as usize] = c;
        }
        Ok(Self::from_parts(offset, coeffs, truncation))
    }

    /// Multiplication by `q^m`.
    pub fn shift(&self, m: i64) -> Result<Self> {
        if m < 0 {
            return Err(Error::InvalidSeries(format!(
                "negative shift {m}; series exponents must stay non-negative"
            )));
        }
        Ok(Self::from_parts(
            self.offset + m,
            self.coeffs.clone(),
            self.truncation.saturating_add(m),
        ))
    }

    /// The series `sum_m c(residue + modulus*m) q^m`, ignoring every other coefficient.
    pub fn sift(&self, modulus: i64, residue: i64) -> Result<Self> {
        if modulus < 1 || !(0..modulus).contains(&residue) {
            return Err(Error::InvalidSeries(format!(
                "bad progression {residue} mod {modulus}"
            )));
        }
        let truncation = if self.truncation == EXACT {
            EXACT
        } else {
            Integer::div_floor(&(self.truncation - residue), &modulus)
        };
        let top = self.top().map(|t| Integer::div_floor(&(t - residue), &modulus));
        let coeffs = match top {
            Some(top) if top >= 0 => (0..=top).map(|m| self.stored(residue + modulus * m)).collect(),
            _ => Vec::new(),
        };
        Ok(Self::from_parts(0, coeffs, truncation.max(-1)))
    }

    /// Like [`QSeries::sift`], but first checks that every nonzero coefficient
    /// lies on the progression.
    pub fn decimate(&self, modulus: i64, residue: i64) -> Result<Self> {
        if let Some((n, c)) = self.terms().find(|(n, _)| n.rem_euclid(modulus) != residue) {
            return Err(Error::SupportViolation {
                exponent: n,
                coefficient: c,
                residue,
                modulus,
            });
        }
        self.sift(modulus, residue)
    }

    /// Residues mod `modulus` of the exponents carrying nonzero coefficients.
    pub fn support_residues(&self, modulus: i64) -> Vec<i64> {
        let mut seen: Vec<i64> = self.terms().map(|(n, _)| n.rem_euclid(modulus)).collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    }

    /// First exponent on the common guaranteed range where the two series differ.
    pub fn first_difference(&self, other: &Self, upto: i64) -> Option<(i64, i64, i64)> {
        let top = upto.min(self.truncation).min(other.truncation);
        (0..=top).find_map(|n| {
            let (a, b) = (self.stored(n), other.stored(n));
            (a != b).then_some((n, a, b))
        })
    }

    pub fn to_record(&self, name: &str) -> SeriesRecord {
        let coeffs = if self.truncation == EXACT {
            self.coeffs.clone()
        } else {
            (self.offset..=self.truncation).map(|n| self.stored(n)).collect()
        };
        SeriesRecord {
            name: name.to_string(),
            offset: self.offset,
            truncation: self.truncation,
            coeffs,
        }
    }

    pub fn from_record(record: &SeriesRecord) -> Result<Self> {
        Self::new(record.offset, record.coeffs.clone(), record.truncation)
    }

    /// CSV lines `n,c`. With `nonzero_only` false every exponent from 0 to the
    /// truncation is listed.
    pub fn to_csv(&self, nonzero_only: bool) -> String {
        let mut out = String::new();
        if nonzero_only || self.truncation == EXACT {
            for (n, c) in self.terms() {
                out.push_str(&format!("{n},{c}\n"));
            }
        } else {
            for n in 0..=self.truncation {
                out.push_str(&format!("{n},{}\n", self.stored(n)));
            }
        }
        out
    }
}

/// Equal when both truncations agree and every guaranteed coefficient matches.
impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.truncation != other.truncation {
            return false;
        }
        let top = [self.top(), other.top()].into_iter().flatten().max();
        match top {
            None => true,
            Some(top) => (0..=top).all(|n| self.stored(n) == other.stored(n)),
        }
    }
}

impl Eq for QSeries {}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            let (sign, mag) = if c < 0 { ("-", -(c as i128)) } else { ("+", c as i128) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (n, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, m) => write!(f, "{m}q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.truncation != EXACT {
            write!(f, " + O(q^{})", self.truncation + 1)?;
        }
        Ok(())
    }
}

/// JSON shape of a named series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub name: String,
    pub offset: i64,
    pub truncation: i64,
    pub coeffs: Vec<i64>,
}

/// One infinite product `prod_{k>=0} (1 + sign q^(first + k step))^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochhammerTerm {
    pub sign: i64,
    pub first: i64,
    pub step: i64,
    pub power: i64,
}

impl PochhammerTerm {
    pub fn new(sign: i64, first: i64, step: i64, power: i64) -> Self {
        Self {
            sign,
            first,
            step,
            power,
        }
    }

    /// `(q^a; q^a)_inf^power`.
    pub fn euler(a: i64, power: i64) -> Self {
        Self::new(-1, a, a, power)
    }

    fn validate(&self) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::InvalidTerm(format!("sign {} is not +-1", self.sign)));
        }
        if self.first < 1 {
            return Err(Error::InvalidTerm(format!("first exponent {} < 1", self.first)));
        }
        if self.step < 1 {
            return Err(Error::InvalidTerm(format!("step {} < 1", self.step)));
        }
        Ok(())
    }
}

/// Dense `i128` buffer that absorbs binomial factors `(1 + s q^e)^{+-1}` in place.
///
/// Intermediate coefficients of eta quotients and colored-partition products
/// grow roughly like `exp(c sqrt(n))` before they cancel, so the buffer is
/// twice as wide as the final coefficients.
struct FactorBuffer {
    coeffs: Vec<i128>,
}

impl FactorBuffer {
    fn new(n: i64) -> Self {
        let mut coeffs = vec![0i128; (n + 1).max(0) as usize];
        if let Some(c) = coeffs.first_mut() {
            *c = 1;
        }
        Self { coeffs }
    }

    /// Multiplies by `(1 + sign q^e)`.
    fn mul_binomial(&mut self, e: usize, sign: i128) -> Result<()> {
        for i in (e..self.coeffs.len()).rev() {
            let v = self.coeffs[i - e]
                .checked_mul(sign)
                .and_then(|t| self.coeffs[i].checked_add(t))
                .ok_or(Error::Overflow { exponent: i as i64 })?;
            self.coeffs[i] = v;
        }
        Ok(())
    }

    /// Divides by `(1 + sign q^e)`.
    fn div_binomial(&mut self, e: usize, sign: i128) -> Result<()> {
        for i in e..self.coeffs.len() {
            let v = self.coeffs[i - e]
                .checked_mul(sign)
                .and_then(|t| self.coeffs[i].checked_sub(t))
                .ok_or(Error::Overflow { exponent: i as i64 })?;
            self.coeffs[i] = v;
        }
        Ok(())
    }

    fn apply(&mut self, e: usize, sign: i128, power: i64) -> Result<()> {
        for _ in 0..power.unsigned_abs() {
            if power > 0 {
                self.mul_binomial(e, sign)?;
            } else {
                self.div_binomial(e, sign)?;
            }
        }
        Ok(())
    }

    fn into_series(self) -> Result<QSeries> {
        let n = self.coeffs.len() as i64 - 1;
        let coeffs = self
            .coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| i64::try_from(c).map_err(|_| Error::Overflow { exponent: k as i64 }))
            .collect::<Result<Vec<_>>>()?;
        QSeries::new(0, coeffs, n)
    }
}

/// Product of the given q-Pochhammer terms, exact through `q^n`.
///
/// Factors from all terms are applied in increasing exponent order so that
/// cancellation between terms happens as early as possible.
pub fn qpochhammer_product(terms: &[PochhammerTerm], n: i64) -> Result<QSeries> {
    let mut factors: Vec<(i64, i64, i64)> = Vec::new();
    for term in terms {
        term.validate()?;
        let mut e = term.first;
        while e <= n {
            factors.push((e, term.sign, term.power));
            e += term.step;
        }
    }
    factors.sort_by_key(|&(e, _, _)| e);
    let mut buf = FactorBuffer::new(n);
    for (e, sign, power) in factors {
        buf.apply(e as usize, sign as i128, power)?;
    }
    if n < 0 {
        return Ok(QSeries::zero(n));
    }
    buf.into_series()
}

/// `q^(sum delta r_delta / 24) prod_delta (q^delta; q^delta)_inf^(r_delta)`, exact through `q^n`.
///
/// The product is rewritten as `prod_m (1 - t^m)^(c_m)` in `t = q^g` with `g`
/// the gcd of the deltas. Wherever `c_m < 0` and `c_2m > 0` the pair
/// `(1 - t^2m) / (1 - t^m)` is applied as `(1 + t^m)`, which keeps
/// intermediate coefficients small; any leftover negative exponent is handled
/// by exact series division.
pub fn eta_quotient_series(exponents: &BTreeMap<i64, i64>, n: i64) -> Result<QSeries> {
    if exponents.keys().any(|&d| d < 1) {
        return Err(Error::InvalidTerm("eta quotient levels must be positive".into()));
    }
    let weighted: i64 = exponents.iter().map(|(&d, &r)| d * r).sum();
    if weighted.rem_euclid(24) != 0 || weighted < 0 {
        return Err(Error::NonIntegralPrefactor {
            numerator: weighted,
        });
    }
    let lead = weighted / 24;
    if n < lead {
        return Ok(QSeries::zero(n));
    }
    let g = exponents.keys().fold(0i64, |acc, &d| acc.gcd(&d)).max(1);
    let top = (n - lead) / g;
    let top_u = top as usize;

    let mut power = vec![0i64; top_u + 1];
    for (&d, &r) in exponents {
        let step = (d / g) as usize;
        for m in (step..=top_u).step_by(step) {
            power[m] += r;
        }
    }
    let mut plus = vec![0i64; top_u + 1];
    for m in 1..=top_u {
        if 2 * m <= top_u && power[m] < 0 && power[2 * m] > 0 {
            let k = (-power[m]).min(power[2 * m]);
            plus[m] += k;
            power[m] += k;
            power[2 * m] -= k;
        }
    }
    let mut buf = FactorBuffer::new(top);
    for m in 1..=top_u {
        buf.apply(m, 1, plus[m])?;
        buf.apply(m, -1, power[m])?;
    }
    buf.into_series()?
        .substitute_power(g)?
        .shift(lead)
        .map(|s| s.truncate(n))
}

/// Parses `"24:-3,48:8,96:-3"` into a map from delta to exponent.
pub fn parse_eta_exponents(text: &str) -> Result<BTreeMap<i64, i64>> {
    let mut map = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (d, r) = part
            .split_once(':')
            .ok_or_else(|| Error::Usage(format!("expected delta:exponent, got {part:?}")))?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad delta {d:?}")))?;
        let r: i64 = r
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad exponent {r:?}")))?;
        *map.entry(d).or_insert(0) += r;
    }
    if map.is_empty() {
        return Err(Error::Usage("empty eta quotient".into()));
    }
    Ok(map)
}
