//! Binary quadratic forms `(A x^2 + B x y + C y^2) / D` and their theta series
//! over lattice points restricted to congruence classes.

use std::fmt;

use num_integer::{Integer, Roots};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::tables::{FieldId, RayClassRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub definite: bool,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidSeries(format!("form denominator {d} must be positive")));
        }
        let disc = b as i128 * b as i128 - 4 * a as i128 * c as i128;
        Ok(Self {
            a,
            b,
            c,
            d,
            definite: disc < 0 && a > 0,
        })
    }

    /// `x^2 + y^2`
    pub fn sum_of_squares() -> Self {
        Self::new(1, 0, 1, 1).unwrap()
    }

    /// Discriminant `B^2 - 4AC` of the numerator.
    pub fn discriminant(&self) -> i128 {
        self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128
    }

    /// The numerator `A x^2 + B x y + C y^2`, computed without overflow.
    pub fn numerator(&self, x: i64, y: i64) -> i128 {
        let (x, y) = (x as i128, y as i128);
        self.a as i128 * x * x + self.b as i128 * x * y + self.c as i128 * y * y
    }

    /// The form value, failing if `D` does not divide the numerator.
    pub fn value(&self, x: i64, y: i64) -> Result<i128> {
        let num = self.numerator(x, y);
        if num % self.d as i128 != 0 {
            return Err(Error::NonIntegralValue {
                x,
                y,
                denominator: self.d,
            });
        }
        Ok(num / self.d as i128)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (coef, mono) in [(self.a, "x^2"), (self.b, "xy"), (self.c, "y^2")] {
            if coef == 0 {
                continue;
            }
            let sign = if coef < 0 { "-" } else { "+" };
            let mag = coef.unsigned_abs();
            let body = if mag == 1 { mono.to_string() } else { format!("{mag}{mono}") };
            parts.push((sign, body));
        }
        let mut s = String::new();
        for (k, (sign, body)) in parts.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => s.push('-'),
                (0, _) => {}
                (_, sign) => s.push_str(&format!(" {sign} ")),
            }
            s.push_str(body);
        }
        if s.is_empty() {
            s.push('0');
        }
        if self.d == 1 {
            f.write_str(&s)
        } else {
            write!(f, "({s})/{}", self.d)
        }
    }
}

/// The points `x = rx (mod mx)`, `y = ry (mod my)`, counted `sign * weight` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueEntry {
    pub mx: i64,
    pub rx: i64,
    pub my: i64,
    pub ry: i64,
    pub weight: i64,
    pub sign: i64,
}

impl ResidueEntry {
    /// Weight 1, sign +1, common modulus.
    pub fn new(m: i64, rx: i64, ry: i64) -> Self {
        Self {
            mx: m,
            rx,
            my: m,
            ry,
            weight: 1,
            sign: 1,
        }
    }

    pub fn with(mx: i64, rx: i64, my: i64, ry: i64, weight: i64, sign: i64) -> Self {
        Self {
            mx,
            rx,
            my,
            ry,
            weight,
            sign,
        }
    }

    pub fn signed(mut self, sign: i64) -> Self {
        self.sign = sign;
        self
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x.rem_euclid(self.mx) == self.rx && y.rem_euclid(self.my) == self.ry
    }

    /// Signed multiplicity `sign * weight`.
    pub fn multiplicity(&self) -> i64 {
        self.sign * self.weight
    }

    fn validate(&self) -> Result<()> {
        let ok = self.mx >= 1
            && self.my >= 1
            && (0..self.mx).contains(&self.rx)
            && (0..self.my).contains(&self.ry)
            && self.weight >= 1
            && (self.sign == 1 || self.sign == -1);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidResidue(format!("{self:?}")))
        }
    }

    /// Two progressions in one coordinate meet iff the residues agree modulo
    /// the gcd of the moduli.
    fn overlaps(&self, other: &Self) -> bool {
        let gx = self.mx.gcd(&other.mx);
        let gy = self.my.gcd(&other.my);
        (self.rx - other.rx) % gx == 0 && (self.ry - other.ry) % gy == 0
    }
}

/// A set of pairwise disjoint weighted congruence classes in `Z^2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResiduePairSet {
    entries: Vec<ResidueEntry>,
}

impl ResiduePairSet {
    pub fn new(entries: Vec<ResidueEntry>) -> Result<Self> {
        for e in &entries {
            e.validate()?;
        }
        for (i, e) in entries.iter().enumerate() {
            for (j, f) in entries.iter().enumerate().skip(i + 1) {
                if e.overlaps(f) {
                    return Err(Error::OverlappingEntries { first: i, second: j });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[ResidueEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The entry containing `(x, y)`, if any. Entries are disjoint, so it is unique.
    pub fn entry_of(&self, x: i64, y: i64) -> Option<&ResidueEntry> {
        self.entries.iter().find(|e| e.contains(x, y))
    }
}

/// Checks that `D` divides the numerator on every point of every entry.
///
/// Along `x = rx + mx s`, `y = ry + my t` the numerator mod `D` is periodic in
/// `s` and `t` with period `D`, so a `D x D` block decides it.
pub fn check_divisibility(form: &QuadForm, set: &ResiduePairSet) -> Result<()> {
    for e in set.entries() {
        for s in 0..form.d {
            for t in 0..form.d {
                form.value(e.rx + e.mx * s, e.ry + e.my * t)?;
            }
        }
    }
    Ok(())
}

/// First member of `r (mod m)` that is `>= lo`.
pub(crate) fn first_at_least(lo: i64, m: i64, r: i64) -> i64 {
    lo + (r - lo).rem_euclid(m)
}

/// Points of one entry with form value in `[0, n]`, reported to `visit`.
///
/// Uses `4A * num = (2Ax + By)^2 + (4AC - B^2) y^2`: the `y` range follows from
/// dropping the square, and for each `y` the `x` range is an exact integer
/// square-root interval.
fn for_each_point(form: &QuadForm, e: &ResidueEntry, n: i64, mut visit: impl FnMut(i64, i64, i64)) {
    let a = form.a as i128;
    let b = form.b as i128;
    let delta = -form.discriminant();
    let bound = 4 * a * form.d as i128 * n as i128;
    let y_max = (bound / delta).sqrt() as i64;
    let mut y = first_at_least(-y_max, e.my, e.ry);
    while y <= y_max {
        let room = bound - delta * y as i128 * y as i128;
        if room >= 0 {
            // |2Ax + By| <= r
            let r = room.sqrt();
            let lo = Integer::div_ceil(&(-r - b * y as i128), &(2 * a)) as i64;
            let hi = Integer::div_floor(&(r - b * y as i128), &(2 * a)) as i64;
            let mut x = first_at_least(lo, e.mx, e.rx);
            while x <= hi {
                let v = form.numerator(x, y) / form.d as i128;
                if v <= n as i128 {
                    visit(x, y, v as i64);
                }
                x += e.mx;
            }
        }
        y += e.my;
    }
}

/// `sum_entries sign * weight * #{(x, y) in entry : Q(x, y) = m} q^m`, exact through `q^n`.
pub fn theta_definite(form: &QuadForm, set: &ResiduePairSet, n: i64) -> Result<QSeries> {
    if !form.definite {
        return Err(Error::NotDefinite(form.to_string()));
    }
    if n < 0 || set.is_empty() {
        return Ok(QSeries::zero(n));
    }
    check_divisibility(form, set)?;
    let len = n as usize + 1;
    let partials: Vec<Vec<i64>> = set
        .entries()
        .par_iter()
        .map(|e| {
            let mut counts = vec![0i64; len];
            for_each_point(form, e, n, |_, _, v| counts[v as usize] += 1);
            counts
        })
        .collect();
    let mut total = vec![0i64; len];
    for (e, counts) in set.entries().iter().zip(partials) {
        let mult = e.multiplicity();
        for (m, c) in counts.into_iter().enumerate() {
            if c != 0 {
                total[m] = c
                    .checked_mul(mult)
                    .and_then(|t| total[m].checked_add(t))
                    .ok_or(Error::Overflow { exponent: m as i64 })?;
            }
        }
    }
    QSeries::new(0, total, n)
}

/// The form attached to a table row.
///
/// `K1` uses `(x^2 + 6y^2)/6` on principal classes and `(2x^2 + 3y^2)/6`
/// otherwise. `K2` always uses `x^2 + y^2`. `K3` uses `(2x^2 - 3y^2)/6` on the
/// classes of norm residue 1 and `(x^2 - 6y^2)/6` on those of residue 5.
pub fn row_form(row: &RayClassRow) -> QuadForm {
    let (a, c) = match (row.field_id, row.principal_form) {
        (FieldId::K1, true) => (1, 6),
        (FieldId::K1, false) => (2, 3),
        (FieldId::K2, _) => return QuadForm::sum_of_squares(),
        (FieldId::K3, true) => (2, -3),
        (FieldId::K3, false) => (1, -6),
    };
    QuadForm::new(a, 0, c, 6).unwrap()
}

/// Single-entry congruence set `(M, i, M, j)` of a row.
pub fn row_entry(row: &RayClassRow) -> ResidueEntry {
    ResidueEntry::new(row.modulus, row.i, row.j)
}

/// Theta series of one `K1` or `K2` class.
pub fn theta_from_row(row: &RayClassRow, n: i64) -> Result<QSeries> {
    if row.field_id == FieldId::K3 {
        return Err(Error::NotDefinite(format!(
            "{} row {} (use the indefinite route)",
            row.field_id, row.label
        )));
    }
    let set = ResiduePairSet::new(vec![row_entry(row)])?;
    theta_definite(&row_form(row), &set, n)
}

/// The row's form evaluated at `(i, j)`, reduced mod 24.
pub fn residue_of_form(row: &RayClassRow) -> Result<i64> {
    let v = row_form(row).value(row.i, row.j)?;
    Ok(v.rem_euclid(24) as i64)
}

/// Runs [`residue_of_form`] over rows and reports the first disagreement with the stored column.
pub fn check_table_residues<'a>(rows: impl IntoIterator<Item = &'a RayClassRow>) -> Result<()> {
    for row in rows {
        let got = residue_of_form(row)?;
        if got != row.q_residue {
            return Err(Error::TableMismatch {
                label: row.label.to_string(),
                reason: format!("form gives {got} mod 24, table says {}", row.q_residue),
            });
        }
    }
    Ok(())
}
