//! Field constants, an ideal-counting oracle built from the Kronecker symbol,
//! and the eta-quotient side conditions: weight, the two congruence sums,
//! orders at the cusps of `Gamma_0(N)` and the Sturm bound.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::eta_quotient_series;
use crate::tables::{rows, FieldId, RayClassRow};

/// Kronecker symbol `(a / n)` for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return i64::from(a == 1 || a == -1);
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -1;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    result * jacobi(a.rem_euclid(n), n)
}

/// Jacobi symbol for odd positive `n`, `0 <= a < n`.
fn jacobi(mut a: i64, mut n: i64) -> i64 {
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Number of integral ideals of norm `n` in the quadratic field of
/// discriminant `d`, as `sum_{k | n} (d / k)`.
pub fn ideal_count_oracle(d: i64, n: i64) -> Result<i64> {
    if ![-24, -4, 24].contains(&d) {
        return Err(Error::UnsupportedDiscriminant(d));
    }
    if n < 1 {
        return Err(Error::Usage(format!("ideal norm must be positive, got {n}")));
    }
    let mut total = 0;
    let mut k = 1;
    while k * k <= n {
        if n % k == 0 {
            total += kronecker(d, k);
            if k * k != n {
                total += kronecker(d, n / k);
            }
        }
        k += 1;
    }
    Ok(total)
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldData {
    pub field_id: FieldId,
    pub discriminant: i64,
    pub conductor: &'static str,
    pub conductor_norm: i64,
    /// Number of roots of unity.
    pub unit_count: i64,
    pub has_nontorsion_unit: bool,
    /// Structure of the ray class group modulo the conductor.
    pub ray_class_group: &'static str,
    pub narrow_class_group: &'static str,
    #[serde(skip)]
    pub rows: &'static [RayClassRow],
}

impl FieldData {
    pub fn get(field: FieldId) -> Self {
        let rows = rows(field);
        match field {
            FieldId::K1 => Self {
                field_id: field,
                discriminant: -24,
                conductor: "(4 sqrt(-6))",
                conductor_norm: 96,
                unit_count: 2,
                has_nontorsion_unit: false,
                ray_class_group: "Z/4 x Z/4 x Z/2",
                narrow_class_group: "{(1), (2, sqrt(-6))}",
                rows,
            },
            FieldId::K2 => Self {
                field_id: field,
                discriminant: -4,
                conductor: "(24)",
                conductor_norm: 576,
                unit_count: 4,
                has_nontorsion_unit: false,
                ray_class_group: "Z/8 x Z/4 x Z/2",
                narrow_class_group: "{(1)}",
                rows,
            },
            FieldId::K3 => Self {
                field_id: field,
                discriminant: 24,
                conductor: "(4 sqrt(6)) oo_1 oo_2",
                conductor_norm: 96,
                unit_count: 2,
                has_nontorsion_unit: true,
                ray_class_group: "Z/4 x Z/2 x Z/2 x Z/2",
                narrow_class_group: "{(1), (2 + sqrt(6))}",
                rows,
            },
        }
    }
}

fn prime_divisors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `(N^2 / 12) prod_{p | N} (1 - 1/p^2)` as an exact rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SturmBound {
    pub level: i64,
    #[serde(serialize_with = "ratio_str")]
    pub value: Ratio<i128>,
    pub integral: bool,
}

impl SturmBound {
    pub fn as_integer(&self) -> Option<i128> {
        self.integral.then(|| self.value.to_integer())
    }
}

pub fn sturm_bound(level: i64) -> Result<SturmBound> {
    if level < 1 {
        return Err(Error::Usage(format!("level must be positive, got {level}")));
    }
    let mut value = Ratio::new(level as i128 * level as i128, 12);
    for p in prime_divisors(level) {
        let p2 = p as i128 * p as i128;
        value *= Ratio::new(p2 - 1, p2);
    }
    Ok(SturmBound {
        level,
        value,
        integral: value.is_integer(),
    })
}

fn ratio_str<T: std::fmt::Display + Clone + Integer, S: serde::Serializer>(r: &Ratio<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn check_divisors(r: &BTreeMap<i64, i64>, level: i64) -> Result<()> {
    if level < 1 {
        return Err(Error::Usage(format!("level must be positive, got {level}")));
    }
    match r.keys().find(|&&delta| delta < 1 || level % delta != 0) {
        Some(&delta) => Err(Error::NotADivisor { delta, level }),
        None => Ok(()),
    }
}

/// `(N/24) sum_delta gcd(d, delta)^2 r_delta / (gcd(d, N/d) d delta)`.
pub fn cusp_order(r: &BTreeMap<i64, i64>, level: i64, d: i64) -> Result<Ratio<i64>> {
    check_divisors(r, level)?;
    if d < 1 || level % d != 0 {
        return Err(Error::NotADivisor { delta: d, level });
    }
    let mut sum = Ratio::zero();
    for (&delta, &rd) in r {
        let g = d.gcd(&delta);
        sum += Ratio::new(g * g * rd, d.gcd(&(level / d)) * d * delta);
    }
    Ok(sum * Ratio::new(level, 24))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularityReport {
    pub level: i64,
    #[serde(serialize_with = "ratio_str")]
    pub weight: Ratio<i64>,
    pub weight_integral: bool,
    pub sum_delta_r: i64,
    #[serde(rename = "sum_Ndelta_r")]
    pub sum_n_delta_r: i64,
    pub sums_divisible_by_24: bool,
    /// Order at the cusps indexed by divisors `d` of the level.
    pub cusp_orders: BTreeMap<i64, String>,
    pub holomorphic_at_cusps: bool,
    pub vanishes_at_infinity: bool,
    pub sturm_bound: SturmBound,
    /// All checks hold.
    pub passes: bool,
}

impl ModularityReport {
    pub fn cusp_order(&self, d: i64) -> Option<Ratio<i64>> {
        self.cusp_orders.get(&d).and_then(|s| s.parse().ok())
    }
}

pub fn eta_quotient_checks(r: &BTreeMap<i64, i64>, level: i64) -> Result<ModularityReport> {
    check_divisors(r, level)?;
    let weight = Ratio::new(r.values().sum::<i64>(), 2);
    let sum_delta_r: i64 = r.iter().map(|(d, e)| d * e).sum();
    let sum_n_delta_r: i64 = r.iter().map(|(d, e)| level / d * e).sum();
    let mut cusp_orders = BTreeMap::new();
    let mut holomorphic = true;
    for d in divisors(level) {
        let order = cusp_order(r, level, d)?;
        holomorphic &= order >= Ratio::zero();
        cusp_orders.insert(d, order.to_string());
    }
    let sums_ok = sum_delta_r % 24 == 0 && sum_n_delta_r % 24 == 0;
    let vanishes = sum_delta_r > 0;
    // cross-check against the expansion when the leading power is integral
    if sums_ok && vanishes {
        let lead = sum_delta_r / 24;
        let series = eta_quotient_series(r, lead)?;
        debug_assert_eq!(series.leading_exponent(), Some(lead));
    }
    let weight_integral = weight.is_integer();
    Ok(ModularityReport {
        level,
        weight,
        weight_integral,
        sum_delta_r,
        sum_n_delta_r,
        sums_divisible_by_24: sums_ok,
        cusp_orders,
        holomorphic_at_cusps: holomorphic,
        vanishes_at_infinity: vanishes,
        sturm_bound: sturm_bound(level)?,
        passes: sums_ok && weight_integral && holomorphic && vanishes,
    })
}
