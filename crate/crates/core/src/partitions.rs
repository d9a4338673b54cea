//! Signed colored partitions and the q-hypergeometric `sigma`.
//!
//! A colored partition here uses odd parts in three colors and even parts in
//! two colors, with each (part, color) pair used at most once. `r_e(n)` and
//! `r_o(n)` count those with an even resp. odd number of even parts, and
//! `r(n) = r_e(n) - r_o(n)` is the coefficient of `(-q; q^2)^3 (q^2; q^2)^2`.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qseries::{qpochhammer_product, PochhammerTerm, QSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredPartitionCount {
    pub n: u64,
    #[serde(serialize_with = "decimal")]
    pub r_e: BigUint,
    #[serde(serialize_with = "decimal")]
    pub r_o: BigUint,
    #[serde(serialize_with = "decimal")]
    pub r: BigInt,
}

fn decimal<T: ToString, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Counts for every `n <= max_n`.
///
/// Each part size is folded in as a polynomial factor: an odd part `k` as
/// `(1 + x^k)^3`, an even part `k` as `(1 + y x^k)^2`, where `y` flips the
/// parity of the number of even parts.
pub fn colored_partition_table(max_n: usize) -> Vec<ColoredPartitionCount> {
    let mut even = vec![BigUint::zero(); max_n + 1];
    let mut odd = vec![BigUint::zero(); max_n + 1];
    even[0] = BigUint::from(1u8);
    for k in 1..=max_n {
        let copies = if k % 2 == 1 { 3 } else { 2 };
        for _ in 0..copies {
            for n in (k..=max_n).rev() {
                if k % 2 == 1 {
                    let (e, o) = (even[n - k].clone(), odd[n - k].clone());
                    even[n] += e;
                    odd[n] += o;
                } else {
                    let (e, o) = (odd[n - k].clone(), even[n - k].clone());
                    even[n] += e;
                    odd[n] += o;
                }
            }
        }
    }
    even.into_iter()
        .zip(odd)
        .enumerate()
        .map(|(n, (r_e, r_o))| ColoredPartitionCount {
            n: n as u64,
            r: BigInt::from(r_e.clone()) - BigInt::from(r_o.clone()),
            r_e,
            r_o,
        })
        .collect()
}

pub fn colored_partition_counts(n: usize) -> ColoredPartitionCount {
    colored_partition_table(n).pop().expect("table has n + 1 entries")
}

/// `(-q; q^2)^3_oo (q^2; q^2)^2_oo` through `q^n`.
pub fn rho_partition_series(n: i64) -> Result<QSeries> {
    qpochhammer_product(
        &[PochhammerTerm::new(1, 1, 2, 3), PochhammerTerm::new(-1, 2, 2, 2)],
        n,
    )
}

/// `(-q; q^2)^3_oo (-q^2; q^2)^2_oo` through `q^n`, whose coefficients are `r_e + r_o`.
pub fn unsigned_partition_series(n: i64) -> Result<QSeries> {
    qpochhammer_product(
        &[PochhammerTerm::new(1, 1, 2, 3), PochhammerTerm::new(1, 2, 2, 2)],
        n,
    )
}

/// Exponent attached to the `n`-th summand of `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SigmaConvention {
    /// `n (n - 1) / 2`
    NChoose2,
    /// `n (n + 1) / 2`
    Triangular,
}

impl SigmaConvention {
    pub fn exponent(self, n: i64) -> i64 {
        match self {
            SigmaConvention::NChoose2 => n * (n - 1) / 2,
            SigmaConvention::Triangular => n * (n + 1) / 2,
        }
    }
}

/// `sum_{m >= 0} q^e(m) / ((1 + q)(1 + q^2)...(1 + q^m))` through `q^n`.
///
/// Every denominator has constant term 1, so summands with `e(m) > n` vanish
/// below `q^(n+1)` and the sum stops there.
pub fn sigma_hypergeometric(n: i64, convention: SigmaConvention) -> Result<QSeries> {
    if n < 0 {
        return Ok(QSeries::zero(n));
    }
    let len = n as usize + 1;
    let mut total = vec![0i64; len];
    // inverse of prod_{j <= m} (1 + q^j)
    let mut inverse = vec![0i64; len];
    inverse[0] = 1;
    let mut m = 0i64;
    loop {
        if m > 0 && (m as usize) < len {
            let j = m as usize;
            for i in j..len {
                inverse[i] = inverse[i]
                    .checked_sub(inverse[i - j])
                    .ok_or(Error::Overflow { exponent: i as i64 })?;
            }
        }
        let e = convention.exponent(m);
        if e > n {
            break;
        }
        for (i, c) in inverse.iter().take(len - e as usize).enumerate() {
            let slot = &mut total[i + e as usize];
            *slot = slot.checked_add(*c).ok_or(Error::Overflow { exponent: i as i64 + e })?;
        }
        m += 1;
    }
    QSeries::new(0, total, n)
}
