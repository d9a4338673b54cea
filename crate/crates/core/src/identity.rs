//! Every route to `Theta = q rho(q^24) + q^5 rho*(q^24)` and to the `sigma`
//! pair, and the comparator that checks them against each other.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::indefinite::{sigma_pair_bqf, theta_indefinite, CanonRule, OrbitOptions, SignRule, UnitAction, Wedge};
use crate::partitions::{rho_partition_series, sigma_hypergeometric, SigmaConvention};
use crate::qseries::{eta_quotient_series, QSeries};
use crate::quadform::{row_entry, row_form, theta_definite, QuadForm, ResidueEntry, ResiduePairSet};
use crate::tables::{rows, FieldId};

/// Exponents of `eta(48 tau)^8 / (eta(24 tau)^3 eta(96 tau)^3)`.
pub const ETA_QUOTIENT: [(i64, i64); 3] = [(24, -3), (48, 8), (96, -3)];

pub const ETA_LEVEL: i64 = 2304;

pub fn eta_exponents() -> BTreeMap<i64, i64> {
    ETA_QUOTIENT.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RouteId {
    /// Ray classes of Q(sqrt(-6)) and two definite forms.
    K1,
    /// Ray classes of Q(i) and x^2 + y^2.
    K2,
    /// Ray classes of Q(sqrt(6)), indefinite forms over unit orbits.
    K3,
    /// The eta quotient of level 2304.
    Eta,
    /// The product (-q;q^2)^3 (q^2;q^2)^2.
    Partitions,
    /// Orbits of x + y sqrt(6) for the sigma pair.
    Bqf,
    /// The q-hypergeometric sum for sigma.
    Hyper,
}

impl fmt::Display for RouteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Series {
    Theta,
    Rho,
    Rhostar,
    Sigma,
    Sigmastar,
}

impl Series {
    /// Theta-scale series are sparse and indexed by norms, the rest by `n`.
    pub fn is_theta_scale(self) -> bool {
        self == Series::Theta
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

fn unsupported(route: RouteId, series: Series) -> Error {
    Error::UnsupportedRoute {
        route: route.to_string(),
        series: series.to_string(),
    }
}

/// `Theta` split as `(part on 1 mod 24, part on 5 mod 24)`, after checking
/// that nothing else occurs.
fn split_theta(theta: &QSeries) -> Result<(QSeries, QSeries)> {
    if let Some((n, c)) = theta.terms().find(|(n, _)| !matches!(n.rem_euclid(24), 1 | 5)) {
        return Err(Error::SupportViolation {
            exponent: n,
            coefficient: c,
            residue: 1,
            modulus: 24,
        });
    }
    Ok((theta.sift(24, 1)?, theta.sift(24, 5)?))
}

/// Theta-scale bound needed for `n` terms of `rho` or `rho*`.
fn theta_terms(n: i64, residue: i64) -> i64 {
    24 * n + residue
}

/// `K1`: every ray class weighted by the character, split by form.
///
/// Returns the principal part (norms 1, 7 mod 24) and the non-principal part
/// (norms 5, 11 mod 24); the classes in the last two cosets cancel in pairs.
pub fn k1_parts(n: i64) -> Result<(QSeries, QSeries)> {
    let mut principal = Vec::new();
    let mut other = Vec::new();
    for row in rows(FieldId::K1) {
        let e = row_entry(row).signed(row.coset.character());
        if row.principal_form {
            principal.push(e);
        } else {
            other.push(e);
        }
    }
    let k1 = &rows(FieldId::K1);
    let p = theta_definite(&row_form(&k1[0]), &ResiduePairSet::new(principal)?, n)?;
    let q = theta_definite(&row_form(&k1[4]), &ResiduePairSet::new(other)?, n)?;
    Ok((p, q))
}

/// The simplified `Q(i)` congruence sets, weight 2 on the `T` sets.
pub fn k2_residue_set() -> ResiduePairSet {
    ResiduePairSet::new(vec![
        ResidueEntry::with(24, 0, 6, 1, 1, 1),
        ResidueEntry::with(24, 4, 12, 3, 2, 1),
        ResidueEntry::with(24, 12, 6, 1, 1, -1),
        ResidueEntry::with(24, 8, 12, 3, 2, -1),
        ResidueEntry::with(24, 2, 12, 1, 2, 1),
        ResidueEntry::with(24, 10, 12, 5, 2, 1),
        ResidueEntry::with(24, 2, 12, 5, 2, -1),
        ResidueEntry::with(24, 10, 12, 1, 2, -1),
    ])
    .expect("static residue data")
}

pub fn k2_theta(n: i64) -> Result<QSeries> {
    theta_definite(&QuadForm::sum_of_squares(), &k2_residue_set(), n)
}

/// The printed `Q(i)` rows taken literally: classes in the first coset minus
/// those in the second. This does not reproduce `Theta`; see the tests.
pub fn k2_table_rows_theta(n: i64) -> Result<QSeries> {
    let entries = rows(FieldId::K2)
        .iter()
        .map(|r| row_entry(r).signed(r.coset.character()))
        .collect();
    theta_definite(&QuadForm::sum_of_squares(), &ResiduePairSet::new(entries)?, n)
}

/// Oriented residue classes of the first coset of `Q(sqrt(6))` with the given norm residue.
fn k3_set(q_residue: i64) -> Result<ResiduePairSet> {
    let entries = rows(FieldId::K3)
        .iter()
        .filter(|r| r.coset == crate::tables::Coset::I && r.q_residue == q_residue)
        .map(|r| row_entry(r).signed(r.orientation))
        .collect();
    ResiduePairSet::new(entries)
}

/// `K3` parts on 1 and 5 mod 24: for each class, orbits in the wedge with
/// `x > 0` minus orbits in the wedge with `x < 0`.
pub fn k3_parts_with(n: i64, rule: CanonRule) -> Result<(QSeries, QSeries)> {
    let opts = OrbitOptions {
        with_negation: false,
        rule,
        check_bound: true,
    };
    let part = |a: i64, c: i64, u: UnitAction, q_residue: i64| -> Result<QSeries> {
        let form = QuadForm::new(a, 0, -c, 6)?;
        let regions = [
            (Wedge::x_dominant(a, c, SignRule::XPositive), 1),
            (Wedge::x_dominant(a, c, SignRule::XNegative), -1),
        ];
        theta_indefinite(&form, &k3_set(q_residue)?, &regions, &u, opts, n)
    };
    let (one, five) = rayon::join(
        || part(2, 3, UnitAction::sqrt2_sqrt3(), 1),
        || part(1, 6, UnitAction::sqrt6(), 5),
    );
    Ok((one?, five?))
}

pub fn k3_parts(n: i64) -> Result<(QSeries, QSeries)> {
    k3_parts_with(n, CanonRule::MinAbsY)
}

/// `f = q rho(q^24)` from the eta quotient, through `q^n`.
pub fn eta_theta_part(n: i64) -> Result<QSeries> {
    eta_quotient_series(&eta_exponents(), n)
}

/// `Theta` through `q^n` by one of the three field routes.
pub fn theta_full(route: RouteId, n: i64) -> Result<QSeries> {
    let theta = match route {
        RouteId::K1 => {
            let (a, b) = k1_parts(n)?;
            a.add(&b)?
        }
        RouteId::K2 => k2_theta(n)?,
        RouteId::K3 => {
            let (a, b) = k3_parts(n)?;
            a.add(&b)?
        }
        _ => return Err(unsupported(route, Series::Theta)),
    };
    split_theta(&theta)?;
    Ok(theta)
}

pub fn rho_via(route: RouteId, n: i64) -> Result<QSeries> {
    if n < 0 {
        return Ok(QSeries::zero(n));
    }
    let top = theta_terms(n, 1);
    let series = match route {
        RouteId::K1 => k1_parts(top)?.0.decimate(24, 1)?,
        RouteId::K2 => split_theta(&k2_theta(top)?)?.0,
        RouteId::K3 => k3_parts(top)?.0.decimate(24, 1)?,
        RouteId::Eta => eta_theta_part(top)?.decimate(24, 1)?,
        RouteId::Partitions => rho_partition_series(n)?,
        _ => return Err(unsupported(route, Series::Rho)),
    };
    Ok(series.truncate(n))
}

pub fn rhostar_via(route: RouteId, n: i64) -> Result<QSeries> {
    if n < 0 {
        return Ok(QSeries::zero(n));
    }
    let top = theta_terms(n, 5);
    let series = match route {
        RouteId::K1 => k1_parts(top)?.1.decimate(24, 5)?,
        RouteId::K2 => split_theta(&k2_theta(top)?)?.1,
        RouteId::K3 => k3_parts(top)?.1.decimate(24, 5)?,
        _ => return Err(unsupported(route, Series::Rhostar)),
    };
    Ok(series.truncate(n))
}

/// `sigma` by orbit counting or, with a convention, by the hypergeometric sum.
pub fn sigma_via(route: RouteId, n: i64, convention: SigmaConvention) -> Result<QSeries> {
    match route {
        RouteId::Bqf => Ok(sigma_pair_bqf(n, CanonRule::MinAbsY)?.0),
        RouteId::Hyper => sigma_hypergeometric(n, convention),
        _ => Err(unsupported(route, Series::Sigma)),
    }
}

pub fn sigmastar_via(route: RouteId, n: i64) -> Result<QSeries> {
    match route {
        RouteId::Bqf => Ok(sigma_pair_bqf(n, CanonRule::MinAbsY)?.1),
        _ => Err(unsupported(route, Series::Sigmastar)),
    }
}

/// The series by the given route, `n` counted in the series' own exponent scale.
pub fn compute(series: Series, route: RouteId, n: i64, convention: SigmaConvention) -> Result<QSeries> {
    match series {
        Series::Theta => theta_full(route, n),
        Series::Rho => rho_via(route, n),
        Series::Rhostar => rhostar_via(route, n),
        Series::Sigma => sigma_via(route, n, convention),
        Series::Sigmastar => sigmastar_via(route, n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub series: String,
    pub lhs: String,
    pub rhs: String,
    pub compared_up_to: i64,
    pub equal: bool,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_seconds: f64,
}

impl IdentityReport {
    pub fn compare(series: &str, lhs: &str, rhs: &str, a: &QSeries, b: &QSeries, upto: i64, start: Instant) -> Self {
        let top = upto.min(a.truncation()).min(b.truncation());
        let first_mismatch = a
            .first_difference(b, top)
            .map(|(exponent, lhs, rhs)| Mismatch { exponent, lhs, rhs });
        Self {
            series: series.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            compared_up_to: top,
            equal: first_mismatch.is_none(),
            first_mismatch,
            elapsed_seconds: start.elapsed().as_secs_f64(),
        }
    }
}

/// Computes both sides in parallel and compares them on the common range.
pub fn verify(series: Series, lhs: RouteId, rhs: RouteId, n: i64, convention: SigmaConvention) -> Result<IdentityReport> {
    let start = Instant::now();
    let (a, b) = rayon::join(
        || compute(series, lhs, n, convention),
        || compute(series, rhs, n, convention),
    );
    Ok(IdentityReport::compare(
        &series.to_string(),
        &lhs.to_string(),
        &rhs.to_string(),
        &a?,
        &b?,
        n,
        start,
    ))
}

/// The eta quotient against the principal `Q(sqrt(-6))` classes on every
/// exponent up to the Sturm bound of level 2304.
pub fn sturm_verification() -> Result<IdentityReport> {
    let bound = crate::fields::sturm_bound(ETA_LEVEL)?
        .as_integer()
        .expect("integral at level 2304") as i64;
    let start = Instant::now();
    let (eta, k1) = rayon::join(|| eta_theta_part(bound), || k1_parts(bound).map(|p| p.0));
    Ok(IdentityReport::compare("f", "eta", "k1", &eta?, &k1?, bound, start))
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub convention: SigmaConvention,
    /// Per convention, whether the hypergeometric sum equals the orbit count.
    pub matches: BTreeMap<String, bool>,
    /// `q^2 sigma(q^24) + sigma*(q^24)` against `q` times the orbit series.
    pub identity: IdentityReport,
    pub support_residues: Vec<i64>,
    pub sigma_star_even: bool,
}

/// Settles the exponent convention of `sigma` against the orbit count and
/// checks the combined series built from it.
pub fn sigma_identity_check(n: i64) -> Result<SigmaReport> {
    let start = Instant::now();
    let (sigma_bqf, sigma_star) = sigma_pair_bqf(n, CanonRule::MinAbsY)?;
    let mut matches = BTreeMap::new();
    let mut winner = None;
    for conv in [SigmaConvention::NChoose2, SigmaConvention::Triangular] {
        let hyper = sigma_hypergeometric(n, conv)?;
        let ok = hyper.first_difference(&sigma_bqf, n).is_none();
        if ok && winner.is_none() {
            winner = Some(conv);
        }
        matches.insert(format!("{conv:?}"), ok);
    }
    let convention = winner.unwrap_or(SigmaConvention::Triangular);
    let sigma_star_even = sigma_star.terms().all(|(_, c)| c % 2 == 0);
    let hyper = sigma_hypergeometric(n, convention)?;
    let top = 24 * n;
    let lhs = hyper
        .substitute_power(24)?
        .shift(2)?
        .add(&sigma_star.substitute_power(24)?)?
        .truncate(top);
    // q (q sigma(q^24) + q^-1 sigma*(q^24)) straight from the orbit series
    let (outer, inner) = sigma_orbit_series(top)?;
    let rhs = outer.shift(1)?.add(&inner.shift(1)?)?.truncate(top);
    let identity = IdentityReport::compare("q^2 sigma(q^24) + sigma*(q^24)", "hyper+bqf", "bqf", &lhs, &rhs, top, start);
    Ok(SigmaReport {
        convention,
        matches,
        support_residues: rhs.support_residues(24),
        sigma_star_even,
        identity,
    })
}

/// Raw orbit sums `sum q^(x^2 - 6y^2)` and `sum q^(6y^2 - x^2)` through `q^n`.
fn sigma_orbit_series(n: i64) -> Result<(QSeries, QSeries)> {
    let set = crate::indefinite::sigma_residue_set();
    let u = UnitAction::sqrt6();
    let opts = OrbitOptions {
        with_negation: true,
        ..Default::default()
    };
    let outer = theta_indefinite(
        &QuadForm::new(1, 0, -6, 1)?,
        &set,
        &[(Wedge::x_dominant(1, 6, SignRule::Any), 1)],
        &u,
        opts,
        n,
    )?;
    let inner = theta_indefinite(&QuadForm::new(-1, 0, 6, 1)?, &set, &[(Wedge::y_dominant(1, 6), 1)], &u, opts, n)?;
    Ok((outer, inner))
}

#[cfg(test)]
mod tests {
    use super::*;

    const RHO: [i64; 8] = [1, 3, 1, -2, 2, 1, -4, -1];

    #[test]
    fn rho_routes_first_terms() {
        for route in [RouteId::Eta, RouteId::Partitions, RouteId::K1, RouteId::K2, RouteId::K3] {
            assert_eq!(rho_via(route, 7).unwrap().dense(7), RHO.to_vec(), "{route}");
        }
    }

    #[test]
    fn rhostar_routes_first_terms() {
        let want = vec![2, -2, -2, 0, -2, 4, 2, 2, -2, 0, 2, -2];
        for route in [RouteId::K1, RouteId::K2, RouteId::K3] {
            assert_eq!(rhostar_via(route, 11).unwrap().dense(11), want, "{route}");
        }
        assert!(rhostar_via(RouteId::Eta, 5).is_err());
    }

    #[test]
    fn theta_decomposes() {
        let theta = theta_full(RouteId::K1, 24 * 40).unwrap();
        let rho = rho_via(RouteId::K1, 40).unwrap();
        let star = rhostar_via(RouteId::K1, 40).unwrap();
        let rebuilt = rho
            .substitute_power(24)
            .unwrap()
            .shift(1)
            .unwrap()
            .add(&star.substitute_power(24).unwrap().shift(5).unwrap())
            .unwrap();
        assert_eq!(theta.first_difference(&rebuilt, 24 * 40), None);
        assert_eq!(theta.coeff(1), Some(1));
    }

    #[test]
    fn second_cosets_cancel() {
        let n = 3000;
        let (p, q) = k1_parts(n).unwrap();
        let entries = |principal: bool| {
            rows(FieldId::K1)
                .iter()
                .filter(|r| r.principal_form == principal && matches!(r.coset, crate::tables::Coset::I | crate::tables::Coset::J))
                .map(|r| row_entry(r).signed(r.coset.character()))
                .collect::<Vec<_>>()
        };
        let k1 = rows(FieldId::K1);
        let p2 = theta_definite(&row_form(&k1[0]), &ResiduePairSet::new(entries(true)).unwrap(), n).unwrap();
        let q2 = theta_definite(&row_form(&k1[4]), &ResiduePairSet::new(entries(false)).unwrap(), n).unwrap();
        assert_eq!((p, q), (p2, q2));
    }

    #[test]
    fn literal_k2_rows_differ_from_theta() {
        let rows_theta = k2_table_rows_theta(300).unwrap();
        let theta = k2_theta(300).unwrap();
        assert_eq!(rows_theta.first_difference(&theta, 300), Some((25, 2, 3)));
    }

    #[test]
    fn unsupported_routes() {
        assert!(matches!(theta_full(RouteId::Eta, 10), Err(Error::UnsupportedRoute { .. })));
        assert!(matches!(rho_via(RouteId::Bqf, 10), Err(Error::UnsupportedRoute { .. })));
        assert!(sigmastar_via(RouteId::Hyper, 10).is_err());
    }

    #[test]
    fn reflexive_verify() {
        let r = verify(Series::Rho, RouteId::Eta, RouteId::Eta, 100, SigmaConvention::Triangular).unwrap();
        assert!(r.equal && r.first_mismatch.is_none());
        assert_eq!(r.compared_up_to, 100);
    }

    #[test]
    fn sigma_check_small() {
        let rep = sigma_identity_check(60).unwrap();
        assert_eq!(rep.convention, SigmaConvention::Triangular);
        assert_eq!(rep.matches["NChoose2"], false);
        assert!(rep.identity.equal);
        assert_eq!(rep.support_residues, vec![0, 2]);
        assert!(rep.sigma_star_even);
    }
}
