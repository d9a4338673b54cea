//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed:
//!
//! ```text
//! cargo test -p threefield --test acceptance
//! ```


use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use threefield::fields::{eta_quotient_checks, ideal_count_oracle, sturm_bound};
use threefield::identity::{
    eta_exponents, k3_parts_with, rho_via, sigma_identity_check, sturm_verification, theta_full, RouteId, ETA_LEVEL,
};
use threefield::indefinite::CanonRule;
use threefield::partitions::{colored_partition_table, rho_partition_series};
use threefield::quadform::theta_from_row;
use threefield::tables::{rows, FieldId};

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(what.into()) }
}

fn err(e: threefield::Error) -> String {
    e.to_string()
}

fn eta_at_desk_scale() -> Outcome {
    let start = Instant::now();
    let eta = rho_via(RouteId::Eta, 5000).map_err(err)?;
    let k1 = rho_via(RouteId::K1, 5000).map_err(err)?;
    let secs = start.elapsed().as_secs_f64();
    if let Some((n, a, b)) = eta.first_difference(&k1, 5000) {
        return Err(format!("differ at n = {n}: {a} vs {b}"));
    }
    ensure(secs <= 60.0, format!("took {secs:.1}s"))?;
    Ok(format!("rho eta = rho K1 for n <= 5000 in {secs:.2}s"))
}

fn full_sturm_run() -> Outcome {
    let report = sturm_verification().map_err(err)?;
    ensure(report.compared_up_to == 294912, format!("compared to {}", report.compared_up_to))?;
    match report.first_mismatch {
        Some(m) => Err(format!("differ at {}: {} vs {}", m.exponent, m.lhs, m.rhs)),
        None => Ok(format!("f agrees through q^294912 in {:.2}s", report.elapsed_seconds)),
    }
}

fn threefield_identity() -> Outcome {
    let k1 = theta_full(RouteId::K1, 5000).map_err(err)?;
    let k2 = theta_full(RouteId::K2, 5000).map_err(err)?;
    let k3 = theta_full(RouteId::K3, 2000).map_err(err)?;
    if let Some(d) = k1.first_difference(&k2, 5000) {
        return Err(format!("K1 vs K2 differ at {d:?}"));
    }
    if let Some(d) = k1.first_difference(&k3, 2000) {
        return Err(format!("K1 vs K3 differ at {d:?}"));
    }
    ensure(k1.terms().count() > 100, "theta is nearly empty")?;
    Ok("K1 = K2 through q^5000, K1 = K3 through q^2000".into())
}

fn partition_interpretation() -> Outcome {
    let table = colored_partition_table(2000);
    let product = rho_partition_series(2000).map_err(err)?;
    let eta = rho_via(RouteId::Eta, 2000).map_err(err)?;
    for row in &table {
        let n = row.n as i64;
        let want = num_bigint::BigInt::from(eta.coeff(n).unwrap());
        ensure(row.r == want, format!("DP r({n}) = {} but rho = {want}", row.r))?;
        ensure(product.coeff(n) == eta.coeff(n), format!("product differs at {n}"))?;
    }
    let seven = &table[7];
    ensure(
        (seven.r_e.to_string(), seven.r_o.to_string(), seven.r.to_string()) == ("37".into(), "38".into(), "-1".into()),
        format!("r(7) row is {seven:?}"),
    )?;
    Ok("r(n) = rho coefficient for n <= 2000 by DP and product; r_e(7) = 37, r_o(7) = 38".into())
}

fn support_law() -> Outcome {
    let theta = theta_full(RouteId::K1, 5000).map_err(err)?;
    let residues = theta.support_residues(24);
    ensure(residues == vec![1, 5], format!("support residues {residues:?}"))?;
    Ok("theta supported on 1, 5 mod 24 through q^5000".into())
}

fn modularity() -> Outcome {
    let sb = sturm_bound(ETA_LEVEL).map_err(err)?;
    ensure(sb.as_integer() == Some(294912), format!("sturm bound {sb:?}"))?;
    let report = eta_quotient_checks(&eta_exponents(), ETA_LEVEL).map_err(err)?;
    ensure(report.weight == num_rational::Ratio::from_integer(1), "weight is not 1")?;
    ensure(report.sum_delta_r == 24 && report.sum_n_delta_r == 24, "congruence sums")?;
    for d in (1..=ETA_LEVEL).filter(|d| ETA_LEVEL % d == 0) {
        let want = if [16, 48, 144].contains(&d) { 10 } else { 1 };
        let got = report.cusp_order(d).ok_or(format!("no cusp order at {d}"))?;
        ensure(got == num_rational::Ratio::from_integer(want), format!("cusp order {got} at d = {d}"))?;
    }
    ensure(report.passes, "report does not pass")?;
    Ok("Sturm bound 294912, weight 1, sums 24, cusp orders 10 at 16, 48, 144 and 1 elsewhere".into())
}

fn oracle_equivalence() -> Outcome {
    let n = 2000;
    let k1 = rows(FieldId::K1);
    ensure(k1.len() == 32, format!("{} rows", k1.len()))?;
    let mut total = vec![0i64; n as usize + 1];
    for row in k1 {
        let theta = theta_from_row(row, n).map_err(err)?;
        for (e, c) in theta.terms() {
            total[e as usize] += c;
        }
    }
    let mut checked = 0;
    for m in (1..=n).filter(|m| m % 2 != 0 && m % 3 != 0) {
        let oracle = ideal_count_oracle(-24, m).map_err(err)?;
        ensure(total[m as usize] == oracle, format!("n = {m}: rows give {}, oracle {oracle}", total[m as usize]))?;
        checked += 1;
    }
    Ok(format!("32-row sum equals the ideal count at all {checked} n <= 2000 prime to 6"))
}

fn rules_agree() -> Outcome {
    let a = k3_parts_with(500, CanonRule::MinAbsY).map_err(err)?;
    let b = k3_parts_with(500, CanonRule::MinAbsX).map_err(err)?;
    ensure(a.0.first_difference(&b.0, 500).is_none(), "q = 1 part differs")?;
    ensure(a.1.first_difference(&b.1, 500).is_none(), "q = 5 part differs")?;
    let s = threefield::indefinite::sigma_pair_bqf(500, CanonRule::MinAbsY).map_err(err)?;
    let t = threefield::indefinite::sigma_pair_bqf(500, CanonRule::MinAbsX).map_err(err)?;
    ensure(s.0.first_difference(&t.0, 500).is_none() && s.1.first_difference(&t.1, 500).is_none(), "sigma pair differs")?;
    Ok("two canonical forms give identical orbit sums through q^500".into())
}

fn sigma_adjudication() -> Outcome {
    let report = sigma_identity_check(500).map_err(err)?;
    let winners: Vec<_> = report.matches.iter().filter(|(_, &m)| m).map(|(k, _)| k.clone()).collect();
    ensure(winners.len() == 1, format!("matching conventions {winners:?}"))?;
    ensure(report.identity.equal, "combined series differs from the orbit series")?;
    ensure(report.support_residues.iter().all(|r| [0, 2].contains(r)), format!("support {:?}", report.support_residues))?;
    ensure(report.sigma_star_even, "sigma* has an odd coefficient")?;
    Ok(format!("only {} matches; support {:?} mod 24; sigma* even", winners[0], report.support_residues))
}

fn property_suites() -> Outcome {
    for (name, check) in properties::ALL {
        check(properties::CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} properties, {} cases each", properties::ALL.len(), properties::CASES))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("eta identity at desk scale", eta_at_desk_scale),
        ("full Sturm run", full_sturm_run),
        ("threefield identity", threefield_identity),
        ("partition interpretation", partition_interpretation),
        ("support law", support_law),
        ("modularity side conditions", modularity),
        ("oracle equivalence", oracle_equivalence),
        ("indefinite well-definedness", rules_agree),
        ("sigma adjudication", sigma_adjudication),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
