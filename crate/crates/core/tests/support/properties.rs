#![allow(dead_code)]

//! Randomized property checks shared by the `properties` and `acceptance`
//! test targets. Each check runs through its own `TestRunner`.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

use threefield::fields::{ideal_count_oracle, kronecker};
use threefield::indefinite::{canonicalize, UnitAction};
use threefield::quadform::QuadForm;
use threefield::QSeries;

pub const CASES: u32 = 1000;

type Check = fn(u32) -> Result<(), String>;

/// Every property with its name, for callers that want to report them one by one.
pub const ALL: [(&str, Check); 7] = [
    ("series addition and multiplication commute", series_commutative),
    ("series addition and multiplication associate", series_associative),
    ("series multiplication distributes over addition", series_distributive),
    ("canonical points are fixed and constant on orbits", canonical_orbits),
    ("units preserve the indefinite forms", unit_invariance),
    ("kronecker symbol is multiplicative in the bottom argument", kronecker_multiplicative),
    ("ideal counts are multiplicative", ideal_count_multiplicative),
];

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn series() -> impl Strategy<Value = QSeries> {
    (0i64..4, prop::collection::vec(-10_000i64..10_000, 0..24), 0i64..40, any::<bool>()).prop_map(
        |(offset, coeffs, extra, exact)| {
            if exact {
                QSeries::new(offset, coeffs, threefield::EXACT).unwrap()
            } else {
                QSeries::new(offset, coeffs, offset + extra).unwrap()
            }
        },
    )
}

/// Both sides agree on every exponent known to both.
fn agree(a: &QSeries, b: &QSeries) -> Result<(), TestCaseError> {
    let top = a.truncation().min(b.truncation()).min(200);
    for n in 0..=top {
        prop_assert_eq!(a.coeff(n), b.coeff(n), "exponent {}", n);
    }
    Ok(())
}

pub fn series_commutative(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(series(), series()), |(a, b)| {
        agree(&a.add(&b).unwrap(), &b.add(&a).unwrap())?;
        agree(&a.mul(&b).unwrap(), &b.mul(&a).unwrap())
    }))
}

pub fn series_associative(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(series(), series(), series()), |(a, b, c)| {
        agree(&a.add(&b).unwrap().add(&c).unwrap(), &a.add(&b.add(&c).unwrap()).unwrap())?;
        agree(&a.mul(&b).unwrap().mul(&c).unwrap(), &a.mul(&b.mul(&c).unwrap()).unwrap())
    }))
}

pub fn series_distributive(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(series(), series(), series()), |(a, b, c)| {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        agree(&lhs, &rhs)
    }))
}

fn point() -> impl Strategy<Value = (i64, i64)> {
    (-1_000_000i64..=1_000_000, -1_000_000i64..=1_000_000).prop_filter("origin", |p| *p != (0, 0))
}

pub fn canonical_orbits(cases: u32) -> Result<(), String> {
    let units = [UnitAction::sqrt6(), UnitAction::sqrt2_sqrt3()];
    report(runner(cases).run(&(point(), 0usize..2, any::<bool>(), 1usize..4), |(p, k, neg, steps)| {
        let u = &units[k];
        let c = canonicalize(p, u, neg).unwrap();
        prop_assert_eq!(canonicalize(c, u, neg).unwrap(), c);
        let (mut fwd, mut back) = (p, p);
        for _ in 0..steps {
            fwd = u.apply(fwd).unwrap();
            back = u.inverse().apply(back).unwrap();
            prop_assert_eq!(canonicalize(fwd, u, neg).unwrap(), c);
            prop_assert_eq!(canonicalize(back, u, neg).unwrap(), c);
        }
        if neg {
            prop_assert_eq!(canonicalize((-p.0, -p.1), u, neg).unwrap(), c);
        }
        Ok(())
    }))
}

pub fn unit_invariance(cases: u32) -> Result<(), String> {
    let cases_list = [
        (QuadForm::new(1, 0, -6, 1).unwrap(), UnitAction::sqrt6()),
        (QuadForm::new(-1, 0, 6, 1).unwrap(), UnitAction::sqrt6()),
        (QuadForm::new(1, 0, -6, 6).unwrap(), UnitAction::sqrt6()),
        (QuadForm::new(2, 0, -3, 6).unwrap(), UnitAction::sqrt2_sqrt3()),
    ];
    for (form, u) in &cases_list {
        if !u.preserves(form) {
            return Err(format!("{u:?} does not preserve {form}"));
        }
    }
    report(runner(cases).run(&(point(), 0usize..4), |(p, k)| {
        let (form, u) = &cases_list[k];
        prop_assert_eq!(form.numerator(p.0, p.1), form.numerator(u.apply(p).unwrap().0, u.apply(p).unwrap().1));
        let back = u.inverse().apply(p).unwrap();
        prop_assert_eq!(form.numerator(p.0, p.1), form.numerator(back.0, back.1));
        Ok(())
    }))
}

pub fn kronecker_multiplicative(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&(prop::sample::select(vec![-24i64, -4, 24, 5, -7, 12]), 1i64..5000, 1i64..5000), |(d, m, n)| {
        prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
        Ok(())
    }))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn ideal_count_multiplicative(cases: u32) -> Result<(), String> {
    let coprime = (1i64..3000, 1i64..3000).prop_filter("coprime", |&(m, n)| gcd(m, n) == 1);
    report(runner(cases).run(&(prop::sample::select(vec![-24i64, -4, 24]), coprime), |(d, (m, n))| {
        let whole = ideal_count_oracle(d, m * n).unwrap();
        prop_assert_eq!(whole, ideal_count_oracle(d, m).unwrap() * ideal_count_oracle(d, n).unwrap());
        Ok(())
    }))
}
