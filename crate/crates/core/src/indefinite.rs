//! Indefinite diagonal forms summed over orbits of a unit action.
//!
//! A pair is counted once per orbit of the group generated by a determinant-one
//! matrix `U` preserving the form (optionally together with `-I`). Each orbit is
//! represented by its canonical element, and the search region comes from the
//! trace of `U`. If `F = a x^2 - b y^2` and `U` has trace `t > 2`, the element
//! of least `|y|` in an orbit of value `m` satisfies
//! `4 b y^2 <= |m| (t - 2)` when `m > 0` and `4 b y^2 <= |m| (t + 2)` when `m < 0`.
//! The same estimate with the roles swapped bounds the element of least `|x|`.

use std::cmp::Ordering;

use num_integer::{Integer, Roots};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::quadform::{check_divisibility, QuadForm, ResidueEntry, ResiduePairSet};

pub type Pair = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitAction {
    pub m: [[i64; 2]; 2],
}

impl UnitAction {
    pub fn new(m: [[i64; 2]; 2]) -> Result<Self> {
        let det = m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128;
        if det != 1 {
            return Err(Error::Usage(format!("unit action {m:?} has determinant {det}")));
        }
        Ok(Self { m })
    }

    /// Multiplication by `5 + 2 sqrt(6)` on `x + y sqrt(6)`; preserves `x^2 - 6y^2`.
    pub fn sqrt6() -> Self {
        Self { m: [[5, 12], [2, 5]] }
    }

    /// Multiplication by `5 + 2 sqrt(6)` on `x sqrt(2) + y sqrt(3)`; preserves `2x^2 - 3y^2`.
    pub fn sqrt2_sqrt3() -> Self {
        Self { m: [[5, 6], [4, 5]] }
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Self { m: [[d, -b], [-c, a]] }
    }

    pub fn trace(&self) -> i64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn apply(&self, (x, y): Pair) -> Result<Pair> {
        let row = |r: [i64; 2]| {
            r[0].checked_mul(x)
                .zip(r[1].checked_mul(y))
                .and_then(|(u, v)| u.checked_add(v))
        };
        match (row(self.m[0]), row(self.m[1])) {
            (Some(x), Some(y)) => Ok((x, y)),
            _ => Err(Error::Overflow { exponent: 0 }),
        }
    }

    fn apply_mod(&self, (x, y): Pair, modulus: i64) -> Pair {
        let [[a, b], [c, d]] = self.m;
        (
            (a * x + b * y).rem_euclid(modulus),
            (c * x + d * y).rem_euclid(modulus),
        )
    }

    /// Whether `Q(U p) = Q(p)` identically. A binary quadratic form is
    /// determined by its values at `(1,0)`, `(0,1)` and `(1,1)`.
    pub fn preserves(&self, form: &QuadForm) -> bool {
        [(1, 0), (0, 1), (1, 1)].into_iter().all(|p| {
            self.apply(p)
                .map(|(x, y)| form.numerator(x, y) == form.numerator(p.0, p.1))
                .unwrap_or(false)
        })
    }
}

/// Which coordinate dominates inside a wedge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dominance {
    /// `cx x^2 > cy y^2`
    X,
    /// `cx x^2 < cy y^2`
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignRule {
    Any,
    XPositive,
    XNegative,
}

/// A cone cut out by integer comparisons only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wedge {
    pub cx: i64,
    pub cy: i64,
    pub dominance: Dominance,
    pub sign_rule: SignRule,
}

impl Wedge {
    pub fn x_dominant(cx: i64, cy: i64, sign_rule: SignRule) -> Self {
        Self {
            cx,
            cy,
            dominance: Dominance::X,
            sign_rule,
        }
    }

    pub fn y_dominant(cx: i64, cy: i64) -> Self {
        Self {
            cx,
            cy,
            dominance: Dominance::Y,
            sign_rule: SignRule::Any,
        }
    }

    pub fn contains(&self, (x, y): Pair) -> bool {
        let lhs = self.cx as i128 * x as i128 * x as i128;
        let rhs = self.cy as i128 * y as i128 * y as i128;
        let cone = match self.dominance {
            Dominance::X => lhs > rhs,
            Dominance::Y => lhs < rhs,
        };
        cone && match self.sign_rule {
            SignRule::Any => true,
            SignRule::XPositive => x > 0,
            SignRule::XNegative => x < 0,
        }
    }
}

/// How a representative is picked from each orbit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CanonRule {
    /// Least `|y|`, then largest `x`, then largest `y`.
    #[default]
    MinAbsY,
    /// Least `|x|`, then largest `y`, then largest `x`.
    MinAbsX,
}

impl CanonRule {
    fn key(self, (x, y): Pair) -> (u64, i64, i64) {
        match self {
            CanonRule::MinAbsY => (y.unsigned_abs(), x.saturating_neg(), y.saturating_neg()),
            CanonRule::MinAbsX => (x.unsigned_abs(), y.saturating_neg(), x.saturating_neg()),
        }
    }

    fn less(self, p: Pair, q: Pair) -> bool {
        self.key(p).cmp(&self.key(q)) == Ordering::Less
    }
}

/// Canonical representative of the orbit of `p` under `u` (and `-I` when
/// `with_negation`), using the least-`|y|` rule.
pub fn canonicalize(p: Pair, u: &UnitAction, with_negation: bool) -> Result<Pair> {
    canonicalize_with(p, u, with_negation, CanonRule::MinAbsY)
}

/// Along an orbit `|y|` (and `|x|`) is a unimodal function of the exponent of
/// `u`, so walking downhill in the rule's key finds the global minimum.
pub fn canonicalize_with(p: Pair, u: &UnitAction, with_negation: bool, rule: CanonRule) -> Result<Pair> {
    if p == (0, 0) {
        return Err(Error::ZeroPair);
    }
    let inv = u.inverse();
    let descend = |mut best: Pair| -> Result<Pair> {
        loop {
            let up = u.apply(best)?;
            let down = inv.apply(best)?;
            let next = if rule.less(up, down) { up } else { down };
            if rule.less(next, best) {
                best = next;
            } else {
                return Ok(best);
            }
        }
    };
    let best = descend(p)?;
    if with_negation {
        let other = descend((-p.0, -p.1))?;
        if rule.less(other, best) {
            return Ok(other);
        }
    }
    Ok(best)
}

fn is_canonical(p: Pair, u: &UnitAction, inv: &UnitAction, with_negation: bool, rule: CanonRule) -> Result<bool> {
    if !rule.less(p, u.apply(p)?) || !rule.less(p, inv.apply(p)?) {
        return Ok(false);
    }
    if with_negation {
        let other = canonicalize_with((-p.0, -p.1), u, false, rule)?;
        return Ok(rule.less(p, other));
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitOptions {
    /// Also identify `p` with `-p`.
    pub with_negation: bool,
    pub rule: CanonRule,
    /// Recount on the doubled search range and fail if anything new appears.
    pub check_bound: bool,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        Self {
            with_negation: false,
            rule: CanonRule::MinAbsY,
            check_bound: true,
        }
    }
}

/// Signed multiplicity of every residue class mod `modulus`, taken over the
/// whole orbit of the class under the action reduced mod `modulus`.
struct OrbitTable {
    modulus: i64,
    mult: Vec<i64>,
}

impl OrbitTable {
    fn build(set: &ResiduePairSet, u: &UnitAction, with_negation: bool) -> Result<Self> {
        let modulus = set
            .entries()
            .iter()
            .fold(1i64, |acc, e| acc.lcm(&e.mx).lcm(&e.my));
        let idx = |(x, y): Pair| (x * modulus + y) as usize;
        let size = (modulus * modulus) as usize;
        let mut mult = vec![0i64; size];
        let mut done = vec![false; size];
        for start in 0..size as i64 {
            let start = (start / modulus, start % modulus);
            if done[idx(start)] {
                continue;
            }
            let mut members = Vec::new();
            let mut seeds = vec![start];
            if with_negation {
                seeds.push(((-start.0).rem_euclid(modulus), (-start.1).rem_euclid(modulus)));
            }
            for seed in seeds {
                let mut c = seed;
                while !done[idx(c)] {
                    done[idx(c)] = true;
                    members.push(c);
                    c = u.apply_mod(c, modulus);
                }
            }
            let weights: Vec<i64> = members
                .iter()
                .filter_map(|&(x, y)| set.entry_of(x, y).map(|e| e.multiplicity()))
                .collect();
            let w = weights.first().copied().unwrap_or(0);
            if weights.iter().any(|&v| v != w) {
                return Err(Error::InvalidResidue(format!(
                    "weights {weights:?} differ along the unit orbit of {start:?} mod {modulus}"
                )));
            }
            for c in members {
                mult[idx(c)] = w;
            }
        }
        Ok(Self { modulus, mult })
    }

    fn get(&self, (x, y): Pair) -> i64 {
        let m = self.modulus;
        self.mult[(x.rem_euclid(m) * m + y.rem_euclid(m)) as usize]
    }
}

/// Shape data of a diagonal form `(A x^2 + C y^2)/D` with `A C < 0`.
struct Diagonal {
    a: i128,
    c: i128,
    d: i128,
}

impl Diagonal {
    fn of(form: &QuadForm) -> Result<Self> {
        if form.definite || form.b != 0 || (form.a as i128) * (form.c as i128) >= 0 {
            return Err(Error::NotIndefinite(form.to_string()));
        }
        Ok(Self {
            a: form.a as i128,
            c: form.c as i128,
            d: form.d as i128,
        })
    }
}

/// Integer `s >= 0` range with `lo <= s^2 <= hi`, as `(ceil sqrt lo, floor sqrt hi)`.
fn sqrt_range(lo: i128, hi: i128) -> Option<(i64, i64)> {
    if hi < 0 || hi < lo {
        return None;
    }
    let lo = lo.max(0);
    let mut s = lo.sqrt();
    if s * s < lo {
        s += 1;
    }
    let t = hi.sqrt();
    (s <= t).then_some((s as i64, t as i64))
}

/// `sum_orbits mult * q^value`, one term per orbit of pairs in `set` lying in
/// one of the weighted `regions`, exact through `q^n`.
///
/// Every region must be a cone on which the form is positive, and the wedges
/// must be invariant under the action. Weights in `set` must be constant on
/// orbits; this is checked class by class.
pub fn theta_indefinite(
    form: &QuadForm,
    set: &ResiduePairSet,
    regions: &[(Wedge, i64)],
    u: &UnitAction,
    opts: OrbitOptions,
    n: i64,
) -> Result<QSeries> {
    let shape = Diagonal::of(form)?;
    if !u.preserves(form) {
        return Err(Error::Usage(format!("unit action {:?} does not preserve {form}", u.m)));
    }
    if u.trace() <= 2 {
        return Err(Error::Usage(format!("unit action {:?} is not hyperbolic", u.m)));
    }
    let (alpha, beta) = (shape.a.abs(), shape.c.abs());
    let mut dominance = None;
    for (w, _) in regions {
        if w.cx as i128 * beta != w.cy as i128 * alpha {
            return Err(Error::Usage(format!("wedge {w:?} is not bounded by the isotropic lines of {form}")));
        }
        let positive = match w.dominance {
            Dominance::X => shape.a > 0,
            Dominance::Y => shape.c > 0,
        };
        if !positive {
            return Err(Error::Usage(format!("{form} is not positive on wedge {w:?}")));
        }
        if w.sign_rule != SignRule::Any && (opts.with_negation || w.dominance == Dominance::Y) {
            return Err(Error::Usage(format!("wedge {w:?} is not invariant under the orbit group")));
        }
        if dominance.replace(w.dominance).is_some_and(|d| d != w.dominance) {
            return Err(Error::Usage("regions mix both cones".into()));
        }
    }
    if n < 1 || set.is_empty() || regions.is_empty() {
        return Ok(QSeries::zero(n));
    }
    check_divisibility(form, set)?;
    let table = OrbitTable::build(set, u, opts.with_negation)?;

    // numerator bound, and the sign of F = alpha x^2 - beta y^2 on the cone
    let m_max = shape.d * n as i128;
    let f_positive = dominance == Some(Dominance::X);
    let t = u.trace() as i128;
    let (small_trace, big_trace) = (t - 2, t + 2);
    let bound = match (opts.rule, f_positive) {
        (CanonRule::MinAbsY, true) => (m_max * small_trace / (4 * beta)).sqrt(),
        (CanonRule::MinAbsY, false) => (m_max * big_trace / (4 * beta)).sqrt(),
        (CanonRule::MinAbsX, true) => (m_max * big_trace / (4 * alpha)).sqrt(),
        (CanonRule::MinAbsX, false) => (m_max * small_trace / (4 * alpha)).sqrt(),
    } as i64;

    let inv = u.inverse();
    let len = n as usize + 1;
    // For a fixed value of the outer coordinate `s`, the inner coordinate `r`
    // satisfies `0 < +-F <= m_max`.
    let strip = |s: i64, out: &mut Vec<i64>| -> Result<()> {
        let s2 = s as i128 * s as i128;
        let (own, other) = match opts.rule {
            CanonRule::MinAbsY => (alpha, beta),
            CanonRule::MinAbsX => (beta, alpha),
        };
        // x-outer with F > 0 means the inner y has the smaller coefficient side
        let inner_positive = f_positive == (opts.rule == CanonRule::MinAbsY);
        let range = if inner_positive {
            // own r^2 in (other s^2, other s^2 + m_max]
            sqrt_range(Integer::div_floor(&(other * s2), &own) + 1, Integer::div_floor(&(other * s2 + m_max), &own))
        } else {
            // own r^2 in [other s^2 - m_max, other s^2)
            sqrt_range(
                Integer::div_ceil(&(other * s2 - m_max), &own),
                Integer::div_ceil(&(other * s2), &own) - 1,
            )
        };
        let Some((lo, hi)) = range else { return Ok(()) };
        for r in lo..=hi {
            for r in if r == 0 { vec![0] } else { vec![r, -r] } {
                let p = match opts.rule {
                    CanonRule::MinAbsY => (r, s),
                    CanonRule::MinAbsX => (s, r),
                };
                let weight: i64 = regions.iter().filter(|(w, _)| w.contains(p)).map(|(_, sg)| sg).sum();
                if weight == 0 {
                    continue;
                }
                let mult = table.get(p);
                if mult == 0 || !is_canonical(p, u, &inv, opts.with_negation, opts.rule)? {
                    continue;
                }
                let v = form.value(p.0, p.1)?;
                if v > 0 && v <= n as i128 {
                    let slot = &mut out[v as usize];
                    *slot = mult
                        .checked_mul(weight)
                        .and_then(|m| slot.checked_add(m))
                        .ok_or(Error::Overflow { exponent: v as i64 })?;
                }
            }
        }
        Ok(())
    };
    let run = |from: i64, to: i64| -> Result<Vec<i64>> {
        (from..=to)
            .into_par_iter()
            .flat_map_iter(|s| if s == 0 { vec![0] } else { vec![s, -s] })
            .try_fold(
                || vec![0i64; len],
                |mut acc, s| {
                    strip(s, &mut acc)?;
                    Ok(acc)
                },
            )
            .try_reduce(
                || vec![0i64; len],
                |mut a, b| {
                    for (k, (x, y)) in a.iter_mut().zip(b).enumerate() {
                        *x = x.checked_add(y).ok_or(Error::Overflow { exponent: k as i64 })?;
                    }
                    Ok(a)
                },
            )
    };
    let coeffs = run(0, bound)?;
    if opts.check_bound {
        let extra = run(bound + 1, 2 * bound + 1)?;
        if let Some(k) = extra.iter().position(|&c| c != 0) {
            return Err(Error::EnumerationBound {
                bound,
                exponent: k as i64,
            });
        }
    }
    QSeries::new(0, coeffs, n)
}

/// Residue classes `(x mod 12, y mod 4)` with their signs for the `sigma` pair.
pub fn sigma_residue_set() -> ResiduePairSet {
    let plus = [(1, 0), (11, 0), (5, 2), (7, 2)];
    let minus = [(5, 0), (7, 0), (1, 2), (11, 2)];
    let entries = plus
        .iter()
        .map(|&(a, b)| ResidueEntry::with(12, a, 4, b, 1, 1))
        .chain(minus.iter().map(|&(a, b)| ResidueEntry::with(12, a, 4, b, 1, -1)))
        .collect();
    ResiduePairSet::new(entries).expect("static residue data")
}

/// `(sigma, sigma*)` through `q^n` from orbits of `x + y sqrt(6)` up to `+-(5 + 2 sqrt(6))^k`.
///
/// `sigma(m)` counts orbits with `x^2 - 6y^2 = 24m + 1` and `sigma*(m)` those
/// with `6y^2 - x^2 = 24m - 1`, each with the sign of its residue class.
pub fn sigma_pair_bqf(n: i64, rule: CanonRule) -> Result<(QSeries, QSeries)> {
    let set = sigma_residue_set();
    let u = UnitAction::sqrt6();
    let opts = OrbitOptions {
        with_negation: true,
        rule,
        check_bound: true,
    };
    let top = 24 * n.max(0) + 1;
    let pos = QuadForm::new(1, 0, -6, 1)?;
    let neg = QuadForm::new(-1, 0, 6, 1)?;
    let outer = theta_indefinite(&pos, &set, &[(Wedge::x_dominant(1, 6, SignRule::Any), 1)], &u, opts, top)?;
    let inner = theta_indefinite(&neg, &set, &[(Wedge::y_dominant(1, 6), 1)], &u, opts, top)?;
    let sigma = outer.decimate(24, 1)?.truncate(n);
    let sigma_star = inner.decimate(24, 23)?.shift(1)?.truncate(n);
    Ok((sigma, sigma_star))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f26() -> QuadForm {
        QuadForm::new(1, 0, -6, 1).unwrap()
    }

    #[test]
    fn unit_matrices() {
        let u = UnitAction::sqrt6();
        assert!(u.preserves(&f26()));
        assert!(u.preserves(&QuadForm::new(-1, 0, 6, 1).unwrap()));
        assert!(!u.preserves(&QuadForm::new(2, 0, -3, 6).unwrap()));
        assert!(UnitAction::sqrt2_sqrt3().preserves(&QuadForm::new(2, 0, -3, 6).unwrap()));
        assert_eq!(u.inverse().m, [[5, -12], [-2, 5]]);
        assert!(UnitAction::new([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn canonical_examples() {
        let u = UnitAction::sqrt6();
        assert_eq!(canonicalize((1, 0), &u, false).unwrap(), (1, 0));
        assert_eq!(canonicalize((5, 2), &u, false).unwrap(), (1, 0));
        assert_eq!(canonicalize((49, 20), &u, false).unwrap(), (1, 0));
        assert_eq!(canonicalize((5, -2), &u, false).unwrap(), (1, 0));
        assert_eq!(canonicalize((-49, -20), &u, false).unwrap(), (-1, 0));
        assert_eq!(canonicalize((-49, -20), &u, true).unwrap(), (1, 0));
        assert_eq!(canonicalize((0, 0), &u, false), Err(Error::ZeroPair));
        // (3, 2) and (3, -2) are neighbours in one orbit
        let v = UnitAction::sqrt2_sqrt3();
        assert_eq!(v.apply((3, -2)).unwrap(), (3, 2));
        assert_eq!(canonicalize((3, -2), &v, false).unwrap(), (3, 2));
        assert_eq!(canonicalize((3, 2), &v, false).unwrap(), (3, 2));
    }

    #[test]
    fn wedges_use_exact_comparisons() {
        let w = Wedge::x_dominant(2, 3, SignRule::XPositive);
        assert!(w.contains((3, 2)));
        assert!(!w.contains((-3, 2)));
        assert!(!w.contains((1, 1)));
        for x in -300i64..=300 {
            for y in -300i64..=300 {
                if (x, y) != (0, 0) {
                    assert_ne!(2 * x * x, 3 * y * y);
                    assert_ne!(x * x, 6 * y * y);
                }
            }
        }
    }

    /// Orbit count by brute force: canonicalize every admissible point in a
    /// large box and keep one value per orbit.
    fn brute(form: &QuadForm, set: &ResiduePairSet, regions: &[(Wedge, i64)], u: &UnitAction, neg: bool, n: i64, r: i64) -> Vec<i64> {
        let mut seen = std::collections::BTreeMap::new();
        for x in -r..=r {
            for y in -r..=r {
                let Some(e) = set.entry_of(x, y) else { continue };
                let w: i64 = regions.iter().filter(|(g, _)| g.contains((x, y))).map(|(_, s)| s).sum();
                let v = form.numerator(x, y) / form.d as i128;
                if w == 0 || v < 1 || v > n as i128 {
                    continue;
                }
                let c = canonicalize((x, y), u, neg).unwrap();
                seen.entry(c).or_insert((v as usize, w * e.multiplicity()));
            }
        }
        let mut out = vec![0; n as usize + 1];
        for (v, m) in seen.into_values() {
            out[v] += m;
        }
        out
    }

    fn sigma_set() -> ResiduePairSet {
        sigma_residue_set()
    }

    #[test]
    fn orbit_counts_match_brute_force() {
        let u = UnitAction::sqrt6();
        let regions = [(Wedge::x_dominant(1, 6, SignRule::Any), 1)];
        let set = sigma_set();
        let opts = OrbitOptions {
            with_negation: true,
            ..Default::default()
        };
        let t = theta_indefinite(&f26(), &set, &regions, &u, opts, 1500).unwrap();
        assert_eq!(t.dense(1500), brute(&f26(), &set, &regions, &u, true, 1500, 400));
        assert_eq!(t.coeff(1), Some(1));

        let g = QuadForm::new(2, 0, -3, 6).unwrap();
        let v = UnitAction::sqrt2_sqrt3();
        let set = ResiduePairSet::new(vec![ResidueEntry::new(24, 3, 2), ResidueEntry::new(24, 9, 14).signed(-1)]).unwrap();
        let regions = [
            (Wedge::x_dominant(2, 3, SignRule::XPositive), 1),
            (Wedge::x_dominant(2, 3, SignRule::XNegative), -1),
        ];
        let t = theta_indefinite(&g, &set, &regions, &v, OrbitOptions::default(), 1500).unwrap();
        assert_eq!(t.dense(1500), brute(&g, &set, &regions, &v, false, 1500, 600));
    }

    #[test]
    fn rules_agree() {
        let u = UnitAction::sqrt6();
        let set = sigma_set();
        for (form, wedge) in [
            (f26(), Wedge::x_dominant(1, 6, SignRule::Any)),
            (QuadForm::new(-1, 0, 6, 1).unwrap(), Wedge::y_dominant(1, 6)),
        ] {
            let mk = |rule| OrbitOptions {
                with_negation: true,
                rule,
                check_bound: true,
            };
            let a = theta_indefinite(&form, &set, &[(wedge, 1)], &u, mk(CanonRule::MinAbsY), 3000).unwrap();
            let b = theta_indefinite(&form, &set, &[(wedge, 1)], &u, mk(CanonRule::MinAbsX), 3000).unwrap();
            assert_eq!(a, b, "{form}");
            assert!(!a.is_zero());
        }
    }

    #[test]
    fn empty_set_is_zero() {
        let r = [(Wedge::x_dominant(1, 6, SignRule::Any), 1)];
        let t = theta_indefinite(&f26(), &ResiduePairSet::empty(), &r, &UnitAction::sqrt6(), OrbitOptions::default(), 100).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn rejects_bad_inputs() {
        let u = UnitAction::sqrt6();
        let set = sigma_set();
        let r = [(Wedge::x_dominant(1, 6, SignRule::Any), 1)];
        let definite = QuadForm::new(1, 0, 6, 1).unwrap();
        assert!(matches!(
            theta_indefinite(&definite, &set, &r, &u, OrbitOptions::default(), 10),
            Err(Error::NotIndefinite(_))
        ));
        let g = QuadForm::new(2, 0, -3, 1).unwrap();
        assert!(theta_indefinite(&g, &set, &r, &u, OrbitOptions::default(), 10).is_err());
        let signed = [(Wedge::x_dominant(1, 6, SignRule::XPositive), 1)];
        let opts = OrbitOptions {
            with_negation: true,
            ..Default::default()
        };
        assert!(theta_indefinite(&f26(), &set, &signed, &u, opts, 10).is_err());
    }

    #[test]
    fn inconsistent_weights_rejected() {
        // (1, 0) and U (1, 0) = (5, 2) carry different signs
        let set = ResiduePairSet::new(vec![
            ResidueEntry::with(12, 1, 4, 0, 1, 1),
            ResidueEntry::with(12, 5, 4, 2, 1, -1),
        ])
        .unwrap();
        let r = [(Wedge::x_dominant(1, 6, SignRule::Any), 1)];
        assert!(matches!(
            theta_indefinite(&f26(), &set, &r, &UnitAction::sqrt6(), OrbitOptions::default(), 10),
            Err(Error::InvalidResidue(_))
        ));
    }

    #[test]
    fn sigma_pair_first_terms() {
        let (sigma, star) = sigma_pair_bqf(14, CanonRule::MinAbsY).unwrap();
        assert_eq!(sigma.dense(14), vec![1, 1, -1, 2, -2, 1, 0, 1, -2, 0, 2, 0, -1, -2, 2]);
        assert_eq!(star.dense(14), vec![0, -2, -2, -2, 0, 0, 0, 2, 2, 0, 2, 2, 0, 2, 0]);
        assert_eq!(sigma_pair_bqf(14, CanonRule::MinAbsX).unwrap(), (sigma, star));
    }
}
