//! Cross-checks of the engine against the toric lattice-point oracle over
//! deterministic divisor samples.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finiteness::{self, BoundaryDivisor, Status};
use crate::lattice::NSClass;
use crate::rational::Rational;
use crate::toric::{
    count_h0, ehrhart_period, fan_to_surface_model, h0_limit_scan, oracle_volume, ScanOutcome,
    ScanParams, ToricDivisor, ToricFan, ToricSurface,
};
use crate::zariski::{self, KappaSigma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fkl,
    Okounkov,
    Growth,
    Rr,
    Scan,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Fkl, Suite::Okounkov, Suite::Growth, Suite::Rr, Suite::Scan];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Fkl => "fkl",
            Suite::Okounkov => "okounkov",
            Suite::Growth => "growth",
            Suite::Rr => "rr",
            Suite::Scan => "scan",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Check {
    name: &'static str,
    samples: usize,
    skipped: usize,
    witness: Option<String>,
    note: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            samples: 0,
            skipped: 0,
            witness: None,
            note: None,
        }
    }

    fn fail(&mut self, witness: String) {
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.witness.is_none(),
            samples: self.samples,
            skipped: self.skipped,
            witness: self.witness,
            note: self.note,
        }
    }
}

/// Every coefficient vector with entries in `lo..=hi`.
pub fn divisor_grid(rays: usize, lo: i64, hi: i64) -> Vec<ToricDivisor> {
    let mut out = Vec::new();
    let mut c = vec![lo; rays];
    loop {
        out.push(ToricDivisor(c.clone()));
        let mut i = 0;
        while i < rays && c[i] == hi {
            c[i] = lo;
            i += 1;
        }
        if i == rays {
            return out;
        }
        c[i] += 1;
    }
}

/// Nonempty reduced boundaries with at most `max_len` components, as ray
/// index lists.
pub fn boundary_subsets(rays: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << rays))
        .map(|mask| (0..rays).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| s.len() <= max_len)
        .collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

fn boundary(s: &ToricSurface, support: &[usize]) -> Result<BoundaryDivisor> {
    let names: Vec<&str> = support
        .iter()
        .map(|&i| s.fan.names()[i].as_str())
        .collect();
    BoundaryDivisor::new(&s.model, &names)
}

fn is_big(s: &ToricSurface, d: &NSClass) -> Result<bool> {
    Ok(zariski::volume(&s.model, d)?.is_positive())
}

fn label(t: &ToricDivisor) -> String {
    format!("{:?}", t.coeffs())
}

pub fn verify_suite(fan: &ToricFan, suite: Suite) -> Result<VerificationReport> {
    let s = fan_to_surface_model(fan)?;
    let checks = match suite {
        Suite::Fkl => fkl(&s)?,
        Suite::Okounkov => okounkov(&s)?,
        Suite::Growth => growth(&s)?,
        Suite::Rr => rr(&s)?,
        Suite::Scan => scan(&s)?,
    };
    Ok(VerificationReport {
        suite,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn fkl(s: &ToricSurface) -> Result<Vec<CheckResult>> {
    let n = s.fan.len();
    let mut below = Check::new("negative-part-sections");
    let mut augmented = Check::new("augmented-locus-sections");
    let subsets = boundary_subsets(n, n);
    for t in divisor_grid(n, -1, 2) {
        let d = s.class_of(&t)?;
        let z = match zariski::decompose(&s.model, &d) {
            Ok(z) => z,
            Err(Error::NotPseudoEffective) => continue,
            Err(e) => return Err(e),
        };
        let big = s.model.self_intersection(&z.positive)?.is_positive();
        for sub in &subsets {
            let e = ToricDivisor::reduced(n, sub);
            let b = boundary(s, sub)?;
            // E ≤ N_σ(D) ⟹ h⁰(mD − mE) = h⁰(mD)
            if b.components().iter().all(|c| z.coefficient(&c.name) >= Rational::one()) {
                below.samples += 1;
                for m in 1..=12 {
                    let md = t.scale(m);
                    if count_h0(&s.fan, &md.combine(1, &e, -m)) != count_h0(&s.fan, &md) {
                        below.fail(format!("D = {}, E = {}, m = {m}", label(&t), label(&e)));
                    }
                }
            }
            // supp(E) ⊆ B₊(D) ⟹ h⁰(mD + rE) = h⁰(mD)
            if big
                && b
                    .components()
                    .iter()
                    .all(|c| s.model.pair(&z.positive, &c.cls).is_ok_and(|v| v.is_zero()))
            {
                augmented.samples += 1;
                for m in 1..=10 {
                    let md = t.scale(m);
                    let base = count_h0(&s.fan, &md);
                    for r in 1..=10 {
                        if count_h0(&s.fan, &md.combine(1, &e, r)) != base {
                            augmented.fail(format!(
                                "D = {}, E = {}, m = {m}, r = {r}",
                                label(&t),
                                label(&e)
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(vec![below.finish(), augmented.finish()])
}

/// `vol(D + tE)` from the polygon of `q·T + p·E` with `t = p/q`.
fn oracle_volume_at(s: &ToricSurface, t: &ToricDivisor, ray: usize, x: &Rational) -> Rational {
    let q = x.denom().clone();
    let p = x.numer().clone();
    let qi = i64::try_from(q.clone()).expect("denominator fits");
    let pi = i64::try_from(p).expect("numerator fits");
    let mut c = t.scale(qi);
    c.0[ray] += pi;
    let q = Rational::integer(qi);
    oracle_volume(&s.fan, &c) / (&q * &q)
}

/// One-sided derivative of a function that is quadratic on `[x, x ± 2h]`,
/// exact when that holds; `None` when the step and its half disagree.
fn one_sided_derivative(f: impl Fn(&Rational) -> Rational, x: &Rational, h: &Rational, right: bool) -> Option<Rational> {
    let est = |h: &Rational| {
        let h = if right { h.clone() } else { -h };
        let two = Rational::integer(2);
        let f1 = f(&(x + &h));
        let f2 = f(&(x + &two * &h));
        (Rational::integer(-3) * f(x) + Rational::integer(4) * f1 - f2) / (two * h)
    };
    let a = est(h);
    let b = est(&(h / Rational::integer(2)));
    (a == b).then_some(a)
}

fn okounkov(s: &ToricSurface) -> Result<Vec<CheckResult>> {
    let n = s.fan.len();
    let mut volumes = Check::new("engine-oracle-volume");
    for t in divisor_grid(n, -1, 2) {
        let d = s.class_of(&t)?;
        volumes.samples += 1;
        let engine = zariski::volume(&s.model, &d)?;
        let oracle = oracle_volume(&s.fan, &t);
        if engine != oracle {
            volumes.fail(format!("T = {}: engine {engine}, oracle {oracle}", label(&t)));
        }
    }

    let mut deriv = Check::new("volume-derivative");
    let h = Rational::new(1, 1000);
    let ts = [
        Rational::new(-3, 4),
        Rational::new(-1, 2),
        Rational::new(-1, 3),
        Rational::zero(),
        Rational::new(1, 2),
        Rational::one(),
        Rational::new(3, 2),
    ];
    for t in divisor_grid(n, 0, 2) {
        let d = s.class_of(&t)?;
        if !is_big(s, &d)? {
            continue;
        }
        for ray in 0..n {
            let c = s.curve_for_ray(ray).clone();
            let f = |x: &Rational| oracle_volume_at(s, &t, ray, x);
            for x in &ts {
                let two_h = Rational::integer(2) * &h;
                if !f(&(x - &two_h)).is_positive() {
                    deriv.skipped += 1;
                    continue;
                }
                let shifted = d.add_scaled(x, &c.cls);
                let expected = match zariski::restricted_volume(&s.model, &shifted, &c) {
                    Ok(v) => Rational::integer(2) * v,
                    Err(Error::CurveInAugmentedLocus(_)) => Rational::zero(),
                    Err(e) => return Err(e),
                };
                for right in [false, true] {
                    match one_sided_derivative(f, x, &h, right) {
                        None => deriv.skipped += 1,
                        Some(v) => {
                            deriv.samples += 1;
                            if v != expected {
                                deriv.fail(format!(
                                    "D = {}, E = {}, t = {x}, {} derivative {v}, expected {expected}",
                                    label(&t),
                                    c.name,
                                    if right { "right" } else { "left" }
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(vec![volumes.finish(), deriv.finish()])
}

/// Whether `r(m) = values[m] − lead·m²` is affine on every residue class mod
/// `q`; `values` starts at `m = 0`.
pub fn residual_is_affine(values: &[u64], lead: &Rational, q: usize) -> bool {
    let r = |m: usize| Rational::integer(values[m] as i64) - lead * Rational::integer((m * m) as i64);
    (0..values.len().saturating_sub(2 * q)).all(|m| {
        r(m + 2 * q) - Rational::integer(2) * r(m + q) + r(m) == Rational::zero()
    })
}

/// `max |values[m] − lead·m²| / m` over `m ≥ 1`.
pub fn linear_residual_constant(values: &[u64], lead: &Rational) -> Rational {
    (1..values.len())
        .map(|m| {
            let r = Rational::integer(values[m] as i64) - lead * Rational::integer((m * m) as i64);
            r.abs() / Rational::integer(m as i64)
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

const MAX_PERIOD: u64 = 6;

fn growth(s: &ToricSurface) -> Result<Vec<CheckResult>> {
    let n = s.fan.len();
    let two = Rational::integer(2);
    let mut ehrhart = Check::new("ehrhart-residual");
    let mut open = Check::new("open-complement-growth");
    let mut kappa = Check::new("kappa-growth");
    let mut worst_c = Rational::zero();
    for t in divisor_grid(n, 0, 2) {
        let d = s.class_of(&t)?;
        let q = ehrhart_period(&s.fan, &t);
        let m_top = 20.max(3 * q as usize);
        let values: Vec<u64> = (0..=m_top as i64)
            .map(|m| count_h0(&s.fan, &t.scale(m)))
            .collect();
        let vol = zariski::volume(&s.model, &d)?;

        kappa.samples += 1;
        if q > MAX_PERIOD {
            kappa.skipped += 1;
        } else {
            let observed = if values.iter().all(|&v| v == values[0]) {
                KappaSigma::Zero
            } else if residual_is_affine(&values, &Rational::zero(), q as usize) {
                KappaSigma::One
            } else {
                KappaSigma::Two
            };
            let ks = zariski::kappa_sigma(&s.model, &d)?;
            if observed != ks {
                kappa.fail(format!("T = {}: growth {observed}, kappa_sigma {ks}", label(&t)));
            }
        }

        if !vol.is_positive() {
            continue;
        }
        ehrhart.samples += 1;
        let lead = &vol / &two;
        if q > MAX_PERIOD {
            ehrhart.skipped += 1;
        } else if !residual_is_affine(&values, &lead, q as usize) {
            ehrhart.fail(format!("T = {}", label(&t)));
        }
        let c = linear_residual_constant(&values[..=20], &lead);
        if c > worst_c {
            worst_c = c;
        }

        for sub in boundary_subsets(n, 2) {
            let b = boundary(s, &sub)?;
            let e = ToricDivisor::reduced(n, &sub);
            let v = finiteness::classify_big(&s.model, &d, &b, finiteness::DEFAULT_A_MAX)?;
            let (Status::Finite, Some(a)) = (v.status, v.a_min_bplus) else {
                continue;
            };
            let g = finiteness::growth_estimate(&s.model, &d, &b, finiteness::DEFAULT_A_MAX)?;
            let ta = t.combine(1, &e, i64::from(a));
            let qa = ehrhart_period(&s.fan, &ta);
            open.samples += 1;
            let m_top = 20.max(3 * qa as usize);
            let on_u: Vec<u64> = (0..=m_top as i64)
                .map(|m| count_h0(&s.fan, &ta.scale(m)))
                .collect();
            // sections on U are already realized at pole order m·a
            for m in 1..=20i64 {
                let deeper = count_h0(&s.fan, &t.scale(m).combine(1, &e, m * i64::from(a) + 5));
                if deeper != on_u[m as usize] {
                    open.fail(format!("D = {}, E = {}, m = {m}: not stabilized at k = ma", label(&t), label(&e)));
                }
            }
            if qa > MAX_PERIOD {
                open.skipped += 1;
            } else if !residual_is_affine(&on_u, &g.leading, qa as usize) {
                open.fail(format!("D = {}, E = {}", label(&t), label(&e)));
            }
        }
    }
    ehrhart.note = Some(format!("fitted linear constant c = {worst_c}"));
    Ok(vec![ehrhart.finish(), open.finish(), kappa.finish()])
}

fn rr(s: &ToricSurface) -> Result<Vec<CheckResult>> {
    let n = s.fan.len();
    let mut bound = Check::new("riemann-roch-lower-bound");
    for t in divisor_grid(n, 0, 1) {
        let d = s.class_of(&t)?;
        for sub in boundary_subsets(n, n) {
            let b = boundary(s, &sub)?;
            let e = ToricDivisor::reduced(n, &sub);
            bound.samples += 1;
            for m in 0..=10u32 {
                for k in 0..=10u32 {
                    let lower = finiteness::rr_lower_bound(&s.model, &d, &b, m, k)?;
                    let h = count_h0(&s.fan, &t.scale(i64::from(m)).combine(1, &e, i64::from(k)));
                    if lower > Rational::integer(h as i64) {
                        bound.fail(format!(
                            "D = {}, E = {}, (m, k) = ({m}, {k}): bound {lower} > h0 {h}",
                            label(&t),
                            label(&e)
                        ));
                    }
                }
            }
        }
    }
    Ok(vec![bound.finish()])
}

fn scan(s: &ToricSurface) -> Result<Vec<CheckResult>> {
    let n = s.fan.len();
    let mut finite = Check::new("finite-verdicts-stabilize");
    let mut infinite = Check::new("infinite-verdicts-grow");
    let mut decided = Check::new("verdicts-decided");
    let mut monotone = Check::new("augmented-criterion-monotone");
    let mut bridge = Check::new("slope-bridge");
    let params = ScanParams::new(4);
    for t in divisor_grid(n, 0, 1) {
        let d = s.class_of(&t)?;
        let big = is_big(s, &d)?;
        for sub in boundary_subsets(n, 2) {
            let b = boundary(s, &sub)?;
            let e = ToricDivisor::reduced(n, &sub);
            let witness = format!("D = {}, E = {}", label(&t), label(&e));
            let v = if big {
                finiteness::classify_big(&s.model, &d, &b, finiteness::DEFAULT_A_MAX)?
            } else {
                finiteness::classify_pseff(&s.model, &d, &b, finiteness::DEFAULT_A_MAX)?
            };
            decided.samples += 1;
            if v.status == Status::Inconclusive {
                decided.fail(witness.clone());
                continue;
            }
            if let (Some(a), Some(ns)) = (v.a_min_bplus, v.a_min_nsigma) {
                bridge.samples += 1;
                if ns > a + 1 {
                    bridge.fail(format!("{witness}: a_nsigma {ns} > a_bplus {a} + 1"));
                }
            }
            if let Some(a) = v.a_min_bplus {
                monotone.samples += 1;
                for a2 in a..a + 6 {
                    if finiteness::minimal_a_bplus(&s.model, &d.add_scaled(&Rational::integer(a2.into()), b.total()), &b, 0)? != Some(0) {
                        monotone.fail(format!("{witness}: criterion fails at a = {a2}"));
                    }
                }
            }
            let report = match h0_limit_scan(&s.fan, &t, &e, &params) {
                Ok(r) => r,
                Err(err @ Error::CapExceededInconclusive { .. }) => {
                    let c = if v.status == Status::Finite { &mut finite } else { &mut infinite };
                    c.samples += 1;
                    c.fail(format!("{witness}: {err}"));
                    continue;
                }
                Err(err) => return Err(err),
            };
            match v.status {
                Status::Finite => {
                    finite.samples += 1;
                    for row in &report.rows {
                        match (&row.outcome, v.a_min_bplus) {
                            (ScanOutcome::Stabilized { k, .. }, Some(a)) if *k > row.m * a => {
                                finite.fail(format!("{witness}: k({}) = {k} > m·a = {}", row.m, row.m * a))
                            }
                            (ScanOutcome::Stabilized { .. }, _) => {}
                            (ScanOutcome::Unbounded { .. }, _) => {
                                finite.fail(format!("{witness}: m = {} unbounded", row.m))
                            }
                        }
                    }
                }
                Status::Infinite => {
                    infinite.samples += 1;
                    if !report.any_unbounded() {
                        infinite.fail(witness);
                    }
                }
                Status::Inconclusive => unreachable!("handled above"),
            }
        }
    }
    Ok(vec![
        decided.finish(),
        finite.finish(),
        infinite.finish(),
        monotone.finish(),
        bridge.finish(),
    ])
}
