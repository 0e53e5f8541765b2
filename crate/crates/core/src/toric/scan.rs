//! Direct-limit scans `k ↦ h⁰(mD + kE)` realizing sections on `U = X ∖ E`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finiteness::{self, BoundaryDivisor};
use crate::zariski;

use super::fan::{ToricDivisor, ToricFan};
use super::model::fan_to_surface_model;
use super::polygon::count_h0;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanParams {
    pub m_max: u32,
    /// Defaults to `16m + 64`.
    pub k_cap: Option<u32>,
    /// Defaults to `max(4, m)`.
    pub window: Option<u32>,
    /// Classifier slope `a`; a run equal to `h⁰(m(D + aE))` through the cap
    /// counts as stabilized regardless of the window.
    pub predicted_slope: Option<u32>,
}

impl ScanParams {
    pub fn new(m_max: u32) -> Self {
        ScanParams {
            m_max,
            k_cap: None,
            window: None,
            predicted_slope: None,
        }
    }

    pub fn k_cap_for(&self, m: u32) -> u32 {
        self.k_cap.unwrap_or(16 * m + 64)
    }

    pub fn window_for(&self, m: u32) -> u32 {
        self.window.unwrap_or(m.max(4))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GrowthEvidence {
    /// Strictly increasing across the last window at the cap.
    Empirical,
    /// Growth forced by a Riemann–Roch estimate.
    Certified(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ScanOutcome {
    Stabilized {
        k: u32,
        value: u64,
        matched_prediction: bool,
    },
    Unbounded {
        evidence: GrowthEvidence,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub m: u32,
    pub k_cap: u32,
    pub window: u32,
    pub values: Vec<u64>,
    pub outcome: ScanOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub d: ToricDivisor,
    pub e: ToricDivisor,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn row(&self, m: u32) -> Option<&ScanRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    pub fn all_stabilized(&self) -> bool {
        self.rows
            .iter()
            .all(|r| matches!(r.outcome, ScanOutcome::Stabilized { .. }))
    }

    pub fn any_unbounded(&self) -> bool {
        self.rows
            .iter()
            .any(|r| matches!(r.outcome, ScanOutcome::Unbounded { .. }))
    }
}

fn check_reduced(fan: &ToricFan, e: &ToricDivisor) -> Result<Vec<usize>> {
    fan.check_divisor(e)?;
    if e.coeffs().iter().any(|&c| c != 0 && c != 1) {
        return Err(Error::InvalidDivisor(
            "boundary must be a sum of distinct invariant prime divisors".into(),
        ));
    }
    let support: Vec<usize> = (0..fan.len()).filter(|&i| e.coeffs()[i] == 1).collect();
    if support.is_empty() {
        return Err(Error::InvalidDivisor("boundary is empty".into()));
    }
    Ok(support)
}

/// `m₀` from the Riemann–Roch test when `D` is pseudo-effective and the test
/// applies.
fn rr_threshold(fan: &ToricFan, d: &ToricDivisor, support: &[usize]) -> Result<Option<u32>> {
    let s = fan_to_surface_model(fan)?;
    let d_cls = s.class_of(d)?;
    if zariski::kappa_sigma(&s.model, &d_cls)? == zariski::KappaSigma::NotPseudoEffective {
        return Ok(None);
    }
    let names: Vec<&str> = support.iter().map(|&i| fan.names()[i].as_str()).collect();
    let b = BoundaryDivisor::new(&s.model, &names)?;
    finiteness::rr_infiniteness_test(&s.model, &d_cls, &b)
}

fn scan_row(
    fan: &ToricFan,
    d: &ToricDivisor,
    e: &ToricDivisor,
    m: u32,
    params: &ScanParams,
    rr: Option<u32>,
) -> Result<ScanRow> {
    let k_cap = params.k_cap_for(m);
    let window = params.window_for(m);
    let md = d.scale(i64::from(m));
    let values: Vec<u64> = (0..=k_cap)
        .map(|k| count_h0(fan, &md.combine(1, e, i64::from(k))))
        .collect();
    let last = *values.last().expect("k_cap + 1 values");
    let k0 = values.iter().rposition(|&v| v != last).map_or(0, |i| i + 1);
    let run = values.len() - k0;

    let predicted = params
        .predicted_slope
        .map(|a| count_h0(fan, &md.combine(1, e, i64::from(m) * i64::from(a))));
    let outcome = if predicted == Some(last) {
        ScanOutcome::Stabilized {
            k: k0 as u32,
            value: last,
            matched_prediction: true,
        }
    } else if run >= window as usize {
        ScanOutcome::Stabilized {
            k: k0 as u32,
            value: last,
            matched_prediction: false,
        }
    } else if window as usize <= k_cap as usize
        && values[values.len() - 1 - window as usize..]
            .windows(2)
            .all(|w| w[1] > w[0])
    {
        let evidence = match rr {
            Some(m0) if m >= m0 => GrowthEvidence::Certified(format!(
                "Riemann-Roch bound grows without limit in k for m >= {m0}"
            )),
            _ => GrowthEvidence::Empirical,
        };
        ScanOutcome::Unbounded { evidence }
    } else {
        return Err(Error::CapExceededInconclusive { m, k_cap });
    };
    Ok(ScanRow {
        m,
        k_cap,
        window,
        values,
        outcome,
    })
}

/// Tabulates `h⁰(mD + kE)` for `m = 1..=m_max`, `k = 0..=k_cap` and reads off
/// the stabilization index `k(m)` or an unbounded verdict.
pub fn h0_limit_scan(
    fan: &ToricFan,
    d: &ToricDivisor,
    e: &ToricDivisor,
    params: &ScanParams,
) -> Result<ScanReport> {
    fan.check_divisor(d)?;
    let support = check_reduced(fan, e)?;
    let rr = rr_threshold(fan, d, &support)?;
    let rows = (1..=params.m_max)
        .into_par_iter()
        .map(|m| scan_row(fan, d, e, m, params, rr))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        d: d.clone(),
        e: e.clone(),
        rows,
    })
}
