//! Finite-dimensionality of `H⁰(U, O_U(mD|_U))` on the complement
//! `U = X ∖ E` of a reduced boundary divisor, and the growth of those spaces.
//!
//! For big `D` the answer is governed by the boundary's numerical dimension
//! and by the least pole slope `a` with `supp(E) ⊆ B₊(D + aE)`; for merely
//! pseudo-effective `D` the three-case criterion of [`classify_pseff`] applies.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, CurveGenerator, NSClass, SurfaceModel};
use crate::linalg;
use crate::rational::Rational;
use crate::zariski::{self, KappaSigma, ZariskiDecomposition};

/// Default upper end of the pole-slope scan.
pub const DEFAULT_A_MAX: u32 = 64;

/// A reduced divisor `E = Σ Eᵢ` built from distinct declared curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryDivisor {
    #[serde(serialize_with = "serialize_names")]
    components: Vec<CurveGenerator>,
    total: NSClass,
}

fn serialize_names<S: serde::Serializer>(
    c: &[CurveGenerator],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|c| c.name.as_str()))
}

impl BoundaryDivisor {
    pub fn new<S: AsRef<str>>(model: &SurfaceModel, names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidBoundary("no components".into()));
        }
        let mut components: Vec<CurveGenerator> = Vec::with_capacity(names.len());
        for n in names {
            let c = model.curve(n.as_ref())?;
            if components.iter().any(|o| o.name == c.name) {
                return Err(Error::InvalidBoundary(format!(
                    "component {} listed twice",
                    c.name
                )));
            }
            components.push(c.clone());
        }
        let total = components
            .iter()
            .fold(NSClass::zero(model.rank()), |acc, c| &acc + &c.cls);
        Ok(BoundaryDivisor { components, total })
    }

    pub fn components(&self) -> &[CurveGenerator] {
        &self.components
    }

    pub fn total(&self) -> &NSClass {
        &self.total
    }

    pub fn names(&self) -> Vec<&str> {
        self.components.iter().map(|c| c.name.as_str()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Finite,
    Infinite,
    Inconclusive,
}

/// The three sufficient conditions for finiteness with pseudo-effective `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Case {
    /// `E ≤ N_σ(D + aE)` for some `a ≥ 0`.
    I,
    /// `κ(D) = 0` and `P_σ(D) ≡ t·P_σ(E)` with `t > 0`.
    II,
    /// `D ≡ N_σ(D)` and `κ(E) = 0`.
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseResult {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseEvaluation {
    pub case: Case,
    pub result: CaseResult,
    pub note: String,
}

/// Per-slope diagnostics of the `a` scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeTrace {
    pub a: u32,
    /// `P_σ(D + aE)·Eᵢ` per component.
    pub positive_pairings: Vec<Rational>,
    /// Multiplicity of each component in `N_σ(D + aE)`.
    pub negative_coefficients: Vec<Rational>,
    pub in_augmented_locus: bool,
    pub below_negative_part: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessVerdict {
    pub status: Status,
    pub satisfied_cases: Vec<Case>,
    pub a_min_bplus: Option<u32>,
    pub a_min_nsigma: Option<u32>,
    /// Exact least real slope with `E ≤ N_σ(D + aE)`, when it could be
    /// located.
    pub nsigma_threshold: Option<Rational>,
    pub witness: String,
    pub a_max: u32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseEvaluation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<SlopeTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthEstimate {
    pub degree: u32,
    pub leading: Rational,
    pub slope_bound: u32,
}

fn require_big(model: &SurfaceModel, d: &NSClass) -> Result<ZariskiDecomposition> {
    model.check_class(d)?;
    let z = match zariski::decompose(model, d) {
        Ok(z) => z,
        Err(Error::NotPseudoEffective) => return Err(Error::NotBig),
        Err(e) => return Err(e),
    };
    if model.pair_unchecked(&z.positive, &z.positive).is_positive() {
        Ok(z)
    } else {
        Err(Error::NotBig)
    }
}

fn check_boundary(model: &SurfaceModel, e: &BoundaryDivisor) -> Result<()> {
    model.check_class(e.total())?;
    for c in e.components() {
        let declared = model.curve(&c.name)?;
        if declared.cls != c.cls {
            return Err(Error::InvalidBoundary(format!(
                "component {} does not match the model's curve",
                c.name
            )));
        }
    }
    Ok(())
}

fn slope_trace(model: &SurfaceModel, d: &NSClass, e: &BoundaryDivisor, a: u32) -> Result<SlopeTrace> {
    let shifted = d.add_scaled(&Rational::integer(a.into()), e.total());
    let z = zariski::decompose(model, &shifted)?;
    let positive_pairings: Vec<Rational> = e
        .components()
        .iter()
        .map(|c| model.pair_unchecked(&z.positive, &c.cls))
        .collect();
    let negative_coefficients: Vec<Rational> =
        e.components().iter().map(|c| z.coefficient(&c.name)).collect();
    let in_augmented_locus = positive_pairings.iter().all(Rational::is_zero);
    let below_negative_part = negative_coefficients
        .iter()
        .all(|c| *c >= Rational::one());
    Ok(SlopeTrace {
        a,
        positive_pairings,
        negative_coefficients,
        in_augmented_locus,
        below_negative_part,
    })
}

/// Least integer `a ∈ [0, a_max]` with `P_σ(D + aE)·Eᵢ = 0` for every
/// component.
pub fn minimal_a_bplus(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
    a_max: u32,
) -> Result<Option<u32>> {
    require_big(model, d)?;
    check_boundary(model, e)?;
    for a in 0..=a_max {
        if slope_trace(model, d, e, a)?.in_augmented_locus {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Least integer `a ∈ [0, a_max]` with every component of multiplicity at
/// least one in `N_σ(D + aE)`.
pub fn minimal_a_nsigma(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
    a_max: u32,
) -> Result<Option<u32>> {
    require_big(model, d)?;
    check_boundary(model, e)?;
    scan_nsigma(model, d, e, a_max)
}

fn scan_nsigma(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
    a_max: u32,
) -> Result<Option<u32>> {
    for a in 0..=a_max {
        if slope_trace(model, d, e, a)?.below_negative_part {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// The exact least real `a ≥ 0` with `E ≤ N_σ(D + aE)`, found by walking the
/// affine pieces of `a ↦ N_σ(D + aE)` down from an integer slope where the
/// condition is known to hold.
pub fn nsigma_threshold(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
    holds_at: u32,
) -> Result<Option<Rational>> {
    let mut a = Rational::integer(holds_at.into());
    for _ in 0..=model.curves().len() {
        let z = zariski::decompose(model, &d.add_scaled(&a, e.total()))?;
        let support = z.support();
        if support.is_empty() {
            return Ok(None);
        }
        // On this piece the coefficients are b(t) = G⁻¹((D + tE)·C).
        let gram = model.curve_gram(&support);
        let rhs_d: Vec<Rational> = support
            .iter()
            .map(|c| model.pair_unchecked(d, &c.cls))
            .collect();
        let rhs_e: Vec<Rational> = support
            .iter()
            .map(|c| model.pair_unchecked(e.total(), &c.cls))
            .collect();
        let (Some(b0), Some(b1)) = (linalg::solve(&gram, &rhs_d), linalg::solve(&gram, &rhs_e))
        else {
            return Ok(None);
        };
        let mut t = Rational::zero();
        for comp in e.components() {
            let Some(pos) = support.iter().position(|c| c.name == comp.name) else {
                return Ok(None);
            };
            if !b1[pos].is_positive() {
                continue;
            }
            let root = (Rational::one() - &b0[pos]) / &b1[pos];
            if root > t {
                t = root;
            }
        }
        if t >= a {
            return Ok(Some(a));
        }
        let zt = zariski::decompose(model, &d.add_scaled(&t, e.total()))?;
        let same_piece = zt.support().iter().map(|c| &c.name).eq(support.iter().map(|c| &c.name));
        let holds = e.components().iter().all(|c| zt.coefficient(&c.name) >= Rational::one());
        if same_piece && holds {
            return Ok(Some(t));
        }
        if !holds {
            return Ok(None);
        }
        a = t;
    }
    Ok(None)
}

/// Lemma-style filter: the first component (or the whole boundary) with
/// positive numerical dimension.
fn positive_kappa_witness(model: &SurfaceModel, e: &BoundaryDivisor) -> Result<Option<String>> {
    for c in e.components() {
        let k = zariski::kappa_sigma(model, &c.cls)?;
        if k != KappaSigma::Zero {
            return Ok(Some(format!("kappa_sigma({}) = {k}", c.name)));
        }
    }
    let k = zariski::kappa_sigma(model, e.total())?;
    if k != KappaSigma::Zero {
        return Ok(Some(format!("kappa_sigma({}) = {k}", e.names().join(" + "))));
    }
    Ok(None)
}

/// Decides finiteness for big `D`.
pub fn classify_big(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
    a_max: u32,
) -> Result<FinitenessVerdict> {
    require_big(model, d)?;
    check_boundary(model, e)?;
    if let Some(w) = positive_kappa_witness(model, e)? {
        return Ok(FinitenessVerdict {
            status: Status::Infinite,
            satisfied_cases: Vec::new(),
            a_min_bplus: None,
            a_min_nsigma: None,
            nsigma_threshold: None,
            witness: w,
            a_max,
            cases: Vec::new(),
            trace: Vec::new(),
        });
    }
    let mut trace = Vec::new();
    let mut a_bplus = None;
    let mut a_nsigma = None;
    for a in 0..=a_max {
        let t = slope_trace(model, d, e, a)?;
        if a_bplus.is_none() && t.in_augmented_locus {
            a_bplus = Some(a);
        }
        if a_nsigma.is_none() && t.below_negative_part {
            a_nsigma = Some(a);
        }
        trace.push(t);
        if a_bplus.is_some() && a_nsigma.is_some() {
            break;
        }
    }
    let threshold = match a_nsigma {
        Some(a) => nsigma_threshold(model, d, e, a)?,
        None => None,
    };
    let (status, witness) = match a_bplus {
        Some(a) => (
            Status::Finite,
            format!("supp(E) lies in the augmented base locus of D + {a}E"),
        ),
        None => (
            Status::Inconclusive,
            format!(
                "no slope a <= {a_max} puts supp(E) in the augmented base locus although \
                 kappa_sigma(E) = 0; suspect the generator list is incomplete"
            ),
        ),
    };
    Ok(FinitenessVerdict {
        status,
        satisfied_cases: if a_nsigma.is_some() { vec![Case::I] } else { Vec::new() },
        a_min_bplus: a_bplus,
        a_min_nsigma: a_nsigma,
        nsigma_threshold: threshold,
        witness,
        a_max,
        cases: Vec::new(),
        trace,
    })
}

/// Decides finiteness for pseudo-effective `D` by the three-case criterion.
///
/// `κ(D)` and `κ(E)` are only replaced by `κ_σ` when the model declares the
/// two to agree; otherwise a case needing them is reported as undetermined,
/// except where `0 ≤ κ ≤ κ_σ` already settles it.
pub fn classify_pseff(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
    a_max: u32,
) -> Result<FinitenessVerdict> {
    model.check_class(d)?;
    check_boundary(model, e)?;
    let zd = zariski::decompose(model, d)?;
    if model.pair_unchecked(&zd.positive, &zd.positive).is_positive() {
        return classify_big(model, d, e, a_max);
    }
    let ze = zariski::decompose(model, e.total())?;
    let kodaira_known = model.kodaira_equals_numerical();
    let kappa_e = zariski::kappa_sigma(model, e.total())?;

    // Case I
    let a_nsigma = scan_nsigma(model, d, e, a_max)?;
    let support: Vec<&CurveGenerator> = e.components().iter().collect();
    let case_i = match a_nsigma {
        Some(a) => CaseEvaluation {
            case: Case::I,
            result: CaseResult::Holds,
            note: format!("E <= N_sigma(D + {a}E)"),
        },
        None if !linalg::is_negative_definite(&model.curve_gram(&support)) => CaseEvaluation {
            case: Case::I,
            result: CaseResult::Fails,
            note: "components of E do not span a negative definite lattice, so E never lies \
                   below a negative part"
                .into(),
        },
        None => CaseEvaluation {
            case: Case::I,
            result: CaseResult::Undetermined,
            note: format!("no slope a <= {a_max} found"),
        },
    };

    // Case II
    let case_ii = match lattice::is_proportional(&zd.positive, &ze.positive) {
        None => CaseEvaluation {
            case: Case::II,
            result: CaseResult::Fails,
            note: "P_sigma(D) is not a positive multiple of P_sigma(E)".into(),
        },
        Some(t) if kodaira_known => CaseEvaluation {
            case: Case::II,
            result: CaseResult::Fails,
            note: format!(
                "P_sigma(D) = {t} P_sigma(E) but kappa(D) = kappa_sigma(D) > 0"
            ),
        },
        Some(t) => CaseEvaluation {
            case: Case::II,
            result: CaseResult::Undetermined,
            note: format!("P_sigma(D) = {t} P_sigma(E); kappa(D) is not numerically determined"),
        },
    };

    // Case III
    let case_iii = if !zd.positive.is_zero() {
        CaseEvaluation {
            case: Case::III,
            result: CaseResult::Fails,
            note: "P_sigma(D) is nonzero".into(),
        }
    } else if kappa_e == KappaSigma::Zero {
        CaseEvaluation {
            case: Case::III,
            result: CaseResult::Holds,
            note: "D = N_sigma(D) and kappa(E) = kappa_sigma(E) = 0".into(),
        }
    } else if kodaira_known {
        CaseEvaluation {
            case: Case::III,
            result: CaseResult::Fails,
            note: format!("kappa(E) = kappa_sigma(E) = {kappa_e}"),
        }
    } else {
        CaseEvaluation {
            case: Case::III,
            result: CaseResult::Undetermined,
            note: format!("kappa_sigma(E) = {kappa_e}; kappa(E) is not numerically determined"),
        }
    };

    let cases = vec![case_i, case_ii, case_iii];
    let satisfied: Vec<Case> = cases
        .iter()
        .filter(|c| c.result == CaseResult::Holds)
        .map(|c| c.case)
        .collect();
    let status = if !satisfied.is_empty() {
        Status::Finite
    } else if cases.iter().all(|c| c.result == CaseResult::Fails) {
        Status::Infinite
    } else {
        Status::Inconclusive
    };
    let witness = match status {
        Status::Finite => format!("case(s) {satisfied:?} hold"),
        Status::Infinite => {
            let rr = rr_infiniteness_test(model, d, e)?;
            match rr {
                Some(m0) => format!(
                    "all three cases fail; Riemann-Roch forces unbounded growth for m >= {m0}"
                ),
                None => "all three cases fail".into(),
            }
        }
        Status::Inconclusive => "some case could not be decided".into(),
    };
    let threshold = match a_nsigma {
        Some(a) => nsigma_threshold(model, d, e, a)?,
        None => None,
    };
    Ok(FinitenessVerdict {
        status,
        satisfied_cases: satisfied,
        a_min_bplus: None,
        a_min_nsigma: a_nsigma,
        nsigma_threshold: threshold,
        witness,
        a_max,
        cases,
        trace: Vec::new(),
    })
}

/// Riemann–Roch lower bound for `h⁰(mD + kE)`:
/// `k²E²/2 + k(mD·E − E·K/2) + (m²D² − mD·K)/2 + χ − p_g`.
pub fn rr_lower_bound(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
    m: u32,
    k: u32,
) -> Result<Rational> {
    model.check_class(d)?;
    let e_cls = e.total();
    let k_cls = model.canonical();
    let m = Rational::integer(m.into());
    let k = Rational::integer(k.into());
    let two = Rational::integer(2);
    let ee = model.pair(e_cls, e_cls)?;
    let de = model.pair(d, e_cls)?;
    let ek = model.pair(e_cls, k_cls)?;
    let dd = model.pair(d, d)?;
    let dk = model.pair(d, k_cls)?;
    let quadratic = &k * &k * &ee / &two;
    let linear = &k * (&m * &de - &ek / &two);
    let constant = (&m * &m * &dd - &m * &dk) / &two;
    Ok(quadratic + linear + constant + Rational::integer(model.chi()) - Rational::integer(model.pg() as i64))
}

/// Least `m₀` from which the Riemann–Roch bound grows without limit in `k`:
/// `1` when `E² > 0`; when `E² = 0` and `D·E ≥ 1`, the least `m₀ ≥ 1` with
/// `m₀·D·E − E·K/2 > 0`. `None` when neither hypothesis holds.
pub fn rr_infiniteness_test(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
) -> Result<Option<u32>> {
    model.check_class(d)?;
    let e_cls = e.total();
    let ee = model.pair(e_cls, e_cls)?;
    if ee.is_positive() {
        return Ok(Some(1));
    }
    if !ee.is_zero() {
        return Ok(None);
    }
    let de = model.pair(d, e_cls)?;
    if de < Rational::one() {
        return Ok(None);
    }
    let half_ek = model.pair(e_cls, model.canonical())? / Rational::integer(2);
    // m₀ > (E·K/2) / (D·E)
    let bound = &half_ek / &de;
    let m0: num::BigInt = bound.floor() + 1;
    let m0 = m0.max(num::BigInt::from(1));
    Ok(Some(u32::try_from(m0).expect("m0 fits in u32")))
}

/// Asymptotic size of the section spaces on `U` for big `D` with finite
/// verdict: `h⁰(U, mD|_U) = leading·m² + O(m)`.
pub fn growth_estimate(
    model: &SurfaceModel,
    d: &NSClass,
    e: &BoundaryDivisor,
    a_max: u32,
) -> Result<GrowthEstimate> {
    let verdict = classify_big(model, d, e, a_max)?;
    let (Status::Finite, Some(a)) = (verdict.status, verdict.a_min_bplus) else {
        return Err(Error::NotFinite);
    };
    let shifted = d.add_scaled(&Rational::integer(a.into()), e.total());
    let leading = zariski::volume(model, &shifted)? / Rational::integer(2);
    Ok(GrowthEstimate {
        degree: 2,
        leading,
        slope_bound: a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::q;

    fn cls(v: &[i64]) -> NSClass {
        NSClass::from_ints(v)
    }

    #[test]
    fn boundary_validation() {
        let m = fixtures::blp2_model();
        assert!(matches!(
            BoundaryDivisor::new::<&str>(&m, &[]),
            Err(Error::InvalidBoundary(_))
        ));
        assert!(matches!(
            BoundaryDivisor::new(&m, &["e", "e"]),
            Err(Error::InvalidBoundary(_))
        ));
        assert_eq!(
            BoundaryDivisor::new(&m, &["nope"]),
            Err(Error::UnknownCurve("nope".into()))
        );
        let e = BoundaryDivisor::new(&m, &["e", "f"]).unwrap();
        assert_eq!(e.total(), &cls(&[1, 0]));
    }

    #[test]
    fn minimal_slopes() {
        let blp2 = fixtures::blp2_model();
        let e = BoundaryDivisor::new(&blp2, &["e"]).unwrap();
        let h = cls(&[1, 0]);
        assert_eq!(minimal_a_bplus(&blp2, &h, &e, 64).unwrap(), Some(0));
        assert_eq!(minimal_a_nsigma(&blp2, &h, &e, 64).unwrap(), Some(1));
        let f = BoundaryDivisor::new(&blp2, &["f"]).unwrap();
        assert_eq!(minimal_a_nsigma(&blp2, &h, &f, 64).unwrap(), None);

        let f2 = fixtures::f2_model();
        let s = BoundaryDivisor::new(&f2, &["s"]).unwrap();
        assert_eq!(minimal_a_bplus(&f2, &cls(&[1, 1]), &s, 64).unwrap(), Some(0));
        assert_eq!(minimal_a_nsigma(&f2, &cls(&[1, 1]), &s, 64).unwrap(), Some(1));

        let f0 = fixtures::f0_model();
        let f1 = BoundaryDivisor::new(&f0, &["f1"]).unwrap();
        assert_eq!(minimal_a_bplus(&f0, &cls(&[1, 1]), &f1, 64).unwrap(), None);
        assert_eq!(
            minimal_a_bplus(&f0, &cls(&[1, 0]), &f1, 64),
            Err(Error::NotBig)
        );
    }

    #[test]
    fn nsigma_threshold_is_exact() {
        let f2 = fixtures::f2_model();
        let s = BoundaryDivisor::new(&f2, &["s"]).unwrap();
        let v = classify_big(&f2, &cls(&[1, 1]), &s, 64).unwrap();
        assert_eq!(v.nsigma_threshold, Some(q(1, 2)));
        let blp2 = fixtures::blp2_model();
        let e = BoundaryDivisor::new(&blp2, &["e"]).unwrap();
        let v = classify_big(&blp2, &cls(&[1, 0]), &e, 64).unwrap();
        assert_eq!(v.nsigma_threshold, Some(q(1, 1)));
    }

    #[test]
    fn classify_big_examples() {
        let blp2 = fixtures::blp2_model();
        let e = BoundaryDivisor::new(&blp2, &["e"]).unwrap();
        let v = classify_big(&blp2, &cls(&[1, 0]), &e, 64).unwrap();
        assert_eq!(v.status, Status::Finite);
        assert_eq!((v.a_min_bplus, v.a_min_nsigma), (Some(0), Some(1)));

        let f0 = fixtures::f0_model();
        let f1 = BoundaryDivisor::new(&f0, &["f1"]).unwrap();
        let v = classify_big(&f0, &cls(&[1, 1]), &f1, 64).unwrap();
        assert_eq!(v.status, Status::Infinite);
        assert!(v.witness.contains("kappa_sigma(f1) = 1"), "{}", v.witness);

        let p2 = fixtures::p2_model();
        let l = BoundaryDivisor::new(&p2, &["L"]).unwrap();
        let v = classify_big(&p2, &cls(&[1]), &l, 64).unwrap();
        assert_eq!(v.status, Status::Infinite);
        assert!(v.witness.contains("= 2"), "{}", v.witness);
    }

    #[test]
    fn classify_pseff_examples() {
        let blp2 = fixtures::blp2_model();
        let e = BoundaryDivisor::new(&blp2, &["e"]).unwrap();
        let v = classify_pseff(&blp2, &cls(&[0, 1]), &e, 64).unwrap();
        assert_eq!(v.status, Status::Finite);
        assert_eq!(v.satisfied_cases, vec![Case::I, Case::III]);

        let f0 = fixtures::f0_model();
        let f1 = BoundaryDivisor::new(&f0, &["f1"]).unwrap();
        let v = classify_pseff(&f0, &cls(&[1, 1]), &f1, 64).unwrap();
        assert_eq!(v.status, Status::Infinite);

        let f2b = BoundaryDivisor::new(&f0, &["f2"]).unwrap();
        let v = classify_pseff(&f0, &cls(&[1, 0]), &f2b, 64).unwrap();
        assert_eq!(v.status, Status::Infinite);
        assert!(v.cases.iter().all(|c| c.result == CaseResult::Fails));

        assert_eq!(
            classify_pseff(&f0, &cls(&[-1, 0]), &f1, 64),
            Err(Error::NotPseudoEffective)
        );
    }

    #[test]
    fn classify_pseff_without_kodaira_flag_is_cautious() {
        let mut f = fixtures::f0_model().to_file();
        f.kodaira_equals_numerical = false;
        let m = SurfaceModel::from_file(f).unwrap();
        let f1 = BoundaryDivisor::new(&m, &["f1"]).unwrap();
        // D = 0: case III needs kappa(f1) = 0, undecidable numerically
        let v = classify_pseff(&m, &cls(&[0, 0]), &f1, 8).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert_eq!(v.cases[2].result, CaseResult::Undetermined);
        // D = f1, E = f1: case II proportional with t = 1, kappa(D) unknown
        let v = classify_pseff(&m, &cls(&[1, 0]), &f1, 8).unwrap();
        assert_eq!(v.cases[1].result, CaseResult::Undetermined);
        assert_eq!(v.status, Status::Inconclusive);
        // kappa_sigma(E) = 0 settles case III even without the flag
        let mut f = fixtures::blp2_model().to_file();
        f.kodaira_equals_numerical = false;
        let m = SurfaceModel::from_file(f).unwrap();
        let e = BoundaryDivisor::new(&m, &["e"]).unwrap();
        let v = classify_pseff(&m, &cls(&[0, 1]), &e, 8).unwrap();
        assert_eq!(v.status, Status::Finite);
        assert!(v.satisfied_cases.contains(&Case::III));
    }

    #[test]
    fn rr_bound_examples() {
        let p2 = fixtures::p2_model();
        let l = BoundaryDivisor::new(&p2, &["L"]).unwrap();
        assert_eq!(rr_lower_bound(&p2, &cls(&[1]), &l, 1, 2).unwrap(), q(10, 1));
        assert_eq!(rr_lower_bound(&p2, &cls(&[1]), &l, 0, 0).unwrap(), q(1, 1));
        let f0 = fixtures::f0_model();
        let f1 = BoundaryDivisor::new(&f0, &["f1"]).unwrap();
        assert_eq!(rr_lower_bound(&f0, &cls(&[1, 1]), &f1, 1, 3).unwrap(), q(10, 1));
    }

    #[test]
    fn rr_infiniteness_examples() {
        let p2 = fixtures::p2_model();
        let l = BoundaryDivisor::new(&p2, &["L"]).unwrap();
        assert_eq!(rr_infiniteness_test(&p2, &cls(&[1]), &l).unwrap(), Some(1));
        let f0 = fixtures::f0_model();
        let f1 = BoundaryDivisor::new(&f0, &["f1"]).unwrap();
        assert_eq!(rr_infiniteness_test(&f0, &cls(&[1, 1]), &f1).unwrap(), Some(1));
        // D·E = 0 with E² = 0: inapplicable
        assert_eq!(rr_infiniteness_test(&f0, &cls(&[1, 0]), &f1).unwrap(), None);
        let blp2 = fixtures::blp2_model();
        let e = BoundaryDivisor::new(&blp2, &["e"]).unwrap();
        assert_eq!(rr_infiniteness_test(&blp2, &cls(&[1, 0]), &e).unwrap(), None);
    }

    #[test]
    fn growth_examples() {
        let blp2 = fixtures::blp2_model();
        let e = BoundaryDivisor::new(&blp2, &["e"]).unwrap();
        let g = growth_estimate(&blp2, &cls(&[1, 0]), &e, 64).unwrap();
        assert_eq!((g.degree, g.leading.clone(), g.slope_bound), (2, q(1, 2), 0));
        let g = growth_estimate(&blp2, &cls(&[2, 0]), &e, 64).unwrap();
        assert_eq!(g.leading, q(2, 1));
        let f2 = fixtures::f2_model();
        let s = BoundaryDivisor::new(&f2, &["s"]).unwrap();
        let g = growth_estimate(&f2, &cls(&[1, 1]), &s, 64).unwrap();
        assert_eq!((g.leading, g.slope_bound), (q(1, 4), 0));
        let f0 = fixtures::f0_model();
        let f1 = BoundaryDivisor::new(&f0, &["f1"]).unwrap();
        assert_eq!(growth_estimate(&f0, &cls(&[1, 1]), &f1, 64), Err(Error::NotFinite));
    }
}
