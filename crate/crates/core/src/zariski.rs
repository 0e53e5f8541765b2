//! Zariski decomposition on a surface and the invariants read off from it:
//! volume, numerical dimension κ_σ, the divisorial parts of the diminished
//! and augmented base loci, and restricted volumes along curves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{CurveGenerator, NSClass, SurfaceModel};
use crate::linalg;
use crate::rational::Rational;

/// `D = P + N` with `P` nef, `N = Σ aᵢCᵢ` effective, `P·Cᵢ = 0` and the
/// support of `N` negative definite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZariskiDecomposition {
    pub positive: NSClass,
    pub negative: Vec<NegativeTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeTerm {
    #[serde(serialize_with = "serialize_curve_name")]
    pub curve: CurveGenerator,
    pub coefficient: Rational,
}

fn serialize_curve_name<S: serde::Serializer>(
    c: &CurveGenerator,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.name)
}

impl ZariskiDecomposition {
    /// The class of the negative part.
    pub fn negative_class(&self) -> NSClass {
        let rank = self.positive.rank();
        self.negative
            .iter()
            .fold(NSClass::zero(rank), |acc, t| acc.add_scaled(&t.coefficient, &t.curve.cls))
    }

    /// Multiplicity of a curve in the negative part (zero when absent).
    pub fn coefficient(&self, curve: &str) -> Rational {
        self.negative
            .iter()
            .find(|t| t.curve.name == curve)
            .map_or_else(Rational::zero, |t| t.coefficient.clone())
    }

    pub fn support(&self) -> Vec<&CurveGenerator> {
        self.negative.iter().map(|t| &t.curve).collect()
    }
}

/// Numerical dimension of a class on a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum KappaSigma {
    NotPseudoEffective,
    Zero,
    One,
    Two,
}

impl KappaSigma {
    pub fn value(self) -> Option<u8> {
        match self {
            KappaSigma::NotPseudoEffective => None,
            KappaSigma::Zero => Some(0),
            KappaSigma::One => Some(1),
            KappaSigma::Two => Some(2),
        }
    }
}

impl std::fmt::Display for KappaSigma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("-inf"),
        }
    }
}

/// Zariski decomposition of a pseudo-effective class.
///
/// Starts from the curves that `D` meets negatively, solves
/// `(D − Σ aᵢCᵢ)·Cⱼ = 0` on that set and enlarges it by any curve the
/// resulting positive part still meets negatively. The set only grows, so at
/// most one pass per generator is needed.
pub fn decompose(model: &SurfaceModel, d: &NSClass) -> Result<ZariskiDecomposition> {
    if model.is_pseudo_effective(d)?.is_none() {
        return Err(Error::NotPseudoEffective);
    }
    let curves = model.curves();
    let mut support: Vec<usize> = (0..curves.len())
        .filter(|&i| model.pair_unchecked(d, &curves[i].cls).is_negative())
        .collect();
    for _ in 0..=curves.len() {
        let (positive, coeffs) = solve_on_support(model, d, &support)?;
        let mut grew = false;
        for (i, c) in curves.iter().enumerate() {
            if !support.contains(&i) && model.pair_unchecked(&positive, &c.cls).is_negative() {
                support.push(i);
                grew = true;
            }
        }
        if !grew {
            let mut coeffs = coeffs;
            coeffs.sort_by_key(|(i, _)| *i);
            let negative = coeffs
                .into_iter()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, a)| NegativeTerm {
                    curve: curves[i].clone(),
                    coefficient: a,
                })
                .collect();
            return Ok(ZariskiDecomposition { positive, negative });
        }
    }
    Err(Error::ModelInconsistent(format!(
        "Zariski loop did not settle within {} rounds",
        curves.len() + 1
    )))
}

/// Solves for the negative part supported on `support` and returns the
/// positive part together with `(curve index, coefficient)` pairs.
fn solve_on_support(
    model: &SurfaceModel,
    d: &NSClass,
    support: &[usize],
) -> Result<(NSClass, Vec<(usize, Rational)>)> {
    if support.is_empty() {
        return Ok((d.clone(), Vec::new()));
    }
    let curves: Vec<&CurveGenerator> = support.iter().map(|&i| &model.curves()[i]).collect();
    let gram = model.curve_gram(&curves);
    if !linalg::is_negative_definite(&gram) {
        let names: Vec<&str> = curves.iter().map(|c| c.name.as_str()).collect();
        return Err(Error::ModelInconsistent(format!(
            "intersection matrix of {{{}}} is not negative definite",
            names.join(", ")
        )));
    }
    let rhs: Vec<Rational> = curves
        .iter()
        .map(|c| model.pair_unchecked(d, &c.cls))
        .collect();
    let coeffs = linalg::solve(&gram, &rhs).expect("negative definite matrix is invertible");
    if let Some((c, a)) = curves.iter().zip(&coeffs).find(|(_, a)| a.is_negative()) {
        return Err(Error::ModelInconsistent(format!(
            "negative coefficient {a} on curve {}",
            c.name
        )));
    }
    let positive = curves
        .iter()
        .zip(&coeffs)
        .fold(d.clone(), |acc, (c, a)| acc.add_scaled(&-a, &c.cls));
    Ok((positive, support.iter().copied().zip(coeffs).collect()))
}

/// `P_σ(D)²` for pseudo-effective `D`, zero otherwise.
pub fn volume(model: &SurfaceModel, d: &NSClass) -> Result<Rational> {
    match decompose(model, d) {
        Ok(z) => Ok(model.pair_unchecked(&z.positive, &z.positive)),
        Err(Error::NotPseudoEffective) => Ok(Rational::zero()),
        Err(e) => Err(e),
    }
}

pub fn kappa_sigma(model: &SurfaceModel, d: &NSClass) -> Result<KappaSigma> {
    let z = match decompose(model, d) {
        Ok(z) => z,
        Err(Error::NotPseudoEffective) => return Ok(KappaSigma::NotPseudoEffective),
        Err(e) => return Err(e),
    };
    Ok(kappa_of_positive(model, &z.positive))
}

pub(crate) fn kappa_of_positive(model: &SurfaceModel, p: &NSClass) -> KappaSigma {
    if p.is_zero() {
        KappaSigma::Zero
    } else if model.pair_unchecked(p, p).is_positive() {
        KappaSigma::Two
    } else {
        KappaSigma::One
    }
}

/// Divisorial part of the diminished base locus: the support of `N_σ(D)`.
pub fn diminished_divisorial(model: &SurfaceModel, d: &NSClass) -> Result<Vec<CurveGenerator>> {
    Ok(decompose(model, d)?
        .negative
        .into_iter()
        .map(|t| t.curve)
        .collect())
}

fn big_decomposition(model: &SurfaceModel, d: &NSClass) -> Result<ZariskiDecomposition> {
    let z = match decompose(model, d) {
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

/// Whether the curve lies in the augmented base locus of a big class, by the
/// criterion `P_σ(D)·C = 0`.
pub fn augmented_contains_curve(
    model: &SurfaceModel,
    d: &NSClass,
    c: &CurveGenerator,
) -> Result<bool> {
    model.check_class(&c.cls)?;
    let z = big_decomposition(model, d)?;
    Ok(model.pair_unchecked(&z.positive, &c.cls).is_zero())
}

/// Restricted volume `P_σ(D)·C` along a curve outside the augmented base
/// locus.
pub fn restricted_volume(model: &SurfaceModel, d: &NSClass, c: &CurveGenerator) -> Result<Rational> {
    model.check_class(&c.cls)?;
    let z = big_decomposition(model, d)?;
    let v = model.pair_unchecked(&z.positive, &c.cls);
    if v.is_zero() {
        return Err(Error::CurveInAugmentedLocus(c.name.clone()));
    }
    Ok(v)
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
    fn blp2_h_plus_multiple_of_e() {
        let m = fixtures::blp2_model();
        for a in 0..6 {
            let z = decompose(&m, &cls(&[1, a])).unwrap();
            assert_eq!(z.positive, cls(&[1, 0]));
            if a == 0 {
                assert!(z.negative.is_empty());
            } else {
                assert_eq!(z.negative.len(), 1);
                assert_eq!(z.coefficient("e"), Rational::integer(a));
            }
        }
    }

    #[test]
    fn f2_s_plus_f() {
        let m = fixtures::f2_model();
        let z = decompose(&m, &cls(&[1, 1])).unwrap();
        assert_eq!(z.positive, NSClass::new(vec![q(1, 2), q(1, 1)]));
        assert_eq!(z.coefficient("s"), q(1, 2));
        assert_eq!(z.negative.len(), 1);
    }

    #[test]
    fn nef_class_is_its_own_positive_part() {
        let m = fixtures::f0_model();
        let d = cls(&[2, 3]);
        let z = decompose(&m, &d).unwrap();
        assert_eq!(z.positive, d);
        assert!(z.negative.is_empty());
    }

    #[test]
    fn decompose_rejects_non_pseudo_effective() {
        let m = fixtures::blp2_model();
        assert_eq!(decompose(&m, &cls(&[-1, 0])), Err(Error::NotPseudoEffective));
        assert_eq!(decompose(&m, &cls(&[0, -1])), Err(Error::NotPseudoEffective));
    }

    #[test]
    fn volumes() {
        assert_eq!(volume(&fixtures::f2_model(), &cls(&[1, 1])).unwrap(), q(1, 2));
        assert_eq!(volume(&fixtures::blp2_model(), &cls(&[1, 0])).unwrap(), q(1, 1));
        assert_eq!(volume(&fixtures::blp2_model(), &cls(&[0, 0])).unwrap(), q(0, 1));
        assert_eq!(volume(&fixtures::blp2_model(), &cls(&[-1, 0])).unwrap(), q(0, 1));
    }

    #[test]
    fn kappa_sigma_examples() {
        let blp2 = fixtures::blp2_model();
        assert_eq!(kappa_sigma(&blp2, &cls(&[0, 1])).unwrap(), KappaSigma::Zero);
        assert_eq!(kappa_sigma(&blp2, &cls(&[1, 0])).unwrap(), KappaSigma::Two);
        assert_eq!(
            kappa_sigma(&blp2, &cls(&[0, -1])).unwrap(),
            KappaSigma::NotPseudoEffective
        );
        let f0 = fixtures::f0_model();
        assert_eq!(kappa_sigma(&f0, &cls(&[1, 0])).unwrap(), KappaSigma::One);
    }

    #[test]
    fn diminished_examples() {
        let f2 = fixtures::f2_model();
        let names: Vec<String> = diminished_divisorial(&f2, &cls(&[1, 1]))
            .unwrap()
            .into_iter()
            .map(|c| c.name)
            .collect();
        assert_eq!(names, ["s"]);
        let blp2 = fixtures::blp2_model();
        assert!(diminished_divisorial(&blp2, &cls(&[1, 0])).unwrap().is_empty());
        let names: Vec<String> = diminished_divisorial(&blp2, &cls(&[1, 1]))
            .unwrap()
            .into_iter()
            .map(|c| c.name)
            .collect();
        assert_eq!(names, ["e"]);
    }

    #[test]
    fn augmented_locus_examples() {
        let blp2 = fixtures::blp2_model();
        let h = cls(&[1, 0]);
        assert!(augmented_contains_curve(&blp2, &h, blp2.curve("e").unwrap()).unwrap());
        assert!(!augmented_contains_curve(&blp2, &h, blp2.curve("f").unwrap()).unwrap());
        let f2 = fixtures::f2_model();
        assert!(augmented_contains_curve(&f2, &cls(&[1, 1]), f2.curve("s").unwrap()).unwrap());
        let f0 = fixtures::f0_model();
        assert_eq!(
            augmented_contains_curve(&f0, &cls(&[1, 0]), f0.curve("f1").unwrap()),
            Err(Error::NotBig)
        );
    }

    #[test]
    fn restricted_volume_examples() {
        let blp2 = fixtures::blp2_model();
        let h = cls(&[1, 0]);
        assert_eq!(
            restricted_volume(&blp2, &h, blp2.curve("f").unwrap()).unwrap(),
            q(1, 1)
        );
        assert_eq!(
            restricted_volume(&blp2, &h, blp2.curve("e").unwrap()),
            Err(Error::CurveInAugmentedLocus("e".into()))
        );
        let f2 = fixtures::f2_model();
        let d = NSClass::new(vec![q(1, 4), q(1, 1)]);
        assert_eq!(
            restricted_volume(&f2, &d, f2.curve("s").unwrap()).unwrap(),
            q(1, 2)
        );
        let f0 = fixtures::f0_model();
        assert_eq!(
            restricted_volume(&f0, &cls(&[1, 1]), f0.curve("f1").unwrap()).unwrap(),
            q(1, 1)
        );
    }

    #[test]
    fn non_negative_definite_support_is_reported() {
        let mut f = fixtures::blp2_model().to_file();
        f.curves.push(crate::lattice::CurveGenerator {
            name: "bad".into(),
            cls: cls(&[1, -2]),
        });
        f.ample = None;
        let m = SurfaceModel::from_file(f).unwrap();
        // e² = -1, bad² = -3, e·bad = 2: determinant -1, not negative definite
        let e = m.curve_index("e").unwrap();
        let bad = m.curve_index("bad").unwrap();
        let err = solve_on_support(&m, &cls(&[1, 1]), &[e, bad]).unwrap_err();
        assert!(matches!(err, Error::ModelInconsistent(_)), "{err:?}");
    }
}
