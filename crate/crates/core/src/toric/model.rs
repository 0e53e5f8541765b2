use crate::error::Result;
use crate::lattice::{CurveGenerator, ModelSpec, NSClass, SurfaceModel};
use crate::rational::Rational;

use super::fan::{det, ToricDivisor, ToricFan};

/// A fan together with its exported surface model and the class of every
/// invariant prime divisor.
#[derive(Debug, Clone)]
pub struct ToricSurface {
    pub fan: ToricFan,
    pub model: SurfaceModel,
    ray_classes: Vec<NSClass>,
}

impl ToricSurface {
    pub fn ray_class(&self, i: usize) -> &NSClass {
        &self.ray_classes[i]
    }

    pub fn ray_classes(&self) -> &[NSClass] {
        &self.ray_classes
    }

    /// Numerical class of `Σ dᵢDᵢ`.
    pub fn class_of(&self, d: &ToricDivisor) -> Result<NSClass> {
        self.fan.check_divisor(d)?;
        Ok(d
            .coeffs()
            .iter()
            .zip(&self.ray_classes)
            .fold(NSClass::zero(self.model.rank()), |acc, (&c, cls)| {
                acc.add_scaled(&Rational::integer(c), cls)
            }))
    }

    pub fn curve_for_ray(&self, i: usize) -> &CurveGenerator {
        &self.model.curves()[i]
    }
}

/// Exports the intersection theory of a smooth complete toric surface.
///
/// The basis consists of `#rays − 2` ray classes; the two remaining rays are
/// eliminated with the linear relations `Σ⟨u, vᵢ⟩Dᵢ = 0`.
pub fn fan_to_surface_model(fan: &ToricFan) -> Result<ToricSurface> {
    let n = fan.len();
    let basis = fan.basis_rays();
    let rest: Vec<usize> = (0..n).filter(|i| !basis.contains(i)).collect();
    let (j, l) = (rest[0], rest[1]);
    let rays = fan.rays();
    let w = Rational::integer(det(rays[j], rays[l]));
    let rank = basis.len();

    let mut ray_classes = vec![NSClass::zero(rank); n];
    for (pos, &i) in basis.iter().enumerate() {
        let mut v = vec![Rational::zero(); rank];
        v[pos] = Rational::one();
        ray_classes[i] = NSClass::new(v);
    }
    // Σ vᵢDᵢ = 0 solved for (Dⱼ, Dₗ) via Cramer's rule on the columns vⱼ, vₗ.
    let mut dj = vec![Rational::zero(); rank];
    let mut dl = vec![Rational::zero(); rank];
    for (pos, &i) in basis.iter().enumerate() {
        dj[pos] = -(Rational::integer(det(rays[i], rays[l])) / &w);
        dl[pos] = -(Rational::integer(det(rays[j], rays[i])) / &w);
    }
    ray_classes[j] = NSClass::new(dj);
    ray_classes[l] = NSClass::new(dl);

    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&a| {
            basis
                .iter()
                .map(|&b| Rational::integer(fan.ray_intersection(a, b)))
                .collect()
        })
        .collect();
    let canonical = ray_classes
        .iter()
        .fold(NSClass::zero(rank), |acc, c| &acc - c);
    let curves = ray_classes
        .iter()
        .zip(fan.names())
        .map(|(cls, name)| CurveGenerator {
            name: name.clone(),
            cls: cls.clone(),
        })
        .collect();
    let model = SurfaceModel::new(ModelSpec {
        basis: fan.basis_names(),
        gram,
        canonical,
        chi: 1,
        pg: 0,
        curves,
        kodaira_equals_numerical: true,
        ample: None,
    })?;
    let model = match model.find_ample() {
        Some(a) => model.with_ample(a),
        None => model,
    };
    Ok(ToricSurface {
        fan: fan.clone(),
        model,
        ray_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::q;
    use crate::toric::build_fan;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::integer(x)).collect())
            .collect()
    }

    #[test]
    fn p2_model() {
        let s = fixtures::p2();
        assert_eq!(s.model.rank(), 1);
        assert_eq!(s.model.gram(), ints(&[&[1]]).as_slice());
        assert_eq!(s.model.canonical(), &NSClass::from_ints(&[-3]));
    }

    #[test]
    fn f2_model_in_section_fiber_basis() {
        let s = fixtures::f2();
        assert_eq!(s.model.basis(), ["s", "f"]);
        assert_eq!(s.model.gram(), ints(&[&[-2, 1], &[1, 0]]).as_slice());
        let k = s.model.canonical();
        assert_eq!(k, &NSClass::from_ints(&[-2, -4]));
        assert_eq!(s.model.pair(k, k).unwrap(), q(8, 1));
    }

    #[test]
    fn blp2_model_in_line_exceptional_basis() {
        let s = fixtures::blp2();
        assert_eq!(s.model.basis(), ["H", "e"]);
        assert_eq!(s.model.gram(), ints(&[&[1, 0], &[0, -1]]).as_slice());
        assert_eq!(s.model.canonical(), &NSClass::from_ints(&[-3, 1]));
        // D₄ ~ D₁ + D₂ and D₁ ~ D₃
        assert_eq!(s.ray_class(3), &(s.ray_class(0) + s.ray_class(1)));
        assert_eq!(s.ray_class(0), s.ray_class(2));
    }

    #[test]
    fn pairings_match_fan_arithmetic_for_default_basis() {
        let fans = [
            build_fan(&[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]).unwrap(),
            build_fan(&[[1, 0], [0, 1], [-1, 3], [0, -1]]).unwrap(),
        ];
        for fan in fans {
            let s = fan_to_surface_model(&fan).unwrap();
            assert!(s.model.validate().passed);
            for i in 0..fan.len() {
                for j in 0..fan.len() {
                    assert_eq!(
                        s.model.pair(s.ray_class(i), s.ray_class(j)).unwrap(),
                        Rational::integer(fan.ray_intersection(i, j)),
                        "D{i}·D{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn principal_divisors_are_numerically_trivial() {
        let s = fixtures::blp2();
        for u in [[1i64, 0], [0, 1], [2, -3]] {
            let d = ToricDivisor(s.fan.rays().iter().map(|v| u[0] * v[0] + u[1] * v[1]).collect());
            assert!(s.class_of(&d).unwrap().is_zero());
        }
    }
}
