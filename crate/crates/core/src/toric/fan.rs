use num::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A smooth complete fan in Z², rays in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricFan {
    rays: Vec<[i64; 2]>,
    names: Vec<String>,
    basis: Option<Vec<usize>>,
    basis_names: Option<Vec<String>>,
}

/// On-disk fan: `{"rays": [[x, y], ...]}` plus optional ray names and a choice
/// of basis rays for the exported model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    pub rays: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    /// Ray indices whose classes form the Néron–Severi basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
}

/// A torus-invariant divisor `Σ dᵢDᵢ`, one coefficient per ray.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ToricDivisor(pub Vec<i64>);

impl ToricDivisor {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// `a·self + b·other`
    pub fn combine(&self, a: i64, other: &ToricDivisor, b: i64) -> ToricDivisor {
        assert_eq!(self.0.len(), other.0.len(), "divisor length mismatch");
        ToricDivisor(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        )
    }

    pub fn scale(&self, m: i64) -> ToricDivisor {
        ToricDivisor(self.0.iter().map(|x| m * x).collect())
    }

    /// Unit divisor on a set of rays.
    pub fn reduced(rays: usize, support: &[usize]) -> ToricDivisor {
        let mut v = vec![0; rays];
        for &i in support {
            v[i] = 1;
        }
        ToricDivisor(v)
    }
}

pub(crate) fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Validates a ray list: primitive rays, every cyclically adjacent pair with
/// determinant exactly 1, winding once around the origin.
pub fn build_fan(rays: &[[i64; 2]]) -> Result<ToricFan> {
    let n = rays.len();
    if n < 3 {
        return Err(Error::NotComplete(format!(
            "{n} rays cannot cover the plane"
        )));
    }
    for (i, r) in rays.iter().enumerate() {
        if r[0].gcd(&r[1]) != 1 {
            return Err(Error::NonPrimitiveRay {
                index: i,
                x: r[0],
                y: r[1],
            });
        }
    }
    for i in 0..n {
        let j = (i + 1) % n;
        let d = det(rays[i], rays[j]);
        if d <= 0 {
            return Err(Error::NotComplete(format!(
                "rays {i} and {j} are not in counterclockwise order (determinant {d})"
            )));
        }
        if d != 1 {
            return Err(Error::NotSmooth {
                first: i,
                second: j,
                det: d,
            });
        }
    }
    let winding = (0..n)
        .filter(|&i| crosses_positive_axis(rays[i], rays[(i + 1) % n]))
        .count();
    if winding != 1 {
        return Err(Error::NotComplete(format!(
            "rays wind {winding} times around the origin"
        )));
    }
    Ok(ToricFan {
        rays: rays.to_vec(),
        names: (1..=n).map(|i| format!("D{i}")).collect(),
        basis: None,
        basis_names: None,
    })
}

/// Whether the counterclockwise arc `(a, b]` (shorter than π) contains the
/// direction (1, 0).
fn crosses_positive_axis(a: [i64; 2], b: [i64; 2]) -> bool {
    let d = [1, 0];
    let after_a = det(a, d) > 0;
    let before_b = det(d, b) > 0 || (det(d, b) == 0 && b[0] > 0);
    after_a && before_b
}

impl ToricFan {
    pub fn from_file(f: FanFile) -> Result<Self> {
        let mut fan = build_fan(&f.rays)?;
        let n = fan.rays.len();
        if let Some(names) = f.names {
            if names.len() != n {
                return Err(Error::Parse(format!(
                    "{} ray names for {n} rays",
                    names.len()
                )));
            }
            for (i, a) in names.iter().enumerate() {
                if names[..i].contains(a) {
                    return Err(Error::Parse(format!("duplicate ray name {a}")));
                }
            }
            fan.names = names;
        }
        if let Some(b) = &f.basis {
            if b.len() != n - 2 || b.iter().any(|&i| i >= n) {
                return Err(Error::Parse(format!(
                    "basis must list {} distinct ray indices below {n}",
                    n - 2
                )));
            }
            for (i, x) in b.iter().enumerate() {
                if b[..i].contains(x) {
                    return Err(Error::Parse("basis ray indices must be distinct".into()));
                }
            }
            let rest: Vec<usize> = (0..n).filter(|i| !b.contains(i)).collect();
            if det(fan.rays[rest[0]], fan.rays[rest[1]]) == 0 {
                return Err(Error::Parse(
                    "rays outside the basis must be linearly independent".into(),
                ));
            }
        }
        if let Some(names) = &f.basis_names {
            let expected = f.basis.as_ref().map_or(n - 2, Vec::len);
            if names.len() != expected {
                return Err(Error::Parse(format!(
                    "{} basis names for {expected} basis rays",
                    names.len()
                )));
            }
        }
        fan.basis = f.basis;
        fan.basis_names = f.basis_names;
        Ok(fan)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: FanFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(f)
    }

    pub fn to_file(&self) -> FanFile {
        FanFile {
            rays: self.rays.clone(),
            names: Some(self.names.clone()),
            basis: self.basis.clone(),
            basis_names: self.basis_names.clone(),
        }
    }

    pub fn with_names(mut self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.rays.len(), "one name per ray");
        self.names = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_basis(mut self, rays: &[usize], names: &[&str]) -> Self {
        let mut f = self.to_file();
        f.basis = Some(rays.to_vec());
        f.basis_names = Some(names.iter().map(|s| s.to_string()).collect());
        self = Self::from_file(f).expect("valid basis choice");
        self
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ray_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Basis rays: the declared ones, or every ray except the first
    /// unimodular pair.
    pub fn basis_rays(&self) -> Vec<usize> {
        if let Some(b) = &self.basis {
            return b.clone();
        }
        let n = self.rays.len();
        let (j, l) = (0..n)
            .flat_map(|j| (j + 1..n).map(move |l| (j, l)))
            .find(|&(j, l)| det(self.rays[j], self.rays[l]).abs() == 1)
            .expect("adjacent rays of a smooth fan are unimodular");
        (0..n).filter(|&i| i != j && i != l).collect()
    }

    pub fn basis_names(&self) -> Vec<String> {
        match &self.basis_names {
            Some(n) => n.clone(),
            None => self
                .basis_rays()
                .iter()
                .map(|&i| self.names[i].clone())
                .collect(),
        }
    }

    /// `cᵢ` with `vᵢ₋₁ + vᵢ₊₁ = cᵢ·vᵢ`, so that `Dᵢ² = −cᵢ`.
    pub fn self_intersection_index(&self, i: usize) -> i64 {
        let n = self.rays.len();
        let prev = self.rays[(i + n - 1) % n];
        let next = self.rays[(i + 1) % n];
        let c = det(prev, next);
        debug_assert_eq!(
            [prev[0] + next[0], prev[1] + next[1]],
            [c * self.rays[i][0], c * self.rays[i][1]]
        );
        c
    }

    /// Intersection number `Dᵢ·Dⱼ` of two invariant prime divisors.
    pub fn ray_intersection(&self, i: usize, j: usize) -> i64 {
        let n = self.rays.len();
        if i == j {
            -self.self_intersection_index(i)
        } else if (i + 1) % n == j || (j + 1) % n == i {
            1
        } else {
            0
        }
    }

    pub fn check_divisor(&self, d: &ToricDivisor) -> Result<()> {
        if d.0.len() == self.rays.len() {
            Ok(())
        } else {
            Err(Error::InvalidDivisor(format!(
                "{} coefficients for {} rays",
                d.0.len(),
                self.rays.len()
            )))
        }
    }
}
