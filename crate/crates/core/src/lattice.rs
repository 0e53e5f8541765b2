//! Néron–Severi lattice of a surface: numerical classes, the intersection
//! pairing, model validation and cone queries against the declared curves.
//!
//! A [`SurfaceModel`] carries the generator axiom: its `curves` are assumed to
//! span the whole effective cone. Pseudo-effectivity and nefness are decided
//! relative to that list and nothing else.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Signature};
use crate::rational::Rational;

/// A numerical divisor class, as coordinates in the model's basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NSClass(Vec<Rational>);

impl NSClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        NSClass(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        NSClass(coords.iter().map(|&c| Rational::integer(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        NSClass(vec![Rational::zero(); rank])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, t: &Rational) -> NSClass {
        NSClass(self.0.iter().map(|c| c * t).collect())
    }

    /// `self + t·other`
    pub fn add_scaled(&self, t: &Rational, other: &NSClass) -> NSClass {
        assert_eq!(self.rank(), other.rank(), "class rank mismatch");
        NSClass(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + &(t * b))
                .collect(),
        )
    }
}

impl fmt::Debug for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add<&NSClass> for &NSClass {
    type Output = NSClass;
    fn add(self, rhs: &NSClass) -> NSClass {
        assert_eq!(self.rank(), rhs.rank(), "class rank mismatch");
        NSClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&NSClass> for &NSClass {
    type Output = NSClass;
    fn sub(self, rhs: &NSClass) -> NSClass {
        assert_eq!(self.rank(), rhs.rank(), "class rank mismatch");
        NSClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &NSClass {
    type Output = NSClass;
    fn neg(self) -> NSClass {
        NSClass(self.0.iter().map(|a| -a).collect())
    }
}

/// A named irreducible curve whose class is one of the effective-cone
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveGenerator {
    pub name: String,
    #[serde(rename = "coords")]
    pub cls: NSClass,
}

/// Nonnegative combination of generator curves reconstructing a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeCertificate {
    pub terms: Vec<CertificateTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateTerm {
    pub curve: String,
    pub coefficient: Rational,
}

impl ConeCertificate {
    pub fn coefficient(&self, curve: &str) -> Rational {
        self.terms
            .iter()
            .find(|t| t.curve == curve)
            .map_or_else(Rational::zero, |t| t.coefficient.clone())
    }

    /// Weighted sum of the certificate's curves in `model`.
    pub fn reconstruct(&self, model: &SurfaceModel) -> Result<NSClass> {
        let mut acc = NSClass::zero(model.rank());
        for t in &self.terms {
            let c = model.curve(&t.curve)?;
            acc = acc.add_scaled(&t.coefficient, &c.cls);
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub signature: Signature,
    pub failures: Vec<String>,
}

/// Intersection-theoretic model of a smooth projective surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    basis: Vec<String>,
    gram: Vec<Vec<Rational>>,
    canonical: NSClass,
    chi: i64,
    pg: u64,
    curves: Vec<CurveGenerator>,
    kodaira_equals_numerical: bool,
    generators_complete: bool,
    ample: Option<NSClass>,
    self_intersection_floor: Option<i64>,
}

/// On-disk form of a [`SurfaceModel`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<Rational>>,
    pub canonical: NSClass,
    pub chi: i64,
    pub pg: u64,
    pub curves: Vec<CurveGenerator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ample: Option<NSClass>,
    pub kodaira_equals_numerical: bool,
    /// Declares that `curves` generate the effective cone.
    #[serde(default = "default_true")]
    pub generators_complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_intersection_floor: Option<i64>,
}

fn default_true() -> bool {
    true
}

/// Builder-style inputs for [`SurfaceModel::new`].
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<Rational>>,
    pub canonical: NSClass,
    pub chi: i64,
    pub pg: u64,
    pub curves: Vec<CurveGenerator>,
    pub kodaira_equals_numerical: bool,
    pub ample: Option<NSClass>,
}

impl SurfaceModel {
    /// Structural checks only (shapes, names). Call [`SurfaceModel::validate`]
    /// for the Hodge-index and positivity checks.
    pub fn new(spec: ModelSpec) -> Result<Self> {
        Self::from_file(ModelFile {
            basis: spec.basis,
            gram: spec.gram,
            canonical: spec.canonical,
            chi: spec.chi,
            pg: spec.pg,
            curves: spec.curves,
            ample: spec.ample,
            kodaira_equals_numerical: spec.kodaira_equals_numerical,
            generators_complete: true,
            self_intersection_floor: None,
        })
    }

    pub fn from_file(f: ModelFile) -> Result<Self> {
        let rank = f.basis.len();
        if rank == 0 {
            return Err(Error::InvalidModel("empty basis".into()));
        }
        if f.gram.len() != rank || f.gram.iter().any(|r| r.len() != rank) {
            return Err(Error::InvalidModel(format!(
                "gram must be {rank}x{rank}"
            )));
        }
        let check = |c: &NSClass, what: &str| {
            if c.rank() == rank {
                Ok(())
            } else {
                Err(Error::InvalidModel(format!(
                    "{what} has {} coordinates, expected {rank}",
                    c.rank()
                )))
            }
        };
        check(&f.canonical, "canonical")?;
        if let Some(a) = &f.ample {
            check(a, "ample")?;
        }
        for (i, c) in f.curves.iter().enumerate() {
            check(&c.cls, &format!("curve {}", c.name))?;
            if f.curves[..i].iter().any(|o| o.name == c.name) {
                return Err(Error::InvalidModel(format!(
                    "duplicate curve name {}",
                    c.name
                )));
            }
        }
        Ok(SurfaceModel {
            basis: f.basis,
            gram: f.gram,
            canonical: f.canonical,
            chi: f.chi,
            pg: f.pg,
            curves: f.curves,
            kodaira_equals_numerical: f.kodaira_equals_numerical,
            generators_complete: f.generators_complete,
            ample: f.ample,
            self_intersection_floor: f.self_intersection_floor,
        })
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            basis: self.basis.clone(),
            gram: self.gram.clone(),
            canonical: self.canonical.clone(),
            chi: self.chi,
            pg: self.pg,
            curves: self.curves.clone(),
            ample: self.ample.clone(),
            kodaira_equals_numerical: self.kodaira_equals_numerical,
            generators_complete: self.generators_complete,
            self_intersection_floor: self.self_intersection_floor,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: ModelFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serializes")
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn canonical(&self) -> &NSClass {
        &self.canonical
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn pg(&self) -> u64 {
        self.pg
    }

    pub fn curves(&self) -> &[CurveGenerator] {
        &self.curves
    }

    pub fn ample(&self) -> Option<&NSClass> {
        self.ample.as_ref()
    }

    pub fn kodaira_equals_numerical(&self) -> bool {
        self.kodaira_equals_numerical
    }

    pub fn with_ample(mut self, ample: NSClass) -> Self {
        self.ample = Some(ample);
        self
    }

    pub fn curve(&self, name: &str) -> Result<&CurveGenerator> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn curve_index(&self, name: &str) -> Result<usize> {
        self.curves
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    /// Checks that a class has the right number of coordinates.
    pub fn check_class(&self, c: &NSClass) -> Result<()> {
        if c.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: c.rank(),
            })
        }
    }

    pub fn class(&self, coords: Vec<Rational>) -> Result<NSClass> {
        let c = NSClass::new(coords);
        self.check_class(&c)?;
        Ok(c)
    }

    /// The intersection pairing `aᵀ·G·b`.
    pub fn pair(&self, a: &NSClass, b: &NSClass) -> Result<Rational> {
        self.check_class(a)?;
        self.check_class(b)?;
        Ok(self.pair_unchecked(a, b))
    }

    pub(crate) fn pair_unchecked(&self, a: &NSClass, b: &NSClass) -> Rational {
        linalg::dot(a.coords(), &linalg::mat_vec(&self.gram, b.coords()))
    }

    pub fn self_intersection(&self, a: &NSClass) -> Result<Rational> {
        self.pair(a, a)
    }

    /// Gram matrix of a list of curves.
    pub fn curve_gram(&self, curves: &[&CurveGenerator]) -> Vec<Vec<Rational>> {
        curves
            .iter()
            .map(|a| {
                curves
                    .iter()
                    .map(|b| self.pair_unchecked(&a.cls, &b.cls))
                    .collect()
            })
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let signature = linalg::signature(&self.gram);
        let mut failures = Vec::new();
        let n = self.rank();
        for i in 0..n {
            for j in 0..i {
                if self.gram[i][j] != self.gram[j][i] {
                    failures.push(format!("gram is not symmetric at ({i}, {j})"));
                }
            }
        }
        if signature.zero > 0 {
            failures.push(format!(
                "intersection form is degenerate (radical of dimension {})",
                signature.zero
            ));
        }
        if signature.positive != 1 || signature.negative != n - 1 {
            failures.push(format!(
                "signature ({}, {}) violates the Hodge index theorem, expected (1, {})",
                signature.positive,
                signature.negative,
                n - 1
            ));
        }
        if !self.generators_complete {
            failures.push("curves are not declared to generate the effective cone".into());
        }
        for (i, c) in self.curves.iter().enumerate() {
            if c.cls.is_zero() {
                failures.push(format!("curve {} has zero class", c.name));
            }
            if let Some(floor) = self.self_intersection_floor {
                let sq = self.pair_unchecked(&c.cls, &c.cls);
                if sq < Rational::integer(floor) {
                    failures.push(format!(
                        "curve {} has self-intersection {sq} below the floor {floor}",
                        c.name
                    ));
                }
            }
            if self.curves[..i].iter().any(|o| o.name == c.name) {
                failures.push(format!("duplicate curve name {}", c.name));
            }
        }
        if let Some(a) = &self.ample {
            if !self.pair_unchecked(a, a).is_positive() {
                failures.push("ample class has nonpositive self-intersection".into());
            }
            for c in &self.curves {
                if !self.pair_unchecked(a, &c.cls).is_positive() {
                    failures.push(format!("ample class is not positive on curve {}", c.name));
                }
            }
        }
        ValidationReport {
            passed: failures.is_empty(),
            signature,
            failures,
        }
    }

    /// Exact cone membership: a nonnegative combination of the curves equal to
    /// `d`, or `None`.
    ///
    /// Enumerates bases of the span of the generators; any point of the cone
    /// is a nonnegative combination of linearly independent generators, and an
    /// independent set extends to a basis with zero coefficients.
    pub fn is_pseudo_effective(&self, d: &NSClass) -> Result<Option<ConeCertificate>> {
        self.check_class(d)?;
        if d.is_zero() {
            return Ok(Some(ConeCertificate { terms: Vec::new() }));
        }
        let gens: Vec<&[Rational]> = self.curves.iter().map(|c| c.cls.coords()).collect();
        let rows: Vec<Vec<Rational>> = gens.iter().map(|g| g.to_vec()).collect();
        let r = linalg::rank(&rows);
        if r == 0 {
            return Ok(None);
        }
        let mut subset: Vec<usize> = (0..r).collect();
        loop {
            if let Some(lambda) = self.solve_in_span(&subset, d) {
                if lambda.iter().all(|l| !l.is_negative()) {
                    let terms = subset
                        .iter()
                        .zip(lambda)
                        .filter(|(_, l)| !l.is_zero())
                        .map(|(&i, l)| CertificateTerm {
                            curve: self.curves[i].name.clone(),
                            coefficient: l,
                        })
                        .collect();
                    return Ok(Some(ConeCertificate { terms }));
                }
            }
            if !next_combination(&mut subset, gens.len()) {
                return Ok(None);
            }
        }
    }

    /// Coefficients of `d` in the curves indexed by `subset` when those curves
    /// are independent and `d` lies in their span.
    fn solve_in_span(&self, subset: &[usize], d: &NSClass) -> Option<Vec<Rational>> {
        let cols: Vec<&[Rational]> = subset.iter().map(|&i| self.curves[i].cls.coords()).collect();
        // Normal equations MᵀM λ = Mᵀd are exact and uniquely solvable iff the
        // columns are independent; membership is then checked by reconstruction.
        let mtm: Vec<Vec<Rational>> = cols
            .iter()
            .map(|a| cols.iter().map(|b| linalg::dot(a, b)).collect())
            .collect();
        let mtd: Vec<Rational> = cols.iter().map(|a| linalg::dot(a, d.coords())).collect();
        let lambda = linalg::solve(&mtm, &mtd)?;
        let mut acc = vec![Rational::zero(); self.rank()];
        for (col, l) in cols.iter().zip(&lambda) {
            for (a, c) in acc.iter_mut().zip(col.iter()) {
                *a += &(l * c);
            }
        }
        (acc.as_slice() == d.coords()).then_some(lambda)
    }

    /// First generator with negative intersection against `d`.
    pub fn nef_violation(&self, d: &NSClass) -> Result<Option<&CurveGenerator>> {
        self.check_class(d)?;
        Ok(self
            .curves
            .iter()
            .find(|c| self.pair_unchecked(d, &c.cls).is_negative()))
    }

    pub fn is_nef(&self, d: &NSClass) -> Result<bool> {
        Ok(self.nef_violation(d)?.is_none())
    }

    /// Extremal rays of the nef cone `{x : x·C ≥ 0 for all curves C}`, as
    /// primitive integral classes.
    pub fn nef_cone_rays(&self) -> Vec<NSClass> {
        let n = self.rank();
        let normals: Vec<Vec<Rational>> = self
            .curves
            .iter()
            .map(|c| linalg::mat_vec(&self.gram, c.cls.coords()))
            .collect();
        let mut rays: Vec<NSClass> = Vec::new();
        let mut push = |v: Vec<Rational>| {
            let v = NSClass::new(linalg::primitive(&v));
            if !v.is_zero() && !rays.contains(&v) {
                rays.push(v);
            }
        };
        let feasible = |v: &[Rational]| normals.iter().all(|h| !linalg::dot(h, v).is_negative());
        let k = n - 1;
        if normals.len() < k {
            return Vec::new();
        }
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
            let ker = linalg::kernel(&rows, n);
            if ker.len() == 1 {
                let v = ker.into_iter().next().expect("one kernel vector");
                let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
                if feasible(&v) {
                    push(v);
                } else if feasible(&neg) {
                    push(neg);
                }
            }
            if k == 0 || !next_combination(&mut subset, normals.len()) {
                break;
            }
        }
        rays
    }

    /// An ample class: the primitive sum of the nef cone's extremal rays, if
    /// that sum is strictly positive on every curve and has positive square.
    pub fn find_ample(&self) -> Option<NSClass> {
        let rays = self.nef_cone_rays();
        let first = rays.first()?;
        let sum = rays[1..].iter().fold(first.clone(), |acc, r| &acc + r);
        let a = NSClass::new(linalg::primitive(sum.coords()));
        let ok = self.pair_unchecked(&a, &a).is_positive()
            && self
                .curves
                .iter()
                .all(|c| self.pair_unchecked(&a, &c.cls).is_positive());
        ok.then_some(a)
    }
}

/// `Some(t)` with `t > 0` and `a = t·b`; both classes must be nonzero.
pub fn is_proportional(a: &NSClass, b: &NSClass) -> Option<Rational> {
    if a.rank() != b.rank() || a.is_zero() || b.is_zero() {
        return None;
    }
    let i = b.coords().iter().position(|x| !x.is_zero())?;
    let t = &a.coords()[i] / &b.coords()[i];
    if !t.is_positive() {
        return None;
    }
    (b.scale(&t) == *a).then_some(t)
}

/// Advances `subset` (strictly increasing indices < n) to the next
/// combination in lexicographic order.
pub(crate) fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
