//! Inputs shared by the benchmarks.

use zariski_core::fixtures;
use zariski_core::{NSClass, SurfaceModel, ToricDivisor, ToricSurface};

/// A model with `classes` pseudo-effective samples from its effective grid.
pub fn decomposition_inputs(surface: &ToricSurface, hi: i64) -> (SurfaceModel, Vec<NSClass>) {
    let classes = zariski_core::verify::divisor_grid(surface.fan.len(), 0, hi)
        .iter()
        .map(|t| surface.class_of(t).expect("grid matches fan"))
        .collect();
    (surface.model.clone(), classes)
}

/// `m·T` for a big divisor on F₂ whose polygon has a half-integral vertex.
pub fn f2_polygon(m: i64) -> (ToricSurface, ToricDivisor) {
    let s = fixtures::f2();
    (s, ToricDivisor(vec![m, m, 0, 0]))
}
