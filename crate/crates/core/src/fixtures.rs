//! The four reference surfaces: P², the blow-up of P² at a point, P¹×P¹ and
//! the Hirzebruch surface F₂, with the named bases used throughout.

use crate::lattice::SurfaceModel;
use crate::toric::{build_fan, fan_to_surface_model, ToricFan, ToricSurface};

pub fn p2_fan() -> ToricFan {
    build_fan(&[[1, 0], [0, 1], [-1, -1]])
        .expect("P2 fan")
        .with_names(&["L", "M", "N"])
        .with_basis(&[0], &["L"])
}

/// Rays `f, e, g, l`: `e` the exceptional curve, `l ~ H`, `f ~ g ~ H − e`.
pub fn blp2_fan() -> ToricFan {
    build_fan(&[[1, 0], [1, 1], [0, 1], [-1, -1]])
        .expect("Bl_p P2 fan")
        .with_names(&["f", "e", "g", "l"])
        .with_basis(&[3, 1], &["H", "e"])
}

pub fn f0_fan() -> ToricFan {
    build_fan(&[[1, 0], [0, 1], [-1, 0], [0, -1]])
        .expect("F0 fan")
        .with_names(&["f1", "f2", "g1", "g2"])
        .with_basis(&[0, 1], &["f1", "f2"])
}

/// Rays `f, s, g, t`: `s` the (−2)-section, `t ~ s + 2f`.
pub fn f2_fan() -> ToricFan {
    build_fan(&[[1, 0], [0, 1], [-1, 2], [0, -1]])
        .expect("F2 fan")
        .with_names(&["f", "s", "g", "t"])
        .with_basis(&[1, 0], &["s", "f"])
}

fn surface(fan: ToricFan) -> ToricSurface {
    fan_to_surface_model(&fan).expect("fixture fan exports a model")
}

pub fn p2() -> ToricSurface {
    surface(p2_fan())
}

pub fn blp2() -> ToricSurface {
    surface(blp2_fan())
}

pub fn f0() -> ToricSurface {
    surface(f0_fan())
}

pub fn f2() -> ToricSurface {
    surface(f2_fan())
}

/// `(name, surface)` for every fixture.
pub fn all_named() -> Vec<(&'static str, ToricSurface)> {
    vec![("p2", p2()), ("blp2", blp2()), ("f0", f0()), ("f2", f2())]
}

pub fn all() -> Vec<ToricSurface> {
    all_named().into_iter().map(|(_, s)| s).collect()
}

pub fn by_name(name: &str) -> Option<ToricSurface> {
    all_named().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}

pub fn p2_model() -> SurfaceModel {
    p2().model
}

pub fn blp2_model() -> SurfaceModel {
    blp2().model
}

pub fn f0_model() -> SurfaceModel {
    f0().model
}

pub fn f2_model() -> SurfaceModel {
    f2().model
}

pub fn all_models() -> Vec<SurfaceModel> {
    all().into_iter().map(|s| s.model).collect()
}
