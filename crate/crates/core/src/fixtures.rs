//! Four-line test arrangements in the plane and their five-line extensions.
//!
//! Coordinates are one choice of basis; the relation sets they produce are
//! what the tests pin down.

use crate::arrangement::Arrangement;
use crate::exactmath::rat;

fn build(name: &str, data: &[(&[i64], i64)]) -> Arrangement {
    Arrangement::from_ints(2, data, Some(name)).expect("fixture is well formed")
}

/// Δ is the trapezoid with vertices (0,1), (0,2), (2,2), (2,-1).
pub fn fig2a() -> Arrangement {
    build(
        "FIG2A",
        &[(&[1, 1], 1), (&[1, 0], 0), (&[-1, 0], -2), (&[0, -1], -2)],
    )
}

/// FIG2A with the coorientation of the second line reversed.
pub fn fig2b() -> Arrangement {
    fig2a()
        .flip_coorientation(1)
        .expect("index in range")
        .with_name(Some("FIG2B".into()))
}

/// FIG2A with the diagonal line translated to `x + y = 3`.
pub fn fig2c() -> Arrangement {
    build(
        "FIG2C",
        &[(&[1, 1], 3), (&[1, 0], 0), (&[-1, 0], -2), (&[0, -1], -2)],
    )
}

/// FIG2A plus a fifth line parallel to the first.
pub fn fig2a5() -> Arrangement {
    fig2a()
        .with_hyperplane(vec![1, 1], rat(0))
        .expect("valid hyperplane")
        .with_name(Some("FIG2A5".into()))
}

/// FIG2C plus the same fifth line.
pub fn fig2c5() -> Arrangement {
    fig2c()
        .with_hyperplane(vec![1, 1], rat(0))
        .expect("valid hyperplane")
        .with_name(Some("FIG2C5".into()))
}

pub fn all() -> Vec<Arrangement> {
    vec![fig2a(), fig2b(), fig2c(), fig2a5(), fig2c5()]
}

/// Looks a fixture up by (case-insensitive) name.
pub fn by_name(name: &str) -> Option<Arrangement> {
    all()
        .into_iter()
        .find(|a| a.name().is_some_and(|n| n.eq_ignore_ascii_case(name)))
}
