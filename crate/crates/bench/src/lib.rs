//! Fixed inputs shared by the benchmarks.

use oddzeta::{SchottkyPoint, C64};

/// Genus-two group with complex multipliers of modulus 33 and b₂ = 3 + 0.5i.
pub fn genus_two() -> SchottkyPoint {
    SchottkyPoint::new(vec![
        C64::from_polar(33.0, 0.4),
        C64::from_polar(33.0, -0.9),
        C64::new(3.0, 0.5),
    ])
    .expect("fixture is a Schottky point")
}

/// `(a, b, c, z)` spread over the interior disk, the unit-circle band and the far region.
pub fn hyp2f1_inputs() -> Vec<[C64; 4]> {
    let r = |x: f64| C64::new(x, 0.0);
    vec![
        [r(0.5), r(1.0), r(1.5), r(0.3)],
        [C64::new(0.5, 1.0), r(1.5), C64::new(2.0, 0.5), C64::from_polar(0.97, 1.0)],
        [r(1.0), r(1.0), r(2.0), r(-50.0)],
        [C64::new(1.0, 2.0), C64::new(1.0, -2.0), r(2.5), C64::new(0.9, 0.1)],
    ]
}
