//! Closed-form parallel transport in the half-space model.
//!
//! For `m = (x, y)` and `m' = (x', y')` put `r = |y - y'|`,
//! `ρ = sqrt((x + x')² + r²)` and `R = (y - y')/r`. The tangent transport is
//! the rotation `τ(m, m')` in the plane spanned by `X` and `R`; its spin lift
//! is `U = (x + x')/ρ - (r/ρ) X R`. Both extend smoothly to boundary points
//! (`x = 0`), which transport is the only module to accept.

pub mod clifford;

use serde::{Deserialize, Serialize};

pub use clifford::{adjoint_action, CliffordElement};

use crate::moebius::HalfSpacePoint;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportPair {
    pub m: HalfSpacePoint,
    pub m_prime: HalfSpacePoint,
}

impl TransportPair {
    pub fn new(m: HalfSpacePoint, m_prime: HalfSpacePoint) -> Result<Self> {
        if m.dim() != m_prime.dim() {
            return Err(Error::InvalidInput("points of different dimension".into()));
        }
        if m.x < 0.0 || m_prime.x < 0.0 || !m.x.is_finite() || !m_prime.x.is_finite() {
            return Err(Error::InvalidInput("heights must be finite and nonnegative".into()));
        }
        Ok(Self { m, m_prime })
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn offset(&self) -> Vec<f64> {
        self.m.y.iter().zip(&self.m_prime.y).map(|(a, b)| a - b).collect()
    }

    pub fn r(&self) -> f64 {
        self.offset().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn rho(&self) -> f64 {
        (self.m.x + self.m_prime.x).hypot(self.r())
    }

    fn check_corner(&self) -> Result<f64> {
        let rho = self.rho();
        if rho == 0.0 {
            Err(Error::UndefinedAtCorner)
        } else {
            Ok(rho)
        }
    }
}

/// Rotation matrix `τ(m, m')` acting on coordinates `(X, e_1, …, e_d)`.
pub fn tau_matrix(p: &TransportPair) -> Result<Vec<Vec<f64>>> {
    let rho = p.check_corner()?;
    let d = p.dim();
    let s = p.m.x + p.m_prime.x;
    // normalise before squaring so tiny heights do not underflow
    let dy: Vec<f64> = p.offset().iter().map(|v| v / rho).collect();
    let sh = s / rho;
    let r2: f64 = dy.iter().map(|v| v * v).sum();
    let mut tau = vec![vec![0.0; d + 1]; d + 1];
    tau[0][0] = 1.0 - 2.0 * r2;
    for j in 0..d {
        tau[0][j + 1] = -2.0 * sh * dy[j];
        tau[j + 1][0] = 2.0 * sh * dy[j];
        for l in 0..d {
            tau[j + 1][l + 1] = if j == l { 1.0 } else { 0.0 } - 2.0 * dy[j] * dy[l];
        }
    }
    Ok(tau)
}

/// Spin lift `U(m, m') = (x + x')/ρ - (r/ρ) X R`; the scalar 1 when `r = 0`.
pub fn spinor_transport(p: &TransportPair) -> Result<CliffordElement> {
    let rho = p.check_corner()?;
    let n = p.dim() + 1;
    let r = p.r();
    if r == 0.0 {
        return Ok(CliffordElement::scalar(n, 1.0));
    }
    let mut direction = vec![0.0];
    direction.extend(p.offset().iter().map(|v| v / r));
    let x = CliffordElement::basis_vector(n, 0);
    let xr = &x * &CliffordElement::vector(&direction);
    let c = (p.m.x + p.m_prime.x) / rho;
    Ok(&CliffordElement::scalar(n, c) - &xr.scale(r / rho))
}

/// `U(m, m')` for `m' = (1, 0)` and the boundary point `m = (0, r ω)`.
/// Tends to `-X R` as `r → ∞`, with error below `2/r` for `r ≥ 2`.
pub fn boundary_limit_transport(omega: &[f64], r: f64) -> Result<CliffordElement> {
    let len = omega.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (len - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!("direction must be a unit vector, |ω| = {len}")));
    }
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
    }
    let m = HalfSpacePoint::new(0.0, omega.iter().map(|w| r * w).collect());
    let m_prime = HalfSpacePoint::origin(omega.len());
    spinor_transport(&TransportPair::new(m, m_prime)?)
}

/// `-X R` for the unit direction `ω`, the large-`r` limit above.
pub fn boundary_limit(omega: &[f64]) -> CliffordElement {
    let n = omega.len() + 1;
    let mut direction = vec![0.0];
    direction.extend_from_slice(omega);
    -&(&CliffordElement::basis_vector(n, 0) * &CliffordElement::vector(&direction))
}

/// Matrix of `π(u)` in the frame `(X, e_1, …, e_d)`, column `k` being `π(u) e_k`.
pub fn adjoint_matrix(u: &CliffordElement) -> Result<Vec<Vec<f64>>> {
    let n = u.generators;
    let mut m = vec![vec![0.0; n]; n];
    for k in 0..n {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        let col = adjoint_action(u, &e)?;
        for (row, v) in col.into_iter().enumerate() {
            m[row][k] = v;
        }
    }
    Ok(m)
}

pub fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().zip(b).flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).abs())).fold(0.0, f64::max)
}

pub fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    let mut c = vec![vec![0.0; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            for j in 0..m {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in (col + 1)..n {
            let (top, rest) = m.split_at_mut(row);
            let f = rest[0][col] / top[col][col];
            for (x, p) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * p;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;
    use proptest::prelude::*;

    fn pt(x: f64, y: &[f64]) -> HalfSpacePoint {
        HalfSpacePoint::new(x, y.to_vec())
    }

    fn pair(x: f64, y: &[f64], x2: f64, y2: &[f64]) -> TransportPair {
        TransportPair::new(pt(x, y), pt(x2, y2)).unwrap()
    }

    fn identity(n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_matrix(&pair(0.7, &[0.2, 0.3], 0.7, &[0.2, 0.3])).unwrap(), identity(3));
        let t = tau_matrix(&pair(1.0, &[1.0, 0.0], 1.0, &[0.0, 0.0])).unwrap();
        let want = vec![vec![0.6, -0.8, 0.0], vec![0.8, 0.6, 0.0], vec![0.0, 0.0, 1.0]];
        assert!(max_abs_diff(&t, &want) < 1e-15);
        assert_eq!(tau_matrix(&pair(1.0, &[0.0, 0.0], 3.0, &[0.0, 0.0])).unwrap(), identity(3));
        assert_eq!(tau_matrix(&pair(0.0, &[1.0, 0.0], 0.0, &[1.0, 0.0])), Err(Error::UndefinedAtCorner));
    }

    #[test]
    fn spinor_examples() {
        let same = pair(0.4, &[1.0, 2.0], 0.4, &[1.0, 2.0]);
        assert_eq!(spinor_transport(&same).unwrap(), CliffordElement::scalar(3, 1.0));
        let p = pair(1.0, &[1.0, 0.0], 1.0, &[0.0, 0.0]);
        let u = spinor_transport(&p).unwrap();
        let s5 = 5f64.sqrt();
        assert!((u.coeffs[0] - 2.0 / s5).abs() < 1e-15);
        // blade X e1 has bitmask 0b011
        assert!((u.coeffs[0b011] + 1.0 / s5).abs() < 1e-15);
        assert!((u.norm() - 1.0).abs() < 1e-15);
        let back = spinor_transport(&pair(1.0, &[0.0, 0.0], 1.0, &[1.0, 0.0])).unwrap();
        assert!((&u * &back).max_abs_diff(&CliffordElement::scalar(3, 1.0)) < 1e-15);
    }

    #[test]
    fn spin_cover_on_example() {
        let p = pair(1.0, &[1.0, 0.0], 1.0, &[0.0, 0.0]);
        let u = spinor_transport(&p).unwrap();
        let col0 = adjoint_action(&u, &[1.0, 0.0, 0.0]).unwrap();
        assert!((col0[0] - 0.6).abs() < 1e-15 && (col0[1] - 0.8).abs() < 1e-15 && col0[2].abs() < 1e-15);
    }

    #[test]
    fn planar_complex_form() {
        // transport to (1, 0) in the plane through both points is multiplication
        // by (-r + i(1+x)) / (r + i(1+x)) in the basis {X, R}
        for (x, y) in [(0.3, [0.8, -0.6]), (2.0, [0.1, 0.0]), (1e-6, [3.0, 4.0])] {
            let p = pair(x, &y, 1.0, &[0.0, 0.0]);
            let r = p.r();
            let z = C64::new(-r, 1.0 + x) / C64::new(r, 1.0 + x);
            let tau = tau_matrix(&p).unwrap();
            let rdir: Vec<f64> = y.iter().map(|v| v / r).collect();
            let r_comp: f64 = (0..2).map(|j| tau[j + 1][0] * rdir[j]).sum();
            assert!((z.re - tau[0][0]).abs() < 1e-14);
            assert!((z.im - r_comp).abs() < 1e-14);
        }
    }

    #[test]
    fn boundary_limit_examples() {
        let w = [1.0, 0.0];
        let u = boundary_limit_transport(&w, 1e6).unwrap();
        assert!(u.max_abs_diff(&boundary_limit(&w)) < 3e-6);
        let w = [0.6, 0.8];
        assert!((boundary_limit_transport(&w, 1.0).unwrap().norm() - 1.0).abs() < 1e-15);
        for r in [2.0, 10.0, 1e2, 1e4, 1e6] {
            let err = (&boundary_limit_transport(&w, r).unwrap() - &boundary_limit(&w)).norm();
            assert!(err < 2.0 / r, "r={r}: {err}");
        }
    }

    #[test]
    fn vertical_composition_is_trivial() {
        let a = pair(1.0, &[0.5, 0.5], 2.0, &[0.5, 0.5]);
        let b = pair(2.0, &[0.5, 0.5], 5.0, &[0.5, 0.5]);
        let c = pair(1.0, &[0.5, 0.5], 5.0, &[0.5, 0.5]);
        let ab = mat_mul(&tau_matrix(&a).unwrap(), &tau_matrix(&b).unwrap());
        assert_eq!(ab, tau_matrix(&c).unwrap());
    }

    #[test]
    fn composition_along_semicircle() {
        // geodesic: semicircle of radius 2 centred at y = (1, -1), in the
        // vertical plane through direction (0.6, 0.8)
        let on = |phi: f64| {
            let (c, dir, rad) = ([1.0, -1.0], [0.6, 0.8], 2.0);
            pt(rad * phi.sin(), &[c[0] + rad * phi.cos() * dir[0], c[1] + rad * phi.cos() * dir[1]])
        };
        for (p0, p1, p2) in [(0.3, 1.1, 2.5), (2.9, 1.7, 0.2), (0.5, 2.5, 1.5)] {
            let (m, m1, m2) = (on(p0), on(p1), on(p2));
            let lhs = tau_matrix(&TransportPair::new(m.clone(), m2.clone()).unwrap()).unwrap();
            let rhs = mat_mul(
                &tau_matrix(&TransportPair::new(m, m1.clone()).unwrap()).unwrap(),
                &tau_matrix(&TransportPair::new(m1, m2).unwrap()).unwrap(),
            );
            assert!(max_abs_diff(&lhs, &rhs) < 1e-10);
        }
    }

    fn arb_point() -> impl Strategy<Value = HalfSpacePoint> {
        (prop_oneof![1e-8f64..1e-6, 1e-3f64..5.0], -3.0f64..3.0, -3.0f64..3.0).prop_map(|(x, a, b)| pt(x, &[a, b]))
    }

    proptest! {
        #[test]
        fn tau_is_special_orthogonal(m in arb_point(), m2 in arb_point()) {
            let tau = tau_matrix(&TransportPair::new(m, m2).unwrap()).unwrap();
            prop_assert!(max_abs_diff(&mat_mul(&transpose(&tau), &tau), &identity(3)) < 1e-12);
            prop_assert!((determinant(&tau) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn spin_cover(m in arb_point(), m2 in arb_point()) {
            let p = TransportPair::new(m, m2).unwrap();
            let u = spinor_transport(&p).unwrap();
            prop_assert!(u.is_even());
            prop_assert!((u.norm() - 1.0).abs() < 1e-12);
            prop_assert!(max_abs_diff(&adjoint_matrix(&u).unwrap(), &tau_matrix(&p).unwrap()) < 1e-12);
        }

        #[test]
        fn reversal_inverts(m in arb_point(), m2 in arb_point()) {
            let u = spinor_transport(&TransportPair::new(m.clone(), m2.clone()).unwrap()).unwrap();
            let v = spinor_transport(&TransportPair::new(m2, m).unwrap()).unwrap();
            prop_assert!((&u * &v).max_abs_diff(&CliffordElement::scalar(3, 1.0)) < 1e-12);
        }

        #[test]
        fn equivariance_under_normalising_map(m in arb_point(), x2 in 0.1f64..4.0, a in -2.0f64..2.0, b in -2.0f64..2.0) {
            // A(x, y) = (x, y - y') / x' sends m' to (1, 0)
            let m2 = pt(x2, &[a, b]);
            let am = pt(m.x / x2, &[(m.y[0] - a) / x2, (m.y[1] - b) / x2]);
            let direct = tau_matrix(&TransportPair::new(m, m2).unwrap()).unwrap();
            let moved = tau_matrix(&TransportPair::new(am, HalfSpacePoint::origin(2)).unwrap()).unwrap();
            prop_assert!(max_abs_diff(&direct, &moved) < 1e-12);
        }

        #[test]
        fn higher_dimensional_spin_cover(v in proptest::collection::vec(-2.0f64..2.0, 8), x in 0.01f64..3.0, x2 in 0.01f64..3.0) {
            let p = TransportPair::new(pt(x, &v[..4]), pt(x2, &v[4..])).unwrap();
            let u = spinor_transport(&p).unwrap();
            prop_assert!(max_abs_diff(&adjoint_matrix(&u).unwrap(), &tau_matrix(&p).unwrap()) < 1e-12);
        }
    }
}
