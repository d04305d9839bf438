//! The model spaces 𝕄_c^{m,k} = ℍ_c^{k+1} × S^{m−k−1}.
//!
//! The hyperbolic factor is rescaled to scalar curvature −c²k(k+1) (Euclidean
//! at c = 0); the sphere factor is round with radius one. The predicates here
//! are closed-form conditions on (m, k, c); no fields are constructed.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constants::{sphere_volume, yamabe_sphere};
use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;

/// Absolute tolerance for the cap-volume quadrature.
pub const CAP_QUADRATURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpaceParams {
    m: u32,
    k: u32,
    c: f64,
}

impl ModelSpaceParams {
    pub fn new(m: u32, k: u32, c: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid("model space", format!("m = {m} < 2")));
        }
        if k > m - 1 {
            return Err(Error::invalid(
                "model space",
                format!("k = {k} exceeds m - 1 = {}", m - 1),
            ));
        }
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::invalid(
                "model space",
                format!("c = {c} not in [0, 1]"),
            ));
        }
        Ok(ModelSpaceParams { m, k, c })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Dimension of the sphere factor, m − k − 1.
    pub fn sphere_dim(&self) -> u32 {
        self.m - self.k - 1
    }
}

impl fmt::Display for ModelSpaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{}^({},{})", self.c, self.m, self.k)
    }
}

/// A geodesic ball B_r in the round Sᵐ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapParams {
    m: u32,
    r: f64,
}

impl CapParams {
    pub fn new(m: u32, r: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid("spherical cap", format!("m = {m} < 2")));
        }
        if !(r > 0.0 && r <= std::f64::consts::PI) {
            return Err(Error::invalid(
                "spherical cap",
                format!("radius {r} not in (0, pi]"),
            ));
        }
        Ok(CapParams { m, r })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// Warping function of ℍ_c: sinh(cr)/c, or r on the Euclidean branch.
pub fn sinh_c(c: f64, r: f64) -> f64 {
    if c == 0.0 {
        r
    } else {
        (c * r).sinh() / c
    }
}

/// Scalar curvature of g_c: −c²k(k+1) from ℍ_c^{k+1} plus (m−k−1)(m−k−2) from the sphere.
pub fn scalar_curvature(p: &ModelSpaceParams) -> f64 {
    let k = f64::from(p.k);
    let n = f64::from(p.sphere_dim());
    -p.c * p.c * k * (k + 1.0) + n * (n - 1.0)
}

/// Integrability exponent s ∈ [1, ∞].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LsExponent {
    Finite(f64),
    Infinity,
}

impl LsExponent {
    fn reciprocal_gap(self) -> f64 {
        match self {
            LsExponent::Finite(s) => (1.0 / s - 0.5).abs(),
            LsExponent::Infinity => 0.5,
        }
    }
}

/// Sufficient condition for the Dirac operator on 𝕄_c^{m,k} to be invertible
/// on Lˢ: (m−k−1)/2 > c·k·|1/s − 1/2|.
///
/// `false` only means the criterion does not apply; it is not a proof of
/// non-invertibility.
pub fn ls_invertible(p: &ModelSpaceParams, s: LsExponent) -> Result<bool> {
    if let LsExponent::Finite(s) = s {
        if !(s >= 1.0) {
            return Err(Error::invalid("ls_invertible", format!("s = {s} < 1")));
        }
    }
    let lambda1 = f64::from(p.sphere_dim()) / 2.0;
    Ok(lambda1 > p.c * f64::from(p.k) * s.reciprocal_gap())
}

/// (m−2)(m−k−1) > ck, the Lˢ-invertibility requirement at s = 2(m−2)/(m−1).
///
/// Panics if the equivalent form (m−1)(m−k−2) > −(1−c)k disagrees, which can
/// only happen through an implementation error.
pub fn codim_condition(p: &ModelSpaceParams) -> bool {
    let m = f64::from(p.m);
    let k = f64::from(p.k);
    let primary = (m - 2.0) * (m - k - 1.0) > p.c * k;
    let equivalent = (m - 1.0) * (m - k - 2.0) > -(1.0 - p.c) * k;
    assert_eq!(
        primary, equivalent,
        "codimension condition forms disagree at {p}"
    );
    primary
}

/// Which solution's L² decay integral is considered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayCase {
    /// Killing-spinor transport: integrand cosh^{1−m} t · sinh^k t.
    Spinor,
    /// Constant-function transport: integrand cosh^{2−m} t · sinh^k t.
    Function,
}

impl DecayCase {
    fn cosh_exponent(self, m: u32) -> i32 {
        match self {
            DecayCase::Spinor => 1 - m as i32,
            DecayCase::Function => 2 - m as i32,
        }
    }
}

/// Whether ∫₀^∞ cosh^e t sinh^k t dt is finite, i.e. e + k < 0.
pub fn decay_convergent(m: u32, k: u32, case: DecayCase) -> Result<bool> {
    if m < 2 || k > m - 1 {
        return Err(Error::invalid(
            "decay_convergent",
            format!("need 0 <= k <= m - 1, got m = {m}, k = {k}"),
        ));
    }
    Ok(case.cosh_exponent(m) + (k as i32) < 0)
}

/// Quadrature estimate of ∫₀^T cosh^e t sinh^k t dt, for diagnostics.
pub fn decay_integral(m: u32, k: u32, case: DecayCase, horizon: f64) -> Result<f64> {
    decay_convergent(m, k, case)?;
    if !(horizon >= 0.0 && horizon.is_finite()) {
        return Err(Error::invalid(
            "decay_integral",
            format!("horizon {horizon} must be finite and nonnegative"),
        ));
    }
    let e = case.cosh_exponent(m);
    let k = k as i32;
    Ok(adaptive_simpson(
        |t: f64| t.cosh().powi(e) * t.sinh().powi(k),
        0.0,
        horizon,
        1e-10,
    ))
}

/// vol(B_r) = vol(S^{m−1}) ∫₀^r sin^{m−1}θ dθ.
///
/// Past the equator the complement cap is integrated instead, so the small
/// increments near r = π are not swamped by the full integral.
pub fn spherical_cap_volume(p: &CapParams) -> Result<f64> {
    let n = (p.m - 1) as i32;
    let profile =
        |a: f64, b: f64| adaptive_simpson(|t: f64| t.sin().powi(n), a, b, CAP_QUADRATURE_TOL);
    if p.r <= FRAC_PI_2 {
        return Ok(sphere_volume(p.m - 1)? * profile(0.0, p.r));
    }
    Ok(sphere_volume(p.m)? - sphere_volume(p.m - 1)? * profile(p.r, PI))
}

/// λ_r = (m/2)·vol(B_r)^{1/m}: the nonlinear Dirac eigenvalue of a Killing
/// spinor restricted to B_r and normalized in L^q(B_r).
///
/// With exponent 1/m the full cap r = π renormalizes to Q*(Sᵐ).
pub fn spherical_cap_lambda(p: &CapParams) -> Result<f64> {
    if p.m < 3 {
        return Err(Error::invalid("spherical_cap_lambda", "requires m >= 3"));
    }
    let m = f64::from(p.m);
    Ok(m / 2.0 * spherical_cap_volume(p)?.powf(1.0 / m))
}

/// Q*(𝕄_c^{m,m−2}) = c^{2/m} Q*(Sᵐ).
pub fn q_star_mm2(m: u32, c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::invalid(
            "q_star_mm2",
            format!("c = {c} not in [0, 1]"),
        ));
    }
    Ok(c.powf(2.0 / f64::from(m)) * yamabe_sphere(m)?)
}

/// At c = 1 the model space is conformal to Sᵐ minus a great Sᵏ; this records
/// that picture. The conformal factor is a function of the hyperbolic radius t
/// alone, with cosh t = 1/sin(dist(·, Sᵏ)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformalPicture {
    pub m: u32,
    /// Dimension of the removed great sphere.
    pub removed_sphere_dim: u32,
}

impl ConformalPicture {
    pub fn describe(&self) -> String {
        format!(
            "H^{} x S^{} is conformal to S^{} minus a great S^{}",
            self.removed_sphere_dim + 1,
            self.m - self.removed_sphere_dim - 1,
            self.m,
            self.removed_sphere_dim
        )
    }
}

pub fn conformal_picture(p: &ModelSpaceParams) -> Option<ConformalPicture> {
    (p.c == 1.0).then_some(ConformalPicture {
        m: p.m,
        removed_sphere_dim: p.k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn params(m: u32, k: u32, c: f64) -> ModelSpaceParams {
        ModelSpaceParams::new(m, k, c).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ModelSpaceParams::new(1, 0, 0.0).is_err());
        assert!(ModelSpaceParams::new(5, 5, 0.0).is_err());
        assert!(ModelSpaceParams::new(5, 4, 1.5).is_err());
        assert!(ModelSpaceParams::new(5, 4, f64::NAN).is_err());
        assert!(CapParams::new(3, 0.0).is_err());
        assert!(CapParams::new(3, 3.2).is_err());
        assert!(CapParams::new(3, PI).is_ok());
    }

    #[test]
    fn sinh_c_examples() {
        assert_eq!(sinh_c(0.0, 5.0), 5.0);
        assert_eq!(sinh_c(1.0, 0.0), 0.0);
        assert_relative_eq!(sinh_c(0.5, 2.0), 2.0 * 1f64.sinh(), max_relative = 1e-15);
        assert!((sinh_c(0.5, 2.0) - 2.350_402_4).abs() < 1e-7);
    }

    #[test]
    fn scalar_curvature_examples() {
        assert_eq!(scalar_curvature(&params(7, 4, 1.0)), -18.0);
        for m in 3..12 {
            for k in 0..m {
                let flat = params(m, k, 0.0);
                let n = f64::from(m - k - 1);
                assert_eq!(scalar_curvature(&flat), n * (n - 1.0));
            }
            let c = 0.3;
            let top = params(m, m - 1, c);
            assert_relative_eq!(
                scalar_curvature(&top),
                -c * c * f64::from((m - 1) * m),
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn invertibility_examples() {
        assert!(ls_invertible(&params(7, 4, 1.0), LsExponent::Finite(2.0)).unwrap());
        for m in 3..10 {
            for s in [
                LsExponent::Finite(1.0),
                LsExponent::Finite(4.0),
                LsExponent::Infinity,
            ] {
                assert!(!ls_invertible(&params(m, m - 1, 0.5), s).unwrap());
            }
            let q_star = LsExponent::Finite(2.0 * f64::from(m) / f64::from(m + 1));
            for k in 0..=m - 2 {
                for c in [0.0, 0.5, 1.0] {
                    assert!(ls_invertible(&params(m, k, c), q_star).unwrap());
                }
            }
        }
        assert!(ls_invertible(&params(5, 2, 1.0), LsExponent::Finite(0.5)).is_err());
    }

    #[test]
    fn codim_condition_examples() {
        for m in 3..20 {
            for k in 0..m - 2 {
                for c in [0.0, 0.3, 1.0] {
                    assert!(codim_condition(&params(m, k, c)));
                }
            }
            assert!(!codim_condition(&params(m, m - 2, 1.0)));
        }
        assert!(codim_condition(&params(10, 8, 0.5)));
    }

    #[test]
    fn decay_examples() {
        for m in 3..15 {
            assert!(decay_convergent(m, m - 2, DecayCase::Spinor).unwrap());
            assert!(!decay_convergent(m, m - 1, DecayCase::Spinor).unwrap());
            assert!(!decay_convergent(m, m - 2, DecayCase::Function).unwrap());
            assert!(decay_convergent(m, m - 3, DecayCase::Function).unwrap());
        }
        assert!(decay_convergent(4, 4, DecayCase::Spinor).is_err());
    }

    #[test]
    fn decay_integral_saturates_only_when_convergent() {
        let a = decay_integral(6, 3, DecayCase::Function, 20.0).unwrap();
        let b = decay_integral(6, 3, DecayCase::Function, 30.0).unwrap();
        assert!((a - b).abs() < 1e-6);
        let a = decay_integral(6, 4, DecayCase::Function, 20.0).unwrap();
        let b = decay_integral(6, 4, DecayCase::Function, 30.0).unwrap();
        assert!(b - a > 1.0);
    }

    #[test]
    fn half_cap_of_three_sphere() {
        let cap = CapParams::new(3, PI / 2.0).unwrap();
        assert_relative_eq!(
            spherical_cap_volume(&cap).unwrap(),
            PI * PI,
            max_relative = 1e-12
        );
        let lambda = spherical_cap_lambda(&cap).unwrap();
        assert_relative_eq!(
            lambda,
            1.5 * (PI * PI).powf(1.0 / 3.0),
            max_relative = 1e-12
        );
        assert!((lambda - 3.2175).abs() < 1e-3);
    }

    #[test]
    fn q_star_mm2_examples() {
        for m in 3..20 {
            assert_eq!(q_star_mm2(m, 1.0).unwrap(), yamabe_sphere(m).unwrap());
            assert_eq!(q_star_mm2(m, 0.0).unwrap(), 0.0);
        }
        let v = q_star_mm2(10, 0.5).unwrap();
        assert_relative_eq!(
            v,
            0.5f64.powf(0.2) * yamabe_sphere(10).unwrap(),
            max_relative = 1e-15
        );
        assert!((0.5f64.powf(0.2) - 0.87055).abs() < 1e-5);
        assert!(q_star_mm2(10, 1.1).is_err());
    }

    #[test]
    fn conformal_picture_only_at_c_one() {
        assert!(conformal_picture(&params(7, 4, 0.5)).is_none());
        let pic = conformal_picture(&params(7, 4, 1.0)).unwrap();
        assert_eq!(
            pic.describe(),
            "H^5 x S^2 is conformal to S^7 minus a great S^4"
        );
    }
}
