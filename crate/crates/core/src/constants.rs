//! Sphere constants and the conformal exponents for dimension `m`.
//!
//! Everything here reduces to Γ at half-integer arguments, which is evaluated
//! by the exact recursion Γ(x + 1) = x Γ(x) from Γ(1) = 1 and Γ(1/2) = √π.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rounding::{RoundingRule, Tenths};

/// Largest dimension accepted by the table-generating operations.
pub const MAX_DIMENSION: u32 = 200;

/// A positive rational `num / den`, used for the exponents p, p*, q, q*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Self {
        Rational { num, den }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Hölder conjugate r / (r - 1); requires r > 1.
    pub fn conjugate(self) -> Rational {
        Rational::new(self.num, self.num - self.den)
    }
}

/// Per-dimension constants of the round sphere Sᵐ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereConstants {
    pub m: u32,
    pub vol: f64,
    pub q_star: f64,
    /// Coefficient of the Laplacian in the conformal Laplacian.
    pub a: f64,
    pub p: Rational,
    pub p_star: Rational,
    pub q: Rational,
    pub q_star_exponent: Rational,
}

impl SphereConstants {
    pub fn new(m: u32) -> Result<Self> {
        let q_star = yamabe_sphere(m)?;
        let m64 = u64::from(m);
        Ok(SphereConstants {
            m,
            vol: sphere_volume(m)?,
            q_star,
            a: conformal_laplacian_coefficient(m)?,
            p: Rational::new(2 * m64, m64 - 2),
            p_star: Rational::new(2 * m64, m64 + 2),
            q: Rational::new(2 * m64, m64 - 1),
            q_star_exponent: Rational::new(2 * m64, m64 + 1),
        })
    }
}

/// Γ(x) for x ∈ {1/2, 1, 3/2, 2, ...}.
pub fn gamma_half_integer(x: f64) -> Result<f64> {
    let twice = 2.0 * x;
    if !(x > 0.0) || twice.fract() != 0.0 {
        return Err(Error::invalid(
            "gamma_half_integer",
            format!("{x} is not a positive half-integer"),
        ));
    }
    if twice > f64::from(2 * MAX_DIMENSION + 2) {
        return Err(Error::invalid(
            "gamma_half_integer",
            format!("{x} exceeds the supported range"),
        ));
    }
    Ok(gamma_of_half(twice as u32))
}

/// Γ(n / 2) for n ≥ 1.
pub(crate) fn gamma_of_half(n: u32) -> f64 {
    debug_assert!(n >= 1);
    let (mut value, mut arg) = if n.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (PI.sqrt(), 0.5)
    };
    let target = f64::from(n) / 2.0;
    while arg < target {
        value *= arg;
        arg += 1.0;
    }
    value
}

/// ln Γ(n / 2) as a compensated sum of logarithms.
fn ln_gamma_of_half(n: u32) -> f64 {
    let mut sum = CompensatedSum::default();
    let mut arg = if n.is_multiple_of(2) {
        1.0
    } else {
        sum.add(0.5 * PI.ln());
        0.5
    };
    let target = f64::from(n) / 2.0;
    while arg < target {
        sum.add(f64::ln(arg));
        arg += 1.0;
    }
    sum.total()
}

/// Neumaier summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn check_dimension(operation: &'static str, m: u32, min: u32) -> Result<()> {
    if m < min {
        return Err(Error::invalid(operation, format!("m = {m} < {min}")));
    }
    if m > MAX_DIMENSION {
        return Err(Error::invalid(
            operation,
            format!("m = {m} exceeds {MAX_DIMENSION}"),
        ));
    }
    Ok(())
}

/// Volume of the unit sphere Sᵐ ⊂ ℝᵐ⁺¹: 2π^{(m+1)/2} / Γ((m+1)/2).
pub fn sphere_volume(m: u32) -> Result<f64> {
    check_dimension("sphere_volume", m, 1)?;
    let half = f64::from(m + 1) / 2.0;
    Ok(2.0 * PI.powf(half) / gamma_of_half(m + 1))
}

/// a = 4(m − 1)/(m − 2).
pub fn conformal_laplacian_coefficient(m: u32) -> Result<f64> {
    check_dimension("conformal_laplacian_coefficient", m, 3)?;
    Ok(4.0 * f64::from(m - 1) / f64::from(m - 2))
}

/// Q*(Sᵐ) = m(m − 1) vol(Sᵐ)^{2/m}.
pub fn yamabe_sphere(m: u32) -> Result<f64> {
    check_dimension("yamabe_sphere", m, 3)?;
    let m64 = f64::from(m);
    Ok(m64 * (m64 - 1.0) * sphere_volume(m)?.powf(2.0 / m64))
}

/// Q*(Sᵐ) rounded to the nearest 0.1, re-checked through the log route when
/// the value sits near a rounding boundary.
pub fn yamabe_sphere_nearest(m: u32) -> Result<Tenths> {
    RoundingRule::Nearest.guarded(yamabe_sphere(m)?, || yamabe_sphere_log_route(m))
}

/// Q*(Sᵐ) through ln Γ and compensated summation; used to re-check values
/// that land close to a rounding boundary.
pub(crate) fn yamabe_sphere_log_route(m: u32) -> Result<f64> {
    check_dimension("yamabe_sphere", m, 3)?;
    Ok(ln_yamabe_sphere(m).exp())
}

pub(crate) fn ln_yamabe_sphere(m: u32) -> f64 {
    let m64 = f64::from(m);
    let mut ln_vol = CompensatedSum::default();
    ln_vol.add(std::f64::consts::LN_2);
    ln_vol.add(f64::from(m + 1) / 2.0 * PI.ln());
    ln_vol.add(-ln_gamma_of_half(m + 1));
    let mut total = CompensatedSum::default();
    total.add(m64.ln());
    total.add((m64 - 1.0).ln());
    total.add(2.0 / m64 * ln_vol.total());
    total.total()
}

/// 4(m − 1)/m · λ², the normalization that turns a Dirac eigenvalue bound into
/// a Yamabe-type constant.
pub fn spin_renormalize(m: u32, lambda: f64) -> Result<f64> {
    check_dimension("spin_renormalize", m, 3)?;
    if !(lambda >= 0.0) {
        return Err(Error::invalid(
            "spin_renormalize",
            format!("lambda = {lambda} is negative or NaN"),
        ));
    }
    let m64 = f64::from(m);
    Ok(4.0 * (m64 - 1.0) / m64 * lambda * lambda)
}
