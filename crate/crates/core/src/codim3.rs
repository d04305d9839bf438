//! Lower bounds for the codimension-3 threshold Λ*_{m,m−3}.
//!
//! For k = m − 3 the estimate for Q*(𝕄_c^{m,m−3}) collapses to a one-variable
//! function of s = c²,
//!
//! ```text
//! L_m(s) = ((1 − s)·2Q̂₀ + s^{1+2/m}(m−2)(m−3)Q₁) / (2 + s((m−2)(m−3) − 2)),
//! ```
//!
//! with Q₁ = Q*(Sᵐ) and Q̂₀ an explicit lower bound for Q*(𝕄_0^{m,m−3}).
//! Its interior critical points are the zeros of
//! f(s) = s^{2/m+1}A₀ + s^{2/m}A₁ + A₂, which has exactly one zero in (0, 1).
//! The infimum is taken over the endpoints and that zero, and is always
//! cross-checked against a dense grid scan.

use serde::{Deserialize, Serialize};

use crate::constants::{
    conformal_laplacian_coefficient, ln_yamabe_sphere, yamabe_sphere, yamabe_sphere_log_route,
    MAX_DIMENSION,
};
use crate::error::{Error, Result};
use crate::model_space::ModelSpaceParams;
use crate::rounding::{RoundingRule, Tenths};

/// Smallest m for which Q̂₀ is defined.
pub const MIN_DIMENSION: u32 = 6;
/// Final bracket width of the bisection for the zero of f.
pub const BISECTION_WIDTH: f64 = 1e-14;
pub const BISECTION_MAX_STEPS: usize = 200;
/// Step in c of the validating grid scan.
pub const GRID_STEP: f64 = 1e-5;
/// Required relative agreement between critical-point and grid minima.
pub const GRID_AGREEMENT: f64 = 1e-8;
/// Central finite-difference step for dL/ds.
pub const FD_STEP: f64 = 1e-6;
pub const SIGN_CHECK_POINTS: usize = 1000;
/// Half-width of the neighborhood of the zero excluded from the sign check.
pub const ROOT_EXCLUSION: f64 = 1e-4;

fn check_m(operation: &'static str, m: u32) -> Result<()> {
    if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&m) {
        return Err(Error::invalid(
            operation,
            format!("m = {m} outside {MIN_DIMENSION}..={MAX_DIMENSION}"),
        ));
    }
    Ok(())
}

/// The estimate for Q*(𝕄_c^{m,k}) in terms of a lower bound `q0_lower` for
/// the c = 0 value, for 0 ≤ k ≤ m − 3. At c = 0 and c = 1 the continuous
/// extension (Q₀ and Q₁ respectively) is returned.
pub fn general_lower_bound(p: &ModelSpaceParams, q0_lower: f64) -> Result<f64> {
    let (m, k, c) = (p.m(), p.k(), p.c());
    if m < 3 || k + 3 > m {
        return Err(Error::invalid(
            "general_lower_bound",
            format!("requires k <= m - 3, got m = {m}, k = {k}"),
        ));
    }
    let q1 = yamabe_sphere(m)?;
    if !(q0_lower > 0.0 && q0_lower <= q1) {
        return Err(Error::invalid(
            "general_lower_bound",
            format!("Q0 lower bound {q0_lower} not in (0, {q1}]"),
        ));
    }
    if c == 0.0 {
        return Ok(q0_lower);
    }
    if c == 1.0 {
        return Ok(q1);
    }
    let (mf, kf) = (f64::from(m), f64::from(k));
    let c2 = c * c;
    let hyperbolic = c2 * (kf + 1.0) * kf;
    let spherical = (1.0 - c2) * (mf - kf - 1.0) * (mf - kf - 2.0);
    let ratio = q0_lower / q1;
    let weight = hyperbolic / (spherical + hyperbolic);
    Ok((ratio - weight * (ratio - c.powf(2.0 * (mf - kf - 1.0) / mf))) * q1)
}

/// Q̂₀(m), the explicit lower bound for Q*(ℝ^{m−2} × S²) (c = 0, k = m − 3).
pub fn qhat0(m: u32) -> Result<f64> {
    check_m("qhat0", m)?;
    let mf = f64::from(m);
    let a = conformal_laplacian_coefficient(m)?;
    let a_low = conformal_laplacian_coefficient(m - 3)?;
    let low = (mf - 3.0) / mf;
    let high = 3.0 / mf;
    Ok(mf * a / (24f64.powf(high) * ((mf - 3.0) * a_low).powf(low))
        * yamabe_sphere(m - 3)?.powf(low)
        * yamabe_sphere(3)?.powf(high))
}

/// Q̂₀ through logarithms; independent route for the rounding guard.
fn qhat0_log_route(m: u32) -> f64 {
    let mf = f64::from(m);
    let a = 4.0 * (mf - 1.0) / (mf - 2.0);
    let a_low = 4.0 * (mf - 4.0) / (mf - 5.0);
    let low = (mf - 3.0) / mf;
    let high = 3.0 / mf;
    let ln = (mf * a).ln() - high * 24f64.ln() - low * ((mf - 3.0) * a_low).ln()
        + low * ln_yamabe_sphere(m - 3)
        + high * ln_yamabe_sphere(3);
    ln.exp()
}

/// Coefficients of f(s) = s^{2/m+1}A₀ + s^{2/m}A₁ + A₂.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FPoly {
    pub m: u32,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
}

impl FPoly {
    pub fn evaluate(&self, s: f64) -> f64 {
        let e = 2.0 / f64::from(self.m);
        let base = s.powf(e);
        base * s * self.a0 + base * self.a1 + self.a2
    }
}

/// Where the reported minimum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimizationMethod {
    /// Endpoints plus the unique zero of f, confirmed by the grid scan.
    CriticalPoint,
    /// The sign check of f against dL/ds failed; the grid scan is used alone.
    GridFallback,
}

/// Outcome of comparing sign(f) with the sign of a finite-difference dL/ds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignCheck {
    pub points_checked: usize,
    pub mismatches: Vec<f64>,
}

impl SignCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Infimum {
    pub c_star: f64,
    pub value: f64,
    pub method: MinimizationMethod,
    pub grid_value: f64,
    pub diagnostics: Vec<String>,
}

/// Precomputed Q₁ and Q̂₀ for one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Codim3 {
    m: u32,
    q1: f64,
    qhat0: f64,
}

impl Codim3 {
    pub fn new(m: u32) -> Result<Self> {
        check_m("codim3", m)?;
        Ok(Codim3 {
            m,
            q1: yamabe_sphere(m)?,
            qhat0: qhat0(m)?,
        })
    }

    fn log_route(m: u32) -> Result<Self> {
        check_m("codim3", m)?;
        Ok(Codim3 {
            m,
            q1: yamabe_sphere_log_route(m)?,
            qhat0: qhat0_log_route(m),
        })
    }

    #[cfg(test)]
    pub(crate) fn with_values(m: u32, q1: f64, qhat0: f64) -> Self {
        Codim3 { m, q1, qhat0 }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q1(&self) -> f64 {
        self.q1
    }

    pub fn qhat0(&self) -> f64 {
        self.qhat0
    }

    fn sphere_weight(&self) -> f64 {
        let m = f64::from(self.m);
        (m - 2.0) * (m - 3.0)
    }

    /// L_m(s) for s = c² ∈ [0, 1].
    pub fn l(&self, s: f64) -> f64 {
        let w = self.sphere_weight();
        let e = 1.0 + 2.0 / f64::from(self.m);
        ((1.0 - s) * 2.0 * self.qhat0 + s.powf(e) * w * self.q1) / (2.0 + s * (w - 2.0))
    }

    pub fn f_poly(&self) -> FPoly {
        let m = f64::from(self.m);
        let w = self.sphere_weight();
        FPoly {
            m: self.m,
            a0: 2.0 / m * self.q1 * (w - 2.0),
            a1: 2.0 * (2.0 / m + 1.0) * self.q1,
            a2: -2.0 * self.qhat0,
        }
    }

    /// c₂ with c₂^{4/m} = −A₂/A₁, so that s^{2/m}A₁ + A₂ vanishes at s = c₂²
    /// and f(c₂²) = c₂^{2+4/m}A₀ > 0.
    pub fn c2(&self) -> f64 {
        let f = self.f_poly();
        (-f.a2 / f.a1).powf(f64::from(self.m) / 4.0)
    }

    /// (−A₂/A₁)^{m/2}, the square of [`Codim3::c2`]. Using it as c₂ leaves
    /// f(c₂²) < 0 for 6 ≤ m ≤ 24, so it does not bracket the zero there;
    /// kept for diagnostics.
    pub fn c2_printed(&self) -> f64 {
        let f = self.f_poly();
        (-f.a2 / f.a1).powf(f64::from(self.m) / 2.0)
    }

    /// Minimizer of the numerator (1 − c²)2Q̂₀ + c^{4/m+2}(m−2)(m−3)Q₁ over c ≥ 0.
    pub fn c3(&self) -> f64 {
        let m = f64::from(self.m);
        let ratio = 2.0 * m * self.qhat0 / ((m + 2.0) * self.sphere_weight() * self.q1);
        ratio.powf(m / 4.0)
    }

    /// The unique zero of f in (0, 1), by bisection on (0, min(c₂², 1)].
    pub fn root(&self) -> Result<f64> {
        let f = self.f_poly();
        let mut lo = f64::from_bits(1);
        let mut hi = self.c2().powi(2).min(1.0);
        let (f_lo, f_hi) = (f.evaluate(lo), f.evaluate(hi));
        if !(f_lo < 0.0 && f_hi > 0.0) {
            return Err(Error::BracketFailure {
                m: self.m,
                left: lo,
                right: hi,
                f_left: f_lo,
                f_right: f_hi,
            });
        }
        for _ in 0..BISECTION_MAX_STEPS {
            if hi - lo <= BISECTION_WIDTH {
                return Ok(0.5 * (lo + hi));
            }
            let mid = 0.5 * (lo + hi);
            if f.evaluate(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(Error::NonConvergence {
            m: self.m,
            iterations: BISECTION_MAX_STEPS,
            tolerance: BISECTION_WIDTH,
        })
    }

    /// Minimum of L(c²) over c on the grid of step [`GRID_STEP`].
    pub fn grid_minimum(&self) -> (f64, f64) {
        let steps = (1.0 / GRID_STEP).round() as usize;
        let mut best = (0.0, self.l(0.0));
        for i in 1..=steps {
            let c = i as f64 * GRID_STEP;
            let v = self.l(c * c);
            if v < best.1 {
                best = (c, v);
            }
        }
        best
    }

    /// Central-difference derivative of L.
    pub fn dl_ds(&self, s: f64) -> f64 {
        (self.l(s + FD_STEP) - self.l(s - FD_STEP)) / (2.0 * FD_STEP)
    }

    /// Compares sign(f(s)) with sign(dL/ds) on the midpoints of a uniform
    /// partition of (0, 1), skipping points within [`ROOT_EXCLUSION`] of `root`.
    pub fn sign_check(&self, root: f64) -> SignCheck {
        let f = self.f_poly();
        let n = SIGN_CHECK_POINTS;
        let mut checked = 0;
        let mut mismatches = Vec::new();
        for j in 0..n {
            let s = (j as f64 + 0.5) / n as f64;
            if (s - root).abs() < ROOT_EXCLUSION {
                continue;
            }
            checked += 1;
            let fs = f.evaluate(s);
            let ds = self.dl_ds(s);
            if fs.signum() != ds.signum() {
                mismatches.push(s);
            }
        }
        SignCheck {
            points_checked: checked,
            mismatches,
        }
    }

    fn critical_point_minimum(&self, root: f64) -> (f64, f64) {
        [0.0, root, 1.0].into_iter().map(|s| (s, self.l(s))).fold(
            (f64::NAN, f64::INFINITY),
            |best, cand| {
                if cand.1 < best.1 {
                    cand
                } else {
                    best
                }
            },
        )
    }

    /// inf over c ∈ [0, 1] of L(c²), validated against the grid scan.
    pub fn infimum(&self) -> Result<Infimum> {
        let root = self.root()?;
        let check = self.sign_check(root);
        self.resolve(root, check)
    }

    /// Picks the critical-point or grid route given the sign-check outcome.
    pub fn resolve(&self, root: f64, check: SignCheck) -> Result<Infimum> {
        let (grid_c, grid_value) = self.grid_minimum();
        if !check.passed() {
            return Ok(Infimum {
                c_star: grid_c,
                value: grid_value,
                method: MinimizationMethod::GridFallback,
                grid_value,
                diagnostics: vec![format!(
                    "m = {}: sign(f) differs from sign(dL/ds) at {} of {} points; using grid minimum",
                    self.m,
                    check.mismatches.len(),
                    check.points_checked
                )],
            });
        }
        let (s_star, value) = self.critical_point_minimum(root);
        let relative_gap = (value - grid_value).abs() / value.abs();
        if relative_gap > GRID_AGREEMENT {
            return Err(Error::CrossValidation {
                m: self.m,
                critical: value,
                grid: grid_value,
                relative_gap,
            });
        }
        Ok(Infimum {
            c_star: s_star.sqrt(),
            value,
            method: MinimizationMethod::CriticalPoint,
            grid_value,
            diagnostics: Vec::new(),
        })
    }

    /// Explicit bound: the numerator minimized at c₃ over the denominator at c₂.
    pub fn closed_form_bound(&self) -> Result<f64> {
        let c3 = self.c3();
        if !(0.0..=1.0).contains(&c3) {
            return Err(Error::OutOfUnitInterval {
                m: self.m,
                quantity: "c3",
                value: c3,
            });
        }
        let c2 = self.c2();
        if !(0.0..=1.0).contains(&c2) {
            return Err(Error::OutOfUnitInterval {
                m: self.m,
                quantity: "c2",
                value: c2,
            });
        }
        let m = f64::from(self.m);
        let w = self.sphere_weight();
        let c3_sq = c3 * c3;
        Ok(
            ((1.0 - c3_sq) * 2.0 * self.qhat0 + c3.powf(4.0 / m + 2.0) * w * self.q1)
                / (2.0 + c2 * c2 * (w - 2.0)),
        )
    }

    pub fn report(&self) -> Result<Codim3Report> {
        let poly = self.f_poly();
        let s_root = self.root()?;
        let inf = self.infimum()?;
        let q_star_rounded =
            RoundingRule::Nearest.guarded(self.q1, || yamabe_sphere_log_route(self.m))?;
        let m = self.m;
        let l_rounded = RoundingRule::Floor.guarded(inf.value, || {
            let alt = Codim3::log_route(m)?;
            let root = alt.root()?;
            Ok(alt.critical_point_minimum(root).1)
        })?;
        Ok(Codim3Report {
            m,
            q1: self.q1,
            qhat0: self.qhat0,
            a0: poly.a0,
            a1: poly.a1,
            a2: poly.a2,
            s_root,
            c_star: inf.c_star,
            inf_l: inf.value,
            grid_inf_l: inf.grid_value,
            method: inf.method,
            c2: self.c2(),
            c3: self.c3(),
            closed_form: self.closed_form_bound()?,
            rounding: Codim3Rounding {
                q_star_nearest: q_star_rounded,
                inf_l_floor: l_rounded,
            },
            diagnostics: inf.diagnostics,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Codim3Rounding {
    pub q_star_nearest: Tenths,
    pub inf_l_floor: Tenths,
}

/// Every intermediate quantity of the codimension-3 bound for one m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Codim3Report {
    pub m: u32,
    pub q1: f64,
    pub qhat0: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub s_root: f64,
    pub c_star: f64,
    pub inf_l: f64,
    pub grid_inf_l: f64,
    pub method: MinimizationMethod,
    pub c2: f64,
    pub c3: f64,
    pub closed_form: f64,
    pub rounding: Codim3Rounding,
    pub diagnostics: Vec<String>,
}

pub fn l(m: u32, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::invalid("L", format!("s = {s} not in [0, 1]")));
    }
    Ok(Codim3::new(m)?.l(s))
}

pub fn f_poly(m: u32) -> Result<FPoly> {
    Ok(Codim3::new(m)?.f_poly())
}

pub fn root_f(m: u32) -> Result<f64> {
    Codim3::new(m)?.root()
}

pub fn infimum_l(m: u32) -> Result<Infimum> {
    Codim3::new(m)?.infimum()
}

pub fn closed_form_bound(m: u32) -> Result<f64> {
    Codim3::new(m)?.closed_form_bound()
}

pub fn report(m: u32) -> Result<Codim3Report> {
    Codim3::new(m)?.report()
}

/// First dimension of the published codimension-3 table.
pub const TABLE3_FIRST_M: u32 = 7;

/// Note emitted alongside table rows containing m = 9.
pub const TABLE3_NOTE_M9: &str =
    "Q*(S^9) = 147.8779... is emitted as 147.9 under nearest-0.1 rounding; a two-decimal rendering reads 147.88";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table3Row {
    pub m: u32,
    pub q_star: f64,
    pub q_star_nearest: Tenths,
    pub l_inf: f64,
    pub l_floor: Tenths,
    pub method: MinimizationMethod,
}

/// Rows (m, Q*(Sᵐ) to nearest 0.1, inf L_m rounded down to 0.1).
pub fn table3(m_from: u32, m_to: u32) -> Result<Vec<Table3Row>> {
    if m_from < TABLE3_FIRST_M || m_from > m_to || m_to > MAX_DIMENSION {
        return Err(Error::invalid(
            "table3",
            format!("need {TABLE3_FIRST_M} <= from <= to <= {MAX_DIMENSION}, got {m_from}..{m_to}"),
        ));
    }
    (m_from..=m_to)
        .map(|m| {
            let r = report(m)?;
            Ok(Table3Row {
                m,
                q_star: r.q1,
                q_star_nearest: r.rounding.q_star_nearest,
                l_inf: r.inf_l,
                l_floor: r.rounding.inf_l_floor,
                method: r.method,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Independent high-precision evaluation (30 significant digits) of the
    // same closed forms: Q̂₀, zero of f, inf L, closed-form bound.
    const ORACLE: &[(u32, f64, f64, f64, f64)] = &[
        (
            6,
            54.779040895313315,
            0.06206360366733427,
            50.046511180883506,
            39.45440878929872,
        ),
        (
            7,
            74.5043502823129,
            0.06279743946251107,
            65.26739278218334,
            40.16142734778966,
        ),
        (
            10,
            126.41340252825621,
            0.04342612830482197,
            104.98294832776578,
            32.73020036433135,
        ),
        (
            15,
            210.90710132588782,
            0.02422653434378181,
            172.45773173623664,
            22.77291342930786,
        ),
    ];

    #[test]
    fn frozen_high_precision_values() {
        for &(m, q0, root, inf, closed) in ORACLE {
            let model = Codim3::new(m).unwrap();
            assert_relative_eq!(model.qhat0(), q0, max_relative = 1e-13);
            assert_relative_eq!(model.root().unwrap(), root, max_relative = 1e-11);
            assert_relative_eq!(model.infimum().unwrap().value, inf, max_relative = 1e-13);
            assert_relative_eq!(
                model.closed_form_bound().unwrap(),
                closed,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn qhat0_at_six_is_five_quarters_of_q_s3() {
        // Both radicals are √24 and both sphere factors are Q*(S³)^{1/2}.
        assert_relative_eq!(
            qhat0(6).unwrap(),
            1.25 * yamabe_sphere(3).unwrap(),
            max_relative = 1e-14
        );
        assert!(qhat0(5).is_err());
    }

    #[test]
    fn general_bound_endpoints() {
        let q0 = qhat0(7).unwrap();
        let q1 = yamabe_sphere(7).unwrap();
        let at =
            |c: f64| general_lower_bound(&ModelSpaceParams::new(7, 4, c).unwrap(), q0).unwrap();
        assert_eq!(at(0.0), q0);
        assert_eq!(at(1.0), q1);
        assert!((at(1e-9) - q0).abs() < 1e-9);
        assert!((at(1.0 - 1e-12) - q1).abs() < 1e-6);
    }

    #[test]
    fn general_bound_rejects_small_codimension() {
        let p = ModelSpaceParams::new(7, 5, 0.5).unwrap();
        assert!(general_lower_bound(&p, 10.0).is_err());
        let p = ModelSpaceParams::new(7, 4, 0.5).unwrap();
        assert!(general_lower_bound(&p, 0.0).is_err());
        assert!(general_lower_bound(&p, 1e6).is_err());
    }

    #[test]
    fn general_bound_for_other_codimensions_is_between_endpoints_at_mid_c() {
        let m = 9;
        let q1 = yamabe_sphere(m).unwrap();
        for k in 0..=m - 3 {
            let p = ModelSpaceParams::new(m, k, 0.5).unwrap();
            let v = general_lower_bound(&p, 0.5 * q1).unwrap();
            assert!(v.is_finite() && v < q1, "k = {k}: {v}");
        }
    }

    #[test]
    fn l_endpoints_and_domain() {
        for m in [6, 7, 20] {
            let model = Codim3::new(m).unwrap();
            assert_relative_eq!(model.l(0.0), model.qhat0(), max_relative = 1e-15);
            assert_relative_eq!(model.l(1.0), model.q1(), max_relative = 1e-14);
        }
        assert!(l(7, 1.5).is_err());
        assert!(l(7, -0.1).is_err());
    }

    #[test]
    fn f_endpoint_signs() {
        for m in 6..=40 {
            let model = Codim3::new(m).unwrap();
            let f = model.f_poly();
            assert_eq!(f.evaluate(0.0), -2.0 * model.qhat0());
            assert!(f.evaluate(1.0) > 0.0);
            assert_relative_eq!(f.evaluate(1.0), f.a0 + f.a1 + f.a2, max_relative = 1e-14);
        }
    }

    #[test]
    fn printed_c2_exponent_does_not_bracket() {
        for m in 6..=40 {
            let model = Codim3::new(m).unwrap();
            let f = model.f_poly();
            let printed = f.evaluate(model.c2_printed().powi(2));
            assert_eq!(printed < 0.0, m <= 24, "m = {m}");
            assert!(f.evaluate(model.c2().powi(2)) > 0.0, "m = {m}");
        }
    }

    #[test]
    fn bracket_failure_is_distinct() {
        // Q̂₀ > Q₁ pushes the zero of f past c₂² and out of (0, 1).
        let model = Codim3::with_values(7, 10.0, 200.0);
        assert!(matches!(
            model.root(),
            Err(Error::BracketFailure { m: 7, .. })
        ));
    }

    #[test]
    fn grid_fallback_activates_on_sign_mismatch() {
        let model = Codim3::new(7).unwrap();
        let root = model.root().unwrap();
        let good = model.sign_check(root);
        assert!(good.passed());
        assert!(good.points_checked <= SIGN_CHECK_POINTS);
        let bad = SignCheck {
            points_checked: good.points_checked,
            mismatches: vec![0.5],
        };
        let inf = model.resolve(root, bad).unwrap();
        assert_eq!(inf.method, MinimizationMethod::GridFallback);
        assert_eq!(inf.value, model.grid_minimum().1);
        assert_eq!(inf.diagnostics.len(), 1);
        // The fallback still floors to the published value.
        assert_eq!(RoundingRule::Floor.apply(inf.value), Tenths(652));
    }

    #[test]
    fn report_invariants_m7() {
        let r = report(7).unwrap();
        assert_eq!(r.method, MinimizationMethod::CriticalPoint);
        assert!(0.0 < r.qhat0 && r.qhat0 <= r.q1);
        assert!(r.a0 > 0.0 && r.a1 > 0.0 && r.a2 == -2.0 * r.qhat0);
        assert!(0.0 < r.s_root && r.s_root < 1.0 && r.s_root <= r.c2 * r.c2);
        assert!(r.closed_form <= r.inf_l && r.inf_l <= r.qhat0.min(r.q1));
        assert_eq!(r.rounding.inf_l_floor, Tenths(652));
        assert_eq!(r.rounding.q_star_nearest, Tenths(1135));
        assert_relative_eq!(r.c_star, r.s_root.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn table3_rejects_bad_ranges() {
        assert!(table3(6, 8).is_err());
        assert!(table3(9, 8).is_err());
        assert!(table3(7, 201).is_err());
    }

    #[test]
    fn table3_rows() {
        let rows = table3(7, 15).unwrap();
        let got: Vec<(u32, String, String)> = rows
            .iter()
            .map(|r| (r.m, r.q_star_nearest.to_string(), r.l_floor.to_string()))
            .collect();
        assert_eq!(got[0], (7, "113.5".into(), "65.2".into()));
        assert_eq!(got[3], (10, "165.0".into(), "104.9".into()));
        assert_eq!(got[7], (14, "233.5".into(), "158.6".into()));
    }
}
