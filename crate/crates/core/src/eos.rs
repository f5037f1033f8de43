//! Constitutive laws.
//!
//! The internal energy per unit mass is split into a volumetric part and a
//! neohookean isochoric part,
//!
//! ```text
//! eps = kappa(s)/(gamma-1) (1/rho - b)^(1-gamma) - a rho + p_inf/rho
//!     + chi/rho0 (Tr(Bbar) - 2)
//! ```
//!
//! or, for the Mie-Gruneisen law, a volumetric part built from reference
//! power laws in `rho/rho_ref`. In both cases the volumetric energy and the
//! pressure are affine in the entropy factor `kappa(s)`:
//!
//! ```text
//! eps_vol = e1(rho) kappa + e0(rho),   p = p1(rho) kappa + p0(rho)
//! ```
//!
//! so every query posed in `(rho, eps_vol)` is answered by eliminating
//! `kappa` algebraically. Entropy itself is never stored.

use crate::error::{Error, Result};

/// States with a density below this are rejected.
pub const RHO_FLOOR: f64 = 1e-10;
/// Minimum admissible `1/rho - b`.
pub const COVOLUME_FLOOR: f64 = 1e-14;

/// Components `Y^i_{,j}` of the gradient of the backward characteristics.
///
/// As a matrix, row `i` is the spatial gradient of `Y^i`:
/// `[[y11, y12], [y21, y22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefGrad {
    pub y11: f64,
    pub y12: f64,
    pub y21: f64,
    pub y22: f64,
}

impl Default for DefGrad {
    fn default() -> Self {
        Self::identity()
    }
}

impl DefGrad {
    pub const fn new(y11: f64, y12: f64, y21: f64, y22: f64) -> Self {
        Self { y11, y12, y21, y22 }
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    pub fn det(&self) -> f64 {
        self.y11 * self.y22 - self.y12 * self.y21
    }

    /// Squared Frobenius norm.
    pub fn norm2(&self) -> f64 {
        self.y11 * self.y11 + self.y12 * self.y12 + self.y21 * self.y21 + self.y22 * self.y22
    }

    /// Relabels the two axes, in both the spatial and the reference frame.
    pub fn swapped(&self) -> Self {
        Self::new(self.y22, self.y21, self.y12, self.y11)
    }

    /// `Tr(Bbar)` with `Bbar = [grad Y]^-1 [grad Y]^-T / J`, `J = det(grad Y)^-1`.
    pub fn trace_bbar(&self) -> Result<f64> {
        let det = self.det();
        if !(det > 0.0) {
            return Err(Error::DegenerateDeformation { det });
        }
        Ok(self.norm2() / det)
    }
}

/// Cauchy stress components `sigma^{ij}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Stress {
    pub s11: f64,
    pub s21: f64,
    pub s12: f64,
    pub s22: f64,
}

impl Stress {
    pub fn isotropic(p: f64) -> Self {
        Self {
            s11: -p,
            s21: 0.0,
            s12: 0.0,
            s22: -p,
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            s11: self.s22,
            s21: self.s12,
            s12: self.s21,
            s22: self.s11,
        }
    }
}

/// Reference power-law part of the Mie-Gruneisen energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MieGruneisenParams {
    pub rho_ref: f64,
    pub a1: f64,
    pub a2: f64,
    pub e1: f64,
    pub e2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EosKind {
    GeneralGas,
    MieGruneisen(MieGruneisenParams),
}

/// Constants identifying one medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    pub kind: EosKind,
    pub gamma: f64,
    /// Van der Waals attraction [Pa kg^-2 m^6].
    pub a: f64,
    /// Covolume [kg^-1 m^3].
    pub b: f64,
    pub p_inf: f64,
    /// Shear modulus.
    pub chi: f64,
    /// Reference density of the isochoric term.
    pub rho0: f64,
}

/// Coefficients of the affine dependence on `kappa` at a fixed density,
/// together with their density derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsentropeCoeffs {
    pub e1: f64,
    pub e0: f64,
    pub p1: f64,
    pub p0: f64,
    pub dp1: f64,
    pub dp0: f64,
}

impl IsentropeCoeffs {
    pub fn eps_vol(&self, kappa: f64) -> f64 {
        self.e1 * kappa + self.e0
    }

    pub fn pressure(&self, kappa: f64) -> f64 {
        self.p1 * kappa + self.p0
    }

    /// `dp/drho` at fixed entropy.
    pub fn sound_speed_sq(&self, kappa: f64) -> f64 {
        self.dp1 * kappa + self.dp0
    }
}

/// The six characteristic speeds of the x1-direction system, sorted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds {
    pub all: [f64; 6],
    pub min: f64,
    pub max: f64,
    /// Fast (normal stress) speed relative to the flow.
    pub fast: f64,
    /// Slow (shear) speed relative to the flow.
    pub slow: f64,
}

impl MaterialParams {
    pub fn general_gas(gamma: f64, a: f64, b: f64, p_inf: f64, chi: f64, rho0: f64) -> Self {
        Self {
            kind: EosKind::GeneralGas,
            gamma,
            a,
            b,
            p_inf,
            chi,
            rho0,
        }
    }

    pub fn perfect_gas(gamma: f64) -> Self {
        Self::general_gas(gamma, 0.0, 0.0, 0.0, 0.0, 1.0)
    }

    pub fn stiffened_gas(gamma: f64, p_inf: f64) -> Self {
        Self::general_gas(gamma, 0.0, 0.0, p_inf, 0.0, 1.0)
    }

    pub fn van_der_waals(gamma: f64, a: f64, b: f64) -> Self {
        Self::general_gas(gamma, a, b, 0.0, 0.0, 1.0)
    }

    pub fn neohookean(gamma: f64, p_inf: f64, chi: f64, rho0: f64) -> Self {
        Self::general_gas(gamma, 0.0, 0.0, p_inf, chi, rho0)
    }

    pub fn mie_gruneisen(gamma: f64, params: MieGruneisenParams) -> Self {
        Self {
            kind: EosKind::MieGruneisen(params),
            gamma,
            a: 0.0,
            b: 0.0,
            p_inf: 0.0,
            chi: 0.0,
            rho0: params.rho_ref,
        }
    }

    pub fn is_solid(&self) -> bool {
        self.chi > 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !(self.gamma > 1.0) {
            return bad("gamma must exceed 1");
        }
        if self.a < 0.0 || self.b < 0.0 || self.p_inf < 0.0 || self.chi < 0.0 {
            return bad("a, b, p_inf and chi must be non-negative");
        }
        if !(self.rho0 > 0.0) {
            return bad("rho0 must be positive");
        }
        if let EosKind::MieGruneisen(mg) = self.kind {
            if self.chi != 0.0 {
                return bad("Mie-Gruneisen media are fluids (chi = 0)");
            }
            if mg.e1 == 1.0 || mg.e2 == 1.0 {
                return bad("Mie-Gruneisen exponents must differ from 1");
            }
            if !(mg.rho_ref > 0.0) {
                return bad("rho_ref must be positive");
            }
        }
        Ok(())
    }

    pub fn isentrope_coeffs(&self, rho: f64) -> Result<IsentropeCoeffs> {
        if !(rho > RHO_FLOOR) {
            return Err(Error::NonPhysicalState(format!("density {rho:e}")));
        }
        let g = self.gamma;
        match self.kind {
            EosKind::GeneralGas => {
                let w = 1.0 / rho - self.b;
                if !(w > COVOLUME_FLOOR) {
                    return Err(Error::NonPhysicalState(format!(
                        "specific volume below covolume (1/rho - b = {w:e})"
                    )));
                }
                let p1 = w.powf(-g);
                Ok(IsentropeCoeffs {
                    e1: w * p1 / (g - 1.0),
                    e0: -self.a * rho + self.p_inf / rho,
                    p1,
                    p0: -self.p_inf - self.a * rho * rho,
                    dp1: g * p1 / (w * rho * rho),
                    dp0: -2.0 * self.a * rho,
                })
            }
            EosKind::MieGruneisen(mg) => {
                let r = rho / mg.rho_ref;
                let t1 = mg.a1 * r.powf(mg.e1);
                let t2 = mg.a2 * r.powf(mg.e2);
                let p1 = rho.powf(g);
                Ok(IsentropeCoeffs {
                    e1: p1 / (rho * (g - 1.0)),
                    e0: (t1 / (mg.e1 - 1.0) - t2 / (mg.e2 - 1.0)) / rho,
                    p1,
                    p0: t1 - t2,
                    dp1: g * p1 / rho,
                    dp0: (mg.e1 * t1 - mg.e2 * t2) / rho,
                })
            }
        }
    }

    /// Entropy factor `kappa(s)` of a state given in `(rho, eps_vol)`.
    pub fn kappa(&self, rho: f64, eps_vol: f64) -> Result<f64> {
        let c = self.isentrope_coeffs(rho)?;
        let kappa = (eps_vol - c.e0) / c.e1;
        if !(kappa > 0.0) {
            return Err(Error::NonPhysicalState(format!(
                "negative entropy factor (rho = {rho:e}, eps_vol = {eps_vol:e})"
            )));
        }
        Ok(kappa)
    }

    pub fn pressure_from_rho_eps(&self, rho: f64, eps_vol: f64) -> Result<f64> {
        let c = self.isentrope_coeffs(rho)?;
        let kappa = (eps_vol - c.e0) / c.e1;
        if !(kappa > 0.0) {
            return Err(Error::NonPhysicalState(format!(
                "negative entropy factor (rho = {rho:e}, eps_vol = {eps_vol:e})"
            )));
        }
        Ok(c.pressure(kappa))
    }

    pub fn eps_from_rho_p(&self, rho: f64, p: f64) -> Result<f64> {
        let c = self.isentrope_coeffs(rho)?;
        let kappa = (p - c.p0) / c.p1;
        if !(kappa > 0.0) {
            return Err(Error::NonPhysicalState(format!(
                "pressure {p:e} below the cold curve at rho = {rho:e}"
            )));
        }
        Ok(c.eps_vol(kappa))
    }

    pub fn sound_speed_sq(&self, rho: f64, eps_vol: f64) -> Result<f64> {
        let c = self.isentrope_coeffs(rho)?;
        let kappa = (eps_vol - c.e0) / c.e1;
        if !(kappa > 0.0) {
            return Err(Error::NonPhysicalState(format!(
                "negative entropy factor (rho = {rho:e}, eps_vol = {eps_vol:e})"
            )));
        }
        let c2 = c.sound_speed_sq(kappa);
        if !(c2 > 0.0) {
            return Err(Error::HyperbolicityLoss { c2 });
        }
        Ok(c2)
    }

    /// Neohookean energy `chi/rho0 (Tr(Bbar) - 2)`.
    pub fn elastic_energy(&self, g: &DefGrad) -> Result<f64> {
        if self.chi == 0.0 {
            return Ok(0.0);
        }
        Ok(self.chi / self.rho0 * (g.trace_bbar()? - 2.0))
    }

    /// `sigma = -p I + 2 chi J^-1 (Bbar - Tr(Bbar)/2 I)`.
    ///
    /// With `J^-1 Bbar = adj(grad Y) adj(grad Y)^T` the deviator is a
    /// polynomial in the entries of `grad Y`.
    pub fn cauchy_stress(&self, p: f64, g: &DefGrad) -> Result<Stress> {
        if self.chi == 0.0 {
            return Ok(Stress::isotropic(p));
        }
        let det = g.det();
        if !(det > 0.0) {
            return Err(Error::DegenerateDeformation { det });
        }
        let chi = self.chi;
        let (y11, y12, y21, y22) = (g.y11, g.y12, g.y21, g.y22);
        let col1 = y11 * y11 + y21 * y21;
        let col2 = y12 * y12 + y22 * y22;
        let shear = -2.0 * chi * (y11 * y12 + y21 * y22);
        Ok(Stress {
            s11: -p + chi * (col2 - col1),
            s21: shear,
            s12: shear,
            s22: -p + chi * (col1 - col2),
        })
    }

    /// Characteristic speeds in the x1 direction.
    pub fn wave_speeds(&self, rho: f64, u1: f64, eps_vol: f64, g: &DefGrad) -> Result<WaveSpeeds> {
        let c2 = self.sound_speed_sq(rho, eps_vol)?;
        self.wave_speeds_from_c2(rho, u1, c2, g)
    }

    pub fn wave_speeds_from_c2(&self, rho: f64, u1: f64, c2: f64, g: &DefGrad) -> Result<WaveSpeeds> {
        if !(c2 > 0.0) {
            return Err(Error::HyperbolicityLoss { c2 });
        }
        let (fast, slow) = if self.chi == 0.0 {
            (c2.sqrt(), 0.0)
        } else {
            let chi = self.chi;
            let alpha = g.y11 * g.y11 + g.y21 * g.y21;
            let beta = g.y12 * g.y12 + g.y22 * g.y22;
            let delta = g.y11 * g.y12 + g.y21 * g.y22;
            let half = 0.5 * rho * c2;
            let a1 = half + chi * (alpha + beta);
            let shifted = half + chi * (alpha - beta);
            let a2 = shifted * shifted + 4.0 * chi * chi * delta * delta;
            let big = a1 + a2.sqrt();
            // product of the two roots, free of cancellation
            let prod = (rho * c2 + 2.0 * chi * alpha) * (2.0 * chi * beta) - 4.0 * chi * chi * delta * delta;
            let small = (prod / big).max(0.0);
            ((big / rho).sqrt(), (small / rho).sqrt())
        };
        let all = [u1 - fast, u1 - slow, u1, u1, u1 + slow, u1 + fast];
        Ok(WaveSpeeds {
            all,
            min: all[0],
            max: all[5],
            fast,
            slow,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn water() -> MaterialParams {
        MaterialParams::stiffened_gas(4.4, 6.8e8)
    }

    fn copper() -> MaterialParams {
        MaterialParams::neohookean(4.22, 3.42e10, 5e10, 8900.0)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn perfect_gas_pressure_and_energy() {
        let air = MaterialParams::perfect_gas(1.4);
        assert!(rel(air.pressure_from_rho_eps(1.0, 2500.0).unwrap(), 1000.0) < 1e-14);
        assert!(rel(air.eps_from_rho_p(1.0, 1000.0).unwrap(), 2500.0) < 1e-14);
        assert!(rel(air.sound_speed_sq(1.0, 2500.0).unwrap(), 1400.0) < 1e-14);
    }

    #[test]
    fn stiffened_gas_specialization() {
        let eps = (1e9 + 4.4 * 6.8e8) / (3.4 * 1000.0);
        assert!(rel(water().eps_from_rho_p(1000.0, 1e9).unwrap(), eps) < 1e-13);
        assert!(rel(water().pressure_from_rho_eps(1000.0, eps).unwrap(), 1e9) < 1e-12);
        let c2 = water().sound_speed_sq(1000.0, eps).unwrap();
        assert!(rel(c2, 7.392e6) < 1e-12);
        assert!((c2.sqrt() - 2718.8).abs() < 0.1);
    }

    #[test]
    fn van_der_waals_sound_speed_matches_isentropic_difference() {
        let vdw = MaterialParams::van_der_waals(1.4, 5.0, 1e-3);
        let rho = 1.0;
        let eps = vdw.eps_from_rho_p(rho, 1000.0).unwrap();
        let kappa = vdw.kappa(rho, eps).unwrap();
        let p_at = |r: f64| vdw.isentrope_coeffs(r).unwrap().pressure(kappa);
        let h = 1e-5;
        let fd = (p_at(rho + h) - p_at(rho - h)) / (2.0 * h);
        let c2 = vdw.sound_speed_sq(rho, eps).unwrap();
        assert!(rel(c2, fd) < 1e-8, "{c2} vs {fd}");
    }

    #[test]
    fn mie_gruneisen_sound_speed_matches_isentropic_difference() {
        let mg = MaterialParams::mie_gruneisen(
            2.19,
            MieGruneisenParams {
                rho_ref: 1134.0,
                a1: 0.819181e9,
                a2: 1.50835e9,
                e1: 4.52969,
                e2: 1.42144,
            },
        );
        for &(rho, p) in &[(1134.0, 20e9), (1200.0, 0.2e6), (1500.0, 5e9)] {
            let eps = mg.eps_from_rho_p(rho, p).unwrap();
            assert!(rel(mg.pressure_from_rho_eps(rho, eps).unwrap(), p) < 1e-10);
            let kappa = mg.kappa(rho, eps).unwrap();
            let p_at = |r: f64| mg.isentrope_coeffs(r).unwrap().pressure(kappa);
            let h = rho * 1e-6;
            let fd = (p_at(rho + h) - p_at(rho - h)) / (2.0 * h);
            assert!(rel(mg.sound_speed_sq(rho, eps).unwrap(), fd) < 1e-6);
        }
    }

    #[test]
    fn rejects_covolume_violation() {
        let vdw = MaterialParams::van_der_waals(1.4, 5.0, 1e-3);
        assert!(matches!(
            vdw.eps_from_rho_p(1000.0, 1e5),
            Err(Error::NonPhysicalState(_))
        ));
        assert!(matches!(
            vdw.pressure_from_rho_eps(2000.0, 1e5),
            Err(Error::NonPhysicalState(_))
        ));
        assert!(MaterialParams::perfect_gas(1.4).pressure_from_rho_eps(1.0, -1.0).is_err());
    }

    #[test]
    fn elastic_energy_cases() {
        let cu = copper();
        assert_eq!(cu.elastic_energy(&DefGrad::identity()).unwrap(), 0.0);
        assert_eq!(water().elastic_energy(&DefGrad::new(2.0, 0.3, 0.1, 0.5)).unwrap(), 0.0);
        // Bbar = [grad Y]^-1 [grad Y]^-T / J with grad Y = diag(2, 0.5): det = 1,
        // [grad Y]^-1 = diag(0.5, 2), Bbar = diag(0.25, 4), Tr = 4.25.
        let e = cu.elastic_energy(&DefGrad::new(2.0, 0.0, 0.0, 0.5)).unwrap();
        assert!(rel(e, 5e10 / 8900.0 * 2.25) < 1e-14);
        assert!(matches!(
            cu.elastic_energy(&DefGrad::new(1.0, 0.0, 0.0, -1.0)),
            Err(Error::DegenerateDeformation { .. })
        ));
    }

    #[test]
    fn stress_fluid_limit_and_identity() {
        let s = water().cauchy_stress(1000.0, &DefGrad::new(1.3, 0.2, -0.1, 0.9)).unwrap();
        assert_eq!(s, Stress::isotropic(1000.0));
        let s = copper().cauchy_stress(1e5, &DefGrad::identity()).unwrap();
        assert_eq!(s, Stress::isotropic(1e5));
    }

    #[test]
    fn stress_simple_shear_matches_matrix_evaluation() {
        // grad Y = [[1, 0.1], [0, 1]]: det = 1, inverse [[1, -0.1], [0, 1]],
        // Bbar = inv inv^T = [[1.01, -0.1], [-0.1, 1]], Tr = 2.01.
        // sigma = -p I + 2 chi (Bbar - 1.005 I).
        let chi = 5e10;
        let p = 1e5;
        let s = copper().cauchy_stress(p, &DefGrad::new(1.0, 0.1, 0.0, 1.0)).unwrap();
        assert!(rel(s.s11, -p + 2.0 * chi * 0.005) < 1e-12);
        assert!(rel(s.s22, -p - 2.0 * chi * 0.005) < 1e-12);
        assert!(rel(s.s21, -2.0 * chi * 0.1) < 1e-12);
        assert_eq!(s.s12, s.s21);
    }

    #[test]
    fn wave_speeds_limits() {
        let air = MaterialParams::perfect_gas(1.4);
        let w = air.wave_speeds(1.0, 3.0, 2500.0, &DefGrad::new(1.2, 0.3, 0.1, 0.8)).unwrap();
        let c = 1400f64.sqrt();
        assert!(rel(w.max, 3.0 + c) < 1e-14 && rel(w.min, 3.0 - c) < 1e-14);
        assert_eq!(w.slow, 0.0);

        let cu = copper();
        let eps = cu.eps_from_rho_p(8900.0, 1e5).unwrap();
        let c2 = cu.sound_speed_sq(8900.0, eps).unwrap();
        let w = cu.wave_speeds(8900.0, 0.0, eps, &DefGrad::identity()).unwrap();
        assert!(rel(w.fast, (c2 + 2.0 * 5e10 / 8900.0).sqrt()) < 1e-12);
        assert!(rel(w.slow, (2.0 * 5e10 / 8900.0f64).sqrt()) < 1e-12);
        assert!((w.slow - 3352.0).abs() < 1.0);
    }
}
