//! HLLC fluxes for the x1-direction system, including the two-sided flux
//! pair used across a material interface.
//!
//! The fan has three waves `s_l <= u1* <= s_r` and two intermediate states.
//! With `Q_k = F(Psi_k) - s_k Psi_k` the jump conditions across the outer
//! waves give the contact speed and the normal star stress directly:
//!
//! ```text
//! u1*      = (Q_l^2 - Q_r^2) / (Q_l^1 - Q_r^1)
//! sigma11* = (Q_l^2 Q_r^1 - Q_l^1 Q_r^2) / (Q_l^1 - Q_r^1)
//! ```
//!
//! Between two solids the transverse velocity and shear stress are shared by
//! both intermediate states. When a fluid is present the shear stress
//! vanishes at the contact and each side keeps its own transverse velocity.

use crate::eos::MaterialParams;
use crate::error::{Error, Result};
use crate::state::{reduced, ConsState, FluxVector, StateInfo};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShearMode {
    SolidSolid,
    FluidPresent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceMode {
    /// Transverse `Y^i_2` of the intermediate states is the face average.
    SingleMaterial,
    /// Transverse `Y^i_2` is taken from the own side.
    Multimaterial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannFan {
    pub s_l: f64,
    pub s_r: f64,
    pub u1_star: f64,
    pub sigma11_star: f64,
    pub sigma21_star: f64,
    pub u2_minus: f64,
    pub u2_plus: f64,
    pub state_minus: ConsState,
    pub state_plus: ConsState,
    pub flux_minus: FluxVector,
    pub flux_plus: FluxVector,
}

impl RiemannFan {
    /// Flux at `x/t = 0` selected from the wave pattern.
    pub fn sample_flux(&self, flux_l: &FluxVector, flux_r: &FluxVector) -> FluxVector {
        if 0.0 <= self.s_l {
            *flux_l
        } else if 0.0 <= self.u1_star {
            self.flux_minus
        } else if 0.0 <= self.s_r {
            self.flux_plus
        } else {
            *flux_r
        }
    }
}

/// Possibly unequal fluxes seen by the two cells adjacent to a face.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FacePair {
    pub flux_left_cell: FluxVector,
    pub flux_right_cell: FluxVector,
}

pub fn shear_mode_for(mat_l: &MaterialParams, mat_r: &MaterialParams) -> ShearMode {
    if mat_l.is_solid() && mat_r.is_solid() {
        ShearMode::SolidSolid
    } else {
        ShearMode::FluidPresent
    }
}

/// Davis bounds from the fastest characteristic speeds of both states.
pub fn davis_speeds_info(l: &StateInfo, r: &StateInfo) -> (f64, f64) {
    let s_l = (l.u1 - l.lambda).min(r.u1 - r.lambda);
    let s_r = (l.u1 + l.lambda).max(r.u1 + r.lambda);
    (s_l, s_r)
}

pub fn davis_speeds(
    mat_l: &MaterialParams,
    psi_l: &ConsState,
    mat_r: &MaterialParams,
    psi_r: &ConsState,
) -> Result<(f64, f64)> {
    let l = StateInfo::new(mat_l, psi_l)?;
    let r = StateInfo::new(mat_r, psi_r)?;
    Ok(davis_speeds_info(&l, &r))
}

pub fn solve_fan(
    mat_l: &MaterialParams,
    psi_l: &ConsState,
    mat_r: &MaterialParams,
    psi_r: &ConsState,
    shear: ShearMode,
    face: FaceMode,
) -> Result<RiemannFan> {
    let l = StateInfo::new(mat_l, psi_l)?;
    let r = StateInfo::new(mat_r, psi_r)?;
    solve_fan_info(&l, &r, shear, face)
}

pub fn solve_fan_info(l: &StateInfo, r: &StateInfo, shear: ShearMode, face: FaceMode) -> Result<RiemannFan> {
    let (s_l, s_r) = davis_speeds_info(l, r);
    solve_fan_with_speeds(l, r, s_l, s_r, shear, face)
}

pub(crate) fn solve_fan_with_speeds(
    l: &StateInfo,
    r: &StateInfo,
    s_l: f64,
    s_r: f64,
    shear: ShearMode,
    face: FaceMode,
) -> Result<RiemannFan> {
    let fl = l.flux().0;
    let fr = r.flux().0;
    let ul = reduced(&l.cons);
    let ur = reduced(&r.cons);
    let ql: [f64; 6] = std::array::from_fn(|k| fl[k] - s_l * ul[k]);
    let qr: [f64; 6] = std::array::from_fn(|k| fr[k] - s_r * ur[k]);

    let dq = ql[0] - qr[0];
    if !(dq.abs() > 1e-12 * (ql[0].abs() + qr[0].abs())) {
        return Err(Error::DegenerateFan);
    }
    let u_star = ((ql[1] - qr[1]) / dq).clamp(s_l, s_r);
    let sig11 = (ql[1] * qr[0] - ql[0] * qr[1]) / dq;
    let (u2m, u2p, sig21) = match shear {
        ShearMode::SolidSolid => {
            let u2 = (ql[2] - qr[2]) / dq;
            (u2, u2, (ql[2] * qr[0] - ql[0] * qr[2]) / dq)
        }
        ShearMode::FluidPresent => (ql[2] / ql[0], qr[2] / qr[0], 0.0),
    };
    let (gl, gr) = (&l.cons.g, &r.cons.g);
    let ((y12m, y22m), (y12p, y22p)) = match face {
        FaceMode::SingleMaterial => {
            let avg = (0.5 * (gl.y12 + gr.y12), 0.5 * (gl.y22 + gr.y22));
            (avg, avg)
        }
        FaceMode::Multimaterial => ((gl.y12, gl.y22), (gr.y12, gr.y22)),
    };

    let side = |q: &[f64; 6], den: f64, u2: f64, y12: f64, y22: f64| -> Result<(ConsState, FluxVector)> {
        let rho = q[0] / den;
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::NonPhysicalState(format!("HLLC star density {rho:e}")));
        }
        let y11 = (q[3] - u2 * y12) / den;
        let y21 = (q[4] - u2 * y22) / den;
        let psi = (q[5] + sig11 * u_star + sig21 * u2) / den;
        let state = ConsState {
            rho,
            phi1: rho * u_star,
            phi2: rho * u2,
            g: crate::eos::DefGrad::new(y11, y12, y21, y22),
            psi,
        };
        let flux = FluxVector([
            rho * u_star,
            rho * u_star * u_star - sig11,
            rho * u_star * u2 - sig21,
            u_star * y11 + u2 * y12,
            u_star * y21 + u2 * y22,
            u_star * psi - (sig11 * u_star + sig21 * u2),
        ]);
        Ok((state, flux))
    };
    let (state_minus, flux_minus) = side(&ql, u_star - s_l, u2m, y12m, y22m)?;
    let (state_plus, flux_plus) = side(&qr, u_star - s_r, u2p, y12p, y22p)?;

    Ok(RiemannFan {
        s_l,
        s_r,
        u1_star: u_star,
        sigma11_star: sig11,
        sigma21_star: sig21,
        u2_minus: u2m,
        u2_plus: u2p,
        state_minus,
        state_plus,
        flux_minus,
        flux_plus,
    })
}

/// Standard HLLC flux between two states of the same material.
pub fn single_material_flux(mat: &MaterialParams, psi_l: &ConsState, psi_r: &ConsState) -> Result<FluxVector> {
    let l = StateInfo::new(mat, psi_l)?;
    let r = StateInfo::new(mat, psi_r)?;
    single_material_flux_info(mat, &l, &r)
}

pub fn single_material_flux_info(mat: &MaterialParams, l: &StateInfo, r: &StateInfo) -> Result<FluxVector> {
    let (s_l, s_r) = davis_speeds_info(l, r);
    if 0.0 <= s_l {
        return Ok(l.flux());
    }
    if s_r <= 0.0 {
        return Ok(r.flux());
    }
    let shear = if mat.is_solid() {
        ShearMode::SolidSolid
    } else {
        ShearMode::FluidPresent
    };
    match solve_fan_with_speeds(l, r, s_l, s_r, shear, FaceMode::SingleMaterial) {
        Ok(fan) => Ok(if 0.0 <= fan.u1_star {
            fan.flux_minus
        } else {
            fan.flux_plus
        }),
        Err(Error::DegenerateFan) => Ok(l.flux().average(&r.flux())),
        Err(e) => Err(e),
    }
}

/// Two-sided flux at a material interface: the left cell receives the flux
/// of the left intermediate state and the right cell that of the right one.
pub fn multimaterial_flux_pair(
    mat_l: &MaterialParams,
    psi_l: &ConsState,
    mat_r: &MaterialParams,
    psi_r: &ConsState,
) -> Result<FacePair> {
    let l = StateInfo::new(mat_l, psi_l)?;
    let r = StateInfo::new(mat_r, psi_r)?;
    multimaterial_flux_pair_info(mat_l, &l, mat_r, &r)
}

pub fn multimaterial_flux_pair_info(
    mat_l: &MaterialParams,
    l: &StateInfo,
    mat_r: &MaterialParams,
    r: &StateInfo,
) -> Result<FacePair> {
    match solve_fan_info(l, r, shear_mode_for(mat_l, mat_r), FaceMode::Multimaterial) {
        Ok(fan) => Ok(FacePair {
            flux_left_cell: fan.flux_minus,
            flux_right_cell: fan.flux_plus,
        }),
        Err(Error::DegenerateFan) => {
            let f = l.flux().average(&r.flux());
            Ok(FacePair {
                flux_left_cell: f,
                flux_right_cell: f,
            })
        }
        Err(e) => Err(e),
    }
}

/// Residuals of the three jump conditions of the fan, each component
/// normalized by `scale[k]`. Returns the largest.
pub fn rankine_hugoniot_residual(l: &StateInfo, r: &StateInfo, fan: &RiemannFan, scale: &[f64; 6]) -> f64 {
    let fl = l.flux().0;
    let fr = r.flux().0;
    let ul = reduced(&l.cons);
    let ur = reduced(&r.cons);
    let um = reduced(&fan.state_minus);
    let up = reduced(&fan.state_plus);
    let (fm, fp) = (fan.flux_minus.0, fan.flux_plus.0);
    let mut worst: f64 = 0.0;
    for k in 0..6 {
        let right = fr[k] - fp[k] - fan.s_r * (ur[k] - up[k]);
        let mid = fp[k] - fm[k] - fan.u1_star * (up[k] - um[k]);
        let left = fm[k] - fl[k] - fan.s_l * (um[k] - ul[k]);
        worst = worst.max(right.abs().max(mid.abs()).max(left.abs()) / scale[k]);
    }
    worst
}
