//! Conservative and primitive states, the x1-direction physical flux, and the
//! axis relabeling that maps x2 fluxes onto x1 fluxes.

use std::ops::{Add, Mul, Sub};

use crate::eos::{DefGrad, MaterialParams, Stress};
use crate::error::Result;

/// Number of conservative components per cell.
pub const NCONS: usize = 8;

/// Conservative variables, ordered `rho, phi1, phi2, Y^1_1, Y^2_1, Y^1_2, Y^2_2, psi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsState {
    pub rho: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub g: DefGrad,
    /// Total energy per unit volume.
    pub psi: f64,
}

impl Default for ConsState {
    fn default() -> Self {
        Self::from_array([0.0; NCONS])
    }
}

impl ConsState {
    pub fn to_array(&self) -> [f64; NCONS] {
        [
            self.rho, self.phi1, self.phi2, self.g.y11, self.g.y21, self.g.y12, self.g.y22, self.psi,
        ]
    }

    pub fn from_array(a: [f64; NCONS]) -> Self {
        Self {
            rho: a[0],
            phi1: a[1],
            phi2: a[2],
            g: DefGrad::new(a[3], a[5], a[4], a[6]),
            psi: a[7],
        }
    }

    pub fn u1(&self) -> f64 {
        self.phi1 / self.rho
    }

    pub fn u2(&self) -> f64 {
        self.phi2 / self.rho
    }

    /// Volumetric internal energy: `psi/rho - |u|^2/2 - eps_iso`.
    pub fn eps_vol(&self, mat: &MaterialParams) -> Result<f64> {
        let u1 = self.u1();
        let u2 = self.u2();
        Ok(self.psi / self.rho - 0.5 * (u1 * u1 + u2 * u2) - mat.elastic_energy(&self.g)?)
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }
}

impl Add for ConsState {
    type Output = ConsState;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = (self.to_array(), rhs.to_array());
        Self::from_array(std::array::from_fn(|k| a[k] + b[k]))
    }
}

impl Sub for ConsState {
    type Output = ConsState;
    fn sub(self, rhs: Self) -> Self {
        let (a, b) = (self.to_array(), rhs.to_array());
        Self::from_array(std::array::from_fn(|k| a[k] - b[k]))
    }
}

impl Mul<f64> for ConsState {
    type Output = ConsState;
    fn mul(self, s: f64) -> Self {
        let a = self.to_array();
        Self::from_array(std::array::from_fn(|k| a[k] * s))
    }
}

/// Relabels axis 1 and axis 2.
///
/// Momenta are exchanged and `grad Y` is conjugated by the permutation, so
/// the x1 flux of the swapped state is the swapped x2 flux of the original.
/// Also applies to flux vectors laid out like [`ConsState`].
pub fn swap_direction(s: &ConsState) -> ConsState {
    ConsState {
        rho: s.rho,
        phi1: s.phi2,
        phi2: s.phi1,
        g: s.g.swapped(),
        psi: s.psi,
    }
}

/// Initial-data variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimState {
    pub rho: f64,
    pub u1: f64,
    pub u2: f64,
    pub p: f64,
    pub g: DefGrad,
}

impl PrimState {
    pub fn new(rho: f64, u1: f64, u2: f64, p: f64) -> Self {
        Self {
            rho,
            u1,
            u2,
            p,
            g: DefGrad::identity(),
        }
    }
}

pub fn cons_to_prim(mat: &MaterialParams, s: &ConsState) -> Result<PrimState> {
    let p = mat.pressure_from_rho_eps(s.rho, s.eps_vol(mat)?)?;
    Ok(PrimState {
        rho: s.rho,
        u1: s.u1(),
        u2: s.u2(),
        p,
        g: s.g,
    })
}

pub fn prim_to_cons(mat: &MaterialParams, w: &PrimState) -> Result<ConsState> {
    let eps = mat.eps_from_rho_p(w.rho, w.p)? + mat.elastic_energy(&w.g)?;
    let e = eps + 0.5 * (w.u1 * w.u1 + w.u2 * w.u2);
    Ok(ConsState {
        rho: w.rho,
        phi1: w.rho * w.u1,
        phi2: w.rho * w.u2,
        g: w.g,
        psi: w.rho * e,
    })
}

/// x1-direction flux, ordered mass, x-momentum, y-momentum, `Y^1_1`, `Y^2_1`, energy.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FluxVector(pub [f64; 6]);

impl FluxVector {
    /// The same flux in the 8-component conservative layout; the
    /// `Y^i_2` rows carry no x1 flux.
    pub fn embed(&self) -> ConsState {
        let f = self.0;
        ConsState::from_array([f[0], f[1], f[2], f[3], f[4], 0.0, 0.0, f[5]])
    }

    pub fn average(&self, other: &FluxVector) -> FluxVector {
        FluxVector(std::array::from_fn(|k| 0.5 * (self.0[k] + other.0[k])))
    }
}

/// The six components of a conservative state transported in x1.
pub fn reduced(s: &ConsState) -> [f64; 6] {
    [s.rho, s.phi1, s.phi2, s.g.y11, s.g.y21, s.psi]
}

/// A conservative state with its derived thermodynamic quantities.
#[derive(Debug, Clone, Copy)]
pub struct StateInfo {
    pub cons: ConsState,
    pub u1: f64,
    pub u2: f64,
    pub p: f64,
    pub stress: Stress,
    pub c2: f64,
    /// Fast characteristic speed relative to the flow in x1.
    pub lambda: f64,
}

impl StateInfo {
    pub fn new(mat: &MaterialParams, cons: &ConsState) -> Result<Self> {
        if !cons.is_finite() {
            return Err(crate::error::Error::NonPhysicalState("non-finite state".into()));
        }
        let eps = cons.eps_vol(mat)?;
        let p = mat.pressure_from_rho_eps(cons.rho, eps)?;
        let c2 = mat.sound_speed_sq(cons.rho, eps)?;
        let stress = mat.cauchy_stress(p, &cons.g)?;
        let u1 = cons.u1();
        let speeds = mat.wave_speeds_from_c2(cons.rho, u1, c2, &cons.g)?;
        Ok(Self {
            cons: *cons,
            u1,
            u2: cons.u2(),
            p,
            stress,
            c2,
            lambda: speeds.fast,
        })
    }

    pub fn flux(&self) -> FluxVector {
        let s = &self.cons;
        let (u1, u2) = (self.u1, self.u2);
        let sig = &self.stress;
        FluxVector([
            s.phi1,
            s.phi1 * u1 - sig.s11,
            s.phi1 * u2 - sig.s21,
            u1 * s.g.y11 + u2 * s.g.y12,
            u1 * s.g.y21 + u2 * s.g.y22,
            u1 * s.psi - (sig.s11 * u1 + sig.s21 * u2),
        ])
    }
}

pub fn physical_flux(mat: &MaterialParams, s: &ConsState) -> Result<FluxVector> {
    Ok(StateInfo::new(mat, s)?.flux())
}
