//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

/// Two-shock/two-rarefaction star state of the classical Riemann problem for
/// stiffened gases, `p = (gamma - 1) rho e - gamma p_inf`.
#[derive(Debug, Clone, Copy)]
pub struct GasSide {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
    pub gamma: f64,
    pub p_inf: f64,
}

impl GasSide {
    fn sound(&self) -> f64 {
        (self.gamma * (self.p + self.p_inf) / self.rho).sqrt()
    }

    /// Velocity change function and its derivative at star pressure `ps`.
    fn f(&self, ps: f64) -> (f64, f64) {
        let g = self.gamma;
        let pp = self.p + self.p_inf;
        let psp = ps + self.p_inf;
        if ps > self.p {
            let a = 2.0 / ((g + 1.0) * self.rho);
            let b = (g - 1.0) / (g + 1.0) * pp;
            let q = (a / (psp + b)).sqrt();
            let f = (ps - self.p) * q;
            let df = q * (1.0 - 0.5 * (ps - self.p) / (psp + b));
            (f, df)
        } else {
            let c = self.sound();
            let e = (g - 1.0) / (2.0 * g);
            let f = 2.0 * c / (g - 1.0) * ((psp / pp).powf(e) - 1.0);
            let df = 1.0 / (self.rho * c) * (psp / pp).powf(-(g + 1.0) / (2.0 * g));
            (f, df)
        }
    }

    /// Star density behind the wave connecting this side to `ps`.
    pub fn star_density(&self, ps: f64) -> f64 {
        let g = self.gamma;
        let r = (ps + self.p_inf) / (self.p + self.p_inf);
        if ps > self.p {
            let k = (g - 1.0) / (g + 1.0);
            self.rho * (r + k) / (k * r + 1.0)
        } else {
            self.rho * r.powf(1.0 / g)
        }
    }
}

/// Star pressure and velocity by Newton iteration on the pressure function.
pub fn gas_star(l: &GasSide, r: &GasSide) -> (f64, f64) {
    let floor = -l.p_inf.min(r.p_inf) + 1e-14 * (l.p + r.p);
    let mut p = 0.5 * (l.p + r.p);
    for _ in 0..200 {
        let (fl, dl) = l.f(p);
        let (fr, dr) = r.f(p);
        let g = fl + fr + (r.u - l.u);
        let mut next = p - g / (dl + dr);
        if next <= floor {
            next = 0.5 * (p + floor);
        }
        if ((next - p) / p).abs() < 1e-15 {
            p = next;
            break;
        }
        p = next;
    }
    let u = 0.5 * (l.u + r.u) + 0.5 * (r.f(p).0 - l.f(p).0);
    (p, u)
}

/// Observed order of convergence from errors at successive refinements by 2.
pub fn orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

use multimat::eos::{DefGrad, MaterialParams, MieGruneisenParams};
use multimat::state::{prim_to_cons, ConsState, PrimState, StateInfo};
use rand::Rng;

/// Media families sampled by the random generators.
pub const KINDS: [&str; 5] = ["perfect gas", "stiffened gas", "van der waals", "neohookean", "mie-gruneisen"];

pub fn random_material(rng: &mut impl Rng, kind: usize) -> MaterialParams {
    match kind {
        0 => MaterialParams::perfect_gas(rng.gen_range(1.1..3.0)),
        1 => MaterialParams::stiffened_gas(rng.gen_range(1.5..6.0), 10f64.powf(rng.gen_range(7.0..9.5))),
        2 => MaterialParams::van_der_waals(rng.gen_range(1.2..1.67), rng.gen_range(0.0..5.0), rng.gen_range(0.0..1e-3)),
        3 => MaterialParams::neohookean(
            rng.gen_range(2.0..5.0),
            10f64.powf(rng.gen_range(9.0..10.7)),
            10f64.powf(rng.gen_range(8.0..11.0)),
            rng.gen_range(1000.0..20000.0),
        ),
        _ => MaterialParams::mie_gruneisen(
            rng.gen_range(1.8..2.6),
            MieGruneisenParams {
                rho_ref: 1134.0,
                a1: 0.819181e9,
                a2: 1.50835e9,
                e1: 4.52969,
                e2: 1.42144,
            },
        ),
    }
}

fn velocity_scale(kind: usize) -> f64 {
    [300.0, 1000.0, 100.0, 1000.0, 1000.0][kind]
}

/// Random deformation with positive determinant, within 25% of a rotation-free identity.
pub fn random_deformation(rng: &mut impl Rng) -> DefGrad {
    loop {
        let mut e = || rng.gen_range(-0.25..0.25);
        let g = DefGrad::new(1.0 + e(), e(), e(), 1.0 + e());
        if g.det() > 0.5 {
            return g;
        }
    }
}

/// A random hyperbolic state of `mat`, with `rho = rho0 det(grad Y)` for solids.
pub fn random_prim(rng: &mut impl Rng, mat: &MaterialParams, kind: usize) -> PrimState {
    loop {
        let v = velocity_scale(kind);
        let (u1, u2) = (rng.gen_range(-v..v), rng.gen_range(-v..v));
        let w = match kind {
            0 => PrimState::new(10f64.powf(rng.gen_range(-1.0..1.0)), u1, u2, 10f64.powf(rng.gen_range(3.0..6.0))),
            1 => PrimState::new(rng.gen_range(500.0..1500.0), u1, u2, 10f64.powf(rng.gen_range(5.0..9.0))),
            2 => PrimState::new(rng.gen_range(0.5..50.0), u1, u2, 10f64.powf(rng.gen_range(4.0..7.0))),
            3 => {
                let g = random_deformation(rng);
                PrimState {
                    g,
                    ..PrimState::new(mat.rho0 * g.det(), u1, u2, 10f64.powf(rng.gen_range(5.0..10.0)))
                }
            }
            _ => PrimState::new(rng.gen_range(1000.0..1500.0), u1, u2, 10f64.powf(rng.gen_range(5.0..10.5))),
        };
        if let Ok(c) = prim_to_cons(mat, &w) {
            if StateInfo::new(mat, &c).is_ok() {
                return w;
            }
        }
    }
}

/// A random admissible conservative state together with its medium.
pub fn random_state(rng: &mut impl Rng, kind: usize) -> (MaterialParams, ConsState) {
    let mat = random_material(rng, kind);
    let w = random_prim(rng, &mat, kind);
    (mat, prim_to_cons(&mat, &w).expect("admissible"))
}
