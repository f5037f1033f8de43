//! Exact solution of the x1-direction Riemann problem with up to five waves.
//!
//! In mass coordinates a one-dimensional state is described by the strain
//! `e = (v, zeta)`, with `v = 1/rho` and `D zeta/Dt = d u2/dm`, the velocity,
//! and the entropy factor `kappa`. The transverse columns `Y^i_2 = (c, d)`
//! stay frozen and `Y^1_1 v = alpha0 - c zeta`, `Y^2_1 v = beta0 - d zeta`.
//! The system is then hyperelastic: the traction `(sigma11, sigma21)` is the
//! gradient of the specific energy with respect to `e`, and the Lagrangian
//! wave speeds are the square roots of the eigenvalues of its Hessian.
//!
//! Each side carries a normal wave and, for a solid, a shear wave. Waves are
//! parametrized by a signed strength; the downstream state is either a point
//! of the Hugoniot locus or the end of an integral curve. The strengths are
//! found by Newton iteration on the jump conditions at the contact.

use crate::eos::{DefGrad, MaterialParams};
use crate::error::{Error, Result};
use crate::state::PrimState;

const MAX_ITER: usize = 200;
/// Factor by which the specific volume may grow in a rarefaction before the
/// state is considered a vacuum.
const VACUUM_RATIO: f64 = 1e8;
const RK_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveKind {
    Shock,
    Rarefaction,
    Contact,
    /// Shear wave of zero strength; on a fluid side it travels with the contact.
    Shear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub kind: WaveKind,
    /// Speed of the edge facing the upstream state.
    pub speed_head: f64,
    pub speed_tail: f64,
}

impl Wave {
    pub fn left_edge(&self) -> f64 {
        self.speed_head.min(self.speed_tail)
    }

    pub fn right_edge(&self) -> f64 {
        self.speed_head.max(self.speed_tail)
    }
}

/// Left-facing waves move towards `-x` in the fluid frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Facing {
    Left,
    Right,
}

impl Facing {
    fn sign(self) -> f64 {
        match self {
            Facing::Left => -1.0,
            Facing::Right => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Fast,
    Slow,
}

/// Side constants shared by every state reachable from one initial state.
#[derive(Debug, Clone, Copy)]
struct Medium {
    mat: MaterialParams,
    alpha0: f64,
    beta0: f64,
    c: f64,
    d: f64,
}

#[derive(Debug, Clone, Copy)]
struct LState {
    v: f64,
    zeta: f64,
    kappa: f64,
    u1: f64,
    u2: f64,
}

impl Medium {
    fn grad(&self, s: &LState) -> DefGrad {
        DefGrad::new(
            (self.alpha0 - self.c * s.zeta) / s.v,
            self.c,
            (self.beta0 - self.d * s.zeta) / s.v,
            self.d,
        )
    }

    fn pressure(&self, s: &LState) -> Result<f64> {
        Ok(self.mat.isentrope_coeffs(1.0 / s.v)?.pressure(s.kappa))
    }

    /// `(sigma11, sigma21)`.
    fn traction(&self, s: &LState) -> Result<[f64; 2]> {
        let sig = self.mat.cauchy_stress(self.pressure(s)?, &self.grad(s))?;
        Ok([sig.s11, sig.s21])
    }

    /// Specific internal energy, volumetric plus isochoric.
    fn energy(&self, s: &LState) -> Result<f64> {
        let eps = self.mat.isentrope_coeffs(1.0 / s.v)?.eps_vol(s.kappa);
        Ok(eps + self.mat.elastic_energy(&self.grad(s))?)
    }

    /// Hessian of the specific energy with respect to `(v, zeta)`.
    fn hessian(&self, s: &LState) -> Result<[f64; 3]> {
        let rho = 1.0 / s.v;
        let c2 = self.mat.isentrope_coeffs(rho)?.sound_speed_sq(s.kappa);
        if !(c2 > 0.0) {
            return Err(Error::HyperbolicityLoss { c2 });
        }
        let g = self.grad(s);
        let chi = self.mat.chi;
        Ok([
            rho * (rho * c2 + 2.0 * chi * (g.y11 * g.y11 + g.y21 * g.y21)),
            rho * 2.0 * chi * (self.c * g.y11 + self.d * g.y21),
            rho * 2.0 * chi * (self.c * self.c + self.d * self.d),
        ])
    }

    /// Lagrangian speed and unit eigenvector of one family.
    fn eigen(&self, s: &LState, fam: Family) -> Result<(f64, [f64; 2])> {
        let [a, b, d] = self.hessian(s)?;
        let half = 0.5 * (a - d);
        let disc = (half * half + b * b).sqrt();
        let big = 0.5 * (a + d) + disc;
        let fast = {
            let v1 = [b, big - a];
            let v2 = [big - d, b];
            let n1 = v1[0].hypot(v1[1]);
            let n2 = v2[0].hypot(v2[1]);
            if n1 == 0.0 && n2 == 0.0 {
                [1.0, 0.0]
            } else if n1 > n2 {
                [v1[0] / n1, v1[1] / n1]
            } else {
                [v2[0] / n2, v2[1] / n2]
            }
        };
        match fam {
            Family::Fast => Ok((big.sqrt(), fast)),
            Family::Slow => {
                let small = ((a * d - b * b) / big).max(0.0);
                Ok((small.sqrt(), [-fast[1], fast[0]]))
            }
        }
    }

    fn speed(&self, s: &LState, fam: Family) -> Result<f64> {
        Ok(self.eigen(s, fam)?.0)
    }

    fn prim(&self, s: &LState) -> Result<PrimState> {
        Ok(PrimState {
            rho: 1.0 / s.v,
            u1: s.u1,
            u2: s.u2,
            p: self.pressure(s)?,
            g: self.grad(s),
        })
    }

    /// Eulerian characteristic speed of a family on a given facing.
    fn euler_speed(&self, s: &LState, fam: Family, facing: Facing) -> Result<f64> {
        Ok(s.u1 + facing.sign() * self.speed(s, fam)? * s.v)
    }
}

fn from_prim(mat: &MaterialParams, w: &PrimState) -> Result<(Medium, LState)> {
    mat.validate()?;
    if !(w.rho > 0.0) || !w.p.is_finite() || !w.u1.is_finite() || !w.u2.is_finite() {
        return Err(Error::NonPhysicalState("invalid initial state".into()));
    }
    let coeffs = mat.isentrope_coeffs(w.rho)?;
    let kappa = (w.p - coeffs.p0) / coeffs.p1;
    if !(kappa > 0.0) {
        return Err(Error::NonPhysicalState("pressure below the cold curve".into()));
    }
    if mat.is_solid() {
        let det = w.g.det();
        if !(det > 0.0) {
            return Err(Error::DegenerateDeformation { det });
        }
        if ((mat.rho0 * det / w.rho) - 1.0).abs() > 1e-8 {
            return Err(Error::Config(
                "solid states must satisfy rho = rho0 det(grad Y)".into(),
            ));
        }
    }
    let v = 1.0 / w.rho;
    Ok((
        Medium {
            mat: *mat,
            alpha0: w.g.y11 * v,
            beta0: w.g.y21 * v,
            c: w.g.y12,
            d: w.g.y22,
        },
        LState {
            v,
            zeta: 0.0,
            kappa,
            u1: w.u1,
            u2: w.u2,
        },
    ))
}

/// Points of an integral curve, stored at the accepted integration steps.
#[derive(Debug, Clone)]
struct FanPath {
    medium: Medium,
    family: Family,
    facing: Facing,
    nodes: Vec<LState>,
    /// Direction at each node, used to keep the eigenvector orientation.
    dirs: Vec<[f64; 2]>,
    steps: Vec<f64>,
    lambdas: Vec<f64>,
}

/// Downstream state of one wave.
#[derive(Debug, Clone)]
struct WaveResult {
    kind: WaveKind,
    down: LState,
    head: f64,
    tail: f64,
    path: Option<FanPath>,
}

fn rhs(m: &Medium, s: &LState, fam: Family, facing: Facing, prev: [f64; 2]) -> Result<([f64; 4], [f64; 2])> {
    let (c, mut r) = m.eigen(s, fam)?;
    if r[0] * prev[0] + r[1] * prev[1] < 0.0 {
        r = [-r[0], -r[1]];
    }
    // du = -facing * C de
    let k = -facing.sign() * c;
    Ok(([r[0], r[1], k * r[0], k * r[1]], r))
}

fn advance(s: &LState, k: &[f64; 4], h: f64) -> LState {
    LState {
        v: s.v + h * k[0],
        zeta: s.zeta + h * k[1],
        kappa: s.kappa,
        u1: s.u1 + h * k[2],
        u2: s.u2 + h * k[3],
    }
}

fn rk4_step(m: &Medium, s: &LState, fam: Family, facing: Facing, dir: [f64; 2], h: f64) -> Result<(LState, [f64; 2])> {
    let (k1, r1) = rhs(m, s, fam, facing, dir)?;
    let (k2, _) = rhs(m, &advance(s, &k1, 0.5 * h), fam, facing, r1)?;
    let (k3, _) = rhs(m, &advance(s, &k2, 0.5 * h), fam, facing, r1)?;
    let (k4, _) = rhs(m, &advance(s, &k3, h), fam, facing, r1)?;
    let k: [f64; 4] = std::array::from_fn(|i| (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0);
    let out = advance(s, &k, h);
    let (_, r_end) = rhs(m, &out, fam, facing, r1)?;
    Ok((out, r_end))
}

/// Integral curve from `up` over arc length `len` (in strain space),
/// starting along `dir0`.
fn integrate_fan(m: &Medium, up: &LState, fam: Family, facing: Facing, dir0: [f64; 2], len: f64) -> Result<FanPath> {
    let vscale = up.v;
    let uscale = m.speed(up, fam)?.max(1e-300) * up.v + up.u1.abs().max(up.u2.abs());
    let mut path = FanPath {
        medium: *m,
        family: fam,
        facing,
        nodes: vec![*up],
        dirs: vec![dir0],
        steps: Vec::new(),
        lambdas: vec![m.euler_speed(up, fam, facing)?],
    };
    let mut done = 0.0;
    let mut h = (len / 16.0).min(0.05 * vscale);
    let mut s = *up;
    let mut dir = dir0;
    while done < len {
        if len - done < h {
            h = len - done;
        }
        let attempt = (|| -> Result<(LState, [f64; 2], f64)> {
            let (full, _) = rk4_step(m, &s, fam, facing, dir, h)?;
            let (half, dh) = rk4_step(m, &s, fam, facing, dir, 0.5 * h)?;
            let (two, r2) = rk4_step(m, &half, fam, facing, dh, 0.5 * h)?;
            let err = ((full.v - two.v).abs() / vscale)
                .max((full.zeta - two.zeta).abs() / vscale)
                .max((full.u1 - two.u1).abs() / uscale)
                .max((full.u2 - two.u2).abs() / uscale);
            Ok((two, r2, err))
        })();
        match attempt {
            Ok((next, r, err)) if err <= RK_TOL => {
                path.steps.push(h);
                s = next;
                dir = r;
                done += h;
                path.nodes.push(s);
                path.dirs.push(dir);
                path.lambdas.push(m.euler_speed(&s, fam, facing)?);
                if s.v > VACUUM_RATIO * up.v {
                    return Err(Error::VacuumFormation);
                }
                let grow = if err > 0.0 { (RK_TOL / err).powf(0.2).min(2.0) } else { 2.0 };
                h *= 0.9 * grow.max(1.0);
            }
            Ok((_, _, err)) => {
                h *= (0.9 * (RK_TOL / err).powf(0.2)).clamp(0.1, 0.5);
            }
            Err(_) => h *= 0.25,
        }
        if h < 1e-12 * len {
            return Err(Error::VacuumFormation);
        }
    }
    Ok(path)
}

impl FanPath {
    fn last(&self) -> &LState {
        self.nodes.last().expect("path has nodes")
    }

    /// State at Eulerian self-similar coordinate `xi` inside the fan.
    fn sample(&self, xi: f64) -> Result<LState> {
        let n = self.nodes.len();
        if n == 1 {
            return Ok(self.nodes[0]);
        }
        let incr = self.lambdas[n - 1] >= self.lambdas[0];
        let before = |l: f64| if incr { l <= xi } else { l >= xi };
        let mut i = 0;
        while i + 2 < n && before(self.lambdas[i + 1]) {
            i += 1;
        }
        let m = &self.medium;
        let at = |h: f64| -> Result<(LState, f64)> {
            let (s, _) = rk4_step(m, &self.nodes[i], self.family, self.facing, self.dirs[i], h)?;
            let l = m.euler_speed(&s, self.family, self.facing)?;
            Ok((s, l))
        };
        let (mut a, mut b) = (0.0, self.steps[i]);
        let fa = self.lambdas[i] - xi;
        let fb = self.lambdas[i + 1] - xi;
        if fa * fb > 0.0 {
            // outside the bracket through roundoff
            return Ok(if fa.abs() < fb.abs() { self.nodes[i] } else { self.nodes[i + 1] });
        }
        let mut best = self.nodes[i];
        for _ in 0..64 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let (s, l) = at(mid)?;
            best = s;
            if (l - xi) * fa > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(best)
    }
}

/// Orientation of the family eigenvector in which its speed increases, and
/// whether the speed varies at first order along it.
fn oriented_eigen(m: &Medium, up: &LState, fam: Family) -> Result<([f64; 2], bool)> {
    let (c, mut r) = m.eigen(up, fam)?;
    let h = 1e-6 * up.v;
    let probe = |sgn: f64| -> Result<f64> {
        let s = LState {
            v: up.v + sgn * h * r[0],
            zeta: up.zeta + sgn * h * r[1],
            ..*up
        };
        m.speed(&s, fam)
    };
    let dc = probe(1.0)? - probe(-1.0)?;
    let genuine = dc.abs() > 1e-9 * c;
    if genuine {
        if dc < 0.0 {
            r = [-r[0], -r[1]];
        }
    } else {
        let k = if r[0].abs() >= r[1].abs() { r[0] } else { r[1] };
        if k < 0.0 {
            r = [-r[0], -r[1]];
        }
    }
    Ok((r, genuine))
}

/// Shock state at strain jump `t (cos th, sin th)` with `th` chosen so that
/// the traction jump is parallel to the strain jump.
struct Hugoniot<'a> {
    m: &'a Medium,
    up: LState,
    sig_up: [f64; 2],
    e_up: f64,
}

impl<'a> Hugoniot<'a> {
    fn new(m: &'a Medium, up: &LState) -> Result<Self> {
        Ok(Self {
            m,
            up: *up,
            sig_up: m.traction(up)?,
            e_up: m.energy(up)?,
        })
    }

    /// Downstream state (velocity not set) and traction for a strain jump.
    fn point(&self, de: [f64; 2]) -> Result<(LState, [f64; 2])> {
        let m = self.m;
        let mut s = LState {
            v: self.up.v + de[0],
            zeta: self.up.zeta + de[1],
            kappa: 0.0,
            ..self.up
        };
        if !(s.v > 0.0) {
            return Err(Error::NonPhysicalState("shock compresses to zero volume".into()));
        }
        let co = m.mat.isentrope_coeffs(1.0 / s.v)?;
        let g = m.grad(&s);
        let eiso = m.mat.elastic_energy(&g)?;
        let sig0 = m.mat.cauchy_stress(co.p0, &g)?;
        let rhs = self.e_up + 0.5 * ((self.sig_up[0] + sig0.s11) * de[0] + (self.sig_up[1] + sig0.s21) * de[1])
            - co.e0
            - eiso;
        let lhs = co.e1 + 0.5 * co.p1 * de[0];
        let kappa = rhs / lhs;
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::NonPhysicalState("no admissible shock state".into()));
        }
        s.kappa = kappa;
        let sig = m.traction(&s)?;
        Ok((s, sig))
    }

    fn misalignment(&self, t: f64, th: f64) -> Result<f64> {
        let de = [t * th.cos(), t * th.sin()];
        let (_, sig) = self.point(de)?;
        let ds = [sig[0] - self.sig_up[0], sig[1] - self.sig_up[1]];
        let n = ds[0].hypot(ds[1]);
        if n == 0.0 {
            return Ok(0.0);
        }
        Ok((ds[0] * de[1] - ds[1] * de[0]) / (n * t.abs()))
    }

    fn solve_angle(&self, t: f64, th0: f64) -> Result<f64> {
        if self.m.mat.chi == 0.0 {
            // traction does not depend on zeta
            return Ok(th0);
        }
        let mut th = th0;
        for _ in 0..60 {
            let f = self.misalignment(t, th)?;
            if f.abs() < 1e-15 {
                return Ok(th);
            }
            let h = 1e-7;
            let df = (self.misalignment(t, th + h)? - self.misalignment(t, th - h)?) / (2.0 * h);
            if df == 0.0 {
                break;
            }
            let step = (-f / df).clamp(-0.2, 0.2);
            th += step;
            if step.abs() < 1e-15 {
                return Ok(th);
            }
        }
        if self.misalignment(t, th)?.abs() < 1e-10 {
            Ok(th)
        } else {
            Err(Error::NoConvergence {
                iterations: 60,
                residual: self.misalignment(t, th)?,
            })
        }
    }

    /// Shock of signed length `t` along the locus tangent to `dir`.
    /// Returns the downstream state (velocity updated) and the mass flux.
    fn shock(&self, t: f64, dir: [f64; 2], facing: Facing) -> Result<(LState, f64)> {
        let th_dir = dir[1].atan2(dir[0]);
        let n = ((t.abs() / self.up.v) / 0.02).ceil().max(1.0) as usize;
        let mut th = th_dir;
        let sgn = t.signum();
        let mut ti = 0.0;
        for k in 1..=n {
            ti = sgn * (t.abs() * k as f64 / n as f64);
            th = self.solve_angle(ti, th)?;
        }
        let de = [ti * th.cos(), ti * th.sin()];
        let (mut s, sig) = self.point(de)?;
        let ds = [sig[0] - self.sig_up[0], sig[1] - self.sig_up[1]];
        let w2 = (ds[0] * de[0] + ds[1] * de[1]) / (de[0] * de[0] + de[1] * de[1]);
        if !(w2 > 0.0) {
            return Err(Error::NonPhysicalState("shock with imaginary mass flux".into()));
        }
        let w = w2.sqrt();
        // du = -facing dsigma / W
        let k = -facing.sign() / w;
        s.u1 = self.up.u1 + k * ds[0];
        s.u2 = self.up.u2 + k * ds[1];
        Ok((s, w))
    }
}

/// Downstream state of a wave of signed strength `tau` (relative strain).
fn apply_wave(m: &Medium, up: &LState, fam: Family, facing: Facing, tau: f64, keep_path: bool) -> Result<WaveResult> {
    let c_up = m.speed(up, fam)?;
    let lam_up = up.u1 + facing.sign() * c_up * up.v;
    let t = tau * up.v;
    if t.abs() <= 1e-14 * up.v {
        return Ok(WaveResult {
            kind: if fam == Family::Slow { WaveKind::Shear } else { WaveKind::Shock },
            down: *up,
            head: lam_up,
            tail: lam_up,
            path: None,
        });
    }
    let (r, genuine) = oriented_eigen(m, up, fam)?;
    let dir = if t > 0.0 { r } else { [-r[0], -r[1]] };
    let hug = Hugoniot::new(m, up)?;
    // Along a genuinely nonlinear family the sign of the strength decides;
    // otherwise the Lax speed ordering does.
    let shock = if genuine {
        (t > 0.0).then(|| hug.shock(t.abs(), dir, facing)).transpose()?
    } else {
        hug.shock(t.abs(), dir, facing)
            .ok()
            .filter(|(down, _)| m.speed(down, fam).is_ok_and(|c| c > c_up))
    };
    if let Some((down, w)) = shock {
        {
            let s = up.u1 + facing.sign() * w * up.v;
            return Ok(WaveResult {
                kind: WaveKind::Shock,
                down,
                head: s,
                tail: s,
                path: None,
            });
        }
    }
    let path = integrate_fan(m, up, fam, facing, dir, t.abs())?;
    let down = *path.last();
    let tail = m.euler_speed(&down, fam, facing)?;
    Ok(WaveResult {
        kind: WaveKind::Rarefaction,
        down,
        head: lam_up,
        tail,
        path: if keep_path { Some(path) } else { None },
    })
}

/// One side of the fan: upstream, the state after the normal wave, the state
/// next to the contact.
struct Chain {
    fast: WaveResult,
    slow: Option<WaveResult>,
}

impl Chain {
    fn star(&self) -> &LState {
        match &self.slow {
            Some(w) => &w.down,
            None => &self.fast.down,
        }
    }
}

fn chain(m: &Medium, up: &LState, facing: Facing, taus: &[f64], keep: bool) -> Result<Chain> {
    let fast = apply_wave(m, up, Family::Fast, facing, taus[0], keep)?;
    let slow = if m.mat.is_solid() {
        Some(apply_wave(m, &fast.down, Family::Slow, facing, taus[1], keep)?)
    } else {
        None
    };
    Ok(Chain { fast, slow })
}

/// Full self-similar solution of a Riemann problem.
#[derive(Debug, Clone)]
pub struct ExactSolution {
    /// Left state, the four intermediate states, right state.
    pub states: [PrimState; 6],
    /// Normal left, shear left, contact, shear right, normal right.
    pub waves: [Wave; 5],
    pub iterations: usize,
    /// Largest normalized jump across the contact.
    pub residual: f64,
    paths: [Option<FanPath>; 5],
    mats: [MaterialParams; 2],
}

impl ExactSolution {
    pub fn contact_speed(&self) -> f64 {
        self.waves[2].speed_head
    }

    pub fn material(&self, side: usize) -> &MaterialParams {
        &self.mats[side]
    }

    /// Primitive state at `x/t = xi` and the side (0 left, 1 right) it
    /// belongs to.
    pub fn sample(&self, xi: f64) -> Result<(PrimState, usize)> {
        for (k, w) in self.waves.iter().enumerate() {
            let side = usize::from(k >= 2);
            if xi < w.left_edge() {
                return Ok((self.states[k], usize::from(k >= 3)));
            }
            if xi < w.right_edge() && w.kind == WaveKind::Rarefaction {
                let p = self.paths[k].as_ref().expect("rarefaction has a path");
                return Ok((p.medium.prim(&p.sample(xi)?)?, side));
            }
        }
        Ok((self.states[5], 1))
    }

    /// Profile at time `t` on the given abscissae for a jump at `x0`.
    pub fn profile(&self, x0: f64, t: f64, xs: &[f64]) -> Result<Vec<(PrimState, usize)>> {
        xs.iter().map(|&x| self.sample((x - x0) / t)).collect()
    }
}

struct Problem {
    ml: Medium,
    mr: Medium,
    wl: LState,
    wr: LState,
    nl: usize,
    u_scale: f64,
    s_scale: f64,
}

impl Problem {
    fn split<'x>(&self, x: &'x [f64]) -> (&'x [f64], Vec<f64>) {
        let (l, r) = x.split_at(self.nl);
        // right unknowns are stored innermost first
        let rr: Vec<f64> = r.iter().rev().copied().collect();
        (l, rr)
    }

    fn chains(&self, x: &[f64], keep: bool) -> Result<(Chain, Chain)> {
        let (l, r) = self.split(x);
        let mut lt = [0.0; 2];
        let mut rt = [0.0; 2];
        lt[..l.len()].copy_from_slice(l);
        rt[..r.len()].copy_from_slice(&r);
        Ok((
            chain(&self.ml, &self.wl, Facing::Left, &lt, keep)?,
            chain(&self.mr, &self.wr, Facing::Right, &rt, keep)?,
        ))
    }

    fn residual(&self, x: &[f64]) -> Result<Vec<f64>> {
        let (cl, cr) = self.chains(x, false)?;
        let (sl, sr) = (cl.star(), cr.star());
        let tl = self.ml.traction(sl)?;
        let tr = self.mr.traction(sr)?;
        let mut res = vec![(sr.u1 - sl.u1) / self.u_scale, (tr[0] - tl[0]) / self.s_scale];
        match (self.ml.mat.is_solid(), self.mr.mat.is_solid()) {
            (true, true) => {
                res.push((sr.u2 - sl.u2) / self.u_scale);
                res.push((tr[1] - tl[1]) / self.s_scale);
            }
            (true, false) => res.push(tl[1] / self.s_scale),
            (false, true) => res.push(tr[1] / self.s_scale),
            (false, false) => {}
        }
        Ok(res)
    }
}

fn norm(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Solves `a x = b` for a small dense system by partial pivoting.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col] == 0.0 || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Solves the Riemann problem between `(mat_l, w_l)` and `(mat_r, w_r)`.
///
/// Both states must be hyperbolic and, for solids, satisfy
/// `rho = rho0 det(grad Y)` with equal transverse columns `Y^i_2`.
pub fn solve_exact(
    mat_l: &MaterialParams,
    w_l: &PrimState,
    mat_r: &MaterialParams,
    w_r: &PrimState,
    tol: f64,
) -> Result<ExactSolution> {
    let (ml, wl) = from_prim(mat_l, w_l)?;
    let (mr, wr) = from_prim(mat_r, w_r)?;
    let (gl, gr) = (w_l.g, w_r.g);
    if mat_l.is_solid() && mat_r.is_solid() {
        let scale = gl.y12.abs().max(gl.y22.abs()).max(gr.y12.abs()).max(gr.y22.abs());
        if (gl.y12 - gr.y12).abs() > 1e-12 * scale || (gl.y22 - gr.y22).abs() > 1e-12 * scale {
            return Err(Error::Config("transverse deformation columns differ across the jump".into()));
        }
    }
    let fast_l = ml.speed(&wl, Family::Fast)? * wl.v;
    let fast_r = mr.speed(&wr, Family::Fast)? * wr.v;
    let u_scale = [fast_l, fast_r, w_l.u1.abs(), w_r.u1.abs(), w_l.u2.abs(), w_r.u2.abs()]
        .into_iter()
        .fold(0.0, f64::max);
    let tl = ml.traction(&wl)?;
    let tr = mr.traction(&wr)?;
    // tractions are measured against the stiffness, like velocities against
    // the fast speed
    let s_scale = [
        tl[0].abs(),
        tl[1].abs(),
        tr[0].abs(),
        tr[1].abs(),
        w_l.rho * fast_l * fast_l,
        w_r.rho * fast_r * fast_r,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let nl = if mat_l.is_solid() { 2 } else { 1 };
    let nr = if mat_r.is_solid() { 2 } else { 1 };
    let prob = Problem {
        ml,
        mr,
        wl,
        wr,
        nl,
        u_scale,
        s_scale,
    };
    let n = nl + nr;
    let mut x = vec![0.0; n];
    let mut r = prob.residual(&x)?;
    let mut res = norm(&r);
    let mut iterations = 0;
    let mut stalled = 0;
    while iterations < MAX_ITER {
        if res <= 1e-3 * tol || stalled >= 3 {
            break;
        }
        iterations += 1;
        let mut jac = vec![vec![0.0; n]; n];
        for j in 0..n {
            let h = 1e-7 * x[j].abs().max(1e-2);
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let (rp, rm, span) = match (prob.residual(&xp), prob.residual(&xm)) {
                (Ok(rp), Ok(rm)) => (rp, rm, 2.0 * h),
                (Ok(rp), Err(_)) => (rp, r.clone(), h),
                (Err(_), Ok(rm)) => (r.clone(), rm, h),
                (Err(e), Err(_)) => return Err(e),
            };
            for i in 0..n {
                jac[i][j] = (rp[i] - rm[i]) / span;
            }
        }
        let Some(mut dx) = solve_dense(jac, r.iter().map(|v| -v).collect()) else {
            return Err(Error::NoConvergence {
                iterations,
                residual: res,
            });
        };
        let shrink = dx
            .iter()
            .zip(&x)
            .map(|(d, xi)| 0.5f64.max(0.5 * xi.abs()) / d.abs())
            .fold(1.0f64, f64::min);
        dx.iter_mut().for_each(|d| *d *= shrink);
        let mut lam = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(&dx).map(|(a, b)| a + lam * b).collect();
            if let Ok(rt) = prob.residual(&trial) {
                let nt = norm(&rt);
                if nt < (1.0 - 1e-4 * lam) * res || (nt <= res && res < tol) {
                    stalled = if nt > 0.5 * res && res < tol { stalled + 1 } else { 0 };
                    x = trial;
                    r = rt;
                    res = nt;
                    accepted = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if !accepted {
            if res <= tol {
                break;
            }
            return Err(Error::NoConvergence {
                iterations,
                residual: res,
            });
        }
    }
    if !(res <= tol) {
        return Err(Error::NoConvergence {
            iterations,
            residual: res,
        });
    }

    let (cl, cr) = prob.chains(&x, true)?;
    let mid_l = cl.fast.down;
    let mid_r = cr.fast.down;
    let star_l = *cl.star();
    let star_r = *cr.star();
    let u_star = 0.5 * (star_l.u1 + star_r.u1);
    let states = [
        *w_l,
        ml.prim(&mid_l)?,
        ml.prim(&star_l)?,
        mr.prim(&star_r)?,
        mr.prim(&mid_r)?,
        *w_r,
    ];
    let as_wave = |w: &WaveResult| Wave {
        kind: w.kind,
        speed_head: w.head,
        speed_tail: w.tail,
    };
    let shear_or = |w: &Option<WaveResult>| match w {
        Some(w) => as_wave(w),
        None => Wave {
            kind: WaveKind::Shear,
            speed_head: u_star,
            speed_tail: u_star,
        },
    };
    let waves = [
        as_wave(&cl.fast),
        shear_or(&cl.slow),
        Wave {
            kind: WaveKind::Contact,
            speed_head: u_star,
            speed_tail: u_star,
        },
        shear_or(&cr.slow),
        as_wave(&cr.fast),
    ];
    let path_of = |w: Option<&WaveResult>| w.and_then(|w| w.path.clone());
    let paths = [
        path_of(Some(&cl.fast)),
        path_of(cl.slow.as_ref()),
        None,
        path_of(cr.slow.as_ref()),
        path_of(Some(&cr.fast)),
    ];
    Ok(ExactSolution {
        states,
        waves,
        iterations,
        residual: res,
        paths,
        mats: [*mat_l, *mat_r],
    })
}
