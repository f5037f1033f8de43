//! Finite-volume update: MUSCL traces, HLLC fluxes with two-sided fluxes at
//! material faces, level-set transport, and Heun time stepping.
//!
//! Both directions are summed in one residual. The x2 direction reuses the
//! x1 machinery on relabeled states (see [`swap_direction`]).
//!
//! At a material face the neighbour across the face never enters a slope.
//! It is replaced by the intermediate state of the first-order fan on the
//! own side, taken as a value at the face, so the one-sided difference is
//! doubled.

use rayon::prelude::*;

use crate::eos::MaterialParams;
use crate::error::{Error, Result};
use crate::hllc::{
    multimaterial_flux_pair_info, shear_mode_for, single_material_flux_info, solve_fan_info, FaceMode, FacePair,
};
use crate::levelset::{advection_rate, flip_cells, FaceFans};
use crate::mesh::{apply_bc, Boundaries, Boundary, Field2D};
use crate::state::{swap_direction, ConsState, FluxVector, StateInfo, NCONS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limiter {
    Minmod,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub cfl: f64,
    pub limiter: Limiter,
    pub order: Order,
    pub bcs: Boundaries,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            cfl: 0.6,
            limiter: Limiter::Minmod,
            order: Order::Second,
            bcs: [Boundary::Neumann; 4],
        }
    }
}

impl SchemeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::Config(format!("cfl must lie in (0, 1), got {}", self.cfl)));
        }
        Ok(())
    }
}

pub fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

type FanStates = Option<(ConsState, ConsState)>;

/// Error tagged with the line-local cell index it came from.
type LineResult<T> = std::result::Result<T, (usize, Error)>;

fn info(materials: &[MaterialParams; 2], mats: &[u8], row: &[ConsState], c: usize) -> LineResult<StateInfo> {
    StateInfo::new(&materials[mats[c] as usize], &row[c]).map_err(|e| (c, e))
}

/// First-order fans at the material faces between cells `c` and `c + 1`
/// for `c` in `lo..=hi`.
fn line_fans(
    row: &[ConsState],
    mats: &[u8],
    infos: &[Option<StateInfo>],
    materials: &[MaterialParams; 2],
    lo: usize,
    hi: usize,
) -> LineResult<Vec<FanStates>> {
    let mut fans = vec![None; row.len()];
    for c in lo..=hi {
        if mats[c] == mats[c + 1] {
            continue;
        }
        let (ml, mr) = (&materials[mats[c] as usize], &materials[mats[c + 1] as usize]);
        let (l, r) = (infos[c].as_ref().expect("info"), infos[c + 1].as_ref().expect("info"));
        fans[c] = match solve_fan_info(l, r, shear_mode_for(ml, mr), FaceMode::Multimaterial) {
            Ok(fan) => Some((fan.state_minus, fan.state_plus)),
            Err(Error::DegenerateFan) => Some((row[c], row[c + 1])),
            Err(e) => return Err((c, e)),
        };
    }
    Ok(fans)
}

fn limited_traces(
    row: &[ConsState],
    mats: &[u8],
    fans: &[FanStates],
    c: usize,
    limiter: Limiter,
) -> (ConsState, ConsState) {
    let u = row[c].to_array();
    let left = match (mats[c - 1] != mats[c], fans[c - 1]) {
        (true, Some((_, plus))) => {
            let p = plus.to_array();
            std::array::from_fn::<f64, NCONS, _>(|k| 2.0 * (u[k] - p[k]))
        }
        _ => {
            let p = row[c - 1].to_array();
            std::array::from_fn(|k| u[k] - p[k])
        }
    };
    let right = match (mats[c] != mats[c + 1], fans[c]) {
        (true, Some((minus, _))) => {
            let m = minus.to_array();
            std::array::from_fn::<f64, NCONS, _>(|k| 2.0 * (m[k] - u[k]))
        }
        _ => {
            let n = row[c + 1].to_array();
            std::array::from_fn(|k| n[k] - u[k])
        }
    };
    let slope: [f64; NCONS] = match limiter {
        Limiter::Minmod => std::array::from_fn(|k| minmod(left[k], right[k])),
    };
    (
        ConsState::from_array(std::array::from_fn(|k| u[k] - 0.5 * slope[k])),
        ConsState::from_array(std::array::from_fn(|k| u[k] + 0.5 * slope[k])),
    )
}

/// Traces `(at left face, at right face)` with their derived quantities for
/// cells `g - 1 ..= g + n`, plus the first-order material-face fans.
struct Traces {
    cells: Vec<Option<(StateInfo, StateInfo)>>,
    fans: Vec<FanStates>,
}

fn traces(row: &[ConsState], mats: &[u8], materials: &[MaterialParams; 2], g: usize, order: Order, limiter: Limiter) -> LineResult<Traces> {
    let n = row.len() - 2 * g;
    let (lo, hi) = match order {
        Order::First => (g - 1, g + n),
        Order::Second => (g - 2, g + n + 1),
    };
    let mut infos = vec![None; row.len()];
    for c in lo..=hi {
        infos[c] = Some(info(materials, mats, row, c)?);
    }
    // fans at every face touching the cells that receive traces
    let fans = line_fans(row, mats, &infos, materials, (g - 2).max(lo), (g + n).min(hi - 1))?;
    let mut cells = vec![None; row.len()];
    for c in g - 1..=g + n {
        let own = infos[c].expect("info");
        let pair = match order {
            Order::First => (own, own),
            Order::Second => {
                let (tm, tp) = limited_traces(row, mats, &fans, c, limiter);
                let mat = &materials[mats[c] as usize];
                match (StateInfo::new(mat, &tm), StateInfo::new(mat, &tp)) {
                    (Ok(a), Ok(b)) => (a, b),
                    // an inadmissible trace drops the cell to first order
                    _ => (own, own),
                }
            }
        };
        cells[c] = Some(pair);
    }
    Ok(Traces { cells, fans })
}

/// Face traces `(left, right)` for the `n + 1` faces of a line of `n`
/// interior cells padded with `g` ghosts on both sides.
pub fn muscl_reconstruct(
    row: &[ConsState],
    mats: &[u8],
    materials: &[MaterialParams; 2],
    g: usize,
    order: Order,
) -> Result<Vec<(ConsState, ConsState)>> {
    let t = traces(row, mats, materials, g, order, Limiter::Minmod).map_err(|(_, e)| e)?;
    let n = row.len() - 2 * g;
    Ok((0..=n)
        .map(|f| {
            let (a, b) = (g - 1 + f, g + f);
            (t.cells[a].expect("trace").1.cons, t.cells[b].expect("trace").0.cons)
        })
        .collect())
}

/// Flux differences `F(right face) - F(left face)` seen by each interior
/// cell, and the material-face fans for faces `0..=n`.
struct LineOutput {
    diffs: Vec<[f64; 6]>,
    fans: Vec<FanStates>,
}

fn sweep_line(
    row: &[ConsState],
    mats: &[u8],
    materials: &[MaterialParams; 2],
    g: usize,
    cfg: &SchemeConfig,
) -> LineResult<LineOutput> {
    let n = row.len() - 2 * g;
    let t = traces(row, mats, materials, g, cfg.order, cfg.limiter)?;
    let mut faces: Vec<FacePair> = Vec::with_capacity(n + 1);
    for f in 0..=n {
        let (a, b) = (g - 1 + f, g + f);
        let l = &t.cells[a].as_ref().expect("trace").1;
        let r = &t.cells[b].as_ref().expect("trace").0;
        let (ma, mb) = (&materials[mats[a] as usize], &materials[mats[b] as usize]);
        let pair = if mats[a] == mats[b] {
            let flux = single_material_flux_info(ma, l, r).map_err(|e| (b, e))?;
            FacePair {
                flux_left_cell: flux,
                flux_right_cell: flux,
            }
        } else {
            multimaterial_flux_pair_info(ma, l, mb, r).map_err(|e| (b, e))?
        };
        faces.push(pair);
    }
    let diffs = (0..n)
        .map(|i| {
            let (out, inn) = (&faces[i + 1].flux_left_cell, &faces[i].flux_right_cell);
            std::array::from_fn(|k| out.0[k] - inn.0[k])
        })
        .collect();
    let fans = (0..=n).map(|f| t.fans[g - 1 + f]).collect();
    Ok(LineOutput { diffs, fans })
}

/// Time derivatives of the interior cells and level set.
pub struct Residual {
    pub du: Vec<ConsState>,
    pub dphi: Vec<f64>,
    pub fans: FaceFans,
    pub velocity: Vec<[f64; 2]>,
}

fn at_cell(i: usize, j: usize, e: Error) -> Error {
    Error::AtCell {
        i,
        j,
        source: Box::new(e),
    }
}

/// Cell velocities of the interior, row-major.
pub fn cell_velocities(f: &Field2D) -> Vec<[f64; 2]> {
    f.interior()
        .map(|(i, j)| {
            let c = f.cell(i, j);
            [c.u1(), c.u2()]
        })
        .collect()
}

/// Spatial operator on a ghost-filled field.
pub fn residual(f: &Field2D, cfg: &SchemeConfig) -> Result<Residual> {
    let gr = f.grid;
    let g = gr.n_ghost;
    let (nx, ny, sx, sy) = (gr.nx, gr.ny, gr.sx(), gr.sy());
    let rows: Vec<LineOutput> = (0..ny)
        .into_par_iter()
        .map(|j| {
            let span = (j + g) * sx..(j + g + 1) * sx;
            sweep_line(&f.cells[span.clone()], &f.mat[span], &f.materials, g, cfg)
                .map_err(|(c, e)| at_cell(c.saturating_sub(g), j, e))
        })
        .collect::<Result<_>>()?;
    let cols: Vec<LineOutput> = if gr.is_1d() {
        Vec::new()
    } else {
        (0..nx)
            .into_par_iter()
            .map(|i| {
                let col: Vec<ConsState> = (0..sy).map(|jj| swap_direction(&f.cells[jj * sx + i + g])).collect();
                let mats: Vec<u8> = (0..sy).map(|jj| f.mat[jj * sx + i + g]).collect();
                sweep_line(&col, &mats, &f.materials, g, cfg).map_err(|(c, e)| at_cell(i, c.saturating_sub(g), e))
            })
            .collect::<Result<_>>()?
    };
    let mut du = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let d1 = FluxVector(rows[j].diffs[i]).embed() * (-1.0 / gr.dx1);
            let total = if gr.is_1d() {
                d1
            } else {
                d1 + swap_direction(&FluxVector(cols[i].diffs[j]).embed()) * (-1.0 / gr.dx2)
            };
            du.push(total);
        }
    }
    let mut fans = FaceFans::new(&gr);
    for (j, r) in rows.into_iter().enumerate() {
        fans.set_row(j, r.fans);
    }
    for (i, c) in cols.into_iter().enumerate() {
        let unswapped = c.fans.into_iter().map(|s| s.map(|(a, b)| (swap_direction(&a), swap_direction(&b)))).collect();
        fans.set_column(i, unswapped);
    }
    let velocity = cell_velocities(f);
    let dphi = advection_rate(f, &velocity);
    Ok(Residual {
        du,
        dphi,
        fans,
        velocity,
    })
}

/// Largest stable step: `cfl * h / max(|u| + fast speed)` over the interior.
pub fn compute_dt(f: &Field2D, cfl: f64) -> Result<f64> {
    let gr = f.grid;
    let rates: Vec<f64> = (0..gr.ny as isize)
        .into_par_iter()
        .map(|j| {
            let mut worst: f64 = 0.0;
            for i in 0..gr.nx as isize {
                let mat = f.material_at(i, j);
                let c = f.cell(i, j);
                let wrap = |e| at_cell(i as usize, j as usize, e);
                let sx = StateInfo::new(mat, c).map_err(wrap)?;
                worst = worst.max(sx.u1.abs() + sx.lambda);
                if !gr.is_1d() {
                    let sy = StateInfo::new(mat, &swap_direction(c)).map_err(wrap)?;
                    worst = worst.max(sy.u1.abs() + sy.lambda);
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let lam = rates.into_iter().fold(0.0, f64::max);
    if !(lam > 0.0) || !lam.is_finite() {
        return Err(Error::HyperbolicityLoss { c2: lam });
    }
    let h = if gr.is_1d() { gr.dx1 } else { gr.dx1.min(gr.dx2) };
    Ok(cfl * h / lam)
}

fn axpy(f: &mut Field2D, base: &Field2D, r: &Residual, dt: f64, weight: Option<&Field2D>) {
    let gr = f.grid;
    for (n, (i, j)) in base.interior().enumerate() {
        let k = gr.idx(i, j);
        let stage = base.cells[k] + r.du[n] * dt;
        let phi = base.phi[k] + dt * r.dphi[n];
        match weight {
            Some(u0) => {
                f.cells[k] = (u0.cells[k] + stage) * 0.5;
                f.phi[k] = 0.5 * (u0.phi[k] + phi);
            }
            None => {
                f.cells[k] = stage;
                f.phi[k] = phi;
            }
        }
    }
}

/// Counts reported by one step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepReport {
    pub flipped: usize,
}

/// One Heun step of length `dt`, followed by the material flips.
pub fn step_rk2(f: &mut Field2D, dt: f64, cfg: &SchemeConfig) -> Result<StepReport> {
    apply_bc(f, &cfg.bcs);
    let u0 = f.clone();
    let r0 = residual(&u0, cfg)?;
    let mut u1 = u0.clone();
    axpy(&mut u1, &u0, &r0, dt, None);
    apply_bc(&mut u1, &cfg.bcs);
    let r1 = residual(&u1, cfg)?;
    axpy(f, &u1, &r1, dt, Some(&u0));
    let flipped = flip_cells(f, &u0.mat, &r0.velocity, &r0.fans);
    apply_bc(f, &cfg.bcs);
    let gr = f.grid;
    for (i, j) in f.interior() {
        let k = gr.idx(i, j);
        let mat = &f.materials[f.mat[k] as usize];
        StateInfo::new(mat, &f.cells[k]).map_err(|e| at_cell(i as usize, j as usize, e))?;
    }
    Ok(StepReport { flipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{material_of, Grid};
    use crate::state::{cons_to_prim, prim_to_cons, PrimState};

    fn air() -> MaterialParams {
        MaterialParams::perfect_gas(1.4)
    }

    fn copper() -> MaterialParams {
        MaterialParams::neohookean(4.22, 3.42e10, 5e10, 8900.0)
    }

    fn line_field(nx: usize, mats: [MaterialParams; 2], x0: f64, w: impl Fn(f64) -> PrimState) -> Field2D {
        let g = Grid::line(nx, 0.0, 1.0).unwrap();
        let mut f = Field2D::new(g, mats);
        for (i, j) in f.interior().collect::<Vec<_>>() {
            let x = g.center(i, j)[0];
            let k = g.idx(i, j);
            f.phi[k] = x - x0;
            f.mat[k] = material_of(f.phi[k]);
            f.cells[k] = prim_to_cons(&mats[f.mat[k] as usize], &w(x)).unwrap();
        }
        apply_bc(&mut f, &[Boundary::Neumann; 4]);
        f
    }

    #[test]
    fn minmod_cases() {
        assert_eq!(minmod(1.0, 2.0), 1.0);
        assert_eq!(minmod(-1.0, 2.0), 0.0);
        assert_eq!(minmod(-3.0, -2.0), -2.0);
        assert_eq!(minmod(0.0, 5.0), 0.0);
    }

    #[test]
    fn dt_of_gas_at_rest() {
        let f = line_field(1000, [air(), air()], 2.0, |_| PrimState::new(1.0, 0.0, 0.0, 1000.0));
        let dt = compute_dt(&f, 0.6).unwrap();
        assert!((dt - 0.6 * 1e-3 / 1400f64.sqrt()).abs() < 1e-15);
        let moving = line_field(1000, [air(), air()], 2.0, |_| PrimState::new(1.0, 30.0, 0.0, 1000.0));
        assert!(compute_dt(&moving, 0.6).unwrap() < dt);
    }

    #[test]
    fn dt_of_copper_uses_fast_speed() {
        let f = line_field(100, [copper(), copper()], 2.0, |_| PrimState::new(8900.0, 0.0, 0.0, 1e5));
        let eps = copper().eps_from_rho_p(8900.0, 1e5).unwrap();
        let c2 = copper().sound_speed_sq(8900.0, eps).unwrap();
        let fast = (c2 + 2.0 * 5e10 / 8900.0).sqrt();
        let dt = compute_dt(&f, 0.6).unwrap();
        assert!((dt - 0.6 * 0.01 / fast).abs() < 1e-12 * dt);
    }

    #[test]
    fn linear_profile_traces_are_exact() {
        let f = line_field(10, [air(), air()], 2.0, |x| PrimState::new(1.0 + x, 0.0, 0.0, 1e5));
        let g = f.grid.n_ghost;
        let sx = f.grid.sx();
        let row = &f.cells[g * sx..(g + 1) * sx];
        let mats = &f.mat[g * sx..(g + 1) * sx];
        let tr = muscl_reconstruct(row, mats, &f.materials, g, Order::Second).unwrap();
        for (face, (l, r)) in tr.iter().enumerate().skip(2).take(7) {
            let x = face as f64 * 0.1;
            assert!((l.rho - (1.0 + x)).abs() < 1e-12, "{face}");
            assert!((r.rho - (1.0 + x)).abs() < 1e-12, "{face}");
        }
    }

    #[test]
    fn constant_data_across_interface_has_flat_traces() {
        let f = line_field(10, [air(), MaterialParams::perfect_gas(1.6)], 0.5, |_| PrimState::new(1.0, 0.0, 0.0, 1e5));
        let g = f.grid.n_ghost;
        let sx = f.grid.sx();
        let row = &f.cells[g * sx..(g + 1) * sx];
        let mats = &f.mat[g * sx..(g + 1) * sx];
        let tr = muscl_reconstruct(row, mats, &f.materials, g, Order::Second).unwrap();
        for (f_idx, (l, r)) in tr.iter().enumerate() {
            let (a, b) = (g - 1 + f_idx, g + f_idx);
            assert_eq!(*l, row[a]);
            assert_eq!(*r, row[b]);
        }
    }

    #[test]
    fn uniform_box_is_steady() {
        let cfg = SchemeConfig::default();
        let w = PrimState::new(1.3, 0.0, 0.0, 7e4);
        let g = Grid::new(8, 6, [0.0, 0.0], [1.0, 0.75]).unwrap();
        let mut f = Field2D::new(g, [air(), air()]);
        for (i, j) in f.interior().collect::<Vec<_>>() {
            let k = g.idx(i, j);
            f.cells[k] = prim_to_cons(&air(), &w).unwrap();
            f.phi[k] = -1.0;
        }
        apply_bc(&mut f, &cfg.bcs);
        let before = f.clone();
        let dt = compute_dt(&f, cfg.cfl).unwrap();
        step_rk2(&mut f, dt, &cfg).unwrap();
        assert_eq!(f, before);
    }

    #[test]
    fn tc5_equilibrium_survives_a_step() {
        let cfg = SchemeConfig::default();
        let mut f = line_field(100, [copper(), air()], 0.5, |x| {
            if x < 0.5 {
                PrimState::new(8900.0, 1000.0, 100.0, 1e5)
            } else {
                PrimState::new(1.0, 1000.0, 0.0, 1e5)
            }
        });
        for _ in 0..5 {
            let dt = compute_dt(&f, cfg.cfl).unwrap();
            step_rk2(&mut f, dt, &cfg).unwrap();
        }
        for (i, j) in f.interior() {
            let w = cons_to_prim(f.material_at(i, j), f.cell(i, j)).unwrap();
            assert!((w.u1 - 1000.0).abs() < 1e-10 * 1000.0, "{i}: {}", w.u1);
            assert!((w.p - 1e5).abs() < 1e-10 * 1e5, "{i}: {}", w.p);
        }
    }
}
