//! Time loop: steps a case to its end time, lands exactly on snapshot
//! times, records diagnostics and writes the requested files.
//!
//! Files in the output directory: `diagnostics.csv`, `snapshots.csv`
//! (index and time), and per snapshot `linecut_NNN.csv`, `field_NNN.dat`,
//! `schlieren_NNN.dat` as requested by the case.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::{initial_state, CaseConfig, Shape};
use crate::error::{Error, Result};
use crate::exact::{solve_exact, ExactSolution};
use crate::mesh::Field2D;
use crate::output::{schlieren, write_diagnostics, write_field, write_linecut, write_scalar_field, CutRow, DiagRow};
use crate::scheme::{compute_dt, step_rk2, Order};

/// Command-line style overrides applied on top of a case.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub order: Option<Order>,
    pub every: Option<f64>,
}

impl Overrides {
    pub fn apply(&self, case: &mut CaseConfig) {
        if let Some(nx) = self.nx {
            case.nx = nx;
        }
        if let Some(ny) = self.ny {
            case.ny = ny;
        }
        if let Some(cfl) = self.cfl {
            case.cfl = cfl;
        }
        if let Some(t) = self.t_end {
            case.t_end = t;
            case.output.times.retain(|&s| s <= t);
        }
        if let Some(order) = self.order {
            case.order = order;
        }
        if self.every.is_some() {
            case.output.every = self.every;
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub field: Field2D,
    pub t: f64,
    pub steps: usize,
    pub flips: usize,
    pub diagnostics: Vec<DiagRow>,
    pub snapshots: Vec<f64>,
}

/// Sorted, deduplicated snapshot times, always ending with `t_end`.
pub fn snapshot_times(case: &CaseConfig) -> Vec<f64> {
    let t_end = case.t_end;
    let mut times = case.output.times.clone();
    if let Some(dt) = case.output.every {
        let n = (t_end / dt).floor() as usize;
        times.extend((1..=n).map(|k| k as f64 * dt));
    }
    times.push(t_end);
    times.retain(|&t| t > 0.0 && t <= t_end);
    times.sort_by(f64::total_cmp);
    times.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * t_end);
    if let Some(last) = times.last_mut() {
        *last = t_end;
    }
    times
}

fn write_snapshot(case: &CaseConfig, f: &Field2D, dir: &Path, index: usize) -> Result<()> {
    let o = &case.output;
    if let Some((along, at)) = o.linecut {
        write_linecut(f, along, at, &dir.join(format!("linecut_{index:03}.csv")))?;
    }
    if o.field {
        write_field(f, &dir.join(format!("field_{index:03}.dat")))?;
    }
    if o.schlieren {
        write_scalar_field(&f.grid, &schlieren(f), &dir.join(format!("schlieren_{index:03}.dat")))?;
    }
    Ok(())
}

pub fn run(case: &CaseConfig, out: Option<&Path>) -> Result<RunSummary> {
    run_observed(case, out, |_, _| {})
}

/// Runs `case`, calling `observe` with the field after every step.
pub fn run_observed(case: &CaseConfig, out: Option<&Path>, mut observe: impl FnMut(&Field2D, f64)) -> Result<RunSummary> {
    let mut f = case.initial_field()?;
    let cfg = case.scheme();
    let dir: Option<PathBuf> = out.map(Path::to_path_buf);
    if let Some(d) = &dir {
        fs::create_dir_all(d)?;
    }
    let times = snapshot_times(case);
    let initial_mass: f64 = crate::output::masses(&f).iter().sum();
    let mut diagnostics = vec![DiagRow::new(&f, 0.0, 0, initial_mass)];
    let (mut t, mut steps, mut flips) = (0.0, 0, 0);
    observe(&f, t);
    for (index, &target) in times.iter().enumerate() {
        while t < target {
            let at = |e: Error| Error::AtTime {
                t,
                step: steps,
                source: Box::new(e),
            };
            let mut dt = compute_dt(&f, cfg.cfl).map_err(at)?;
            // avoid a sliver step just before the target
            if t + dt >= target || t + 1.5 * dt > target && target - t > dt {
                dt = if t + dt >= target { target - t } else { 0.5 * (target - t) };
            }
            let report = step_rk2(&mut f, dt, &cfg).map_err(at)?;
            flips += report.flipped;
            steps += 1;
            t = if t + dt >= target { target } else { t + dt };
            diagnostics.push(DiagRow::new(&f, t, steps, initial_mass));
            observe(&f, t);
        }
        if let Some(d) = &dir {
            write_snapshot(case, &f, d, index)?;
        }
    }
    if let Some(d) = &dir {
        write_diagnostics(&d.join("diagnostics.csv"), &diagnostics)?;
        let mut w = fs::File::create(d.join("snapshots.csv"))?;
        writeln!(w, "index,t")?;
        for (k, t) in times.iter().enumerate() {
            writeln!(w, "{k},{t:.16e}")?;
        }
    }
    Ok(RunSummary {
        field: f,
        t,
        steps,
        flips,
        diagnostics,
        snapshots: times,
    })
}

/// Exact solution of a two-state tube case (`all` then `half_plane_x`),
/// sampled at the cell centres of its grid at time `t`.
pub fn exact_profile(case: &CaseConfig, t: f64) -> Result<(ExactSolution, Vec<CutRow>)> {
    let (l, r) = match case.regions.as_slice() {
        [l, r] if l.shape == Shape::All && matches!(r.shape, Shape::HalfPlaneX(_)) => (l, r),
        _ => {
            return Err(Error::Config(format!(
                "{}: exact profiles need a two-region shock tube",
                case.name
            )))
        }
    };
    let Shape::HalfPlaneX(x0) = r.shape else { unreachable!() };
    if !(t > 0.0) {
        return Err(Error::Config("exact profile time must be positive".into()));
    }
    let (ml, mr) = (&case.materials[l.material as usize], &case.materials[r.material as usize]);
    let sol = solve_exact(ml, &initial_state(ml, &l.state), mr, &initial_state(mr, &r.state), 1e-12)?;
    let g = case.grid()?;
    let xs: Vec<f64> = (0..g.nx as isize).map(|i| g.center(i, 0)[0]).collect();
    let rows = sol
        .profile(x0, t, &xs)?
        .into_iter()
        .zip(&xs)
        .map(|((w, side), &x)| {
            let s = sol.material(side).cauchy_stress(w.p, &w.g)?;
            Ok(CutRow {
                x,
                rho: w.rho,
                u1: w.u1,
                u2: w.u2,
                p: w.p,
                phi: if side == 0 { -1.0 } else { 1.0 },
                sigma11: s.s11,
                sigma21: s.s21,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((sol, rows))
}
