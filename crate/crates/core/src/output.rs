//! Line cuts, whole-field dumps, numerical Schlieren and run diagnostics.
//!
//! Numbers are written with 17 significant digits so files reload exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::levelset::Direction;
use crate::mesh::{Field2D, Grid};
use crate::state::cons_to_prim;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// `|grad rho|` by central differences at every interior cell, row-major.
/// Needs filled ghosts. Log scaling is left to post-processing.
pub fn schlieren(f: &Field2D) -> Vec<f64> {
    let g = &f.grid;
    let rho = |i: isize, j: isize| f.cell(i, j).rho;
    f.interior()
        .map(|(i, j)| {
            let d1 = (rho(i + 1, j) - rho(i - 1, j)) / (2.0 * g.dx1);
            let d2 = if g.is_1d() {
                0.0
            } else {
                (rho(i, j + 1) - rho(i, j - 1)) / (2.0 * g.dx2)
            };
            d1.hypot(d2)
        })
        .collect()
}

/// Norms of `|rho / rho0 - det(grad Y)|` over the solid cells. The L1 and L2
/// norms are area-weighted means.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConsistencyNorms {
    pub max: f64,
    pub l1: f64,
    pub l2: f64,
    pub cells: usize,
}

/// Per-cell consistency error (zero outside solids), row-major over the
/// interior, and its norms.
pub fn consistency_error(f: &Field2D) -> (Vec<f64>, ConsistencyNorms) {
    let mut n = ConsistencyNorms::default();
    let mut sum2 = 0.0;
    let errors: Vec<f64> = f
        .interior()
        .map(|(i, j)| {
            let m = f.material_at(i, j);
            if !m.is_solid() {
                return 0.0;
            }
            let c = f.cell(i, j);
            let e = (c.rho / m.rho0 - c.g.det()).abs();
            n.max = n.max.max(e);
            n.l1 += e;
            sum2 += e * e;
            n.cells += 1;
            e
        })
        .collect();
    if n.cells > 0 {
        n.l1 /= n.cells as f64;
        n.l2 = (sum2 / n.cells as f64).sqrt();
    }
    (errors, n)
}

/// Total mass held by each material.
pub fn masses(f: &Field2D) -> [f64; 2] {
    let v = f.grid.cell_volume();
    let mut m = [0.0; 2];
    for (i, j) in f.interior() {
        let k = f.grid.idx(i, j);
        m[f.mat[k] as usize] += f.cells[k].rho * v;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagRow {
    pub t: f64,
    pub step: usize,
    pub mass: [f64; 2],
    /// Change of total mass since the start, in percent.
    pub mass_error_pct: f64,
    pub consistency: ConsistencyNorms,
}

impl DiagRow {
    pub fn new(f: &Field2D, t: f64, step: usize, initial_mass: f64) -> Self {
        let mass = masses(f);
        Self {
            t,
            step,
            mass,
            mass_error_pct: 100.0 * (mass[0] + mass[1] - initial_mass) / initial_mass,
            consistency: consistency_error(f).1,
        }
    }
}

pub fn write_diagnostics(path: &Path, rows: &[DiagRow]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "t,step,mass0,mass1,mass_total,mass_error_pct,consistency_max,consistency_l1,consistency_l2")?;
    for r in rows {
        let c = &r.consistency;
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            num(r.t),
            r.step,
            num(r.mass[0]),
            num(r.mass[1]),
            num(r.mass[0] + r.mass[1]),
            num(r.mass_error_pct),
            num(c.max),
            num(c.l1),
            num(c.l2)
        )?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutRow {
    /// Coordinate along the cut.
    pub x: f64,
    pub rho: f64,
    pub u1: f64,
    pub u2: f64,
    pub p: f64,
    pub phi: f64,
    pub sigma11: f64,
    pub sigma21: f64,
}

fn transverse_index(g: &Grid, along: Direction, at: f64) -> Result<isize> {
    let (origin, h, n) = match along {
        Direction::X1 => (g.origin[1], g.dx2, g.ny),
        Direction::X2 => (g.origin[0], g.dx1, g.nx),
    };
    let s = (at - origin) / h;
    if !(s >= 0.0 && s <= n as f64) {
        return Err(Error::Config(format!(
            "cut coordinate {at} outside [{origin}, {}]",
            origin + h * n as f64
        )));
    }
    Ok((s.floor() as isize).min(n as isize - 1))
}

/// Cell-centre values along `along` in the row or column containing the
/// transverse coordinate `at`.
pub fn linecut(f: &Field2D, along: Direction, at: f64) -> Result<Vec<CutRow>> {
    let g = &f.grid;
    let m = transverse_index(g, along, at)?;
    let cells: Vec<(isize, isize)> = match along {
        Direction::X1 => (0..g.nx as isize).map(|i| (i, m)).collect(),
        Direction::X2 => (0..g.ny as isize).map(|j| (m, j)).collect(),
    };
    cells
        .into_iter()
        .map(|(i, j)| {
            let k = g.idx(i, j);
            let mat = f.material_at(i, j);
            let w = cons_to_prim(mat, &f.cells[k])?;
            let s = mat.cauchy_stress(w.p, &w.g)?;
            let c = g.center(i, j);
            Ok(CutRow {
                x: if along == Direction::X1 { c[0] } else { c[1] },
                rho: w.rho,
                u1: w.u1,
                u2: w.u2,
                p: w.p,
                phi: f.phi[k],
                sigma11: s.s11,
                sigma21: s.s21,
            })
        })
        .collect()
}

pub fn write_linecut_to(f: &Field2D, along: Direction, at: f64, w: &mut impl Write) -> Result<()> {
    let rows = linecut(f, along, at)?;
    writeln!(w, "x,rho,u1,u2,p,phi,sigma11,sigma21")?;
    for r in rows {
        let v = [r.x, r.rho, r.u1, r.u2, r.p, r.phi, r.sigma11, r.sigma21].map(num);
        writeln!(w, "{}", v.join(","))?;
    }
    Ok(())
}

pub fn write_linecut(f: &Field2D, along: Direction, at: f64, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    write_linecut_to(f, along, at, &mut w)?;
    w.flush()?;
    Ok(())
}

fn grid_header(g: &Grid, w: &mut impl Write) -> Result<()> {
    writeln!(
        w,
        "{} {} {} {} {} {}",
        g.nx,
        g.ny,
        num(g.dx1),
        num(g.dx2),
        num(g.origin[0]),
        num(g.origin[1])
    )?;
    Ok(())
}

/// Header `nx ny dx dy x0 y0`, then one
/// `rho u1 u2 p phi mat y11 y12 y21 y22` record per cell, row-major.
pub fn write_field_to(f: &Field2D, w: &mut impl Write) -> Result<()> {
    grid_header(&f.grid, w)?;
    for (i, j) in f.interior() {
        let k = f.grid.idx(i, j);
        let p = cons_to_prim(f.material_at(i, j), &f.cells[k])?;
        writeln!(
            w,
            "{} {} {} {} {} {} {} {} {} {}",
            num(p.rho),
            num(p.u1),
            num(p.u2),
            num(p.p),
            num(f.phi[k]),
            f.mat[k],
            num(p.g.y11),
            num(p.g.y12),
            num(p.g.y21),
            num(p.g.y22)
        )?;
    }
    Ok(())
}

pub fn write_field(f: &Field2D, path: &Path) -> Result<()> {
    let mut w = create(path)?;
    write_field_to(f, &mut w)?;
    w.flush()?;
    Ok(())
}

/// Same header as [`write_field`], then one value per cell.
pub fn write_scalar_field(g: &Grid, values: &[f64], path: &Path) -> Result<()> {
    let mut w = create(path)?;
    grid_header(g, &mut w)?;
    for v in values {
        writeln!(w, "{}", num(*v))?;
    }
    w.flush()?;
    Ok(())
}
