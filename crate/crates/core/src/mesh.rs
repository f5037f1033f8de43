//! Cartesian grid with ghost layers and the per-cell field storage.

use crate::eos::MaterialParams;
use crate::error::{Error, Result};
use crate::state::ConsState;

/// Ghost layers on every side; enough for the five-point level-set stencil.
pub const N_GHOST: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub dx1: f64,
    pub dx2: f64,
    /// Lower-left corner of the interior.
    pub origin: [f64; 2],
    pub n_ghost: usize,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, lo: [f64; 2], hi: [f64; 2]) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::Config("grid needs at least one cell per direction".into()));
        }
        let dx1 = (hi[0] - lo[0]) / nx as f64;
        let dx2 = (hi[1] - lo[1]) / ny as f64;
        if !(dx1 > 0.0 && dx2 > 0.0) {
            return Err(Error::Config("domain bounds must be increasing".into()));
        }
        Ok(Self {
            nx,
            ny,
            dx1,
            dx2,
            origin: lo,
            n_ghost: N_GHOST,
        })
    }

    /// A strip of `nx` cells on `[lo, hi]`, one cell high with square cells.
    pub fn line(nx: usize, lo: f64, hi: f64) -> Result<Self> {
        let dx = (hi - lo) / nx as f64;
        Self::new(nx, 1, [lo, 0.0], [hi, dx])
    }

    pub fn is_1d(&self) -> bool {
        self.ny == 1
    }

    /// Row length including ghosts.
    pub fn sx(&self) -> usize {
        self.nx + 2 * self.n_ghost
    }

    pub fn sy(&self) -> usize {
        self.ny + 2 * self.n_ghost
    }

    pub fn len(&self) -> usize {
        self.sx() * self.sy()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Storage index of cell `(i, j)`; negative indices address ghosts.
    pub fn idx(&self, i: isize, j: isize) -> usize {
        let g = self.n_ghost as isize;
        debug_assert!(i >= -g && i < self.nx as isize + g);
        debug_assert!(j >= -g && j < self.ny as isize + g);
        ((j + g) as usize) * self.sx() + (i + g) as usize
    }

    pub fn center(&self, i: isize, j: isize) -> [f64; 2] {
        [
            self.origin[0] + (i as f64 + 0.5) * self.dx1,
            self.origin[1] + (j as f64 + 0.5) * self.dx2,
        ]
    }

    pub fn cell_volume(&self) -> f64 {
        self.dx1 * self.dx2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Mirror image with the normal velocity reversed.
    Reflective,
    /// Zeroth-order extrapolation.
    Neumann,
}

/// Boundary kinds on the sides `x1 low, x1 high, x2 low, x2 high`.
pub type Boundaries = [Boundary; 4];

/// Conservative cells, material indices and level set on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub grid: Grid,
    pub cells: Vec<ConsState>,
    pub mat: Vec<u8>,
    pub phi: Vec<f64>,
    pub materials: [MaterialParams; 2],
}

/// Material index carried by a level-set value.
pub fn material_of(phi: f64) -> u8 {
    u8::from(phi > 0.0)
}

impl Field2D {
    pub fn new(grid: Grid, materials: [MaterialParams; 2]) -> Self {
        let n = grid.len();
        Self {
            grid,
            cells: vec![ConsState::default(); n],
            mat: vec![0; n],
            phi: vec![-1.0; n],
            materials,
        }
    }

    pub fn cell(&self, i: isize, j: isize) -> &ConsState {
        &self.cells[self.grid.idx(i, j)]
    }

    pub fn material_at(&self, i: isize, j: isize) -> &MaterialParams {
        &self.materials[self.mat[self.grid.idx(i, j)] as usize]
    }

    /// Iterator over interior `(i, j)` in row-major order.
    pub fn interior(&self) -> impl Iterator<Item = (isize, isize)> {
        let (nx, ny) = (self.grid.nx as isize, self.grid.ny as isize);
        (0..ny).flat_map(move |j| (0..nx).map(move |i| (i, j)))
    }
}

fn mirror(s: &ConsState, normal: usize) -> ConsState {
    let mut m = *s;
    if normal == 0 {
        m.phi1 = -m.phi1;
    } else {
        m.phi2 = -m.phi2;
    }
    // grad Y -> R grad Y R with R the reflection
    m.g.y12 = -m.g.y12;
    m.g.y21 = -m.g.y21;
    m
}

/// Fills every ghost cell from the interior.
pub fn apply_bc(f: &mut Field2D, bcs: &Boundaries) {
    let gr = f.grid;
    let g = gr.n_ghost as isize;
    let (nx, ny) = (gr.nx as isize, gr.ny as isize);
    let copy = |f: &mut Field2D, dst: (isize, isize), src: (isize, isize), bc: Boundary, normal: usize| {
        let (d, s) = (gr.idx(dst.0, dst.1), gr.idx(src.0, src.1));
        f.cells[d] = match bc {
            Boundary::Reflective => mirror(&f.cells[s], normal),
            Boundary::Neumann => f.cells[s],
        };
        f.mat[d] = f.mat[s];
        f.phi[d] = f.phi[s];
    };
    for j in 0..ny {
        for k in 0..g {
            let src_lo = if bcs[0] == Boundary::Reflective { k } else { 0 };
            let src_hi = if bcs[1] == Boundary::Reflective { nx - 1 - k } else { nx - 1 };
            copy(f, (-1 - k, j), (src_lo, j), bcs[0], 0);
            copy(f, (nx + k, j), (src_hi, j), bcs[1], 0);
        }
    }
    for i in -g..nx + g {
        for k in 0..g {
            let src_lo = if bcs[2] == Boundary::Reflective { k.min(ny - 1) } else { 0 };
            let src_hi = if bcs[3] == Boundary::Reflective { (ny - 1 - k).max(0) } else { ny - 1 };
            copy(f, (i, -1 - k), (i, src_lo), bcs[2], 1);
            copy(f, (i, ny + k), (i, src_hi), bcs[3], 1);
        }
    }
}
