//! Level-set transport, material faces and the reassignment of cells that
//! the interface sweeps over.

use crate::mesh::{material_of, Field2D, Grid};
use crate::state::ConsState;

const WENO_EPS_REL: f64 = 1e-6;

/// Fifth-order upwind-biased derivative from the five one-sided differences
/// `v[0..5]`, ordered along the upwind direction.
pub fn weno5(v: [f64; 5]) -> f64 {
    let [v1, v2, v3, v4, v5] = v;
    let p0 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
    let p1 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
    let p2 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;
    let s0 = 13.0 / 12.0 * (v1 - 2.0 * v2 + v3).powi(2) + 0.25 * (v1 - 4.0 * v2 + 3.0 * v3).powi(2);
    let s1 = 13.0 / 12.0 * (v2 - 2.0 * v3 + v4).powi(2) + 0.25 * (v2 - v4).powi(2);
    let s2 = 13.0 / 12.0 * (v3 - 2.0 * v4 + v5).powi(2) + 0.25 * (3.0 * v3 - 4.0 * v4 + v5).powi(2);
    let vmax = v.iter().fold(0.0f64, |a, &b| a.max(b * b));
    let eps = WENO_EPS_REL * vmax + 1e-99;
    let a0 = 0.1 / (eps + s0).powi(2);
    let a1 = 0.6 / (eps + s1).powi(2);
    let a2 = 0.3 / (eps + s2).powi(2);
    (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2)
}

/// Upwind derivative at index `k` of a line of values with at least three
/// neighbours on each side.
pub fn upwind_derivative(line: &[f64], k: usize, h: f64, velocity: f64) -> f64 {
    let d = |m: usize| (line[m + 1] - line[m]) / h;
    if velocity >= 0.0 {
        weno5([d(k - 3), d(k - 2), d(k - 1), d(k), d(k + 1)])
    } else {
        weno5([d(k + 2), d(k + 1), d(k), d(k - 1), d(k - 2)])
    }
}

/// `-u . grad(phi)` on interior cells, row-major, from ghost-filled data.
pub fn advection_rate(f: &Field2D, velocity: &[[f64; 2]]) -> Vec<f64> {
    let gr = &f.grid;
    let g = gr.n_ghost;
    let mut out = Vec::with_capacity(gr.nx * gr.ny);
    let mut column = vec![0.0; gr.sy()];
    for j in 0..gr.ny {
        let row = &f.phi[(j + g) * gr.sx()..(j + g + 1) * gr.sx()];
        for i in 0..gr.nx {
            let u = velocity[j * gr.nx + i];
            let mut rate = -u[0] * upwind_derivative(row, i + g, gr.dx1, u[0]);
            if !gr.is_1d() {
                for (jj, c) in column.iter_mut().enumerate() {
                    *c = f.phi[jj * gr.sx() + i + g];
                }
                rate -= u[1] * upwind_derivative(&column, j + g, gr.dx2, u[1]);
            }
            out.push(rate);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    X1,
    X2,
}

/// The face between cell `(i - 1, j)` and `(i, j)` for [`Direction::X1`], or
/// between `(i, j - 1)` and `(i, j)` for [`Direction::X2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Face {
    pub dir: Direction,
    pub i: isize,
    pub j: isize,
}

/// Faces between interior cells, or an interior and a ghost cell, whose
/// level-set signs differ.
pub fn detect_faces(f: &Field2D) -> Vec<Face> {
    let gr = &f.grid;
    let (nx, ny) = (gr.nx as isize, gr.ny as isize);
    let side = |i: isize, j: isize| material_of(f.phi[gr.idx(i, j)]);
    let mut faces = Vec::new();
    for j in 0..ny {
        for i in 0..=nx {
            if side(i - 1, j) != side(i, j) {
                faces.push(Face { dir: Direction::X1, i, j });
            }
        }
    }
    if !gr.is_1d() {
        for j in 0..=ny {
            for i in 0..nx {
                if side(i, j - 1) != side(i, j) {
                    faces.push(Face { dir: Direction::X2, i, j });
                }
            }
        }
    }
    faces
}

/// Intermediate states `(minus, plus)` of the first-order fans at the
/// material faces of one configuration, in the unrotated frame.
#[derive(Debug, Clone)]
pub struct FaceFans {
    nx: usize,
    ny: usize,
    x1: Vec<Option<(ConsState, ConsState)>>,
    x2: Vec<Option<(ConsState, ConsState)>>,
}

impl FaceFans {
    pub fn new(grid: &Grid) -> Self {
        Self {
            nx: grid.nx,
            ny: grid.ny,
            x1: vec![None; (grid.nx + 1) * grid.ny],
            x2: vec![None; grid.nx * (grid.ny + 1)],
        }
    }

    fn slot(&self, face: Face) -> usize {
        match face.dir {
            Direction::X1 => face.j as usize * (self.nx + 1) + face.i as usize,
            Direction::X2 => face.j as usize * self.nx + face.i as usize,
        }
    }

    pub fn set(&mut self, face: Face, states: (ConsState, ConsState)) {
        let k = self.slot(face);
        match face.dir {
            Direction::X1 => self.x1[k] = Some(states),
            Direction::X2 => self.x2[k] = Some(states),
        }
    }

    pub fn get(&self, face: Face) -> Option<&(ConsState, ConsState)> {
        let in_range = match face.dir {
            Direction::X1 => {
                (0..=self.nx as isize).contains(&face.i) && (0..self.ny as isize).contains(&face.j)
            }
            Direction::X2 => {
                (0..self.nx as isize).contains(&face.i) && (0..=self.ny as isize).contains(&face.j)
            }
        };
        if !in_range {
            return None;
        }
        let k = self.slot(face);
        match face.dir {
            Direction::X1 => self.x1[k].as_ref(),
            Direction::X2 => self.x2[k].as_ref(),
        }
    }

    /// Stores the x1 faces of row `j` from a per-face list `0..=nx`.
    pub fn set_row(&mut self, j: usize, faces: Vec<Option<(ConsState, ConsState)>>) {
        let start = j * (self.nx + 1);
        self.x1[start..start + self.nx + 1].clone_from_slice(&faces);
    }

    /// Stores the x2 faces of column `i` from a per-face list `0..=ny`.
    pub fn set_column(&mut self, i: usize, faces: Vec<Option<(ConsState, ConsState)>>) {
        for (j, s) in faces.into_iter().enumerate() {
            self.x2[j * self.nx + i] = s;
        }
    }
}

/// Candidate replacement for cell `(i, j)` entering material `new` across
/// the faces of one direction, preferring the upstream side.
fn candidate(
    fans: &FaceFans,
    old_mat: &dyn Fn(isize, isize) -> Option<u8>,
    dir: Direction,
    i: isize,
    j: isize,
    new: u8,
    velocity: f64,
) -> Option<ConsState> {
    let (lo_face, hi_face, lo_nb, hi_nb) = match dir {
        Direction::X1 => (Face { dir, i, j }, Face { dir, i: i + 1, j }, (i - 1, j), (i + 1, j)),
        Direction::X2 => (Face { dir, i, j }, Face { dir, i, j: j + 1 }, (i, j - 1), (i, j + 1)),
    };
    // neighbour below: the new material arrives from there, use the minus state
    let from_lo = || {
        (old_mat(lo_nb.0, lo_nb.1) == Some(new))
            .then(|| fans.get(lo_face).map(|s| s.0))
            .flatten()
    };
    let from_hi = || {
        (old_mat(hi_nb.0, hi_nb.1) == Some(new))
            .then(|| fans.get(hi_face).map(|s| s.1))
            .flatten()
    };
    if velocity >= 0.0 {
        from_lo().or_else(from_hi)
    } else {
        from_hi().or_else(from_lo)
    }
}

/// Interior neighbours in the order they are tried as a source: faces,
/// then corners.
const NEIGHBOURS: [(isize, isize); 8] = [(-1, 0), (1, 0), (0, -1), (0, 1), (-1, -1), (1, -1), (-1, 1), (1, 1)];

/// Gives every cell whose level-set sign changed the intermediate state of
/// the fan it was swept across, and updates the material indices of the
/// interior. `old_mat` and `velocity` describe the configuration the fans
/// were computed from. Returns the number of flipped cells.
///
/// A cell without a material face next to it (diagonal motion, or a
/// neighbour that flipped in the same step) copies the state of a
/// neighbour already holding the new material. A sign change with no such
/// neighbour is a level-set artefact: the flip is dropped and `phi` gets
/// back the old sign.
pub fn flip_cells(f: &mut Field2D, old_mat: &[u8], velocity: &[[f64; 2]], fans: &FaceFans) -> usize {
    let gr = f.grid;
    let (nx, ny) = (gr.nx as isize, gr.ny as isize);
    let lookup = |i: isize, j: isize| -> Option<u8> {
        (i >= 0 && i < nx && j >= 0 && j < ny).then(|| old_mat[gr.idx(i, j)])
    };
    let mut flipped = 0;
    let mut pending = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let k = gr.idx(i, j);
            let new = material_of(f.phi[k]);
            if new == old_mat[k] {
                f.mat[k] = new;
                continue;
            }
            let u = velocity[j as usize * gr.nx + i as usize];
            let order = if gr.is_1d() || u[0].abs() >= u[1].abs() {
                [Direction::X1, Direction::X2]
            } else {
                [Direction::X2, Direction::X1]
            };
            let state = order.iter().find_map(|&dir| {
                let vel = if dir == Direction::X1 { u[0] } else { u[1] };
                candidate(fans, &lookup, dir, i, j, new, vel)
            });
            f.mat[k] = old_mat[k];
            match state {
                Some(state) => {
                    f.cells[k] = state;
                    f.mat[k] = new;
                    flipped += 1;
                }
                None => pending.push((i, j, new)),
            }
        }
    }
    while !pending.is_empty() {
        let sources: Vec<Option<ConsState>> = pending
            .iter()
            .map(|&(i, j, new)| {
                NEIGHBOURS.iter().find_map(|&(di, dj)| {
                    let (a, b) = (i + di, j + dj);
                    let inside = a >= 0 && a < nx && b >= 0 && b < ny;
                    (inside && f.mat[gr.idx(a, b)] == new).then(|| f.cells[gr.idx(a, b)])
                })
            })
            .collect();
        if sources.iter().all(Option::is_none) {
            break;
        }
        let mut rest = Vec::new();
        for (&(i, j, new), source) in pending.iter().zip(sources) {
            let k = gr.idx(i, j);
            match source {
                Some(state) => {
                    f.cells[k] = state;
                    f.mat[k] = new;
                    flipped += 1;
                }
                None => rest.push((i, j, new)),
            }
        }
        pending = rest;
    }
    let tiny = 1e-12 * gr.dx1.min(if gr.is_1d() { gr.dx1 } else { gr.dx2 });
    for (i, j, new) in pending {
        let k = gr.idx(i, j);
        f.phi[k] = if new == 0 { tiny } else { -tiny };
        debug_assert_eq!(material_of(f.phi[k]), old_mat[k]);
    }
    flipped
}
