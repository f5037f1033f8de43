//! Case descriptions: domain, media, initial regions, boundaries and output
//! requests, with the built-in catalog `tc1`..`tc11` and a flat text format.
//!
//! The text format is line based. `#` starts a comment. Top-level
//! `key = value` lines come first, then one block per `[material]` and per
//! `[region]` header. The first `[material]` block gets id 0, the second id 1.
//! Regions are painted in order, so later regions override earlier ones.

use std::fmt::Write as _;
use std::path::Path;

use crate::eos::{DefGrad, EosKind, MaterialParams, MieGruneisenParams};
use crate::error::{Error, Result};
use crate::levelset::Direction;
use crate::mesh::{apply_bc, material_of, Boundaries, Boundary, Field2D, Grid};
use crate::scheme::{Order, SchemeConfig};
use crate::state::{prim_to_cons, PrimState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    All,
    /// The half plane `x1 > x0`.
    HalfPlaneX(f64),
    Circle { center: [f64; 2], radius: f64 },
    Rect { lo: [f64; 2], hi: [f64; 2] },
}

impl Shape {
    /// Signed distance to the boundary, positive inside.
    pub fn signed_distance(&self, x: [f64; 2]) -> f64 {
        match *self {
            Shape::All => f64::INFINITY,
            Shape::HalfPlaneX(x0) => x[0] - x0,
            Shape::Circle { center, radius } => radius - (x[0] - center[0]).hypot(x[1] - center[1]),
            Shape::Rect { lo, hi } => {
                let q = [0, 1].map(|k| (x[k] - 0.5 * (lo[k] + hi[k])).abs() - 0.5 * (hi[k] - lo[k]));
                let outside = q[0].max(0.0).hypot(q[1].max(0.0));
                let inside = q[0].max(q[1]).min(0.0);
                -(outside + inside)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Shape::All => true,
            Shape::HalfPlaneX(x0) => x0.is_finite(),
            Shape::Circle { center, radius } => center.iter().all(|c| c.is_finite()) && radius > 0.0,
            Shape::Rect { lo, hi } => lo[0] < hi[0] && lo[1] < hi[1],
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid region shape {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub shape: Shape,
    pub material: u8,
    /// Density, velocity and pressure; see [`initial_state`] for the
    /// deformation.
    pub state: PrimState,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputSpec {
    /// Snapshot cadence.
    pub every: Option<f64>,
    /// Extra snapshot times.
    pub times: Vec<f64>,
    /// Line cut along a direction at a fixed transverse coordinate.
    pub linecut: Option<(Direction, f64)>,
    pub field: bool,
    pub schlieren: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseConfig {
    pub name: String,
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub nx: usize,
    pub ny: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub order: Order,
    pub materials: [MaterialParams; 2],
    pub regions: Vec<Region>,
    pub bcs: Boundaries,
    pub output: OutputSpec,
}

pub const CASE_NAMES: [&str; 11] = [
    "tc1", "tc2", "tc3", "tc4", "tc5", "tc6", "tc7", "tc8", "tc9", "tc10", "tc11",
];

impl CaseConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(format!("{}: {m}", self.name)));
        if self.nx == 0 || self.ny == 0 {
            return bad("resolution must be positive".into());
        }
        if !(self.hi[0] > self.lo[0]) || (self.ny > 1 && !(self.hi[1] > self.lo[1])) {
            return bad("domain bounds must be increasing".into());
        }
        if !(self.t_end > 0.0) {
            return bad(format!("t_end must be positive, got {}", self.t_end));
        }
        self.scheme().validate()?;
        for m in &self.materials {
            m.validate()?;
        }
        if self.regions.is_empty() {
            return bad("no regions".into());
        }
        let mut used = [false; 2];
        for r in &self.regions {
            r.shape.validate()?;
            if r.material > 1 {
                return bad(format!("material id {} out of range", r.material));
            }
            used[r.material as usize] = true;
            let w = &r.state;
            if !(w.rho > 0.0) || ![w.u1, w.u2, w.p].iter().all(|v| v.is_finite()) {
                return bad(format!("invalid region state {w:?}"));
            }
        }
        if used != [true, true] {
            return bad("both material ids must be used by some region".into());
        }
        if let Some(dt) = self.output.every {
            if !(dt > 0.0) {
                return bad("output cadence must be positive".into());
            }
        }
        if self.output.times.iter().any(|&t| !(t > 0.0 && t <= self.t_end)) {
            return bad("output times must lie in (0, t_end]".into());
        }
        Ok(())
    }

    /// One-row strip when `ny == 1`, otherwise the full rectangle.
    pub fn grid(&self) -> Result<Grid> {
        if self.ny == 1 {
            Grid::line(self.nx, self.lo[0], self.hi[0])
        } else {
            Grid::new(self.nx, self.ny, self.lo, self.hi)
        }
    }

    pub fn scheme(&self) -> SchemeConfig {
        SchemeConfig {
            cfl: self.cfl,
            order: self.order,
            bcs: self.bcs,
            ..SchemeConfig::default()
        }
    }

    /// Paints the regions onto the grid and builds the level set as the
    /// signed distance of the union of material-1 regions, with later
    /// regions carved out or added in order.
    pub fn initial_field(&self) -> Result<Field2D> {
        self.validate()?;
        let grid = self.grid()?;
        let mut f = Field2D::new(grid, self.materials);
        let extent = [grid.dx1 * grid.nx as f64, grid.dx2 * grid.ny as f64];
        let cap = 2.0 * extent[0].hypot(extent[1]);
        for (i, j) in f.interior().collect::<Vec<_>>() {
            let x = grid.center(i, j);
            let mut phi = -cap;
            let mut owner = None;
            for r in &self.regions {
                let d = r.shape.signed_distance(x).min(cap);
                phi = if r.material == 1 { phi.max(d) } else { phi.min(-d) };
                if d >= 0.0 {
                    owner = Some(r);
                }
            }
            let r = owner.ok_or_else(|| Error::Config(format!("cell centre {x:?} is not covered by any region")))?;
            if material_of(phi) != r.material {
                phi = 1e-12 * grid.dx1;
            }
            let mat = &self.materials[r.material as usize];
            let w = initial_state(mat, &r.state);
            let k = grid.idx(i, j);
            f.cells[k] = prim_to_cons(mat, &w).map_err(|e| Error::AtCell {
                i: i as usize,
                j: j as usize,
                source: Box::new(e),
            })?;
            f.mat[k] = r.material;
            f.phi[k] = phi;
        }
        apply_bc(&mut f, &self.bcs);
        Ok(f)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        let _ = writeln!(w, "name = {}", self.name);
        let _ = writeln!(w, "lo = {:?} {:?}", self.lo[0], self.lo[1]);
        let _ = writeln!(w, "hi = {:?} {:?}", self.hi[0], self.hi[1]);
        let _ = writeln!(w, "resolution = {} {}", self.nx, self.ny);
        let _ = writeln!(w, "cfl = {:?}", self.cfl);
        let _ = writeln!(w, "t_end = {:?}", self.t_end);
        let order = match self.order {
            Order::First => 1,
            Order::Second => 2,
        };
        let _ = writeln!(w, "order = {order}");
        let bcs: Vec<&str> = self
            .bcs
            .iter()
            .map(|b| match b {
                Boundary::Neumann => "neumann",
                Boundary::Reflective => "reflective",
            })
            .collect();
        let _ = writeln!(w, "bc = {}", bcs.join(" "));
        let o = &self.output;
        if let Some(dt) = o.every {
            let _ = writeln!(w, "every = {dt:?}");
        }
        if !o.times.is_empty() {
            let times: Vec<String> = o.times.iter().map(|t| format!("{t:?}")).collect();
            let _ = writeln!(w, "times = {}", times.join(" "));
        }
        if let Some((dir, c)) = o.linecut {
            let d = if dir == Direction::X1 { "x1" } else { "x2" };
            let _ = writeln!(w, "linecut = {d} {c:?}");
        }
        let _ = writeln!(w, "field = {}", o.field);
        let _ = writeln!(w, "schlieren = {}", o.schlieren);
        for m in &self.materials {
            let _ = writeln!(w, "\n[material]");
            match m.kind {
                EosKind::GeneralGas => {
                    let _ = writeln!(w, "kind = gas");
                    let _ = writeln!(w, "gamma = {:?}", m.gamma);
                    let _ = writeln!(w, "a = {:?}", m.a);
                    let _ = writeln!(w, "b = {:?}", m.b);
                    let _ = writeln!(w, "p_inf = {:?}", m.p_inf);
                    let _ = writeln!(w, "chi = {:?}", m.chi);
                    let _ = writeln!(w, "rho0 = {:?}", m.rho0);
                }
                EosKind::MieGruneisen(mg) => {
                    let _ = writeln!(w, "kind = mie_gruneisen");
                    let _ = writeln!(w, "gamma = {:?}", m.gamma);
                    let _ = writeln!(w, "rho_ref = {:?}", mg.rho_ref);
                    let _ = writeln!(w, "a1 = {:?}", mg.a1);
                    let _ = writeln!(w, "a2 = {:?}", mg.a2);
                    let _ = writeln!(w, "e1 = {:?}", mg.e1);
                    let _ = writeln!(w, "e2 = {:?}", mg.e2);
                }
            }
        }
        for r in &self.regions {
            let _ = writeln!(w, "\n[region]");
            let shape = match r.shape {
                Shape::All => "all".to_string(),
                Shape::HalfPlaneX(x0) => format!("half_plane_x {x0:?}"),
                Shape::Circle { center, radius } => format!("circle {:?} {:?} {radius:?}", center[0], center[1]),
                Shape::Rect { lo, hi } => format!("rect {:?} {:?} {:?} {:?}", lo[0], lo[1], hi[0], hi[1]),
            };
            let _ = writeln!(w, "shape = {shape}");
            let _ = writeln!(w, "material = {}", r.material);
            let st = &r.state;
            let _ = writeln!(w, "rho = {:?}", st.rho);
            let _ = writeln!(w, "u1 = {:?}", st.u1);
            let _ = writeln!(w, "u2 = {:?}", st.u2);
            let _ = writeln!(w, "p = {:?}", st.p);
        }
        s
    }
}

/// Solids start compressed along x1 so that `rho = rho0 det(grad Y)`.
pub fn initial_state(mat: &MaterialParams, w: &PrimState) -> PrimState {
    let mut w = *w;
    if mat.is_solid() {
        w.g = DefGrad::new(w.rho / mat.rho0, 0.0, 0.0, 1.0);
    }
    w
}

/// A built-in case name, or else a path to a case file.
pub fn load_case(name_or_path: &str) -> Result<CaseConfig> {
    if let Some(c) = builtin(name_or_path) {
        return Ok(c);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(Error::Config(format!(
            "`{name_or_path}` is neither a built-in case ({}) nor a readable file",
            CASE_NAMES.join(", ")
        )));
    }
    parse_case(&std::fs::read_to_string(path)?)
}

// ---------------------------------------------------------------- parsing

struct Entry {
    line: usize,
    key: String,
    value: String,
    used: bool,
}

struct Block {
    line: usize,
    entries: Vec<Entry>,
}

fn perr(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

impl Block {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.entries.iter_mut().find(|e| e.key == key).map(|e| {
            e.used = true;
            (e.line, e.value.clone())
        })
    }

    fn required(&mut self, key: &str) -> Result<(usize, String)> {
        let line = self.line;
        self.take(key).ok_or_else(|| perr(line, key, "missing required field"))
    }

    fn floats(&mut self, key: &str, n: usize) -> Result<Option<Vec<f64>>> {
        let Some((line, v)) = self.take(key) else {
            return Ok(None);
        };
        let out = parse_floats(line, key, &v)?;
        if out.len() != n {
            return Err(perr(line, key, format!("expected {n} number(s), got {}", out.len())));
        }
        Ok(Some(out))
    }

    fn float(&mut self, key: &str) -> Result<Option<f64>> {
        Ok(self.floats(key, 1)?.map(|v| v[0]))
    }

    fn float_or(&mut self, key: &str, default: f64) -> Result<f64> {
        Ok(self.float(key)?.unwrap_or(default))
    }

    fn required_float(&mut self, key: &str) -> Result<f64> {
        let line = self.line;
        self.float(key)?.ok_or_else(|| perr(line, key, "missing required field"))
    }

    fn bool_or(&mut self, key: &str, default: bool) -> Result<bool> {
        match self.take(key) {
            None => Ok(default),
            Some((_, v)) if v == "true" => Ok(true),
            Some((_, v)) if v == "false" => Ok(false),
            Some((line, v)) => Err(perr(line, key, format!("expected true or false, got `{v}`"))),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.entries.iter().find(|e| !e.used) {
            Some(e) => Err(perr(e.line, &e.key, "unknown field")),
            None => Ok(()),
        }
    }
}

fn parse_floats(line: usize, key: &str, v: &str) -> Result<Vec<f64>> {
    v.split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| perr(line, key, format!("`{t}` is not a finite number")))
        })
        .collect()
}

/// Parses the text format described in the module documentation.
pub fn parse_case(text: &str) -> Result<CaseConfig> {
    let mut top = Block { line: 1, entries: vec![] };
    let mut materials: Vec<Block> = vec![];
    let mut regions: Vec<Block> = vec![];
    #[derive(PartialEq)]
    enum Section {
        Top,
        Material,
        Region,
    }
    let mut section = Section::Top;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            let block = Block { line, entries: vec![] };
            match content {
                "[material]" => {
                    section = Section::Material;
                    materials.push(block);
                }
                "[region]" => {
                    section = Section::Region;
                    regions.push(block);
                }
                _ => return Err(perr(line, content, "unknown section")),
            }
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(perr(line, content, "expected `key = value`"));
        };
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        let block = match section {
            Section::Top => &mut top,
            Section::Material => materials.last_mut().expect("open block"),
            Section::Region => regions.last_mut().expect("open block"),
        };
        if block.entries.iter().any(|e| e.key == key) {
            return Err(perr(line, &key, "duplicate field"));
        }
        block.entries.push(Entry {
            line,
            key,
            value,
            used: false,
        });
    }
    let last_line = text.lines().count().max(1);
    top.line = last_line;

    if materials.len() != 2 {
        return Err(perr(last_line, "[material]", format!("expected 2 material blocks, got {}", materials.len())));
    }
    let mats: Vec<MaterialParams> = materials.iter_mut().map(parse_material).collect::<Result<_>>()?;
    if regions.is_empty() {
        return Err(perr(last_line, "[region]", "at least one region is required"));
    }
    let regs: Vec<Region> = regions.iter_mut().map(parse_region).collect::<Result<_>>()?;

    let name = top.take("name").map_or_else(|| "custom".to_string(), |(_, v)| v);
    let lo = top.floats("lo", 2)?.ok_or_else(|| perr(last_line, "lo", "missing required field"))?;
    let hi = top.floats("hi", 2)?.ok_or_else(|| perr(last_line, "hi", "missing required field"))?;
    let (res_line, res) = top.required("resolution")?;
    let res: Vec<usize> = res
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| perr(res_line, "resolution", format!("`{t}` is not a cell count"))))
        .collect::<Result<_>>()?;
    if res.len() != 2 {
        return Err(perr(res_line, "resolution", "expected `nx ny`"));
    }
    let cfl = top.float_or("cfl", 0.6)?;
    let t_end = top.required_float("t_end")?;
    let order = match top.take("order") {
        None => Order::Second,
        Some((_, v)) if v == "1" => Order::First,
        Some((_, v)) if v == "2" => Order::Second,
        Some((line, v)) => return Err(perr(line, "order", format!("expected 1 or 2, got `{v}`"))),
    };
    let bcs = match top.take("bc") {
        None => [Boundary::Neumann; 4],
        Some((line, v)) => {
            let kinds: Vec<Boundary> = v
                .split_whitespace()
                .map(|t| match t {
                    "neumann" => Ok(Boundary::Neumann),
                    "reflective" => Ok(Boundary::Reflective),
                    _ => Err(perr(line, "bc", format!("unknown boundary `{t}`"))),
                })
                .collect::<Result<_>>()?;
            kinds
                .try_into()
                .map_err(|_| perr(line, "bc", "expected four boundaries: x1 low, x1 high, x2 low, x2 high"))?
        }
    };
    let every = top.float("every")?;
    let times = match top.take("times") {
        None => vec![],
        Some((line, v)) => parse_floats(line, "times", &v)?,
    };
    let linecut = match top.take("linecut") {
        None => None,
        Some((line, v)) => {
            let mut it = v.split_whitespace();
            let dir = match it.next() {
                Some("x1") => Direction::X1,
                Some("x2") => Direction::X2,
                _ => return Err(perr(line, "linecut", "expected `x1 C` or `x2 C`")),
            };
            let rest: Vec<&str> = it.collect();
            let c = parse_floats(line, "linecut", &rest.join(" "))?;
            if c.len() != 1 {
                return Err(perr(line, "linecut", "expected `x1 C` or `x2 C`"));
            }
            Some((dir, c[0]))
        }
    };
    let field = top.bool_or("field", false)?;
    let schlieren = top.bool_or("schlieren", false)?;
    top.finish()?;

    let case = CaseConfig {
        name,
        lo: [lo[0], lo[1]],
        hi: [hi[0], hi[1]],
        nx: res[0],
        ny: res[1],
        cfl,
        t_end,
        order,
        materials: [mats[0], mats[1]],
        regions: regs,
        bcs,
        output: OutputSpec {
            every,
            times,
            linecut,
            field,
            schlieren,
        },
    };
    case.validate()?;
    Ok(case)
}

fn parse_material(b: &mut Block) -> Result<MaterialParams> {
    let (line, kind) = b.required("kind")?;
    let gamma = b.required_float("gamma")?;
    let m = match kind.as_str() {
        "gas" => MaterialParams::general_gas(
            gamma,
            b.float_or("a", 0.0)?,
            b.float_or("b", 0.0)?,
            b.float_or("p_inf", 0.0)?,
            b.float_or("chi", 0.0)?,
            b.float_or("rho0", 1.0)?,
        ),
        "mie_gruneisen" => MaterialParams::mie_gruneisen(
            gamma,
            MieGruneisenParams {
                rho_ref: b.required_float("rho_ref")?,
                a1: b.required_float("a1")?,
                a2: b.required_float("a2")?,
                e1: b.required_float("e1")?,
                e2: b.required_float("e2")?,
            },
        ),
        _ => return Err(perr(line, "kind", format!("expected gas or mie_gruneisen, got `{kind}`"))),
    };
    b.finish()?;
    m.validate().map_err(|e| perr(b.line, "[material]", e.to_string()))?;
    Ok(m)
}

fn parse_region(b: &mut Block) -> Result<Region> {
    let (line, shape) = b.required("shape")?;
    let mut tokens = shape.split_whitespace();
    let kind = tokens.next().unwrap_or("");
    let args = parse_floats(line, "shape", &tokens.collect::<Vec<_>>().join(" "))?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(perr(line, "shape", format!("`{kind}` takes {n} number(s)")))
        }
    };
    let shape = match kind {
        "all" => arity(0).map(|_| Shape::All)?,
        "half_plane_x" => arity(1).map(|_| Shape::HalfPlaneX(args[0]))?,
        "circle" => arity(3).map(|_| Shape::Circle {
            center: [args[0], args[1]],
            radius: args[2],
        })?,
        "rect" => arity(4).map(|_| Shape::Rect {
            lo: [args[0], args[1]],
            hi: [args[2], args[3]],
        })?,
        _ => return Err(perr(line, "shape", format!("unknown shape `{kind}`"))),
    };
    let (mline, m) = b.required("material")?;
    let material = match m.as_str() {
        "0" => 0,
        "1" => 1,
        _ => return Err(perr(mline, "material", format!("expected 0 or 1, got `{m}`"))),
    };
    let state = PrimState::new(
        b.required_float("rho")?,
        b.float_or("u1", 0.0)?,
        b.float_or("u2", 0.0)?,
        b.required_float("p")?,
    );
    b.finish()?;
    Ok(Region { shape, material, state })
}

// ---------------------------------------------------------------- catalog

pub fn builtin(name: &str) -> Option<CaseConfig> {
    Some(match name {
        "tc1" => tc1(),
        "tc2" => tc2(),
        "tc3" => tc3(),
        "tc4" => tc4(),
        "tc5" => tc5(),
        "tc6" => tc6(),
        "tc7" => tc7(),
        "tc8" => tc8(),
        "tc9" => tc9(),
        "tc10" => tc10(),
        "tc11" => tc11(),
        _ => return None,
    })
}

const COPPER_GAMMA: f64 = 4.22;
const COPPER_P_INF: f64 = 3.42e10;
const COPPER_CHI: f64 = 5e10;
const COPPER_RHO: f64 = 8900.0;

fn copper() -> MaterialParams {
    MaterialParams::neohookean(COPPER_GAMMA, COPPER_P_INF, COPPER_CHI, COPPER_RHO)
}

/// Two states on `[0, 1]` separated at `x0`, 1000 cells.
fn shock_tube(
    name: &str,
    materials: [MaterialParams; 2],
    left: PrimState,
    right: PrimState,
    x0: f64,
    t_end: f64,
) -> CaseConfig {
    CaseConfig {
        name: name.to_string(),
        lo: [0.0, 0.0],
        hi: [1.0, 1.0],
        nx: 1000,
        ny: 1,
        cfl: 0.6,
        t_end,
        order: Order::Second,
        materials,
        regions: vec![
            Region {
                shape: Shape::All,
                material: 0,
                state: left,
            },
            Region {
                shape: Shape::HalfPlaneX(x0),
                material: 1,
                state: right,
            },
        ],
        bcs: [Boundary::Neumann; 4],
        output: OutputSpec {
            linecut: Some((Direction::X1, 0.0)),
            ..OutputSpec::default()
        },
    }
}

pub fn tc1() -> CaseConfig {
    let air = MaterialParams::perfect_gas(1.4);
    shock_tube(
        "tc1",
        [air, air],
        PrimState::new(1.0, 0.0, 0.0, 1000.0),
        PrimState::new(1.0, 0.0, 0.0, 0.01),
        0.5,
        0.012,
    )
}

pub fn tc2() -> CaseConfig {
    shock_tube(
        "tc2",
        [MaterialParams::perfect_gas(1.4), MaterialParams::perfect_gas(1.6)],
        PrimState::new(1.0, 0.0, 0.0, 500.0),
        PrimState::new(1.0, 0.0, 0.0, 0.2),
        0.5,
        0.01,
    )
}

pub fn tc3() -> CaseConfig {
    shock_tube(
        "tc3",
        [MaterialParams::stiffened_gas(4.4, 6.8e8), MaterialParams::perfect_gas(1.4)],
        PrimState::new(1000.0, 0.0, 0.0, 1e9),
        PrimState::new(50.0, 0.0, 0.0, 1e5),
        0.7,
        2.4e-4,
    )
}

pub fn tc4() -> CaseConfig {
    shock_tube(
        "tc4",
        [copper(), copper()],
        PrimState::new(8900.0, 0.0, 0.0, 1e9),
        PrimState::new(8900.0, 0.0, 100.0, 1e5),
        0.5,
        5e-5,
    )
}

pub fn tc5() -> CaseConfig {
    let mut c = shock_tube(
        "tc5",
        [copper(), MaterialParams::perfect_gas(1.4)],
        PrimState::new(8900.0, 1000.0, 100.0, 1e5),
        PrimState::new(1.0, 1000.0, 0.0, 1e5),
        0.5,
        1.5e-4,
    );
    c.nx = 100;
    c
}

pub fn tc6() -> CaseConfig {
    shock_tube(
        "tc6",
        [copper(), MaterialParams::perfect_gas(1.4)],
        PrimState::new(8900.0, 0.0, 0.0, 5e9),
        PrimState::new(50.0, 0.0, 0.0, 1e5),
        0.6,
        8.7e-5,
    )
}

pub fn tc7_material() -> MaterialParams {
    MaterialParams::mie_gruneisen(
        2.19,
        MieGruneisenParams {
            rho_ref: 1134.0,
            a1: 0.819181e9,
            a2: 1.50835e9,
            e1: 4.52969,
            e2: 1.42144,
        },
    )
}

pub fn tc7() -> CaseConfig {
    let mg = tc7_material();
    shock_tube(
        "tc7",
        [mg, mg],
        PrimState::new(1134.0, 0.0, 0.0, 20e9),
        PrimState::new(1200.0, 0.0, 0.0, 0.2e6),
        0.6,
        50e-6,
    )
}

/// Schlieren snapshot times of the air-helium case.
pub const TC8_TIMES: [f64; 10] = [
    23e-6, 42e-6, 53e-6, 66e-6, 75e-6, 102e-6, 260e-6, 445e-6, 674e-6, 983e-6,
];

/// Air-helium shock-bubble interaction. A left-running shock sits at
/// `x1 = 0.275` with post-shock air behind it; the bubble of radius 0.025
/// is centred in a 0.445 x 0.089 channel.
pub fn tc8() -> CaseConfig {
    let (lo, hi) = ([0.0, 0.0], [0.445, 0.089]);
    CaseConfig {
        name: "tc8".into(),
        lo,
        hi,
        nx: 500,
        ny: 100,
        cfl: 0.6,
        t_end: 983e-6,
        order: Order::Second,
        materials: [MaterialParams::perfect_gas(1.4), MaterialParams::perfect_gas(1.648)],
        regions: vec![
            Region {
                shape: Shape::All,
                material: 0,
                state: PrimState::new(1.225, 0.0, 0.0, 101325.0),
            },
            Region {
                shape: Shape::HalfPlaneX(0.275),
                material: 0,
                state: PrimState::new(1.6861, -113.534, 0.0, 159059.0),
            },
            Region {
                shape: Shape::Circle {
                    center: [0.225, 0.0445],
                    radius: 0.025,
                },
                material: 1,
                state: PrimState::new(0.2228, 0.0, 0.0, 101325.0),
            },
        ],
        bcs: [Boundary::Neumann, Boundary::Neumann, Boundary::Reflective, Boundary::Reflective],
        output: OutputSpec {
            every: None,
            times: TC8_TIMES.to_vec(),
            linecut: Some((Direction::X1, 0.0445)),
            field: false,
            schlieren: true,
        },
    }
}

/// Water shock on a Van der Waals bubble in `[-0.2, 1] x [0, 1]`.
pub fn tc9() -> CaseConfig {
    CaseConfig {
        name: "tc9".into(),
        lo: [-0.2, 0.0],
        hi: [1.0, 1.0],
        nx: 480,
        ny: 400,
        cfl: 0.6,
        t_end: 500e-6,
        order: Order::Second,
        materials: [MaterialParams::stiffened_gas(4.4, 6e8), MaterialParams::van_der_waals(1.4, 5.0, 1e-3)],
        regions: vec![
            Region {
                shape: Shape::All,
                material: 0,
                state: PrimState::new(1000.0, 0.0, 0.0, 1e5),
            },
            Region {
                shape: Shape::HalfPlaneX(0.7),
                material: 0,
                state: PrimState::new(1230.0, -432.69, 0.0, 1e9),
            },
            Region {
                shape: Shape::Circle {
                    center: [0.4, 0.5],
                    radius: 0.2,
                },
                material: 1,
                state: PrimState::new(1.0, 0.0, 0.0, 1e5),
            },
        ],
        bcs: [Boundary::Neumann, Boundary::Neumann, Boundary::Reflective, Boundary::Reflective],
        output: OutputSpec {
            every: None,
            times: vec![106e-6, 204e-6, 301e-6, 358e-6, 406e-6, 500e-6],
            linecut: Some((Direction::X1, 0.5)),
            field: false,
            schlieren: true,
        },
    }
}

/// Projectile occupying `[-0.1, 0] x [-0.1, 0.1]`.
pub const PROJECTILE: Shape = Shape::Rect {
    lo: [-0.1, -0.1],
    hi: [0.0, 0.1],
};
/// Plate occupying `[0, 0.1] x [-0.3, 0.3]`.
pub const PLATE: Shape = Shape::Rect {
    lo: [0.0, -0.3],
    hi: [0.1, 0.3],
};

fn impact(name: &str, air: MaterialParams, air_rho: f64, solid: MaterialParams) -> CaseConfig {
    CaseConfig {
        name: name.into(),
        lo: [-0.5, -0.5],
        hi: [0.5, 0.5],
        nx: 250,
        ny: 250,
        cfl: 0.6,
        t_end: 140e-6,
        order: Order::Second,
        materials: [air, solid],
        regions: vec![
            Region {
                shape: Shape::All,
                material: 0,
                state: PrimState::new(air_rho, 0.0, 0.0, 1e5),
            },
            Region {
                shape: PLATE,
                material: 1,
                state: PrimState::new(8900.0, 0.0, 0.0, 1e5),
            },
            Region {
                shape: PROJECTILE,
                material: 1,
                state: PrimState::new(8900.0, 800.0, 0.0, 1e5),
            },
        ],
        bcs: [Boundary::Neumann; 4],
        output: OutputSpec {
            every: None,
            times: vec![5e-6, 10e-6, 15e-6, 25e-6, 27e-6],
            linecut: Some((Direction::X1, 0.0)),
            field: true,
            schlieren: true,
        },
    }
}

/// Copper projectile on a copper plate in air.
pub fn tc10() -> CaseConfig {
    impact("tc10", MaterialParams::van_der_waals(1.4, 5.0, 1e-3), 1.2, copper())
}

/// The same impact with a shear-free plate and projectile.
pub fn tc11() -> CaseConfig {
    impact(
        "tc11",
        MaterialParams::perfect_gas(1.4),
        1.0,
        MaterialParams::neohookean(COPPER_GAMMA, COPPER_P_INF, 0.0, COPPER_RHO),
    )
}
