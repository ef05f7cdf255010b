//! Finite-difference residuals and explicit time stepping for
//! φ_t = Δ(φ²) − hφ^θ, used to cross-check the closed-form solutions.

use thiserror::Error;

use crate::symexpr::{eval_numeric, Atom, Coord, Expr, ExprError, PointAssignment};

#[derive(Debug, Error, PartialEq)]
pub enum NumError {
    #[error("grid needs at least 8 nodes per side and positive spacing")]
    BadGrid,
    #[error("dt = {dt} exceeds the stability bound {bound}")]
    Stability { dt: f64, bound: f64 },
    #[error("non-finite value at node ({i}, {j})")]
    NonFinite { i: usize, j: usize },
    #[error("negative density {value} with non-integer theta and clamping disabled")]
    Negative { value: f64 },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Uniform node grid x = x0 + i·dx, y = y0 + j·dy. Nodes inside an optional
/// disc `hole` = (centre x, centre y, radius) are treated like boundary nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y0: f64,
    pub hole: Option<(f64, f64, f64)>,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, dx: f64, dy: f64, x0: f64, y0: f64) -> Result<Self, NumError> {
        if nx < 8 || ny < 8 || !(dx > 0.0 && dy > 0.0 && dx.is_finite() && dy.is_finite()) {
            return Err(NumError::BadGrid);
        }
        Ok(Grid2D { nx, ny, dx, dy, x0, y0, hole: None })
    }

    /// n×n nodes spanning [lo, hi]² inclusive.
    pub fn square(n: usize, lo: f64, hi: f64) -> Result<Self, NumError> {
        let d = (hi - lo) / (n as f64 - 1.0);
        Grid2D::new(n, n, d, d, lo, lo)
    }

    pub fn with_hole(self, radius: f64) -> Self {
        self.with_hole_at(0.0, 0.0, radius)
    }

    pub fn with_hole_at(mut self, cx: f64, cy: f64, radius: f64) -> Self {
        self.hole = Some((cx, cy, radius));
        self
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y0 + j as f64 * self.dy
    }

    fn in_hole(&self, i: usize, j: usize) -> bool {
        self.hole.is_some_and(|(cx, cy, r)| (self.x(i) - cx).hypot(self.y(j) - cy) < r)
    }

    /// Hole nodes with no evolved neighbour; they never enter a stencil and
    /// are stored as 0 (the closed form is typically singular there).
    pub fn is_buried(&self, i: usize, j: usize) -> bool {
        self.in_hole(i, j)
            && [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)].into_iter().all(|(di, dj)| {
                let (a, b) = (i as i64 + di, j as i64 + dj);
                a < 0 || b < 0 || a >= self.nx as i64 || b >= self.ny as i64 || self.is_fixed(a as usize, b as usize)
            })
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// True for nodes whose value is imposed rather than evolved.
    pub fn is_fixed(&self, i: usize, j: usize) -> bool {
        if i == 0 || j == 0 || i + 1 == self.nx || j + 1 == self.ny {
            return true;
        }
        self.in_hole(i, j)
    }

}

#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    /// Row-major, `ny` rows of `nx` values.
    pub values: Vec<f64>,
    pub time: f64,
}

impl Field {
    pub fn at(&self, g: &Grid2D, i: usize, j: usize) -> f64 {
        self.values[g.idx(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Σφ·dx·dy over all nodes.
    pub fn mass(&self, g: &Grid2D) -> f64 {
        self.values.iter().sum::<f64>() * g.dx * g.dy
    }
}

/// A closed-form φ(x, y, t) with its parameters fixed to floats.
#[derive(Clone, Debug)]
pub struct Exact {
    pub phi: Expr,
    pub params: PointAssignment,
}

impl Exact {
    pub fn new(phi: Expr, params: &[(&str, f64)]) -> Self {
        let mut at = PointAssignment::new();
        for (n, v) in params {
            at.set(Atom::param(n), *v);
        }
        Exact { phi, params: at }
    }

    pub fn eval(&self, x: f64, y: f64, t: f64) -> Result<f64, ExprError> {
        let at = self.params.clone().with_var(Coord::X, x).with_var(Coord::Y, y).with_var(Coord::T, t);
        eval_numeric(&self.phi, &at)
    }

    fn param(&self, name: &str) -> f64 {
        self.params.get(&Atom::param(name)).unwrap_or(0.0)
    }
}

pub fn sample(exact: &Exact, g: &Grid2D, t: f64) -> Result<Field, NumError> {
    let mut values = Vec::with_capacity(g.nx * g.ny);
    for j in 0..g.ny {
        for i in 0..g.nx {
            values.push(if g.is_buried(i, j) { 0.0 } else { exact.eval(g.x(i), g.y(j), t)? });
        }
    }
    Ok(Field { values, time: t })
}

/// Max |Δ| over evolved nodes using central differences in space and a
/// forward difference with δt = 1e−6·t in time.
pub fn residual_numeric(exact: &Exact, g: &Grid2D, t: f64) -> Result<f64, NumError> {
    let (h, theta) = (exact.param("h"), exact.param("theta"));
    let dt = 1e-6 * t.abs().max(1e-300);
    let now = sample(exact, g, t)?;
    let mut worst: f64 = 0.0;
    for j in 1..g.ny - 1 {
        for i in 1..g.nx - 1 {
            if g.is_fixed(i, j) {
                continue;
            }
            let p = now.at(g, i, j);
            let (e, w) = (now.at(g, i + 1, j), now.at(g, i - 1, j));
            let (n, s) = (now.at(g, i, j + 1), now.at(g, i, j - 1));
            let px = (e - w) / (2.0 * g.dx);
            let py = (n - s) / (2.0 * g.dy);
            let pxx = (e - 2.0 * p + w) / (g.dx * g.dx);
            let pyy = (n - 2.0 * p + s) / (g.dy * g.dy);
            let pt = (exact.eval(g.x(i), g.y(j), t + dt)? - p) / dt;
            let source = if h == 0.0 { 0.0 } else { h * p.powf(theta) };
            let r = pt - 2.0 * px * px - 2.0 * p * pxx - 2.0 * py * py - 2.0 * p * pyy + source;
            if !r.is_finite() {
                return Err(NumError::NonFinite { i, j });
            }
            worst = worst.max(r.abs());
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug)]
pub enum Boundary {
    /// Fixed nodes take the closed-form values at the new time.
    ExactDirichlet(Exact),
    /// No flux through the outer boundary; every node evolves.
    ZeroFlux,
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub dt: f64,
    pub steps: usize,
    pub h: f64,
    pub theta: f64,
    pub boundary: Boundary,
    /// Evaluate the source on max(φ, 0) instead of failing on negative φ.
    pub clamp_negative: bool,
}

/// dt bound 0.2·min(dx, dy)² / (4·max|2φ| + tiny).
pub fn stable_dt(f: &Field, g: &Grid2D) -> f64 {
    0.2 * g.dx.min(g.dy).powi(2) / (4.0 * 2.0 * f.max_abs() + 1e-12)
}

/// One explicit Euler step of φ ← φ + dt·(Δₕ(φ²) − hφ^θ).
pub fn step(f: &Field, cfg: &SimConfig, g: &Grid2D) -> Result<Field, NumError> {
    let bound = stable_dt(f, g);
    if cfg.dt > bound {
        return Err(NumError::Stability { dt: cfg.dt, bound });
    }
    let u: Vec<f64> = f.values.iter().map(|v| v * v).collect();
    let zero_flux = matches!(cfg.boundary, Boundary::ZeroFlux);
    let (cx, cy) = (1.0 / (g.dx * g.dx), 1.0 / (g.dy * g.dy));
    let mut out = f.values.clone();
    for j in 0..g.ny {
        for i in 0..g.nx {
            if !zero_flux && g.is_fixed(i, j) {
                continue;
            }
            let k = g.idx(i, j);
            let uc = u[k];
            // a missing neighbour mirrors the centre: zero flux across that face
            let nb = |ii: Option<usize>, jj: Option<usize>| match (ii, jj) {
                (Some(a), Some(b)) if a < g.nx && b < g.ny => u[g.idx(a, b)],
                _ => uc,
            };
            let lap = cx * (nb(i.checked_add(1), Some(j)) - 2.0 * uc + nb(i.checked_sub(1), Some(j)))
                + cy * (nb(Some(i), j.checked_add(1)) - 2.0 * uc + nb(Some(i), j.checked_sub(1)));
            let p = f.values[k];
            let source = if cfg.h == 0.0 {
                0.0
            } else if p < 0.0 {
                if !cfg.clamp_negative {
                    return Err(NumError::Negative { value: p });
                }
                0.0
            } else {
                cfg.h * p.powf(cfg.theta)
            };
            let v = p + cfg.dt * (lap - source);
            if !v.is_finite() {
                return Err(NumError::NonFinite { i, j });
            }
            out[k] = v;
        }
    }
    let time = f.time + cfg.dt;
    if let Boundary::ExactDirichlet(ex) = &cfg.boundary {
        for j in 0..g.ny {
            for i in 0..g.nx {
                if g.is_fixed(i, j) && !g.is_buried(i, j) {
                    out[g.idx(i, j)] = ex.eval(g.x(i), g.y(j), time)?;
                }
            }
        }
    }
    Ok(Field { values: out, time })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolveReport {
    pub linf_error: f64,
    pub l2_error: f64,
    pub steps: usize,
    pub dt: f64,
}

/// Integrates from the exact field at t0 to t1 with exact-Dirichlet
/// boundaries (dt shortened so the steps land on t1) and compares.
pub fn evolve_and_compare(exact: &Exact, g: &Grid2D, cfg: &SimConfig, t0: f64, t1: f64) -> Result<EvolveReport, NumError> {
    let steps = if t1 > t0 { ((t1 - t0) / cfg.dt - 1e-9).ceil().max(1.0) as usize } else { 0 };
    let dt = if steps == 0 { 0.0 } else { (t1 - t0) / steps as f64 };
    let run = SimConfig { dt, steps, boundary: Boundary::ExactDirichlet(exact.clone()), ..cfg.clone() };
    let mut f = sample(exact, g, t0)?;
    for _ in 0..steps {
        f = step(&f, &run, g)?;
    }
    let want = sample(exact, g, t1)?;
    let mut linf: f64 = 0.0;
    let mut sq = 0.0;
    for (a, b) in f.values.iter().zip(&want.values) {
        linf = linf.max((a - b).abs());
        sq += (a - b).powi(2);
    }
    Ok(EvolveReport { linf_error: linf, l2_error: (sq * g.dx * g.dy).sqrt(), steps, dt })
}

/// Runs `cfg.steps` steps from the exact field at t0 and returns the max
/// deviation from the initial field (for stationary solutions).
pub fn stationary_drift(exact: &Exact, g: &Grid2D, cfg: &SimConfig, t0: f64) -> Result<f64, NumError> {
    let start = sample(exact, g, t0)?;
    let mut f = start.clone();
    for _ in 0..cfg.steps {
        f = step(&f, cfg, g)?;
    }
    Ok(f.values.iter().zip(&start.values).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}
