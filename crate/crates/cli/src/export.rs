use std::path::{Path, PathBuf};

use plsym::numgrid::Exact;
use plsym::solutions::{family, FamilyId};

use crate::report::{Report, Verdict};
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
}

/// What a panel samples: a surface over (x, y), or a line over one
/// coordinate for several values of a swept parameter.
enum Kind {
    Surface { t: f64 },
    Line { fixed: (&'static str, f64), t: f64, sweep: &'static str, values: &'static [f64] },
}

struct Panel {
    file: &'static str,
    params: Vec<(&'static str, f64)>,
    kind: Kind,
}

const SURFACE_N: usize = 40;
const LINE_N: usize = 81;

fn surface(file: &'static str, t: f64, params: Vec<(&'static str, f64)>) -> Panel {
    Panel { file, params, kind: Kind::Surface { t } }
}

fn line(
    file: &'static str,
    fixed: (&'static str, f64),
    t: f64,
    sweep: &'static str,
    values: &'static [f64],
    params: Vec<(&'static str, f64)>,
) -> Panel {
    Panel { file, params, kind: Kind::Line { fixed, t, sweep, values } }
}

fn panels(fig: Figure) -> (FamilyId, Vec<Panel>) {
    let th = |v: f64| ("theta", v);
    match fig {
        Figure::F1 => {
            let p = vec![("h", 0.0), th(0.5)];
            (
                FamilyId::S1,
                vec![
                    surface("F1a_surface_t10.csv", 10.0, p.clone()),
                    surface("F1b_contour_t10.csv", 10.0, p.clone()),
                    line("F1c_x2_t_sweep.csv", ("x", 2.0), 0.0, "t", &[1.0, 2.0, 5.0, 10.0], p),
                ],
            )
        }
        Figure::F2 => {
            let mut v = Vec::new();
            for (file, theta) in [
                ("F2a_surface_theta0.055.csv", 0.055),
                ("F2b_surface_theta0.555.csv", 0.555),
                ("F2c_surface_theta0.955.csv", 0.955),
                ("F2d_contour_theta0.055.csv", 0.055),
                ("F2e_contour_theta0.555.csv", 0.555),
                ("F2f_contour_theta0.955.csv", 0.955),
            ] {
                v.push(surface(file, 1.0, vec![("h", 2.0), th(theta)]));
            }
            v.push(line("F2g_x5_theta_sweep.csv", ("x", 5.0), 1.0, "theta", &[0.055, 0.555, 0.955], vec![("h", 2.0)]));
            v.push(line("F2h_x5_h_sweep.csv", ("x", 5.0), 1.0, "h", &[1.0, 2.0, 4.0], vec![th(0.555)]));
            (FamilyId::S2, v)
        }
        Figure::F3 => {
            let p = vec![("h", 0.0), th(0.5), ("alpha2", 1.0), ("alpha4", 1.0), ("alpha5", 0.0), ("d1", 1.0), ("d2", 3.0)];
            (FamilyId::S3, vec![surface("F3a_surface_t1.csv", 1.0, p.clone()), surface("F3b_surface_t10.csv", 10.0, p)])
        }
        Figure::F4 => {
            let c = [("c3", 1.0), ("c4", 1.0), ("c5", 1.0)];
            let with = |extra: Vec<(&'static str, f64)>| c.iter().copied().chain(extra).collect::<Vec<_>>();
            (
                FamilyId::S4,
                vec![
                    surface("F4a_surface.csv", 1.0, with(vec![("h", 2.0), th(0.555)])),
                    surface("F4b_contour.csv", 1.0, with(vec![("h", 2.0), th(0.555)])),
                    line("F4c_y1_h_sweep.csv", ("y", 1.0), 1.0, "h", &[1.0, 2.0, 4.0], with(vec![th(0.555)])),
                    line("F4d_y1_theta_sweep.csv", ("y", 1.0), 1.0, "theta", &[0.055, 0.555, 0.955], with(vec![("h", 2.0)])),
                ],
            )
        }
        Figure::F5 => {
            let c = vec![("h", 0.0), ("c1", 1.0), ("c3", 1.0), ("c4", 1.0), ("c5", 1.0)];
            let with = |extra: Vec<(&'static str, f64)>| c.iter().copied().chain(extra).collect::<Vec<_>>();
            (
                FamilyId::S5,
                vec![
                    surface("F5a_surface_t1.csv", 1.0, with(vec![th(0.5)])),
                    surface("F5b_contour_t1.csv", 1.0, with(vec![th(0.5)])),
                    line("F5c_y0_t_sweep.csv", ("y", 0.0), 0.0, "t", &[1.0, 2.0, 3.0, 4.0], with(vec![th(0.5)])),
                    line("F5d_y0_theta_sweep.csv", ("y", 0.0), 1.0, "theta", &[0.1, 0.5, 0.9], with(vec![])),
                ],
            )
        }
        Figure::F6 => {
            let c = vec![("h", 0.0), ("c1", 1.0), ("c2", 1.0), ("c4", 1.0), ("c5", 1.0)];
            let with = |extra: Vec<(&'static str, f64)>| c.iter().copied().chain(extra).collect::<Vec<_>>();
            (
                FamilyId::S6,
                vec![
                    surface("F6a_surface_t1.csv", 1.0, with(vec![th(0.5)])),
                    surface("F6b_contour_t1.csv", 1.0, with(vec![th(0.5)])),
                    line("F6c_x2_t_sweep.csv", ("x", 2.0), 0.0, "t", &[1.0, 2.0, 3.0, 4.0], with(vec![th(0.9)])),
                ],
            )
        }
    }
}

/// Grid coordinates on [−5, 5]; an even node count keeps the origin off the grid.
fn axis(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| -5.0 + 10.0 * k as f64 / (n as f64 - 1.0))
}

fn write_panel(id: FamilyId, panel: &Panel, dir: &Path) -> Result<(usize, usize), Failure> {
    let phi = family(id).literal_phi();
    let mut w = csv::Writer::from_path(dir.join(panel.file))?;
    let (mut rows, mut skipped) = (0, 0);
    let mut emit = |w: &mut csv::Writer<std::fs::File>, cells: Vec<f64>, v: Result<f64, _>| -> Result<(), Failure> {
        match v {
            Ok(v) if f64::is_finite(v) => {
                let mut rec: Vec<String> = cells.iter().map(f64::to_string).collect();
                rec.push(v.to_string());
                w.write_record(&rec)?;
                rows += 1;
            }
            _ => skipped += 1,
        }
        Ok(())
    };
    match &panel.kind {
        Kind::Surface { t } => {
            let ex = Exact::new(phi, &panel.params);
            w.write_record(["x", "y", "phi"])?;
            for x in axis(SURFACE_N) {
                for y in axis(SURFACE_N) {
                    emit(&mut w, vec![x, y], ex.eval(x, y, *t))?;
                }
            }
        }
        Kind::Line { fixed, t, sweep, values } => {
            let free = if fixed.0 == "x" { "y" } else { "x" };
            w.write_record([*sweep, free, "phi"])?;
            for s in values.iter() {
                let mut params = panel.params.clone();
                let mut time = *t;
                if *sweep == "t" {
                    time = *s;
                } else {
                    params.push((sweep, *s));
                }
                let ex = Exact::new(phi.clone(), &params);
                for u in axis(LINE_N) {
                    let (x, y) = if fixed.0 == "x" { (fixed.1, u) } else { (u, fixed.1) };
                    emit(&mut w, vec![*s, u], ex.eval(x, y, time))?;
                }
            }
        }
    }
    w.flush()?;
    Ok((rows, skipped))
}

pub fn cmd_export(fig: Figure, dir: &PathBuf) -> Result<Report, Failure> {
    std::fs::create_dir_all(dir)?;
    let (id, list) = panels(fig);
    let mut r = Report::new(format!("export {fig:?} ({id})"));
    for p in &list {
        let (rows, skipped) = write_panel(id, p, dir)?;
        let (verdict, detail) = if rows == 0 {
            (Verdict::Fail, format!("no real values: all {skipped} points hit a domain error"))
        } else if skipped > 0 {
            (Verdict::Pass, format!("{rows} rows, {skipped} points skipped (domain error)"))
        } else {
            (Verdict::Pass, format!("{rows} rows"))
        };
        r.push(dir.join(p.file).display().to_string(), verdict, detail, "figure captions");
    }
    Ok(r)
}
