use std::io::Write;

use plsym::liealg::tables::{basis_coefficients, entry, ADJOINT, COMMUTATION, INVARIANT_VALUES};
use plsym::liealg::{adjoint_action, invariant_row_mismatches, invariant_values, structure_constants, AlgebraElement};
use plsym::symexpr::{is_zero, Constraints, Expr, Rational, ZeroVerdict};

use crate::report::{Format, Report, Verdict};
use crate::{combo, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    Commutation,
    Adjoint,
    Invariants,
}

pub(crate) struct Table {
    title: &'static str,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn same(a: &[Expr; 5], b: &[Expr; 5]) -> Result<bool, Failure> {
    for (x, y) in a.iter().zip(b) {
        if is_zero(&(x.clone() - y.clone()), &Constraints::new())? != ZeroVerdict::Zero {
            return Ok(false);
        }
    }
    Ok(true)
}

fn generators_header(corner: &str) -> Vec<String> {
    std::iter::once(corner.to_string()).chain((1..=5).map(|j| format!("X{j}"))).collect()
}

pub(crate) fn commutation(check: &mut Report) -> Result<Table, Failure> {
    let c = structure_constants()?;
    let mut rows = Vec::new();
    let mut matched = 0;
    for (i, row) in c.iter().enumerate() {
        let mut cells = vec![format!("X{}", i + 1)];
        for (j, coeffs) in row.iter().enumerate() {
            cells.push(combo(coeffs));
            matched += usize::from(same(coeffs, &basis_coefficients(COMMUTATION[i][j]))?);
        }
        rows.push(cells);
    }
    let v = if matched == 25 { Verdict::Pass } else { Verdict::Fail };
    check.push("commutation table", v, format!("{matched}/25 entries"), "Commutation Table");
    Ok(Table { title: "[Xi, Xj]", header: generators_header("[,]"), rows })
}

pub(crate) fn adjoint(check: &mut Report) -> Result<Table, Failure> {
    let eps = Expr::param("eps");
    let mut rows = Vec::new();
    let mut matched = 0;
    for i in 1..=5 {
        let mut cells = vec![format!("X{i}")];
        for j in 1..=5 {
            let got = adjoint_action(i, &eps, &AlgebraElement::basis(j))?;
            cells.push(combo(&got.alpha));
            matched += usize::from(same(&got.alpha, &basis_coefficients(ADJOINT[i - 1][j - 1]))?);
        }
        rows.push(cells);
    }
    let v = if matched == 25 { Verdict::Pass } else { Verdict::Fail };
    check.push("adjoint representation table", v, format!("{matched}/25 entries"), "Adjoint Representation Table");
    Ok(Table { title: "Ad(exp(eps Xi)) Xj", header: generators_header("Ad"), rows })
}

pub(crate) fn invariants(check: &mut Report) -> Result<Table, Failure> {
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::new();
    let mut matched = 0;
    for row in INVARIANT_VALUES {
        let mut all = true;
        for signs in 0..8u8 {
            let s = |bit: u8| if signs & bit == 0 { one.clone() } else { -one.clone() };
            let vals = [("a2", s(1)), ("a4", s(2) * Rational::from_integer(2.into())), ("a5", s(4))];
            all &= invariant_row_mismatches(&row, &vals)?.is_empty();
        }
        matched += usize::from(all);
        let coords: Vec<Expr> = row.element.iter().map(|e| if e.starts_with('a') { Expr::one() } else { entry(e) }).collect();
        let rats: Vec<Rational> = coords.iter().map(|e| e.as_constant().expect("numeric")).collect();
        let v = invariant_values(&AlgebraElement::from_rationals(&rats.try_into().expect("five")))?;
        rows.push(vec![
            row.label.to_string(),
            v.k.to_string(),
            v.m.to_string(),
            v.n.to_string(),
            v.p.to_string(),
            v.q.to_string(),
            v.r.to_string(),
            v.s.to_string(),
            v.t.to_string(),
        ]);
    }
    let v = if matched == INVARIANT_VALUES.len() { Verdict::Pass } else { Verdict::Fail };
    check.push("invariant value table", v, format!("{matched}/12 rows (all sign patterns)"), "Value of Invariant Function");
    let header = ["element", "K", "M", "N", "P", "Q", "R", "S", "T"].map(String::from).to_vec();
    Ok(Table { title: "invariants with a2 = a4 = a5 = 1", header, rows })
}

/// Renders the computed table; with `check`, appends the comparison with the
/// embedded transcription and returns whether it matched.
pub fn cmd_tables(which: Which, check: bool, format: Format, out: &mut dyn Write) -> Result<bool, Failure> {
    let mut report = Report::new(format!("tables {which:?}").to_lowercase());
    let table = match which {
        Which::Commutation => commutation(&mut report)?,
        Which::Adjoint => adjoint(&mut report)?,
        Which::Invariants => invariants(&mut report)?,
    };
    match format {
        Format::Text => {
            writeln!(out, "{}", table.title)?;
            let width = |k: usize| table.rows.iter().map(|r| r[k].len()).chain([table.header[k].len()]).max().unwrap_or(0);
            let widths: Vec<usize> = (0..table.header.len()).map(width).collect();
            let line = |cells: &[String]| -> String {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join(" | ")
            };
            writeln!(out, "{}", line(&table.header))?;
            for r in &table.rows {
                writeln!(out, "{}", line(r))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&table.header)?;
            for r in &table.rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut v = serde_json::json!({ "table": table.title, "header": table.header, "rows": table.rows });
            if check {
                v["report"] = serde_json::to_value(&report)?;
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    if !check {
        return Ok(true);
    }
    if format != Format::Json {
        let c = &report.checks[0];
        writeln!(out, "check: {}, {}", c.verdict, c.detail)?;
    }
    Ok(report.ok())
}
