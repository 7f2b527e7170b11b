//! Graph files, angle literals and sweep CSV.
//!
//! A graph file starts with a header line `n m` followed by `m` edge lines
//! `u v` or `u v alpha`. The angle applies to the arc `u -> v` as written and
//! is stored against the `(min, max)` reference orientation, so `3 1 0.5`
//! stores `-0.5` on edge `(1, 3)`. If any edge line carries an angle the file
//! defines a potential, and lines without one carry zero. `#` starts a
//! comment; blank lines are ignored.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::certificates::SweepResult;
use crate::graph::Graph;
use crate::magnetic::MagneticPotential;
use crate::{Error, Result};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("expected {what}, found {token:?}")))
}

pub fn parse_graph_file(text: &str) -> Result<(Graph, Option<MagneticPotential>)> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    });

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing header \"n m\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_error(header_line, "header must be \"n m\""));
    }
    let n = parse_usize(fields[0], header_line, "vertex count")?;
    let m = parse_usize(fields[1], header_line, "edge count")?;

    let mut pairs = Vec::with_capacity(m);
    let mut angles: Vec<f64> = Vec::with_capacity(m);
    let mut with_angles = false;
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if pairs.len() == m {
            return Err(parse_error(
                line,
                format!("more than the declared {m} edge lines"),
            ));
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(parse_error(
                line,
                "edge line must be \"u v\" or \"u v alpha\"",
            ));
        }
        let u = parse_usize(fields[0], line, "vertex")?;
        let v = parse_usize(fields[1], line, "vertex")?;
        let alpha = match fields.get(2) {
            Some(token) => {
                with_angles = true;
                parse_angle(token).map_err(|_| parse_error(line, format!("bad angle {token:?}")))?
            }
            None => 0.0,
        };
        angles.push(if u > v { -alpha } else { alpha });
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(parse_error(
            last_line,
            format!("declared {m} edges, found {}", pairs.len()),
        ));
    }

    let graph = Graph::from_edge_list(n, &pairs)?;
    let potential = with_angles.then(|| MagneticPotential::new(angles));
    Ok((graph, potential))
}

/// Inverse of [`parse_graph_file`]; angles are written with full precision so
/// the round trip is exact.
pub fn write_graph_file(graph: &Graph, potential: Option<&MagneticPotential>) -> Result<String> {
    if let Some(p) = potential {
        if p.len() != graph.edge_count() {
            return Err(Error::SizeMismatch {
                expected: graph.edge_count(),
                found: p.len(),
            });
        }
    }
    let mut out = format!("{} {}\n", graph.vertex_count(), graph.edge_count());
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        match potential {
            Some(p) => writeln!(out, "{u} {v} {:?}", p.values()[i]),
            None => writeln!(out, "{u} {v}"),
        }
        .expect("writing to a String");
    }
    Ok(out)
}

/// Accepts plain numbers and multiples of π: `pi`, `-pi`, `pi/2`, `3pi/2`,
/// `3*pi/4`, `2.5pi`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let s = text.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse angle {text:?}"));
    if let Ok(x) = s.parse::<f64>() {
        return if x.is_finite() { Ok(x) } else { Err(bad()) };
    }
    let lower = s.to_ascii_lowercase();
    let Some(pos) = lower.find("pi") else {
        return Err(bad());
    };
    let coefficient = lower[..pos].trim_end_matches('*').trim();
    let rest = lower[pos + 2..].trim();
    let c = match coefficient {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let d = if rest.is_empty() {
        1.0
    } else {
        let denominator = rest.strip_prefix('/').ok_or_else(bad)?.trim();
        let d = denominator.parse::<f64>().map_err(|_| bad())?;
        if d == 0.0 {
            return Err(bad());
        }
        d
    };
    let value = c * PI / d;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// `%.12g`-style formatting, with values below `1e-12` in magnitude written as `0`.
pub fn format_sig12(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exponent) {
        let s = format!("{:.11e}", x);
        let (mantissa, exp) = s.split_once('e').expect("scientific format");
        let mantissa = trim_zeros(mantissa);
        let exp: i32 = exp.parse().expect("integer exponent");
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exponent).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    let s = trim_zeros(&s);
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Header `t` (or `t_1..t_c` on the chord torus) then `lambda_1..lambda_n`;
/// one row per grid point.
pub fn emit_sweep_csv(sweep: &SweepResult) -> String {
    let n = sweep.points.first().map_or(0, |p| p.spectrum.len());
    let d = sweep.dimension();
    let mut columns: Vec<String> = if d == 1 && sweep.chords.len() <= 1 {
        vec!["t".to_string()]
    } else {
        (1..=d).map(|i| format!("t_{i}")).collect()
    };
    columns.extend((1..=n).map(|k| format!("lambda_{k}")));
    let mut out = columns.join(",");
    out.push('\n');
    for p in &sweep.points {
        let row: Vec<String> = p
            .parameters
            .iter()
            .chain(p.spectrum.values())
            .map(|&x| format_sig12(x))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::sweep_constant_potential;
    use crate::graph::EdgeId;

    #[test]
    fn k2_without_potential() {
        let (g, p) = parse_graph_file("2 1\n0 1").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert!(p.is_none());
    }

    #[test]
    fn loop_is_rejected() {
        assert_eq!(
            parse_graph_file("3 1\n0 0").unwrap_err(),
            Error::LoopEdge(0)
        );
    }

    #[test]
    fn reversed_arc_flips_sign() {
        let (g, p) =
            parse_graph_file("# triangle\n3 3\n0 1 0\n2 1 0.5 # reversed\n\n0 2 0").unwrap();
        let p = p.unwrap();
        assert_eq!(g.edges()[1], (1, 2));
        assert!((p.edge_value(EdgeId(1)) - (std::f64::consts::TAU - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn missing_angles_are_zero() {
        let (g, p) = parse_graph_file("3 3\n0 1\n2 1 pi\n0 2").unwrap();
        let p = p.unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(p.values()[0], 0.0);
        assert!((p.values()[1] - PI).abs() < 1e-12);
        assert_eq!(p.values()[2], 0.0);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let cases = [
            ("", 1),
            ("2", 1),
            ("2 1\n0 x", 2),
            ("3 1\n0 1\n1 2", 3),
            ("3 2\n# c\n0 1", 3),
            ("2 1\n0 1 pie", 2),
        ];
        for (text, line) in cases {
            match parse_graph_file(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_graph_file("2 1\n0 5"),
            Err(Error::VertexOutOfRange { vertex: 5, n: 2 })
        ));
    }

    #[test]
    fn round_trip() {
        let text = "4 4\n0 1 0.25\n1 2 3.141592653589793\n3 2 1\n0 3 6\n";
        let (g, p) = parse_graph_file(text).unwrap();
        let written = write_graph_file(&g, p.as_ref()).unwrap();
        let (g2, p2) = parse_graph_file(&written).unwrap();
        assert_eq!(g, g2);
        assert_eq!(p, p2);
        let plain = write_graph_file(&g, None).unwrap();
        assert_eq!(parse_graph_file(&plain).unwrap(), (g, None));
    }

    #[test]
    fn angles() {
        let cases = [
            ("pi", PI),
            ("-pi", -PI),
            ("pi/2", PI / 2.0),
            ("3pi/2", 1.5 * PI),
            ("3*pi/4", 0.75 * PI),
            ("-pi/4", -PI / 4.0),
            ("0.5", 0.5),
            ("PI", PI),
        ];
        for (s, x) in cases {
            assert!((parse_angle(s).unwrap() - x).abs() < 1e-15, "{s}");
        }
        for s in ["", "p", "pi/0", "xpi", "pi/", "nan", "inf"] {
            assert!(parse_angle(s).is_err(), "{s}");
        }
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-1e-15), "0");
        assert_eq!(format_sig12(2.0), "2");
        assert_eq!(format_sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_sig12(0.001234), "0.001234");
        assert_eq!(format_sig12(1.0e-7), "1e-07");
        assert_eq!(format_sig12(-123456.5), "-123456.5");
        assert_eq!(format_sig12(1.5e13), "1.5e+13");
    }

    #[test]
    fn k2_csv() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        let csv = emit_sweep_csv(&sweep_constant_potential(&k2, 4).unwrap());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,lambda_1,lambda_2");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1], "0,0,2");
        for row in &lines[1..] {
            assert!(row.ends_with(",0,2"), "{row}");
        }
        assert_eq!(
            csv,
            emit_sweep_csv(&sweep_constant_potential(&k2, 4).unwrap())
        );
    }
}
