//! Static SVG scatter plots of planar instances: fill colour by class,
//! marker shape by part. Points in no part are drawn hollow, and the
//! certified common point (if any) as a black cross.

use std::fmt::Write;

use colourful_core::Rational;
use num_traits::ToPrimitive;

use crate::error::CliError;
use crate::format::{from_q, InstanceFile, ResultFile};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 30.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

struct Mark {
    xy: (f64, f64),
    colour: usize,
    part: Option<usize>,
}

fn xy(p: &[Rational]) -> (f64, f64) {
    (p[0].to_f64().unwrap_or(0.0), p[1].to_f64().unwrap_or(0.0))
}

fn marks(instance: &InstanceFile, result: Option<&ResultFile>) -> Result<Vec<Mark>, CliError> {
    if let Some(classes) = &instance.classes {
        let rows = result.and_then(|r| r.representation.as_ref());
        let mut out = Vec::new();
        for (j, class) in classes.iter().enumerate() {
            for (m, p) in class.iter().enumerate() {
                let part = rows.and_then(|rows| rows.get(j)).and_then(|row| row.iter().position(|&v| v == m + 1));
                out.push(Mark { xy: xy(&from_q(p)), colour: j, part });
            }
        }
        return Ok(out);
    }
    let (points, colours) = instance.coloured_points()?;
    let split = result.and_then(|r| r.split.as_ref());
    Ok(points
        .iter()
        .zip(&colours)
        .enumerate()
        .map(|(i, (p, &c))| {
            let part = split.and_then(|s| {
                if s.a.contains(&(i + 1)) {
                    Some(0)
                } else if s.b.contains(&(i + 1)) {
                    Some(1)
                } else {
                    None
                }
            });
            Mark { xy: xy(p), colour: c - 1, part }
        })
        .collect())
}

fn common_point(result: Option<&ResultFile>) -> Option<(f64, f64)> {
    let result = result?;
    let point = result
        .certificate
        .as_ref()
        .map(|c| &c.point)
        .or(result.intersection.as_ref().map(|i| &i.point))
        .or(result.split.as_ref().map(|s| &s.intersection.point))?;
    Some(xy(&from_q(point)))
}

pub fn render(instance: &InstanceFile, result: Option<&ResultFile>) -> Result<String, CliError> {
    if instance.d != 2 {
        return Err(CliError::usage(format!("--svg needs a planar instance, this one has d = {}", instance.d)));
    }
    let marks = marks(instance, result)?;
    let cross = common_point(result);
    let all: Vec<(f64, f64)> = marks.iter().map(|m| m.xy).chain(cross).collect();
    let (min_x, max_x) = all.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| (lo.min(p.0), hi.max(p.0)));
    let (min_y, max_y) = all.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let screen = |(x, y): (f64, f64)| (MARGIN + (x - min_x) * scale, SIZE - MARGIN - (y - min_y) * scale);

    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for m in &marks {
        let (x, y) = screen(m.xy);
        let colour = PALETTE[m.colour % PALETTE.len()];
        let style = match m.part {
            Some(_) => format!(r#"fill="{colour}" stroke="black" stroke-width="0.5""#),
            None => format!(r#"fill="none" stroke="{colour}" stroke-width="1.5""#),
        };
        let r = 6.0;
        match m.part.unwrap_or(0) % 4 {
            0 => writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" {style}/>"#),
            1 => writeln!(s, r#"<rect x="{:.2}" y="{:.2}" width="{}" height="{}" {style}/>"#, x - r, y - r, 2.0 * r, 2.0 * r),
            2 => writeln!(s, r#"<polygon points="{x:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" {style}/>"#, y - r, x - r, y + r, x + r, y + r),
            _ => writeln!(s, r#"<polygon points="{x:.2},{:.2} {:.2},{y:.2} {x:.2},{:.2} {:.2},{y:.2}" {style}/>"#, y - r, x + r, y + r, x - r),
        }
        .unwrap();
    }
    if let Some(p) = cross {
        let (x, y) = screen(p);
        writeln!(
            s,
            r#"<path d="M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}" stroke="black" stroke-width="2"/>"#,
            x - 7.0,
            y - 7.0,
            x + 7.0,
            y + 7.0,
            x - 7.0,
            y + 7.0,
            x + 7.0,
            y - 7.0
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}
