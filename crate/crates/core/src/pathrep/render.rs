//! ASCII and SVG drawings of a path representation.
//!
//! Both drawings put `lambda_x` under the columns and `lambda_y` beside the
//! rows. Cells below the path are marked (`*` off the diagonal, `o` on it),
//! so the marked cells are exactly the negative inversions.

use std::fmt::Write;

use super::{PathRepresentation, Step};

type Points = Vec<(usize, usize)>;

// starting points of the East steps and of the South steps
fn step_sets(rep: &PathRepresentation) -> (Points, Points) {
    let pts = rep.path.points();
    let mut east = Vec::new();
    let mut south = Vec::new();
    for (i, s) in rep.path.steps().iter().enumerate() {
        match s {
            Step::East => east.push(pts[i]),
            Step::South => south.push(pts[i]),
        }
    }
    (east, south)
}

pub fn render_ascii(rep: &PathRepresentation) -> String {
    let n = rep.path.n();
    let f = rep.path.height_function();
    let pts = rep.path.points();
    let (east, south) = step_sets(rep);
    let margin = (1..=n)
        .map(|y| rep.lambda_y(y).to_string().len())
        .max()
        .unwrap_or(0)
        + 1;
    let mut out = String::new();
    for y in (0..=n).rev() {
        // grid points and horizontal steps at ordinate y
        let mut line = " ".repeat(margin);
        for x in 0..=n {
            line.push(if pts.contains(&(x, y)) { '+' } else { '.' });
            if x < n {
                line.push_str(if east.contains(&(x, y)) { "---" } else { "   " });
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if y == 0 {
            break;
        }
        // vertical steps and the cells of row y
        let mut line = format!("{:>w$} ", rep.lambda_y(y), w = margin - 1);
        for x in 0..=n {
            line.push(if south.contains(&(x, y)) { '|' } else { ' ' });
            if x < n {
                let cell = x + 1;
                line.push_str(match (y <= f.value(cell), cell == y) {
                    (true, true) => " o ",
                    (true, false) => " * ",
                    _ => "   ",
                });
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let mut line = " ".repeat(margin);
    for x in 1..=n {
        let _ = write!(line, "{:^4}", rep.lambda_x.apply(x));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    out
}

pub fn render_svg(rep: &PathRepresentation) -> String {
    const UNIT: usize = 40;
    const PAD: usize = 50;
    let n = rep.path.n();
    let f = rep.path.height_function();
    let size = 2 * PAD + n * UNIT;
    let px = |x: usize| PAD + x * UNIT;
    let py = |y: usize| PAD + (n - y) * UNIT;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for i in 0..=n {
        let _ = writeln!(
            svg,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#ccc"/>"##,
            px(i), py(0), px(i), py(n)
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#ccc"/>"##,
            px(0), py(i), px(n), py(i)
        );
    }
    let _ = writeln!(
        svg,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#999" stroke-dasharray="2,4"/>"##,
        px(0), py(0), px(n), py(n)
    );
    for x in 1..=n {
        for y in 1..=f.value(x).min(n) {
            let fill = if x == y { "none" } else { "#444" };
            let _ = writeln!(
                svg,
                r##"<circle cx="{}" cy="{}" r="5" fill="{fill}" stroke="#444"/>"##,
                px(x) - UNIT / 2,
                py(y) + UNIT / 2
            );
        }
    }
    let points: Vec<String> = rep
        .path
        .points()
        .into_iter()
        .map(|(x, y)| format!("{},{}", px(x), py(y)))
        .collect();
    let _ = writeln!(
        svg,
        r##"<polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="3" stroke-dasharray="8,4"/>"##,
        points.join(" ")
    );
    for x in 1..=n {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="16" text-anchor="middle">{}</text>"#,
            px(x) - UNIT / 2,
            py(0) + 25,
            rep.lambda_x.apply(x)
        );
    }
    for y in 1..=n {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="16" text-anchor="end">{}</text>"#,
            px(0) - 10,
            py(y) + UNIT / 2 + 5,
            rep.lambda_y(y)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathrep::path_representation;
    use crate::sgnperm::SignedPermutation;

    fn running() -> PathRepresentation {
        let u: SignedPermutation = "-2,3,1,6,-4,-7,5".parse().unwrap();
        path_representation(&u)
    }

    #[test]
    fn ascii_has_labels_and_marks_every_negative_inversion() {
        let art = render_ascii(&running());
        let last = art.lines().last().unwrap();
        let labels: Vec<&str> = last.split_whitespace().collect();
        assert_eq!(labels, ["7", "4", "2", "3", "1", "6", "5"]);
        assert_eq!(art.matches('*').count(), 18);
        assert_eq!(art.matches('o').count(), 3);
        assert!(art.contains("-7"));
        assert_eq!(art.lines().count(), 2 * 7 + 2);
    }

    #[test]
    fn svg_is_standalone() {
        let svg = render_svg(&running());
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 21);
    }
}
