//! Text and SVG pictures of tree pairs and PL maps.

use std::fmt::Write;

use crate::forest::{Forest, Tree};
use crate::pl::PlMap;
use crate::span::SpanMap;

const LEAF_GAP: usize = 4;

fn height(t: &Tree) -> usize {
    match t {
        Tree::Leaf => 0,
        Tree::Node(ch) => 1 + ch.iter().map(height).max().unwrap_or(0),
    }
}

struct Canvas {
    rows: Vec<Vec<char>>,
}

impl Canvas {
    fn new(width: usize, height: usize) -> Canvas {
        Canvas {
            rows: vec![vec![' '; width]; height],
        }
    }

    fn put(&mut self, row: usize, col: usize, c: char) {
        self.rows[row][col] = c;
    }

    fn lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| r.iter().collect::<String>().trim_end().to_string())
            .collect()
    }
}

/// Draws `t` with its first leaf in column `first`; returns the column of
/// its root. Leaves sit on the bottom row `total`.
fn draw(t: &Tree, first: usize, total: usize, canvas: &mut Canvas) -> usize {
    match t {
        Tree::Leaf => {
            canvas.put(total, first, '|');
            first
        }
        Tree::Node(ch) => {
            let row = total - 2 * height(t);
            let mut col = first;
            let mut xs = Vec::with_capacity(ch.len());
            for c in ch {
                let x = draw(c, col, total, canvas);
                let top = total - 2 * height(c);
                for r in row + 2..top {
                    canvas.put(r, x, '|');
                }
                xs.push(x);
                col += c.leaf_count() * LEAF_GAP;
            }
            let (lo, hi) = (xs[0], xs[xs.len() - 1]);
            let x = (lo + hi) / 2;
            for c in lo + 1..hi {
                canvas.put(row, c, '_');
            }
            canvas.put(row, x, '|');
            for &m in &xs[1..xs.len() - 1] {
                canvas.put(row + 1, m, '|');
            }
            canvas.put(row + 1, lo, '/');
            canvas.put(row + 1, hi, '\\');
            x
        }
    }
}

/// ASCII drawing of a forest, one block of lines.
pub fn forest_text(f: &Forest) -> Vec<String> {
    let h = f.trees().iter().map(height).max().unwrap_or(0);
    let total = 2 * h;
    let width = (f.leaves().max(1) - 1) * LEAF_GAP + 1;
    let mut canvas = Canvas::new(width, total + 1);
    let mut col = 0;
    for t in f.trees() {
        draw(t, col, total, &mut canvas);
        col += t.leaf_count() * LEAF_GAP;
    }
    canvas.lines()
}

fn side_by_side(left: &[String], right: &[String], width: usize) -> Vec<String> {
    let n = left.len().max(right.len());
    // align both drawings on their bottom row
    let row = |v: &[String], i: usize| -> String {
        let off = n - v.len();
        if i < off {
            String::new()
        } else {
            v[i - off].clone()
        }
    };
    (0..n)
        .map(|i| {
            let line = format!("{:width$}{}", row(left, i), row(right, i));
            line.trim_end().to_string()
        })
        .collect()
}

/// The two legs side by side: domain tree left, codomain tree right.
pub fn span_text(s: &SpanMap) -> String {
    let left = forest_text(s.leg_src());
    let right = forest_text(s.leg_dst());
    let width = left.iter().map(String::len).max().unwrap_or(0).max(6) + 6;
    let mut out = format!("{:width$}{}\n", "domain", "codomain");
    for line in side_by_side(&left, &right, width) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Breakpoints and slopes as a table.
pub fn pl_text(p: &PlMap) -> String {
    let mut out = format!("PL map {} -> {}\n", p.src(), p.dst());
    let wx = p
        .points()
        .iter()
        .map(|(x, _)| x.to_string().len())
        .max()
        .unwrap_or(1);
    let wy = p
        .points()
        .iter()
        .map(|(_, y)| y.to_string().len())
        .max()
        .unwrap_or(1);
    for (i, (x, y)) in p.points().iter().enumerate() {
        let line = match p.slopes().get(i) {
            Some(s) => format!(
                "  {:wx$}  ->  {:wy$}    slope 2^{s}",
                x.to_string(),
                y.to_string()
            ),
            None => format!("  {:wx$}  ->  {}", x.to_string(), y),
        };
        let _ = writeln!(out, "{line}");
    }
    out
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 30.0;

fn svg_open(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
}

fn svg_text(out: &mut String, x: f64, y: f64, text: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{x:.2}" y="{y:.2}" font-family="monospace" font-size="14" text-anchor="middle">{text}</text>"#
    );
}

/// Lays out `f` in the box `[x0, x0 + w] × [y0, y0 + h]` and appends it.
fn svg_forest(out: &mut String, f: &Forest, x0: f64, y0: f64, w: f64, h: f64) {
    let leaves = f.leaves().max(1) as f64;
    let depth = f.trees().iter().map(Tree::depth).max().unwrap_or(0).max(1) as f64;
    let step_x = w / leaves;
    let step_y = h / depth;

    fn walk(
        t: &Tree,
        first: usize,
        level: usize,
        geo: (f64, f64, f64, f64),
        out: &mut String,
    ) -> (f64, f64) {
        let (x0, y0, sx, sy) = geo;
        let y = y0 + level as f64 * sy;
        match t {
            Tree::Leaf => {
                let x = x0 + (first as f64 + 0.5) * sx;
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#
                );
                (x, y)
            }
            Tree::Node(ch) => {
                let mut at = first;
                let mut ends = Vec::with_capacity(ch.len());
                for c in ch {
                    ends.push(walk(c, at, level + 1, geo, out));
                    at += c.leaf_count();
                }
                let x = (ends[0].0 + ends[ends.len() - 1].0) / 2.0;
                for (cx, cy) in ends {
                    let _ = writeln!(
                        out,
                        r#"<line x1="{x:.2}" y1="{y:.2}" x2="{cx:.2}" y2="{cy:.2}" stroke="black" stroke-width="2"/>"#
                    );
                }
                (x, y)
            }
        }
    }

    let mut first = 0;
    for t in f.trees() {
        walk(t, first, 0, (x0, y0, step_x, step_y), out);
        first += t.leaf_count();
    }
}

/// Domain tree on the left, codomain tree on the right.
pub fn span_svg(s: &SpanMap) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    let panel = (WIDTH - 3.0 * MARGIN) / 2.0;
    let top = 2.0 * MARGIN;
    let h = HEIGHT - 3.0 * MARGIN;
    svg_text(&mut out, MARGIN + panel / 2.0, MARGIN, "domain");
    svg_text(&mut out, 2.0 * MARGIN + 1.5 * panel, MARGIN, "codomain");
    svg_forest(&mut out, s.leg_src(), MARGIN, top, panel, h);
    svg_forest(&mut out, s.leg_dst(), 2.0 * MARGIN + panel, top, panel, h);
    out.push_str("</svg>\n");
    out
}

/// The graph of a PL map on `[0, src] × [0, dst]` with its breakpoints.
pub fn pl_svg(p: &PlMap) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    let side = HEIGHT - 2.0 * MARGIN;
    let x0 = (WIDTH - side) / 2.0;
    let y0 = MARGIN;
    let sx = side / p.src().max(1) as f64;
    let sy = side / p.dst().max(1) as f64;
    let _ = writeln!(
        out,
        r#"<rect x="{x0:.2}" y="{y0:.2}" width="{side:.2}" height="{side:.2}" fill="none" stroke="gray"/>"#
    );
    let pts: Vec<(f64, f64)> = p
        .points()
        .iter()
        .map(|(x, y)| (x0 + x.to_f64() * sx, y0 + side - y.to_f64() * sy))
        .collect();
    let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        path.join(" ")
    );
    for (x, y) in &pts {
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="red"/>"#);
    }
    svg_text(
        &mut out,
        x0 + side / 2.0,
        HEIGHT - 8.0,
        &format!("[0,{}] -> [0,{}]", p.src(), p.dst()),
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(s: &str) -> Forest {
        s.parse().unwrap()
    }

    #[test]
    fn single_leaf() {
        assert_eq!(forest_text(&forest("[l]")), vec!["|"]);
    }

    #[test]
    fn caret() {
        assert_eq!(
            forest_text(&forest("[(l l)]")),
            vec![" _|_", "/   \\", "|   |"]
        );
    }

    #[test]
    fn left_comb() {
        assert_eq!(
            forest_text(&forest("[((l l) l)]")),
            vec![
                "   __|__",
                "  /     \\",
                " _|_    |",
                "/   \\   |",
                "|   |   |",
            ]
        );
    }

    #[test]
    fn forest_and_ternary() {
        assert_eq!(
            forest_text(&forest("[l (l l)]")),
            vec!["     _|_", "    /   \\", "|   |   |"]
        );
        let t =
            Forest::parse_with_arity("[(l l l)]", crate::forest::Arity::new(3).unwrap()).unwrap();
        assert_eq!(forest_text(&t), vec![" ___|___", "/   |   \\", "|   |   |"]);
    }

    #[test]
    fn identity_span() {
        let s = SpanMap::identity(1, crate::forest::Arity::BINARY);
        assert_eq!(span_text(&s), "domain      codomain\n|           |\n");
    }

    #[test]
    fn svg_is_deterministic_and_closed() {
        let s: SpanMap = "<[(l (l l))] | [((l l) l)]>".parse().unwrap();
        let a = span_svg(&s);
        assert_eq!(a, span_svg(&s));
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<circle").count(), 6);
        let p: PlMap = "0:0,1/4:1/2,1/2:3/4,1:1".parse().unwrap();
        let g = pl_svg(&p);
        assert_eq!(g.matches("<circle").count(), 4);
        assert!(g.contains("<polyline"));
    }
}
