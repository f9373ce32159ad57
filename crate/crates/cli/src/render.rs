//! ASCII and SVG drawings of dotted matchings and classes.

use std::fmt::Write;

use num::{BigInt, One, Signed};
use springer_core::homology::HomClass;
use springer_core::{Arc, DottedMatching};

const SPACING: usize = 4;

/// Height of each arc: 1 for innermost, one more than the tallest arc below it.
fn heights(x: &DottedMatching) -> Vec<(Arc, usize)> {
    let arcs = x.base().arcs();
    let mut by_width: Vec<Arc> = arcs.to_vec();
    by_width.sort_by_key(|&(i, j)| j - i);
    let mut out: Vec<(Arc, usize)> = Vec::new();
    for (i, j) in by_width {
        let inner = out.iter().filter(|((p, q), _)| i < *p && *q < j).map(|(_, h)| *h).max().unwrap_or(0);
        out.push(((i, j), inner + 1));
    }
    out.sort();
    out
}

/// Lines of the drawing: arcs above a row of vertex labels, `*` marks a dot.
pub fn ascii_lines(x: &DottedMatching) -> Vec<String> {
    let n = x.n();
    let hs = heights(x);
    let rows = hs.iter().map(|&(_, h)| h).max().unwrap_or(0).max(1) + 1;
    let width = SPACING * n.max(1) - SPACING + 2;
    let mut grid = vec![vec![' '; width]; rows];
    let col = |v: usize| SPACING * (v - 1);
    for &((i, j), h) in &hs {
        let top = rows - 1 - h;
        let (a, b) = (col(i), col(j));
        for c in grid[top].iter_mut().take(b).skip(a + 1) {
            *c = '-';
        }
        grid[top][a] = '.';
        grid[top][b] = '.';
        if x.is_dotted((i, j)) {
            grid[top][(a + b) / 2] = '*';
        }
        for row in grid.iter_mut().skip(top + 1) {
            row[a] = '|';
            row[b] = '|';
        }
    }
    for &r in x.base().rays() {
        for row in grid.iter_mut() {
            row[col(r)] = '|';
        }
        grid[(rows - 1) / 2][col(r)] = '*';
    }
    let mut lines: Vec<String> = grid.into_iter().map(|r| r.into_iter().collect::<String>()).collect();
    let mut labels = String::new();
    for v in 1..=n {
        let _ = write!(labels, "{:<width$}", v, width = SPACING);
    }
    lines.push(labels);
    let w = lines.iter().map(|l| l.trim_end().chars().count()).max().unwrap_or(0);
    lines.iter().map(|l| format!("{:<w$}", l.trim_end())).collect()
}

fn coefficient_prefix(i: usize, c: &BigInt) -> String {
    let sign = match (i, c.is_negative()) {
        (0, false) => "",
        (0, true) => "-",
        (_, false) => "+ ",
        (_, true) => "- ",
    };
    if c.abs().is_one() {
        sign.to_string()
    } else {
        format!("{sign}{}·", c.abs())
    }
}

/// Terms side by side, bottom-aligned, joined by their signs on the label row.
pub fn ascii_class(x: &HomClass) -> String {
    if x.is_zero() {
        return "0\n".into();
    }
    let blocks: Vec<(String, Vec<String>)> = x
        .terms()
        .iter()
        .enumerate()
        .map(|(i, (g, c))| (coefficient_prefix(i, c), ascii_lines(g)))
        .collect();
    let height = blocks.iter().map(|(_, b)| b.len()).max().unwrap_or(0);
    let mut out = vec![String::new(); height];
    for (t, (prefix, block)) in blocks.iter().enumerate() {
        let pad = height - block.len();
        let w = block[0].chars().count();
        let pw = prefix.chars().count();
        for (r, line) in out.iter_mut().enumerate() {
            if t > 0 {
                line.push_str("  ");
            }
            if r + 1 == height {
                line.push_str(prefix);
            } else {
                line.push_str(&" ".repeat(pw));
            }
            if r >= pad {
                line.push_str(&block[r - pad]);
            } else {
                line.push_str(&" ".repeat(w));
            }
        }
    }
    let mut s = out.iter().map(|l| l.trim_end()).collect::<Vec<_>>().join("\n");
    s.push('\n');
    s
}

const STEP: f64 = 40.0;
const MARGIN: f64 = 20.0;

fn svg_term(x: &DottedMatching, dx: f64, base: f64, out: &mut String) -> f64 {
    let pos = |v: usize| dx + STEP * (v as f64 - 1.0);
    let _ = writeln!(out, r#"  <g class="matching">"#);
    let _ = writeln!(
        out,
        r#"    <line x1="{:.1}" y1="{base:.1}" x2="{:.1}" y2="{base:.1}" stroke="gray" stroke-dasharray="2,3"/>"#,
        pos(1) - 10.0,
        pos(x.n().max(1)) + 10.0
    );
    for &(i, j) in x.base().arcs() {
        let r = (pos(j) - pos(i)) / 2.0;
        let _ = writeln!(
            out,
            r#"    <path d="M {:.1} {base:.1} A {r:.1} {r:.1} 0 0 1 {:.1} {base:.1}" fill="none" stroke="black" stroke-width="2"/>"#,
            pos(i),
            pos(j)
        );
        if x.is_dotted((i, j)) {
            let _ = writeln!(out, r#"    <circle cx="{:.1}" cy="{:.1}" r="4" fill="black"/>"#, pos(i) + r, base - r);
        }
    }
    let top = base - ray_height(x);
    for &v in x.base().rays() {
        let _ = writeln!(
            out,
            r#"    <line x1="{0:.1}" y1="{base:.1}" x2="{0:.1}" y2="{top:.1}" stroke="black" stroke-width="2"/>"#,
            pos(v)
        );
        let _ = writeln!(out, r#"    <circle cx="{:.1}" cy="{:.1}" r="4" fill="black"/>"#, pos(v), (base + top) / 2.0);
    }
    for v in 1..=x.n() {
        let _ = writeln!(
            out,
            r#"    <text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{v}</text>"#,
            pos(v),
            base + 16.0
        );
    }
    let _ = writeln!(out, "  </g>");
    STEP * (x.n().max(1) as f64 - 1.0)
}

fn ray_height(x: &DottedMatching) -> f64 {
    let widest = x.base().arcs().iter().map(|&(i, j)| (j - i) as f64 * STEP / 2.0).fold(0.0, f64::max);
    widest + STEP / 2.0
}

/// Deterministic SVG; terms left to right with their coefficients.
pub fn svg_class(x: &HomClass) -> String {
    let tallest = x.terms().keys().map(ray_height).fold(STEP / 2.0, f64::max);
    let base = MARGIN + tallest;
    let mut body = String::new();
    let mut dx = MARGIN;
    for (i, (g, c)) in x.terms().iter().enumerate() {
        let prefix = coefficient_prefix(i, c);
        if !prefix.is_empty() {
            dx += 10.0;
            let _ = writeln!(
                body,
                r#"  <text x="{dx:.1}" y="{:.1}" font-size="16" text-anchor="middle">{}</text>"#,
                base - 4.0,
                prefix.trim()
            );
            dx += 10.0 + 8.0 * prefix.trim().chars().count() as f64;
        }
        dx += 10.0;
        let w = svg_term(g, dx, base, &mut body);
        dx += w + 20.0;
    }
    if x.is_zero() {
        let _ = writeln!(body, r#"  <text x="{MARGIN:.1}" y="{base:.1}" font-size="16">0</text>"#);
        dx += 20.0;
    }
    let width = dx + MARGIN;
    let height = base + 30.0;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n{body}</svg>\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(s: &str) -> HomClass {
        HomClass::parse(s).unwrap()
    }

    #[test]
    fn single_cap() {
        let s = ascii_class(&cls("2: u1-2"));
        assert_eq!(s, ".---.\n|   |\n1   2\n");
    }

    #[test]
    fn nested_and_rays() {
        let s = ascii_class(&cls("7: r1 u2-3 d4-7 u5-6"));
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines.last().unwrap().split_whitespace().count(), 7);
        assert_eq!(s.matches('*').count(), 2);
        let svg = svg_class(&cls("7: r1 u2-3 d4-7 u5-6"));
        assert_eq!(svg.matches("<path").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("stroke-width=\"2\"/>").count(), 4);
    }

    #[test]
    fn sums() {
        let x = cls("(4: u1-2 u3-4) - 2·(4: u1-4 u2-3)");
        let s = ascii_class(&x);
        assert!(s.lines().last().unwrap().contains("- 2·1"));
        let svg = svg_class(&x);
        assert_eq!(svg.matches(r#"class="matching""#).count(), 2);
        assert_eq!(svg, svg_class(&x));
    }
}
