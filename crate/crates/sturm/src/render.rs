//! Deterministic text renderers: meander pictures as SVG, complex skeletons
//! as DOT graphs.

use crate::complex::{CellComplex2, TemplateData};
use crate::meander::{build_meander, morse_values_axis};
use crate::perm::Permutation;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelMode {
    Labels,
    Morse,
    Both,
}

#[derive(Clone, Copy, Debug)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub labels: LabelMode,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800,
            height: 400,
            labels: LabelMode::Both,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderError(pub String);

impl std::fmt::Display for RenderError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "render: {}", self.0)
    }
}

impl std::error::Error for RenderError {}

fn fmt_coord(x: f64) -> String {
    let s = format!("{:.2}", x);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Renders the arc diagram of a permutation: crossings evenly spaced on a
/// horizontal axis, semicircular arcs above and below, Morse annotations.
/// Interleaving arc pairs of non-meanders are highlighted.
///
/// Output is byte-identical across runs for fixed options.
pub fn render_meander_svg(p: &Permutation, opts: &RenderOptions) -> Result<String, RenderError> {
    if opts.width < 60 || opts.height < 60 {
        return Err(RenderError(format!(
            "degenerate canvas {}x{}",
            opts.width, opts.height
        )));
    }
    let n = p.size();
    let d = build_meander(p);
    let crossing = d.crossing_witness();
    let morse = morse_values_axis(p);
    let (w, h) = (opts.width as f64, opts.height as f64);
    let margin = 30.0;
    let axis_y = h / 2.0;
    let step = if n > 1 { (w - 2.0 * margin) / (n as f64 - 1.0) } else { 0.0 };
    let x_of = |slot: usize| margin + step * (slot as f64 - 1.0);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(
        svg,
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888\" stroke-width=\"1\"/>",
        fmt_coord(margin - 10.0),
        fmt_coord(axis_y),
        fmt_coord(w - margin + 10.0),
        fmt_coord(axis_y)
    );

    let involved = |arc: (usize, usize)| -> bool {
        match crossing {
            Some((a, b)) => arc == a || arc == b,
            None => false,
        }
    };
    let draw_arcs = |arcs: &[(usize, usize)], upper: bool, svg: &mut String| {
        for &(a, b) in arcs {
            let (xa, xb) = (x_of(a), x_of(b));
            let r = (xb - xa) / 2.0;
            let sweep = if upper { 1 } else { 0 };
            let color = if involved((a, b)) { "#cc2222" } else { "#222" };
            let _ = writeln!(
                svg,
                "  <path d=\"M {} {} A {} {} 0 0 {} {} {}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>",
                fmt_coord(xa),
                fmt_coord(axis_y),
                fmt_coord(r),
                fmt_coord(r),
                sweep,
                fmt_coord(xb),
                fmt_coord(axis_y),
                color
            );
        }
    };
    draw_arcs(&d.upper_arcs, true, &mut svg);
    draw_arcs(&d.lower_arcs, false, &mut svg);

    for slot in 1..=n {
        let x = x_of(slot);
        let label = p.apply(slot);
        let _ = writeln!(
            svg,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"#222\"/>",
            fmt_coord(x),
            fmt_coord(axis_y)
        );
        let show_label = matches!(opts.labels, LabelMode::Labels | LabelMode::Both);
        let show_morse = matches!(opts.labels, LabelMode::Morse | LabelMode::Both);
        if show_label {
            let _ = writeln!(
                svg,
                "  <text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\" fill=\"#222\">{}</text>",
                fmt_coord(x),
                fmt_coord(axis_y + 16.0),
                label
            );
        }
        if show_morse {
            let _ = writeln!(
                svg,
                "  <text x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\" fill=\"#2255aa\">i={}</text>",
                fmt_coord(x),
                fmt_coord(axis_y + 28.0),
                morse[label - 1]
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Directed 1-skeleton in DOT syntax, with pole, meridian and hemisphere
/// styling when a template decoration is supplied. Node order follows the
/// complex, so output is deterministic.
pub fn render_complex_dot(c: &CellComplex2, template: Option<&TemplateData>) -> String {
    let mut dot = String::new();
    dot.push_str("digraph skeleton {\n");
    dot.push_str("  rankdir=TB;\n  node [shape=circle, fontsize=10];\n");
    for (v, id) in c.vertex_ids.iter().enumerate() {
        let mut attrs = String::new();
        if let Some(t) = template {
            if v == t.north {
                attrs = ", style=filled, fillcolor=\"#cce5ff\", xlabel=\"N\"".into();
            } else if v == t.south {
                attrs = ", style=filled, fillcolor=\"#ffd9cc\", xlabel=\"S\"".into();
            }
        }
        let _ = writeln!(dot, "  \"{}\" [label=\"{}\"{}];", id, id, attrs);
    }
    for (e, edge) in c.edges.iter().enumerate() {
        let mut attrs = String::from("");
        if let Some(t) = template {
            if t.meridian_we.contains(&e) {
                attrs = " [color=\"#007700\", penwidth=2, label=\"WE\"]".into();
            } else if t.meridian_ew.contains(&e) {
                attrs = " [color=\"#007700\", penwidth=2, label=\"EW\"]".into();
            } else if let Some(l) = c.left_face(e) {
                if t.west.contains(&l) {
                    attrs = " [color=\"#555599\"]".into();
                } else {
                    attrs = " [color=\"#995555\"]".into();
                }
            }
        }
        let _ = writeln!(
            dot,
            "  \"{}\" -> \"{}\"{};",
            c.vertex_ids[edge.tail], c.vertex_ids[edge.head], attrs
        );
    }
    dot.push_str("}\n");
    dot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{parallel_sphere, PathSpec};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn svg_is_deterministic() {
        let q = p("1 8 3 4 7 6 5 2 9");
        let a = render_meander_svg(&q, &RenderOptions::default()).unwrap();
        let b = render_meander_svg(&q, &RenderOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<path").count(), 8); // 4 upper + 4 lower arcs
        assert!(a.contains("i=3"));
    }

    #[test]
    fn svg_of_the_interval() {
        let a = render_meander_svg(&p("1 2 3"), &RenderOptions::default()).unwrap();
        assert_eq!(a.matches("<path").count(), 2);
        assert_eq!(a.matches("<circle").count(), 3);
    }

    #[test]
    fn non_meander_arcs_are_highlighted() {
        let a = render_meander_svg(&p("1 2 4 3 5"), &RenderOptions::default()).unwrap();
        assert_eq!(a.matches("#cc2222").count(), 2);
    }

    #[test]
    fn degenerate_canvas_is_rejected() {
        let opts = RenderOptions {
            width: 10,
            height: 10,
            labels: LabelMode::Both,
        };
        assert!(render_meander_svg(&p("1 2 3"), &opts).is_err());
    }

    #[test]
    fn dot_output_shape() {
        let t = parallel_sphere(
            &[PathSpec::plain(1), PathSpec::plain(1), PathSpec::plain(1)],
            1,
        )
        .unwrap();
        let dot = render_complex_dot(&t.complex, Some(&t.data));
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("label=\"WE\""));
        assert!(dot.contains("label=\"EW\""));
        // both poles marked
        assert_eq!(dot.matches("xlabel=").count(), 2);
    }
}
