//! SVG figures of the disk, the wall tessellation, lifts and triangles.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::Result;
use crate::kernel::{DiskPoint, Geodesic};
use crate::lifts::{verify_theorem1, LiftSet, TriangleSearch};
use crate::surface::SurfaceGroup;

pub const SIZE: f64 = 1000.0;
const CENTER: f64 = 500.0;
const SCALE: f64 = 480.0;

fn screen(z: (f64, f64)) -> (f64, f64) {
    (CENTER + SCALE * z.0, CENTER - SCALE * z.1)
}

fn num(x: f64) -> String {
    // avoid "-0.000"
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Path data for the geodesic arc from `a` to `b` passing through `mid`.
fn arc_path(g: &Geodesic, a: (f64, f64), b: (f64, f64), mid: (f64, f64)) -> String {
    let (a, b, m) = (screen(a), screen(b), screen(mid));
    match g.euclidean_circle() {
        None => format!("M {} {} L {} {}", num(a.0), num(a.1), num(b.0), num(b.1)),
        Some((_, r)) => {
            let cross = (b.0 - a.0) * (m.1 - a.1) - (b.1 - a.1) * (m.0 - a.0);
            let sweep = if cross < 0.0 { 1 } else { 0 };
            format!(
                "M {} {} A {} {} 0 0 {} {} {}",
                num(a.0),
                num(a.1),
                num(SCALE * r),
                num(SCALE * r),
                sweep,
                num(b.0),
                num(b.1)
            )
        }
    }
}

fn complete_path(g: &Geodesic) -> String {
    let (e1, e2) = g.endpoints();
    let (a, b) = (e1.to_complex(), e2.to_complex());
    let m = g.point_at(0.0);
    arc_path(g, (a.re, a.im), (b.re, b.im), (m.re, m.im))
}

fn segment_path(g: &Geodesic, p: DiskPoint, q: DiskPoint) -> String {
    let t = 0.5 * (g.param_of(p) + g.param_of(q));
    let m = g.point_at(t);
    arc_path(g, (p.re, p.im), (q.re, q.im), (m.re, m.im))
}

/// A 1000×1000 figure: unit circle, wall translates of cells up to
/// `wall_radius`, every lift, and every triangle with its vertices.
pub fn render_svg(
    group: &SurfaceGroup,
    set: &LiftSet,
    search: &TriangleSearch,
    wall_radius: usize,
) -> Result<String> {
    let mut out = String::new();
    let w = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    w(&mut out, format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
        SIZE
    ));
    w(&mut out, "<style>.wall{fill:none;stroke:#bbbbbb;stroke-width:0.6}\
.lift{fill:none;stroke:#3060a0;stroke-width:1.2}\
.side{fill:none;stroke:#d02020;stroke-width:2.4}\
.vertex{fill:#d02020}\
text{font-family:monospace;font-size:16px}</style>".into());
    w(&mut out, format!(
        "<circle class=\"disk\" cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
        c = num(CENTER),
        r = num(SCALE)
    ));

    w(&mut out, "<g id=\"walls\">".into());
    let mut seen = BTreeSet::new();
    for (_, _, g) in group.wall_translates(wall_radius)? {
        let d = complete_path(&g);
        // a wall shared by two cells is listed from both
        if seen.insert(d.clone()) {
            w(&mut out, format!("<path class=\"wall\" d=\"{d}\"/>"));
        }
    }
    w(&mut out, "</g>".into());

    w(&mut out, "<g id=\"lifts\">".into());
    for lift in &set.lifts {
        w(&mut out, format!(
            "<path class=\"lift\" data-rep=\"{}\" d=\"{}\"/>",
            lift.rep,
            complete_path(&lift.geodesic)
        ));
    }
    w(&mut out, "</g>".into());

    w(&mut out, "<g id=\"triangles\">".into());
    let mut min_margin = f64::INFINITY;
    for t in &search.triangles {
        let v = t.vertices;
        min_margin = min_margin.min(verify_theorem1(t, set.ell_gamma).min_margin);
        // side k joins the two vertices other than k
        for (k, (i, j)) in [(1, 2), (0, 2), (0, 1)].into_iter().enumerate() {
            w(&mut out, format!(
                "<path class=\"side\" d=\"{}\"/>",
                segment_path(&t.sides[k], v[i], v[j])
            ));
        }
        for p in v {
            let (x, y) = screen((p.re, p.im));
            w(&mut out, format!("<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"3\"/>", num(x), num(y)));
        }
    }
    w(&mut out, "</g>".into());

    let mut legend = vec![
        format!("surface {}", group.name()),
        format!("gamma {}  (core {})", set.gamma, set.core),
        format!("length {:.6}", set.ell_gamma),
        format!("lifts {}  triangles {}", set.lifts.len(), search.triangles.len()),
    ];
    if !search.triangles.is_empty() {
        legend.push(format!("min margin {min_margin:.6}"));
    }
    w(&mut out, "<g id=\"legend\">".into());
    for (i, line) in legend.iter().enumerate() {
        let mut esc = String::new();
        for ch in line.chars() {
            match ch {
                '<' => esc.push_str("&lt;"),
                '>' => esc.push_str("&gt;"),
                '&' => esc.push_str("&amp;"),
                c => esc.push(c),
            }
        }
        let _ = write!(out, "<text x=\"12\" y=\"{}\">{esc}</text>\n", 24 + 20 * i);
    }
    w(&mut out, "</g>".into());
    w(&mut out, "</svg>".into());
    Ok(out)
}
