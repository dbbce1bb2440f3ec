use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Edge, TileId, Tiling};
use crate::sets;
use crate::words::Pair;
use crate::{Error, Result};

const SCALE: f64 = 80.0;
const MARGIN: f64 = 30.0;
const PALETTE: [&str; 4] = ["#f4a6a6", "#a6c8f4", "#b8e6a6", "#f4dba6"];

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Decorations {
    /// Tile sets to fill, one colour per set.
    #[serde(default)]
    pub highlight: Vec<Vec<Pair>>,
    /// Tile paths drawn as polylines through tile centres.
    #[serde(default)]
    pub crossings: Vec<Vec<Pair>>,
    #[serde(default)]
    pub edge_labels: bool,
    #[serde(default)]
    pub vertex_labels: bool,
}

fn num(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

pub fn render_svg(tiling: &Tiling, deco: &Decorations) -> Result<String> {
    let resolve = |pairs: &[Pair]| -> Result<Vec<TileId>> {
        pairs.iter().map(|&p| tiling.checked_id(p)).collect()
    };
    let highlights: Vec<Vec<TileId>> = deco.highlight.iter().map(|h| resolve(h)).collect::<Result<_>>()?;
    let crossings: Vec<Vec<TileId>> = deco.crossings.iter().map(|c| resolve(c)).collect::<Result<_>>()?;
    for path in &crossings {
        for w in path.windows(2) {
            if tiling.shared_edge(w[0], w[1]).is_none() {
                let (a, b) = (tiling.tile(w[0]).pair(), tiling.tile(w[1]).pair());
                return Err(Error::UnknownReference(format!(
                    "tiles [{},{}] and [{},{}] are not adjacent",
                    a.0, a.1, b.0, b.1
                )));
            }
        }
    }

    let vertices = tiling.vertices();
    let pts: Vec<(f64, f64)> = vertices.iter().map(|&v| tiling.point(v)).collect();
    let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let width = (max_x - min_x) * SCALE + 2.0 * MARGIN;
    let height = max_y * SCALE + 2.0 * MARGIN;
    let map = |(x, y): (f64, f64)| ((x - min_x) * SCALE + MARGIN, (max_y - y) * SCALE + MARGIN);
    let at = |v| map(tiling.point(v));

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    );
    for &id in tiling.order() {
        let tile = tiling.tile(id);
        let fill = highlights
            .iter()
            .position(|h| h.contains(&id))
            .map(|k| PALETTE[k % PALETTE.len()])
            .unwrap_or("none");
        let points: Vec<String> = tile
            .vertices()
            .iter()
            .map(|&v| {
                let (x, y) = at(v);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            out,
            r#"  <polygon data-tile="{},{}" points="{}" fill="{}" stroke="black" stroke-width="1"/>"#,
            tile.s,
            tile.t,
            points.join(" "),
            fill
        );
    }
    if deco.edge_labels {
        for k in 1..=2 * tiling.n() {
            let e = tiling.boundary_edge(k);
            let (x, y) = midpoint(e, &at);
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
                num(x),
                num(y),
                e.label
            );
        }
    }
    if deco.vertex_labels {
        for &v in &vertices {
            let (x, y) = at(v);
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="9" fill="gray">{{{}}}</text>"#,
                num(x + 3.0),
                num(y - 3.0),
                sets::format(v)
            );
        }
    }
    for path in &crossings {
        let mut points = Vec::new();
        for (j, &id) in path.iter().enumerate() {
            if j > 0 {
                let e = tiling.shared_edge(path[j - 1], id).expect("checked above");
                points.push(midpoint(e, &at));
            }
            let tile = tiling.tile(id);
            points.push(at_center(tiling, tile.bottom(), tile.top(), &map));
        }
        let text: Vec<String> = points.iter().map(|(x, y)| format!("{},{}", num(*x), num(*y))).collect();
        let _ = writeln!(
            out,
            r#"  <polyline points="{}" fill="none" stroke="red" stroke-width="2"/>"#,
            text.join(" ")
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn midpoint(e: Edge, at: &impl Fn(u32) -> (f64, f64)) -> (f64, f64) {
    let (a, b) = (at(e.low), at(e.high()));
    ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

fn at_center(
    tiling: &Tiling,
    bottom: u32,
    top: u32,
    map: &impl Fn((f64, f64)) -> (f64, f64),
) -> (f64, f64) {
    let (a, b) = (tiling.point(bottom), tiling.point(top));
    map(((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0))
}
