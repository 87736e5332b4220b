//! Self-contained SVG heatmaps. Every cell carries its exact value in
//! `data-*` attributes so the figure can be parsed back.

use std::fmt::Write;

use regex::Regex;

use crate::error::{Error, Result};

const CELL: f64 = 12.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_TOP: f64 = 40.0;
const LEGEND_WIDTH: f64 = 110.0;

/// Linear ramp from pale yellow (min) to dark blue (max).
fn color(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(255.0, 8.0),
        lerp(247.0, 48.0),
        lerp(188.0, 107.0)
    )
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Heatmap of `values` (row-major over q then ϑ) with q increasing upwards.
pub fn heatmap_svg(
    title: &str,
    grid_q: usize,
    grid_theta: usize,
    qs: &[f64],
    thetas: &[f64],
    values: &[f64],
) -> String {
    assert_eq!(values.len(), grid_q * grid_theta);
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let plot_w = CELL * grid_theta as f64;
    let plot_h = CELL * grid_q as f64;
    let width = MARGIN_LEFT + plot_w + LEGEND_WIDTH;
    let height = MARGIN_TOP + plot_h + 50.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN_LEFT}" y="20" font-size="13">{}</text>"#,
        escape(title)
    );
    let _ = writeln!(s, r#"<g data-grid-q="{grid_q}" data-grid-theta="{grid_theta}">"#);
    for i in 0..grid_q {
        for j in 0..grid_theta {
            let v = values[i * grid_theta + j];
            let x = MARGIN_LEFT + CELL * j as f64;
            let y = MARGIN_TOP + CELL * (grid_q - 1 - i) as f64;
            let _ = writeln!(
                s,
                r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}" data-i="{i}" data-j="{j}" data-q="{}" data-theta="{}" data-value="{v}"/>"#,
                color((v - lo) / span),
                qs[i],
                thetas[j],
            );
        }
    }
    let _ = writeln!(s, "</g>");

    let bottom = MARGIN_TOP + plot_h;
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">ϑ from 0 to 2π</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        bottom + 30.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">q = 1</text>"#,
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + 10.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{bottom}" text-anchor="end">q = 0</text>"#,
        MARGIN_LEFT - 6.0
    );

    let lx = MARGIN_LEFT + plot_w + 20.0;
    let _ = writeln!(
        s,
        r#"<defs><linearGradient id="ramp" x1="0" y1="1" x2="0" y2="0"><stop offset="0" stop-color="{}"/><stop offset="1" stop-color="{}"/></linearGradient></defs>"#,
        color(0.0),
        color(1.0)
    );
    let _ = writeln!(
        s,
        r#"<g class="legend" data-min="{lo}" data-max="{hi}"><rect x="{lx}" y="{MARGIN_TOP}" width="16" height="{plot_h}" fill="url(#ramp)"/><text x="{}" y="{}">max {hi:.6}</text><text x="{}" y="{bottom}">min {lo:.6}</text></g>"#,
        lx + 22.0,
        MARGIN_TOP + 10.0,
        lx + 22.0,
    );
    s.push_str("</svg>\n");
    s
}

/// `(i, j, value)` for every cell of a heatmap produced by [`heatmap_svg`].
pub fn parse_heatmap(svg: &str) -> Result<Vec<(usize, usize, f64)>> {
    let re = Regex::new(r#"data-i="(\d+)" data-j="(\d+)"[^>]*data-value="([^"]+)""#).expect("valid pattern");
    re.captures_iter(svg)
        .map(|cap| {
            let bad = |what: &str| Error::Parse(format!("heatmap cell with bad {what}: {}", &cap[0]));
            Ok((
                cap[1].parse().map_err(|_| bad("row"))?,
                cap[2].parse().map_err(|_| bad("column"))?,
                cap[3].parse().map_err(|_| bad("value"))?,
            ))
        })
        .collect()
}

/// Legend `(min, max)` of a heatmap.
pub fn parse_legend(svg: &str) -> Result<(f64, f64)> {
    let re = Regex::new(r#"data-min="([^"]+)" data-max="([^"]+)""#).expect("valid pattern");
    let cap = re
        .captures(svg)
        .ok_or_else(|| Error::Parse("heatmap has no legend".into()))?;
    let num = |k: usize| {
        cap[k]
            .parse::<f64>()
            .map_err(|_| Error::Parse("bad legend value".into()))
    };
    Ok((num(1)?, num(2)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_survive_the_round_trip() {
        let values = [0.0, 1.0 / 3.0, 0.171572875253809, 2e-17, 0.5, 0.25];
        let svg = heatmap_svg("t", 2, 3, &[0.0, 1.0], &[0.0, 1.0, 2.0], &values);
        let cells = parse_heatmap(&svg).unwrap();
        assert_eq!(cells.len(), 6);
        for (i, j, v) in cells {
            assert_eq!(v, values[i * 3 + j]);
        }
        assert_eq!(parse_legend(&svg).unwrap(), (0.0, 0.5));
        assert!(!svg.contains("href"));
    }
}
