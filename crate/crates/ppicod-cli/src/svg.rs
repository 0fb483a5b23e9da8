//! A small hand-rolled SVG scatter chart: mean greedy points per alpha,
//! optionally over the exact boundary staircase. Output is a pure function
//! of the inputs — no timestamps, no randomness — so plots are diffable.

pub struct Series {
    pub label: String,
    /// (satisfaction, length) pairs.
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 624.0;
const TOP: f64 = 48.0;
const BOTTOM: f64 = 420.0;

const PALETTE: [&str; 7] =
    ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#b07aa1", "#edc948"];

struct Range {
    min: f64,
    max: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Range {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values.filter(|v| v.is_finite()) {
            min = min.min(v);
            max = max.max(v);
        }
        if min > max {
            return Range { min: 0.0, max: 1.0 };
        }
        let pad = if max > min { (max - min) * 0.08 } else { 1.0 };
        Range { min: min - pad, max: max + pad }
    }

    fn span(&self) -> f64 {
        self.max - self.min
    }
}

/// Tick spacing: the smallest of 1/2/2.5/5/10 times a power of ten that
/// yields at most five intervals.
fn tick_step(range: &Range) -> f64 {
    let raw = range.span() / 4.0;
    let mag = 10f64.powf(raw.log10().floor());
    for mult in [1.0, 2.0, 2.5, 5.0, 10.0] {
        if raw <= mult * mag {
            return mult * mag;
        }
    }
    10.0 * mag
}

fn fmt_tick(v: f64, step: f64) -> String {
    let text = if step >= 1.0 && step.fract() == 0.0 {
        format!("{v:.0}")
    } else if step >= 0.1 {
        format!("{v:.1}")
    } else {
        format!("{v:.2}")
    };
    // avoid "-0"
    if text.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        text.trim_start_matches('-').to_string()
    } else {
        text
    }
}

fn fmt_coord(v: f64) -> String {
    let text = format!("{v:.2}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    text.to_string()
}

pub fn render_chart(series: &[Series], boundary: Option<&[(f64, f64)]>, title: &str) -> String {
    let xs = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0))
        .chain(boundary.into_iter().flatten().map(|p| p.0));
    let ys = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .chain(boundary.into_iter().flatten().map(|p| p.1));
    let x_range = Range::of(xs);
    let y_range = Range::of(ys);

    let x_pos = |v: f64| LEFT + (v - x_range.min) / x_range.span() * (RIGHT - LEFT);
    // length grows upward
    let y_pos = |v: f64| BOTTOM - (v - y_range.min) / y_range.span() * (BOTTOM - TOP);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH:.0} {HEIGHT:.0}\" \
         font-family=\"sans-serif\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH:.0}\" height=\"{HEIGHT:.0}\" fill=\"#ffffff\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" fill=\"#222\">{}</text>\n",
        (LEFT + RIGHT) / 2.0,
        escape(title)
    ));

    // grid and ticks
    let x_step = tick_step(&x_range);
    let mut t = (x_range.min / x_step).ceil() * x_step;
    while t <= x_range.max + 1e-9 {
        let x = x_pos(t);
        out.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{TOP:.1}\" x2=\"{x:.1}\" y2=\"{BOTTOM:.1}\" \
             stroke=\"#e5e5e5\" stroke-width=\"1\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"11\" \
             fill=\"#444\">{}</text>\n",
            BOTTOM + 18.0,
            fmt_tick(t, x_step)
        ));
        t += x_step;
    }
    let y_step = tick_step(&y_range);
    let mut t = (y_range.min / y_step).ceil() * y_step;
    while t <= y_range.max + 1e-9 {
        let y = y_pos(t);
        out.push_str(&format!(
            "<line x1=\"{LEFT:.1}\" y1=\"{y:.1}\" x2=\"{RIGHT:.1}\" y2=\"{y:.1}\" \
             stroke=\"#e5e5e5\" stroke-width=\"1\"/>\n"
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\" font-size=\"11\" \
             fill=\"#444\">{}</text>\n",
            LEFT - 8.0,
            y + 4.0,
            fmt_tick(t, y_step)
        ));
        t += y_step;
    }

    // axes
    out.push_str(&format!(
        "<line x1=\"{LEFT:.1}\" y1=\"{BOTTOM:.1}\" x2=\"{RIGHT:.1}\" y2=\"{BOTTOM:.1}\" \
         stroke=\"#333\" stroke-width=\"1.5\"/>\n"
    ));
    out.push_str(&format!(
        "<line x1=\"{LEFT:.1}\" y1=\"{TOP:.1}\" x2=\"{LEFT:.1}\" y2=\"{BOTTOM:.1}\" \
         stroke=\"#333\" stroke-width=\"1.5\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"13\" \
         fill=\"#222\">overall satisfaction s</text>\n",
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 42.0
    ));
    out.push_str(&format!(
        "<text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#222\" \
         transform=\"rotate(-90 18 {:.1})\">code length</text>\n",
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0
    ));

    // boundary staircase: vertical riser, then run to the next point
    if let Some(coords) = boundary {
        if !coords.is_empty() {
            let mut d = format!("M {:.1} {:.1}", x_pos(coords[0].0), y_pos(coords[0].1));
            for pair in coords.windows(2) {
                let (s1, _) = pair[0];
                let (s2, l2) = pair[1];
                d.push_str(&format!(" L {:.1} {:.1}", x_pos(s1), y_pos(l2)));
                d.push_str(&format!(" L {:.1} {:.1}", x_pos(s2), y_pos(l2)));
            }
            out.push_str(&format!(
                "<path d=\"{d}\" fill=\"none\" stroke=\"#555\" stroke-width=\"1.5\" \
                 stroke-dasharray=\"5 3\"/>\n"
            ));
            for (s, l) in coords {
                let (x, y) = (x_pos(*s), y_pos(*l));
                out.push_str(&format!(
                    "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"7\" height=\"7\" fill=\"#555\"/>\n",
                    x - 3.5,
                    y - 3.5
                ));
                out.push_str(&format!(
                    "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"#555\">ell {}, s {}</text>\n",
                    x + 7.0,
                    y - 7.0,
                    fmt_coord(*l),
                    fmt_coord(*s)
                ));
            }
        }
    }

    // series markers
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for (x, y) in &s.points {
            out.push_str(&format!(
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"4.5\" fill=\"{color}\" \
                 stroke=\"#ffffff\" stroke-width=\"1\"/>\n",
                x_pos(*x),
                y_pos(*y)
            ));
        }
    }

    // legend
    let rows = series.len() + usize::from(boundary.is_some());
    if rows > 0 {
        let lx = RIGHT - 150.0;
        let ly = TOP + 10.0;
        out.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"144\" height=\"{:.1}\" fill=\"#ffffff\" \
             fill-opacity=\"0.85\" stroke=\"#cccccc\"/>\n",
            lx - 6.0,
            ly - 12.0,
            rows as f64 * 17.0 + 8.0
        ));
        let mut row = 0usize;
        for (i, s) in series.iter().enumerate() {
            let y = ly + row as f64 * 17.0;
            out.push_str(&format!(
                "<circle cx=\"{lx:.1}\" cy=\"{:.1}\" r=\"4.5\" fill=\"{}\"/>\n",
                y - 4.0,
                PALETTE[i % PALETTE.len()]
            ));
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{y:.1}\" font-size=\"11\" fill=\"#222\">{}</text>\n",
                lx + 10.0,
                escape(&s.label)
            ));
            row += 1;
        }
        if boundary.is_some() {
            let y = ly + row as f64 * 17.0;
            out.push_str(&format!(
                "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"7\" height=\"7\" fill=\"#555\"/>\n",
                lx - 3.5,
                y - 7.5
            ));
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{y:.1}\" font-size=\"11\" fill=\"#222\">exact boundary</text>\n",
                lx + 10.0
            ));
        }
    }

    out.push_str("</svg>\n");
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_is_deterministic_and_well_formed() {
        let series = vec![
            Series { label: "alpha = 0".into(), points: vec![(24.5, 9.2)] },
            Series { label: "alpha = 1".into(), points: vec![(40.0, 3.4)] },
        ];
        let boundary = vec![(41.0, 2.0), (30.0, 3.0), (22.0, 5.0)];
        let a = render_chart(&series, Some(&boundary), "test chart");
        let b = render_chart(&series, Some(&boundary), "test chart");
        assert_eq!(a, b);
        assert!(a.starts_with("<svg "));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<circle").count(), 2 + 2); // markers + legend
        assert_eq!(a.matches("<rect").count(), 1 + 3 + 1 + 1); // bg, points, legend box+swatch
        assert!(a.contains("stroke-dasharray"));
        assert!(a.contains("exact boundary"));
    }

    #[test]
    fn chart_handles_empty_input() {
        let svg = render_chart(&[], None, "empty");
        assert!(svg.starts_with("<svg "));
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn ticks_cover_plain_ranges() {
        let r = Range { min: 0.0, max: 10.0 };
        let step = tick_step(&r);
        assert_eq!(step, 2.5);
        assert_eq!(fmt_tick(2.5, step), "2.5");
        assert_eq!(fmt_tick(0.0, 1.0), "0");
        let tiny = Range { min: 0.0, max: 0.3 };
        assert!(tick_step(&tiny) < 0.3);
    }
}
