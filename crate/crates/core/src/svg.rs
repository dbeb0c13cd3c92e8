//! Minimal deterministic SVG plots: lines, markers and category-coloured
//! stems on linear or log-log axes. Output bytes depend only on the input.

use std::fmt::Write as _;
use std::path::Path;

use crate::dde::DdeSolution;
use crate::error::{Error, Result};
use crate::lattice::LatticeSignal;
use crate::maximal::LengthProfile;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Line,
    Markers,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub style: Style,
}

/// Vertical stems from 0, coloured by an integer category.
#[derive(Debug, Clone, PartialEq)]
pub struct Stems {
    pub points: Vec<(f64, f64)>,
    pub categories: Vec<usize>,
    /// Legend text per category, `{}` replaced by the category.
    pub legend: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_log: bool,
    pub series: Vec<Series>,
    pub stems: Option<Stems>,
    pub width: f64,
    pub height: f64,
}

impl Figure {
    pub fn new(title: impl Into<String>, x_label: impl Into<String>, y_label: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            log_log: false,
            series: Vec::new(),
            stems: None,
            width: 720.0,
            height: 420.0,
        }
    }

    pub fn with_series(mut self, label: impl Into<String>, points: Vec<(f64, f64)>, style: Style) -> Self {
        self.series.push(Series {
            label: label.into(),
            points,
            style,
        });
        self
    }

    pub fn with_stems(mut self, points: Vec<(f64, f64)>, categories: Vec<usize>, legend: impl Into<String>) -> Self {
        self.stems = Some(Stems {
            points,
            categories,
            legend: legend.into(),
        });
        self
    }

    pub fn log_log(mut self) -> Self {
        self.log_log = true;
        self
    }

    fn all_points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .chain(self.stems.iter().flat_map(|s| s.points.iter().copied()))
    }

    fn is_empty(&self) -> bool {
        self.all_points().next().is_none()
    }

    /// Renders the standalone SVG document.
    pub fn render(&self) -> Result<String> {
        if self.is_empty() {
            return Err(Error::InvalidParameter("nothing to plot".into()));
        }
        let tx = |v: f64| if self.log_log { v.log10() } else { v };
        let pts: Vec<(f64, f64)> = self
            .all_points()
            .filter(|p| !self.log_log || (p.0 > 0.0 && p.1 > 0.0))
            .map(|(x, y)| (tx(x), tx(y)))
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .collect();
        if pts.is_empty() {
            return Err(Error::InvalidParameter("no plottable points".into()));
        }
        let (mut x0, mut x1, mut y0, mut y1) = pts.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY),
            |(a, b, c, d), p| (a.min(p.0), b.max(p.0), c.min(p.1), d.max(p.1)),
        );
        if self.stems.is_some() && !self.log_log {
            y0 = y0.min(0.0);
            y1 = y1.max(0.0);
        }
        if x1 - x0 < 1e-12 {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if y1 - y0 < 1e-12 {
            y0 -= 0.5;
            y1 += 0.5;
        }
        let pad = 0.05 * (y1 - y0);
        y0 -= pad;
        y1 += pad;

        let (w, h) = (self.width, self.height);
        let (left, right, top, bottom) = (64.0, 150.0, 36.0, 48.0);
        let pw = w - left - right;
        let ph = h - top - bottom;
        let sx = |x: f64| left + (tx(x) - x0) / (x1 - x0) * pw;
        let sy = |y: f64| top + (y1 - tx(y)) / (y1 - y0) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="22" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
            left + pw / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{left}" y="{top}" width="{pw:.1}" height="{ph:.1}" fill="none" stroke="black"/>"#
        );
        for i in 0..=4 {
            let fx = x0 + (x1 - x0) * i as f64 / 4.0;
            let fy = y0 + (y1 - y0) * i as f64 / 4.0;
            let px = left + pw * i as f64 / 4.0;
            let py = top + ph - ph * i as f64 / 4.0;
            let lab = |v: f64| if self.log_log { format!("1e{v:.2}") } else { tick(v) };
            let _ = writeln!(
                s,
                r#"<text x="{px:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
                top + ph + 16.0,
                lab(fx)
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
                left - 6.0,
                py + 4.0,
                lab(fy)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            left + pw / 2.0,
            h - 10.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="14" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 14 {:.1})">{}</text>"#,
            top + ph / 2.0,
            top + ph / 2.0,
            escape(&self.y_label)
        );

        let mut legend: Vec<(String, &str)> = Vec::new();
        if let Some(st) = &self.stems {
            if !self.log_log && y0 < 0.0 && y1 > 0.0 {
                let _ = writeln!(
                    s,
                    r##"<line x1="{left}" y1="{:.2}" x2="{:.1}" y2="{:.2}" stroke="#999" stroke-width="0.8"/>"##,
                    sy(0.0),
                    left + pw,
                    sy(0.0)
                );
            }
            let mut cats: Vec<usize> = st.categories.clone();
            cats.sort_unstable();
            cats.dedup();
            let color = |c: usize| PALETTE[cats.iter().position(|&k| k == c).unwrap_or(0) % PALETTE.len()];
            for (&(x, y), &c) in st.points.iter().zip(&st.categories) {
                let col = color(c);
                let _ = writeln!(
                    s,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{col}" stroke-width="1.5"/>"#,
                    sx(x),
                    sy(0.0),
                    sx(x),
                    sy(y)
                );
                let _ = writeln!(
                    s,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{col}"/>"#,
                    sx(x),
                    sy(y)
                );
            }
            for &c in &cats {
                legend.push((st.legend.replace("{}", &c.to_string()), color(c)));
            }
        }
        for (i, ser) in self.series.iter().enumerate() {
            let col = PALETTE[i % PALETTE.len()];
            let visible: Vec<(f64, f64)> = ser
                .points
                .iter()
                .copied()
                .filter(|p| !self.log_log || (p.0 > 0.0 && p.1 > 0.0))
                .collect();
            match ser.style {
                Style::Line => {
                    let mut d = String::new();
                    for (j, &(x, y)) in visible.iter().enumerate() {
                        let _ = write!(d, "{}{:.2},{:.2}", if j == 0 { "M" } else { " L" }, sx(x), sy(y));
                    }
                    let _ = writeln!(
                        s,
                        r#"<path d="{d}" fill="none" stroke="{col}" stroke-width="1.5"/>"#
                    );
                }
                Style::Markers => {
                    for &(x, y) in &visible {
                        let _ = writeln!(
                            s,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{col}"/>"#,
                            sx(x),
                            sy(y)
                        );
                    }
                }
            }
            legend.push((ser.label.clone(), col));
        }
        for (i, (text, col)) in legend.iter().enumerate() {
            let ly = top + 14.0 + 18.0 * i as f64;
            let lx = left + pw + 14.0;
            let _ = writeln!(
                s,
                r#"<rect x="{lx:.1}" y="{:.1}" width="12" height="12" fill="{col}"/>"#,
                ly - 10.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{ly:.1}" font-family="sans-serif" font-size="12">{}</text>"#,
                lx + 18.0,
                escape(text)
            );
        }
        s.push_str("</svg>\n");
        Ok(s)
    }
}

fn tick(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e4).contains(&a) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders and writes `fig`; nothing is written if rendering fails.
pub fn emit_svg(fig: &Figure, path: &Path) -> Result<()> {
    let text = fig.render()?;
    std::fs::write(path, text)?;
    Ok(())
}

/// `r_f(x)` as markers.
pub fn length_profile_figure(p: &LengthProfile) -> Figure {
    let pts = p.x_samples.iter().copied().zip(p.r_values.iter().copied()).collect();
    Figure::new("length function", "x", "r_f(x)").with_series("r_f", pts, Style::Markers)
}

/// Stem plot of one period, stems coloured by the discrete length function.
pub fn lattice_figure(f: &LatticeSignal, profile: &[(usize, usize)]) -> Figure {
    let pts = f
        .values()
        .iter()
        .enumerate()
        .map(|(n, &v)| (n as f64, v))
        .collect();
    let cats = profile.iter().map(|p| p.1).collect();
    Figure::new("periodic signal", "n", "f(n)").with_stems(pts, cats, "r_f = {}")
}

/// Value and derivative traces of a delay-equation solution.
pub fn dde_figure(sol: &DdeSolution) -> Figure {
    let vals = (0..sol.len()).map(|i| (sol.t(i), sol.values()[i])).collect();
    let ders = (0..sol.len()).map(|i| (sol.t(i), sol.derivs()[i])).collect();
    Figure::new("delay equation solution", "t", "value")
        .with_series("f", vals, Style::Line)
        .with_series("f'", ders, Style::Line)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_an_error() {
        let fig = Figure::new("t", "x", "y");
        assert!(fig.render().is_err());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.svg");
        assert!(emit_svg(&fig, &path).is_err());
        assert!(!path.exists());
    }

    #[test]
    fn two_markers() {
        let fig = Figure::new("t", "x", "y").with_series("s", vec![(0.0, 1.0), (1.0, 2.0)], Style::Markers);
        let svg = fig.render().unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg, fig.render().unwrap());
    }

    #[test]
    fn log_log_drops_nonpositive() {
        let fig = Figure::new("t", "x", "y")
            .with_series("s", vec![(1.0, 1.0), (10.0, 0.1), (0.0, 5.0)], Style::Markers)
            .log_log();
        assert_eq!(fig.render().unwrap().matches("<circle").count(), 2);
    }

    #[test]
    fn stems_get_legend_per_category() {
        let fig = Figure::new("t", "n", "f").with_stems(
            vec![(0.0, 1.0), (1.0, -1.0), (2.0, 0.5)],
            vec![0, 2, 0],
            "r_f = {}",
        );
        let svg = fig.render().unwrap();
        assert!(svg.contains("r_f = 0") && svg.contains("r_f = 2"));
        assert_eq!(svg.matches("<circle").count(), 3);
    }

    #[test]
    fn escapes_text() {
        assert_eq!(escape("a<b & c"), "a&lt;b &amp; c");
    }
}
