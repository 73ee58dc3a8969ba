//! Self-contained SVG line charts for sweep results.

use std::fmt::Write as _;

use crate::decomposition::Configuration;
use crate::sweep::{Objective, SweepReport};

const PALETTE: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];

/// One chart for `configuration`: objective against stand-off, one series per
/// material offset. Infeasible cells leave gaps in their series.
pub fn sweep_chart(report: &SweepReport, configuration: Configuration, objective: Objective) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const LEFT: f64 = 70.0;
    const RIGHT: f64 = 150.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 50.0;

    let rows: Vec<_> = report
        .rows
        .iter()
        .filter(|r| r.scenario.configuration == configuration)
        .collect();
    let mut offsets: Vec<f64> = rows.iter().map(|r| r.scenario.material_offset).collect();
    offsets.sort_by(f64::total_cmp);
    offsets.dedup();
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.objective(objective).map(|v| (r.scenario.stand_off, v)))
        .collect();

    let (xmin, xmax) = bounds(points.iter().map(|p| p.0));
    let (ymin, ymax) = bounds(points.iter().map(|p| p.1));
    let pad = (ymax - ymin).max(1e-9) * 0.05;
    let (ymin, ymax) = (ymin - pad, ymax + pad);
    let sx = |x: f64| LEFT + (x - xmin) / (xmax - xmin).max(1e-12) * (W - LEFT - RIGHT);
    let sy = |y: f64| H - BOTTOM - (y - ymin) / (ymax - ymin).max(1e-12) * (H - TOP - BOTTOM);

    let label = match objective {
        Objective::Makespan => "makespan [s]",
        Objective::Sum => "total robot time [s]",
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{configuration}</text>"#, W / 2.0);
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{b:.2}" x2="{r:.2}" y2="{b:.2}" stroke="black"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b:.2}" stroke="black"/>"#,
        b = H - BOTTOM,
        r = W - RIGHT
    );
    for i in 0..=4 {
        let y = ymin + (ymax - ymin) * i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y:.2}</text>"#,
            LEFT - 6.0,
            sy(y) + 4.0
        );
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    for x in &xs {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x:.2}</text>"#,
            sx(*x),
            H - BOTTOM + 18.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">stand-off [m]</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 10.0
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{label}</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0
    );

    for (i, offset) in offsets.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut series: Vec<(f64, Option<f64>)> = rows
            .iter()
            .filter(|r| r.scenario.material_offset == *offset)
            .map(|r| (r.scenario.stand_off, r.objective(objective)))
            .collect();
        series.sort_by(|a, b| a.0.total_cmp(&b.0));
        for run in series.split(|(_, v)| v.is_none()).filter(|s| !s.is_empty()) {
            let pts: Vec<String> = run
                .iter()
                .map(|(x, v)| format!("{:.2},{:.2}", sx(*x), sy(v.unwrap_or_default())))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                pts.join(" ")
            );
            for (x, v) in run {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                    sx(*x),
                    sy(v.unwrap_or_default())
                );
            }
        }
        let ly = TOP + 20.0 * i as f64;
        let lx = W - RIGHT + 15.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">x = {offset:.2} m</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{Outcome, Scenario, SweepRow};

    #[test]
    fn chart_has_one_series_per_offset() {
        let row = |o: f64, s: f64, v: Option<f64>| SweepRow {
            scenario: Scenario { configuration: Configuration::ReadySide, material_offset: o, stand_off: s },
            outcome: match v {
                Some(v) => Outcome::Feasible { makespan: v, t_total_sum: v, per_robot: vec![] },
                None => Outcome::Infeasible("x".into()),
            },
        };
        let report = SweepReport {
            rows: vec![
                row(0.3, 0.2, Some(5.0)), row(0.3, 0.3, Some(4.0)),
                row(0.4, 0.2, Some(6.0)), row(0.4, 0.3, None),
            ],
        };
        let svg = sweep_chart(&report, Configuration::ReadySide, Objective::Makespan);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("x = 0.40 m"));
    }
}
