//! Static SVG figures: β heatmap over (θ_C, θ_D) and the dip-minimum line.

use std::fmt::Write;

use bunching_core::hom::DipPoint;
use bunching_core::sweep::SweepResult;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 70.0;
const TOP: f64 = 40.0;
const PLOT: f64 = 440.0;

const DEGENERATE_FILL: &str = "#bdbdbd";

// viridis, sampled at five stops
const STOPS: [(f64, [u8; 3]); 5] = [
    (0.00, [68, 1, 84]),
    (0.25, [59, 82, 139]),
    (0.50, [33, 145, 140]),
    (0.75, [94, 201, 98]),
    (1.00, [253, 231, 37]),
];

fn color(x: f64) -> String {
    let x = x.clamp(0.0, 1.0);
    let i = STOPS
        .iter()
        .rposition(|(s, _)| *s <= x)
        .unwrap_or(0)
        .min(STOPS.len() - 2);
    let ((s0, c0), (s1, c1)) = (STOPS[i], STOPS[i + 1]);
    let f = (x - s0) / (s1 - s0);
    let mix = |a: u8, b: u8| (a as f64 + f * (b as f64 - a as f64)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(c0[0], c1[0]),
        mix(c0[1], c1[1]),
        mix(c0[2], c1[2])
    )
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{title}</text>"#,
        LEFT + PLOT / 2.0
    );
}

fn axes(out: &mut String, x_label: &str, y_label: &str, x_ticks: &[(f64, String)], y_ticks: &[(f64, String)]) {
    let (x0, y0) = (LEFT, TOP + PLOT);
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{PLOT}" height="{PLOT}" fill="none" stroke="black"/>"#
    );
    for (f, label) in x_ticks {
        let x = x0 + f * PLOT;
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            y0 + 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{label}</text>"#,
            y0 + 20.0
        );
    }
    for (f, label) in y_ticks {
        let y = y0 - f * PLOT;
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{label}</text>"#,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#,
        LEFT + PLOT / 2.0,
        y0 + 42.0
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{y_label}</text>"#,
        TOP + PLOT / 2.0,
        TOP + PLOT / 2.0
    );
}

fn angle_ticks() -> Vec<(f64, String)> {
    vec![
        (0.0, "0".into()),
        (0.25, "π/8".into()),
        (0.5, "π/4".into()),
        (0.75, "3π/8".into()),
        (1.0, "π/2".into()),
    ]
}

/// β over the (θ_C, θ_D) grid; degenerate points in grey.
pub fn sweep_heatmap(result: &SweepResult) -> String {
    let mut out = String::new();
    header(
        &mut out,
        &format!("β over (θ_C, θ_D), coverage {:.3}", result.coverage_fraction),
    );
    let n = result.grid_n;
    let cell = PLOT / n as f64;
    for (k, p) in result.points.iter().enumerate() {
        let (i, j) = (k / n, k % n);
        let x = LEFT + i as f64 * cell;
        let y = TOP + PLOT - (j + 1) as f64 * cell;
        let fill = match p.beta {
            Some(b) => color(b - 1.0),
            None => DEGENERATE_FILL.to_owned(),
        };
        let _ = writeln!(
            out,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
            cell + 0.05,
            cell + 0.05
        );
    }
    axes(&mut out, "θ_C", "θ_D", &angle_ticks(), &angle_ticks());

    // colour bar for β ∈ [1, 2]
    let bar_x = LEFT + PLOT + 30.0;
    let steps = 50;
    let h = PLOT / steps as f64;
    for s in 0..steps {
        let f = (s as f64 + 0.5) / steps as f64;
        let y = TOP + PLOT - (s + 1) as f64 * h;
        let _ = writeln!(
            out,
            r#"<rect x="{bar_x}" y="{y:.3}" width="20" height="{:.3}" fill="{}"/>"#,
            h + 0.05,
            color(f)
        );
    }
    let _ = writeln!(
        out,
        r#"<rect x="{bar_x}" y="{TOP}" width="20" height="{PLOT}" fill="none" stroke="black"/>"#
    );
    for (f, label) in [(0.0, "1"), (0.5, "1.5"), (1.0, "2")] {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{label}</text>"#,
            bar_x + 26.0,
            TOP + PLOT - f * PLOT + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">β</text>"#,
        bar_x + 10.0,
        TOP - 8.0
    );
    out.push_str("</svg>\n");
    out
}

/// Dip minimum `P¹¹` against β.
pub fn dip_line(points: &[DipPoint]) -> String {
    let mut out = String::new();
    header(&mut out, "HOM dip minimum vs bunching parameter");
    let to_xy = |p: &DipPoint| (LEFT + (p.beta - 1.0) * PLOT, TOP + PLOT - p.p_11 * PLOT);
    let x_ticks: Vec<(f64, String)> = (0..=4)
        .map(|k| (k as f64 / 4.0, format!("{}", 1.0 + k as f64 / 4.0)))
        .collect();
    let y_ticks: Vec<(f64, String)> = (0..=4)
        .map(|k| (k as f64 / 4.0, format!("{}", k as f64 / 4.0)))
        .collect();
    axes(&mut out, "β", "P¹¹ (coincidence at the dip)", &x_ticks, &y_ticks);
    if points.len() > 1 {
        let path: Vec<String> = points
            .iter()
            .map(|p| {
                let (x, y) = to_xy(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#3b528b" stroke-width="2"/>"##,
            path.join(" ")
        );
    }
    for p in points {
        let (x, y) = to_xy(p);
        let _ = writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="#21918c"/>"##);
    }
    out.push_str("</svg>\n");
    out
}
