//! Artifact emission: CSV tables, the plain-text report, and optional SVG
//! line charts. Everything is written through deterministic pure formatting
//! (17-significant-digit floats, fixed column order, `\n` line endings), so
//! identical inputs produce byte-identical files — the contract the
//! determinism tests pin.

use std::path::Path;

use crate::harness::ExperimentReport;
use crate::metrics::{
    delta_n, xi_n, ChaosVerdict, DistributionEstimate, LiYorkeOutcome, PairDistanceProfile,
};
use crate::Result;

/// Formats with 17 significant digits (1 leading + 16 fractional, scientific
/// notation) — enough to round-trip any f64 exactly.
pub fn fmt_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `content` to `path`, creating parent directories as needed.
pub fn write_text(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, content)?;
    Ok(())
}

/// profiles.csv: one row per sampled time per pair — `pair_id,i,d_i`.
pub fn profiles_csv(items: &[(String, &PairDistanceProfile)]) -> String {
    let mut out = String::from("pair_id,i,d_i\n");
    for (id, profile) in items {
        for (t, d) in profile.times.iter().zip(&profile.distances) {
            out.push_str(id);
            out.push(',');
            out.push_str(&t.to_string());
            out.push(',');
            out.push_str(&fmt_sig17(*d));
            out.push('\n');
        }
    }
    out
}

/// The prefix lengths sampled into xi.csv: powers of two up to the horizon,
/// plus the window start and the horizon itself. Every value is recomputable
/// from profiles.csv, so decimation loses nothing.
pub fn xi_checkpoints(horizon: usize, window_start: usize) -> Vec<usize> {
    let mut ns = Vec::new();
    let mut n = 1usize;
    while n <= horizon {
        ns.push(n);
        n = n.saturating_mul(2);
    }
    ns.push(window_start.clamp(1, horizon));
    ns.push(horizon);
    ns.sort_unstable();
    ns.dedup();
    ns
}

/// xi.csv: proximity/separation fractions at checkpoint prefixes —
/// `pair_id,n,t,xi,delta`.
pub fn xi_csv(
    items: &[(String, &PairDistanceProfile)],
    t_grid: &[f64],
    window: f64,
) -> Result<String> {
    let mut out = String::from("pair_id,n,t,xi,delta\n");
    for (id, profile) in items {
        let horizon = profile.distances.len();
        let window_start = ((1.0 - window) * horizon as f64).ceil().max(1.0) as usize;
        for &n in &xi_checkpoints(horizon, window_start) {
            for &t in t_grid {
                let xi = xi_n(profile, t, n)?;
                let delta = delta_n(profile, t, n)?;
                out.push_str(id);
                out.push(',');
                out.push_str(&n.to_string());
                out.push(',');
                out.push_str(&fmt_sig17(t));
                out.push(',');
                out.push_str(&fmt_sig17(xi.as_f64()));
                out.push(',');
                out.push_str(&fmt_sig17(delta.as_f64()));
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// estimates.csv: windowed extrema per threshold —
/// `pair_id,t,phi_lower,phi_upper`.
pub fn estimates_csv(items: &[(String, &DistributionEstimate)]) -> String {
    let mut out = String::from("pair_id,t,phi_lower,phi_upper\n");
    for (id, est) in items {
        for (gi, &t) in est.t_grid.iter().enumerate() {
            out.push_str(id);
            out.push(',');
            out.push_str(&fmt_sig17(t));
            out.push(',');
            out.push_str(&fmt_sig17(est.phi_lower[gi]));
            out.push(',');
            out.push_str(&fmt_sig17(est.phi_upper[gi]));
            out.push('\n');
        }
    }
    out
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(fmt_sig17).unwrap_or_default()
}

/// verdicts.csv: one row per classified pair with witnesses —
/// `pair_id,dc1,dc2,dc2_prime,dc3,li_yorke,zero_witness_t,positive_witness_t,
/// min_phi_upper,dc3_lo,dc3_hi,tail_min,tail_max`.
pub fn verdicts_csv(items: &[(String, &ChaosVerdict, Option<&LiYorkeOutcome>)]) -> String {
    let mut out = String::from(
        "pair_id,dc1,dc2,dc2_prime,dc3,li_yorke,zero_witness_t,positive_witness_t,\
         min_phi_upper,dc3_lo,dc3_hi,tail_min,tail_max\n",
    );
    for (id, v, ly) in items {
        let (lo, hi) = match v.dc3_interval {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        let ly_flag = match (v.li_yorke, ly) {
            (Some(b), _) => b.to_string(),
            (None, Some(o)) => o.chaotic.to_string(),
            (None, None) => String::new(),
        };
        out.push_str(&format!(
            "{id},{},{},{},{},{ly_flag},{},{},{},{},{},{},{}\n",
            v.dc1,
            v.dc2,
            v.dc2_prime,
            v.dc3,
            opt_f64(v.zero_witness_t),
            opt_f64(v.positive_witness_t),
            fmt_sig17(v.min_phi_upper),
            opt_f64(lo),
            opt_f64(hi),
            opt_f64(ly.map(|o| o.min_distance)),
            opt_f64(ly.map(|o| o.max_distance)),
        ));
    }
    out
}

/// report.txt: concatenated experiment reports separated by blank lines.
pub fn report_txt(reports: &[ExperimentReport]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&r.render());
    }
    out
}

// ---------------------------------------------------------------------------
// SVG line charts (pure text writer, no graphics dependency)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if s.is_empty() || s == "-" {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{v:.2e}")
    }
}

/// Renders line series into a self-contained SVG document. Axes are linear
/// with 5 ticks; the legend lists series in palette order.
pub fn svg_line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 480.0;
    const ML: f64 = 62.0; // left margin
    const MR: f64 = 18.0;
    const MT: f64 = 34.0;
    const MB: f64 = 46.0;
    let pw = W - ML - MR;
    let ph = H - MT - MB;

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for s in series {
        for &(x, y) in &s.points {
            if x.is_finite() && y.is_finite() {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    let (mut x0, mut x1) = bounds(&xs);
    let (mut y0, mut y1) = bounds(&ys);
    if x1 - x0 < 1e-12 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 < 1e-12 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| ML + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MT + ph - (y - y0) / (y1 - y0) * ph;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" \
         font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        ML + pw / 2.0,
        escape(title)
    ));

    // Axes and ticks.
    out.push_str(&format!(
        "<rect x=\"{ML}\" y=\"{MT}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" \
         stroke=\"#444\" stroke-width=\"1\"/>\n"
    ));
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x0 + f * (x1 - x0);
        let yv = y0 + f * (y1 - y0);
        let px = sx(xv);
        let py = sy(yv);
        out.push_str(&format!(
            "<line x1=\"{px}\" y1=\"{}\" x2=\"{px}\" y2=\"{}\" stroke=\"#444\"/>\n",
            MT + ph,
            MT + ph + 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{px}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            MT + ph + 19.0,
            tick_label(xv)
        ));
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{py}\" x2=\"{ML}\" y2=\"{py}\" stroke=\"#444\"/>\n",
            ML - 5.0
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
            ML - 8.0,
            py + 4.0,
            tick_label(yv)
        ));
        // Light gridline.
        if i > 0 && i < 4 {
            out.push_str(&format!(
                "<line x1=\"{ML}\" y1=\"{py}\" x2=\"{}\" y2=\"{py}\" stroke=\"#ddd\"/>\n",
                ML + pw
            ));
        }
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        ML + pw / 2.0,
        H - 8.0,
        escape(x_label)
    ));
    out.push_str(&format!(
        "<text x=\"14\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {})\">{}</text>\n",
        MT + ph / 2.0,
        MT + ph / 2.0,
        escape(y_label)
    ));

    // Series polylines + legend.
    for (si, s) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        if !pts.is_empty() {
            out.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\" \
                 points=\"{}\"/>\n",
                pts.join(" ")
            ));
        }
        let ly = MT + 16.0 + 18.0 * si as f64;
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" \
             stroke-width=\"3\"/>\n",
            ML + pw - 150.0,
            ML + pw - 124.0
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">{}</text>\n",
            ML + pw - 118.0,
            ly + 4.0,
            escape(&s.name)
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(vs: &[f64]) -> (f64, f64) {
    let lo = vs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() && hi.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Chart of ξ_n at fixed thresholds against the prefix length n, decimated
/// to at most `max_points` prefixes.
pub fn xi_vs_n_chart(
    profile: &PairDistanceProfile,
    ts: &[f64],
    max_points: usize,
) -> Result<String> {
    let horizon = profile.distances.len();
    let step = (horizon / max_points.max(1)).max(1);
    let mut series = Vec::with_capacity(ts.len());
    for &t in ts {
        let mut points = Vec::new();
        let mut count = 0u64;
        for (i, &d) in profile.distances.iter().enumerate() {
            count += u64::from(d < t);
            let n = i + 1;
            if n % step == 0 || n == horizon {
                points.push((n as f64, count as f64 / n as f64));
            }
        }
        series.push(Series { name: format!("t = {}", tick_label(t)), points });
    }
    Ok(svg_line_chart(
        "proximity fraction by prefix length",
        "prefix length n",
        "fraction of steps with d < t",
        &series,
    ))
}

/// Chart of the windowed lower/upper fractions against the threshold t.
pub fn phi_vs_t_chart(est: &DistributionEstimate) -> String {
    let lower = Series {
        name: "lower".into(),
        points: est.t_grid.iter().copied().zip(est.phi_lower.iter().copied()).collect(),
    };
    let upper = Series {
        name: "upper".into(),
        points: est.t_grid.iter().copied().zip(est.phi_upper.iter().copied()).collect(),
    };
    svg_line_chart(
        "windowed distribution extrema by threshold",
        "threshold t",
        "proximity fraction",
        &[lower, upper],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::SampleTimes;

    fn tiny_profile() -> PairDistanceProfile {
        PairDistanceProfile::from_parts(vec![0.5, 0.25, 0.125, 0.75], vec![0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn float_formatting_round_trips_and_is_17_digits() {
        for &x in &[0.5, 1.0 / 3.0, 344922.0 / 362880.0, 1e-300, -2.5e17, 0.1328124701976776] {
            let s = fmt_sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let digits =
                s.chars().take_while(|c| *c != 'e').filter(|c| c.is_ascii_digit()).count();
            assert_eq!(digits, 17, "{s}");
        }
        assert_eq!(fmt_sig17(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_golden_shapes() {
        let p = tiny_profile();
        let items = [("pair0".to_string(), &p)];
        let profiles = profiles_csv(&items);
        assert!(profiles.starts_with("pair_id,i,d_i\n"));
        assert_eq!(profiles.lines().count(), 5);
        assert!(profiles.contains("pair0,2,1.2500000000000000e-1\n"));

        let xi = xi_csv(&items, &[0.3, 1.0], 0.5).unwrap();
        // checkpoints for horizon 4, window start 2: n in {1, 2, 4}.
        assert_eq!(xi.lines().count(), 1 + 3 * 2);
        // xi + delta = 1 on every row.
        for line in xi.lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            let x: f64 = cols[3].parse().unwrap();
            let d: f64 = cols[4].parse().unwrap();
            assert_eq!(x + d, 1.0);
        }

        let est = crate::metrics::distribution_estimate(&p, &[0.3, 1.0], 0.5).unwrap();
        let est_items = [("pair0".to_string(), &est)];
        let est_csv = estimates_csv(&est_items);
        assert_eq!(est_csv.lines().count(), 3);

        let verdict = crate::metrics::classify_pair(&est, Default::default());
        let v_items = [("pair0".to_string(), &verdict, None)];
        let v_csv = verdicts_csv(&v_items);
        assert_eq!(v_csv.lines().count(), 2);
        assert!(v_csv.lines().nth(1).unwrap().starts_with("pair0,"));
    }

    #[test]
    fn emission_is_deterministic() {
        let sys = crate::catalog::logistic_convergent_system();
        let (x, y) = crate::sampling::interval_pairs(1, 5)[0].clone();
        let p = crate::metrics::pair_profile(&sys, &x, &y, 500, &SampleTimes::FromZero).unwrap();
        let grid = crate::metrics::default_t_grid(1.0);
        let items = [("p".to_string(), &p)];
        assert_eq!(profiles_csv(&items), profiles_csv(&items));
        assert_eq!(xi_csv(&items, &grid, 0.5).unwrap(), xi_csv(&items, &grid, 0.5).unwrap());
        let chart = xi_vs_n_chart(&p, &[0.1, 0.5], 128).unwrap();
        assert_eq!(chart, xi_vs_n_chart(&p, &[0.1, 0.5], 128).unwrap());
    }

    #[test]
    fn svg_is_balanced_and_contains_series() {
        let est = crate::metrics::distribution_estimate(
            &tiny_profile(),
            &[0.1, 0.2, 0.4, 0.8],
            1.0,
        )
        .unwrap();
        let svg = phi_vs_t_chart(&est);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(">lower<") && svg.contains(">upper<"));
        // Tags balance: every <text gets a </text>, etc.
        assert_eq!(svg.matches("<text").count(), svg.matches("</text>").count());
    }
}
