//! Minimal SVG rendering for image curves: one polyline per curve, a fitted
//! viewBox with 1% padding, and optional legend labels. No plotting
//! dependency; figures here are static curves.

use crate::geometry::ImageCurve;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Renders curves as a standalone SVG document. `labels` may be shorter than
/// `curves`; unlabeled curves get no legend entry. The y axis is flipped so
/// curves appear in mathematical orientation.
pub fn svg_document(curves: &[ImageCurve], labels: &[String]) -> String {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for curve in curves {
        for w in curve.samples() {
            xmin = xmin.min(w.re);
            xmax = xmax.max(w.re);
            ymin = ymin.min(-w.im);
            ymax = ymax.max(-w.im);
        }
    }
    if !xmin.is_finite() {
        xmin = 0.0;
        xmax = 1.0;
        ymin = 0.0;
        ymax = 1.0;
    }
    let width = (xmax - xmin).max(1e-12);
    let height = (ymax - ymin).max(1e-12);
    let pad_x = 0.01 * width;
    let pad_y = 0.01 * height;
    let vb = (
        xmin - pad_x,
        ymin - pad_y,
        width + 2.0 * pad_x,
        height + 2.0 * pad_y,
    );
    let stroke_width = 0.002 * width.max(height);
    let font_size = 0.04 * height;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        vb.0, vb.1, vb.2, vb.3
    ));
    for (i, curve) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for w in curve.samples() {
            points.push_str(&format!("{},{} ", w.re, -w.im));
        }
        if let Some(first) = curve.samples().first() {
            points.push_str(&format!("{},{}", first.re, -first.im));
        }
        out.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"{stroke_width}\" points=\"{points}\"/>\n"
        ));
    }
    for (i, label) in labels.iter().enumerate().take(curves.len()) {
        let color = PALETTE[i % PALETTE.len()];
        let x = vb.0 + 0.02 * vb.2;
        let y = vb.1 + (0.06 + 0.05 * i as f64) * vb.3;
        out.push_str(&format!(
            "  <text x=\"{x}\" y=\"{y}\" font-size=\"{font_size}\" fill=\"{color}\">{}</text>\n",
            xml_escape(label)
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use crate::expr::AnalyticMap;
    use crate::geometry::boundary_curve;

    use super::*;

    #[test]
    fn unit_circle_viewbox_has_one_percent_padding() {
        let curve = boundary_curve(&AnalyticMap::identity(), 1.0 - 1e-9, 4096).unwrap();
        let svg = svg_document(&[curve], &[String::from("unit circle")]);
        assert!(svg.starts_with("<svg"));
        let vb_start = svg.find("viewBox=\"").unwrap() + "viewBox=\"".len();
        let vb_end = svg[vb_start..].find('"').unwrap() + vb_start;
        let parts: Vec<f64> = svg[vb_start..vb_end]
            .split_whitespace()
            .map(|t| t.parse().unwrap())
            .collect();
        assert!((parts[0] + 1.02).abs() < 1e-2, "viewBox = {parts:?}");
        assert!((parts[1] + 1.02).abs() < 1e-2);
        assert!((parts[2] - 2.04).abs() < 2e-2);
        assert!((parts[3] - 2.04).abs() < 2e-2);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("unit circle"));
    }
}
