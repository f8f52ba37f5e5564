//! Render-only profile exports: CSV rows and an SVG plot with one polyline
//! per component and dots where a component's slope changes.  Both formats
//! are deterministic functions of the profile.

use ffpgn_core::nsystem::Profile;
use std::fmt::Write;

/// Header q,P_1,...,P_n,rising; the rising column holds the 1-based index
/// of the component rising on [q, q+1], or "-" on the last row.
pub fn profile_csv(p: &Profile) -> String {
    let mut out = String::new();
    out.push('q');
    for j in 1..=p.n {
        let _ = write!(out, ",P_{}", j);
    }
    out.push_str(",rising\n");
    for q in 0..=p.horizon() {
        let _ = write!(out, "{}", q);
        for v in p.at(q) {
            let _ = write!(out, ",{}", v);
        }
        match p.rising_index(q) {
            Some(r) => {
                let _ = writeln!(out, ",{}", r);
            }
            None => out.push_str(",-\n"),
        }
    }
    out
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
];

const W: i64 = 640;
const H: i64 = 420;
const MARGIN: i64 = 40;

pub fn profile_svg(p: &Profile) -> String {
    let qmax = p.horizon().max(1);
    let vmax = p
        .values
        .iter()
        .flat_map(|row| row.iter().copied())
        .max()
        .unwrap_or(0)
        .max(1);
    let x = |q: i64| MARGIN + q * (W - 2 * MARGIN) / qmax;
    let y = |v: i64| H - MARGIN - v * (H - 2 * MARGIN) / vmax;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        W, H, W, H
    );
    let _ = writeln!(out, "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>", W, H);
    // axes with integer ticks
    let _ = writeln!(
        out,
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>",
        m = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    let _ = writeln!(
        out,
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{m}\" y2=\"{t}\" stroke=\"black\"/>",
        m = MARGIN,
        b = H - MARGIN,
        t = MARGIN
    );
    for q in 0..=qmax {
        let _ = writeln!(
            out,
            "<line x1=\"{x}\" y1=\"{b}\" x2=\"{x}\" y2=\"{b2}\" stroke=\"black\"/>\
             <text x=\"{x}\" y=\"{ty}\" font-size=\"10\" text-anchor=\"middle\">{q}</text>",
            x = x(q),
            b = H - MARGIN,
            b2 = H - MARGIN + 4,
            ty = H - MARGIN + 16,
            q = q
        );
    }
    for v in 0..=vmax {
        let _ = writeln!(
            out,
            "<line x1=\"{m2}\" y1=\"{y}\" x2=\"{m}\" y2=\"{y}\" stroke=\"black\"/>\
             <text x=\"{tx}\" y=\"{ty}\" font-size=\"10\" text-anchor=\"end\">{v}</text>",
            m = MARGIN,
            m2 = MARGIN - 4,
            y = y(v),
            tx = MARGIN - 8,
            ty = y(v) + 3,
            v = v
        );
    }
    for j in 0..p.n {
        let color = PALETTE[j % PALETTE.len()];
        let pts: Vec<String> = (0..=p.horizon())
            .map(|q| format!("{},{}", x(q), y(p.at(q)[j])))
            .collect();
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>",
            color,
            pts.join(" ")
        );
        // dots where the slope changes
        for q in 1..p.horizon() {
            let before = p.at(q)[j] - p.at(q - 1)[j];
            let after = p.at(q + 1)[j] - p.at(q)[j];
            if before != after {
                let _ = writeln!(
                    out,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{}\"/>",
                    x(q),
                    y(p.at(q)[j]),
                    color
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ffpgn_core::nsystem::extremal;

    #[test]
    fn csv_shape() {
        let p = extremal(2, 4);
        let csv = profile_csv(&p);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "q,P_1,P_2,rising");
        assert_eq!(lines[1], "0,0,0,2");
        assert_eq!(lines.len(), 6);
        assert!(lines[5].ends_with(",-"));
    }

    #[test]
    fn svg_shape() {
        let p = extremal(3, 9);
        let svg = profile_svg(&p);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 3);
        assert!(svg.contains("#2ca02c"));
        assert!(svg.matches("<circle").count() >= 3);
        assert_eq!(svg, profile_svg(&p));
    }
}
