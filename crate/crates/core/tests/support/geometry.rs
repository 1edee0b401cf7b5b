//! Geometry oracles and layout invariant checks.

use cadv::layout::{Circle, CircleKind, LayoutTree, View};

/// Smallest circle through every circle, by trying every support set of one,
/// two or three circles and keeping the smallest candidate that contains
/// all the others. O(n⁴) overall; fine for a dozen circles.
pub fn brute_force_enclose(circles: &[Circle]) -> Circle {
    let mut candidates: Vec<Circle> = circles.to_vec();
    for i in 0..circles.len() {
        for j in i + 1..circles.len() {
            candidates.push(through_two(&circles[i], &circles[j]));
            for k in j + 1..circles.len() {
                candidates.extend(through_three(&circles[i], &circles[j], &circles[k]));
            }
        }
    }
    candidates
        .into_iter()
        .filter(|c| circles.iter().all(|o| contains(c, o, 1e-9)))
        .min_by(|a, b| a.r.total_cmp(&b.r))
        .expect("the pair through the two farthest circles always qualifies")
}

pub fn contains(outer: &Circle, inner: &Circle, rel_tol: f64) -> bool {
    let d = (outer.x - inner.x).hypot(outer.y - inner.y);
    d + inner.r <= outer.r + rel_tol * outer.r.max(1.0)
}

fn through_two(a: &Circle, b: &Circle) -> Circle {
    let d = (b.x - a.x).hypot(b.y - a.y);
    if d + b.r <= a.r {
        return *a;
    }
    if d + a.r <= b.r {
        return *b;
    }
    let r = (d + a.r + b.r) / 2.0;
    // centre sits on the line through both centres, r - a.r away from a
    let t = (r - a.r) / d;
    Circle::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t, r)
}

/// Circles internally tangent to three circles: |c - cᵢ| = R - rᵢ.
/// Subtracting the equations pairwise leaves a linear system in (x, y) with
/// R as parameter; substituting back gives a quadratic in R.
fn through_three(a: &Circle, b: &Circle, c: &Circle) -> Vec<Circle> {
    // 2(xj - xi) x + 2(yj - yi) y + 2(ri - rj) R = (xj² + yj² - rj²) - (xi² + yi² - ri²)
    let row = |i: &Circle, j: &Circle| {
        (
            2.0 * (j.x - i.x),
            2.0 * (j.y - i.y),
            2.0 * (i.r - j.r),
            (j.x * j.x + j.y * j.y - j.r * j.r) - (i.x * i.x + i.y * i.y - i.r * i.r),
        )
    };
    let (a1, b1, c1, d1) = row(a, b);
    let (a2, b2, c2, d2) = row(a, c);
    let det = a1 * b2 - a2 * b1;
    if det.abs() < 1e-12 {
        return Vec::new();
    }
    // x = x0 + xr R, y = y0 + yr R
    let x0 = (d1 * b2 - d2 * b1) / det;
    let xr = (-c1 * b2 + c2 * b1) / det;
    let y0 = (a1 * d2 - a2 * d1) / det;
    let yr = (-a1 * c2 + a2 * c1) / det;
    // (x0 + xr R - ax)² + (y0 + yr R - ay)² = (R - ar)²
    let px = x0 - a.x;
    let py = y0 - a.y;
    let qa = xr * xr + yr * yr - 1.0;
    let qb = 2.0 * (px * xr + py * yr + a.r);
    let qc = px * px + py * py - a.r * a.r;
    let mut roots = Vec::new();
    if qa.abs() < 1e-12 {
        if qb.abs() > 1e-12 {
            roots.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let s = disc.sqrt();
            roots.push((-qb + s) / (2.0 * qa));
            roots.push((-qb - s) / (2.0 * qa));
        }
    }
    roots
        .into_iter()
        .filter(|r| r.is_finite() && *r >= a.r.max(b.r).max(c.r))
        .map(|r| Circle::new(x0 + xr * r, y0 + yr * r, r))
        .collect()
}

/// The metric a leaf circle stands for, read back from its label.
pub fn leaf_metric(tree: &LayoutTree, index: usize) -> Option<f64> {
    let c = &tree.circles[index];
    match (tree.view, c.kind) {
        (View::System, CircleKind::SchemaBubble) => c.label.count.map(|v| v as f64),
        (View::Package, CircleKind::SchemaBubble) => c.label.count.map(|v| v as f64),
        (View::Package, CircleKind::Annotation) => c.label.value.map(f64::from),
        (View::Class, CircleKind::Annotation) => c.label.value.map(|v| f64::from(v) + 1.0),
        _ => None,
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct LayoutReport {
    pub circles: usize,
    pub containment_violations: usize,
    pub overlap_violations: usize,
    /// Largest relative deviation of r² / metric from its view-wide value.
    pub area_ratio_error: f64,
}

/// Checks parent containment and sibling separation with ε = `eps` · parent
/// radius, and leaf area proportionality across the whole view.
pub fn check_layout(tree: &LayoutTree, eps: f64) -> LayoutReport {
    let mut report = LayoutReport {
        circles: tree.circles.len(),
        ..LayoutReport::default()
    };
    let index: std::collections::HashMap<&str, usize> =
        tree.circles.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); tree.circles.len()];
    for (i, c) in tree.circles.iter().enumerate() {
        if let Some(p) = &c.parent {
            children[index[p.as_str()]].push(i);
        }
    }
    for (p, kids) in children.iter().enumerate() {
        let parent = &tree.circles[p];
        let eps = eps * parent.r;
        for (n, &i) in kids.iter().enumerate() {
            let c = &tree.circles[i];
            if (c.cx - parent.cx).hypot(c.cy - parent.cy) + c.r > parent.r + eps {
                report.containment_violations += 1;
            }
            for &j in &kids[n + 1..] {
                let o = &tree.circles[j];
                if (c.cx - o.cx).hypot(c.cy - o.cy) < c.r + o.r - eps {
                    report.overlap_violations += 1;
                }
            }
        }
    }
    let ratios: Vec<f64> = (0..tree.circles.len())
        .filter_map(|i| leaf_metric(tree, i).map(|m| tree.circles[i].r.powi(2) / m))
        .collect();
    if let Some(&first) = ratios.first() {
        report.area_ratio_error = ratios.iter().map(|r| ((r - first) / first).abs()).fold(0.0, f64::max);
    }
    report
}
