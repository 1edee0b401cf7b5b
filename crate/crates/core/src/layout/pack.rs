//! Front-chain sibling packing.
//!
//! Circles are placed in input order. Each new circle is put tangent to the
//! pair of front-chain neighbours closest to the centroid; if it overlaps
//! another front circle the chain is cut back and placement retried. The
//! packed set is then wrapped in its smallest enclosing circle and translated
//! so that circle sits at the origin.

use super::enclose::{enclose, Circle};
use super::LayoutError;

#[derive(Debug, Clone, PartialEq)]
pub struct Packed {
    pub centers: Vec<(f64, f64)>,
    /// Radius of the enclosing circle, centered at the origin, around the
    /// padded circles.
    pub radius: f64,
}

/// Places `c` tangent to both `a` and `b`, on the left of `a → b`.
fn place(b: &Circle, a: &Circle, c: &mut Circle) {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let d2 = dx * dx + dy * dy;
    if d2 > 0.0 {
        let a2 = (a.r + c.r) * (a.r + c.r);
        let b2 = (b.r + c.r) * (b.r + c.r);
        if a2 > b2 {
            let x = (d2 + b2 - a2) / (2.0 * d2);
            let y = (b2 / d2 - x * x).max(0.0).sqrt();
            c.x = b.x - x * dx - y * dy;
            c.y = b.y - x * dy + y * dx;
        } else {
            let x = (d2 + a2 - b2) / (2.0 * d2);
            let y = (a2 / d2 - x * x).max(0.0).sqrt();
            c.x = a.x + x * dx - y * dy;
            c.y = a.y + x * dy + y * dx;
        }
    } else {
        c.x = a.x + c.r;
        c.y = a.y;
    }
}

fn intersects(a: &Circle, b: &Circle) -> bool {
    let dr = a.r + b.r - 1e-6 * a.r.max(b.r).max(1.0);
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    dr > 0.0 && dr * dr > dx * dx + dy * dy
}

/// Squared distance from the origin to the weighted midpoint of a chain link.
fn score(a: &Circle, b: &Circle) -> f64 {
    let ab = a.r + b.r;
    let dx = (a.x * b.r + b.x * a.r) / ab;
    let dy = (a.y * b.r + b.y * a.r) / ab;
    dx * dx + dy * dy
}

/// Packs circles of the given radii, each inflated by `padding`, so they
/// touch without overlapping. Deterministic for a fixed input order.
pub fn pack_siblings(radii: &[f64], padding: f64) -> Result<Packed, LayoutError> {
    if radii.is_empty() {
        return Err(LayoutError::EmptyInput);
    }
    if let Some(&bad) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(LayoutError::InvalidRadius(bad));
    }
    let pad = padding.max(0.0);
    let mut circles: Vec<Circle> = radii.iter().map(|&r| Circle::new(0.0, 0.0, r + pad)).collect();
    let n = circles.len();

    if n == 1 {
        return Ok(Packed {
            centers: vec![(0.0, 0.0)],
            radius: circles[0].r,
        });
    }
    circles[0].x = -circles[1].r;
    circles[1].x = circles[0].r;
    if n > 2 {
        let (head, tail) = circles.split_at_mut(2);
        place(&head[1], &head[0], &mut tail[0]);

        // front chain as a doubly linked ring over circle indices
        let mut next = vec![0usize; n];
        let mut prev = vec![0usize; n];
        let (mut a, mut b) = (0usize, 1usize);
        next[0] = 1;
        prev[1] = 0;
        next[1] = 2;
        prev[2] = 1;
        next[2] = 0;
        prev[0] = 2;

        let mut i = 3;
        'pack: while i < n {
            let mut c = circles[i];
            place(&circles[a], &circles[b], &mut c);
            circles[i] = c;

            let mut j = next[b];
            let mut k = prev[a];
            let mut sj = circles[b].r;
            let mut sk = circles[a].r;
            loop {
                if sj <= sk {
                    if intersects(&circles[j], &c) {
                        b = j;
                        next[a] = b;
                        prev[b] = a;
                        continue 'pack;
                    }
                    sj += circles[j].r;
                    j = next[j];
                } else {
                    if intersects(&circles[k], &c) {
                        a = k;
                        next[a] = b;
                        prev[b] = a;
                        continue 'pack;
                    }
                    sk += circles[k].r;
                    k = prev[k];
                }
                if j == next[k] {
                    break;
                }
            }

            // insert i between a and b
            prev[i] = a;
            next[i] = b;
            next[a] = i;
            prev[b] = i;
            b = i;

            // restart from the link closest to the centroid
            let mut best = a;
            let mut best_score = score(&circles[a], &circles[next[a]]);
            let mut node = next[b];
            while node != b {
                let s = score(&circles[node], &circles[next[node]]);
                if s < best_score {
                    best = node;
                    best_score = s;
                }
                node = next[node];
            }
            a = best;
            b = next[a];
            i += 1;
        }
    }

    let e = enclose(&circles).expect("non-empty");
    Ok(Packed {
        centers: circles.iter().map(|c| (c.x - e.x, c.y - e.y)).collect(),
        radius: e.r,
    })
}
