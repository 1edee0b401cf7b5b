//! Smallest circle enclosing a set of circles.
//!
//! Welzl-style move-to-front recursion over a support basis of at most three
//! circles, in expected linear time. The input is shuffled by a fixed-seed
//! generator, so results never vary between runs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub x: f64,
    pub y: f64,
    pub r: f64,
}

impl Circle {
    pub fn new(x: f64, y: f64, r: f64) -> Self {
        Self { x, y, r }
    }
}

const SHUFFLE_SEED: u64 = 0x00ca_d5ee_d000;

/// `a` contains `b` up to a relative tolerance.
fn encloses_weak(a: &Circle, b: &Circle) -> bool {
    let dr = a.r - b.r + a.r.max(b.r).max(1.0) * 1e-9;
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    dr > 0.0 && dr * dr > dx * dx + dy * dy
}

/// `a` definitely does not contain `b`.
fn encloses_not(a: &Circle, b: &Circle) -> bool {
    let dr = a.r - b.r;
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    dr < 0.0 || dr * dr < dx * dx + dy * dy
}

fn encloses_weak_all(a: &Circle, basis: &[Circle]) -> bool {
    basis.iter().all(|b| encloses_weak(a, b))
}

fn basis2(a: &Circle, b: &Circle) -> Circle {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let dr = b.r - a.r;
    let l = (dx * dx + dy * dy).sqrt();
    if l == 0.0 {
        return if a.r >= b.r { *a } else { *b };
    }
    Circle {
        x: (a.x + b.x + dx / l * dr) / 2.0,
        y: (a.y + b.y + dy / l * dr) / 2.0,
        r: (l + a.r + b.r) / 2.0,
    }
}

/// Circle internally tangent to all three inputs.
fn basis3(a: &Circle, b: &Circle, c: &Circle) -> Circle {
    let (x1, y1, r1) = (a.x, a.y, a.r);
    let (x2, y2, r2) = (b.x, b.y, b.r);
    let (x3, y3, r3) = (c.x, c.y, c.r);
    let a2 = x1 - x2;
    let a3 = x1 - x3;
    let b2 = y1 - y2;
    let b3 = y1 - y3;
    let c2 = r2 - r1;
    let c3 = r3 - r1;
    let d1 = x1 * x1 + y1 * y1 - r1 * r1;
    let d2 = d1 - x2 * x2 - y2 * y2 + r2 * r2;
    let d3 = d1 - x3 * x3 - y3 * y3 + r3 * r3;
    let ab = a3 * b2 - a2 * b3;
    let xa = (b2 * d3 - b3 * d2) / (ab * 2.0) - x1;
    let xb = (b3 * c2 - b2 * c3) / ab;
    let ya = (a3 * d2 - a2 * d3) / (ab * 2.0) - y1;
    let yb = (a2 * c3 - a3 * c2) / ab;
    let qa = xb * xb + yb * yb - 1.0;
    let qb = 2.0 * (r1 + xa * xb + ya * yb);
    let qc = xa * xa + ya * ya - r1 * r1;
    let r = -(if qa.abs() > 1e-6 {
        (qb + (qb * qb - 4.0 * qa * qc).max(0.0).sqrt()) / (2.0 * qa)
    } else {
        qc / qb
    });
    Circle {
        x: x1 + xa + xb * r,
        y: y1 + ya + yb * r,
        r,
    }
}

fn enclose_basis(basis: &[Circle]) -> Circle {
    match basis {
        [a] => *a,
        [a, b] => basis2(a, b),
        [a, b, c] => basis3(a, b, c),
        _ => unreachable!("basis holds one to three circles"),
    }
}

fn extend_basis(basis: &[Circle], p: Circle) -> Vec<Circle> {
    if encloses_weak_all(&p, basis) {
        return vec![p];
    }
    for b in basis {
        if encloses_not(&p, b) && encloses_weak_all(&basis2(b, &p), basis) {
            return vec![*b, p];
        }
    }
    for i in 0..basis.len().saturating_sub(1) {
        for j in i + 1..basis.len() {
            let (bi, bj) = (&basis[i], &basis[j]);
            if encloses_not(&basis2(bi, bj), &p)
                && encloses_not(&basis2(bi, &p), bj)
                && encloses_not(&basis2(bj, &p), bi)
                && encloses_weak_all(&basis3(bi, bj, &p), basis)
            {
                return vec![*bi, *bj, p];
            }
        }
    }
    // numerically degenerate (e.g. collinear tangent circles): fall back to
    // the best pair containing p
    basis
        .iter()
        .map(|b| (*b, basis2(b, &p)))
        .filter(|(_, e)| encloses_weak_all(e, basis))
        .min_by(|a, b| a.1.r.total_cmp(&b.1.r))
        .map(|(b, _)| vec![b, p])
        .unwrap_or_else(|| vec![p])
}

/// Smallest circle containing every input circle. `None` for empty input.
pub fn enclose(circles: &[Circle]) -> Option<Circle> {
    let mut shuffled = circles.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(SHUFFLE_SEED);
    shuffled.shuffle(&mut rng);

    let mut basis: Vec<Circle> = Vec::new();
    let mut enclosing: Option<Circle> = None;
    let mut i = 0;
    // each restart strictly grows the enclosing circle; the cap only guards
    // against floating-point cycling
    let mut restarts = 0usize;
    let cap = 64 * shuffled.len().max(1) * shuffled.len().max(1);
    while i < shuffled.len() {
        let p = shuffled[i];
        match enclosing {
            Some(e) if encloses_weak(&e, &p) => i += 1,
            _ => {
                basis = extend_basis(&basis, p);
                enclosing = Some(enclose_basis(&basis));
                i = 0;
                restarts += 1;
                if restarts > cap {
                    break;
                }
            }
        }
    }
    enclosing
}
