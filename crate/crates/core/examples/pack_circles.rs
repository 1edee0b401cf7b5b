// The raw geometry: pack sibling circles and find their enclosing circle.
//
// `cargo run --example pack_circles`

use cadv::layout::{enclose, pack_siblings, Circle, Packed};

pub fn run_example() -> anyhow::Result<Packed> {
    let radii: Vec<f64> = [9.0, 4.0, 4.0, 2.0, 1.0, 1.0, 1.0].iter().map(|v: &f64| v.sqrt()).collect();
    let packed = pack_siblings(&radii, 0.04 * radii[0])?;
    for (r, (x, y)) in radii.iter().zip(&packed.centers) {
        println!("r={r:.3} at ({x:7.3}, {y:7.3})");
    }
    println!("enclosing radius {:.4}", packed.radius);

    let points = [Circle::new(0.0, 0.0, 1.0), Circle::new(4.0, 0.0, 1.0), Circle::new(2.0, 3.0, 0.5)];
    let e = enclose(&points).expect("non-empty input");
    println!("smallest enclosing circle of three: ({:.4}, {:.4}) r={:.4}", e.x, e.y, e.r);
    Ok(packed)
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example().map(drop)
}
