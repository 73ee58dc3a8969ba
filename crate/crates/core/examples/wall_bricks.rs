//! Generate the running-bond layout of a wall and print it as CSV.
//!
//! cargo run --example wall_bricks -- 2.0 0.15

use brickwork::wall::bricks_csv;
use brickwork::{generate_bricks, support_graph, WallSpec};

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let length = args.first().copied().unwrap_or(1.2);
    let height = args.get(1).copied().unwrap_or(0.15);

    let wall = WallSpec::straight(length, height);
    let bricks = generate_bricks(&wall);
    print!("{}", bricks_csv(&bricks));

    let graph = support_graph(&bricks);
    eprintln!("{} bricks in {} courses, {} support edges", bricks.len(), wall.courses(), graph.edges.len());
}
