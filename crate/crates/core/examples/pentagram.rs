//! MacLane's pentagon for alpha, factored through rho and lambda.
//!
//!     cargo run --example pentagram [-- out.diagram]

use congruential::diagram::{build_figure1, check_commutes, check_factorizations, figure1_factorizations, local_triangles};

fn main() {
    let d = build_figure1();
    for i in 0..d.edges.len() {
        println!("  {}", d.describe_edge(i));
    }
    let report = check_commutes(&d, 6);
    println!(
        "{} node pairs, {} paths up to length 6, commutes: {}",
        report.node_pairs,
        report.paths,
        report.commutes()
    );
    for f in check_factorizations(&d, &figure1_factorizations(&d)).unwrap() {
        println!("factorisation of {}: {}", f.edge, f.holds);
    }
    let blue: Vec<usize> = (0..d.edges.len()).filter(|&i| d.edges[i].color == "blue").collect();
    let triangles: Vec<_> = blue.iter().flat_map(|&i| local_triangles(&d, i)).collect();
    println!("{} triangles on blue edges, all commute: {}", triangles.len(), triangles.iter().all(|t| t.commutes));

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, d.to_text().unwrap()).unwrap();
        println!("wrote {path}; check it with `congruential verify diagram --file {path}`");
    }
}
