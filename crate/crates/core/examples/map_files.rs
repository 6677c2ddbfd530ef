//! The text format for maps and the inline expression language.
//!
//!     cargo run --example map_files

use congruential::expr::resolve;
use congruential::text::{from_text, to_text};
use congruential::{solve_agreement, CongruentialMap};

const HALVE_OR_TRIPLE: &str = "\
congruential v1
# n/2 on evens, 3n + 1 on odds
modulus 2
piece 0: 1 0 2
piece 1: 3 1 1
";

fn main() {
    let t: CongruentialMap = HALVE_OR_TRIPLE.parse().unwrap();
    println!("parsed:\n{t}");
    println!("bijection? {}", t.is_bijection().map(|_| "yes".to_string()).unwrap_or_else(|r| format!("no: {r}")));

    let bad = "congruential v1\nmodulus 2\npiece 0: 1 0 1\npiece 1: 1 0 2\n";
    println!("a piece that leaves N: {}", from_text(bad).unwrap_err());

    for e in ["lambda rho'", "(lambda' * id) lambda", "x0' x1 x0", "alpha * (id * alpha)"] {
        let m = resolve(e).unwrap();
        println!("{e:<24} modulus {:>3}, {} pieces", m.modulus(), m.pieces().len());
    }
    let a = resolve("lambda rho'").unwrap();
    let b = resolve("alpha").unwrap();
    println!("lambda rho' = alpha: {}", a.equal(&b));
    let (f, g) = (resolve("rho").unwrap(), resolve("id").unwrap());
    println!("rho fixes exactly {}", solve_agreement(&f, &g));
    println!("rho vs id first differ at n = {}", f.witness_difference(&g).unwrap());

    let path = std::env::temp_dir().join("alpha.cmap");
    std::fs::write(&path, to_text(&b)).unwrap();
    let back = resolve(&format!("@{} rho", path.display())).unwrap();
    println!("alpha from a file, composed with rho, equals lambda: {}", back.equal(&resolve("lambda").unwrap()));
    std::fs::remove_file(&path).ok();
}
