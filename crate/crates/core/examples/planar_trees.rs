//! Interleavings of higher arity and terms built from them.
//!
//!     cargo run --example planar_trees

use congruential::catalogue::{alpha, identity, lambda, rho};
use congruential::operad::{check_lambda_component, check_rho_component, enumerate_trees, freeness_probe};
use congruential::{eval_tree, mu3, mu_k, star, PlanarTree};

fn main() {
    let (f, g, h) = (rho(), lambda(), alpha());
    let m3 = mu_k(&[f.clone(), g.clone(), h.clone()]).unwrap();
    println!("mu_3(rho, lambda, alpha):\n{m3}");
    assert!(m3.equal(&mu3(&f, &g, &h)));
    println!("rho mu_3 = (f*(g*h)) rho: {}", check_rho_component(&f, &g, &h));
    println!("lambda mu_3 = ((f*g)*h) lambda: {}", check_lambda_component(&f, &g, &h));

    let tree: PlanarTree = "(* _ (#3 _ _ _))".parse().unwrap();
    let args = [identity(), alpha(), alpha(), rho()];
    let m = eval_tree(&tree, &args).unwrap();
    println!("{tree} on (Id, alpha, alpha, rho) has modulus {}", m.modulus());
    assert!(m.equal(&star(&identity(), &mu3(&alpha(), &alpha(), &rho()))));

    for n in 1..=5 {
        let count = enumerate_trees(n, &[2, 3]).iter().filter(|t| t.leaves() == n).count();
        println!("trees with {n} leaves over arities 2, 3: {count}");
    }
    let r = freeness_probe(5, &alpha());
    println!("{} trees, pairwise distinct on (alpha, ..., alpha): {}", r.trees, r.passed());
    let r = freeness_probe(3, &identity());
    println!("on (Id, ..., Id) instead: {} collisions", r.collisions.len());
}
