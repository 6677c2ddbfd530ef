//! The associator alpha = lambda rho^-1: its formula, the pentagon, and the
//! shape of its orbits.
//!
//!     cargo run --example associator

use num_bigint::BigUint;

use congruential::catalogue::{alpha, identity, lambda, rho};
use congruential::diagram::{build_k3, build_k3_with_associator, check_commutes};
use congruential::orbit::{self, OrbitOptions};
use congruential::{check_pentagon, star};

fn main() {
    let a = lambda().compose(&rho().inverse().unwrap());
    println!("lambda rho^-1 normalises to\n{a}");
    assert!(a.equal(&alpha()));

    let id = identity();
    let rhs = star(&a, &id).compose(&a).compose(&star(&id, &a));
    println!("alpha^2 at modulus {}, (alpha*Id) alpha (Id*alpha) at modulus {}", a.compose(&a).modulus(), rhs.modulus());
    println!("pentagon holds: {}", check_pentagon());

    let k3 = build_k3();
    println!("K3: {} and {}", k3.describe_edge(0), k3.describe_edge(1));
    println!("closing K3 with alpha commutes: {}", check_commutes(&build_k3_with_associator(), 3).commutes());

    // Under alpha^-1 odd numbers climb and even numbers fall, so an orbit
    // falls to a single minimum and then climbs for ever.
    let inv = alpha().inverse().unwrap();
    println!("alpha^-1 on 0..16: {:?}", (0..16).map(|n| inv.eval_u64(n)).collect::<Vec<_>>());
    println!("step facts up to 10^4: {}", orbit::verify_alpha_orbit_structure(10_000).passed());
    for seed in [5u32, 12, 100] {
        let rec = orbit::orbit(&inv, &BigUint::from(seed), &OrbitOptions::steps(60).storing_values());
        let vals: Vec<String> = rec.values.as_ref().unwrap().iter().take(12).map(ToString::to_string).collect();
        println!("alpha^-1 orbit of {seed}: {} ...; local minima {}", vals.join(" "), rec.minima().count());
    }
}
