//! The original Collatz bijection, its reduced form, and what can be decided
//! about them exactly.
//!
//!     cargo run --example collatz_bijections

use num_bigint::BigUint;

use congruential::catalogue::{lambda, rho};
use congruential::orbit::{self, OrbitOptions, Outcome};
use congruential::solve_agreement;

fn main() {
    let (rho, lambda) = (rho(), lambda());
    println!("rho:\n{rho}");

    let cert = rho.is_bijection().expect("rho is a bijection");
    let images: Vec<String> = cert.progressions.iter().map(ToString::to_string).collect();
    println!("image of the three classes: {} (an exact cover)", images.join(", "));
    println!("rho^-1:\n{}", rho.inverse().unwrap());

    println!("first values of rho: {:?}", (0..12).map(|n| rho.eval_u64(n)).collect::<Vec<_>>());

    // lambda is rho conjugated by the successor map
    let r = orbit::verify_succ_naturality(20, 200);
    println!("lambda^k(n) + 1 = rho^k(n + 1) for k <= 20, n <= 200: {}", r.passed());
    println!("lambda and rho agree exactly on {}", solve_agreement(&lambda, &rho));

    for seed in 0u32..10 {
        let rec = orbit::orbit(&rho, &BigUint::from(seed), &OrbitOptions::steps(10_000));
        match rec.outcome {
            Outcome::Cycle { .. } => {
                let cycle = orbit::cycle_values(&rho, &rec).unwrap();
                println!("orbit of {seed}: cycle {:?}", cycle.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            Outcome::Open { .. } => println!(
                "orbit of {seed}: no repetition in {} steps, now {} bits, {} local minima",
                rec.steps,
                rec.last_value.bits(),
                rec.minima().count()
            ),
        }
    }
}
