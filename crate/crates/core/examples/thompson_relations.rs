//! Thompson's group F inside the congruential bijections.
//!
//!     cargo run --example thompson_relations

use congruential::thompson::{check_brown_conjugation, check_relations, star_word};
use congruential::{eval_word, generator, words_equal, GroupWord};

fn main() {
    for j in 0..5 {
        println!("X_{j}: modulus {}", generator(j).modulus());
    }
    println!("X_2:\n{}", generator(2));

    let report = check_relations(6);
    println!("X_i^-1 X_j X_i = X_(j+1) for i < j <= 6: {} checked, {} failures", report.checked, report.failures.len());

    let u: GroupWord = "x0' x1 x0".parse().unwrap();
    let v: GroupWord = "x2".parse().unwrap();
    println!("{u} = {v}: {}", words_equal(&u, &v));
    let w: GroupWord = "x1 x0 x1'".parse().unwrap();
    println!("{w} = {v}: {}", words_equal(&w, &v));
    if let Some(n) = eval_word(&w).witness_difference(&eval_word(&v)) {
        println!("  separated at n = {n}");
    }

    // F is closed under the conjunction
    let (a, b, c): (GroupWord, GroupWord, GroupWord) = ("x0 x1'".parse().unwrap(), "x2".parse().unwrap(), "x1' x0'".parse().unwrap());
    println!("({a}) * ({b}) is the word {}", star_word(&a, &b).free_reduce());
    let r = check_brown_conjugation(&a, &b, &c);
    println!("(a*b)*c = X_0 (a*(b*c)) X_0^-1: {}; words for the stars evaluate correctly: {}", r.conjugation, r.closure);
}
