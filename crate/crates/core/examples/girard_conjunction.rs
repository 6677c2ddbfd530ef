//! Girard's conjunction a * b: a on the evens, b on the odds.
//!
//!     cargo run --example girard_conjunction

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use congruential::catalogue::{self, alpha, identity, lambda, rho};
use congruential::random::random_bijection_product;
use congruential::{check_naturality, star};

fn main() {
    let ia = star(&identity(), &alpha()).normalize();
    println!("Id * alpha:\n{ia}");
    assert_eq!(ia, catalogue::id_star_alpha());
    println!("alpha * Id:\n{}", star(&alpha(), &identity()).normalize());

    let (f, g, h, k) = (rho(), lambda(), alpha(), rho().inverse().unwrap());
    let lhs = star(&f, &g).compose(&star(&h, &k));
    let rhs = star(&f.compose(&h), &g.compose(&k));
    println!("(f*g)(h*k) = (fh)*(gk): {}", lhs.equal(&rhs));

    // alpha is natural: alpha (f*(g*h)) = ((f*g)*h) alpha
    let fixtures = catalogue::fixtures();
    let mut natural = 0;
    for (_, f) in &fixtures {
        for (_, g) in &fixtures {
            for (_, h) in &fixtures {
                natural += check_naturality(f, g, h) as usize;
            }
        }
    }
    println!("naturality on the catalogue: {natural}/{}", fixtures.len().pow(3));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let maps: Vec<_> = (0..3).map(|_| random_bijection_product(&mut rng, 6, 2)).collect();
    println!("a random triple (moduli {}, {}, {}):", maps[0].modulus(), maps[1].modulus(), maps[2].modulus());
    println!("  natural: {}", check_naturality(&maps[0], &maps[1], &maps[2]));
}
