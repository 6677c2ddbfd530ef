//! Seeded generators of random congruential maps and bijections.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::affine::AffinePiece;
use crate::map::CongruentialMap;

/// A random total map: piece `j` is `K·m + j ↦ x·m + y` with `x ≤ max_slope`
/// (possibly zero) and `y ≤ max_offset`.
pub fn random_map<R: Rng>(rng: &mut R, max_modulus: usize, max_slope: u32, max_offset: u32) -> CongruentialMap {
    let k = rng.gen_range(1..=max_modulus.max(1));
    let pieces = (0..k)
        .map(|j| AffinePiece::from_conway(k, j, rng.gen_range(0..=max_slope), rng.gen_range(0..=max_offset)))
        .collect();
    CongruentialMap::new(k, pieces).expect("Conway-form pieces are integral")
}

/// A random exact covering system of `parts` progressions `(step, offset)`,
/// grown by repeatedly splitting a progression in two or three.
pub fn random_cover<R: Rng>(rng: &mut R, parts: usize) -> Vec<(u64, u64)> {
    let mut cover = vec![(1u64, 0u64)];
    while cover.len() < parts {
        let idx = rng.gen_range(0..cover.len());
        let (s, t) = cover.swap_remove(idx);
        let q = if cover.len() + 3 <= parts && rng.gen_bool(0.3) { 3 } else { 2 };
        cover.extend((0..q).map(|i| (s * q, t + i * s)));
    }
    cover
}

/// A random bijection of ℕ: the classes mod `K` are sent, in shuffled order,
/// onto the progressions of a random exact covering system.
pub fn random_bijection<R: Rng>(rng: &mut R, max_modulus: usize) -> CongruentialMap {
    let k = rng.gen_range(1..=max_modulus.max(1));
    let mut cover = random_cover(rng, k);
    cover.shuffle(rng);
    let pieces = cover
        .iter()
        .enumerate()
        .map(|(j, &(s, t))| AffinePiece::from_conway(k, j, s, t))
        .collect();
    CongruentialMap::new(k, pieces).expect("cover pieces are integral").normalize()
}

/// A product of `factors` random bijections, for less regular domains.
pub fn random_bijection_product<R: Rng>(rng: &mut R, max_modulus: usize, factors: usize) -> CongruentialMap {
    (0..factors).fold(CongruentialMap::identity(), |acc, _| acc.compose(&random_bijection(rng, max_modulus)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn covers_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for parts in 1..12 {
            let cover = random_cover(&mut rng, parts);
            assert_eq!(cover.len(), parts);
            let l = cover.iter().fold(1u64, |a, &(s, _)| num_integer::lcm(a, s));
            let mut hits = vec![0; l as usize];
            for &(s, t) in &cover {
                for r in (t..l).step_by(s as usize) {
                    hits[r as usize] += 1;
                }
            }
            assert!(hits.iter().all(|&h| h == 1));
        }
    }

    #[test]
    fn generated_bijections_certify() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let f = random_bijection_product(&mut rng, 6, 2);
            assert!(f.is_bijection().is_ok(), "{f}");
        }
    }
}
