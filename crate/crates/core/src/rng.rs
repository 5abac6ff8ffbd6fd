//! Seeded, splittable randomness. Every randomized computation takes a
//! `(seed, stream)` pair so results replay exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ff::{Fp, Prime};

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_elem<R: Rng>(rng: &mut R, p: Prime) -> Fp {
    Fp::new(rng.gen_range(0..p.get()) as i64, p)
}

pub fn random_nonzero<R: Rng>(rng: &mut R, p: Prime) -> Fp {
    Fp::new(rng.gen_range(1..p.get()) as i64, p)
}

pub fn random_vec<R: Rng>(rng: &mut R, p: Prime, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p.get())).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, p: Prime, rows: usize, cols: usize) -> Vec<Vec<u32>> {
    (0..rows).map(|_| random_vec(rng, p, cols)).collect()
}
