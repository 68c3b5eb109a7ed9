//! Seeded random streams.
//!
//! Every run owns one [`RngStream`], a ChaCha8 generator keyed by a 64-bit
//! seed. Independent sub-streams are derived with [`RngStream::fork`], which
//! selects a different ChaCha stream id under the same key, so no two
//! consumers ever share state.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// A fresh stream with the same seed and a distinct stream id.
    pub fn fork(&self, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(self.seed);
        inner.set_stream(stream.wrapping_add(1));
        RngStream {
            seed: self.seed,
            inner,
        }
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform in `[a, b]`.
    #[inline]
    pub fn uniform(&mut self, a: f64, b: f64) -> f64 {
        self.inner.gen_range(a..=b)
    }

    /// Uniform in `[-1, 1]`.
    #[inline]
    pub fn symmetric(&mut self) -> f64 {
        self.uniform(-1.0, 1.0)
    }

    /// Uniform integer in `[0, n)`. Panics if `n == 0`.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    /// Standard normal deviate.
    #[inline]
    pub fn normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RngStream::new(99);
        let mut b = RngStream::new(99);
        for _ in 0..64 {
            assert_eq!(a.unit().to_bits(), b.unit().to_bits());
            assert_eq!(a.index(1000), b.index(1000));
            assert_eq!(a.normal().to_bits(), b.normal().to_bits());
        }
    }

    #[test]
    fn forks_differ_from_parent_and_each_other() {
        let root = RngStream::new(5);
        let mut parent = root.clone();
        let mut f1 = root.fork(0);
        let mut f2 = root.fork(1);
        let a: Vec<u64> = (0..4).map(|_| parent.next_u64()).collect();
        let b: Vec<u64> = (0..4).map(|_| f1.next_u64()).collect();
        let c: Vec<u64> = (0..4).map(|_| f2.next_u64()).collect();
        assert_ne!(a, b);
        assert_ne!(b, c);
        assert_eq!(root.fork(1).next_u64(), c[0]);
    }

    #[test]
    fn ranges_hold() {
        let mut r = RngStream::new(1);
        for _ in 0..10_000 {
            let u = r.unit();
            assert!((0.0..1.0).contains(&u));
            let s = r.symmetric();
            assert!((-1.0..=1.0).contains(&s));
            let v = r.uniform(3.0, 4.0);
            assert!((3.0..=4.0).contains(&v));
            assert!(r.index(7) < 7);
        }
    }
}
