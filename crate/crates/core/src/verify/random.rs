//! Seeded random geometries for campaigns and property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{PointGeometry, RiemannTensor, VectorJet};
use crate::scalar::{rat, Rational};

/// Shape of the random data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomOptions {
    /// Bound on numerators and denominators of every entry.
    pub magnitude: i64,
    /// Zero Jacobians for `v`, `w` and `Y`.
    pub constant_fields: bool,
    /// Set `Y` to zero.
    pub zero_y: bool,
}

impl Default for RandomOptions {
    fn default() -> Self {
        Self { magnitude: 3, constant_fields: false, zero_y: false }
    }
}

/// Number of Kulkarni–Nomizu squares summed into the curvature tensor.
pub const KN_SQUARES: usize = 3;

pub(crate) fn rational(rng: &mut ChaCha8Rng, magnitude: i64) -> Rational {
    let mag = magnitude.max(1);
    rat(rng.random_range(-mag..=mag), rng.random_range(1..=mag))
}

fn symmetric(rng: &mut ChaCha8Rng, n: usize, magnitude: i64) -> Vec<Vec<Rational>> {
    let mut p = vec![vec![rat(0, 1); n]; n];
    for a in 0..n {
        for b in a..n {
            let x = rational(rng, magnitude);
            p[a][b] = x.clone();
            p[b][a] = x;
        }
    }
    p
}

fn jet(rng: &mut ChaCha8Rng, n: usize, magnitude: i64, constant: bool) -> VectorJet {
    let value = (0..n).map(|_| rational(rng, magnitude)).collect();
    let jacobian = (0..n)
        .map(|_| (0..n).map(|_| if constant { rat(0, 1) } else { rational(rng, magnitude) }).collect())
        .collect();
    VectorJet { value, jacobian }
}

/// Deterministic in `(m, seed, options)`; the curvature tensor always
/// satisfies every symmetry and the first Bianchi identity.
pub fn random_geometry_with(m: usize, seed: u64, options: &RandomOptions) -> PointGeometry {
    let n = 2 * m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut riemann = RiemannTensor::zero(n);
    for _ in 0..KN_SQUARES {
        let p = symmetric(&mut rng, n, options.magnitude);
        riemann = riemann.sum(&RiemannTensor::kulkarni_nomizu_square(&p));
    }
    let v = jet(&mut rng, n, options.magnitude, options.constant_fields);
    let w = jet(&mut rng, n, options.magnitude, options.constant_fields);
    let mut y = jet(&mut rng, n, options.magnitude, options.constant_fields);
    if options.zero_y {
        y = VectorJet::zero(n);
    }
    PointGeometry { m, riemann, v, w, y }
}

pub fn random_geometry(m: usize, seed: u64, magnitude: i64) -> PointGeometry {
    random_geometry_with(m, seed, &RandomOptions { magnitude, ..RandomOptions::default() })
}
