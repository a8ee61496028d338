#![allow(dead_code)]

pub mod oracle;

use qdiscord::{DensityMatrix, Ordering};
use rand::rngs::StdRng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Row-major entries in S⊗X order, whatever the state's own ordering.
pub fn sx_entries(rho: &DensityMatrix<f64>) -> [[num_complex::Complex64; 4]; 4] {
    let m = rho.reordered(Ordering::SX).unwrap();
    let mut out = [[num_complex::Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z = m.matrix()[(i, j)];
        }
    }
    out
}
