//! Brute-force reference for two-qubit discord.
//!
//! Deliberately shares nothing with the library beyond the input matrix:
//! the joint spectrum comes from nalgebra, branch states are built from the
//! Bloch decomposition `tr_X[(I (x) sigma_k) rho]`, and 2x2 entropies are
//! closed form. Minimization is an exhaustive 0.1 degree grid.

use nalgebra::{Complex, Matrix4};
use num_complex::Complex64;
use rayon::prelude::*;

pub type Entries = [[Complex64; 4]; 4];

const STEP_DEG: f64 = 0.1;

fn h(x: f64) -> f64 {
    if x > 1e-15 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Entropy of the (possibly unnormalized) Hermitian 2x2 block, plus
/// `p log p` so that the result is `p H(block / p)`.
fn weighted_entropy_2x2(a: f64, d: f64, b: Complex64) -> f64 {
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let p = a + d;
    h(mean + radius) + h(mean - radius) - h(p)
}

fn joint_entropy(m: &Entries) -> f64 {
    let mat = Matrix4::from_fn(|i, j| Complex::new(m[i][j].re, m[i][j].im));
    mat.symmetric_eigenvalues().iter().map(|&l| h(l)).sum()
}

/// Swap the tensor factors: `(s, x) -> (x, s)` for index `2 s + x`.
pub fn swap_parties(m: &Entries) -> Entries {
    let perm = [0, 2, 1, 3];
    let mut out = *m;
    for i in 0..4 {
        for j in 0..4 {
            out[perm[i]][perm[j]] = m[i][j];
        }
    }
    out
}

/// `tr_X[(I (x) O) rho]` for a 2x2 operator `O` on the second factor.
fn reduce_first(m: &Entries, o: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for s in 0..2 {
        for t in 0..2 {
            for x in 0..2 {
                for y in 0..2 {
                    out[s][t] += o[x][y] * m[2 * s + y][2 * t + x];
                }
            }
        }
    }
    out
}

fn pauli() -> [[[Complex64; 2]; 2]; 4] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        [[one, z], [z, one]],
        [[z, one], [one, z]],
        [[z, -i], [i, z]],
        [[one, z], [z, -one]],
    ]
}

/// Conditional entropy `H(first | second)` from the joint spectrum.
pub fn conditional_entropy(m: &Entries) -> f64 {
    let rx = reduce_second_marginal(m);
    joint_entropy(m) - weighted_entropy_2x2(rx[0][0].re, rx[1][1].re, rx[0][1])
}

fn reduce_second_marginal(m: &Entries) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            out[x][y] = m[x][y] + m[2 + x][2 + y];
        }
    }
    out
}

pub struct OracleMin {
    pub value: f64,
    pub theta_deg: f64,
    pub phi_deg: f64,
}

/// `min_n sum_k p_k H(first | k)` with the second factor measured along `n`.
pub fn semiclassical_min(m: &Entries) -> OracleMin {
    // Branch block for outcome +-1 is (A +- sum_k n_k B_k) / 2, with A the
    // first marginal and B_k = tr_2[(I (x) sigma_k) rho].
    let blocks: Vec<_> = pauli().iter().map(|&o| reduce_first(m, o)).collect();
    let diag = |k: usize| (blocks[k][0][0].re, blocks[k][1][1].re);
    let (a0, d0) = diag(0);
    let b0 = blocks[0][0][1];
    let bloch: Vec<(f64, f64, Complex64)> = (1..4)
        .map(|k| (blocks[k][0][0].re, blocks[k][1][1].re, blocks[k][0][1]))
        .collect();
    let n_theta = (90.0 / STEP_DEG).round() as usize;
    let n_phi = (360.0 / STEP_DEG).round() as usize;
    let trig: Vec<(f64, f64)> = (0..n_phi)
        .map(|b| (b as f64 * STEP_DEG).to_radians().sin_cos())
        .collect();
    let eval = |n: [f64; 3]| {
        let (mut da, mut dd, mut db) = (0.0, 0.0, Complex64::new(0.0, 0.0));
        for (k, &(a, d, b)) in bloch.iter().enumerate() {
            da += n[k] * a;
            dd += n[k] * d;
            db += n[k] * b;
        }
        weighted_entropy_2x2(0.5 * (a0 + da), 0.5 * (d0 + dd), 0.5 * (b0 + db))
            + weighted_entropy_2x2(0.5 * (a0 - da), 0.5 * (d0 - dd), 0.5 * (b0 - db))
    };
    // n and -n give the same projector pair, so the upper hemisphere suffices.
    (0..=n_theta)
        .into_par_iter()
        .map(|a| {
            let theta_deg = a as f64 * STEP_DEG;
            let (st, ct) = theta_deg.to_radians().sin_cos();
            let phis = if a == 0 { 1 } else { n_phi };
            (0..phis)
                .map(|b| {
                    let (sp, cp) = trig[b];
                    OracleMin {
                        value: eval([st * cp, st * sp, ct]),
                        theta_deg,
                        phi_deg: b as f64 * STEP_DEG,
                    }
                })
                .min_by(|x, y| x.value.total_cmp(&y.value))
                .unwrap()
        })
        .min_by(|x, y| x.value.total_cmp(&y.value))
        .unwrap()
}

/// `delta(S|X)` for entries in S⊗X order.
pub fn discord_s_given_x(m: &Entries) -> f64 {
    semiclassical_min(m).value - conditional_entropy(m)
}

/// `delta(X|S)` for entries in S⊗X order.
pub fn discord_x_given_s(m: &Entries) -> f64 {
    discord_s_given_x(&swap_parties(m))
}

/// `I(S:X) = H(S) + H(X) - H(SX)`.
pub fn mutual_information(m: &Entries) -> f64 {
    let rx = reduce_second_marginal(m);
    let rs = reduce_second_marginal(&swap_parties(m));
    weighted_entropy_2x2(rx[0][0].re, rx[1][1].re, rx[0][1])
        + weighted_entropy_2x2(rs[0][0].re, rs[1][1].re, rs[0][1])
        - joint_entropy(m)
}
