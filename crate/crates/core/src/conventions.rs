//! The sign and index conventions the engine is pinned to. The note's hash is
//! stamped into every report so results can be tied to a convention set.

use sha2::{Digest, Sha256};

pub const CONVENTIONS_NOTE: &str = "\
Clifford: gamma_a gamma_b + gamma_b gamma_a = -2 delta_ab, built by doubling from \
gamma_1 = diag(i, -i), gamma_2 = [[0, 1], [-1, 0]]; c(X) = sum_a X_a gamma_a.
Curvature: R_abcd is the algebraic curvature tensor with R_abab > 0 on the round sphere; \
unit sphere R_abcd = delta_ac delta_bd - delta_ad delta_bc.
Ricci: Ric_bd = sum_a R_abad; scalar s = sum_b Ric_bb. The other common contraction \
flips the global sign of Ric and s.
Curvature bivector in the product expansion: the printed R_jpst is read as \
<R(e_j, e_p) e_s, e_t> = R_jpts in the convention above.
Spin connection: omega_st(e_p) vanishes at x0 with first derivative \
d_j omega_st(e_p) = (1/2) R_jpst, so sigma_0(D_t) has x-linear part \
x_j (-(1/8) sum R_jpst gamma_p gamma_s gamma_t + t c(d_j Y)).
Laplace inverse symbols: transcribed with m -> p; the |Y|^2 term is p (T_a T_a - T_aa) \
with T_a T_a = +t^2 |Y|^2, as the exact constant-coefficient expansion requires.
Units: densities are reported in units of 2^m Vol(S^{n-1}).
Einstein constant: at t = 0 the density equals kappa G(v, w) with kappa = -1/6 for \
vector fields; the one-form formula carries +1/6.
";

/// Hex SHA-256 of [`CONVENTIONS_NOTE`].
pub fn note_hash() -> String {
    hex::encode(Sha256::digest(CONVENTIONS_NOTE.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_stable_hex() {
        let h = note_hash();
        assert_eq!(h.len(), 64);
        assert_eq!(h, note_hash());
    }
}
