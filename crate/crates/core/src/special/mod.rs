//! Complex special functions underlying the exact triangle maps.
//!
//! Everything here is a pure function of its arguments: Weierstrass sigma
//! and p on the square lattice, Jacobi theta and elliptic functions,
//! complete and incomplete elliptic integrals, the incomplete Euler beta
//! integral, and the Gauss hypergeometric function.

mod elliptic;
mod gamma;
mod hyp;
mod jacobi;
mod theta;
mod weierstrass;

pub use elliptic::elliptic_f;
pub use gamma::{gamma, lgamma, GAMMA_QUARTER, GAMMA_SIXTH, GAMMA_THIRD};
pub use hyp::{gauss_2f1, incomplete_beta};
pub use jacobi::{elliptic_k, jacobi_sn_cn_dn};
pub use theta::{theta1_batch, Lattice};
pub use weierstrass::{weierstrass_p, weierstrass_p_prime, weierstrass_sigma};
