//! Parameter sets shared by the benchmarks.

use singular_eig_core::PucciParams;

pub fn laplacian3() -> PucciParams {
    PucciParams::laplacian(3).expect("valid parameters")
}

pub fn pucci125() -> PucciParams {
    PucciParams::new(1.0, 2.0, 5).expect("valid parameters")
}
