//! Special functions and random sampling primitives.

mod rng;
mod sample;
mod special;

pub use rng::RngStream;
pub use sample::{
    sample_beta, sample_binomial, sample_dirichlet, sample_gamma, sample_multinomial,
};
pub use special::{beta_quantile, log_beta, log_gamma, reg_inc_beta, std_normal_cdf};
