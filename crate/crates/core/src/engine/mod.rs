//! Distribution machinery for uniform order statistics.

pub mod beta;
pub mod joint;
pub mod quadrature;
pub mod spacings;

pub use beta::{beta_cdf, beta_cdf_below, beta_quantile, beta_sf, beta_sf_at_least, BetaParams};
pub use joint::joint_rect_prob;
pub use spacings::{sample_spacings, SpacingDraw};
