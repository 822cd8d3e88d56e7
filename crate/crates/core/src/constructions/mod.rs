//! Explicit families: oscillating (sawtooth) boundaries whose arc length
//! homogenizes to a weight, the oscillatory instability maps `g_n`, and the
//! sharpness weights `Θ_n`.

mod instability;
mod sawtooth;
mod sharpness;
mod star;

pub use instability::{instability_map, p_function, p_inverse, InstabilityMap};
pub use sawtooth::{
    measure_pairing, oscillating_domain, oscillating_domain_with, sawtooth, smoothed_sawtooth,
    OscillationOptions, ToothProfile, ROUNDING,
};
pub use sharpness::{sharpness_weight, SharpnessWeight};
pub use star::{StarBoundary, StarKind};
