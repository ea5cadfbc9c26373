//! Vénéreau-type polynomials `h = y + x·Q(x, v, w)` in `k[x][y, z, u]` and
//! exact checks of their coordinate properties.

mod checks;
mod family;
mod spec;

pub use checks::{
    check_fibers, check_jacobian, check_localized, check_residual, default_fiber_samples, LocalizedCheck,
    LocalizedWitnesses,
};
pub use family::{family, family_with, Family};
pub use spec::{q_context, spec_context, VenereauSpec, WConvention};
