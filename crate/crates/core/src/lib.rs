//! Optical modes of a Fabry-Pérot cavity holding two identical, movable
//! dielectric membranes.
//!
//! The crate covers the whole chain from a single membrane's scattering
//! coefficients to the single-photon optomechanical coupling of the
//! membranes' relative motion:
//!
//! * [`membrane`]: complex reflection/transmission of a lossless slab.
//! * [`cavity`]: cavity geometry and the shared propagation phasors.
//! * [`transfer`]: intracavity field amplitudes, closed-form transmission and
//!   its quadratic decomposition.
//! * [`modes`]: exact resonances plus zeroth/first-order shift formulas.
//! * [`coupling`]: couplings `g_q`, `g_Q`, saturation cap, cooperativity.
//! * [`finesse`]: Lorentzian linewidth, closed-form finesse, `κ`, `g/κ`.
//! * [`scan`] and [`config`]: parameter sweeps, presets and file formats
//!   used by the `cavimode` binary.
//!
//! All quantities are SI: wavenumbers in m⁻¹, lengths in m, angular
//! frequencies in rad/s.

pub mod cavity;
pub mod config;
pub mod constants;
pub mod coupling;
pub mod error;
pub mod finesse;
pub mod membrane;
pub mod modes;
pub mod numeric;
pub mod scan;
pub mod transfer;

pub use cavity::CavityConfig;
pub use coupling::{Coordinate, CouplingReport, MechanicalSpec};
pub use error::{CavityError, Result};
pub use finesse::FinesseReport;
pub use membrane::{MembraneCoefficients, MembraneSpec};
pub use modes::{Method, ModeSolution, ShiftFunctionParts};
pub use transfer::{DenominatorParts, FieldSolution};
