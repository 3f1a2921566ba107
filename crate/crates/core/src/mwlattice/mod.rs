//! Explicit Mordell-Weil lattices of elliptic curves over rational function
//! fields: the group law, the canonical-height doubling oracle, the two
//! built-in point families with their closed-form Gram matrices, lattice
//! rank/discriminant reports, and the visible-subgroup index computation.

mod curve;
mod height;
mod iso;
mod lattice;
mod noniso;

pub use curve::{FFEllipticCurve, FFPoint};
pub use height::{canonical_pairing, HeightOracle, DOUBLING_CAP};
pub use iso::{iso_extra_orbit, iso_extra_points, iso_family, iso_gram_closed, IsoFamily};
pub use lattice::{
    index_conjecture_check, iso_reference_discriminant, lattice_report, Gram, IndexReport,
    LatticeReport,
};
pub use noniso::{
    fiber_point_count, noniso_family, noniso_gram_closed, trace_gamma, NonisoFamily,
};
