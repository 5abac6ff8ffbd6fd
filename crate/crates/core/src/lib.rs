//! Projection-ramification maps of rational normal scrolls over prime fields.
//!
//! The map sends a projection of a scroll (or of the Veronese surface) to
//! its ramification divisor. This crate computes
//!
//! * the ramification coefficients, by Berkowitz determinant and by the
//!   differential formula ([`scroll`]),
//! * the degree of the map, by counting points of a random fiber with a
//!   Gröbner basis and checking consensus over several primes ([`degree`]),
//! * the rank of its differential, i.e. whether it has maximal variation
//!   ([`variation`]),
//! * Plücker degrees of Grassmannians through Pieri's rule ([`schubert`]).
//!
//! ```
//! let report = ramify::phi(&"2,2".parse().unwrap(), &ramify::DegreeConfig::default()).unwrap();
//! assert_eq!(report.degree, Some(2));
//! ```

pub mod degree;
pub mod error;
pub mod ff;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod rng;
pub mod schubert;
pub mod scroll;
pub mod special;
pub mod variation;

pub use error::{Error, FieldError, GeometryError, GroebnerError, PolyError};
pub use degree::{phi, veronese_degree, ChartKind, DegreeConfig, DegreeReport, TrialRecord};
pub use ff::{Fp, Prime, DEFAULT_PRIMES};
pub use groebner::Budget;
pub use schubert::plucker_degree;
pub use scroll::Partition;
pub use variation::{is_maximal_variation, RankConfig, RankReport, RankTrial};
