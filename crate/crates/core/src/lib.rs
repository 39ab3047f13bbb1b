//! Knot shadows, diagram statistics, HOMFLY polynomials and exhaustive
//! fertility search over a prime-knot table.

pub mod codes;
pub mod diagram;
pub mod error;
pub mod fertility;
pub mod knotbase;
pub mod polynomial;

pub use codes::{parse_shadow, DoubleOccurrenceWord, Shadow, ShadowStats};
pub use diagram::{Diagram, DiagramStats, LinkDiagram};
pub use error::{Error, Result};
pub use knotbase::{Fingerprint, KnotBase, KnotRecord};

pub use polynomial::{HomflyEngine, Laurent2};
