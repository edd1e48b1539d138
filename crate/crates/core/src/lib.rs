pub mod arrangement;
pub mod circuits;
pub mod coreflow;
pub mod error;
pub mod exactmath;
pub mod expr;
pub mod field;
pub mod fixtures;
pub mod grobner;
pub mod regions;
pub mod rings;
pub mod subset;

pub use arrangement::{Arrangement, Hyperplane, ValidationReport};
pub use error::{Error, Result};
pub use exactmath::{RatVector, Rational};
pub use field::{Field, FieldKind, OrderedField, F2};
pub use subset::Subset;
pub use grobner::{GroebnerBasis, HilbertData, Ideal, Polynomial};
pub use rings::{Fingerprint, Presentation, RingKind, Verdict};

pub type PolyQ = Polynomial<Rational>;
pub type PolyF2 = Polynomial<F2>;
pub type IdealQ = Ideal<Rational>;
pub type IdealF2 = Ideal<F2>;
