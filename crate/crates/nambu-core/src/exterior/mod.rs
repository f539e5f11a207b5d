//! Exterior algebra of multivector fields and differential forms over the
//! polynomial ring.

mod blade;
mod graded;
mod map;
mod ops;
mod schouten;

pub use blade::Blade;
pub use graded::{Co, Contra, Exterior, Form, MultiVector, Variance};
pub use map::{pushforward, CoordinateMap};
pub use ops::{contract, differential, exterior_derivative, interior, inverse_dual, volume_dual};
pub use schouten::{apply_vector, lie_derivative, lie_derivative_form, schouten};
