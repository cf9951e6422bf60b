//! Points, lines and zeta functions of cubic hypersurfaces over finite fields.

pub mod bsd;
pub mod error;
pub mod fermat;
pub mod geometry;
pub mod gf;
pub mod json;
pub mod nodal;
pub mod search;
pub mod weil;
pub mod zeta;

pub use error::{Error, Result};
