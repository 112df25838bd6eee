//! Text serialization of diagrams and generators for the standard families.

mod generators;
mod kdx;

pub(crate) use generators::l_family;
pub use generators::{gen_arnold_base, gen_d, gen_l, gen_random, gen_torus2, normalize, GenError};
pub use kdx::{parse, serialize, ParseError};
