//! Word transformations that preserve abelian closures.

pub mod flip;
pub mod morphism;
pub mod squeeze;
pub mod traffic;

pub use flip::{flip_last_two, flipping_family};
pub use morphism::{is_standard_morphism, is_sturmian_morphism, AdjacencyMatrix, BinaryMorphism, Decision};
pub use squeeze::{squeeze, squeeze_window, SqueezeMode, SqueezeParams};
pub use traffic::{iterate_f_until_isolated, preimages_f, traffic_f, traffic_t};
