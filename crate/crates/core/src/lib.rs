pub mod abelian;
pub mod error;
pub mod family;
pub mod quadratic;
pub mod spec;
pub mod structure;
pub mod suites;
pub mod sturmian;
pub mod transforms;
pub mod word;

pub use error::{Error, Result};
pub use quadratic::{QuadraticNumber, Slope};
pub use spec::InfiniteWordSpec;
pub use word::FiniteWord;
