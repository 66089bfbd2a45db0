pub mod bform;
pub mod cartan;
pub mod freealg;
pub mod kashiwara;
pub mod linalg;
pub mod omega;
pub mod scalars;
pub mod schur;
pub mod suite;
pub mod verma;

pub use cartan::{load_cartan, CartanData, CartanType};
pub use freealg::{Element, Letter, Weight, Word};
pub use scalars::{Coefficient, Scalar, ScalarError};
