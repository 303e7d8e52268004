pub mod error;
pub mod hypergraph;
pub mod filtration;
pub mod lp;
pub mod monomial;
pub mod nu;
pub mod polyhedra;
pub mod rational;
pub mod text;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use monomial::{Monomial, MonomialIdeal};
