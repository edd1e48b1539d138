//! Graded polynomial arithmetic over any [`Field`](crate::Field), Buchberger's
//! algorithm, and the ideal operations built on it, together with a dense
//! linear-algebra oracle that uses no Gröbner bases.

mod buchberger;
mod hilbert;
mod ideal;
mod monomial;
mod poly;

pub use buchberger::{buchberger, reduce, GroebnerBasis, DEFAULT_PAIR_CAP};
pub use hilbert::{monomial_numerator, HilbertData};
pub use ideal::{substitute, substitute_poly, Ideal, DENSE_MONOMIAL_CAP};
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use poly::Polynomial;
