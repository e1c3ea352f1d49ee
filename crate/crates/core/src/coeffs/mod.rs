//! Exact scalars: Laurent polynomials in half-parameters, finite fields, and the
//! monomial model of `Z̄_p` (uniformizer `p`).

pub mod field;
pub mod laurent;
pub mod padic;
pub mod ring;

pub use field::{FiniteField, Gf};
pub use laurent::{Exps, HalfLaurent};
pub use padic::{Padic, PadicRing};
pub use ring::{Rationals, Ring, Specialization};
