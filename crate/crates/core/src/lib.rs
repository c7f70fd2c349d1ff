//! Constructive search for a prime in a maximal ideal of `Z[X]`, driven by a
//! membership oracle `M` and an inverse oracle `nu`.
//!
//! [`engine::maxzx`] returns either a prime `p` with `M(p)` true or evidence
//! that `(M, nu)` violates one of the conditions of an explicit maximal ideal,
//! together with a [`evidence::Certificate`] that
//! [`evidence::verify_certificate`] checks independently.

pub mod algebra;
pub mod cli;
pub mod engine;
pub mod evidence;
pub mod oracle;
pub mod parser;
