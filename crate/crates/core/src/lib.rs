//! Exact computations in cyclotomic (Ariki-Koike) Hecke algebras and in the
//! torus fixed-point model of equivariant K-theory of Gieseker spaces.

pub mod rings;
pub mod combinatorics;
pub mod hecke;
pub mod report;
pub mod cache;
pub mod ktheory;
pub mod verify;
