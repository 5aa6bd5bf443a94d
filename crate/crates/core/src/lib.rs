//! Exact computer algebra for electrical Lie algebras of classical Dynkin
//! types: presentations, structure-constant tables, matrix representations,
//! and machine-checked certificates for the structural theorems.

pub mod cli;
pub mod closure;
pub mod dynkin;
pub mod exactla;
pub mod freelie;
pub mod reps;
pub mod verify;
