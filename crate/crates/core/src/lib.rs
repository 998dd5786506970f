//! Exact symbolic arithmetic for pseudoalgebras over `H = U(δ)`.

pub mod catalog;
pub mod error;
pub mod pseudo;
pub mod lie;
pub mod rational;
pub mod solver;
pub mod tensor;
pub mod uea;
pub mod verify;

pub use error::{Error, Result};
pub use lie::{DeltaVector, LieAlgebra};
pub use pseudo::{check_axiom, compose, defect, pseudo_product, Axiom, AxiomReport, ModuleElement, ProductTable, PseudoEl, PseudoEl2, PseudoEl3, Side};
pub use rational::Rational;
pub use tensor::{Direction, GaloisForm, LiftMode, Perm, Tensor, T2, T3};
pub use uea::{MultiIndex, UEl};
