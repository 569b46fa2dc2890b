//! Mod 2 homology of infinite loop spaces: Dyer-Lashof normal forms, the dual
//! Steenrod action, component calculus on `QS^{-k}` and the classical-space
//! atlas.

pub mod atlas;
pub mod components;
pub mod desusp;
pub mod element;
pub mod engine;
pub mod error;
pub mod expr;
pub mod f2;
pub mod hopf;
pub mod linalg;
pub mod pi0;
pub mod predicates;
pub mod scalar;
pub mod seq;
pub mod space;
pub mod steenrod;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Prime;
pub use seq::{Excess, Seq};
pub use space::{BaseMonomial, Discipline, SpacePresentation};
pub use element::{Atom, Element, Monomial, Root};
pub use engine::{Context, Engine};
pub use pi0::Pi0Spec;
