//! Exact basket calculus for terminal weak Q-Fano threefolds: Reid's
//! plurigenus formula, packings, the canonical unpacking sequence, inversion
//! of anti-plurigenera into level data, and an exhaustive constrained search
//! over formal baskets.

pub mod basket;
pub mod canonical;
pub mod enumerate;
pub mod error;
pub mod packing;
pub mod rational;
pub mod riemann_roch;
pub mod solver;
pub mod table_a;

pub use basket::{parse_basket, Basket, Pair};
pub use enumerate::{enumerate, min_volume, verify_theorems, EnumerationReport, SearchConfig};
pub use error::{Error, Result};
pub use rational::Rational;
pub use riemann_roch::{ConstraintFlags, FormalBasket, InvariantReport};
