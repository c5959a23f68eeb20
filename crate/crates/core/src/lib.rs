//! Operated polynomial identities on bracketed words with the operators `D`
//! and `P`: monomial orders, rewriting, Gröbner-Shirshov checks, completion
//! and normal-word bases.

pub mod algebra;
pub mod ambiguity;
pub mod basis;
pub mod enumerate;
pub mod error;
pub mod opi;
pub mod order;
pub mod poly;
pub mod rewrite;
pub mod syntax;
pub mod template;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use opi::{catalog, Opi, OpiSystem};
pub use poly::{Coeff, Poly};
pub use rewrite::{normal_form, Reducer, RuleSet};
pub use syntax::Alphabet;
pub use word::{Letter, Mode, Operator, StarContext, Word};
