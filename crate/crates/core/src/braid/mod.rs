//! Classical braid groups and their word problem.

mod garside;
mod word;

pub use garside::{is_identity, normal_form, GarsideNF, Perm};
pub use word::BraidWord;
