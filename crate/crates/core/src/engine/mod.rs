//! Noncommutative rewriting over `Q(q)`: presentations, completion and
//! normal forms.

mod element;
mod oracle;
mod presentation;
mod rewriting;

pub use element::{concat, Element, Letter, Word};
pub use oracle::{bruteforce_dimension, bruteforce_dimension_with_limit, DEFAULT_WORD_LIMIT};
pub use presentation::{Generator, Presentation, Relation, WordOrder};
pub use rewriting::{
    complete, orient, orient_element, Budget, Certainty, CompletedSystem, Rule, Status, Trace,
};
