//! A laboratory for ω-powers of finitary languages.
//!
//! The crate covers the word-level machinery behind a family of languages
//! whose ω-powers sit at chosen levels of the Borel hierarchy:
//!
//! - [`words`]: alphabets, finite words, lasso (ultimately periodic) ω-words;
//! - [`eraser`]: back-space calculi with one or several eraser letters;
//! - [`automata`]: pushdown, one-counter and iterated-counter machines with a
//!   bounded breadth-first membership simulator;
//! - [`catalog`]: definitional membership predicates for every language;
//! - [`mupi`]: the coded transition system and the languages μ and π over
//!   the alphabet `{0,1,2,3}`;
//! - [`opower`]: bounded-block ω-power membership for lasso words;
//! - [`oracle`]: deliberately naive reference implementations used to
//!   cross-check everything above.

pub mod automata;
pub mod catalog;
pub mod eraser;
pub mod error;
pub mod mupi;
pub mod opower;
pub mod oracle;
pub mod words;

pub use catalog::LanguagePredicate;
pub use error::{Error, Result};
pub use words::{enumerate_words, Alphabet, LassoWord, Letter, Word};
