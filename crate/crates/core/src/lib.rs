pub mod error;
pub mod graph;
pub mod space;
pub mod word;
pub mod automaton;
pub mod classify;
pub mod covers;
pub mod dot;
pub mod fingroupoid;
pub mod format;
pub mod group;
pub mod hfiber;
pub mod presentation;
pub mod quotients;
pub mod suite;
pub mod verdict;

pub use error::{Error, Result};
pub use graph::{Dart, EdgeImage, FinGraph, GraphMap};
pub use verdict::Verdict;
pub use word::Word;
