//! Multi-level transfer translation of romanized Japanese into English.
//!
//! The pipeline runs analyzer, rewriter, transfer and generator in turn.
//! Transfer patterns live at three levels (idiomatic, valency, general)
//! and the most specific match wins; slot constraints refer to a
//! semantic-category hierarchy. [`harness`] ties the stages together.
//!
//! ```
//! use mltransfer::harness::{translate_document, Dictionaries};
//!
//! let dicts = Dictionaries::builtin();
//! let out = translate_document(&dicts, "kare-wa isu-ni koshi-o kaketeiru.");
//! assert_eq!(out.text, "He is sitting down on a chair.");
//! ```

pub mod analyzer;
pub mod generator;
pub mod harness;
pub mod lexicon;
pub mod ontology;
pub mod patterns;
pub mod rewriter;
pub mod transfer;

pub use harness::{translate_document, Dictionaries, DocumentTranslation, Session, Trace, TraceEvent};
