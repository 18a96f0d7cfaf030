pub mod catalog;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod limit;
pub mod morphism;
pub mod reproduce;
pub mod shuffle;
pub mod word;

pub use catalog::{get_entry, verify_catalog, Catalog, CatalogEntry, CompositionRule};
pub use error::{Error, Result};
pub use morphism::{Certificate, Morphism, Substitution, Verdict};
pub use shuffle::{ConductingSequence, PeriodicConductingSequence, ShuffleWitness};
pub use word::{SquareOccurrence, Word};
