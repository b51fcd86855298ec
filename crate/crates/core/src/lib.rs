//! Function-association toolkit: paired source/decompiled corpora, embedding
//! retrieval over an HTTP endpoint with a persistent cache, exact cosine
//! search pools, retrieval metrics, nonparametric model comparison, and a
//! contrastive linear adapter trained over frozen embeddings.

pub mod adapter;
pub mod corpus;
pub mod embed;
pub mod error;
pub mod metrics;
pub mod search;
pub mod signatures;
pub mod stats;

pub use embed::Role;
pub use error::{Error, Result};
