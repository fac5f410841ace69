//! Executable codecs: basic unification, chunking-with-codes,
//! schema-plus-correction and run-length coding.

mod chunk;
mod rle;
mod schema;
mod stream_file;

pub use chunk::{
    chunk_decode, chunk_encode, discover_chunks, unify_basic, Chunk, ChunkDictionary, EncodedStream, StreamToken,
    Unified,
};
pub use rle::{elias_gamma_bits, rle_cost, rle_decode, rle_encode, Run, RunCount};
pub use schema::{Corrections, Schema, SchemaElement, Slot};
pub use stream_file::{RleFile, StreamFile};

use thiserror::Error;

use crate::pattern::PatternError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("chunk does not occur in the corpus")]
    NotPresent,
    #[error("unknown code {0:?}")]
    UnknownCode(String),
    #[error("an unbounded run cannot be decoded")]
    NotDecodable,
    #[error("bad correction: {0}")]
    BadCorrection(String),
    #[error("instance does not match schema {0:?}")]
    NoSchemaMatch(String),
    #[error("instance matches schema {0:?} in more than one way")]
    AmbiguousInstance(String),
    #[error("invalid schema: {0}")]
    InvalidSchema(String),
    #[error("malformed stream: {0}")]
    Format(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}
