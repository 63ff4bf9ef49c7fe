//! Local singularity models and the example corpus.

mod corpus;
mod local;

pub use corpus::{corpus, corpus_entry, parse_entry, CorpusEntry};
pub use local::{gamma_family_frames, umbrella_frames, GammaFrames, LocalModel, UmbrellaSample, GAMMA_HALF_WIDTH};
