//! Client for the ChEMBL web services over a pluggable transport.

mod client;
pub mod endpoints;
mod error;
pub mod fixtures;
mod model;
pub mod transport;

pub use client::{order_hits, ChemblClient, ClientSettings, Listing, SimilarByName, TissueField, TissueKey};
pub use error::{ChemblError, DecodeError, TransportError};
pub use fixtures::FixtureStore;
pub use model::{
    is_inchi_key, ChemblId, DrugIndicationRecord, MoleculeRecord, SimilarityHit, TargetRecord, TissueRecord,
};
pub use transport::{
    CachingTransport, LiveTransport, RecordingTransport, ReplayTransport, Transport, TransportRequest,
    TransportResponse,
};
