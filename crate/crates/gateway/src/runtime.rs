//! Builds the engine described by a [`Config`].

use std::sync::Arc;

use anyhow::{Context, Result};
use atreya_core::casual::{load_patterns, PatternBook};
use atreya_core::chembl::{
    CachingTransport, ChemblClient, ClientSettings, FixtureStore, LiveTransport, RecordingTransport, ReplayTransport,
    Transport,
};
use atreya_core::credential::{Credential, CredentialError};
use atreya_core::dialog::{ChemblBackend, DialogEngine};

use crate::config::{Config, Mode};

/// Stand-in credential for the terminal REPL and the recorder, which are
/// local surfaces with no chat transport to authenticate against.
pub const LOCAL_TOKEN: &str = "local-terminal-session";

pub struct Runtime {
    pub engine: Arc<DialogEngine>,
    pub mode: Mode,
    /// Outcome of the startup credential check and service probe.
    pub ready: Result<(), String>,
    pub fixtures: Option<Arc<FixtureStore>>,
    /// The transport under the engine, for callers needing a second client.
    pub transport: Arc<dyn Transport>,
}

/// A transport plus the fixture store behind it, when there is one.
pub type TransportParts = (Arc<dyn Transport>, Option<Arc<FixtureStore>>);

pub fn build_transport(config: &Config) -> Result<TransportParts> {
    Ok(match config.mode {
        Mode::Live => {
            let live = LiveTransport::new(&config.base_url, config.rate_limit)?;
            (Arc::new(CachingTransport::new(live)), None)
        }
        Mode::Replay => {
            let store = Arc::new(
                FixtureStore::open(&config.fixture_dir)
                    .with_context(|| format!("opening fixture store {}", config.fixture_dir.display()))?,
            );
            let replay = ReplayTransport::new(store.clone());
            (Arc::new(CachingTransport::new(replay)), Some(store))
        }
        Mode::Record => {
            let store = Arc::new(
                FixtureStore::create(&config.fixture_dir)
                    .with_context(|| format!("creating fixture store {}", config.fixture_dir.display()))?,
            );
            let live = LiveTransport::new(&config.base_url, config.rate_limit)?;
            let recording = RecordingTransport::new(live, store.clone());
            (Arc::new(CachingTransport::new(recording)), Some(store))
        }
    })
}

pub fn pattern_book(config: &Config) -> Result<PatternBook> {
    match &config.pattern_book {
        None => Ok(PatternBook::default_book()),
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            load_patterns(&text).with_context(|| format!("loading {}", path.display()))
        }
    }
}

pub fn client_settings(config: &Config) -> ClientSettings {
    ClientSettings {
        page_size: config.page_size,
        max_records: config.max_records,
        default_threshold: config.similarity_threshold,
    }
}

/// Wires transport, client, backend and dialog engine, then runs the
/// startup check: credential first, then a ChEMBL (or fixture) probe.
pub fn build(config: &Config, credential: Result<Credential, CredentialError>) -> Result<Runtime> {
    let (transport, fixtures) = build_transport(config)?;
    let client = ChemblClient::new(transport.clone(), client_settings(config));
    let credential_error = credential.as_ref().err().map(ToString::to_string);
    let backend = Arc::new(ChemblBackend::new(client, credential.ok(), config.raster_size));
    let book = Arc::new(pattern_book(config)?);
    let engine = Arc::new(DialogEngine::new(backend, book).with_history_cap(config.history_cap));
    let ready = match credential_error {
        Some(e) => Err(format!("credential check failed: {e}")),
        None => engine.backend().authenticate().map_err(|e| e.to_string()),
    };
    match &ready {
        Ok(()) => tracing::info!(mode = %config.mode, "startup check passed"),
        Err(e) => tracing::error!(mode = %config.mode, error = %e, "startup check failed"),
    }
    Ok(Runtime {
        engine,
        mode: config.mode,
        ready,
        fixtures,
        transport,
    })
}

/// The configured token, or [`LOCAL_TOKEN`] when none is set.
pub fn local_credential(config: &Config) -> Result<Credential, CredentialError> {
    Credential::parse(config.token.as_deref().unwrap_or(LOCAL_TOKEN))
}
