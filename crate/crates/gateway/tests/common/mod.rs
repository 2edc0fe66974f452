#![allow(dead_code)]

use std::net::SocketAddr;
use std::path::PathBuf;

use atreya_core::credential::Credential;
use atreya_gateway::config::{Config, Mode};
use atreya_gateway::runtime::{self, Runtime};
use atreya_gateway::server::{router, AppState};

pub const TEST_TOKEN: &str = "gateway-test-token-0001";

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/chembl")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn replay_config() -> Config {
    Config {
        mode: Mode::Replay,
        fixture_dir: fixture_dir(),
        token: Some(TEST_TOKEN.into()),
        ..Config::default()
    }
}

pub fn runtime_with(config: &Config) -> Runtime {
    runtime::build(config, Credential::from_option(config.token.as_deref())).expect("runtime builds")
}

/// Serves the gateway on an ephemeral port for the rest of the test.
pub async fn spawn(config: &Config) -> SocketAddr {
    let rt = runtime_with(config);
    let state = AppState::new(&rt, config.max_sessions);
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move {
        axum::serve(listener, router(state, None)).await.unwrap();
    });
    addr
}

pub fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "differs from {}", path.display());
}
