#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use atreya_core::casual::PatternBook;
use atreya_core::chembl::{
    ChemblClient, ClientSettings, FixtureStore, ReplayTransport, Transport, TransportError, TransportRequest,
    TransportResponse,
};
use atreya_core::credential::Credential;
use atreya_core::dialog::{ChemblBackend, DialogEngine, InboundEvent, Session};

pub const TEST_TOKEN: &str = "test-token-0123456789";
pub const RASTER_SIZE: u32 = 500;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/chembl")
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn store() -> Arc<FixtureStore> {
    Arc::new(FixtureStore::open(fixture_dir()).expect("fixture store opens"))
}

pub fn replay() -> Arc<dyn Transport> {
    Arc::new(ReplayTransport::new(store()))
}

pub fn client() -> ChemblClient {
    ChemblClient::new(replay(), ClientSettings::default())
}

/// Counts requests by canonical key on their way to an inner transport.
pub struct Counting {
    inner: Arc<dyn Transport>,
    pub total: AtomicUsize,
    pub keys: Mutex<BTreeMap<String, usize>>,
}

impl Counting {
    pub fn new(inner: Arc<dyn Transport>) -> Arc<Self> {
        Arc::new(Self {
            inner,
            total: AtomicUsize::new(0),
            keys: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn total(&self) -> usize {
        self.total.load(Ordering::SeqCst)
    }

    /// Requests other than the liveness probe.
    pub fn queries(&self) -> usize {
        self.keys
            .lock()
            .unwrap()
            .iter()
            .filter(|(k, _)| !k.contains("/status.json"))
            .map(|(_, n)| n)
            .sum()
    }
}

impl Transport for Counting {
    fn execute(&self, request: &TransportRequest) -> Result<TransportResponse, TransportError> {
        self.total.fetch_add(1, Ordering::SeqCst);
        *self.keys.lock().unwrap().entry(request.canonical_key()).or_default() += 1;
        self.inner.execute(request)
    }
}

pub fn engine_over(transport: Arc<dyn Transport>, token: Option<&str>) -> DialogEngine {
    let client = ChemblClient::new(transport, ClientSettings::default());
    let credential = token.map(|t| Credential::parse(t).expect("test token is valid"));
    let backend = Arc::new(ChemblBackend::new(client, credential, RASTER_SIZE));
    DialogEngine::new(backend, Arc::new(PatternBook::default_book()))
}

pub fn engine() -> DialogEngine {
    engine_over(replay(), Some(TEST_TOKEN))
}

pub fn run(engine: &DialogEngine, events: &[InboundEvent]) -> Session {
    let mut session = engine.create_session();
    for e in events {
        engine.handle_event(&mut session, e.clone()).expect("session is live");
    }
    session
}

pub fn t(s: &str) -> InboundEvent {
    InboundEvent::text(s)
}

pub fn b(s: &str) -> InboundEvent {
    InboundEvent::button(s)
}

pub fn molecule_card_script() -> Vec<InboundEvent> {
    vec![t("/start"), b("Molecule Info"), t("msy/paracetamole")]
}

/// Scripted sessions covering every use case, run for determinism checks.
pub fn walkthroughs() -> Vec<(&'static str, Vec<InboundEvent>)> {
    vec![
        ("molecule-card", molecule_card_script()),
        (
            "molecules",
            vec![
                t("/start"),
                b("Molecule Info"),
                t("msy/panadol"),
                t("msm/CC(=O)Nc1ccc(O)cc1"),
                t("mid/CHEMBL112"),
                t("mid/CHEMBL0"),
                t("usn/-olol"),
                t("dis/asthma"),
                t("top50"),
                b("Exit"),
            ],
        ),
        (
            "similarity",
            vec![
                t("/start"),
                b("Similar compounds"),
                t("sms/CC(=O)Nc1ccc(O)cc1"),
                t("sim/panadol"),
                t("sim/zzqx-nonexistent"),
                b("Exit"),
            ],
        ),
        (
            "targets-and-tissues",
            vec![
                t("/start"),
                t("tgg/BRD4"),
                b("Tissue Info"),
                t("tid/UBERON:0000955"),
                t("tid/BTO:0000142"),
                t("tnm/brain"),
                b("Chat to Bot"),
                t("hello"),
                t("exit"),
            ],
        ),
    ]
}

pub fn svg_fixtures() -> Vec<(String, Vec<u8>)> {
    store()
        .entries()
        .into_iter()
        .filter(|(_, r)| r.status == 200 && r.content_type.starts_with("image/svg"))
        .map(|(k, r)| (k, r.body))
        .collect()
}
