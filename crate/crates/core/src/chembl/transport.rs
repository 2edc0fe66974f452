//! Pluggable HTTP layer: live calls, record/replay, and an in-memory cache.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};
use std::thread;
use std::time::{Duration, Instant};

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use sha2::{Digest, Sha256};

use super::error::TransportError;
use super::fixtures::FixtureStore;

/// Everything except RFC 3986 unreserved characters is escaped.
const COMPONENT: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~');

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Get,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Get => "GET",
        }
    }
}

/// A request relative to the service base URL.
///
/// Query parameters are kept sorted so equal requests always produce the
/// same canonical key regardless of insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransportRequest {
    method: Method,
    segments: Vec<String>,
    query: Vec<(String, String)>,
}

impl TransportRequest {
    /// A GET for the given path segments. Each segment is escaped on its
    /// own, so a SMILES containing `/` stays a single segment.
    pub fn get<I, S>(segments: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            method: Method::Get,
            segments: segments.into_iter().map(Into::into).collect(),
            query: Vec::new(),
        }
    }

    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        let pair = (key.into(), value.to_string());
        let at = self.query.partition_point(|p| *p <= pair);
        self.query.insert(at, pair);
        self
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn query(&self) -> &[(String, String)] {
        &self.query
    }

    pub fn query_value(&self, key: &str) -> Option<&str> {
        self.query.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Encoded path and query, e.g. `/molecule.json?limit=20&offset=0`.
    pub fn path_and_query(&self) -> String {
        let mut out = String::new();
        for seg in &self.segments {
            out.push('/');
            out.extend(utf8_percent_encode(seg, COMPONENT));
        }
        for (i, (k, v)) in self.query.iter().enumerate() {
            out.push(if i == 0 { '?' } else { '&' });
            out.extend(utf8_percent_encode(k, COMPONENT));
            out.push('=');
            out.extend(utf8_percent_encode(v, COMPONENT));
        }
        out
    }

    /// `METHOD /path?sorted-query`; the identity of a request for caching
    /// and fixtures.
    pub fn canonical_key(&self) -> String {
        format!("{} {}", self.method.as_str(), self.path_and_query())
    }

    pub fn fixture_name(&self) -> String {
        fixture_name(&self.canonical_key())
    }
}

/// Hex SHA-256 of a canonical key.
pub fn fixture_name(canonical_key: &str) -> String {
    hex::encode(Sha256::digest(canonical_key.as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportResponse {
    pub status: u16,
    pub content_type: String,
    pub body: Vec<u8>,
}

impl TransportResponse {
    pub fn is_success(&self) -> bool {
        (200..300).contains(&self.status)
    }
}

pub trait Transport: Send + Sync {
    fn execute(&self, request: &TransportRequest) -> Result<TransportResponse, TransportError>;
}

impl<T: Transport + ?Sized> Transport for Arc<T> {
    fn execute(&self, request: &TransportRequest) -> Result<TransportResponse, TransportError> {
        (**self).execute(request)
    }
}

/// Serves responses from a fixture store; unknown requests are misses.
pub struct ReplayTransport {
    store: Arc<FixtureStore>,
}

impl ReplayTransport {
    pub fn new(store: Arc<FixtureStore>) -> Self {
        Self { store }
    }

    pub fn store(&self) -> &Arc<FixtureStore> {
        &self.store
    }
}

impl Transport for ReplayTransport {
    fn execute(&self, request: &TransportRequest) -> Result<TransportResponse, TransportError> {
        let key = request.canonical_key();
        self.store.get(&key).ok_or(TransportError::ReplayMiss(key))
    }
}

/// Blocking HTTPS client with a simple minimum-interval rate limit.
pub struct LiveTransport {
    base_url: String,
    client: reqwest::blocking::Client,
    min_interval: Duration,
    last_call: Mutex<Option<Instant>>,
}

impl LiveTransport {
    pub fn new(base_url: &str, requests_per_second: f64) -> Result<Self, TransportError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(30))
            .user_agent(concat!("atreya/", env!("CARGO_PKG_VERSION")))
            .build()
            .map_err(|e| TransportError::Network(e.to_string()))?;
        let min_interval = if requests_per_second > 0.0 {
            Duration::from_secs_f64(1.0 / requests_per_second)
        } else {
            Duration::ZERO
        };
        Ok(Self {
            base_url: base_url.trim_end_matches('/').to_owned(),
            client,
            min_interval,
            last_call: Mutex::new(None),
        })
    }

    fn throttle(&self) {
        let mut last = self.last_call.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(prev) = *last {
            let elapsed = prev.elapsed();
            if elapsed < self.min_interval {
                thread::sleep(self.min_interval - elapsed);
            }
        }
        *last = Some(Instant::now());
    }
}

impl Transport for LiveTransport {
    fn execute(&self, request: &TransportRequest) -> Result<TransportResponse, TransportError> {
        self.throttle();
        let url = format!("{}{}", self.base_url, request.path_and_query());
        tracing::debug!(%url, "live request");
        let response = match request.method() {
            Method::Get => self.client.get(&url).send(),
        }
        .map_err(|e| TransportError::Network(e.to_string()))?;
        let status = response.status().as_u16();
        let content_type = response
            .headers()
            .get(reqwest::header::CONTENT_TYPE)
            .and_then(|v| v.to_str().ok())
            .unwrap_or("application/octet-stream")
            .to_owned();
        let body = response
            .bytes()
            .map_err(|e| TransportError::Network(e.to_string()))?
            .to_vec();
        Ok(TransportResponse {
            status,
            content_type,
            body,
        })
    }
}

/// Forwards to an inner transport and persists every response it gets.
pub struct RecordingTransport<T> {
    inner: T,
    store: Arc<FixtureStore>,
}

impl<T: Transport> RecordingTransport<T> {
    pub fn new(inner: T, store: Arc<FixtureStore>) -> Self {
        Self { inner, store }
    }
}

impl<T: Transport> Transport for RecordingTransport<T> {
    fn execute(&self, request: &TransportRequest) -> Result<TransportResponse, TransportError> {
        let response = self.inner.execute(request)?;
        self.store.insert(&request.canonical_key(), response.clone())?;
        Ok(response)
    }
}

/// In-memory response cache. 5xx responses are not cached.
pub struct CachingTransport<T> {
    inner: T,
    cache: RwLock<HashMap<String, TransportResponse>>,
}

impl<T: Transport> CachingTransport<T> {
    pub fn new(inner: T) -> Self {
        Self {
            inner,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.cache.read().map(|c| c.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<T: Transport> Transport for CachingTransport<T> {
    fn execute(&self, request: &TransportRequest) -> Result<TransportResponse, TransportError> {
        let key = request.canonical_key();
        if let Some(hit) = self.cache.read().ok().and_then(|c| c.get(&key).cloned()) {
            return Ok(hit);
        }
        let response = self.inner.execute(request)?;
        if response.status < 500 {
            if let Ok(mut cache) = self.cache.write() {
                cache.insert(key, response.clone());
            }
        }
        Ok(response)
    }
}
