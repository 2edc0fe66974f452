//! On-disk fixture store for record/replay.
//!
//! One file per request, named `<sha256(canonical key)>.fixture`:
//!
//! ```text
//! GET /molecule/CHEMBL112.json
//! status: 200
//! content-type: application/json
//! content-length: 1742
//!
//! <body bytes, exactly content-length of them>
//! ```
//!
//! `index.tsv` lists `hash<TAB>status<TAB>request line` for humans; it is
//! rewritten on every insert and never read back.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use super::error::TransportError;
use super::transport::{fixture_name, TransportResponse};

pub const FIXTURE_EXT: &str = "fixture";
pub const INDEX_FILE: &str = "index.tsv";

pub struct FixtureStore {
    dir: PathBuf,
    entries: RwLock<BTreeMap<String, TransportResponse>>,
}

impl FixtureStore {
    /// Loads every fixture in `dir`. The directory must exist.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, TransportError> {
        let dir = dir.as_ref().to_path_buf();
        let listing = fs::read_dir(&dir).map_err(|e| TransportError::Store(format!("{}: {e}", dir.display())))?;
        let mut entries = BTreeMap::new();
        for entry in listing {
            let path = entry.map_err(|e| TransportError::Store(e.to_string()))?.path();
            if path.extension().and_then(|e| e.to_str()) != Some(FIXTURE_EXT) {
                continue;
            }
            let bytes = fs::read(&path).map_err(|e| TransportError::Store(format!("{}: {e}", path.display())))?;
            let (key, response) =
                decode(&bytes).map_err(|m| TransportError::Store(format!("{}: {m}", path.display())))?;
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            if stem != fixture_name(&key) {
                return Err(TransportError::Store(format!(
                    "{}: file name does not match request `{key}`",
                    path.display()
                )));
            }
            entries.insert(key, response);
        }
        Ok(Self {
            dir,
            entries: RwLock::new(entries),
        })
    }

    /// Opens `dir`, creating it when missing.
    pub fn create(dir: impl AsRef<Path>) -> Result<Self, TransportError> {
        fs::create_dir_all(dir.as_ref())
            .map_err(|e| TransportError::Store(format!("{}: {e}", dir.as_ref().display())))?;
        Self::open(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn get(&self, key: &str) -> Option<TransportResponse> {
        self.entries.read().ok()?.get(key).cloned()
    }

    pub fn keys(&self) -> Vec<String> {
        self.entries
            .read()
            .map(|e| e.keys().cloned().collect())
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.read().map(|e| e.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All `(key, response)` pairs in key order.
    pub fn entries(&self) -> Vec<(String, TransportResponse)> {
        self.entries
            .read()
            .map(|e| e.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
            .unwrap_or_default()
    }

    pub fn insert(&self, key: &str, response: TransportResponse) -> Result<(), TransportError> {
        let mut entries = self
            .entries
            .write()
            .map_err(|_| TransportError::Store("fixture store lock poisoned".into()))?;
        let path = self.dir.join(format!("{}.{FIXTURE_EXT}", fixture_name(key)));
        write_atomic(&path, &encode(key, &response))?;
        entries.insert(key.to_owned(), response);

        let mut index = String::new();
        for (k, r) in entries.iter() {
            index.push_str(&format!("{}\t{}\t{k}\n", fixture_name(k), r.status));
        }
        write_atomic(&self.dir.join(INDEX_FILE), index.as_bytes())
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), TransportError> {
    let tmp = path.with_extension("tmp");
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes))
        .and_then(|()| fs::rename(&tmp, path));
    result.map_err(|e| TransportError::Store(format!("{}: {e}", path.display())))
}

pub fn encode(key: &str, response: &TransportResponse) -> Vec<u8> {
    let mut out = format!(
        "{key}\nstatus: {}\ncontent-type: {}\ncontent-length: {}\n\n",
        response.status,
        response.content_type,
        response.body.len()
    )
    .into_bytes();
    out.extend_from_slice(&response.body);
    out
}

pub fn decode(bytes: &[u8]) -> Result<(String, TransportResponse), String> {
    let split = bytes
        .windows(2)
        .position(|w| w == b"\n\n")
        .ok_or("missing header terminator")?;
    let head = std::str::from_utf8(&bytes[..split]).map_err(|_| "header is not UTF-8")?;
    let body = &bytes[split + 2..];
    let mut lines = head.lines();
    let key = lines.next().ok_or("missing request line")?.to_owned();
    let (mut status, mut content_type, mut length) = (None, None, None);
    for line in lines {
        let (name, value) = line.split_once(": ").ok_or("malformed header line")?;
        match name {
            "status" => status = value.parse::<u16>().ok(),
            "content-type" => content_type = Some(value.to_owned()),
            "content-length" => length = value.parse::<usize>().ok(),
            _ => return Err(format!("unknown header `{name}`")),
        }
    }
    let status = status.ok_or("missing or bad status")?;
    let length = length.ok_or("missing or bad content-length")?;
    if length != body.len() {
        return Err(format!(
            "content-length {length} does not match body size {}",
            body.len()
        ));
    }
    Ok((
        key,
        TransportResponse {
            status,
            content_type: content_type.ok_or("missing content-type")?,
            body: body.to_vec(),
        },
    ))
}
