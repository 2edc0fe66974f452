use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use thiserror::Error;

use super::Session;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("session limit of {0} reached")]
    Full(usize),
}

/// A session plus whatever per-session state the transport layer keeps
/// next to it (outbound sequence numbers, attachments, ...).
#[derive(Debug)]
pub struct SessionSlot<X> {
    pub session: Session,
    pub extra: X,
}

/// Live sessions keyed by id. Each slot has its own lock so sessions never
/// block each other; events within one session are serialized.
pub struct SessionRegistry<X> {
    slots: RwLock<HashMap<String, Arc<Mutex<SessionSlot<X>>>>>,
    max_sessions: usize,
}

impl<X: Default> SessionRegistry<X> {
    pub fn new(max_sessions: usize) -> Self {
        Self {
            slots: RwLock::new(HashMap::new()),
            max_sessions,
        }
    }

    pub fn max_sessions(&self) -> usize {
        self.max_sessions
    }

    pub fn open(&self, session: Session) -> Result<Arc<Mutex<SessionSlot<X>>>, RegistryError> {
        let mut slots = self.slots.write().expect("registry lock poisoned");
        if slots.len() >= self.max_sessions {
            return Err(RegistryError::Full(self.max_sessions));
        }
        let id = session.id().to_owned();
        let slot = Arc::new(Mutex::new(SessionSlot {
            session,
            extra: X::default(),
        }));
        slots.insert(id, slot.clone());
        Ok(slot)
    }

    pub fn get(&self, id: &str) -> Option<Arc<Mutex<SessionSlot<X>>>> {
        self.slots.read().expect("registry lock poisoned").get(id).cloned()
    }

    pub fn remove(&self, id: &str) -> bool {
        self.slots.write().expect("registry lock poisoned").remove(id).is_some()
    }

    pub fn len(&self) -> usize {
        self.slots.read().expect("registry lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
