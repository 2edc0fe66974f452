//! Chat-driven retrieval over the ChEMBL REST API.
//!
//! Input flows through [`grammar`] (keyword commands) or [`casual`] (small
//! talk), into the per-session state machine in [`dialog`], which calls the
//! [`chembl`] client and renders results with [`presenter`].

pub mod casual;
pub mod chembl;
pub mod credential;
pub mod dialog;
pub mod grammar;
pub mod presenter;
