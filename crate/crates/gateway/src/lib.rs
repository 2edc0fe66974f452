//! Session gateway for the Atreya engine: HTTP/WebSocket server, terminal
//! REPL and fixture recorder, all configured from one [`config::Config`].

pub mod config;
pub mod record;
pub mod repl;
pub mod runtime;
pub mod server;
pub mod wire;
