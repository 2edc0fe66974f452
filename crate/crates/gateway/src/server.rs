//! HTTP and WebSocket front end.
//!
//! | route | purpose |
//! |---|---|
//! | `POST /api/sessions` | open a session, `201 {"session_id"}` |
//! | `GET /api/health` | liveness, mode and startup-check result |
//! | `GET /ws/sessions/{id}` | bidirectional channel of JSON [`WireMessage`]s |
//! | `GET /api/sessions/{id}/files/{name}` | attachment download |

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use atreya_core::dialog::{DialogEngine, SessionRegistry, SessionSlot};
use axum::extract::ws::{CloseFrame, Message, WebSocket, WebSocketUpgrade};
use axum::extract::{Path, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use futures_util::{SinkExt, StreamExt};
use serde_json::json;
use tower_http::services::ServeDir;

use crate::config::Mode;
use crate::runtime::Runtime;
use crate::wire::{parse_inbound, Direction, Payload, WireMessage};

/// Seconds a client should wait before retrying when the gateway is full.
pub const RETRY_AFTER_SECS: u64 = 30;

/// Per-session transport state kept next to the dialog session.
#[derive(Debug, Default)]
pub struct Channel {
    last_out: u64,
    last_in: u64,
    files: HashMap<String, (String, Vec<u8>)>,
}

struct Inner {
    engine: Arc<DialogEngine>,
    registry: SessionRegistry<Channel>,
    ready: Result<(), String>,
    mode: Mode,
}

#[derive(Clone)]
pub struct AppState(Arc<Inner>);

impl AppState {
    pub fn new(runtime: &Runtime, max_sessions: usize) -> Self {
        Self(Arc::new(Inner {
            engine: runtime.engine.clone(),
            registry: SessionRegistry::new(max_sessions),
            ready: runtime.ready.clone(),
            mode: runtime.mode,
        }))
    }

    pub fn session_count(&self) -> usize {
        self.0.registry.len()
    }
}

pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let router = Router::new()
        .route("/api/sessions", post(open_session))
        .route("/api/health", get(health))
        .route("/api/sessions/{id}/files/{name}", get(download))
        .route("/ws/sessions/{id}", get(channel))
        .with_state(state);
    match static_dir {
        Some(dir) => router.fallback_service(ServeDir::new(dir)),
        None => router,
    }
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(json!({ "error": message.into() }))).into_response()
}

async fn open_session(State(state): State<AppState>) -> Response {
    if let Err(e) = &state.0.ready {
        return error(StatusCode::SERVICE_UNAVAILABLE, format!("service unavailable: {e}"));
    }
    let session = state.0.engine.create_session();
    let id = session.id().to_owned();
    match state.0.registry.open(session) {
        Ok(_) => {
            tracing::info!(session = %id, "session opened");
            (StatusCode::CREATED, Json(json!({ "session_id": id }))).into_response()
        }
        Err(e) => {
            let mut resp = error(StatusCode::TOO_MANY_REQUESTS, e.to_string());
            resp.headers_mut()
                .insert(header::RETRY_AFTER, HeaderValue::from(RETRY_AFTER_SECS));
            resp
        }
    }
}

async fn health(State(state): State<AppState>) -> Json<serde_json::Value> {
    let inner = &state.0;
    Json(json!({
        "status": "ok",
        "mode": inner.mode.as_str(),
        "ready": inner.ready.is_ok(),
        "detail": inner.ready.as_ref().err(),
        "sessions": inner.registry.len(),
        "max_sessions": inner.registry.max_sessions(),
    }))
}

async fn download(State(state): State<AppState>, Path((id, name)): Path<(String, String)>) -> Response {
    let Some(slot) = state.0.registry.get(&id) else {
        return error(StatusCode::NOT_FOUND, "unknown session");
    };
    let file = slot
        .lock()
        .expect("session lock poisoned")
        .extra
        .files
        .get(&name)
        .cloned();
    match file {
        Some((media_type, bytes)) => {
            let disposition = format!("attachment; filename=\"{}\"", name.replace('"', ""));
            (
                [
                    (header::CONTENT_TYPE, media_type),
                    (header::CONTENT_DISPOSITION, disposition),
                ],
                bytes,
            )
                .into_response()
        }
        None => error(StatusCode::NOT_FOUND, "unknown file"),
    }
}

async fn channel(State(state): State<AppState>, Path(id): Path<String>, ws: WebSocketUpgrade) -> Response {
    let Some(slot) = state.0.registry.get(&id) else {
        return error(StatusCode::NOT_FOUND, "unknown session");
    };
    if slot.lock().expect("session lock poisoned").session.is_ended() {
        return error(StatusCode::GONE, "session has ended");
    }
    ws.on_upgrade(move |socket| run_channel(state, id, slot, socket))
}

async fn run_channel(state: AppState, id: String, slot: Arc<Mutex<SessionSlot<Channel>>>, socket: WebSocket) {
    let (mut tx, mut rx) = socket.split();
    while let Some(msg) = rx.next().await {
        let text = match msg {
            Ok(Message::Text(t)) => t.to_string(),
            Ok(Message::Binary(b)) => String::from_utf8_lossy(&b).into_owned(),
            Ok(Message::Close(_)) | Err(_) => break,
            Ok(_) => continue,
        };
        // Frames carry line-delimited messages; usually exactly one.
        for line in text.lines().filter(|l| !l.trim().is_empty()).map(str::to_owned) {
            let (engine, slot) = (state.0.engine.clone(), slot.clone());
            let outcome = tokio::task::spawn_blocking(move || process_line(&engine, &slot, &line)).await;
            let (messages, ended) = match outcome {
                Ok(result) => result,
                Err(e) => {
                    tracing::error!(session = %id, error = %e, "handler task failed");
                    break;
                }
            };
            for m in messages {
                let frame = serde_json::to_string(&m).expect("wire messages serialize");
                if tx.send(Message::Text(frame.into())).await.is_err() {
                    return;
                }
            }
            if ended {
                let _ = tx
                    .send(Message::Close(Some(CloseFrame {
                        code: 1000,
                        reason: "session ended".into(),
                    })))
                    .await;
                state.0.registry.remove(&id);
                tracing::info!(session = %id, "session ended");
                return;
            }
        }
    }
}

/// Handles one inbound line under the session lock. Returns the outbound
/// messages (with consecutive seq values) and whether the session ended.
pub fn process_line(engine: &DialogEngine, slot: &Mutex<SessionSlot<Channel>>, line: &str) -> (Vec<WireMessage>, bool) {
    let mut guard = slot.lock().expect("session lock poisoned");
    let SessionSlot { session, extra: chan } = &mut *guard;
    let id = session.id().to_owned();
    let mut out = Vec::new();
    let mut emit = |chan: &mut Channel, payload: Payload| {
        chan.last_out += 1;
        out.push(WireMessage {
            direction: Direction::Outbound,
            session_id: id.clone(),
            seq: chan.last_out,
            payload,
        });
    };

    let inbound = match parse_inbound(line) {
        Ok(i) => i,
        Err(message) => {
            emit(chan, Payload::Error { message });
            return (out, false);
        }
    };
    match inbound.seq {
        Some(seq) if seq <= chan.last_in => {
            let message = format!("inbound seq {seq} is not greater than {}", chan.last_in);
            emit(chan, Payload::Error { message });
            return (out, false);
        }
        Some(seq) => chan.last_in = seq,
        None => chan.last_in += 1,
    }

    match engine.handle_event(session, inbound.event) {
        Ok(replies) => {
            for reply in &replies {
                let mut payload = Payload::from_reply(reply);
                if let Payload::File {
                    filename,
                    media_type,
                    url,
                    ..
                } = &mut payload
                {
                    if let atreya_core::presenter::Reply::FileAttachment { bytes, .. } = reply {
                        chan.files.insert(filename.clone(), (media_type.clone(), bytes.clone()));
                    }
                    *url = Some(format!("/api/sessions/{id}/files/{filename}"));
                }
                emit(chan, payload);
            }
        }
        Err(e) => emit(chan, Payload::Error { message: e.to_string() }),
    }
    (out, session.is_ended())
}

/// Serves until ctrl-c.
pub async fn serve(state: AppState, listen: std::net::SocketAddr, static_dir: Option<PathBuf>) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(listen).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, router(state, static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
