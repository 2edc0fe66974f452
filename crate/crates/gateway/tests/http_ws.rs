//! The gateway's HTTP and WebSocket surface over replayed fixtures.

mod common;

use std::collections::HashSet;

use atreya_core::dialog::{render_reply, render_transcript};
use atreya_core::presenter::Reply;
use atreya_gateway::config::Config;
use atreya_gateway::repl::repl_loop;
use atreya_gateway::wire::{Direction, Payload, WireMessage};
use futures_util::{SinkExt, StreamExt};
use serde_json::{json, Value};
use tokio_tungstenite::tungstenite::Message;

use common::{replay_config, spawn};

type Ws = tokio_tungstenite::WebSocketStream<tokio_tungstenite::MaybeTlsStream<tokio::net::TcpStream>>;

async fn open(http: &reqwest::Client, addr: std::net::SocketAddr) -> String {
    let resp = http.post(format!("http://{addr}/api/sessions")).send().await.unwrap();
    assert_eq!(resp.status(), 201);
    let body: Value = resp.json().await.unwrap();
    body["session_id"].as_str().unwrap().to_owned()
}

async fn connect(addr: std::net::SocketAddr, id: &str) -> Ws {
    let (ws, _) = tokio_tungstenite::connect_async(format!("ws://{addr}/ws/sessions/{id}"))
        .await
        .unwrap();
    ws
}

async fn send(ws: &mut Ws, frame: Value) {
    ws.send(Message::text(frame.to_string())).await.unwrap();
}

/// Reads outbound messages until one satisfies `last`.
async fn until(ws: &mut Ws, last: impl Fn(&WireMessage) -> bool) -> Vec<WireMessage> {
    let mut out = Vec::new();
    while let Some(msg) = ws.next().await {
        if let Message::Text(t) = msg.unwrap() {
            let m: WireMessage = serde_json::from_str(&t).unwrap();
            let done = last(&m);
            out.push(m);
            if done {
                return out;
            }
        }
    }
    panic!("channel closed after {out:?}");
}

fn is_buttons(m: &WireMessage) -> bool {
    matches!(m.payload, Payload::Buttons { .. })
}

#[tokio::test]
async fn sessions_open_with_distinct_ids() {
    let addr = spawn(&replay_config()).await;
    let http = reqwest::Client::new();
    let ids: HashSet<_> = futures_util::future::join_all((0..10).map(|_| open(&http, addr)))
        .await
        .into_iter()
        .collect();
    assert_eq!(ids.len(), 10);
    let health: Value = http
        .get(format!("http://{addr}/api/health"))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    assert_eq!(health["mode"], "replay");
    assert_eq!(health["ready"], true);
    assert_eq!(health["sessions"], 10);
}

#[tokio::test]
async fn bad_or_missing_credential_is_unavailable() {
    for token in [None, Some("short")] {
        let config = Config {
            token: token.map(str::to_owned),
            ..replay_config()
        };
        let addr = spawn(&config).await;
        let http = reqwest::Client::new();
        let resp = http.post(format!("http://{addr}/api/sessions")).send().await.unwrap();
        assert_eq!(resp.status(), 503);
        let health: Value = http
            .get(format!("http://{addr}/api/health"))
            .send()
            .await
            .unwrap()
            .json()
            .await
            .unwrap();
        assert_eq!(health["ready"], false);
        assert!(health["detail"].as_str().unwrap().contains("credential"));
    }
}

#[tokio::test]
async fn full_gateway_asks_clients_to_retry() {
    let config = Config {
        max_sessions: 2,
        ..replay_config()
    };
    let addr = spawn(&config).await;
    let http = reqwest::Client::new();
    open(&http, addr).await;
    open(&http, addr).await;
    let resp = http.post(format!("http://{addr}/api/sessions")).send().await.unwrap();
    assert_eq!(resp.status(), 429);
    assert_eq!(resp.headers()["retry-after"], "30");
}

#[tokio::test]
async fn unknown_session_is_rejected() {
    let addr = spawn(&replay_config()).await;
    let err = tokio_tungstenite::connect_async(format!("ws://{addr}/ws/sessions/nope"))
        .await
        .unwrap_err();
    match err {
        tokio_tungstenite::tungstenite::Error::Http(resp) => assert_eq!(resp.status(), 404),
        other => panic!("{other}"),
    }
    let resp = reqwest::get(format!("http://{addr}/api/sessions/nope/files/x.csv"))
        .await
        .unwrap();
    assert_eq!(resp.status(), 404);
}

#[tokio::test]
async fn start_menu_and_exit_over_websocket() {
    let addr = spawn(&replay_config()).await;
    let http = reqwest::Client::new();
    let id = open(&http, addr).await;
    let mut ws = connect(addr, &id).await;

    send(&mut ws, json!({"text": "/start"})).await;
    let msgs = until(&mut ws, is_buttons).await;
    assert!(matches!(&msgs[0].payload, Payload::Text { text } if text.starts_with("Hello!")));
    let Payload::Buttons { labels, .. } = &msgs[1].payload else {
        unreachable!()
    };
    assert_eq!(
        labels,
        &[
            "Molecule Info",
            "Tissue Info",
            "Similar compounds",
            "Chat to Bot",
            "Exit"
        ]
    );
    assert!(msgs
        .iter()
        .all(|m| m.direction == Direction::Outbound && m.session_id == id));

    send(&mut ws, json!({"button": "Exit"})).await;
    let msgs = until(&mut ws, |_| true).await;
    assert!(matches!(&msgs[0].payload, Payload::Text { text } if text.starts_with("Goodbye")));
    match ws.next().await {
        Some(Ok(Message::Close(Some(frame)))) => assert_eq!(u16::from(frame.code), 1000),
        other => panic!("expected close, got {other:?}"),
    }
    // Ended sessions are gone.
    let err = tokio_tungstenite::connect_async(format!("ws://{addr}/ws/sessions/{id}"))
        .await
        .unwrap_err();
    assert!(matches!(err, tokio_tungstenite::tungstenite::Error::Http(r) if r.status() == 404));
}

#[tokio::test]
async fn malformed_frames_get_errors_and_seq_is_gapless() {
    let addr = spawn(&replay_config()).await;
    let http = reqwest::Client::new();
    let id = open(&http, addr).await;
    let mut ws = connect(addr, &id).await;

    ws.send(Message::text("{not json")).await.unwrap();
    let msgs = until(&mut ws, |_| true).await;
    assert!(matches!(msgs[0].payload, Payload::Error { .. }));

    send(
        &mut ws,
        json!({"direction": "inbound", "session_id": id, "seq": 5, "payload": {"kind": "text", "text": "/start"}}),
    )
    .await;
    let mut all = msgs;
    all.extend(until(&mut ws, is_buttons).await);
    send(
        &mut ws,
        json!({"direction": "inbound", "session_id": id, "seq": 5, "payload": {"kind": "text", "text": "hello"}}),
    )
    .await;
    let stale = until(&mut ws, |_| true).await;
    assert!(matches!(&stale[0].payload, Payload::Error { message } if message.contains("seq")));
    all.extend(stale);

    send(&mut ws, json!({"kind": "text", "text": "hello"})).await;
    all.extend(until(&mut ws, |_| true).await);
    let seqs: Vec<u64> = all.iter().map(|m| m.seq).collect();
    assert_eq!(seqs, (1..=seqs.len() as u64).collect::<Vec<_>>());
}

#[tokio::test]
async fn csv_download_link_serves_the_file() {
    let addr = spawn(&replay_config()).await;
    let http = reqwest::Client::new();
    let id = open(&http, addr).await;
    let mut ws = connect(addr, &id).await;
    send(&mut ws, json!({"text": "/start"})).await;
    until(&mut ws, is_buttons).await;
    send(&mut ws, json!({"text": "top50"})).await;
    let msgs = until(&mut ws, is_buttons).await;
    let (url, data) = msgs
        .iter()
        .find_map(|m| match &m.payload {
            Payload::File { url, data_base64, .. } => Some((url.clone().unwrap(), data_base64.clone())),
            _ => None,
        })
        .expect("file payload");
    let resp = http.get(format!("http://{addr}{url}")).send().await.unwrap();
    assert_eq!(resp.status(), 200);
    assert_eq!(resp.headers()["content-type"], "text/csv");
    let body = resp.bytes().await.unwrap();
    assert_eq!(body.split(|b| *b == b'\n').filter(|l| !l.is_empty()).count(), 51);
    let Ok(Reply::FileAttachment { bytes, .. }) = msgs
        .iter()
        .find(|m| m.payload.kind() == "file")
        .unwrap()
        .payload
        .to_reply()
    else {
        panic!("file payload decodes");
    };
    assert_eq!(bytes, body.to_vec());
    assert!(!data.is_empty());
}

/// The same conversation over the WebSocket and in the terminal renders
/// to the same transcript.
#[tokio::test]
async fn websocket_matches_repl() {
    let config = replay_config();
    let addr = spawn(&config).await;
    let http = reqwest::Client::new();
    let id = open(&http, addr).await;
    let mut ws = connect(addr, &id).await;

    let steps: [(Value, &str); 5] = [
        (json!({"text": "/start"}), "/start"),
        (json!({"button": "Molecule Info"}), "1"),
        (json!({"text": "msy/paracetamole"}), "msy/paracetamole"),
        (json!({"text": "tgg/BRD4"}), "tgg/BRD4"),
        (json!({"text": "hello"}), "hello"),
    ];
    let mut over_ws = String::new();
    for (frame, _) in &steps {
        send(&mut ws, frame.clone()).await;
        let last_is_grid = frame.get("text").is_some_and(|t| t != "hello");
        let msgs = until(&mut ws, |m| if last_is_grid { is_buttons(m) } else { true }).await;
        for m in msgs {
            over_ws.push_str(&render_reply(&m.payload.to_reply().unwrap()));
            over_ws.push('\n');
        }
    }

    let input: String = steps.iter().map(|(_, line)| format!("{line}\n")).collect();
    let dir = tempfile::tempdir().unwrap();
    let outcome = tokio::task::spawn_blocking(move || {
        let rt = common::runtime_with(&config);
        repl_loop(&rt.engine, input.as_bytes(), Vec::new(), dir.path()).unwrap()
    })
    .await
    .unwrap();
    let in_repl: String = render_transcript(outcome.session.history())
        .lines()
        .filter(|l| !l.starts_with("> "))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(over_ws, in_repl);
}
