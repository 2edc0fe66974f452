//! JSON wire schema spoken on the session channel.
//!
//! Every frame is one [`WireMessage`]. Clients may also send a bare
//! payload (`{"kind":"text","text":"/start"}`) or the shorthands
//! `{"text":"..."}` and `{"button":"..."}`; the server fills in the rest.

use atreya_core::dialog::InboundEvent;
use atreya_core::presenter::{ButtonGrid, Reply};
use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine as _;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Inbound,
    Outbound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireMessage {
    pub direction: Direction,
    pub session_id: String,
    pub seq: u64,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Text {
        text: String,
    },
    Button {
        label: String,
    },
    Buttons {
        text: String,
        labels: Vec<String>,
    },
    Image {
        png_base64: String,
        caption: String,
    },
    File {
        filename: String,
        media_type: String,
        data_base64: String,
        /// Download path relative to the gateway root.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        url: Option<String>,
    },
    Error {
        message: String,
    },
}

impl Payload {
    pub fn from_reply(reply: &Reply) -> Self {
        match reply {
            Reply::Text(text) => Payload::Text { text: text.clone() },
            Reply::Buttons { prompt, grid } => Payload::Buttons {
                text: prompt.clone(),
                labels: grid.labels().to_vec(),
            },
            Reply::ImageCard { png, caption } => Payload::Image {
                png_base64: B64.encode(png),
                caption: caption.clone(),
            },
            Reply::FileAttachment {
                filename,
                media_type,
                bytes,
            } => Payload::File {
                filename: filename.clone(),
                media_type: media_type.clone(),
                data_base64: B64.encode(bytes),
                url: None,
            },
        }
    }

    /// Inverse of [`Payload::from_reply`] for outbound kinds.
    pub fn to_reply(&self) -> Result<Reply, String> {
        let decode = |s: &str| B64.decode(s).map_err(|e| format!("bad base64: {e}"));
        Ok(match self {
            Payload::Text { text } => Reply::Text(text.clone()),
            Payload::Buttons { text, labels } => Reply::Buttons {
                prompt: text.clone(),
                grid: ButtonGrid::new(labels.iter().cloned()),
            },
            Payload::Image { png_base64, caption } => Reply::ImageCard {
                png: decode(png_base64)?,
                caption: caption.clone(),
            },
            Payload::File {
                filename,
                media_type,
                data_base64,
                ..
            } => Reply::FileAttachment {
                filename: filename.clone(),
                media_type: media_type.clone(),
                bytes: decode(data_base64)?,
            },
            Payload::Button { .. } | Payload::Error { .. } => {
                return Err(format!("`{}` is not an outbound reply kind", self.kind()))
            }
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Text { .. } => "text",
            Payload::Button { .. } => "button",
            Payload::Buttons { .. } => "buttons",
            Payload::Image { .. } => "image",
            Payload::File { .. } => "file",
            Payload::Error { .. } => "error",
        }
    }
}

/// A decoded inbound frame: the event plus the client's seq, if it sent one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inbound {
    pub event: InboundEvent,
    pub seq: Option<u64>,
}

pub fn parse_inbound(frame: &str) -> Result<Inbound, String> {
    let value: Value = serde_json::from_str(frame).map_err(|e| format!("malformed JSON: {e}"))?;
    let Value::Object(map) = &value else {
        return Err("expected a JSON object".into());
    };
    let (payload, seq) = if map.contains_key("payload") {
        let msg: WireMessage = serde_json::from_value(value.clone()).map_err(|e| format!("malformed message: {e}"))?;
        if msg.direction != Direction::Inbound {
            return Err("clients may only send inbound messages".into());
        }
        (msg.payload, Some(msg.seq))
    } else if map.contains_key("kind") {
        let payload: Payload = serde_json::from_value(value.clone()).map_err(|e| format!("malformed payload: {e}"))?;
        (payload, None)
    } else {
        match (map.get("text"), map.get("button")) {
            (Some(Value::String(t)), None) => (Payload::Text { text: t.clone() }, None),
            (None, Some(Value::String(b))) => (Payload::Button { label: b.clone() }, None),
            _ => return Err("expected a `text` or `button` string field".into()),
        }
    };
    let event = match payload {
        Payload::Text { text } => InboundEvent::text(&text),
        Payload::Button { label } => InboundEvent::button(&label),
        other => return Err(format!("`{}` is not an inbound kind", other.kind())),
    };
    Ok(Inbound { event, seq })
}
