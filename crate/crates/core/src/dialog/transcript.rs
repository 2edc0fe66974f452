//! Plain-text transcripts used for golden files and determinism checks.
//! Binary payloads appear as their length and SHA-256.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::{HistoryEntry, InboundEvent};
use crate::presenter::Reply;

pub fn render_event(event: &InboundEvent) -> String {
    match event {
        InboundEvent::Text(u) => format!("> {}", u.raw().split_whitespace().collect::<Vec<_>>().join(" ")),
        InboundEvent::Button(label) => format!("> [button] {label}"),
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn render_reply(reply: &Reply) -> String {
    match reply {
        Reply::Text(t) => format!("< {}", indent(t)),
        Reply::Buttons { prompt, grid } => {
            format!("< {}\n  buttons: {}", indent(prompt), grid.labels().join(" | "))
        }
        Reply::ImageCard { png, caption } => format!(
            "< [image {} bytes sha256={}]\n  {}",
            png.len(),
            digest(png),
            indent(caption)
        ),
        Reply::FileAttachment {
            filename,
            media_type,
            bytes,
        } => format!(
            "< [file {filename} {media_type} {} bytes sha256={}]",
            bytes.len(),
            digest(bytes)
        ),
    }
}

fn indent(text: &str) -> String {
    text.replace('\n', "\n  ")
}

pub fn render_transcript<'a>(entries: impl IntoIterator<Item = &'a HistoryEntry>) -> String {
    let mut out = String::new();
    for entry in entries {
        let _ = writeln!(out, "{}", render_event(&entry.event));
        for reply in &entry.replies {
            let _ = writeln!(out, "{}", render_reply(reply));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presenter::ButtonGrid;

    #[test]
    fn formats() {
        assert_eq!(render_event(&InboundEvent::text("  msy/x ")), "> msy/x");
        assert_eq!(render_event(&InboundEvent::button("Exit")), "> [button] Exit");
        assert_eq!(render_reply(&Reply::text("a\nb")), "< a\n  b");
        let grid = Reply::Buttons {
            prompt: "Choose".into(),
            grid: ButtonGrid::new(["A", "B"]),
        };
        assert_eq!(render_reply(&grid), "< Choose\n  buttons: A | B");
        let file = Reply::FileAttachment {
            filename: "f.csv".into(),
            media_type: "text/csv".into(),
            bytes: b"abc".to_vec(),
        };
        assert_eq!(
            render_reply(&file),
            "< [file f.csv text/csv 3 bytes sha256=ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad]"
        );
    }
}
