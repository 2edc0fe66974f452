//! `atreya record`: drives a scripted session against the live service
//! through a recording transport, writing one fixture per request.
//!
//! Script lines:
//!
//! ```text
//! # comment
//! /start                      plain text is sent as a chat message
//! button: Molecule Info       presses a button
//! depiction: CHEMBL0          fetches a depiction directly
//! similarity: <smiles> <pct>  similarity search at an explicit threshold
//! pages: <list-key> <resource> [k=v ...]
//!                             walks every page of a listing
//! ```

use std::io::Write;

use anyhow::{bail, Context, Result};
use atreya_core::chembl::{ChemblClient, TransportRequest};
use atreya_core::dialog::{render_event, render_reply, DialogEngine, InboundEvent};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Event(InboundEvent),
    Depiction(String),
    Similarity {
        smiles: String,
        threshold: u8,
    },
    Pages {
        list_key: String,
        request: TransportRequest,
    },
}

pub fn parse_script(text: &str) -> Result<Vec<Step>> {
    let mut steps = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let step = if let Some(label) = line.strip_prefix("button:") {
            Step::Event(InboundEvent::button(label.trim()))
        } else if let Some(id) = line.strip_prefix("depiction:") {
            Step::Depiction(id.trim().to_owned())
        } else if let Some(rest) = line.strip_prefix("similarity:") {
            let mut parts = rest.split_whitespace();
            let (Some(smiles), Some(pct), None) = (parts.next(), parts.next(), parts.next()) else {
                bail!("line {}: expected `similarity: <smiles> <threshold>`", n + 1);
            };
            let threshold = pct.parse().with_context(|| format!("line {}: bad threshold", n + 1))?;
            Step::Similarity {
                smiles: smiles.to_owned(),
                threshold,
            }
        } else if let Some(rest) = line.strip_prefix("pages:") {
            let mut parts = rest.split_whitespace();
            let (Some(list_key), Some(resource)) = (parts.next(), parts.next()) else {
                bail!("line {}: expected `pages: <list-key> <resource> [k=v ...]`", n + 1);
            };
            let mut request = TransportRequest::get(resource.split('/'));
            for kv in parts {
                let Some((k, v)) = kv.split_once('=') else {
                    bail!("line {}: `{kv}` is not k=v", n + 1);
                };
                request = request.param(k, v);
            }
            Step::Pages {
                list_key: list_key.to_owned(),
                request,
            }
        } else {
            Step::Event(InboundEvent::text(line))
        };
        steps.push(step);
    }
    Ok(steps)
}

/// Runs `steps`, writing a transcript to `out`. Failures are reported in
/// the transcript and do not stop the run.
pub fn run_script<W: Write>(engine: &DialogEngine, client: &ChemblClient, steps: &[Step], mut out: W) -> Result<()> {
    let mut session = engine.create_session();
    for step in steps {
        match step {
            Step::Event(event) => {
                writeln!(out, "{}", render_event(event))?;
                if session.is_ended() {
                    session = engine.create_session();
                }
                for reply in engine.handle_event(&mut session, event.clone())? {
                    writeln!(out, "{}", render_reply(&reply))?;
                }
            }
            Step::Depiction(id) => {
                writeln!(out, "> [depiction] {id}")?;
                match client.fetch_depiction_svg(id) {
                    Ok(svg) => writeln!(out, "< svg {} bytes", svg.len())?,
                    Err(e) => writeln!(out, "< error [{}] {e}", e.class())?,
                }
            }
            Step::Similarity { smiles, threshold } => {
                writeln!(out, "> [similarity] {smiles} {threshold}")?;
                match client.similar_by_smiles(smiles, *threshold) {
                    Ok(hits) => {
                        for h in hits {
                            writeln!(out, "< {} {}", h.molecule.chembl_id, h.similarity_percent)?;
                        }
                    }
                    Err(e) => writeln!(out, "< error [{}] {e}", e.class())?,
                }
            }
            Step::Pages { list_key, request } => {
                writeln!(out, "> [pages] {}", request.path_and_query())?;
                match client.collect_pages(request, list_key, usize::MAX) {
                    Ok(listing) => writeln!(out, "< {} of {} items", listing.items.len(), listing.total_count)?,
                    Err(e) => writeln!(out, "< error [{}] {e}", e.class())?,
                }
            }
        }
    }
    Ok(())
}
