//! Terminal front end: one session on stdin/stdout.
//!
//! Button grids print as numbered choices; typing the number presses the
//! button. Images and files are written to a downloads directory.

use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use atreya_core::dialog::{DialogEngine, InboundEvent, Session};
use atreya_core::presenter::Reply;

pub const PROMPT: &str = "> ";

pub struct ReplOutcome {
    pub exit_code: i32,
    pub session: Session,
}

struct Printer<'a, W> {
    out: W,
    downloads: &'a Path,
    images: usize,
    grid: Vec<String>,
}

impl<W: Write> Printer<'_, W> {
    fn save(&self, name: &str, bytes: &[u8]) -> io::Result<PathBuf> {
        std::fs::create_dir_all(self.downloads)?;
        let path = self.downloads.join(name);
        std::fs::write(&path, bytes)?;
        Ok(path)
    }

    fn reply(&mut self, reply: &Reply) -> io::Result<()> {
        match reply {
            Reply::Text(text) => writeln!(self.out, "{text}"),
            Reply::Buttons { prompt, grid } => {
                writeln!(self.out, "{prompt}")?;
                for (i, label) in grid.labels().iter().enumerate() {
                    writeln!(self.out, "  [{}] {label}", i + 1)?;
                }
                self.grid = grid.labels().to_vec();
                Ok(())
            }
            Reply::ImageCard { png, caption } => {
                self.images += 1;
                let name = format!("image-{:03}.png", self.images);
                match self.save(&name, png) {
                    Ok(path) => writeln!(self.out, "[image saved to {}]", path.display())?,
                    Err(e) => writeln!(self.out, "[image could not be saved: {e}]")?,
                }
                writeln!(self.out, "{caption}")
            }
            Reply::FileAttachment {
                filename,
                media_type,
                bytes,
            } => match self.save(filename, bytes) {
                Ok(path) => writeln!(
                    self.out,
                    "[file saved to {} ({media_type}, {} bytes)]",
                    path.display(),
                    bytes.len()
                ),
                Err(e) => writeln!(self.out, "[file {filename} could not be saved: {e}]"),
            },
        }
    }

    /// A bare number picks from the most recent grid.
    fn event(&self, line: &str) -> InboundEvent {
        let picked = line
            .trim()
            .parse::<usize>()
            .ok()
            .and_then(|n| n.checked_sub(1))
            .and_then(|i| self.grid.get(i));
        match picked {
            Some(label) => InboundEvent::button(label),
            None => InboundEvent::text(line),
        }
    }
}

/// Runs one session until it ends or input is exhausted. Both exit 0.
pub fn repl_loop<R: BufRead, W: Write>(
    engine: &DialogEngine,
    input: R,
    out: W,
    downloads: &Path,
) -> io::Result<ReplOutcome> {
    let mut session = engine.create_session();
    let mut p = Printer {
        out,
        downloads,
        images: 0,
        grid: Vec::new(),
    };
    writeln!(p.out, "Atreya terminal session. Send /start to begin; \"exit\" quits.")?;
    let mut lines = input.lines();
    loop {
        write!(p.out, "{PROMPT}")?;
        p.out.flush()?;
        let Some(line) = lines.next() else {
            writeln!(p.out)?;
            break;
        };
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let event = p.event(&line);
        if let InboundEvent::Button(label) = &event {
            writeln!(p.out, "({label})")?;
        }
        match engine.handle_event(&mut session, event) {
            Ok(replies) => {
                for r in &replies {
                    p.reply(r)?;
                }
            }
            Err(e) => writeln!(p.out, "error: {e}")?,
        }
        if session.is_ended() {
            break;
        }
    }
    Ok(ReplOutcome { exit_code: 0, session })
}
