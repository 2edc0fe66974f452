//! Per-session conversational funnel.
//!
//! ```text
//! Created --/start--> (Authenticated) --> Menu --button--> Guideline(topic)
//!                                          |                 |
//!                                          +--Chat to Bot--> AwaitingQuery(free)
//!                                          |                 |
//!                    keyword query from any live phase ---> Results
//! Exit (button or text) from any phase ---> Ended (absorbing)
//! ```
//!
//! Keyword queries are accepted from every live phase; the guideline
//! screens are help, not gates.

mod backend;
mod registry;
mod transcript;

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

pub use backend::{ChemblBackend, TOP_APPROVED_LIMIT};
pub use registry::{RegistryError, SessionRegistry, SessionSlot};
pub use transcript::{render_event, render_reply, render_transcript};

use crate::casual::PatternBook;
use crate::chembl::ChemblError;
use crate::grammar::{normalize, parse, Command, Keyword, ParseError, Utterance};
use crate::presenter::{ButtonGrid, Reply};

pub const DEFAULT_HISTORY_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Topic {
    Molecule,
    Tissue,
    Similarity,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Created,
    Authenticated,
    Menu,
    Guideline(Topic),
    AwaitingQuery(Topic),
    Results,
    Ended,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InboundEvent {
    Text(Utterance),
    Button(String),
}

impl InboundEvent {
    pub fn text(raw: &str) -> Self {
        InboundEvent::Text(normalize(raw))
    }

    pub fn button(label: &str) -> Self {
        InboundEvent::Button(label.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistoryEntry {
    pub event: InboundEvent,
    pub replies: Vec<Reply>,
    /// Phases entered while handling the event, in order. Empty when the
    /// phase did not change.
    pub path: Vec<Phase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DialogError {
    #[error("session {0} has ended")]
    SessionEnded(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct AuthError(pub String);

/// What the funnel needs from the search side.
pub trait SearchBackend: Send + Sync {
    /// Credential check plus service liveness probe.
    fn authenticate(&self) -> Result<(), AuthError>;

    /// Runs one chemical command and builds its replies.
    fn search(&self, command: &Command) -> Result<Vec<Reply>, ChemblError>;
}

/// One chat session. Only [`DialogEngine::handle_event`] moves it.
#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    phase: Phase,
    history: VecDeque<HistoryEntry>,
    history_cap: usize,
    handled: u64,
}

impl Session {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn is_ended(&self) -> bool {
        self.phase == Phase::Ended
    }

    pub fn history(&self) -> impl ExactSizeIterator<Item = &HistoryEntry> {
        self.history.iter()
    }

    /// Events handled over the session's lifetime, including evicted ones.
    pub fn handled_events(&self) -> u64 {
        self.handled
    }

    pub fn transcript(&self) -> String {
        render_transcript(self.history.iter())
    }
}

pub struct DialogEngine {
    backend: Arc<dyn SearchBackend>,
    book: Arc<PatternBook>,
    history_cap: usize,
}

impl DialogEngine {
    pub fn new(backend: Arc<dyn SearchBackend>, book: Arc<PatternBook>) -> Self {
        Self {
            backend,
            book,
            history_cap: DEFAULT_HISTORY_CAP,
        }
    }

    pub fn with_history_cap(mut self, cap: usize) -> Self {
        self.history_cap = cap.max(1);
        self
    }

    pub fn backend(&self) -> &Arc<dyn SearchBackend> {
        &self.backend
    }

    pub fn create_session(&self) -> Session {
        Session {
            id: uuid::Uuid::new_v4().to_string(),
            phase: Phase::Created,
            history: VecDeque::new(),
            history_cap: self.history_cap,
            handled: 0,
        }
    }

    pub fn handle_event(&self, session: &mut Session, event: InboundEvent) -> Result<Vec<Reply>, DialogError> {
        if session.is_ended() {
            return Err(DialogError::SessionEnded(session.id.clone()));
        }
        let mut path = Vec::new();
        let replies = self.step(session.phase, &event, &mut path);
        if let Some(last) = path.last() {
            session.phase = *last;
        }
        session.handled += 1;
        if session.history.len() == session.history_cap {
            session.history.pop_front();
        }
        session.history.push_back(HistoryEntry {
            event,
            replies: replies.clone(),
            path,
        });
        Ok(replies)
    }

    fn step(&self, phase: Phase, event: &InboundEvent, path: &mut Vec<Phase>) -> Vec<Reply> {
        let command = match event {
            InboundEvent::Button(label) if label == ButtonGrid::EXIT => Ok(Command::Exit),
            InboundEvent::Button(label) => Ok(Command::ButtonPress(label.clone())),
            InboundEvent::Text(u) => parse(u),
        };

        if command == Ok(Command::Exit) {
            path.push(Phase::Ended);
            return vec![Reply::text(FAREWELL)];
        }

        if phase == Phase::Created {
            if command != Ok(Command::Start) {
                return vec![Reply::text("Please send /start to begin.")];
            }
            return match self.backend.authenticate() {
                Ok(()) => {
                    path.extend([Phase::Authenticated, Phase::Menu]);
                    vec![Reply::text(greeting()), menu_reply(MENU_PROMPT)]
                }
                Err(e) => vec![Reply::text(format!(
                    "Configuration error: the service could not be started ({e}). Please try /start again later."
                ))],
            };
        }

        match command {
            Ok(Command::Start) => {
                path.push(Phase::Menu);
                vec![Reply::text(greeting()), menu_reply(MENU_PROMPT)]
            }
            Ok(Command::ButtonPress(label)) => self.press(&label, path),
            Ok(Command::CasualTalk) => {
                let InboundEvent::Text(u) = event else {
                    unreachable!("casual talk only comes from text")
                };
                vec![Reply::Text(self.book.respond(u))]
            }
            Ok(cmd) => match self.backend.search(&cmd) {
                Ok(mut replies) => {
                    path.push(Phase::Results);
                    replies.push(menu_reply("What would you like to do next?"));
                    replies
                }
                Err(e) => vec![Reply::Text(apology(&cmd, &e))],
            },
            Err(ParseError::MalformedCommand(kw)) => vec![Reply::Text(usage_hint(kw))],
        }
    }

    fn press(&self, label: &str, path: &mut Vec<Phase>) -> Vec<Reply> {
        let (next, text) = match label {
            ButtonGrid::MOLECULE_INFO => (
                Phase::Guideline(Topic::Molecule),
                guideline(
                    "Molecule Info. Type one of these keywords followed by your query:",
                    &[
                        Keyword::Msy,
                        Keyword::Msm,
                        Keyword::Mid,
                        Keyword::Usn,
                        Keyword::Dis,
                        Keyword::Top50,
                    ],
                ),
            ),
            ButtonGrid::TISSUE_INFO => (
                Phase::Guideline(Topic::Tissue),
                guideline(
                    "Tissue Info. Type one of these keywords followed by your query:",
                    &[Keyword::Tub, Keyword::Tnm, Keyword::Tid],
                ),
            ),
            ButtonGrid::SIMILAR_COMPOUNDS => (
                Phase::Guideline(Topic::Similarity),
                guideline(
                    "Similar compounds. Type one of these keywords followed by your query:",
                    &[Keyword::Sim, Keyword::Sms],
                ),
            ),
            ButtonGrid::CHAT_TO_BOT => (
                Phase::AwaitingQuery(Topic::Free),
                guideline(
                    "Let's chat! Ask me anything, or use a keyword to search ChEMBL:",
                    &Keyword::ALL,
                ),
            ),
            _ => {
                return vec![menu_reply(&format!(
                    "\"{label}\" is not an available option. Please choose one of the buttons."
                ))]
            }
        };
        path.push(next);
        vec![Reply::Text(text)]
    }
}

const FAREWELL: &str = "Goodbye! You have left the search interface. Send /start in a new chat to begin again.";
const MENU_PROMPT: &str = "Choose an option:";

fn menu_reply(prompt: &str) -> Reply {
    Reply::Buttons {
        prompt: prompt.to_owned(),
        grid: ButtonGrid::main_menu(),
    }
}

fn keyword_lines(out: &mut String, keywords: &[Keyword]) {
    for kw in keywords {
        let form = if kw.takes_argument() {
            format!("{kw}/<query>")
        } else {
            kw.to_string()
        };
        let _ = write!(out, "\n{form:<16} {} (e.g. {})", kw.description(), kw.usage());
    }
}

fn greeting() -> String {
    let mut out = String::from(
        "Hello! I am Atreya, your assistant for the ChEMBL database.\n\
         Pick an option from the menu, or type a keyword directly:",
    );
    keyword_lines(&mut out, &Keyword::ALL);
    out
}

fn guideline(title: &str, keywords: &[Keyword]) -> String {
    let mut out = title.to_owned();
    keyword_lines(&mut out, keywords);
    out
}

fn usage_hint(kw: Keyword) -> String {
    format!(
        "The keyword {kw} needs a query: {}. For example: {}",
        kw.description(),
        kw.usage()
    )
}

fn apology(cmd: &Command, e: &ChemblError) -> String {
    let what = cmd.canonical().unwrap_or_default();
    format!("Sorry, I could not complete {what}: {e} [{}]", e.class())
}
