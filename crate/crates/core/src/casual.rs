//! Small AIML-style pattern/template engine for casual talk.
//!
//! Supported subset: `<category>` entries holding one `<pattern>` and one
//! `<template>`. A pattern is a word sequence with at most one `*`, which
//! matches one or more words. Templates may refer to the matched words with
//! `{star}` or `<star/>`.
//!
//! Both patterns and input are tokenized the same way: every character that
//! is not alphanumeric (and not `*` in patterns) becomes a space, words are
//! split on whitespace and compared case-insensitively.

use quick_xml::events::Event;
use quick_xml::{Reader, XmlVersion};
use thiserror::Error;

use crate::grammar::Utterance;

pub const DEFAULT_BOOK: &str = include_str!("../patterns/default.aiml");

const DEFAULT_FALLBACK: &str =
    "I'm not sure I follow. Send /start for the menu, or try a keyword such as msy/paracetamol.";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LoadError {
    #[error("malformed pattern document at line {line}, column {column}: {message}")]
    Malformed {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate pattern `{0}`")]
    DuplicatePattern(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Token {
    Word(String),
    Star,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    pattern: Vec<Token>,
    template: String,
}

impl Category {
    pub fn new(pattern: &str, template: &str) -> Result<Self, String> {
        let tokens = tokenize_pattern(pattern);
        if tokens.is_empty() {
            return Err("empty pattern".into());
        }
        if tokens.iter().filter(|t| **t == Token::Star).count() > 1 {
            return Err(format!("pattern `{pattern}` has more than one `*`"));
        }
        if template.trim().is_empty() {
            return Err(format!("pattern `{pattern}` has an empty template"));
        }
        Ok(Self {
            pattern: tokens,
            template: template.trim().to_owned(),
        })
    }

    /// Pattern in its normalized written form, e.g. `HELLO *`.
    pub fn pattern(&self) -> String {
        self.pattern
            .iter()
            .map(|t| match t {
                Token::Word(w) => w.as_str(),
                Token::Star => "*",
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn template(&self) -> &str {
        &self.template
    }

    fn is_exact(&self) -> bool {
        !self.pattern.contains(&Token::Star)
    }

    fn literal_count(&self) -> usize {
        self.pattern.iter().filter(|t| **t != Token::Star).count()
    }

    /// Returns the words bound to `*` (empty for exact patterns) on a match.
    fn matches<'a>(&self, words: &'a [String]) -> Option<&'a [String]> {
        let Some(star) = self.pattern.iter().position(|t| *t == Token::Star) else {
            let eq = self.pattern.len() == words.len()
                && self
                    .pattern
                    .iter()
                    .zip(words)
                    .all(|(t, w)| t == &Token::Word(w.to_uppercase()));
            return eq.then_some(&words[..0]);
        };
        let head = &self.pattern[..star];
        let tail = &self.pattern[star + 1..];
        if words.len() < head.len() + tail.len() + 1 {
            return None;
        }
        let word_eq = |t: &Token, w: &String| t == &Token::Word(w.to_uppercase());
        let tail_start = words.len() - tail.len();
        let ok = head.iter().zip(&words[..head.len()]).all(|(t, w)| word_eq(t, w))
            && tail.iter().zip(&words[tail_start..]).all(|(t, w)| word_eq(t, w));
        ok.then_some(&words[head.len()..tail_start])
    }
}

fn split_words(text: &str, keep_star: bool) -> Vec<String> {
    text.chars()
        .map(|c| {
            if c.is_alphanumeric() || (keep_star && c == '*') {
                c
            } else {
                ' '
            }
        })
        .collect::<String>()
        .split_whitespace()
        .map(str::to_owned)
        .collect()
}

fn tokenize_pattern(pattern: &str) -> Vec<Token> {
    split_words(pattern, true)
        .into_iter()
        .flat_map(|w| {
            // `HELLO*` is read as `HELLO *`
            let mut out = Vec::new();
            for (i, piece) in w.split('*').enumerate() {
                if i > 0 {
                    out.push(Token::Star);
                }
                if !piece.is_empty() {
                    out.push(Token::Word(piece.to_uppercase()));
                }
            }
            out
        })
        .collect()
}

/// An ordered, immutable set of categories plus a fallback answer.
#[derive(Debug, Clone)]
pub struct PatternBook {
    categories: Vec<Category>,
    fallback: String,
}

impl PatternBook {
    pub fn new(categories: Vec<Category>, fallback: Option<String>) -> Result<Self, LoadError> {
        let mut seen = std::collections::HashSet::new();
        for c in &categories {
            if !seen.insert(c.pattern.clone()) {
                return Err(LoadError::DuplicatePattern(c.pattern()));
            }
        }
        let fallback = fallback
            .filter(|f| !f.trim().is_empty())
            .unwrap_or_else(|| DEFAULT_FALLBACK.to_owned());
        Ok(Self { categories, fallback })
    }

    /// The book shipped with the crate.
    pub fn default_book() -> Self {
        load_patterns(DEFAULT_BOOK).expect("shipped pattern book is valid")
    }

    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn categories(&self) -> &[Category] {
        &self.categories
    }

    pub fn fallback(&self) -> &str {
        &self.fallback
    }

    pub fn respond(&self, u: &Utterance) -> String {
        respond(self, u)
    }
}

/// Parses a pattern document.
///
/// The root element is free (`<aiml>` by convention). An optional
/// `<fallback>` element sets the no-match answer.
pub fn load_patterns(source: &str) -> Result<PatternBook, LoadError> {
    let mut reader = Reader::from_str(source);
    reader.config_mut().trim_text(false);

    #[derive(PartialEq)]
    enum Field {
        None,
        Pattern,
        Template,
        Fallback,
    }

    let mut categories = Vec::new();
    let mut fallback = None;
    let mut in_category = false;
    let mut category_start = 0u64;
    let mut field = Field::None;
    let mut pattern = String::new();
    let mut template = String::new();
    let mut fallback_text = String::new();
    let mut depth = 0usize;

    let malformed = |pos: u64, message: String| {
        let (line, column) = line_col(source, pos as usize);
        LoadError::Malformed { line, column, message }
    };

    loop {
        let pos = reader.buffer_position();
        let event = reader
            .read_event()
            .map_err(|e| malformed(reader.error_position(), e.to_string()))?;
        match event {
            Event::Start(e) => {
                depth += 1;
                let name = e.name();
                match (name.as_ref(), &field, in_category) {
                    ("category", Field::None, false) => {
                        in_category = true;
                        category_start = pos;
                        pattern.clear();
                        template.clear();
                    }
                    ("pattern", Field::None, true) => field = Field::Pattern,
                    ("template", Field::None, true) => field = Field::Template,
                    ("fallback", Field::None, false) => {
                        field = Field::Fallback;
                        fallback_text.clear();
                    }
                    (_, Field::None, false) if depth == 1 => {}
                    (other, _, _) => return Err(malformed(pos, format!("unexpected <{other}>"))),
                }
            }
            Event::Empty(e) => {
                if e.name().as_ref() == "star" && field == Field::Template {
                    template.push_str("{star}");
                } else {
                    return Err(malformed(pos, format!("unexpected <{}/>", e.name().as_ref())));
                }
            }
            Event::End(e) => {
                depth = depth.saturating_sub(1);
                match e.name().as_ref() {
                    "pattern" | "template" if in_category => field = Field::None,
                    "fallback" => {
                        field = Field::None;
                        fallback = Some(fallback_text.trim().to_owned());
                    }
                    "category" => {
                        in_category = false;
                        let category = Category::new(&pattern, &template).map_err(|m| malformed(category_start, m))?;
                        categories.push(category);
                    }
                    _ => {}
                }
            }
            Event::Text(t) => {
                let text = t.xml_content(XmlVersion::Implicit1_0);
                match field {
                    Field::Pattern => pattern.push_str(&text),
                    Field::Template => template.push_str(&text),
                    Field::Fallback => fallback_text.push_str(&text),
                    Field::None if text.trim().is_empty() => {}
                    Field::None => return Err(malformed(pos, "stray text".into())),
                }
            }
            Event::GeneralRef(r) => {
                let char_ref = r.resolve_char_ref().map_err(|e| malformed(pos, e.to_string()))?;
                let name = r.into_inner();
                let mut buf = [0u8; 4];
                let resolved = match (char_ref, name.as_ref()) {
                    (Some(c), _) => &*c.encode_utf8(&mut buf),
                    (None, "amp") => "&",
                    (None, "lt") => "<",
                    (None, "gt") => ">",
                    (None, "quot") => "\"",
                    (None, "apos") => "'",
                    (None, other) => return Err(malformed(pos, format!("unknown entity &{other};"))),
                };
                match field {
                    Field::Pattern => pattern.push_str(resolved),
                    Field::Template => template.push_str(resolved),
                    Field::Fallback => fallback_text.push_str(resolved),
                    Field::None => return Err(malformed(pos, "stray text".into())),
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }
    if in_category || field != Field::None {
        return Err(malformed(source.len() as u64, "unexpected end of document".into()));
    }
    PatternBook::new(categories, fallback)
}

fn line_col(source: &str, pos: usize) -> (usize, usize) {
    let pos = pos.min(source.len());
    let before = &source.as_bytes()[..pos];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let column = pos - before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Answers an utterance: exact patterns beat wildcard patterns, then more
/// literal words win, then document order. Never returns empty text.
pub fn respond(book: &PatternBook, u: &Utterance) -> String {
    let words = split_words(u.normalized(), false);
    if words.is_empty() {
        return book.fallback.clone();
    }
    if let Some(c) = book
        .categories
        .iter()
        .find(|c| c.is_exact() && c.matches(&words).is_some())
    {
        return c.template.clone();
    }
    let mut best: Option<(&Category, &[String])> = None;
    for c in book.categories.iter().filter(|c| !c.is_exact()) {
        if let Some(star) = c.matches(&words) {
            if best.is_none_or(|(b, _)| c.literal_count() > b.literal_count()) {
                best = Some((c, star));
            }
        }
    }
    match best {
        Some((c, star)) => c.template.replace("{star}", &star.join(" ")),
        None => book.fallback.clone(),
    }
}
