//! Keyword grammar for chat input.
//!
//! Every chemical use case has a short keyword. Three spellings are accepted
//! for each one: `kw/arg`, `/kw:arg` and `kw:arg`. Keywords are matched
//! case-insensitively; arguments are kept verbatim (after trimming) because
//! SMILES strings are case-sensitive.

use std::fmt;

use thiserror::Error;

/// A user utterance as received plus its normalized form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Utterance {
    raw: String,
    normalized: String,
}

impl Utterance {
    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn normalized(&self) -> &str {
        &self.normalized
    }

    /// The raw text with whitespace collapsed but case preserved.
    fn collapsed(&self) -> String {
        collapse_whitespace(&self.raw)
    }
}

fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Lowercases, trims and collapses internal whitespace. Total and idempotent.
pub fn normalize(raw: &str) -> Utterance {
    Utterance {
        raw: raw.to_owned(),
        normalized: collapse_whitespace(raw).to_lowercase(),
    }
}

/// The twelve chemical use-case keywords.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Keyword {
    Msy,
    Msm,
    Mid,
    Sim,
    Sms,
    Tgg,
    Tub,
    Tnm,
    Tid,
    Usn,
    Dis,
    Top50,
}

impl Keyword {
    pub const ALL: [Keyword; 12] = [
        Keyword::Msy,
        Keyword::Msm,
        Keyword::Mid,
        Keyword::Sim,
        Keyword::Sms,
        Keyword::Tgg,
        Keyword::Tub,
        Keyword::Tnm,
        Keyword::Tid,
        Keyword::Usn,
        Keyword::Dis,
        Keyword::Top50,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Msy => "msy",
            Keyword::Msm => "msm",
            Keyword::Mid => "mid",
            Keyword::Sim => "sim",
            Keyword::Sms => "sms",
            Keyword::Tgg => "tgg",
            Keyword::Tub => "tub",
            Keyword::Tnm => "tnm",
            Keyword::Tid => "tid",
            Keyword::Usn => "usn",
            Keyword::Dis => "dis",
            Keyword::Top50 => "top50",
        }
    }

    pub fn takes_argument(self) -> bool {
        self != Keyword::Top50
    }

    /// Short description used in help and guideline texts.
    pub fn description(self) -> &'static str {
        match self {
            Keyword::Msy => "search molecules by name or synonym",
            Keyword::Msm => "search molecules by SMILES",
            Keyword::Mid => "look up a molecule by ChEMBL ID",
            Keyword::Sim => "compounds similar to a drug name",
            Keyword::Sms => "compounds similar to a SMILES",
            Keyword::Tgg => "targets by gene name",
            Keyword::Tub => "tissue by Uberon ID",
            Keyword::Tnm => "tissue by name",
            Keyword::Tid => "tissue by any ID (Uberon, BTO, EFO, ChEMBL) or name",
            Keyword::Usn => "approval year by USAN stem",
            Keyword::Dis => "approved drugs for a disease",
            Keyword::Top50 => "download the top 50 approved drugs as CSV",
        }
    }

    /// An example argument for usage hints.
    pub fn example(self) -> &'static str {
        match self {
            Keyword::Msy => "paracetamol",
            Keyword::Msm | Keyword::Sms => "CC(=O)Nc1ccc(O)cc1",
            Keyword::Mid => "CHEMBL112",
            Keyword::Sim => "panadol",
            Keyword::Tgg => "BRD4",
            Keyword::Tub => "UBERON:0000955",
            Keyword::Tnm => "brain",
            Keyword::Tid => "BTO:0000142",
            Keyword::Usn => "-olol",
            Keyword::Dis => "asthma",
            Keyword::Top50 => "",
        }
    }

    /// Canonical help form, e.g. `msy/<query>`.
    pub fn usage(self) -> String {
        if self.takes_argument() {
            format!("{}/{}", self.as_str(), self.example())
        } else {
            self.as_str().to_owned()
        }
    }

    fn build(self, arg: String) -> Command {
        match self {
            Keyword::Msy => Command::MoleculeBySynonym(arg),
            Keyword::Msm => Command::MoleculeBySmiles(arg),
            Keyword::Mid => Command::MoleculeByChemblId(arg),
            Keyword::Sim => Command::SimilarByDrugName(arg),
            Keyword::Sms => Command::SimilarBySmiles(arg),
            Keyword::Tgg => Command::TargetByGene(arg),
            Keyword::Tub => Command::TissueByUberonId(arg),
            Keyword::Tnm => Command::TissueByName(arg),
            Keyword::Tid => Command::TissueByAnyId(arg),
            Keyword::Usn => Command::DrugByUsanStem(arg),
            Keyword::Dis => Command::ApprovedDrugsByDisease(arg),
            Keyword::Top50 => Command::TopApprovedDrugs,
        }
    }
}

impl fmt::Display for Keyword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parsed user intent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    MoleculeBySynonym(String),
    MoleculeBySmiles(String),
    MoleculeByChemblId(String),
    SimilarByDrugName(String),
    SimilarBySmiles(String),
    TargetByGene(String),
    TissueByUberonId(String),
    TissueByName(String),
    TissueByAnyId(String),
    DrugByUsanStem(String),
    ApprovedDrugsByDisease(String),
    TopApprovedDrugs,
    Start,
    ButtonPress(String),
    Exit,
    CasualTalk,
}

impl Command {
    pub fn keyword(&self) -> Option<Keyword> {
        Some(match self {
            Command::MoleculeBySynonym(_) => Keyword::Msy,
            Command::MoleculeBySmiles(_) => Keyword::Msm,
            Command::MoleculeByChemblId(_) => Keyword::Mid,
            Command::SimilarByDrugName(_) => Keyword::Sim,
            Command::SimilarBySmiles(_) => Keyword::Sms,
            Command::TargetByGene(_) => Keyword::Tgg,
            Command::TissueByUberonId(_) => Keyword::Tub,
            Command::TissueByName(_) => Keyword::Tnm,
            Command::TissueByAnyId(_) => Keyword::Tid,
            Command::DrugByUsanStem(_) => Keyword::Usn,
            Command::ApprovedDrugsByDisease(_) => Keyword::Dis,
            Command::TopApprovedDrugs => Keyword::Top50,
            Command::Start | Command::ButtonPress(_) | Command::Exit | Command::CasualTalk => return None,
        })
    }

    pub fn argument(&self) -> Option<&str> {
        match self {
            Command::MoleculeBySynonym(a)
            | Command::MoleculeBySmiles(a)
            | Command::MoleculeByChemblId(a)
            | Command::SimilarByDrugName(a)
            | Command::SimilarBySmiles(a)
            | Command::TargetByGene(a)
            | Command::TissueByUberonId(a)
            | Command::TissueByName(a)
            | Command::TissueByAnyId(a)
            | Command::DrugByUsanStem(a)
            | Command::ApprovedDrugsByDisease(a) => Some(a),
            _ => None,
        }
    }

    /// True for the twelve database use cases.
    pub fn is_chemical(&self) -> bool {
        self.keyword().is_some()
    }

    /// The canonical `kw/arg` spelling, if this is a keyword command.
    pub fn canonical(&self) -> Option<String> {
        let kw = self.keyword()?;
        Some(match self.argument() {
            Some(arg) => format!("{kw}/{arg}"),
            None => kw.as_str().to_owned(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("keyword `{0}` needs an argument, e.g. {usage}", usage = .0.usage())]
    MalformedCommand(Keyword),
}

/// Parses a normalized utterance into a [`Command`].
///
/// Unrecognized text is casual talk. `top50` ignores any argument.
pub fn parse(u: &Utterance) -> Result<Command, ParseError> {
    let lower = u.normalized();
    if lower == "/start" || lower.starts_with("/start ") {
        return Ok(Command::Start);
    }
    if matches!(lower, "/exit" | "exit" | "/quit" | "quit") {
        return Ok(Command::Exit);
    }

    let text = u.collapsed();
    let (slashed, rest) = match text.strip_prefix('/') {
        Some(rest) => (true, rest),
        None => (false, text.as_str()),
    };

    for kw in Keyword::ALL {
        let name = kw.as_str();
        let Some(head) = rest.get(..name.len()) else {
            continue;
        };
        if !head.eq_ignore_ascii_case(name) {
            continue;
        }
        let tail = &rest[name.len()..];
        let arg = if tail.is_empty() {
            ""
        } else {
            let mut chars = tail.chars();
            let sep = chars.next();
            let ok = match sep {
                Some(':') => true,
                Some('/') => !slashed,
                _ => false,
            };
            if !ok {
                continue;
            }
            chars.as_str().trim()
        };
        if !kw.takes_argument() {
            return Ok(Command::TopApprovedDrugs);
        }
        if arg.is_empty() {
            return Err(ParseError::MalformedCommand(kw));
        }
        return Ok(kw.build(arg.to_owned()));
    }
    Ok(Command::CasualTalk)
}
