//! Turns client records into chat replies.
//!
//! Everything here is pure: depictions are fetched by the caller and handed
//! in as bytes.

mod csv_doc;
mod raster;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use csv_doc::{CsvDocument, RowWidthError};
pub use raster::{render_png, RasterizeError, DEFAULT_RASTER_SIZE, MAX_RASTER_SIZE, MIN_RASTER_SIZE};

use crate::chembl::{MoleculeRecord, SimilarityHit, TargetRecord, TissueRecord};

/// Result sets longer than this are cut, with a note saying how many
/// records were left out.
pub const CARDS_PER_BATCH: usize = 10;

pub const CSV_FILENAME: &str = "approved_drugs.csv";
pub const CSV_MEDIA_TYPE: &str = "text/csv";
pub const CSV_HEADER: [&str; 5] = [
    "chembl_id",
    "pref_name",
    "molecular_formula",
    "first_approval",
    "canonical_smiles",
];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ButtonGrid {
    labels: Vec<String>,
}

impl ButtonGrid {
    pub const MOLECULE_INFO: &'static str = "Molecule Info";
    pub const TISSUE_INFO: &'static str = "Tissue Info";
    pub const SIMILAR_COMPOUNDS: &'static str = "Similar compounds";
    pub const CHAT_TO_BOT: &'static str = "Chat to Bot";
    pub const EXIT: &'static str = "Exit";

    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(labels: I) -> Self {
        Self {
            labels: labels.into_iter().map(Into::into).collect(),
        }
    }

    /// The five-option main menu.
    pub fn main_menu() -> Self {
        Self::new([
            Self::MOLECULE_INFO,
            Self::TISSUE_INFO,
            Self::SIMILAR_COMPOUNDS,
            Self::CHAT_TO_BOT,
            Self::EXIT,
        ])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }
}

/// One outbound chat unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reply {
    Text(String),
    Buttons {
        prompt: String,
        grid: ButtonGrid,
    },
    ImageCard {
        png: Vec<u8>,
        caption: String,
    },
    FileAttachment {
        filename: String,
        media_type: String,
        bytes: Vec<u8>,
    },
}

impl Reply {
    pub fn text(t: impl Into<String>) -> Self {
        Reply::Text(t.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Reply::Text(_) => "text",
            Reply::Buttons { .. } => "buttons",
            Reply::ImageCard { .. } => "image",
            Reply::FileAttachment { .. } => "file",
        }
    }

    /// The human-readable part: text, prompt, caption or file name.
    pub fn body_text(&self) -> &str {
        match self {
            Reply::Text(t) => t,
            Reply::Buttons { prompt, .. } => prompt,
            Reply::ImageCard { caption, .. } => caption,
            Reply::FileAttachment { filename, .. } => filename,
        }
    }
}

/// Caption lines for a molecule card.
pub fn molecule_caption(m: &MoleculeRecord) -> String {
    let mut out = format!("ChEMBL ID: {}", m.chembl_id);
    let mut line = |label: &str, value: &str| {
        let _ = write!(out, "\n{label}: {value}");
    };
    if let Some(name) = &m.pref_name {
        line("Name", name);
    }
    if let Some(formula) = &m.molecular_formula {
        line("Formula", formula);
    }
    if let Some(key) = &m.inchi_key {
        line("InChIKey", key);
    }
    if let Some(smiles) = &m.canonical_smiles {
        line("SMILES", smiles);
    }
    if let Some(phase) = m.max_phase {
        line("Max phase", &phase.to_string());
    }
    if let Some(year) = m.first_approval {
        line("First approval", &year.to_string());
    }
    if let Some(stem) = &m.usan_stem {
        match &m.usan_stem_definition {
            Some(def) => line("USAN stem", &format!("{stem} ({def})")),
            None => line("USAN stem", stem),
        }
    }
    if !m.atc_classifications.is_empty() {
        line("ATC", &m.atc_classifications.join(", "));
    }
    if !m.synonyms.is_empty() {
        const SHOWN: usize = 5;
        let mut s = m.synonyms.iter().take(SHOWN).cloned().collect::<Vec<_>>().join(", ");
        if m.synonyms.len() > SHOWN {
            let _ = write!(s, " (+{} more)", m.synonyms.len() - SHOWN);
        }
        line("Synonyms", &s);
    }
    out
}

/// Image card when a depiction is given and renders, text card otherwise.
pub fn molecule_card(m: &MoleculeRecord, depiction: Option<&[u8]>, raster_size: u32) -> Reply {
    let caption = molecule_caption(m);
    match depiction.map(|svg| render_png(svg, raster_size)) {
        Some(Ok(png)) => Reply::ImageCard { png, caption },
        Some(Err(e)) => Reply::Text(format!("{caption}\n(structure image unavailable: {e})")),
        None => Reply::Text(caption),
    }
}

pub fn format_percent(p: f64) -> String {
    if p.fract() == 0.0 {
        format!("{p:.0}%")
    } else {
        format!("{p:.1}%")
    }
}

/// One card per hit, in input order, each headed by its similarity.
pub fn similarity_list(hits: &[SimilarityHit]) -> Vec<Reply> {
    if hits.is_empty() {
        return vec![Reply::text("No similar compounds found.")];
    }
    hits.iter()
        .map(|h| {
            let mut text = format!(
                "Similarity: {}\nChEMBL ID: {}",
                format_percent(h.similarity_percent),
                h.molecule.chembl_id
            );
            let m = &h.molecule;
            for (label, value) in [
                ("Name", &m.pref_name),
                ("Formula", &m.molecular_formula),
                ("SMILES", &m.canonical_smiles),
            ] {
                if let Some(v) = value {
                    let _ = write!(text, "\n{label}: {v}");
                }
            }
            Reply::Text(text)
        })
        .collect()
}

pub fn target_card(t: &TargetRecord) -> Reply {
    let mut text = format!(
        "Target: {}\nName: {}\nType: {}",
        t.target_chembl_id, t.pref_name, t.target_type
    );
    if let Some(o) = &t.organism {
        let _ = write!(text, "\nOrganism: {o}");
    }
    if !t.gene_symbols.is_empty() {
        let _ = write!(text, "\nGenes: {}", t.gene_symbols.join(", "));
    }
    Reply::Text(text)
}

pub fn tissue_card(t: &TissueRecord) -> Reply {
    let mut text = format!("Tissue: {}\nName: {}", t.tissue_chembl_id, t.pref_name);
    for (label, value) in [("Uberon", &t.uberon_id), ("BTO", &t.bto_id), ("EFO", &t.efo_id)] {
        if let Some(v) = value {
            let _ = write!(text, "\n{label}: {v}");
        }
    }
    Reply::Text(text)
}

/// CSV of approved drugs plus the attachment reply carrying it.
///
/// Callers pass phase-4 records only.
pub fn approved_csv(records: &[MoleculeRecord]) -> (CsvDocument, Reply) {
    let header = CSV_HEADER.iter().map(|h| h.to_string()).collect();
    let rows = records
        .iter()
        .map(|m| {
            vec![
                m.chembl_id.to_string(),
                m.pref_name.clone().unwrap_or_default(),
                m.molecular_formula.clone().unwrap_or_default(),
                m.first_approval.map(|y| y.to_string()).unwrap_or_default(),
                m.canonical_smiles.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let doc = CsvDocument::new(header, rows).expect("rows are built with header width");
    let reply = Reply::FileAttachment {
        filename: CSV_FILENAME.into(),
        media_type: CSV_MEDIA_TYPE.into(),
        bytes: doc.to_bytes(),
    };
    (doc, reply)
}
