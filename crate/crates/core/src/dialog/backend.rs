use crate::chembl::{ChemblClient, ChemblError, MoleculeRecord, TissueKey};
use crate::credential::Credential;
use crate::grammar::Command;
use crate::presenter::{
    approved_csv, molecule_caption, molecule_card, similarity_list, target_card, tissue_card, Reply, CARDS_PER_BATCH,
};

use super::{AuthError, SearchBackend};

pub const TOP_APPROVED_LIMIT: usize = 50;

/// Runs commands against a [`ChemblClient`] and renders them with the
/// presenter. Depictions are fetched here for each shown molecule.
pub struct ChemblBackend {
    client: ChemblClient,
    credential: Option<Credential>,
    raster_size: u32,
    threshold: u8,
}

impl ChemblBackend {
    pub fn new(client: ChemblClient, credential: Option<Credential>, raster_size: u32) -> Self {
        let threshold = client.settings().default_threshold;
        Self {
            client,
            credential,
            raster_size,
            threshold,
        }
    }

    pub fn client(&self) -> &ChemblClient {
        &self.client
    }

    fn card(&self, m: &MoleculeRecord) -> Reply {
        match self.client.fetch_depiction_svg(m.chembl_id.as_str()) {
            Ok(svg) => molecule_card(m, Some(&svg), self.raster_size),
            Err(ChemblError::NotFound(_)) => molecule_card(m, None, self.raster_size),
            Err(e) => Reply::Text(format!("{}\n(structure image unavailable: {e})", molecule_caption(m))),
        }
    }

    fn molecule_replies(&self, header: String, empty: String, records: &[MoleculeRecord]) -> Vec<Reply> {
        if records.is_empty() {
            return vec![Reply::Text(empty)];
        }
        let mut out = vec![Reply::Text(header)];
        out.extend(records.iter().take(CARDS_PER_BATCH).map(|m| self.card(m)));
        push_more_note(&mut out, records.len());
        out
    }
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn push_more_note(out: &mut Vec<Reply>, total: usize) {
    if total > CARDS_PER_BATCH {
        out.push(Reply::Text(format!(
            "Showing the first {CARDS_PER_BATCH} of {total} results. Refine your query to narrow them down."
        )));
    }
}

fn cards<T>(header: String, empty: String, items: &[T], card: impl Fn(&T) -> Reply) -> Vec<Reply> {
    if items.is_empty() {
        return vec![Reply::Text(empty)];
    }
    let mut out = vec![Reply::Text(header)];
    out.extend(items.iter().take(CARDS_PER_BATCH).map(card));
    push_more_note(&mut out, items.len());
    out
}

impl SearchBackend for ChemblBackend {
    fn authenticate(&self) -> Result<(), AuthError> {
        if self.credential.is_none() {
            return Err(AuthError("no valid access token configured".into()));
        }
        self.client
            .status()
            .map_err(|e| AuthError(format!("ChEMBL is not reachable: {e}")))
    }

    fn search(&self, command: &Command) -> Result<Vec<Reply>, ChemblError> {
        let n_mol = |n: usize| plural(n, "molecule", "molecules");
        Ok(match command {
            Command::MoleculeBySynonym(name) => {
                let found = self.client.molecule_by_synonym(name)?;
                self.molecule_replies(
                    format!("Found {} matching \"{name}\":", n_mol(found.len())),
                    format!("No molecules found for \"{name}\"."),
                    &found,
                )
            }
            Command::MoleculeBySmiles(smiles) => {
                let found = self.client.molecule_by_smiles(smiles)?;
                self.molecule_replies(
                    format!("Found {} with structure {smiles}:", n_mol(found.len())),
                    format!("No molecules found with structure {smiles}."),
                    &found,
                )
            }
            Command::MoleculeByChemblId(id) => {
                let m = self.client.molecule_by_chembl_id(id)?;
                vec![self.card(&m)]
            }
            Command::SimilarBySmiles(smiles) => {
                let hits = self.client.similar_by_smiles(smiles, self.threshold)?;
                let mut out = vec![Reply::Text(format!(
                    "Compounds similar to {smiles} (threshold {}%), most similar first:",
                    self.threshold
                ))];
                let shown = &hits[..hits.len().min(CARDS_PER_BATCH)];
                out.extend(similarity_list(shown));
                push_more_note(&mut out, hits.len());
                out
            }
            Command::SimilarByDrugName(name) => {
                let result = self.client.similar_by_drug_name(name, self.threshold)?;
                let resolved = &result.resolved;
                let label = resolved.pref_name.as_deref().unwrap_or(resolved.chembl_id.as_str());
                let mut out = vec![Reply::Text(format!(
                    "Compounds similar to {label} ({}, threshold {}%), most similar first:",
                    resolved.chembl_id, self.threshold
                ))];
                let shown = &result.hits[..result.hits.len().min(CARDS_PER_BATCH)];
                out.extend(similarity_list(shown));
                push_more_note(&mut out, result.hits.len());
                if result.candidates > 1 {
                    out.push(Reply::Text(format!(
                        "Note: \"{name}\" matched {} with structures; used {} ({label}).",
                        n_mol(result.candidates),
                        resolved.chembl_id
                    )));
                }
                out
            }
            Command::TargetByGene(gene) => {
                let targets = self.client.target_by_gene(gene)?;
                cards(
                    format!("Found {} for gene {gene}:", plural(targets.len(), "target", "targets")),
                    format!("No targets found for gene {gene}."),
                    &targets,
                    target_card,
                )
            }
            Command::TissueByUberonId(id) | Command::TissueByAnyId(id) | Command::TissueByName(id) => {
                let key = match command {
                    Command::TissueByUberonId(_) => TissueKey::UberonId(id.clone()),
                    Command::TissueByName(_) => TissueKey::Name(id.clone()),
                    _ => TissueKey::AnyId(id.clone()),
                };
                let tissues = self.client.tissue_lookup(&key)?;
                cards(
                    format!("Found {} for {id}:", plural(tissues.len(), "tissue", "tissues")),
                    format!("No tissues found for {id}."),
                    &tissues,
                    tissue_card,
                )
            }
            Command::DrugByUsanStem(stem) => {
                let found = self.client.drug_by_usan_stem(stem)?;
                self.molecule_replies(
                    format!("Found {} with USAN stem {stem}:", n_mol(found.len())),
                    format!("No molecules found with USAN stem {stem}."),
                    &found,
                )
            }
            Command::ApprovedDrugsByDisease(disease) => {
                let found = self.client.approved_drugs_by_disease(disease)?;
                self.molecule_replies(
                    format!(
                        "Found {} approved for \"{disease}\":",
                        plural(found.len(), "drug", "drugs")
                    ),
                    format!("No approved drugs found for \"{disease}\"."),
                    &found,
                )
            }
            Command::TopApprovedDrugs => {
                let records = self.client.top_approved_drugs(TOP_APPROVED_LIMIT)?;
                if records.is_empty() {
                    vec![Reply::text("No approved drugs were returned.")]
                } else {
                    let (_, file) = approved_csv(&records);
                    vec![
                        Reply::Text(format!(
                            "Here are the {} most recently approved drugs as a CSV file.",
                            records.len()
                        )),
                        file,
                    ]
                }
            }
            Command::Start | Command::ButtonPress(_) | Command::Exit | Command::CasualTalk => {
                return Err(ChemblError::Precondition("not a database query".into()))
            }
        })
    }
}
