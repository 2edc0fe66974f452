//! Typed ChEMBL records and their JSON decoding.
//!
//! Decoding is strict about invariants: a record that violates one (bad
//! identifier shape, malformed InChIKey, phase out of range) fails with a
//! [`DecodeError`] instead of being silently patched.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::error::DecodeError;

/// A ChEMBL accession: `CHEMBL` followed by digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ChemblId(String);

impl ChemblId {
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        let digits = text
            .get(..6)
            .filter(|p| p.eq_ignore_ascii_case("CHEMBL"))
            .map(|_| &text[6..])?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        Some(Self(format!("CHEMBL{digits}")))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ChemblId {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Self::parse(&value).ok_or_else(|| format!("not a ChEMBL id: {value}"))
    }
}

impl From<ChemblId> for String {
    fn from(id: ChemblId) -> Self {
        id.0
    }
}

impl fmt::Display for ChemblId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// True when `key` has the 14-10-1 InChIKey layout.
pub fn is_inchi_key(key: &str) -> bool {
    let b = key.as_bytes();
    b.len() == 27
        && b[14] == b'-'
        && b[25] == b'-'
        && b.iter()
            .enumerate()
            .all(|(i, c)| i == 14 || i == 25 || c.is_ascii_uppercase())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoleculeRecord {
    pub chembl_id: ChemblId,
    pub pref_name: Option<String>,
    pub canonical_smiles: Option<String>,
    pub molecular_formula: Option<String>,
    pub inchi_key: Option<String>,
    pub max_phase: Option<u8>,
    pub first_approval: Option<i32>,
    pub usan_stem: Option<String>,
    /// Stem class text, shown as the classification for USAN results.
    pub usan_stem_definition: Option<String>,
    pub atc_classifications: Vec<String>,
    pub synonyms: Vec<String>,
}

impl MoleculeRecord {
    pub fn is_approved(&self) -> bool {
        self.max_phase == Some(4)
    }

    /// Case-insensitive substring match on the preferred name or any synonym.
    pub fn matches_name(&self, name: &str) -> bool {
        let needle = name.to_lowercase();
        self.pref_name
            .iter()
            .chain(&self.synonyms)
            .any(|s| s.to_lowercase().contains(&needle))
    }

    pub fn from_json(v: &Value) -> Result<Self, DecodeError> {
        let chembl_id = id_field(v, "molecule_chembl_id")?;
        let structures = v.get("molecule_structures").filter(|s| !s.is_null());
        let properties = v.get("molecule_properties").filter(|s| !s.is_null());

        let inchi_key = structures.and_then(|s| opt_str(s, "standard_inchi_key"));
        if let Some(key) = &inchi_key {
            if !is_inchi_key(key) {
                return Err(DecodeError::invalid(
                    chembl_id.as_str(),
                    format!("malformed InChIKey `{key}`"),
                ));
            }
        }
        let max_phase = phase_field(v, "max_phase", chembl_id.as_str())?;
        let first_approval = match v.get("first_approval") {
            None | Some(Value::Null) => None,
            Some(Value::Number(n)) => Some(
                n.as_i64()
                    .and_then(|y| i32::try_from(y).ok())
                    .ok_or_else(|| DecodeError::invalid(chembl_id.as_str(), format!("bad first_approval {n}")))?,
            ),
            Some(other) => {
                return Err(DecodeError::invalid(
                    chembl_id.as_str(),
                    format!("bad first_approval {other}"),
                ))
            }
        };

        let mut synonyms: Vec<String> = Vec::new();
        if let Some(list) = v.get("molecule_synonyms").and_then(Value::as_array) {
            for s in list {
                if let Some(name) = opt_str(s, "molecule_synonym") {
                    if !synonyms.iter().any(|x| x.eq_ignore_ascii_case(&name)) {
                        synonyms.push(name);
                    }
                }
            }
        }
        let atc_classifications = v
            .get("atc_classifications")
            .and_then(Value::as_array)
            .map(|a| a.iter().filter_map(|x| x.as_str().map(str::to_owned)).collect())
            .unwrap_or_default();

        Ok(Self {
            pref_name: opt_str(v, "pref_name"),
            canonical_smiles: structures.and_then(|s| opt_str(s, "canonical_smiles")),
            molecular_formula: properties.and_then(|p| opt_str(p, "full_molformula")),
            inchi_key,
            max_phase,
            first_approval,
            usan_stem: opt_str(v, "usan_stem"),
            usan_stem_definition: opt_str(v, "usan_stem_definition"),
            atc_classifications,
            synonyms,
            chembl_id,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityHit {
    pub molecule: MoleculeRecord,
    pub similarity_percent: f64,
}

impl SimilarityHit {
    pub fn from_json(v: &Value) -> Result<Self, DecodeError> {
        let molecule = MoleculeRecord::from_json(v)?;
        let similarity_percent = number_field(v, "similarity")
            .ok_or_else(|| DecodeError::invalid(molecule.chembl_id.as_str(), "missing similarity"))?;
        if !(0.0..=100.0).contains(&similarity_percent) {
            return Err(DecodeError::invalid(
                molecule.chembl_id.as_str(),
                format!("similarity {similarity_percent} outside [0, 100]"),
            ));
        }
        Ok(Self {
            molecule,
            similarity_percent,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetRecord {
    pub target_chembl_id: ChemblId,
    pub pref_name: String,
    pub organism: Option<String>,
    pub target_type: String,
    pub gene_symbols: Vec<String>,
}

impl TargetRecord {
    pub fn from_json(v: &Value) -> Result<Self, DecodeError> {
        let target_chembl_id = id_field(v, "target_chembl_id")?;
        let mut gene_symbols: Vec<String> = Vec::new();
        for component in v
            .get("target_components")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            for syn in component
                .get("target_component_synonyms")
                .and_then(Value::as_array)
                .into_iter()
                .flatten()
            {
                let is_gene = syn
                    .get("syn_type")
                    .and_then(Value::as_str)
                    .is_some_and(|t| t.starts_with("GENE_SYMBOL"));
                if let (true, Some(sym)) = (is_gene, opt_str(syn, "component_synonym")) {
                    if !gene_symbols.contains(&sym) {
                        gene_symbols.push(sym);
                    }
                }
            }
        }
        Ok(Self {
            pref_name: req_str(v, "pref_name", target_chembl_id.as_str())?,
            organism: opt_str(v, "organism"),
            target_type: req_str(v, "target_type", target_chembl_id.as_str())?,
            gene_symbols,
            target_chembl_id,
        })
    }

    pub fn has_gene(&self, gene: &str) -> bool {
        self.gene_symbols.iter().any(|g| g.eq_ignore_ascii_case(gene))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TissueRecord {
    pub tissue_chembl_id: ChemblId,
    pub pref_name: String,
    pub uberon_id: Option<String>,
    pub bto_id: Option<String>,
    pub efo_id: Option<String>,
}

impl TissueRecord {
    pub fn from_json(v: &Value) -> Result<Self, DecodeError> {
        let tissue_chembl_id = id_field(v, "tissue_chembl_id")?;
        let uberon_id = opt_str(v, "uberon_id");
        if let Some(u) = &uberon_id {
            let ok = u
                .strip_prefix("UBERON:")
                .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
            if !ok {
                return Err(DecodeError::invalid(
                    tissue_chembl_id.as_str(),
                    format!("malformed Uberon id `{u}`"),
                ));
            }
        }
        Ok(Self {
            pref_name: req_str(v, "pref_name", tissue_chembl_id.as_str())?,
            bto_id: opt_str(v, "bto_id"),
            efo_id: opt_str(v, "efo_id"),
            uberon_id,
            tissue_chembl_id,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrugIndicationRecord {
    pub molecule_chembl_id: ChemblId,
    pub disease_term: String,
    pub max_phase_for_indication: u8,
}

impl DrugIndicationRecord {
    pub fn from_json(v: &Value) -> Result<Self, DecodeError> {
        let molecule_chembl_id = id_field(v, "molecule_chembl_id")?;
        let disease_term = opt_str(v, "efo_term")
            .or_else(|| opt_str(v, "mesh_heading"))
            .ok_or_else(|| DecodeError::invalid(molecule_chembl_id.as_str(), "missing disease term"))?;
        let max_phase_for_indication = phase_field(v, "max_phase_for_ind", molecule_chembl_id.as_str())?
            .ok_or_else(|| DecodeError::invalid(molecule_chembl_id.as_str(), "missing max_phase_for_ind"))?;
        Ok(Self {
            molecule_chembl_id,
            disease_term,
            max_phase_for_indication,
        })
    }
}

fn opt_str(v: &Value, key: &str) -> Option<String> {
    v.get(key)
        .and_then(Value::as_str)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
}

fn req_str(v: &Value, key: &str, id: &str) -> Result<String, DecodeError> {
    opt_str(v, key).ok_or_else(|| DecodeError::invalid(id, format!("missing {key}")))
}

fn id_field(v: &Value, key: &str) -> Result<ChemblId, DecodeError> {
    let raw = v
        .get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| DecodeError::invalid("?", format!("missing {key}")))?;
    ChemblId::parse(raw)
        .filter(|id| id.as_str() == raw)
        .ok_or_else(|| DecodeError::invalid(raw, format!("{key} is not a ChEMBL id")))
}

/// Numbers arrive either as JSON numbers or as decimal strings ("4.0").
fn number_field(v: &Value, key: &str) -> Option<f64> {
    match v.get(key)? {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

/// Clinical phase. `-1` (unknown) maps to `None`; fractional early phases
/// round down.
fn phase_field(v: &Value, key: &str, id: &str) -> Result<Option<u8>, DecodeError> {
    match v.get(key) {
        None | Some(Value::Null) => return Ok(None),
        Some(_) => {}
    }
    let phase = number_field(v, key).ok_or_else(|| DecodeError::invalid(id, format!("unparseable {key}")))?;
    if phase == -1.0 {
        return Ok(None);
    }
    if !(0.0..=4.0).contains(&phase) {
        return Err(DecodeError::invalid(id, format!("{key} {phase} outside 0..4")));
    }
    Ok(Some(phase.floor() as u8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn chembl_id_shape() {
        assert_eq!(ChemblId::parse("CHEMBL112").unwrap().as_str(), "CHEMBL112");
        assert_eq!(ChemblId::parse("chembl25").unwrap().as_str(), "CHEMBL25");
        assert!(ChemblId::parse("112").is_none());
        assert!(ChemblId::parse("CHEMBL").is_none());
        assert!(ChemblId::parse("CHEMBL12a").is_none());
    }

    #[test]
    fn inchi_key_shape() {
        assert!(is_inchi_key("RZVAJINKPMORJF-UHFFFAOYSA-N"));
        assert!(!is_inchi_key("RZVAJINKPMORJF-UHFFFAOYSA"));
        assert!(!is_inchi_key("RZVAJINKPMORJFXUHFFFAOYSA-N"));
    }

    fn paracetamol() -> Value {
        json!({
            "molecule_chembl_id": "CHEMBL112",
            "pref_name": "PARACETAMOL",
            "max_phase": "4.0",
            "first_approval": 1951,
            "molecule_structures": {
                "canonical_smiles": "CC(=O)Nc1ccc(O)cc1",
                "standard_inchi_key": "RZVAJINKPMORJF-UHFFFAOYSA-N"
            },
            "molecule_properties": {"full_molformula": "C8H9NO2"},
            "molecule_synonyms": [
                {"molecule_synonym": "Acetaminophen", "syn_type": "USAN"},
                {"molecule_synonym": "Panadol", "syn_type": "TRADE_NAME"},
                {"molecule_synonym": "PANADOL", "syn_type": "OTHER"}
            ],
            "atc_classifications": ["N02BE01"]
        })
    }

    #[test]
    fn decodes_molecule() {
        let m = MoleculeRecord::from_json(&paracetamol()).unwrap();
        assert_eq!(m.chembl_id.as_str(), "CHEMBL112");
        assert_eq!(m.max_phase, Some(4));
        assert_eq!(m.molecular_formula.as_deref(), Some("C8H9NO2"));
        assert_eq!(m.synonyms, vec!["Acetaminophen", "Panadol"]);
        assert!(m.matches_name("panadol"));
        assert!(m.matches_name("PARACET"));
        assert!(!m.matches_name("aspirin"));
    }

    #[test]
    fn rejects_bad_records() {
        let mut v = paracetamol();
        v["max_phase"] = json!(7);
        assert!(MoleculeRecord::from_json(&v).is_err());

        let mut v = paracetamol();
        v["molecule_structures"]["standard_inchi_key"] = json!("SHORT-KEY");
        assert!(MoleculeRecord::from_json(&v).is_err());

        let mut v = paracetamol();
        v["molecule_chembl_id"] = json!("112");
        assert!(MoleculeRecord::from_json(&v).is_err());
    }

    #[test]
    fn unknown_phase_is_none() {
        let mut v = paracetamol();
        v["max_phase"] = json!("-1.0");
        assert_eq!(MoleculeRecord::from_json(&v).unwrap().max_phase, None);
        v["max_phase"] = json!("0.5");
        assert_eq!(MoleculeRecord::from_json(&v).unwrap().max_phase, Some(0));
        v["max_phase"] = Value::Null;
        assert_eq!(MoleculeRecord::from_json(&v).unwrap().max_phase, None);
    }

    #[test]
    fn similarity_bounds() {
        let mut v = paracetamol();
        v["similarity"] = json!("100.0");
        assert_eq!(SimilarityHit::from_json(&v).unwrap().similarity_percent, 100.0);
        v["similarity"] = json!(101.5);
        assert!(SimilarityHit::from_json(&v).is_err());
        v.as_object_mut().unwrap().remove("similarity");
        assert!(SimilarityHit::from_json(&v).is_err());
    }

    #[test]
    fn target_gene_symbols() {
        let v = json!({
            "target_chembl_id": "CHEMBL1163125",
            "pref_name": "Bromodomain-containing protein 4",
            "organism": "Homo sapiens",
            "target_type": "SINGLE PROTEIN",
            "target_components": [{
                "target_component_synonyms": [
                    {"component_synonym": "BRD4", "syn_type": "GENE_SYMBOL"},
                    {"component_synonym": "HUNK1", "syn_type": "GENE_SYMBOL_OTHER"},
                    {"component_synonym": "Protein HUNK1", "syn_type": "UNIPROT"}
                ]
            }]
        });
        let t = TargetRecord::from_json(&v).unwrap();
        assert_eq!(t.gene_symbols, vec!["BRD4", "HUNK1"]);
        assert!(t.has_gene("brd4"));
    }

    #[test]
    fn tissue_uberon_shape() {
        let v = json!({"tissue_chembl_id": "CHEMBL3559723", "pref_name": "Brain", "uberon_id": "UBERON:0000955"});
        assert!(TissueRecord::from_json(&v).is_ok());
        let v = json!({"tissue_chembl_id": "CHEMBL3559723", "pref_name": "Brain", "uberon_id": "0000955"});
        assert!(TissueRecord::from_json(&v).is_err());
    }

    #[test]
    fn indication_phase() {
        let v = json!({"molecule_chembl_id": "CHEMBL714", "efo_term": "asthma", "max_phase_for_ind": "4.0"});
        let d = DrugIndicationRecord::from_json(&v).unwrap();
        assert_eq!(d.max_phase_for_indication, 4);
        assert_eq!(d.disease_term, "asthma");
    }
}
