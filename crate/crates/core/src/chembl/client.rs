use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde_json::Value;

use super::endpoints as ep;
use super::error::ChemblError;
use super::model::{ChemblId, DrugIndicationRecord, MoleculeRecord, SimilarityHit, TargetRecord, TissueRecord};
use super::transport::{Transport, TransportRequest, TransportResponse};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClientSettings {
    pub page_size: usize,
    /// Upper bound on records gathered across pages for one call.
    pub max_records: usize,
    pub default_threshold: u8,
}

impl Default for ClientSettings {
    fn default() -> Self {
        Self {
            page_size: 20,
            max_records: 200,
            default_threshold: 70,
        }
    }
}

/// Lookup key for tissues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TissueKey {
    UberonId(String),
    Name(String),
    /// Dispatched on prefix: `UBERON:`, `BTO:`, `EFO:`, `CHEMBL`, else name.
    AnyId(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TissueField {
    UberonId,
    BtoId,
    EfoId,
    ChemblId,
    Name,
}

impl TissueField {
    fn param(self) -> &'static str {
        match self {
            TissueField::UberonId => ep::TISSUE_UBERON_ID,
            TissueField::BtoId => ep::TISSUE_BTO_ID,
            TissueField::EfoId => ep::TISSUE_EFO_ID,
            TissueField::ChemblId => ep::TISSUE_CHEMBL_ID,
            TissueField::Name => ep::TISSUE_NAME_ICONTAINS,
        }
    }
}

fn strip_prefix_ci<'a>(text: &'a str, prefix: &str) -> Option<&'a str> {
    let head = text.get(..prefix.len())?;
    head.eq_ignore_ascii_case(prefix).then(|| &text[prefix.len()..])
}

impl TissueKey {
    /// Resolves the key to the filter field and value sent to the service.
    pub fn dispatch(&self) -> Result<(TissueField, String), ChemblError> {
        let (text, any) = match self {
            TissueKey::UberonId(t) => (t.trim(), false),
            TissueKey::Name(t) => {
                let t = t.trim();
                if t.is_empty() {
                    return Err(ChemblError::Precondition("tissue name is empty".into()));
                }
                return Ok((TissueField::Name, t.to_owned()));
            }
            TissueKey::AnyId(t) => (t.trim(), true),
        };
        if text.is_empty() {
            return Err(ChemblError::Precondition("tissue id is empty".into()));
        }
        if let Some(rest) = strip_prefix_ci(text, "UBERON:") {
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ChemblError::Precondition(format!("`{text}` is not an Uberon id")));
            }
            return Ok((TissueField::UberonId, format!("UBERON:{rest}")));
        }
        if !any {
            return Err(ChemblError::Precondition(format!(
                "`{text}` is not an Uberon id (expected UBERON:<digits>)"
            )));
        }
        if let Some(rest) = strip_prefix_ci(text, "BTO:") {
            return Ok((TissueField::BtoId, format!("BTO:{rest}")));
        }
        if let Some(rest) = strip_prefix_ci(text, "EFO:") {
            return Ok((TissueField::EfoId, format!("EFO:{rest}")));
        }
        if let Some(id) = ChemblId::parse(text) {
            return Ok((TissueField::ChemblId, id.to_string()));
        }
        Ok((TissueField::Name, text.to_owned()))
    }
}

/// Result of a similarity search started from a drug name.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarByName {
    pub resolved: MoleculeRecord,
    /// How many synonym matches carried a structure; above one means the
    /// name was ambiguous.
    pub candidates: usize,
    pub hits: Vec<SimilarityHit>,
}

/// Items gathered across pages together with the service's total.
#[derive(Debug, Clone, PartialEq)]
pub struct Listing {
    pub items: Vec<Value>,
    pub total_count: usize,
}

/// Typed client for the ChEMBL web services.
#[derive(Clone)]
pub struct ChemblClient {
    transport: Arc<dyn Transport>,
    settings: ClientSettings,
}

fn require(text: &str, what: &str) -> Result<String, ChemblError> {
    let t = text.trim();
    if t.is_empty() {
        Err(ChemblError::Precondition(format!("{what} is empty")))
    } else {
        Ok(t.to_owned())
    }
}

fn check_threshold(threshold: u8) -> Result<(), ChemblError> {
    if (ep::MIN_SIMILARITY..=100).contains(&threshold) {
        Ok(())
    } else {
        Err(ChemblError::Precondition(format!(
            "similarity threshold {threshold} outside [{}, 100]",
            ep::MIN_SIMILARITY
        )))
    }
}

fn parse_json(resp: &TransportResponse) -> Result<Value, ChemblError> {
    serde_json::from_slice(&resp.body).map_err(|e| ChemblError::Decode(e.to_string()))
}

fn decode_all<T>(
    items: &[Value],
    f: impl Fn(&Value) -> Result<T, super::error::DecodeError>,
) -> Result<Vec<T>, ChemblError> {
    items.iter().map(|v| f(v).map_err(ChemblError::from)).collect()
}

/// Sorts hits by similarity, highest first, and drops any under `threshold`.
pub fn order_hits(mut hits: Vec<SimilarityHit>, threshold: u8) -> Vec<SimilarityHit> {
    hits.retain(|h| h.similarity_percent >= f64::from(threshold));
    hits.sort_by(|a, b| b.similarity_percent.total_cmp(&a.similarity_percent));
    hits
}

impl ChemblClient {
    pub fn new(transport: Arc<dyn Transport>, settings: ClientSettings) -> Self {
        Self { transport, settings }
    }

    pub fn settings(&self) -> &ClientSettings {
        &self.settings
    }

    fn send(&self, req: &TransportRequest) -> Result<TransportResponse, ChemblError> {
        let resp = self.transport.execute(req)?;
        if resp.is_success() {
            Ok(resp)
        } else {
            Err(ChemblError::Service {
                status: resp.status,
                request: req.canonical_key(),
            })
        }
    }

    /// Fetches every page of a list resource, up to `cap` items.
    pub fn collect_pages(&self, base: &TransportRequest, list_key: &str, cap: usize) -> Result<Listing, ChemblError> {
        let mut items = Vec::new();
        let mut total_count;
        let mut offset = 0;
        loop {
            let req = base
                .clone()
                .param(ep::LIMIT, self.settings.page_size)
                .param(ep::OFFSET, offset);
            let page = parse_json(&self.send(&req)?)?;
            let list = page
                .get(list_key)
                .and_then(Value::as_array)
                .ok_or_else(|| ChemblError::Decode(format!("missing `{list_key}` list")))?;
            total_count = page
                .get(ep::PAGE_META_KEY)
                .and_then(|m| m.get(ep::TOTAL_COUNT_KEY))
                .and_then(Value::as_u64)
                .map_or(list.len() + offset, |n| n as usize);
            offset += list.len();
            items.extend(list.iter().cloned());
            if list.is_empty() || offset >= total_count || items.len() >= cap {
                break;
            }
        }
        items.truncate(cap);
        Ok(Listing { items, total_count })
    }

    fn molecules(&self, base: TransportRequest, cap: usize) -> Result<Vec<MoleculeRecord>, ChemblError> {
        let listing = self.collect_pages(&base, ep::MOLECULES_KEY, cap)?;
        decode_all(&listing.items, MoleculeRecord::from_json)
    }

    /// Liveness probe against the service status resource.
    pub fn status(&self) -> Result<(), ChemblError> {
        let req = TransportRequest::get([ep::STATUS]);
        let body = parse_json(&self.send(&req)?)?;
        match body.get("status").and_then(Value::as_str) {
            None | Some("UP") => Ok(()),
            Some(other) => Err(ChemblError::Service {
                status: 503,
                request: format!("{} (status {other})", req.canonical_key()),
            }),
        }
    }

    pub fn molecule_by_synonym(&self, name: &str) -> Result<Vec<MoleculeRecord>, ChemblError> {
        let name = require(name, "molecule name")?;
        let req = TransportRequest::get([ep::MOLECULE_LIST]).param(ep::MOLECULE_SYNONYM_ICONTAINS, &name);
        let mut records = self.molecules(req, self.settings.max_records)?;
        records.retain(|m| m.matches_name(&name));
        Ok(records)
    }

    pub fn molecule_by_smiles(&self, smiles: &str) -> Result<Vec<MoleculeRecord>, ChemblError> {
        let smiles = require(smiles, "SMILES")?;
        let req = TransportRequest::get([ep::MOLECULE_LIST]).param(ep::SMILES_FLEXMATCH, &smiles);
        self.molecules(req, self.settings.max_records)
            .map_err(|e| structure_error(e, &smiles))
    }

    pub fn molecule_by_chembl_id(&self, id: &str) -> Result<MoleculeRecord, ChemblError> {
        let id = ChemblId::parse(id)
            .ok_or_else(|| ChemblError::Precondition(format!("`{}` is not a ChEMBL id", id.trim())))?;
        let req = TransportRequest::get([ep::MOLECULE.to_owned(), format!("{id}.json")]);
        let resp = self.send(&req).map_err(|e| not_found(e, id.as_str()))?;
        Ok(MoleculeRecord::from_json(&parse_json(&resp)?)?)
    }

    pub fn similar_by_smiles(&self, smiles: &str, threshold: u8) -> Result<Vec<SimilarityHit>, ChemblError> {
        check_threshold(threshold)?;
        let smiles = require(smiles, "SMILES")?;
        let req = TransportRequest::get([ep::SIMILARITY.to_owned(), smiles.clone(), format!("{threshold}.json")]);
        let listing = self
            .collect_pages(&req, ep::MOLECULES_KEY, self.settings.max_records)
            .map_err(|e| structure_error(e, &smiles))?;
        let hits = decode_all(&listing.items, SimilarityHit::from_json)?;
        Ok(order_hits(hits, threshold))
    }

    pub fn similar_by_drug_name(&self, name: &str, threshold: u8) -> Result<SimilarByName, ChemblError> {
        check_threshold(threshold)?;
        let name = require(name, "drug name")?;
        let matches: Vec<_> = self
            .molecule_by_synonym(&name)?
            .into_iter()
            .filter(|m| m.canonical_smiles.is_some())
            .collect();
        let resolved = matches
            .first()
            .cloned()
            .ok_or_else(|| ChemblError::UnresolvedDrug(name.clone()))?;
        let smiles = resolved.canonical_smiles.clone().unwrap_or_default();
        let hits = self.similar_by_smiles(&smiles, threshold)?;
        Ok(SimilarByName {
            resolved,
            candidates: matches.len(),
            hits,
        })
    }

    pub fn target_by_gene(&self, gene: &str) -> Result<Vec<TargetRecord>, ChemblError> {
        let gene = require(gene, "gene name")?;
        let req = TransportRequest::get([ep::TARGET_LIST]).param(ep::TARGET_SYNONYM_ICONTAINS, &gene);
        let listing = self.collect_pages(&req, ep::TARGETS_KEY, self.settings.max_records)?;
        let mut targets = decode_all(&listing.items, TargetRecord::from_json)?;
        targets.retain(|t| t.has_gene(&gene));
        Ok(targets)
    }

    pub fn tissue_lookup(&self, key: &TissueKey) -> Result<Vec<TissueRecord>, ChemblError> {
        let (field, value) = key.dispatch()?;
        let req = TransportRequest::get([ep::TISSUE_LIST]).param(field.param(), &value);
        let listing = self.collect_pages(&req, ep::TISSUES_KEY, self.settings.max_records)?;
        let mut tissues = decode_all(&listing.items, TissueRecord::from_json)?;
        if field == TissueField::Name {
            let needle = value.to_lowercase();
            tissues.retain(|t| t.pref_name.to_lowercase().contains(&needle));
        }
        Ok(tissues)
    }

    pub fn drug_by_usan_stem(&self, stem: &str) -> Result<Vec<MoleculeRecord>, ChemblError> {
        let stem = require(stem, "USAN stem")?;
        let req = TransportRequest::get([ep::MOLECULE_LIST]).param(ep::USAN_STEM, &stem);
        let mut records = self.molecules(req, self.settings.max_records)?;
        records.retain(|m| m.usan_stem.as_deref() == Some(stem.as_str()));
        Ok(records)
    }

    /// Approved (phase 4) molecules indicated for a disease, in the order
    /// their first indication was listed, without duplicates.
    pub fn approved_drugs_by_disease(&self, disease: &str) -> Result<Vec<MoleculeRecord>, ChemblError> {
        let disease = require(disease, "disease name")?;
        let req = TransportRequest::get([ep::DRUG_INDICATION_LIST]).param(ep::EFO_TERM_ICONTAINS, &disease);
        let listing = self.collect_pages(&req, ep::DRUG_INDICATIONS_KEY, self.settings.max_records)?;
        let indications = decode_all(&listing.items, DrugIndicationRecord::from_json)?;

        let needle = disease.to_lowercase();
        let mut seen = HashSet::new();
        let ids: Vec<ChemblId> = indications
            .into_iter()
            .filter(|d| d.disease_term.to_lowercase().contains(&needle))
            .map(|d| d.molecule_chembl_id)
            .filter(|id| seen.insert(id.clone()))
            .collect();

        let mut by_id = HashMap::new();
        for batch in ids.chunks(self.settings.page_size) {
            let joined = batch.iter().map(ChemblId::as_str).collect::<Vec<_>>().join(",");
            let req = TransportRequest::get([ep::MOLECULE_LIST]).param(ep::MOLECULE_ID_IN, joined);
            for m in self.molecules(req, batch.len())? {
                by_id.insert(m.chembl_id.clone(), m);
            }
        }
        Ok(ids
            .iter()
            .filter_map(|id| by_id.remove(id))
            .filter(MoleculeRecord::is_approved)
            .collect())
    }

    /// Approved molecules, most recent first approval first; molecules with
    /// no known approval year come last.
    pub fn top_approved_drugs(&self, limit: usize) -> Result<Vec<MoleculeRecord>, ChemblError> {
        if limit == 0 {
            return Err(ChemblError::Precondition("limit must be at least 1".into()));
        }
        let dated = TransportRequest::get([ep::MOLECULE_LIST])
            .param(ep::MAX_PHASE, 4)
            .param(ep::FIRST_APPROVAL_ISNULL, "false")
            .param(ep::ORDER_BY, "-first_approval");
        let mut records = self.molecules(dated, limit)?;
        if records.len() < limit {
            let undated = TransportRequest::get([ep::MOLECULE_LIST])
                .param(ep::MAX_PHASE, 4)
                .param(ep::FIRST_APPROVAL_ISNULL, "true");
            records.extend(self.molecules(undated, limit - records.len())?);
        }
        records.retain(MoleculeRecord::is_approved);
        records.sort_by(|a, b| match (a.first_approval, b.first_approval) {
            (Some(x), Some(y)) => y.cmp(&x),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        });
        records.truncate(limit);
        Ok(records)
    }

    pub fn fetch_depiction_svg(&self, id: &str) -> Result<Vec<u8>, ChemblError> {
        let id = ChemblId::parse(id)
            .ok_or_else(|| ChemblError::Precondition(format!("`{}` is not a ChEMBL id", id.trim())))?;
        let req = TransportRequest::get([ep::IMAGE.to_owned(), format!("{id}.svg")]);
        let resp = self.send(&req).map_err(|e| not_found(e, id.as_str()))?;
        if !looks_like_svg(&resp.body) {
            return Err(ChemblError::Decode(format!("depiction of {id} is not an SVG document")));
        }
        Ok(resp.body)
    }
}

fn looks_like_svg(body: &[u8]) -> bool {
    let text = String::from_utf8_lossy(&body[..body.len().min(512)]);
    let text = text.trim_start_matches('\u{feff}').trim_start();
    text.starts_with("<?xml") || text.starts_with("<svg")
}

fn not_found(e: ChemblError, what: &str) -> ChemblError {
    match e {
        ChemblError::Service { status: 404, .. } => ChemblError::NotFound(what.to_owned()),
        other => other,
    }
}

fn structure_error(e: ChemblError, smiles: &str) -> ChemblError {
    match e {
        ChemblError::Service { status, .. } if (400..500).contains(&status) && status != 404 => {
            ChemblError::InvalidStructure(smiles.to_owned())
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chembl::error::TransportError;
    use serde_json::json;
    use std::sync::Mutex;

    /// Answers from an in-memory map of canonical key to JSON body.
    #[derive(Default)]
    struct MapTransport {
        routes: HashMap<String, (u16, Vec<u8>)>,
        calls: Mutex<Vec<String>>,
    }

    impl MapTransport {
        fn route(mut self, req: TransportRequest, status: u16, body: Value) -> Self {
            self.routes
                .insert(req.canonical_key(), (status, body.to_string().into_bytes()));
            self
        }
    }

    impl Transport for MapTransport {
        fn execute(&self, req: &TransportRequest) -> Result<TransportResponse, TransportError> {
            let key = req.canonical_key();
            self.calls.lock().unwrap().push(key.clone());
            let (status, body) = self.routes.get(&key).cloned().ok_or(TransportError::ReplayMiss(key))?;
            Ok(TransportResponse {
                status,
                content_type: "application/json".into(),
                body,
            })
        }
    }

    fn client(t: MapTransport) -> (ChemblClient, Arc<MapTransport>) {
        let t = Arc::new(t);
        (ChemblClient::new(t.clone(), ClientSettings::default()), t)
    }

    fn mol(id: &str, sim: Option<f64>) -> Value {
        let mut v = json!({"molecule_chembl_id": id, "pref_name": id, "max_phase": "4.0"});
        if let Some(s) = sim {
            v["similarity"] = json!(format!("{s:.1}"));
        }
        v
    }

    fn page(key: &str, items: Vec<Value>, total: usize) -> Value {
        json!({key: items, "page_meta": {"total_count": total}})
    }

    #[test]
    fn preconditions_fail_before_transport() {
        let (c, t) = client(MapTransport::default());
        assert!(matches!(c.molecule_by_smiles(""), Err(ChemblError::Precondition(_))));
        assert!(matches!(
            c.molecule_by_chembl_id("112"),
            Err(ChemblError::Precondition(_))
        ));
        assert!(matches!(
            c.similar_by_smiles("CCO", 30),
            Err(ChemblError::Precondition(_))
        ));
        assert!(matches!(
            c.similar_by_drug_name("panadol", 101),
            Err(ChemblError::Precondition(_))
        ));
        assert!(matches!(c.top_approved_drugs(0), Err(ChemblError::Precondition(_))));
        assert!(matches!(c.fetch_depiction_svg("x"), Err(ChemblError::Precondition(_))));
        assert!(t.calls.lock().unwrap().is_empty());
    }

    #[test]
    fn tissue_dispatch() {
        let d = |k: TissueKey| k.dispatch().unwrap();
        assert_eq!(
            d(TissueKey::AnyId("BTO:0000142".into())),
            (TissueField::BtoId, "BTO:0000142".into())
        );
        assert_eq!(
            d(TissueKey::AnyId("uberon:0000955".into())),
            (TissueField::UberonId, "UBERON:0000955".into())
        );
        assert_eq!(
            d(TissueKey::AnyId("EFO:0000815".into())),
            (TissueField::EfoId, "EFO:0000815".into())
        );
        assert_eq!(
            d(TissueKey::AnyId("CHEMBL3559723".into())),
            (TissueField::ChemblId, "CHEMBL3559723".into())
        );
        assert_eq!(d(TissueKey::AnyId("liver".into())), (TissueField::Name, "liver".into()));
        assert_eq!(d(TissueKey::Name("Brain".into())), (TissueField::Name, "Brain".into()));
        assert!(TissueKey::UberonId("0000955".into()).dispatch().is_err());
        assert!(TissueKey::AnyId("UBERON:abc".into()).dispatch().is_err());
    }

    #[test]
    fn pages_are_followed() {
        let base = TransportRequest::get([ep::MOLECULE_LIST]).param(ep::USAN_STEM, "-olol");
        let p = |off: usize| base.clone().param("limit", 20).param("offset", off);
        let first: Vec<_> = (0..20)
            .map(|i| json!({"molecule_chembl_id": format!("CHEMBL{i}"), "usan_stem": "-olol"}))
            .collect();
        let second: Vec<_> = (20..25)
            .map(|i| json!({"molecule_chembl_id": format!("CHEMBL{i}"), "usan_stem": "-olol"}))
            .collect();
        let t = MapTransport::default()
            .route(p(0), 200, page("molecules", first, 25))
            .route(p(20), 200, page("molecules", second, 25));
        let (c, t) = client(t);
        let out = c.drug_by_usan_stem("-olol").unwrap();
        assert_eq!(out.len(), 25);
        assert_eq!(t.calls.lock().unwrap().len(), 2);
    }

    #[test]
    fn max_records_caps_pagination() {
        let base = TransportRequest::get([ep::TARGET_LIST]).param(ep::TARGET_SYNONYM_ICONTAINS, "X");
        let mut t = MapTransport::default();
        for off in (0..1000).step_by(20) {
            let items: Vec<_> = (off..off + 20)
                .map(|i| json!({"target_chembl_id": format!("CHEMBL{i}")}))
                .collect();
            t = t.route(
                base.clone().param("limit", 20).param("offset", off),
                200,
                page("targets", items, 1000),
            );
        }
        let (c, t) = client(t);
        let listing = c.collect_pages(&base, ep::TARGETS_KEY, 200).unwrap();
        assert_eq!(listing.items.len(), 200);
        assert_eq!(listing.total_count, 1000);
        assert_eq!(t.calls.lock().unwrap().len(), 10);
    }

    #[test]
    fn similarity_is_resorted_and_thresholded() {
        let req = TransportRequest::get(["similarity", "CCO", "70.json"])
            .param("limit", 20)
            .param("offset", 0);
        let items = vec![
            mol("CHEMBL3", Some(75.0)),
            mol("CHEMBL1", Some(100.0)),
            mol("CHEMBL2", Some(88.5)),
            mol("CHEMBL4", Some(12.0)),
        ];
        let (c, _) = client(MapTransport::default().route(req, 200, page("molecules", items, 4)));
        let hits = c.similar_by_smiles("CCO", 70).unwrap();
        let pct: Vec<f64> = hits.iter().map(|h| h.similarity_percent).collect();
        assert_eq!(pct, vec![100.0, 88.5, 75.0]);
    }

    #[test]
    fn bad_smiles_maps_to_invalid_structure() {
        let req = TransportRequest::get([ep::MOLECULE_LIST])
            .param(ep::SMILES_FLEXMATCH, "C((")
            .param("limit", 20)
            .param("offset", 0);
        let (c, _) = client(MapTransport::default().route(req, 400, json!({"error_message": "bad"})));
        assert_eq!(
            c.molecule_by_smiles("C(("),
            Err(ChemblError::InvalidStructure("C((".into()))
        );
    }

    #[test]
    fn missing_id_maps_to_not_found() {
        let req = TransportRequest::get(["molecule", "CHEMBL0.json"]);
        let (c, _) = client(MapTransport::default().route(req, 404, json!({"error_message": "nope"})));
        assert_eq!(
            c.molecule_by_chembl_id("chembl0"),
            Err(ChemblError::NotFound("CHEMBL0".into()))
        );
    }

    #[test]
    fn unresolved_drug_name() {
        let req = TransportRequest::get([ep::MOLECULE_LIST])
            .param(ep::MOLECULE_SYNONYM_ICONTAINS, "zzqx")
            .param("limit", 20)
            .param("offset", 0);
        let (c, _) = client(MapTransport::default().route(req, 200, page("molecules", vec![], 0)));
        assert_eq!(
            c.similar_by_drug_name("zzqx", 70).unwrap_err(),
            ChemblError::UnresolvedDrug("zzqx".into())
        );
    }

    #[test]
    fn top_approved_fills_with_undated() {
        let dated = TransportRequest::get([ep::MOLECULE_LIST])
            .param("max_phase", 4)
            .param("first_approval__isnull", "false")
            .param("order_by", "-first_approval")
            .param("limit", 20)
            .param("offset", 0);
        let undated = TransportRequest::get([ep::MOLECULE_LIST])
            .param("max_phase", 4)
            .param("first_approval__isnull", "true")
            .param("limit", 20)
            .param("offset", 0);
        let with_year = |id: &str, y: i32| {
            let mut v = mol(id, None);
            v["first_approval"] = json!(y);
            v
        };
        let t = MapTransport::default()
            .route(
                dated,
                200,
                page(
                    "molecules",
                    vec![with_year("CHEMBL2", 1990), with_year("CHEMBL1", 2001)],
                    2,
                ),
            )
            .route(undated, 200, page("molecules", vec![mol("CHEMBL9", None)], 1));
        let (c, _) = client(t);
        let out = c.top_approved_drugs(3).unwrap();
        let ids: Vec<_> = out.iter().map(|m| m.chembl_id.as_str()).collect();
        assert_eq!(ids, vec!["CHEMBL1", "CHEMBL2", "CHEMBL9"]);
        assert_eq!(c.top_approved_drugs(1).unwrap().len(), 1);
    }

    #[test]
    fn svg_sniffing() {
        assert!(looks_like_svg(b"<?xml version='1.0'?><svg/>"));
        assert!(looks_like_svg(b"\n  <svg xmlns='http://www.w3.org/2000/svg'/>"));
        assert!(!looks_like_svg(b"{\"error\": 1}"));
    }
}
