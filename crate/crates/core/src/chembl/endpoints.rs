//! ChEMBL web-services resource paths and filter names.

pub const DEFAULT_BASE_URL: &str = "https://www.ebi.ac.uk/chembl/api/data";

pub const STATUS: &str = "status.json";
pub const MOLECULE_LIST: &str = "molecule.json";
pub const MOLECULE: &str = "molecule";
pub const SIMILARITY: &str = "similarity";
pub const TARGET_LIST: &str = "target.json";
pub const TISSUE_LIST: &str = "tissue.json";
pub const DRUG_INDICATION_LIST: &str = "drug_indication.json";
pub const IMAGE: &str = "image";

pub const LIMIT: &str = "limit";
pub const OFFSET: &str = "offset";
pub const ORDER_BY: &str = "order_by";

pub const MOLECULE_SYNONYM_ICONTAINS: &str = "molecule_synonyms__molecule_synonym__icontains";
pub const SMILES_FLEXMATCH: &str = "molecule_structures__canonical_smiles__flexmatch";
pub const MOLECULE_ID_IN: &str = "molecule_chembl_id__in";
pub const MAX_PHASE: &str = "max_phase";
pub const FIRST_APPROVAL_ISNULL: &str = "first_approval__isnull";
pub const USAN_STEM: &str = "usan_stem";
pub const TARGET_SYNONYM_ICONTAINS: &str = "target_synonym__icontains";
pub const EFO_TERM_ICONTAINS: &str = "efo_term__icontains";
pub const TISSUE_NAME_ICONTAINS: &str = "pref_name__icontains";
pub const TISSUE_UBERON_ID: &str = "uberon_id";
pub const TISSUE_BTO_ID: &str = "bto_id";
pub const TISSUE_EFO_ID: &str = "efo_id";
pub const TISSUE_CHEMBL_ID: &str = "tissue_chembl_id";

/// List keys inside paged JSON responses.
pub const MOLECULES_KEY: &str = "molecules";
pub const TARGETS_KEY: &str = "targets";
pub const TISSUES_KEY: &str = "tissues";
pub const DRUG_INDICATIONS_KEY: &str = "drug_indications";
pub const PAGE_META_KEY: &str = "page_meta";
pub const TOTAL_COUNT_KEY: &str = "total_count";

/// Lowest similarity cut-off the service accepts.
pub const MIN_SIMILARITY: u8 = 40;
