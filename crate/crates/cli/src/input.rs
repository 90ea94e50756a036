//! Input documents: JSON files carrying a group specification, the subgroup
//! generators `H`, the conjugation index `c`, and optionally the half-set
//! `phi`. Element indices refer to the deterministic element order printed
//! by `mtcm validate`.

use serde::Deserialize;

use mtcm_core::{
    make_group, validate_cm_datum, validate_cm_type, BuiltGroup, CmFieldDatum, CmType, GroupSpec,
};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub group: GroupSpecDoc,
    /// Generators of the fixing subgroup; the closure is taken. Empty or
    /// absent means the trivial subgroup.
    #[serde(rename = "H", default)]
    pub h: Vec<usize>,
    /// Element index of complex conjugation.
    pub c: usize,
    /// Sorted coset indices of the CM type; optional for datum-only
    /// commands.
    #[serde(default)]
    pub phi: Option<Vec<usize>>,
}

/// Tagged group specifications: `{"cyclic": 4}`, `{"product": [...]}`,
/// `{"perms": [[1,2,3,0]]}`, `{"table": [[...]]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpecDoc {
    Cyclic(usize),
    Product(Vec<GroupSpecDoc>),
    Perms(Vec<Vec<usize>>),
    Table(Vec<Vec<usize>>),
}

impl GroupSpecDoc {
    pub fn to_spec(&self) -> GroupSpec {
        match self {
            GroupSpecDoc::Cyclic(n) => GroupSpec::Cyclic(*n),
            GroupSpecDoc::Product(fs) => {
                GroupSpec::Product(fs.iter().map(|f| f.to_spec()).collect())
            }
            GroupSpecDoc::Perms(gens) => GroupSpec::Perms(gens.clone()),
            GroupSpecDoc::Table(rows) => GroupSpec::Table(rows.clone()),
        }
    }
}

/// A parsed and validated datum together with its display metadata.
pub struct LoadedDatum {
    pub built: BuiltGroup,
    pub datum: CmFieldDatum,
}

pub fn parse_document(text: &str) -> Result<InputDocument, String> {
    serde_json::from_str(text).map_err(|e| format!("malformed input document: {e}"))
}

pub fn load_datum(doc: &InputDocument, order_cap: usize) -> Result<LoadedDatum, String> {
    let built = make_group(&doc.group.to_spec(), order_cap).map_err(|e| e.to_string())?;
    let h = built
        .group
        .subgroup_closure(&doc.h)
        .map_err(|e| e.to_string())?;
    let datum = validate_cm_datum(built.group.clone(), h, doc.c).map_err(|e| e.to_string())?;
    Ok(LoadedDatum { built, datum })
}

pub fn load_type(doc: &InputDocument, loaded: &LoadedDatum) -> Result<CmType, String> {
    let phi = doc
        .phi
        .as_ref()
        .ok_or_else(|| "input document has no `phi` field".to_string())?;
    validate_cm_type(&loaded.datum, phi).map_err(|e| e.to_string())
}
