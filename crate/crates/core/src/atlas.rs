//! Batch enumeration: all CM types on a datum, the theorem checker across
//! group families, and deterministic CSV/JSON tabulation.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::cm_structures::{validate_cm_type, CmType};
use crate::finite_group::{
    make_group, validate_cm_datum, BuiltGroup, CmFieldDatum, GroupSpec, Subgroup,
};
use crate::mumford_tate::check_main_theorem;
use crate::Error;

/// Hard cap on the half-dimension for type enumeration (2^g growth).
pub const ENUMERATION_G_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("CapExceeded: 2^{g} CM types exceed the enumeration cap (g <= {cap})")]
    CapExceeded { g: usize, cap: usize },
}

/// Enumerate CM types on a datum.
///
/// Without dedupe: all `2^g` choices of one coset per conjugate pair, in
/// lexicographic order of the sorted coset list. With dedupe: the
/// lexicographically least representative of each orbit under left
/// translation, in the same order.
pub fn enumerate_cm_types(datum: &CmFieldDatum, dedupe: bool) -> Result<Vec<CmType>, AtlasError> {
    let g = datum.g_dim();
    if g > ENUMERATION_G_CAP {
        return Err(AtlasError::CapExceeded {
            g,
            cap: ENUMERATION_G_CAP,
        });
    }
    let count = datum.sigma().coset_count();
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(g);
    let mut seen = vec![false; count];
    for j in 0..count {
        if seen[j] {
            continue;
        }
        let cj = datum.conjugate_coset(j);
        seen[j] = true;
        seen[cj] = true;
        pairs.push((j, cj));
    }
    debug_assert_eq!(pairs.len(), g);

    let mut phis: Vec<Vec<usize>> = (0..1u32 << g)
        .map(|bits| {
            let mut phi: Vec<usize> = pairs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if bits >> i & 1 == 0 { a } else { b })
                .collect();
            phi.sort_unstable();
            phi
        })
        .collect();
    phis.sort();

    let types: Vec<CmType> = phis
        .into_iter()
        .map(|phi| {
            validate_cm_type(datum, &phi).expect("one coset per conjugate pair is a valid type")
        })
        .collect();
    if !dedupe {
        return Ok(types);
    }
    let group_order = datum.group().order();
    Ok(types
        .into_iter()
        .filter(|t| {
            (0..group_order).all(|sigma| t.translate_phi(sigma) >= t.phi().to_vec())
        })
        .collect())
}

/// Group families accepted by the tabulator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// Cyclic groups of order `2..=max_order`.
    Cyclic,
    /// Direct products of at least two cyclic factors, each of order >= 2,
    /// with non-decreasing factor orders and product <= max_order.
    AbelianProducts,
    /// Dihedral groups of order `2n` for `n >= 3`, `2n <= max_order`.
    Dihedral,
    /// An explicit list of group specifications.
    Explicit(Vec<GroupSpec>),
}

impl FamilySpec {
    /// Parse a family name as used by the command line.
    pub fn from_name(name: &str) -> Option<FamilySpec> {
        match name {
            "cyclic" => Some(FamilySpec::Cyclic),
            "abelian-products" => Some(FamilySpec::AbelianProducts),
            "dihedral" => Some(FamilySpec::Dihedral),
            _ => None,
        }
    }
}

/// Which subgroups `H` to range over when forming data from a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubfieldPolicy {
    /// Only the trivial subgroup: the field is the full closure.
    TrivialOnly,
    /// Every subgroup (the admissibility checks then discard those
    /// containing the conjugation).
    AllSubgroups,
}

/// Options for a tabulation run.
#[derive(Debug, Clone)]
pub struct TabulateOptions {
    pub max_order: usize,
    pub policy: SubfieldPolicy,
    pub dedupe: bool,
    pub order_cap: usize,
}

/// One row of the atlas: a CM type and the outcome of the theorem checker.
/// A failed computation leaves the outcome fields empty and records the
/// error text instead; the run continues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasRecord {
    pub group: String,
    pub order: usize,
    pub g: usize,
    pub phi: Vec<usize>,
    pub mt_rank: Option<usize>,
    pub degenerate: Option<bool>,
    pub reflex_degree: Option<usize>,
    pub primitive: Option<bool>,
    pub theorem_holds: Option<bool>,
    pub factorization_holds: Option<bool>,
    pub error: Option<String>,
}

/// Build the groups of a family up to the order bound.
pub fn family_builds(
    family: &FamilySpec,
    max_order: usize,
    order_cap: usize,
) -> Result<Vec<BuiltGroup>, Error> {
    let mut specs: Vec<GroupSpec> = Vec::new();
    match family {
        FamilySpec::Cyclic => {
            for n in 2..=max_order {
                specs.push(GroupSpec::Cyclic(n));
            }
        }
        FamilySpec::AbelianProducts => {
            let mut tuples: Vec<Vec<usize>> = Vec::new();
            fn extend(prefix: &mut Vec<usize>, product: usize, max: usize, out: &mut Vec<Vec<usize>>) {
                let start = prefix.last().copied().unwrap_or(2);
                for next in start..=max {
                    let p = match product.checked_mul(next) {
                        Some(p) if p <= max => p,
                        _ => break,
                    };
                    prefix.push(next);
                    if prefix.len() >= 2 {
                        out.push(prefix.clone());
                    }
                    extend(prefix, p, max, out);
                    prefix.pop();
                }
            }
            extend(&mut Vec::new(), 1, max_order, &mut tuples);
            tuples.sort_by_key(|t| (t.iter().product::<usize>(), t.clone()));
            for t in tuples {
                specs.push(GroupSpec::Product(
                    t.into_iter().map(GroupSpec::Cyclic).collect(),
                ));
            }
        }
        FamilySpec::Dihedral => {
            for n in 3..=max_order / 2 {
                let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
                specs.push(GroupSpec::Perms(vec![rot, refl]));
            }
        }
        FamilySpec::Explicit(list) => specs.extend(list.iter().cloned()),
    }
    let mut builds = Vec::with_capacity(specs.len());
    for spec in &specs {
        let mut built = make_group(spec, order_cap)?;
        if let (FamilySpec::Dihedral, GroupSpec::Perms(_)) = (family, spec) {
            built.description = format!("dihedral({})", built.group.order());
        }
        if built.group.order() <= max_order {
            builds.push(built);
        }
    }
    Ok(builds)
}

/// All admissible CM data on a built group under the subgroup policy:
/// subgroups in (order, elements) order, central involutions ascending,
/// keeping only valid combinations.
pub fn admissible_data(built: &BuiltGroup, policy: SubfieldPolicy) -> Vec<(CmFieldDatum, String)> {
    let subgroups: Vec<Subgroup> = match policy {
        SubfieldPolicy::TrivialOnly => vec![built
            .group
            .subgroup_closure(&[])
            .expect("trivial subgroup closes")],
        SubfieldPolicy::AllSubgroups => built.group.all_subgroups(),
    };
    let involutions = built.group.central_involutions();
    let mut data = Vec::new();
    for h in &subgroups {
        for &c in &involutions {
            if let Ok(datum) = validate_cm_datum(built.group.clone(), h.clone(), c) {
                let h_text = h
                    .elements()
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("+");
                let description = format!("{} H={} c={}", built.description, h_text, c);
                data.push((datum, description));
            }
        }
    }
    data
}

/// Run the theorem checker across a family. Individual failures become
/// records with an error field; the run continues. Output is sorted by
/// (group description, phi) and is byte-stable across reruns.
pub fn tabulate_family(family: &FamilySpec, opts: &TabulateOptions) -> Result<Vec<AtlasRecord>, Error> {
    let mut records = Vec::new();
    for built in family_builds(family, opts.max_order, opts.order_cap)? {
        for (datum, description) in admissible_data(&built, opts.policy) {
            tabulate_datum(&datum, &description, opts.dedupe, &mut records);
        }
    }
    records.sort_by(|a, b| (&a.group, &a.phi).cmp(&(&b.group, &b.phi)));
    Ok(records)
}

/// Tabulate every CM type on a single datum, appending to `records`.
pub fn tabulate_datum(
    datum: &CmFieldDatum,
    description: &str,
    dedupe: bool,
    records: &mut Vec<AtlasRecord>,
) {
    let base = AtlasRecord {
        group: description.to_string(),
        order: datum.group().order(),
        g: datum.g_dim(),
        phi: Vec::new(),
        mt_rank: None,
        degenerate: None,
        reflex_degree: None,
        primitive: None,
        theorem_holds: None,
        factorization_holds: None,
        error: None,
    };
    let types = match enumerate_cm_types(datum, dedupe) {
        Ok(types) => types,
        Err(e) => {
            records.push(AtlasRecord {
                error: Some(e.to_string()),
                ..base
            });
            return;
        }
    };
    for t in types {
        let mut record = AtlasRecord {
            phi: t.phi().to_vec(),
            ..base.clone()
        };
        match check_main_theorem(&t).and_then(|report| {
            let primitive = t.primitive_descent()?.is_none();
            Ok((report, primitive))
        }) {
            Ok((report, primitive)) => {
                record.mt_rank = Some(report.mt_rank);
                record.degenerate = Some(report.degenerate);
                record.reflex_degree = Some(report.reflex.reflex_degree);
                record.primitive = Some(primitive);
                record.theorem_holds = Some(report.theorem_holds);
                record.factorization_holds = Some(report.factorization_holds);
                if !report.violations.is_empty() {
                    record.error = Some(report.violations.join("; "));
                }
            }
            Err(e) => record.error = Some(e.to_string()),
        }
        records.push(record);
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn opt_to_string<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or(String::new(), |x| x.to_string())
}

/// Render records as CSV with the fixed header
/// `group,order,g,phi,mt_rank,degenerate,reflex_degree,primitive,theorem,factorization,error`.
/// `phi` is plus-separated sorted coset indices.
pub fn records_to_csv(records: &[AtlasRecord]) -> String {
    let mut out = String::from(
        "group,order,g,phi,mt_rank,degenerate,reflex_degree,primitive,theorem,factorization,error\n",
    );
    for r in records {
        let phi = r
            .phi
            .iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join("+");
        let fields = [
            csv_escape(&r.group),
            r.order.to_string(),
            r.g.to_string(),
            phi,
            opt_to_string(&r.mt_rank),
            opt_to_string(&r.degenerate),
            opt_to_string(&r.reflex_degree),
            opt_to_string(&r.primitive),
            opt_to_string(&r.theorem_holds),
            opt_to_string(&r.factorization_holds),
            csv_escape(r.error.as_deref().unwrap_or("")),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Render records as a JSON array mirroring the record field names.
pub fn records_to_json(records: &[AtlasRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

/// Write a file atomically: write to a sibling temp path, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(contents.as_bytes())?;
        file.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
