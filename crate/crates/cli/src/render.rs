//! Report documents and their human/JSON renderings. Field order in the
//! JSON output is fixed by the struct declarations, and parsing a rendered
//! report and re-rendering it is byte-identical.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use mtcm_core::{CmType, MtReport, Subgroup, WeightMultiset};

use crate::input::LoadedDatum;

/// Shared leading fields of every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub group: String,
    pub order: usize,
    pub h: Vec<usize>,
    pub c: usize,
    pub g: usize,
    pub phi: Vec<usize>,
}

pub fn header(loaded: &LoadedDatum, t: &CmType) -> Header {
    Header {
        group: loaded.built.description.clone(),
        order: loaded.built.group.order(),
        h: loaded.datum.h().elements().to_vec(),
        c: loaded.datum.conjugation(),
        g: loaded.datum.g_dim(),
        phi: t.phi().to_vec(),
    }
}

fn render_header(out: &mut String, h: &Header) {
    let _ = writeln!(out, "group: {}  (order {})", h.group, h.order);
    let _ = writeln!(out, "H: {:?}", h.h);
    let _ = writeln!(out, "c: {}", h.c);
    let _ = writeln!(out, "g: {}", h.g);
    let _ = writeln!(out, "phi: {:?}", h.phi);
}

fn render_basis(out: &mut String, name: &str, basis: &[Vec<i64>]) {
    let _ = writeln!(out, "{name}:");
    if basis.is_empty() {
        let _ = writeln!(out, "  (zero lattice)");
    }
    for row in basis {
        let _ = writeln!(out, "  {row:?}");
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MtDoc {
    pub group: String,
    pub order: usize,
    pub h: Vec<usize>,
    pub c: usize,
    pub g: usize,
    pub phi: Vec<usize>,
    pub mt_rank: usize,
    pub degenerate: bool,
    pub primitive: bool,
    pub mt_lattice: Vec<Vec<i64>>,
}

impl MtDoc {
    pub fn new(head: Header, rank: usize, degenerate: bool, primitive: bool, basis: Vec<Vec<i64>>) -> Self {
        MtDoc {
            group: head.group,
            order: head.order,
            h: head.h,
            c: head.c,
            g: head.g,
            phi: head.phi,
            mt_rank: rank,
            degenerate,
            primitive,
            mt_lattice: basis,
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        render_header(
            &mut out,
            &Header {
                group: self.group.clone(),
                order: self.order,
                h: self.h.clone(),
                c: self.c,
                g: self.g,
                phi: self.phi.clone(),
            },
        );
        let _ = writeln!(out, "mt_rank: {}", self.mt_rank);
        let _ = writeln!(out, "degenerate: {}", self.degenerate);
        let _ = writeln!(out, "primitive: {}", self.primitive);
        render_basis(&mut out, "mt_lattice", &self.mt_lattice);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflexDoc {
    pub group: String,
    pub order: usize,
    pub h: Vec<usize>,
    pub c: usize,
    pub g: usize,
    pub phi: Vec<usize>,
    pub h_e: Vec<usize>,
    pub reflex_degree: usize,
    pub phi_e: Vec<usize>,
}

impl ReflexDoc {
    pub fn new(head: Header, h_e: &Subgroup, reflex_degree: usize, phi_e: &[usize]) -> Self {
        ReflexDoc {
            group: head.group,
            order: head.order,
            h: head.h,
            c: head.c,
            g: head.g,
            phi: head.phi,
            h_e: h_e.elements().to_vec(),
            reflex_degree,
            phi_e: phi_e.to_vec(),
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        render_header(
            &mut out,
            &Header {
                group: self.group.clone(),
                order: self.order,
                h: self.h.clone(),
                c: self.c,
                g: self.g,
                phi: self.phi.clone(),
            },
        );
        let _ = writeln!(out, "H_E: {:?}", self.h_e);
        let _ = writeln!(out, "reflex_degree: {}", self.reflex_degree);
        let _ = writeln!(out, "phi_E: {:?}", self.phi_e);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub group: String,
    pub order: usize,
    pub h: Vec<usize>,
    pub c: usize,
    pub g: usize,
    pub phi: Vec<usize>,
    pub mt_rank: usize,
    pub degenerate: bool,
    pub primitive: bool,
    pub h_e: Vec<usize>,
    pub reflex_degree: usize,
    pub phi_e: Vec<usize>,
    pub mt_lattice: Vec<Vec<i64>>,
    pub t0_lattice: Vec<Vec<i64>>,
    pub theorem_holds: bool,
    pub factorization_holds: bool,
    pub violations: Vec<String>,
}

impl CheckDoc {
    pub fn new(head: Header, report: &MtReport, primitive: bool) -> Self {
        CheckDoc {
            group: head.group,
            order: head.order,
            h: head.h,
            c: head.c,
            g: head.g,
            phi: head.phi,
            mt_rank: report.mt_rank,
            degenerate: report.degenerate,
            primitive,
            h_e: report.reflex.h_e.elements().to_vec(),
            reflex_degree: report.reflex.reflex_degree,
            phi_e: report.reflex.phi_e.phi().to_vec(),
            mt_lattice: report.mt_lattice.basis().to_vec(),
            t0_lattice: report.t0_lattice.basis().to_vec(),
            theorem_holds: report.theorem_holds,
            factorization_holds: report.factorization_holds,
            violations: report.violations.clone(),
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        render_header(
            &mut out,
            &Header {
                group: self.group.clone(),
                order: self.order,
                h: self.h.clone(),
                c: self.c,
                g: self.g,
                phi: self.phi.clone(),
            },
        );
        let _ = writeln!(
            out,
            "reflex: H_E = {:?}, degree {}, phi_E = {:?}",
            self.h_e, self.reflex_degree, self.phi_e
        );
        let _ = writeln!(
            out,
            "mt_rank: {}  (degenerate: {}, primitive: {})",
            self.mt_rank, self.degenerate, self.primitive
        );
        render_basis(&mut out, "mt_lattice", &self.mt_lattice);
        render_basis(&mut out, "t0_lattice", &self.t0_lattice);
        let _ = writeln!(out, "theorem_holds: {}", self.theorem_holds);
        let _ = writeln!(out, "factorization_holds: {}", self.factorization_holds);
        for v in &self.violations {
            let _ = writeln!(out, "violation: {v}");
        }
        out
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_weights(
    head: &Header,
    weights: &WeightMultiset,
    classes: Option<(u64, u64)>,
) -> String {
    let mut out = String::new();
    render_header(&mut out, head);
    let _ = writeln!(
        out,
        "V(m={}, n={}, r={}): {} weights, {} distinct",
        weights.m,
        weights.n,
        weights.r,
        weights.total_multiplicity(),
        weights.entries.len()
    );
    for (vector, mult) in &weights.entries {
        let _ = writeln!(out, "  {vector:?} x{mult}");
    }
    if let Some((hodge, tate)) = classes {
        let _ = writeln!(out, "hodge_classes: {hodge}");
        let _ = writeln!(out, "tate_classes: {tate}");
        let _ = writeln!(out, "routes_agree: {}", hodge == tate);
    }
    out
}
