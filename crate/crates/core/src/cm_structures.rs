//! CM types and the reflex construction, all at the level of coset spaces
//! and cocharacter coordinates.
//!
//! A CM type on a datum `(G, H, c)` is a half-set `phi` of `G/H` meeting
//! every conjugate coset pair exactly once. Its Hodge cocharacter is the 0/1
//! indicator vector of `phi`; the Galois action permutes coordinates through
//! the left action on cosets. The reflex subgroup, reflex type and the norm
//! pushforwards are computed from the element-level lift of `phi`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::finite_group::{
    coset_space, validate_cm_datum, CmFieldDatum, CosetSpace, FiniteGroup, Subgroup,
};
use crate::integer_lattice::{LatticeError, LatticeMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CmError {
    #[error("PhiIndexOutOfBounds: coset index {index} out of bounds for {coset_count} cosets")]
    PhiIndexOutOfBounds { index: usize, coset_count: usize },
    #[error("WrongCardinality: phi has {got} cosets, expected g = {expected}")]
    WrongCardinality { got: usize, expected: usize },
    #[error("NotDisjointFromConjugate: coset {coset} and its conjugate {conjugate} are both in phi")]
    NotDisjointFromConjugate { coset: usize, conjugate: usize },
    #[error("NotUnionOfCosets: element set is not a union of cosets of the {side} subgroup (witness element {witness})")]
    NotUnionOfCosets { side: &'static str, witness: usize },
    #[error("InternalStabilityViolation: {detail}")]
    InternalStabilityViolation { detail: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A CM type: a datum together with the sorted half-set `phi` of cosets.
#[derive(Debug, Clone)]
pub struct CmType {
    datum: CmFieldDatum,
    phi: Vec<usize>,
}

/// Validate `phi` as a CM type on the datum: it must pick exactly one coset
/// from every conjugate pair.
pub fn validate_cm_type(datum: &CmFieldDatum, phi: &[usize]) -> Result<CmType, CmError> {
    let count = datum.sigma().coset_count();
    let mut mask = vec![false; count];
    for &j in phi {
        if j >= count {
            return Err(CmError::PhiIndexOutOfBounds {
                index: j,
                coset_count: count,
            });
        }
        mask[j] = true;
    }
    let phi: Vec<usize> = (0..count).filter(|&j| mask[j]).collect();
    if phi.len() != datum.g_dim() {
        return Err(CmError::WrongCardinality {
            got: phi.len(),
            expected: datum.g_dim(),
        });
    }
    for &j in &phi {
        let cj = datum.conjugate_coset(j);
        if mask[cj] {
            return Err(CmError::NotDisjointFromConjugate {
                coset: j.min(cj),
                conjugate: j.max(cj),
            });
        }
    }
    Ok(CmType {
        datum: datum.clone(),
        phi,
    })
}

impl CmType {
    pub fn datum(&self) -> &CmFieldDatum {
        &self.datum
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    /// The Hodge cocharacter `mu`: the indicator vector of `phi` in coset
    /// coordinates.
    pub fn hodge_cocharacter(&self) -> Vec<i64> {
        let mut mu = vec![0i64; self.datum.sigma().coset_count()];
        for &j in &self.phi {
            mu[j] = 1;
        }
        mu
    }

    /// Push a cocharacter vector through the Galois action of `tau`: the
    /// coefficient at a coset moves to its image coset.
    pub fn galois_translate(&self, tau: usize, v: &[i64]) -> Vec<i64> {
        let sigma = self.datum.sigma();
        let group = self.datum.group();
        let mut out = vec![0i64; sigma.coset_count()];
        for (j, &coeff) in v.iter().enumerate() {
            out[sigma.act(group, tau, j)] = coeff;
        }
        out
    }

    /// The translated half-set `tau . phi` as a sorted coset list.
    pub fn translate_phi(&self, tau: usize) -> Vec<usize> {
        let sigma = self.datum.sigma();
        let group = self.datum.group();
        let mut out: Vec<usize> = self.phi.iter().map(|&j| sigma.act(group, tau, j)).collect();
        out.sort_unstable();
        out
    }

    /// The stabilizer `{ sigma : sigma . phi = phi }` of the type.
    pub fn reflex_subgroup(&self) -> Subgroup {
        let group = self.datum.group();
        let fixers: Vec<usize> = (0..group.order())
            .filter(|&g| self.translate_phi(g) == self.phi)
            .collect();
        group
            .subgroup_closure(&fixers)
            .expect("stabilizer indices are valid")
    }

    /// The element-level lift of `phi`: all group elements whose coset lies
    /// in `phi`, sorted.
    pub fn phi_lift(&self) -> Vec<usize> {
        let sigma = self.datum.sigma();
        (0..self.datum.group().order())
            .filter(|&g| self.phi.binary_search(&sigma.coset_of(g)).is_ok())
            .collect()
    }

    /// Compute the reflex data: stabilizer subgroup, reflex degree, and the
    /// reflex type as a CM type on `(G, H_E, c)`.
    pub fn reflex_type(&self) -> Result<ReflexData, CmError> {
        let group = self.datum.group();
        let h_e = self.reflex_subgroup();
        let phi_k = self.phi_lift();
        let phi_k_inv: BTreeSet<usize> = phi_k.iter().map(|&g| group.inverse_of(g)).collect();
        // Right stability of phi_k^-1 under H_E; a failure is a bug, not an
        // input condition.
        for &x in &phi_k_inv {
            for &h in h_e.elements() {
                if !phi_k_inv.contains(&group.mul(x, h)) {
                    return Err(CmError::InternalStabilityViolation {
                        detail: format!(
                            "inverse lift is not right-stable under the reflex subgroup: \
                             element {x} times {h} escapes"
                        ),
                    });
                }
            }
        }
        let sigma_e = coset_space(group, &h_e);
        let phi_e_cosets: Vec<usize> = {
            let set: BTreeSet<usize> = phi_k_inv.iter().map(|&x| sigma_e.coset_of(x)).collect();
            set.into_iter().collect()
        };
        if phi_e_cosets.len() * h_e.order() != phi_k_inv.len() {
            return Err(CmError::InternalStabilityViolation {
                detail: "inverse lift does not split into whole reflex-subgroup cosets".into(),
            });
        }
        let datum_e = validate_cm_datum(group.clone(), h_e.clone(), self.datum.conjugation())
            .map_err(|e| CmError::InternalStabilityViolation {
                detail: format!("reflex datum failed validation: {e}"),
            })?;
        let phi_e = validate_cm_type(&datum_e, &phi_e_cosets)?;
        Ok(ReflexData {
            h_e,
            reflex_degree: sigma_e.coset_count(),
            phi_e,
            phi_k,
        })
    }

    /// Detect an induced type: the largest intermediate subgroup `H' ⊇ H`
    /// such that `phi` is a union of fibers of `G/H -> G/H'` and
    /// `(G, H', c)` is still valid CM data, together with the descended type.
    /// Returns `None` when the type is primitive (`H' = H`).
    ///
    /// The candidates are exactly the subgroups of the right stabilizer of
    /// the lift of `phi`, so the stabilizer itself is the unique maximum and
    /// no subgroup scan is needed.
    pub fn primitive_descent(&self) -> Result<Option<(Subgroup, CmType)>, CmError> {
        let group = self.datum.group();
        let phi_k: BTreeSet<usize> = self.phi_lift().into_iter().collect();
        let fixers: Vec<usize> = (0..group.order())
            .filter(|&g| phi_k.iter().all(|&x| phi_k.contains(&group.mul(x, g))))
            .collect();
        let h_prime = group
            .subgroup_closure(&fixers)
            .expect("right stabilizer indices are valid");
        if h_prime.order() == self.datum.h().order() {
            return Ok(None);
        }
        let datum_prime = validate_cm_datum(
            group.clone(),
            h_prime.clone(),
            self.datum.conjugation(),
        )
        .map_err(|e| CmError::InternalStabilityViolation {
            detail: format!("descended datum failed validation: {e}"),
        })?;
        let sigma_prime = datum_prime.sigma();
        let phi_prime: Vec<usize> = {
            let set: BTreeSet<usize> = phi_k.iter().map(|&x| sigma_prime.coset_of(x)).collect();
            set.into_iter().collect()
        };
        let descended = validate_cm_type(&datum_prime, &phi_prime)?;
        Ok(Some((h_prime, descended)))
    }
}

/// Reflex data of a CM type.
#[derive(Debug, Clone)]
pub struct ReflexData {
    /// The stabilizer `H_E` of `phi`.
    pub h_e: Subgroup,
    /// `[E : Q] = |G| / |H_E|`.
    pub reflex_degree: usize,
    /// The reflex type on `(G, H_E, c)`.
    pub phi_e: CmType,
    /// Element-level lift of `phi` into the group, sorted.
    pub phi_k: Vec<usize>,
}

impl ReflexData {
    /// The inverse set of the lift, sorted: the element set of the reflex
    /// norm.
    pub fn phi_k_inverse(&self, group: &FiniteGroup) -> Vec<usize> {
        let set: BTreeSet<usize> = self.phi_k.iter().map(|&g| group.inverse_of(g)).collect();
        set.into_iter().collect()
    }
}

/// Cocharacter pushforward of the norm map attached to an element set `S`,
/// from the source coset space to the target coset space.
///
/// The image of the source basis vector at coset `rho` (with representative
/// `x`) is the indicator of `x . S^-1`, re-expressed in target coset
/// coordinates. For that to be well defined, `S` must be a union of left
/// cosets of the source subgroup (representative independence) and a union
/// of right cosets of the target subgroup (landing in the target lattice);
/// both are validated.
pub fn norm_pushforward(
    group: &FiniteGroup,
    s: &[usize],
    source: &CosetSpace,
    target: &CosetSpace,
) -> Result<LatticeMap, CmError> {
    let set: BTreeSet<usize> = s.iter().copied().collect();
    for &x in &set {
        for &h in source.subgroup().elements() {
            if !set.contains(&group.mul(x, h)) {
                return Err(CmError::NotUnionOfCosets {
                    side: "source",
                    witness: x,
                });
            }
        }
        for &h in target.subgroup().elements() {
            if !set.contains(&group.mul(h, x)) {
                return Err(CmError::NotUnionOfCosets {
                    side: "target",
                    witness: x,
                });
            }
        }
    }
    let s_inverse: Vec<usize> = set.iter().map(|&x| group.inverse_of(x)).collect();
    let mut matrix = vec![vec![0i64; source.coset_count()]; target.coset_count()];
    for j in 0..source.coset_count() {
        let x = source.rep(j);
        // Indicator of x . S^-1 over the group, accumulated per target coset.
        let mut indicator = vec![0i64; group.order()];
        for &y in &s_inverse {
            indicator[group.mul(x, y)] = 1;
        }
        for (g, &val) in indicator.iter().enumerate() {
            if val != 0 {
                matrix[target.coset_of(g)][j] = 1;
            }
        }
        // Constancy on target cosets is implied by the validation above.
        debug_assert!(
            (0..group.order()).all(|g| indicator[g] == indicator[target.rep(target.coset_of(g))])
        );
    }
    Ok(LatticeMap::new(
        source.coset_count(),
        target.coset_count(),
        matrix,
    )?)
}

/// The reflex-norm pushforward `psi` on cocharacters, from the full group
/// coset space straight into `G/H`.
pub fn psi_pushforward(t: &CmType, reflex: &ReflexData) -> Result<LatticeMap, CmError> {
    let group = t.datum().group();
    let trivial = group.subgroup_closure(&[]).expect("trivial subgroup");
    let full = coset_space(group, &trivial);
    let s = reflex.phi_k_inverse(group);
    norm_pushforward(group, &s, &full, t.datum().sigma())
}

/// Pushforward of the field norm from the closure down to the reflex field:
/// `S = H_E`, landing in `G/H_E`.
pub fn field_norm_pushforward(t: &CmType, reflex: &ReflexData) -> Result<LatticeMap, CmError> {
    let group = t.datum().group();
    let trivial = group.subgroup_closure(&[]).expect("trivial subgroup");
    let full = coset_space(group, &trivial);
    norm_pushforward(
        group,
        reflex.h_e.elements(),
        &full,
        reflex.phi_e.datum().sigma(),
    )
}

/// Pushforward of the reflex norm from `G/H_E` into `G/H`: `S` is the
/// element-level lift of the reflex type, i.e. the inverse lift of `phi`.
pub fn reflex_norm_pushforward(t: &CmType, reflex: &ReflexData) -> Result<LatticeMap, CmError> {
    let group = t.datum().group();
    let s = reflex.phi_k_inverse(group);
    norm_pushforward(group, &s, reflex.phi_e.datum().sigma(), t.datum().sigma())
}
