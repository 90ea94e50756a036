//! Finite groups given by multiplication tables, subgroups, coset spaces,
//! and validation of CM-field data.
//!
//! A CM field never appears as a number field here: it is modeled by a triple
//! `(G, H, c)` where `G` stands for the Galois group of a Galois closure,
//! `H` for the subgroup fixing the field, and `c` for complex conjugation,
//! required to be a central involution outside `H`. The coset space `G/H`
//! plays the role of the embedding set of the field.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use thiserror::Error;

/// Default cap on group order; a memory guard, not a complexity bound.
pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is not square: row {row} has length {len}, expected {order}")]
    TableNotSquare { row: usize, len: usize, order: usize },
    #[error("multiplication table entry {value} at ({row}, {col}) is out of range")]
    TableEntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("element index {index} out of bounds for group of order {order}")]
    IndexOutOfBounds { index: usize, order: usize },
    #[error("permutation {0:?} is not a bijection on the declared points")]
    NotAPermutation(Vec<usize>),
    #[error("permutation generator list is empty")]
    NoGenerators,
    #[error("direct product needs at least one factor")]
    EmptyProduct,
    #[error("cyclic group order must be positive")]
    CyclicOrderZero,
}

/// A finite group as a validated total multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// Flat `order x order` table: `mul[a * order + b]` is the index of `a * b`.
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Build from an explicit table, validating identity, associativity and
    /// inverses by full scan.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::NoIdentity);
        }
        let mut mul = Vec::with_capacity(order * order);
        for (r, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::TableNotSquare {
                    row: r,
                    len: row.len(),
                    order,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::TableEntryOutOfRange { row: r, col: c, value: v });
                }
                mul.push(v);
            }
        }
        let group = Self::from_parts(order, mul)?;
        group.verify_axioms()?;
        Ok(group)
    }

    /// Assemble from a raw flat table, locating identity and inverses.
    /// Associativity is not checked here; `from_table` adds the full scan.
    fn from_parts(order: usize, mul: Vec<usize>) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| mul[a * order + b];
        let mut identity = None;
        for e in 0..order {
            if (0..order).all(|x| at(e, x) == x && at(x, e) == x) {
                identity = Some(e);
                break;
            }
        }
        let identity = identity.ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == identity && at(b, a) == identity) {
                Some(b) => inverse[a] = b,
                None => return Err(GroupError::NoInverse { element: a }),
            }
        }
        Ok(FiniteGroup {
            order,
            mul,
            identity,
            inverse,
        })
    }

    /// Full-table axiom scan: two-sided identity, inverses, associativity.
    pub fn verify_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(GroupError::NoIdentity);
            }
            let inv = self.inverse[x];
            if self.mul(x, inv) != self.identity || self.mul(inv, x) != self.identity {
                return Err(GroupError::NoInverse { element: x });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inverse_of(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn check_index(&self, index: usize) -> Result<(), GroupError> {
        if index >= self.order {
            Err(GroupError::IndexOutOfBounds {
                index,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    /// Multiplicative order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order).all(|g| self.mul(a, g) == self.mul(g, a))
    }

    /// Central elements of order exactly 2, ascending.
    pub fn central_involutions(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| a != self.identity && self.mul(a, a) == self.identity && self.is_central(a))
            .collect()
    }

    /// Smallest subgroup containing the seeds; the empty seed list yields the
    /// trivial subgroup.
    pub fn subgroup_closure(&self, seeds: &[usize]) -> Result<Subgroup, GroupError> {
        for &s in seeds {
            self.check_index(s)?;
        }
        let mut members = vec![false; self.order];
        members[self.identity] = true;
        let mut worklist: Vec<usize> = vec![self.identity];
        let push = |members: &mut Vec<bool>, worklist: &mut Vec<usize>, x: usize| {
            if !members[x] {
                members[x] = true;
                worklist.push(x);
            }
        };
        for &s in seeds {
            push(&mut members, &mut worklist, s);
        }
        let mut i = 0;
        while i < worklist.len() {
            let x = worklist[i];
            i += 1;
            push(&mut members, &mut worklist, self.inverse_of(x));
            for j in 0..worklist.len() {
                let y = worklist[j];
                push(&mut members, &mut worklist, self.mul(x, y));
                push(&mut members, &mut worklist, self.mul(y, x));
            }
        }
        let elements: Vec<usize> = (0..self.order).filter(|&x| members[x]).collect();
        Ok(Subgroup { elements })
    }

    /// Every subgroup, sorted by (order, element list). Exhaustive closure
    /// search; intended for small groups.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = self
            .subgroup_closure(&[])
            .expect("trivial closure cannot fail");
        let mut frontier = vec![trivial.elements.clone()];
        seen.insert(trivial.elements.clone());
        while let Some(current) = frontier.pop() {
            for g in 0..self.order {
                if current.binary_search(&g).is_ok() {
                    continue;
                }
                let mut seeds = current.clone();
                seeds.push(g);
                let bigger = self
                    .subgroup_closure(&seeds)
                    .expect("closure of valid indices cannot fail")
                    .elements;
                if seen.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut subs: Vec<Subgroup> = seen.into_iter().map(|elements| Subgroup { elements }).collect();
        subs.sort_by(|a, b| {
            (a.elements.len(), &a.elements).cmp(&(b.elements.len(), &b.elements))
        });
        subs
    }
}

/// A subgroup as a sorted element-index list, produced by closure against a
/// specific parent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Left cosets `gH` of a subgroup, enumerated by ascending minimal
/// representative. The coset order is part of the serialization contract:
/// every downstream lattice coordinate refers to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpace {
    subgroup: Subgroup,
    coset_count: usize,
    rep: Vec<usize>,
    coset_of: Vec<usize>,
}

/// Enumerate the left cosets of `h` in `group`.
pub fn coset_space(group: &FiniteGroup, h: &Subgroup) -> CosetSpace {
    let order = group.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut rep = Vec::new();
    for g in 0..order {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let j = rep.len();
        rep.push(g);
        for &x in h.elements() {
            coset_of[group.mul(g, x)] = j;
        }
    }
    debug_assert_eq!(rep.len() * h.order(), order);
    CosetSpace {
        subgroup: h.clone(),
        coset_count: rep.len(),
        rep,
        coset_of,
    }
}

impl CosetSpace {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn coset_count(&self) -> usize {
        self.coset_count
    }

    pub fn rep(&self, coset: usize) -> usize {
        self.rep[coset]
    }

    pub fn reps(&self) -> &[usize] {
        &self.rep
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element]
    }

    /// The left action of a group element on coset indices.
    #[inline]
    pub fn act(&self, group: &FiniteGroup, g: usize, coset: usize) -> usize {
        self.coset_of[group.mul(g, self.rep[coset])]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("IndexOutOfBounds: element index {index} out of bounds for group of order {order}")]
    IndexOutOfBounds { index: usize, order: usize },
    #[error("NotInvolution: element {element} has order {found}, expected 2")]
    NotInvolution { element: usize, found: usize },
    #[error("NotCentral: element {element} does not commute with element {witness}")]
    NotCentral { element: usize, witness: usize },
    #[error("ConjugationFixesField: conjugation {element} lies in H")]
    ConjugationFixesField { element: usize },
    #[error("OddCosetCount: coset space has odd size {count}")]
    OddCosetCount { count: usize },
}

/// CM-field datum `(G, H, c)`: group, fixing subgroup, central involution
/// outside `H`. The coset space `G/H` and the half-dimension `g = |G/H| / 2`
/// are precomputed.
#[derive(Debug, Clone)]
pub struct CmFieldDatum {
    group: Arc<FiniteGroup>,
    h: Subgroup,
    c: usize,
    sigma: CosetSpace,
    g_dim: usize,
}

/// Validate `(G, H, c)` as CM-field data.
pub fn validate_cm_datum(
    group: Arc<FiniteGroup>,
    h: Subgroup,
    c: usize,
) -> Result<CmFieldDatum, DatumError> {
    if c >= group.order() {
        return Err(DatumError::IndexOutOfBounds {
            index: c,
            order: group.order(),
        });
    }
    let ord = group.element_order(c);
    if ord != 2 {
        return Err(DatumError::NotInvolution { element: c, found: ord });
    }
    if let Some(witness) = (0..group.order()).find(|&g| group.mul(c, g) != group.mul(g, c)) {
        return Err(DatumError::NotCentral { element: c, witness });
    }
    if h.contains(c) {
        return Err(DatumError::ConjugationFixesField { element: c });
    }
    let sigma = coset_space(&group, &h);
    if !sigma.coset_count().is_multiple_of(2) {
        // Unreachable when the checks above pass; kept as a guard.
        return Err(DatumError::OddCosetCount {
            count: sigma.coset_count(),
        });
    }
    let g_dim = sigma.coset_count() / 2;
    Ok(CmFieldDatum {
        group,
        h,
        c,
        sigma,
        g_dim,
    })
}

impl CmFieldDatum {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn conjugation(&self) -> usize {
        self.c
    }

    pub fn sigma(&self) -> &CosetSpace {
        &self.sigma
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    /// Image of a coset under complex conjugation.
    pub fn conjugate_coset(&self, coset: usize) -> usize {
        self.sigma.act(&self.group, self.c, coset)
    }
}

/// Group construction recipes accepted by [`make_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// Explicit multiplication table.
    Table(Vec<Vec<usize>>),
    /// Cyclic group of the given order.
    Cyclic(usize),
    /// Direct product of the factors, indices in mixed radix with the last
    /// factor varying fastest.
    Product(Vec<GroupSpec>),
    /// Closure of permutation generators on `m` points, elements in
    /// breadth-first discovery order from the identity.
    Perms(Vec<Vec<usize>>),
}

/// A constructed group together with display metadata: one label per element
/// (in the deterministic element order) and a short description string.
#[derive(Debug, Clone)]
pub struct BuiltGroup {
    pub group: Arc<FiniteGroup>,
    pub labels: Vec<String>,
    pub description: String,
}

/// Build and validate a group from a specification.
pub fn make_group(spec: &GroupSpec, order_cap: usize) -> Result<BuiltGroup, GroupError> {
    let built = match spec {
        GroupSpec::Table(rows) => {
            if rows.len() > order_cap {
                return Err(GroupError::OrderCapExceeded {
                    order: rows.len(),
                    cap: order_cap,
                });
            }
            let group = FiniteGroup::from_table(rows)?;
            let labels = (0..group.order()).map(|i| format!("g{i}")).collect();
            BuiltGroup {
                description: format!("table({})", group.order()),
                labels,
                group: Arc::new(group),
            }
        }
        GroupSpec::Cyclic(n) => {
            let n = *n;
            if n == 0 {
                return Err(GroupError::CyclicOrderZero);
            }
            if n > order_cap {
                return Err(GroupError::OrderCapExceeded { order: n, cap: order_cap });
            }
            let mut mul = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    mul.push((a + b) % n);
                }
            }
            let group = FiniteGroup::from_parts(n, mul)?;
            BuiltGroup {
                description: format!("cyclic({n})"),
                labels: (0..n).map(|i| i.to_string()).collect(),
                group: Arc::new(group),
            }
        }
        GroupSpec::Product(factors) => {
            if factors.is_empty() {
                return Err(GroupError::EmptyProduct);
            }
            let built: Vec<BuiltGroup> = factors
                .iter()
                .map(|f| make_group(f, order_cap))
                .collect::<Result<_, _>>()?;
            let mut order = 1usize;
            for b in &built {
                order = order.saturating_mul(b.group.order());
                if order > order_cap {
                    return Err(GroupError::OrderCapExceeded { order, cap: order_cap });
                }
            }
            // Mixed-radix digits, last factor fastest.
            let k = built.len();
            let mut strides = vec![1usize; k];
            for i in (0..k - 1).rev() {
                strides[i] = strides[i + 1] * built[i + 1].group.order();
            }
            let digits = |index: usize| -> Vec<usize> {
                (0..k)
                    .map(|i| (index / strides[i]) % built[i].group.order())
                    .collect()
            };
            let mut mul = Vec::with_capacity(order * order);
            for a in 0..order {
                let da = digits(a);
                for b in 0..order {
                    let db = digits(b);
                    let mut idx = 0usize;
                    for i in 0..k {
                        idx += built[i].group.mul(da[i], db[i]) * strides[i];
                    }
                    mul.push(idx);
                }
            }
            let group = FiniteGroup::from_parts(order, mul)?;
            let labels = (0..order)
                .map(|x| {
                    let d = digits(x);
                    let parts: Vec<&str> = (0..k).map(|i| built[i].labels[d[i]].as_str()).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            let description = built
                .iter()
                .map(|b| b.description.as_str())
                .collect::<Vec<_>>()
                .join("x");
            BuiltGroup {
                description,
                labels,
                group: Arc::new(group),
            }
        }
        GroupSpec::Perms(gens) => {
            if gens.is_empty() {
                return Err(GroupError::NoGenerators);
            }
            let points = gens[0].len();
            for g in gens {
                let mut sorted = g.clone();
                sorted.sort_unstable();
                if g.len() != points || sorted != (0..points).collect::<Vec<_>>() {
                    return Err(GroupError::NotAPermutation(g.clone()));
                }
            }
            let compose = |f: &[usize], g: &[usize]| -> Vec<usize> {
                // (f . g)(x) = f(g(x)); g applies first.
                (0..points).map(|x| f[g[x]]).collect()
            };
            let identity: Vec<usize> = (0..points).collect();
            let mut elements: Vec<Vec<usize>> = vec![identity.clone()];
            let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
            index.insert(identity, 0);
            let mut queue: VecDeque<usize> = VecDeque::from([0]);
            while let Some(i) = queue.pop_front() {
                for gen in gens {
                    let candidate = compose(&elements[i], gen);
                    if !index.contains_key(&candidate) {
                        if elements.len() == order_cap {
                            return Err(GroupError::OrderCapExceeded {
                                order: order_cap + 1,
                                cap: order_cap,
                            });
                        }
                        let id = elements.len();
                        index.insert(candidate.clone(), id);
                        elements.push(candidate);
                        queue.push_back(id);
                    }
                }
            }
            let order = elements.len();
            let mut mul = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    mul.push(index[&compose(&elements[a], &elements[b])]);
                }
            }
            let group = FiniteGroup::from_parts(order, mul)?;
            let fmt_perm = |p: &[usize]| {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            };
            let labels = elements.iter().map(|e| fmt_perm(e)).collect();
            let description = format!(
                "perms[{}]",
                gens.iter().map(|g| fmt_perm(g)).collect::<Vec<_>>().join(";")
            );
            BuiltGroup {
                description,
                labels,
                group: Arc::new(group),
            }
        }
    };
    Ok(built)
}
