//! Small worked CM data used across tests, benchmarks and documentation.
//!
//! - `iq`: imaginary quadratic model, `G = Z/2`, `g = 1`.
//! - `c4`: primitive quartic cyclic type, `G = Z/4`, `g = 2`.
//! - `c2xc4`: induced (imprimitive) type on `Z/2 x Z/4`, `g = 4`.
//! - `d4`: non-Galois quartic model inside the dihedral group of order 8,
//!   `H = {e, s}`, `g = 2`.

use crate::cm_structures::{validate_cm_type, CmType};
use crate::finite_group::{
    make_group, validate_cm_datum, CmFieldDatum, GroupSpec, DEFAULT_ORDER_CAP,
};

fn datum(spec: &GroupSpec, h_seeds: &[usize], c: usize) -> CmFieldDatum {
    let built = make_group(spec, DEFAULT_ORDER_CAP).expect("fixture group builds");
    let h = built
        .group
        .subgroup_closure(h_seeds)
        .expect("fixture subgroup closes");
    validate_cm_datum(built.group, h, c).expect("fixture datum is valid")
}

pub fn iq_datum() -> CmFieldDatum {
    datum(&GroupSpec::Cyclic(2), &[], 1)
}

pub fn iq() -> CmType {
    validate_cm_type(&iq_datum(), &[0]).expect("fixture type is valid")
}

pub fn c4_datum() -> CmFieldDatum {
    datum(&GroupSpec::Cyclic(4), &[], 2)
}

pub fn c4() -> CmType {
    validate_cm_type(&c4_datum(), &[0, 1]).expect("fixture type is valid")
}

pub fn c2xc4_datum() -> CmFieldDatum {
    datum(
        &GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(4)]),
        &[],
        6,
    )
}

pub fn c2xc4() -> CmType {
    validate_cm_type(&c2xc4_datum(), &[0, 1, 2, 3]).expect("fixture type is valid")
}

/// Dihedral group of order 8 generated by the 4-cycle `r` and the
/// reflection `s` fixing points 0 and 2. In the breadth-first element order
/// the indices are `e=0, r=1, s=2, r^2=3, rs=4, sr=5, r^3=6, r^2 s=7`.
pub fn d4_datum() -> CmFieldDatum {
    datum(
        &GroupSpec::Perms(vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]]),
        &[2],
        3,
    )
}

pub fn d4() -> CmType {
    validate_cm_type(&d4_datum(), &[0, 1]).expect("fixture type is valid")
}

/// All four fixture types, in a stable order.
pub fn all_fixture_types() -> Vec<(&'static str, CmType)> {
    vec![
        ("iq", iq()),
        ("c4", c4()),
        ("c2xc4", c2xc4()),
        ("d4", d4()),
    ]
}
