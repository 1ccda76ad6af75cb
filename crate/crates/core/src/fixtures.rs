//! Built-in named objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cech::nerve::{circ3, disc2, rp26, sphere, Nerve};
use crate::crossed::{abelian_module, adjoint_module, identity_module, jandl, v4, CrossedError, CrossedModule};
use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER};

pub fn groups() -> BTreeMap<String, FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2);
    [
        ("Z2", z2.clone()),
        ("Z3", FiniteGroup::cyclic(3)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("Z2xZ2", FiniteGroup::direct_product(&z2, &z2)),
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
    ]
    .into_iter()
    .map(|(n, g)| (n.to_string(), g))
    .collect()
}

pub fn crossed_modules() -> BTreeMap<String, Arc<CrossedModule>> {
    let s3 = FiniteGroup::symmetric(3);
    [
        ("J2", jandl(2)),
        ("J3", jandl(3)),
        ("J4", jandl(4)),
        ("V4", v4()),
        ("AdS3", adjoint_module(&s3, DEFAULT_MAX_ORDER).expect("Aut(S3) is small")),
        ("D1Z4", identity_module(&FiniteGroup::cyclic(4))),
        ("D1S3", identity_module(&s3)),
    ]
    .into_iter()
    .map(|(n, x)| (n.to_string(), Arc::new(x)))
    .collect()
}

pub fn nerves() -> BTreeMap<String, Arc<Nerve>> {
    [("Disc2", disc2()), ("Circ3", circ3()), ("Sphere", sphere()), ("RP26", rp26())]
        .into_iter()
        .map(|(n, x)| (n.to_string(), Arc::new(x)))
        .collect()
}

/// `S_3` with trivial boundary and trivial action; fails the second axiom.
pub fn s3_trivial_boundary() -> Result<CrossedModule, CrossedError> {
    abelian_module(&FiniteGroup::symmetric(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_validates() {
        assert_eq!(groups().len(), 6);
        assert_eq!(crossed_modules().len(), 7);
        let rp = &nerves()["RP26"];
        assert_eq!(rp.euler_characteristic(), 1);
        assert!(matches!(s3_trivial_boundary(), Err(CrossedError::PeifferAxiom { .. })));
    }
}
