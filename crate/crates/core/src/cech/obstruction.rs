//! Lifting obstruction `ε` in `H^2(M, G_1)` and the exact sequence
//! `1 -> H^1(M, G_1) -> π_0 Bibun(M) -> Map(M, H/t(G)) -> H^2(M, G_1)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::abelian::{AbelianCochainComplex, CechClass};
use super::cocycle::{enumerate_pi0, iota, kernel_group, type_map};
use super::nerve::Nerve;
use super::CechError;
use crate::crossed::CrossedModule;

#[derive(Debug, Clone)]
pub struct LiftingObstruction {
    /// The `t(G)`-valued cocycle, as elements of `H`.
    pub tau: Vec<usize>,
    /// Least preimage of each `τ_ij`.
    pub lift: Vec<usize>,
    /// `c_ijk = ĝ_ij ĝ_jk ĝ_ik^-1` in `kernel_group` indices.
    pub cochain: Vec<usize>,
    pub class: CechClass,
    /// A lift satisfying the triangle condition, when the class is zero.
    pub corrected_lift: Option<Vec<usize>>,
}

/// The complex `C^*(nerve, G_1)`.
pub fn kernel_complex(nerve: &Arc<Nerve>, xm: &CrossedModule) -> Result<AbelianCochainComplex, CechError> {
    AbelianCochainComplex::from_group(nerve, &kernel_group(xm))
}

/// `ĝ_ij ĝ_jk ĝ_ik^-1` for any `G`-valued lift of a `t(G)` cocycle, in
/// `kernel_group` indices.
pub fn obstruction_cochain(nerve: &Nerve, xm: &CrossedModule, lift: &[usize]) -> Result<Vec<usize>, CechError> {
    let g = xm.g();
    if lift.len() != nerve.edges().len() {
        return Err(CechError::CochainSize { expected: nerve.edges().len(), got: lift.len() });
    }
    nerve
        .triangles()
        .iter()
        .map(|&[i, j, k]| {
            let (ij, jk, ik) = (nerve.edge(i, j).unwrap(), nerve.edge(j, k).unwrap(), nerve.edge(i, k).unwrap());
            let c = g.mul(g.mul(lift[ij], lift[jk]), g.inv(lift[ik]));
            xm.g1().position(c).ok_or(CechError::TriangleCondition { triangle: [i, j, k] })
        })
        .collect()
}

/// Lifts `τ` through `G -> t(G)` with the least-preimage section and
/// returns the class of the failure of the triangle condition.
pub fn lifting_obstruction(
    nerve: &Arc<Nerve>,
    xm: &Arc<CrossedModule>,
    tau: &[usize],
) -> Result<LiftingObstruction, CechError> {
    let h = xm.h();
    if tau.len() != nerve.edges().len() {
        return Err(CechError::CochainSize { expected: nerve.edges().len(), got: tau.len() });
    }
    if let Some((position, &value)) = tau.iter().enumerate().find(|(_, &v)| v >= h.order()) {
        return Err(CechError::ValueOutOfRange { position, value });
    }
    let mut lift = Vec::with_capacity(tau.len());
    for (e, &v) in tau.iter().enumerate() {
        lift.push(xm.lift_boundary(v).ok_or(CechError::NotInImage { edge: nerve.edges()[e] })?);
    }
    if super::cocycle::check_triangles(nerve, h, tau).is_err() {
        return Err(CechError::NotACocycle { degree: 1 });
    }
    let cochain = obstruction_cochain(nerve, xm, &lift)?;
    let complex = Arc::new(kernel_complex(nerve, xm)?);
    let class = CechClass::new(&complex, 2, cochain.clone())?;
    let corrected_lift = class.witness.as_ref().map(|a| {
        let (g, g1) = (xm.g(), xm.g1().elements());
        lift.iter().zip(a).map(|(&l, &x)| g.mul(l, g.inv(g1[x]))).collect::<Vec<_>>()
    });
    if let Some(c) = &corrected_lift {
        super::cocycle::check_triangles(nerve, xm.g(), c).expect("corrected lift is a cocycle");
    }
    Ok(LiftingObstruction { tau: tau.to_vec(), lift, cochain, class, corrected_lift })
}

/// Generators of `H^1(nerve, t(G))` as `H`-valued cocycles, when `t(G)` is
/// abelian.
pub fn image_h1_generators(nerve: &Arc<Nerve>, xm: &CrossedModule) -> Result<Vec<Vec<usize>>, CechError> {
    let (tg, incl) = xm.tg().to_group();
    let complex = AbelianCochainComplex::from_group(nerve, &tg)?;
    let h1 = complex.cohomology(1)?;
    Ok(h1.summands.iter().map(|s| s.generator.iter().map(|&x| incl.apply(x)).collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub h1_order: usize,
    pub h1_invariants: Vec<usize>,
    pub pi0_bibun_order: usize,
    pub map_order: usize,
    pub ker_epsilon_order: usize,
    pub epsilon_zero: Vec<bool>,
    pub iota_injective: bool,
    pub ker_type_equals_im_iota: bool,
    pub im_type_equals_ker_epsilon: bool,
    pub cardinality_identity: bool,
    /// Recorded, not required for exactness.
    pub epsilon_homomorphism: bool,
    pub exact: bool,
    pub witnesses: Vec<String>,
}

/// All locally constant maps `components -> H/t(G)` in odometer order.
fn all_maps(q: usize, comps: usize) -> Vec<Vec<usize>> {
    let total = (0..comps).fold(1usize, |a, _| a * q);
    (0..total)
        .map(|mut idx| {
            (0..comps)
                .map(|_| {
                    let v = idx % q;
                    idx /= q;
                    v
                })
                .collect()
        })
        .collect()
}

/// `τ_ij = φ̂_i^-1 φ̂_j` for the vertexwise lift
/// `φ̂_i = section(φ(i)) · t(g_(i mod |G|))`.
pub fn epsilon_tau(nerve: &Nerve, xm: &CrossedModule, phi: &[usize]) -> Vec<usize> {
    let h = xm.h();
    let n = xm.g().order();
    let lift: Vec<usize> = (0..nerve.vertex_count())
        .map(|v| h.mul(xm.pi0().section[phi[nerve.component_of(v)]], xm.boundary(v % n)))
        .collect();
    nerve.edges().iter().map(|&[i, j]| h.mul(h.inv(lift[i]), lift[j])).collect()
}

/// Computes all four terms and checks exactness at each interior spot.
pub fn exact_sequence_report(
    nerve: &Arc<Nerve>,
    xm: &Arc<CrossedModule>,
    budget: u128,
) -> Result<ExactSequenceReport, CechError> {
    let complex = Arc::new(kernel_complex(nerve, xm)?);
    let h1 = complex.cohomology(1)?;
    let catalog = enumerate_pi0(nerve, xm, budget)?;
    let mut witnesses = Vec::new();

    let mut iota_image = BTreeSet::new();
    for r in h1.elements(complex.coefficients()) {
        let class = catalog.class_of(&iota(nerve, xm, &r)?);
        if !iota_image.insert(class) {
            witnesses.push(format!("iota not injective: {r:?} collides in class {class}"));
        }
    }
    let iota_injective = iota_image.len() == h1.order;

    let q = xm.pi0().group.order();
    let comps = nerve.component_count();
    let encode = |vals: &[usize]| vals.iter().rev().fold(0usize, |acc, &v| acc * q + v);
    let types: Vec<usize> = catalog.classes.iter().map(|c| encode(&type_map(c).values)).collect();
    let ker_type: BTreeSet<usize> = (0..types.len()).filter(|&i| types[i] == 0).collect();
    let ker_type_equals_im_iota = ker_type == iota_image;
    if !ker_type_equals_im_iota {
        witnesses.push(format!("ker Type {ker_type:?} differs from im iota {iota_image:?}"));
    }

    let maps = all_maps(q, comps);
    let mut epsilon = Vec::with_capacity(maps.len());
    for phi in &maps {
        epsilon.push(lifting_obstruction(nerve, xm, &epsilon_tau(nerve, xm, phi))?.class);
    }
    let epsilon_zero: Vec<bool> = epsilon.iter().map(|c| c.is_zero).collect();
    let ker_eps: BTreeSet<usize> = (0..maps.len()).filter(|&i| epsilon_zero[i]).collect();
    let im_type: BTreeSet<usize> = types.iter().copied().collect();
    let im_type_equals_ker_epsilon = im_type == ker_eps;
    if !im_type_equals_ker_epsilon {
        witnesses.push(format!("im Type {im_type:?} differs from ker epsilon {ker_eps:?}"));
    }

    let cardinality_identity = catalog.classes.len() == h1.order * ker_eps.len();
    if !cardinality_identity {
        witnesses.push(format!(
            "|pi0 Bibun| = {} but |H^1| * |ker epsilon| = {}",
            catalog.classes.len(),
            h1.order * ker_eps.len()
        ));
    }

    let pi0 = &xm.pi0().group;
    let g1 = complex.coefficients().group();
    let mut epsilon_homomorphism = true;
    'outer: for (a, pa) in maps.iter().enumerate() {
        for (b, pb) in maps.iter().enumerate() {
            let prod: Vec<usize> = pa.iter().zip(pb).map(|(&x, &y)| pi0.mul(x, y)).collect();
            let ab = encode(&prod);
            let sum: Vec<usize> = epsilon[a]
                .representative
                .iter()
                .zip(&epsilon[b].representative)
                .map(|(&x, &y)| g1.mul(x, y))
                .collect();
            let sum = CechClass::new(&complex, 2, sum)?;
            if !sum.same_class(&epsilon[ab])? {
                epsilon_homomorphism = false;
                break 'outer;
            }
        }
    }

    let exact = iota_injective && ker_type_equals_im_iota && im_type_equals_ker_epsilon && cardinality_identity;
    Ok(ExactSequenceReport {
        h1_order: h1.order,
        h1_invariants: h1.invariant_factors.clone(),
        pi0_bibun_order: catalog.classes.len(),
        map_order: maps.len(),
        ker_epsilon_order: ker_eps.len(),
        epsilon_zero,
        iota_injective,
        ker_type_equals_im_iota,
        im_type_equals_ker_epsilon,
        cardinality_identity,
        epsilon_homomorphism,
        exact,
        witnesses,
    })
}
