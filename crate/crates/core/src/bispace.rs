//! `(H, G)` bispaces: finite right `G`-torsors with an equivariant
//! structure map `ψ: X -> H`, `ψ(x g) = ψ(x) t(g)`.
//!
//! Products and extensions are realized by literal orbit enumeration on
//! the underlying product sets; orbit representatives are least point ids.

use std::sync::Arc;

use thiserror::Error;

use crate::crossed::{CrossedModule, CrossedModuleMorphism};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BispaceError {
    #[error("carrier must have exactly |G| = {expected} points, got {got}")]
    CarrierSize { expected: usize, got: usize },
    #[error("table shape mismatch: {0}")]
    Shape(&'static str),
    #[error("right action is not an action at point {x}, g={g}")]
    NotAnAction { x: usize, g: usize },
    #[error("right action is not free and transitive: no unique g with {x}·g = {y}")]
    NotTorsor { x: usize, y: usize },
    #[error("structure map is not equivariant at point {x}, g={g}")]
    NotEquivariant { x: usize, g: usize },
    #[error("bispaces are over different crossed modules")]
    MismatchedModules,
    #[error("left and right actions do not commute at g={g}, x={x}, k={k}")]
    ActionsDoNotCommute { g: usize, x: usize, k: usize },
    #[error("structure value at point {x} is not an automorphism in the image of alpha")]
    NotAutomorphism { x: usize },
    #[error("point map is not a bispace morphism at point {x}")]
    NotMorphism { x: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bispace {
    xm: Arc<CrossedModule>,
    raction: Vec<usize>,
    psi: Vec<usize>,
}

/// Type of a bispace: an element of `H/t(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeValue {
    pub coset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BispaceMorphism {
    pub map: Vec<usize>,
}

impl Bispace {
    pub fn new(xm: &Arc<CrossedModule>, raction: Vec<Vec<usize>>, psi: Vec<usize>) -> Result<Self, BispaceError> {
        let ng = xm.g().order();
        if raction.len() != ng {
            return Err(BispaceError::CarrierSize { expected: ng, got: raction.len() });
        }
        if psi.len() != ng {
            return Err(BispaceError::Shape("psi length differs from carrier size"));
        }
        if raction.iter().any(|r| r.len() != ng || r.iter().any(|&y| y >= ng)) {
            return Err(BispaceError::Shape("raction must be |X| x |G| with entries in the carrier"));
        }
        if psi.iter().any(|&p| p >= xm.h().order()) {
            return Err(BispaceError::Shape("psi values must be elements of H"));
        }
        let x = Self { xm: xm.clone(), raction: raction.into_iter().flatten().collect(), psi };
        x.check()?;
        Ok(x)
    }

    fn check(&self) -> Result<(), BispaceError> {
        let g = self.xm.g();
        let n = self.len();
        for x in 0..n {
            if self.ract(x, 0) != x {
                return Err(BispaceError::NotAnAction { x, g: 0 });
            }
            for a in g.elements() {
                for b in g.elements() {
                    if self.ract(self.ract(x, a), b) != self.ract(x, g.mul(a, b)) {
                        return Err(BispaceError::NotAnAction { x, g: a });
                    }
                }
            }
        }
        for x in 0..n {
            let mut hits = vec![0usize; n];
            for a in g.elements() {
                hits[self.ract(x, a)] += 1;
            }
            if let Some(y) = (0..n).find(|&y| hits[y] != 1) {
                return Err(BispaceError::NotTorsor { x, y });
            }
        }
        for x in 0..n {
            for a in g.elements() {
                if self.psi[self.ract(x, a)] != self.xm.h().mul(self.psi[x], self.xm.boundary(a)) {
                    return Err(BispaceError::NotEquivariant { x, g: a });
                }
            }
        }
        Ok(())
    }

    pub fn xm(&self) -> &Arc<CrossedModule> {
        &self.xm
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    #[inline]
    pub fn ract(&self, x: usize, g: usize) -> usize {
        self.raction[x * self.xm.g().order() + g]
    }

    #[inline]
    pub fn psi(&self, x: usize) -> usize {
        self.psi[x]
    }

    pub fn psi_table(&self) -> &[usize] {
        &self.psi
    }

    pub fn raction_table(&self) -> Vec<Vec<usize>> {
        self.raction.chunks(self.xm.g().order()).map(|r| r.to_vec()).collect()
    }

    /// The unique `g` with `x·g = y`.
    pub fn difference(&self, x: usize, y: usize) -> usize {
        self.xm.g().elements().find(|&g| self.ract(x, g) == y).expect("torsor")
    }

    /// Induced left action `g x = x · α(ψ(x))^-1(g)`.
    pub fn left_action(&self, g: usize, x: usize) -> usize {
        let h = self.xm.h();
        self.ract(x, self.xm.act(h.inv(self.psi[x]), g))
    }

    pub fn type_of(&self) -> TypeValue {
        let coset = self.xm.coset(self.psi[0]);
        debug_assert!(self.psi.iter().all(|&p| self.xm.coset(p) == coset));
        TypeValue { coset }
    }

    /// Relabels points so that `0·g ↦ g`; the result is literally
    /// `T(ψ(0))`. Returns the relabelled bispace and the old→new map.
    pub fn canonicalize(&self) -> (Bispace, Vec<usize>) {
        let g = self.xm.g();
        let mut relabel = vec![0; self.len()];
        for a in g.elements() {
            relabel[self.ract(0, a)] = a;
        }
        (standard_bispace(&self.xm, self.psi[0]), relabel)
    }
}

/// `T(ξ)`: carrier `G`, right multiplication, `ψ(x) = ξ t(x)`.
pub fn standard_bispace(xm: &Arc<CrossedModule>, xi: usize) -> Bispace {
    let g = xm.g();
    let raction = g.elements().flat_map(|x| g.elements().map(move |a| g.mul(x, a))).collect();
    let psi = g.elements().map(|x| xm.h().mul(xi, xm.boundary(x))).collect();
    Bispace { xm: xm.clone(), raction, psi }
}

pub fn trivial_bispace(xm: &Arc<CrossedModule>) -> Bispace {
    standard_bispace(xm, 0)
}

impl BispaceMorphism {
    pub fn new(source: &Bispace, target: &Bispace, map: Vec<usize>) -> Result<Self, BispaceError> {
        if source.xm != target.xm {
            return Err(BispaceError::MismatchedModules);
        }
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(BispaceError::Shape("point map size"));
        }
        let mut hit = vec![false; target.len()];
        map.iter().for_each(|&y| hit[y] = true);
        if let Some(x) = hit.iter().position(|&h| !h) {
            return Err(BispaceError::NotMorphism { x });
        }
        for x in 0..source.len() {
            if target.psi(map[x]) != source.psi(x) {
                return Err(BispaceError::NotMorphism { x });
            }
            for g in source.xm.g().elements() {
                if map[source.ract(x, g)] != target.ract(map[x], g) {
                    return Err(BispaceError::NotMorphism { x });
                }
            }
        }
        Ok(Self { map })
    }
}

/// An isomorphism `X -> Y` exists exactly when the types agree; built by
/// matching a point of `X` to a point of `Y` with the same structure value
/// and transporting along the right action.
pub fn find_isomorphism(x: &Bispace, y: &Bispace) -> Result<Option<BispaceMorphism>, BispaceError> {
    if x.xm != y.xm {
        return Err(BispaceError::MismatchedModules);
    }
    let Some(y0) = (0..y.len()).find(|&p| y.psi(p) == x.psi(0)) else {
        return Ok(None);
    };
    let mut map = vec![0; x.len()];
    for g in x.xm.g().elements() {
        map[x.ract(0, g)] = y.ract(y0, g);
    }
    BispaceMorphism::new(x, y, map).map(Some)
}

/// `X ⊗ Y = (X × Y)/G` with its orbit bookkeeping.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub bispace: Bispace,
    /// Class of the pair `(x, y)` at index `x * |Y| + y`.
    pub class_of: Vec<usize>,
    /// Least pair index of each class.
    pub reps: Vec<usize>,
    pub right_len: usize,
}

impl TensorProduct {
    pub fn point(&self, x: usize, y: usize) -> usize {
        self.class_of[x * self.right_len + y]
    }
}

/// Orbits of a right action on `0..n` given by `step(p, g)`, labelled by
/// least member in increasing order.
fn orbits(n: usize, group: &FiniteGroup, step: impl Fn(usize, usize) -> usize) -> (Vec<usize>, Vec<usize>) {
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for p in 0..n {
        if class_of[p] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(p);
        for g in group.elements() {
            class_of[step(p, g)] = c;
        }
    }
    (class_of, reps)
}

pub fn tensor_with_classes(x: &Bispace, y: &Bispace) -> Result<TensorProduct, BispaceError> {
    if x.xm != y.xm {
        return Err(BispaceError::MismatchedModules);
    }
    let xm = &x.xm;
    let g = xm.g();
    let ny = y.len();
    // (x, y) g = (x g, g^-1 y)
    let (class_of, reps) = orbits(x.len() * ny, g, |p, a| {
        let (px, py) = (p / ny, p % ny);
        x.ract(px, a) * ny + y.left_action(g.inv(a), py)
    });
    let ng = g.order();
    let mut raction = Vec::with_capacity(reps.len() * ng);
    let mut psi = Vec::with_capacity(reps.len());
    for &r in &reps {
        let (px, py) = (r / ny, r % ny);
        for a in g.elements() {
            raction.push(class_of[px * ny + y.ract(py, a)]);
        }
        psi.push(xm.h().mul(x.psi(px), y.psi(py)));
    }
    for p in 0..class_of.len() {
        let (px, py) = (p / ny, p % ny);
        debug_assert_eq!(psi[class_of[p]], xm.h().mul(x.psi(px), y.psi(py)), "tensor structure map well-defined");
    }
    let bispace = Bispace { xm: xm.clone(), raction, psi };
    bispace.check()?;
    Ok(TensorProduct { bispace, class_of, reps, right_len: ny })
}

pub fn tensor(x: &Bispace, y: &Bispace) -> Result<Bispace, BispaceError> {
    tensor_with_classes(x, y).map(|t| t.bispace)
}

/// Same carrier, `ψ* = ψ^-1`, action `x·g = x α(ψ(x)^-1)(g^-1)`.
pub fn dual(x: &Bispace) -> Bispace {
    let xm = &x.xm;
    let (g, h) = (xm.g(), xm.h());
    let raction = (0..x.len())
        .flat_map(|p| g.elements().map(move |a| (p, a)))
        .map(|(p, a)| x.ract(p, xm.act(h.inv(x.psi(p)), g.inv(a))))
        .collect();
    let psi = x.psi.iter().map(|&p| h.inv(p)).collect();
    let d = Bispace { xm: xm.clone(), raction, psi };
    debug_assert!(d.check().is_ok());
    d
}

/// `X_1 = {x : ψ(x) = 1}` as a bispace over `(1, G_1)`.
#[derive(Debug, Clone)]
pub struct KernelReduction {
    pub bispace: Bispace,
    /// `points[i]` is the point of `X` labelled `i` in the reduction.
    pub points: Vec<usize>,
    pub inclusion: CrossedModuleMorphism,
}

pub fn reduce_to_kernel(x: &Bispace) -> Option<KernelReduction> {
    let points: Vec<usize> = (0..x.len()).filter(|&p| x.psi(p) == 0).collect();
    if points.is_empty() {
        return None;
    }
    let inclusion = x.xm.kernel_submodule();
    let sub = inclusion.source().clone();
    let embed = inclusion.v();
    let raction = points
        .iter()
        .map(|&p| {
            sub.g()
                .elements()
                .map(|a| points.binary_search(&x.ract(p, embed.apply(a))).expect("X_1 is G_1-stable"))
                .collect()
        })
        .collect();
    let bispace = Bispace::new(&sub, raction, vec![0; points.len()]).expect("X_1 is a (1, G_1) torsor");
    Some(KernelReduction { bispace, points, inclusion })
}

/// `X(G') = X ×_G G'` with `(x, g') g = (x g, η(g^-1) g')` and
/// `ψ[x, g'] = ζ(ψ(x)) t'(g')`.
pub fn extend(x: &Bispace, m: &CrossedModuleMorphism) -> Result<Bispace, BispaceError> {
    if &x.xm != m.source() {
        return Err(BispaceError::MismatchedModules);
    }
    let src = m.source();
    let tgt = m.target();
    let (g, g2) = (src.g(), tgt.g());
    let n2 = g2.order();
    let (class_of, reps) = orbits(x.len() * n2, g, |p, a| {
        let (px, pg) = (p / n2, p % n2);
        x.ract(px, a) * n2 + g2.mul(m.v().apply(g.inv(a)), pg)
    });
    let mut raction = Vec::with_capacity(reps.len());
    let mut psi = Vec::with_capacity(reps.len());
    for &r in &reps {
        let (px, pg) = (r / n2, r % n2);
        raction.push(g2.elements().map(|b| class_of[px * n2 + g2.mul(pg, b)]).collect());
        psi.push(tgt.h().mul(m.u().apply(x.psi(px)), tgt.boundary(pg)));
    }
    Bispace::new(tgt, raction, psi)
}

/// Recovers a bispace over `adjoint` from commuting left and right actions
/// of `G` on a set: `ψ(x)` is the automorphism with `x g = ψ(x)(g) x`.
/// `left[g][x]` is `g x` and `right[x][g]` is `x g`.
pub fn from_biaction(
    adjoint: &Arc<CrossedModule>,
    left: &[Vec<usize>],
    right: &[Vec<usize>],
) -> Result<Bispace, BispaceError> {
    let g = adjoint.g();
    let n = right.len();
    if left.len() != g.order() || left.iter().any(|r| r.len() != n || r.iter().any(|&y| y >= n)) {
        return Err(BispaceError::Shape("left action must be |G| x |X|"));
    }
    for a in g.elements() {
        for b in g.elements() {
            for x in 0..n {
                if left[a][left[b][x]] != left[g.mul(a, b)][x] {
                    return Err(BispaceError::NotAnAction { x, g: a });
                }
            }
        }
    }
    for a in g.elements() {
        for x in 0..n {
            for k in g.elements() {
                if left[a][right[x][k]] != right[left[a][x]][k] {
                    return Err(BispaceError::ActionsDoNotCommute { g: a, x, k });
                }
            }
        }
    }
    let mut psi = Vec::with_capacity(n);
    #[allow(clippy::needless_range_loop)]
    for x in 0..n {
        let mut perm = Vec::with_capacity(g.order());
        for a in g.elements() {
            let target = right.get(x).and_then(|r| r.get(a)).copied().ok_or(BispaceError::Shape("right action"))?;
            let img = g
                .elements()
                .filter(|&b| left[b][x] == target)
                .collect::<Vec<_>>();
            if img.len() != 1 {
                return Err(BispaceError::NotTorsor { x, y: target });
            }
            perm.push(img[0]);
        }
        let h = adjoint
            .h()
            .elements()
            .find(|&h| g.elements().all(|a| adjoint.act(h, a) == perm[a]))
            .ok_or(BispaceError::NotAutomorphism { x })?;
        psi.push(h);
    }
    Bispace::new(adjoint, right.to_vec(), psi)
}

/// The group of isomorphism classes of bispaces, one `T(ξ)` per coset.
#[derive(Debug, Clone)]
pub struct Pi0Group {
    pub group: FiniteGroup,
    pub representatives: Vec<Bispace>,
    /// `type_of(representatives[i])` as a `pi0` element.
    pub type_iso: Vec<usize>,
}

/// Builds the class group from explicit tensor products and
/// `find_isomorphism`, then checks the type map is an isomorphism onto
/// `H/t(G)`.
pub fn pi0_group(xm: &Arc<CrossedModule>) -> Result<Pi0Group, BispaceError> {
    let reps: Vec<Bispace> = xm.pi0().section.iter().map(|&xi| standard_bispace(xm, xi)).collect();
    let classify = |b: &Bispace| -> Result<usize, BispaceError> {
        let mut found = None;
        for (i, r) in reps.iter().enumerate() {
            if find_isomorphism(b, r)?.is_some() {
                assert!(found.is_none(), "distinct standard bispaces are not isomorphic");
                found = Some(i);
            }
        }
        Ok(found.expect("every bispace is isomorphic to some T(ξ)"))
    };
    let mut table = Vec::with_capacity(reps.len());
    for a in &reps {
        let mut row = Vec::with_capacity(reps.len());
        for b in &reps {
            row.push(classify(&tensor(a, b)?)?);
        }
        table.push(row);
    }
    let group = FiniteGroup::from_table(&table, None).expect("isomorphism classes form a group");
    let type_iso: Vec<usize> = reps.iter().map(|r| r.type_of().coset).collect();
    for a in group.elements() {
        for b in group.elements() {
            assert_eq!(type_iso[group.mul(a, b)], xm.pi0().group.mul(type_iso[a], type_iso[b]));
        }
    }
    Ok(Pi0Group { group, representatives: reps, type_iso })
}
