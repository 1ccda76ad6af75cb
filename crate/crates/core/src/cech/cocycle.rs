//! Čech cocycles `(g_ij, h_i)` for `(H, G)` bibundles, their gauge classes
//! and the group structure on classes.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::nerve::Nerve;
use super::CechError;
use crate::crossed::CrossedModule;
use crate::group::FiniteGroup;

/// Cocycle data on a fixed nerve. `g` is indexed by edge (oriented from the
/// smaller vertex), `h` by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibundleCocycle {
    nerve: Arc<Nerve>,
    xm: Arc<CrossedModule>,
    g: Vec<usize>,
    h: Vec<usize>,
}

/// Vertexwise change of section `s'_i = s_i k_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge {
    pub k: Vec<usize>,
}

/// One `H/t(G)` value per connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeAssignment {
    pub xm: Arc<CrossedModule>,
    pub values: Vec<usize>,
}

fn same<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl BibundleCocycle {
    /// Checks every triangle condition, then every edge condition.
    pub fn new(nerve: &Arc<Nerve>, xm: &Arc<CrossedModule>, g: Vec<usize>, h: Vec<usize>) -> Result<Self, CechError> {
        let (gg, hh) = (xm.g(), xm.h());
        if g.len() != nerve.edges().len() {
            return Err(CechError::CochainSize { expected: nerve.edges().len(), got: g.len() });
        }
        if h.len() != nerve.vertex_count() {
            return Err(CechError::CochainSize { expected: nerve.vertex_count(), got: h.len() });
        }
        if let Some((position, &value)) = g.iter().enumerate().find(|(_, &v)| v >= gg.order()) {
            return Err(CechError::ValueOutOfRange { position, value });
        }
        if let Some((position, &value)) = h.iter().enumerate().find(|(_, &v)| v >= hh.order()) {
            return Err(CechError::ValueOutOfRange { position, value });
        }
        check_triangles(nerve, gg, &g)?;
        for (e, &[i, j]) in nerve.edges().iter().enumerate() {
            if h[j] != hh.mul(h[i], xm.boundary(g[e])) {
                return Err(CechError::EdgeCondition { edge: [i, j] });
            }
        }
        Ok(Self { nerve: nerve.clone(), xm: xm.clone(), g, h })
    }

    pub fn nerve(&self) -> &Arc<Nerve> {
        &self.nerve
    }

    pub fn xm(&self) -> &Arc<CrossedModule> {
        &self.xm
    }

    pub fn g(&self) -> &[usize] {
        &self.g
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    /// `g_ij` for either orientation, with `g_ji = g_ij^-1`.
    pub fn g_edge(&self, i: usize, j: usize) -> Option<usize> {
        let e = self.nerve.edge(i, j)?;
        Some(if i < j { self.g[e] } else { self.xm.g().inv(self.g[e]) })
    }

    fn key(&self) -> (Vec<usize>, Vec<usize>) {
        (self.g.clone(), self.h.clone())
    }

    fn compatible(&self, other: &Self) -> Result<(), CechError> {
        if same(&self.nerve, &other.nerve) && same(&self.xm, &other.xm) {
            Ok(())
        } else {
            Err(CechError::Mismatch)
        }
    }
}

/// `g_ij g_jk = g_ik` on every triangle.
pub fn check_triangles(nerve: &Nerve, g: &FiniteGroup, values: &[usize]) -> Result<(), CechError> {
    for &[i, j, k] in nerve.triangles() {
        let (ij, jk, ik) = (nerve.edge(i, j).unwrap(), nerve.edge(j, k).unwrap(), nerve.edge(i, k).unwrap());
        if g.mul(values[ij], values[jk]) != values[ik] {
            return Err(CechError::TriangleCondition { triangle: [i, j, k] });
        }
    }
    Ok(())
}

impl Gauge {
    pub fn identity(vertices: usize) -> Self {
        Gauge { k: vec![0; vertices] }
    }

    /// Pointwise product; `apply(apply(c, a), b) = apply(c, a.compose(b))`.
    pub fn compose(&self, other: &Gauge, g: &FiniteGroup) -> Gauge {
        Gauge { k: self.k.iter().zip(&other.k).map(|(&a, &b)| g.mul(a, b)).collect() }
    }

    pub fn inverse(&self, g: &FiniteGroup) -> Gauge {
        Gauge { k: self.k.iter().map(|&a| g.inv(a)).collect() }
    }

    /// Constant value per component.
    fn residual(nerve: &Nerve, r: &[usize]) -> Gauge {
        Gauge { k: (0..nerve.vertex_count()).map(|v| r[nerve.component_of(v)]).collect() }
    }
}

impl TypeAssignment {
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &TypeAssignment) -> TypeAssignment {
        let q = &self.xm.pi0().group;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| q.mul(a, b)).collect();
        TypeAssignment { xm: self.xm.clone(), values }
    }

    pub fn inverse(&self) -> TypeAssignment {
        let q = &self.xm.pi0().group;
        TypeAssignment { xm: self.xm.clone(), values: self.values.iter().map(|&a| q.inv(a)).collect() }
    }
}

/// `g ≡ 1`, `h ≡ 1`.
pub fn trivial(nerve: &Arc<Nerve>, xm: &Arc<CrossedModule>) -> BibundleCocycle {
    BibundleCocycle { nerve: nerve.clone(), xm: xm.clone(), g: vec![0; nerve.edges().len()], h: vec![0; nerve.vertex_count()] }
}

/// The coset `[h_i]` on each component.
pub fn type_map(c: &BibundleCocycle) -> TypeAssignment {
    let nerve = &c.nerve;
    let mut values = vec![usize::MAX; nerve.component_count()];
    for v in 0..nerve.vertex_count() {
        let q = c.xm.coset(c.h[v]);
        let slot = &mut values[nerve.component_of(v)];
        assert!(*slot == usize::MAX || *slot == q, "type is not constant on a component");
        *slot = q;
    }
    TypeAssignment { xm: c.xm.clone(), values }
}

/// `g'_ij = k_i^-1 g_ij k_j`, `h'_i = h_i t(k_i)`.
pub fn apply_gauge(c: &BibundleCocycle, k: &Gauge) -> BibundleCocycle {
    let (g, h) = (c.xm.g(), c.xm.h());
    assert_eq!(k.k.len(), c.nerve.vertex_count(), "gauge size");
    let new_g = c.nerve.edges().iter().zip(&c.g).map(|(&[i, j], &v)| g.mul(g.mul(g.inv(k.k[i]), v), k.k[j])).collect();
    let new_h = c.h.iter().zip(&k.k).map(|(&hv, &kv)| h.mul(hv, c.xm.boundary(kv))).collect();
    let out = BibundleCocycle { nerve: c.nerve.clone(), xm: c.xm.clone(), g: new_g, h: new_h };
    debug_assert!(BibundleCocycle::new(&out.nerve, &out.xm, out.g.clone(), out.h.clone()).is_ok());
    out
}

/// Gauge making `g` trivial on every spanning-forest edge.
pub fn normalize(c: &BibundleCocycle) -> (BibundleCocycle, Gauge) {
    let g = c.xm.g();
    let forest = c.nerve.forest();
    let mut k = vec![0; c.nerve.vertex_count()];
    for &v in &forest.order {
        if let Some((p, _)) = forest.parent[v] {
            k[v] = g.mul(g.inv(c.g_edge(p, v).unwrap()), k[p]);
        }
    }
    let k = Gauge { k };
    (apply_gauge(c, &k), k)
}

/// The residual gauges (constant per component) applied to a normalized
/// cocycle, restricted to component `comp`, as the ordered tuple of
/// `g` on its edges followed by `h` on its vertices.
fn component_key(c: &BibundleCocycle, comp: usize, r: usize) -> Vec<usize> {
    let (g, h) = (c.xm.g(), c.xm.h());
    let nerve = &c.nerve;
    let mut key = Vec::new();
    for (e, &[i, _]) in nerve.edges().iter().enumerate() {
        if nerve.component_of(i) == comp {
            key.push(g.mul(g.mul(g.inv(r), c.g[e]), r));
        }
    }
    let tr = c.xm.boundary(r);
    for v in 0..nerve.vertex_count() {
        if nerve.component_of(v) == comp {
            key.push(h.mul(c.h[v], tr));
        }
    }
    key
}

/// Deterministic orbit representative: normalize on the spanning forest,
/// then take the lexicographically least `(g, h)` over the residual gauge,
/// component by component. Returns the representative and the gauge
/// reaching it.
pub fn canonical(c: &BibundleCocycle) -> (BibundleCocycle, Gauge) {
    let (n, k) = normalize(c);
    let r: Vec<usize> = (0..c.nerve.component_count())
        .map(|comp| c.xm.g().elements().min_by_key(|&r| component_key(&n, comp, r)).unwrap())
        .collect();
    let res = Gauge::residual(&c.nerve, &r);
    (apply_gauge(&n, &res), k.compose(&res, c.xm.g()))
}

/// A gauge `k` with `apply_gauge(c1, k) = c2`, or `None` if the cocycles
/// are not equivalent.
pub fn equivalent(c1: &BibundleCocycle, c2: &BibundleCocycle) -> Result<Option<Gauge>, CechError> {
    c1.compatible(c2)?;
    if type_map(c1) != type_map(c2) {
        return Ok(None);
    }
    let g = c1.xm.g();
    let (n1, k1) = normalize(c1);
    let (n2, k2) = normalize(c2);
    let mut r = Vec::with_capacity(c1.nerve.component_count());
    for comp in 0..c1.nerve.component_count() {
        let target = component_key(&n2, comp, 0);
        match g.elements().find(|&x| component_key(&n1, comp, x) == target) {
            Some(x) => r.push(x),
            None => return Ok(None),
        }
    }
    let k = k1.compose(&Gauge::residual(&c1.nerve, &r), g).compose(&k2.inverse(g), g);
    assert_eq!(apply_gauge(c1, &k), *c2, "equivalence gauge does not verify");
    Ok(Some(k))
}

/// A central section, as the gauge taking `c` to the trivial cocycle.
pub fn is_trivial(c: &BibundleCocycle) -> Option<Gauge> {
    equivalent(c, &trivial(&c.nerve, &c.xm)).expect("same nerve and crossed module")
}

/// `h''_i = h_i h'_i`, `g''_ij = g'_ij α((h'_i t(g'_ij))^-1)(g_ij)`.
pub fn tensor_cocycle(c1: &BibundleCocycle, c2: &BibundleCocycle) -> Result<BibundleCocycle, CechError> {
    c1.compatible(c2)?;
    let xm = &c1.xm;
    let (g, h) = (xm.g(), xm.h());
    let new_g = c1
        .nerve
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &[i, _])| {
            let hj = h.mul(c2.h[i], xm.boundary(c2.g[e]));
            g.mul(c2.g[e], xm.act(h.inv(hj), c1.g[e]))
        })
        .collect();
    let new_h = c1.h.iter().zip(&c2.h).map(|(&a, &b)| h.mul(a, b)).collect();
    BibundleCocycle::new(&c1.nerve, xm, new_g, new_h)
}

/// `h*_i = h_i^-1`, `g*_ij = α(h_i)(g_ij^-1)`.
pub fn dual_cocycle(c: &BibundleCocycle) -> BibundleCocycle {
    let xm = &c.xm;
    let (g, h) = (xm.g(), xm.h());
    let new_g = c.nerve.edges().iter().zip(&c.g).map(|(&[i, _], &v)| xm.act(c.h[i], g.inv(v))).collect();
    let new_h = c.h.iter().map(|&v| h.inv(v)).collect();
    BibundleCocycle::new(&c.nerve, xm, new_g, new_h).expect("dual of a cocycle is a cocycle")
}

/// `G_1` as a standalone group; element `i` is `g1().elements()[i]`.
pub fn kernel_group(xm: &CrossedModule) -> FiniteGroup {
    xm.g1().to_group().0
}

/// `ι(r)`: `g_ij = r_ij ∈ G_1`, `h ≡ 1`. `r` uses `kernel_group` indices.
pub fn iota(nerve: &Arc<Nerve>, xm: &Arc<CrossedModule>, r: &[usize]) -> Result<BibundleCocycle, CechError> {
    let g1 = xm.g1().elements();
    if r.len() != nerve.edges().len() {
        return Err(CechError::CochainSize { expected: nerve.edges().len(), got: r.len() });
    }
    if let Some((position, &value)) = r.iter().enumerate().find(|(_, &v)| v >= g1.len()) {
        return Err(CechError::ValueOutOfRange { position, value });
    }
    let g: Vec<usize> = r.iter().map(|&x| g1[x]).collect();
    if check_triangles(nerve, xm.g(), &g).is_err() {
        return Err(CechError::NotACocycle { degree: 1 });
    }
    BibundleCocycle::new(nerve, xm, g, vec![0; nerve.vertex_count()])
}

/// `T(φ̂)`: `g ≡ 1`, `h_i = φ̂(component of i)`.
pub fn standard_cocycle(nerve: &Arc<Nerve>, xm: &Arc<CrossedModule>, lift: &[usize]) -> BibundleCocycle {
    assert_eq!(lift.len(), nerve.component_count(), "one lift value per component");
    let h = (0..nerve.vertex_count()).map(|v| lift[nerve.component_of(v)]).collect();
    BibundleCocycle::new(nerve, xm, vec![0; nerve.edges().len()], h).expect("T(lift) is a cocycle")
}

/// `c ⊗ T(φ̂)`.
pub fn twist_by_lift(c: &BibundleCocycle, lift: &[usize]) -> BibundleCocycle {
    tensor_cocycle(c, &standard_cocycle(&c.nerve, &c.xm, lift)).expect("same nerve")
}

/// A `G_1` cocycle `r` with `c ≅ ι(r) ⊗ T(φ̂)`, with the certifying gauge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub r: Vec<usize>,
    pub gauge: Gauge,
}

/// Untwists `c` by `T(φ̂)^*`, gauges `h` to the identity and reads the
/// remaining `g` in `G_1`.
pub fn factor_through_lift(c: &BibundleCocycle, lift: &[usize]) -> Result<Factorization, CechError> {
    let xm = &c.xm;
    let ty = type_map(c);
    if lift.len() != c.nerve.component_count() {
        return Err(CechError::CochainSize { expected: c.nerve.component_count(), got: lift.len() });
    }
    if let Some(component) = (0..lift.len()).find(|&i| xm.coset(lift[i]) != ty.values[i]) {
        return Err(CechError::TypeMismatch { component });
    }
    let untwisted = tensor_cocycle(c, &dual_cocycle(&standard_cocycle(&c.nerve, xm, lift)))?;
    let k = Gauge {
        k: untwisted.h.iter().map(|&hv| xm.lift_boundary(xm.h().inv(hv)).expect("type is trivial")).collect(),
    };
    let reduced = apply_gauge(&untwisted, &k);
    let r: Vec<usize> = reduced.g.iter().map(|&v| xm.g1().position(v).expect("h ≡ 1 forces g in G_1")).collect();
    let model = twist_by_lift(&iota(&c.nerve, xm, &r)?, lift);
    let gauge = equivalent(c, &model)?.expect("factorization is an equivalence");
    Ok(Factorization { r, gauge })
}

/// All gauge classes on a nerve with their tensor table.
#[derive(Debug, Clone)]
pub struct Pi0Catalog {
    /// Canonical representatives in increasing order; index 0 is trivial.
    pub classes: Vec<BibundleCocycle>,
    pub types: Vec<TypeAssignment>,
    /// Tensor product of classes as a group.
    pub group: FiniteGroup,
    pub dual_of: Vec<usize>,
    index: BTreeMap<(Vec<usize>, Vec<usize>), usize>,
}

impl Pi0Catalog {
    /// Class index of an arbitrary cocycle on the same nerve.
    pub fn class_of(&self, c: &BibundleCocycle) -> usize {
        self.index[&canonical(c).0.key()]
    }
}

fn pow_saturating(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Naive state count `|G|^loops · |π_0|^components` checked against the
/// budget before enumeration.
pub fn enumeration_cost(nerve: &Nerve, xm: &CrossedModule) -> u128 {
    pow_saturating(xm.g().order(), nerve.loop_count())
        .saturating_mul(pow_saturating(xm.pi0().group.order(), nerve.component_count()))
}

/// Every class, its tensor table and duals. After forest normalization
/// each class has a representative with `h` constant per component and
/// equal to a coset representative, and `g` trivial on tree edges and in
/// `G_1` on the others; those are backtracked with triangle pruning.
pub fn enumerate_pi0(nerve: &Arc<Nerve>, xm: &Arc<CrossedModule>, budget: u128) -> Result<Pi0Catalog, CechError> {
    let needed = enumeration_cost(nerve, xm);
    if needed > budget {
        return Err(CechError::BudgetExceeded { needed, budget });
    }
    let g = xm.g();
    let forest = nerve.forest();
    let free: Vec<usize> = (0..nerve.edges().len()).filter(|&e| !forest.tree_edge[e]).collect();
    // Triangles become checkable once their last free edge is assigned.
    let mut check_at: Vec<Vec<[usize; 3]>> = vec![Vec::new(); free.len()];
    for &[i, j, k] in nerve.triangles() {
        let es = [nerve.edge(i, j).unwrap(), nerve.edge(j, k).unwrap(), nerve.edge(i, k).unwrap()];
        if let Some(p) = es.iter().filter_map(|e| free.iter().position(|f| f == e)).max() {
            check_at[p].push(es);
        }
    }
    let kernel = xm.g1().elements();
    let pi0 = xm.pi0();
    let comps = nerve.component_count();
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();

    let mut roots = vec![0usize; comps];
    loop {
        let h: Vec<usize> = (0..nerve.vertex_count()).map(|v| pi0.section[roots[nerve.component_of(v)]]).collect();
        let mut values = vec![0usize; nerve.edges().len()];
        let mut choice = vec![0usize; free.len()];
        let mut depth = 0usize;
        // Odometer with pruning over the free edges.
        'search: loop {
            if depth == free.len() {
                let c = BibundleCocycle { nerve: nerve.clone(), xm: xm.clone(), g: values.clone(), h: h.clone() };
                seen.insert(canonical(&c).0.key());
                if depth == 0 {
                    break 'search;
                }
                depth -= 1;
                choice[depth] += 1;
                continue;
            }
            if choice[depth] >= kernel.len() {
                choice[depth] = 0;
                if depth == 0 {
                    break 'search;
                }
                depth -= 1;
                choice[depth] += 1;
                continue;
            }
            values[free[depth]] = kernel[choice[depth]];
            let ok = check_at[depth].iter().all(|&[ij, jk, ik]| g.mul(values[ij], values[jk]) == values[ik]);
            if ok {
                depth += 1;
            } else {
                choice[depth] += 1;
            }
        }
        // next tuple of root cosets
        let mut pos = 0;
        while pos < comps {
            roots[pos] += 1;
            if roots[pos] < pi0.group.order() {
                break;
            }
            roots[pos] = 0;
            pos += 1;
        }
        if pos == comps {
            break;
        }
    }

    let classes: Vec<BibundleCocycle> = seen
        .iter()
        .map(|(gv, hv)| BibundleCocycle { nerve: nerve.clone(), xm: xm.clone(), g: gv.clone(), h: hv.clone() })
        .collect();
    let index: BTreeMap<_, _> = seen.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let lookup = |c: &BibundleCocycle| index[&canonical(c).0.key()];
    let table: Vec<Vec<usize>> = classes
        .iter()
        .map(|a| classes.iter().map(|b| lookup(&tensor_cocycle(a, b).expect("same nerve"))).collect())
        .collect();
    let group = FiniteGroup::from_table(&table, None)?;
    let dual_of: Vec<usize> = classes.iter().map(|c| lookup(&dual_cocycle(c))).collect();
    for (a, &d) in dual_of.iter().enumerate() {
        assert_eq!(group.inv(a), d, "dual class is not the tensor inverse");
    }
    let types = classes.iter().map(type_map).collect();
    Ok(Pi0Catalog { classes, types, group, dual_of, index })
}

/// Solutions of `h_j = h_i t(g_ij)` for a fixed `G` cocycle `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BibundleStructures {
    pub solutions: Vec<Vec<usize>>,
    /// A non-tree edge where propagation is inconsistent.
    pub failing_edge: Option<[usize; 2]>,
}

/// Propagates `h` from each root along the spanning forest and checks the
/// remaining edges. Consistency does not depend on the root values.
pub fn bibundle_structures(
    nerve: &Arc<Nerve>,
    g: &[usize],
    xm: &Arc<CrossedModule>,
    budget: u128,
) -> Result<BibundleStructures, CechError> {
    let gg = xm.g();
    let hh = xm.h();
    if g.len() != nerve.edges().len() {
        return Err(CechError::CochainSize { expected: nerve.edges().len(), got: g.len() });
    }
    if let Some((position, &value)) = g.iter().enumerate().find(|(_, &v)| v >= gg.order()) {
        return Err(CechError::ValueOutOfRange { position, value });
    }
    check_triangles(nerve, gg, g)?;
    let forest = nerve.forest();
    let oriented = |i: usize, j: usize| {
        let e = nerve.edge(i, j).unwrap();
        if i < j {
            g[e]
        } else {
            gg.inv(g[e])
        }
    };
    let mut base = vec![0usize; nerve.vertex_count()];
    for &v in &forest.order {
        if let Some((p, _)) = forest.parent[v] {
            base[v] = hh.mul(base[p], xm.boundary(oriented(p, v)));
        }
    }
    for (e, &[i, j]) in nerve.edges().iter().enumerate() {
        if base[j] != hh.mul(base[i], xm.boundary(g[e])) {
            return Ok(BibundleStructures { solutions: Vec::new(), failing_edge: Some([i, j]) });
        }
    }
    let comps = nerve.component_count();
    let needed = pow_saturating(hh.order(), comps);
    if needed > budget {
        return Err(CechError::BudgetExceeded { needed, budget });
    }
    let mut solutions = Vec::with_capacity(needed as usize);
    let mut roots = vec![0usize; comps];
    loop {
        solutions.push((0..nerve.vertex_count()).map(|v| hh.mul(roots[nerve.component_of(v)], base[v])).collect());
        let mut pos = 0;
        while pos < comps {
            roots[pos] += 1;
            if roots[pos] < hh.order() {
                break;
            }
            roots[pos] = 0;
            pos += 1;
        }
        if pos == comps {
            break;
        }
    }
    Ok(BibundleStructures { solutions, failing_edge: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::nerve::{circ3, disc2, sphere};
    use crate::crossed::{identity_module, jandl, v4};

    fn setup(n: Nerve, xm: CrossedModule) -> (Arc<Nerve>, Arc<CrossedModule>) {
        (Arc::new(n), Arc::new(xm))
    }

    #[test]
    fn validation_examples() {
        let (n, xm) = setup(circ3(), jandl(3));
        assert!(BibundleCocycle::new(&n, &xm, vec![1, 2, 1], vec![0; 3]).is_ok());
        let (n, xm) = setup(disc2(), v4());
        let err = BibundleCocycle::new(&n, &xm, vec![1, 1, 1], vec![0, 1, 0]).unwrap_err();
        assert_eq!(err, CechError::TriangleCondition { triangle: [0, 1, 2] });
        let err = BibundleCocycle::new(&n, &xm, vec![1, 1, 0], vec![0, 0, 0]).unwrap_err();
        assert_eq!(err, CechError::EdgeCondition { edge: [0, 1] });
    }

    #[test]
    fn gauge_round_trip() {
        let (n, xm) = setup(disc2(), identity_module(&FiniteGroup::symmetric(3)));
        let k = Gauge { k: vec![1, 4, 3] };
        let c = apply_gauge(&trivial(&n, &xm), &k);
        assert_eq!(apply_gauge(&c, &k.inverse(xm.g())), trivial(&n, &xm));
        let found = is_trivial(&c).unwrap();
        assert_eq!(apply_gauge(&c, &found), trivial(&n, &xm));
        assert_eq!(type_map(&c), type_map(&trivial(&n, &xm)));
    }

    #[test]
    fn holonomy_separates_jandl_classes() {
        let (n, xm) = setup(circ3(), jandl(3));
        // edges 01, 02, 12
        let zero = trivial(&n, &xm);
        let one = BibundleCocycle::new(&n, &xm, vec![1, 0, 0], vec![0; 3]).unwrap();
        assert!(equivalent(&zero, &one).unwrap().is_none());
        assert!(is_trivial(&one).is_none());
        let typed = BibundleCocycle::new(&n, &xm, vec![0; 3], vec![1; 3]).unwrap();
        assert!(equivalent(&zero, &typed).unwrap().is_none());
        assert_eq!(type_map(&typed).values, vec![1]);
    }

    #[test]
    fn tensor_and_dual_collapse_when_action_trivial() {
        let (n, xm) = setup(circ3(), v4());
        let a = BibundleCocycle::new(&n, &xm, vec![1, 2, 3], vec![0, 1, 0]).unwrap();
        let b = BibundleCocycle::new(&n, &xm, vec![3, 3, 2], vec![1, 0, 0]).unwrap();
        let t = tensor_cocycle(&a, &b).unwrap();
        assert_eq!(t.g(), &[0, 1, 1]);
        assert_eq!(t.h(), &[1, 1, 0]);
        let d = dual_cocycle(&a);
        assert_eq!(d.g(), &[3, 2, 1]);
        assert_eq!(d.h(), &[0, 1, 0]);
        assert!(is_trivial(&tensor_cocycle(&a, &d).unwrap()).is_some());
    }

    #[test]
    fn iota_and_factorization() {
        let (n, xm) = setup(circ3(), jandl(3));
        let r = vec![2, 0, 0];
        let c = twist_by_lift(&iota(&n, &xm, &r).unwrap(), &[1]);
        assert_eq!(type_map(&c).values, vec![1]);
        let f = factor_through_lift(&c, &[1]).unwrap();
        let complex = crate::cech::abelian::AbelianCochainComplex::from_group(&n, &kernel_group(&xm)).unwrap();
        let diff: Vec<usize> = f.r.iter().zip(&r).map(|(&a, &b)| (a + 3 - b) % 3).collect();
        assert!(matches!(
            complex.solve_coboundary(1, &diff).unwrap(),
            crate::cech::abelian::CoboundaryResult::Primitive(_)
        ));
        assert_eq!(factor_through_lift(&c, &[0]).unwrap_err(), CechError::TypeMismatch { component: 0 });
        assert_eq!(iota(&Arc::new(disc2()), &xm, &[1, 0, 0]).unwrap_err(), CechError::NotACocycle { degree: 1 });
    }

    #[test]
    fn class_counts() {
        let (n, xm) = setup(disc2(), jandl(3));
        assert_eq!(enumerate_pi0(&n, &xm, 1 << 20).unwrap().classes.len(), 2);
        let (n, xm) = setup(circ3(), jandl(3));
        let cat = enumerate_pi0(&n, &xm, 1 << 20).unwrap();
        assert_eq!(cat.classes.len(), 6);
        assert_eq!(cat.classes[0], trivial(&n, &xm));
        let (n, xm) = setup(disc2(), v4());
        assert_eq!(enumerate_pi0(&n, &xm, 1 << 20).unwrap().classes.len(), 1);
        let (n, xm) = setup(sphere(), jandl(2));
        assert_eq!(enumerate_pi0(&n, &xm, 1 << 20).unwrap().classes.len(), 2);
        assert!(matches!(enumerate_pi0(&n, &xm, 3), Err(CechError::BudgetExceeded { .. })));
    }

    #[test]
    fn structures() {
        let (n, xm) = setup(disc2(), jandl(3));
        assert_eq!(bibundle_structures(&n, &[0, 0, 0], &xm, 1 << 20).unwrap().solutions.len(), 2);
        let s3 = FiniteGroup::symmetric(3);
        let (n, xm) = setup(circ3(), identity_module(&s3));
        assert_eq!(bibundle_structures(&n, &[0, 0, 0], &xm, 1 << 20).unwrap().solutions.len(), 6);
        let s = bibundle_structures(&n, &[1, 0, 0], &xm, 1 << 20).unwrap();
        assert!(s.solutions.is_empty());
        assert!(s.failing_edge.is_some());
    }
}
