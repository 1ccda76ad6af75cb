//! Finite groups given by multiplication tables.
//!
//! Elements are dense indices `0..order` and the identity is always `0`.
//! Everything built on top of this module (crossed modules, bispaces,
//! cocycles) inherits that convention.

use std::collections::VecDeque;

use thiserror::Error;

/// Default cap on the order of groups handed to the automorphism search.
pub const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry mul({row},{col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("0 is not a two-sided identity: mul(0,{element}) or mul({element},0) differs from {element}")]
    NoIdentity { element: usize },
    #[error("no inverse for {element}")]
    NoInverse { element: usize },
    #[error("not associative: (a*b)*c != a*(b*c) for a={a}, b={b}, c={c}")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderAboveCap { order: usize, cap: usize },
    #[error("map table has {len} entries, expected {expected}")]
    MapSize { len: usize, expected: usize },
    #[error("map sends identity to {image}")]
    IdentityNotPreserved { image: usize },
    #[error("not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("subgroup does not contain the identity")]
    SubgroupMissingIdentity,
    #[error("subset is not closed: {a}*{b} = {product} is missing")]
    NotClosed { a: usize, b: usize, product: usize },
    #[error("subgroup element {element} out of range")]
    SubgroupOutOfRange { element: usize },
    #[error("subgroup is not normal: {g} * {n} * {g}^-1 = {conjugate} is not in it")]
    NotNormal { g: usize, n: usize, conjugate: usize },
    #[error("action of {h} is not a bijection of the space")]
    ActionNotBijective { h: usize },
    #[error("action of {h} is not multiplicative at ({a},{b})")]
    ActionNotMultiplicative { h: usize, a: usize, b: usize },
    #[error("action is not compatible with the actor product at h={h}, h'={h2}, g={g}")]
    ActionNotCompatible { h: usize, h2: usize, g: usize },
    #[error("identity of the actor does not act trivially on {g}")]
    ActionIdentity { g: usize },
    #[error("labels list has {len} entries, expected {expected}")]
    LabelCount { len: usize, expected: usize },
    #[error("action is defined over different groups")]
    ActionMismatch,
}

/// A finite group stored as a dense multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates raw table data. Checks run in the order: shape, range,
    /// identity, inverses, associativity; the first failure is reported
    /// with its (least) witness.
    pub fn from_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: n });
            }
        }
        for (row, r) in table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::OutOfRange { row, col, value });
                }
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(GroupError::LabelCount { len: l.len(), expected: n });
            }
        }
        let mul: Vec<usize> = table.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| mul[a * n + b];
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(GroupError::NoIdentity { element: a });
            }
        }
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            match (0..n).find(|&x| at(a, x) == 0 && at(x, a) == 0) {
                Some(x) => *slot = x,
                None => return Err(GroupError::NoInverse { element: a }),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self { order: n, mul, inv, labels })
    }

    /// Builds a group from a product closure that is already known to be a
    /// group law with identity 0 (used for derived constructions whose
    /// axioms follow from their inputs). The axioms are re-checked.
    pub(crate) fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize, labels: Option<Vec<String>>) -> Self {
        let table: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| f(a, b)).collect()).collect();
        Self::from_table(&table, labels).expect("derived group law must satisfy the group axioms")
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let labels = (0..n).map(|k| k.to_string()).collect();
        Self::from_fn(n, |a, b| (a + b) % n, Some(labels))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Symmetric group on `n` letters. Elements are the permutations in
    /// lexicographic order (identity first); the product is composition
    /// `(p*q)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Self::from_fn(
            perms.len(),
            |a, b| {
                let comp: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
                index(&comp)
            },
            Some(labels),
        )
    }

    /// Dihedral group of order `2n`, realized as `Z_2` acting on `Z_n` by
    /// inversion.
    pub fn dihedral(n: usize) -> Self {
        let h = Self::cyclic(2);
        let g = Self::cyclic(n);
        let alpha = GroupAction::inversion(&h, &g);
        semidirect_product(&h, &g, &alpha).expect("inversion is an action on an abelian group")
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let nb = b.order;
        let labels = (0..a.order * nb)
            .map(|i| format!("({},{})", a.label(i / nb), b.label(i % nb)))
            .collect();
        Self::from_fn(
            a.order * nb,
            |x, y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb),
            Some(labels),
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    /// `g * k * g^-1`
    #[inline]
    pub fn conj(&self, g: usize, k: usize) -> usize {
        self.mul(self.mul(g, k), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: scan elements by decreasing order (ties by
    /// index) and keep each one not already generated.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (1..self.order).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![0];
        for a in candidates {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            s.push_str(&(x + 1).to_string());
            x = p[x];
        }
        s.push(')');
    }
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

/// A homomorphism between finite groups, stored as an image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::MapSize { len: map.len(), expected: source.order() });
        }
        if let Some((i, &v)) = map.iter().enumerate().find(|(_, &v)| v >= target.order()) {
            return Err(GroupError::OutOfRange { row: i, col: 0, value: v });
        }
        if map[0] != 0 {
            return Err(GroupError::IdentityNotPreserved { image: map[0] });
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Self { source: source.clone(), target: target.clone(), map })
    }

    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        Self { source: source.clone(), target: target.clone(), map: vec![0; source.order()] }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(self.target, other.source, "composition of mismatched homomorphisms");
        GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        }
    }

    pub fn kernel(&self) -> Subgroup {
        let elements = self.source.elements().filter(|&a| self.map[a] == 0).collect();
        Subgroup { parent: self.source.clone(), elements }
    }

    pub fn image(&self) -> Subgroup {
        let mut elements: Vec<usize> = self.map.clone();
        elements.sort_unstable();
        elements.dedup();
        Subgroup { parent: self.target.clone(), elements }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }
}

/// A subgroup, kept as the sorted list of its parent indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&e) = elements.iter().find(|&&e| e >= parent.order()) {
            return Err(GroupError::SubgroupOutOfRange { element: e });
        }
        if elements.first() != Some(&0) {
            return Err(GroupError::SubgroupMissingIdentity);
        }
        for &a in &elements {
            for &b in &elements {
                let p = parent.mul(a, b);
                if elements.binary_search(&p).is_err() {
                    return Err(GroupError::NotClosed { a, b, product: p });
                }
            }
        }
        Ok(Self { parent: parent.clone(), elements })
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self { parent: parent.clone(), elements: parent.elements().collect() }
    }

    pub fn generated(parent: &FiniteGroup, gens: &[usize]) -> Self {
        Self { parent: parent.clone(), elements: parent.closure(gens) }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// Position of a parent element within the sorted element list.
    pub fn position(&self, a: usize) -> Option<usize> {
        self.elements.binary_search(&a).ok()
    }

    /// Normality check; the error carries the least `(g, n)` witness.
    pub fn check_normal(&self) -> Result<(), GroupError> {
        for g in self.parent.elements() {
            for &n in &self.elements {
                let c = self.parent.conj(g, n);
                if !self.contains(c) {
                    return Err(GroupError::NotNormal { g, n, conjugate: c });
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self) -> bool {
        self.check_normal().is_ok()
    }

    /// The subgroup as a group in its own right, with local index `i`
    /// standing for parent element `elements[i]`. The returned
    /// homomorphism is the inclusion.
    pub fn to_group(&self) -> (FiniteGroup, GroupHom) {
        let labels = self.elements.iter().map(|&a| self.parent.label(a)).collect();
        let g = FiniteGroup::from_fn(
            self.order(),
            |a, b| self.position(self.parent.mul(self.elements[a], self.elements[b])).unwrap(),
            Some(labels),
        );
        let incl = GroupHom { source: g.clone(), target: self.parent.clone(), map: self.elements.clone() };
        (g, incl)
    }
}

/// A left action of `actor` on `space` by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    actor: FiniteGroup,
    space: FiniteGroup,
    act: Vec<usize>,
}

impl GroupAction {
    pub fn new(actor: &FiniteGroup, space: &FiniteGroup, table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let (nh, ng) = (actor.order(), space.order());
        if table.len() != nh {
            return Err(GroupError::MapSize { len: table.len(), expected: nh });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != ng {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: ng });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= ng) {
                return Err(GroupError::OutOfRange { row, col, value });
            }
        }
        let act: Vec<usize> = table.iter().flatten().copied().collect();
        let a = Self { actor: actor.clone(), space: space.clone(), act };
        a.check()?;
        Ok(a)
    }

    fn check(&self) -> Result<(), GroupError> {
        let (h_grp, g_grp) = (&self.actor, &self.space);
        for g in g_grp.elements() {
            if self.apply(0, g) != g {
                return Err(GroupError::ActionIdentity { g });
            }
        }
        for h in h_grp.elements() {
            let mut hit = vec![false; g_grp.order()];
            for g in g_grp.elements() {
                hit[self.apply(h, g)] = true;
            }
            if hit.iter().any(|&x| !x) {
                return Err(GroupError::ActionNotBijective { h });
            }
            for a in g_grp.elements() {
                for b in g_grp.elements() {
                    if self.apply(h, g_grp.mul(a, b)) != g_grp.mul(self.apply(h, a), self.apply(h, b)) {
                        return Err(GroupError::ActionNotMultiplicative { h, a, b });
                    }
                }
            }
        }
        for h in h_grp.elements() {
            for h2 in h_grp.elements() {
                for g in g_grp.elements() {
                    if self.apply(h_grp.mul(h, h2), g) != self.apply(h, self.apply(h2, g)) {
                        return Err(GroupError::ActionNotCompatible { h, h2, g });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_fn(actor: &FiniteGroup, space: &FiniteGroup, f: impl Fn(usize, usize) -> usize) -> Result<Self, GroupError> {
        let table: Vec<Vec<usize>> = actor.elements().map(|h| space.elements().map(|g| f(h, g)).collect()).collect();
        Self::new(actor, space, &table)
    }

    pub fn trivial(actor: &FiniteGroup, space: &FiniteGroup) -> Self {
        let act = actor.elements().flat_map(|_| space.elements()).collect();
        Self { actor: actor.clone(), space: space.clone(), act }
    }

    /// `Z_2` acting on an abelian group by inversion.
    pub fn inversion(actor: &FiniteGroup, space: &FiniteGroup) -> Self {
        assert_eq!(actor.order(), 2);
        Self::from_fn(actor, space, |h, g| if h == 0 { g } else { space.inv(g) })
            .expect("inversion is an automorphism only of abelian groups")
    }

    /// Conjugation action of a group on itself.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let act = g.elements().flat_map(|h| g.elements().map(move |k| (h, k))).map(|(h, k)| g.conj(h, k)).collect();
        Self { actor: g.clone(), space: g.clone(), act }
    }

    #[inline]
    pub fn apply(&self, h: usize, g: usize) -> usize {
        self.act[h * self.space.order() + g]
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    pub fn space(&self) -> &FiniteGroup {
        &self.space
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.space.order()).map(|r| r.to_vec()).collect()
    }
}

/// Finds every homomorphism `src -> tgt` determined by images of the
/// greedy generating set, with each generator sent to an element of the
/// same order. With `bijective` only isomorphisms are kept. Results are
/// returned as image tables in lexicographic order.
fn generator_image_search(src: &FiniteGroup, tgt: &FiniteGroup, bijective: bool, first_only: bool) -> Vec<Vec<usize>> {
    let gens = src.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            tgt.elements().filter(|&x| tgt.element_order(x) == o).collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return found;
    }
    loop {
        let imgs: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_from_generators(src, tgt, &gens, &imgs) {
            let ok = !bijective || {
                let mut hit = vec![false; tgt.order()];
                map.iter().for_each(|&m| hit[m] = true);
                hit.iter().all(|&h| h)
            };
            if ok {
                found.push(map);
                if first_only {
                    break;
                }
            }
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == choice.len() {
                found.sort();
                return found;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
    found.sort();
    found
}

fn extend_from_generators(src: &FiniteGroup, tgt: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; src.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &im) in gens.iter().zip(imgs) {
            let y = src.mul(x, g);
            let fy = tgt.mul(map[x], im);
            if map[y] == UNSET {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    debug_assert!(map.iter().all(|&m| m != UNSET));
    Some(map)
}

/// Some isomorphism `a -> b`, if one exists.
pub fn find_group_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<GroupHom> {
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() {
        return None;
    }
    generator_image_search(a, b, true, true)
        .into_iter()
        .next()
        .map(|map| GroupHom { source: a.clone(), target: b.clone(), map })
}

pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_group_isomorphism(a, b).is_some()
}

/// `Aut(G)` together with its inner subgroup and an outer transversal.
#[derive(Debug, Clone)]
pub struct AutGroupData {
    pub base: FiniteGroup,
    /// Automorphisms as permutation tables, lexicographically sorted; the
    /// identity is index 0.
    pub autos: Vec<Vec<usize>>,
    /// Composition group, `autos[a] * autos[b] = autos[a] ∘ autos[b]`.
    pub group: FiniteGroup,
    pub inner: Subgroup,
    /// `Ad: G -> Aut(G)` as indices into `autos`.
    pub ad: GroupHom,
    /// Least element of each coset of `inner`.
    pub outer_reps: Vec<usize>,
}

impl AutGroupData {
    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.autos.binary_search_by(|p| p.as_slice().cmp(perm)).ok()
    }

    pub fn outer(&self) -> Quotient {
        quotient_group(&self.group, &self.inner).expect("Inn(G) is normal in Aut(G)")
    }
}

pub fn enumerate_automorphisms(g: &FiniteGroup, max_order: usize) -> Result<AutGroupData, GroupError> {
    if g.order() > max_order {
        return Err(GroupError::OrderAboveCap { order: g.order(), cap: max_order });
    }
    let autos = generator_image_search(g, g, true, false);
    let index = |p: &[usize]| autos.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let labels = (0..autos.len()).map(|i| format!("a{i}")).collect();
    let group = FiniteGroup::from_fn(
        autos.len(),
        |a, b| {
            let comp: Vec<usize> = g.elements().map(|x| autos[a][autos[b][x]]).collect();
            index(&comp)
        },
        Some(labels),
    );
    let ad_map: Vec<usize> = g
        .elements()
        .map(|x| {
            let p: Vec<usize> = g.elements().map(|k| g.conj(x, k)).collect();
            index(&p)
        })
        .collect();
    let ad = GroupHom::new(g, &group, ad_map)?;
    let inner = ad.image();
    let quotient = quotient_group(&group, &inner)?;
    let outer_reps = quotient.section.clone();
    Ok(AutGroupData { base: g.clone(), autos, group, inner, ad, outer_reps })
}

/// `G/N` with its projection and least-representative section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    /// `section[q]` is the least element of coset `q`.
    pub section: Vec<usize>,
}

pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient, GroupError> {
    // re-validate closure in case the subgroup was built against another parent
    let n = Subgroup::new(g, n.elements().to_vec())?;
    n.check_normal()?;
    const UNSET: usize = usize::MAX;
    let mut coset_of = vec![UNSET; g.order()];
    let mut section = Vec::new();
    for a in g.elements() {
        if coset_of[a] == UNSET {
            let q = section.len();
            section.push(a);
            for &x in n.elements() {
                coset_of[g.mul(a, x)] = q;
            }
        }
    }
    let labels = section
        .iter()
        .map(|&a| format!("[{}]", g.label(a)))
        .collect();
    let group = FiniteGroup::from_fn(section.len(), |p, q| coset_of[g.mul(section[p], section[q])], Some(labels));
    let projection = GroupHom::new(g, &group, coset_of)?;
    Ok(Quotient { group, projection, section })
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let elements = g
        .elements()
        .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    Subgroup { parent: g.clone(), elements }
}

/// `H ⋉ G` on pairs `(h, g)` encoded as `h * |G| + g`, with product
/// `(h,g)(h',g') = (h h', α(h'^-1)(g) g')`. The projection to `H` is a
/// homomorphism.
pub fn semidirect_product(h: &FiniteGroup, g: &FiniteGroup, alpha: &GroupAction) -> Result<FiniteGroup, GroupError> {
    if alpha.actor() != h || alpha.space() != g {
        return Err(GroupError::ActionMismatch);
    }
    let ng = g.order();
    let labels = (0..h.order() * ng).map(|i| format!("({},{})", h.label(i / ng), g.label(i % ng))).collect();
    Ok(FiniteGroup::from_fn(
        h.order() * ng,
        |x, y| {
            let (h1, g1) = (x / ng, x % ng);
            let (h2, g2) = (y / ng, y % ng);
            h.mul(h1, h2) * ng + g.mul(alpha.apply(h.inv(h2), g1), g2)
        },
        Some(labels),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_automorphism_count(g: &FiniteGroup) -> usize {
        // all bijections fixing 0
        permutations(g.order())
            .into_iter()
            .filter(|p| p[0] == 0)
            .filter(|p| g.elements().all(|a| g.elements().all(|b| p[g.mul(a, b)] == g.mul(p[a], p[b]))))
            .count()
    }

    #[test]
    fn z3_validates() {
        let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = FiniteGroup::from_table(&t, None).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn missing_inverse_is_reported() {
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]];
        let err = FiniteGroup::from_table(&t, None).unwrap_err();
        assert_eq!(err, GroupError::NoInverse { element: 1 });
        assert_eq!(err.to_string(), "no inverse for 1");
    }

    #[test]
    fn shape_and_range_errors() {
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1]], None),
            Err(GroupError::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1, 2]], None),
            Err(GroupError::OutOfRange { row: 1, col: 1, value: 2 })
        ));
    }

    #[test]
    fn non_associative_witness() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t, None), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn s3_matches_direct_permutation_composition() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let perms = permutations(3);
        for a in 0..6 {
            for b in 0..6 {
                let comp: Vec<usize> = (0..3).map(|x| perms[a][perms[b][x]]).collect();
                assert_eq!(perms[s3.mul(a, b)], comp);
            }
        }
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        for (g, aut, inn, out) in [
            (FiniteGroup::cyclic(2), 1, 1, 1),
            (FiniteGroup::cyclic(4), 2, 1, 2),
            (FiniteGroup::symmetric(3), 6, 6, 1),
            (FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)), 6, 1, 6),
            (FiniteGroup::dihedral(4), 8, 4, 2),
        ] {
            let data = enumerate_automorphisms(&g, DEFAULT_MAX_ORDER).unwrap();
            assert_eq!(data.autos.len(), brute_force_automorphism_count(&g));
            assert_eq!(data.autos.len(), aut);
            assert_eq!(data.inner.order(), inn);
            assert_eq!(data.outer_reps.len(), out);
            assert!(data.inner.is_normal());
            assert_eq!(data.autos.len(), data.inner.order() * data.outer_reps.len());
            assert_eq!(data.autos[0], g.elements().collect::<Vec<_>>());
        }
    }

    #[test]
    fn automorphism_cap() {
        let g = FiniteGroup::cyclic(65);
        assert_eq!(
            enumerate_automorphisms(&g, DEFAULT_MAX_ORDER).unwrap_err(),
            GroupError::OrderAboveCap { order: 65, cap: 64 }
        );
    }

    #[test]
    fn quotients() {
        let z4 = FiniteGroup::cyclic(4);
        let n = Subgroup::new(&z4, vec![0, 2]).unwrap();
        let q = quotient_group(&z4, &n).unwrap();
        assert!(is_isomorphic(&q.group, &FiniteGroup::cyclic(2)));
        assert_eq!(q.section, vec![0, 1]);

        let s3 = FiniteGroup::symmetric(3);
        let a3 = Subgroup::generated(&s3, &[3]);
        assert_eq!(a3.order(), 3);
        let q = quotient_group(&s3, &a3).unwrap();
        assert!(is_isomorphic(&q.group, &FiniteGroup::cyclic(2)));
        for c in q.group.elements() {
            assert_eq!(q.projection.apply(q.section[c]), c);
        }
        assert_eq!(q.projection.kernel().elements(), a3.elements());

        // (12) is index 2 in lexicographic order: [1,0,2]
        let t12 = Subgroup::new(&s3, vec![0, 2]).unwrap();
        assert!(matches!(quotient_group(&s3, &t12), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn centers() {
        assert_eq!(center(&FiniteGroup::cyclic(4)).order(), 4);
        assert_eq!(center(&FiniteGroup::symmetric(3)).elements(), &[0]);
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(center(&v).order(), 4);
        assert_eq!(center(&FiniteGroup::dihedral(4)).order(), 2);
        assert!(center(&FiniteGroup::dihedral(4)).is_normal());
    }

    #[test]
    fn semidirect_products() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let triv = GroupAction::trivial(&z2, &z3);
        let direct = semidirect_product(&z2, &z3, &triv).unwrap();
        assert_eq!(direct, FiniteGroup::direct_product(&z2, &z3));

        let inv = GroupAction::inversion(&z2, &z3);
        let s = semidirect_product(&z2, &z3, &inv).unwrap();
        assert!(is_isomorphic(&s, &FiniteGroup::symmetric(3)));

        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        let r = 1; // (0,1)
        let s = 4; // (1,0)
        assert_eq!(d4.element_order(r), 4);
        assert_eq!(d4.element_order(s), 2);
        assert_eq!(d4.mul(d4.mul(s, r), s), d4.inv(r));
        // projection to H is a homomorphism
        let proj: Vec<usize> = d4.elements().map(|x| x / 4).collect();
        assert!(GroupHom::new(&d4, &z2, proj).is_ok());
    }

    #[test]
    fn action_validation() {
        let z2 = FiniteGroup::cyclic(2);
        let s3 = FiniteGroup::symmetric(3);
        // inversion on a nonabelian group is not an automorphism
        let err = GroupAction::from_fn(&z2, &s3, |h, g| if h == 0 { g } else { s3.inv(g) }).unwrap_err();
        assert!(matches!(err, GroupError::ActionNotMultiplicative { h: 1, .. }));
    }
}
