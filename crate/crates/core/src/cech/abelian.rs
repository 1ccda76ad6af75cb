//! Čech cohomology of a nerve with coefficients in a finite abelian group.
//!
//! The coefficient group is split into cyclic factors by brute force and
//! every question is answered factor by factor with Smith normal form over
//! the integers, reduced modulo the factor order.

use std::sync::Arc;

use super::nerve::Nerve;
use super::snf::{smith_normal_form, solve_mod, CongruenceSolution, IntMatrix, Snf};
use super::CechError;
use crate::group::FiniteGroup;

/// A finite abelian group with an explicit isomorphism to
/// `Z_{n_1} ⊕ ... ⊕ Z_{n_r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCoefficients {
    group: FiniteGroup,
    factors: Vec<usize>,
    basis: Vec<usize>,
    coords: Vec<Vec<usize>>,
}

impl AbelianCoefficients {
    pub fn new(group: &FiniteGroup) -> Result<Self, CechError> {
        if !group.is_abelian() {
            return Err(CechError::NotAbelian);
        }
        let mut basis: Vec<usize> = Vec::new();
        let mut factors = Vec::new();
        let mut span = vec![0usize];
        while span.len() < group.order() {
            // order of a in A / span
            let quotient_order = |a: usize| {
                let mut x = a;
                let mut k = 1;
                while span.binary_search(&x).is_err() {
                    x = group.mul(x, a);
                    k += 1;
                }
                k
            };
            let best = group.elements().map(quotient_order).max().unwrap();
            // an element whose order equals its quotient order splits off
            let a = group
                .elements()
                .find(|&a| quotient_order(a) == best && group.element_order(a) == best)
                .expect("finite abelian groups split off maximal cyclic factors");
            basis.push(a);
            factors.push(best);
            span = group.closure(&basis);
        }
        let mut coords = vec![Vec::new(); group.order()];
        let total: usize = factors.iter().product();
        assert_eq!(total, group.order());
        for idx in 0..total {
            let mut c = Vec::with_capacity(factors.len());
            let mut rest = idx;
            for &n in &factors {
                c.push(rest % n);
                rest /= n;
            }
            let e = Self::combine(group, &basis, &c);
            assert!(coords[e].is_empty(), "cyclic decomposition must be a bijection");
            coords[e] = c;
        }
        Ok(Self { group: group.clone(), factors, basis, coords })
    }

    fn combine(group: &FiniteGroup, basis: &[usize], c: &[usize]) -> usize {
        basis.iter().zip(c).fold(0, |acc, (&b, &k)| group.mul(acc, group.pow(b, k)))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Orders of the cyclic factors, largest first.
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coords(&self, a: usize) -> &[usize] {
        &self.coords[a]
    }

    pub fn from_coords(&self, c: &[usize]) -> usize {
        Self::combine(&self.group, &self.basis, c)
    }

    /// Element `k · basis[f]`.
    pub fn scaled_generator(&self, f: usize, k: usize) -> usize {
        self.group.pow(self.basis[f], k % self.factors[f])
    }
}

/// Proof that a cochain is not a coboundary: a functional `w` on the
/// simplices, for the cyclic factor `factor` of order `modulus`, with
/// `w ∘ δ ≡ 0` and `w(b) ≢ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub factor: usize,
    pub modulus: usize,
    pub functional: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoboundaryResult {
    Primitive(Vec<usize>),
    Obstructed(ObstructionCertificate),
}

/// `C^0 -> C^1 -> C^2 -> C^3` over a nerve with coefficients `A`.
/// Sign convention: `(δx)_ij = x_j - x_i`, `(δy)_ijk = y_jk - y_ik + y_ij`,
/// `(δz)_ijkl = z_jkl - z_ikl + z_ijl - z_ijk`.
#[derive(Debug, Clone)]
pub struct AbelianCochainComplex {
    nerve: Arc<Nerve>,
    coeff: Arc<AbelianCoefficients>,
    coboundary: [IntMatrix; 3],
    snf: [Snf; 3],
}

/// One cyclic summand of a cohomology group with a representative cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSummand {
    pub order: usize,
    pub generator: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub summands: Vec<CyclicSummand>,
    /// Invariant factors `d_1 | d_2 | ...`, all greater than one.
    pub invariant_factors: Vec<usize>,
    pub order: usize,
    /// Number of `q`-simplices.
    pub cochain_len: usize,
}

impl CohomologyGroup {
    /// Every element, as `Σ c_i generator_i` for `0 <= c_i < order_i`, in
    /// odometer order starting from zero.
    pub fn elements(&self, coeff: &AbelianCoefficients) -> Vec<Vec<usize>> {
        let len = self.cochain_len;
        let mut out = Vec::with_capacity(self.order);
        let g = coeff.group();
        for idx in 0..self.order {
            let mut rest = idx;
            let mut acc = vec![0usize; len];
            for s in &self.summands {
                let k = rest % s.order;
                rest /= s.order;
                for (a, &v) in acc.iter_mut().zip(&s.generator) {
                    *a = g.mul(*a, g.pow(v, k));
                }
            }
            out.push(acc);
        }
        out
    }
}

pub fn coboundary_matrix(nerve: &Nerve, q: usize) -> IntMatrix {
    match q {
        0 => {
            let mut m = IntMatrix::zeros(nerve.edges().len(), nerve.vertex_count());
            for (r, e) in nerve.edges().iter().enumerate() {
                m[(r, e[1])] += 1;
                m[(r, e[0])] -= 1;
            }
            m
        }
        1 => {
            let mut m = IntMatrix::zeros(nerve.triangles().len(), nerve.edges().len());
            for (r, &[i, j, k]) in nerve.triangles().iter().enumerate() {
                m[(r, nerve.edge(j, k).unwrap())] += 1;
                m[(r, nerve.edge(i, k).unwrap())] -= 1;
                m[(r, nerve.edge(i, j).unwrap())] += 1;
            }
            m
        }
        2 => {
            let mut m = IntMatrix::zeros(nerve.tetrahedra().len(), nerve.triangles().len());
            for (r, &[i, j, k, l]) in nerve.tetrahedra().iter().enumerate() {
                m[(r, nerve.triangle([j, k, l]).unwrap())] += 1;
                m[(r, nerve.triangle([i, k, l]).unwrap())] -= 1;
                m[(r, nerve.triangle([i, j, l]).unwrap())] += 1;
                m[(r, nerve.triangle([i, j, k]).unwrap())] -= 1;
            }
            m
        }
        _ => panic!("coboundary degree out of range"),
    }
}

/// Canonical invariant factors of `⊕ Z_{n_i}`.
pub fn invariant_factors(orders: &[usize]) -> Vec<usize> {
    // prime power decomposition, then greedy regrouping
    let mut powers: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &n in orders {
        let mut n = n;
        let mut p = 2;
        while n > 1 {
            if n % p == 0 {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                powers.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    for v in powers.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    let len = powers.values().map(|v| v.len()).max().unwrap_or(0);
    let mut out: Vec<usize> = (0..len)
        .map(|i| powers.values().map(|v| v.get(i).copied().unwrap_or(1)).product())
        .collect();
    out.reverse();
    out
}

impl AbelianCochainComplex {
    pub fn new(nerve: &Arc<Nerve>, coeff: &Arc<AbelianCoefficients>) -> Self {
        let coboundary = [coboundary_matrix(nerve, 0), coboundary_matrix(nerve, 1), coboundary_matrix(nerve, 2)];
        let snf = [
            smith_normal_form(&coboundary[0]),
            smith_normal_form(&coboundary[1]),
            smith_normal_form(&coboundary[2]),
        ];
        Self { nerve: nerve.clone(), coeff: coeff.clone(), coboundary, snf }
    }

    pub fn from_group(nerve: &Arc<Nerve>, group: &FiniteGroup) -> Result<Self, CechError> {
        Ok(Self::new(nerve, &Arc::new(AbelianCoefficients::new(group)?)))
    }

    pub fn nerve(&self) -> &Arc<Nerve> {
        &self.nerve
    }

    pub fn coefficients(&self) -> &Arc<AbelianCoefficients> {
        &self.coeff
    }

    pub fn matrix(&self, q: usize) -> &IntMatrix {
        &self.coboundary[q]
    }

    pub fn dim(&self, q: usize) -> usize {
        match q {
            0 => self.nerve.vertex_count(),
            1 => self.nerve.edges().len(),
            2 => self.nerve.triangles().len(),
            3 => self.nerve.tetrahedra().len(),
            _ => 0,
        }
    }

    /// `δ` applied to an `A`-valued `q`-cochain, computed in `A`.
    pub fn apply(&self, q: usize, x: &[usize]) -> Result<Vec<usize>, CechError> {
        if q > 2 {
            return Err(CechError::DegreeOutOfRange { degree: q });
        }
        if x.len() != self.dim(q) {
            return Err(CechError::CochainSize { expected: self.dim(q), got: x.len() });
        }
        let g = self.coeff.group();
        let m = &self.coboundary[q];
        Ok((0..m.rows())
            .map(|r| {
                m.row(r).iter().zip(x).fold(0, |acc, (&s, &v)| match s {
                    0 => acc,
                    1 => g.mul(acc, v),
                    -1 => g.mul(acc, g.inv(v)),
                    _ => unreachable!("coboundary entries are ±1"),
                })
            })
            .collect())
    }

    pub fn is_cocycle(&self, q: usize, x: &[usize]) -> Result<bool, CechError> {
        Ok(self.apply(q, x)?.iter().all(|&v| v == 0))
    }

    fn factor_values(&self, f: usize, x: &[usize]) -> Vec<i128> {
        x.iter().map(|&v| self.coeff.coords(v)[f] as i128).collect()
    }

    /// `H^q` for `q ∈ {1, 2}`.
    pub fn cohomology(&self, q: usize) -> Result<CohomologyGroup, CechError> {
        if !(1..=2).contains(&q) {
            return Err(CechError::DegreeOutOfRange { degree: q });
        }
        let mut summands = Vec::new();
        for (f, &n) in self.coeff.factors().iter().enumerate() {
            for (order, cochain) in self.cyclic_cohomology(q, n as i128) {
                let generator = cochain.iter().map(|&c| self.coeff.scaled_generator(f, c as usize)).collect();
                summands.push(CyclicSummand { order, generator });
            }
        }
        let orders: Vec<usize> = summands.iter().map(|s| s.order).collect();
        Ok(CohomologyGroup {
            degree: q,
            order: orders.iter().product(),
            invariant_factors: invariant_factors(&orders),
            summands,
            cochain_len: self.dim(q),
        })
    }

    /// `H^q(nerve; Z_n)` as cyclic orders with representative cochains
    /// (values mod `n`).
    fn cyclic_cohomology(&self, q: usize, n: i128) -> Vec<(usize, Vec<i128>)> {
        let k = self.dim(q);
        let snf = &self.snf[q];
        // kernel lattice {x : D x ≡ 0 mod n} = Q · diag(m) · Z^k
        let m: Vec<i128> = (0..k)
            .map(|i| match snf.diagonal.get(i) {
                Some(&s) => n / super::snf::gcd(s, n),
                None => 1,
            })
            .collect();
        // image lattice generators: columns of D_{q-1} and n e_j
        let mut gens: Vec<Vec<i128>> = Vec::new();
        if q > 0 {
            let d = &self.coboundary[q - 1];
            for j in 0..d.cols() {
                gens.push((0..d.rows()).map(|i| d[(i, j)]).collect());
            }
        }
        for j in 0..k {
            let mut e = vec![0; k];
            e[j] = n;
            gens.push(e);
        }
        let mut rel = IntMatrix::zeros(k, gens.len());
        for (c, v) in gens.iter().enumerate() {
            let z = snf.q_inv.mul_vec(v);
            for i in 0..k {
                assert_eq!(z[i] % m[i], 0, "image must lie in the kernel lattice");
                rel[(i, c)] = z[i] / m[i];
            }
        }
        let rs = smith_normal_form(&rel);
        assert_eq!(rs.rank(), k, "n Z^k has full rank");
        let mut out = Vec::new();
        for (i, &s) in rs.diagonal.iter().enumerate() {
            if s > 1 {
                let z: Vec<i128> = (0..k).map(|r| rs.p_inv[(r, i)]).collect();
                let scaled: Vec<i128> = z.iter().zip(&m).map(|(a, b)| a * b).collect();
                let x = snf.q.mul_vec(&scaled).into_iter().map(|v| v.rem_euclid(n)).collect();
                out.push((s as usize, x));
            }
        }
        out
    }

    /// Decides whether the `q`-cochain `b` (`q ∈ {1, 2}`) is a coboundary,
    /// returning a primitive or a certificate.
    pub fn solve_coboundary(&self, q: usize, b: &[usize]) -> Result<CoboundaryResult, CechError> {
        if !(1..=2).contains(&q) {
            return Err(CechError::DegreeOutOfRange { degree: q });
        }
        if b.len() != self.dim(q) {
            return Err(CechError::CochainSize { expected: self.dim(q), got: b.len() });
        }
        let snf = &self.snf[q - 1];
        let mut per_factor: Vec<Vec<i128>> = Vec::new();
        for (f, &n) in self.coeff.factors().iter().enumerate() {
            match solve_mod(snf, &self.factor_values(f, b), n as i128) {
                CongruenceSolution::Solved(x) => per_factor.push(x),
                CongruenceSolution::Infeasible(w) => {
                    return Ok(CoboundaryResult::Obstructed(ObstructionCertificate {
                        factor: f,
                        modulus: n,
                        functional: w.into_iter().map(|v| v as i64).collect(),
                    }))
                }
            }
        }
        let primitive: Vec<usize> = (0..self.dim(q - 1))
            .map(|i| {
                let c: Vec<usize> = per_factor.iter().map(|x| x[i] as usize).collect();
                self.coeff.from_coords(&c)
            })
            .collect();
        debug_assert_eq!(self.apply(q - 1, &primitive).unwrap(), b);
        Ok(CoboundaryResult::Primitive(primitive))
    }

    /// Checks a certificate against this complex: `w ∘ δ ≡ 0` and `w(b) ≢ 0`.
    pub fn verify_certificate(&self, q: usize, b: &[usize], cert: &ObstructionCertificate) -> bool {
        let n = cert.modulus as i128;
        let w: Vec<i128> = cert.functional.iter().map(|&v| v as i128).collect();
        if q == 0 || w.len() != self.dim(q) || cert.factor >= self.coeff.factors().len() {
            return false;
        }
        let annihilates = self.coboundary[q - 1].vec_mul(&w).iter().all(|v| v.rem_euclid(n) == 0);
        let value: i128 = w.iter().zip(self.factor_values(cert.factor, b)).map(|(a, c)| a * c).sum();
        annihilates && value.rem_euclid(n) != 0
    }
}

/// A class in `H^q(nerve, A)` with its decision witness.
#[derive(Debug, Clone)]
pub struct CechClass {
    pub complex: Arc<AbelianCochainComplex>,
    pub degree: usize,
    pub representative: Vec<usize>,
    pub is_zero: bool,
    /// Primitive `x` with `δx = representative`, when the class is zero.
    pub witness: Option<Vec<usize>>,
    pub certificate: Option<ObstructionCertificate>,
}

impl CechClass {
    pub fn new(complex: &Arc<AbelianCochainComplex>, degree: usize, representative: Vec<usize>) -> Result<Self, CechError> {
        if !complex.is_cocycle(degree, &representative)? {
            return Err(CechError::NotACocycle { degree });
        }
        let (is_zero, witness, certificate) = match complex.solve_coboundary(degree, &representative)? {
            CoboundaryResult::Primitive(x) => (true, Some(x), None),
            CoboundaryResult::Obstructed(c) => (false, None, Some(c)),
        };
        Ok(Self { complex: complex.clone(), degree, representative, is_zero, witness, certificate })
    }

    /// Same class as `other` (difference is a coboundary).
    pub fn same_class(&self, other: &CechClass) -> Result<bool, CechError> {
        let g = self.complex.coefficients().group();
        let diff: Vec<usize> =
            self.representative.iter().zip(&other.representative).map(|(&a, &b)| g.mul(a, g.inv(b))).collect();
        Ok(matches!(self.complex.solve_coboundary(self.degree, &diff)?, CoboundaryResult::Primitive(_)))
    }
}
