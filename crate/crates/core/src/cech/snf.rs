//! Smith normal form over the integers with unimodular transforms, and
//! linear congruence solving on top of it.

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Self { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `v^T M`
    pub fn vec_mul(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.rows, v.len());
        (0..self.cols).map(|j| (0..self.rows).map(|i| v[i] * self[(i, j)]).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: i128) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += c * v;
        }
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: i128) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += c * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// `P · A · Q = S` with `S` diagonal, `s_0 | s_1 | ... | s_{r-1}` positive.
#[derive(Debug, Clone)]
pub struct Snf {
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
    pub diagonal: Vec<i128>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct SnfCalc {
    a: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl SnfCalc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: i128) {
        self.a.add_row(dst, src, c);
        self.p.add_row(dst, src, c);
        self.p_inv.add_col(src, dst, -c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: i128) {
        self.a.add_col(dst, src, c);
        self.q.add_col(dst, src, c);
        self.q_inv.add_row(src, dst, -c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.p.negate_row(i);
        // P^-1 column i negates as well
        for r in 0..self.p_inv.rows {
            self.p_inv[(r, i)] = -self.p_inv[(r, i)];
        }
    }

    /// Smallest nonzero |entry| in the lower-right block from `t`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = self.a[(i, j)].abs();
                if v != 0 && best.is_none_or(|(bi, bj)| v < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<i128> {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut diagonal = Vec::new();
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let d = self.a[(t, t)];
                let mut clean = true;
                for i in t + 1..m {
                    let v = self.a[(i, t)];
                    if v != 0 {
                        self.add_row(i, t, -v.div_euclid(d));
                        if self.a[(i, t)] != 0 {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..n {
                    let v = self.a[(t, j)];
                    if v != 0 {
                        self.add_col(j, t, -v.div_euclid(d));
                        if self.a[(t, j)] != 0 {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // bring the smallest remainder in row/column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..m {
                        let v = self.a[(i, t)].abs();
                        if v != 0 && v < self.a[best].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..n {
                        let v = self.a[(t, j)].abs();
                        if v != 0 && v < self.a[best].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the remaining block
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| self.a[(i, j)] % d != 0));
                match bad {
                    Some(i) => self.add_row(t, i, 1),
                    None => break,
                }
            }
            if self.a[(t, t)] < 0 {
                self.negate_row(t);
            }
            diagonal.push(self.a[(t, t)]);
        }
        diagonal
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let mut calc = SnfCalc {
        a: a.clone(),
        p: IntMatrix::identity(a.rows),
        p_inv: IntMatrix::identity(a.rows),
        q: IntMatrix::identity(a.cols),
        q_inv: IntMatrix::identity(a.cols),
    };
    let diagonal = calc.run();
    Snf { p: calc.p, p_inv: calc.p_inv, q: calc.q, q_inv: calc.q_inv, diagonal }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn mod_inverse(a: i128, m: i128) -> i128 {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible");
    old_s.rem_euclid(m)
}

/// Outcome of solving `A x ≡ b (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceSolution {
    Solved(Vec<i128>),
    /// A functional `w` with `w^T A ≡ 0` and `w · b ≢ 0 (mod n)`.
    Infeasible(Vec<i128>),
}

pub fn solve_mod(snf: &Snf, b: &[i128], n: i128) -> CongruenceSolution {
    let rows = snf.p.rows();
    let b: Vec<i128> = b.iter().map(|v| v.rem_euclid(n)).collect();
    let c: Vec<i128> = snf.p.mul_vec(&b).into_iter().map(|v| v.rem_euclid(n)).collect();
    let mut y = vec![0i128; snf.q.rows()];
    for i in 0..rows {
        let s = snf.diagonal.get(i).copied().unwrap_or(0);
        let d = gcd(s, n);
        if c[i] % d != 0 {
            let scale = n / d;
            let w = snf.p.row(i).iter().map(|&v| (v * scale).rem_euclid(n)).collect();
            return CongruenceSolution::Infeasible(w);
        }
        if s != 0 {
            let m = n / d;
            y[i] = if m == 1 { 0 } else { ((c[i] / d) * mod_inverse(s / d, m)).rem_euclid(m) };
        }
    }
    let x = snf.q.mul_vec(&y).into_iter().map(|v| v.rem_euclid(n)).collect();
    CongruenceSolution::Solved(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> Snf {
        let s = smith_normal_form(a);
        let d = s.p.mul(a).mul(&s.q);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j { s.diagonal.get(i).copied().unwrap_or(0) } else { 0 };
                assert_eq!(d[(i, j)], want, "P A Q not diagonal at ({i},{j})");
            }
        }
        assert_eq!(s.p.mul(&s.p_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.q.mul(&s.q_inv), IntMatrix::identity(a.cols()));
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn classic_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check(&a).diagonal, vec![2, 6, 12]);
        let b = IntMatrix::from_rows(&[vec![6, 4], vec![4, 6]]);
        assert_eq!(check(&b).diagonal, vec![2, 10]);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(check(&z).rank(), 0);
    }

    #[test]
    fn circle_incidence() {
        // δ^0 of the hollow triangle: rows 01, 02, 12
        let d0 = IntMatrix::from_rows(&[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]);
        let s = check(&d0);
        assert_eq!(s.diagonal, vec![1, 1]);
        match solve_mod(&s, &[1, 0, 0], 3) {
            CongruenceSolution::Infeasible(w) => {
                assert!(d0.vec_mul(&w).iter().all(|v| v.rem_euclid(3) == 0));
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        match solve_mod(&s, &[1, 2, 1], 3) {
            CongruenceSolution::Solved(x) => {
                let bx = d0.mul_vec(&x);
                assert_eq!(bx.iter().map(|v| v.rem_euclid(3)).collect::<Vec<_>>(), vec![1, 2, 1]);
            }
            other => panic!("expected solution, got {other:?}"),
        }
    }

    proptest::proptest! {
        #[test]
        fn snf_invariants(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-3i128..=3, 25)) {
            let data: Vec<Vec<i128>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            check(&IntMatrix::from_rows(&data));
        }
    }
}
