//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use xmod::bispace::{dual, standard_bispace, tensor_with_classes};
use xmod::cech::cocycle::{apply_gauge, enumerate_pi0, BibundleCocycle, Gauge};
use xmod::cech::nerve::Nerve;
use xmod::crossed::CrossedModule;
use xmod::fixtures;

/// Row-reduces `m` over GF(p) in place and returns the rank.
pub fn rank_mod_p(m: &mut [Vec<i64>], p: i64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c].rem_euclid(p) != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inverse_mod(m[rank][c].rem_euclid(p), p);
        for x in m[rank].iter_mut() {
            *x = (*x * inv).rem_euclid(p);
        }
        for r in 0..rows {
            if r != rank && m[r][c].rem_euclid(p) != 0 {
                let f = m[r][c];
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn inverse_mod(a: i64, p: i64) -> i64 {
    (1..p).find(|&x| (a * x) % p == 1).expect("p prime")
}

/// Is `A x = b` solvable over GF(p)?
pub fn solvable_mod_p(a: &[Vec<i64>], b: &[i64], p: i64) -> bool {
    let mut plain: Vec<Vec<i64>> = a.to_vec();
    let mut aug: Vec<Vec<i64>> = a.iter().zip(b).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
    rank_mod_p(&mut plain, p) == rank_mod_p(&mut aug, p)
}

/// Coboundary `C^q -> C^(q+1)` as rows indexed by `(q+1)`-simplices, built
/// straight from the alternating face sum.
pub fn delta(nerve: &Nerve, q: usize) -> Vec<Vec<i64>> {
    let lower: Vec<Vec<usize>> = match q {
        0 => (0..nerve.vertex_count()).map(|v| vec![v]).collect(),
        1 => nerve.edges().iter().map(|e| e.to_vec()).collect(),
        _ => nerve.triangles().iter().map(|t| t.to_vec()).collect(),
    };
    let upper: Vec<Vec<usize>> = match q {
        0 => nerve.edges().iter().map(|e| e.to_vec()).collect(),
        1 => nerve.triangles().iter().map(|t| t.to_vec()).collect(),
        _ => nerve.tetrahedra().iter().map(|t| t.to_vec()).collect(),
    };
    upper
        .iter()
        .map(|s| {
            let mut row = vec![0i64; lower.len()];
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let idx = lower.iter().position(|f| *f == face).expect("face-closed");
                row[idx] += if skip % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

/// `dim H^q(nerve; Z_p)` by rank counting.
pub fn betti_mod_p(nerve: &Nerve, q: usize, p: i64) -> usize {
    let dim = [nerve.vertex_count(), nerve.edges().len(), nerve.triangles().len()][q];
    let mut out = delta(nerve, q);
    let rank_out = if out.is_empty() { 0 } else { rank_mod_p(&mut out, p) };
    let rank_in = if q == 0 {
        0
    } else {
        let mut inc = delta(nerve, q - 1);
        if inc.is_empty() {
            0
        } else {
            rank_mod_p(&mut inc, p)
        }
    };
    dim - rank_out - rank_in
}

/// Tensor of cocycles computed fibre by fibre: the fibre at `i` is
/// `T(h_i)`, `s_i` is the identity and `s_j = s_i g_ij`.
pub fn fibrewise_tensor(a: &BibundleCocycle, b: &BibundleCocycle) -> (Vec<usize>, Vec<usize>) {
    let xm = a.xm();
    let nerve = a.nerve();
    let g = nerve
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &[i, _])| {
            let x = standard_bispace(xm, a.h()[i]);
            let y = standard_bispace(xm, b.h()[i]);
            let t = tensor_with_classes(&x, &y).unwrap();
            let p0 = t.point(0, 0);
            let target = t.point(a.g()[e], b.g()[e]);
            let hits: Vec<usize> = xm.g().elements().filter(|&k| t.bispace.ract(p0, k) == target).collect();
            assert_eq!(hits.len(), 1, "torsor");
            hits[0]
        })
        .collect();
    let h = (0..nerve.vertex_count())
        .map(|i| {
            let x = standard_bispace(xm, a.h()[i]);
            let y = standard_bispace(xm, b.h()[i]);
            let t = tensor_with_classes(&x, &y).unwrap();
            t.bispace.psi(t.point(0, 0))
        })
        .collect();
    (g, h)
}

/// Dual of a cocycle computed fibre by fibre.
pub fn fibrewise_dual(c: &BibundleCocycle) -> (Vec<usize>, Vec<usize>) {
    let xm = c.xm();
    let nerve = c.nerve();
    let g = nerve
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &[i, _])| {
            let d = dual(&standard_bispace(xm, c.h()[i]));
            let hits: Vec<usize> = xm.g().elements().filter(|&k| d.ract(0, k) == c.g()[e]).collect();
            assert_eq!(hits.len(), 1, "torsor");
            hits[0]
        })
        .collect();
    let h = (0..nerve.vertex_count()).map(|i| dual(&standard_bispace(xm, c.h()[i])).psi(0)).collect();
    (g, h)
}

pub fn random_gauge(rng: &mut ChaCha8Rng, vertices: usize, order: usize) -> Gauge {
    Gauge { k: (0..vertices).map(|_| rng.gen_range(0..order)).collect() }
}

/// A class representative moved by a random gauge.
pub fn random_cocycle(rng: &mut ChaCha8Rng, classes: &[BibundleCocycle]) -> BibundleCocycle {
    let c = &classes[rng.gen_range(0..classes.len())];
    let k = random_gauge(rng, c.nerve().vertex_count(), c.xm().g().order());
    apply_gauge(c, &k)
}

pub type Cell = (String, Arc<Nerve>, String, Arc<CrossedModule>, Vec<BibundleCocycle>);

/// Every nerve × crossed-module fixture pair whose class enumeration fits
/// in `budget`, with its class representatives.
pub fn grid(xm_names: &[&str], budget: u128) -> Vec<Cell> {
    let nerves = fixtures::nerves();
    let xms = fixtures::crossed_modules();
    let mut out = Vec::new();
    for (nn, n) in &nerves {
        for &xn in xm_names {
            let xm = &xms[xn];
            if let Ok(cat) = enumerate_pi0(n, xm, budget) {
                out.push((nn.clone(), n.clone(), xn.to_string(), xm.clone(), cat.classes));
            }
        }
    }
    out
}
