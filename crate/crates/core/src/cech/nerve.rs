//! Finite simplicial complexes standing in for the nerve of a good cover.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::CechError;

/// Raw simplex lists, in any vertex order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NerveData {
    pub vertices: usize,
    pub edges: Vec<Vec<usize>>,
    pub triangles: Vec<Vec<usize>>,
    pub tetrahedra: Vec<Vec<usize>>,
}

/// A face-closed complex of dimension at most 3 with ascending vertex
/// order on every simplex, plus connectivity and a BFS spanning forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    tetrahedra: Vec<[usize; 4]>,
    edge_index: HashMap<(usize, usize), usize>,
    triangle_index: HashMap<[usize; 3], usize>,
    component_of: Vec<usize>,
    components: usize,
    forest: SpanningForest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest {
    /// `(parent, edge)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    /// Vertices in BFS order, components one after another.
    pub order: Vec<usize>,
    pub tree_edge: Vec<bool>,
    /// Least vertex of each component.
    pub roots: Vec<usize>,
}

fn canonical<const N: usize>(raw: &[usize], vertices: usize) -> Result<[usize; N], CechError> {
    if raw.len() != N {
        return Err(CechError::SimplexArity { expected: N, got: raw.len() });
    }
    let mut s = [0; N];
    s.copy_from_slice(raw);
    s.sort_unstable();
    if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
        return Err(CechError::VertexOutOfRange { vertex: v, vertices });
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(CechError::DegenerateSimplex { simplex: s.to_vec() });
    }
    Ok(s)
}

fn collect<const N: usize>(raw: &[Vec<usize>], vertices: usize) -> Result<BTreeSet<[usize; N]>, CechError> {
    let mut out = BTreeSet::new();
    for r in raw {
        let s = canonical::<N>(r, vertices)?;
        if !out.insert(s) {
            return Err(CechError::DuplicateSimplex { simplex: s.to_vec() });
        }
    }
    Ok(out)
}

fn faces<const N: usize, const M: usize>(s: &[usize; N]) -> Vec<[usize; M]> {
    (0..N)
        .map(|skip| {
            let mut f = [0; M];
            let mut k = 0;
            for (i, &v) in s.iter().enumerate() {
                if i != skip {
                    f[k] = v;
                    k += 1;
                }
            }
            f
        })
        .collect()
}

impl Nerve {
    /// Validates raw data. Missing faces are inserted (and listed in the
    /// returned warnings) unless `strict`, in which case they are an error.
    pub fn validate(data: &NerveData, strict: bool) -> Result<(Nerve, Vec<String>), CechError> {
        let v = data.vertices;
        let mut edges = collect::<2>(&data.edges, v)?;
        let mut tris = collect::<3>(&data.triangles, v)?;
        let tets = collect::<4>(&data.tetrahedra, v)?;
        let mut warnings = Vec::new();
        for t in &tets {
            for f in faces::<4, 3>(t) {
                if !tris.contains(&f) {
                    if strict {
                        return Err(CechError::MissingFace { face: f.to_vec(), of: t.to_vec() });
                    }
                    warnings.push(format!("inserted missing triangle {f:?} of {t:?}"));
                    tris.insert(f);
                }
            }
        }
        for t in &tris {
            for f in faces::<3, 2>(t) {
                if !edges.contains(&f) {
                    if strict {
                        return Err(CechError::MissingFace { face: f.to_vec(), of: t.to_vec() });
                    }
                    warnings.push(format!("inserted missing edge {f:?} of {t:?}"));
                    edges.insert(f);
                }
            }
        }
        Ok((Self::from_sets(v, edges, tris, tets), warnings))
    }

    fn from_sets(
        vertices: usize,
        edges: BTreeSet<[usize; 2]>,
        triangles: BTreeSet<[usize; 3]>,
        tetrahedra: BTreeSet<[usize; 4]>,
    ) -> Nerve {
        let edges: Vec<[usize; 2]> = edges.into_iter().collect();
        let triangles: Vec<[usize; 3]> = triangles.into_iter().collect();
        let tetrahedra: Vec<[usize; 4]> = tetrahedra.into_iter().collect();
        let edge_index = edges.iter().enumerate().map(|(i, e)| ((e[0], e[1]), i)).collect();
        let triangle_index = triangles.iter().enumerate().map(|(i, &t)| (t, i)).collect();

        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices];
        for (i, e) in edges.iter().enumerate() {
            adj[e[0]].push((e[1], i));
            adj[e[1]].push((e[0], i));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let mut component_of = vec![usize::MAX; vertices];
        let mut parent = vec![None; vertices];
        let mut order = Vec::with_capacity(vertices);
        let mut tree_edge = vec![false; edges.len()];
        let mut roots = Vec::new();
        for root in 0..vertices {
            if component_of[root] != usize::MAX {
                continue;
            }
            let c = roots.len();
            roots.push(root);
            component_of[root] = c;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &(y, e) in &adj[x] {
                    if component_of[y] == usize::MAX {
                        component_of[y] = c;
                        parent[y] = Some((x, e));
                        tree_edge[e] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        let components = roots.len();
        Nerve {
            vertices,
            edges,
            triangles,
            tetrahedra,
            edge_index,
            triangle_index,
            component_of,
            components,
            forest: SpanningForest { parent, order, tree_edge, roots },
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn tetrahedra(&self) -> &[[usize; 4]] {
        &self.tetrahedra
    }

    /// Index of the edge `{i, j}` in either orientation.
    pub fn edge(&self, i: usize, j: usize) -> Option<usize> {
        self.edge_index.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn triangle(&self, t: [usize; 3]) -> Option<usize> {
        self.triangle_index.get(&t).copied()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn forest(&self) -> &SpanningForest {
        &self.forest
    }

    /// Number of edges outside the spanning forest.
    pub fn loop_count(&self) -> usize {
        self.edges.len() + self.components - self.vertices
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.triangles.len() as i64 - self.tetrahedra.len() as i64
    }

    pub fn to_data(&self) -> NerveData {
        NerveData {
            vertices: self.vertices,
            edges: self.edges.iter().map(|e| e.to_vec()).collect(),
            triangles: self.triangles.iter().map(|t| t.to_vec()).collect(),
            tetrahedra: self.tetrahedra.iter().map(|t| t.to_vec()).collect(),
        }
    }
}

/// One filled triangle.
pub fn disc2() -> Nerve {
    let data = NerveData { vertices: 3, triangles: vec![vec![0, 1, 2]], ..Default::default() };
    Nerve::validate(&data, false).unwrap().0
}

/// Hollow triangle.
pub fn circ3() -> Nerve {
    let data = NerveData { vertices: 3, edges: vec![vec![0, 1], vec![1, 2], vec![0, 2]], ..Default::default() };
    Nerve::validate(&data, true).unwrap().0
}

/// Boundary of the 3-simplex.
pub fn sphere() -> Nerve {
    let data = NerveData {
        vertices: 4,
        triangles: vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        ..Default::default()
    };
    Nerve::validate(&data, false).unwrap().0
}

/// Six-vertex projective plane, obtained as the quotient of the
/// icosahedron by the antipodal map.
pub fn rp26() -> Nerve {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts: Vec<[f64; 3]> = Vec::new();
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            pts.push([0.0, s1, s2 * phi]);
            pts.push([s1, s2 * phi, 0.0]);
            pts.push([s2 * phi, 0.0, s1]);
        }
    }
    let dist2 = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|i| (a[i] - b[i]).powi(2)).sum::<f64>();
    let adjacent = |a: usize, b: usize| (dist2(&pts[a], &pts[b]) - 4.0).abs() < 1e-9;
    // antipodal classes, numbered by first occurrence
    let mut class = vec![usize::MAX; pts.len()];
    let mut next = 0;
    for i in 0..pts.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let anti = (0..pts.len())
            .find(|&j| (0..3).all(|k| (pts[j][k] + pts[i][k]).abs() < 1e-9))
            .expect("icosahedron is centrally symmetric");
        class[i] = next;
        class[anti] = next;
        next += 1;
    }
    let n = pts.len();
    let mut triangles = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adjacent(a, b) && adjacent(b, c) && adjacent(a, c) {
                    let mut t = [class[a], class[b], class[c]];
                    t.sort_unstable();
                    triangles.insert(t);
                }
            }
        }
    }
    let data = NerveData {
        vertices: next,
        triangles: triangles.into_iter().map(|t| t.to_vec()).collect(),
        ..Default::default()
    };
    Nerve::validate(&data, false).expect("antipodal quotient is a simplicial complex").0
}
