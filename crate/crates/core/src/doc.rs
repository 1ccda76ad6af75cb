//! JSON documents for groups, crossed modules, nerves, bispaces and cocycles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bispace::Bispace;
use crate::cech::cocycle::BibundleCocycle;
use crate::cech::nerve::{Nerve, NerveData};
use crate::crossed::CrossedModule;
use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A workspace name or an inline document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Name(String),
    Inline(Box<T>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CrossedModuleDoc {
    Adjoint {
        adjoint: Ref<GroupDoc>,
    },
    Explicit {
        #[serde(rename = "G")]
        g: Ref<GroupDoc>,
        #[serde(rename = "H")]
        h: Ref<GroupDoc>,
        t: Vec<usize>,
        alpha: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveDoc {
    pub vertices: usize,
    #[serde(default)]
    pub edges: Vec<Vec<usize>>,
    #[serde(default)]
    pub triangles: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tetrahedra: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BispaceDoc {
    Standard { xm: Ref<CrossedModuleDoc>, standard: usize },
    Explicit { xm: Ref<CrossedModuleDoc>, carrier: usize, raction: Vec<Vec<usize>>, psi: Vec<usize> },
}

/// `g` is keyed by `"[i,j]"`; a key with `i > j` gives `g_ji^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleDoc {
    pub nerve: Ref<NerveDoc>,
    pub xm: Ref<CrossedModuleDoc>,
    pub g: BTreeMap<String, usize>,
    pub h: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub crossed_modules: BTreeMap<String, CrossedModuleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub nerves: BTreeMap<String, NerveDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bispaces: BTreeMap<String, BispaceDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cocycles: BTreeMap<String, CocycleDoc>,
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupDoc { order: g.order(), mul: g.table(), labels: g.labels().map(<[String]>::to_vec) }
    }
}

impl CrossedModuleDoc {
    /// Inline explicit form.
    pub fn from_module(xm: &CrossedModule) -> Self {
        CrossedModuleDoc::Explicit {
            g: Ref::Inline(Box::new(GroupDoc::from_group(xm.g()))),
            h: Ref::Inline(Box::new(GroupDoc::from_group(xm.h()))),
            t: xm.t().map().to_vec(),
            alpha: xm.alpha().table(),
        }
    }
}

impl NerveDoc {
    pub fn from_nerve(n: &Nerve) -> Self {
        let d = n.to_data();
        NerveDoc { vertices: d.vertices, edges: d.edges, triangles: d.triangles, tetrahedra: d.tetrahedra }
    }

    pub fn to_data(&self) -> NerveData {
        NerveData {
            vertices: self.vertices,
            edges: self.edges.clone(),
            triangles: self.triangles.clone(),
            tetrahedra: self.tetrahedra.clone(),
        }
    }
}

impl BispaceDoc {
    pub fn from_bispace(x: &Bispace, xm: Ref<CrossedModuleDoc>) -> Self {
        BispaceDoc::Explicit { xm, carrier: x.len(), raction: x.raction_table(), psi: x.psi_table().to_vec() }
    }
}

pub fn edge_key(i: usize, j: usize) -> String {
    format!("[{i},{j}]")
}

impl CocycleDoc {
    pub fn from_cocycle(c: &BibundleCocycle, nerve: Ref<NerveDoc>, xm: Ref<CrossedModuleDoc>) -> Self {
        let g = c.nerve().edges().iter().zip(c.g()).map(|(&[i, j], &v)| (edge_key(i, j), v)).collect();
        CocycleDoc { nerve, xm, g, h: c.h().to_vec() }
    }
}
