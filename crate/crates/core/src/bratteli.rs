//! The tower of finite-dimensional approximants: incidence matrices,
//! dimension vectors, and the mediant-labelled diagram.
//!
//! Two independent constructions of the same object are kept side by side.
//! The matrix route multiplies dense 0/1 incidence matrices against the
//! initial vector (1,1); the diagram route inserts Farey mediants level by
//! level and labels each vertex by the sum of its parents. Tests and the
//! acceptance suite require the two to agree componentwise.

use serde_json::json;

use crate::error::{Error, Result};
use crate::rat::{rat_to_string, Rat};

/// Largest index for which a dense incidence matrix is materialized.
pub const MAX_MATRIX_INDEX: u64 = 12;
/// Largest t for which a dimension vector is computed (uses matrices up to
/// index t−1).
pub const MAX_DIMENSION_INDEX: u64 = MAX_MATRIX_INDEX + 1;
/// Largest diagram depth; the bottom level then has 2^16 + 1 vertices.
pub const MAX_DIAGRAM_DEPTH: u64 = 16;

/// ν(m) = 1 + 2^(m−1): the number of vertices at depth m−1, and the side
/// lengths of the incidence matrices.
pub fn nu(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ZeroIndex);
    }
    1u64.checked_shl(
        (m - 1)
            .try_into()
            .map_err(|_| Error::TooLarge(format!("nu({m})")))?,
    )
    .map(|p| p + 1)
    .ok_or_else(|| Error::TooLarge(format!("nu({m})")))
}

/// Dense 0/1 incidence matrix with ν(m+1) rows and ν(m) columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyMatrix {
    pub m: u64,
    pub entries: Vec<Vec<u8>>,
}

impl FareyMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }
}

/// The m-th incidence matrix. Counting rows and columns from 1: row 2j−1
/// has its single 1 at column j, row 2j has 1s at columns j and j+1.
pub fn farey_matrix(m: u64) -> Result<FareyMatrix> {
    if m == 0 {
        return Err(Error::ZeroIndex);
    }
    if m > MAX_MATRIX_INDEX {
        return Err(Error::TooLarge(format!(
            "matrix index {m} exceeds the dense cap {MAX_MATRIX_INDEX}"
        )));
    }
    let rows = nu(m + 1)? as usize;
    let cols = nu(m)? as usize;
    let mut entries = vec![vec![0u8; cols]; rows];
    for (r0, row) in entries.iter_mut().enumerate() {
        let r = r0 + 1;
        if r % 2 == 1 {
            row[(r - 1) / 2] = 1;
        } else {
            row[r / 2 - 1] = 1;
            row[r / 2] = 1;
        }
    }
    Ok(FareyMatrix { m, entries })
}

/// u_t = A_{t−1}⋯A₁·(1,1), the dimension vector of the t-th approximant;
/// its length is ν(t) and u₁ = (1,1).
pub fn dimension_vector(t: u64) -> Result<Vec<u64>> {
    if t == 0 {
        return Err(Error::ZeroIndex);
    }
    if t > MAX_DIMENSION_INDEX {
        return Err(Error::TooLarge(format!(
            "dimension index {t} exceeds the cap {MAX_DIMENSION_INDEX}"
        )));
    }
    let mut u = vec![1u64, 1u64];
    for m in 1..t {
        let a = farey_matrix(m)?;
        debug_assert_eq!(a.cols(), u.len());
        u = a
            .entries
            .iter()
            .map(|row| row.iter().zip(&u).map(|(&e, &x)| u64::from(e) * x).sum())
            .collect();
    }
    debug_assert_eq!(u.len() as u64, nu(t)?);
    Ok(u)
}

/// A diagram vertex: its Farey fraction and its label (the denominator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub fraction: Rat,
    pub label: u64,
}

/// Mediant-labelled diagram down to a fixed depth. `edges` holds
/// (depth, source index, target index): an edge from vertex `source` at
/// depth−1 to vertex `target` at depth. Vertices at each level are ordered
/// by fraction; names are `v_<depth>_<index>` with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    pub levels: Vec<Vec<Vertex>>,
    pub edges: Vec<(usize, usize, usize)>,
}

/// Builds the diagram: depth 0 holds 0/1 and 1/1 with labels 1, 1; each
/// later level keeps every vertex (one straight edge) and inserts the
/// mediant of each adjacent pair (one edge from each parent).
pub fn build_diagram(depth: u64) -> Result<BratteliDiagram> {
    if depth > MAX_DIAGRAM_DEPTH {
        return Err(Error::TooLarge(format!(
            "diagram depth {depth} exceeds the cap {MAX_DIAGRAM_DEPTH}"
        )));
    }
    let mut levels = vec![vec![
        Vertex {
            fraction: Rat::new(0.into(), 1.into()),
            label: 1,
        },
        Vertex {
            fraction: Rat::new(1.into(), 1.into()),
            label: 1,
        },
    ]];
    let mut edges = Vec::new();
    for d in 1..=depth as usize {
        let prev = &levels[d - 1];
        let mut level = Vec::with_capacity(2 * prev.len() - 1);
        for (j, v) in prev.iter().enumerate() {
            if j > 0 {
                let left = &prev[j - 1];
                let mediant = Rat::new(
                    left.fraction.numer() + v.fraction.numer(),
                    left.fraction.denom() + v.fraction.denom(),
                );
                edges.push((d, j - 1, level.len()));
                edges.push((d, j, level.len()));
                level.push(Vertex {
                    fraction: mediant,
                    label: left.label + v.label,
                });
            }
            edges.push((d, j, level.len()));
            level.push(Vertex {
                fraction: v.fraction.clone(),
                label: v.label,
            });
        }
        levels.push(level);
    }
    Ok(BratteliDiagram { levels, edges })
}

impl BratteliDiagram {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Labels of one level, in fraction order.
    pub fn labels(&self, depth: usize) -> Vec<u64> {
        self.levels[depth].iter().map(|v| v.label).collect()
    }

    /// Deterministic DOT rendering with stable vertex names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n");
        for (d, level) in self.levels.iter().enumerate() {
            out.push_str("  { rank=same;");
            for j in 0..level.len() {
                out.push_str(&format!(" v_{d}_{j};"));
            }
            out.push_str(" }\n");
            for (j, v) in level.iter().enumerate() {
                out.push_str(&format!(
                    "  v_{d}_{j} [label=\"{}\", tooltip=\"{}\"];\n",
                    v.label,
                    rat_to_string(&v.fraction)
                ));
            }
        }
        for (d, s, t) in &self.edges {
            out.push_str(&format!("  v_{}_{s} -> v_{d}_{t};\n", d - 1));
        }
        out.push_str("}\n");
        out
    }

    /// Deterministic JSON rendering (fractions as strings).
    pub fn to_json(&self) -> String {
        let levels: Vec<_> = self
            .levels
            .iter()
            .enumerate()
            .map(|(d, level)| {
                let vertices: Vec<_> = level
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        json!({
                            "name": format!("v_{d}_{j}"),
                            "fraction": rat_to_string(&v.fraction),
                            "label": v.label,
                        })
                    })
                    .collect();
                json!({ "depth": d, "vertices": vertices })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|(d, s, t)| json!({ "depth": d, "source": s, "target": t }))
            .collect();
        serde_json::to_string_pretty(&json!({
            "depth": self.depth(),
            "levels": levels,
            "edges": edges,
        }))
        .expect("diagram serialization cannot fail")
    }
}
