use std::fmt;

use serde::Serialize;

use crate::exactla::{Echelon, Matrix};

use super::Module;

/// Layers of a radical or socle filtration, top layer first. Each layer
/// records the multiplicity of every simple module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoewyTable {
    pub labels: Vec<String>,
    pub layers: Vec<Vec<usize>>,
}

impl LoewyTable {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.layers.iter().flatten().sum()
    }

    /// Layers as lists of vertex labels, repeated by multiplicity.
    pub fn rows(&self) -> Vec<Vec<String>> {
        self.layers
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .flat_map(|(v, &c)| std::iter::repeat_n(self.labels[v].clone(), c))
                    .collect()
            })
            .collect()
    }

    /// Builds a table from rows of labels; the inverse of [`LoewyTable::rows`].
    pub fn from_rows(labels: &[String], rows: &[&[&str]]) -> Option<LoewyTable> {
        let mut layers = Vec::new();
        for row in rows {
            let mut l = vec![0; labels.len()];
            for name in *row {
                l[labels.iter().position(|x| x == name)?] += 1;
            }
            layers.push(l);
        }
        Some(LoewyTable { labels: labels.to_vec(), layers })
    }
}

impl LoewyTable {
    /// One centered line per layer, top first.
    pub fn diagram(&self) -> String {
        let rows: Vec<String> = self.rows().into_iter().map(|r| r.join(" ")).collect();
        let width = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for r in &rows {
            let pad = (width - r.chars().count()) / 2;
            out.push_str(&" ".repeat(pad));
            out.push_str(r);
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LoewyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return f.write_str("0");
        }
        let rows: Vec<String> = self.rows().into_iter().map(|r| r.join(" ")).collect();
        f.write_str(&rows.join(" / "))
    }
}

fn layer_dims(m: &Module, vectors: &[Vec<u32>]) -> Vec<usize> {
    m.graded_basis(vectors).iter().map(|b| b.len()).collect()
}

fn labels(m: &Module) -> Vec<String> {
    m.algebra().quiver().vertices().to_vec()
}

pub(super) fn loewy(m: &Module) -> LoewyTable {
    let f = m.field();
    let n = m.dim();
    let mut current: Vec<Vec<u32>> = (0..n).map(|i| super::unit(n, i)).collect();
    let mut prev_dims = m.dims().to_vec();
    let mut layers = Vec::new();
    while !current.is_empty() {
        let images: Vec<Vec<u32>> =
            m.arrow_actions().iter().flat_map(|a| current.iter().map(move |v| a.mul_vec(v))).collect();
        let next = Echelon::from_vectors(f, n, images.iter()).basis().to_vec();
        let dims = layer_dims(m, &next);
        layers.push(prev_dims.iter().zip(&dims).map(|(a, b)| a - b).collect());
        prev_dims = dims;
        current = next;
    }
    LoewyTable { labels: labels(m), layers }
}

/// Socle layers, listed from the top so they line up with [`loewy`].
pub(super) fn socle(m: &Module) -> LoewyTable {
    let f = m.field();
    let n = m.dim();
    let mut sub: Vec<Vec<u32>> = Vec::new();
    let mut prev_dims = vec![0; m.dims().len()];
    let mut layers = Vec::new();
    while sub.len() < n {
        // rows annihilating the current socle term
        let ann = if sub.is_empty() {
            Matrix::identity(f, n)
        } else {
            let s = Matrix::from_rows(f, n, &sub);
            Matrix::from_rows(f, n, &s.nullspace())
        };
        let mut stacked: Option<Matrix> = None;
        for a in m.arrow_actions() {
            let c = ann.mul(a);
            stacked = Some(match stacked {
                None => c,
                Some(s) => s.vstack(&c),
            });
        }
        let next = match stacked {
            Some(s) => s.nullspace(),
            None => (0..n).map(|i| super::unit(n, i)).collect(),
        };
        let dims = layer_dims(m, &next);
        layers.push(dims.iter().zip(&prev_dims).map(|(a, b)| a - b).collect());
        prev_dims = dims;
        sub = next;
    }
    layers.reverse();
    LoewyTable { labels: labels(m), layers }
}
