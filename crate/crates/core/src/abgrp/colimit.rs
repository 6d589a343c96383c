use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::group::{check_hom, cokernel_with_map, AbPresentation, FinAbGroup};
use super::IntMatrix;
use crate::{Error, Result};

/// A homomorphism between two nodes, given on generators as a
/// `(target generators) x (source generators)` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbArrow {
    pub source: usize,
    pub target: usize,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbDiagram {
    pub nodes: Vec<AbPresentation>,
    pub arrows: Vec<AbArrow>,
}

#[derive(Clone, Debug)]
pub struct Colimit {
    pub group: FinAbGroup,
    /// Structure map of each node into canonical coordinates of `group`.
    pub node_maps: Vec<IntMatrix>,
    /// The colimit as a presentation on the disjoint union of node generators.
    pub presentation: AbPresentation,
    pub offsets: Vec<usize>,
}

impl AbDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, node: AbPresentation) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn add_arrow(&mut self, source: usize, target: usize, matrix: IntMatrix) {
        self.arrows.push(AbArrow { source, target, matrix });
    }

    pub fn validate(&self) -> Result<()> {
        for (index, a) in self.arrows.iter().enumerate() {
            let malformed = |reason: String| Error::MalformedArrow { index, reason };
            let (Some(src), Some(tgt)) = (self.nodes.get(a.source), self.nodes.get(a.target)) else {
                return Err(malformed("endpoint out of range".into()));
            };
            check_hom(&a.matrix, src, tgt).map_err(|e| malformed(e.to_string()))?;
        }
        Ok(())
    }

    fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.nodes.len() + 1);
        let mut acc = 0;
        for n in &self.nodes {
            offsets.push(acc);
            acc += n.generators();
        }
        offsets.push(acc);
        offsets
    }

    /// The colimit as one presentation: all node relations plus
    /// `f(e) - e` for every arrow `f` and source generator `e`.
    pub fn total_presentation(&self) -> AbPresentation {
        let offsets = self.offsets();
        let total = *offsets.last().unwrap();
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            for j in 0..n.relations().cols() {
                let mut col = vec![BigInt::from(0); total];
                for (r, x) in n.relations().column(j).into_iter().enumerate() {
                    col[offsets[i] + r] = x;
                }
                columns.push(col);
            }
        }
        for a in &self.arrows {
            for j in 0..a.matrix.cols() {
                let mut col = vec![BigInt::from(0); total];
                for r in 0..a.matrix.rows() {
                    col[offsets[a.target] + r] += a.matrix.get(r, j);
                }
                col[offsets[a.source] + j] -= BigInt::one();
                columns.push(col);
            }
        }
        AbPresentation::new(total, IntMatrix::from_columns(total, &columns)).expect("row count matches by construction")
    }
}

pub fn ab_colimit(d: &AbDiagram) -> Result<Colimit> {
    d.validate()?;
    let offsets = d.offsets();
    let presentation = d.total_presentation();
    let q = cokernel_with_map(presentation.relations());
    let node_maps = d
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| q.projection.select_columns(offsets[i]..offsets[i] + n.generators()))
        .collect();
    Ok(Colimit {
        group: q.group,
        node_maps,
        presentation,
        offsets,
    })
}
