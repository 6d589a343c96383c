use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abgrp::{cokernel, FinAbGroup, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// An explicit finite category. `composition[(g, f)] = g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCategory", into = "RawCategory")]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    composition: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct RawCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// Triples `[g, f, g∘f]`.
    composition: Vec<[usize; 3]>,
}

impl TryFrom<RawCategory> for FiniteCategory {
    type Error = Error;

    fn try_from(raw: RawCategory) -> Result<Self> {
        let mut composition = BTreeMap::new();
        for [g, f, h] in raw.composition {
            if composition.insert((g, f), h).is_some() {
                return Err(Error::invalid(format!("composite ({g}, {f}) listed twice")));
            }
        }
        FiniteCategory::new(raw.objects, raw.morphisms, raw.identities, composition)
    }
}

impl From<FiniteCategory> for RawCategory {
    fn from(c: FiniteCategory) -> Self {
        RawCategory {
            objects: c.objects,
            morphisms: c.morphisms,
            identities: c.identities,
            composition: c.composition.into_iter().map(|((g, f), h)| [g, f, h]).collect(),
        }
    }
}

/// Connected components of the underlying graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    /// Component of each object, numbered by first appearance.
    pub component_of: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.component_of.len())
            .filter(|&x| self.component_of[x] == c)
            .collect()
    }
}

impl FiniteCategory {
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let c = FiniteCategory {
            objects,
            morphisms,
            identities,
            composition,
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds without checking the axioms; constructions in this crate use
    /// this and are checked in tests.
    pub(crate) fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: BTreeMap<(usize, usize), usize>,
    ) -> Self {
        FiniteCategory {
            objects,
            morphisms,
            identities,
            composition,
        }
    }

    /// Checks the category axioms exhaustively.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        let (n, m) = (self.objects.len(), self.morphisms.len());
        if self.identities.len() != n {
            return bad("one identity per object required".into());
        }
        for (i, f) in self.morphisms.iter().enumerate() {
            if f.source >= n || f.target >= n {
                return bad(format!("morphism {i} has endpoints out of range"));
            }
        }
        for (x, &id) in self.identities.iter().enumerate() {
            if id >= m || self.morphisms[id].source != x || self.morphisms[id].target != x {
                return bad(format!("identity of object {x} is not an endomorphism of it"));
            }
        }
        let out = self.outgoing();
        let mut expected = 0usize;
        for (f, mf) in self.morphisms.iter().enumerate() {
            for &g in &out[mf.target] {
                expected += 1;
                let Some(&h) = self.composition.get(&(g, f)) else {
                    return bad(format!("composite of {g} after {f} is missing"));
                };
                if h >= m
                    || self.morphisms[h].source != mf.source
                    || self.morphisms[h].target != self.morphisms[g].target
                {
                    return bad(format!("composite of {g} after {f} has the wrong endpoints"));
                }
            }
            if self.compose(self.identities[mf.target], f) != Some(f)
                || self.compose(f, self.identities[mf.source]) != Some(f)
            {
                return bad(format!("identities are not neutral for morphism {f}"));
            }
        }
        if expected != self.composition.len() {
            return bad("composition is defined on non-composable pairs".into());
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            for &g in &out[mf.target] {
                let gf = self.composition[&(g, f)];
                for &h in &out[self.morphisms[g].target] {
                    let hg = self.composition[&(h, g)];
                    if self.composition[&(h, gf)] != self.composition[&(hg, f)] {
                        return bad(format!("composition is not associative on ({h}, {g}, {f})"));
                    }
                }
            }
        }
        Ok(())
    }

    fn outgoing(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.objects.len()];
        for (i, f) in self.morphisms.iter().enumerate() {
            out[f.source].push(i);
        }
        out
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    pub fn composition_table(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.composition
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == x && self.morphisms[f].target == y)
            .collect()
    }

    pub fn is_initial(&self, x: usize) -> bool {
        (0..self.objects.len()).all(|y| self.hom(x, y).len() == 1)
    }

    pub fn components(&self) -> Components {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.morphisms {
            let (a, b) = (find(&mut parent, f.source), find(&mut parent, f.target));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let component_of = (0..n)
            .map(|x| {
                let r = find(&mut parent, x);
                if label[r] == usize::MAX {
                    label[r] = count;
                    count += 1;
                }
                label[r]
            })
            .collect();
        Components { component_of, count }
    }

    /// `H₁` of the nerve of the component containing `basepoint`.
    ///
    /// Uses the normalized complex in degrees ≤ 2. Since
    /// `C₁ / im ∂₂ ≅ H₁ ⊕ im ∂₁` and `im ∂₁` is free of rank
    /// `(#objects - 1)` on a connected component, only `∂₂` is reduced.
    pub fn h1_component(&self, basepoint: usize) -> Result<FinAbGroup> {
        if basepoint >= self.objects.len() {
            return Err(Error::invalid(format!("basepoint {basepoint} is not an object")));
        }
        let comps = self.components();
        let c = comps.component_of[basepoint];
        let object_count = comps.component_of.iter().filter(|&&d| d == c).count();
        let edges: Vec<usize> = (0..self.morphisms.len())
            .filter(|&f| comps.component_of[self.morphisms[f].source] == c && !self.is_identity(f))
            .collect();
        let mut row = vec![usize::MAX; self.morphisms.len()];
        for (i, &f) in edges.iter().enumerate() {
            row[f] = i;
        }
        let mut columns: Vec<Vec<BigInt>> = Vec::new();
        for ((g, f), h) in &self.composition {
            if row[*g] == usize::MAX || row[*f] == usize::MAX {
                continue;
            }
            let mut col = vec![BigInt::from(0); edges.len()];
            col[row[*f]] += 1;
            col[row[*g]] += 1;
            if row[*h] != usize::MAX {
                col[row[*h]] -= 1;
            }
            columns.push(col);
        }
        let q = cokernel(&IntMatrix::from_columns(edges.len(), &columns));
        let free = q.free_rank() - (object_count - 1);
        FinAbGroup::new(free, q.invariant_factors().to_vec())
    }

    /// The full subcategory on `keep`, in the given order.
    pub fn full_subcategory(&self, keep: &[usize]) -> FiniteCategory {
        let mut obj_map = vec![usize::MAX; self.objects.len()];
        for (i, &x) in keep.iter().enumerate() {
            obj_map[x] = i;
        }
        let mut mor_map = vec![usize::MAX; self.morphisms.len()];
        let mut morphisms = Vec::new();
        for (i, f) in self.morphisms.iter().enumerate() {
            if obj_map[f.source] != usize::MAX && obj_map[f.target] != usize::MAX {
                mor_map[i] = morphisms.len();
                morphisms.push(Morphism {
                    label: f.label.clone(),
                    source: obj_map[f.source],
                    target: obj_map[f.target],
                });
            }
        }
        let composition = self
            .composition
            .iter()
            .filter(|((g, f), _)| mor_map[*g] != usize::MAX && mor_map[*f] != usize::MAX)
            .map(|((g, f), h)| ((mor_map[*g], mor_map[*f]), mor_map[*h]))
            .collect();
        FiniteCategory {
            objects: keep.iter().map(|&x| self.objects[x].clone()).collect(),
            morphisms,
            identities: keep.iter().map(|&x| mor_map[self.identities[x]]).collect(),
            composition,
        }
    }

    /// Graphviz rendering; identities are omitted.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{}\" {{\n", escape(name));
        for (i, o) in self.objects.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{}\"];", escape(o));
        }
        for (i, f) in self.morphisms.iter().enumerate() {
            if !self.is_identity(i) {
                let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", f.source, f.target, escape(&f.label));
            }
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
