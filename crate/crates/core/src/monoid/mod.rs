//! Commutative monoids, given by a full addition table or by generators and
//! relations, and their Grothendieck groups.

pub mod library;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abgrp::{cokernel, FinAbGroup, IntMatrix};
use crate::{Error, Result};

/// Finite commutative monoid given by its full addition table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteCommMonoid {
    labels: Vec<String>,
    unit: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteCommMonoid {
    pub fn new(labels: Vec<String>, unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = FiniteCommMonoid { labels, unit, table };
        m.validate()?;
        Ok(m)
    }

    /// Same as [`FiniteCommMonoid::new`] with labels `"0", "1", ...`.
    pub fn from_table(unit: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        let labels = (0..table.len()).map(|i| i.to_string()).collect();
        Self::new(labels, unit, table)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        let bad = |msg: String| Err(Error::InvalidTable(msg));
        if n == 0 {
            return bad("a monoid has at least one element".into());
        }
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return bad(format!("table must be {n}x{n}"));
        }
        if self.unit >= n {
            return bad("unit out of range".into());
        }
        if let Some(x) = self.table.iter().flatten().find(|&&x| x >= n) {
            return bad(format!("entry {x} out of range"));
        }
        let mut sorted = self.labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return bad("element labels must be distinct".into());
        }
        for a in 0..n {
            if self.table[self.unit][a] != a {
                return bad(format!("unit does not fix {}", self.labels[a]));
            }
            for b in 0..n {
                if self.table[a][b] != self.table[b][a] {
                    return bad(format!("{} + {} is not commutative", self.labels[a], self.labels[b]));
                }
                for c in 0..n {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        return bad(format!(
                            "({0} + {1}) + {2} != {0} + ({1} + {2})",
                            self.labels[a], self.labels[b], self.labels[c]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self::from_table(0, vec![vec![0]]).expect("valid")
    }

    pub fn cyclic_group(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(0, table).expect("valid")
    }

    /// `{0, 1}` with `1 + 1 = 1`.
    pub fn idempotent2() -> Self {
        Self::from_table(0, vec![vec![0, 1], vec![1, 1]]).expect("valid")
    }

    /// `{0, .., cap}` with addition truncated at `cap`.
    pub fn saturating(cap: usize) -> Self {
        let n = cap + 1;
        let table = (0..n).map(|a| (0..n).map(|b| (a + b).min(cap)).collect()).collect();
        Self::from_table(0, table).expect("valid")
    }

    pub fn product(&self, other: &FiniteCommMonoid) -> FiniteCommMonoid {
        let (n, m) = (self.size(), other.size());
        let idx = |a: usize, b: usize| a * m + b;
        let labels = (0..n * m)
            .map(|i| format!("({},{})", self.labels[i / m], other.labels[i % m]))
            .collect();
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| idx(self.op(x / m, y / m), other.op(x % m, y % m)))
                    .collect()
            })
            .collect();
        FiniteCommMonoid {
            labels,
            unit: idx(self.unit, other.unit),
            table,
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// `n * x`
    pub fn multiple(&self, x: usize, n: usize) -> usize {
        (0..n).fold(self.unit, |acc, _| self.op(acc, x))
    }

    pub fn is_group(&self) -> bool {
        (0..self.size()).all(|a| (0..self.size()).any(|b| self.op(a, b) == self.unit))
    }
}

/// Group completion of a finite monoid computed from the pair quotient
/// `(a, b) ~ (c, d)` iff `a + d + k = c + b + k` for some `k`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub group: FinAbGroup,
    /// Class of the pair `(a, b)` at index `a * n + b`.
    pub class_of: Vec<usize>,
    pub class_count: usize,
    /// Class of `(m, 0)` for each element `m`.
    pub unit_section: Vec<usize>,
    /// Addition of classes.
    pub class_table: Vec<Vec<usize>>,
    pub zero_class: usize,
}

impl Completion {
    /// Class of `[a] - [b]`.
    pub fn difference(&self, n: usize, a: usize, b: usize) -> usize {
        self.class_of[a * n + b]
    }
}

pub fn grothendieck_group_finite(m: &FiniteCommMonoid) -> Result<Completion> {
    m.validate()?;
    let n = m.size();
    let related = |a: usize, b: usize, c: usize, d: usize| {
        let left = m.op(a, d);
        let right = m.op(c, b);
        (0..n).any(|k| m.op(left, k) == m.op(right, k))
    };
    let mut class_of = vec![usize::MAX; n * n];
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if class_of[a * n + b] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push((a, b));
            for x in 0..n {
                for y in 0..n {
                    if class_of[x * n + y] == usize::MAX && related(a, b, x, y) {
                        class_of[x * n + y] = c;
                    }
                }
            }
        }
    }
    let count = reps.len();
    let class_table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&(a, b)| {
            reps.iter()
                .map(|&(c, d)| class_of[m.op(a, c) * n + m.op(b, d)])
                .collect()
        })
        .collect();
    let zero_class = class_of[m.unit * n + m.unit];
    let group = FinAbGroup::from_finite_table(count, zero_class, |x, y| class_table[x][y]);
    let unit_section = (0..n).map(|x| class_of[x * n + m.unit]).collect();
    Ok(Completion {
        group,
        class_of,
        class_count: count,
        unit_section,
        class_table,
        zero_class,
    })
}

/// A witness `k` with `k + x = k + y`, trying the unit first.
pub fn stably_equivalent(m: &FiniteCommMonoid, x: usize, y: usize) -> Option<usize> {
    std::iter::once(m.unit)
        .chain((0..m.size()).filter(|&k| k != m.unit))
        .find(|&k| m.op(k, x) == m.op(k, y))
}

/// A total map between finite commutative monoids, not yet known to be a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidHom {
    pub source: FiniteCommMonoid,
    pub target: FiniteCommMonoid,
    pub map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(source: FiniteCommMonoid, target: FiniteCommMonoid, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(Error::invalid("map must send every source element into the target"));
        }
        Ok(MonoidHom { source, target, map })
    }

    pub fn identity(m: &FiniteCommMonoid) -> Self {
        MonoidHom {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.size()).collect(),
        }
    }

    pub fn to_trivial(m: &FiniteCommMonoid) -> Self {
        MonoidHom {
            source: m.clone(),
            target: FiniteCommMonoid::trivial(),
            map: vec![0; m.size()],
        }
    }

    pub fn from_trivial(m: &FiniteCommMonoid) -> Self {
        MonoidHom {
            source: FiniteCommMonoid::trivial(),
            target: m.clone(),
            map: vec![m.unit()],
        }
    }

    /// `x -> n * x` on `m`.
    pub fn multiplication(m: &FiniteCommMonoid, n: usize) -> Self {
        MonoidHom {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.size()).map(|x| m.multiple(x, n)).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// True iff `f` preserves the unit and the addition table.
pub fn hom_check(f: &MonoidHom) -> bool {
    let (s, t) = (&f.source, &f.target);
    f.map[s.unit()] == t.unit()
        && (0..s.size()).all(|a| (0..s.size()).all(|b| f.map[s.op(a, b)] == t.op(f.map[a], f.map[b])))
}

/// Commutative monoid on named generators with relations `u = v`
/// between exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommMonoidPres {
    pub generators: Vec<String>,
    pub relations: Vec<(Vec<u64>, Vec<u64>)>,
}

impl CommMonoidPres {
    pub fn new(generators: Vec<String>, relations: Vec<(Vec<u64>, Vec<u64>)>) -> Result<Self> {
        let g = generators.len();
        if relations.iter().any(|(u, v)| u.len() != g || v.len() != g) {
            return Err(Error::invalid(format!("relation vectors must have length {g}")));
        }
        Ok(CommMonoidPres { generators, relations })
    }

    /// The free commutative monoid on `k` generators.
    pub fn free(k: usize) -> Self {
        CommMonoidPres {
            generators: (0..k).map(|i| format!("x{i}")).collect(),
            relations: Vec::new(),
        }
    }

    /// Presentation read off a table: one generator per non-unit element,
    /// one relation `a + b = (a+b)` per pair.
    pub fn from_table(m: &FiniteCommMonoid) -> Self {
        let gens: Vec<usize> = (0..m.size()).filter(|&x| x != m.unit()).collect();
        let pos = |x: usize| gens.iter().position(|&g| g == x);
        let unit_vec = |x: usize| {
            let mut v = vec![0u64; gens.len()];
            if let Some(i) = pos(x) {
                v[i] += 1;
            }
            v
        };
        let mut relations = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i..] {
                let mut u = unit_vec(a);
                for (x, y) in u.iter_mut().zip(unit_vec(b)) {
                    *x += y;
                }
                relations.push((u, unit_vec(m.op(a, b))));
            }
        }
        CommMonoidPres {
            generators: gens.iter().map(|&g| m.label(g).to_string()).collect(),
            relations,
        }
    }

    /// Columns `u - v`, one per relation.
    pub fn relation_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|(u, v)| {
                u.iter()
                    .zip(v)
                    .map(|(&a, &b)| BigInt::from(a) - BigInt::from(b))
                    .collect()
            })
            .collect();
        IntMatrix::from_columns(self.generators.len(), &cols)
    }
}

/// The group on the same generators and relations.
pub fn grothendieck_group(p: &CommMonoidPres) -> FinAbGroup {
    cokernel(&p.relation_matrix())
}
