//! Brute-force oracles, written independently of the library.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use kgroup::abgrp::FinAbGroup;
use kgroup::monoid::FiniteCommMonoid;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub struct UnionFind(Vec<usize>);

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Dense class labels in order of first appearance.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut seen = HashMap::new();
        let labels = (0..n)
            .map(|x| {
                let r = self.find(x);
                let next = seen.len();
                *seen.entry(r).or_insert(next)
            })
            .collect();
        (labels, seen.len())
    }
}

/// A finite abelian group by its addition table.
pub struct TableGroup {
    pub order: usize,
    pub zero: usize,
    pub add: Vec<Vec<usize>>,
}

impl TableGroup {
    pub fn multiple(&self, x: usize, d: usize) -> usize {
        (0..d).fold(self.zero, |acc, _| self.add[acc][x])
    }

    /// `#{x : d·x = 0}` for `d = 1..=order`; determines the group up to isomorphism.
    pub fn torsion_profile(&self) -> Vec<usize> {
        (1..=self.order)
            .map(|d| (0..self.order).filter(|&x| self.multiple(x, d) == self.zero).count())
            .collect()
    }

    /// `|G / nG|`
    pub fn quotient_by_multiples(&self, n: usize) -> usize {
        let image: BTreeSet<usize> = (0..self.order).map(|x| self.multiple(x, n)).collect();
        self.order / image.len()
    }
}

/// Same profile computed from invariant factors.
pub fn torsion_profile(g: &FinAbGroup, order: usize) -> Vec<usize> {
    assert_eq!(g.free_rank(), 0);
    (1..=order)
        .map(|d| {
            g.invariant_factors()
                .iter()
                .map(|f| f.to_usize().unwrap().gcd(&d))
                .product()
        })
        .collect()
}

/// Grothendieck group by union-find over pairs.
pub fn pair_quotient(m: &FiniteCommMonoid) -> (Vec<usize>, TableGroup) {
    let n = m.size();
    let mut uf = UnionFind::new(n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if (0..n).any(|k| m.op(m.op(a, d), k) == m.op(m.op(c, b), k)) {
                        uf.union(a * n + b, c * n + d);
                    }
                }
            }
        }
    }
    let (class, count) = uf.labels();
    let mut rep = vec![usize::MAX; count];
    for (p, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = p;
        }
    }
    let add = (0..count)
        .map(|x| {
            (0..count)
                .map(|y| {
                    let (a, b) = (rep[x] / n, rep[x] % n);
                    let (c, d) = (rep[y] / n, rep[y] % n);
                    class[m.op(a, c) * n + m.op(b, d)]
                })
                .collect()
        })
        .collect();
    let zero = class[m.unit() * n + m.unit()];
    (
        class,
        TableGroup {
            order: count,
            zero,
            add,
        },
    )
}

/// Connected components of an undirected graph on `n` vertices.
pub fn component_count(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> usize {
    let mut uf = UnionFind::new(n);
    for (a, b) in edges {
        uf.union(a, b);
    }
    uf.labels().1
}

pub fn det(m: &[Vec<i128>]) -> i128 {
    // Bareiss fraction-free elimination.
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k = gcd of k×k minors / gcd of (k−1)×(k−1) minors`, zero past the rank.
pub fn determinantal_invariants(m: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (m.len(), m[0].len());
    let mut gcds = vec![1i128];
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        gcds.push(g);
    }
    (1..gcds.len())
        .map(|k| if gcds[k] == 0 { 0 } else { gcds[k] / gcds[k - 1] })
        .collect()
}

pub type Images = Vec<usize>;

pub fn compose(p: &Images, q: &Images) -> Images {
    q.iter().map(|&x| p[x]).collect()
}

pub fn inverse(p: &Images) -> Images {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// All products of the generators.
pub fn closure(degree: usize, gens: &[Images]) -> BTreeSet<Images> {
    let id: Images = (0..degree).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Order of the subgroup generated by all commutators.
pub fn commutator_subgroup_order(degree: usize, gens: &[Images]) -> usize {
    let elems: Vec<Images> = closure(degree, gens).into_iter().collect();
    let comms: BTreeSet<Images> = elems
        .iter()
        .flat_map(|a| {
            elems
                .iter()
                .map(move |b| compose(&compose(&inverse(a), &inverse(b)), &compose(a, b)))
        })
        .collect();
    closure(degree, &comms.into_iter().collect::<Vec<_>>()).len()
}

/// Order of the normal closure of the generator commutators, which is `[G, G]`.
pub fn derived_order_by_normal_closure(degree: usize, gens: &[Images]) -> usize {
    let mut seeds: BTreeSet<Images> = BTreeSet::new();
    for a in gens {
        for b in gens {
            seeds.insert(compose(&compose(&inverse(a), &inverse(b)), &compose(a, b)));
        }
    }
    let mut queue: VecDeque<Images> = seeds.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&compose(g, &x), &inverse(g));
            if seeds.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    closure(degree, &seeds.into_iter().collect::<Vec<_>>()).len()
}

pub fn symmetric_generators(n: usize) -> Vec<Images> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Images = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
    }
    if n >= 3 {
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    gens
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Finite abelian groups of order up to 6 as monoids, including `Z/2 × Z/2`.
pub fn small_abelian_groups() -> Vec<FiniteCommMonoid> {
    let mut out: Vec<FiniteCommMonoid> = (1..=6).map(FiniteCommMonoid::cyclic_group).collect();
    let z2 = FiniteCommMonoid::cyclic_group(2);
    out.push(z2.product(&z2));
    out.push(z2.product(&FiniteCommMonoid::cyclic_group(3)));
    out
}
