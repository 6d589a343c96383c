use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::snf::{kernel_basis, smith_normal_form, SmithForm};
use super::IntMatrix;
use crate::{Error, Result};

/// A finitely generated abelian group `Z^free_rank + Z/d1 + ... + Z/dr`
/// with `2 <= d1 | d2 | ... | dr`. Equal values are isomorphic groups.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FinAbGroup {
    free_rank: usize,
    #[serde(serialize_with = "ser_factors")]
    invariant_factors: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawGroup {
    free_rank: usize,
    #[serde(deserialize_with = "de_factors")]
    invariant_factors: Vec<BigInt>,
}

impl TryFrom<RawGroup> for FinAbGroup {
    type Error = Error;

    fn try_from(raw: RawGroup) -> Result<Self> {
        FinAbGroup::new(raw.free_rank, raw.invariant_factors)
    }
}

fn ser_factors<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for d in v {
        match d.to_u64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

fn de_factors<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Factor {
        Num(u64),
        Str(String),
    }
    let raw = Vec::<Factor>::deserialize(d)?;
    raw.into_iter()
        .map(|f| match f {
            Factor::Num(x) => Ok(BigInt::from(x)),
            Factor::Str(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
        })
        .collect()
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FinAbGroup {
                free_rank: 0,
                invariant_factors: vec![BigInt::from(n)],
            },
        }
    }

    /// Validating constructor for an already-canonical description.
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if invariant_factors.iter().any(|d| d < &two) {
            return Err(Error::invalid("invariant factors must be at least 2"));
        }
        if invariant_factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::invalid("invariant factors must form a divisibility chain"));
        }
        Ok(FinAbGroup {
            free_rank,
            invariant_factors,
        })
    }

    /// Canonical form of `Z^free_rank + sum Z/c` for arbitrary cyclic orders `c`
    /// (zero means `Z`, one is dropped).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, c) in orders.iter().enumerate() {
            m.set(i, i, c.abs());
        }
        let g = cokernel(&m);
        FinAbGroup {
            free_rank: g.free_rank + free_rank,
            invariant_factors: g.invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product::<BigInt>())
    }

    /// Number of canonical coordinates: torsion coordinates first, then free.
    pub fn coordinate_count(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Presentation matrix in canonical coordinates.
    pub fn presentation(&self) -> AbPresentation {
        let k = self.coordinate_count();
        let t = self.invariant_factors.len();
        let mut rel = IntMatrix::zeros(k, t);
        for (i, d) in self.invariant_factors.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        AbPresentation {
            generators: k,
            relations: rel,
        }
    }

    /// Sum with another group in canonical form.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Canonical form of a finite abelian group given by its addition table,
    /// computed from element-order statistics in each primary component.
    /// Independent of the Smith normal form code path.
    pub fn from_finite_table(n: usize, zero: usize, add: impl Fn(usize, usize) -> usize) -> Self {
        let orders: Vec<u64> = (0..n)
            .map(|x| {
                let mut acc = x;
                let mut k = 1u64;
                while acc != zero {
                    acc = add(acc, x);
                    k += 1;
                    assert!(k as usize <= n, "table is not a finite group");
                }
                k
            })
            .collect();
        let mut per_prime: Vec<Vec<u32>> = Vec::new();
        let mut primes = Vec::new();
        for p in prime_factors(n as u64) {
            // s_k = log_p |{x : p^k x = 0}|; the number of cyclic factors of
            // exponent >= k is s_k - s_{k-1}.
            let mut s = vec![0u32];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let count = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
                let e = log_exact(count, p);
                let done = e == *s.last().unwrap();
                s.push(e);
                if done {
                    break;
                }
            }
            let at_least: Vec<u32> = s.windows(2).map(|w| w[1] - w[0]).collect();
            let mut exps = Vec::new();
            for (k, w) in at_least.iter().enumerate() {
                let next = at_least.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(w - next) {
                    exps.push(k as u32 + 1);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            per_prime.push(exps);
            primes.push(p);
        }
        let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
        // i-th largest invariant factor collects the i-th largest prime powers.
        let mut factors: Vec<BigInt> = (0..len)
            .map(|i| {
                primes
                    .iter()
                    .zip(&per_prime)
                    .map(|(&p, e)| BigInt::from(p).pow(e.get(i).copied().unwrap_or(0)))
                    .product()
            })
            .collect();
        factors.reverse();
        FinAbGroup {
            free_rank: 0,
            invariant_factors: factors,
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn log_exact(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        assert_eq!(x % p, 0, "count is not a prime power");
        x /= p;
        k += 1;
    }
    k
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Abelian group `Z^generators / column-span(relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbPresentation {
    generators: usize,
    relations: IntMatrix,
}

impl AbPresentation {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::invalid(format!(
                "relation matrix has {} rows, expected {generators}",
                relations.rows()
            )));
        }
        Ok(AbPresentation { generators, relations })
    }

    pub fn free(generators: usize) -> Self {
        AbPresentation {
            generators,
            relations: IntMatrix::zeros(generators, 0),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn group(&self) -> FinAbGroup {
        cokernel(&self.relations)
    }

    pub fn quotient(&self) -> Quotient {
        cokernel_with_map(&self.relations)
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(&self.relations)
    }
}

/// Column span of an integer matrix, with a membership test.
pub struct Lattice {
    snf: SmithForm,
    rank: usize,
}

impl Lattice {
    pub fn new(generators: &IntMatrix) -> Self {
        let snf = smith_normal_form(generators);
        let rank = snf.rank();
        Lattice { snf, rank }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let w = self.snf.u.mul_vec(v);
        w.iter().enumerate().all(|(i, x)| {
            if i < self.rank {
                x.is_multiple_of(self.snf.s.get(i, i))
            } else {
                x.is_zero()
            }
        })
    }
}

/// Cokernel together with the projection onto canonical coordinates.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FinAbGroup,
    /// `coordinate_count x generators`; torsion rows first, then free rows.
    pub projection: IntMatrix,
}

impl Quotient {
    /// Canonical coordinates of a vector in the generators, torsion
    /// coordinates reduced into `[0, d)`.
    pub fn coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut c = self.projection.mul_vec(v);
        for (x, d) in c.iter_mut().zip(self.group.invariant_factors()) {
            *x = x.mod_floor(d);
        }
        c
    }
}

/// `Z^rows / column-span(m)` in canonical form.
pub fn cokernel(m: &IntMatrix) -> FinAbGroup {
    let diag = super::snf::smith_diagonal(m);
    group_from_diagonal(m.rows(), &diag)
}

fn group_from_diagonal(rows: usize, diag: &[BigInt]) -> FinAbGroup {
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    let invariant_factors = diag[..rank].iter().filter(|d| !d.is_one()).cloned().collect();
    FinAbGroup {
        free_rank: rows - rank,
        invariant_factors,
    }
}

pub fn cokernel_with_map(m: &IntMatrix) -> Quotient {
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let group = group_from_diagonal(m.rows(), &diag);
    let rank = snf.rank();
    let mut keep: Vec<usize> = (0..rank).filter(|&i| !diag[i].is_one()).collect();
    keep.extend(rank..m.rows());
    Quotient {
        group,
        projection: snf.u.select_rows(&keep),
    }
}

/// Injectivity and surjectivity of a homomorphism of presented groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomProperties {
    pub injective: bool,
    pub surjective: bool,
}

impl HomProperties {
    pub fn iso(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Checks that `f` (target generators x source generators) sends every
/// relation of `a` into the relations of `b`.
pub fn check_hom(f: &IntMatrix, a: &AbPresentation, b: &AbPresentation) -> Result<()> {
    if f.rows() != b.generators || f.cols() != a.generators {
        return Err(Error::NotAHomomorphism(format!(
            "matrix is {}x{}, expected {}x{}",
            f.rows(),
            f.cols(),
            b.generators,
            a.generators
        )));
    }
    let image = f.mul(&a.relations);
    let lattice = b.lattice();
    for j in 0..image.cols() {
        if !lattice.contains(&image.column(j)) {
            return Err(Error::NotAHomomorphism(format!(
                "relation {j} of the source is not sent to zero"
            )));
        }
    }
    Ok(())
}

pub fn hom_compare(f: &IntMatrix, a: &AbPresentation, b: &AbPresentation) -> Result<HomProperties> {
    check_hom(f, a, b)?;
    let surjective = cokernel(&IntMatrix::hstack(b.generators, &[f, &b.relations])).is_trivial();

    // Kernel of the induced map = {x : f x in span(Rb)} / span(Ra).
    let mut neg_rel = b.relations.clone();
    for i in 0..neg_rel.rows() {
        for j in 0..neg_rel.cols() {
            let x = -neg_rel.get(i, j).clone();
            neg_rel.set(i, j, x);
        }
    }
    let joint = IntMatrix::hstack(b.generators, &[f, &neg_rel]);
    let ker = kernel_basis(&joint);
    let source = a.lattice();
    let injective = (0..ker.cols()).all(|j| {
        let col = ker.column(j);
        source.contains(&col[..a.generators])
    });
    Ok(HomProperties { injective, surjective })
}
