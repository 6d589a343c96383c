//! Exhaustive and curated collections of small commutative monoids.

use super::FiniteCommMonoid;

/// Every commutative monoid table on `{0, .., n-1}` with unit `0`.
///
/// Tables are labeled, not taken up to isomorphism.
pub fn all_monoids(n: usize) -> Vec<FiniteCommMonoid> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![FiniteCommMonoid::trivial()];
    }
    // Free entries: the upper triangle on the non-unit elements.
    let slots: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let total = n.pow(slots.len() as u32);
    let mut out = Vec::new();
    let mut table = vec![vec![0; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        row[0] = i;
    }
    if n > 0 {
        table[0] = (0..n).collect();
    }
    for code in 0..total {
        let mut c = code;
        for &(a, b) in &slots {
            let v = c % n;
            c /= n;
            table[a][b] = v;
            table[b][a] = v;
        }
        if is_associative(&table) {
            out.push(FiniteCommMonoid::from_table(0, table.clone()).expect("checked"));
        }
    }
    out
}

fn is_associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (1..n).all(|a| (1..n).all(|b| (1..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

/// All tables of size at most `n`.
pub fn all_monoids_up_to(n: usize) -> Vec<FiniteCommMonoid> {
    (1..=n).flat_map(all_monoids).collect()
}

/// Hand-picked monoids of size 5 and 6.
pub fn curated_monoids() -> Vec<FiniteCommMonoid> {
    let z = FiniteCommMonoid::cyclic_group;
    let idem = FiniteCommMonoid::idempotent2();
    let mut out = vec![
        z(5),
        z(6),
        z(2).product(&z(3)),
        z(3).product(&idem),
        FiniteCommMonoid::saturating(4),
        FiniteCommMonoid::saturating(5),
        max_semilattice(5),
        max_semilattice(6),
        z(2).product(&FiniteCommMonoid::saturating(2)),
    ];
    // Z/4 with an adjoined absorbing element.
    out.push(with_absorbing(&z(4)));
    // Z/5 with an adjoined new unit (non-cancellative at the unit).
    out.push(with_new_unit(&z(5)));
    out
}

/// `{0, .., n-1}` under `max`.
pub fn max_semilattice(n: usize) -> FiniteCommMonoid {
    let table = (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect();
    FiniteCommMonoid::from_table(0, table).expect("valid")
}

/// `m` plus an element `z` with `z + x = z`.
pub fn with_absorbing(m: &FiniteCommMonoid) -> FiniteCommMonoid {
    let n = m.size();
    let table = (0..=n)
        .map(|a| (0..=n).map(|b| if a == n || b == n { n } else { m.op(a, b) }).collect())
        .collect();
    FiniteCommMonoid::from_table(m.unit(), table).expect("valid")
}

/// A new unit `e` adjoined to a monoid `m` (the old unit becomes an idempotent).
pub fn with_new_unit(m: &FiniteCommMonoid) -> FiniteCommMonoid {
    let n = m.size();
    let table = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| match (a, b) {
                    (0, x) | (x, 0) => x,
                    (a, b) => m.op(a - 1, b - 1) + 1,
                })
                .collect()
        })
        .collect();
    FiniteCommMonoid::from_table(0, table).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        // {0,1}: 1+1 in {0,1} both valid.
        assert_eq!(all_monoids(2).len(), 2);
        assert!(!all_monoids(3).is_empty());
        assert!(all_monoids(4).len() > all_monoids(3).len());
        for m in all_monoids_up_to(4) {
            m.validate().unwrap();
        }
    }

    #[test]
    fn curated_are_valid() {
        for m in curated_monoids() {
            m.validate().unwrap();
            assert!((5..=6).contains(&m.size()));
        }
    }
}
