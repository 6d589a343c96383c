use std::collections::BTreeMap;

use super::{FiniteCategory, Morphism};
use crate::monoid::{hom_check, FiniteCommMonoid, MonoidHom};
use crate::{Error, Result};

/// Category of a monoid `a` acting on a finite set: one morphism `(t, x): x -> t.x`
/// per pair, composed by `(s, t.x) ∘ (t, x) = (s + t, x)`.
///
/// Morphisms are ordered by source, then by acting element.
fn action_category(a: &FiniteCommMonoid, objects: Vec<String>, act: impl Fn(usize, usize) -> usize) -> FiniteCategory {
    let (n, s) = (objects.len(), a.size());
    let idx = |t: usize, x: usize| x * s + t;
    let mut morphisms = Vec::with_capacity(n * s);
    for x in 0..n {
        for t in 0..s {
            morphisms.push(Morphism {
                label: a.label(t).to_string(),
                source: x,
                target: act(t, x),
            });
        }
    }
    let mut composition = BTreeMap::new();
    for x in 0..n {
        for t in 0..s {
            let y = morphisms[idx(t, x)].target;
            for u in 0..s {
                composition.insert((idx(u, y), idx(t, x)), idx(a.op(u, t), x));
            }
        }
    }
    let identities = (0..n).map(|x| idx(a.unit(), x)).collect();
    FiniteCategory::from_parts(objects, morphisms, identities, composition)
}

fn tuple_label(m: &FiniteCommMonoid, xs: &[usize]) -> String {
    if let [x] = xs {
        return m.label(*x).to_string();
    }
    let parts: Vec<&str> = xs.iter().map(|&x| m.label(x)).collect();
    format!("({})", parts.join(","))
}

/// `𝐄M`: objects `M`, a morphism `t: x -> t + x` for every `t`.
pub fn action_cat(m: &FiniteCommMonoid) -> FiniteCategory {
    action_category(m, m.labels().to_vec(), |t, x| m.op(t, x))
}

/// `𝐁M`: one object with endomorphisms `M`.
pub fn classifying_cat(m: &FiniteCommMonoid) -> FiniteCategory {
    action_category(m, vec!["*".into()], |_, _| 0)
}

/// Objects `M^{k+1}`, with `t` acting diagonally.
pub fn gk_cat(m: &FiniteCommMonoid, k: usize) -> FiniteCategory {
    let n = m.size();
    let arity = k + 1;
    let count = n.pow(arity as u32);
    let decode = |mut code: usize| {
        let mut xs = vec![0; arity];
        for slot in xs.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        xs
    };
    let encode = |xs: &[usize]| xs.iter().fold(0, |acc, &x| acc * n + x);
    let objects = (0..count).map(|c| tuple_label(m, &decode(c))).collect();
    action_category(m, objects, |t, c| {
        let xs: Vec<usize> = decode(c).into_iter().map(|x| m.op(t, x)).collect();
        encode(&xs)
    })
}

/// `𝐆M`: pairs acted on diagonally.
pub fn double_action_cat(m: &FiniteCommMonoid) -> FiniteCategory {
    gk_cat(m, 1)
}

/// Objects of `double_action_cat` in the order `(x, y) -> x * |M| + y`.
pub fn pair_index(m: &FiniteCommMonoid, x: usize, y: usize) -> usize {
    x * m.size() + y
}

/// `𝐄(f)`: objects `N`, a morphism `x: y -> f(x) + y` for every `x ∈ M`.
pub fn relative_e(f: &MonoidHom) -> Result<FiniteCategory> {
    if !hom_check(f) {
        return Err(Error::NotAHomomorphism(
            "the map does not preserve the monoid structure".into(),
        ));
    }
    let t = &f.target;
    Ok(action_category(&f.source, t.labels().to_vec(), |x, y| {
        t.op(f.apply(x), y)
    }))
}

/// `𝐆(f) = 𝐄(M_f)` with `M_f: M × N -> N × N, (x, y) -> (f(x) + y, y)`.
pub fn relative_g(f: &MonoidHom) -> Result<FiniteCategory> {
    if !hom_check(f) {
        return Err(Error::NotAHomomorphism(
            "the map does not preserve the monoid structure".into(),
        ));
    }
    let (s, t) = (&f.source, &f.target);
    let nt = t.size();
    let acting = s.product(t);
    let pairs = t.product(t);
    let mf = MonoidHom {
        source: acting,
        target: pairs,
        map: (0..s.size() * nt)
            .map(|c| {
                let (x, y) = (c / nt, c % nt);
                t.op(f.apply(x), y) * nt + y
            })
            .collect(),
    };
    relative_e(&mf)
}

/// `𝐄(n·)` for a finite monoid.
pub fn fin_coeff_cat_discrete(m: &FiniteCommMonoid, n: usize) -> Result<FiniteCategory> {
    if n < 2 {
        return Err(Error::invalid("the coefficient n must be at least 2"));
    }
    relative_e(&MonoidHom::multiplication(m, n))
}
