//! `⟨S,S⟩`, `S⁻¹S`, `𝐁𝐢𝐧` and `𝐄(n·)` for a single-generator groupoid,
//! with morphisms given as `Aut(k)`-orbits of tuples of isomorphisms.
//!
//! The object `k ⊗ x` is laid out as the blocks of `k` followed by those
//! of `x`, so `φ ∈ Aut(k)` acts on it by `T^x(φ)`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use super::{action, FiniteCategory, Morphism};
use crate::fingrp::{Group, Perm};
use crate::smgpd::{check_condition_star, EnumeratedGroupoid, SmInput};
use crate::{Error, Result};

/// Block operations on a single-generator groupoid. Object `d` has index `d`.
pub(crate) struct Blocks<'a> {
    e: &'a EnumeratedGroupoid,
    cache: RefCell<HashMap<Vec<u32>, usize>>,
}

impl<'a> Blocks<'a> {
    pub(crate) fn new(e: &'a EnumeratedGroupoid, what: &str) -> Result<Self> {
        e.require_single_generator(what)?;
        Ok(Blocks {
            e,
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub(crate) fn group(&self, d: usize) -> &Group {
        self.e.group(d)
    }

    /// Image of the block permutation `pi` (block `i` moves to position `pi(i)`).
    fn realize(&self, images: Vec<u32>) -> usize {
        if let Some(&a) = self.cache.borrow().get(&images) {
            return a;
        }
        let m = images.len();
        let p = Perm::from_images(images.clone()).expect("block permutation");
        let a = self.e.symmetry_image(m, &p).expect("within truncation");
        self.cache.borrow_mut().insert(images, a);
        a
    }

    /// `a ⊗ id_q` for `a ∈ Aut(p)`.
    pub(crate) fn first(&self, a: usize, p: usize, q: usize) -> usize {
        self.e.lift(p, q, a)
    }

    /// `id_p ⊗ b` for `b ∈ Aut(q)`.
    pub(crate) fn last(&self, b: usize, p: usize, q: usize) -> usize {
        if p == 0 {
            return b;
        }
        let rot: Vec<u32> = (0..q).map(|i| (p + i) as u32).chain((0..p).map(|j| j as u32)).collect();
        let r = self.realize(rot);
        let g = self.group(p + q);
        g.mul(g.mul(r, self.first(b, q, p)), g.inverse(r))
    }

    /// `φ ⊕ .. ⊕ φ` (`n` copies) for `φ ∈ Aut(k)`.
    pub(crate) fn diagonal(&self, phi: usize, k: usize, n: usize) -> usize {
        let g = self.group(n * k);
        (0..n).fold(g.identity(), |acc, j| {
            let placed = self.last(self.first(phi, k, (n - 1 - j) * k), j * k, (n - j) * k);
            g.mul(acc, placed)
        })
    }

    /// The isomorphism `(k' ⊗ k)^n ⊗ x -> k'^n ⊗ k^n ⊗ x`.
    fn shuffle(&self, k2: usize, k1: usize, n: usize, x: usize) -> usize {
        let block = k1 + k2;
        let mut images = Vec::with_capacity(n * block + x);
        for j in 0..n {
            images.extend((0..k2).map(|u| (j * k2 + u) as u32));
            images.extend((0..k1).map(|v| (n * k2 + j * k1 + v) as u32));
        }
        images.extend((0..x).map(|i| (n * block + i) as u32));
        self.realize(images)
    }
}

struct HomSet {
    k: usize,
    /// Morphism id for every tuple, by mixed-radix code.
    class_of: Vec<usize>,
}

fn decode(mut code: usize, radix: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radix.len()];
    for (slot, &r) in out.iter_mut().zip(radix).rev() {
        *slot = code % r;
        code /= r;
    }
    out
}

fn encode(xs: &[usize], radix: &[usize]) -> usize {
    xs.iter().zip(radix).fold(0, |acc, (&x, &r)| acc * r + x)
}

/// Orbit category on tuples of degrees. A morphism `x -> y` exists when
/// `y_c = n·k + x_c` for a common `k`, and is an orbit of tuples
/// `(α_c ∈ Aut(y_c))` under `φ ∈ Aut(k)` acting by `α_c ∘ (Δ_n(φ) ⊗ id)`.
pub(crate) fn orbit_category(b: &Blocks, objects: &[Vec<usize>], labels: Vec<String>, n: usize) -> FiniteCategory {
    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut homs: HashMap<(usize, usize), HomSet> = HashMap::new();
    let radix = |y: &[usize]| -> Vec<usize> { y.iter().map(|&d| b.group(d).order()).collect() };
    for (xi, x) in objects.iter().enumerate() {
        for (yi, y) in objects.iter().enumerate() {
            let Some(k) = common_step(x, y, n) else { continue };
            let rad = radix(y);
            let acting: Vec<Vec<usize>> = (0..b.group(k).order())
                .map(|phi| {
                    let d = b.diagonal(phi, k, n);
                    x.iter().map(|&xc| b.first(d, n * k, xc)).collect()
                })
                .collect();
            let total: usize = rad.iter().product();
            let mut class_of = vec![usize::MAX; total];
            for code in 0..total {
                if class_of[code] != usize::MAX {
                    continue;
                }
                let id = morphisms.len();
                let alpha = decode(code, &rad);
                let parts: Vec<String> = alpha
                    .iter()
                    .zip(y)
                    .map(|(&a, &d)| b.group(d).element(a).to_string())
                    .collect();
                morphisms.push(Morphism {
                    label: format!("{k};{}", parts.join(";")),
                    source: xi,
                    target: yi,
                });
                for p in &acting {
                    let moved: Vec<usize> = alpha
                        .iter()
                        .zip(p)
                        .zip(y)
                        .map(|((&a, &h), &d)| b.group(d).mul(a, h))
                        .collect();
                    class_of[encode(&moved, &rad)] = id;
                }
            }
            homs.insert((xi, yi), HomSet { k, class_of });
        }
    }

    let identities = objects
        .iter()
        .enumerate()
        .map(|(xi, x)| {
            let ids: Vec<usize> = x.iter().map(|&d| b.group(d).identity()).collect();
            homs[&(xi, xi)].class_of[encode(&ids, &radix(x))]
        })
        .collect();

    let mut reps: Vec<Vec<usize>> = vec![Vec::new(); morphisms.len()];
    for (&(_, yi), h) in &homs {
        let rad = radix(&objects[yi]);
        for (code, &c) in h.class_of.iter().enumerate() {
            if reps[c].is_empty() {
                reps[c] = decode(code, &rad);
            }
        }
    }

    let mut composition = BTreeMap::new();
    for (f, mf) in morphisms.iter().enumerate() {
        let (xi, yi) = (mf.source, mf.target);
        let k = homs[&(xi, yi)].k;
        for (g, mg) in morphisms.iter().enumerate().filter(|(_, mg)| mg.source == yi) {
            let zi = mg.target;
            let k2 = homs[&(yi, zi)].k;
            let (x, y, z) = (&objects[xi], &objects[yi], &objects[zi]);
            let gamma: Vec<usize> = (0..x.len())
                .map(|c| {
                    let gz = b.group(z[c]);
                    let lifted = b.last(reps[f][c], n * k2, y[c]);
                    let q = b.shuffle(k2, k, n, x[c]);
                    gz.mul(gz.mul(reps[g][c], lifted), q)
                })
                .collect();
            let h = &homs[&(xi, zi)];
            composition.insert((g, f), h.class_of[encode(&gamma, &radix(z))]);
        }
    }
    FiniteCategory::from_parts(labels, morphisms, identities, composition)
}

fn common_step(x: &[usize], y: &[usize], n: usize) -> Option<usize> {
    let mut k = None;
    for (&a, &b) in x.iter().zip(y) {
        if b < a || (b - a) % n != 0 {
            return None;
        }
        let kc = (b - a) / n;
        if k.is_some_and(|k0| k0 != kc) {
            return None;
        }
        k = Some(kc);
    }
    k
}

fn require_star(e: &EnumeratedGroupoid) -> Result<()> {
    check_condition_star(e).into_result()
}

/// `⟨S,S⟩` on degrees `0..=N`.
pub fn he_cat_enumerated(e: &EnumeratedGroupoid) -> Result<FiniteCategory> {
    let b = Blocks::new(e, "the category ⟨S,S⟩")?;
    require_star(e)?;
    let objects: Vec<Vec<usize>> = (0..=e.truncation()).map(|d| vec![d]).collect();
    let labels = (0..=e.truncation()).map(|d| d.to_string()).collect();
    Ok(orbit_category(&b, &objects, labels, 1))
}

/// `S⁻¹S` on pairs of degrees `0..=N`.
pub fn s1s_cat_enumerated(e: &EnumeratedGroupoid) -> Result<FiniteCategory> {
    let b = Blocks::new(e, "the category S⁻¹S")?;
    require_star(e)?;
    let n = e.truncation();
    let objects: Vec<Vec<usize>> = (0..=n).flat_map(|a| (0..=n).map(move |c| vec![a, c])).collect();
    let labels = objects.iter().map(|o| format!("({},{})", o[0], o[1])).collect();
    Ok(orbit_category(&b, &objects, labels, 1))
}

/// Full subcategory of `S⁻¹S` on the diagonal pairs `(x, x)`.
pub fn bin_cat_enumerated(e: &EnumeratedGroupoid) -> Result<FiniteCategory> {
    let b = Blocks::new(e, "the category Bin")?;
    require_star(e)?;
    let objects: Vec<Vec<usize>> = (0..=e.truncation()).map(|d| vec![d, d]).collect();
    let labels = objects.iter().map(|o| format!("({},{})", o[0], o[1])).collect();
    Ok(orbit_category(&b, &objects, labels, 1))
}

/// `𝐄(n·)` on degrees `0..=N`.
pub fn fin_coeff_cat_enumerated(e: &EnumeratedGroupoid, n: usize) -> Result<FiniteCategory> {
    if n < 2 {
        return Err(Error::invalid("the coefficient n must be at least 2"));
    }
    let b = Blocks::new(e, "the category E(n·)")?;
    require_star(e)?;
    for k in 1..=e.truncation() / n {
        let g = b.group(k);
        let target = b.group(n * k);
        if let Some(phi) = (0..g.order()).find(|&p| p != g.identity() && b.diagonal(p, k, n) == target.identity()) {
            return Err(Error::ConditionStarViolated {
                generator: 0,
                object: vec![k as u32],
                element: g.element(phi).images().to_vec(),
            });
        }
    }
    let objects: Vec<Vec<usize>> = (0..=e.truncation()).map(|d| vec![d]).collect();
    let labels = (0..=e.truncation()).map(|d| d.to_string()).collect();
    Ok(orbit_category(&b, &objects, labels, n))
}

fn enumerate(input: &SmInput, cap: usize) -> Option<Result<EnumeratedGroupoid>> {
    match input {
        SmInput::Groupoid(p) => Some(EnumeratedGroupoid::new(p, cap)),
        SmInput::Discrete(_) => None,
    }
}

pub fn he_cat(input: &SmInput, cap: usize) -> Result<FiniteCategory> {
    match (enumerate(input, cap), input) {
        (Some(e), _) => he_cat_enumerated(&e?),
        (None, SmInput::Discrete(d)) => Ok(action::action_cat(&d.monoid)),
        _ => unreachable!(),
    }
}

pub fn s1s_cat(input: &SmInput, cap: usize) -> Result<FiniteCategory> {
    match (enumerate(input, cap), input) {
        (Some(e), _) => s1s_cat_enumerated(&e?),
        (None, SmInput::Discrete(d)) => Ok(action::double_action_cat(&d.monoid)),
        _ => unreachable!(),
    }
}

pub fn bin_cat(input: &SmInput, cap: usize) -> Result<FiniteCategory> {
    match (enumerate(input, cap), input) {
        (Some(e), _) => bin_cat_enumerated(&e?),
        (None, SmInput::Discrete(d)) => {
            let m = &d.monoid;
            let diag: Vec<usize> = (0..m.size()).map(|x| action::pair_index(m, x, x)).collect();
            Ok(action::double_action_cat(m).full_subcategory(&diag))
        }
        _ => unreachable!(),
    }
}

pub fn fin_coeff_cat(input: &SmInput, n: usize, cap: usize) -> Result<FiniteCategory> {
    match (enumerate(input, cap), input) {
        (Some(e), _) => fin_coeff_cat_enumerated(&e?, n),
        (None, SmInput::Discrete(d)) => action::fin_coeff_cat_discrete(&d.monoid, n),
        _ => unreachable!(),
    }
}
