mod common;

use std::sync::OnceLock;

use common::*;
use kgroup::abgrp::{ab_colimit, cokernel, smith_normal_form, AbDiagram, AbPresentation, FinAbGroup, IntMatrix};
use kgroup::actcat::{action_cat, classifying_cat, double_action_cat, gk_cat, relative_e, relative_g, FiniteCategory};
use kgroup::fingrp::{
    determinant_mod, vector_from_index, vector_index, Abelianization, FiniteGroupSpec, Perm, DEFAULT_CAP,
};
use kgroup::kcalc::{
    cofinality_check, k0, k1, k1_diagram, k_finite_coefficients, liscompletion_check, CoefficientInput, SubSelection,
    Verdict,
};
use kgroup::monoid::{
    grothendieck_group, grothendieck_group_finite, hom_check, library, stably_equivalent, CommMonoidPres,
    FiniteCommMonoid, MonoidHom,
};
use kgroup::smgpd::{fin_bij, free_mod, nat, EnumeratedGroupoid, SmInput};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// `I + c·e_ij` with `i ≠ j`, as a list of `(i, j, c)` steps.
fn elementary_steps(n: usize) -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0..n, 0..n, -3i64..=3), 0..4)
        .prop_map(|v| v.into_iter().filter(|&(i, j, _)| i != j).collect())
}

fn elementary(n: usize, steps: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(i, j, c) in steps {
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(c));
        u = e.mul(&u);
    }
    u
}

fn elementary_inverse(n: usize, steps: &[(usize, usize, i64)]) -> IntMatrix {
    let inv: Vec<(usize, usize, i64)> = steps.iter().rev().map(|&(i, j, c)| (i, j, -c)).collect();
    elementary(n, &inv)
}

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn permute_rows(rows: &[Vec<i64>], p: &[usize]) -> Vec<Vec<i64>> {
    p.iter().map(|&i| rows[i].clone()).collect()
}

fn permute_cols(rows: &[Vec<i64>], p: &[usize]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| p.iter().map(|&j| r[j]).collect()).collect()
}

/// `|Z^r / column span|` by counting components of `(Z/d)^r` under the
/// column translations, `d` the gcd of the maximal minors.
fn coset_count(rows: &[Vec<i64>]) -> Option<usize> {
    let r = rows.len();
    let invariants = determinantal_invariants(rows);
    if invariants.len() < r || invariants.contains(&0) {
        return None;
    }
    let d = invariants.iter().product::<i128>() as usize;
    let points = d.checked_pow(r as u32).filter(|&p| p <= 200_000)?;
    let encode = |v: &[usize]| v.iter().fold(0, |acc, &x| acc * d + x);
    let cols = rows[0].len();
    let edges = (0..points).flat_map(|code| {
        let mut v = vec![0; r];
        let mut c = code;
        for i in (0..r).rev() {
            v[i] = c % d;
            c /= d;
        }
        (0..cols)
            .map(|j| {
                let w: Vec<usize> = (0..r)
                    .map(|i| (v[i] as i64 + rows[i][j]).rem_euclid(d as i64) as usize)
                    .collect();
                (code, encode(&w))
            })
            .collect::<Vec<_>>()
    });
    Some(component_count(points, edges))
}

fn monoids_up_to_4() -> &'static [FiniteCommMonoid] {
    static CELL: OnceLock<Vec<FiniteCommMonoid>> = OnceLock::new();
    CELL.get_or_init(|| library::all_monoids_up_to(4))
}

/// Monoids of size at most 6: all of size at most 5 and products reaching 6.
fn monoids_up_to_6() -> &'static [FiniteCommMonoid] {
    static CELL: OnceLock<Vec<FiniteCommMonoid>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut all = library::all_monoids_up_to(5);
        let twos = library::all_monoids(2);
        let threes = library::all_monoids(3);
        for a in &twos {
            for b in &threes {
                all.push(a.product(b));
            }
        }
        for m in library::all_monoids(5) {
            all.push(library::with_absorbing(&m));
            all.push(library::with_new_unit(&m));
        }
        all.extend(library::curated_monoids());
        all
    })
}

fn any_monoid() -> impl Strategy<Value = FiniteCommMonoid> {
    (0..monoids_up_to_4().len()).prop_map(|i| monoids_up_to_4()[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_transforms_and_chain(rows in matrix(5, 5, 9)) {
        let m = int_matrix(&rows);
        let f = smith_normal_form(&m);
        prop_assert_eq!(f.u.mul(&m).mul(&f.v), f.s.clone());
        prop_assert!(f.u.is_unimodular() && f.v.is_unimodular());
        let d = f.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0].is_positive() || w[0].is_zero());
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
    }

    #[test]
    fn cokernel_is_isomorphism_invariant(
        (rows, pr, pc, su, sv) in matrix(4, 4, 6).prop_flat_map(|rows| {
            let (r, c) = (rows.len(), rows[0].len());
            (Just(rows), permutation(r), permutation(c), elementary_steps(r), elementary_steps(c))
        })
    ) {
        let base = cokernel(&int_matrix(&rows));
        let permuted = permute_cols(&permute_rows(&rows, &pr), &pc);
        prop_assert_eq!(cokernel(&int_matrix(&permuted)), base.clone());
        let (r, c) = (rows.len(), rows[0].len());
        let moved = elementary(r, &su).mul(&int_matrix(&rows)).mul(&elementary(c, &sv));
        prop_assert_eq!(cokernel(&moved), base);
    }

    #[test]
    fn one_node_colimit_is_the_node(rows in matrix(4, 4, 6)) {
        let p = AbPresentation::new(rows.len(), int_matrix(&rows)).unwrap();
        let mut d = AbDiagram::new();
        d.add_node(p.clone());
        prop_assert_eq!(ab_colimit(&d).unwrap().group, p.group());
    }

    #[test]
    fn colimit_invariant_under_subdivision(
        (ra, f, rb, steps) in (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| (
            prop::collection::vec(prop::collection::vec(-4i64..=4, 2), a),
            prop::collection::vec(prop::collection::vec(-3i64..=3, a), b),
            prop::collection::vec(prop::collection::vec(-4i64..=4, 1), b),
            elementary_steps(a),
        ))
    ) {
        let a = ra.len();
        let fm = int_matrix(&f);
        let rel_a = int_matrix(&ra);
        let rel_b = IntMatrix::hstack(f.len(), &[&fm.mul(&rel_a), &int_matrix(&rb)]);
        let pa = AbPresentation::new(a, rel_a.clone()).unwrap();
        let pb = AbPresentation::new(f.len(), rel_b).unwrap();

        let mut direct = AbDiagram::new();
        let (x, y) = (direct.add_node(pa.clone()), direct.add_node(pb.clone()));
        direct.add_arrow(x, y, fm.clone());

        let u = elementary(a, &steps);
        let pc = AbPresentation::new(a, u.mul(&rel_a)).unwrap();
        let mut split = AbDiagram::new();
        let (x, z, y) = (split.add_node(pa), split.add_node(pc), split.add_node(pb));
        split.add_arrow(x, z, u);
        split.add_arrow(z, y, fm.mul(&elementary_inverse(a, &steps)));
        prop_assert!(split.validate().is_ok());
        prop_assert_eq!(ab_colimit(&split).unwrap().group, ab_colimit(&direct).unwrap().group);
    }

    #[test]
    fn finite_cokernel_matches_coset_count(rows in matrix(4, 4, 5)) {
        let g = cokernel(&int_matrix(&rows));
        if let Some(count) = coset_count(&rows) {
            prop_assert_eq!(g.order(), Some(BigInt::from(count)));
        } else {
            let invariants = determinantal_invariants(&rows);
            let finite = invariants.len() == rows.len() && !invariants.contains(&0);
            prop_assert_eq!(g.is_finite(), finite);
        }
    }

    #[test]
    fn enumeration_is_closed_and_deterministic(
        (n, gens) in (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(permutation(n), 1..=3)))
    ) {
        let perms: Vec<Perm> = gens.iter().map(|g| Perm::from_images(g.iter().map(|&x| x as u32).collect()).unwrap()).collect();
        let spec = FiniteGroupSpec::new(n, perms).unwrap();
        let g = spec.enumerate(DEFAULT_CAP).unwrap();
        let again = spec.enumerate(DEFAULT_CAP).unwrap();
        prop_assert_eq!(g.elements(), again.elements());
        prop_assert_eq!(g.order(), closure(n, &gens).len());
        for a in g.elements() {
            for b in g.elements() {
                prop_assert!(g.contains(&a.compose(b)));
            }
        }
        let ab = Abelianization::compute(&g);
        let ab_order = ab.group.order().unwrap().to_usize().unwrap();
        prop_assert_eq!(g.order() % ab_order, 0);
        prop_assert_eq!(ab_order * derived_order_by_normal_closure(n, &gens), g.order());
        for a in g.generators() {
            for b in g.generators() {
                let ab_ = g.index_of(&a.compose(b)).unwrap();
                let ba = g.index_of(&b.compose(a)).unwrap();
                prop_assert_eq!(ab.coords(ab_), ab.coords(ba));
            }
        }
    }

    #[test]
    fn abelianization_of_abelian_group(lengths in prop::collection::vec(1usize..=4, 1..=3)) {
        let degree: usize = lengths.iter().sum();
        let mut start = 0;
        let mut perms = Vec::new();
        for &l in &lengths {
            let cycle: Vec<u32> = (start as u32..(start + l) as u32).collect();
            perms.push(Perm::from_cycles(degree, &[cycle]).unwrap());
            start += l;
        }
        let orders: Vec<BigInt> = lengths.iter().map(|&l| BigInt::from(l)).collect();
        let spec = FiniteGroupSpec::new(degree, perms).unwrap();
        let ab = Abelianization::compute(&spec.enumerate(DEFAULT_CAP).unwrap());
        prop_assert_eq!(ab.group, FinAbGroup::from_cyclic_orders(0, &orders));
    }

    #[test]
    fn grothendieck_routes_agree_up_to_six(i in 0usize..1_000_000) {
        let all = monoids_up_to_6();
        let m = &all[i % all.len()];
        let c = grothendieck_group_finite(m).unwrap();
        let (_, oracle) = pair_quotient(m);
        prop_assert_eq!(c.class_count, oracle.order);
        prop_assert_eq!(torsion_profile(&c.group, oracle.order), oracle.torsion_profile());
        prop_assert_eq!(grothendieck_group(&CommMonoidPres::from_table(m)), c.group);
    }

    #[test]
    fn unit_section_is_universal(m in any_monoid(), a in 0usize..8) {
        let target = small_abelian_groups().swap_remove(a);
        if m.size() > 3 {
            return Ok(());
        }
        let c = grothendieck_group_finite(&m).unwrap();
        let n = m.size();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(c.unit_section[m.op(x, y)], c.class_table[c.unit_section[x]][c.unit_section[y]]);
            }
        }
        let t = target.size();
        let neg = |v: usize| (0..t).find(|&w| target.op(v, w) == target.unit()).unwrap();
        for code in 0..t.pow(n as u32) {
            let f: Vec<usize> = (0..n).map(|i| code / t.pow(i as u32) % t).collect();
            let hom = MonoidHom::new(m.clone(), target.clone(), f.clone()).unwrap();
            if !hom_check(&hom) {
                continue;
            }
            let mut phi = vec![None; c.class_count];
            for x in 0..n {
                for y in 0..n {
                    let v = target.op(f[x], neg(f[y]));
                    let slot = &mut phi[c.difference(n, x, y)];
                    prop_assert!(slot.is_none_or(|w| w == v), "map does not factor");
                    *slot = Some(v);
                }
            }
            let phi: Vec<usize> = phi.into_iter().map(Option::unwrap).collect();
            for p in 0..c.class_count {
                for q in 0..c.class_count {
                    prop_assert_eq!(phi[c.class_table[p][q]], target.op(phi[p], phi[q]));
                }
            }
        }
    }

    #[test]
    fn stable_equivalence_is_a_congruence(m in any_monoid()) {
        let n = m.size();
        let sim = |x: usize, y: usize| stably_equivalent(&m, x, y).is_some();
        for x in 0..n {
            prop_assert!(sim(x, x));
            for y in 0..n {
                prop_assert_eq!(sim(x, y), sim(y, x));
                for z in 0..n {
                    if sim(x, y) {
                        prop_assert!(sim(m.op(x, z), m.op(y, z)));
                        if sim(y, z) {
                            prop_assert!(sim(x, z));
                        }
                    }
                }
            }
        }
        let c = grothendieck_group_finite(&m).unwrap();
        prop_assert_eq!(Some(BigInt::from(c.class_count)), c.group.order());
    }

    #[test]
    fn categories_satisfy_axioms(m in any_monoid(), k in 0usize..=2) {
        let cats: Vec<FiniteCategory> = vec![
            action_cat(&m),
            classifying_cat(&m),
            gk_cat(&m, k),
            double_action_cat(&m),
            relative_e(&MonoidHom::to_trivial(&m)).unwrap(),
            relative_g(&MonoidHom::identity(&m)).unwrap(),
        ];
        for c in &cats {
            prop_assert!(c.validate().is_ok());
        }
    }

    #[test]
    fn components_of_pairs_are_the_completion(m in any_monoid()) {
        let n = m.size();
        let c = grothendieck_group_finite(&m).unwrap();
        let g = double_action_cat(&m);
        let cc = g.components();
        prop_assert_eq!(cc.count, c.class_count);
        let unit = cc.component_of[m.unit() * n + m.unit()];
        for p in 0..n * n {
            for q in 0..n * n {
                prop_assert_eq!(cc.component_of[p] == cc.component_of[q], c.class_of[p] == c.class_of[q]);
            }
            let (x, y) = (p / n, p % n);
            prop_assert_eq!(cc.component_of[p] == unit, stably_equivalent(&m, x, y).is_some());
        }
        for comp in 0..cc.count {
            let members = cc.members(comp);
            let h = g.h1_component(members[0]).unwrap();
            for &b in &members[1..] {
                prop_assert_eq!(g.h1_component(b).unwrap(), h.clone());
            }
        }
    }

    #[test]
    fn relative_special_cases(m in any_monoid()) {
        prop_assert_eq!(relative_e(&MonoidHom::identity(&m)).unwrap(), action_cat(&m));
        prop_assert_eq!(relative_e(&MonoidHom::to_trivial(&m)).unwrap().object_count(), 1);
    }

    #[test]
    fn discrete_routes_agree(m in any_monoid(), n in 2u64..=5) {
        let r = k_finite_coefficients(&CoefficientInput::Finite(m.clone()), n, DEFAULT_CAP).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Pass);
        let c = grothendieck_group_finite(&m).unwrap();
        prop_assert_eq!(liscompletion_check(&m).unwrap().components, c.class_count);
    }

    #[test]
    fn identity_selection_is_cofinal(m in any_monoid()) {
        let all: Vec<usize> = (0..m.size()).collect();
        let r = cofinality_check(&SmInput::from(m), &SubSelection::Elements(all), DEFAULT_CAP).unwrap();
        prop_assert!(r.k0_map.iso() && r.k1_map.iso());
    }
}

#[test]
fn classifying_category_of_cyclic_groups() {
    for n in 1..=4 {
        let b = classifying_cat(&FiniteCommMonoid::cyclic_group(n));
        assert_eq!(b.h1_component(0).unwrap(), FinAbGroup::cyclic(n as u64), "n = {n}");
    }
}

#[test]
fn symmetric_abelianizations() {
    for n in 0..=7 {
        let ab = Abelianization::compute(&FiniteGroupSpec::symmetric(n).enumerate(DEFAULT_CAP).unwrap());
        let gens = symmetric_generators(n);
        let expected = factorial(n) / derived_order_by_normal_closure(n.max(1), &gens);
        assert_eq!(ab.group.order(), Some(BigInt::from(expected)), "n = {n}");
        assert_eq!(expected, if n >= 2 { 2 } else { 1 });
    }
}

#[test]
fn group_inputs_are_grouplike() {
    for g in small_abelian_groups() {
        let (_, oracle) = pair_quotient(&g);
        let input = SmInput::from(g.clone());
        let r0 = k0(&input).unwrap();
        assert_eq!(oracle.order, g.size());
        assert_eq!(torsion_profile(&r0.group, g.size()), oracle.torsion_profile());
        assert!(k1(&input, DEFAULT_CAP).unwrap().group.is_trivial());
    }
}

#[test]
fn builtins_satisfy_presentation_invariants() {
    for n in 1..=6 {
        fin_bij(n).check_shape().unwrap();
        nat(n).check_shape().unwrap();
        EnumeratedGroupoid::new(&fin_bij(n), DEFAULT_CAP).unwrap();
    }
    for (m, top) in [(2, 3), (3, 2), (4, 2)] {
        for n in 1..=top {
            free_mod(m, n, DEFAULT_CAP).unwrap().check_shape().unwrap();
        }
    }
}

#[test]
fn fin_translations_preserve_sign() {
    let p = fin_bij(6);
    for t in &p.translations {
        let source = p.automorphisms(&t.source).unwrap();
        for (g, image) in source.generators.iter().zip(&t.images) {
            let parity = |q: &Perm| q.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2;
            assert_eq!(parity(g), parity(image));
        }
    }
}

/// Matrix of a linear permutation of `(Z/m)^n` from the images of the basis.
fn recover_matrix(p: &Perm, n: usize, m: u64) -> Vec<Vec<u64>> {
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let e: Vec<u64> = (0..n).map(|i| u64::from(i == j)).collect();
            vector_from_index(p.apply(vector_index(&e, m) as u32) as usize, n, m)
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

#[test]
fn free_mod_translations_preserve_determinant() {
    for (m, top) in [(2u64, 3usize), (3, 2)] {
        let p = free_mod(m, top, DEFAULT_CAP).unwrap();
        for t in &p.translations {
            let n = t.source[0] as usize;
            let source = p.automorphisms(&t.source).unwrap();
            for (g, image) in source.generators.iter().zip(&t.images) {
                let before = determinant_mod(&recover_matrix(g, n, m), m);
                let after = determinant_mod(&recover_matrix(image, n + 1, m), m);
                assert_eq!(before, after, "m = {m}, n = {n}");
            }
        }
    }
}

#[test]
fn k1_is_consistent_under_truncation() {
    let families: Vec<Box<dyn Fn(usize) -> kgroup::smgpd::SMGroupoidPres>> = vec![
        Box::new(fin_bij),
        Box::new(nat),
        Box::new(|n| free_mod(2, n, DEFAULT_CAP).unwrap()),
        Box::new(|n| free_mod(3, n, DEFAULT_CAP).unwrap()),
    ];
    let tops = [6, 5, 4, 3];
    for (family, top) in families.iter().zip(tops) {
        let mut previous: Option<(FinAbGroup, AbDiagram)> = None;
        for n in 1..=top {
            let e = EnumeratedGroupoid::new(&family(n), DEFAULT_CAP).unwrap();
            let abs: Vec<Abelianization> = (0..=n).map(|i| Abelianization::compute(e.group(i))).collect();
            let d = k1_diagram(&e, &abs, (0..=n).collect(), &[vec![1]]).diagram;
            let r = k1(&SmInput::from(family(n)), DEFAULT_CAP).unwrap();
            if let Some((group, smaller)) = &previous {
                assert_eq!(&d.nodes[..smaller.nodes.len()], &smaller.nodes[..]);
                assert!(smaller.arrows.iter().all(|a| d.arrows.contains(a)));
                if r.stability == Some(true) {
                    assert_eq!(&r.group, group);
                }
            }
            previous = Some((r.group, d));
        }
    }
}

#[test]
fn free_groupoid_identity_selection_is_cofinal() {
    for n in 2..=5 {
        let r = cofinality_check(
            &SmInput::from(fin_bij(n)),
            &SubSelection::Generated(vec![vec![1]]),
            DEFAULT_CAP,
        )
        .unwrap();
        assert!(r.k0_map.iso() && r.k1_map.iso(), "N = {n}");
    }
}
