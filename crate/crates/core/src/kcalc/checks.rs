use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::groups::{abelianizations, k1_diagram, k1_with};
use super::{digest, Verdict};
use crate::abgrp::{ab_colimit, hom_compare, kernel_basis, AbPresentation, FinAbGroup, HomProperties, IntMatrix};
use crate::actcat::{double_action_cat, gk_cat, pair_index, FiniteCategory};
use crate::fingrp::Perm;
use crate::monoid::{grothendieck_group_finite, stably_equivalent, CommMonoidPres, FiniteCommMonoid};
use crate::smgpd::{check_condition_star, total_degree, EnumeratedGroupoid, Multidegree, SmInput};
use crate::{Error, Result};

/// A verdict with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedVerdict {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
}

impl TruncatedVerdict {
    fn plain(verdict: Verdict) -> Self {
        TruncatedVerdict {
            verdict,
            certificate: None,
        }
    }

    fn with(verdict: Verdict, certificate: serde_json::Value) -> Self {
        TruncatedVerdict {
            verdict,
            certificate: Some(certificate),
        }
    }
}

/// First component (if any) whose `H₁` is nonzero, with that group.
fn first_nontrivial_h1(c: &FiniteCategory) -> Result<Option<(usize, FinAbGroup)>> {
    let comps = c.components();
    for k in 0..comps.count {
        let base = comps.members(k)[0];
        let h = c.h1_component(base)?;
        if !h.is_trivial() {
            return Ok(Some((k, h)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiscompletionReport {
    pub input_digest: String,
    pub verdict: Verdict,
    pub components: usize,
    pub group: FinAbGroup,
    pub h1_trivial: bool,
    pub unit_component_is_stable_class: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending_component: Option<usize>,
}

/// Compares `π₀` and `H₁` of `𝐆M` with the Grothendieck group and the
/// stable-equivalence relation.
pub fn liscompletion_check(m: &FiniteCommMonoid) -> Result<LiscompletionReport> {
    let gp = grothendieck_group_finite(m)?;
    let c = double_action_cat(m);
    let comps = c.components();
    let bad_h1 = first_nontrivial_h1(&c)?;
    let n = m.size();
    let unit_comp = comps.component_of[pair_index(m, m.unit(), m.unit())];
    let mut offending = bad_h1.as_ref().map(|(k, _)| *k);
    let mut unit_ok = true;
    for x in 0..n {
        for y in 0..n {
            let in_unit = comps.component_of[pair_index(m, x, y)] == unit_comp;
            if in_unit != stably_equivalent(m, x, y).is_some() {
                unit_ok = false;
                offending.get_or_insert(unit_comp);
            }
        }
    }
    let counts_ok = comps.count == gp.class_count;
    if !counts_ok {
        offending.get_or_insert(comps.count.min(gp.class_count));
    }
    Ok(LiscompletionReport {
        input_digest: digest(m),
        verdict: Verdict::from_bool(counts_ok && bad_h1.is_none() && unit_ok),
        components: comps.count,
        group: gp.group,
        h1_trivial: bad_h1.is_none(),
        unit_component_is_stable_class: unit_ok,
        offending_component: offending,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditivityReport {
    pub input_digest: String,
    pub verdict: Verdict,
    pub k: usize,
    pub components: usize,
    #[serde(serialize_with = "plain_number")]
    pub expected_components: BigInt,
    pub h1_trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offending_component: Option<usize>,
}

fn plain_number<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

/// `|π₀ 𝐆ₖ(M)| = |gp(M)|^k` with `H₁ = 0` on every component.
pub fn additivity_check(m: &FiniteCommMonoid, k: usize) -> Result<AdditivityReport> {
    let gp = grothendieck_group_finite(m)?;
    let c = gk_cat(m, k);
    let comps = c.components();
    let bad = first_nontrivial_h1(&c)?;
    let expected = BigInt::from(gp.class_count).pow(k as u32);
    Ok(AdditivityReport {
        input_digest: digest(m),
        verdict: Verdict::from_bool(BigInt::from(comps.count) == expected && bad.is_none()),
        k,
        components: comps.count,
        expected_components: expected,
        h1_trivial: bad.is_none(),
        offending_component: bad.map(|(c, _)| c),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TelescopeReport {
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    pub verdict: Verdict,
    /// The image of `(0 1 2)` vanishes.
    pub cyclic_triviality: TruncatedVerdict,
    /// The top automorphism group is abelian.
    pub abelian: TruncatedVerdict,
    /// `π₀` of the telescope is the group completion of `π₀`.
    pub pi0_local: TruncatedVerdict,
}

fn combine(parts: &[Verdict]) -> Verdict {
    if parts.iter().any(|v| v.is_failure()) {
        Verdict::FailsWithCertificate
    } else if parts.contains(&Verdict::Unknown) {
        Verdict::Unknown
    } else if parts.contains(&Verdict::HoldsAtN) {
        Verdict::HoldsAtN
    } else {
        Verdict::Pass
    }
}

/// Locality conditions for the sequential telescope along the generator.
pub fn telescope_check(input: &SmInput, cap: usize) -> Result<TelescopeReport> {
    match input {
        SmInput::Discrete(d) => {
            let pi0 = discrete_pi0_locality(&d.monoid)?;
            let trivial = TruncatedVerdict::plain(Verdict::Pass);
            Ok(TelescopeReport {
                input_digest: digest(input),
                truncation: None,
                verdict: combine(&[Verdict::Pass, Verdict::Pass, pi0.verdict]),
                cyclic_triviality: trivial.clone(),
                abelian: trivial,
                pi0_local: pi0,
            })
        }
        SmInput::Groupoid(p) => {
            let e = EnumeratedGroupoid::new(p, cap)?;
            e.require_single_generator("the sequential telescope")?;
            let n = e.truncation();
            let injective = check_condition_star(&e).holds;
            let failure = if injective {
                Verdict::FailsWithCertificate
            } else {
                Verdict::Unknown
            };
            let cyclic = if n < 3 {
                TruncatedVerdict::plain(Verdict::Unknown)
            } else {
                let three_cycle = Perm::from_cycles(3, &[vec![0, 1, 2]]).expect("valid");
                let a = e.symmetry_image(3, &three_cycle)?;
                let top = e.lift(3, n - 3, a);
                let g = e.group(n);
                if top == g.identity() {
                    TruncatedVerdict::plain(Verdict::HoldsAtN)
                } else {
                    TruncatedVerdict::with(failure, json!({ "level": n, "image": g.element(top).to_string() }))
                }
            };
            let g = e.group(n);
            let abelian = match g.noncommuting_generators() {
                None => TruncatedVerdict::plain(Verdict::HoldsAtN),
                Some((i, j)) => TruncatedVerdict::with(
                    failure,
                    json!({
                        "level": n,
                        "generators": [g.generators()[i].to_string(), g.generators()[j].to_string()],
                    }),
                ),
            };
            // ℕ along +1 has colimit ℤ.
            let pi0 = TruncatedVerdict::plain(Verdict::Pass);
            Ok(TelescopeReport {
                input_digest: digest(input),
                truncation: Some(n),
                verdict: combine(&[cyclic.verdict, abelian.verdict, pi0.verdict]),
                cyclic_triviality: cyclic,
                abelian,
                pi0_local: pi0,
            })
        }
    }
}

/// Telescope of `M` along `+s`, `s` the sum of all elements: its `π₀` is the
/// eventual image `s^j + M`, compared with `|gp(M)|`.
fn discrete_pi0_locality(m: &FiniteCommMonoid) -> Result<TruncatedVerdict> {
    let s = (0..m.size()).fold(m.unit(), |acc, x| m.op(acc, x));
    let mut image: BTreeSet<usize> = (0..m.size()).collect();
    loop {
        let next: BTreeSet<usize> = image.iter().map(|&x| m.op(s, x)).collect();
        if next == image {
            break;
        }
        image = next;
    }
    let gp = grothendieck_group_finite(m)?;
    let verdict = Verdict::from_bool(image.len() == gp.class_count);
    Ok(TruncatedVerdict::with(
        verdict,
        json!({ "telescope_classes": image.len(), "group_order": gp.class_count }),
    ))
}

/// A sub-`π₀` selection: generators of a submonoid of `ℕ^k`, or explicit
/// element indices of a finite monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubSelection {
    Generated(Vec<Multidegree>),
    Elements(Vec<usize>),
}

pub type ClassicalCofinality = TruncatedVerdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofinalityReport {
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    pub verdict: Verdict,
    pub classical: ClassicalCofinality,
    pub k0_sub: FinAbGroup,
    pub k0_ambient: FinAbGroup,
    pub k0_map: HomProperties,
    pub k1_sub: FinAbGroup,
    pub k1_ambient: FinAbGroup,
    pub k1_map: HomProperties,
}

impl CofinalityReport {
    fn finish(mut self) -> Self {
        let predicted = !matches!(self.classical.verdict, Verdict::Pass | Verdict::HoldsAtN)
            || (self.k0_map.injective && self.k1_map.iso());
        self.verdict = if !predicted {
            Verdict::Fail
        } else if self.classical.verdict == Verdict::HoldsAtN {
            Verdict::HoldsAtN
        } else {
            Verdict::Pass
        };
        self
    }
}

/// Classical cofinality of a sub-selection, and the induced maps on `K₀` and `K₁`.
pub fn cofinality_check(input: &SmInput, sel: &SubSelection, cap: usize) -> Result<CofinalityReport> {
    let input_digest = digest(&(input, sel));
    match (input, sel) {
        (SmInput::Discrete(d), SubSelection::Elements(p)) => discrete_cofinality(&d.monoid, p, input_digest),
        (SmInput::Groupoid(pres), SubSelection::Generated(gens)) => {
            let e = EnumeratedGroupoid::new(pres, cap)?;
            groupoid_cofinality(&e, gens, input_digest)
        }
        (SmInput::Discrete(_), _) => Err(Error::invalid("finite monoids take an element selection")),
        (SmInput::Groupoid(_), _) => Err(Error::invalid("groupoids take a selection by submonoid generators")),
    }
}

fn discrete_cofinality(m: &FiniteCommMonoid, p: &[usize], input_digest: String) -> Result<CofinalityReport> {
    let mut members: Vec<usize> = p.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.iter().any(|&x| x >= m.size()) {
        return Err(Error::NotASubmonoid("element out of range".into()));
    }
    if !members.contains(&m.unit()) {
        return Err(Error::NotASubmonoid("the unit is not selected".into()));
    }
    for &a in &members {
        for &b in &members {
            if members.binary_search(&m.op(a, b)).is_err() {
                return Err(Error::NotASubmonoid(format!(
                    "{} + {} leaves the selection",
                    m.label(a),
                    m.label(b)
                )));
            }
        }
    }
    let pos = |x: usize| members.binary_search(&x).expect("closed");
    let table = members
        .iter()
        .map(|&a| members.iter().map(|&b| pos(m.op(a, b))).collect())
        .collect();
    let labels = members.iter().map(|&a| m.label(a).to_string()).collect();
    let sub = FiniteCommMonoid::new(labels, pos(m.unit()), table)?;

    let missing = (0..m.size()).find(|&y| !(0..m.size()).any(|z| members.binary_search(&m.op(y, z)).is_ok()));
    let classical = match missing {
        None => TruncatedVerdict::plain(Verdict::Pass),
        Some(y) => TruncatedVerdict::with(Verdict::Fail, json!({ "element": m.label(y) })),
    };

    let to_pres = |x: &FiniteCommMonoid| {
        let cp = CommMonoidPres::from_table(x);
        AbPresentation::new(cp.generators.len(), cp.relation_matrix()).expect("rows match")
    };
    let (ps, pm) = (to_pres(&sub), to_pres(m));
    let amb_gens: Vec<usize> = (0..m.size()).filter(|&x| x != m.unit()).collect();
    let sub_gens: Vec<usize> = members.iter().copied().filter(|&x| x != m.unit()).collect();
    let mut f = IntMatrix::zeros(amb_gens.len(), sub_gens.len());
    for (j, &x) in sub_gens.iter().enumerate() {
        let i = amb_gens.iter().position(|&g| g == x).expect("non-unit");
        f.set(i, j, BigInt::from(1));
    }
    let k0_map = hom_compare(&f, &ps, &pm)?;
    Ok(CofinalityReport {
        input_digest,
        truncation: None,
        verdict: Verdict::Pass,
        classical,
        k0_sub: ps.group(),
        k0_ambient: pm.group(),
        k0_map,
        k1_sub: FinAbGroup::trivial(),
        k1_ambient: FinAbGroup::trivial(),
        k1_map: HomProperties {
            injective: true,
            surjective: true,
        },
    }
    .finish())
}

/// Elements of the submonoid generated by `gens` with total degree at most `bound`.
fn generated_elements(k: usize, gens: &[Multidegree], bound: usize) -> BTreeSet<Multidegree> {
    let mut seen = BTreeSet::from([vec![0; k]]);
    let mut frontier = vec![vec![0; k]];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Multidegree = x.iter().zip(g).map(|(a, b)| a + b).collect();
            if total_degree(&y) <= bound && seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn groupoid_cofinality(e: &EnumeratedGroupoid, gens: &[Multidegree], input_digest: String) -> Result<CofinalityReport> {
    let k = e.generator_count();
    let n = e.truncation();
    if gens.iter().any(|g| g.len() != k) {
        return Err(Error::NotASubmonoid(format!("generators must have {k} coordinates")));
    }
    let gens: Vec<Multidegree> = gens.iter().filter(|g| total_degree(g) > 0).cloned().collect();

    let within = generated_elements(k, &gens, 2 * n);
    let missing = e
        .objects()
        .iter()
        .find(|y| !within.iter().any(|x| x.iter().zip(y.iter()).all(|(a, b)| a >= b)));
    let classical = match missing {
        None => TruncatedVerdict::plain(Verdict::HoldsAtN),
        Some(y) => {
            // A coordinate no generator touches can never be complemented.
            let uncovered = (0..k).any(|c| y[c] > 0 && gens.iter().all(|g| g[c] == 0));
            let verdict = if uncovered {
                Verdict::FailsWithCertificate
            } else {
                Verdict::Unknown
            };
            TruncatedVerdict::with(verdict, json!({ "object": y, "searched_up_to": 2 * n }))
        }
    };

    let g = IntMatrix::from_columns(
        k,
        &gens
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect::<Vec<_>>(),
    );
    let sub_pres = AbPresentation::new(gens.len(), kernel_basis(&g)).expect("rows match");
    let amb_pres = AbPresentation::free(k);
    let k0_map = hom_compare(&g, &sub_pres, &amb_pres)?;

    let abs = abelianizations(e);
    let (_, ambient) = k1_with(e, &abs, String::new())?;
    let in_p = generated_elements(k, &gens, n);
    let nodes: Vec<usize> = (0..e.objects().len())
        .filter(|&i| in_p.contains(&e.objects()[i]))
        .collect();
    let sub = ab_colimit(&k1_diagram(e, &abs, nodes.clone(), &gens).diagram)?;
    let mut f = IntMatrix::zeros(ambient.presentation.generators(), sub.presentation.generators());
    for (s, &obj) in nodes.iter().enumerate() {
        for t in 0..abs[obj].presentation.generators() {
            f.set(ambient.offsets[obj] + t, sub.offsets[s] + t, BigInt::from(1));
        }
    }
    let k1_map = hom_compare(&f, &sub.presentation, &ambient.presentation)?;
    Ok(CofinalityReport {
        input_digest,
        truncation: Some(n),
        verdict: Verdict::Pass,
        classical,
        k0_sub: sub_pres.group(),
        k0_ambient: amb_pres.group(),
        k0_map,
        k1_sub: sub.group,
        k1_ambient: ambient.group,
        k1_map,
    }
    .finish())
}
