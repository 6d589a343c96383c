use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use super::{digest, KReport, Verdict};
use crate::abgrp::{ab_colimit, cokernel, hom_compare, AbDiagram, AbPresentation, Colimit, FinAbGroup, IntMatrix};
use crate::actcat::{fin_coeff_cat_discrete, fin_coeff_cat_enumerated};
use crate::fingrp::Abelianization;
use crate::monoid::{grothendieck_group_finite, CommMonoidPres, FiniteCommMonoid};
use crate::smgpd::{total_degree, EnumeratedGroupoid, Multidegree, SMGroupoidPres, SmInput};
use crate::Result;

/// `π₀` group completion.
pub fn k0(input: &SmInput) -> Result<KReport> {
    let (group, truncation, stability) = match input {
        SmInput::Groupoid(p) => {
            p.check_shape()?;
            (
                FinAbGroup::free(p.generator_count()),
                Some(p.truncation),
                Some(p.truncation >= 2),
            )
        }
        SmInput::Discrete(d) => (grothendieck_group_finite(&d.monoid)?.group, None, None),
    };
    Ok(KReport {
        kind: "k0".into(),
        input_digest: digest(input),
        truncation,
        group,
        stability,
        verdict: Verdict::Pass,
        certificates: Vec::new(),
    })
}

/// A diagram of abelianized automorphism groups over selected objects.
#[derive(Clone, Debug)]
pub struct K1Diagram {
    pub diagram: AbDiagram,
    /// Object index of each node.
    pub nodes: Vec<usize>,
}

/// Element table of the composite translation along `step`, on the generators
/// of `Aut(objects[i])`, with the target object.
fn translate_generators(e: &EnumeratedGroupoid, i: usize, step: &[u32]) -> Option<(usize, Vec<usize>)> {
    let g = e.group(i);
    let mut elems: Vec<usize> = g
        .generators()
        .iter()
        .map(|p| g.index_of(p).expect("generator"))
        .collect();
    let mut at = i;
    for (gen, &count) in step.iter().enumerate() {
        for _ in 0..count {
            let table = e.tau(gen, at)?;
            elems = elems.iter().map(|&a| table[a]).collect();
            at = e.translate(gen, at, e.group(at).identity())?.0;
        }
    }
    Some((at, elems))
}

/// Nodes `Aut(x)_ab` for the objects in `nodes` (in order), and one arrow for
/// every `step` from `x` to `x + step` when both are nodes.
pub fn k1_diagram(
    e: &EnumeratedGroupoid,
    abs: &[Abelianization],
    nodes: Vec<usize>,
    steps: &[Multidegree],
) -> K1Diagram {
    let mut diagram = AbDiagram::new();
    let mut node_of = vec![usize::MAX; e.objects().len()];
    for &i in &nodes {
        node_of[i] = diagram.add_node(abs[i].presentation.clone());
    }
    for &i in &nodes {
        for step in steps {
            let Some((j, images)) = translate_generators(e, i, step) else {
                continue;
            };
            if node_of[j] == usize::MAX {
                continue;
            }
            let rows = abs[j].presentation.generators();
            let columns: Vec<Vec<BigInt>> = images.iter().map(|&a| abs[j].generator_vector(a).to_vec()).collect();
            diagram.add_arrow(node_of[i], node_of[j], IntMatrix::from_columns(rows, &columns));
        }
    }
    K1Diagram { diagram, nodes }
}

pub(crate) fn unit_steps(k: usize) -> Vec<Multidegree> {
    (0..k)
        .map(|g| {
            let mut v = vec![0; k];
            v[g] = 1;
            v
        })
        .collect()
}

pub(crate) fn abelianizations(e: &EnumeratedGroupoid) -> Vec<Abelianization> {
    (0..e.objects().len())
        .map(|i| Abelianization::compute(e.group(i)))
        .collect()
}

/// Map between two colimits whose node lists share a prefix, identity on the shared generators.
pub(crate) fn prefix_embedding(small: &Colimit, large: &Colimit) -> IntMatrix {
    let (r, c) = (large.presentation.generators(), small.presentation.generators());
    let mut f = IntMatrix::zeros(r, c);
    for j in 0..c {
        f.set(j, j, BigInt::from(1));
    }
    f
}

/// `colim_{x ∈ 𝐄S} Aut(x)_ab` at the truncation, with the comparison against `N - 1`.
pub fn k1_enumerated(e: &EnumeratedGroupoid, input_digest: String) -> Result<KReport> {
    let abs = abelianizations(e);
    Ok(k1_with(e, &abs, input_digest)?.0)
}

pub(crate) fn k1_with(
    e: &EnumeratedGroupoid,
    abs: &[Abelianization],
    input_digest: String,
) -> Result<(KReport, Colimit)> {
    let n = e.truncation();
    let steps = unit_steps(e.generator_count());
    let all: Vec<usize> = (0..e.objects().len()).collect();
    let full = ab_colimit(&k1_diagram(e, abs, all, &steps).diagram)?;
    let stability = if n >= 2 {
        let lower: Vec<usize> = (0..e.objects().len())
            .filter(|&i| total_degree(&e.objects()[i]) < n)
            .collect();
        let sub = ab_colimit(&k1_diagram(e, abs, lower, &steps).diagram)?;
        hom_compare(&prefix_embedding(&sub, &full), &sub.presentation, &full.presentation)?.iso()
    } else {
        false
    };
    let report = KReport {
        kind: "k1".into(),
        input_digest,
        truncation: Some(n),
        group: full.group.clone(),
        stability: Some(stability),
        verdict: Verdict::Pass,
        certificates: Vec::new(),
    };
    Ok((report, full))
}

pub fn k1(input: &SmInput, cap: usize) -> Result<KReport> {
    match input {
        SmInput::Groupoid(p) => k1_enumerated(&EnumeratedGroupoid::new(p, cap)?, digest(input)),
        SmInput::Discrete(_) => Ok(KReport {
            kind: "k1".into(),
            input_digest: digest(input),
            truncation: None,
            group: FinAbGroup::trivial(),
            stability: None,
            verdict: Verdict::Pass,
            certificates: Vec::new(),
        }),
    }
}

/// Inputs accepted by [`k_finite_coefficients`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "input", rename_all = "kebab-case")]
pub enum CoefficientInput {
    Presented(CommMonoidPres),
    Finite(FiniteCommMonoid),
    Groupoid(SMGroupoidPres),
}

/// `coker(n · : gp -> gp)` by Smith normal form, cross-checked against the
/// component count of `𝐄(n·)` where that category is available.
pub fn k_finite_coefficients(input: &CoefficientInput, n: u64, cap: usize) -> Result<KReport> {
    if n < 2 {
        return Err(crate::Error::invalid("the coefficient n must be at least 2"));
    }
    let with_n = |p: AbPresentation| {
        let g = p.generators();
        let scaled = IntMatrix::from_columns(
            g,
            &(0..g)
                .map(|i| (0..g).map(|j| BigInt::from(if i == j { n } else { 0 })).collect())
                .collect::<Vec<_>>(),
        );
        cokernel(&IntMatrix::hstack(g, &[p.relations(), &scaled]))
    };
    let as_pres = |m: &CommMonoidPres| {
        AbPresentation::new(m.generators.len(), m.relation_matrix()).expect("rows match generators")
    };
    let (group, truncation, components) = match input {
        CoefficientInput::Presented(p) => (with_n(as_pres(p)), None, None),
        CoefficientInput::Finite(m) => {
            let g = with_n(as_pres(&CommMonoidPres::from_table(m)));
            let count = fin_coeff_cat_discrete(m, n as usize)?.components().count;
            (g, None, Some(count))
        }
        CoefficientInput::Groupoid(p) => {
            p.check_shape()?;
            let g = with_n(AbPresentation::free(p.generator_count()));
            let count = if p.generator_count() == 1 && p.truncation + 1 >= n as usize {
                let e = EnumeratedGroupoid::new(p, cap)?;
                Some(fin_coeff_cat_enumerated(&e, n as usize)?.components().count)
            } else {
                None
            };
            (g, Some(p.truncation), count)
        }
    };
    let agree = components.map(|c| group.order() == Some(BigInt::from(c)));
    Ok(KReport {
        kind: "coeff".into(),
        input_digest: digest(input),
        truncation,
        group,
        stability: None,
        verdict: Verdict::from_bool(agree.unwrap_or(true)),
        certificates: components
            .map(|c| vec![json!({ "route": "components", "count": c, "agrees": agree })])
            .unwrap_or_default(),
    })
}
