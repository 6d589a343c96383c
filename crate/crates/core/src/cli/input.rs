//! JSON input documents. Elements and generators are referred to by name.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::fingrp::{FiniteGroupSpec, Perm, DEFAULT_CAP};
use crate::kcalc::SubSelection;
use crate::monoid::{CommMonoidPres, FiniteCommMonoid, MonoidHom};
use crate::smgpd::{fin_bij, free_mod, nat, shift, ObjectData, SMGroupoidPres, SmInput, Symmetry, Translation};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InputDocument {
    MonoidTable(MonoidTableDoc),
    MonoidPresentation(PresentationDoc),
    GroupoidBuiltin(BuiltinDoc),
    GroupoidCustom(CustomGroupoidDoc),
    Homomorphism(HomomorphismDoc),
    SubSelection(SelectionDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidTableDoc {
    pub elements: Vec<String>,
    pub unit: String,
    /// `table[i][j]` names `elements[i] + elements[j]`.
    pub table: Vec<Vec<String>>,
}

/// Exponent vectors keyed by generator name; absent names count zero.
pub type Word = BTreeMap<String, u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationDoc {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<RelationDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Builtin {
    Fin,
    Freemod,
    Nat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinDoc {
    pub builtin: Builtin,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

/// Disjoint cycles on `{0, .., points-1}`.
pub type Cycles = Vec<Vec<u32>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub degree: Vec<u32>,
    pub points: usize,
    #[serde(default)]
    pub generators: Vec<Cycles>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranslationDoc {
    pub generator: String,
    pub source: Vec<u32>,
    pub images: Vec<Cycles>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryDoc {
    pub first: String,
    pub second: String,
    pub object: Vec<u32>,
    pub element: Cycles,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomGroupoidDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub generators: Vec<String>,
    pub truncation: usize,
    pub objects: Vec<ObjectDoc>,
    #[serde(default)]
    pub translations: Vec<TranslationDoc>,
    #[serde(default)]
    pub symmetries: Vec<SymmetryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomomorphismDoc {
    pub source: MonoidTableDoc,
    pub target: MonoidTableDoc,
    /// Source element name to target element name.
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionDoc {
    pub ambient: Box<InputDocument>,
    /// Submonoid generators as multidegrees, for groupoid ambients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    /// Element names, for monoid-table ambients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
}

/// A parsed and name-resolved input.
#[derive(Clone, Debug)]
pub enum Resolved {
    Monoid(FiniteCommMonoid),
    Presentation(CommMonoidPres),
    Groupoid {
        pres: SMGroupoidPres,
        cap: Option<usize>,
    },
    Homomorphism(MonoidHom),
    Selection {
        ambient: Box<Resolved>,
        selection: SubSelection,
    },
}

/// Flag values that complete or override document fields.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub truncation: Option<usize>,
    pub modulus: Option<u64>,
    pub cap: Option<usize>,
}

impl Resolved {
    pub fn kind(&self) -> &'static str {
        match self {
            Resolved::Monoid(_) => "monoid-table",
            Resolved::Presentation(_) => "monoid-presentation",
            Resolved::Groupoid { .. } => "groupoid",
            Resolved::Homomorphism(_) => "homomorphism",
            Resolved::Selection { .. } => "sub-selection",
        }
    }

    /// The symmetric monoidal view, where one exists.
    pub fn sm_input(&self) -> Result<SmInput> {
        match self {
            Resolved::Monoid(m) => Ok(m.clone().into()),
            Resolved::Groupoid { pres, .. } => Ok(pres.clone().into()),
            other => Err(Error::invalid(format!(
                "a monoid table or groupoid is required, got a {}",
                other.kind()
            ))),
        }
    }

    pub fn monoid(&self) -> Result<&FiniteCommMonoid> {
        match self {
            Resolved::Monoid(m) => Ok(m),
            other => Err(Error::invalid(format!(
                "a monoid table is required, got a {}",
                other.kind()
            ))),
        }
    }

    pub fn cap(&self) -> Option<usize> {
        match self {
            Resolved::Groupoid { cap, .. } => *cap,
            Resolved::Selection { ambient, .. } => ambient.cap(),
            _ => None,
        }
    }
}

pub fn read_document(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

impl MonoidTableDoc {
    pub fn from_monoid(m: &FiniteCommMonoid) -> Self {
        MonoidTableDoc {
            elements: m.labels().to_vec(),
            unit: m.label(m.unit()).to_string(),
            table: m
                .table()
                .iter()
                .map(|row| row.iter().map(|&c| m.label(c).to_string()).collect())
                .collect(),
        }
    }

    pub fn resolve(&self) -> Result<FiniteCommMonoid> {
        let index: BTreeMap<&str, usize> = self.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidTable(format!("unknown element {s:?}")))
        };
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|s| lookup(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FiniteCommMonoid::new(self.elements.clone(), lookup(&self.unit)?, table)
    }
}

impl PresentationDoc {
    pub fn resolve(&self) -> Result<CommMonoidPres> {
        let vector = |w: &Word| {
            let mut v = vec![0; self.generators.len()];
            for (name, &e) in w {
                let i = self
                    .generators
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| Error::invalid(format!("unknown generator {name:?}")))?;
                v[i] = e;
            }
            Ok::<_, Error>(v)
        };
        let relations = self
            .relations
            .iter()
            .map(|r| Ok((vector(&r.lhs)?, vector(&r.rhs)?)))
            .collect::<Result<Vec<_>>>()?;
        CommMonoidPres::new(self.generators.clone(), relations)
    }
}

fn perm(points: usize, cycles: &Cycles) -> Result<Perm> {
    Perm::from_cycles(points, cycles)
}

impl CustomGroupoidDoc {
    pub fn resolve(&self) -> Result<SMGroupoidPres> {
        let gen = |name: &str| {
            self.generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::invalid(format!("unknown object generator {name:?}")))
        };
        let points = |x: &[u32]| {
            self.objects
                .iter()
                .find(|o| o.degree == x)
                .map(|o| o.points)
                .ok_or_else(|| Error::invalid(format!("no object with degree {x:?}")))
        };
        let k = self.generators.len();
        let well_sized = |x: &[u32]| {
            if x.len() == k {
                Ok(())
            } else {
                Err(Error::invalid(format!("multidegree {x:?} needs {k} entries")))
            }
        };
        let objects = self
            .objects
            .iter()
            .map(|o| {
                well_sized(&o.degree)?;
                let generators = o.generators.iter().map(|c| perm(o.points, c)).collect::<Result<_>>()?;
                Ok(ObjectData {
                    degree: o.degree.clone(),
                    automorphisms: FiniteGroupSpec::new(o.points, generators)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let translations = self
            .translations
            .iter()
            .map(|t| {
                well_sized(&t.source)?;
                let g = gen(&t.generator)?;
                let n = points(&shift(&t.source, g))?;
                Ok(Translation {
                    generator: g,
                    source: t.source.clone(),
                    images: t.images.iter().map(|c| perm(n, c)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let symmetries = self
            .symmetries
            .iter()
            .map(|s| {
                well_sized(&s.object)?;
                let (a, b) = (gen(&s.first)?, gen(&s.second)?);
                let n = points(&shift(&shift(&s.object, a), b))?;
                Ok(Symmetry {
                    first: a,
                    second: b,
                    object: s.object.clone(),
                    element: perm(n, &s.element)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let pres = SMGroupoidPres {
            generators: self.generators.clone(),
            truncation: self.truncation,
            objects,
            translations,
            symmetries,
            label: self.label.clone(),
        };
        pres.check_shape()?;
        Ok(pres)
    }
}

impl InputDocument {
    pub fn resolve(&self, o: Overrides) -> Result<Resolved> {
        match self {
            InputDocument::MonoidTable(t) => Ok(Resolved::Monoid(t.resolve()?)),
            InputDocument::MonoidPresentation(p) => Ok(Resolved::Presentation(p.resolve()?)),
            InputDocument::GroupoidBuiltin(b) => {
                let n = o
                    .truncation
                    .or(b.truncation)
                    .ok_or_else(|| Error::invalid("builtin groupoids need a truncation"))?;
                let cap = o.cap.or(b.cap);
                Ok(Resolved::Groupoid {
                    pres: builtin(b.builtin, o.modulus.or(b.modulus), n, cap.unwrap_or(DEFAULT_CAP))?,
                    cap,
                })
            }
            InputDocument::GroupoidCustom(c) => {
                let full = c.resolve()?;
                let pres = match o.truncation {
                    Some(n) if n != full.truncation => full.truncated(n)?,
                    _ => full,
                };
                Ok(Resolved::Groupoid {
                    pres,
                    cap: o.cap.or(c.cap),
                })
            }
            InputDocument::Homomorphism(h) => {
                let (s, t) = (h.source.resolve()?, h.target.resolve()?);
                let map = s
                    .labels()
                    .iter()
                    .map(|x| {
                        let y = h
                            .map
                            .get(x)
                            .ok_or_else(|| Error::invalid(format!("no image for {x:?}")))?;
                        t.index_of(y)
                            .ok_or_else(|| Error::invalid(format!("unknown target element {y:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(x) = h.map.keys().find(|x| s.index_of(x).is_none()) {
                    return Err(Error::invalid(format!("unknown source element {x:?}")));
                }
                Ok(Resolved::Homomorphism(MonoidHom::new(s, t, map)?))
            }
            InputDocument::SubSelection(sel) => {
                let ambient = sel.ambient.resolve(o)?;
                let selection = match (&ambient, &sel.generators, &sel.elements) {
                    (Resolved::Groupoid { .. }, Some(g), None) => SubSelection::Generated(g.clone()),
                    (Resolved::Monoid(m), None, Some(names)) => SubSelection::Elements(
                        names
                            .iter()
                            .map(|x| {
                                m.index_of(x)
                                    .ok_or_else(|| Error::invalid(format!("unknown element {x:?}")))
                            })
                            .collect::<Result<_>>()?,
                    ),
                    _ => {
                        return Err(Error::invalid(
                            "a selection lists generators over a groupoid or elements over a monoid table",
                        ))
                    }
                };
                Ok(Resolved::Selection {
                    ambient: Box::new(ambient),
                    selection,
                })
            }
        }
    }
}

pub fn builtin(kind: Builtin, modulus: Option<u64>, truncation: usize, cap: usize) -> Result<SMGroupoidPres> {
    if truncation == 0 {
        return Err(Error::invalid("truncation must be at least 1"));
    }
    match kind {
        Builtin::Fin => Ok(fin_bij(truncation)),
        Builtin::Nat => Ok(nat(truncation)),
        Builtin::Freemod => free_mod(
            modulus.ok_or_else(|| Error::invalid("freemod needs a modulus"))?,
            truncation,
            cap,
        ),
    }
}
