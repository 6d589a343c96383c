use super::{ObjectData, SMGroupoidPres, Symmetry, Translation};
use crate::fingrp::{matrix_to_perm, FiniteGroupSpec, MatrixGroupSpec, ModMatrix, Perm};
use crate::Result;

fn one_generator(
    truncation: usize,
    label: String,
    objects: Vec<FiniteGroupSpec>,
    translations: Vec<Vec<Perm>>,
    symmetries: Vec<Perm>,
) -> SMGroupoidPres {
    SMGroupoidPres {
        generators: vec!["x".into()],
        truncation,
        objects: objects
            .into_iter()
            .enumerate()
            .map(|(n, automorphisms)| ObjectData {
                degree: vec![n as u32],
                automorphisms,
            })
            .collect(),
        translations: translations
            .into_iter()
            .enumerate()
            .map(|(n, images)| Translation {
                generator: 0,
                source: vec![n as u32],
                images,
            })
            .collect(),
        symmetries: symmetries
            .into_iter()
            .enumerate()
            .map(|(n, element)| Symmetry {
                first: 0,
                second: 0,
                object: vec![n as u32],
                element,
            })
            .collect(),
        label: Some(label),
    }
}

/// Finite sets and bijections: `Aut(n) = Σ_n`, translation adds a fixed
/// point at the end.
pub fn fin_bij(truncation: usize) -> SMGroupoidPres {
    let objects: Vec<FiniteGroupSpec> = (0..=truncation).map(FiniteGroupSpec::symmetric).collect();
    let translations = (0..truncation)
        .map(|n| {
            objects[n]
                .generators
                .iter()
                .map(|p| {
                    let mut images = p.images().to_vec();
                    images.push(n as u32);
                    Perm::from_images(images).expect("extension of a bijection")
                })
                .collect()
        })
        .collect();
    let symmetries = (0..truncation.saturating_sub(1))
        .map(|n| Perm::transposition(n + 2, n as u32, n as u32 + 1))
        .collect();
    one_generator(truncation, "fin".into(), objects, translations, symmetries)
}

fn block_diag_one(a: &ModMatrix) -> ModMatrix {
    let n = a.len();
    let mut out: ModMatrix = a
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.push(0);
            r
        })
        .collect();
    let mut last = vec![0; n + 1];
    last[n] = 1;
    out.push(last);
    out
}

/// Free modules over `Z/m`: `Aut(n) = GL_n(Z/m)` acting on `(Z/m)^n`,
/// translation `A -> diag(A, 1)`.
pub fn free_mod(modulus: u64, truncation: usize, cap: usize) -> Result<SMGroupoidPres> {
    let specs: Vec<MatrixGroupSpec> = (0..=truncation)
        .map(|n| MatrixGroupSpec::general_linear(n, modulus))
        .collect::<Result<_>>()?;
    let objects: Vec<FiniteGroupSpec> = specs.iter().map(|s| s.to_permutation(cap)).collect::<Result<_>>()?;
    let translations = specs[..truncation]
        .iter()
        .map(|s| {
            s.generators
                .iter()
                .map(|a| matrix_to_perm(&block_diag_one(a), modulus))
                .collect()
        })
        .collect();
    let symmetries = (0..truncation.saturating_sub(1))
        .map(|n| {
            let mut swap = crate::fingrp::identity_matrix(n + 2);
            swap.swap(n, n + 1);
            matrix_to_perm(&swap, modulus)
        })
        .collect();
    Ok(one_generator(
        truncation,
        format!("freemod{modulus}"),
        objects,
        translations,
        symmetries,
    ))
}

/// The discrete monoid `ℕ`: trivial automorphism groups.
pub fn nat(truncation: usize) -> SMGroupoidPres {
    one_generator(
        truncation,
        "nat".into(),
        vec![FiniteGroupSpec::trivial(0); truncation + 1],
        vec![Vec::new(); truncation],
        vec![Perm::identity(0); truncation.saturating_sub(1)],
    )
}
