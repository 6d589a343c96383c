//! K-group computations and the checks that compare them with category-level data.

mod checks;
mod groups;

pub use checks::{
    additivity_check, cofinality_check, liscompletion_check, telescope_check, AdditivityReport, ClassicalCofinality,
    CofinalityReport, LiscompletionReport, SubSelection, TelescopeReport, TruncatedVerdict,
};
pub use groups::{k0, k1, k1_diagram, k1_enumerated, k_finite_coefficients, CoefficientInput, K1Diagram};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::abgrp::FinAbGroup;

/// Outcome vocabulary. Truncated computations never claim a global success.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    #[serde(rename = "holds-at-N")]
    HoldsAtN,
    FailsWithCertificate,
    Unknown,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Whether the verdict reports a found counterexample.
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Fail | Verdict::FailsWithCertificate)
    }
}

/// SHA-256 of the canonical JSON encoding.
pub fn digest<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("inputs serialize");
    hex::encode(Sha256::digest(&bytes))
}

/// A K-group value with provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KReport {
    pub kind: String,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(flatten)]
    pub group: FinAbGroup,
    /// Whether the value at `N - 1` maps isomorphically onto the value at `N`.
    /// A heuristic: it does not bound where the colimit stabilizes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<bool>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<serde_json::Value>,
}
