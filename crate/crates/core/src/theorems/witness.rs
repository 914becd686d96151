//! Serialized certificates. Struct fields are declared in alphabetical order
//! and maps are ordered, so equal witnesses serialize to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::{LinearCode, MAX_CODEWORDS, MAX_EQUIVALENCE_LENGTH, MAX_PAUT_LENGTH};
use crate::ffield::Field;
use crate::galg::{IdealBasis, Side};
use crate::perm::{Perm, PermGroup, MAX_GROUP_ORDER, MAX_ISOMORPHISM_ORDER};

use super::replay::Context;
use super::CertifyError;

/// Enumeration limits in force when a witness was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_codewords: u64,
    pub max_equivalence_length: usize,
    pub max_group_order: usize,
    pub max_isomorphism_order: usize,
    pub max_paut_length: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_codewords: MAX_CODEWORDS,
            max_equivalence_length: MAX_EQUIVALENCE_LENGTH,
            max_group_order: MAX_GROUP_ORDER,
            max_isomorphism_order: MAX_ISOMORPHISM_ORDER,
            max_paut_length: MAX_PAUT_LENGTH,
        }
    }
}

/// A permutation group by its generators in cycle notation; the element
/// order is that of the closure of the generators in the listed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupArtifact {
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeArtifact {
    pub field: String,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

/// Rows indexed by the element order of the named group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealArtifact {
    pub field: String,
    pub group: String,
    pub rows: Vec<Vec<u32>>,
    pub side: String,
}

/// `map[x]` is the image of `x`. `from` is `coords` or the name of a group
/// (or quotient `G/N`); `to` names the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionArtifact {
    pub from: String,
    pub map: Vec<usize>,
    pub to: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifacts {
    pub bijections: BTreeMap<String, BijectionArtifact>,
    pub codes: BTreeMap<String, CodeArtifact>,
    pub groups: BTreeMap<String, GroupArtifact>,
    pub ideals: BTreeMap<String, IdealArtifact>,
    /// Blocks of element indices.
    pub partitions: BTreeMap<String, Vec<Vec<usize>>>,
    /// One-line notation, 1-based.
    pub perms: BTreeMap<String, String>,
}

/// A predicate over artifacts, e.g. `in_paut(G,C)`, and its recorded value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub holds: bool,
    pub name: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub caps: Caps,
    /// Base point of regular bijections, 1-based.
    pub i0: Option<usize>,
    pub notes: Vec<String>,
    pub s: Option<usize>,
    pub side: Option<Side>,
    pub t: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub artifacts: Artifacts,
    pub claims: Vec<Claim>,
    pub inputs: BTreeMap<String, String>,
    pub kind: String,
    pub params: Params,
}

impl Witness {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("witness serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::Parse(format!("witness JSON: {e}")))
    }

    pub fn all_hold(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn claim(&self, name: &str) -> Option<bool> {
        self.claims.iter().find(|c| c.name == name).map(|c| c.holds)
    }
}

/// How a failed claim is reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Stage {
    Precondition,
    Verification,
    /// A claim guaranteed by the construction.
    Invariant,
}

/// Accumulates artifacts and evaluates each claim against the serialized
/// artifacts as it is added.
pub(crate) struct Builder {
    witness: Witness,
    ctx: Context,
}

impl Builder {
    pub fn new(kind: &str) -> Self {
        let witness = Witness {
            artifacts: Artifacts::default(),
            claims: Vec::new(),
            inputs: BTreeMap::new(),
            kind: kind.to_string(),
            params: Params::default(),
        };
        Builder { witness, ctx: Context::default() }
    }

    pub fn params(&mut self) -> &mut Params {
        &mut self.witness.params
    }

    pub fn artifacts(&self) -> &Artifacts {
        &self.witness.artifacts
    }

    fn fresh(&self, name: &str) {
        let a = &self.witness.artifacts;
        let taken = a.bijections.contains_key(name)
            || a.codes.contains_key(name)
            || a.groups.contains_key(name)
            || a.ideals.contains_key(name)
            || a.partitions.contains_key(name)
            || a.perms.contains_key(name);
        assert!(!taken, "artifact name '{name}' reused");
    }

    pub fn group(&mut self, name: &str, g: &PermGroup) {
        self.fresh(name);
        let art =
            GroupArtifact { degree: g.degree(), generators: g.generators().iter().map(|p| p.to_string()).collect() };
        self.witness.artifacts.groups.insert(name.to_string(), art);
    }

    pub fn code(&mut self, name: &str, c: &LinearCode) {
        self.fresh(name);
        let art = CodeArtifact { field: c.field().spec().to_string(), n: c.len(), rows: c.rows().to_vec() };
        self.witness.artifacts.codes.insert(name.to_string(), art);
    }

    pub fn ideal(&mut self, name: &str, group: &str, field: &Field, ideal: &IdealBasis) {
        self.fresh(name);
        let art = IdealArtifact {
            field: field.spec().to_string(),
            group: group.to_string(),
            rows: ideal.rows().to_vec(),
            side: ideal.kind.to_string(),
        };
        self.witness.artifacts.ideals.insert(name.to_string(), art);
    }

    pub fn bijection(&mut self, name: &str, from: &str, to: &str, map: &[usize]) {
        self.fresh(name);
        let art = BijectionArtifact { from: from.to_string(), map: map.to_vec(), to: to.to_string() };
        self.witness.artifacts.bijections.insert(name.to_string(), art);
    }

    pub fn perm(&mut self, name: &str, p: &Perm) {
        self.fresh(name);
        self.witness.artifacts.perms.insert(name.to_string(), p.to_one_line());
    }

    pub fn partition(&mut self, name: &str, blocks: &[Vec<usize>]) {
        self.fresh(name);
        self.witness.artifacts.partitions.insert(name.to_string(), blocks.to_vec());
    }

    /// Evaluates and records `claim`; a claim that cannot be evaluated is a bug.
    pub fn check(&mut self, claim: &str) -> Result<bool, CertifyError> {
        let holds = self
            .ctx
            .eval(&self.witness.artifacts, claim)
            .map_err(|e| CertifyError::Internal(format!("claim {claim} could not be evaluated: {e}")))?;
        self.witness.claims.push(Claim { holds, name: claim.to_string() });
        Ok(holds)
    }

    /// Records `claim` and fails at `stage` with `reason` when it does not hold.
    pub fn require(&mut self, claim: &str, stage: Stage, reason: impl FnOnce() -> String) -> Result<(), CertifyError> {
        if self.check(claim)? {
            return Ok(());
        }
        Err(self.fail(stage, reason()))
    }

    /// Records a claim known to be false and returns the failure.
    pub fn fail(&mut self, stage: Stage, reason: String) -> CertifyError {
        let report = Box::new(self.witness.clone());
        match stage {
            Stage::Precondition => CertifyError::Precondition { reason, report },
            Stage::Verification => CertifyError::Verification { reason, report },
            Stage::Invariant => CertifyError::Internal(reason),
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.witness.params.notes.push(note.into());
    }

    pub fn finish(self) -> Result<Witness, CertifyError> {
        if let Some(c) = self.witness.claims.iter().find(|c| !c.holds) {
            return Err(CertifyError::Internal(format!("claim {} is false in a finished witness", c.name)));
        }
        Ok(self.witness)
    }
}
