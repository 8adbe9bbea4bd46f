use serde::{Deserialize, Serialize};

/// One checked biconditional: `ok` iff both sides agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub lhs: bool,
    pub rhs: bool,
}

impl Claim {
    pub fn new(id: impl Into<String>, lhs: bool, rhs: bool) -> Claim {
        Claim {
            id: id.into(),
            lhs,
            rhs,
        }
    }

    /// A fact that must hold on its own; recorded as `true <=> fact`.
    pub fn fact(id: impl Into<String>, holds: bool) -> Claim {
        Claim::new(id, true, holds)
    }

    pub fn ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub(crate) fn all_ok(claims: &[Claim]) -> bool {
    claims.iter().all(Claim::ok)
}
