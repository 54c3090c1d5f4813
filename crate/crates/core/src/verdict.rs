use std::fmt;

use serde::Serialize;

/// A three-valued answer. `Undecided` records the bound that was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Undecided { bound: usize, what: &'static str },
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }

    pub fn is_decided(self) -> bool {
        !matches!(self, Verdict::Undecided { .. })
    }

    /// The decided value, if any.
    pub fn decided(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Undecided { .. } => None,
        }
    }

    /// Three-valued conjunction: a decided `False` wins over `Undecided`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (u @ Verdict::Undecided { .. }, _) | (_, u @ Verdict::Undecided { .. }) => u,
            _ => Verdict::True,
        }
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(items: I) -> Verdict {
        items.into_iter().fold(Verdict::True, Verdict::and)
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        Verdict::from_bool(b)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => write!(f, "true"),
            Verdict::False => write!(f, "false"),
            Verdict::Undecided { bound, what } => write!(f, "undecided ({what} bound {bound})"),
        }
    }
}
