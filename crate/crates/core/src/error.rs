use std::fmt;

use crate::graph::Vertex;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex id {0}")]
    UnknownVertex(Vertex),

    #[error("vertices {0} and {1} lie in different connected components")]
    Disconnected(Vertex, Vertex),

    #[error("graph is not connected ({components} components)")]
    NotConnected { components: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bounded check refused: {what} has size {actual}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        bound: usize,
        actual: usize,
    },

    #[error("budget exceeded: {what} reached {reached} (budget {budget})")]
    BudgetExceeded {
        what: &'static str,
        budget: usize,
        reached: usize,
    },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("permutation #{index} is invalid: {reason}")]
    InvalidPermutation { index: usize, reason: String },

    #[error("cover construction: {0}")]
    Cover(CoverFailure),

    #[error("internal invariant broken: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Which property of the level-wise cover construction failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CoverProperty {
    /// Balls around the basepoint coincide with the constructed levels.
    P,
    /// Weak modularity with respect to the basepoint.
    Q,
    /// Unit balls of inner vertices map isomorphically.
    R,
    /// Base squares on inner edges lift to cover squares.
    S,
    /// Unit balls of the outer sphere map isomorphically onto their image.
    T,
    /// The generator relation on couples is not transitive.
    Transitivity,
    /// Stars of interior vertices are not isomorphic to stars in the base.
    Star,
}

impl fmt::Display for CoverProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoverProperty::P => "(P) level balls",
            CoverProperty::Q => "(Q) weak modularity at basepoint",
            CoverProperty::R => "(R) inner unit balls",
            CoverProperty::S => "(S) square lifting",
            CoverProperty::T => "(T) sphere unit balls",
            CoverProperty::Transitivity => "couple relation transitivity",
            CoverProperty::Star => "star isomorphism",
        };
        f.write_str(s)
    }
}

/// A failed runtime check inside the cover construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFailure {
    pub property: CoverProperty,
    pub level: usize,
    /// Cover vertices exhibiting the failure.
    pub witness: Vec<Vertex>,
    /// Whether the base complex passes its local conditions. `true` here
    /// points at a bug in the construction rather than at the input.
    pub base_conditions_hold: bool,
}

impl fmt::Display for CoverFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at level {} with witness {:?} ({})",
            self.property,
            self.level,
            self.witness,
            if self.base_conditions_hold {
                "base passes local conditions"
            } else {
                "base violates local conditions"
            }
        )
    }
}
