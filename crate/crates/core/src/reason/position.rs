use std::fmt;

use serde::{Deserialize, Serialize};

/// Path of child indices from the root of a tree. The empty path is the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Position(Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Position {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    pub fn concat(&self, other: &Position) -> Position {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Position(v)
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl From<Vec<usize>> for Position {
    fn from(v: Vec<usize>) -> Self {
        Position(v)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("]")
    }
}

/// A position that runs off the tree. `depth` is the index into the
/// position at which no child existed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid position {position}: no child at step {depth}")]
pub struct PositionError {
    pub position: Position,
    pub depth: usize,
}

impl PositionError {
    pub(crate) fn new(position: &Position, depth: usize) -> Self {
        PositionError {
            position: position.clone(),
            depth,
        }
    }
}
