use std::fmt;

use serde::{Deserialize, Serialize};

/// A named condition that failed, together with the element indices at
/// which it failed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub condition: String,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(condition: impl Into<String>, witness: impl Into<Vec<usize>>) -> Self {
        Self {
            condition: condition.into(),
            witness: witness.into(),
        }
    }

    /// Prefixes the condition name, e.g. to say which component a group
    /// axiom failed in.
    pub fn within(mut self, scope: &str) -> Self {
        self.condition = format!("{scope}:{}", self.condition);
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at (", self.condition)?;
        for (i, w) in self.witness.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// Outcome of an exhaustive axiom or condition scan.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(v) => Some(v),
        }
    }

    /// Converts a failed verdict into [`Error::Axiom`].
    pub fn into_result(self) -> Result<()> {
        match self {
            Verdict::Pass => Ok(()),
            Verdict::Fail(v) => Err(Error::Axiom(v)),
        }
    }
}

impl From<Option<Violation>> for Verdict {
    fn from(v: Option<Violation>) -> Self {
        match v {
            None => Verdict::Pass,
            Some(v) => Verdict::Fail(v),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(v) => write!(f, "fail: {v}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("axiom violated: {0}")]
    Axiom(Violation),
    #[error("precondition failed: {0}")]
    Precondition(Violation),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("resource limit exceeded: {what} (budget {budget})")]
    ResourceLimit { what: String, budget: u64 },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

/// Checks that `rows` is an `n_rows × n_cols` table with every entry
/// below `bound`, and flattens it row-major.
pub(crate) fn flatten_table(
    what: &str,
    rows: &[Vec<usize>],
    n_rows: usize,
    n_cols: usize,
    bound: usize,
) -> Result<Vec<usize>> {
    if rows.len() != n_rows {
        return Err(malformed(format!(
            "{what}: expected {n_rows} rows, found {}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(n_rows * n_cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n_cols {
            return Err(malformed(format!(
                "{what}: row {i} has {} entries, expected {n_cols}",
                row.len()
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= bound {
                return Err(malformed(format!(
                    "{what}: entry ({i}, {j}) = {v} is out of range (< {bound})"
                )));
            }
            flat.push(v);
        }
    }
    Ok(flat)
}

pub(crate) fn unflatten(flat: &[usize], n_cols: usize) -> Vec<Vec<usize>> {
    if n_cols == 0 {
        return Vec::new();
    }
    flat.chunks(n_cols).map(<[usize]>::to_vec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violation_display_lists_witness() {
        let v = Violation::new("M1", vec![0, 1]);
        assert_eq!(v.to_string(), "M1 fails at (0, 1)");
        assert_eq!(v.within("G2").condition, "G2:M1");
    }

    #[test]
    fn flatten_rejects_ragged_and_out_of_range() {
        assert!(flatten_table("t", &[vec![0, 1], vec![1]], 2, 2, 2).is_err());
        assert!(flatten_table("t", &[vec![0, 5], vec![1, 0]], 2, 2, 2).is_err());
        let flat = flatten_table("t", &[vec![0, 1], vec![1, 0]], 2, 2, 2).unwrap();
        assert_eq!(flat, vec![0, 1, 1, 0]);
        assert_eq!(unflatten(&flat, 2), vec![vec![0, 1], vec![1, 0]]);
    }
}
