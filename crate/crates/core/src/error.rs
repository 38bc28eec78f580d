use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    /// Parameters outside the open domain where the structure exists.
    #[error("domain error: {0}")]
    Domain(String),

    /// An inverse-trig argument left [-1, 1] by more than roundoff.
    #[error("branch error: {what} = {value} is outside the admissible range")]
    Branch { what: &'static str, value: f64 },

    #[error("the two great circles coincide")]
    IdenticalCircles,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl GeometryError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        GeometryError::Domain(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, GeometryError::Domain(_))
    }
}
