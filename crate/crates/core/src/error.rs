use thiserror::Error;

/// Errors raised by the library layers.
///
/// Variants are grouped by the layer that produces them so callers (and the
/// CLI) can report which stage failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // poly
    #[error("polynomials live in different variable sets ({0} vs {1})")]
    ArityMismatch(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("requested total degree {requested} is below the polynomial degree {actual}")]
    DegreeTooLow { requested: u32, actual: u32 },
    #[error("both polynomials are constant in `{0}`")]
    ConstantInVariable(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    // forms
    #[error("the logarithmic differential of the zero polynomial is undefined")]
    LogOfZero,
    #[error("pencil form needs at least one nonzero section")]
    EmptyPencil,
    #[error("section of degree {degree} does not fit in twist {twist}")]
    SectionTooLarge { degree: u32, twist: u32 },

    // field model
    #[error("the vector field is identically zero")]
    ZeroField,
    #[error("the foliation has a curve of singularities (common factor {0})")]
    NonIsolated(String),
    #[error("could not find a generic projection after {0} attempts")]
    NoGenericShear(usize),
    #[error("multiplicity computations disagree across shears")]
    ShearDisagreement,

    // darboux engine
    #[error("expected a nonconstant polynomial")]
    ConstantCurve,

    // blowup lab
    #[error("blow-up center is not a rational point: {0}")]
    NonRationalCenter(String),
    #[error("point {0} does not lie on the domain chart")]
    CenterOffChart(String),
    #[error("the transformed field acquires a pole along divisor {node} (order {order})")]
    PoleAcquired { node: usize, order: i64 },
    #[error("germ base point {0} is not a singular point of the foliation")]
    GermNotAtSingularity(String),
    #[error("germ equation does not vanish at its base point {0}")]
    GermOffPoint(String),
    #[error("no node with id {0}")]
    UnknownNode(usize),
    #[error("resolution tree is not resolved (step cap reached or pending points)")]
    Unresolved,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Name of the library layer that raised the error.
    pub fn layer(&self) -> &'static str {
        use Error::*;
        match self {
            ArityMismatch(..)
            | UnknownVariable(_)
            | DivisionByZero
            | DegreeTooLow { .. }
            | ConstantInVariable(_)
            | Shape(_) => "poly-core",
            LogOfZero | EmptyPencil | SectionTooLarge { .. } => "forms",
            ZeroField | NonIsolated(_) | NoGenericShear(_) | ShearDisagreement => "field-model",
            ConstantCurve => "darboux-engine",
            NonRationalCenter(_)
            | CenterOffChart(_)
            | PoleAcquired { .. }
            | GermNotAtSingularity(_)
            | GermOffPoint(_)
            | UnknownNode(_)
            | Unresolved
            | Unsupported(_) => "blowup-lab",
        }
    }
}
