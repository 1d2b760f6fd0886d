use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} is out of range for a ground set of size {n}")]
    IndexOutOfRange { element: usize, n: usize },

    #[error("cannot contract by a dependent set {0:?}")]
    Contract(Vec<usize>),

    #[error("set {set:?} exhausts knapsack row {row} (cost {cost} >= budget {budget})")]
    Reduction {
        set: Vec<usize>,
        row: usize,
        cost: f64,
        budget: f64,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid instance: {0}")]
    Spec(String),

    #[error("instance has no feasible single element")]
    EmptyInstance,

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("row {row}: {message}")]
    Ingest { row: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
