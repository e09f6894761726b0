use thiserror::Error;

use crate::instance::Chord;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is outside the cycle [1, {n}]")]
    VertexRange { vertex: u32, n: u32 },

    #[error("chord endpoints coincide at vertex {0}")]
    Loop(u32),

    #[error("{a} and {b} are consecutive on the cycle; not a chord")]
    CycleEdge { a: u32, b: u32 },

    #[error("cycle must have at least 4 vertices, got {0}")]
    CycleTooSmall(u32),

    #[error("malformed instance: {0}")]
    Format(String),

    #[error("duplicate link {0}")]
    DuplicateLink(Chord),

    #[error("candidate links do not 3-connect the cycle; chord {witness} is uncrossed")]
    InfeasibleCandidateSet { witness: Chord },

    #[error("link set is infeasible; chord {witness} is uncrossed")]
    InfeasibleInput { witness: Chord },

    #[error("links do not form a circle component")]
    NotAComponent,

    #[error("{0} is not a border chord of the component")]
    NotABorderChord(Chord),

    #[error("link {0} is a singleton of the circle graph")]
    Singleton(Chord),

    #[error("link {0} is not part of the instance")]
    UnknownLink(Chord),

    #[error("alpha = {0} is outside (1/2, 1]")]
    AlphaRange(String),

    #[error("invalid search parameters: {0}")]
    Params(String),

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    #[error("|V(F)| = {v_f} is outside {interval}")]
    Interval { v_f: u64, interval: String },

    #[error("certificate check failed: {0}")]
    CertificateInfeasible(String),

    #[error("matching link {0} touches a covered vertex")]
    Overlap(Chord),

    #[error("exact search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },

    #[error("no feasible instance after {attempts} attempts")]
    GenerationFailed { attempts: u32 },
}
