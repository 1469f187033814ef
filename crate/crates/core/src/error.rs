use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("self-loop on node `{0}`")]
    SelfLoop(String),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),

    #[error("empty edge list")]
    EmptyGraph,

    #[error("malformed label {0:?}")]
    MalformedLabel(String),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("`{0}` is not a port")]
    NotAPort(String),

    #[error("`{0}` is not an internal node")]
    NotInternal(String),

    #[error("connected graph required")]
    Disconnected,

    #[error("subset does not belong to this graph (width {found}, expected {expected})")]
    WidthMismatch { expected: usize, found: usize },

    #[error("state is not a Kekulé state")]
    NotKekule,

    #[error("curve not alternating for W")]
    NotAlternating,

    #[error("port-set mismatch")]
    PortSetMismatch,

    #[error("state not in cell")]
    StateNotInCell,

    #[error("empty cell")]
    EmptyCell,

    #[error("cell is not flexible; restrict it with flex first")]
    NotFlexible,

    #[error("not a Kekulé cell: {0}")]
    NotKekuleCell(String),

    #[error("classification undefined beyond 4 ports")]
    TooManyPortsToClassify,

    #[error("no semi-Kekulé state for this parity")]
    ParityMismatch,

    #[error("enumeration refused: 2^{r} candidate states exceeds the 2^{limit} limit")]
    EnumerationTooLarge { r: usize, limit: usize },

    #[error("omniconjugation requires at least two ports")]
    TooFewPorts,

    #[error("omniconjugation check limited to {limit} ports, graph has {found}")]
    TooManyPorts { limit: usize, found: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no Kekulé state")]
    NoKekuleState,

    #[error("label collision on `{0}`")]
    LabelCollision(String),

    #[error("unknown channel `{0}`")]
    UnknownChannel(String),

    #[error("unknown socket `{0}`")]
    UnknownSocket(String),

    #[error("socket invariant violated for `{socket}` at state {state}: {open} channels open")]
    SocketInvariant {
        socket: String,
        state: String,
        open: usize,
    },

    #[error("invalid functional cell: {0}")]
    InvalidFunctionalCell(String),

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
