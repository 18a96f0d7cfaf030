use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which operand of a conducted shuffle a count mismatch refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    First,
    Second,
}

impl std::fmt::Display for Operand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Operand::First => f.write_str("first"),
            Operand::Second => f.write_str("second"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter {letter} at position {position} is outside the alphabet of size {alphabet}")]
    LetterOutOfRange {
        letter: u8,
        position: usize,
        alphabet: u8,
    },
    #[error("invalid character {ch:?} at position {position}")]
    InvalidCharacter { ch: char, position: usize },
    #[error("alphabet size must be between 1 and 10, got {0}")]
    InvalidAlphabet(usize),
    #[error("operands use different alphabets ({left} and {right})")]
    AlphabetMismatch { left: u8, right: u8 },
    #[error("conducting sequence selects {found} letters from the {operand} operand, which has length {expected}")]
    CountMismatch {
        operand: Operand,
        expected: usize,
        found: usize,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{0} is undefined for the empty word")]
    EmptyWord(&'static str),
    #[error("a periodic conducting sequence needs both bits in its period, got {0:?}")]
    DegeneratePeriod(String),
    #[error("morphism is not prolongable on {seed}: image {image}")]
    NotProlongable { seed: u8, image: String },
    #[error("morphism has an empty image for letter {0}")]
    EmptyImage(u8),
    #[error("letter {letter} has no image with index {choice}")]
    BadChoice { letter: u8, choice: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown catalog entry {name:?}{}", suggest(.suggestions))]
    UnknownEntry {
        name: String,
        suggestions: Vec<String>,
    },
    #[error("catalog entry {name:?} is a {found}, expected a {expected}")]
    WrongKind {
        name: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("length {0} must be even")]
    OddLength(usize),
    #[error("{what} must be at least {min}, got {value}")]
    BelowDomain {
        what: &'static str,
        min: usize,
        value: usize,
    },
    #[error("{0} is not certified square-free")]
    Uncertified(String),
    #[error("target length {target} lies outside [{low}, {high}]")]
    TargetOutOfRange {
        target: usize,
        low: usize,
        high: usize,
    },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("no strategy constructed a witness of length {0}")]
    Unconstructed(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn suggest(names: &[String]) -> String {
    if names.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", names.join(", "))
    }
}
