use std::fmt;

use serde::Serialize;
use serde_json::Value;

/// Envelope printed by every command.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: &'static str,
    pub seed: u64,
    pub wall_time_ms: f64,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed: Option<u64>,
}

/// What a command hands back to the dispatcher.
pub struct Output {
    pub payload: Value,
    pub counts: Option<(u64, u64)>,
    /// JSON lines printed before the report.
    pub lines: Vec<String>,
}

impl Output {
    pub fn plain(payload: impl Serialize) -> Self {
        Output { payload: to_value(payload), counts: None, lines: Vec::new() }
    }

    pub fn checked(payload: impl Serialize, passed: u64, failed: u64) -> Self {
        Output { payload: to_value(payload), counts: Some((passed, failed)), lines: Vec::new() }
    }

    pub fn failed(&self) -> bool {
        self.counts.is_some_and(|(_, f)| f > 0)
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    CheckFailed = 1,
    Usage = 2,
    Precondition = 3,
}

/// Failure to run a command at all.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Precondition(String, String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) => Exit::Usage,
            CliError::Precondition(..) => Exit::Precondition,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => serde_json::json!({"error": "usage", "message": m}),
            CliError::Precondition(kind, m) => serde_json::json!({"error": kind, "message": m}),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Precondition(_, m) => f.write_str(m),
        }
    }
}

impl From<fqrecip::Error> for CliError {
    fn from(e: fqrecip::Error) -> Self {
        use fqrecip::Error as E;
        match &e {
            E::Parse(_) => CliError::Usage(e.to_string()),
            E::AtIndex { source, .. } => {
                let inner = CliError::from((**source).clone());
                match inner {
                    CliError::Usage(_) => CliError::Usage(e.to_string()),
                    CliError::Precondition(kind, _) => CliError::Precondition(kind, e.to_string()),
                }
            }
            _ => CliError::Precondition(error_kind(&e).into(), e.to_string()),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<fqrecip::Error>() {
            Ok(inner) => inner.into(),
            Err(e) => CliError::Precondition("io".into(), format!("{e:#}")),
        }
    }
}

fn error_kind(e: &fqrecip::Error) -> &'static str {
    use fqrecip::Error as E;
    match e {
        E::NotPrime(_) => "not_prime",
        E::SizeExceeded { .. } => "size_exceeded",
        E::NotPrimePower(_) => "not_prime_power",
        E::ZeroElement => "zero_element",
        E::DoesNotDivide { .. } => "does_not_divide",
        E::DivisionByZeroPoly => "division_by_zero",
        E::FieldMismatch => "field_mismatch",
        E::BothZero => "both_zero",
        E::ConstantPolynomial => "constant_polynomial",
        E::ZeroPolynomial => "zero_polynomial",
        E::NotIrreducible(_) => "not_irreducible",
        E::NotMonic(_) => "not_monic",
        E::ZeroModulus => "zero_modulus",
        E::NotCoprime => "not_coprime",
        E::ZeroInput => "zero_input",
        E::NotRootOfUnity(_) => "not_root_of_unity",
        E::CharacteristicDividesN { .. } => "characteristic_divides_n",
        E::NonConstantResidue(_) => "non_constant_residue",
        E::IndexMismatch => "index_mismatch",
        E::BothZeroAtIndex(_) => "both_zero_at_index",
        E::EmptyAtIndex(_) => "empty_at_index",
        E::ZeroAtIndex(_) => "zero_at_index",
        E::NegativeExponent(_) => "negative_exponent",
        E::UnknownProperty(_) => "unknown_property",
        E::AtIndex { .. } => "at_index",
        E::Parse(_) => "parse",
        E::Config(_) => "config",
    }
}
