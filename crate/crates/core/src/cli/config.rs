use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::characters::CharacterSpec;
use crate::identities::GridConfig;
use crate::exact::RootOfUnity;

/// A configuration problem, tagged with the offending key when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    pub fn at(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            key: Some(key.into()),
            message: message.into(),
        }
    }

    pub fn general(message: impl Into<String>) -> Self {
        ConfigError {
            key: None,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.key {
            Some(k) => write!(f, "config error at `{k}`: {}", self.message),
            None => write!(f, "config error: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

fn default_xi() -> RootOfUnity {
    RootOfUnity::one()
}

fn default_k() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumbersParams {
    #[serde(alias = "modulus")]
    pub d: Option<u64>,
    pub character: Option<CharacterSpec>,
    #[serde(default = "default_xi")]
    pub xi: RootOfUnity,
    #[serde(default = "default_k")]
    pub k: u64,
    pub n_max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialParams {
    #[serde(alias = "modulus")]
    pub d: Option<u64>,
    pub character: Option<CharacterSpec>,
    #[serde(default = "default_xi")]
    pub xi: RootOfUnity,
    #[serde(default = "default_k")]
    pub k: u64,
    pub n: u64,
}

/// `T_{k, chi, xi}(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSumParams {
    #[serde(alias = "modulus")]
    pub d: Option<u64>,
    pub character: Option<CharacterSpec>,
    #[serde(default = "default_xi")]
    pub xi: RootOfUnity,
    pub k: u64,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyParams {
    #[serde(default)]
    pub grids: Vec<GridConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(u64),
    Many(Vec<u64>),
}

impl OneOrMany {
    pub fn to_vec(&self) -> Vec<u64> {
        match self {
            OneOrMany::One(x) => vec![*x],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// Convergence traces for each `(p, n)`; with `shift`, traces of the shift identity instead.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VolkenbornParams {
    pub p: OneOrMany,
    #[serde(alias = "modulus")]
    pub d: Option<u64>,
    pub character: Option<CharacterSpec>,
    #[serde(default = "default_xi")]
    pub xi: RootOfUnity,
    pub n: OneOrMany,
    pub levels: Option<u32>,
    pub shift: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    ComputeNumbers(NumbersParams),
    ComputePolynomial(PolynomialParams),
    PowerSum(PowerSumParams),
    Verify(VerifyParams),
    Volkenborn(VolkenbornParams),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ComputeNumbers(_) => "compute-numbers",
            Command::ComputePolynomial(_) => "compute-polynomial",
            Command::PowerSum(_) => "power-sum",
            Command::Verify(_) => "verify",
            Command::Volkenborn(_) => "volkenborn",
        }
    }
}

/// A parsed config file: the command with its parameter block, plus optional
/// `output` path and `format` that command-line flags override.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<String>,
    pub format: Option<Format>,
}

fn block<T: DeserializeOwned>(rest: Map<String, Value>) -> Result<T, ConfigError> {
    serde_path_to_error::deserialize(Value::Object(rest)).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner().to_string();
        if path == "." {
            ConfigError::general(inner)
        } else {
            ConfigError::at(path, inner)
        }
    })
}

fn take_string(obj: &mut Map<String, Value>, key: &str) -> Result<Option<String>, ConfigError> {
    match obj.remove(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(other) => Err(ConfigError::at(key, format!("expected a string, found {other}"))),
    }
}

impl RunConfig {
    /// Reads `command` first, then the parameter block for that command with unknown keys rejected.
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::general(format!("invalid JSON: {e}")))?;
        let Value::Object(mut obj) = value else {
            return Err(ConfigError::general("top level must be a JSON object"));
        };
        let command = take_string(&mut obj, "command")?.ok_or_else(|| ConfigError::at("command", "missing"))?;
        let output = take_string(&mut obj, "output")?;
        let format = match take_string(&mut obj, "format")?.as_deref() {
            None => None,
            Some("json") => Some(Format::Json),
            Some("csv") => Some(Format::Csv),
            Some(other) => return Err(ConfigError::at("format", format!("expected json or csv, found {other:?}"))),
        };
        let command = match command.as_str() {
            "compute-numbers" => Command::ComputeNumbers(block(obj)?),
            "compute-polynomial" => Command::ComputePolynomial(block(obj)?),
            "power-sum" => Command::PowerSum(block(obj)?),
            "verify" => Command::Verify(block(obj)?),
            "volkenborn" => Command::Volkenborn(block(obj)?),
            other => {
                return Err(ConfigError::at(
                    "command",
                    format!(
                        "unknown command {other:?}; expected compute-numbers, compute-polynomial, power-sum, verify or volkenborn"
                    ),
                ))
            }
        };
        Ok(RunConfig { command, output, format })
    }
}
