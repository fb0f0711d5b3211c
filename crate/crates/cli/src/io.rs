use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crossprod::numkit::Tolerance;
use crossprod::reps::IrrepDecomposition;
use crossprod::structures::{FiniteGroup, GroupAction, MatAlg, StarAut};
use crossprod::Error;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const EXIT_SCHEMA: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;
pub const EXIT_NOT_IRREDUCIBLE: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

/// Seed and tolerances in effect; echoed into every report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub tolerance: Tolerance,
}

impl Header {
    pub fn new(seed: u64, tolerance: Tolerance) -> Self {
        Header { tool: "crossprod", version: env!("CARGO_PKG_VERSION"), seed, tolerance }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: String,
    pub message: String,
    pub decomposition: Option<IrrepDecomposition>,
}

impl CliError {
    pub fn schema(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_SCHEMA, kind: "Schema".into(), message: msg.into(), decomposition: None }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_INTERNAL, kind: "Internal".into(), message: msg.into(), decomposition: None }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        use Error::*;
        let code = match &e {
            NotIrreducible { .. } => EXIT_NOT_IRREDUCIBLE,
            InvalidTolerance(_) | DimensionMismatch(_) | InvalidGroup(_) | InvalidAlgebra(_) | ActionMismatch(_)
            | LabelMismatch(_) => EXIT_SCHEMA,
            InvariantViolation(_) | DecompositionFailed(_) => EXIT_INTERNAL,
            _ => EXIT_INVARIANT,
        };
        let dbg = format!("{e:?}");
        let kind = dbg.split(['(', ' ', '{']).next().unwrap_or_default().to_string();
        CliError { code, kind, message: e.to_string(), decomposition: None }
    }
}

/// Machine-readable form of a failure.
#[derive(Serialize)]
pub struct Diagnostic<'a> {
    pub header: Header,
    pub error: ErrorBody<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<&'a IrrepDecomposition>,
}

#[derive(Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'a str,
    pub exit_code: u8,
    pub message: &'a str,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::schema(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::schema(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::internal(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::internal(e.to_string()))
}

/// An action file: the group, optionally the algebra, and automorphisms
/// either for every element (`auts`) or for generators (`generators`), keyed
/// by element index or label.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionFile {
    group: FiniteGroup,
    #[serde(default)]
    algebra: Option<MatAlg>,
    #[serde(default)]
    auts: Option<BTreeMap<String, StarAut>>,
    #[serde(default)]
    generators: Option<BTreeMap<String, StarAut>>,
}

fn element(group: &FiniteGroup, key: &str) -> Result<usize, CliError> {
    key.parse::<usize>()
        .ok()
        .filter(|&g| g < group.order())
        .or_else(|| group.find_label(key))
        .ok_or_else(|| CliError::schema(format!("unknown group element {key:?}")))
}

pub fn load_action(algebra: Option<&Path>, action: &Path, tol: &Tolerance) -> Result<GroupAction, CliError> {
    let file: ActionFile = read_json(action)?;
    let alg = match (algebra.map(read_json::<MatAlg>).transpose()?, file.algebra) {
        (Some(a), Some(b)) if a != b => return Err(CliError::schema("algebra file and action file disagree on the algebra")),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(CliError::schema("no algebra given (pass --algebra or an \"algebra\" field)")),
    };
    let group = file.group;
    match (file.auts, file.generators) {
        (Some(auts), None) => {
            let mut slots: Vec<Option<StarAut>> = vec![None; group.order()];
            for (k, a) in auts {
                slots[element(&group, &k)?] = Some(a);
            }
            let auts = slots
                .into_iter()
                .enumerate()
                .map(|(g, a)| a.ok_or_else(|| CliError::schema(format!("no automorphism for element {g}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GroupAction::new(group, alg, auts, tol)?)
        }
        (None, Some(gens)) => {
            let gens = gens.into_iter().map(|(k, a)| Ok((element(&group, &k)?, a))).collect::<Result<Vec<_>, CliError>>()?;
            Ok(GroupAction::from_generators(group, alg, &gens, tol)?)
        }
        _ => Err(CliError::schema("action file needs exactly one of \"auts\" or \"generators\"")),
    }
}
