//! Group files, field flags and the `G -> G/G_q` reduction.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wedd_core::ff::{make_field, ExtensionField};
use wedd_core::groups::FiniteGroup;

use crate::error::{CliError, CliResult};

/// Either permutation generators (0-based image arrays) or a Cayley table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Permutations {
        #[serde(default)]
        name: Option<String>,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Table {
        #[serde(default)]
        name: Option<String>,
        cayley_table: Vec<Vec<usize>>,
    },
}

impl GroupFile {
    pub fn build(&self, max_order: usize) -> CliResult<FiniteGroup> {
        let (g, name) = match self {
            GroupFile::Permutations {
                name,
                degree,
                generators,
            } => (FiniteGroup::from_permutations(*degree, generators, max_order)?, name),
            GroupFile::Table { name, cayley_table } => (FiniteGroup::from_cayley_table(cayley_table, max_order)?, name),
        };
        Ok(match name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile::Table {
            name: g.name().map(str::to_owned),
            cayley_table: g.cayley_rows(),
        }
    }
}

pub fn read_group(path: &Path, max_order: usize) -> CliResult<FiniteGroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::precondition(format!("cannot read {}: {e}", path.display())))?;
    let file: GroupFile = serde_json::from_str(&text)
        .map_err(|e| CliError::precondition(format!("{}: not a group file: {e}", path.display())))?;
    file.build(max_order)
}

/// `{ "q": <prime>, "m": <int>, "modulus": [c0, ..., 1] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub q: u32,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn build(&self) -> CliResult<ExtensionField> {
        Ok(make_field(self.q, self.m, self.modulus.as_deref())?)
    }

    pub fn of(field: &ExtensionField) -> Self {
        FieldSpec {
            q: field.characteristic(),
            m: field.degree(),
            modulus: Some(field.modulus().to_vec()),
        }
    }
}

/// Parses `--modulus 1,1,1`.
pub fn parse_modulus(csv: &str) -> CliResult<Vec<u32>> {
    csv.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError::precondition(format!("bad modulus coefficient {t:?}")))
        })
        .collect()
}

/// SHA-256 of the order and the table rows, as hex.
pub fn fingerprint(g: &FiniteGroup) -> String {
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    for row in g.cayley_rows() {
        for x in row {
            h.update((x as u32).to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// `G/G_q` with `G_q` the Sylow `q`-subgroup of a nilpotent `G`; its order is
/// prime to `q`. Returns the quotient and `|G_q|`.
pub fn reduce_group(g: &FiniteGroup, q: u32) -> CliResult<(FiniteGroup, usize)> {
    if !g.is_nilpotent() {
        return Err(CliError::scope("reduction needs a nilpotent group"));
    }
    let sylow = g.sylow_decomposition()?;
    let kernel = sylow.get(&(q as u64)).cloned().unwrap_or_else(|| g.trivial());
    let quotient = g.quotient(&kernel)?;
    let name = match g.name() {
        Some(n) => format!("{n}/G_{q}"),
        None => format!("G/G_{q}"),
    };
    Ok((quotient.quotient.with_name(name), kernel.order()))
}
