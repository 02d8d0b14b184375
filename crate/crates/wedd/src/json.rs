//! Report schema. Every collection is a `Vec` or is written in index order,
//! so identical inputs serialise to identical bytes.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use wedd_core::construct::CaseWitness;
use wedd_core::ff::{ExtensionField, FieldElement};
use wedd_core::galg::{AlgebraElement, GroupAlgebra};
use wedd_core::groups::FiniteGroup;
use wedd_core::pipeline::Verdict;

use crate::error::{CliError, CliResult};
use crate::input::{fingerprint, FieldSpec};

pub const DECOMPOSITION_FORMAT: &str = "wedd-decomposition/1";
pub const CODES_FORMAT: &str = "wedd-codes/1";
pub const VERIFICATION_FORMAT: &str = "wedd-verification/1";

/// `{ "coeffs": { "<index>": [c0, ..., c_{m-1}] } }`, zeros omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementJson {
    pub coeffs: Vec<(usize, Vec<u32>)>,
}

impl ElementJson {
    pub fn of(field: &ExtensionField, a: &AlgebraElement) -> Self {
        ElementJson {
            coeffs: a.support().into_iter().map(|i| (i, field.coeffs(a.coeff(i)))).collect(),
        }
    }

    pub fn to_element(&self, alg: &GroupAlgebra) -> CliResult<AlgebraElement> {
        let f = alg.field;
        let mut coeffs = vec![FieldElement::ZERO; alg.dimension()];
        for (i, c) in &self.coeffs {
            if *i >= coeffs.len() {
                return Err(CliError::precondition(format!("element index {i} outside the group")));
            }
            if c.len() != f.degree() || c.iter().any(|&x| x >= f.characteristic()) {
                return Err(CliError::precondition(format!("bad coefficient vector {c:?}")));
            }
            coeffs[*i] = f.from_coeffs(c);
        }
        Ok(alg.from_coeffs(coeffs)?)
    }
}

impl Serialize for ElementJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a [(usize, Vec<u32>)]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (i, c) in self.0 {
                    map.serialize_entry(&i.to_string(), c)?;
                }
                map.end()
            }
        }
        let mut outer = s.serialize_map(Some(1))?;
        outer.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        outer.end()
    }
}

impl<'de> Deserialize<'de> for ElementJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeffs: BTreeMap<String, Vec<u32>>,
        }
        let raw = Raw::deserialize(d)?;
        let mut coeffs = raw
            .coeffs
            .into_iter()
            .map(|(k, v)| k.parse::<usize>().map(|i| (i, v)).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        coeffs.sort_by_key(|(i, _)| *i);
        Ok(ElementJson { coeffs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: Option<String>,
    pub order: usize,
    /// SHA-256 of the Cayley table.
    pub fingerprint: String,
    pub cayley_table: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupJson {
            name: g.name().map(str::to_owned),
            order: g.order(),
            fingerprint: fingerprint(g),
            cayley_table: g.cayley_rows(),
        }
    }

    /// Rebuilds the group and checks the fingerprint.
    pub fn build(&self) -> CliResult<FiniteGroup> {
        let g = FiniteGroup::from_cayley_table(&self.cayley_table, self.cayley_table.len().max(1))?;
        if fingerprint(&g) != self.fingerprint || g.order() != self.order {
            return Err(CliError::verification(
                "group fingerprint does not match the embedded table",
            ));
        }
        Ok(match &self.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionJson {
    pub q: u32,
    pub original_name: Option<String>,
    pub original_order: usize,
    pub original_fingerprint: String,
    /// `|G_q|`.
    pub kernel_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            check: v.check.to_owned(),
            passed: v.passed,
            detail: v.detail.clone(),
        }
    }
}

impl VerdictJson {
    pub fn new(check: &str, result: Result<String, String>) -> Self {
        match result {
            Ok(detail) => VerdictJson {
                check: check.to_owned(),
                passed: true,
                detail,
            },
            Err(detail) => VerdictJson {
                check: check.to_owned(),
                passed: false,
                detail,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaJson {
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub h: Vec<usize>,
    pub k: Vec<usize>,
    pub generator: usize,
    pub normalizer_of_k: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub modulus: u64,
    pub exponents: Vec<u64>,
}

/// Field degrees are exponents of `q`: the centre is `F_{q^degree}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub matrix_size: usize,
    pub field_degree_predicted: usize,
    pub printed_exponent: String,
    pub field_degree_measured: Option<usize>,
    pub e: Vec<usize>,
    pub o: u64,
}

/// `F`-dimensions of `F G e_C` and of its centre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasuredJson {
    pub dimension: usize,
    pub center_dimension: usize,
    pub matrix_size: usize,
    pub field_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub case: String,
    pub a2: usize,
    pub a2_odd: usize,
    pub b2: Option<usize>,
    pub c2: Option<usize>,
    pub b2_odd: usize,
    pub m2: Option<Vec<usize>>,
    pub n: u32,
    pub k: u32,
    pub r: Option<u64>,
    pub d: usize,
    pub x: Option<Vec<u32>>,
    pub y: Option<Vec<u32>>,
}

impl WitnessJson {
    pub fn of(field: &ExtensionField, w: &CaseWitness) -> Self {
        WitnessJson {
            case: w.tag.as_str().to_owned(),
            a2: w.a2,
            a2_odd: w.a2_odd,
            b2: w.b2,
            c2: w.c2,
            b2_odd: w.b2_odd,
            m2: w.m2.as_ref().map(|m| m.elements().to_vec()),
            n: w.n,
            k: w.k,
            r: w.r,
            d: w.d,
            x: w.x.map(|x| field.coeffs(x)),
            y: w.y.map(|y| field.coeffs(y)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub witness: WitnessJson,
    pub beta: ElementJson,
    pub transversal: Vec<usize>,
    pub idempotents: Vec<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix_units: Option<Vec<Vec<ElementJson>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub label: String,
    pub pair: PairJson,
    pub class: ClassJson,
    pub e_c: ElementJson,
    pub shape: ShapeJson,
    pub measured: Option<MeasuredJson>,
    pub construction: Option<ConstructionJson>,
    pub verdicts: Vec<VerdictJson>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub format: String,
    pub field: FieldSpec,
    pub group: GroupJson,
    pub reduction: Option<ReductionJson>,
    pub nilpotent: bool,
    pub passed: bool,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub central_check: VerdictJson,
    pub lemma_checks: Vec<LemmaJson>,
    pub components: Vec<ComponentJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub label: String,
    pub length: usize,
    pub dimension: usize,
    pub min_distance: Option<usize>,
    /// Why `min_distance` was not computed, if it was not.
    pub refusal: Option<String>,
    /// Rows of the generator matrix, each entry a coefficient vector.
    pub generator_matrix: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodesReport {
    pub format: String,
    pub field: FieldSpec,
    pub group: GroupJson,
    pub reduction: Option<ReductionJson>,
    pub selector: String,
    pub codes: Vec<CodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format: String,
    pub passed: bool,
    pub checks: Vec<VerdictJson>,
}

/// Pretty JSON with a trailing newline.
pub fn to_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialise");
    out.push(b'\n');
    out
}
