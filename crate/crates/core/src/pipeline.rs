//! The decomposition pipeline: enumerate components, then construct and
//! verify each one. Per-component work is exposed separately so callers can
//! schedule it however they like.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::construct::{construct_component, matrix_units, IdempotentSet, MatrixUnits};
use crate::galg::{AlgebraElement, GroupAlgebra};
use crate::shoda::{central_decomposition, strong_shoda_pairs, Component, StrongShodaPair, TraceCache};
use crate::verify::{self, CornerReport, MeasuredShape};
use crate::Result;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Keep the `E_{tt'}` grid in the result.
    pub matrix_units: bool,
    /// Build primitive idempotents (only possible for nilpotent groups).
    pub construct: bool,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn from_result<T>(check: &'static str, r: &Result<T>, ok_detail: impl FnOnce(&T) -> String) -> Self {
        match r {
            Ok(v) => Verdict {
                check,
                passed: true,
                detail: ok_detail(v),
            },
            Err(e) => Verdict {
                check,
                passed: false,
                detail: e.to_string(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentResult {
    pub component: Component,
    pub measured: Option<MeasuredShape>,
    pub set: Option<IdempotentSet>,
    pub units: Option<MatrixUnits>,
    pub corners: Vec<CornerReport>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
}

impl ComponentResult {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

/// Pairs and components of `F G`, before any per-component work.
#[derive(Clone, Debug)]
pub struct Plan {
    pub pairs: Vec<StrongShodaPair>,
    pub components: Vec<Component>,
    pub nilpotent: bool,
}

pub fn plan(alg: &GroupAlgebra) -> Result<Plan> {
    let pairs = strong_shoda_pairs(alg.group);
    let components = central_decomposition(alg, &pairs)?;
    Ok(Plan {
        pairs,
        components,
        nilpotent: alg.group.is_nilpotent(),
    })
}

/// Central decomposition check over all components.
pub fn central_verdict(alg: &GroupAlgebra, components: &[Component]) -> Verdict {
    let es: Vec<AlgebraElement> = components.iter().map(|c| c.e_c.clone()).collect();
    let r = verify::check_central_decomposition(alg, &es);
    Verdict::from_result("central-decomposition", &r, |dims| format!("dimensions {dims:?}"))
}

/// Lemma identities for one pair.
pub fn lemma_verdict(alg: &GroupAlgebra, pair: &StrongShodaPair) -> Verdict {
    let mut cache = TraceCache::new();
    let r = verify::check_epsilon_projection(alg, pair, &mut cache);
    Verdict::from_result("epsilon-projection", &r, |_| String::new())
}

/// Measure, construct and verify one component.
pub fn process_component(alg: &GroupAlgebra, comp: &Component, opts: Options) -> ComponentResult {
    let mut verdicts = Vec::new();
    let mut notes = Vec::new();
    let mut shape = comp.shape.clone();

    let mut cache = TraceCache::new();
    let indep = verify::check_class_independence(alg, &comp.pair, &comp.class, &mut cache);
    verdicts.push(Verdict::from_result("class-independence", &indep, |_| String::new()));

    let measured = verify::measure_shape(alg, &comp.e_c);
    verdicts.push(Verdict::from_result("measure-shape", &measured, |m| {
        format!("N = {}, d = {}", m.matrix_size, m.field_degree)
    }));
    let measured = measured.ok();
    if let Some(m) = measured {
        shape.field_degree_measured = Some(m.field_degree * alg.field.degree());
        let agrees =
            m.matrix_size == shape.matrix_size && m.field_degree * alg.field.degree() == shape.field_degree_predicted;
        verdicts.push(Verdict {
            check: "predicted-shape",
            passed: agrees,
            detail: format!(
                "predicted M_{}(F_{{q^{}}}), measured M_{}(F_{{q^{}}})",
                shape.matrix_size,
                shape.field_degree_predicted,
                m.matrix_size,
                m.field_degree * alg.field.degree()
            ),
        });
    }
    if !shape.printed_matches() {
        let (num, den) = shape.printed_exponent;
        let printed = if den == 1 {
            format!("{num}")
        } else {
            format!("{num}/{den}")
        };
        notes.push(format!(
            "printed exponent m*o/[E:K] = {printed} differs from m*o/[E:H] = {}",
            shape.field_degree_predicted
        ));
    }

    let mut set = None;
    let mut units = None;
    let mut corners = Vec::new();
    if opts.construct {
        let built = construct_component(alg, comp);
        verdicts.push(Verdict::from_result("construct", &built, |s| {
            s.witness.tag.as_str().into()
        }));
        if let (Ok(s), Some(m)) = (built, measured) {
            let r = verify::check_idempotent_set(alg, &s.idempotents, &s.e_c, m.matrix_size);
            verdicts.push(Verdict::from_result("idempotent-set", &r, |_| {
                format!("{} idempotents", s.idempotents.len())
            }));
            let mu = matrix_units(alg, &s);
            let r = verify::check_matrix_units(alg, &mu, &s.e_c);
            verdicts.push(Verdict::from_result("matrix-units", &r, |n| format!("{n} quadruples")));
            for i in 0..mu.size() {
                let r = verify::check_corner_ring(alg, mu.get(i, i), m.field_degree);
                verdicts.push(Verdict::from_result("corner-ring", &r, |c| {
                    format!(
                        "dimension {}, {} elements {}",
                        c.dimension,
                        c.elements_checked,
                        if c.exhaustive { "exhaustive" } else { "sampled" }
                    )
                }));
                if let Ok(c) = r {
                    corners.push(c);
                }
            }
            if opts.matrix_units {
                units = Some(mu);
            }
            set = Some(s);
        }
    }

    let mut component = comp.clone();
    component.shape = shape;
    ComponentResult {
        component,
        measured,
        set,
        units,
        corners,
        verdicts,
        notes,
    }
}
