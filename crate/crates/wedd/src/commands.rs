//! The four subcommands as plain functions returning report values. `main`
//! only parses flags, writes bytes and maps errors to exit codes.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use wedd_core::codes::{left_ideal_code, min_distance, LinearCode};
use wedd_core::construct::MatrixUnits;
use wedd_core::ff::ExtensionField;
use wedd_core::galg::{AlgebraElement, GroupAlgebra};
use wedd_core::groups::FiniteGroup;
use wedd_core::pipeline::{self, ComponentResult, Options, Plan};
use wedd_core::verify;

use crate::error::{CliError, CliResult};
use crate::input::{fingerprint, read_group, reduce_group, FieldSpec, GroupFile};
use crate::json::*;
use crate::selector::{self, Selector, Term};

pub const DEFAULT_MAX_ORDER: usize = 128;

/// Where the group and field come from.
#[derive(Clone, Debug)]
pub struct Input {
    pub group: PathBuf,
    pub field: FieldSpec,
    pub max_order: usize,
    pub reduce: bool,
}

#[derive(Clone, Debug)]
pub struct DecomposeArgs {
    pub input: Input,
    pub matrix_units: bool,
    pub require_nilpotent: bool,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CodesArgs {
    pub input: Input,
    pub selector: String,
    pub bound: u64,
    pub jobs: Option<usize>,
}

struct Prepared {
    group: FiniteGroup,
    field: ExtensionField,
    reduction: Option<ReductionJson>,
}

fn prepare(input: &Input) -> CliResult<Prepared> {
    let original = read_group(&input.group, input.max_order)?;
    let field = input.field.build()?;
    let q = field.characteristic();
    let (group, reduction) = if input.reduce && original.order() % q as usize == 0 {
        let (quotient, kernel_order) = reduce_group(&original, q)?;
        let r = ReductionJson {
            q,
            original_name: original.name().map(str::to_owned),
            original_order: original.order(),
            original_fingerprint: fingerprint(&original),
            kernel_order,
        };
        (quotient, Some(r))
    } else {
        (original, None)
    };
    if group.order() % q as usize == 0 {
        return Err(CliError::precondition(format!(
            "group order not invertible: q = {q} divides |G| = {} (try --reduce)",
            group.order()
        )));
    }
    Ok(Prepared {
        group,
        field,
        reduction,
    })
}

fn pool(jobs: Option<usize>) -> CliResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::precondition("--jobs must be at least 1"));
        }
        b = b.num_threads(n);
    }
    b.build()
        .map_err(|e| CliError::precondition(format!("cannot start worker pool: {e}")))
}

fn element_list(field: &ExtensionField, xs: &[AlgebraElement]) -> Vec<ElementJson> {
    xs.iter().map(|x| ElementJson::of(field, x)).collect()
}

fn exponent_string((num, den): (usize, usize)) -> String {
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn component_json(field: &ExtensionField, label: String, r: &ComponentResult) -> ComponentJson {
    let c = &r.component;
    let construction = r.set.as_ref().map(|s| ConstructionJson {
        witness: WitnessJson::of(field, &s.witness),
        beta: ElementJson::of(field, &s.beta),
        transversal: s.transversal.clone(),
        idempotents: element_list(field, &s.idempotents),
        matrix_units: r
            .units
            .as_ref()
            .map(|mu| mu.units.iter().map(|row| element_list(field, row)).collect()),
    });
    ComponentJson {
        label,
        pair: PairJson {
            h: c.pair.h.elements().to_vec(),
            k: c.pair.k.elements().to_vec(),
            generator: c.pair.generator,
            normalizer_of_k: c.pair.normalizer_of_k.elements().to_vec(),
        },
        class: ClassJson {
            modulus: c.class.modulus(),
            exponents: c.class.exponents().to_vec(),
        },
        e_c: ElementJson::of(field, &c.e_c),
        shape: ShapeJson {
            matrix_size: c.shape.matrix_size,
            field_degree_predicted: c.shape.field_degree_predicted,
            printed_exponent: exponent_string(c.shape.printed_exponent),
            field_degree_measured: c.shape.field_degree_measured,
            e: c.shape.e.elements().to_vec(),
            o: c.shape.o,
        },
        measured: r.measured.map(|m| MeasuredJson {
            dimension: m.dimension,
            center_dimension: m.center_dimension,
            matrix_size: m.matrix_size,
            field_degree: m.field_degree,
        }),
        construction,
        verdicts: r.verdicts.iter().map(VerdictJson::from).collect(),
        notes: r.notes.clone(),
    }
}

/// Checks whose outcome is only informative for non-nilpotent groups.
const NILPOTENT_ONLY: [&str; 3] = ["central-decomposition", "measure-shape", "predicted-shape"];

/// Everything in a decomposition report that depends only on `G` and `F`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub passed: bool,
    pub central_check: VerdictJson,
    pub lemma_checks: Vec<LemmaJson>,
    pub components: Vec<ComponentJson>,
}

/// The decomposition of `F G` for an already prepared group and field.
pub fn decompose_group(
    group: &FiniteGroup,
    field: &ExtensionField,
    matrix_units: bool,
    require_nilpotent: bool,
    jobs: Option<usize>,
) -> CliResult<Decomposition> {
    let nilpotent = group.is_nilpotent();
    let mut warnings = Vec::new();
    if !nilpotent {
        if require_nilpotent {
            return Err(CliError::scope("group is not nilpotent (--require-nilpotent)"));
        }
        warnings.push(
            "group is not nilpotent: only central idempotents and shapes are reported, and the completeness check is informative"
                .to_owned(),
        );
    }
    let alg = GroupAlgebra::new(group, field);
    let Plan { pairs, components, .. } = pipeline::plan(&alg)?;
    let opts = Options {
        matrix_units,
        construct: nilpotent,
    };
    let workers = pool(jobs)?;
    let (results, lemmas): (Vec<ComponentResult>, Vec<LemmaJson>) = workers.install(|| {
        let results = components
            .par_iter()
            .map(|c| pipeline::process_component(&alg, c, opts))
            .collect();
        let lemmas = pairs
            .par_iter()
            .map(|p| {
                let v = pipeline::lemma_verdict(&alg, p);
                LemmaJson {
                    h: p.h.elements().to_vec(),
                    k: p.k.elements().to_vec(),
                    passed: v.passed,
                    detail: v.detail,
                }
            })
            .collect();
        (results, lemmas)
    });
    let central = VerdictJson::from(&pipeline::central_verdict(&alg, &components));

    let counts = |v: &VerdictJson| nilpotent || !NILPOTENT_ONLY.contains(&v.check.as_str());
    let components: Vec<ComponentJson> = results
        .iter()
        .enumerate()
        .map(|(i, r)| component_json(field, format!("C{i}"), r))
        .collect();
    let passed = (central.passed || !counts(&central))
        && lemmas.iter().all(|l| l.passed)
        && components
            .iter()
            .flat_map(|c| &c.verdicts)
            .all(|v| v.passed || !counts(v));

    let notes = vec![
        "SS2 is tested as: H/K is cyclic and maximal abelian in N_G(K)/K".to_owned(),
        "field degrees are exponents of q; the prediction uses m*o/[E:H]".to_owned(),
    ];
    Ok(Decomposition {
        notes,
        warnings,
        passed,
        central_check: central,
        lemma_checks: lemmas,
        components,
    })
}

pub fn decompose(args: &DecomposeArgs) -> CliResult<DecompositionReport> {
    let p = prepare(&args.input)?;
    let d = decompose_group(&p.group, &p.field, args.matrix_units, args.require_nilpotent, args.jobs)?;
    Ok(DecompositionReport {
        format: DECOMPOSITION_FORMAT.to_owned(),
        field: FieldSpec::of(&p.field),
        group: GroupJson::of(&p.group),
        reduction: p.reduction,
        nilpotent: p.group.is_nilpotent(),
        passed: d.passed,
        notes: d.notes,
        warnings: d.warnings,
        central_check: d.central_check,
        lemma_checks: d.lemma_checks,
        components: d.components,
    })
}

/// `G/G_q` as a Cayley-table group file.
pub fn reduce(group: &Path, q: u32, max_order: usize) -> CliResult<GroupFile> {
    if q < 2 || !(2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d)) {
        return Err(CliError::precondition(format!("{q} is not prime")));
    }
    let g = read_group(group, max_order)?;
    let (quotient, _) = reduce_group(&g, q)?;
    Ok(GroupFile::from_group(&quotient))
}

fn code_json(field: &ExtensionField, code: &LinearCode, bound: u64) -> CodeJson {
    let (d, refusal) = match min_distance(field, code, bound) {
        Ok(d) => (Some(d), None),
        Err(e) => (None, Some(e.to_string())),
    };
    CodeJson {
        label: code.label.clone(),
        length: code.length,
        dimension: code.dimension(),
        min_distance: d,
        refusal,
        generator_matrix: code
            .basis
            .iter()
            .map(|row| row.iter().map(|&c| field.coeffs(c)).collect())
            .collect(),
    }
}

pub fn codes(args: &CodesArgs) -> CliResult<CodesReport> {
    let sel = selector::parse(&args.selector)?;
    let p = prepare(&args.input)?;
    let alg = GroupAlgebra::new(&p.group, &p.field);
    let plan = pipeline::plan(&alg)?;
    let n = plan.components.len();
    if sel.needs_primitive() && !plan.nilpotent {
        return Err(CliError::scope("primitive idempotents need a nilpotent group"));
    }

    let wanted: Vec<usize> = match &sel {
        Selector::AllCentral => Vec::new(),
        Selector::AllPrimitive => (0..n).collect(),
        Selector::Sum(terms) => {
            let mut v: Vec<usize> = terms
                .iter()
                .filter_map(|t| match t {
                    Term::Primitive(i, _) => Some(*i),
                    _ => None,
                })
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    let check_component = |i: usize| {
        if i < n {
            Ok(())
        } else {
            Err(CliError::precondition(format!(
                "component C{i} does not exist ({n} components)"
            )))
        }
    };
    for &i in &wanted {
        check_component(i)?;
    }
    let workers = pool(args.jobs)?;
    let sets = workers.install(|| {
        wanted
            .par_iter()
            .map(|&i| wedd_core::construct::construct_component(&alg, &plan.components[i]).map(|s| (i, s)))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let primitive = |i: usize, j: usize| -> CliResult<&AlgebraElement> {
        let (_, s) = sets.iter().find(|(c, _)| *c == i).expect("constructed");
        s.idempotents.get(j).ok_or_else(|| {
            CliError::precondition(format!("P{i}.{j} does not exist ({} idempotents)", s.idempotents.len()))
        })
    };

    let mut targets: Vec<(String, AlgebraElement)> = Vec::new();
    match &sel {
        Selector::AllCentral => {
            for (i, c) in plan.components.iter().enumerate() {
                targets.push((format!("C{i}"), c.e_c.clone()));
            }
        }
        Selector::AllPrimitive => {
            for (i, s) in &sets {
                for (j, e) in s.idempotents.iter().enumerate() {
                    targets.push((format!("P{i}.{j}"), e.clone()));
                }
            }
        }
        Selector::Sum(terms) => {
            let mut acc = alg.zero();
            for t in terms {
                let x = match *t {
                    Term::One => alg.one(),
                    Term::Trivial => alg.averaging_idempotent(&p.group.whole())?,
                    Term::Central(i) => {
                        check_component(i)?;
                        plan.components[i].e_c.clone()
                    }
                    Term::Primitive(i, j) => primitive(i, j)?.clone(),
                };
                acc = alg.add(&acc, &x);
            }
            targets.push((args.selector.trim().to_owned(), acc));
        }
    }

    let codes = workers.install(|| {
        targets
            .par_iter()
            .map(|(label, x)| code_json(&p.field, &left_ideal_code(&alg, x, label.clone()), args.bound))
            .collect()
    });
    Ok(CodesReport {
        format: CODES_FORMAT.to_owned(),
        field: FieldSpec::of(&p.field),
        group: GroupJson::of(&p.group),
        reduction: p.reduction,
        selector: args.selector.trim().to_owned(),
        codes,
    })
}

/// Generator matrix as text, one row per line. Prime fields print integers;
/// extension fields print coefficient tuples `(c0,c1,...)`.
pub fn generator_matrix_text(code: &CodeJson) -> String {
    let mut out = String::new();
    for row in &code.generator_matrix {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c.as_slice() {
                [x] => x.to_string(),
                cs => format!("({})", cs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
            })
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// File name for a code label: anything outside `[A-Za-z0-9.]` becomes `_`.
pub fn matrix_file_name(label: &str) -> String {
    let stem: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '_' })
        .collect();
    format!("{stem}.txt")
}

struct Checks(Vec<VerdictJson>);

impl Checks {
    fn push(&mut self, check: impl Into<String>, r: Result<String, String>) -> bool {
        let ok = r.is_ok();
        self.0.push(VerdictJson::new(&check.into(), r));
        ok
    }
}

fn core_err<T>(r: wedd_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Re-checks a persisted decomposition report from its embedded data, then
/// recomputes it and compares.
pub fn verify_report(report: &DecompositionReport, jobs: Option<usize>) -> VerificationReport {
    let mut checks = Checks(Vec::new());
    let format_ok = report.format == DECOMPOSITION_FORMAT;
    checks.push(
        "format",
        if format_ok {
            Ok(report.format.clone())
        } else {
            Err(format!("unknown format {:?}", report.format))
        },
    );
    let group = report.group.build().map_err(|e| e.message);
    let group_ok = checks.push(
        "fingerprint",
        group
            .as_ref()
            .map(|_| report.group.fingerprint.clone())
            .map_err(Clone::clone),
    );
    let field = report.field.build().map_err(|e| e.message);
    let field_ok = checks.push(
        "field",
        field
            .as_ref()
            .map(|f| format!("F_{}^{}", f.characteristic(), f.degree()))
            .map_err(Clone::clone),
    );
    let (Ok(group), Ok(field)) = (group, field) else {
        return finish(checks);
    };
    if !(format_ok && group_ok && field_ok) {
        return finish(checks);
    }
    let alg = GroupAlgebra::new(&group, &field);
    let nilpotent = group.is_nilpotent();

    let mut ecs = Vec::new();
    for c in &report.components {
        match c.e_c.to_element(&alg) {
            Ok(e) => ecs.push(e),
            Err(e) => {
                checks.push(format!("{} e_c", c.label), Err(e.message));
            }
        }
    }
    if ecs.len() == report.components.len() {
        let r = core_err(verify::check_central_decomposition(&alg, &ecs)).map(|d| format!("dimensions {d:?}"));
        if nilpotent {
            checks.push("central-decomposition", r);
        } else {
            let detail = match r {
                Ok(d) | Err(d) => format!("informative only: {d}"),
            };
            checks.push("central-decomposition", Ok(detail));
        }
        for (c, e) in report.components.iter().zip(&ecs) {
            verify_component(&alg, c, e, nilpotent, &mut checks);
        }
    }

    let recomputed = decompose_group(
        &group,
        &field,
        report
            .components
            .iter()
            .any(|c| c.construction.as_ref().is_some_and(|k| k.matrix_units.is_some())),
        false,
        jobs,
    );
    let drift = match recomputed {
        Err(e) => Err(format!("recomputation failed: {}", e.message)),
        Ok(Decomposition {
            notes,
            warnings,
            passed,
            central_check,
            lemma_checks,
            components,
        }) => {
            if passed != report.passed || nilpotent != report.nilpotent {
                Err("overall verdict differs from recomputation".to_owned())
            } else if notes != report.notes || warnings != report.warnings {
                Err("notes or warnings differ from recomputation".to_owned())
            } else if central_check != report.central_check {
                Err("central check differs from recomputation".to_owned())
            } else if lemma_checks != report.lemma_checks {
                Err("lemma checks differ from recomputation".to_owned())
            } else if components.len() != report.components.len() {
                Err(format!(
                    "{} components persisted, {} recomputed",
                    report.components.len(),
                    components.len()
                ))
            } else if let Some((a, _)) = report.components.iter().zip(&components).find(|(a, b)| a != b) {
                Err(format!("{} differs from recomputation", a.label))
            } else {
                Ok("zero drift".to_owned())
            }
        }
    };
    checks.push("drift", drift);
    finish(checks)
}

fn finish(checks: Checks) -> VerificationReport {
    VerificationReport {
        format: VERIFICATION_FORMAT.to_owned(),
        passed: checks.0.iter().all(|c| c.passed),
        checks: checks.0,
    }
}

fn verify_component(alg: &GroupAlgebra, c: &ComponentJson, e_c: &AlgebraElement, nilpotent: bool, checks: &mut Checks) {
    let label = &c.label;
    let measured = verify::measure_shape(alg, e_c);
    let measured_ok = match (&measured, &c.measured) {
        (Ok(m), Some(p)) => {
            let same = m.dimension == p.dimension
                && m.center_dimension == p.center_dimension
                && m.matrix_size == p.matrix_size
                && m.field_degree == p.field_degree;
            let r = if same {
                Ok(format!("N = {}, d = {}", m.matrix_size, m.field_degree))
            } else {
                Err(format!(
                    "measured (dim {}, centre {}, N {}, d {}) but report says (dim {}, centre {}, N {}, d {})",
                    m.dimension,
                    m.center_dimension,
                    m.matrix_size,
                    m.field_degree,
                    p.dimension,
                    p.center_dimension,
                    p.matrix_size,
                    p.field_degree
                ))
            };
            checks.push(format!("{label} measure-shape"), r)
        }
        (Err(e), None) if !nilpotent => {
            checks.push(format!("{label} measure-shape"), Ok(format!("informative only: {e}")))
        }
        (Err(e), _) => checks.push(format!("{label} measure-shape"), Err(e.to_string())),
        (Ok(_), None) => checks.push(
            format!("{label} measure-shape"),
            Err("report has no measured shape".to_owned()),
        ),
    };
    let Some(k) = &c.construction else {
        return;
    };
    if !measured_ok {
        return;
    }
    let m = measured.expect("checked above");
    let parsed = (|| -> CliResult<_> {
        let beta = k.beta.to_element(alg)?;
        let ids = k
            .idempotents
            .iter()
            .map(|x| x.to_element(alg))
            .collect::<CliResult<Vec<_>>>()?;
        Ok((beta, ids))
    })();
    let (beta, ids) = match parsed {
        Ok(v) => v,
        Err(e) => {
            checks.push(format!("{label} idempotent-set"), Err(e.message));
            return;
        }
    };
    let n = alg.group.order();
    if k.transversal.len() != ids.len() || k.transversal.iter().any(|&t| t >= n) {
        checks.push(
            format!("{label} idempotent-set"),
            Err("transversal does not match the idempotents".to_owned()),
        );
        return;
    }
    let conj_ok = k
        .transversal
        .iter()
        .zip(&ids)
        .all(|(&t, x)| alg.conjugate(&beta, t) == *x);
    let r = if conj_ok {
        core_err(verify::check_idempotent_set(alg, &ids, e_c, m.matrix_size))
            .map(|_| format!("{} idempotents", ids.len()))
    } else {
        Err("idempotents are not the conjugates of beta by the transversal".to_owned())
    };
    if !checks.push(format!("{label} idempotent-set"), r) {
        return;
    }

    let units: Vec<Vec<AlgebraElement>> = k
        .transversal
        .iter()
        .map(|&t| {
            let left = alg.left_mul_group(alg.group.inv(t), &beta);
            k.transversal.iter().map(|&s| alg.right_mul_group(&left, s)).collect()
        })
        .collect();
    let mu = MatrixUnits {
        transversal: k.transversal.clone(),
        units,
    };
    let persisted_ok = match &k.matrix_units {
        None => Ok(()),
        Some(rows) => {
            let same = rows.len() == mu.size()
                && rows.iter().zip(&mu.units).all(|(pr, ur)| {
                    pr.len() == ur.len() && pr.iter().zip(ur).all(|(p, u)| p.to_element(alg).is_ok_and(|p| p == *u))
                });
            if same {
                Ok(())
            } else {
                Err("persisted matrix units differ from t^-1 beta t'".to_owned())
            }
        }
    };
    let r = persisted_ok
        .and_then(|_| core_err(verify::check_matrix_units(alg, &mu, e_c)).map(|q| format!("{q} quadruples")));
    checks.push(format!("{label} matrix-units"), r);
    for i in 0..mu.size() {
        let r = core_err(verify::check_corner_ring(alg, mu.get(i, i), m.field_degree)).map(|c| {
            format!(
                "dimension {}, {} elements {}",
                c.dimension,
                c.elements_checked,
                if c.exhaustive { "exhaustive" } else { "sampled" }
            )
        });
        checks.push(format!("{label} corner-ring {i}"), r);
    }
}

pub fn read_report(path: &Path) -> CliResult<DecompositionReport> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::precondition(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::precondition(format!("{}: malformed report: {e}", path.display())))
}
