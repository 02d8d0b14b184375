//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rayon::prelude::*;
use wedd_core::catalog;
use wedd_core::construct::CaseTag;
use wedd_core::ff::{make_field, ExtensionField};
use wedd_core::galg::GroupAlgebra;
use wedd_core::groups::FiniteGroup;
use wedd_core::pipeline::{self, ComponentResult, Options, Verdict};

const FIELDS: [(u32, usize); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (5, 2)];

struct Run {
    name: String,
    order: usize,
    degree: usize,
    central: Verdict,
    lemmas: Vec<Verdict>,
    components: Vec<ComponentResult>,
}

fn run(g: &FiniteGroup, f: &ExtensionField) -> Run {
    let alg = GroupAlgebra::new(g, f);
    let plan = pipeline::plan(&alg).expect("plan");
    let opts = Options {
        matrix_units: false,
        construct: true,
    };
    Run {
        name: format!(
            "{} over F_{}^{}",
            g.name().unwrap_or("?"),
            f.characteristic(),
            f.degree()
        ),
        order: g.order(),
        degree: f.degree(),
        central: pipeline::central_verdict(&alg, &plan.components),
        lemmas: plan.pairs.iter().map(|p| pipeline::lemma_verdict(&alg, p)).collect(),
        components: plan
            .components
            .iter()
            .map(|c| pipeline::process_component(&alg, c, opts))
            .collect(),
    }
}

fn verdict<'a>(r: &'a ComponentResult, check: &str) -> impl Iterator<Item = &'a Verdict> {
    let check = check.to_owned();
    r.verdicts.iter().filter(move |v| v.check == check)
}

type Outcome = Result<String, String>;

fn completeness(runs: &[Run]) -> Outcome {
    for r in runs {
        if !r.central.passed {
            return Err(format!("{}: {}", r.name, r.central.detail));
        }
        let total: usize = r.components.iter().map(|c| c.measured.map_or(0, |m| m.dimension)).sum();
        if total != r.order {
            return Err(format!("{}: dimensions sum to {total}, not {}", r.name, r.order));
        }
    }
    Ok(format!("{} (G, F) pairs", runs.len()))
}

fn primitive_sets(runs: &[Run]) -> Outcome {
    let mut n = 0;
    for r in runs {
        for c in &r.components {
            for check in ["construct", "idempotent-set", "matrix-units"] {
                let mut vs = verdict(c, check).peekable();
                if vs.peek().is_none() {
                    return Err(format!("{}: no {check} verdict", r.name));
                }
                if let Some(v) = vs.find(|v| !v.passed) {
                    return Err(format!("{} {check}: {}", r.name, v.detail));
                }
            }
            let set = c.set.as_ref().expect("constructed");
            if set.idempotents.len() != c.measured.expect("measured").matrix_size {
                return Err(format!("{}: idempotent count differs from N", r.name));
            }
            n += 1;
        }
    }
    Ok(format!("{n} components"))
}

fn named_components() -> Outcome {
    let f3 = make_field(3, 1, None).unwrap();
    let q8 = run(&catalog::quaternion(8), &f3);
    let m21: Vec<_> = q8
        .components
        .iter()
        .filter(|c| c.measured.is_some_and(|m| (m.matrix_size, m.field_degree) == (2, 1)))
        .collect();
    if m21.len() != 1 {
        return Err(format!("Q8/F3 has {} components M_2(F_3)", m21.len()));
    }
    let w = &m21[0].set.as_ref().ok_or("Q8/F3 not constructed")?.witness;
    let (x, y) = (w.x.ok_or("no x")?, w.y.ok_or("no y")?);
    let sum = f3.add(f3.mul(x, x), f3.mul(y, y));
    if w.tag != CaseTag::Case2 || sum != f3.from_int(-1) || y.is_zero() {
        return Err(format!("Q8/F3 witness {:?} does not fit case 2", w.tag));
    }

    let m16 = run(&catalog::modular(16), &f3);
    let hit = m16.components.iter().any(|c| {
        c.measured.is_some_and(|m| (m.matrix_size, m.field_degree) == (2, 2))
            && c.component.shape.e == c.component.pair.h
    });
    if !hit {
        return Err("M16/F3 has no M_2(F_9) component with E = H".into());
    }

    let f2 = make_field(2, 1, None).unwrap();
    let c3 = run(&catalog::cyclic(3), &f2);
    if !c3
        .components
        .iter()
        .any(|c| c.measured.is_some_and(|m| (m.matrix_size, m.field_degree) == (1, 2)))
    {
        return Err("C3/F2 has no F_4 component".into());
    }
    Ok("Q8/F3 M_2(F_3) case 2, M16/F3 M_2(F_9) with E = H, C3/F2 F_4".into())
}

fn lemma_identities(runs: &[Run]) -> Outcome {
    let mut n = 0;
    for r in runs {
        for v in &r.lemmas {
            if !v.passed {
                return Err(format!("{}: {}", r.name, v.detail));
            }
            n += 1;
        }
        for c in &r.components {
            if let Some(v) = verdict(c, "class-independence").find(|v| !v.passed) {
                return Err(format!("{}: {}", r.name, v.detail));
            }
        }
    }
    Ok(format!("{n} strong Shoda pairs"))
}

fn hamming_code() -> Outcome {
    let f2 = make_field(2, 1, None).unwrap();
    let g = catalog::cyclic(7);
    let alg = GroupAlgebra::new(&g, &f2);
    let plan = pipeline::plan(&alg).map_err(|e| e.to_string())?;
    let e0 = alg.averaging_idempotent(&g.whole()).map_err(|e| e.to_string())?;
    let faithful = plan
        .components
        .iter()
        .find(|c| c.e_c != e0)
        .ok_or("no faithful component")?;
    let code = wedd_core::codes::left_ideal_code(&alg, &alg.add(&e0, &faithful.e_c), "e0+C");
    let d = wedd_core::codes::min_distance(&f2, &code, 1 << 20).map_err(|e| e.to_string())?;
    let params = (code.length, code.dimension(), d);
    if params == (7, 4, 3) {
        Ok("[7,4,3]".into())
    } else {
        Err(format!("{params:?}"))
    }
}

fn corner_rings(runs: &[Run]) -> Outcome {
    let (mut corners, mut exhaustive, mut notes) = (0, 0, 0);
    for r in runs {
        for c in &r.components {
            let m = c.measured.expect("measured");
            if let Some(v) = verdict(c, "corner-ring").find(|v| !v.passed) {
                return Err(format!("{}: {}", r.name, v.detail));
            }
            if c.corners.len() != m.matrix_size || c.corners.iter().any(|k| k.dimension != m.field_degree) {
                return Err(format!("{}: corner dimensions differ from d", r.name));
            }
            corners += c.corners.len();
            exhaustive += c.corners.iter().filter(|k| k.exhaustive).count();
            let shape = &c.component.shape;
            if shape.field_degree_measured != Some(m.field_degree * r.degree) {
                return Err(format!("{}: measured exponent not recorded", r.name));
            }
            let noted = c.notes.iter().any(|n| n.starts_with("printed exponent"));
            if noted == shape.printed_matches() {
                return Err(format!("{}: printed-exponent note missing or spurious", r.name));
            }
            notes += usize::from(noted);
        }
    }
    Ok(format!(
        "{corners} corners ({exhaustive} exhaustive), {notes} printed-exponent notes"
    ))
}

fn group_file(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "groups",
        &format!("{name}.json"),
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn wedd(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_wedd"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(out.stdout)
    } else {
        Err(String::from_utf8_lossy(&out.stderr).trim().to_owned())
    }
}

fn reduction() -> Outcome {
    let g = group_file("c6");
    let out = wedd(&["decompose", "--group", &g, "--q", "2", "--reduce"])?;
    let r: wedd::json::DecompositionReport = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let mut dims: Vec<usize> = r
        .components
        .iter()
        .filter_map(|c| c.measured.as_ref().map(|m| m.dimension))
        .collect();
    dims.sort();
    if r.group.order == 3 && dims == [1, 2] && r.passed {
        Ok("F_2 C_6 reduced to F_2 C_3 = F_2 + F_4".into())
    } else {
        Err(format!("order {}, dimensions {dims:?}", r.group.order))
    }
}

fn determinism() -> Outcome {
    let mut checked = Vec::new();
    for (name, q) in [("q8", "3"), ("m16", "3"), ("c12", "5")] {
        let g = group_file(name);
        let args = ["decompose", "--group", &g, "--q", q, "--matrix-units"];
        let a = wedd(&args)?;
        let b = wedd(&[&args[..], &["--jobs", "1"]].concat())?;
        if a != b {
            return Err(format!("{name} reports differ"));
        }
        checked.push(name);
    }
    Ok(format!("byte-identical reports for {checked:?}"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let pairs: Vec<(FiniteGroup, ExtensionField)> = catalog::corpus()
        .into_iter()
        .flat_map(|g| {
            FIELDS
                .iter()
                .filter(|&&(q, _)| g.order() % q as usize != 0)
                .map(|&(q, m)| (g.clone(), make_field(q, m, None).unwrap()))
                .collect::<Vec<_>>()
        })
        .collect();
    let runs: Vec<Run> = pairs.par_iter().map(|(g, f)| run(g, f)).collect();

    let results: [(&str, Outcome); 8] = [
        ("1 corpus completeness", completeness(&runs)),
        ("2 primitive sets and matrix units", primitive_sets(&runs)),
        ("3 named components", named_components()),
        ("4 lemma identities", lemma_identities(&runs)),
        ("5 Hamming code from F_2 C_7", hamming_code()),
        ("6 corner-ring fields", corner_rings(&runs)),
        ("7 modular reduction", reduction()),
        ("8 determinism", determinism()),
    ];
    let mut ok = true;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                ok = false;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
