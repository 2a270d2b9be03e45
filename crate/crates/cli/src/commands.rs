use std::path::Path;

use serde_json::{json, Value};

use toric_core::classify::{
    analyze_divisor, catalog, classify_fano_with_divisor, random_corpus, simplify_pair, theorem1_check,
    verify_theorem2, Route, Simplification, Theorem1Report, Theorem1Target,
};
use toric_core::format::{fan_to_json, int_to_json, write_fan_json};
use toric_core::mori::{contraction_info, MoriCone};
use toric_core::{anticanonical_degree, fans_isomorphic, is_fano, Error, Fan, Int, Wall};

use crate::report::{Finding, Report};
use crate::{parse_fan, CliError, Command, CorpusSpec};

type Result<T> = std::result::Result<T, CliError>;

fn ints(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

fn wall_json(w: &Wall) -> Value {
    json!({
        "wall_rays": w.wall_rays,
        "apexes": [w.apex_a, w.apex_b],
        "coeffs": ints(&w.coeffs),
        "anticanonical_degree": int_to_json(&anticanonical_degree(w)),
    })
}

fn require_smooth_complete(fan: &Fan) -> Result<()> {
    if !fan.is_smooth() {
        return Err(Error::NotSmooth.into());
    }
    if !fan.is_complete() {
        return Err(Error::NotComplete.into());
    }
    Ok(())
}

pub(crate) fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::Check { fan } => check(fan),
        Command::Divisors { fan } => divisors(fan),
        Command::Mori { fan } => mori(fan),
        Command::Classify { fan, ray } => classify(fan, *ray),
        Command::Simplify { fan, ray } => simplify(fan, *ray),
        Command::Catalog { dim, emit } => catalog_cmd(*dim, emit.as_deref()),
        Command::VerifyTheorem2 { dim } => theorem2(*dim),
        Command::VerifyTheorem1 { input, corpus } => match (input, corpus) {
            (Some(path), _) => theorem1_input(path),
            (None, Some(spec)) => theorem1_corpus(*spec),
            (None, None) => Err(Error::Parse("one of --input or --corpus is required".into()).into()),
        },
        Command::Iso { a, b } => iso(a, b),
    }
}

fn check(path: &Path) -> Result<Report> {
    let fan = parse_fan(path)?;
    let mut r = Report::new("check");
    let (smooth, complete) = (fan.is_smooth(), fan.is_complete());
    let fano = if smooth && complete { Some(is_fano(&fan)?) } else { None };
    r.push(Finding::info(
        "flags",
        format!(
            "dim {}, {} rays, {} cones; smooth={smooth} complete={complete} fano={}",
            fan.dim(),
            fan.ray_count(),
            fan.max_cones().len(),
            fano.map_or("n/a".to_string(), |f| f.to_string())
        ),
        json!({ "dim": fan.dim(), "rays": fan.ray_count(), "cones": fan.max_cones().len(),
                "smooth": smooth, "complete": complete, "fano": fano }),
    ));
    if smooth && complete {
        for w in fan.walls()? {
            r.push(Finding::info("wall", format!("{w}, -K degree {}", anticanonical_degree(w)), wall_json(w)));
        }
    }
    Ok(r)
}

fn divisors(path: &Path) -> Result<Report> {
    let fan = parse_fan(path)?;
    require_smooth_complete(&fan)?;
    let mut r = Report::new("divisors");
    for ray in 0..fan.ray_count() {
        let a = analyze_divisor(&fan, ray)?;
        let message = match &a.d {
            Some(d) => format!("V({ray}) is P^{} with d={d}", fan.dim() - 1),
            None => format!("V({ray}) is not a projective space"),
        };
        r.push(Finding::info(
            "divisor",
            message,
            json!({ "ray": ray, "is_proj_space": a.is_proj_space, "d": a.d.as_ref().map(int_to_json) }),
        ));
    }
    Ok(r)
}

fn mori(path: &Path) -> Result<Report> {
    let fan = parse_fan(path)?;
    require_smooth_complete(&fan)?;
    let cone = MoriCone::new(&fan)?;
    let mut r = Report::new("mori");
    let mut seen = Vec::new();
    for (i, w) in cone.walls().iter().enumerate() {
        if !cone.is_mori_extremal(i) || seen.contains(cone.class(i)) {
            continue;
        }
        seen.push(cone.class(i).clone());
        let info = contraction_info(&fan, w)?;
        r.push(Finding::info(
            "extremal-ray",
            format!("{w}: {} (alpha={}, beta={})", info.kind, info.alpha, info.beta),
            json!({ "wall": wall_json(w), "class": ints(&cone.class(i).dots), "contraction": info }),
        ));
    }
    Ok(r)
}

fn route_json(route: &Route) -> Value {
    match route {
        Route::ExtremalLine => json!({ "kind": "extremal-line" }),
        Route::Fibration { wall } => json!({ "kind": "fibration", "wall": wall_json(wall) }),
        Route::Simplified { step, inner } => json!({
            "kind": "simplified",
            "wall": wall_json(&step.wall),
            "removed_ray": step.removed_ray,
            "d": [int_to_json(&step.input_d), int_to_json(&step.result_d)],
            "blown_down_case": inner.label(),
        }),
    }
}

fn classify(path: &Path, ray: usize) -> Result<Report> {
    let fan = parse_fan(path)?;
    require_smooth_complete(&fan)?;
    let c = classify_fano_with_divisor(&fan, ray)?;
    let mut r = Report::new("classify");
    r.push(Finding::info(
        "classification",
        format!("(X, V({ray})) is case {} with d={}", c.label(), c.d),
        json!({
            "ray": ray,
            "case": c.case.to_string(),
            "nu": c.nu,
            "d": int_to_json(&c.d),
            "catalog_index": c.catalog_index,
            "ray_map": c.witness.ray_map,
            "route": route_json(&c.route),
        }),
    ));
    r.set_witness(&c.witness.matrix);
    Ok(r)
}

fn simplify(path: &Path, ray: usize) -> Result<Report> {
    let fan = parse_fan(path)?;
    require_smooth_complete(&fan)?;
    let mut r = Report::new("simplify");
    match simplify_pair(&fan, ray)? {
        Simplification::Step(s) => {
            let (a, b) = s.center_normal_degrees()?;
            r.push(Finding::info(
                "step",
                format!(
                    "blow-down along {} removes ray {}; d {} -> {} on V({})",
                    s.wall, s.removed_ray, s.input_d, s.result_d, s.result_divisor_ray
                ),
                json!({
                    "wall": wall_json(&s.wall),
                    "removed_ray": s.removed_ray,
                    "input_d": int_to_json(&s.input_d),
                    "result_d": int_to_json(&s.result_d),
                    "result_divisor_ray": s.result_divisor_ray,
                    "center": s.center.rays(),
                    "center_normal_degrees": [int_to_json(&a), int_to_json(&b)],
                    "result_fan": fan_to_json(&s.result_fan),
                }),
            ));
        }
        Simplification::Fibration { wall } => r.push(Finding::info(
            "fibration",
            format!("fibration case along {wall}: no simplification"),
            json!({ "wall": wall_json(&wall) }),
        )),
        Simplification::NoTransverseWall => r.push(Finding::info("none", "no transverse extremal wall", Value::Null)),
    }
    Ok(r)
}

fn catalog_cmd(dim: usize, emit: Option<&Path>) -> Result<Report> {
    let entries = catalog(dim)?;
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    }
    let mut r = Report::new("catalog");
    for (i, e) in entries.iter().enumerate() {
        let fano = is_fano(&e.fan)?;
        let divisors: Vec<Value> = e.divisors.iter().map(|d| json!({ "ray": d.ray, "d": int_to_json(&d.d) })).collect();
        let mut data = json!({
            "index": i,
            "case": e.case.to_string(),
            "nu": e.nu,
            "rays": e.fan.ray_count(),
            "cones": e.fan.max_cones().len(),
            "fano": fano,
            "divisors": divisors,
        });
        if let Some(dir) = emit {
            let name = match e.nu {
                Some(nu) => format!("{i:02}_{}_nu{nu}.json", e.case),
                None => format!("{i:02}_{}.json", e.case),
            };
            let file = dir.join(name);
            std::fs::write(&file, write_fan_json(&e.fan) + "\n")
                .map_err(|source| CliError::Io { path: file.clone(), source })?;
            data["file"] = Value::from(file.display().to_string());
        }
        let message = format!("{}: {} rays, {} cones", e.label(), e.fan.ray_count(), e.fan.max_cones().len());
        if fano {
            r.push(Finding::info("entry", message, data));
        } else {
            r.push(Finding::violation("entry", message + ", not Fano", data));
        }
    }
    Ok(r)
}

fn theorem2(dim: usize) -> Result<Report> {
    let rep = verify_theorem2(dim)?;
    let mut r = Report::new("verify-theorem2");
    for e in &rep.entries {
        let divisors: Vec<Value> = e
            .divisors
            .iter()
            .map(|(ray, want, got)| json!({ "ray": ray, "expected_d": int_to_json(want), "d": got.as_ref().map(int_to_json) }))
            .collect();
        let data = json!({ "label": e.label, "smooth": e.smooth, "complete": e.complete, "fano": e.fano,
                           "divisors": divisors, "problems": e.problems });
        if e.problems.is_empty() {
            r.push(Finding::info("entry", format!("{}: ok", e.label), data));
        } else {
            r.push(Finding::violation("entry", format!("{}: {}", e.label, e.problems.join("; ")), data));
        }
    }
    for &(i, j) in &rep.isomorphic_pairs {
        r.push(Finding::violation(
            "isomorphic-pair",
            format!("entries {} and {} are isomorphic", rep.entries[i].label, rep.entries[j].label),
            json!([i, j]),
        ));
    }
    let expected = 2 * dim + 1;
    let count = json!({ "entries": rep.entries.len(), "expected": expected });
    if rep.entries.len() == expected {
        r.push(Finding::info("count", format!("{expected} entries"), count));
    } else {
        r.push(Finding::violation("count", format!("{} entries, expected {expected}", rep.entries.len()), count));
    }
    Ok(r)
}

fn target_text(t: &Theorem1Target) -> &'static str {
    match t {
        Theorem1Target::ProjectiveSpace => "X ≅ P^n",
        Theorem1Target::BlownUpProjectiveSpace => "X ≅ B_{P^{n-2}}(P^n)",
    }
}

fn push_theorem1(r: &mut Report, rep: &Theorem1Report, fan_index: Option<usize>) {
    for v in &rep.global_violations {
        r.push(Finding::violation("fan", v.clone(), json!({ "fan": fan_index })));
    }
    for p in &rep.points {
        let data = json!({
            "fan": fan_index,
            "cone_index": p.cone_index,
            "cone": p.cone.rays(),
            "blow_up_fano": p.blow_up_fano,
            "blow_up_case": p.blow_up_case,
            "ray_map": p.witness.as_ref().map(|w| w.ray_map.clone()),
        });
        let prefix = fan_index.map_or(String::new(), |i| format!("fan {i} "));
        if let Some(v) = &p.violation {
            r.push(Finding::violation("fixed-point", format!("{prefix}cone {}: {v}", p.cone), data));
        } else if let Some(t) = &p.identification {
            r.push(Finding::info(
                "fixed-point",
                format!("{prefix}cone {}: Fano blow-up, {}", p.cone, target_text(t)),
                data,
            ));
        } else {
            r.push(Finding::info("fixed-point", format!("{prefix}cone {}: blow-up not Fano", p.cone), data));
        }
    }
}

fn theorem1_input(path: &Path) -> Result<Report> {
    let fan = parse_fan(path)?;
    let rep = theorem1_check(&fan)?;
    let mut r = Report::new("verify-theorem1");
    push_theorem1(&mut r, &rep, None);
    Ok(r)
}

fn theorem1_corpus(spec: CorpusSpec) -> Result<Report> {
    let fans = random_corpus(spec.n, spec.count, spec.depth, spec.seed)?;
    let mut r = Report::new("verify-theorem1");
    for (i, fan) in fans.iter().enumerate() {
        let rep = theorem1_check(fan)?;
        // only Fano blow-ups and violations; the rest would swamp the report
        let mut kept = rep.clone();
        kept.points.retain(|p| p.blow_up_fano || p.violation.is_some());
        push_theorem1(&mut r, &kept, Some(i));
    }
    r.push(Finding::info("corpus", format!("{} fans checked", fans.len()), json!({ "fans": fans.len() })));
    Ok(r)
}

fn iso(a: &Path, b: &Path) -> Result<Report> {
    let (f, g) = (parse_fan(a)?, parse_fan(b)?);
    let mut r = Report::new("iso");
    match fans_isomorphic(&f, &g) {
        Some(w) => {
            r.push(Finding::info("isomorphic", "fans are isomorphic", json!({ "ray_map": w.ray_map })));
            r.set_witness(&w.matrix);
        }
        None => r.push(Finding::violation("isomorphic", "fans are not isomorphic", Value::Null)),
    }
    Ok(r)
}
