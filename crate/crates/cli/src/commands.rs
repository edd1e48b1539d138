use std::fs;
use std::path::Path;

use hypertoric::circuits::{enumerate_circuits, split_circuits};
use hypertoric::coreflow::{core_components, fixed_components, vertex_flow};
use hypertoric::exactmath::{format_rational, parse_rational, RatVector};
use hypertoric::expr::{parse_polynomial, parse_substitution};
use hypertoric::regions::{enumerate_regions, vertices, Face, FaceComplex};
use hypertoric::rings::{annihilator_scan, distinguish, fingerprint, present, verify_substitution_iso, RingKind};
use hypertoric::{Arrangement, Field, FieldKind, Presentation, Rational, F2};
use serde_json::{json, Value};

use crate::{Cli, Command, Failure, RingArgs};

pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: u8,
}

const SURROGATE_NOTE: &str = "exhaustive scan over F2 degree-1 classes; integer-coefficient statements are checked through this surrogate";

// Rings defined over Z whose F2 scan stands in for the integral statement.
fn surrogate(kind: RingKind) -> Option<&'static str> {
    match kind {
        RingKind::Os2 | RingKind::Z2os => None,
        _ => Some(SURROGATE_NOTE),
    }
}

fn load(path: &Path) -> Result<Arrangement, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Arrangement::parse(&text)?)
}

fn label(arr: &Arrangement, path: &Path) -> String {
    arr.name().map(str::to_string).unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    })
}

fn ring_kind(args: &RingArgs) -> Result<RingKind, Failure> {
    Ok(args.which.parse::<RingKind>()?)
}

fn field_of(args: &RingArgs, fallback: FieldKind) -> Result<FieldKind, Failure> {
    match &args.field {
        Some(f) => f.parse::<FieldKind>().map_err(Failure::usage),
        None => Ok(fallback),
    }
}

fn presentation(arr: &Arrangement, args: &RingArgs, fallback: Option<FieldKind>) -> Result<Presentation, Failure> {
    let kind = ring_kind(args)?;
    let field = field_of(args, fallback.unwrap_or(kind.default_field()))?;
    Ok(present(arr, kind, Some(field))?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn subset_json(s: hypertoric::Subset) -> Value {
    json!(s.one_based())
}

fn vector_json(v: &RatVector) -> Value {
    json!(v.entries().iter().map(format_rational).collect::<Vec<_>>())
}

fn ints(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn profile_text(p: &[u32]) -> String {
    let parts: Vec<String> = p.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

struct Report {
    verb: &'static str,
    inputs: Vec<String>,
    text: String,
    result: Value,
    warnings: Vec<String>,
    code: u8,
}

impl Report {
    fn new(verb: &'static str, inputs: Vec<String>) -> Self {
        Report {
            verb,
            inputs,
            text: String::new(),
            result: json!({}),
            warnings: Vec::new(),
            code: 0,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let report = match &cli.command {
        Command::Validate { file } => validate(file)?,
        Command::Circuits { file, split } => circuits(file, *split)?,
        Command::Regions { file, bounded, vertices } => regions(file, *bounded, *vertices)?,
        Command::Core { file } => core(file)?,
        Command::Fixed { file } => fixed(file)?,
        Command::Ring { file, ring, format } => ring_cmd(file, ring, format, cli.json)?,
        Command::Hilbert { file, ring, maxdeg } => hilbert(file, ring, *maxdeg)?,
        Command::Ann { file, ring, element } => ann(file, ring, element)?,
        Command::ScanAnn { file, ring } => scan_ann(file, ring)?,
        Command::Iso { file_a, file_b, ring, map } => iso(file_a, file_b, ring, map)?,
        Command::Flip { file, index, output } => flip(file, *index, output.as_deref())?,
        Command::Translate { file, by, output } => translate(file, by, output.as_deref())?,
        Command::Distinguish { file_a, file_b, ring } => distinguish_cmd(file_a, file_b, ring)?,
    };
    let stdout = if cli.json {
        let envelope = json!({
            "verb": report.verb,
            "inputs": report.inputs,
            "result": report.result,
            "warnings": report.warnings,
        });
        serde_json::to_string_pretty(&envelope).expect("json serialises") + "\n"
    } else {
        report.text
    };
    Ok(Output {
        stdout,
        warnings: if cli.json { Vec::new() } else { report.warnings },
        code: report.code,
    })
}

fn validate(file: &Path) -> Result<Report, Failure> {
    let arr = load(file)?;
    let v = arr.validate();
    let mut r = Report::new("validate", vec![label(&arr, file)]);
    r.line(format!("simple: {}, smooth: {}", yes(v.is_simple), yes(v.is_smooth)));
    for w in &v.witnesses {
        r.line(format!("witness {}: {}", w.subset, w.reason));
    }
    r.result = json!({
        "hyperplanes": arr.len(),
        "dimension": arr.dim(),
        "simple": v.is_simple,
        "smooth": v.is_smooth,
        "witnesses": v.witnesses.iter().map(|w| json!({"subset": subset_json(w.subset), "reason": w.reason})).collect::<Vec<_>>(),
    });
    if !v.is_simple {
        r.code = 2;
    }
    Ok(r)
}

fn relation_text(s1: hypertoric::Subset, s2: hypertoric::Subset) -> String {
    let support = s1.union(s2);
    support
        .iter()
        .map(|i| if s2.contains(i) { format!("(x-u{})", i + 1) } else { format!("u{}", i + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

fn circuits(file: &Path, split: bool) -> Result<Report, Failure> {
    let arr = load(file)?;
    let mut r = Report::new("circuits", vec![label(&arr, file)]);
    let mut rows = Vec::new();
    if split {
        for sc in split_circuits(&arr)? {
            let rel = relation_text(sc.s1, sc.s2);
            r.line(format!(
                "{} lambda {} offset-sum {} S1 {} S2 {} relation {rel}",
                sc.circuit.support,
                ints(&sc.circuit.dependence),
                format_rational(&sc.circuit.offset_sum),
                sc.s1,
                sc.s2
            ));
            rows.push(json!({
                "support": subset_json(sc.circuit.support),
                "dependence": sc.circuit.dependence,
                "offset_sum": format_rational(&sc.circuit.offset_sum),
                "s1": subset_json(sc.s1),
                "s2": subset_json(sc.s2),
                "relation": rel,
            }));
        }
    } else {
        for c in enumerate_circuits(&arr)? {
            r.line(format!(
                "{} lambda {} offset-sum {}",
                c.support,
                ints(&c.dependence),
                format_rational(&c.offset_sum)
            ));
            rows.push(json!({
                "support": subset_json(c.support),
                "dependence": c.dependence,
                "offset_sum": format_rational(&c.offset_sum),
            }));
        }
    }
    r.line(format!("circuits: {}", rows.len()));
    r.result = json!({ "count": rows.len(), "circuits": rows });
    Ok(r)
}

fn regions(file: &Path, bounded_only: bool, with_vertices: bool) -> Result<Report, Failure> {
    let arr = load(file)?;
    let mut r = Report::new("regions", vec![label(&arr, file)]);
    let all = enumerate_regions(&arr)?;
    let feasible: Vec<_> = all.iter().filter(|g| g.feasible).collect();
    let bounded = feasible.iter().filter(|g| g.bounded).count();
    r.line(format!("feasible regions: {}", feasible.len()));
    r.line(format!("bounded regions: {bounded}"));
    let mut rows = Vec::new();
    for g in feasible.iter().filter(|g| g.bounded || !bounded_only) {
        let w = g.witness.as_ref().expect("feasible regions carry a point");
        r.line(format!(
            "region {} {} point {w}",
            g.set,
            if g.bounded { "bounded" } else { "unbounded" }
        ));
        rows.push(json!({"set": subset_json(g.set), "bounded": g.bounded, "point": vector_json(w)}));
    }
    let mut result = json!({
        "feasible": feasible.len(),
        "bounded": bounded,
        "regions": rows,
    });
    if with_vertices {
        let vs = vertices(&arr);
        r.line(format!("vertices: {}", vs.len()));
        let mut vrows = Vec::new();
        for v in &vs {
            r.line(format!("vertex {} incident {}", v.point, v.incident));
            vrows.push(json!({"point": vector_json(&v.point), "incident": subset_json(v.incident)}));
        }
        result["vertices"] = json!(vrows);
    }
    r.result = result;
    Ok(r)
}

fn cell_text(f: &Face) -> String {
    format!("cell dim {} tight {} point {}", f.dim, f.tight, f.point)
}

fn cell_json(f: &Face) -> Value {
    json!({
        "dim": f.dim,
        "tight": subset_json(f.tight),
        "sides": subset_json(f.sides),
        "bounded": f.bounded,
        "point": vector_json(&f.point),
    })
}

fn fixed(file: &Path) -> Result<Report, Failure> {
    let arr = load(file)?;
    let mut r = Report::new("fixed", vec![label(&arr, file)]);
    let fc = fixed_components(&arr)?;
    let complex: &FaceComplex = &fc.complex;
    let mut rows = Vec::new();
    for (k, comp) in fc.components.iter().enumerate() {
        let kind = match (comp.compact, comp.is_minimum) {
            (true, true) => "compact, minimum",
            (true, false) => "compact",
            (false, true) => "noncompact, minimum",
            (false, false) => "noncompact",
        };
        r.line(format!("component {} ({kind}): {} cells", k + 1, comp.cells.len()));
        for &c in &comp.cells {
            r.line(format!("  {}", cell_text(&complex.faces[c])));
        }
        rows.push(json!({
            "compact": comp.compact,
            "minimum": comp.is_minimum,
            "cells": comp.cells.iter().map(|&c| cell_json(&complex.faces[c])).collect::<Vec<_>>(),
        }));
    }
    r.line(format!("fixed components counted against bounded regions: {}", fc.count()));
    r.result = json!({ "count": fc.count(), "components": rows });
    Ok(r)
}

fn core(file: &Path) -> Result<Report, Failure> {
    let arr = load(file)?;
    let mut r = Report::new("core", vec![label(&arr, file)]);
    let report = core_components(&arr)?;
    let complex = &report.fixed.complex;
    let mut rows = Vec::new();
    for c in &report.core {
        let face = &complex.faces[c.face];
        r.line(format!(
            "region {}: eta {}, minimum on {}, fixed component {}",
            c.region,
            ints(&c.eta),
            cell_text(face),
            c.component + 1
        ));
        rows.push(json!({
            "region": subset_json(c.region),
            "eta": c.eta,
            "face": cell_json(face),
            "component": c.component + 1,
        }));
    }
    let mut flows = Vec::new();
    for v in vertices(&arr) {
        let flow = vertex_flow(&arr, &v)?;
        let dirs = flow.unstable_directions();
        let dirs: Vec<String> = dirs.iter().map(|d| ints(d)).collect();
        r.line(format!("vertex {}: unstable directions {}", flow.point, dirs.join(" ")));
        flows.push(json!({
            "point": vector_json(&flow.point),
            "incident": subset_json(flow.incident),
            "smooth": flow.is_smooth(),
            "lines": flow.lines.iter().map(|l| json!({
                "line": l.line + 1,
                "direction": l.b,
                "pairing": l.pairing,
                "r_test": l.r_test,
                "q_test": l.q_test,
            })).collect::<Vec<_>>(),
        }));
    }
    let x_separate = report.fixed.noncompact_minimum().is_some();
    r.line(format!("bounded regions: {}", report.core.len()));
    r.line(format!("fixed components: {}", report.fixed.count()));
    r.line(format!("core components: {}", report.core.len()));
    r.line(format!("bijective: {}", yes(report.is_bijective())));
    if x_separate {
        r.line("the minimum component is noncompact and reported separately");
    }
    r.result = json!({
        "bounded_regions": report.core.len(),
        "fixed_components": report.fixed.count(),
        "core_components": rows,
        "bijective": report.is_bijective(),
        "noncompact_minimum": x_separate,
        "vertices": flows,
    });
    Ok(r)
}

fn presentation_json(p: &Presentation) -> Value {
    json!({
        "ring": p.kind.name(),
        "field": p.field.name(),
        "vars": p.vars,
        "relations": p.relation_texts(),
        "factored": p.factored,
    })
}

fn ring_cmd(file: &Path, args: &RingArgs, format: &str, json_flag: bool) -> Result<Report, Failure> {
    let arr = load(file)?;
    let p = presentation(&arr, args, None)?;
    let mut r = Report::new("ring", vec![label(&arr, file)]);
    r.warnings = p.warnings.clone();
    r.result = presentation_json(&p);
    r.text = match format {
        "native" => p.to_native(),
        "cas" => p.to_cas(),
        "json" if !json_flag => serde_json::to_string_pretty(&r.result).expect("json serialises") + "\n",
        "json" => String::new(),
        other => return Err(Failure::usage(format!("unknown format '{other}' (expected native, cas or json)"))),
    };
    Ok(r)
}

fn hilbert(file: &Path, args: &RingArgs, maxdeg: usize) -> Result<Report, Failure> {
    let arr = load(file)?;
    let p = presentation(&arr, args, None)?;
    let h = match p.field {
        FieldKind::Q => p.ideal::<Rational>().hilbert_series(maxdeg)?,
        FieldKind::F2 => p.ideal::<F2>().hilbert_series(maxdeg)?,
    };
    let mut r = Report::new("hilbert", vec![label(&arr, file)]);
    r.warnings = p.warnings.clone();
    r.line(format!("ring {} field {}", p.kind, p.field));
    r.line(format!("series: {h}"));
    let dims: Vec<String> = h.truncation.iter().map(i64::to_string).collect();
    r.line(format!("dims to degree {maxdeg}: {}", dims.join(" ")));
    match h.total() {
        Some(t) => r.line(format!("total: {t}")),
        None => r.line("total: infinite"),
    }
    r.result = json!({
        "ring": p.kind.name(),
        "field": p.field.name(),
        "numerator": h.numerator,
        "denominator_exponent": h.denom_exp,
        "series": h.to_string(),
        "dims": h.truncation,
        "total": h.total(),
    });
    Ok(r)
}

fn annihilator<K: Field>(p: &Presentation, element: &str) -> Result<(String, Vec<String>, Vec<u32>), Failure> {
    let ideal = p.ideal::<K>();
    let f = parse_polynomial(element, &p.vars)?.to_field::<K>();
    if f.is_zero() {
        return Err(Failure::usage(format!("element '{element}' is zero over {}", p.field)));
    }
    let q = ideal.quotient(&f)?;
    let gens = q.minimal_generators(&ideal)?;
    Ok((
        f.format(&p.vars),
        gens.iter().map(|g| g.format(&p.vars)).collect(),
        gens.iter().filter_map(|g| g.degree()).collect(),
    ))
}

fn ann(file: &Path, args: &RingArgs, element: &str) -> Result<Report, Failure> {
    let arr = load(file)?;
    let p = presentation(&arr, args, None)?;
    let (elem, gens, profile) = match p.field {
        FieldKind::Q => annihilator::<Rational>(&p, element)?,
        FieldKind::F2 => annihilator::<F2>(&p, element)?,
    };
    let mut r = Report::new("ann", vec![label(&arr, file)]);
    r.warnings = p.warnings.clone();
    r.line(format!("annihilator of {elem} in {} over {}", p.kind, p.field));
    if gens.is_empty() {
        r.line("minimal generators modulo the relations: none (element is a nonzerodivisor)");
    } else {
        r.line(format!("minimal generators modulo the relations: {}", gens.join(", ")));
    }
    r.line(format!("degree profile: {}", profile_text(&profile)));
    r.result = json!({
        "ring": p.kind.name(),
        "field": p.field.name(),
        "element": elem,
        "generators": gens,
        "profile": profile,
    });
    Ok(r)
}

fn require_f2(args: &RingArgs, verb: &str) -> Result<(), Failure> {
    if field_of(args, FieldKind::F2)? != FieldKind::F2 {
        return Err(Failure::usage(format!("{verb} runs over F2 only; use --field f2")));
    }
    Ok(())
}

fn scan_ann(file: &Path, args: &RingArgs) -> Result<Report, Failure> {
    require_f2(args, "scan-ann")?;
    let arr = load(file)?;
    let p = presentation(&arr, args, Some(FieldKind::F2))?;
    let scan = annihilator_scan(&p.ideal::<F2>())?;
    let mut r = Report::new("scan-ann", vec![label(&arr, file)]);
    r.warnings = p.warnings.clone();
    r.line(format!("ring {} field F2, {} classes", p.kind, scan.len()));
    for e in &scan {
        r.line(format!("{}: {}", e.text, profile_text(&e.profile)));
    }
    let note = surrogate(p.kind);
    if let Some(n) = note {
        r.line(format!("note: {n}"));
    }
    r.result = json!({
        "ring": p.kind.name(),
        "field": "F2",
        "classes": scan.iter().map(|e| json!({"mask": e.class, "class": e.text, "profile": e.profile})).collect::<Vec<_>>(),
        "note": note,
    });
    Ok(r)
}

fn iso(file_a: &Path, file_b: &Path, args: &RingArgs, map: &str) -> Result<Report, Failure> {
    let (a, b) = (load(file_a)?, load(file_b)?);
    let pa = presentation(&a, args, None)?;
    let pb = presentation(&b, args, None)?;
    let matrix = parse_substitution(map, &pa.vars)?;
    let check = verify_substitution_iso(&pa, &pb, &matrix)?;
    let mut r = Report::new("iso", vec![label(&a, file_a), label(&b, file_b)]);
    r.warnings = pa.warnings.clone();
    if check.verified() {
        r.line("ISOMORPHISM VERIFIED");
    } else {
        r.line("NOT VERIFIED");
    }
    r.line(format!("invertible degree-1 matrix: {}", yes(check.invertible)));
    r.line(format!("fixes x: {}", yes(check.fixes_x)));
    r.line(format!("image of relations contained: {}", yes(check.image_contained)));
    r.line(format!("equal Hilbert series: {}", yes(check.hilbert_equal)));
    r.result = json!({
        "ring": pa.kind.name(),
        "field": pa.field.name(),
        "verified": check.verified(),
        "invertible": check.invertible,
        "fixes_x": check.fixes_x,
        "image_contained": check.image_contained,
        "hilbert_equal": check.hilbert_equal,
    });
    Ok(r)
}

fn write_arrangement(arr: &Arrangement, output: Option<&Path>, r: &mut Report) -> Result<(), Failure> {
    let text = arr.serialize();
    match output {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            r.line(format!("wrote {}", path.display()));
        }
        None => r.text.push_str(&text),
    }
    r.result = serde_json::from_str(&text).expect("serialized arrangement is json");
    Ok(())
}

fn flip(file: &Path, index: usize, output: Option<&Path>) -> Result<Report, Failure> {
    let arr = load(file)?;
    if index == 0 || index > arr.len() {
        return Err(Failure::usage(format!("index {index} out of range 1..={}", arr.len())));
    }
    let flipped = arr.flip_coorientation(index - 1)?;
    let mut r = Report::new("flip", vec![label(&arr, file)]);
    write_arrangement(&flipped, output, &mut r)?;
    Ok(r)
}

fn translate(file: &Path, by: &str, output: Option<&Path>) -> Result<Report, Failure> {
    let arr = load(file)?;
    let c = by
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let moved = arr.translate(&RatVector::new(c))?;
    let mut r = Report::new("translate", vec![label(&arr, file)]);
    write_arrangement(&moved, output, &mut r)?;
    Ok(r)
}

fn distinguish_cmd(file_a: &Path, file_b: &Path, args: &RingArgs) -> Result<Report, Failure> {
    let (a, b) = (load(file_a)?, load(file_b)?);
    let pa = presentation(&a, args, Some(FieldKind::F2))?;
    let pb = presentation(&b, args, Some(FieldKind::F2))?;
    let fa = fingerprint(&pa)?;
    let fb = fingerprint(&pb)?;
    let verdict = distinguish(&fa, &fb)?;
    let mut r = Report::new("distinguish", vec![label(&a, file_a), label(&b, file_b)]);
    r.warnings = pa.warnings.clone();
    r.line(verdict.to_string());
    let histogram = |fp: &hypertoric::Fingerprint| -> Value {
        fp.profile_histogram()
            .map(|h| {
                json!(h
                    .into_iter()
                    .map(|(p, n)| json!({"profile": p, "classes": n}))
                    .collect::<Vec<_>>())
            })
            .unwrap_or(Value::Null)
    };
    let summary = |fp: &hypertoric::Fingerprint| {
        json!({
            "hilbert": fp.hilbert,
            "x_regular": fp.x_regular,
            "profiles": histogram(fp),
        })
    };
    let note = if pa.field == FieldKind::F2 { surrogate(pa.kind) } else { None };
    if let Some(n) = note {
        r.line(format!("note: {n}"));
    }
    let (status, invariant, detail) = match &verdict {
        hypertoric::Verdict::Distinguished { invariant, detail } => ("DISTINGUISHED", Some(invariant.clone()), Some(detail.clone())),
        hypertoric::Verdict::EqualFingerprint => ("EQUAL_FINGERPRINT", None, None),
    };
    r.result = json!({
        "ring": pa.kind.name(),
        "field": pa.field.name(),
        "verdict": status,
        "invariant": invariant,
        "detail": detail,
        "note": note,
        "a": summary(&fa),
        "b": summary(&fb),
    });
    Ok(r)
}
