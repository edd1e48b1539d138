use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use hypertoric::circuits::{enumerate_circuits, passing_splits, split_circuits};
use hypertoric::coreflow::{core_components, vertex_flow};
use hypertoric::expr::{parse_polynomial, parse_substitution};
use hypertoric::exactmath::{rat, RatVector};
use hypertoric::fixtures;
use hypertoric::regions::{feasible_regions, vertices};
use hypertoric::rings::{
    annihilator_profile, annihilator_scan, distinguish, fingerprint, lawrence_specialize, present,
    set_x_to_zero, verify_substitution_iso, x_regular, RingKind, Verdict,
};
use hypertoric::{Arrangement, Field, FieldKind, Ideal, Rational, F2};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ideal_from<K: Field>(vars: &[&str], gens: &[&str]) -> Ideal<K> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let gens = gens
        .iter()
        .map(|g| parse_polynomial(g, &vars).expect("valid polynomial").to_field())
        .collect();
    Ideal::new(vars, gens).expect("valid ideal")
}

fn ring<K: Field>(arr: &Arrangement, kind: RingKind) -> Ideal<K> {
    let field = if K::CHARACTERISTIC == 2 { FieldKind::F2 } else { FieldKind::Q };
    present(arr, kind, Some(field)).expect("presentation").ideal()
}

const UX: [&str; 5] = ["u1", "u2", "u3", "u4", "x"];
const UX5: [&str; 6] = ["u1", "u2", "u3", "u4", "u5", "x"];

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn tds1_equals_displayed() -> Check {
    let displayed = [
        (fixtures::fig2a(), ["u2*u3", "u1*(x-u2)*u4", "u1*u3*u4"]),
        (fixtures::fig2b(), ["(x-u2)*u3", "u1*u2*u4", "u1*u3*u4"]),
        (fixtures::fig2c(), ["u2*u3", "(x-u1)*u2*(x-u4)", "u1*u3*u4"]),
    ];
    for (arr, gens) in &displayed {
        let name = arr.name().unwrap_or("?");
        ensure(
            ring::<Rational>(arr, RingKind::Tds1).equals(&ideal_from(&UX, gens)).map_err(err)?,
            format!("{name} over Q"),
        )?;
        ensure(
            ring::<F2>(arr, RingKind::Tds1).equals(&ideal_from(&UX, gens)).map_err(err)?,
            format!("{name} over F2"),
        )?;
    }
    Ok("3 fixtures x {Q, F2} equal".into())
}

fn x_zero_and_ordinary() -> Check {
    let u: Vec<String> = UX[..4].iter().map(|s| s.to_string()).collect();
    for arr in [fixtures::fig2a(), fixtures::fig2b(), fixtures::fig2c()] {
        let tds1 = ring::<Rational>(&arr, RingKind::Tds1);
        let td = ring::<Rational>(&arr, RingKind::Td);
        ensure(set_x_to_zero(&tds1, u.clone()).map_err(err)?.equals(&td).map_err(err)?, "x=0 is not td")?;
        let forms: Vec<_> = arr
            .kernel_linear_forms()
            .iter()
            .map(|f| hypertoric::PolyQ::linear(f))
            .collect();
        let ord = ring::<Rational>(&arr, RingKind::Ordinary);
        ensure(td.with_generators(&forms).map_err(err)?.equals(&ord).map_err(err)?, "td + kernel is not ordinary")?;
    }
    let a = fixtures::fig2a();
    let dims = ring::<Rational>(&a, RingKind::Ordinary).dims_by_degree(6).map_err(err)?;
    ensure(dims == vec![1, 2, 2, 0, 0, 0, 0], format!("dims {dims:?}"))?;
    let nv = vertices(&a).len();
    ensure(nv == 5, format!("{nv} vertices"))?;
    Ok("dims [1,2,2], total 5 = vertex count".into())
}

fn s1_memberships() -> Check {
    let p = |s: &str| parse_polynomial(s, &UX.map(String::from)).unwrap();
    let sa = ring::<Rational>(&fixtures::fig2a(), RingKind::S1);
    let sb = ring::<Rational>(&fixtures::fig2b(), RingKind::S1);
    ensure(sa.contains(&p("u3^3")).map_err(err)?, "u3^3 not in s1(FIG2A)")?;
    ensure(!sb.contains(&p("(x-u2)^3")).map_err(err)?, "(x-u2)^3 in s1(FIG2B)")?;
    ensure(!sb.contains(&p("u3^3")).map_err(err)?, "u3^3 in s1(FIG2B)")?;
    let fa = fingerprint(&present(&fixtures::fig2a(), RingKind::S1, Some(FieldKind::F2)).map_err(err)?).map_err(err)?;
    let fc = fingerprint(&present(&fixtures::fig2c(), RingKind::S1, Some(FieldKind::F2)).map_err(err)?).map_err(err)?;
    match distinguish(&fa, &fc).map_err(err)? {
        Verdict::Distinguished { detail, .. } => Ok(format!("memberships exact; s1 A/C {detail}")),
        Verdict::EqualFingerprint => Err("s1(FIG2A) and s1(FIG2C) not distinguished".into()),
    }
}

fn tds1_annihilators() -> Check {
    let a = ring::<Rational>(&fixtures::fig2a(), RingKind::Tds1);
    let u2 = a.var("u2").unwrap();
    let q = a.quotient(&u2).map_err(err)?;
    let expected = a.with_generators(&[a.var("u3").unwrap()]).map_err(err)?;
    ensure(q.equals(&expected).map_err(err)?, "(I:u2) != I + (u3)")?;
    let c = ring::<F2>(&fixtures::fig2c(), RingKind::Tds1);
    let scan = annihilator_scan(&c).map_err(err)?;
    let hits: Vec<_> = scan.iter().filter(|e| e.profile == [1]).map(|e| e.text.clone()).collect();
    ensure(hits.is_empty(), format!("classes with profile {{1}} in FIG2C: {hits:?}"))?;
    Ok(format!("(I:u2) = I + (u3) over Q; F2 surrogate scan of {} classes finds no profile {{1}}", scan.len()))
}

fn z2os_second() -> Check {
    let a = ring::<F2>(&fixtures::fig2a5(), RingKind::Z2os);
    let c = ring::<F2>(&fixtures::fig2c5(), RingKind::Z2os);
    let common = [
        "u1*(x-u1)", "u2*(x-u2)", "u3*(x-u3)", "u4*(x-u4)", "u5*(x-u5)", "u2*u3", "(x-u1)*u5", "u1*u3*u4",
        "(x-u2)*u4*u5", "u3*u4*u5",
    ];
    let mut ga: Vec<&str> = common.to_vec();
    ga.push("u1*(x-u2)*u4");
    let mut gc: Vec<&str> = common.to_vec();
    gc.push("(x-u1)*u2*(x-u4)");
    ensure(a.equals(&ideal_from(&UX5, &ga)).map_err(err)?, "z2os(FIG2A5) differs")?;
    ensure(c.equals(&ideal_from(&UX5, &gc)).map_err(err)?, "z2os(FIG2C5) differs")?;
    let pa = present(&fixtures::fig2a5(), RingKind::Z2os, None).map_err(err)?;
    let mut shown = pa.relation_texts();
    let mut want: Vec<String> = ga
        .iter()
        .map(|g| parse_polynomial(g, &UX5.map(String::from)).unwrap().to_field::<F2>().format(&pa.vars))
        .collect();
    shown.sort();
    want.sort();
    ensure(shown == want, format!("relation set {shown:?}"))?;
    let u2 = a.var("u2").unwrap();
    let profile = annihilator_profile(&a, &u2).map_err(err)?;
    ensure(profile == [1, 1], format!("profile of u2 is {profile:?}"))?;
    let gens = ideal_from::<F2>(&UX5, &["u3", "x+u2"]).gens;
    ensure(
        a.quotient(&u2).map_err(err)?.equals(&a.with_generators(&gens).map_err(err)?).map_err(err)?,
        "(I:u2) != I + (u3, x+u2)",
    )?;
    let scan = annihilator_scan(&c).map_err(err)?;
    let hits: Vec<_> = scan.iter().filter(|e| e.profile == [1, 1]).map(|e| e.text.clone()).collect();
    ensure(hits.is_empty(), format!("FIG2C5 classes with profile {{1,1}}: {hits:?}"))?;
    Ok(format!("presentations exact; ann(u2) = (u3, x+u2); {} classes scanned in FIG2C5", scan.len()))
}

fn z2os_first() -> Check {
    let a = present(&fixtures::fig2a(), RingKind::Z2os, None).map_err(err)?;
    let c = present(&fixtures::fig2c(), RingKind::Z2os, None).map_err(err)?;
    let map = parse_substitution("u1->u1+u2,u2->u2+u3+x,u3->u3,u4->u2+u4,x->x", &a.vars).map_err(err)?;
    let check = verify_substitution_iso(&a, &c, &map).map_err(err)?;
    ensure(check.verified(), format!("{check:?}"))?;
    Ok("invertible, fixes x, image contained, equal Hilbert series".into())
}

fn freeness() -> Check {
    let mut count = 0;
    for arr in fixtures::all() {
        for kind in [RingKind::Tds1, RingKind::S1, RingKind::Z2os] {
            let fields: &[FieldKind] = if kind == RingKind::Z2os { &[FieldKind::F2] } else { &[FieldKind::Q, FieldKind::F2] };
            for &f in fields {
                let p = present(&arr, kind, Some(f)).map_err(err)?;
                let regular = match f {
                    FieldKind::Q => x_regular(&p.ideal::<Rational>()),
                    FieldKind::F2 => x_regular(&p.ideal::<F2>()),
                }
                .map_err(err)?;
                ensure(regular == Some(true), format!("{} {kind} over {f}", arr.name().unwrap_or("?")))?;
                count += 1;
            }
        }
    }
    Ok(format!("(I:x) = I in {count} rings"))
}

fn os_chambers() -> Check {
    let mut parts = Vec::new();
    for arr in fixtures::all() {
        let i = ring::<F2>(&arr, RingKind::Os2);
        let h = i.hilbert_series(8).map_err(err)?;
        let dense = i.dims_by_degree(8).map_err(err)?;
        ensure(h.truncation == dense, format!("{}: {:?} vs {dense:?}", arr.name().unwrap_or("?"), h.truncation))?;
        let regions = feasible_regions(&arr).map_err(err)?.len() as i64;
        ensure(h.total() == Some(regions), format!("{}: dim {:?} vs {regions} regions", arr.name().unwrap_or("?"), h.total()))?;
        parts.push(format!("{}={regions}", arr.name().unwrap_or("?")));
    }
    Ok(parts.join(" "))
}

fn splitting_uniqueness() -> Check {
    let mut count = 0;
    for arr in fixtures::all() {
        for sc in split_circuits(&arr).map_err(err)? {
            let passing = passing_splits(&arr, sc.circuit.support).map_err(err)?;
            ensure(
                passing == vec![(sc.s1, sc.s2)],
                format!("{} circuit {}: {passing:?}", arr.name().unwrap_or("?"), sc.circuit.support),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} circuits, each with a unique passing splitting"))
}

fn core_flow() -> Check {
    for arr in [fixtures::fig2a(), fixtures::fig2c()] {
        let name = arr.name().unwrap_or("?").to_string();
        let report = arr.validate();
        ensure(report.is_simple && report.is_smooth, format!("{name} not smooth"))?;
        let core = core_components(&arr).map_err(err)?;
        ensure(core.core.len() == 2, format!("{name}: {} bounded regions", core.core.len()))?;
        ensure(core.fixed.count() == 2, format!("{name}: {} fixed components", core.fixed.count()))?;
        ensure(core.is_bijective(), format!("{name}: core map not bijective"))?;
        for v in vertices(&arr) {
            let flow = vertex_flow(&arr, &v).map_err(err)?;
            for l in &flow.lines {
                ensure(l.pairing == 1, format!("{name}: pairing {}", l.pairing))?;
                ensure(l.r_test + l.q_test == -l.pairing, format!("{name}: tests do not sum to -1"))?;
                ensure(l.r_unstable() != l.q_unstable(), format!("{name}: not exactly one unstable ray"))?;
            }
        }
    }
    Ok("2 bounded regions, 2 fixed, 2 core components, one unstable ray per line".into())
}

fn lawrence() -> Check {
    for arr in fixtures::all() {
        ensure(lawrence_specialize(&arr).map_err(err)?, arr.name().unwrap_or("?").to_string())?;
    }
    Ok("all 5 fixtures".into())
}

fn report(arr: &Arrangement) -> Result<String, String> {
    let mut out = String::new();
    for sc in split_circuits(arr).map_err(err)? {
        out.push_str(&format!("{} {} {}\n", sc.circuit.support, sc.s1, sc.s2));
    }
    let p = present(arr, RingKind::Tds1, Some(FieldKind::F2)).map_err(err)?;
    out.push_str(&p.to_native());
    let fp = fingerprint(&p).map_err(err)?;
    out.push_str(&serde_json::to_string(&fp).map_err(err)?);
    Ok(out)
}

fn invariances() -> Check {
    let a = ring::<Rational>(&fixtures::fig2a(), RingKind::Tds1);
    let b = ring::<Rational>(&fixtures::fig2b(), RingKind::Tds1);
    let map = parse_substitution("u2->x-u2", &a.vars).map_err(err)?;
    let images: Vec<_> = map.iter().map(|r| hypertoric::PolyQ::linear(r)).collect();
    ensure(a.substitute(&images, a.vars.clone()).map_err(err)?.equals(&b).map_err(err)?, "flip substitution")?;
    let shift = RatVector::new(vec![rat(5), rat(-7)]);
    for arr in fixtures::all() {
        let moved = arr.translate(&shift).map_err(err)?;
        let supports = |x: &Arrangement| -> Result<Vec<_>, String> {
            Ok(enumerate_circuits(x).map_err(err)?.iter().map(|c| c.support).collect())
        };
        ensure(supports(&arr)? == supports(&moved)?, "circuits moved")?;
        ensure(report(&arr)? == report(&moved)?, format!("{} report changed under translation", arr.name().unwrap_or("?")))?;
    }
    for arr in fixtures::all() {
        let runs: Vec<String> = (0..3).map(|_| report(&arr)).collect::<Result<_, _>>()?;
        ensure(runs.iter().all(|r| *r == runs[0]), "repeated runs differ")?;
    }
    Ok("flip, translation by (5,-7) and 3 repeated runs agree".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("tds1 presentations equal the displayed ideals", tds1_equals_displayed),
        ("x = 0 gives td; kernel forms give ordinary", x_zero_and_ordinary),
        ("s1 memberships and annihilator distinction", s1_memberships),
        ("tds1 annihilators", tds1_annihilators),
        ("z2os five-line presentations and annihilators", z2os_second),
        ("z2os substitution isomorphism", z2os_first),
        ("x is a nonzerodivisor", freeness),
        ("os2 dimension equals chamber count", os_chambers),
        ("splitting uniqueness", splitting_uniqueness),
        ("core flow", core_flow),
        ("Lawrence specialization", lawrence),
        ("flip, translation and determinism", invariances),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
