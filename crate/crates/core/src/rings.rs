//! Presentations of the cohomology rings attached to an arrangement, and
//! the invariants used to tell them apart.
//!
//! Variables are ordered `u_1 < .. < u_n < x` (or `e_i`, or `u_i < v_i`).
//! Relations are stored with integer coefficients and mapped into `Q` or
//! `F2` on demand, so one presentation serves both fields.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::circuits::split_circuits;
use crate::error::{Error, Result};
use crate::exactmath::{rank, rat, Rational};
use crate::field::{Field, FieldKind, F2};
use crate::grobner::{HilbertData, Ideal, Polynomial};

/// Degree cap for Hilbert truncations in fingerprints.
pub const FINGERPRINT_DEGREE_CAP: usize = 8;
/// Largest number of variables for the exhaustive class scan.
pub const SCAN_VARIABLE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RingKind {
    /// Equivariant cohomology for the full torus.
    Td,
    /// Ordinary cohomology.
    Ordinary,
    /// Equivariant for the torus and the extra circle.
    Tds1,
    /// Equivariant for the extra circle.
    S1,
    /// Orlik–Solomon algebra over F2.
    Os2,
    /// The F2[x] deformation of the Orlik–Solomon algebra.
    Z2os,
    /// Lawrence toric ring in `u_i, v_i`.
    Lawrence,
}

impl RingKind {
    pub const ALL: [RingKind; 7] = [
        RingKind::Td,
        RingKind::Ordinary,
        RingKind::Tds1,
        RingKind::S1,
        RingKind::Os2,
        RingKind::Z2os,
        RingKind::Lawrence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RingKind::Td => "TD",
            RingKind::Ordinary => "ORDINARY",
            RingKind::Tds1 => "TDS1",
            RingKind::S1 => "S1",
            RingKind::Os2 => "OS2",
            RingKind::Z2os => "Z2OS",
            RingKind::Lawrence => "LAWRENCE",
        }
    }

    pub fn default_field(self) -> FieldKind {
        match self {
            RingKind::Os2 | RingKind::Z2os => FieldKind::F2,
            _ => FieldKind::Q,
        }
    }

    pub fn has_x(self) -> bool {
        matches!(self, RingKind::Tds1 | RingKind::S1 | RingKind::Z2os)
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "td" => RingKind::Td,
            "h" | "ordinary" => RingKind::Ordinary,
            "tds1" => RingKind::Tds1,
            "s1" => RingKind::S1,
            "os2" => RingKind::Os2,
            "z2os" => RingKind::Z2os,
            "lawrence" => RingKind::Lawrence,
            _ => {
                return Err(Error::input(format!(
                    "unknown ring '{s}' (expected td, h, tds1, s1, os2, z2os or lawrence)"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub kind: RingKind,
    pub field: FieldKind,
    pub vars: Vec<String>,
    /// Integer-coefficient relations, sorted by (degree, support, text).
    pub relations: Vec<Polynomial<Rational>>,
    /// The same relations in factored form, for display.
    pub factored: Vec<String>,
    pub warnings: Vec<String>,
}

impl Presentation {
    pub fn ideal<K: Field>(&self) -> Ideal<K> {
        Ideal::new(self.vars.clone(), self.relations.iter().map(|r| r.to_field()).collect())
            .expect("relations built in the presentation's ring")
    }

    pub fn x_index(&self) -> Option<usize> {
        self.vars.iter().position(|v| v == "x")
    }

    /// Relations rendered over the presentation's field.
    pub fn relation_texts(&self) -> Vec<String> {
        match self.field {
            FieldKind::Q => self.relations.iter().map(|r| r.format(&self.vars)).collect(),
            FieldKind::F2 => self
                .relations
                .iter()
                .map(|r| r.to_field::<F2>().format(&self.vars))
                .filter(|t| t != "0")
                .collect(),
        }
    }

    /// Native text: a header line then one relation per line.
    pub fn to_native(&self) -> String {
        let mut s = format!("ring {} field {} vars {}\n", self.kind, self.field, self.vars.join(","));
        for r in self.relation_texts() {
            s.push_str(&r);
            s.push('\n');
        }
        s
    }

    /// A script declaring the ring and ideal for a computer algebra system.
    pub fn to_cas(&self) -> String {
        format!(
            "R = {}[{}];\nI = ideal({});\n",
            self.field.cas_name(),
            self.vars.join(","),
            self.relation_texts().join(", ")
        )
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

struct Builder {
    nvars: usize,
    field: FieldKind,
    rels: Vec<(Polynomial<Rational>, String)>,
}

impl Builder {
    fn var(&self, i: usize) -> Polynomial<Rational> {
        Polynomial::var(self.nvars, i)
    }

    fn push(&mut self, p: Polynomial<Rational>, text: String) {
        self.rels.push((p, text));
    }

    // x - u_j (x + u_j over F2)
    fn x_minus(&self, x: usize, j: usize, vars: &[String]) -> (Polynomial<Rational>, String) {
        let op = if self.field == FieldKind::F2 { '+' } else { '-' };
        (self.var(x).sub(&self.var(j)), format!("({}{op}{})", vars[x], vars[j]))
    }

    fn finish(self, kind: RingKind, vars: Vec<String>, warnings: Vec<String>) -> Presentation {
        let mut rels = self.rels;
        rels.sort_by_cached_key(|(p, _)| (p.degree(), p.support(), p.format(&vars)));
        rels.dedup_by(|a, b| a.0 == b.0);
        let (relations, factored) = rels.into_iter().unzip();
        Presentation {
            kind,
            field: self.field,
            vars,
            relations,
            factored,
            warnings,
        }
    }
}

/// Builds the presentation `kind` of `arr` over `field` (`None` for the
/// ring's default field).
pub fn present(arr: &Arrangement, kind: RingKind, field: Option<FieldKind>) -> Result<Presentation> {
    let field = field.unwrap_or(kind.default_field());
    if matches!(kind, RingKind::Os2 | RingKind::Z2os) && field != FieldKind::F2 {
        return Err(Error::input(format!("{kind} is defined over F2 only")));
    }
    let splits = split_circuits(arr)?;
    let n = arr.len();
    let mut warnings = Vec::new();
    let report = arr.validate();
    if kind != RingKind::Os2 && !report.is_smooth {
        warnings.push("arrangement is not smooth: theorem hypotheses not met; Q-coefficients advised".into());
    }
    let vars: Vec<String> = match kind {
        RingKind::Td | RingKind::Ordinary => names("u", n),
        RingKind::Tds1 | RingKind::S1 | RingKind::Z2os => {
            let mut v = names("u", n);
            v.push("x".into());
            v
        }
        RingKind::Os2 => names("e", n),
        RingKind::Lawrence => {
            let mut v = names("u", n);
            v.extend(names("v", n));
            v
        }
    };
    let mut b = Builder {
        nvars: vars.len(),
        field,
        rels: Vec::new(),
    };
    for sc in &splits {
        let mut p = Polynomial::constant(b.nvars, rat(1));
        let mut text = Vec::new();
        for i in sc.circuit.support.iter() {
            let in_s2 = sc.s2.contains(i);
            let (f, t) = match kind {
                RingKind::Td | RingKind::Ordinary | RingKind::Os2 => (b.var(i), vars[i].clone()),
                RingKind::Tds1 | RingKind::S1 | RingKind::Z2os if in_s2 => b.x_minus(n, i, &vars),
                RingKind::Lawrence if in_s2 => (b.var(n + i), vars[n + i].clone()),
                _ => (b.var(i), vars[i].clone()),
            };
            p = p.mul(&f);
            text.push(t);
        }
        b.push(p, text.join("*"));
    }
    match kind {
        RingKind::Ordinary | RingKind::S1 => {
            for form in arr.kernel_linear_forms() {
                let mut coeffs = form.clone();
                coeffs.resize(b.nvars, 0);
                let p = Polynomial::<Rational>::linear(&coeffs);
                if !p.is_zero() {
                    let text = p.format(&vars);
                    b.push(p, text);
                }
            }
        }
        RingKind::Os2 => {
            for i in 0..n {
                b.push(b.var(i).mul(&b.var(i)), format!("{}^2", vars[i]));
            }
        }
        RingKind::Z2os => {
            for i in 0..n {
                let (f, t) = b.x_minus(n, i, &vars);
                b.push(b.var(i).mul(&f), format!("{}*{t}", vars[i]));
            }
        }
        _ => {}
    }
    Ok(b.finish(kind, vars, warnings))
}

pub fn present_td(arr: &Arrangement, field: FieldKind) -> Result<Presentation> {
    present(arr, RingKind::Td, Some(field))
}

pub fn present_ordinary(arr: &Arrangement, field: FieldKind) -> Result<Presentation> {
    present(arr, RingKind::Ordinary, Some(field))
}

pub fn present_tds1(arr: &Arrangement, field: FieldKind) -> Result<Presentation> {
    present(arr, RingKind::Tds1, Some(field))
}

pub fn present_s1(arr: &Arrangement, field: FieldKind) -> Result<Presentation> {
    present(arr, RingKind::S1, Some(field))
}

pub fn present_os2(arr: &Arrangement) -> Result<Presentation> {
    present(arr, RingKind::Os2, Some(FieldKind::F2))
}

pub fn present_z2os(arr: &Arrangement) -> Result<Presentation> {
    present(arr, RingKind::Z2os, Some(FieldKind::F2))
}

pub fn present_lawrence(arr: &Arrangement) -> Result<Presentation> {
    present(arr, RingKind::Lawrence, Some(FieldKind::Q))
}

/// Image of an ideal in `u, x` under `x ↦ 0`, in the ring `target_vars`
/// (the first `n` variables renamed).
pub fn set_x_to_zero<K: Field>(ideal: &Ideal<K>, target_vars: Vec<String>) -> Result<Ideal<K>> {
    let x = ideal
        .vars
        .iter()
        .position(|v| v == "x")
        .ok_or_else(|| Error::input("ring has no variable x"))?;
    let m = target_vars.len();
    let images: Vec<Polynomial<K>> = (0..ideal.nvars())
        .map(|i| {
            if i == x {
                Polynomial::zero(m)
            } else {
                Polynomial::var(m, if i < x { i } else { i - 1 })
            }
        })
        .collect();
    ideal.substitute(&images, target_vars)
}

/// Carries the Lawrence ideal to `u, x` by `v_i ↦ x - u_i` and compares
/// with the tds1 ideal over Q.
pub fn lawrence_specialize(arr: &Arrangement) -> Result<bool> {
    let law = present_lawrence(arr)?.ideal::<Rational>();
    let tds1 = present_tds1(arr, FieldKind::Q)?;
    let n = arr.len();
    let m = n + 1;
    let images: Vec<Polynomial<Rational>> = (0..2 * n)
        .map(|i| {
            if i < n {
                Polynomial::var(m, i)
            } else {
                Polynomial::var(m, n).sub(&Polynomial::var(m, i - n))
            }
        })
        .collect();
    let image = law.substitute(&images, tds1.vars.clone())?;
    image.equals(&tds1.ideal())
}

/// Degrees of the minimal generators of the annihilator of `elem` in the
/// quotient ring, i.e. of `(I : elem)` over `I`.
pub fn annihilator_profile<K: Field>(ideal: &Ideal<K>, elem: &Polynomial<K>) -> Result<Vec<u32>> {
    let q = ideal.quotient(elem)?;
    q.minimal_generator_degrees(ideal)
}

/// A nonzero linear form over F2 encoded by the bitmask of its variables.
pub fn class_from_mask(nvars: usize, mask: u64) -> Polynomial<F2> {
    let coeffs: Vec<i64> = (0..nvars).map(|i| (mask >> i & 1) as i64).collect();
    Polynomial::linear(&coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    /// Bitmask of the variables in the class.
    pub class: u64,
    pub text: String,
    pub profile: Vec<u32>,
}

/// Annihilator profile of every nonzero degree-1 class over F2, in
/// increasing bitmask order.
pub fn annihilator_scan(ideal: &Ideal<F2>) -> Result<Vec<ScanEntry>> {
    let n = ideal.nvars();
    if n > SCAN_VARIABLE_CAP {
        return Err(Error::Resource(format!(
            "annihilator scan over {n} variables exceeds the cap of {SCAN_VARIABLE_CAP}"
        )));
    }
    (1..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let elem = class_from_mask(n, mask);
            Ok(ScanEntry {
                class: mask,
                text: elem.format(&ideal.vars),
                profile: annihilator_profile(ideal, &elem)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub ring: RingKind,
    pub field: FieldKind,
    pub hilbert: Vec<i64>,
    /// `(I : x) = I`, when the ring has `x`.
    pub x_regular: Option<bool>,
    /// F2 only: every nonzero degree-1 class with its annihilator profile.
    pub scan: Option<Vec<ScanEntry>>,
}

impl Fingerprint {
    /// How many classes carry each profile.
    pub fn profile_histogram(&self) -> Option<BTreeMap<Vec<u32>, usize>> {
        self.scan.as_ref().map(|s| {
            let mut h = BTreeMap::new();
            for e in s {
                *h.entry(e.profile.clone()).or_insert(0) += 1;
            }
            h
        })
    }

    pub fn classes_with_profile(&self, profile: &[u32]) -> Vec<&ScanEntry> {
        self.scan
            .iter()
            .flatten()
            .filter(|e| e.profile == profile)
            .collect()
    }
}

pub fn x_regular<K: Field>(ideal: &Ideal<K>) -> Result<Option<bool>> {
    match ideal.var("x") {
        Some(x) => Ok(Some(ideal.quotient(&x)?.equals(ideal)?)),
        None => Ok(None),
    }
}

pub fn fingerprint(pres: &Presentation) -> Result<Fingerprint> {
    let cap = FINGERPRINT_DEGREE_CAP;
    match pres.field {
        FieldKind::Q => {
            let i = pres.ideal::<Rational>();
            Ok(Fingerprint {
                ring: pres.kind,
                field: pres.field,
                hilbert: i.hilbert_series(cap)?.truncation,
                x_regular: x_regular(&i)?,
                scan: None,
            })
        }
        FieldKind::F2 => {
            let i = pres.ideal::<F2>();
            Ok(Fingerprint {
                ring: pres.kind,
                field: pres.field,
                hilbert: i.hilbert_series(cap)?.truncation,
                x_regular: x_regular(&i)?,
                scan: Some(annihilator_scan(&i)?),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// A substitution-invariant differs, so the rings are not isomorphic.
    Distinguished { invariant: String, detail: String },
    /// Every computed invariant agrees; this is not a proof of isomorphism.
    EqualFingerprint,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguished { detail, .. } => write!(f, "DISTINGUISHED: {detail}"),
            Verdict::EqualFingerprint => write!(f, "EQUAL_FINGERPRINT"),
        }
    }
}

fn format_profile(p: &[u32]) -> String {
    let parts: Vec<String> = p.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Compares fingerprints: Hilbert series, then x-regularity, then the
/// histogram of annihilator profiles over all degree-1 classes.
pub fn distinguish(a: &Fingerprint, b: &Fingerprint) -> Result<Verdict> {
    if a.field != b.field {
        return Err(Error::input("fingerprints over different fields"));
    }
    if a.hilbert != b.hilbert {
        return Ok(Verdict::Distinguished {
            invariant: "hilbert".into(),
            detail: format!("Hilbert series differ: {:?} vs {:?}", a.hilbert, b.hilbert),
        });
    }
    if a.x_regular != b.x_regular {
        return Ok(Verdict::Distinguished {
            invariant: "x_regular".into(),
            detail: format!("x-regularity differs: {:?} vs {:?}", a.x_regular, b.x_regular),
        });
    }
    if let (Some(ha), Some(hb)) = (a.profile_histogram(), b.profile_histogram()) {
        if ha != hb {
            let mut keys: Vec<&Vec<u32>> = ha.keys().chain(hb.keys()).collect();
            keys.sort();
            keys.dedup();
            // prefer a profile present on one side only
            let key = keys
                .iter()
                .find(|k| ha.contains_key(**k) != hb.contains_key(**k))
                .or_else(|| keys.iter().find(|k| ha.get(**k) != hb.get(**k)))
                .expect("histograms differ");
            let (side, fp) = if ha.get(*key).unwrap_or(&0) > hb.get(*key).unwrap_or(&0) {
                ("A", a)
            } else {
                ("B", b)
            };
            let witness = fp.classes_with_profile(key)[0].text.clone();
            let only = ha.contains_key(*key) != hb.contains_key(*key);
            let detail = if only {
                format!(
                    "annihilator profile {} at class {witness} present only in {side}",
                    format_profile(key)
                )
            } else {
                format!(
                    "annihilator profile {} occurs {} times in A and {} times in B (e.g. class {witness} in {side})",
                    format_profile(key),
                    ha.get(*key).unwrap_or(&0),
                    hb.get(*key).unwrap_or(&0)
                )
            };
            return Ok(Verdict::Distinguished {
                invariant: "annihilator_profile".into(),
                detail,
            });
        }
    }
    Ok(Verdict::EqualFingerprint)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCheck {
    pub invertible: bool,
    pub fixes_x: bool,
    pub image_contained: bool,
    pub hilbert_equal: bool,
}

impl IsoCheck {
    pub fn verified(&self) -> bool {
        self.invertible && self.fixes_x && self.image_contained && self.hilbert_equal
    }
}

/// Checks that `u ↦ map(u)` (integer linear forms over the common
/// variables) induces a graded isomorphism `R/I_A → R/I_B` fixing `x`.
pub fn verify_substitution_iso(a: &Presentation, b: &Presentation, map: &[Vec<i64>]) -> Result<IsoCheck> {
    if a.vars != b.vars || a.field != b.field {
        return Err(Error::input("presentations must share variables and field"));
    }
    match a.field {
        FieldKind::Q => iso_over::<Rational>(a, b, map),
        FieldKind::F2 => iso_over::<F2>(a, b, map),
    }
}

fn iso_over<K: Field>(a: &Presentation, b: &Presentation, map: &[Vec<i64>]) -> Result<IsoCheck> {
    let n = a.vars.len();
    if map.len() != n || map.iter().any(|r| r.len() != n) {
        return Err(Error::input("substitution matrix has the wrong shape"));
    }
    let matrix: Vec<Vec<K>> = map.iter().map(|r| r.iter().map(|&c| K::from_int(c)).collect()).collect();
    let invertible = crate::exactmath::rank(&matrix) == n;
    let fixes_x = match a.x_index() {
        Some(x) => map[x].iter().enumerate().all(|(j, &c)| K::from_int(c) == if j == x { K::one() } else { K::zero() }),
        None => true,
    };
    let images: Vec<Polynomial<K>> = map.iter().map(|r| Polynomial::linear(r)).collect();
    let ia = a.ideal::<K>();
    let ib = b.ideal::<K>();
    let image = ia.substitute(&images, a.vars.clone())?;
    let image_contained = ib.contains_ideal(&image)?;
    let cap = FINGERPRINT_DEGREE_CAP;
    let ha: HilbertData = ia.hilbert_series(cap)?;
    let hb: HilbertData = ib.hilbert_series(cap)?;
    Ok(IsoCheck {
        invertible,
        fixes_x,
        image_contained,
        hilbert_equal: ha == hb,
    })
}

/// The identity substitution as a matrix.
pub fn identity_map(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

/// Rank of the kernel forms, for reports.
pub fn kernel_rank(arr: &Arrangement) -> usize {
    let rows: Vec<Vec<Rational>> = arr
        .kernel_linear_forms()
        .iter()
        .map(|r| r.iter().map(|&c| rat(c)).collect())
        .collect();
    rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn texts(p: &Presentation) -> Vec<String> {
        p.factored.clone()
    }

    #[test]
    fn td_relations() {
        let p = present_td(&fixtures::fig2a(), FieldKind::Q).unwrap();
        assert_eq!(texts(&p), vec!["u2*u3", "u1*u2*u4", "u1*u3*u4"]);
    }

    #[test]
    fn tds1_factored_texts() {
        let a = present_tds1(&fixtures::fig2a(), FieldKind::Q).unwrap();
        assert_eq!(texts(&a), vec!["u2*u3", "u1*(x-u2)*u4", "u1*u3*u4"]);
        let c = present_tds1(&fixtures::fig2c(), FieldKind::F2).unwrap();
        assert_eq!(texts(&c), vec!["u2*u3", "(x+u1)*u2*(x+u4)", "u1*u3*u4"]);
        assert!(a.to_native().starts_with("ring TDS1 field Q vars u1,u2,u3,u4,x\n"));
        assert!(a.to_cas().starts_with("R = QQ[u1,u2,u3,u4,x];\nI = ideal(u2*u3, "));
    }

    #[test]
    fn os2_matches_region_count() {
        let p = present_os2(&fixtures::fig2a()).unwrap();
        let h = p.ideal::<F2>().hilbert_series(4).unwrap();
        assert_eq!(h.truncation, vec![1, 4, 5, 0, 0]);
        assert_eq!(h.total(), Some(10));
    }

    #[test]
    fn os2_requires_f2() {
        assert!(present(&fixtures::fig2a(), RingKind::Os2, Some(FieldKind::Q)).is_err());
    }

    #[test]
    fn parse_ring_names() {
        assert_eq!("h".parse::<RingKind>().unwrap(), RingKind::Ordinary);
        assert!("nope".parse::<RingKind>().is_err());
    }
}
