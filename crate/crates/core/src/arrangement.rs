//! Cooriented rational affine arrangements.
//!
//! Hyperplane `i` is `H_i = {x : <x, a_i> = r_i}` with the half-spaces
//! `F_i = {<x, a_i> >= r_i}` and `G_i = {<x, a_i> <= r_i}`. Normals are
//! primitive integer vectors; indices are 0-based in the API and 1-based in
//! files and reports.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use crate::circuits;
use crate::error::{Error, Result};
use crate::exactmath::{
    format_rational, gcd_all, is_unimodular, make_primitive, parse_rational, rank, rat, LinConstraint,
    LinearSystem, RatVector, Rational,
};
use crate::subset::{Subset, MAX_HYPERPLANES};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
    pub offset: Rational,
}

impl Hyperplane {
    /// Builds a hyperplane, rescaling `normal` to be primitive and `offset`
    /// by the same positive factor.
    pub fn new(normal: Vec<i64>, offset: Rational) -> Result<Self> {
        let big: Vec<BigInt> = normal.iter().map(|&x| BigInt::from(x)).collect();
        let prim = make_primitive(&big)?;
        let g = gcd_all(&big);
        let normal = prim
            .iter()
            .map(|x| x.to_i64().expect("primitive entries fit"))
            .collect();
        Ok(Hyperplane {
            normal,
            offset: offset / Rational::from_integer(g),
        })
    }

    pub fn normal_rat(&self) -> Vec<Rational> {
        self.normal.iter().map(|&x| rat(x)).collect()
    }

    /// `F_i`: `<x, a_i> >= r_i`.
    pub fn f_side(&self) -> LinConstraint {
        LinConstraint::geq(self.normal_rat(), self.offset.clone())
    }

    /// `G_i`: `<x, a_i> <= r_i`.
    pub fn g_side(&self) -> LinConstraint {
        LinConstraint::leq(self.normal_rat(), self.offset.clone())
    }

    pub fn equation(&self) -> LinConstraint {
        LinConstraint::eq(self.normal_rat(), self.offset.clone())
    }

    /// `<x, a_i> - r_i`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        RatVector::new(x.to_vec()).dot_ints(&self.normal) - &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    name: Option<String>,
}

/// One failed condition found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub subset: Subset,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_simple: bool,
    pub is_smooth: bool,
    pub witnesses: Vec<Witness>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>, name: Option<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("dimension must be at least 1"));
        }
        if hyperplanes.is_empty() {
            return Err(Error::input("an arrangement needs at least one hyperplane"));
        }
        if hyperplanes.len() > MAX_HYPERPLANES {
            return Err(Error::Resource(format!(
                "{} hyperplanes exceeds the supported maximum of {MAX_HYPERPLANES}",
                hyperplanes.len()
            )));
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::input(format!(
                    "hyperplane {} has a normal of length {} in dimension {dim}",
                    i + 1,
                    h.normal.len()
                )));
            }
            if h.normal.iter().all(|&x| x == 0) {
                return Err(Error::input(format!("hyperplane {} has a zero normal", i + 1)));
            }
        }
        Ok(Arrangement {
            dim,
            hyperplanes,
            name,
        })
    }

    /// Convenience constructor from integer normals and integer offsets.
    pub fn from_ints(dim: usize, data: &[(&[i64], i64)], name: Option<&str>) -> Result<Self> {
        let hs = data
            .iter()
            .map(|(a, r)| Hyperplane::new(a.to_vec(), rat(*r)))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(dim, hs, name.map(str::to_string))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: Option<String>) -> Self {
        self.name = name;
        self
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn normal(&self, i: usize) -> &[i64] {
        &self.hyperplanes[i].normal
    }

    pub fn offset(&self, i: usize) -> &Rational {
        &self.hyperplanes[i].offset
    }

    pub fn offsets(&self) -> Vec<Rational> {
        self.hyperplanes.iter().map(|h| h.offset.clone()).collect()
    }

    /// The `d x n` matrix `B = [a_1 ... a_n]` as rows.
    pub fn normal_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|l| self.hyperplanes.iter().map(|h| h.normal[l]).collect())
            .collect()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Rank of the normals indexed by `s`.
    pub fn rank_of(&self, s: Subset) -> usize {
        let rows: Vec<Vec<Rational>> = s.iter().map(|i| self.hyperplanes[i].normal_rat()).collect();
        rank(&rows)
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.full())
    }

    /// The polyhedron `Δ_A = (∩_{i∈A} F_i) ∩ (∩_{i∉A} G_i)`.
    pub fn region_system(&self, a: Subset) -> LinearSystem {
        let constraints = (0..self.len())
            .map(|i| {
                if a.contains(i) {
                    self.hyperplanes[i].f_side()
                } else {
                    self.hyperplanes[i].g_side()
                }
            })
            .collect();
        LinearSystem {
            dim: self.dim,
            constraints,
        }
    }

    /// `(∩_{i∈S1} G_i) ∩ (∩_{j∈S2} F_j)`.
    pub fn split_system(&self, s1: Subset, s2: Subset) -> LinearSystem {
        let constraints = s1
            .iter()
            .map(|i| self.hyperplanes[i].g_side())
            .chain(s2.iter().map(|j| self.hyperplanes[j].f_side()))
            .collect();
        LinearSystem {
            dim: self.dim,
            constraints,
        }
    }

    /// `∩_{i∈B} H_i` as an equality system.
    pub fn flat_system(&self, b: Subset) -> LinearSystem {
        LinearSystem {
            dim: self.dim,
            constraints: b.iter().map(|i| self.hyperplanes[i].equation()).collect(),
        }
    }

    /// Reverses the coorientation of hyperplane `l`: `a_l -> -a_l`,
    /// `r_l -> -r_l`. The point set `H_l` is unchanged; `F_l` and `G_l` swap.
    pub fn flip_coorientation(&self, l: usize) -> Result<Arrangement> {
        if l >= self.len() {
            return Err(Error::input(format!(
                "hyperplane index {} out of range 1..={}",
                l + 1,
                self.len()
            )));
        }
        let mut out = self.clone();
        let h = &mut out.hyperplanes[l];
        h.normal.iter_mut().for_each(|x| *x = -*x);
        h.offset = -h.offset.clone();
        Ok(out)
    }

    /// Translates every hyperplane by `c`: `r_i -> r_i + <c, a_i>`.
    pub fn translate(&self, c: &RatVector) -> Result<Arrangement> {
        if c.dim() != self.dim {
            return Err(Error::input(format!(
                "translation vector has length {} in dimension {}",
                c.dim(),
                self.dim
            )));
        }
        let mut out = self.clone();
        for h in out.hyperplanes.iter_mut() {
            h.offset = h.offset.clone() + c.dot_ints(&h.normal);
        }
        Ok(out)
    }

    /// Relabels hyperplanes: new hyperplane `k` is old hyperplane `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Arrangement> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len() || perm.iter().any(|&p| p >= self.len() || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::input("not a permutation of the hyperplane indices"));
        }
        let mut out = self.clone();
        out.hyperplanes = perm.iter().map(|&p| self.hyperplanes[p].clone()).collect();
        Ok(out)
    }

    /// Appends a hyperplane (normal rescaled to primitive).
    pub fn with_hyperplane(&self, normal: Vec<i64>, offset: Rational) -> Result<Arrangement> {
        let mut hs = self.hyperplanes.clone();
        hs.push(Hyperplane::new(normal, offset)?);
        Arrangement::new(self.dim, hs, self.name.clone())
    }

    /// Generators of `ker ι*`: for each coordinate `l` the form
    /// `Σ_i (a_i)_l u_i`, as coefficient vectors over `u_1..u_n`.
    pub fn kernel_linear_forms(&self) -> Vec<Vec<i64>> {
        self.normal_matrix()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn is_simple(&self) -> bool {
        circuits::matroid_circuits(self)
            .iter()
            .all(|c| !c.offset_sum.is_zero())
    }

    /// Fails with [`Error::NonSimple`] listing the circuits whose
    /// hyperplanes meet.
    pub fn require_simple(&self) -> Result<()> {
        let bad: Vec<Vec<usize>> = circuits::matroid_circuits(self)
            .iter()
            .filter(|c| c.offset_sum.is_zero())
            .map(|c| c.support.one_based())
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::NonSimple { witnesses: bad })
        }
    }

    // ---- file format ----------------------------------------------------

    pub fn parse(text: &str) -> Result<Arrangement> {
        let raw: RawArrangement = serde_json::from_str(text).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        if raw.dimension == 0 {
            return Err(Error::parse("dimension", "dimension must be at least 1"));
        }
        if raw.hyperplanes.is_empty() {
            return Err(Error::parse("hyperplanes", "at least one hyperplane is required"));
        }
        let mut hs = Vec::with_capacity(raw.hyperplanes.len());
        for (i, h) in raw.hyperplanes.into_iter().enumerate() {
            if h.normal.len() != raw.dimension {
                return Err(Error::parse(
                    format!("hyperplanes[{i}].normal"),
                    format!("expected {} entries, found {}", raw.dimension, h.normal.len()),
                ));
            }
            if h.normal.iter().all(|&x| x == 0) {
                return Err(Error::parse(format!("hyperplanes[{i}].normal"), "zero normal"));
            }
            let offset = match h.offset {
                RawOffset::Text(s) => parse_rational(&s),
                RawOffset::Int(n) => Ok(rat(n)),
            }
            .map_err(|e| Error::parse(format!("hyperplanes[{i}].offset"), e.to_string()))?;
            hs.push(
                Hyperplane::new(h.normal, offset)
                    .map_err(|e| Error::parse(format!("hyperplanes[{i}]"), e.to_string()))?,
            );
        }
        Arrangement::new(raw.dimension, hs, raw.name).map_err(|e| Error::parse("hyperplanes", e.to_string()))
    }

    /// Canonical JSON text: keys in the order `dimension`, `name`,
    /// `hyperplanes`; one hyperplane object per line; trailing newline.
    pub fn serialize(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"dimension\": {},", self.dim);
        if let Some(name) = &self.name {
            let _ = writeln!(
                out,
                "  \"name\": {},",
                serde_json::to_string(name).expect("string serialises")
            );
        }
        out.push_str("  \"hyperplanes\": [\n");
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let normal: Vec<String> = h.normal.iter().map(i64::to_string).collect();
            let _ = write!(
                out,
                "    {{\"normal\": [{}], \"offset\": \"{}\"}}",
                normal.join(","),
                format_rational(&h.offset)
            );
            out.push_str(if i + 1 < self.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ]\n}\n");
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrangement {
    dimension: usize,
    #[serde(default)]
    name: Option<String>,
    hyperplanes: Vec<RawHyperplane>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHyperplane {
    normal: Vec<i64>,
    offset: RawOffset,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawOffset {
    Text(String),
    Int(i64),
}

/// Simplicity by the circuit criterion; smoothness by unimodularity of every
/// rank-`d` set of `d` normals.
pub fn validate(arr: &Arrangement) -> ValidationReport {
    let mut witnesses = Vec::new();
    let mut is_simple = true;
    for c in circuits::matroid_circuits(arr) {
        if c.offset_sum.is_zero() {
            is_simple = false;
            witnesses.push(Witness {
                subset: c.support,
                reason: "dependent hyperplanes meet (circuit offset-sum is 0)".into(),
            });
        }
    }
    let mut unimodular = true;
    let d = arr.dim();
    if arr.len() >= d && arr.len() < 64 {
        for s in Subset::of_size(arr.len(), d) {
            let vecs: Vec<Vec<BigInt>> = s
                .iter()
                .map(|i| arr.normal(i).iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let det = crate::exactmath::determinant(&vecs).expect("square");
            if det.is_zero() {
                continue;
            }
            if !is_unimodular(&vecs).expect("square") {
                unimodular = false;
                witnesses.push(Witness {
                    subset: s,
                    reason: format!("normals at this vertex have determinant {det}"),
                });
            }
        }
    }
    ValidationReport {
        is_simple,
        is_smooth: is_simple && unimodular,
        witnesses,
    }
}
