//! Regions `Δ_A`, vertices and the face complex of a simple arrangement.
//!
//! Faces are handled as open cells: a cell is fixed by its tight set `T`
//! (hyperplanes containing it) and, for every other index, which open side it
//! lies on. Cells are found by adding hyperplanes one at a time and keeping
//! the sign patterns whose strict system is feasible, which costs a number of
//! LPs proportional to the output rather than to `2^n`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactmath::{rat, solve_unique, LinConstraint, LinearSystem, LpOutcome, RatVector, Rational};
use crate::subset::Subset;

/// Default limit on the number of hyperplanes for region enumeration.
pub const DEFAULT_REGION_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Indices whose `F` half-space is used; the rest use `G`.
    pub set: Subset,
    pub feasible: bool,
    pub bounded: bool,
    /// An interior point when feasible.
    pub witness: Option<RatVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: RatVector,
    pub incident: Subset,
}

/// An open cell of the arrangement; its closure is a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub tight: Subset,
    /// Indices off `tight` on whose open `F` side the cell lies.
    pub sides: Subset,
    pub dim: usize,
    pub bounded: bool,
    /// A point in the relative interior.
    pub point: RatVector,
}

impl Face {
    /// Whether the closure of this cell lies in `Δ_A`.
    pub fn lies_in(&self, a: Subset) -> bool {
        a.difference(self.tight) == self.sides
    }

    /// The closed regions containing this face (all sides on `tight`).
    pub fn carrier_regions(&self) -> impl Iterator<Item = Subset> + '_ {
        let t = self.tight.to_vec();
        (0..1u64 << t.len()).map(move |mask| {
            t.iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .fold(self.sides, |s, (_, &i)| s.with(i))
        })
    }

    /// Sign-vector order: `self` is a face of the closure of `other`.
    pub fn is_face_of(&self, other: &Face) -> bool {
        other.tight.is_subset_of(self.tight)
            && self.sides == other.sides.difference(self.tight)
    }
}

#[derive(Clone, Debug)]
pub struct FaceComplex {
    pub vertices: Vec<Vertex>,
    /// All cells, sorted by dimension, then tight set, then sides.
    pub faces: Vec<Face>,
    /// Covering pairs `(g, f)`: `faces[g]` is a facet of the closure of `faces[f]`.
    pub incidence: Vec<(usize, usize)>,
}

impl FaceComplex {
    /// Indices of the cells whose closures make up the closed region `Δ_A`.
    pub fn faces_of_region(&self, a: Subset) -> Vec<usize> {
        (0..self.faces.len()).filter(|&k| self.faces[k].lies_in(a)).collect()
    }

    /// Index of the cell with this tight set and side pattern.
    pub fn find(&self, tight: Subset, sides: Subset) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.tight == tight && f.sides == sides)
    }

    /// All `(g, f)` with `faces[g]` a face of the closure of `faces[f]`, `g != f`.
    pub fn face_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (f, big) in self.faces.iter().enumerate() {
            for (g, small) in self.faces.iter().enumerate() {
                if g != f && small.dim < big.dim && small.is_face_of(big) {
                    out.push((g, f));
                }
            }
        }
        out
    }

    pub fn count_by_dim(&self, cells: &[usize]) -> Vec<usize> {
        let top = self.faces.iter().map(|f| f.dim).max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for &k in cells {
            counts[self.faces[k].dim] += 1;
        }
        counts
    }
}

fn check_cap(arr: &Arrangement, cap: usize) -> Result<()> {
    if arr.len() > cap {
        return Err(Error::Resource(format!(
            "{} hyperplanes exceeds the region cap of {cap}; enumeration visits up to 2^n sign patterns, \
             raise the cap explicitly if this is intended",
            arr.len()
        )));
    }
    Ok(())
}

// Strict system in (x, s): equalities on `tight`, `±(<a_i,x> - r_i) >= s` on
// `signed`, `s <= 1`. Returns a relative-interior point when the optimum s > 0.
fn strict_point(arr: &Arrangement, tight: Subset, signed: &[(usize, bool)]) -> Option<RatVector> {
    let d = arr.dim();
    let mut cons = Vec::with_capacity(tight.len() + signed.len() + 1);
    for i in tight.iter() {
        let mut n = arr.hyperplane(i).normal_rat();
        n.push(Rational::zero());
        cons.push(LinConstraint::eq(n, arr.offset(i).clone()));
    }
    for &(i, f_side) in signed {
        let sign = if f_side { rat(1) } else { rat(-1) };
        let mut n: Vec<Rational> = arr.hyperplane(i).normal_rat().into_iter().map(|x| x * &sign).collect();
        n.push(rat(-1));
        cons.push(LinConstraint::geq(n, arr.offset(i) * &sign));
    }
    let mut top = vec![Rational::zero(); d + 1];
    top[d] = Rational::one();
    cons.push(LinConstraint::leq(top.clone(), Rational::one()));
    let sys = LinearSystem { dim: d + 1, constraints: cons };
    match sys.maximize(&top) {
        LpOutcome::Optimal { value, mut point } if value.is_positive() => {
            point.truncate(d);
            Some(RatVector::new(point))
        }
        _ => None,
    }
}

// Cells inside the flat of `tight`, as (F-side set, interior point).
fn cells_on_flat(arr: &Arrangement, tight: Subset) -> Vec<(Subset, RatVector)> {
    let Some(start) = strict_point(arr, tight, &[]) else {
        return Vec::new();
    };
    let mut cells: Vec<(Vec<(usize, bool)>, RatVector)> = vec![(Vec::new(), start)];
    for i in (0..arr.len()).filter(|&i| !tight.contains(i)) {
        let h = arr.hyperplane(i);
        cells = cells
            .into_par_iter()
            .flat_map_iter(|(signs, p)| {
                let v = h.evaluate(&p);
                let mut out = Vec::with_capacity(2);
                for side in [true, false] {
                    let mut s = signs.clone();
                    s.push((i, side));
                    // reuse the known point when it is already strictly on this side
                    let known = if side { v.is_positive() } else { v.is_negative() };
                    let q = if known { Some(p.clone()) } else { strict_point(arr, tight, &s) };
                    if let Some(q) = q {
                        out.push((s, q));
                    }
                }
                out
            })
            .collect();
    }
    cells
        .into_iter()
        .map(|(signs, p)| {
            let set = Subset::from_indices(signs.iter().filter(|(_, f)| *f).map(|(i, _)| *i));
            (set, p)
        })
        .collect()
}

fn is_bounded(arr: &Arrangement, tight: Subset, sides: Subset) -> bool {
    let region = sides.union(tight);
    let mut sys = arr.region_system(region);
    for i in tight.iter() {
        sys.push(arr.hyperplane(i).equation());
    }
    sys.is_bounded().expect("cell is nonempty")
}

/// One [`Region`] per subset `A`, in increasing bitmask order.
pub fn enumerate_regions(arr: &Arrangement) -> Result<Vec<Region>> {
    enumerate_regions_capped(arr, DEFAULT_REGION_CAP)
}

pub fn enumerate_regions_capped(arr: &Arrangement, cap: usize) -> Result<Vec<Region>> {
    check_cap(arr, cap)?;
    arr.require_simple()?;
    // In a simple arrangement every nonempty Δ_A has interior, so the
    // feasible regions are exactly the closures of the chambers.
    let chambers = cells_on_flat(arr, Subset::EMPTY);
    let mut regions: Vec<Region> = Subset::all(arr.len())
        .map(|set| Region {
            set,
            feasible: false,
            bounded: false,
            witness: None,
        })
        .collect();
    let flagged: Vec<(Subset, bool, RatVector)> = chambers
        .into_par_iter()
        .map(|(set, p)| (set, is_bounded(arr, Subset::EMPTY, set), p))
        .collect();
    for (set, bounded, p) in flagged {
        let r = &mut regions[set.bits() as usize];
        r.feasible = true;
        r.bounded = bounded;
        r.witness = Some(p);
    }
    Ok(regions)
}

/// Only the feasible regions, in increasing bitmask order.
pub fn feasible_regions(arr: &Arrangement) -> Result<Vec<Region>> {
    Ok(enumerate_regions(arr)?.into_iter().filter(|r| r.feasible).collect())
}

/// The bounded index set `I`, in increasing bitmask order.
pub fn bounded_index_set(arr: &Arrangement) -> Result<Vec<Subset>> {
    Ok(enumerate_regions(arr)?
        .into_iter()
        .filter(|r| r.bounded)
        .map(|r| r.set)
        .collect())
}

/// Brute-force region flags from one LP per subset; the independent check
/// for [`enumerate_regions`].
pub fn regions_by_lp(arr: &Arrangement) -> Vec<(Subset, bool, bool)> {
    Subset::all(arr.len())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| {
            let sys = arr.region_system(a);
            if sys.is_feasible() {
                (a, true, sys.is_bounded().expect("feasible"))
            } else {
                (a, false, false)
            }
        })
        .collect()
}

/// Vertices of the complex, ordered by their incident sets.
pub fn vertices(arr: &Arrangement) -> Vec<Vertex> {
    let d = arr.dim();
    let n = arr.len();
    let mut out: Vec<Vertex> = Vec::new();
    for b in Subset::of_size(n, d) {
        let a: Vec<Vec<Rational>> = b.iter().map(|i| arr.hyperplane(i).normal_rat()).collect();
        let r: Vec<Rational> = b.iter().map(|i| arr.offset(i).clone()).collect();
        let Some(p) = solve_unique(&a, &r) else {
            continue;
        };
        if out.iter().any(|v| v.point.entries() == p.as_slice()) {
            continue;
        }
        let incident = Subset::from_indices((0..n).filter(|&i| arr.hyperplane(i).evaluate(&p).is_zero()));
        out.push(Vertex {
            point: RatVector::new(p),
            incident,
        });
    }
    out.sort_by_key(|v| v.incident.size_lex_key());
    out
}

/// Every cell of the complex with its dimension, boundedness and covering
/// relations.
pub fn face_complex(arr: &Arrangement) -> Result<FaceComplex> {
    face_complex_capped(arr, DEFAULT_REGION_CAP)
}

pub fn face_complex_capped(arr: &Arrangement, cap: usize) -> Result<FaceComplex> {
    check_cap(arr, cap)?;
    arr.require_simple()?;
    let d = arr.dim();
    let n = arr.len();
    let mut tights = Vec::new();
    for k in 0..=d.min(n) {
        for t in Subset::of_size(n, k) {
            if arr.rank_of(t) == k {
                tights.push(t);
            }
        }
    }
    let mut faces: Vec<Face> = tights
        .par_iter()
        .flat_map_iter(|&t| {
            cells_on_flat(arr, t).into_iter().map(move |(sides, point)| Face {
                tight: t,
                sides,
                dim: d - t.len(),
                bounded: false,
                point,
            })
        })
        .collect();
    faces
        .par_iter_mut()
        .for_each(|f| f.bounded = f.dim == 0 || is_bounded(arr, f.tight, f.sides));
    faces.sort_by(|x, y| {
        (x.dim, x.tight.size_lex_key(), x.sides.bits()).cmp(&(y.dim, y.tight.size_lex_key(), y.sides.bits()))
    });
    let mut incidence = Vec::new();
    for (f, big) in faces.iter().enumerate() {
        for (g, small) in faces.iter().enumerate() {
            if small.dim + 1 == big.dim && small.is_face_of(big) {
                incidence.push((g, f));
            }
        }
    }
    Ok(FaceComplex {
        vertices: vertices(arr),
        faces,
        incidence,
    })
}
