//! The circle action on the extended core: potentials, fixed faces, the flow
//! at vertices, and the fixed and core components.
//!
//! Region labels follow [`crate::regions`]: `Δ_A` uses `F_i` for `i ∈ A`.
//! On the piece of the extended core over `Δ_A` the circle acts through the
//! coordinates where `z_i = 0`, which are those with `x ∈ G_i`, so the moment
//! map there is `<x, η>` with `η = Σ_{i∉A} a_i`. With this labelling the
//! region `A = {1..n}` (the polyhedron `Δ`) is the Φ-minimum `X`.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, rank, rat, LpOutcome, RatVector, Rational};
use crate::regions::{bounded_index_set, face_complex, FaceComplex, Vertex};
use crate::subset::Subset;

/// `Σ_{i∈S} a_i`.
pub fn potential(arr: &Arrangement, s: Subset) -> Vec<i64> {
    let mut eta = vec![0i64; arr.dim()];
    for i in s.iter() {
        for (e, a) in eta.iter_mut().zip(arr.normal(i)) {
            *e += a;
        }
    }
    eta
}

/// The flow functional on `Δ_A`: the potential of the `G` indices.
pub fn region_potential(arr: &Arrangement, a: Subset) -> Vec<i64> {
    potential(arr, a.complement(arr.len()))
}

fn in_span(arr: &Arrangement, eta: &[i64], t: Subset) -> bool {
    if eta.iter().all(|&x| x == 0) {
        return true;
    }
    let mut rows: Vec<Vec<Rational>> = t.iter().map(|i| arr.hyperplane(i).normal_rat()).collect();
    let before = rank(&rows);
    rows.push(eta.iter().map(|&x| rat(x)).collect());
    rank(&rows) == before
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedFace {
    /// A region whose closure contains the face.
    pub region: Subset,
    pub tight: Subset,
    /// Index into [`FaceComplex::faces`].
    pub face: usize,
}

/// Whether the cell `faces[k]` lies under the circle-fixed locus. The test
/// does not depend on which containing region supplies `η`, since regions
/// containing the cell differ only on its tight set.
pub fn is_fixed_cell(arr: &Arrangement, fc: &FaceComplex, k: usize) -> bool {
    let f = &fc.faces[k];
    let eta = region_potential(arr, f.sides.union(f.tight));
    in_span(arr, &eta, f.tight)
}

/// Every (region, face) pair with the face fixed.
pub fn fixed_faces(arr: &Arrangement) -> Result<Vec<FixedFace>> {
    let fc = face_complex(arr)?;
    Ok(fixed_faces_in(arr, &fc))
}

pub fn fixed_faces_in(arr: &Arrangement, fc: &FaceComplex) -> Vec<FixedFace> {
    let mut out = Vec::new();
    for (k, f) in fc.faces.iter().enumerate() {
        for region in f.carrier_regions() {
            if in_span(arr, &region_potential(arr, region), f.tight) {
                out.push(FixedFace {
                    region,
                    tight: f.tight,
                    face: k,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    /// Cell indices, increasing.
    pub cells: Vec<usize>,
    pub compact: bool,
    /// Contains the interior of `Δ`, i.e. this is `X`.
    pub is_minimum: bool,
}

#[derive(Clone, Debug)]
pub struct FixedComponents {
    pub complex: FaceComplex,
    pub components: Vec<FixedComponent>,
    /// Cell index to component index, for fixed cells.
    pub component_of: BTreeMap<usize, usize>,
}

impl FixedComponents {
    /// Components counted against bounded regions: all of them, except `X`
    /// when `Δ` is unbounded.
    pub fn count(&self) -> usize {
        self.components.iter().filter(|c| c.compact).count()
    }

    /// `X` when it is noncompact and therefore reported on its own.
    pub fn noncompact_minimum(&self) -> Option<&FixedComponent> {
        self.components.iter().find(|c| c.is_minimum && !c.compact)
    }
}

/// Groups the fixed cells into connected components of their closures.
pub fn fixed_components(arr: &Arrangement) -> Result<FixedComponents> {
    let fc = face_complex(arr)?;
    Ok(fixed_components_in(arr, fc))
}

pub fn fixed_components_in(arr: &Arrangement, fc: FaceComplex) -> FixedComponents {
    let fixed: Vec<bool> = (0..fc.faces.len()).map(|k| is_fixed_cell(arr, &fc, k)).collect();
    let mut parent: Vec<usize> = (0..fc.faces.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (g, f) in fc.face_pairs() {
        if fixed[g] && fixed[f] {
            let (a, b) = (root(&mut parent, g), root(&mut parent, f));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in (0..fc.faces.len()).filter(|&k| fixed[k]) {
        groups.entry(root(&mut parent, k)).or_default().push(k);
    }
    let full = arr.full();
    let mut components = Vec::new();
    let mut component_of = BTreeMap::new();
    for cells in groups.into_values() {
        for &k in &cells {
            component_of.insert(k, components.len());
        }
        components.push(FixedComponent {
            compact: cells.iter().all(|&k| fc.faces[k].bounded),
            is_minimum: cells
                .iter()
                .any(|&k| fc.faces[k].tight.is_empty() && fc.faces[k].sides == full),
            cells,
        });
    }
    FixedComponents {
        complex: fc,
        components,
        component_of,
    }
}

/// Flow data on one line through a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFlow {
    /// The hyperplane `l`; the line is the intersection of the others at the vertex.
    pub line: usize,
    pub b: Vec<i64>,
    /// `<a_l, b_l>`.
    pub pairing: i64,
    /// `<b_l, η>` for a region along the ray in direction `b_l`.
    pub r_test: i64,
    /// `<-b_l, a_l + η>` for a region along the opposite ray.
    pub q_test: i64,
}

impl LineFlow {
    pub fn r_unstable(&self) -> bool {
        self.r_test >= 0
    }

    pub fn q_unstable(&self) -> bool {
        self.q_test >= 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFlow {
    pub point: RatVector,
    pub incident: Subset,
    pub lines: Vec<LineFlow>,
}

impl VertexFlow {
    pub fn is_smooth(&self) -> bool {
        self.lines.iter().all(|l| l.pairing == 1)
    }

    /// Directions of the unstable rays.
    pub fn unstable_directions(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for l in &self.lines {
            if l.r_unstable() {
                out.push(l.b.clone());
            }
            if l.q_unstable() {
                out.push(l.b.iter().map(|x| -x).collect());
            }
        }
        out
    }
}

/// Stable/unstable bookkeeping at a vertex.
pub fn vertex_flow(arr: &Arrangement, v: &Vertex) -> Result<VertexFlow> {
    let d = arr.dim();
    let tight = Subset::from_indices(
        (0..arr.len()).filter(|&i| arr.hyperplane(i).evaluate(v.point.entries()).is_zero()),
    );
    if tight != v.incident || tight.len() != d || arr.rank_of(tight) != d {
        return Err(Error::input(format!("{} is not a simple vertex", v.point)));
    }
    // η over the non-incident hyperplanes whose G side contains v; the
    // incident ones other than l pair to zero with b_l.
    let g_near = Subset::from_indices(
        (0..arr.len()).filter(|&i| arr.hyperplane(i).evaluate(v.point.entries()).is_negative()),
    );
    let eta = potential(arr, g_near);
    let mut lines = Vec::with_capacity(d);
    for l in tight.iter() {
        let rows: Vec<RatVector> = tight
            .without(l)
            .iter()
            .map(|j| RatVector::from_ints(arr.normal(j)))
            .collect();
        let mut b: Vec<i64> = if rows.is_empty() {
            vec![1]
        } else {
            let k = kernel_basis(&rows)?;
            k[0].to_integers()
                .expect("integral")
                .iter()
                .map(|x| x.to_i64().expect("fits"))
                .collect()
        };
        let mut pairing = dot(arr.normal(l), &b);
        if pairing < 0 {
            b.iter_mut().for_each(|x| *x = -*x);
            pairing = -pairing;
        }
        let r_test = dot(&b, &eta);
        let al_eta: Vec<i64> = arr.normal(l).iter().zip(&eta).map(|(x, y)| x + y).collect();
        let q_test = -dot(&b, &al_eta);
        lines.push(LineFlow {
            line: l,
            b,
            pairing,
            r_test,
            q_test,
        });
    }
    Ok(VertexFlow {
        point: v.point.clone(),
        incident: tight,
        lines,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreComponent {
    pub region: Subset,
    pub eta: Vec<i64>,
    /// The cell whose closure is the face of `Δ_A` minimising `<x, η>`.
    pub face: usize,
    /// Index into [`FixedComponents::components`].
    pub component: usize,
}

#[derive(Clone, Debug)]
pub struct CoreReport {
    pub fixed: FixedComponents,
    pub core: Vec<CoreComponent>,
}

impl CoreReport {
    /// Bounded regions map to distinct fixed components.
    pub fn is_injective(&self) -> bool {
        let mut seen: Vec<usize> = self.core.iter().map(|c| c.component).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.core.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.core.len() == self.fixed.count()
    }
}

/// For each bounded region, the minimising face of its flow functional and
/// the fixed component that face belongs to.
pub fn core_components(arr: &Arrangement) -> Result<CoreReport> {
    let fixed = fixed_components(arr)?;
    let fc = &fixed.complex;
    let mut core = Vec::new();
    for a in bounded_index_set(arr)? {
        let eta = region_potential(arr, a);
        let obj: Vec<Rational> = eta.iter().map(|&x| rat(x)).collect();
        let min = match arr.region_system(a).minimize(&obj) {
            LpOutcome::Optimal { value, .. } => value,
            other => return Err(Error::Contract(format!("bounded region LP gave {other:?}"))),
        };
        let face = fc
            .faces_of_region(a)
            .into_iter()
            .filter(|&k| fc.faces[k].point.dot(&obj) == min)
            .max_by_key(|&k| fc.faces[k].dim)
            .ok_or_else(|| Error::Contract("no cell attains the minimum".into()))?;
        let component = *fixed
            .component_of
            .get(&face)
            .ok_or_else(|| Error::Contract(format!("minimising face of {a} is not fixed")))?;
        core.push(CoreComponent {
            region: a,
            eta,
            face,
            component,
        });
    }
    Ok(CoreReport { fixed, core })
}
