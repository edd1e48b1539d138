//! Circuits of the normal vectors and their coorientation splittings.
//!
//! In a simple arrangement the minimal index sets with empty intersection
//! are exactly the circuits of the linear matroid on `{a_i}`. Each circuit
//! carries its dependence `Σ λ_i a_i = 0`; with `λ` scaled so that
//! `Σ λ_i r_i > 0`, the splitting is `S1 = {λ_i < 0}`, `S2 = {λ_i > 0}`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, rat, RatVector, Rational};
use crate::subset::Subset;

/// Largest arrangement for which circuits are enumerated.
pub const MAX_CIRCUIT_HYPERPLANES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub support: Subset,
    /// `λ_i` for `i` in `support`, in increasing index order.
    pub dependence: Vec<i64>,
    pub offset_sum: Rational,
}

impl Circuit {
    pub fn lambda(&self, i: usize) -> Option<i64> {
        self.support
            .iter()
            .position(|j| j == i)
            .map(|k| self.dependence[k])
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitCircuit {
    pub circuit: Circuit,
    /// Indices whose `G` half-space enters the empty intersection (`u_i`).
    pub s1: Subset,
    /// Indices whose `F` half-space enters the empty intersection (`x - u_j`).
    pub s2: Subset,
}

/// All circuits of the matroid on the normals, without any simplicity
/// requirement. Sorted by (size, indices).
pub fn matroid_circuits(arr: &Arrangement) -> Vec<Circuit> {
    let n = arr.len();
    let max_size = (arr.rank() + 1).min(n);
    let mut found: Vec<Circuit> = Vec::new();
    for k in 1..=max_size {
        for s in Subset::of_size(n, k) {
            if arr.rank_of(s) != k - 1 {
                continue;
            }
            if s.iter().any(|i| arr.rank_of(s.without(i)) != k - 1) {
                continue;
            }
            found.push(circuit_of(arr, s));
        }
    }
    found.sort_by_key(|c| c.support.size_lex_key());
    found
}

fn circuit_of(arr: &Arrangement, s: Subset) -> Circuit {
    let idx = s.to_vec();
    // columns a_i for i in s, as rows of the d x |s| matrix
    let rows: Vec<RatVector> = (0..arr.dim())
        .map(|l| RatVector::from_ints(&idx.iter().map(|&i| arr.normal(i)[l]).collect::<Vec<_>>()))
        .collect();
    let ker = kernel_basis(&rows).expect("consistent row lengths");
    debug_assert_eq!(ker.len(), 1, "a circuit has a one-dimensional dependence");
    let lambda: Vec<BigInt> = ker[0].to_integers().expect("cleared to integers");
    let mut dependence: Vec<i64> = lambda.iter().map(|x| x.to_i64().expect("fits")).collect();
    let mut offset_sum = idx
        .iter()
        .zip(&dependence)
        .fold(Rational::zero(), |acc, (&i, &l)| acc + rat(l) * arr.offset(i));
    let flip = if offset_sum.is_zero() {
        dependence[0] < 0
    } else {
        offset_sum.is_negative()
    };
    if flip {
        dependence.iter_mut().for_each(|x| *x = -*x);
        offset_sum = -offset_sum;
    }
    Circuit {
        support: s,
        dependence,
        offset_sum,
    }
}

fn check_size(arr: &Arrangement) -> Result<()> {
    if arr.len() > MAX_CIRCUIT_HYPERPLANES {
        return Err(Error::Resource(format!(
            "circuit enumeration is limited to {MAX_CIRCUIT_HYPERPLANES} hyperplanes, got {}",
            arr.len()
        )));
    }
    Ok(())
}

/// Circuits of a simple arrangement (= its minimal empty-intersection sets).
pub fn enumerate_circuits(arr: &Arrangement) -> Result<Vec<Circuit>> {
    check_size(arr)?;
    let circuits = matroid_circuits(arr);
    let bad: Vec<Vec<usize>> = circuits
        .iter()
        .filter(|c| c.offset_sum.is_zero())
        .map(|c| c.support.one_based())
        .collect();
    if !bad.is_empty() {
        return Err(Error::NonSimple { witnesses: bad });
    }
    Ok(circuits)
}

/// The sign-rule splitting of a circuit with nonzero offset-sum.
pub fn split_circuit(c: &Circuit) -> Result<SplitCircuit> {
    if c.offset_sum.is_zero() {
        return Err(Error::NonSimple {
            witnesses: vec![c.support.one_based()],
        });
    }
    let mut s1 = Subset::EMPTY;
    let mut s2 = Subset::EMPTY;
    for (i, &l) in c.support.iter().zip(&c.dependence) {
        if l < 0 {
            s1.insert(i);
        } else {
            s2.insert(i);
        }
    }
    Ok(SplitCircuit {
        circuit: c.clone(),
        s1,
        s2,
    })
}

/// Splittings of every circuit, in circuit order.
pub fn split_circuits(arr: &Arrangement) -> Result<Vec<SplitCircuit>> {
    let circuits = enumerate_circuits(arr)?;
    circuits.par_iter().map(split_circuit).collect()
}

/// Direct check of the defining property: is
/// `(∩_{i∈S1} G_i) ∩ (∩_{j∈S2} F_j)` empty?
pub fn verify_split(arr: &Arrangement, s1: Subset, s2: Subset) -> Result<bool> {
    if !s1.is_disjoint(s2) {
        return Err(Error::input(format!("{s1} and {s2} are not disjoint")));
    }
    if !s1.union(s2).is_subset_of(arr.full()) {
        return Err(Error::input("index outside the arrangement"));
    }
    Ok(!arr.split_system(s1, s2).is_feasible())
}

/// Every splitting of `support` that passes [`verify_split`].
pub fn passing_splits(arr: &Arrangement, support: Subset) -> Result<Vec<(Subset, Subset)>> {
    let idx = support.to_vec();
    let mut out = Vec::new();
    for mask in 0..1u64 << idx.len() {
        let s1 = Subset::from_indices(idx.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i));
        let s2 = support.difference(s1);
        if verify_split(arr, s1, s2)? {
            out.push((s1, s2));
        }
    }
    Ok(out)
}

/// True when no support strictly contains another.
pub fn is_antichain(circuits: &[Circuit]) -> bool {
    circuits.iter().all(|a| {
        circuits
            .iter()
            .all(|b| a.support == b.support || !a.support.is_subset_of(b.support))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn supports(cs: &[Circuit]) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = cs.iter().map(|c| c.support.one_based()).collect();
        v.sort();
        v
    }

    fn split_of(arr: &Arrangement, one_based: &[usize]) -> SplitCircuit {
        let s = Subset::from_one_based(one_based);
        let c = enumerate_circuits(arr)
            .unwrap()
            .into_iter()
            .find(|c| c.support == s)
            .expect("circuit present");
        split_circuit(&c).unwrap()
    }

    #[test]
    fn fig2a_circuits() {
        let cs = enumerate_circuits(&fixtures::fig2a()).unwrap();
        assert_eq!(supports(&cs), vec![vec![1, 2, 4], vec![1, 3, 4], vec![2, 3]]);
        for c in &cs {
            assert!(c.offset_sum.is_positive());
        }
    }

    #[test]
    fn fig2a5_has_six_circuits() {
        let cs = enumerate_circuits(&fixtures::fig2a5()).unwrap();
        assert_eq!(
            supports(&cs),
            vec![
                vec![1, 2, 4],
                vec![1, 3, 4],
                vec![1, 5],
                vec![2, 3],
                vec![2, 4, 5],
                vec![3, 4, 5]
            ]
        );
        assert!(is_antichain(&cs));
    }

    #[test]
    fn independent_lines_have_no_circuits() {
        let a = Arrangement::from_ints(2, &[(&[1, 0], 0), (&[0, 1], 5)], None).unwrap();
        assert!(enumerate_circuits(&a).unwrap().is_empty());
    }

    #[test]
    fn dependence_is_a_relation_among_normals() {
        for arr in fixtures::all() {
            for c in enumerate_circuits(&arr).unwrap() {
                for l in 0..arr.dim() {
                    let s: i64 = c
                        .support
                        .iter()
                        .zip(&c.dependence)
                        .map(|(i, &lam)| lam * arr.normal(i)[l])
                        .sum();
                    assert_eq!(s, 0);
                }
                assert!(c.dependence.iter().all(|&x| x != 0));
            }
        }
    }

    #[test]
    fn fixture_splittings() {
        let a = fixtures::fig2a();
        let s = split_of(&a, &[2, 3]);
        assert_eq!((s.s1, s.s2), (Subset::from_one_based(&[2, 3]), Subset::EMPTY));
        let s = split_of(&a, &[1, 2, 4]);
        assert_eq!(
            (s.s1, s.s2),
            (Subset::from_one_based(&[1, 4]), Subset::from_one_based(&[2]))
        );
        let c = fixtures::fig2c();
        let s = split_of(&c, &[1, 2, 4]);
        assert_eq!(
            (s.s1, s.s2),
            (Subset::from_one_based(&[2]), Subset::from_one_based(&[1, 4]))
        );
    }

    #[test]
    fn verify_split_examples() {
        let a = fixtures::fig2a();
        let one = |v: &[usize]| Subset::from_one_based(v);
        assert!(verify_split(&a, one(&[2, 3]), Subset::EMPTY).unwrap());
        assert!(!verify_split(&a, one(&[2]), one(&[3])).unwrap());
        // the witness (-1, 0) lies in G_2 ∩ F_3
        let w = [rat(-1), rat(0)];
        assert!(a.hyperplane(1).g_side().is_satisfied_by(&w));
        assert!(a.hyperplane(2).f_side().is_satisfied_by(&w));
        assert!(!verify_split(&a, Subset::EMPTY, Subset::EMPTY).unwrap());
        assert!(verify_split(&a, one(&[2]), one(&[2])).is_err());
    }

    #[test]
    fn sign_rule_split_is_the_unique_passing_split() {
        for arr in fixtures::all() {
            for sc in split_circuits(&arr).unwrap() {
                let passing = passing_splits(&arr, sc.circuit.support).unwrap();
                assert_eq!(passing, vec![(sc.s1, sc.s2)], "{:?} {}", arr.name(), sc.circuit.support);
            }
        }
    }

    #[test]
    fn flip_moves_index_between_sides() {
        for arr in fixtures::all() {
            let before = split_circuits(&arr).unwrap();
            for l in 0..arr.len() {
                let after = split_circuits(&arr.flip_coorientation(l).unwrap()).unwrap();
                assert_eq!(before.len(), after.len());
                for (b, a) in before.iter().zip(&after) {
                    assert_eq!(b.circuit.support, a.circuit.support);
                    if b.circuit.support.contains(l) {
                        assert_eq!(a.s1, b.s1.toggled(l));
                        assert_eq!(a.s2, b.s2.toggled(l));
                    } else {
                        assert_eq!((a.s1, a.s2), (b.s1, b.s2));
                    }
                }
            }
        }
    }

    #[test]
    fn splittings_survive_translation() {
        let c = RatVector::from_ints(&[5, -7]);
        for arr in fixtures::all() {
            let before = split_circuits(&arr).unwrap();
            let after = split_circuits(&arr.translate(&c).unwrap()).unwrap();
            let key = |v: &[SplitCircuit]| -> Vec<_> { v.iter().map(|s| (s.circuit.support, s.s1, s.s2)).collect() };
            assert_eq!(key(&before), key(&after));
        }
    }

    #[test]
    fn zero_offset_sum_cannot_be_split() {
        let c = Circuit {
            support: Subset::from_one_based(&[1, 2]),
            dependence: vec![1, 1],
            offset_sum: Rational::zero(),
        };
        assert!(matches!(split_circuit(&c), Err(Error::NonSimple { .. })));
    }
}
