//! Exact two-phase simplex with Bland's rule.
//!
//! Only what the arrangement code needs: feasibility with a witness,
//! boundedness of a polyhedron, and optimisation of a linear functional.
//! Free variables are split as `x = p - q` with `p, q >= 0`.

use num_traits::Zero;

use super::{RatVector, Rational};
use crate::error::{Error, Result};
use crate::field::OrderedField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Geq,
    Leq,
    Eq,
}

/// `normal · x (sense) bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinConstraint<T = Rational> {
    pub normal: Vec<T>,
    pub bound: T,
    pub sense: Sense,
}

impl<T: OrderedField> LinConstraint<T> {
    pub fn new(normal: Vec<T>, sense: Sense, bound: T) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) && !(sense == Sense::Eq && bound.is_zero()) {
            return Err(Error::input("constraint with zero normal"));
        }
        Ok(LinConstraint {
            normal,
            bound,
            sense,
        })
    }

    pub fn geq(normal: Vec<T>, bound: T) -> Self {
        LinConstraint {
            normal,
            bound,
            sense: Sense::Geq,
        }
    }

    pub fn leq(normal: Vec<T>, bound: T) -> Self {
        LinConstraint {
            normal,
            bound,
            sense: Sense::Leq,
        }
    }

    pub fn eq(normal: Vec<T>, bound: T) -> Self {
        LinConstraint {
            normal,
            bound,
            sense: Sense::Eq,
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn is_satisfied_by(&self, x: &[T]) -> bool {
        let lhs = self
            .normal
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        match self.sense {
            Sense::Geq => lhs >= self.bound,
            Sense::Leq => lhs <= self.bound,
            Sense::Eq => lhs == self.bound,
        }
    }

    /// The constraint with bound 0: its solutions are the recession cone.
    pub fn homogeneous(&self) -> Self {
        LinConstraint {
            normal: self.normal.clone(),
            bound: T::zero(),
            sense: self.sense,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<T> {
    Infeasible,
    Unbounded,
    Optimal { value: T, point: Vec<T> },
}

/// A polyhedron `{x in T^dim : every constraint holds}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem<T = Rational> {
    pub dim: usize,
    pub constraints: Vec<LinConstraint<T>>,
}

impl<T: OrderedField> LinearSystem<T> {
    pub fn new(dim: usize, constraints: Vec<LinConstraint<T>>) -> Result<Self> {
        if let Some(c) = constraints.iter().find(|c| c.dim() != dim) {
            return Err(Error::input(format!(
                "constraint of dimension {} in a system of dimension {dim}",
                c.dim()
            )));
        }
        Ok(LinearSystem { dim, constraints })
    }

    /// Infers the dimension from the first constraint (0 when empty).
    pub fn from_constraints(constraints: Vec<LinConstraint<T>>) -> Result<Self> {
        let dim = constraints.first().map_or(0, LinConstraint::dim);
        Self::new(dim, constraints)
    }

    pub fn push(&mut self, c: LinConstraint<T>) {
        debug_assert_eq!(c.dim(), self.dim);
        self.constraints.push(c);
    }

    pub fn with(&self, c: LinConstraint<T>) -> Self {
        let mut s = self.clone();
        s.push(c);
        s
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }

    /// Maximises `objective · x`.
    pub fn maximize(&self, objective: &[T]) -> LpOutcome<T> {
        assert_eq!(objective.len(), self.dim, "objective dimension");
        Simplex::build(self).solve(objective)
    }

    pub fn minimize(&self, objective: &[T]) -> LpOutcome<T> {
        let neg: Vec<T> = objective.iter().map(|c| -c.clone()).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value: -value,
                point,
            },
            other => other,
        }
    }

    pub fn feasible_point(&self) -> Option<Vec<T>> {
        match self.maximize(&vec![T::zero(); self.dim]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_point().is_some()
    }

    /// Whether a feasible system describes a bounded set: its recession cone
    /// intersected with the box `[-1,1]^d` must have every coordinate
    /// maximised and minimised at 0.
    pub fn is_bounded(&self) -> Result<bool> {
        if !self.is_feasible() {
            return Err(Error::Contract(
                "boundedness asked of an infeasible system".into(),
            ));
        }
        let mut cone = LinearSystem {
            dim: self.dim,
            constraints: self.constraints.iter().map(LinConstraint::homogeneous).collect(),
        };
        for k in 0..self.dim {
            let mut e = vec![T::zero(); self.dim];
            e[k] = T::one();
            cone.push(LinConstraint::leq(e.clone(), T::one()));
            cone.push(LinConstraint::geq(e, -T::one()));
        }
        for k in 0..self.dim {
            let mut e = vec![T::zero(); self.dim];
            e[k] = T::one();
            for obj in [e.clone(), e.into_iter().map(|x| -x).collect()] {
                match cone.maximize(&obj) {
                    LpOutcome::Optimal { value, .. } if value.is_zero() => {}
                    LpOutcome::Optimal { .. } => return Ok(false),
                    other => unreachable!("box-bounded cone LP returned {other:?}"),
                }
            }
        }
        Ok(true)
    }
}

/// Witness point for the system, or `None` when it is infeasible.
pub fn lp_feasible(constraints: &[LinConstraint]) -> Result<Option<RatVector>> {
    let sys = LinearSystem::from_constraints(constraints.to_vec())?;
    Ok(sys.feasible_point().map(RatVector::new))
}

/// True iff the (feasible) system describes a bounded polyhedron.
pub fn lp_bounded(constraints: &[LinConstraint]) -> Result<bool> {
    LinearSystem::from_constraints(constraints.to_vec())?.is_bounded()
}

pub fn lp_optimize(constraints: &[LinConstraint], objective: &[Rational]) -> Result<LpOutcome<Rational>> {
    let sys = LinearSystem::from_constraints(constraints.to_vec())?;
    if sys.dim != objective.len() && !constraints.is_empty() {
        return Err(Error::input("objective dimension differs from constraints"));
    }
    let sys = LinearSystem {
        dim: objective.len(),
        constraints: sys.constraints,
    };
    Ok(sys.maximize(objective))
}

/// Dense tableau in standard form `A z = b, z >= 0, b >= 0`.
struct Simplex<T> {
    dim: usize,
    // columns: p (dim), q (dim), slacks, artificials; last entry is the rhs
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    n_struct: usize,
    n_total: usize,
}

impl<T: OrderedField> Simplex<T> {
    fn build(sys: &LinearSystem<T>) -> Self {
        let dim = sys.dim;
        let n_slack = sys
            .constraints
            .iter()
            .filter(|c| c.sense != Sense::Eq)
            .count();
        let m = sys.constraints.len();
        let n_struct = 2 * dim + n_slack;
        let n_total = n_struct + m;
        let mut rows = Vec::with_capacity(m);
        let mut slack = 2 * dim;
        for (i, c) in sys.constraints.iter().enumerate() {
            let mut row = vec![T::zero(); n_total + 1];
            for (j, a) in c.normal.iter().enumerate() {
                row[j] = a.clone();
                row[dim + j] = -a.clone();
            }
            match c.sense {
                Sense::Geq => {
                    row[slack] = -T::one();
                    slack += 1;
                }
                Sense::Leq => {
                    row[slack] = T::one();
                    slack += 1;
                }
                Sense::Eq => {}
            }
            row[n_total] = c.bound.clone();
            if row[n_total].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[n_struct + i] = T::one();
            rows.push(row);
        }
        Simplex {
            dim,
            rows,
            basis: (n_struct..n_total).collect(),
            n_struct,
            n_total,
        }
    }

    fn solve(mut self, objective: &[T]) -> LpOutcome<T> {
        // phase 1: maximise -(sum of artificials)
        let mut phase1 = vec![T::zero(); self.n_total];
        for c in phase1.iter_mut().skip(self.n_struct) {
            *c = -T::one();
        }
        let bounded = self.optimize(&phase1, self.n_total);
        debug_assert!(bounded, "phase 1 is bounded above by 0");
        if !self.objective_value(&phase1).is_zero() {
            return LpOutcome::Infeasible;
        }
        self.evict_artificials();

        let mut phase2 = vec![T::zero(); self.n_total];
        for j in 0..self.dim {
            phase2[j] = objective[j].clone();
            phase2[self.dim + j] = -objective[j].clone();
        }
        if !self.optimize(&phase2, self.n_struct) {
            return LpOutcome::Unbounded;
        }
        let z = self.current_point();
        let point: Vec<T> = (0..self.dim)
            .map(|j| z[j].clone() - z[self.dim + j].clone())
            .collect();
        let value = point
            .iter()
            .zip(objective)
            .fold(T::zero(), |acc, (x, c)| acc + x.clone() * c.clone());
        LpOutcome::Optimal { value, point }
    }

    fn rhs(&self, r: usize) -> &T {
        &self.rows[r][self.n_total]
    }

    fn current_point(&self) -> Vec<T> {
        let mut z = vec![T::zero(); self.n_total];
        for (r, &b) in self.basis.iter().enumerate() {
            z[b] = self.rhs(r).clone();
        }
        z
    }

    fn objective_value(&self, c: &[T]) -> T {
        self.basis
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (r, &b)| acc + c[b].clone() * self.rhs(r).clone())
    }

    /// Maximises `c · z` over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, c: &[T], allowed: usize) -> bool {
        loop {
            // Bland: lowest-index column with positive reduced cost
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(c[j].clone(), |acc, (r, &b)| {
                        acc - c[b].clone() * self.rows[r][j].clone()
                    });
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r).clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].inverse();
        for x in self.rows[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        self.basis[row] = col;
    }

    /// After phase 1, pivots zero-valued artificials out of the basis and
    /// drops rows that are redundant.
    fn evict_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.n_struct {
                r += 1;
                continue;
            }
            match (0..self.n_struct).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};
    use proptest::prelude::*;

    fn c(normal: &[i64], sense: Sense, bound: i64) -> LinConstraint {
        LinConstraint {
            normal: normal.iter().map(|&x| rat(x)).collect(),
            bound: rat(bound),
            sense,
        }
    }

    fn fig2a_delta() -> Vec<LinConstraint> {
        vec![
            c(&[1, 1], Sense::Geq, 1),
            c(&[1, 0], Sense::Geq, 0),
            c(&[-1, 0], Sense::Geq, -2),
            c(&[0, -1], Sense::Geq, -2),
        ]
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let sys = [c(&[1], Sense::Geq, 0), c(&[1], Sense::Leq, -1)];
        assert_eq!(lp_feasible(&sys).unwrap(), None);
    }

    #[test]
    fn fig2a_delta_is_feasible_with_valid_witness() {
        let sys = fig2a_delta();
        let w = lp_feasible(&sys).unwrap().expect("feasible");
        assert!(sys.iter().all(|k| k.is_satisfied_by(&w)));
        // the suggested witness also works
        assert!(sys.iter().all(|k| k.is_satisfied_by(&[rat(1), rat(1)])));
    }

    #[test]
    fn split_of_parallel_pair_is_infeasible() {
        // G_2 ∩ G_3 for FIG2A: x <= 0 and -x <= -2
        let sys = [c(&[1, 0], Sense::Leq, 0), c(&[-1, 0], Sense::Leq, -2)];
        assert_eq!(lp_feasible(&sys).unwrap(), None);
    }

    #[test]
    fn boundedness_examples() {
        let square = [
            c(&[1, 0], Sense::Geq, 0),
            c(&[1, 0], Sense::Leq, 1),
            c(&[0, 1], Sense::Geq, 0),
            c(&[0, 1], Sense::Leq, 1),
        ];
        assert!(lp_bounded(&square).unwrap());
        assert!(!lp_bounded(&[c(&[1, 0], Sense::Geq, 0)]).unwrap());
        // hand enumeration: vertices (0,1),(0,2),(2,2),(2,-1); no ray survives
        assert!(lp_bounded(&fig2a_delta()).unwrap());
        // a segment: x = 0 pinned by two inequalities, 0 <= y <= 1
        let segment = [
            c(&[1, 0], Sense::Geq, 0),
            c(&[1, 0], Sense::Leq, 0),
            c(&[0, 1], Sense::Geq, 0),
            c(&[0, 1], Sense::Leq, 1),
        ];
        assert!(lp_bounded(&segment).unwrap());
        let infeasible = [c(&[1], Sense::Geq, 1), c(&[1], Sense::Leq, 0)];
        assert!(matches!(lp_bounded(&infeasible), Err(Error::Contract(_))));
    }

    #[test]
    fn optimisation_over_trapezoid() {
        let sys = LinearSystem::from_constraints(fig2a_delta()).unwrap();
        match sys.minimize(&[rat(1), rat(0)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(0)),
            other => panic!("{other:?}"),
        }
        match sys.maximize(&[rat(1), rat(1)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(4));
                assert_eq!(point, vec![rat(2), rat(2)]);
            }
            other => panic!("{other:?}"),
        }
        let half = LinearSystem::from_constraints(vec![c(&[1, 0], Sense::Geq, 0)]).unwrap();
        assert_eq!(half.maximize(&[rat(1), rat(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn fractional_vertex() {
        let sys = LinearSystem::from_constraints(vec![
            c(&[2, 1], Sense::Leq, 1),
            c(&[1, 3], Sense::Leq, 1),
            c(&[1, 0], Sense::Geq, 0),
            c(&[0, 1], Sense::Geq, 0),
        ])
        .unwrap();
        match sys.maximize(&[rat(1), rat(1)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(point, vec![ratio(2, 5), ratio(1, 5)]);
                assert_eq!(value, ratio(3, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_and_redundant_rows() {
        let sys = [
            c(&[1, 1], Sense::Eq, 2),
            c(&[2, 2], Sense::Eq, 4),
            c(&[1, -1], Sense::Eq, 0),
        ];
        assert_eq!(
            lp_feasible(&sys).unwrap(),
            Some(RatVector::from_ints(&[1, 1]))
        );
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        let sys = [c(&[1, 0], Sense::Geq, 0), c(&[1], Sense::Geq, 0)];
        assert!(matches!(lp_feasible(&sys), Err(Error::Input(_))));
    }

    #[test]
    fn zero_normal_rejected_unless_trivial_equation() {
        assert!(LinConstraint::new(vec![rat(0)], Sense::Geq, rat(1)).is_err());
        assert!(LinConstraint::new(vec![rat(0)], Sense::Eq, rat(0)).is_ok());
    }

    // brute force: a 1-d system is feasible iff max lower bound <= min upper bound
    fn one_d_oracle(cons: &[(i64, i64, bool)]) -> bool {
        let mut lo = Rational::from_integer((-1_000_000).into());
        let mut hi = Rational::from_integer(1_000_000.into());
        for &(a, b, geq) in cons {
            if a == 0 {
                if (geq && 0 < b) || (!geq && 0 > b) {
                    return false;
                }
                continue;
            }
            let t = ratio(b, a);
            // a x >= b  <=>  x >= b/a when a > 0
            let lower = geq == (a > 0);
            if lower {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
        lo <= hi
    }

    proptest! {
        #[test]
        fn one_dimensional_feasibility_matches_interval_oracle(
            cons in proptest::collection::vec((-3i64..=3, -5i64..=5, any::<bool>()), 1..6)
        ) {
            let sys: Vec<LinConstraint> = cons.iter()
                .map(|&(a, b, g)| c(&[a], if g { Sense::Geq } else { Sense::Leq }, b))
                .collect();
            let got = lp_feasible(&sys).unwrap();
            prop_assert_eq!(got.is_some(), one_d_oracle(&cons));
            if let Some(w) = got {
                prop_assert!(sys.iter().all(|k| k.is_satisfied_by(&w)));
            }
        }

        #[test]
        fn feasibility_is_order_independent(
            cons in proptest::collection::vec((-2i64..=2, -2i64..=2, -3i64..=3, any::<bool>()), 1..6),
            seed in any::<u64>()
        ) {
            let sys: Vec<LinConstraint> = cons.iter()
                .map(|&(a, b, r, g)| c(&[a, b], if g { Sense::Geq } else { Sense::Leq }, r))
                .collect();
            let mut shuffled = sys.clone();
            let n = shuffled.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (s >> 33) as usize % (i + 1));
            }
            let a = lp_feasible(&sys).unwrap();
            let b = lp_feasible(&shuffled).unwrap();
            prop_assert_eq!(a.is_some(), b.is_some());
            for w in a.iter().chain(b.iter()) {
                prop_assert!(sys.iter().all(|k| k.is_satisfied_by(w)));
            }
        }
    }
}
