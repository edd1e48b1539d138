use std::collections::HashMap;

use super::buchberger::{buchberger, GroebnerBasis, DEFAULT_PAIR_CAP};
use super::hilbert::{monomial_numerator, HilbertData};
use super::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::exactmath::EchelonSpace;
use crate::field::Field;

/// Largest graded piece the dense oracles will build.
pub const DENSE_MONOMIAL_CAP: usize = 250_000;

/// A homogeneous ideal in `K[vars]`, every variable of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal<K> {
    pub vars: Vec<String>,
    pub gens: Vec<Polynomial<K>>,
}

impl<K: Field> Ideal<K> {
    pub fn new(vars: Vec<String>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.nvars() != vars.len()) {
            return Err(Error::input(format!(
                "generator in {} variables for a ring with {}",
                g.nvars(),
                vars.len()
            )));
        }
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.reorder(MonomialOrder::GrevLex))
            .collect();
        Ok(Ideal { vars, gens })
    }

    pub fn zero(vars: Vec<String>) -> Self {
        Ideal { vars, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, name: &str) -> Option<Polynomial<K>> {
        self.vars
            .iter()
            .position(|v| v == name)
            .map(|i| Polynomial::var(self.nvars(), i))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn with_generators(&self, extra: &[Polynomial<K>]) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(self.vars.clone(), gens)
    }

    fn require_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::input("ideal generators must be homogeneous"))
        }
    }

    fn same_ring(&self, o: &Ideal<K>) -> Result<()> {
        if self.vars != o.vars {
            return Err(Error::input(format!(
                "ideals live in different rings: [{}] vs [{}]",
                self.vars.join(","),
                o.vars.join(",")
            )));
        }
        Ok(())
    }

    pub fn groebner(&self) -> Result<GroebnerBasis<K>> {
        buchberger(&self.gens, self.nvars(), MonomialOrder::GrevLex, DEFAULT_PAIR_CAP)
    }

    pub fn normal_form(&self, p: &Polynomial<K>) -> Result<Polynomial<K>> {
        if p.nvars() != self.nvars() {
            return Err(Error::input("polynomial and ideal have different variables"));
        }
        Ok(self.groebner()?.normal_form(p))
    }

    pub fn contains(&self, p: &Polynomial<K>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn contains_ideal(&self, o: &Ideal<K>) -> Result<bool> {
        self.same_ring(o)?;
        let gb = self.groebner()?;
        Ok(o.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn equals(&self, o: &Ideal<K>) -> Result<bool> {
        self.same_ring(o)?;
        Ok(self.groebner()?.basis == o.groebner()?.basis)
    }

    /// The same ideal generated by its reduced Gröbner basis.
    pub fn reduced(&self) -> Result<Self> {
        Ok(Ideal {
            vars: self.vars.clone(),
            gens: self.groebner()?.basis,
        })
    }

    /// `(I : f)` via `I ∩ (f) = (t·I + (1-t)·f) ∩ K[vars]` and exact
    /// division by `f`.
    pub fn quotient(&self, f: &Polynomial<K>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::input("ideal quotient by zero"));
        }
        if f.nvars() != self.nvars() {
            return Err(Error::input("polynomial and ideal have different variables"));
        }
        let n = self.nvars();
        let order = MonomialOrder::EliminateLast;
        let t = Polynomial::<K>::var(n + 1, n).reorder(order);
        let one = Polynomial::<K>::constant(n + 1, K::one()).reorder(order);
        let fe = f.extend_vars(order);
        let mut gens: Vec<Polynomial<K>> = self.gens.iter().map(|g| g.extend_vars(order).mul(&t)).collect();
        gens.push(one.sub(&t).mul(&fe));
        let gb = buchberger(&gens, n + 1, order, DEFAULT_PAIR_CAP)?;
        let mut quot = Vec::new();
        for g in gb.basis.iter().filter(|g| !g.uses_var(n)) {
            let g = g.drop_last_var(MonomialOrder::GrevLex);
            let q = g
                .div_exact(f)
                .ok_or_else(|| Error::Contract("intersection element not divisible by f".into()))?;
            quot.push(q);
        }
        Ideal::new(self.vars.clone(), quot)?.reduced()
    }

    pub fn hilbert_series(&self, cap: usize) -> Result<HilbertData> {
        self.require_homogeneous()?;
        let gb = self.groebner()?;
        Ok(HilbertData::from_numerator(
            monomial_numerator(&gb.leading_monomials()),
            self.nvars(),
            cap,
        ))
    }

    /// `dim (R/I)_d` for `d = 0..=cap` by dense linear algebra on monomial
    /// bases, with no Gröbner basis involved.
    pub fn dims_by_degree(&self, cap: usize) -> Result<Vec<i64>> {
        self.require_homogeneous()?;
        let mut out = Vec::with_capacity(cap + 1);
        for d in 0..=cap as u32 {
            let (space, basis_len) = self.graded_piece(d, &[])?;
            out.push((basis_len - space.rank()) as i64);
        }
        Ok(out)
    }

    // Span of `I_d + extra_d` in the monomial basis of degree d.
    fn graded_piece(&self, d: u32, extra: &[Polynomial<K>]) -> Result<(EchelonSpace<K>, usize)> {
        let n = self.nvars();
        let basis = monomials_of_degree(n, d);
        if basis.len() > DENSE_MONOMIAL_CAP {
            return Err(Error::Resource(format!(
                "degree {d} in {n} variables has {} monomials, above the dense cap {DENSE_MONOMIAL_CAP}",
                basis.len()
            )));
        }
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut space = EchelonSpace::new(basis.len());
        for g in self.gens.iter().chain(extra) {
            insert_multiples(&mut space, &index, g, d);
        }
        Ok((space, basis.len()))
    }

    /// Degrees of a minimal homogeneous generating set of `self / sub`
    /// (i.e. of `J / (I + m·J)` with `J = self`, `I = sub`), by rank
    /// computations degree by degree.
    pub fn minimal_generator_degrees(&self, sub: &Ideal<K>) -> Result<Vec<u32>> {
        Ok(self
            .minimal_generators(sub)?
            .iter()
            .filter_map(Polynomial::degree)
            .collect())
    }

    /// A minimal set of generators of `self` modulo `sub`, chosen greedily
    /// from `self.gens` in degree order.
    pub fn minimal_generators(&self, sub: &Ideal<K>) -> Result<Vec<Polynomial<K>>> {
        self.same_ring(sub)?;
        self.require_homogeneous()?;
        sub.require_homogeneous()?;
        if !self.contains_ideal(sub)? {
            return Err(Error::Contract("the smaller ideal is not contained in the larger".into()));
        }
        let n = self.nvars();
        let top = self.gens.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        let mut out = Vec::new();
        for d in 0..=top {
            let basis = monomials_of_degree(n, d);
            if basis.len() > DENSE_MONOMIAL_CAP {
                return Err(Error::Resource(format!("degree {d} piece too large")));
            }
            let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
            let mut space = EchelonSpace::new(basis.len());
            for g in &sub.gens {
                insert_multiples(&mut space, &index, g, d);
            }
            for g in self.gens.iter().filter(|g| g.degree().is_some_and(|e| e < d)) {
                insert_multiples(&mut space, &index, g, d);
            }
            for g in self.gens.iter().filter(|g| g.degree() == Some(d)) {
                if space.insert(sparse_row(&index, g)) {
                    out.push(g.clone());
                }
            }
        }
        Ok(out)
    }

    /// Image under `x_i ↦ images[i]`; images live in the ring `target_vars`.
    pub fn substitute(&self, images: &[Polynomial<K>], target_vars: Vec<String>) -> Result<Self> {
        check_images(images, self.nvars(), target_vars.len())?;
        let gens = self
            .gens
            .iter()
            .map(|g| substitute_poly(g, images, target_vars.len()))
            .collect();
        Ideal::new(target_vars, gens)
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.format(&self.vars)).collect()
    }
}

fn sparse_row<K: Field>(index: &HashMap<&Monomial, usize>, p: &Polynomial<K>) -> Vec<(usize, K)> {
    let mut row: Vec<(usize, K)> = p.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
    row.sort_by_key(|(k, _)| *k);
    row
}

fn insert_multiples<K: Field>(space: &mut EchelonSpace<K>, index: &HashMap<&Monomial, usize>, g: &Polynomial<K>, d: u32) {
    let Some(e) = g.degree() else { return };
    if e > d {
        return;
    }
    for m in monomials_of_degree(g.nvars(), d - e) {
        space.insert(sparse_row(index, &g.mul_term(&m, &K::one())));
    }
}

fn check_images<K: Field>(images: &[Polynomial<K>], nsource: usize, ntarget: usize) -> Result<()> {
    if images.len() != nsource {
        return Err(Error::input(format!(
            "substitution gives {} images for {nsource} variables",
            images.len()
        )));
    }
    for p in images {
        if p.nvars() != ntarget {
            return Err(Error::input("substitution image in the wrong ring"));
        }
        if !p.is_zero() && !(p.is_homogeneous() && p.degree() == Some(1)) {
            return Err(Error::input("substitution images must be linear forms"));
        }
    }
    Ok(())
}

/// `p(images[0], .., images[n-1])`.
pub fn substitute_poly<K: Field>(p: &Polynomial<K>, images: &[Polynomial<K>], ntarget: usize) -> Polynomial<K> {
    let mut acc = Polynomial::zero(ntarget);
    for (m, c) in p.terms() {
        let mut term = Polynomial::constant(ntarget, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&images[i].pow(e as u32));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

/// `substitute` for a single polynomial, with image checks.
pub fn substitute<K: Field>(p: &Polynomial<K>, images: &[Polynomial<K>], ntarget: usize) -> Result<Polynomial<K>> {
    check_images(images, p.nvars(), ntarget)?;
    Ok(substitute_poly(p, images, ntarget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, Rational};
    use crate::field::F2;

    fn ring(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    type P = Polynomial<Rational>;

    #[test]
    fn staircase_example() {
        // (ab + b^2, a^2 b, a^3 + a^2 b) in Q[a, b]
        let (a, b) = (P::var(2, 0), P::var(2, 1));
        let i = Ideal::new(
            ring(&["a", "b"]),
            vec![
                a.mul(&b).add(&b.mul(&b)),
                a.mul(&a).mul(&b),
                a.pow(3).add(&a.mul(&a).mul(&b)),
            ],
        )
        .unwrap();
        let dense = i.dims_by_degree(5).unwrap();
        assert_eq!(dense, vec![1, 2, 2, 0, 0, 0]);
        assert_eq!(i.hilbert_series(5).unwrap().truncation, dense);
    }

    #[test]
    fn zero_ideal_series() {
        let i: Ideal<Rational> = Ideal::zero(ring(&["a"]));
        let h = i.hilbert_series(3).unwrap();
        assert_eq!((h.numerator.clone(), h.denom_exp), (vec![1], 1));
        let j: Ideal<F2> = Ideal::zero(ring(&["a", "b"]));
        assert_eq!(j.dims_by_degree(2).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn monomial_quotient() {
        let (a, b) = (P::var(2, 0), P::var(2, 1));
        let i = Ideal::new(ring(&["a", "b"]), vec![a.mul(&b)]).unwrap();
        let q = i.quotient(&a).unwrap();
        assert_eq!(q.gens, vec![b.clone()]);
        assert!(i.quotient(&P::zero(2)).is_err());
    }

    #[test]
    fn quotient_contains_ideal_and_composes() {
        let (a, b, c) = (P::var(3, 0), P::var(3, 1), P::var(3, 2));
        let i = Ideal::new(
            ring(&["a", "b", "c"]),
            vec![a.mul(&b).mul(&c), a.mul(&a).sub(&b.mul(&c)), c.pow(3)],
        )
        .unwrap();
        let f = a.add(&c);
        let q = i.quotient(&f).unwrap();
        assert!(q.contains_ideal(&i).unwrap());
        for g in &q.gens {
            assert!(i.contains(&g.mul(&f)).unwrap());
        }
        let lhs = q.quotient(&b).unwrap();
        let rhs = i.quotient(&f.mul(&b)).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn minimal_generators_by_degree() {
        let (a, b) = (P::var(2, 0), P::var(2, 1));
        let i = Ideal::new(ring(&["a", "b"]), vec![a.mul(&b)]).unwrap();
        let j = i.with_generators(&[a.clone(), a.mul(&a), b.pow(3)]).unwrap();
        assert_eq!(j.minimal_generator_degrees(&i).unwrap(), vec![1, 3]);
        assert_eq!(i.minimal_generator_degrees(&i).unwrap(), Vec::<u32>::new());
        assert!(i.minimal_generator_degrees(&j).is_err());
    }

    #[test]
    fn substitution_and_equality() {
        let (a, b) = (P::var(2, 0), P::var(2, 1));
        let i = Ideal::new(ring(&["a", "b"]), vec![a.mul(&b)]).unwrap();
        let swapped = i.substitute(&[b.clone(), a.clone()], ring(&["a", "b"])).unwrap();
        assert!(swapped.equals(&i).unwrap());
        let sheared = i.substitute(&[a.add(&b), b.clone()], ring(&["a", "b"])).unwrap();
        assert!(!sheared.equals(&i).unwrap());
        assert!(i.substitute(&[a.mul(&a), b.clone()], ring(&["a", "b"])).is_err());
        let scaled = Ideal::new(ring(&["a", "b"]), vec![a.mul(&b).scale(&rat(-7))]).unwrap();
        assert!(scaled.equals(&i).unwrap());
    }
}
