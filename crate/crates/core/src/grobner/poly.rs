use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;

use super::monomial::{Monomial, MonomialOrder};
use crate::exactmath::Rational;
use crate::field::Field;

/// A polynomial with terms kept strictly increasing in its monomial order,
/// so the leading term is the last one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<K> {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> Polynomial<K> {
    pub fn zero(nvars: usize) -> Self {
        Self::zero_in(nvars, MonomialOrder::GrevLex)
    }

    pub fn zero_in(nvars: usize, order: MonomialOrder) -> Self {
        Polynomial {
            nvars,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        Self::from_terms(nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, vec![(Monomial::var(nvars, i), K::one())])
    }

    /// `Σ c_i x_i` from integer coefficients.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::var(n, i), K::from_int(c)))
                .collect(),
        )
    }

    /// Normalises arbitrary terms: sorts, merges and drops zeros.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, K)>) -> Self {
        Self::from_terms_in(nvars, MonomialOrder::GrevLex, terms)
    }

    pub fn from_terms_in(nvars: usize, order: MonomialOrder, mut terms: Vec<(Monomial, K)>) -> Self {
        debug_assert!(terms.iter().all(|(m, _)| m.nvars() == nvars));
        terms.sort_by(|a, b| a.0.cmp_by(&b.0, order));
        let mut out: Vec<(Monomial, K)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.clone() + c,
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        Polynomial {
            nvars,
            order,
            terms: out,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Terms in increasing order.
    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, K)> {
        self.terms.last()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.terms.last().map(|t| &t.1)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Same polynomial sorted for another order.
    pub fn reorder(&self, order: MonomialOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        Self::from_terms_in(self.nvars, order, self.terms.clone())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inverse()),
            _ => self.clone(),
        }
    }

    /// `c · m · self`; multiplying by a monomial keeps the term order.
    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.nvars, self.order);
        }
        Polynomial {
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k.clone() * c.clone()))
                .collect(),
        }
    }

    /// `self - c · m · g`, by merging.
    pub fn sub_mul_term(&self, c: &K, m: &Monomial, g: &Polynomial<K>) -> Self {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (a, b) = (&self.terms, &g.terms);
        let (mut i, mut j) = (0, 0);
        let shifted = |j: usize| (b[j].0.mul(m), -(c.clone() * b[j].1.clone()));
        let mut pending = if j < b.len() { Some(shifted(j)) } else { None };
        while i < a.len() || pending.is_some() {
            match (&a.get(i), &pending) {
                (Some(x), Some(y)) => match x.0.cmp_by(&y.0, order) {
                    Ordering::Less => {
                        out.push((*x).clone());
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(pending.take().expect("present"));
                        j += 1;
                        pending = if j < b.len() { Some(shifted(j)) } else { None };
                    }
                    Ordering::Equal => {
                        let s = x.1.clone() + y.1.clone();
                        if !s.is_zero() {
                            out.push((x.0.clone(), s));
                        }
                        i += 1;
                        j += 1;
                        pending = if j < b.len() { Some(shifted(j)) } else { None };
                    }
                },
                (Some(x), None) => {
                    out.push((*x).clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().expect("present"));
                    j += 1;
                    pending = if j < b.len() { Some(shifted(j)) } else { None };
                }
                (None, None) => unreachable!(),
            }
        }
        Polynomial {
            nvars: self.nvars,
            order,
            terms: out,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.sub_mul_term(&-K::one(), &Monomial::one(self.nvars), o)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.sub_mul_term(&K::one(), &Monomial::one(self.nvars), o)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-K::one())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc = Self::zero_in(self.nvars, self.order);
        for (m, c) in &self.terms {
            acc = acc.sub_mul_term(&-c.clone(), m, o);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, K::one()).reorder(self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Pops the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, K)> {
        self.terms.pop()
    }

    pub(crate) fn push_smallest(&mut self, t: (Monomial, K)) {
        debug_assert!(self
            .terms
            .first()
            .is_none_or(|f| t.0.cmp_by(&f.0, self.order) == Ordering::Less));
        self.terms.insert(0, t);
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        let inv = lc.inverse();
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = c * inv.clone();
            rem = rem.sub_mul_term(&qc, &qm, d);
            q.push((qm, qc));
        }
        Some(Self::from_terms_in(self.nvars, self.order, q))
    }

    /// Appends a new last variable (exponent 0 everywhere).
    pub fn extend_vars(&self, order: MonomialOrder) -> Self {
        Self::from_terms_in(
            self.nvars + 1,
            order,
            self.terms.iter().map(|(m, c)| (m.with_extra(0), c.clone())).collect(),
        )
    }

    /// Drops the last variable, assumed absent.
    pub fn drop_last_var(&self, order: MonomialOrder) -> Self {
        Self::from_terms_in(
            self.nvars - 1,
            order,
            self.terms.iter().map(|(m, c)| (m.without_last(), c.clone())).collect(),
        )
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[i] > 0)
    }

    /// Variables that occur, increasing.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.uses_var(i)).collect()
    }

    /// Text with the given variable names, largest term first.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&m.format(names));
            } else {
                let _ = write!(s, "{mag}*{}", m.format(names));
            }
        }
        s
    }
}

impl Polynomial<Rational> {
    /// Image in another field, for polynomials with integer coefficients.
    pub fn to_field<L: Field>(&self) -> Polynomial<L> {
        Polynomial::from_terms_in(
            self.nvars,
            self.order,
            self.terms
                .iter()
                .map(|(m, c)| {
                    assert!(c.is_integer(), "integer coefficients expected");
                    (m.clone(), L::from_bigint(&c.to_integer()))
                })
                .collect(),
        )
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        self.terms.iter().map(|(_, c)| c.to_integer()).collect()
    }
}
