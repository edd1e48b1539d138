use std::collections::BTreeSet;

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::field::Field;

/// Default bound on processed S-pairs before giving up.
pub const DEFAULT_PAIR_CAP: usize = 200_000;

/// A reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<K> {
    pub nvars: usize,
    pub order: MonomialOrder,
    pub basis: Vec<Polynomial<K>>,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn normal_form(&self, p: &Polynomial<K>) -> Polynomial<K> {
        reduce(&p.reorder(self.order), &self.basis)
    }

    pub fn contains(&self, p: &Polynomial<K>) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis
            .iter()
            .any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }
}

/// Full reduction of `p` by `g` (every term, not only the leading one).
pub fn reduce<K: Field>(p: &Polynomial<K>, g: &[Polynomial<K>]) -> Polynomial<K> {
    let mut p = p.clone();
    let mut rem = Polynomial::zero_in(p.nvars(), p.order());
    while let Some((m, c)) = p.leading().cloned() {
        match g
            .iter()
            .find(|h| h.leading_monomial().is_some_and(|lm| lm.divides(&m)))
        {
            Some(h) => {
                let (lm, lc) = h.leading().expect("nonzero");
                let q = lm.quotient_of(&m);
                p = p.sub_mul_term(&(c * lc.inverse()), &q, h);
            }
            None => {
                p.pop_leading();
                rem.push_smallest((m, c));
            }
        }
    }
    rem
}

fn s_polynomial<K: Field>(f: &Polynomial<K>, g: &Polynomial<K>) -> Polynomial<K> {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &fc.inverse());
    a.sub_mul_term(&gc.inverse(), &gm.quotient_of(&l), g)
}

/// Buchberger's algorithm with the product and chain criteria, selecting
/// pairs by smallest lcm (degree first), followed by full inter-reduction.
pub fn buchberger<K: Field>(
    gens: &[Polynomial<K>],
    nvars: usize,
    order: MonomialOrder,
    pair_cap: usize,
) -> Result<GroebnerBasis<K>> {
    let mut basis: Vec<Polynomial<K>> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut processed = 0usize;

    let add = |basis: &mut Vec<Polynomial<K>>, pairs: &mut BTreeSet<(usize, usize)>, h: Polynomial<K>| {
        let k = basis.len();
        basis.push(h.monic());
        for i in 0..k {
            pairs.insert((i, k));
        }
    };

    let mut inputs: Vec<Polynomial<K>> = gens.iter().map(|g| g.reorder(order)).collect();
    inputs.sort_by(|a, b| match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => x.degree().cmp(&y.degree()).then(x.cmp_by(y, order)),
        (None, None) => std::cmp::Ordering::Equal,
        (None, _) => std::cmp::Ordering::Less,
        (_, None) => std::cmp::Ordering::Greater,
    });
    for g in inputs {
        if g.nvars() != nvars {
            return Err(Error::input("generator has the wrong number of variables"));
        }
        let h = reduce(&g, &basis);
        if !h.is_zero() {
            add(&mut basis, &mut pairs, h);
        }
    }

    while let Some(&(i, j)) = pairs.iter().min_by(|&&(a, b), &&(c, d)| {
        let l1 = lm(&basis[a]).lcm(lm(&basis[b]));
        let l2 = lm(&basis[c]).lcm(lm(&basis[d]));
        l1.degree()
            .cmp(&l2.degree())
            .then(l1.cmp_by(&l2, order))
            .then((a, b).cmp(&(c, d)))
    }) {
        pairs.remove(&(i, j));
        let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pairs.contains(&ordered(i, k))
                && !pairs.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > pair_cap {
            return Err(Error::Resource(format!(
                "Gröbner basis computation exceeded {pair_cap} S-pairs"
            )));
        }
        let h = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !h.is_zero() {
            add(&mut basis, &mut pairs, h);
        }
    }
    Ok(GroebnerBasis {
        nvars,
        order,
        basis: interreduce(basis, order),
    })
}

fn lm<K: Field>(p: &Polynomial<K>) -> &Monomial {
    p.leading_monomial().expect("basis elements are nonzero")
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

// Minimal then reduced basis, sorted by increasing leading monomial.
fn interreduce<K: Field>(basis: Vec<Polynomial<K>>, order: MonomialOrder) -> Vec<Polynomial<K>> {
    let mut min: Vec<Polynomial<K>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let m = lm(g);
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = lm(h);
            j != k && hm.divides(m) && (hm != m || j < k)
        });
        if !redundant {
            min.push(g.clone());
        }
    }
    min.sort_by(|a, b| lm(a).cmp_by(lm(b), order));
    let mut out = Vec::with_capacity(min.len());
    for k in 0..min.len() {
        let others: Vec<Polynomial<K>> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g.clone())
            .collect();
        let (m, c) = min[k].leading().expect("nonzero").clone();
        let mut tail = min[k].clone();
        tail.pop_leading();
        let mut r = reduce(&tail, &others);
        // the leading monomial is irreducible by a minimal basis
        r = r.add(&Polynomial::from_terms_in(min[k].nvars(), order, vec![(m, c)]));
        out.push(r.monic());
    }
    out
}
