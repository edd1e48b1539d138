use std::cmp::Ordering;

/// Monomial orders used by the engine.
///
/// Variable `0` is the smallest variable, so with variables
/// `u_1, .., u_n, x` the order is `u_1 < .. < u_n < x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    GrevLex,
    /// The last variable dominates (eliminated first); ties broken by
    /// grevlex on the remaining variables.
    EliminateLast,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial {
            exps: o.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    /// Drops the last variable, which must have exponent 0.
    pub fn without_last(&self) -> Monomial {
        debug_assert_eq!(self.exps.last(), Some(&0));
        Monomial {
            exps: self.exps[..self.exps.len() - 1].to_vec(),
        }
    }

    pub fn with_extra(&self, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(e);
        Monomial { exps }
    }

    pub fn cmp_by(&self, o: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::GrevLex => grevlex(&self.exps, &o.exps),
            MonomialOrder::EliminateLast => {
                let n = self.exps.len();
                self.exps[n - 1]
                    .cmp(&o.exps[n - 1])
                    .then_with(|| grevlex(&self.exps[..n - 1], &o.exps[..n - 1]))
            }
        }
    }

    /// `x1^2*x3` style text.
    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{e}", names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            if x != y {
                // more of the smallest differing variable makes a monomial smaller
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// All monomials of total degree `d` in `nvars` variables, in increasing
/// grevlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| a.cmp_by(b, MonomialOrder::GrevLex));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::GrevLex;
        // variable 0 is the smallest
        assert_eq!(m(&[1, 0]).cmp_by(&m(&[0, 1]), o), Ordering::Less);
        // degree first
        assert_eq!(m(&[3, 0]).cmp_by(&m(&[0, 1]), o), Ordering::Greater);
        // with a < b < c: a*c < b^2 in grevlex (more of the smallest variable)
        assert_eq!(m(&[1, 0, 1]).cmp_by(&m(&[0, 2, 0]), o), Ordering::Less);
    }

    #[test]
    fn elimination_puts_last_variable_first() {
        let o = MonomialOrder::EliminateLast;
        assert_eq!(m(&[0, 0, 1]).cmp_by(&m(&[5, 5, 0]), o), Ordering::Greater);
        assert_eq!(m(&[1, 0, 1]).cmp_by(&m(&[0, 1, 1]), o), Ordering::Less);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(5, 3).len(), 35);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        let ms = monomials_of_degree(3, 2);
        assert!(ms.windows(2).all(|w| w[0].cmp_by(&w[1], MonomialOrder::GrevLex) == Ordering::Less));
    }

    #[test]
    fn division_helpers() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 1, 1])));
    }
}
