use std::fmt;

use super::monomial::Monomial;

/// Hilbert series `numerator(t) / (1 - t)^denom_exp` of a graded quotient,
/// with the first coefficients spelled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    pub denom_exp: usize,
    /// `dim_k (R/I)_d` for `d = 0..=cap`.
    pub truncation: Vec<i64>,
}

impl HilbertData {
    /// Finite total dimension, when the quotient is finite-dimensional.
    pub fn total(&self) -> Option<i64> {
        (self.denom_exp == 0).then(|| self.numerator.iter().sum())
    }

    pub fn is_finite(&self) -> bool {
        self.denom_exp == 0
    }

    /// `numerator / (1 - t)^denom_exp` expanded to degree `cap`.
    pub fn expand(numerator: &[i64], denom_exp: usize, cap: usize) -> Vec<i64> {
        let mut c: Vec<i64> = (0..=cap).map(|d| numerator.get(d).copied().unwrap_or(0)).collect();
        for _ in 0..denom_exp {
            for d in 1..=cap {
                c[d] += c[d - 1];
            }
        }
        c
    }

    pub fn from_numerator(mut numerator: Vec<i64>, mut denom_exp: usize, cap: usize) -> Self {
        // cancel factors of (1 - t)
        while denom_exp > 0 && !numerator.is_empty() && numerator.iter().sum::<i64>() == 0 {
            let mut q = vec![0i64; numerator.len() - 1];
            let mut acc = 0;
            for (d, qd) in q.iter_mut().enumerate() {
                acc += numerator[d];
                *qd = acc;
            }
            numerator = q;
            denom_exp -= 1;
        }
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        let truncation = Self::expand(&numerator, denom_exp, cap);
        HilbertData {
            numerator,
            denom_exp,
            truncation,
        }
    }
}

impl fmt::Display for HilbertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (d, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{d}"),
            };
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}{mono}")
            };
            parts.push((c < 0, body));
        }
        let mut s = String::new();
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(body);
        }
        if s.is_empty() {
            s.push('0');
        }
        if self.denom_exp == 0 {
            write!(f, "{s}")
        } else if self.denom_exp == 1 {
            write!(f, "({s})/(1-t)")
        } else {
            write!(f, "({s})/(1-t)^{}", self.denom_exp)
        }
    }
}

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.exponents().to_vec()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (d, &c) in b.iter().enumerate() {
        a[d + shift] -= c;
    }
}

/// Numerator `N` with `HS(k[x]/M) = N / (1-t)^n` for a monomial ideal `M`.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimize(gens.to_vec());
    numerator_rec(gens)
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    // pairwise coprime generators form a regular sequence
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut n = vec![1i64];
        for g in &gens {
            let mut next = n.clone();
            poly_sub_shifted(&mut next, &n, g.degree() as usize);
            n = next;
        }
        return n;
    }
    // pivot on the variable occurring in the most generators:
    // 0 -> R/(M:x)(-1) -> R/M -> R/(M + (x)) -> 0
    let nvars = gens[0].nvars();
    let x = (0..nvars)
        .max_by_key(|&i| (gens.iter().filter(|g| g.exponents()[i] > 0).count(), std::cmp::Reverse(i)))
        .expect("at least one variable");
    let var = Monomial::var(nvars, x);
    let mut plus = gens.clone();
    plus.push(var.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.gcd(&var).quotient_of(g)).collect();
    let mut n = numerator_rec(minimize(plus));
    let q = numerator_rec(minimize(colon));
    poly_sub_shifted(&mut n, &q.iter().map(|c| -c).collect::<Vec<_>>(), 1);
    n
}
