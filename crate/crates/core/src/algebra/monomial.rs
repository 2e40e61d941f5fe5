//! Dense exponent vectors and the degree reverse lexicographic order.

use std::cmp::Ordering;
use std::fmt;

/// Largest number of variables a monomial can carry (arrangement variables
/// plus auxiliary elimination variables).
pub const MAX_VARS: usize = 12;

/// A monomial `x_0^e_0 ... x_{l-1}^e_{l-1}`. Exponents past the ring's
/// variable count are always zero, so monomials of different rings never
/// need special casing in comparisons.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    pub const fn one() -> Monomial {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
        }
    }

    pub fn new(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.degree += e;
        }
        m
    }

    pub fn var(i: usize) -> Monomial {
        Monomial::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Monomial {
        assert!(i < MAX_VARS, "variable index out of range");
        let mut m = Monomial::one();
        m.exps[i] = e as u16;
        m.degree = e;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i] + other.exps[i];
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate() {
            *e = other.exps[i] - self.exps[i];
        }
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0;
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].max(other.exps[i]);
            degree += *e as u32;
        }
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut degree = 0;
        for (i, e) in exps.iter_mut().enumerate() {
            *e = self.exps[i].min(other.exps[i]);
            degree += *e as u32;
        }
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Decrements exponent `i`; `None` if it is zero.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        m.degree -= 1;
        Some(m)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.degree = m.degree - m.exps[i] as u32 + e;
        m.exps[i] = e as u16;
        m
    }

    /// Bitmask of the variables that occur.
    pub fn support_mask(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Degree reverse lexicographic comparison.
    #[inline]
    pub fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => revlex_tail(&self.exps, &other.exps),
            ord => ord,
        }
    }

    /// Degree reverse lexicographic comparison of the products `self * a`
    /// and `other * b`, without forming them.
    #[inline]
    pub fn cmp_degrevlex_scaled(&self, a: &Monomial, other: &Monomial, b: &Monomial) -> Ordering {
        match (self.degree + a.degree).cmp(&(other.degree + b.degree)) {
            Ordering::Equal => {
                for i in (0..MAX_VARS).rev() {
                    let x = self.exps[i] + a.exps[i];
                    let y = other.exps[i] + b.exps[i];
                    if x != y {
                        return y.cmp(&x);
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }

    /// Block order for elimination: the exponent of `aux` dominates, then
    /// degree reverse lexicographic order on the remaining variables.
    pub fn cmp_eliminate(&self, other: &Monomial, aux: usize) -> Ordering {
        match self.exps[aux].cmp(&other.exps[aux]) {
            Ordering::Equal => {
                let da = self.degree - self.exps[aux] as u32;
                let db = other.degree - other.exps[aux] as u32;
                match da.cmp(&db) {
                    Ordering::Equal => revlex_tail(&self.exps, &other.exps),
                    ord => ord,
                }
            }
            ord => ord,
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[inline]
fn revlex_tail(a: &[u16; MAX_VARS], b: &[u16; MAX_VARS]) -> Ordering {
    for i in (0..MAX_VARS).rev() {
        if a[i] != b[i] {
            // a smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..self.support_len().max(1)])
    }
}

/// Default variable names for an `l`-variable ring: `x, y, z, t, w` up to five
/// variables, `x1, ..., xl` beyond that.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    const SHORT: [&str; 5] = ["x", "y", "z", "t", "w"];
    if nvars <= SHORT.len() {
        SHORT[..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}
