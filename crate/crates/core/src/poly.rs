//! Sparse polynomials in `u, v, w, τ` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::plane_geom::Rat;

pub type Exp = [u32; 4];

pub const U: usize = 0;
pub const V: usize = 1;
pub const W: usize = 2;
pub const TAU: usize = 3;

const NAMES: [&str; 4] = ["u", "v", "w", "τ"];

/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Poly {
    terms: BTreeMap<Exp, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Self {
        Poly::monomial([0; 4], c)
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn monomial(exp: Exp, c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(exp, c);
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        Poly::monomial(e, Rat::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: Exp, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, k)| (*e, k * c)))
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Substitutes `x_i ↦ s_i x_i` for signs `s_i = ±1`.
    pub fn sign_substitute(&self, signs: [i8; 4]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| {
            let odd = (0..4).filter(|&i| signs[i] < 0 && e[i] % 2 == 1).count();
            (*e, if odd % 2 == 1 { -c.clone() } else { c.clone() })
        }))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &-o
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(e, c)| (*e, -c.clone())))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                p.add_term(std::array::from_fn(|i| a[i] + b[i]), x * y);
            }
        }
        p
    }
}

macro_rules! owned_op {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
    };
}
owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.iter().sum::<u32>().cmp(&a.iter().sum::<u32>()).then(b.cmp(a)));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = (0..4)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { NAMES[i].to_string() } else { format!("{}^{}", NAMES[i], e[i]) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
