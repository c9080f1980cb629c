//! Multivariate Laurent polynomials over the rationals.
//!
//! Only the distinguished symbol `z` may carry negative exponents; every
//! other generator is an ordinary polynomial variable. Values are kept in
//! canonical form (no zero coefficients, monomials ordered graded-lex) so
//! equality is a plain term-map comparison.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the symbolic engine.
pub type Rational = BigRational;

/// The closed generator set of the verification session.
///
/// `B(k)` stands for the automorphic coefficient of weight `w - 2k`; `U`
/// and `V` are the commuting offsets used in the Pascal-matrix laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Distinguished variable `z`; the only symbol allowed negative powers.
    Z,
    /// The weight-2 quasi generator `E_2`.
    E,
    /// Structure constant `C`.
    C,
    /// Period `ϖ` of the translation generator.
    Omega,
    /// Diagonal parameter `λ` of the creation matrix.
    Lambda,
    /// Characteristic-polynomial indeterminate `X`.
    X,
    /// Auxiliary offsets for two-parameter matrix identities.
    U,
    V,
    /// Automorphic coefficient `B_k`.
    B(u8),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Z => write!(f, "z"),
            Symbol::E => write!(f, "E"),
            Symbol::C => write!(f, "C"),
            Symbol::Omega => write!(f, "ϖ"),
            Symbol::Lambda => write!(f, "λ"),
            Symbol::X => write!(f, "X"),
            Symbol::U => write!(f, "u"),
            Symbol::V => write!(f, "v"),
            Symbol::B(k) => write!(f, "B{k}"),
        }
    }
}

/// A power product of symbols, sorted by symbol with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Symbol, i64)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// Build from (symbol, exponent) pairs. Exponents may repeat and are
    /// summed; zero exponents are dropped. Only `Z` may end up negative.
    pub fn new(pairs: impl IntoIterator<Item = (Symbol, i64)>) -> Result<Self> {
        let mut map: BTreeMap<Symbol, i64> = BTreeMap::new();
        for (s, e) in pairs {
            *map.entry(s).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        for (s, e) in &map {
            if *e < 0 && *s != Symbol::Z {
                return Err(Error::NegativeExponent(s.to_string()));
            }
        }
        Ok(Monomial {
            exps: map.into_iter().collect(),
        })
    }

    pub fn exponent(&self, s: Symbol) -> i64 {
        self.exps
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[(Symbol, i64)] {
        &self.exps
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|(_, e)| *e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        // Exponents of Z may cancel to anything; other symbols stay >= 0.
        Monomial::new(self.exps.iter().chain(other.exps.iter()).copied())
            .expect("product of valid monomials is valid")
    }

    fn inverse_z_only(&self) -> Option<Monomial> {
        if self.exps.iter().all(|(s, _)| *s == Symbol::Z) {
            Some(Monomial {
                exps: self.exps.iter().map(|(s, e)| (*s, -e)).collect(),
            })
        } else {
            None
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents in the
    /// fixed symbol order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let mut i = 0;
                let mut j = 0;
                loop {
                    match (self.exps.get(i), other.exps.get(j)) {
                        (None, None) => return Ordering::Equal,
                        (Some(&(sa, ea)), Some(&(sb, eb))) => match sa.cmp(&sb) {
                            Ordering::Equal => {
                                if ea != eb {
                                    return ea.cmp(&eb);
                                }
                                i += 1;
                                j += 1;
                            }
                            // Missing symbol counts as exponent 0.
                            Ordering::Less => {
                                if ea != 0 {
                                    return ea.cmp(&0);
                                }
                                i += 1;
                            }
                            Ordering::Greater => {
                                if eb != 0 {
                                    return 0.cmp(&eb);
                                }
                                j += 1;
                            }
                        },
                        (Some(&(_, ea)), None) => return ea.cmp(&0),
                        (None, Some(&(_, eb))) => return 0.cmp(&eb),
                    }
                }
            })
    }
}

/// Sparse Laurent polynomial in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        LaurentPoly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        LaurentPoly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn symbol(s: Symbol) -> Self {
        LaurentPoly::term(Rational::one(), [(s, 1)]).expect("exponent 1 is valid")
    }

    /// `z^k` for any integer `k`.
    pub fn z_pow(k: i64) -> Self {
        LaurentPoly::term(Rational::one(), [(Symbol::Z, k)]).expect("z may be Laurent")
    }

    /// Single term `c * Π s^e`.
    pub fn term(c: Rational, pairs: impl IntoIterator<Item = (Symbol, i64)>) -> Result<Self> {
        let m = Monomial::new(pairs)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Ok(LaurentPoly { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) != 0)
    }

    /// Smallest exponent of `z` over all terms; 0 for the zero polynomial.
    pub fn min_z_exponent(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.exponent(Symbol::Z))
            .min()
            .unwrap_or(0)
    }

    /// Largest exponent of `s` over all terms.
    pub fn degree_in(&self, s: Symbol) -> i64 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    fn insert_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Non-negative power by binary exponentiation.
    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        result
    }

    /// Integer power; negative exponents require the value to be a unit
    /// monomial in `z`.
    pub fn pow_signed(&self, n: i64) -> Result<LaurentPoly> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            let inv = self.invert_unit_monomial()?;
            Ok(inv.pow((-n) as u32))
        }
    }

    /// Inverse of `c * z^k`; anything else is not a unit of the ring.
    pub fn invert_unit_monomial(&self) -> Result<LaurentPoly> {
        if self.terms.len() != 1 {
            return Err(Error::NonInvertibleImage);
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        let minv = m.inverse_z_only().ok_or(Error::NonInvertibleImage)?;
        let mut terms = BTreeMap::new();
        terms.insert(minv, c.recip());
        Ok(LaurentPoly { terms })
    }

    /// Evaluate numerically with a complex value assigned to each symbol.
    pub fn eval_complex(
        &self,
        assign: impl Fn(Symbol) -> num_complex::Complex64,
    ) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let mut total = num_complex::Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = num_complex::Complex64::new(
                c.to_f64().expect("coefficient fits f64"),
                0.0,
            );
            for &(s, e) in m.exponents() {
                v *= assign(s).powi(e as i32);
            }
            total += v;
        }
        total
    }

    /// Apply the homomorphism `h`, replacing each mapped symbol by its image.
    pub fn substitute(&self, h: &RingHom) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut term = LaurentPoly::constant(c.clone());
            for &(s, e) in m.exponents() {
                let factor = match h.image(s) {
                    Some(img) => img.pow_signed(e)?,
                    None => LaurentPoly::term(Rational::one(), [(s, e)])
                        .expect("exponent sign already validated"),
                };
                term = &term * &factor;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest terms first reads more naturally.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = m
                .exponents()
                .iter()
                .map(|(s, e)| {
                    if *e == 1 {
                        s.to_string()
                    } else {
                        format!("{s}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// A ring homomorphism given by images of finitely many symbols; symbols
/// absent from the map are fixed.
#[derive(Clone, Debug, Default)]
pub struct RingHom {
    images: BTreeMap<Symbol, LaurentPoly>,
}

impl RingHom {
    pub fn new() -> Self {
        RingHom::default()
    }

    pub fn with(mut self, s: Symbol, image: LaurentPoly) -> Self {
        self.images.insert(s, image);
        self
    }

    pub fn image(&self, s: Symbol) -> Option<&LaurentPoly> {
        self.images.get(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentPoly {
        LaurentPoly::symbol(Symbol::Z)
    }

    #[test]
    fn difference_of_squares() {
        let a = &z() + &LaurentPoly::one();
        let b = &z() - &LaurentPoly::one();
        let expect = &(&z() * &z()) - &LaurentPoly::one();
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn laurent_power() {
        let p = LaurentPoly::z_pow(-1).pow(2);
        assert_eq!(p, LaurentPoly::z_pow(-2));
    }

    #[test]
    fn monomial_product_with_symbols() {
        let e = LaurentPoly::symbol(Symbol::E);
        let cz = &LaurentPoly::symbol(Symbol::C) * &z();
        let got = &e * &cz;
        let expect = LaurentPoly::term(
            Rational::one(),
            [(Symbol::C, 1), (Symbol::E, 1), (Symbol::Z, 1)],
        )
        .unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn negative_exponent_rejected_off_z() {
        assert_eq!(
            Monomial::new([(Symbol::E, -1)]),
            Err(Error::NegativeExponent("E".into()))
        );
    }

    #[test]
    fn substitute_z_inversion() {
        // z ↦ -z^{-1} applied to z^2 gives z^{-2}.
        let h = RingHom::new().with(Symbol::Z, -&LaurentPoly::z_pow(-1));
        let p = z().pow(2);
        assert_eq!(p.substitute(&h).unwrap(), LaurentPoly::z_pow(-2));
    }

    #[test]
    fn substitute_e2_anomaly_square() {
        // E ↦ z²E + Cz applied to E² gives z⁴E² + 2Cz³E + C²z².
        let img = &(&z().pow(2) * &LaurentPoly::symbol(Symbol::E))
            + &(&LaurentPoly::symbol(Symbol::C) * &z());
        let h = RingHom::new().with(Symbol::E, img);
        let got = LaurentPoly::symbol(Symbol::E).pow(2).substitute(&h).unwrap();
        let two = Rational::from_integer(2.into());
        let expect = &(&LaurentPoly::term(
            Rational::one(),
            [(Symbol::Z, 4), (Symbol::E, 2)],
        )
        .unwrap()
            + &LaurentPoly::term(two, [(Symbol::C, 1), (Symbol::Z, 3), (Symbol::E, 1)]).unwrap())
            + &LaurentPoly::term(Rational::one(), [(Symbol::C, 2), (Symbol::Z, 2)]).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn substitute_translation() {
        // z ↦ z + ϖ on z² gives z² + 2ϖz + ϖ².
        let h = RingHom::new().with(Symbol::Z, &z() + &LaurentPoly::symbol(Symbol::Omega));
        let got = z().pow(2).substitute(&h).unwrap();
        let two = Rational::from_integer(2.into());
        let expect = &(&z().pow(2)
            + &LaurentPoly::term(two, [(Symbol::Omega, 1), (Symbol::Z, 1)]).unwrap())
            + &LaurentPoly::symbol(Symbol::Omega).pow(2);
        assert_eq!(got, expect);
    }

    #[test]
    fn non_invertible_image_detected() {
        let h = RingHom::new().with(Symbol::Z, &z() + &LaurentPoly::one());
        let err = LaurentPoly::z_pow(-1).substitute(&h).unwrap_err();
        assert_eq!(err, Error::NonInvertibleImage);
    }

    #[test]
    fn equality_is_canonical() {
        let a = &(&z() + &LaurentPoly::one()) * &(&z() - &LaurentPoly::one());
        let b = &z().pow(2) - &LaurentPoly::one();
        assert_eq!(a, b);
        assert_ne!(z(), LaurentPoly::z_pow(-1));
    }

    #[test]
    fn display_reads_naturally() {
        let p = &(&z().pow(2) - &LaurentPoly::one()) + &LaurentPoly::symbol(Symbol::E);
        let s = p.to_string();
        assert!(s.contains("z^2"), "{s}");
    }
}
