//! Laurent polynomials over the integers or a residue ring `Z/m`.
//!
//! The involution is `t -> 1/t`. An integer is a polynomial supported in
//! exponent zero, so `Z` and `Z[t, 1/t]` share the descriptor [`Ring::integral`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring of a Laurent polynomial: `Z` or `Z/m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ring {
    modulus: Option<BigInt>,
}

impl Ring {
    /// `Z[t, 1/t]`, which contains `Z` as its exponent-zero part.
    pub const fn integral() -> Ring {
        Ring { modulus: None }
    }

    /// `(Z/m)[t, 1/t]`. The sign of `m` is ignored.
    pub fn residue(m: &BigInt) -> Result<Ring> {
        if m.is_zero() {
            return Err(Error::BadParams("modulus must be nonzero"));
        }
        Ok(Ring { modulus: Some(m.abs()) })
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn is_integral(&self) -> bool {
        self.modulus.is_none()
    }

    fn reduce(&self, c: BigInt) -> BigInt {
        match &self.modulus {
            None => c,
            Some(m) => c.mod_floor(m),
        }
    }
}

/// Element of `Z[t, 1/t]` or `(Z/m)[t, 1/t]`, stored sparsely.
///
/// No zero coefficient is ever stored, and over `Z/m` every coefficient is
/// the canonical residue in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    ring: Ring,
    coeffs: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero(ring: &Ring) -> Laurent {
        Laurent { ring: ring.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(ring: &Ring) -> Laurent {
        Laurent::term(ring, BigInt::one(), 0)
    }

    /// `c * t^k` in the given ring.
    pub fn term(ring: &Ring, c: BigInt, k: i64) -> Laurent {
        let mut x = Laurent::zero(ring);
        x.add_term(k, c);
        x
    }

    /// Integer constant in `Z[t, 1/t]`.
    pub fn int(c: i64) -> Laurent {
        Laurent::term(&Ring::integral(), BigInt::from(c), 0)
    }

    pub fn from_bigint(c: BigInt) -> Laurent {
        Laurent::term(&Ring::integral(), c, 0)
    }

    /// `c * t^k` in `Z[t, 1/t]`.
    pub fn mono(c: i64, k: i64) -> Laurent {
        Laurent::term(&Ring::integral(), BigInt::from(c), k)
    }

    /// The group element `t^k`.
    pub fn t(k: i64) -> Laurent {
        Laurent::mono(1, k)
    }

    pub fn from_terms<I>(ring: &Ring, terms: I) -> Laurent
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut x = Laurent::zero(ring);
        for (k, c) in terms {
            x.add_term(k, c);
        }
        x
    }

    fn add_term(&mut self, k: i64, c: BigInt) {
        let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        let reduced = self.ring.reduce(core::mem::take(entry));
        if reduced.is_zero() {
            self.coeffs.remove(&k);
        } else {
            *self.coeffs.get_mut(&k).unwrap() = reduced;
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// True when the support lies in exponent zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_constant().then(|| self.coeff(0))
    }

    /// The involution `t -> 1/t`.
    pub fn involute(&self) -> Laurent {
        Laurent {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Laurent {
        Laurent::from_terms(&self.ring, self.coeffs.iter().map(|(k, x)| (*k, x * c)))
    }

    /// The augmentation `t -> 1`, as a constant in the same ring.
    pub fn augment(&self) -> Laurent {
        let total: BigInt = self.coeffs.values().sum();
        Laurent::term(&self.ring, total, 0)
    }

    /// Coefficientwise reduction into `(Z/m)[t, 1/t]`.
    pub fn reduce_mod(&self, m: &BigInt) -> Result<Laurent> {
        let ring = Ring::residue(m)?;
        Ok(Laurent::from_terms(&ring, self.coeffs.iter().map(|(k, c)| (*k, c.clone()))))
    }

    /// Reinterpret residues as integers in `Z[t, 1/t]`.
    pub fn lift(&self) -> Laurent {
        Laurent { ring: Ring::integral(), coeffs: self.coeffs.clone() }
    }

    /// `Some((negative, k))` when `self = -t^k` or `t^k`.
    ///
    /// Over `Z/m` a coefficient congruent to `-1` counts as negative.
    pub fn trivial_unit(&self) -> Option<(bool, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (k, c) = self.coeffs.iter().next().unwrap();
        if c.is_one() {
            return Some((false, *k));
        }
        let minus_one = self.ring.reduce(-BigInt::one());
        if *c == minus_one {
            return Some((true, *k));
        }
        None
    }

    pub fn is_trivial_unit(&self) -> bool {
        self.trivial_unit().is_some()
    }

    /// Inverse of a unit monomial `c t^k`: `+-1` over `Z`, any invertible residue over `Z/m`.
    pub fn monomial_inverse(&self) -> Option<Laurent> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (k, c) = self.coeffs.iter().next().unwrap();
        match &self.ring.modulus {
            None => {
                if c.is_one() || (-c).is_one() {
                    Some(Laurent::term(&self.ring, c.clone(), -k))
                } else {
                    None
                }
            }
            Some(m) => {
                let inv = mod_inverse(c, m)?;
                Some(Laurent::term(&self.ring, inv, -k))
            }
        }
    }

    /// `x * involute(x) == 1`.
    pub fn is_unitary(&self) -> bool {
        (self * &self.involute()).is_one()
    }

    /// Exact quotient `self / d` over `Z[t, 1/t]`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &Laurent) -> Option<Laurent> {
        assert!(self.ring.is_integral(), "exact division needs the integral ring");
        self.check_ring(d);
        if d.is_zero() {
            return None;
        }
        let (dmin, dmax) = (d.min_exp()?, d.max_exp()?);
        let dlead = d.coeffs[&dmax].clone();
        let mut rem = self.clone();
        let mut quot = Laurent::zero(&self.ring);
        while let (Some(rmin), Some(rmax)) = (rem.min_exp(), rem.max_exp()) {
            if rmax - dmax < rmin - dmin {
                return None;
            }
            let (q, r) = rem.coeffs[&rmax].div_rem(&dlead);
            if !r.is_zero() {
                return None;
            }
            let step = Laurent::term(&self.ring, q, rmax - dmax);
            rem -= &(&step * d);
            quot += &step;
        }
        Some(quot)
    }

    fn check_ring(&self, other: &Laurent) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
    }

    /// Human-readable form such as `2t^3 - t^-1 + 5`, lowest exponent first.
    pub fn to_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        write!(s, "{}", self).unwrap();
        s
    }
}

/// Inverse of `c` modulo `m`, if it exists.
pub fn mod_inverse(c: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = c.extended_gcd(m);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some((e.x * e.gcd.signum()).mod_floor(m))
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if *k == 0 {
                write!(f, "{}", mag)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}", mag)?;
            }
            if *k == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{}", k)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        self.check_ring(rhs);
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        self.check_ring(rhs);
        for (k, c) in &rhs.coeffs {
            self.add_term(*k, -c);
        }
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.check_ring(rhs);
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                *acc.entry(i + j).or_default() += a * b;
            }
        }
        Laurent::from_terms(&self.ring, acc)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent::from_terms(&self.ring, self.coeffs.iter().map(|(k, c)| (*k, -c)))
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent {
                (&self).$m(rhs)
            }
        }
        impl $tr<Laurent> for &Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Canonical representative of `x` up to multiplication by `+-t^k`.
///
/// The lowest exponent is moved to zero and, of `x` and `-x`, the one whose
/// coefficient list (lowest exponent first) is lexicographically smaller wins.
/// Over `Z` coefficients compare as integers; over `Z/m` as residues.
pub fn normalize_up_to_trivial_unit(x: &Laurent) -> Laurent {
    let Some(lo) = x.min_exp() else {
        return x.clone();
    };
    let a = x.shift(-lo);
    let b = -&a;
    let key = |y: &Laurent| -> Vec<(i64, BigInt)> { y.terms().map(|(k, c)| (k, c.clone())).collect() };
    if key(&b) < key(&a) {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: i64) -> BigInt {
        BigInt::from(c)
    }

    #[test]
    fn involution_moves_exponents() {
        let x = Laurent::mono(2, 3) - Laurent::t(-1);
        assert_eq!(x.involute(), Laurent::mono(2, -3) - Laurent::t(1));
        assert_eq!(Laurent::int(5).involute(), Laurent::int(5));
        let y = Laurent::mono(-2, 1) - Laurent::int(3);
        assert_eq!(y.involute(), Laurent::mono(-2, -1) - Laurent::int(3));
    }

    #[test]
    fn trivial_units() {
        assert!(Laurent::mono(-1, 5).is_trivial_unit());
        assert!(!(Laurent::int(1) + Laurent::t(1)).is_trivial_unit());
        assert!(!Laurent::int(2).is_trivial_unit());
        assert!(!Laurent::int(0).is_trivial_unit());
    }

    #[test]
    fn residues_are_canonical() {
        let x = (Laurent::mono(-2, 1) - Laurent::int(3)).reduce_mod(&z(3)).unwrap();
        assert_eq!(x.coeff(1), z(1));
        assert_eq!(x.coeff(0), z(0));
        assert_eq!(x.len(), 1);
        let r = Ring::residue(&z(-6)).unwrap();
        assert_eq!(r.modulus(), Some(&z(6)));
    }

    #[test]
    fn exact_division() {
        let a = Laurent::t(2) - Laurent::t(-2);
        let d = Laurent::t(1) - Laurent::t(-1);
        assert_eq!(a.exact_div(&d), Some(Laurent::t(1) + Laurent::t(-1)));
        assert_eq!(Laurent::int(1).exact_div(&Laurent::int(2)), None);
        assert_eq!(Laurent::t(3).exact_div(&(Laurent::int(1) + Laurent::t(1))), None);
        assert_eq!(Laurent::mono(-6, 4).exact_div(&Laurent::mono(3, 1)), Some(Laurent::mono(-2, 3)));
    }

    #[test]
    fn display() {
        let x = Laurent::mono(2, 3) - Laurent::t(-1) + Laurent::int(5);
        assert_eq!(x.to_text(), "-t^-1 + 5 + 2t^3");
        assert_eq!(Laurent::zero(&Ring::integral()).to_text(), "0");
    }

    #[test]
    fn monomial_inverse_mod() {
        let x = Laurent::mono(2, 3).reduce_mod(&z(5)).unwrap();
        let inv = x.monomial_inverse().unwrap();
        assert!((&x * &inv).is_one());
        assert!(Laurent::mono(2, 1).reduce_mod(&z(4)).unwrap().monomial_inverse().is_none());
    }

    #[test]
    fn normalization() {
        let x = Laurent::mono(-1, 4) + Laurent::mono(3, 6);
        let n = normalize_up_to_trivial_unit(&x);
        assert_eq!(n, Laurent::int(-1) + Laurent::mono(3, 2));
    }
}
