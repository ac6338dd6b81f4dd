//! Exact arithmetic in the small Galois fields GF(q), q = p^k ≤ 9.
//!
//! An element is stored as a single integer `rep` in `[0, q)` whose base-`p`
//! digits are the coefficients of its polynomial-basis representation,
//! lowest degree first. For `k > 1` products are reduced modulo a fixed monic
//! irreducible polynomial so that encodings (and therefore every point and
//! line index built on top of them) are reproducible.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Orders supported by [`make_field`].
pub const SUPPORTED_ORDERS: [u8; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported field order {0}: expected one of 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedOrder(i64),
    #[error("field elements belong to different fields (GF({left}) vs GF({right}))")]
    SpecMismatch { left: u8, right: u8 },
    #[error("division by zero in GF({0})")]
    DivisionByZero(u8),
    #[error("representation {rep} out of range for GF({q})")]
    RepOutOfRange { rep: u32, q: u8 },
}

/// Parameters of a small finite field GF(p^k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u8,
    k: u8,
    q: u8,
    /// Coefficients of the reduction polynomial, lowest degree first; only
    /// the first `k + 1` entries are meaningful.
    poly: [u8; 4],
}

/// Returns the field of order `q` with its fixed reduction polynomial.
pub fn make_field(q: i64) -> Result<FieldSpec, FieldError> {
    let (p, k, poly) = match q {
        2 => (2, 1, [0, 1, 0, 0]),
        3 => (3, 1, [0, 1, 0, 0]),
        5 => (5, 1, [0, 1, 0, 0]),
        7 => (7, 1, [0, 1, 0, 0]),
        // t^2 + t + 1
        4 => (2, 2, [1, 1, 1, 0]),
        // t^3 + t + 1
        8 => (2, 3, [1, 1, 0, 1]),
        // t^2 + 1
        9 => (3, 2, [1, 0, 1, 0]),
        _ => return Err(FieldError::UnsupportedOrder(q)),
    };
    Ok(FieldSpec {
        p,
        k,
        q: q as u8,
        poly,
    })
}

impl FieldSpec {
    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Reduction polynomial coefficients, lowest degree first (length `k + 1`).
    pub fn reduction_poly(&self) -> &[u8] {
        &self.poly[..=self.k as usize]
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            spec: *self,
            rep: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            spec: *self,
            rep: 1,
        }
    }

    pub fn element(&self, rep: u32) -> Result<FieldElement, FieldError> {
        if rep >= self.q as u32 {
            return Err(FieldError::RepOutOfRange { rep, q: self.q });
        }
        Ok(FieldElement {
            spec: *self,
            rep: rep as u8,
        })
    }

    /// All `q` elements in ascending `rep` order (so `0` then `1` first).
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q)
            .map(|rep| FieldElement { spec: *self, rep })
            .collect()
    }

    /// The image of the integer `n` under the canonical map Z → GF(q).
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement {
            spec: *self,
            rep: n.rem_euclid(self.p as i64) as u8,
        }
    }

    fn tables(&self) -> &'static Tables {
        static CELLS: [OnceLock<Tables>; 10] = [const { OnceLock::new() }; 10];
        CELLS[self.q as usize].get_or_init(|| Tables::build(self))
    }

    // Raw-representation arithmetic used by the hot loops of the plane and
    // conic code. Callers guarantee that reps are in range.

    #[inline]
    pub fn add_rep(&self, a: u8, b: u8) -> u8 {
        self.tables().add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul_rep(&self, a: u8, b: u8) -> u8 {
        self.tables().mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg_rep(&self, a: u8) -> u8 {
        self.tables().neg[a as usize]
    }

    /// Multiplicative inverse of a nonzero rep; `None` for zero.
    #[inline]
    pub fn inv_rep(&self, a: u8) -> Option<u8> {
        match self.tables().inv[a as usize] {
            0 => None,
            x => Some(x),
        }
    }

    fn digits(&self, rep: u8) -> [u8; 3] {
        let mut out = [0; 3];
        let mut r = rep;
        for d in out.iter_mut().take(self.k as usize) {
            *d = r % self.p;
            r /= self.p;
        }
        out
    }

    fn digits_to_rep(&self, digits: &[u8]) -> u8 {
        digits
            .iter()
            .take(self.k as usize)
            .rev()
            .fold(0u8, |acc, &d| acc * self.p + d)
    }

    fn slow_add(&self, a: u8, b: u8) -> u8 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u8> = (0..self.k as usize)
            .map(|i| (da[i] + db[i]) % self.p)
            .collect();
        self.digits_to_rep(&sum)
    }

    /// Schoolbook polynomial product followed by reduction modulo the monic
    /// reduction polynomial.
    fn slow_mul(&self, a: u8, b: u8) -> u8 {
        let k = self.k as usize;
        let p = self.p as u16;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u16; 5];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u16 * db[j] as u16) % p;
            }
        }
        for deg in (k..=2 * k - 2).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            // t^deg = t^(deg-k) * t^k and t^k ≡ -(poly[0] + ... + poly[k-1] t^(k-1)).
            for (i, &c) in self.poly[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + p * p - lead * c as u16) % p;
            }
            prod[deg] = 0;
        }
        let digits: Vec<u8> = prod[..k].iter().map(|&d| d as u8).collect();
        self.digits_to_rep(&digits)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Tables {
    fn build(spec: &FieldSpec) -> Self {
        let q = spec.q as usize;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = spec.slow_add(a as u8, b as u8);
                mul[a * q + b] = spec.slow_mul(a as u8, b as u8);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u8
                }
            })
            .collect();
        Tables { add, mul, neg, inv }
    }
}

/// An element of a specific [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    spec: FieldSpec,
    rep: u8,
}

// FieldSpec has no natural order; elements of one field compare by rep.
impl PartialOrd for FieldSpec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldSpec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.p, self.k).cmp(&(other.p, other.k))
    }
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rep(&self) -> u8 {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.spec != other.spec {
            return Err(FieldError::SpecMismatch {
                left: self.spec.q,
                right: other.spec.q,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(FieldElement {
            spec: self.spec,
            rep: self.spec.add_rep(self.rep, other.rep),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(FieldElement {
            spec: self.spec,
            rep: self.spec.mul_rep(self.rep, other.rep),
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            spec: self.spec,
            rep: self.spec.neg_rep(self.rep),
        }
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        let rep = self
            .spec
            .inv_rep(self.rep)
            .ok_or(FieldError::DivisionByZero(self.spec.q))?;
        Ok(FieldElement {
            spec: self.spec,
            rep,
        })
    }

    pub fn pow(&self, mut exp: u32) -> FieldElement {
        let mut base = self.rep;
        let mut acc = 1u8;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.spec.mul_rep(acc, base);
            }
            base = self.spec.mul_rep(base, base);
            exp >>= 1;
        }
        FieldElement {
            spec: self.spec,
            rep: acc,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// Ordered list of the elements of `spec`.
pub fn field_elements(spec: &FieldSpec) -> Vec<FieldElement> {
    spec.elements()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<FieldSpec> {
        SUPPORTED_ORDERS
            .iter()
            .map(|&q| make_field(q as i64).unwrap())
            .collect()
    }

    #[test]
    fn make_field_examples() {
        let f2 = make_field(2).unwrap();
        assert_eq!((f2.p(), f2.k(), f2.q()), (2, 1, 2));
        let f4 = make_field(4).unwrap();
        assert_eq!((f4.p(), f4.k()), (2, 2));
        assert_eq!(f4.reduction_poly(), &[1, 1, 1]);
        assert_eq!(make_field(8).unwrap().reduction_poly(), &[1, 1, 0, 1]);
        assert_eq!(make_field(9).unwrap().reduction_poly(), &[1, 0, 1]);
        for bad in [0, 1, 6, 10, 11, 16, 25, -3] {
            assert_eq!(make_field(bad), Err(FieldError::UnsupportedOrder(bad)));
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = make_field(7).unwrap();
        let three = f7.element(3).unwrap();
        let five = f7.element(5).unwrap();
        assert_eq!(three.add(&five).unwrap().rep(), 1);
        assert_eq!(three.inv().unwrap().rep(), 5);

        // rep 2 is the polynomial t; t * t = t + 1 which is rep 3.
        let f4 = make_field(4).unwrap();
        let t = f4.element(2).unwrap();
        assert_eq!(t.mul(&t).unwrap().rep(), 3);
    }

    #[test]
    fn errors() {
        let f5 = make_field(5).unwrap();
        let f7 = make_field(7).unwrap();
        assert_eq!(
            f5.one().add(&f7.one()),
            Err(FieldError::SpecMismatch { left: 5, right: 7 })
        );
        assert_eq!(f5.zero().inv(), Err(FieldError::DivisionByZero(5)));
        assert!(f5.element(5).is_err());
    }

    #[test]
    fn element_listing() {
        let reps = |q| {
            make_field(q)
                .unwrap()
                .elements()
                .iter()
                .map(|e| e.rep())
                .collect::<Vec<_>>()
        };
        assert_eq!(reps(2), vec![0, 1]);
        assert_eq!(reps(3), vec![0, 1, 2]);
        assert_eq!(reps(9).len(), 9);
        for spec in all_fields() {
            let els = field_elements(&spec);
            assert_eq!(els.len(), spec.q() as usize);
            assert_eq!(els[0], spec.zero());
            assert_eq!(els[1], spec.one());
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for spec in all_fields() {
            let els = spec.elements();
            for a in &els {
                for b in &els {
                    assert_eq!(a.add(b), b.add(a));
                    assert_eq!(a.mul(b), b.mul(a));
                    for c in &els {
                        let ab = a.add(b).unwrap();
                        assert_eq!(ab.add(c), a.add(&b.add(c).unwrap()));
                        let ab = a.mul(b).unwrap();
                        assert_eq!(ab.mul(c), a.mul(&b.mul(c).unwrap()));
                        let lhs = a.mul(&b.add(c).unwrap()).unwrap();
                        let rhs = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "{spec}: distributivity");
                    }
                }
                assert_eq!(a.add(&a.neg()).unwrap(), spec.zero());
                assert_eq!(a.add(&spec.zero()).unwrap(), *a);
                assert_eq!(a.mul(&spec.one()).unwrap(), *a);
            }
        }
    }

    #[test]
    fn multiplicative_group() {
        for spec in all_fields() {
            for a in spec.elements().into_iter().skip(1) {
                assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), spec.one());
                assert_eq!(a.pow(spec.q() as u32 - 1), spec.one());
            }
        }
    }

    #[test]
    fn characteristic() {
        for spec in all_fields() {
            let mut acc = spec.zero();
            for _ in 0..spec.p() {
                acc = acc.add(&spec.one()).unwrap();
            }
            assert_eq!(acc, spec.zero());
        }
    }

    #[test]
    fn reduction_polys_are_irreducible() {
        // Degrees 2 and 3 are irreducible exactly when there is no root in GF(p).
        for spec in all_fields().into_iter().filter(|s| s.k() > 1) {
            let poly = spec.reduction_poly();
            assert_eq!(*poly.last().unwrap(), 1, "monic");
            let p = spec.p() as u32;
            for x in 0..p {
                let value = poly
                    .iter()
                    .rev()
                    .fold(0u32, |acc, &c| (acc * x + c as u32) % p);
                assert_ne!(value, 0, "{spec}: root {x}");
            }
        }
    }
}
