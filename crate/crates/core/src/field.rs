//! Binary extension fields GF(2^e) in polynomial basis, and the tower
//! GF(2) ⊂ GF(d) ⊂ GF(q) ⊂ GF(q²) used by the arc and code constructions.
//!
//! Every element of every field in the tower is encoded as an element of the
//! top field GF(q²); the subfields are the fixed points of the appropriate
//! Frobenius power.

use std::fmt;
use std::ops::{Add, AddAssign};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported extension degree of the top field.
pub const MAX_DEGREE: u32 = 24;

/// A field element: the coefficient bitmask of its polynomial-basis representative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// characteristic 2: addition is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Elem {
    type Output = Elem;
    #[inline]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Elem {
    #[inline]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl Serialize for Elem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.0)
    }
}

impl<'de> serde::Deserialize<'de> for Elem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        <u32 as serde::Deserialize>::deserialize(d).map(Elem)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// ---------------------------------------------------------------------------
// GF(2)[x] helpers on u64 bitmasks.

/// Degree of a nonzero polynomial over GF(2).
pub fn poly_degree(p: u64) -> u32 {
    debug_assert!(p != 0);
    63 - p.leading_zeros()
}

/// Remainder of `a` modulo `m` over GF(2).
pub fn poly_rem(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

/// Carry-less product followed by reduction modulo `modulus`.
///
/// Slow reference multiplication; the tables of [`Field`] are built from it.
pub fn poly_mulmod(a: u64, b: u64, modulus: u64) -> u64 {
    let deg = poly_degree(modulus);
    let mut a = poly_rem(a, modulus);
    let mut b = b;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> deg & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_powmod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1u64;
    let mut b = poly_rem(base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mulmod(result, b, modulus);
        }
        b = poly_mulmod(b, b, modulus);
        exp >>= 1;
    }
    result
}

/// Returns a nontrivial factor of `p` if it is reducible over GF(2), found by
/// trial division by every polynomial of degree at most deg(p)/2.
pub fn find_factor(p: u64) -> Option<u64> {
    let deg = poly_degree(p);
    for dd in 1..=deg / 2 {
        for f in (1u64 << dd)..(1u64 << (dd + 1)) {
            if poly_rem(p, f) == 0 {
                return Some(f);
            }
        }
    }
    None
}

/// The ascending-bitmask-first irreducible polynomial of degree `e` with
/// nonzero constant term.
pub fn canonical_modulus(e: u32) -> u64 {
    let mut p = (1u64 << e) | 1;
    loop {
        if find_factor(p).is_none() {
            return p;
        }
        p += 2;
    }
}

/// Distinct prime factors of `x`, ascending.
pub fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= x {
        if x.is_multiple_of(p) {
            out.push(p);
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

// ---------------------------------------------------------------------------

/// Degree and defining polynomial of a binary field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub degree: u32,
    pub modulus: u64,
}

impl FieldSpec {
    /// Builds the spec for GF(2^e), using the canonical modulus unless an
    /// override is supplied.
    pub fn new(e: u32, modulus_override: Option<u64>) -> Result<FieldSpec> {
        if e == 0 || e > MAX_DEGREE {
            return Err(Error::SizeCap(format!(
                "field degree {e} outside 1..={MAX_DEGREE}"
            )));
        }
        let modulus = match modulus_override {
            None => canonical_modulus(e),
            Some(m) => {
                if m == 0 || poly_degree(m) != e {
                    return Err(Error::BadModulus {
                        modulus: m,
                        reason: format!("degree is not {e}"),
                    });
                }
                if let Some(factor) = find_factor(m) {
                    return Err(Error::Reducible { modulus: m, factor });
                }
                m
            }
        };
        Ok(FieldSpec {
            degree: e,
            modulus,
        })
    }
}

/// GF(2^e) with exp/log tables relative to its ascending-first primitive element.
#[derive(Clone)]
pub struct Field {
    spec: FieldSpec,
    size: u32,
    alpha: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("spec", &self.spec)
            .field("alpha", &self.alpha)
            .finish()
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let size = 1u32 << spec.degree;
        let order = (size - 1) as u64;
        let alpha = find_primitive(spec.modulus, order);
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; size as usize];
        let mut x = 1u64;
        for i in 0..order as usize {
            exp[i] = x as u32;
            exp[i + order as usize] = x as u32;
            log[x as usize] = i as u32;
            x = poly_mulmod(x, alpha as u64, spec.modulus);
        }
        Field {
            spec,
            size,
            alpha: Elem(alpha),
            exp,
            log,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group.
    pub fn group_order(&self) -> u32 {
        self.size - 1
    }

    /// The primitive element the tables are built on.
    pub fn primitive(&self) -> Elem {
        self.alpha
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            Elem::ZERO
        } else {
            Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
        }
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((self.group_order() - l) % self.group_order()) as usize]))
    }

    /// `a / b`; panics on division by zero.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        assert!(!b.is_zero(), "division by zero");
        if a.is_zero() {
            return Elem::ZERO;
        }
        let ord = self.group_order();
        let l = self.log[a.0 as usize] + ord - self.log[b.0 as usize];
        Elem(self.exp[l as usize])
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let ord = self.group_order() as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % ord)) % ord;
        Elem(self.exp[l as usize])
    }

    /// α^i for the table primitive α.
    #[inline]
    pub fn exp(&self, i: u64) -> Elem {
        Elem(self.exp[(i % self.group_order() as u64) as usize])
    }

    /// Discrete logarithm to base α; `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let ord = self.group_order() as u64;
        Some(ord / l.gcd(&ord))
    }

    /// Multiplication through the reference carry-less routine, bypassing the tables.
    pub fn mul_reference(&self, a: Elem, b: Elem) -> Elem {
        Elem(poly_mulmod(a.0 as u64, b.0 as u64, self.spec.modulus) as u32)
    }
}

fn find_primitive(modulus: u64, order: u64) -> u32 {
    if order == 1 {
        return 1;
    }
    let factors = prime_factors(order);
    let size = order + 1;
    (2..size)
        .find(|&g| {
            factors
                .iter()
                .all(|&p| poly_powmod(g, order / p, modulus) != 1)
        })
        .expect("multiplicative group of a finite field is cyclic") as u32
}

/// A subfield realised inside a larger field, elements sorted by bitmask.
#[derive(Clone, Debug)]
pub struct Subfield {
    order: u32,
    elems: Vec<Elem>,
}

impl Subfield {
    /// The subfield of `field` of the given order, built as {0} ∪ ⟨α^((size-1)/(order-1))⟩.
    fn inside(field: &Field, order: u32) -> Subfield {
        let step = (field.group_order() / (order - 1)) as u64;
        let mut elems: Vec<Elem> = std::iter::once(Elem::ZERO)
            .chain((0..(order - 1) as u64).map(|j| field.exp(j * step)))
            .collect();
        elems.sort_unstable();
        Subfield { order, elems }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// All elements in ascending bitmask order.
    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elems.iter().copied().filter(|x| !x.is_zero())
    }

    /// Position of `x` in the ascending element list.
    #[inline]
    pub fn rank(&self, x: Elem) -> Option<usize> {
        self.elems.binary_search(&x).ok()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.rank(x).is_some()
    }
}

/// The chain GF(2) ⊂ GF(d) ⊂ GF(q) ⊂ GF(r) with q = 2^(km), d = 2^m, r = q²,
/// and the derived code parameters n = (q+1)(d−1), N = (q−1)/(d−1).
#[derive(Clone, Debug)]
pub struct FieldTower {
    pub m: u32,
    pub k: u32,
    pub q: u32,
    pub d: u32,
    pub n: u32,
    /// N = (q−1)/(d−1), the number of cyclotomic classes.
    pub n_classes: u32,
    pub r: u32,
    field: Field,
    beta: Elem,
    gf_q: Subfield,
    gf_d: Subfield,
}

/// JSON form of the top field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct FieldDescription {
    pub e: u32,
    pub modulus: u64,
    pub alpha: u32,
}

impl FieldTower {
    pub fn new(m: u32, k: u32) -> Result<FieldTower> {
        Self::with_modulus(m, k, None)
    }

    pub fn with_modulus(m: u32, k: u32, modulus: Option<u64>) -> Result<FieldTower> {
        if m == 0 || k == 0 {
            return Err(Error::Domain(format!("m and k must be positive (m={m}, k={k})")));
        }
        if 2 * k * m > MAX_DEGREE {
            return Err(Error::SizeCap(format!(
                "2km = {} exceeds {MAX_DEGREE}",
                2 * k * m
            )));
        }
        let spec = FieldSpec::new(2 * k * m, modulus)?;
        let field = Field::new(spec);
        let q = 1u32 << (k * m);
        let d = 1u32 << m;
        let n = (q + 1) * (d - 1);
        let n_classes = (q - 1) / (d - 1);
        let r = q * q;
        let beta = field.exp(n_classes as u64);
        let gf_q = Subfield::inside(&field, q);
        let gf_d = Subfield::inside(&field, d);
        Ok(FieldTower {
            m,
            k,
            q,
            d,
            n,
            n_classes,
            r,
            field,
            beta,
            gf_q,
            gf_d,
        })
    }

    /// The top field GF(r).
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> Elem {
        self.field.primitive()
    }

    /// β = α^N, of multiplicative order n.
    pub fn beta(&self) -> Elem {
        self.beta
    }

    pub fn gf_q(&self) -> &Subfield {
        &self.gf_q
    }

    pub fn gf_d(&self) -> &Subfield {
        &self.gf_d
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription {
            e: self.field.spec().degree,
            modulus: self.field.spec().modulus,
            alpha: self.alpha().0,
        }
    }

    /// Tr_{r/q}(x) = x + x^q.
    #[inline]
    pub fn trace(&self, x: Elem) -> Elem {
        x + self.field.pow(x, self.q as u64)
    }

    /// The cyclotomic class C_i^(N,r) = α^i ⟨α^N⟩, listed as α^(i+jN) for j = 0..n.
    pub fn cyclotomic_class(&self, i: u32) -> Result<Vec<Elem>> {
        if i >= self.n_classes {
            return Err(Error::Domain(format!(
                "class index {i} out of range 0..{}",
                self.n_classes
            )));
        }
        Ok((0..self.n as u64)
            .map(|j| self.field.exp(i as u64 + j * self.n_classes as u64))
            .collect())
    }

    /// Number of x ∈ GF(r) with Tr(a·x^N) = b.
    pub fn count_z(&self, a: Elem, b: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::Domain("count_z requires a ≠ 0".into()));
        }
        if !self.gf_q.contains(b) {
            return Err(Error::Domain(format!("b = {b} is not in GF(q)")));
        }
        let f = &self.field;
        Ok(f.elements()
            .filter(|&x| self.trace(f.mul(a, f.pow(x, self.n_classes as u64))) == b)
            .count() as u64)
    }

    /// Z(a, b) for every b ∈ GF(q) at once, indexed by the rank of b.
    pub fn z_profile(&self, a: Elem) -> Result<Vec<u64>> {
        if a.is_zero() {
            return Err(Error::Domain("z_profile requires a ≠ 0".into()));
        }
        let f = &self.field;
        let mut tally = vec![0u64; self.q as usize];
        for x in f.elements() {
            let t = self.trace(f.mul(a, f.pow(x, self.n_classes as u64)));
            let idx = self.gf_q.rank(t).expect("trace lands in GF(q)");
            tally[idx] += 1;
        }
        Ok(tally)
    }
}
