//! The Desarguesian plane PG(2,q), the conic pencil x² + bxy + y² + lz² = 0,
//! and the matrix groups stabilising it.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_factors, Elem, Field, FieldTower, Subfield};

/// A point of PG(2,q), first nonzero coordinate equal to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(pub [Elem; 3]);

/// A line of PG(2,q) given by its normalized coefficients (a, b, c): ax + by + cz = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine(pub [Elem; 3]);

/// Scales a nonzero triple so that its first nonzero entry is 1.
pub fn normalize(f: &Field, v: [Elem; 3]) -> Option<[Elem; 3]> {
    let lead = v.iter().copied().find(|x| !x.is_zero())?;
    if lead == Elem::ONE {
        return Some(v);
    }
    Some([f.div(v[0], lead), f.div(v[1], lead), f.div(v[2], lead)])
}

impl ProjPoint {
    pub fn new(f: &Field, v: [Elem; 3]) -> Option<ProjPoint> {
        normalize(f, v).map(ProjPoint)
    }

    pub fn coords(&self) -> [u32; 3] {
        [self.0[0].0, self.0[1].0, self.0[2].0]
    }

    /// The affine point (x, y, 1).
    pub fn affine(f: &Field, x: Elem, y: Elem) -> ProjPoint {
        ProjPoint::new(f, [x, y, Elem::ONE]).expect("z = 1")
    }

    pub fn is_affine(&self) -> bool {
        !self.0[2].is_zero()
    }
}

impl ProjLine {
    pub fn new(f: &Field, v: [Elem; 3]) -> Option<ProjLine> {
        normalize(f, v).map(ProjLine)
    }

    pub fn coords(&self) -> [u32; 3] {
        [self.0[0].0, self.0[1].0, self.0[2].0]
    }
}

#[inline]
fn dot(f: &Field, a: &[Elem; 3], b: &[Elem; 3]) -> Elem {
    f.mul(a[0], b[0]) + f.mul(a[1], b[1]) + f.mul(a[2], b[2])
}

/// PG(2,q) over the subfield GF(q) of a tower.
#[derive(Clone, Copy, Debug)]
pub struct Plane<'a> {
    tower: &'a FieldTower,
}

impl<'a> Plane<'a> {
    pub fn new(tower: &'a FieldTower) -> Plane<'a> {
        Plane { tower }
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn field(&self) -> &'a Field {
        self.tower.field()
    }

    pub fn gf_q(&self) -> &'a Subfield {
        self.tower.gf_q()
    }

    pub fn q(&self) -> u32 {
        self.tower.q
    }

    /// q² + q + 1, the number of points (and of lines).
    pub fn size(&self) -> usize {
        let q = self.q() as usize;
        q * q + q + 1
    }

    /// Rank of a normalized triple in lexicographic bitmask order.
    pub fn triple_index(&self, v: &[Elem; 3]) -> usize {
        let q = self.q() as usize;
        let rk = |x: Elem| self.gf_q().rank(x).expect("coordinate outside GF(q)");
        if v[0].is_zero() {
            if v[1].is_zero() {
                0
            } else {
                1 + rk(v[2])
            }
        } else {
            1 + q + rk(v[1]) * q + rk(v[2])
        }
    }

    /// Inverse of [`Plane::triple_index`].
    pub fn triple_at(&self, idx: usize) -> [Elem; 3] {
        let q = self.q() as usize;
        let el = self.gf_q().elems();
        if idx == 0 {
            [Elem::ZERO, Elem::ZERO, Elem::ONE]
        } else if idx <= q {
            [Elem::ZERO, Elem::ONE, el[idx - 1]]
        } else {
            let j = idx - 1 - q;
            [Elem::ONE, el[j / q], el[j % q]]
        }
    }

    pub fn point_index(&self, p: &ProjPoint) -> usize {
        self.triple_index(&p.0)
    }

    pub fn line_index(&self, l: &ProjLine) -> usize {
        self.triple_index(&l.0)
    }

    /// All points in canonical order.
    pub fn points(&self) -> Vec<ProjPoint> {
        (0..self.size()).map(|i| ProjPoint(self.triple_at(i))).collect()
    }

    /// All lines in canonical order.
    pub fn lines(&self) -> Vec<ProjLine> {
        (0..self.size()).map(|i| ProjLine(self.triple_at(i))).collect()
    }

    pub fn incident(&self, p: &ProjPoint, l: &ProjLine) -> bool {
        dot(self.field(), &p.0, &l.0).is_zero()
    }

    /// The q+1 normalized triples orthogonal to the normalized triple `v`.
    fn orthogonal_triples(&self, v: &[Elem; 3]) -> Vec<[Elem; 3]> {
        let f = self.field();
        let (z, o) = (Elem::ZERO, Elem::ONE);
        let (p1, p2) = if !v[0].is_zero() {
            ([v[1], o, z], [v[2], z, o])
        } else if !v[1].is_zero() {
            ([o, z, z], [z, v[2], o])
        } else {
            ([o, z, z], [z, o, z])
        };
        let mut out = Vec::with_capacity(self.q() as usize + 1);
        out.push(normalize(f, p1).expect("nonzero"));
        for &lam in self.gf_q().elems() {
            let w = [
                p2[0] + f.mul(lam, p1[0]),
                p2[1] + f.mul(lam, p1[1]),
                p2[2] + f.mul(lam, p1[2]),
            ];
            out.push(normalize(f, w).expect("independent spanning pair"));
        }
        out
    }

    pub fn points_on(&self, l: &ProjLine) -> Vec<ProjPoint> {
        self.orthogonal_triples(&l.0).into_iter().map(ProjPoint).collect()
    }

    pub fn lines_through(&self, p: &ProjPoint) -> Vec<ProjLine> {
        self.orthogonal_triples(&p.0).into_iter().map(ProjLine).collect()
    }

    /// The unique line through two distinct points.
    pub fn join(&self, p: &ProjPoint, r: &ProjPoint) -> Option<ProjLine> {
        if p == r {
            return None;
        }
        let f = self.field();
        let (a, b) = (&p.0, &r.0);
        // cross product; signs vanish in characteristic 2
        let c = [
            f.mul(a[1], b[2]) + f.mul(a[2], b[1]),
            f.mul(a[2], b[0]) + f.mul(a[0], b[2]),
            f.mul(a[0], b[1]) + f.mul(a[1], b[0]),
        ];
        ProjLine::new(f, c)
    }

    /// Q(x, y) = x² + bxy + y².
    pub fn quadratic_form(&self, b: Elem, x: Elem, y: Elem) -> Elem {
        let f = self.field();
        f.square(x) + f.mul(b, f.mul(x, y)) + f.square(y)
    }
}

/// The smallest-bitmask b ∈ GF(q)* for which x² + bx + 1 has no root in GF(q).
pub fn pencil_parameter(plane: &Plane<'_>) -> Elem {
    let f = plane.field();
    let gf = plane.gf_q();
    gf.nonzero()
        .find(|&b| {
            gf.elems()
                .iter()
                .all(|&x| !(f.square(x) + f.mul(b, x) + Elem::ONE).is_zero())
        })
        .expect("an irreducible x^2 + bx + 1 exists over every GF(2^h)")
}

/// The conic F_l: x² + bxy + y² + lz² = 0. F_0 degenerates to the nucleus alone.
#[derive(Clone, Debug)]
pub struct Conic {
    pub b: Elem,
    pub l: Elem,
    pub points: Vec<ProjPoint>,
    pub degenerate: bool,
}

/// The nucleus (0,0,1) shared by every conic of the pencil.
pub fn nucleus() -> ProjPoint {
    ProjPoint([Elem::ZERO, Elem::ZERO, Elem::ONE])
}

pub fn conic_points(plane: &Plane<'_>, b: Elem, l: Elem) -> Conic {
    if l.is_zero() {
        return Conic {
            b,
            l,
            points: vec![nucleus()],
            degenerate: true,
        };
    }
    let f = plane.field();
    let gf = plane.gf_q().elems();
    // z = 0 has no solutions when x² + bx + 1 is irreducible; checked anyway
    let mut points: Vec<ProjPoint> = plane
        .points()
        .into_iter()
        .filter(|p| {
            let [x, y, z] = p.0;
            (plane.quadratic_form(b, x, y) + f.mul(l, f.square(z))).is_zero()
        })
        .collect();
    points.sort_unstable();
    debug_assert!(gf.len() + 1 >= points.len());
    Conic {
        b,
        l,
        points,
        degenerate: false,
    }
}

/// A 3×3 invertible matrix over GF(q), row-major, acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Collineation(pub [Elem; 9]);

impl Collineation {
    pub fn identity() -> Collineation {
        let (z, o) = (Elem::ZERO, Elem::ONE);
        Collineation([o, z, z, z, o, z, z, z, o])
    }

    pub fn diagonal(a: Elem, b: Elem, c: Elem) -> Collineation {
        let z = Elem::ZERO;
        Collineation([a, z, z, z, b, z, z, z, c])
    }

    pub fn entries(&self) -> [u32; 9] {
        self.0.map(|e| e.0)
    }

    pub fn mul(&self, f: &Field, rhs: &Collineation) -> Collineation {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [Elem::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                out[3 * i + j] = f.mul(a[3 * i], b[j])
                    + f.mul(a[3 * i + 1], b[3 + j])
                    + f.mul(a[3 * i + 2], b[6 + j]);
            }
        }
        Collineation(out)
    }

    pub fn pow(&self, f: &Field, mut e: u64) -> Collineation {
        let mut acc = Collineation::identity();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    fn cofactors(&self, f: &Field) -> [Elem; 9] {
        let m = &self.0;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            f.mul(m[3 * r0 + c0], m[3 * r1 + c1]) + f.mul(m[3 * r0 + c1], m[3 * r1 + c0])
        };
        [
            minor(1, 2, 1, 2),
            minor(1, 2, 0, 2),
            minor(1, 2, 0, 1),
            minor(0, 2, 1, 2),
            minor(0, 2, 0, 2),
            minor(0, 2, 0, 1),
            minor(0, 1, 1, 2),
            minor(0, 1, 0, 2),
            minor(0, 1, 0, 1),
        ]
    }

    pub fn det(&self, f: &Field) -> Elem {
        let c = self.cofactors(f);
        f.mul(self.0[0], c[0]) + f.mul(self.0[1], c[1]) + f.mul(self.0[2], c[2])
    }

    pub fn inverse(&self, f: &Field) -> Option<Collineation> {
        let det = self.det(f);
        if det.is_zero() {
            return None;
        }
        let c = self.cofactors(f);
        let mut out = [Elem::ZERO; 9];
        // inverse = adj / det, adj = transpose of the cofactor matrix
        for i in 0..3 {
            for j in 0..3 {
                out[3 * i + j] = f.div(c[3 * j + i], det);
            }
        }
        Some(Collineation(out))
    }

    fn apply_raw(&self, f: &Field, v: &[Elem; 3]) -> [Elem; 3] {
        let m = &self.0;
        [
            f.mul(m[0], v[0]) + f.mul(m[1], v[1]) + f.mul(m[2], v[2]),
            f.mul(m[3], v[0]) + f.mul(m[4], v[1]) + f.mul(m[5], v[2]),
            f.mul(m[6], v[0]) + f.mul(m[7], v[1]) + f.mul(m[8], v[2]),
        ]
    }

    pub fn apply(&self, f: &Field, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(f, self.apply_raw(f, &p.0)).expect("invertible matrix")
    }

    /// Image of a line under the inverse-transpose action.
    pub fn apply_line(&self, f: &Field, l: &ProjLine) -> ProjLine {
        let inv = self.inverse(f).expect("invertible matrix");
        let m = &inv.0;
        let t = Collineation([m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]]);
        ProjLine::new(f, t.apply_raw(f, &l.0)).expect("invertible matrix")
    }
}

/// The q+1 matrices [[α+bβ, β, 0], [β, α, 0], [0, 0, 1]] with α² + bαβ + β² = 1.
pub fn group_g1(plane: &Plane<'_>, b: Elem) -> Vec<Collineation> {
    let f = plane.field();
    let gf = plane.gf_q().elems();
    let z = Elem::ZERO;
    let mut out = Vec::with_capacity(gf.len() + 1);
    for &a in gf {
        for &c in gf {
            if plane.quadratic_form(b, a, c) == Elem::ONE {
                out.push(Collineation([a + f.mul(b, c), c, z, c, a, z, z, z, Elem::ONE]));
            }
        }
    }
    out
}

/// The d−1 homologies diag(1, 1, γ), γ ∈ GF(d)*.
pub fn group_g2(tower: &FieldTower) -> Vec<Collineation> {
    tower
        .gf_d()
        .nonzero()
        .map(|g| Collineation::diagonal(Elem::ONE, Elem::ONE, g))
        .collect()
}

/// A finite matrix group stored by its full element list (identity first).
#[derive(Clone, Debug)]
pub struct Group {
    pub elements: Vec<Collineation>,
}

impl Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Multiplicative order of a group element, computed from the group order.
    pub fn element_order(&self, f: &Field, g: &Collineation) -> u64 {
        let mut ord = self.order() as u64;
        for p in prime_factors(ord) {
            while ord.is_multiple_of(p) && g.pow(f, ord / p) == Collineation::identity() {
                ord /= p;
            }
        }
        ord
    }

    /// First element, in closure order, whose order equals the group order.
    pub fn cyclic_generator(&self, f: &Field) -> Option<Collineation> {
        let ord = self.order() as u64;
        let primes = prime_factors(ord);
        self.elements
            .iter()
            .find(|g| {
                primes
                    .iter()
                    .all(|&p| g.pow(f, ord / p) != Collineation::identity())
            })
            .copied()
    }

    pub fn is_closed(&self, f: &Field) -> bool {
        let set: HashSet<_> = self.elements.iter().collect();
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| set.contains(&a.mul(f, b))))
    }

    pub fn orbit(&self, f: &Field, p: &ProjPoint) -> BTreeSet<ProjPoint> {
        self.elements.iter().map(|g| g.apply(f, p)).collect()
    }

    /// Splits `points` into orbits; each orbit is sorted and orbits are ordered by
    /// their least point. Points whose orbit leaves `points` still get their full orbit.
    pub fn orbits(&self, f: &Field, points: &[ProjPoint]) -> Vec<Vec<ProjPoint>> {
        let mut remaining: BTreeSet<ProjPoint> = points.iter().copied().collect();
        let mut out = Vec::new();
        while let Some(&p) = remaining.iter().next() {
            let orb = self.orbit(f, &p);
            for x in &orb {
                remaining.remove(x);
            }
            out.push(orb.into_iter().collect());
        }
        out
    }
}

/// Closure of `gens` under multiplication, by breadth-first search from the identity.
pub fn group_closure(f: &Field, gens: &[Collineation], cap: usize) -> Result<Group> {
    let id = Collineation::identity();
    let mut seen: HashSet<Collineation> = HashSet::from([id]);
    let mut elements = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(f, g);
            if seen.insert(y) {
                if elements.len() >= cap {
                    return Err(Error::SizeCap(format!("group closure exceeds {cap} elements")));
                }
                elements.push(y);
                queue.push_back(y);
            }
        }
    }
    Ok(Group { elements })
}
