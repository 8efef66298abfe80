//! Denniston maximal arcs: the pencil-of-conics construction, the partition of
//! AG(2,q) into arcs through a common nucleus, and the cyclotomic model that
//! identifies AG(2,q) with GF(q²).

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::plane::{conic_points, nucleus, Collineation, Group, Plane, ProjLine, ProjPoint};

/// A point set claimed to meet every line in 0 or `degree` points.
///
/// `points` carries a label order: canonical (sorted) for constructed arcs,
/// generator-column order for arcs read off a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalArc {
    pub q: u32,
    pub degree: u32,
    pub nucleus: Option<ProjPoint>,
    pub points: Vec<ProjPoint>,
}

impl MaximalArc {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// s = q/d.
    pub fn s(&self) -> u32 {
        self.q / self.degree
    }

    /// (sd − s + 1)d, the size a maximal arc of this degree must have.
    pub fn expected_size(&self) -> u64 {
        let (s, d) = (self.s() as u64, self.degree as u64);
        (s * d - s + 1) * d
    }

    /// The same arc with one point removed.
    pub fn without_point(&self, idx: usize) -> MaximalArc {
        let mut out = self.clone();
        out.points.remove(idx);
        out
    }
}

/// An additive subgroup of GF(q) (in characteristic 2: closed under addition, contains 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveSubgroup {
    elems: Vec<Elem>,
}

impl AdditiveSubgroup {
    pub fn new(tower: &FieldTower, mut elems: Vec<Elem>) -> Result<AdditiveSubgroup> {
        elems.sort_unstable();
        elems.dedup();
        if let Some(&x) = elems.iter().find(|&&x| !tower.gf_q().contains(x)) {
            return Err(Error::Domain(format!("{x} is not in GF(q)")));
        }
        if elems.first() != Some(&Elem::ZERO) {
            return Err(Error::NotSubgroup { a: 0, b: 0 });
        }
        for &a in &elems {
            for &b in &elems {
                if elems.binary_search(&(a + b)).is_err() {
                    return Err(Error::NotSubgroup { a: a.0, b: b.0 });
                }
            }
        }
        Ok(AdditiveSubgroup { elems })
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elems.binary_search(&x).is_ok()
    }
}

/// ∪_{l ∈ H} F_l for the pencil x² + bxy + y² + lz² = 0; F_0 contributes the nucleus.
pub fn denniston_arc(plane: &Plane<'_>, h: &AdditiveSubgroup, b: Elem) -> Result<MaximalArc> {
    let tower = plane.tower();
    let size = h.len() as u32;
    if size < 2 || !size.is_power_of_two() || !tower.q.is_multiple_of(size) {
        return Err(Error::Domain(format!(
            "subgroup order {size} does not divide q = {}",
            tower.q
        )));
    }
    let f = plane.field();
    let gf = plane.gf_q().elems();
    // No conic of the pencil with l ≠ ∞ meets z = 0, so only affine points qualify.
    let mut points = Vec::new();
    for &x in gf {
        for &y in gf {
            if h.contains(plane.quadratic_form(b, x, y)) {
                points.push(ProjPoint::affine(f, x, y));
            }
        }
    }
    points.sort_unstable();
    Ok(MaximalArc {
        q: tower.q,
        degree: size,
        nucleus: Some(nucleus()),
        points,
    })
}

/// Conic-by-conic construction of the same arc, used as a cross-check.
pub fn denniston_arc_from_conics(plane: &Plane<'_>, h: &AdditiveSubgroup, b: Elem) -> MaximalArc {
    let mut points: Vec<ProjPoint> = h
        .elems()
        .iter()
        .flat_map(|&l| conic_points(plane, b, l).points)
        .collect();
    points.sort_unstable();
    MaximalArc {
        q: plane.q(),
        degree: h.len() as u32,
        nucleus: Some(nucleus()),
        points,
    }
}

/// GF(d) as a subgroup of GF(q).
pub fn base_subgroup(tower: &FieldTower) -> AdditiveSubgroup {
    AdditiveSubgroup::new(tower, tower.gf_d().elems().to_vec()).expect("a subfield is a subgroup")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    pub degree: u32,
    /// intersection size → number of lines
    pub histogram: BTreeMap<usize, usize>,
    pub secant_lines: usize,
    pub external_lines: usize,
    /// |A|(q+1)/d when integral.
    pub expected_secants: Option<u64>,
    pub first_bad_line: Option<ProjLine>,
    pub passed: bool,
}

/// Intersects the arc with every line of PG(2,q). Each distinct arc point adds
/// one to the q+1 lines through it, so every line ends with its exact
/// intersection size and untouched lines meet the arc in 0 points.
pub fn verify_maximal(plane: &Plane<'_>, arc: &MaximalArc) -> MaximalityReport {
    let distinct: BTreeSet<ProjPoint> = arc.points.iter().copied().collect();
    let d = arc.degree as usize;
    let sizes: Vec<usize> = distinct
        .par_iter()
        .fold(
            || vec![0usize; plane.size()],
            |mut acc, p| {
                for l in plane.lines_through(p) {
                    acc[plane.line_index(&l)] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0usize; plane.size()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut histogram = BTreeMap::new();
    for &s in &sizes {
        *histogram.entry(s).or_insert(0) += 1;
    }
    let first_bad_line = sizes
        .iter()
        .position(|&s| s != 0 && s != d)
        .map(|i| ProjLine(plane.triple_at(i)));
    let numer = arc.points.len() as u64 * (plane.q() as u64 + 1);
    MaximalityReport {
        degree: arc.degree,
        secant_lines: histogram.get(&d).copied().unwrap_or(0),
        external_lines: histogram.get(&0).copied().unwrap_or(0),
        expected_secants: numer.is_multiple_of(d as u64).then(|| numer / d as u64),
        passed: first_bad_line.is_none(),
        histogram,
        first_bad_line,
    }
}

/// Arcs A_i = ∪_{l ∈ H_i} F_l, H_i = {0} ∪ (i-th coset of GF(d)* in GF(q)*).
#[derive(Clone, Debug)]
pub struct ArcPartition {
    pub q: u32,
    pub nucleus: ProjPoint,
    pub subgroups: Vec<AdditiveSubgroup>,
    pub arcs: Vec<MaximalArc>,
}

/// The multiplicative cosets of GF(d)* in GF(q)*, each with 0 adjoined, with
/// representatives ω^i (ω = α^(q+1)) in ascending exponent order.
pub fn coset_subgroups(tower: &FieldTower) -> Result<Vec<AdditiveSubgroup>> {
    let f = tower.field();
    let omega = f.pow(tower.alpha(), tower.q as u64 + 1);
    (0..tower.n_classes)
        .map(|i| {
            let rep = f.pow(omega, i as u64);
            let mut elems: Vec<Elem> = tower.gf_d().nonzero().map(|g| f.mul(rep, g)).collect();
            elems.push(Elem::ZERO);
            AdditiveSubgroup::new(tower, elems)
        })
        .collect()
}

pub fn build_partition(plane: &Plane<'_>, b: Elem) -> Result<ArcPartition> {
    let subgroups = coset_subgroups(plane.tower())?;
    let arcs = subgroups
        .iter()
        .map(|h| denniston_arc(plane, h, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(ArcPartition {
        q: plane.q(),
        nucleus: nucleus(),
        subgroups,
        arcs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub arc_count: usize,
    pub expected_count: usize,
    /// every H_i has order d
    pub subgroup_orders_ok: bool,
    /// H_i ∩ H_j = {0} for i ≠ j
    pub subgroups_disjoint: bool,
    /// every arc contains the nucleus and pairwise intersections are exactly {nucleus}
    pub nucleus_only_overlap: bool,
    /// every point of AG(2,q) is covered, and nothing at infinity
    pub covers_affine_plane: bool,
    pub covered_points: usize,
    pub passed: bool,
}

impl ArcPartition {
    pub fn check(&self, plane: &Plane<'_>) -> PartitionReport {
        let tower = plane.tower();
        let expected_count = tower.n_classes as usize;
        let d = tower.d as usize;
        let subgroup_orders_ok = self.subgroups.iter().all(|h| h.len() == d);
        let mut owner = vec![0usize; tower.q as usize];
        for h in &self.subgroups {
            for x in h.elems().iter().filter(|x| !x.is_zero()) {
                owner[tower.gf_q().rank(*x).expect("in GF(q)")] += 1;
            }
        }
        let subgroups_disjoint = owner.iter().skip(1).all(|&c| c <= 1);

        let mut cover = vec![0usize; plane.size()];
        for arc in &self.arcs {
            for p in &arc.points {
                cover[plane.point_index(p)] += 1;
            }
        }
        let nucleus_idx = plane.point_index(&self.nucleus);
        let nucleus_only_overlap = cover[nucleus_idx] == self.arcs.len()
            && cover
                .iter()
                .enumerate()
                .all(|(i, &c)| i == nucleus_idx || c <= 1);
        let points = plane.points();
        let covers_affine_plane = points
            .iter()
            .zip(&cover)
            .all(|(p, &c)| (c > 0) == p.is_affine());
        let covered_points = cover.iter().filter(|&&c| c > 0).count();
        let passed = self.arcs.len() == expected_count
            && subgroup_orders_ok
            && subgroups_disjoint
            && nucleus_only_overlap
            && covers_affine_plane
            && covered_points == (tower.q as usize).pow(2);
        PartitionReport {
            arc_count: self.arcs.len(),
            expected_count,
            subgroup_orders_ok,
            subgroups_disjoint,
            nucleus_only_overlap,
            covers_affine_plane,
            covered_points,
            passed,
        }
    }
}

/// Coordinates (u, v) of x = u + vθ in the GF(q)-basis {1, θ} of GF(r).
pub fn affine_coords(tower: &FieldTower, theta: Elem, x: Elem) -> (Elem, Elem) {
    let f = tower.field();
    let v = f.div(tower.trace(x), tower.trace(theta));
    (x + f.mul(v, theta), v)
}

/// C_0^(N,r) ∪ {0} placed in AG(2,q) via the basis {1, θ}; θ defaults to α.
pub fn cyclotomic_arc(plane: &Plane<'_>, theta: Option<Elem>) -> Result<MaximalArc> {
    let tower = plane.tower();
    let theta = theta.unwrap_or_else(|| tower.alpha());
    if tower.gf_q().contains(theta) {
        return Err(Error::Domain(format!("θ = {theta} lies in GF(q)")));
    }
    let f = plane.field();
    let mut points: Vec<ProjPoint> = tower
        .cyclotomic_class(0)?
        .into_iter()
        .chain(std::iter::once(Elem::ZERO))
        .map(|x| {
            let (u, v) = affine_coords(tower, theta, x);
            ProjPoint::affine(f, u, v)
        })
        .collect();
    points.sort_unstable();
    Ok(MaximalArc {
        q: tower.q,
        degree: tower.d,
        nucleus: Some(nucleus()),
        points,
    })
}

#[derive(Clone, Debug)]
pub struct GroupActionReport {
    pub group_order: usize,
    pub nucleus_fixed: bool,
    /// every orbit of an arc point stays inside the arc
    pub stabilises: bool,
    /// orbit sizes on the arc minus its nucleus, in orbit order
    pub orbit_sizes: Vec<usize>,
    pub transitive: bool,
    pub sharply_transitive: bool,
    pub generator: Option<Collineation>,
    pub generator_order: Option<u64>,
}

impl GroupActionReport {
    pub fn cyclic(&self) -> bool {
        self.generator_order == Some(self.group_order as u64)
    }
}

pub fn verify_group_action(
    plane: &Plane<'_>,
    arc: &MaximalArc,
    group: &Group,
) -> GroupActionReport {
    let f = plane.field();
    let nucleus = arc.nucleus.unwrap_or_else(nucleus);
    let nucleus_fixed = group.elements.iter().all(|g| g.apply(f, &nucleus) == nucleus);
    let rest: Vec<ProjPoint> = arc.points.iter().copied().filter(|p| *p != nucleus).collect();
    let arc_set: HashSet<ProjPoint> = arc.points.iter().copied().collect();
    let orbits = group.orbits(f, &rest);
    let stabilises = orbits.iter().flatten().all(|p| arc_set.contains(p));
    let orbit_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let transitive = stabilises && orbits.len() == 1 && orbit_sizes[0] == rest.len();
    let sharply_transitive = transitive && group.order() == rest.len();
    let generator = group.cyclic_generator(f);
    let generator_order = generator.map(|g| group.element_order(f, &g));
    GroupActionReport {
        group_order: group.order(),
        nucleus_fixed,
        stabilises,
        orbit_sizes,
        transitive,
        sharply_transitive,
        generator,
        generator_order,
    }
}
