//! Trace codes over GF(q): the irreducible cyclic code C(q,2,n), the short code
//! E(q,2,q+1), their augmented and extended versions, exact weight
//! distributions, dual distances and the MacWilliams transform.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcs::MaximalArc;
use crate::combinatorics::{binomial, binomial_row, for_each_combination};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldTower};
use crate::plane::{Plane, ProjLine, ProjPoint};

/// Largest message space enumerated exhaustively.
pub const MAX_CODEWORDS: u64 = 1 << 28;

/// Largest number of column subsets searched by the dual-weight routines.
pub const MAX_SUBSETS: u128 = 50_000_000;

/// A linear code over GF(q) given by a generator matrix whose entries are
/// GF(q) elements encoded in the tower's top field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearCode {
    pub q: u32,
    pub length: usize,
    pub gen: Vec<Vec<Elem>>,
}

impl LinearCode {
    pub fn new(q: u32, gen: Vec<Vec<Elem>>) -> LinearCode {
        let length = gen.first().map_or(0, Vec::len);
        LinearCode { q, length, gen }
    }

    /// Number of generator rows (equal to the dimension when they are independent).
    pub fn rows(&self) -> usize {
        self.gen.len()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        self.gen.iter().map(|row| row[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.length).map(|j| self.column(j)).collect()
    }

    /// The codeword m·G.
    pub fn encode(&self, f: &Field, msg: &[Elem]) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; self.length];
        for (m, row) in msg.iter().zip(&self.gen) {
            if m.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o += f.mul(*m, g);
            }
        }
        out
    }
}

pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|x| !x.is_zero()).count()
}

/// Exact weight counts; absent weights have count zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: BTreeMap<usize, BigUint>,
}

impl WeightDistribution {
    pub fn from_counts<I, C>(counts: I) -> WeightDistribution
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigUint>,
    {
        let mut wd = WeightDistribution::default();
        for (w, c) in counts {
            let c = c.into();
            if !c.is_zero() {
                *wd.counts.entry(w).or_default() += c;
            }
        }
        wd
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(&w).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().map(|(w, c)| (*w, c))
    }

    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    /// `weight,count` rows sorted by weight.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,count\n");
        for (w, c) in &self.counts {
            writeln!(s, "{w},{c}").unwrap();
        }
        s
    }

    /// Polynomial notation, e.g. `1 + 45z^4 + 18z^6`.
    pub fn enumerator(&self) -> String {
        self.counts
            .iter()
            .map(|(w, c)| if *w == 0 { c.to_string() } else { format!("{c}z^{w}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

// ---------------------------------------------------------------------------
// Linear algebra over the field.

/// Row-reduces `m` in place and returns the pivot columns.
pub fn row_reduce(f: &Field, m: &mut [Vec<Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            let s = row[c];
            if i != r && !s.is_zero() {
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x += f.mul(s, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(f, &mut m).len()
}

/// A basis of {x : M x = 0}.
pub fn null_space(f: &Field, m: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut m = m.to_vec();
    let pivots = row_reduce(f, &mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![Elem::ZERO; cols];
            x[free] = Elem::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                // characteristic 2: −m[i][free] = m[i][free]
                x[p] = m[i][free];
            }
            x
        })
        .collect()
}

/// Scales a vector so that its first nonzero entry is 1.
fn normalize_vec(f: &Field, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = v.iter().copied().find(|x| !x.is_zero())?;
    Some(v.iter().map(|&x| f.div(x, lead)).collect())
}

fn submatrix(code: &LinearCode, cols: &[usize]) -> Vec<Vec<Elem>> {
    code.gen
        .iter()
        .map(|row| cols.iter().map(|&c| row[c]).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// The trace codes.

/// (Tr(aβ^0), Tr(aβ^1), …, Tr(aβ^(length−1))).
pub fn trace_codeword(tower: &FieldTower, a: Elem, length: usize) -> Vec<Elem> {
    let f = tower.field();
    let beta = tower.beta();
    let mut x = a;
    (0..length)
        .map(|_| {
            let t = tower.trace(x);
            x = f.mul(x, beta);
            t
        })
        .collect()
}

fn trace_code(tower: &FieldTower, length: usize) -> LinearCode {
    let gen = vec![
        trace_codeword(tower, Elem::ONE, length),
        trace_codeword(tower, tower.alpha(), length),
    ];
    LinearCode::new(tower.q, gen)
}

/// C(q,2,n) = {c_a : a ∈ GF(r)}, generated by c_1 and c_α.
pub fn build_irreducible_cyclic(tower: &FieldTower) -> LinearCode {
    trace_code(tower, tower.n as usize)
}

/// E(q,2,q+1) = {e_a : a ∈ GF(r)}, the first q+1 coordinates of c_a.
pub fn build_short_code(tower: &FieldTower) -> LinearCode {
    trace_code(tower, tower.q as usize + 1)
}

/// Whether the cyclic shift of every generator row stays in the code.
pub fn is_cyclic(tower: &FieldTower, code: &LinearCode) -> bool {
    let f = tower.field();
    let dim = rank(f, &code.gen);
    let mut rows = code.gen.clone();
    for row in &code.gen {
        let mut shifted = row.clone();
        shifted.rotate_right(1);
        rows.push(shifted);
    }
    rank(f, &rows) == dim
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcatenationReport {
    pub checked: usize,
    pub mismatches: usize,
    /// β^((q+1)i) for i = 0..d−1
    pub scalars: Vec<Elem>,
    pub scalars_are_gf_d_star: bool,
    pub passed: bool,
}

/// Checks c_a = e_a ‖ β^(q+1) e_a ‖ … ‖ β^((q+1)(d−2)) e_a for every a ∈ GF(r).
pub fn check_concatenation(tower: &FieldTower) -> ConcatenationReport {
    let all: Vec<Elem> = tower.field().elements().collect();
    check_concatenation_on(tower, &all)
}

/// The same identity for the given values of a only. Both sides are
/// GF(q)-linear in a, so {1, α} already covers GF(r).
pub fn check_concatenation_on(tower: &FieldTower, values: &[Elem]) -> ConcatenationReport {
    let f = tower.field();
    let block = tower.q as usize + 1;
    let step = f.pow(tower.beta(), block as u64);
    let scalars: Vec<Elem> = (0..tower.d as u64 - 1).map(|i| f.pow(step, i)).collect();
    let mut sorted = scalars.clone();
    sorted.sort_unstable();
    let gf_d_star: Vec<Elem> = tower.gf_d().nonzero().collect();
    let scalars_are_gf_d_star = sorted == gf_d_star;

    let mismatches = values
        .par_iter()
        .filter(|&&a| {
            let c = trace_codeword(tower, a, tower.n as usize);
            let e = trace_codeword(tower, a, block);
            c.chunks(block)
                .zip(&scalars)
                .any(|(chunk, &s)| chunk.iter().zip(&e).any(|(&x, &y)| x != f.mul(s, y)))
        })
        .count();
    ConcatenationReport {
        checked: values.len(),
        mismatches,
        scalars,
        scalars_are_gf_d_star,
        passed: mismatches == 0 && scalars_are_gf_d_star,
    }
}

/// Appends the all-one row; rejected when the all-one vector is already a codeword.
pub fn augment(tower: &FieldTower, code: &LinearCode) -> Result<LinearCode> {
    let f = tower.field();
    let mut gen = code.gen.clone();
    gen.push(vec![Elem::ONE; code.length]);
    if rank(f, &gen) != rank(f, &code.gen) + 1 {
        return Err(Error::Domain("all-one vector already in the code".into()));
    }
    Ok(LinearCode::new(code.q, gen))
}

/// Appends an overall parity coordinate (the sum of all coordinates).
pub fn extend(code: &LinearCode) -> LinearCode {
    let gen = code
        .gen
        .iter()
        .map(|row| {
            let parity = row.iter().fold(Elem::ZERO, |acc, &x| acc + x);
            let mut r = row.clone();
            r.push(parity);
            r
        })
        .collect();
    LinearCode::new(code.q, gen)
}

/// Codeword parameters (a, b) of c_a + b·1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodewordHandle {
    pub a: Elem,
    pub b: Elem,
}

impl CodewordHandle {
    /// c_a + b·1 of length n.
    pub fn augmented_word(&self, tower: &FieldTower) -> Vec<Elem> {
        trace_codeword(tower, self.a, tower.n as usize)
            .into_iter()
            .map(|x| x + self.b)
            .collect()
    }

    /// (c_a + b·1, b).
    pub fn extended_word(&self, tower: &FieldTower) -> Vec<Elem> {
        let mut w = self.augmented_word(tower);
        w.push(self.b);
        w
    }
}

/// The extended augmented code, i.e. the length n+1 two-weight code.
pub fn build_extended(tower: &FieldTower) -> Result<LinearCode> {
    Ok(extend(&augment(tower, &build_irreducible_cyclic(tower))?))
}

// ---------------------------------------------------------------------------
// Weight distributions.

fn message_space(code: &LinearCode) -> Result<u64> {
    let total = (code.q as u64)
        .checked_pow(code.rows() as u32)
        .filter(|&t| t <= MAX_CODEWORDS)
        .ok_or_else(|| {
            Error::SizeCap(format!(
                "{}^{} codewords exceed the enumeration cap",
                code.q,
                code.rows()
            ))
        })?;
    Ok(total)
}

/// The idx-th message with leading nonzero entry 1, ordered by leading position
/// then by the remaining entries in ascending GF(q) rank.
fn projective_message(elems: &[Elem], k: usize, mut idx: u64) -> Vec<Elem> {
    let q = elems.len() as u64;
    let mut msg = vec![Elem::ZERO; k];
    for lead in 0..k {
        let block = q.pow((k - 1 - lead) as u32);
        if idx < block {
            msg[lead] = Elem::ONE;
            for j in (lead + 1..k).rev() {
                msg[j] = elems[(idx % q) as usize];
                idx /= q;
            }
            return msg;
        }
        idx -= block;
    }
    unreachable!("index beyond the projective message count")
}

fn projective_count(q: u64, k: usize) -> u64 {
    (0..k).map(|i| q.pow(i as u32)).sum()
}

/// Exact weight distribution. Codewords are enumerated one per scalar class
/// (leading message coefficient 1) and each class contributes q−1 codewords.
pub fn weight_distribution(tower: &FieldTower, code: &LinearCode) -> Result<WeightDistribution> {
    message_space(code)?;
    let f = tower.field();
    let elems = tower.gf_q().elems();
    let k = code.rows();
    let classes = projective_count(code.q as u64, k);
    let tally = (0..classes)
        .into_par_iter()
        .fold(
            || vec![0u64; code.length + 1],
            |mut acc, idx| {
                let msg = projective_message(elems, k, idx);
                acc[weight(&code.encode(f, &msg))] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; code.length + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let scale = code.q as u64 - 1;
    Ok(WeightDistribution::from_counts(
        std::iter::once((0usize, BigUint::one())).chain(
            tally
                .into_iter()
                .enumerate()
                .map(|(w, c)| (w, BigUint::from(c * scale))),
        ),
    ))
}

/// One codeword per scalar class, in message order.
pub fn class_representatives<'a>(
    tower: &'a FieldTower,
    code: &'a LinearCode,
) -> Result<impl Iterator<Item = (Vec<Elem>, Vec<Elem>)> + 'a> {
    message_space(code)?;
    let f = tower.field();
    let elems = tower.gf_q().elems();
    let k = code.rows();
    Ok((0..projective_count(code.q as u64, k)).map(move |idx| {
        let msg = projective_message(elems, k, idx);
        let word = code.encode(f, &msg);
        (msg, word)
    }))
}

// ---------------------------------------------------------------------------
// Dual code: low weights by column-subset search.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualDistance {
    /// Smallest dependent column set, with a dual codeword supported on it
    /// (last nonzero coefficient scaled to 1).
    Exact {
        distance: usize,
        witness: Vec<(usize, Elem)>,
    },
    /// No dependent set of size ≤ limit.
    AtLeast(usize),
}

impl DualDistance {
    pub fn value(&self) -> Option<usize> {
        match self {
            DualDistance::Exact { distance, .. } => Some(*distance),
            DualDistance::AtLeast(_) => None,
        }
    }
}

impl std::fmt::Display for DualDistance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DualDistance::Exact { distance, .. } => write!(f, "{distance}"),
            DualDistance::AtLeast(w) => write!(f, ">= {w}"),
        }
    }
}

fn scale_last_to_one(f: &Field, v: Vec<(usize, Elem)>) -> Vec<(usize, Elem)> {
    let last = v.iter().rev().find(|(_, x)| !x.is_zero()).map(|&(_, x)| x);
    match last {
        Some(s) => v.into_iter().map(|(i, x)| (i, f.div(x, s))).collect(),
        None => v,
    }
}

/// Smallest w ≤ limit for which some w generator columns are dependent.
pub fn dual_distance_upto(
    tower: &FieldTower,
    code: &LinearCode,
    limit: usize,
) -> Result<DualDistance> {
    if limit > 4 {
        return Err(Error::Domain(format!("dual distance limit {limit} > 4")));
    }
    let f = tower.field();
    let cols = code.columns();
    if limit >= 1 {
        if let Some(j) = cols.iter().position(|c| c.iter().all(|x| x.is_zero())) {
            return Ok(DualDistance::Exact {
                distance: 1,
                witness: vec![(j, Elem::ONE)],
            });
        }
    }
    if limit >= 2 {
        let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
        for (j, c) in cols.iter().enumerate() {
            let key = normalize_vec(f, c).expect("nonzero column");
            if let Some(&i) = seen.get(&key) {
                let lead = c.iter().position(|x| !x.is_zero()).unwrap();
                let ratio = f.div(c[lead], cols[i][lead]);
                return Ok(DualDistance::Exact {
                    distance: 2,
                    witness: scale_last_to_one(f, vec![(i, ratio), (j, Elem::ONE)]),
                });
            }
            seen.insert(key, j);
        }
    }
    for w in 3..=limit {
        let mut found = None;
        for_each_combination(code.length, w, |subset| {
            let m = submatrix(code, subset);
            if rank(f, &m) < w {
                let kernel = null_space(f, &m);
                let v = subset.iter().copied().zip(kernel[0].iter().copied()).collect();
                found = Some(scale_last_to_one(f, v));
                false
            } else {
                true
            }
        });
        if let Some(witness) = found {
            return Ok(DualDistance::Exact { distance: w, witness });
        }
    }
    Ok(DualDistance::AtLeast(limit + 1))
}

/// Whether `word` is orthogonal to every generator row.
pub fn in_dual(f: &Field, code: &LinearCode, word: &[(usize, Elem)]) -> bool {
    code.gen.iter().all(|row| {
        word.iter()
            .fold(Elem::ZERO, |acc, &(i, x)| acc + f.mul(x, row[i]))
            .is_zero()
    })
}

/// Number of x ∈ (GF(q)*)^w with M x = 0, by enumerating the null space.
fn full_support_kernel_count(tower: &FieldTower, m: &[Vec<Elem>]) -> u64 {
    let f = tower.field();
    let basis = null_space(f, m);
    if basis.is_empty() {
        return 0;
    }
    let w = basis[0].len();
    let elems = tower.gf_q().elems();
    let q = elems.len() as u64;
    let mut count = 0;
    for idx in 0..q.pow(basis.len() as u32) {
        let mut x = vec![Elem::ZERO; w];
        let mut rest = idx;
        for b in &basis {
            let c = elems[(rest % q) as usize];
            rest /= q;
            for (xi, &bi) in x.iter_mut().zip(b) {
                *xi += f.mul(c, bi);
            }
        }
        if x.iter().all(|v| !v.is_zero()) {
            count += 1;
        }
    }
    count
}

/// Exact A_1^⊥, …, A_upto^⊥ by searching all column subsets of each size.
pub fn dual_low_weight_counts(
    tower: &FieldTower,
    code: &LinearCode,
    upto: usize,
) -> Result<Vec<BigUint>> {
    let f = tower.field();
    let mut out = Vec::with_capacity(upto);
    for w in 1..=upto {
        let subsets = binomial(code.length as u64, w as u64).unwrap_or(u128::MAX);
        if subsets > MAX_SUBSETS {
            return Err(Error::SizeCap(format!(
                "C({}, {w}) column subsets exceed the search cap",
                code.length
            )));
        }
        let mut total = 0u64;
        for_each_combination(code.length, w, |subset| {
            let m = submatrix(code, subset);
            if rank(f, &m) < w {
                total += full_support_kernel_count(tower, &m);
            }
            true
        });
        out.push(BigUint::from(total));
    }
    Ok(out)
}

/// Supports of the weight-w dual codewords, one entry per scalar class.
pub fn dual_supports(tower: &FieldTower, code: &LinearCode, w: usize) -> Result<Vec<Vec<usize>>> {
    let subsets = binomial(code.length as u64, w as u64).unwrap_or(u128::MAX);
    if subsets > MAX_SUBSETS {
        return Err(Error::SizeCap(format!(
            "C({}, {w}) column subsets exceed the search cap",
            code.length
        )));
    }
    let f = tower.field();
    let scale = tower.q as u64 - 1;
    let mut out = Vec::new();
    for_each_combination(code.length, w, |subset| {
        let m = submatrix(code, subset);
        if rank(f, &m) < w {
            let classes = full_support_kernel_count(tower, &m) / scale;
            for _ in 0..classes {
                out.push(subset.to_vec());
            }
        }
        true
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// MacWilliams transform.

fn krawtchouk_sums(
    wd: &WeightDistribution,
    length: usize,
    q: u32,
    upto: usize,
) -> Vec<BigInt> {
    let qm1 = BigInt::from(q - 1);
    let mut pow = vec![BigInt::one()];
    for t in 1..=upto {
        let next = &pow[t - 1] * &qm1;
        pow.push(next);
    }
    let mut sums = vec![BigInt::zero(); upto + 1];
    for (i, a_i) in wd.iter() {
        let a_i = BigInt::from(a_i.clone());
        let row_i = binomial_row(i);
        let row_c = binomial_row(length - i);
        for (j, s) in sums.iter_mut().enumerate() {
            // K_j(i) = Σ_h (−1)^h (q−1)^(j−h) C(i,h) C(len−i, j−h)
            let mut k = BigInt::zero();
            for h in 0..=j.min(i) {
                if j - h > length - i {
                    continue;
                }
                let term = &pow[j - h] * BigInt::from(&row_i[h] * &row_c[j - h]);
                if h % 2 == 0 {
                    k += term;
                } else {
                    k -= term;
                }
            }
            *s += &a_i * k;
        }
    }
    sums
}

/// A_0^⊥, …, A_upto^⊥ of the dual of a length-`length`, dimension-`dimension`
/// code over GF(q) with weight distribution `wd`, in exact integer arithmetic.
pub fn macwilliams_coefficients(
    wd: &WeightDistribution,
    length: usize,
    dimension: usize,
    q: u32,
    upto: usize,
) -> Result<Vec<BigUint>> {
    let size = BigUint::from(q).pow(dimension as u32);
    if wd.total() != size {
        return Err(Error::Inconsistent(format!(
            "weights sum to {} instead of {q}^{dimension}",
            wd.total()
        )));
    }
    if wd.iter().any(|(w, _)| w > length) {
        return Err(Error::Inconsistent("weight exceeds length".into()));
    }
    let upto = upto.min(length);
    let size = BigInt::from(size);
    krawtchouk_sums(wd, length, q, upto)
        .into_iter()
        .enumerate()
        .map(|(j, s)| {
            if s.is_negative() || !(&s % &size).is_zero() {
                return Err(Error::Inconsistent(format!(
                    "coefficient {j} of the transform is {s}/{size}, not a nonnegative integer"
                )));
            }
            Ok((s / &size).to_biguint().expect("nonnegative"))
        })
        .collect()
}

/// Full dual weight distribution.
pub fn macwilliams_transform(
    wd: &WeightDistribution,
    length: usize,
    dimension: usize,
    q: u32,
) -> Result<WeightDistribution> {
    let coeffs = macwilliams_coefficients(wd, length, dimension, q, length)?;
    Ok(WeightDistribution::from_counts(coeffs.into_iter().enumerate()))
}

// ---------------------------------------------------------------------------
// Projective codes and arcs.

/// No zero column and no two proportional columns.
pub fn is_projective(tower: &FieldTower, code: &LinearCode) -> bool {
    let f = tower.field();
    let mut seen = std::collections::HashSet::new();
    code.columns()
        .iter()
        .all(|c| normalize_vec(f, c).is_some_and(|key| seen.insert(key)))
}

/// Reads the generator columns of a projective dimension-3 code as points of
/// PG(2,q), in column order. The degree is length − (minimum weight).
pub fn arc_from_code(tower: &FieldTower, code: &LinearCode) -> Result<MaximalArc> {
    let f = tower.field();
    if code.rows() != 3 || rank(f, &code.gen) != 3 {
        return Err(Error::Domain("arc_from_code needs a dimension-3 code".into()));
    }
    if !is_projective(tower, code) {
        return Err(Error::Domain("code is not projective".into()));
    }
    let wd = weight_distribution(tower, code)?;
    let min = wd.min_nonzero_weight().expect("nonzero code");
    let points = code
        .columns()
        .into_iter()
        .map(|c| ProjPoint::new(f, [c[0], c[1], c[2]]).expect("nonzero column"))
        .collect();
    Ok(MaximalArc {
        q: code.q,
        degree: (code.length - min) as u32,
        nucleus: None,
        points,
    })
}

/// Counts scalar classes whose codeword weight differs from
/// length − |line ∩ arc|, the line having the message as coefficients.
pub fn hyperplane_mismatches(
    tower: &FieldTower,
    code: &LinearCode,
    arc: &MaximalArc,
) -> Result<usize> {
    let plane = Plane::new(tower);
    let f = tower.field();
    let mut mismatches = 0;
    for (msg, word) in class_representatives(tower, code)? {
        let line = ProjLine::new(f, [msg[0], msg[1], msg[2]]).expect("nonzero message");
        let meet = arc.points.iter().filter(|p| plane.incident(p, &line)).count();
        if weight(&word) != code.length - meet {
            mismatches += 1;
        }
    }
    Ok(mismatches)
}

/// Converts a weight distribution count to u64 when it fits.
pub fn count_u64(c: &BigUint) -> Option<u64> {
    c.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(m: u32, k: u32) -> FieldTower {
        FieldTower::new(m, k).unwrap()
    }

    /// Enumerates every message, no scalar-class shortcut.
    fn brute_distribution(t: &FieldTower, code: &LinearCode) -> WeightDistribution {
        let f = t.field();
        let elems = t.gf_q().elems();
        let q = elems.len() as u64;
        let k = code.rows();
        let mut tally = BTreeMap::<usize, u64>::new();
        for idx in 0..q.pow(k as u32) {
            let mut rest = idx;
            let msg: Vec<Elem> = (0..k)
                .map(|_| {
                    let e = elems[(rest % q) as usize];
                    rest /= q;
                    e
                })
                .collect();
            *tally.entry(weight(&code.encode(f, &msg))).or_default() += 1;
        }
        WeightDistribution::from_counts(tally)
    }

    /// The dual code by brute force over GF(q)^length.
    fn brute_dual_distribution(t: &FieldTower, code: &LinearCode) -> WeightDistribution {
        let f = t.field();
        let elems = t.gf_q().elems();
        let q = elems.len() as u64;
        let mut tally = BTreeMap::<usize, u64>::new();
        for idx in 0..q.pow(code.length as u32) {
            let mut rest = idx;
            let v: Vec<(usize, Elem)> = (0..code.length)
                .map(|i| {
                    let e = elems[(rest % q) as usize];
                    rest /= q;
                    (i, e)
                })
                .collect();
            if in_dual(f, code, &v) {
                *tally
                    .entry(v.iter().filter(|(_, x)| !x.is_zero()).count())
                    .or_default() += 1;
            }
        }
        WeightDistribution::from_counts(tally)
    }

    #[test]
    fn trace_codewords_have_constant_weight() {
        let t = tower(1, 2);
        assert_eq!(weight(&trace_codeword(&t, Elem::ZERO, 5)), 0);
        for a in t.field().elements().skip(1) {
            assert_eq!(weight(&trace_codeword(&t, a, 5)), 4);
        }
    }

    #[test]
    fn irreducible_cyclic_small() {
        let t = tower(1, 2);
        let c = build_irreducible_cyclic(&t);
        assert_eq!((c.length, rank(t.field(), &c.gen)), (5, 2));
        let wd = weight_distribution(&t, &c).unwrap();
        assert_eq!(wd, WeightDistribution::from_counts([(0, 1u32), (4, 15)]));
        assert_eq!(wd, brute_distribution(&t, &c));
        assert!(is_cyclic(&t, &c));

        let t = tower(2, 1);
        let c = build_irreducible_cyclic(&t);
        assert_eq!(
            weight_distribution(&t, &c).unwrap(),
            WeightDistribution::from_counts([(0, 1u32), (12, 15)])
        );
    }

    #[test]
    fn shift_is_multiplication_by_beta() {
        let t = tower(2, 2);
        let f = t.field();
        for a in f.elements() {
            let mut c = trace_codeword(&t, a, t.n as usize);
            c.rotate_left(1);
            assert_eq!(c, trace_codeword(&t, f.mul(a, t.beta()), t.n as usize));
        }
    }

    #[test]
    fn short_code_is_mds() {
        for (m, k) in [(1, 2), (2, 2), (1, 3)] {
            let t = tower(m, k);
            let e = build_short_code(&t);
            let wd = weight_distribution(&t, &e).unwrap();
            assert_eq!(wd.min_nonzero_weight(), Some(t.q as usize));
            assert_eq!(dual_distance_upto(&t, &e, 4).unwrap().value(), Some(3));
        }
        let t = tower(1, 2);
        assert_eq!(build_short_code(&t), build_irreducible_cyclic(&t));
    }

    #[test]
    fn concatenation_identity() {
        for (m, k) in [(1, 2), (2, 1), (2, 2)] {
            let rep = check_concatenation(&tower(m, k));
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn augmented_and_extended() {
        let t = tower(1, 2);
        let c = build_irreducible_cyclic(&t);
        let aug = augment(&t, &c).unwrap();
        assert_eq!(rank(t.field(), &aug.gen), 3);
        assert!(augment(&t, &aug).is_err());
        let ext = extend(&aug);
        assert_eq!(ext.length, 6);
        let wd = weight_distribution(&t, &ext).unwrap();
        assert_eq!(wd, WeightDistribution::from_counts([(0, 1u32), (4, 45), (6, 18)]));
        assert_eq!(wd, brute_distribution(&t, &ext));
        assert_eq!(extend(&LinearCode::new(4, vec![vec![Elem::ZERO; 3]])).gen[0], vec![Elem::ZERO; 4]);
    }

    #[test]
    fn extension_coordinate_equals_b() {
        let t = tower(2, 2);
        let f = t.field();
        let ext = build_extended(&t).unwrap();
        for a in f.elements() {
            for &b in t.gf_q().elems() {
                let h = CodewordHandle { a, b };
                let w = h.extended_word(&t);
                assert_eq!(*w.last().unwrap(), b);
                // a = λ + μα with λ, μ ∈ GF(q)
                let (lam, mu) = crate::arcs::affine_coords(&t, t.alpha(), a);
                assert_eq!(ext.encode(f, &[lam, mu, b]), w);
            }
        }
    }

    #[test]
    fn dual_distances() {
        let t = tower(2, 2);
        let c = build_irreducible_cyclic(&t);
        match dual_distance_upto(&t, &c, 4).unwrap() {
            DualDistance::Exact { distance, witness } => {
                assert_eq!(distance, 2);
                let beta_q1 = t.field().pow(t.beta(), t.q as u64 + 1);
                assert_eq!(witness, vec![(0, beta_q1), (t.q as usize + 1, Elem::ONE)]);
                assert!(in_dual(t.field(), &c, &witness));
            }
            other => panic!("{other:?}"),
        }
        let ext = build_extended(&t).unwrap();
        assert_eq!(dual_distance_upto(&t, &ext, 4).unwrap().value(), Some(3));
        assert!(is_projective(&t, &ext));
        assert!(!is_projective(&t, &c));

        let t = tower(1, 2);
        let ext = build_extended(&t).unwrap();
        assert_eq!(dual_distance_upto(&t, &ext, 4).unwrap().value(), Some(4));
        assert_eq!(dual_distance_upto(&t, &ext, 3).unwrap(), DualDistance::AtLeast(4));
        assert!(dual_distance_upto(&t, &ext, 5).is_err());
    }

    #[test]
    fn macwilliams_matches_brute_dual() {
        let t = tower(1, 2);
        for code in [build_irreducible_cyclic(&t), build_extended(&t).unwrap()] {
            let wd = weight_distribution(&t, &code).unwrap();
            let dual = macwilliams_transform(&wd, code.length, code.rows(), t.q).unwrap();
            assert_eq!(dual, brute_dual_distribution(&t, &code));
            let back =
                macwilliams_transform(&dual, code.length, code.length - code.rows(), t.q).unwrap();
            assert_eq!(back, wd);
            let low = dual_low_weight_counts(&t, &code, 3).unwrap();
            for (w, c) in low.iter().enumerate() {
                assert_eq!(*c, dual.count(w + 1));
            }
        }
    }

    #[test]
    fn macwilliams_rejects_inconsistent_input() {
        let wd = WeightDistribution::from_counts([(0, 1u32), (3, 2)]);
        assert!(macwilliams_transform(&wd, 4, 1, 3 + 1).is_err());
        let wd = WeightDistribution::from_counts([(0, 1u32), (1, 3)]);
        assert!(macwilliams_transform(&wd, 0, 1, 4).is_err());
        // right total (16 = 4^2), but A_1^⊥ would be −9/4
        let wd = WeightDistribution::from_counts([(0, 1u32), (3, 15)]);
        assert!(matches!(
            macwilliams_transform(&wd, 3, 2, 4),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn arc_read_off_extended_code() {
        let t = tower(1, 2);
        let ext = build_extended(&t).unwrap();
        let arc = arc_from_code(&t, &ext).unwrap();
        assert_eq!((arc.len(), arc.degree), (6, 2));
        assert!(crate::arcs::verify_maximal(&Plane::new(&t), &arc).passed);
        assert_eq!(hyperplane_mismatches(&t, &ext, &arc).unwrap(), 0);
        assert!(arc_from_code(&t, &build_irreducible_cyclic(&t)).is_err());
    }
}
