//! Support designs of fixed-weight codewords and the Steiner design cut out of
//! a maximal arc by the lines of the plane.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arcs::MaximalArc;
use crate::codes::{class_representatives, dual_supports, weight, LinearCode};
use crate::combinatorics::{binomial, combination_rank, for_each_combination};
use crate::error::{Error, Result};
use crate::field::FieldTower;
use crate::plane::Plane;

/// Largest point set whose t-subsets are counted exhaustively.
pub const MAX_DESIGN_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: u64,
}

/// Blocks are sorted index sets over 0..v, listed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
    pub declared: Option<DesignParams>,
}

/// On-disk form of a verified design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: u64,
    pub blocks: Vec<Vec<usize>>,
}

impl Design {
    pub fn new(v: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Design {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        Design {
            v,
            blocks,
            declared: None,
        }
    }

    pub fn with_declared(mut self, params: DesignParams) -> Design {
        self.declared = Some(params);
        self
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Complement of every block within 0..v.
    pub fn complement(&self) -> Design {
        Design::new(
            self.v,
            self.blocks.iter().map(|b| {
                let set: BTreeSet<usize> = b.iter().copied().collect();
                (0..self.v).filter(|i| !set.contains(i)).collect()
            }),
        )
    }

    pub fn without_block(&self, idx: usize) -> Design {
        let mut out = self.clone();
        out.blocks.remove(idx);
        out
    }

    pub fn to_file(&self, t: usize, lambda: u64) -> DesignFile {
        DesignFile {
            t,
            v: self.v,
            k: self.blocks.first().map_or(0, Vec::len),
            lambda,
            blocks: self.blocks.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportExtraction {
    pub weight: usize,
    /// scalar classes of codewords of this weight
    pub classes: usize,
    /// distinct supports among them
    pub distinct: usize,
}

impl SupportExtraction {
    /// Every class has its own support.
    pub fn injective(&self) -> bool {
        self.classes == self.distinct
    }
}

/// One support per scalar class of weight-`w` codewords, deduplicated.
pub fn supports_of_weight(
    tower: &FieldTower,
    code: &LinearCode,
    w: usize,
) -> Result<(Design, SupportExtraction)> {
    let mut classes = 0;
    let mut supports = BTreeSet::new();
    for (_, word) in class_representatives(tower, code)? {
        if weight(&word) == w {
            classes += 1;
            supports.insert(
                word.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, _)| i)
                    .collect::<Vec<_>>(),
            );
        }
    }
    let extraction = SupportExtraction {
        weight: w,
        classes,
        distinct: supports.len(),
    };
    Ok((Design::new(code.length, supports), extraction))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignCheck {
    pub t: usize,
    pub block_size: Option<usize>,
    pub lambda: Option<u64>,
    pub repeated_blocks: usize,
    pub is_design: bool,
}

impl DesignCheck {
    /// b·C(k, t) = λ·C(v, t), the standard double count.
    pub fn double_count_holds(&self, design: &Design) -> bool {
        match (self.block_size, self.lambda) {
            (Some(k), Some(lambda)) => {
                binomial(k as u64, self.t as u64).unwrap() * design.block_count() as u128
                    == binomial(design.v as u64, self.t as u64).unwrap() * lambda as u128
            }
            _ => false,
        }
    }
}

/// Counts, for every t-subset of points, the blocks containing it.
pub fn verify_design(design: &Design, t: usize) -> Result<DesignCheck> {
    let v = design.v;
    if v > MAX_DESIGN_POINTS {
        return Err(Error::SizeCap(format!(
            "{v} points exceed the design cap of {MAX_DESIGN_POINTS}"
        )));
    }
    for b in &design.blocks {
        if b.windows(2).any(|w| w[0] >= w[1]) || b.iter().any(|&x| x >= v) {
            return Err(Error::Inconsistent(format!("malformed block {b:?}")));
        }
    }
    let sizes: BTreeSet<usize> = design.blocks.iter().map(Vec::len).collect();
    let block_size = (sizes.len() == 1).then(|| *sizes.first().unwrap());
    if let Some(k) = block_size {
        if t > k {
            return Err(Error::Domain(format!("t = {t} exceeds block size {k}")));
        }
    }
    let mut multiplicity = BTreeMap::new();
    for b in &design.blocks {
        *multiplicity.entry(b).or_insert(0usize) += 1;
    }
    let repeated_blocks = multiplicity.values().map(|&c| c - 1).sum();

    let slots = binomial(v as u64, t as u64).unwrap() as usize;
    let mut tally = vec![0u64; slots];
    let mut sub = vec![0usize; t];
    for b in &design.blocks {
        for_each_combination(b.len(), t, |pos| {
            for (s, &p) in sub.iter_mut().zip(pos) {
                *s = b[p];
            }
            tally[combination_rank(&sub, v)] += 1;
            true
        });
    }
    let lambda = tally
        .first()
        .copied()
        .filter(|&l| tally.iter().all(|&c| c == l));
    Ok(DesignCheck {
        t,
        block_size,
        lambda,
        repeated_blocks,
        is_design: block_size.is_some() && lambda.is_some(),
    })
}

/// Nonempty intersections of the arc with the lines of PG(2,q), with arc
/// points labelled by their position in `arc.points`.
pub fn complementary_steiner(plane: &Plane<'_>, arc: &MaximalArc) -> Design {
    let mut label = vec![usize::MAX; plane.size()];
    for (i, p) in arc.points.iter().enumerate() {
        label[plane.point_index(p)] = i;
    }
    let blocks = plane.lines().into_iter().filter_map(|l| {
        let block: Vec<usize> = plane
            .points_on(&l)
            .iter()
            .map(|p| label[plane.point_index(p)])
            .filter(|&i| i != usize::MAX)
            .collect();
        (!block.is_empty()).then_some(block)
    });
    Design::new(arc.points.len(), blocks).with_declared(DesignParams {
        t: 2,
        v: arc.points.len(),
        k: arc.degree as usize,
        lambda: 1,
    })
}

#[derive(Clone, Debug)]
pub struct DualWeight3Design {
    pub design: Design,
    /// scalar classes of weight-3 dual codewords
    pub classes: usize,
    /// no weight-3 dual codewords at all
    pub empty: bool,
}

/// Supports of the weight-3 codewords of the dual code, one per scalar class.
pub fn dual_weight3_design(tower: &FieldTower, code: &LinearCode) -> Result<DualWeight3Design> {
    let supports = dual_supports(tower, code, 3)?;
    let classes = supports.len();
    let distinct: BTreeSet<Vec<usize>> = supports.into_iter().collect();
    let design = Design::new(code.length, distinct);
    Ok(DualWeight3Design {
        empty: classes == 0,
        classes,
        design,
    })
}
