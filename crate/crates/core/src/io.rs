//! JSON/CSV file formats for fields, arcs, partitions, groups, codes and designs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arcs::{base_subgroup, build_partition, denniston_arc, ArcPartition, MaximalArc};
use crate::codes::{
    arc_from_code, augment, build_irreducible_cyclic, build_short_code, extend,
    weight_distribution, LinearCode,
};
use crate::designs::{
    complementary_steiner, dual_weight3_design, supports_of_weight, MAX_DESIGN_POINTS,
};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldDescription, FieldTower};
use crate::plane::{
    group_closure, group_g1, group_g2, pencil_parameter, Collineation, Group, Plane, ProjPoint,
};
use crate::suite::{enumeration_fits, MAX_GROUP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcFile {
    pub q: u32,
    pub d: u32,
    pub nucleus: Option<[u32; 3]>,
    pub points: Vec<[u32; 3]>,
}

impl ArcFile {
    /// Points are written in canonical (sorted) order.
    pub fn from_arc(arc: &MaximalArc) -> ArcFile {
        let mut points: Vec<[u32; 3]> = arc.points.iter().map(ProjPoint::coords).collect();
        points.sort_unstable();
        ArcFile {
            q: arc.q,
            d: arc.degree,
            nucleus: arc.nucleus.map(|p| p.coords()),
            points,
        }
    }

    /// Validates every triple against the tower (GF(q) coordinates, normalized).
    pub fn to_arc(&self, tower: &FieldTower) -> Result<MaximalArc> {
        if self.q != tower.q {
            return Err(Error::Inconsistent(format!(
                "arc file is over GF({}), tower has q = {}",
                self.q, tower.q
            )));
        }
        if self.d == 0 {
            return Err(Error::Inconsistent("arc degree 0".into()));
        }
        let point = |c: &[u32; 3]| -> Result<ProjPoint> {
            let v = c.map(Elem);
            if v.iter().any(|&x| !tower.gf_q().contains(x)) {
                return Err(Error::Inconsistent(format!("{c:?} has a coordinate outside GF(q)")));
            }
            let p = ProjPoint::new(tower.field(), v)
                .ok_or_else(|| Error::Inconsistent("zero triple".into()))?;
            if p.0 != v {
                return Err(Error::Inconsistent(format!("{c:?} is not normalized")));
            }
            Ok(p)
        };
        Ok(MaximalArc {
            q: self.q,
            degree: self.d,
            nucleus: self.nucleus.as_ref().map(point).transpose()?,
            points: self.points.iter().map(point).collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub q: u32,
    pub d: u32,
    pub nucleus: [u32; 3],
    pub arcs: Vec<ArcFile>,
}

impl PartitionFile {
    pub fn from_partition(p: &ArcPartition, d: u32) -> PartitionFile {
        PartitionFile {
            q: p.q,
            d,
            nucleus: p.nucleus.coords(),
            arcs: p.arcs.iter().map(ArcFile::from_arc).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub q: u32,
    pub order: usize,
    pub generator: Option<[u32; 9]>,
    pub g1: Vec<[u32; 9]>,
    pub g2: Vec<[u32; 9]>,
}

impl GroupFile {
    pub fn new(
        q: u32,
        order: usize,
        generator: Option<Collineation>,
        g1: &[Collineation],
        g2: &[Collineation],
    ) -> GroupFile {
        GroupFile {
            q,
            order,
            generator: generator.map(|g| g.entries()),
            g1: g1.iter().map(Collineation::entries).collect(),
            g2: g2.iter().map(Collineation::entries).collect(),
        }
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out")
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    s.push('\n');
    write_atomic(path, s.as_bytes())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes the field, arc, partition, group, the four codes, their weight
/// distributions (when enumerable) and the designs (when v ≤ 64) into `dir`.
/// Output is a pure function of the tower.
pub fn construct(tower: &FieldTower, dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let plane = Plane::new(tower);
    let f = tower.field();
    let b = pencil_parameter(&plane);
    let mut written = Vec::new();
    let mut put = |name: &str, write: &dyn Fn(&Path) -> std::io::Result<()>| {
        let path = dir.join(name);
        write(&path)?;
        written.push(path);
        Ok::<_, std::io::Error>(())
    };

    put("field.json", &|p| write_json(p, &tower.description()))?;
    let arc = denniston_arc(&plane, &base_subgroup(tower), b)?;
    put("arc.json", &|p| write_json(p, &ArcFile::from_arc(&arc)))?;
    let part = build_partition(&plane, b)?;
    put("partition.json", &|p| {
        write_json(p, &PartitionFile::from_partition(&part, tower.d))
    })?;

    let g1 = group_g1(&plane, b);
    let g2 = group_g2(tower);
    let gens: Vec<Collineation> = [
        Group { elements: g1.clone() }.cyclic_generator(f),
        Group { elements: g2.clone() }.cyclic_generator(f),
    ]
    .into_iter()
    .flatten()
    .filter(|g| *g != Collineation::identity())
    .collect();
    let group = group_closure(f, &gens, MAX_GROUP)?;
    let file = GroupFile::new(tower.q, group.order(), group.cyclic_generator(f), &g1, &g2);
    put("group.json", &|p| write_json(p, &file))?;

    let c = build_irreducible_cyclic(tower);
    let aug = augment(tower, &c)?;
    let ext = extend(&aug);
    let codes: [(&str, &LinearCode); 4] = [
        ("irreducible", &c),
        ("short", &build_short_code(tower)),
        ("augmented", &aug),
        ("extended", &ext),
    ];
    for (name, code) in codes {
        put(&format!("code_{name}.json"), &|p| write_json(p, code))?;
        if !enumeration_fits(code) {
            continue;
        }
        if let Ok(wd) = weight_distribution(tower, code) {
            put(&format!("weights_{name}.csv"), &|p| {
                write_atomic(p, wd.to_csv().as_bytes())
            })?;
        }
    }

    if ext.length <= MAX_DESIGN_POINTS {
        let k = (tower.n + 1 - tower.d) as usize;
        let lambda = (k * (k - 1)) as u64 / (tower.d as u64 * (tower.d as u64 - 1));
        let (design, _) = supports_of_weight(tower, &ext, k)?;
        put("design_min_weight.json", &|p| write_json(p, &design.to_file(2, lambda)))?;
        let steiner = complementary_steiner(&plane, &arc_from_code(tower, &ext)?);
        put("design_steiner.json", &|p| write_json(p, &steiner.to_file(2, 1)))?;
        if tower.m > 1 {
            let dual = dual_weight3_design(tower, &ext)?;
            put("design_dual3.json", &|p| {
                write_json(p, &dual.design.to_file(2, tower.d as u64 - 2))
            })?;
        }
    }
    Ok(written)
}

/// Checks that `dir/field.json`, when present, describes `tower`.
pub fn check_field_file(tower: &FieldTower, dir: &Path) -> anyhow::Result<()> {
    let path = dir.join("field.json");
    if path.exists() {
        let found: FieldDescription = read_json(&path)?;
        anyhow::ensure!(
            found == tower.description(),
            "{} describes {:?}, but the requested field is {:?}",
            path.display(),
            found,
            tower.description()
        );
    }
    Ok(())
}

/// The arc stored in `dir/arc.json`, if any, after checking that the stored
/// field and degree belong to `tower`.
pub fn load_arc(tower: &FieldTower, dir: &Path) -> anyhow::Result<Option<MaximalArc>> {
    check_field_file(tower, dir)?;
    let path = dir.join("arc.json");
    if !path.exists() {
        return Ok(None);
    }
    let file: ArcFile = read_json(&path)?;
    anyhow::ensure!(
        file.d == tower.d,
        "{} holds an arc of degree {}, expected {}",
        path.display(),
        file.d,
        tower.d
    );
    Ok(Some(file.to_arc(tower)?))
}
