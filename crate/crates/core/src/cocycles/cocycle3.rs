use std::collections::BTreeMap;

use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupElt};
use crate::error::{MextError, Result};
use crate::filtration::carry;
use crate::limits;
use crate::qforms::QZ;

/// Largest `|A|` for the brute-force cocycle identity.
pub const COCYCLE_CHECK_LIMIT: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleType {
    I,
    II,
    III,
}

impl std::str::FromStr for CocycleType {
    type Err = MextError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "1" => Ok(CocycleType::I),
            "II" | "2" => Ok(CocycleType::II),
            "III" | "3" => Ok(CocycleType::III),
            _ => Err(MextError::Parse(format!("cocycle type {s:?} (expected I, II or III)"))),
        }
    }
}

/// `ω = Σ_i c_i ω_i + Σ_{i<j} c_ij ω_ij + Σ_{i<j<k} c_ijk ω_ijk` with
/// `ω_i(x, y, z) = x_i carry_i(y, z) / n_i`,
/// `ω_ij(x, y, z) = x_i carry_j(y, z) / gcd(n_i, n_j)`,
/// `ω_ijk(x, y, z) = x_i y_j z_k / gcd(n_i, n_j, n_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle3 {
    group: FinAbGroup,
    type_i: Vec<i64>,
    type_ii: BTreeMap<(usize, usize), i64>,
    type_iii: BTreeMap<(usize, usize, usize), i64>,
}

#[derive(Serialize, Deserialize)]
struct RawCocycle3 {
    #[serde(rename = "A")]
    group: FinAbGroup,
    #[serde(rename = "typeI")]
    type_i: Vec<i64>,
    #[serde(rename = "typeII", default)]
    type_ii: BTreeMap<String, i64>,
    #[serde(rename = "typeIII", default)]
    type_iii: BTreeMap<String, i64>,
}

fn parse_key(k: &str, len: usize) -> Result<Vec<usize>> {
    let v: Vec<usize> = k
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| MextError::Parse(format!("index {p:?}: {e}"))))
        .collect::<Result<_>>()?;
    if v.len() != len {
        return Err(MextError::Parse(format!("key {k:?} needs {len} indices")));
    }
    Ok(v)
}

impl Serialize for Cocycle3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawCocycle3 {
            group: self.group.clone(),
            type_i: self.type_i.clone(),
            type_ii: self
                .type_ii
                .iter()
                .map(|(&(i, j), &c)| (format!("{i},{j}"), c))
                .collect(),
            type_iii: self
                .type_iii
                .iter()
                .map(|(&(i, j, k), &c)| (format!("{i},{j},{k}"), c))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cocycle3 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawCocycle3::deserialize(d)?;
        let conv = || -> Result<Cocycle3> {
            let mut w = Cocycle3::zero(&raw.group);
            if raw.type_i.len() != raw.group.rank() {
                return Err(MextError::Range("typeI needs one coefficient per factor".into()));
            }
            for (i, &c) in raw.type_i.iter().enumerate() {
                w = w.add(&standard_cocycle(&raw.group, CocycleType::I, &[i], c)?)?;
            }
            for (k, &c) in &raw.type_ii {
                w = w.add(&standard_cocycle(&raw.group, CocycleType::II, &parse_key(k, 2)?, c)?)?;
            }
            for (k, &c) in &raw.type_iii {
                w = w.add(&standard_cocycle(&raw.group, CocycleType::III, &parse_key(k, 3)?, c)?)?;
            }
            Ok(w)
        };
        conv().map_err(D::Error::custom)
    }
}

pub fn standard_cocycle(a: &FinAbGroup, ty: CocycleType, idx: &[usize], c: i64) -> Result<Cocycle3> {
    let r = a.rank();
    let n = a.moduli();
    let need = match ty {
        CocycleType::I => 1,
        CocycleType::II => 2,
        CocycleType::III => 3,
    };
    if idx.len() != need {
        return Err(MextError::Range(format!("type {ty:?} needs {need} indices")));
    }
    if idx.iter().any(|&i| i >= r) {
        return Err(MextError::Range(format!("index out of range for rank {r}")));
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MextError::Range("indices must be strictly increasing".into()));
    }
    let mut w = Cocycle3::zero(a);
    match ty {
        CocycleType::I => w.type_i[idx[0]] = c.rem_euclid(n[idx[0]]),
        CocycleType::II => {
            let g = gcd(n[idx[0]], n[idx[1]]);
            w.type_ii.insert((idx[0], idx[1]), c.rem_euclid(g));
        }
        CocycleType::III => {
            let g = gcd(gcd(n[idx[0]], n[idx[1]]), n[idx[2]]);
            w.type_iii.insert((idx[0], idx[1], idx[2]), c.rem_euclid(g));
        }
    }
    Ok(w.pruned())
}

impl Cocycle3 {
    pub fn zero(a: &FinAbGroup) -> Self {
        Cocycle3 {
            group: a.clone(),
            type_i: vec![0; a.rank()],
            type_ii: BTreeMap::new(),
            type_iii: BTreeMap::new(),
        }
    }

    fn pruned(mut self) -> Self {
        self.type_ii.retain(|_, c| *c != 0);
        self.type_iii.retain(|_, c| *c != 0);
        self
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.type_i.iter().all(|&c| c == 0) && self.type_ii.is_empty() && self.type_iii.is_empty()
    }

    pub fn add(&self, other: &Cocycle3) -> Result<Cocycle3> {
        if self.group != other.group {
            return Err(MextError::GroupMismatch("cocycles on different groups".into()));
        }
        let n = self.group.moduli();
        let mut w = self.clone();
        for (i, c) in w.type_i.iter_mut().enumerate() {
            *c = (*c + other.type_i[i]).rem_euclid(n[i]);
        }
        for (&(i, j), &c) in &other.type_ii {
            let e = w.type_ii.entry((i, j)).or_insert(0);
            *e = (*e + c).rem_euclid(gcd(n[i], n[j]));
        }
        for (&(i, j, k), &c) in &other.type_iii {
            let e = w.type_iii.entry((i, j, k)).or_insert(0);
            *e = (*e + c).rem_euclid(gcd(gcd(n[i], n[j]), n[k]));
        }
        Ok(w.pruned())
    }

    pub fn scale(&self, k: i64) -> Cocycle3 {
        let mut w = Cocycle3::zero(&self.group);
        for _ in 0..k.rem_euclid(self.group.exponent().max(1)) {
            w = w.add(self).expect("same group");
        }
        w
    }

    /// `ω(x, y, z) ∈ Q/Z`.
    pub fn eval(&self, x: &GroupElt, y: &GroupElt, z: &GroupElt) -> QZ {
        let n = self.group.moduli();
        let mut v = QZ::ZERO;
        for (i, &c) in self.type_i.iter().enumerate() {
            if c != 0 && carry(n[i], y.coords[i], z.coords[i]) == 1 {
                v += QZ::new(c * x.coords[i], n[i]);
            }
        }
        for (&(i, j), &c) in &self.type_ii {
            if carry(n[j], y.coords[j], z.coords[j]) == 1 {
                v += QZ::new(c * x.coords[i], gcd(n[i], n[j]));
            }
        }
        for (&(i, j, k), &c) in &self.type_iii {
            let g = gcd(gcd(n[i], n[j]), n[k]);
            v += QZ::new(c * x.coords[i] * y.coords[j] * z.coords[k], g);
        }
        v
    }

    /// Checks `δω = 0` on every quadruple.
    pub fn check_cocycle(&self) -> Result<()> {
        check_identity(&self.group, &|x, y, z| self.eval(x, y, z))
    }
}

fn check_identity(a: &FinAbGroup, f: &dyn Fn(&GroupElt, &GroupElt, &GroupElt) -> QZ) -> Result<()> {
    limits::check("group for the 3-cocycle identity", a.order(), COCYCLE_CHECK_LIMIT)?;
    let els: Vec<GroupElt> = a.elements().collect();
    let s = els.len();
    let mut table = vec![QZ::ZERO; s * s * s];
    for (i, x) in els.iter().enumerate() {
        for (j, y) in els.iter().enumerate() {
            for (k, z) in els.iter().enumerate() {
                table[(i * s + j) * s + k] = f(x, y, z);
            }
        }
    }
    let sum = |i: usize, j: usize| a.index_of(&a.add(&els[i], &els[j]));
    let w = |i: usize, j: usize, k: usize| table[(i * s + j) * s + k];
    for p in 0..s {
        for q in 0..s {
            let pq = sum(p, q);
            for u in 0..s {
                let qu = sum(q, u);
                for v in 0..s {
                    let d = w(q, u, v) - w(pq, u, v) + w(p, qu, v) - w(p, q, sum(u, v)) + w(p, q, u);
                    if !d.is_zero() {
                        return Err(MextError::Invariant(format!(
                            "3-cocycle identity fails at {:?}, {:?}, {:?}, {:?}",
                            els[p].coords, els[q].coords, els[u].coords, els[v].coords
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
