use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupElt};
use crate::error::{MextError, Result};
use crate::limits;
use crate::qforms::QZ;

/// Largest `|A|` for the cochain-solving route of [`epsilon`].
pub const EPSILON_LIMIT: u64 = 64;

/// An abelian 2-cocycle `A × A → Â` in the carry basis:
/// `L_{x,y}(z) = Σ_i carry_i(x, y) Σ_j m_ij z_j / n_j`,
/// with `carry_i(x, y) = 1` exactly when `x_i + y_i ≥ n_i`.
/// `m_ij` is taken modulo `gcd(n_i, n_j)`, which is `Ext(Z_{n_i}, Ẑ_{n_j})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCocycle")]
pub struct AbCocycle2 {
    group: FinAbGroup,
    m: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawCocycle {
    group: FinAbGroup,
    m: Vec<Vec<i64>>,
}

impl TryFrom<RawCocycle> for AbCocycle2 {
    type Error = MextError;
    fn try_from(r: RawCocycle) -> Result<Self> {
        AbCocycle2::new(r.group, r.m)
    }
}

pub(crate) fn carry(n: i64, a: i64, b: i64) -> i64 {
    i64::from(a + b >= n)
}

impl AbCocycle2 {
    pub fn new(group: FinAbGroup, m: Vec<Vec<i64>>) -> Result<Self> {
        let r = group.rank();
        if m.len() != r || m.iter().any(|row| row.len() != r) {
            return Err(MextError::Range(format!("cocycle matrix must be {r}×{r}")));
        }
        let n = group.moduli();
        let m = (0..r)
            .map(|i| (0..r).map(|j| m[i][j].rem_euclid(gcd(n[i], n[j]))).collect())
            .collect();
        Ok(AbCocycle2 { group, m })
    }

    pub fn zero(group: &FinAbGroup) -> Self {
        let r = group.rank();
        AbCocycle2 {
            group: group.clone(),
            m: vec![vec![0; r]; r],
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|&v| v == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.group.rank();
        (0..r).all(|i| (0..r).all(|j| self.m[i][j] == self.m[j][i]))
    }

    pub fn transpose(&self) -> AbCocycle2 {
        let r = self.group.rank();
        let m = (0..r).map(|i| (0..r).map(|j| self.m[j][i]).collect()).collect();
        AbCocycle2::new(self.group.clone(), m).expect("square matrix")
    }

    pub fn add(&self, other: &AbCocycle2) -> Result<AbCocycle2> {
        if self.group != other.group {
            return Err(MextError::GroupMismatch("cocycles on different groups".into()));
        }
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        AbCocycle2::new(self.group.clone(), m)
    }

    /// The character `L_{x,y}`, as an element of `Â`.
    pub fn character(&self, x: &GroupElt, y: &GroupElt) -> GroupElt {
        let n = self.group.moduli();
        let r = self.group.rank();
        let mut phi = vec![0i64; r];
        for i in 0..r {
            if carry(n[i], x.coords[i], y.coords[i]) == 1 {
                for (j, p) in phi.iter_mut().enumerate() {
                    *p += self.m[i][j];
                }
            }
        }
        self.group.reduce(&phi)
    }

    /// `L_{x,y}(z) ∈ Q/Z`.
    pub fn eval(&self, x: &GroupElt, y: &GroupElt, z: &GroupElt) -> QZ {
        let phi = self.character(x, y);
        crate::qforms::pairing(&self.group, z, &phi)
    }
}

/// Index tables for `A`: `add[x][y]` and the multiples `k e_i`.
struct Tables {
    size: usize,
    add: Vec<usize>,
    /// `mult[i][k] = index of k e_i`, `k = 0..n_i`
    mult: Vec<Vec<usize>>,
    /// `prefix[x][i] = index of (x_0, …, x_{i−1}, 0, …)`
    prefix: Vec<Vec<usize>>,
    coords: Vec<Vec<i64>>,
}

impl Tables {
    fn new(a: &FinAbGroup) -> Self {
        let els: Vec<GroupElt> = a.elements().collect();
        let size = els.len();
        let mut add = Vec::with_capacity(size * size);
        for x in &els {
            for y in &els {
                add.push(a.index_of(&a.add(x, y)));
            }
        }
        let mult = (0..a.rank())
            .map(|i| (0..a.moduli()[i]).map(|k| a.index_of(&a.scale(&a.basis(i), k))).collect())
            .collect();
        let prefix = els
            .iter()
            .map(|x| {
                (0..=a.rank())
                    .map(|i| {
                        let mut c = x.coords.clone();
                        c[i..].iter_mut().for_each(|v| *v = 0);
                        a.index_of(&GroupElt::new(c))
                    })
                    .collect()
            })
            .collect();
        let coords = els.into_iter().map(|x| x.coords).collect();
        Tables {
            size,
            add,
            mult,
            prefix,
            coords,
        }
    }
}

/// Normalized `a` with `a(x) + a(y) − a(x + y) = f(x, y)`, built one cyclic
/// factor at a time and then checked on every pair. Values are integers mod
/// `d` standing for `v/d ∈ Q/Z`; `f` must take values in `(e/d)Z` where `e`
/// is the exponent and `e² | d`.
fn solve_cochain(a: &FinAbGroup, t: &Tables, d: i64, f: &dyn Fn(usize, usize) -> i64) -> Result<Vec<i64>> {
    let n = a.moduli();
    let r = a.rank();
    // values on multiples of each generator
    let mut cyc: Vec<Vec<i64>> = Vec::with_capacity(r);
    for i in 0..r {
        let e = t.mult[i][1 % n[i] as usize];
        let s = t.mult[i].iter().map(|&k| f(k, e)).sum::<i64>().rem_euclid(d);
        let alpha = s / n[i];
        let mut vals = vec![0];
        for k in 1..n[i] as usize {
            vals.push((vals[k - 1] + alpha - f(t.mult[i][k - 1], e)).rem_euclid(d));
        }
        cyc.push(vals);
    }
    let mut table = vec![0i64; t.size];
    for (x, c) in t.coords.iter().enumerate() {
        let mut val = 0;
        for i in 0..r {
            let k = c[i] as usize;
            val += cyc[i][k] - f(t.prefix[x][i], t.mult[i][k]);
        }
        table[x] = val.rem_euclid(d);
    }
    for x in 0..t.size {
        for y in 0..t.size {
            let lhs = table[x] + table[y] - table[t.add[x * t.size + y]];
            if (lhs - f(x, y)).rem_euclid(d) != 0 {
                return Err(MextError::Internal(format!(
                    "cochain solve failed at x = {:?}, y = {:?}",
                    t.coords[x], t.coords[y]
                )));
            }
        }
    }
    Ok(table)
}

/// The duality involution, computed from scratch: for every `z` solve
/// `L_{x,y}(z) = a_z(x) + a_z(y) − a_z(x + y)`, then read off the class of
/// `ε(L)_{x,y}(z) = a_x(z) + a_y(z) − a_{x+y}(z)` in the carry basis.
pub fn epsilon(l: &AbCocycle2) -> Result<AbCocycle2> {
    let a = l.group();
    limits::check("group for the ε cochain solve", a.order(), EPSILON_LIMIT)?;
    let t = Tables::new(a);
    let n = a.moduli();
    let r = a.rank();
    let e = a.exponent();
    let d = e * e;
    let size = t.size;
    // chars[x][y] = L_{x,y} as coordinates in Â
    let mut chars = Vec::with_capacity(size * size);
    for x in &t.coords {
        for y in &t.coords {
            chars.push(l.character(&GroupElt::new(x.clone()), &GroupElt::new(y.clone())).coords);
        }
    }
    // L_{x,y}(z)·d = Σ_j z_j φ_j (d / n_j)
    let pair = |z: usize, phi: &[i64]| -> i64 {
        (0..r).map(|j| t.coords[z][j] * phi[j] * (d / n[j])).sum::<i64>().rem_euclid(d)
    };
    // cochains[z][x] = a_z(x)
    let mut cochains = Vec::with_capacity(size);
    for z in 0..size {
        cochains.push(solve_cochain(a, &t, d, &|x, y| pair(z, &chars[x * size + y]))?);
    }
    let mut m = vec![vec![0i64; r]; r];
    for i in 0..r {
        let e_i = t.mult[i][1 % n[i] as usize];
        for j in 0..r {
            let z = t.mult[j][1 % n[j] as usize];
            let az = |w: usize| cochains[w][z];
            let mut s = 0i64;
            for k in 0..n[i] as usize {
                let next = t.add[t.mult[i][k] * size + e_i];
                s += az(t.mult[i][k]) + az(e_i) - az(next);
            }
            let s = s.rem_euclid(d);
            if (s * n[j]) % d != 0 {
                return Err(MextError::Internal(format!(
                    "ε component ({i}, {j}) = {} is not a character value",
                    QZ::new(s, d)
                )));
            }
            m[i][j] = s * n[j] / d;
        }
    }
    AbCocycle2::new(a.clone(), m)
}

/// `ε` as the transpose in the carry basis.
pub fn epsilon_transpose(l: &AbCocycle2) -> AbCocycle2 {
    l.transpose()
}
