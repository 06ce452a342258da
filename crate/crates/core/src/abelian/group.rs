use serde::{Deserialize, Serialize};

use crate::error::{MextError, Result};

/// Largest group exponent accepted; keeps every product of two residues and a
/// denominator comfortably inside `i128`.
pub const EXPONENT_CAP: i64 = 1 << 16;

/// `Z_{n_1} × … × Z_{n_k}`. The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FinAbGroup {
    moduli: Vec<i64>,
}

#[derive(Deserialize)]
struct RawGroup {
    moduli: Vec<i64>,
}

impl TryFrom<RawGroup> for FinAbGroup {
    type Error = MextError;
    fn try_from(r: RawGroup) -> Result<Self> {
        FinAbGroup::new(r.moduli)
    }
}

/// A residue vector. The ambient group is supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElt {
    pub coords: Vec<i64>,
}

impl GroupElt {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElt { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl FinAbGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if let Some(&bad) = moduli.iter().find(|&&n| n < 1) {
            return Err(MextError::InvalidGroup(format!("modulus {bad} < 1")));
        }
        let mut exp: i64 = 1;
        let mut order: u64 = 1;
        for &n in &moduli {
            exp = num_integer::lcm(exp, n);
            if exp > EXPONENT_CAP {
                return Err(MextError::InvalidGroup(format!(
                    "exponent exceeds {EXPONENT_CAP}"
                )));
            }
            order = order
                .checked_mul(n as u64)
                .filter(|&o| o <= 1 << 40)
                .ok_or_else(|| MextError::InvalidGroup("order too large".into()))?;
        }
        Ok(FinAbGroup { moduli })
    }

    pub fn trivial() -> Self {
        FinAbGroup { moduli: vec![] }
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        FinAbGroup::new(vec![n])
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&n| n as u64).product()
    }

    pub fn exponent(&self) -> i64 {
        self.moduli.iter().fold(1, |e, &n| num_integer::lcm(e, n))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn zero(&self) -> GroupElt {
        GroupElt::new(vec![0; self.rank()])
    }

    /// The standard generator `e_i`, reduced (so it is zero when `n_i = 1`).
    pub fn basis(&self, i: usize) -> GroupElt {
        let mut c = vec![0; self.rank()];
        c[i] = 1 % self.moduli[i];
        GroupElt::new(c)
    }

    /// Builds an element, reducing arbitrary integer coordinates.
    pub fn elt(&self, coords: &[i64]) -> Result<GroupElt> {
        if coords.len() != self.rank() {
            return Err(MextError::InvalidElement(format!(
                "{} coordinates for a group of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(self.reduce(coords))
    }

    /// Reduces an integer vector of the right length.
    pub fn reduce(&self, coords: &[i64]) -> GroupElt {
        GroupElt::new(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n))
                .collect(),
        )
    }

    pub(crate) fn reduce_wide(&self, coords: &[i128]) -> GroupElt {
        GroupElt::new(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n as i128) as i64)
                .collect(),
        )
    }

    /// True when `x` has the right length and reduced coordinates.
    pub fn contains(&self, x: &GroupElt) -> bool {
        x.coords.len() == self.rank()
            && x.coords
                .iter()
                .zip(&self.moduli)
                .all(|(&c, &n)| (0..n).contains(&c))
    }

    pub fn check(&self, x: &GroupElt) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(MextError::InvalidElement(format!(
                "{:?} is not a reduced element of Z{:?}",
                x.coords, self.moduli
            )))
        }
    }

    pub fn add(&self, x: &GroupElt, y: &GroupElt) -> GroupElt {
        GroupElt::new(
            x.coords
                .iter()
                .zip(&y.coords)
                .zip(&self.moduli)
                .map(|((&a, &b), &n)| (a + b).rem_euclid(n))
                .collect(),
        )
    }

    pub fn sub(&self, x: &GroupElt, y: &GroupElt) -> GroupElt {
        self.add(x, &self.neg(y))
    }

    pub fn neg(&self, x: &GroupElt) -> GroupElt {
        self.scale(x, -1)
    }

    pub fn scale(&self, x: &GroupElt, k: i64) -> GroupElt {
        GroupElt::new(
            x.coords
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &n)| ((a as i128 * k as i128).rem_euclid(n as i128)) as i64)
                .collect(),
        )
    }

    pub fn order_of(&self, x: &GroupElt) -> u64 {
        x.coords
            .iter()
            .zip(&self.moduli)
            .fold(1i64, |acc, (&a, &n)| {
                num_integer::lcm(acc, n / num_integer::gcd(a, n))
            }) as u64
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElt> + '_ {
        (0..self.order() as usize).map(move |i| self.from_index(i))
    }

    /// Position of `x` in [`FinAbGroup::elements`].
    pub fn index_of(&self, x: &GroupElt) -> usize {
        x.coords
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn from_index(&self, mut idx: usize) -> GroupElt {
        let mut c = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.moduli[i] as usize;
            c[i] = (idx % n) as i64;
            idx /= n;
        }
        GroupElt::new(c)
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut m = self.moduli.clone();
        m.extend_from_slice(&other.moduli);
        FinAbGroup { moduli: m }
    }

    /// Concatenates coordinates of `x ∈ self` and `y ∈ other`.
    pub fn pair(&self, x: &GroupElt, y: &GroupElt) -> GroupElt {
        let mut c = x.coords.clone();
        c.extend_from_slice(&y.coords);
        GroupElt::new(c)
    }

    /// Splits an element of `self ⊕ other` (with `self` of rank `r`).
    pub fn split_at(x: &GroupElt, r: usize) -> (GroupElt, GroupElt) {
        (
            GroupElt::new(x.coords[..r].to_vec()),
            GroupElt::new(x.coords[r..].to_vec()),
        )
    }

    /// `A[2]`, the subgroup of elements killed by 2.
    pub fn two_torsion(&self) -> super::Subgroup {
        let gens: Vec<GroupElt> = (0..self.rank())
            .filter(|&i| self.moduli[i] % 2 == 0)
            .map(|i| self.scale(&self.basis(i), self.moduli[i] / 2))
            .collect();
        super::Subgroup::generated(self, &gens)
    }

    /// Parses `"2,4"` (or an empty string for the trivial group).
    pub fn parse(s: &str) -> Result<Self> {
        FinAbGroup::new(parse_ints(s)?)
    }

    /// Parses a comma separated coordinate string into an element.
    pub fn parse_elt(&self, s: &str) -> Result<GroupElt> {
        let c = parse_ints(s)?;
        let x = self.elt(&c)?;
        if x.coords != c {
            return Err(MextError::InvalidElement(format!(
                "coordinates {c:?} are not reduced for Z{:?}",
                self.moduli
            )));
        }
        Ok(x)
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| MextError::Parse(format!("{p:?}: {e}")))
        })
        .collect()
}
