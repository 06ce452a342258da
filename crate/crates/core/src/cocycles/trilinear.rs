use num_integer::gcd;
use serde::{Deserialize, Serialize};

use super::cocycle3::Cocycle3;
use crate::abelian::{FinAbGroup, GroupElt, Subgroup};
use crate::error::{MextError, Result};
use crate::extensions::BaseCategory;
use crate::qforms::QZ;

/// A trilinear form `A³ → Q/Z`, stored on generator triples
/// (`values[(i r + j) r + k] = τ(e_i, e_j, e_k)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTrilinear")]
pub struct Trilinear {
    group: FinAbGroup,
    values: Vec<QZ>,
}

#[derive(Deserialize)]
struct RawTrilinear {
    group: FinAbGroup,
    values: Vec<QZ>,
}

impl TryFrom<RawTrilinear> for Trilinear {
    type Error = MextError;
    fn try_from(r: RawTrilinear) -> Result<Self> {
        Trilinear::new(r.group, r.values)
    }
}

fn gcd3(n: &[i64], i: usize, j: usize, k: usize) -> i64 {
    gcd(gcd(n[i], n[j]), n[k])
}

/// `Hom(A^{⊗3}, Q/Z) ≅ ⊕_{i,j,k} Z_{gcd(n_i, n_j, n_k)}`, row-major. Fails
/// when the order does not fit in a `u64`.
pub fn tensor3_group(a: &FinAbGroup) -> Result<FinAbGroup> {
    FinAbGroup::new(tensor3_group_moduli(a))
}

fn tensor3_group_moduli(a: &FinAbGroup) -> Vec<i64> {
    let n = a.moduli();
    let r = a.rank();
    let mut m = vec![];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                m.push(gcd3(n, i, j, k));
            }
        }
    }
    m
}

impl Trilinear {
    pub fn new(group: FinAbGroup, values: Vec<QZ>) -> Result<Self> {
        let r = group.rank();
        if values.len() != r * r * r {
            return Err(MextError::Range(format!("trilinear form on rank {r} needs {} values", r * r * r)));
        }
        let n = group.moduli();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let v = values[(i * r + j) * r + k];
                    let g = gcd3(n, i, j, k);
                    if !v.killed_by(g) {
                        return Err(MextError::InvalidForm(format!(
                            "τ(e_{i}, e_{j}, e_{k}) = {v} is not killed by {g}"
                        )));
                    }
                }
            }
        }
        Ok(Trilinear { group, values })
    }

    pub fn zero(a: &FinAbGroup) -> Self {
        let r = a.rank();
        Trilinear {
            group: a.clone(),
            values: vec![QZ::ZERO; r * r * r],
        }
    }

    /// Samples `f` on generator triples.
    pub fn from_generators(a: &FinAbGroup, f: impl Fn(&GroupElt, &GroupElt, &GroupElt) -> QZ) -> Result<Self> {
        let r = a.rank();
        let mut values = Vec::with_capacity(r * r * r);
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    values.push(f(&a.basis(i), &a.basis(j), &a.basis(k)));
                }
            }
        }
        Trilinear::new(a.clone(), values)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> QZ {
        let r = self.group.rank();
        self.values[(i * r + j) * r + k]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Trilinear) -> Result<Trilinear> {
        if self.group != other.group {
            return Err(MextError::GroupMismatch("trilinear forms on different groups".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a + *b).collect();
        Ok(Trilinear {
            group: self.group.clone(),
            values,
        })
    }

    pub fn eval(&self, x: &GroupElt, y: &GroupElt, z: &GroupElt) -> QZ {
        let r = self.group.rank();
        let mut v = QZ::ZERO;
        for i in (0..r).filter(|&i| x.coords[i] != 0) {
            for j in (0..r).filter(|&j| y.coords[j] != 0) {
                for k in (0..r).filter(|&k| z.coords[k] != 0) {
                    v += self.at(i, j, k).scale(x.coords[i] * y.coords[j] * z.coords[k]);
                }
            }
        }
        v
    }

    /// Vanishes whenever two arguments coincide.
    pub fn is_alternating(&self) -> bool {
        let r = self.group.rank();
        let perms: [([usize; 3], bool); 6] = [
            ([0, 1, 2], false),
            ([1, 0, 2], true),
            ([0, 2, 1], true),
            ([2, 1, 0], true),
            ([1, 2, 0], false),
            ([2, 0, 1], false),
        ];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let idx = [i, j, k];
                    let v = self.at(i, j, k);
                    if (i == j || j == k || i == k) && !v.is_zero() {
                        return false;
                    }
                    for (p, odd) in perms {
                        let w = self.at(idx[p[0]], idx[p[1]], idx[p[2]]);
                        if w != if odd { -v } else { v } {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `τ(x, x + t, y) = 0` and `τ(x, y + t, y) = 0` for all `x, y`.
    pub fn is_t_alternating(&self, base: &BaseCategory) -> bool {
        let a = &self.group;
        let t = base.t();
        a.elements().all(|x| {
            let xt = a.add(&x, t);
            a.elements().all(|y| {
                let yt = a.add(&y, t);
                self.eval(&x, &xt, &y).is_zero() && self.eval(&x, &yt, &y).is_zero()
            })
        })
    }

    /// Coordinates in [`tensor3_group`].
    pub fn coords(&self) -> GroupElt {
        let n = self.group.moduli();
        let r = self.group.rank();
        let mut c = vec![];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    c.push(self.at(i, j, k).numerator_over(gcd3(n, i, j, k)).expect("validated"));
                }
            }
        }
        GroupElt::new(c)
    }
}

/// Order of the subgroup of `Hom(A^{⊗3}, Q/Z)` generated by `forms`.
/// Only coordinates where some form is nonzero enter the computation.
pub fn span_order(a: &FinAbGroup, forms: &[Trilinear]) -> Result<u64> {
    let full = tensor3_group_moduli(a);
    let coords: Vec<GroupElt> = forms.iter().map(|f| f.coords()).collect();
    let support: Vec<usize> = (0..full.len()).filter(|&k| coords.iter().any(|c| c.coords[k] != 0)).collect();
    let ambient = FinAbGroup::new(support.iter().map(|&k| full[k]).collect())?;
    let gens: Vec<GroupElt> = coords
        .iter()
        .map(|c| GroupElt::new(support.iter().map(|&k| c.coords[k]).collect()))
        .collect();
    Ok(Subgroup::generated(&ambient, &gens).order())
}

/// `alt(ω)(x, y, z) = Σ_{σ ∈ S_3} sign(σ) ω(σ(x, y, z))`, evaluated literally.
pub fn alternator_direct(w: &Cocycle3, x: &GroupElt, y: &GroupElt, z: &GroupElt) -> QZ {
    w.eval(x, y, z) - w.eval(y, x, z) - w.eval(x, z, y) - w.eval(z, y, x) + w.eval(y, z, x) + w.eval(z, x, y)
}

pub fn alternator(w: &Cocycle3) -> Result<Trilinear> {
    Trilinear::from_generators(w.group(), |x, y, z| alternator_direct(w, x, y, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{standard_cocycle, CocycleType};

    fn g(m: &[i64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let z4 = g(&[4]);
        let w = standard_cocycle(&z4, CocycleType::I, &[0], 1).unwrap();
        assert!(alternator(&w).unwrap().is_zero());
        let z222 = g(&[2, 2, 2]);
        let w = standard_cocycle(&z222, CocycleType::III, &[0, 1, 2], 1).unwrap();
        let t = alternator(&w).unwrap();
        assert_eq!(t.at(0, 1, 2), QZ::new(1, 2));
        assert!(t.is_alternating());
        assert!(alternator(&Cocycle3::zero(&z222)).unwrap().is_zero());
    }

    #[test]
    fn generator_values_reconstruct() {
        let a = g(&[2, 2, 4]);
        let w = standard_cocycle(&a, CocycleType::III, &[0, 1, 2], 1)
            .unwrap()
            .add(&standard_cocycle(&a, CocycleType::II, &[1, 2], 1).unwrap())
            .unwrap();
        let t = alternator(&w).unwrap();
        for x in a.elements() {
            for y in a.elements() {
                for z in a.elements() {
                    assert_eq!(t.eval(&x, &y, &z), alternator_direct(&w, &x, &y, &z));
                }
            }
        }
    }

    #[test]
    fn alternating_detection() {
        let a = g(&[2, 2]);
        let mut v = vec![QZ::ZERO; 8];
        v[1] = QZ::new(1, 2); // τ(e_0, e_0, e_1)
        assert!(!Trilinear::new(a.clone(), v).unwrap().is_alternating());
        assert!(Trilinear::new(a, vec![QZ::new(1, 4); 8]).is_err());
    }
}
