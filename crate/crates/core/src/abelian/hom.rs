use serde::{Deserialize, Serialize};

use super::group::{FinAbGroup, GroupElt};
use super::matrix::IMat;
use super::snf::smith_normal_form;
use super::subgroup::{Quotient, Subgroup};
use crate::error::{MextError, Result};

/// A homomorphism given by an integer matrix whose column `i` is the image of
/// the `i`-th source generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHom")]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<RawHom> for GroupHom {
    type Error = MextError;
    fn try_from(r: RawHom) -> Result<Self> {
        GroupHom::new(r.source, r.target, r.matrix)
    }
}

impl GroupHom {
    /// `matrix` has one row per target generator and one column per source
    /// generator; entries are reduced modulo the target moduli.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let (m, n) = (target.rank(), source.rank());
        if matrix.len() != m || matrix.iter().any(|r| r.len() != n) {
            return Err(MextError::InvalidHom(format!(
                "matrix must be {m}×{n} for Z{:?} → Z{:?}",
                source.moduli(),
                target.moduli()
            )));
        }
        let matrix: Vec<Vec<i64>> = matrix
            .iter()
            .zip(target.moduli())
            .map(|(r, &b)| r.iter().map(|&x| x.rem_euclid(b)).collect())
            .collect();
        for (i, &a) in source.moduli().iter().enumerate() {
            for (j, &b) in target.moduli().iter().enumerate() {
                if (matrix[j][i] as i128 * a as i128) % b as i128 != 0 {
                    return Err(MextError::InvalidHom(format!(
                        "image of generator {i} is not killed by {a}"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    /// Builds a homomorphism from the images of the source generators.
    pub fn from_images(source: FinAbGroup, target: FinAbGroup, images: &[GroupElt]) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(MextError::InvalidHom("wrong number of images".into()));
        }
        let matrix = (0..target.rank())
            .map(|j| images.iter().map(|x| x.coords[j]).collect())
            .collect();
        GroupHom::new(source, target, matrix)
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let matrix = vec![vec![0; source.rank()]; target.rank()];
        GroupHom {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn image_of_generator(&self, i: usize) -> GroupElt {
        GroupElt::new(self.matrix.iter().map(|r| r[i]).collect())
    }

    pub fn apply(&self, x: &GroupElt) -> GroupElt {
        let v: Vec<i128> = self
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&x.coords)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum()
            })
            .collect();
        self.target.reduce_wide(&v)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(MextError::GroupMismatch("composition".into()));
        }
        let images: Vec<GroupElt> = (0..self.source.rank())
            .map(|i| other.apply(&self.image_of_generator(i)))
            .collect();
        GroupHom::from_images(self.source.clone(), other.target.clone(), &images)
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<GroupElt> = (0..self.source.rank())
            .map(|i| self.image_of_generator(i))
            .collect();
        Subgroup::generated(&self.target, &gens)
    }

    pub fn kernel(&self) -> Subgroup {
        let (m, n) = (self.target.rank(), self.source.rank());
        // Integer solutions of M·x + D·y = 0; their x-parts span the kernel lattice.
        let mut a = IMat::zeros(m, n + m);
        for j in 0..m {
            for i in 0..n {
                a[(j, i)] = self.matrix[j][i] as i128;
            }
            a[(j, n + j)] = self.target.moduli()[j] as i128;
        }
        let s = smith_normal_form(&a);
        let r = s.rank();
        let gens: Vec<GroupElt> = (r..n + m)
            .map(|c| {
                let col = s.v.col(c);
                self.source.reduce_wide(&col[..n])
            })
            .collect();
        Subgroup::generated(&self.source, &gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn kernel_cokernel(&self) -> KerCoker {
        let ker = self.kernel();
        let im = self.image();
        let kernel = ker.as_group();
        let cokernel = Quotient::new(&Subgroup::whole(&self.target), &im)
            .expect("image lies in the target");
        debug_assert_eq!(ker.order() * im.order(), self.source.order());
        debug_assert_eq!(cokernel.group().order() * im.order(), self.target.order());
        KerCoker {
            kernel,
            image_order: im.order(),
            cokernel,
        }
    }
}

/// Kernel (with lifts into the source) and cokernel (with projection from the target).
#[derive(Clone, Debug)]
pub struct KerCoker {
    pub kernel: Quotient,
    pub image_order: u64,
    pub cokernel: Quotient,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[i64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    #[test]
    fn well_definedness() {
        assert!(GroupHom::new(g(&[2]), g(&[4]), vec![vec![1]]).is_err());
        assert!(GroupHom::new(g(&[2]), g(&[4]), vec![vec![2]]).is_ok());
        assert!(GroupHom::new(g(&[2]), g(&[4]), vec![vec![2, 0]]).is_err());
    }

    #[test]
    fn zero_map() {
        let kc = GroupHom::zero(g(&[2]), g(&[4])).kernel_cokernel();
        assert_eq!(kc.kernel.group().moduli(), &[2]);
        assert_eq!(kc.cokernel.group().moduli(), &[4]);
    }

    #[test]
    fn times_two_on_z8() {
        let f = GroupHom::new(g(&[8]), g(&[8]), vec![vec![2]]).unwrap();
        let kc = f.kernel_cokernel();
        assert_eq!(kc.kernel.group().moduli(), &[2]);
        assert_eq!(kc.cokernel.group().moduli(), &[2]);
        let brute = g(&[8]).elements().filter(|x| f.apply(x).is_zero()).count();
        assert_eq!(brute, 2);
    }

    #[test]
    fn inclusion_into_square() {
        let f = GroupHom::new(g(&[2]), g(&[2, 2]), vec![vec![1], vec![0]]).unwrap();
        let kc = f.kernel_cokernel();
        assert!(kc.kernel.group().is_trivial());
        assert_eq!(kc.cokernel.group().moduli(), &[2]);
    }

    #[test]
    fn kernel_matches_enumeration() {
        let src = g(&[4, 6, 2]);
        let tgt = g(&[12, 2]);
        let f = GroupHom::new(src.clone(), tgt, vec![vec![3, 2, 6], vec![1, 1, 0]]).unwrap();
        let ker = f.kernel();
        for x in src.elements() {
            assert_eq!(ker.contains(&x), f.apply(&x).is_zero());
        }
    }

    #[test]
    fn json_roundtrip() {
        let f = GroupHom::new(g(&[2]), g(&[2, 4]), vec![vec![1], vec![2]]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: GroupHom = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
