use serde::{Deserialize, Serialize};

use super::qz::QZ;
use crate::abelian::{FinAbGroup, GroupElt, GroupHom, Subgroup};
use crate::error::{MextError, Result};

/// Index of the pair `i < j` in the flattened upper triangle of a rank-`r` matrix.
pub(crate) fn pair_index(r: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < r);
    i * r - i * (i + 1) / 2 + (j - i - 1)
}

/// A quadratic form given by `q(e_i)` and `b(e_i, e_j)` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForm")]
pub struct QuadForm {
    group: FinAbGroup,
    diag: Vec<QZ>,
    cross: Vec<QZ>,
}

#[derive(Deserialize)]
struct RawForm {
    group: FinAbGroup,
    diag: Vec<QZ>,
    cross: Vec<QZ>,
}

impl TryFrom<RawForm> for QuadForm {
    type Error = MextError;
    fn try_from(r: RawForm) -> Result<Self> {
        QuadForm::new(r.group, r.diag, r.cross)
    }
}

impl QuadForm {
    pub fn new(group: FinAbGroup, diag: Vec<QZ>, cross: Vec<QZ>) -> Result<Self> {
        let r = group.rank();
        if diag.len() != r || cross.len() != r * r.saturating_sub(1) / 2 {
            return Err(MextError::InvalidForm(format!(
                "rank {r} needs {r} diagonal and {} cross values",
                r * r.saturating_sub(1) / 2
            )));
        }
        let n = group.moduli();
        for i in 0..r {
            let k = if n[i] % 2 == 0 { 2 * n[i] } else { n[i] };
            if !diag[i].killed_by(k) {
                return Err(MextError::InvalidForm(format!(
                    "q(e_{i}) = {} is not killed by {k}",
                    diag[i]
                )));
            }
            for j in i + 1..r {
                let g = num_integer::gcd(n[i], n[j]);
                let c = cross[pair_index(r, i, j)];
                if !c.killed_by(g) {
                    return Err(MextError::InvalidForm(format!(
                        "b(e_{i}, e_{j}) = {c} is not killed by {g}"
                    )));
                }
            }
        }
        Ok(QuadForm { group, diag, cross })
    }

    pub fn zero(group: &FinAbGroup) -> Self {
        let r = group.rank();
        QuadForm {
            group: group.clone(),
            diag: vec![QZ::ZERO; r],
            cross: vec![QZ::ZERO; r * r.saturating_sub(1) / 2],
        }
    }

    /// Diagonal form `x ↦ Σ x_i² d_i`.
    pub fn diagonal(group: &FinAbGroup, diag: Vec<QZ>) -> Result<Self> {
        let r = group.rank();
        QuadForm::new(group.clone(), diag, vec![QZ::ZERO; r * r.saturating_sub(1) / 2])
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn diag(&self) -> &[QZ] {
        &self.diag
    }

    pub fn cross(&self) -> &[QZ] {
        &self.cross
    }

    /// `b(e_i, e_j)`, including `i = j` where it equals `2 q(e_i)`.
    pub fn b_gen(&self, i: usize, j: usize) -> QZ {
        let r = self.group.rank();
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => self.diag[i] * 2,
            std::cmp::Ordering::Less => self.cross[pair_index(r, i, j)],
            std::cmp::Ordering::Greater => self.cross[pair_index(r, j, i)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().chain(&self.cross).all(|q| q.is_zero())
    }

    fn eval_raw(&self, x: &[i64]) -> QZ {
        let r = self.group.rank();
        let mut acc = QZ::ZERO;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            acc += self.diag[i].scale(x[i] * x[i]);
            for j in i + 1..r {
                if x[j] != 0 {
                    acc += self.cross[pair_index(r, i, j)].scale(x[i] * x[j]);
                }
            }
        }
        acc
    }

    pub fn evaluate(&self, x: &GroupElt) -> Result<QZ> {
        self.group.check(x)?;
        Ok(self.eval_raw(&x.coords))
    }

    /// `q(x)` for an element already known to lie in the group.
    pub fn q(&self, x: &GroupElt) -> QZ {
        debug_assert!(self.group.contains(x));
        self.eval_raw(&x.coords)
    }

    /// `b(x, y) = q(x + y) − q(x) − q(y)`.
    pub fn b(&self, x: &GroupElt, y: &GroupElt) -> QZ {
        let r = self.group.rank();
        let mut acc = QZ::ZERO;
        for i in 0..r {
            if x.coords[i] == 0 {
                continue;
            }
            for j in 0..r {
                if y.coords[j] != 0 {
                    acc += self.b_gen(i, j).scale(x.coords[i] * y.coords[j]);
                }
            }
        }
        acc
    }

    pub fn assoc_bilinear(&self) -> BilForm {
        let r = self.group.rank();
        let matrix = (0..r)
            .map(|i| (0..r).map(|j| self.b_gen(i, j)).collect())
            .collect();
        BilForm {
            group: self.group.clone(),
            matrix,
        }
    }

    pub fn radical(&self) -> Subgroup {
        self.assoc_bilinear().radical()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_trivial()
    }

    pub fn add(&self, other: &QuadForm) -> Result<QuadForm> {
        if self.group != other.group {
            return Err(MextError::GroupMismatch("forms on different groups".into()));
        }
        Ok(QuadForm {
            group: self.group.clone(),
            diag: self.diag.iter().zip(&other.diag).map(|(a, b)| *a + *b).collect(),
            cross: self.cross.iter().zip(&other.cross).map(|(a, b)| *a + *b).collect(),
        })
    }

    pub fn negate(&self) -> QuadForm {
        QuadForm {
            group: self.group.clone(),
            diag: self.diag.iter().map(|&a| -a).collect(),
            cross: self.cross.iter().map(|&a| -a).collect(),
        }
    }

    /// `q ∘ f` for `f: B → A`.
    pub fn pullback(&self, f: &GroupHom) -> Result<QuadForm> {
        if f.target() != &self.group {
            return Err(MextError::GroupMismatch("pullback target".into()));
        }
        let src = f.source();
        let imgs: Vec<GroupElt> = (0..src.rank()).map(|i| f.image_of_generator(i)).collect();
        let r = src.rank();
        let diag = imgs.iter().map(|x| self.q(x)).collect();
        let mut cross = vec![];
        for i in 0..r {
            for j in i + 1..r {
                cross.push(self.b(&imgs[i], &imgs[j]));
            }
        }
        QuadForm::new(src.clone(), diag, cross)
    }

    /// Orthogonal direct sum on `A ⊕ B`.
    pub fn direct_sum(&self, other: &QuadForm) -> QuadForm {
        let (r1, r2) = (self.group.rank(), other.group.rank());
        let r = r1 + r2;
        let group = self.group.direct_sum(&other.group);
        let diag: Vec<QZ> = self.diag.iter().chain(&other.diag).copied().collect();
        let mut cross = vec![];
        for i in 0..r {
            for j in i + 1..r {
                cross.push(if j < r1 {
                    self.b_gen(i, j)
                } else if i >= r1 {
                    other.b_gen(i - r1, j - r1)
                } else {
                    QZ::ZERO
                });
            }
        }
        QuadForm { group, diag, cross }
    }

    /// Orthogonal complement of `h` under the associated bilinear form.
    pub fn perp(&self, h: &Subgroup) -> Subgroup {
        self.assoc_bilinear().perp(h)
    }
}

/// A bilinear form given on generators: `matrix[i][j] = β(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBil")]
pub struct BilForm {
    group: FinAbGroup,
    matrix: Vec<Vec<QZ>>,
}

#[derive(Deserialize)]
struct RawBil {
    group: FinAbGroup,
    matrix: Vec<Vec<QZ>>,
}

impl TryFrom<RawBil> for BilForm {
    type Error = MextError;
    fn try_from(r: RawBil) -> Result<Self> {
        BilForm::new(r.group, r.matrix)
    }
}

impl BilForm {
    pub fn new(group: FinAbGroup, matrix: Vec<Vec<QZ>>) -> Result<Self> {
        let r = group.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(MextError::InvalidForm(format!("bilinear matrix must be {r}×{r}")));
        }
        let n = group.moduli();
        for i in 0..r {
            for j in 0..r {
                let g = num_integer::gcd(n[i], n[j]);
                if !matrix[i][j].killed_by(g) {
                    return Err(MextError::InvalidForm(format!(
                        "β(e_{i}, e_{j}) = {} is not killed by {g}",
                        matrix[i][j]
                    )));
                }
            }
        }
        Ok(BilForm { group, matrix })
    }

    pub fn zero(group: &FinAbGroup) -> Self {
        let r = group.rank();
        BilForm {
            group: group.clone(),
            matrix: vec![vec![QZ::ZERO; r]; r],
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn matrix(&self) -> &[Vec<QZ>] {
        &self.matrix
    }

    pub fn at(&self, i: usize, j: usize) -> QZ {
        self.matrix[i][j]
    }

    pub fn eval(&self, x: &GroupElt, y: &GroupElt) -> QZ {
        let r = self.group.rank();
        let mut acc = QZ::ZERO;
        for i in 0..r {
            if x.coords[i] == 0 {
                continue;
            }
            for j in 0..r {
                if y.coords[j] != 0 {
                    acc += self.matrix[i][j].scale(x.coords[i] * y.coords[j]);
                }
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.group.rank();
        (0..r).all(|i| (0..r).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    /// `β(x, x) = 0` for all `x`.
    pub fn is_alternating(&self) -> bool {
        let r = self.group.rank();
        (0..r).all(|i| {
            self.matrix[i][i].is_zero()
                && (0..r).all(|j| self.matrix[i][j] == -self.matrix[j][i])
        })
    }

    pub fn add(&self, other: &BilForm) -> Result<BilForm> {
        if self.group != other.group {
            return Err(MextError::GroupMismatch("bilinear forms on different groups".into()));
        }
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x + *y).collect())
            .collect();
        Ok(BilForm {
            group: self.group.clone(),
            matrix,
        })
    }

    pub fn negate(&self) -> BilForm {
        BilForm {
            group: self.group.clone(),
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(|&x| -x).collect())
                .collect(),
        }
    }

    /// The homomorphism `A → Â`, `x ↦ β(x, ·)`.
    pub fn left_adjoint(&self) -> GroupHom {
        let n = self.group.moduli();
        let r = self.group.rank();
        let matrix = (0..r)
            .map(|j| {
                (0..r)
                    .map(|i| self.matrix[i][j].numerator_over(n[j]).expect("validated"))
                    .collect()
            })
            .collect();
        GroupHom::new(self.group.clone(), self.group.clone(), matrix).expect("validated form")
    }

    /// `{x : β(x, y) = 0 for all y}`.
    pub fn radical(&self) -> Subgroup {
        self.left_adjoint().kernel()
    }

    /// `{x : β(x, h) = 0 for all h ∈ H}`.
    pub fn perp(&self, h: &Subgroup) -> Subgroup {
        let gens = h.gens();
        let e = self.group.exponent();
        let target = FinAbGroup::new(vec![e; gens.len()]).expect("exponent within cap");
        let r = self.group.rank();
        let matrix: Vec<Vec<i64>> = gens
            .iter()
            .map(|hk| {
                (0..r)
                    .map(|i| {
                        self.eval(&self.group.basis(i), hk)
                            .numerator_over(e)
                            .expect("values are killed by the exponent")
                    })
                    .collect()
            })
            .collect();
        GroupHom::new(self.group.clone(), target, matrix)
            .expect("pairing with a fixed element is a homomorphism")
            .kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[i64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    fn q(s: &str) -> QZ {
        s.parse().unwrap()
    }

    #[test]
    fn q_xi_on_z4() {
        let f = QuadForm::diagonal(&g(&[4]), vec![q("1/8")]).unwrap();
        assert_eq!(f.evaluate(&g(&[4]).elt(&[2]).unwrap()).unwrap(), q("1/2"));
        assert!(f.is_nondegenerate());
    }

    #[test]
    fn z2_squared_example() {
        let a = g(&[2, 2]);
        let f = QuadForm::new(a.clone(), vec![q("1/4"), q("1/4")], vec![q("1/2")]).unwrap();
        assert_eq!(f.evaluate(&a.elt(&[1, 1]).unwrap()).unwrap(), QZ::ZERO);
    }

    #[test]
    fn zero_form_radical() {
        let a = g(&[2]);
        let f = QuadForm::zero(&a);
        assert_eq!(f.radical().order(), 2);
        assert!(f.b(&a.basis(0), &a.basis(0)).is_zero());
    }

    #[test]
    fn hyperbolic_nondegenerate() {
        let a = g(&[2, 2]);
        let f = QuadForm::new(a.clone(), vec![QZ::ZERO, QZ::ZERO], vec![q("1/2")]).unwrap();
        assert!(f.is_nondegenerate());
        let h = Subgroup::generated(&a, &[a.elt(&[1, 0]).unwrap()]);
        assert_eq!(f.perp(&h), h);
        assert_eq!(f.perp(&Subgroup::trivial(&a)), Subgroup::whole(&a));
    }

    #[test]
    fn perp_in_z4() {
        let a = g(&[4]);
        let f = QuadForm::diagonal(&a, vec![q("1/8")]).unwrap();
        let h = Subgroup::generated(&a, &[a.elt(&[2]).unwrap()]);
        assert_eq!(f.perp(&h), h);
    }

    #[test]
    fn validation() {
        assert!(QuadForm::diagonal(&g(&[2]), vec![q("1/8")]).is_err());
        assert!(QuadForm::diagonal(&g(&[3]), vec![q("1/6")]).is_err());
        assert!(QuadForm::new(g(&[2, 4]), vec![QZ::ZERO; 2], vec![q("1/4")]).is_err());
        assert!(serde_json::from_str::<QuadForm>(
            r#"{"group":{"moduli":[2]},"diag":["1/8"],"cross":[]}"#
        )
        .is_err());
    }

    #[test]
    fn json_shape() {
        let f = QuadForm::diagonal(&g(&[4]), vec![q("1/8")]).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"group":{"moduli":[4]},"diag":["1/8"],"cross":[]}"#
        );
    }

    #[test]
    fn bilinear_matches_polarization() {
        let a = g(&[4, 2, 3]);
        let f = QuadForm::new(
            a.clone(),
            vec![q("3/8"), q("1/4"), q("1/3")],
            vec![q("1/2"), q("0"), q("0")],
        )
        .unwrap();
        let bil = f.assoc_bilinear();
        assert!(bil.is_symmetric());
        for x in a.elements() {
            for y in a.elements() {
                let pol = f.q(&a.add(&x, &y)) - f.q(&x) - f.q(&y);
                assert_eq!(pol, f.b(&x, &y));
                assert_eq!(pol, bil.eval(&x, &y));
            }
        }
    }

    #[test]
    fn pullback_and_sum() {
        let a = g(&[4]);
        let f = QuadForm::diagonal(&a, vec![q("1/8")]).unwrap();
        let dbl = GroupHom::new(g(&[2]), a.clone(), vec![vec![2]]).unwrap();
        let p = f.pullback(&dbl).unwrap();
        assert_eq!(p.diag(), &[q("1/2")]);
        let s = f.direct_sum(&f.negate());
        assert_eq!(s.group().moduli(), &[4, 4]);
        let x = s.group().elt(&[1, 1]).unwrap();
        assert!(s.q(&x).is_zero());
    }
}
