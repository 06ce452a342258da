use super::form::QuadForm;
use super::qz::QZ;
use crate::abelian::{FinAbGroup, GroupElt};
use crate::error::{MextError, Result};
use crate::limits;

/// Most forms [`enumerate_forms`] will list.
pub const MAX_FORMS: u64 = 1 << 20;

/// `Quad(A)` with its generator forms, one per cyclic factor:
/// `Z_{2n_i}` (or `Z_{n_i}` for odd `n_i`) per generator, `Z_{gcd(n_i, n_j)}` per pair.
#[derive(Clone, Debug)]
pub struct QuadGroup {
    base: FinAbGroup,
    group: FinAbGroup,
    gens: Vec<QuadForm>,
}

fn diag_modulus(n: i64) -> i64 {
    if n % 2 == 0 {
        2 * n
    } else {
        n
    }
}

pub fn quad_group(a: &FinAbGroup) -> QuadGroup {
    let n = a.moduli();
    let r = a.rank();
    let mut moduli = vec![];
    let mut gens = vec![];
    let zero = QuadForm::zero(a);
    for i in 0..r {
        let m = diag_modulus(n[i]);
        moduli.push(m);
        let mut diag = zero.diag().to_vec();
        diag[i] = QZ::new(1, m);
        gens.push(QuadForm::new(a.clone(), diag, zero.cross().to_vec()).expect("generator"));
    }
    let mut idx = 0;
    for i in 0..r {
        for j in i + 1..r {
            let g = num_integer::gcd(n[i], n[j]);
            moduli.push(g);
            let mut cross = zero.cross().to_vec();
            cross[idx] = QZ::new(1, g);
            gens.push(QuadForm::new(a.clone(), zero.diag().to_vec(), cross).expect("generator"));
            idx += 1;
        }
    }
    QuadGroup {
        base: a.clone(),
        group: FinAbGroup::new(moduli).expect("Quad(A) exponent divides 2·exp(A)"),
        gens,
    }
}

impl QuadGroup {
    /// Uncanonicalized: one factor per generator form.
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn gens(&self) -> &[QuadForm] {
        &self.gens
    }

    pub fn form_at(&self, c: &GroupElt) -> QuadForm {
        let r = self.base.rank();
        let m = self.group.moduli();
        let diag = (0..r).map(|i| QZ::new(c.coords[i], m[i])).collect();
        let cross = (r..m.len()).map(|k| QZ::new(c.coords[k], m[k])).collect();
        QuadForm::new(self.base.clone(), diag, cross).expect("coordinates in range")
    }

    pub fn coords_of(&self, q: &QuadForm) -> Result<GroupElt> {
        if q.group() != &self.base {
            return Err(MextError::GroupMismatch("form on another group".into()));
        }
        let m = self.group.moduli();
        let c: Vec<i64> = q
            .diag()
            .iter()
            .chain(q.cross())
            .zip(m)
            .map(|(v, &mk)| v.numerator_over(mk).expect("validated form"))
            .collect();
        Ok(GroupElt::new(c))
    }
}

/// Every quadratic form on `a` (optionally only the nondegenerate ones), in
/// lexicographic order of generator coordinates.
pub fn enumerate_forms(a: &FinAbGroup, nondegenerate_only: bool) -> Result<Vec<QuadForm>> {
    limits::check("group for form enumeration", a.order(), limits::form_limit())?;
    let qg = quad_group(a);
    limits::check("number of quadratic forms", qg.group().order(), MAX_FORMS)?;
    Ok(qg
        .group()
        .elements()
        .map(|c| qg.form_at(&c))
        .filter(|f| !nondegenerate_only || f.is_nondegenerate())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::canonical_decomposition;
    use std::collections::HashSet;

    fn g(m: &[i64]) -> FinAbGroup {
        FinAbGroup::new(m.to_vec()).unwrap()
    }

    #[test]
    fn quad_examples() {
        assert_eq!(canonical_decomposition(quad_group(&g(&[2])).group()).moduli(), &[4]);
        assert_eq!(canonical_decomposition(quad_group(&g(&[3])).group()).moduli(), &[3]);
        assert!(quad_group(&g(&[])).group().is_trivial());
    }

    #[test]
    fn quad_z3_by_functions() {
        // functions f: Z3 → (1/3)Z/Z with f(0) = 0, f(1) = f(2) (evenness), b biadditive
        let mut count = 0;
        for v in 0..3 {
            let f = [QZ::ZERO, QZ::new(v, 3), QZ::new(v, 3)];
            let b = |x: usize, y: usize| f[(x + y) % 3] - f[x] - f[y];
            let ok = (0..3).all(|x| {
                (0..3).all(|y| (0..3).all(|z| b((x + y) % 3, z) == b(x, z) + b(y, z)))
            });
            count += ok as usize;
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn counts() {
        let z2 = enumerate_forms(&g(&[2]), false).unwrap();
        assert_eq!(z2.len(), 4);
        assert_eq!(enumerate_forms(&g(&[2]), true).unwrap().len(), 2);
        assert_eq!(enumerate_forms(&g(&[4]), false).unwrap().len(), 8);
        assert_eq!(enumerate_forms(&g(&[4]), true).unwrap().len(), 4);
        assert_eq!(enumerate_forms(&g(&[]), false).unwrap().len(), 1);
    }

    #[test]
    fn duplicate_free_and_coords_roundtrip() {
        let a = g(&[2, 4]);
        let qg = quad_group(&a);
        let forms = enumerate_forms(&a, false).unwrap();
        let set: HashSet<&QuadForm> = forms.iter().collect();
        assert_eq!(set.len() as u64, qg.group().order());
        for f in &forms {
            assert_eq!(&qg.form_at(&qg.coords_of(f).unwrap()), f);
        }
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            enumerate_forms(&g(&[128]), false),
            Err(MextError::SizeGuard { .. })
        ));
    }
}
