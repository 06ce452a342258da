use num_integer::gcd;

use crate::abelian::{canonical_decomposition, canonical_from_moduli, FinAbGroup, GroupHom};
use crate::error::Result;
use crate::extensions::BaseCategory;
use crate::qforms::{quad_group, QuadForm, QZ};

/// `coker(κ^t: Hom(A, Â) → Quad(A))` together with the map itself.
#[derive(Clone, Debug)]
pub struct KappaCokernel {
    /// Invariant-factor form.
    pub cokernel: FinAbGroup,
    /// Source is `⊕_{i,j} Z_{gcd(n_i, n_j)}` (row-major over `(i, j)`), target
    /// is the generator presentation of [`quad_group`].
    pub map: GroupHom,
}

/// `Hom(A, Â)` with `w_ij` the coefficient of `Z(x)(y) = Σ w_ij x_i y_j / gcd(n_i, n_j)`.
fn hom_dual_moduli(a: &FinAbGroup) -> Vec<i64> {
    let n = a.moduli();
    n.iter().flat_map(|&x| n.iter().map(move |&y| gcd(x, y))).collect()
}

/// `q_Z(x) = ⟨x + t, Z(x)⟩` for the bilinear `Z` with coefficients `w` (row-major).
pub fn kappa_form(base: &BaseCategory, w: &[i64]) -> Result<QuadForm> {
    let a = base.group();
    let n = a.moduli();
    let r = a.rank();
    let t = &base.t().coords;
    let z = |i: usize, j: usize| QZ::new(w[i * r + j], gcd(n[i], n[j]));
    let diag = (0..r)
        .map(|i| z(i, i) + (0..r).map(|j| z(i, j).scale(t[j])).sum::<QZ>())
        .collect();
    let mut cross = vec![];
    for i in 0..r {
        for j in i + 1..r {
            cross.push(z(i, j) + z(j, i));
        }
    }
    QuadForm::new(a.clone(), diag, cross)
}

pub fn kappa_cokernel(base: &BaseCategory) -> Result<KappaCokernel> {
    let a = base.group();
    let r = a.rank();
    let qg = quad_group(a);
    let source = FinAbGroup::new(hom_dual_moduli(a))?;
    let mut images = vec![];
    for k in 0..r * r {
        let mut w = vec![0; r * r];
        w[k] = 1;
        images.push(qg.coords_of(&kappa_form(base, &w)?)?);
    }
    let map = GroupHom::from_images(source, qg.group().clone(), &images)?;
    let cokernel = canonical_decomposition(map.kernel_cokernel().cokernel.group());
    Ok(KappaCokernel { cokernel, map })
}

/// `Z_4 × Z_2^{r−1}` if `⟨t⟩` is a direct summand, `Z_2^r` otherwise, where `r`
/// is the rank of the Sylow 2-subgroup. Requires `t ≠ 0`.
pub fn triv_closed_formula(base: &BaseCategory) -> FinAbGroup {
    let r = base.group().moduli().iter().filter(|&&n| n % 2 == 0).count();
    let mut m = vec![2; r];
    if base.is_split() && r > 0 {
        m[0] = 4;
    }
    canonical_from_moduli(&m)
}
