use num_integer::gcd;

use super::cocycle2::AbCocycle2;
use crate::abelian::{canonical_decomposition, FinAbGroup, GroupElt, GroupHom};
use crate::error::{MextError, Result};
use crate::extensions::BaseCategory;
use crate::qforms::QZ;

/// `θ^t` on the ε-fixed part of `H²_ab(A, Â)` and its kernel.
#[derive(Clone, Debug)]
pub struct ThetaKernel {
    /// Symmetric carry matrices: one `Z_{n_i}` per diagonal entry, then one
    /// `Z_{gcd(n_i, n_j)}` per pair `i < j`.
    pub domain: FinAbGroup,
    /// `L ↦ (θ_L(u_k))_k ∈ Z_2^s`, where `u_k = (n_k / 2) e_k` runs over the
    /// even factors; this is `Hom(A_2, Q/Z)`.
    pub map: GroupHom,
    /// `|Hom(A_2/⟨t⟩, Q/Z)|`.
    pub target_order: u64,
    pub kernel: FinAbGroup,
    pub surjective: bool,
}

fn even_factors(a: &FinAbGroup) -> Vec<usize> {
    (0..a.rank()).filter(|&i| a.moduli()[i] % 2 == 0).collect()
}

fn symmetric_generators(a: &FinAbGroup) -> (Vec<i64>, Vec<AbCocycle2>) {
    let n = a.moduli();
    let r = a.rank();
    let mut moduli = vec![];
    let mut gens = vec![];
    let mut unit = |i: usize, j: usize, modulus: i64| {
        let mut m = vec![vec![0; r]; r];
        m[i][j] = 1;
        m[j][i] = 1;
        moduli.push(modulus);
        gens.push(AbCocycle2::new(a.clone(), m).expect("square matrix"));
    };
    for i in 0..r {
        unit(i, i, n[i]);
    }
    for i in 0..r {
        for j in i + 1..r {
            unit(i, j, gcd(n[i], n[j]));
        }
    }
    (moduli, gens)
}

/// `θ^t_L(x) = L_{x,x}(x + t)` evaluated literally.
pub fn theta_direct(base: &BaseCategory, l: &AbCocycle2, x: &GroupElt) -> QZ {
    let a = base.group();
    l.eval(x, x, &a.add(x, base.t()))
}

pub fn theta_kernel(base: &BaseCategory) -> Result<ThetaKernel> {
    let a = base.group();
    let even = even_factors(a);
    let (moduli, gens) = symmetric_generators(a);
    let domain = FinAbGroup::new(moduli)?;
    let target = FinAbGroup::new(vec![2; even.len()])?;
    let mut images = vec![];
    for l in &gens {
        let mut img = vec![];
        for &k in &even {
            let u = a.scale(&a.basis(k), a.moduli()[k] / 2);
            let v = theta_direct(base, l, &u);
            img.push(v.numerator_over(2).ok_or_else(|| {
                MextError::Internal(format!("θ value {v} on an element of order 2"))
            })?);
        }
        images.push(GroupElt::new(img));
    }
    let map = GroupHom::from_images(domain.clone(), target, &images)?;
    // every θ_L must vanish on t
    let t_coords: Vec<i64> = even
        .iter()
        .map(|&k| base.t().coords[k] / (a.moduli()[k] / 2))
        .collect();
    for img in &images {
        let on_t: i64 = img.coords.iter().zip(&t_coords).map(|(x, y)| x * y).sum();
        if on_t % 2 != 0 {
            return Err(MextError::Internal("θ_L does not vanish on t".into()));
        }
    }
    let kc = map.kernel_cokernel();
    let target_order = 1u64 << (even.len() - usize::from(!base.is_tannakian()));
    Ok(ThetaKernel {
        domain,
        kernel: canonical_decomposition(kc.kernel.group()),
        surjective: kc.image_order == target_order,
        target_order,
        map,
    })
}
