use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{MextError, Result};

pub const CUP_MAX_RANK: usize = 6;

/// Kernel of `x ↦ x²` on `H²(Z_2^r, Z_2)`, with `H^*(Z_2^r, Z_2) = F_2[x_1, …, x_r]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupKernel {
    /// Degree-2 monomials `x_i x_j`, `i ≤ j`, indexing the coordinates below.
    pub monomials: Vec<(usize, usize)>,
    pub rank: usize,
    pub kernel_basis: Vec<Vec<u8>>,
}

impl CupKernel {
    pub fn dim(&self) -> usize {
        self.kernel_basis.len()
    }
}

type Monomial = Vec<u32>;

/// Reduced row echelon form over F_2; returns the pivot columns.
fn rref(rows: &mut [Vec<u8>], cols: usize) -> Vec<usize> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] == 1 {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn cup_square_kernel(r: usize) -> Result<CupKernel> {
    if r > CUP_MAX_RANK {
        return Err(MextError::Range(format!("rank {r} > {CUP_MAX_RANK}")));
    }
    let mut monomials = vec![];
    for i in 0..r {
        for j in i..r {
            monomials.push((i, j));
        }
    }
    let exps = |(i, j): (usize, usize), k: u32| -> Monomial {
        let mut e = vec![0; r];
        e[i] += k;
        e[j] += k;
        e
    };
    // Squaring is additive in characteristic 2, so it is determined on monomials.
    let mut degree4: BTreeMap<Monomial, usize> = BTreeMap::new();
    let images: Vec<Monomial> = monomials.iter().map(|&m| exps(m, 2)).collect();
    for m in &images {
        let k = degree4.len();
        degree4.entry(m.clone()).or_insert(k);
    }
    let cols = monomials.len();
    // rows = degree-4 coordinates, columns = degree-2 monomials
    let mut rows = vec![vec![0u8; cols]; degree4.len()];
    for (c, m) in images.iter().enumerate() {
        rows[degree4[m]][c] ^= 1;
    }
    let pivots = rref(&mut rows, cols);
    let mut kernel_basis = vec![];
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u8; cols];
        v[free] = 1;
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = rows[row][free];
        }
        kernel_basis.push(v);
    }
    Ok(CupKernel {
        monomials,
        rank: pivots.len(),
        kernel_basis,
    })
}
