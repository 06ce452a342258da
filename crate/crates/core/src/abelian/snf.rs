//! Smith normal form over the integers.

use super::matrix::IMat;

/// Result of [`smith_normal_form`]: `u * m * v == d`, with `u_inv * u == I`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IMat,
    pub u_inv: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl Snf {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`), zeros last.
    pub fn invariants(&self) -> Vec<i128> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|&&x| x != 0).count()
    }
}

fn min_nonzero(a: &IMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a[(i, j)].abs();
            if v != 0 && best.is_none_or(|(bi, bj)| v < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Computes unimodular `U`, `V` and diagonal `D` with `U·M·V = D` and
/// `d_1 | d_2 | …`. Empty matrices are allowed.
pub fn smith_normal_form(m: &IMat) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IMat::identity(r);
    let mut u_inv = IMat::identity(r);
    let mut v = IMat::identity(c);

    // Row operations are mirrored on U (same op) and on U^{-1} (inverse op on columns).
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = min_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = a[(t, t)];
            let mut clean = true;
            for i in t + 1..r {
                let q = a[(i, t)].div_euclid(p);
                if q != 0 {
                    a.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                    u_inv.add_col(t, i, q);
                }
                if a[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = a[(t, j)].div_euclid(p);
                if q != 0 {
                    a.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if a[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                // Some remainder in the pivot row/column is smaller than the pivot.
                let mut best = (t, t);
                for i in t + 1..r {
                    let x = a[(i, t)].abs();
                    if x != 0 && x < a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let x = a[(t, j)].abs();
                    if x != 0 && x < a[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                    u_inv.swap_cols(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and repeat.
            let offending = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[(i, j)] % p != 0));
            match offending {
                Some(i) => {
                    a.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                    u_inv.add_col(i, t, -1);
                }
                None => break,
            }
        }
        if a[(t, t)] < 0 {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    Snf { u, u_inv, d: a, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check(m: &IMat) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U·M·V != D for {:?}", m);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.mul(&s.u_inv), IMat::identity(m.rows()));
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
        let inv = s.invariants();
        for w in inv.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {:?}", inv);
            } else {
                // zeros trail
            }
            assert!(w[0] >= 0);
        }
        s
    }

    #[test]
    fn already_diagonal() {
        let m = IMat::diagonal(&[2, 4]);
        let s = check(&m);
        assert_eq!(s.invariants(), vec![2, 4]);
        assert_eq!(s.u, IMat::identity(2));
        assert_eq!(s.v, IMat::identity(2));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let s = check(&IMat::diagonal(&[2, 3]));
        assert_eq!(s.invariants(), vec![1, 6]);
    }

    #[test]
    fn empty_and_zero() {
        let s = check(&IMat::zeros(0, 3));
        assert!(s.invariants().is_empty());
        let s = check(&IMat::zeros(2, 2));
        assert_eq!(s.invariants(), vec![0, 0]);
    }

    #[test]
    fn random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let data: Vec<Vec<i128>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            check(&IMat::from_rows(&data, cols));
        }
    }

    #[test]
    fn random_3x2() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let data: Vec<Vec<i128>> = (0..3)
            .map(|_| (0..2).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let s = check(&IMat::from_rows(&data, 2));
        let inv = s.invariants();
        if inv[1] != 0 {
            assert_eq!(inv[1] % inv[0], 0);
        }
    }
}
