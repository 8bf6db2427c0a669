//! Banded linear systems with partial pivoting, dgbsv-style.
//!
//! The finite-difference systems are banded with bandwidth ~ column height;
//! pivoting matters because the degenerate-edge closure rows (one-sided
//! second-order differences) are not diagonally dominant. Storage is
//! column-major LAPACK band layout so the elimination inner loop runs over
//! contiguous memory.

use crate::error::{Error, Result};

/// A general banded matrix in LAPACK band storage with room for pivoting
/// fill-in: entry `A[i][j]` lives at `ab[j * ldab + (kl + ku + i - j)]`.
pub struct BandedMatrix {
    pub n: usize,
    pub kl: usize,
    pub ku: usize,
    ab: Vec<f64>,
    ldab: usize,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        BandedMatrix {
            n,
            kl,
            ku,
            ab: vec![0.0; ldab * n],
            ldab,
        }
    }

    #[inline]
    fn off(&self, i: usize, j: usize) -> usize {
        j * self.ldab + (self.kl + self.ku + i) - j
    }

    /// Set A[i][j]; debug-panics outside the logical band.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(j + self.kl >= i && i + self.ku >= j, "({i},{j}) outside band");
        let o = self.off(i, j);
        self.ab[o] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let o = self.off(i, j);
        self.ab[o] += v;
    }

    /// A[i][j] if inside the logical band, else 0.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i > j + self.kl || j > i + self.ku {
            return 0.0;
        }
        self.ab[self.off(i, j)]
    }

    /// y = A x (logical band only; call before factorization).
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        for yi in y.iter_mut() {
            *yi = 0.0;
        }
        for j in 0..n {
            let xj = x[j];
            if xj == 0.0 {
                continue;
            }
            let i_lo = j.saturating_sub(self.ku);
            let i_hi = (j + self.kl).min(n - 1);
            let base = self.off(i_lo, j);
            let col = &self.ab[base..=base + (i_hi - i_lo)];
            for (k, &a) in col.iter().enumerate() {
                y[i_lo + k] += a * xj;
            }
        }
    }

    /// In-place LU with partial pivoting (band version of Gaussian
    /// elimination). Returns the pivot vector.
    pub fn lu_factor(&mut self) -> Result<Vec<usize>> {
        let n = self.n;
        let kl = self.kl;
        let ku_eff = self.ku + kl; // fill-in widens the upper band
        let ldab = self.ldab;
        let mut piv = vec![0usize; n];
        for k in 0..n {
            let i_hi = (k + kl).min(n - 1);
            // pivot search in column k (contiguous slice)
            let base = self.off(k, k);
            let mut p = k;
            let mut pmax = self.ab[base].abs();
            for i in k + 1..=i_hi {
                let v = self.ab[base + (i - k)].abs();
                if v > pmax {
                    pmax = v;
                    p = i;
                }
            }
            if pmax == 0.0 {
                return Err(Error::LinearSolve(format!("singular at column {k}")));
            }
            piv[k] = p;
            let j_hi = (k + ku_eff).min(n - 1);
            if p != k {
                for j in k..=j_hi {
                    let ok = self.off(k, j);
                    let op = self.off(p, j);
                    self.ab.swap(ok, op);
                }
            }
            // multipliers in column k (contiguous)
            let akk = self.ab[base];
            for i in k + 1..=i_hi {
                self.ab[base + (i - k)] /= akk;
            }
            if i_hi == k {
                continue;
            }
            let nsub = i_hi - k;
            // rank-1 band update, contiguous in each column
            for j in k + 1..=j_hi {
                let akj = self.ab[self.off(k, j)];
                if akj == 0.0 {
                    continue;
                }
                let col_base = self.off(k + 1, j);
                let mul_base = base + 1;
                debug_assert!(col_base + nsub - 1 < self.ab.len());
                for t in 0..nsub {
                    let m = self.ab[mul_base + t];
                    self.ab[col_base + t] -= m * akj;
                }
            }
            let _ = ldab;
        }
        Ok(piv)
    }

    /// Solve LUx = Pb given the factorization and pivots.
    pub fn lu_solve(&self, piv: &[usize], b: &mut [f64]) {
        let n = self.n;
        let kl = self.kl;
        let ku_eff = self.ku + kl;
        for k in 0..n {
            let p = piv[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            if bk != 0.0 {
                let i_hi = (k + kl).min(n - 1);
                let base = self.off(k, k);
                for i in k + 1..=i_hi {
                    b[i] -= self.ab[base + (i - k)] * bk;
                }
            }
        }
        for k in (0..n).rev() {
            let j_hi = (k + ku_eff).min(n - 1);
            let mut s = b[k];
            for j in k + 1..=j_hi {
                s -= self.ab[self.off(k, j)] * b[j];
            }
            b[k] = s / self.ab[self.off(k, k)];
        }
    }
}

/// Banded system solver: factorizes a copy, solves, then runs iterative
/// refinement against the unfactored matrix, and reports the final max-norm
/// residual of the (row-scaled) system.
pub struct BandedSystem {
    pub a: BandedMatrix,
    pub rhs: Vec<f64>,
}

impl BandedSystem {
    pub fn solve(mut self) -> Result<(Vec<f64>, f64, usize)> {
        let n = self.a.n;
        let a0 = BandedMatrix {
            n,
            kl: self.a.kl,
            ku: self.a.ku,
            ab: self.a.ab.clone(),
            ldab: self.a.ldab,
        };
        let piv = self.a.lu_factor()?;
        let mut x = self.rhs.clone();
        self.a.lu_solve(&piv, &mut x);

        let mut iterations = 1usize;
        let mut resid = vec![0.0; n];
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            a0.matvec(&x, &mut resid);
            let mut rmax = 0.0f64;
            for i in 0..n {
                resid[i] = self.rhs[i] - resid[i];
                rmax = rmax.max(resid[i].abs());
            }
            if rmax >= best {
                break;
            }
            best = rmax;
            if rmax <= 1e-13 {
                break;
            }
            let mut dx = resid.clone();
            self.a.lu_solve(&piv, &mut dx);
            for i in 0..n {
                x[i] += dx[i];
            }
            iterations += 1;
        }
        a0.matvec(&x, &mut resid);
        let mut rmax = 0.0f64;
        for i in 0..n {
            rmax = rmax.max((self.rhs[i] - resid[i]).abs());
        }
        Ok((x, rmax, iterations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_poisson() {
        // -u'' = 1 on (0,1), u(0)=u(1)=0, classic tridiagonal system
        let n = 64;
        let h = 1.0 / (n as f64 + 1.0);
        let mut a = BandedMatrix::zeros(n, 1, 1);
        let rhs = vec![h * h; n];
        for i in 0..n {
            a.set(i, i, 2.0);
            if i > 0 {
                a.set(i, i - 1, -1.0);
            }
            if i + 1 < n {
                a.set(i, i + 1, -1.0);
            }
        }
        let (x, res, _) = BandedSystem { a, rhs }.solve().unwrap();
        assert!(res < 1e-12);
        for (i, &xi) in x.iter().enumerate() {
            let t = (i as f64 + 1.0) * h;
            assert!((xi - 0.5 * t * (1.0 - t)).abs() < 1e-10);
        }
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        let mut a = BandedMatrix::zeros(2, 1, 1);
        a.set(0, 1, 1.0);
        a.set(1, 0, 1.0);
        let (x, res, _) = BandedSystem {
            a,
            rhs: vec![2.0, 3.0],
        }
        .solve()
        .unwrap();
        assert!(res < 1e-14);
        assert!((x[0] - 3.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn wider_band_with_random_entries() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 200;
        let (kl, ku) = (5, 3);
        let mut a = BandedMatrix::zeros(n, kl, ku);
        let mut x_true = vec![0.0; n];
        for (i, xt) in x_true.iter_mut().enumerate() {
            *xt = rng.gen_range(-1.0..1.0);
            for j in i.saturating_sub(ku)..=(i + kl).min(n - 1) {
                let v: f64 = rng.gen_range(-1.0..1.0);
                a.set(j, i, v);
            }
        }
        for i in 0..n {
            a.add(i, i, 6.0);
        }
        let mut rhs = vec![0.0; n];
        a.matvec(&x_true, &mut rhs);
        let (x, res, _) = BandedSystem { a, rhs }.solve().unwrap();
        assert!(res < 1e-11, "residual {res}");
        for i in 0..n {
            assert!((x[i] - x_true[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn singular_reports_error() {
        let mut a = BandedMatrix::zeros(3, 1, 1);
        a.set(0, 0, 1.0);
        a.set(1, 1, 0.0);
        a.set(2, 2, 1.0);
        let r = BandedSystem {
            a,
            rhs: vec![1.0, 1.0, 1.0],
        }
        .solve();
        assert!(r.is_err());
    }
}
