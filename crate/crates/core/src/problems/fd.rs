//! Finite-difference oracles, independent of the spectral machinery.

/// Second-order finite-volume solution of the radial problem
/// `(r u')' = r f(r)` on `[0, 1]` with `u'(0) = 0`, `u(1) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub h: f64,
    pub values: Vec<f64>,
}

impl RadialProfile {
    /// Linear interpolation; `r` is clamped to `[0, 1]`.
    pub fn value(&self, r: f64) -> f64 {
        let n = self.values.len() - 1;
        let t = (r.clamp(0.0, 1.0) / self.h).min(n as f64);
        let i = (t.floor() as usize).min(n - 1);
        let frac = t - i as f64;
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }
}

/// Solve on `intervals` uniform cells. The finite-volume equations
/// telescope, so the discrete fluxes follow from a running sum and the
/// values from a backward sweep from `u(1) = 0`.
pub fn fd_radial(intervals: usize, f: impl Fn(f64) -> f64) -> RadialProfile {
    assert!(intervals >= 2, "need at least two cells");
    let n = intervals;
    let h = 1.0 / n as f64;
    // flux[i] = r_{i+1/2} (u_{i+1} - u_i) / h
    let mut flux = vec![0.0; n];
    flux[0] = f(0.0) * h * h / 8.0;
    for i in 1..n {
        let r = i as f64 * h;
        flux[i] = flux[i - 1] + h * r * f(r);
    }
    let mut values = vec![0.0; n + 1];
    for i in (0..n).rev() {
        let r_half = (i as f64 + 0.5) * h;
        values[i] = values[i + 1] - h * flux[i] / r_half;
    }
    RadialProfile { h, values }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlateSupport {
    /// `u = ∂u/∂n = 0`.
    Clamped,
    /// `u = ∂²u/∂n² = 0`.
    SimplySupported,
}

/// Nodal deflections of the unit-square plate `∇⁴u = q` on an
/// `points × points` grid including the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateGrid {
    pub points: usize,
    /// Row-major in `(i, j)` = `(x index, y index)`.
    pub values: Vec<f64>,
}

impl PlateGrid {
    pub fn h(&self) -> f64 {
        1.0 / (self.points - 1) as f64
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.points + j]
    }

    pub fn center(&self) -> f64 {
        let c = (self.points - 1) / 2;
        self.at(c, c)
    }

    /// Bilinear interpolation at `(x, y) ∈ [0, 1]²`.
    pub fn interpolate(&self, x: f64, y: f64) -> f64 {
        let last = self.points - 1;
        let (tx, ty) = (
            x.clamp(0.0, 1.0) * last as f64,
            y.clamp(0.0, 1.0) * last as f64,
        );
        let (i, j) = (
            (tx.floor() as usize).min(last - 1),
            (ty.floor() as usize).min(last - 1),
        );
        let (fx, fy) = (tx - i as f64, ty - j as f64);
        self.at(i, j) * (1.0 - fx) * (1.0 - fy)
            + self.at(i + 1, j) * fx * (1.0 - fy)
            + self.at(i, j + 1) * (1.0 - fx) * fy
            + self.at(i + 1, j + 1) * fx * fy
    }
}

/// Symmetric positive definite band matrix, upper band stored row by row.
struct BandMatrix {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    fn zeros(n: usize, bw: usize) -> Self {
        Self {
            n,
            bw,
            data: vec![0.0; n * (bw + 1)],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j >= i && j - i <= self.bw);
        i * (self.bw + 1) + (j - i)
    }

    fn add(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    /// In-place `A = UᵀU`; returns `None` if a pivot is not positive.
    fn cholesky(mut self) -> Option<Self> {
        let (n, bw) = (self.n, self.bw);
        for k in 0..n {
            let kk = self.idx(k, k);
            let d = self.data[kk];
            if d <= 0.0 {
                return None;
            }
            let d = d.sqrt();
            self.data[kk] = d;
            let end = (k + bw + 1).min(n);
            for j in k + 1..end {
                let kj = self.idx(k, j);
                self.data[kj] /= d;
            }
            for i in k + 1..end {
                let aki = self.data[self.idx(k, i)];
                if aki == 0.0 {
                    continue;
                }
                for j in i..end {
                    let akj = self.data[self.idx(k, j)];
                    let ij = self.idx(i, j);
                    self.data[ij] -= aki * akj;
                }
            }
        }
        Some(self)
    }

    #[allow(clippy::needless_range_loop)]
    fn solve(&self, b: &mut [f64]) {
        let (n, bw) = (self.n, self.bw);
        // Uᵀ y = b
        for i in 0..n {
            let mut s = b[i];
            for k in i.saturating_sub(bw)..i {
                s -= self.data[self.idx(k, i)] * b[k];
            }
            b[i] = s / self.data[self.idx(i, i)];
        }
        // U x = y
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in i + 1..(i + bw + 1).min(n) {
                s -= self.data[self.idx(i, j)] * b[j];
            }
            b[i] = s / self.data[self.idx(i, i)];
        }
    }
}

/// 13-point finite-difference solve of `∇⁴u = load` on the unit square with
/// `u = 0` on the boundary and the second condition imposed through mirror
/// ghost nodes (`u₋₁ = u₁` clamped, `u₋₁ = -u₁` simply supported).
pub fn fd_biharmonic(points: usize, support: PlateSupport, load: f64) -> Option<PlateGrid> {
    assert!(points >= 5, "grid too coarse");
    let inner = points - 2;
    let h = 1.0 / (points - 1) as f64;
    let ghost = match support {
        PlateSupport::Clamped => 1.0,
        PlateSupport::SimplySupported => -1.0,
    };
    let unknown = |i: usize, j: usize| (i - 1) * inner + (j - 1);
    let mut a = BandMatrix::zeros(inner * inner, 2 * inner);
    let offsets: [(isize, isize, f64); 12] = [
        (1, 0, -8.0),
        (-1, 0, -8.0),
        (0, 1, -8.0),
        (0, -1, -8.0),
        (1, 1, 2.0),
        (1, -1, 2.0),
        (-1, 1, 2.0),
        (-1, -1, 2.0),
        (2, 0, 1.0),
        (-2, 0, 1.0),
        (0, 2, 1.0),
        (0, -2, 1.0),
    ];
    let last = (points - 1) as isize;
    for i in 1..=inner {
        for j in 1..=inner {
            let row = unknown(i, j);
            a.add(row, row, 20.0);
            for &(di, dj, c) in &offsets {
                let (ni, nj) = (i as isize + di, j as isize + dj);
                // Only the stencil arms of length two reach past the boundary.
                let mirror = |k: isize| {
                    if k < 0 {
                        Some(-k)
                    } else if k > last {
                        Some(2 * last - k)
                    } else {
                        None
                    }
                };
                match (mirror(ni), mirror(nj)) {
                    (Some(mi), None) => {
                        let col = unknown(mi as usize, nj as usize);
                        if col >= row {
                            a.add(row, col, ghost * c);
                        }
                    }
                    (None, Some(mj)) => {
                        let col = unknown(ni as usize, mj as usize);
                        if col >= row {
                            a.add(row, col, ghost * c);
                        }
                    }
                    (None, None) => {
                        if ni == 0 || nj == 0 || ni == last || nj == last {
                            continue;
                        }
                        let col = unknown(ni as usize, nj as usize);
                        if col >= row {
                            a.add(row, col, c);
                        }
                    }
                    (Some(_), Some(_)) => unreachable!("diagonal arms have length one"),
                }
            }
        }
    }
    let chol = a.cholesky()?;
    let mut rhs = vec![load * h.powi(4); inner * inner];
    chol.solve(&mut rhs);
    let mut values = vec![0.0; points * points];
    for i in 1..=inner {
        for j in 1..=inner {
            values[i * points + j] = rhs[unknown(i, j)];
        }
    }
    Some(PlateGrid { points, values })
}

/// Richardson extrapolation of the `points` grid against the `2·points - 1`
/// grid, returned on the coarse nodes.
pub fn fd_biharmonic_extrapolated(
    points: usize,
    support: PlateSupport,
    load: f64,
) -> Option<(PlateGrid, PlateGrid, PlateGrid)> {
    let coarse = fd_biharmonic(points, support, load)?;
    let fine = fd_biharmonic(2 * points - 1, support, load)?;
    let mut values = vec![0.0; points * points];
    for i in 0..points {
        for j in 0..points {
            values[i * points + j] = (4.0 * fine.at(2 * i, 2 * j) - coarse.at(i, j)) / 3.0;
        }
    }
    Some((PlateGrid { points, values }, coarse, fine))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_solver_reproduces_quadratic() {
        // f = 4 → u = r² - 1 exactly (second-order scheme, quadratic solution).
        let p = fd_radial(1000, |_| 4.0);
        for k in 0..=10 {
            let r = k as f64 / 10.0;
            assert!((p.value(r) - (r * r - 1.0)).abs() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn band_cholesky_solves_small_system() {
        // Tridiagonal [2 -1; -1 2 -1; -1 2] x = (1, 0, 1) → x = (1, 1, 1).
        let mut a = BandMatrix::zeros(3, 1);
        for i in 0..3 {
            a.add(i, i, 2.0);
        }
        a.add(0, 1, -1.0);
        a.add(1, 2, -1.0);
        let c = a.cholesky().unwrap();
        let mut b = vec![1.0, 0.0, 1.0];
        c.solve(&mut b);
        assert!(b.iter().all(|x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn plate_grid_is_symmetric_and_zero_on_boundary() {
        let g = fd_biharmonic(17, PlateSupport::Clamped, 1.0).unwrap();
        let n = g.points;
        for i in 0..n {
            assert_eq!(g.at(i, 0), 0.0);
            assert_eq!(g.at(0, i), 0.0);
            assert_eq!(g.at(i, n - 1), 0.0);
            for j in 0..n {
                assert!((g.at(i, j) - g.at(j, i)).abs() < 1e-15);
                assert!((g.at(i, j) - g.at(n - 1 - i, j)).abs() < 1e-15);
            }
        }
        assert!(g.center() > 0.0);
    }
}
