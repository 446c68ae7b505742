use crate::{FourierError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    Galerkin,
    Collocation,
}

/// Discretisation of `[0,1)^d` with nodes `x_j = j / M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    d: usize,
    n: usize,
    m: usize,
    convention: Convention,
}

/// Smallest 5-smooth integer `>= n`.
pub fn next_fft_size(n: usize) -> usize {
    let mut m = n.max(1);
    loop {
        let mut r = m;
        for p in [2, 3, 5] {
            while r % p == 0 {
                r /= p;
            }
        }
        if r == 1 {
            return m;
        }
        m += 1;
    }
}

impl GridSpec {
    /// Galerkin grid with the smallest convenient `M >= 3(2N+1)`.
    pub fn galerkin(d: usize, n: usize) -> Result<Self> {
        Self::galerkin_with_m(d, n, next_fft_size(3 * (2 * n + 1)))
    }

    pub fn galerkin_with_m(d: usize, n: usize, m: usize) -> Result<Self> {
        check_dim(d)?;
        let need = 3 * (2 * n + 1);
        if m < need {
            return Err(FourierError::GridTooCoarse { n, m, need });
        }
        Ok(GridSpec { d, n, m, convention: Convention::Galerkin })
    }

    pub fn collocation(d: usize, n: usize) -> Result<Self> {
        check_dim(d)?;
        if n == 0 || n % 2 != 0 {
            return Err(FourierError::OddCollocation(n));
        }
        Ok(GridSpec { d, n, m: n, convention: Convention::Collocation })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn is_galerkin(&self) -> bool {
        self.convention == Convention::Galerkin
    }

    /// Coefficients stored per axis.
    pub fn band_width(&self) -> usize {
        match self.convention {
            Convention::Galerkin => 2 * self.n + 1,
            Convention::Collocation => self.n,
        }
    }

    pub fn band_len(&self) -> usize {
        self.band_width().pow(self.d as u32)
    }

    pub fn node_count(&self) -> usize {
        self.m.pow(self.d as u32)
    }

    /// Smallest wave number on each axis.
    pub fn k_min(&self) -> i64 {
        match self.convention {
            Convention::Galerkin => -(self.n as i64),
            Convention::Collocation => -(self.n as i64) / 2 + 1,
        }
    }

    /// Largest wave number on each axis.
    pub fn k_max(&self) -> i64 {
        match self.convention {
            Convention::Galerkin => self.n as i64,
            Convention::Collocation => self.n as i64 / 2,
        }
    }

    /// Wave vector of the flat band index `i` (axis 0 varies slowest).
    pub fn wave_vector(&self, mut i: usize) -> [i64; 3] {
        let w = self.band_width();
        let mut k = [0i64; 3];
        for ax in (0..self.d).rev() {
            k[ax] = (i % w) as i64 + self.k_min();
            i /= w;
        }
        k
    }

    /// Flat band index of `k`, or `None` outside the band.
    pub fn band_index(&self, k: &[i64]) -> Option<usize> {
        let w = self.band_width();
        let mut i = 0usize;
        for ax in 0..self.d {
            let kk = *k.get(ax).unwrap_or(&0);
            if kk < self.k_min() || kk > self.k_max() {
                return None;
            }
            i = i * w + (kk - self.k_min()) as usize;
        }
        Some(i)
    }

    /// Flat index into an `M^d` FFT buffer holding wave vector `k`.
    pub(crate) fn fft_index(&self, k: &[i64], m: usize) -> usize {
        let mut i = 0usize;
        for &kk in &k[..self.d] {
            i = i * m + kk.rem_euclid(m as i64) as usize;
        }
        i
    }

    /// Coordinates of flat node `j`.
    pub fn node(&self, mut j: usize) -> [f64; 3] {
        let mut x = [0.0; 3];
        for ax in (0..self.d).rev() {
            x[ax] = (j % self.m) as f64 / self.m as f64;
            j /= self.m;
        }
        x
    }

    /// Same grid with a different cutoff (Galerkin only).
    pub(crate) fn with_cutoff(&self, n: usize) -> Result<Self> {
        if !self.is_galerkin() {
            return Err(FourierError::NotGalerkin("changing the cutoff"));
        }
        if n > self.n {
            return Err(FourierError::CutoffTooLarge { requested: n, available: self.n });
        }
        Ok(GridSpec { n, ..*self })
    }
}

fn check_dim(d: usize) -> Result<()> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(FourierError::Dimension(d))
    }
}
