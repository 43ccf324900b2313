//! Seeded matrix generators for suites and benchmarks. All draws go through
//! ChaCha8 so identical seeds give identical matrices on every platform.

use num_complex::Complex;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Mat;
use crate::scalar::{Cplx, Real};

/// Generator families accepted in run configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Dense complex Gaussian entries scaled by 1/sqrt(N).
    RandomDense,
    /// Unitary conjugation of a random diagonal (normal matrix).
    NormalRandom,
    /// Single Jordan block with eigenvalue 1/2.
    Jordan,
    /// Grcar-style banded Toeplitz.
    GrcarLike,
}

impl Family {
    pub fn parse(name: &str) -> Option<Family> {
        match name {
            "random-dense" => Some(Family::RandomDense),
            "normal-random" => Some(Family::NormalRandom),
            "jordan" => Some(Family::Jordan),
            "grcar-like" => Some(Family::GrcarLike),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::RandomDense => "random-dense",
            Family::NormalRandom => "normal-random",
            Family::Jordan => "jordan",
            Family::GrcarLike => "grcar-like",
        }
    }
}

/// Deterministic stream of reals/complexes over any `Real` scalar.
pub struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    pub fn seeded(seed: u64) -> Self {
        Draw { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform in [0, 1).
    pub fn uniform<T: Real>(&mut self) -> T {
        T::real((self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller.
    pub fn normal<T: Real>(&mut self) -> T {
        let u1: f64 = ((self.rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
        let u2: f64 = (self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        T::real((-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos())
    }

    /// Complex standard normal (unit variance overall).
    pub fn cnormal<T: Real>(&mut self) -> Cplx<T> {
        let s = T::real(std::f64::consts::FRAC_1_SQRT_2);
        Complex::new(self.normal::<T>() * s, self.normal::<T>() * s)
    }

    pub fn unit_vector<T: Real>(&mut self, n: usize) -> Vec<Cplx<T>> {
        let mut v: Vec<Cplx<T>> = (0..n).map(|_| self.cnormal()).collect();
        let nrm = crate::linalg::norm2(&v);
        crate::linalg::scale_vec(&mut v, Complex::new(T::one() / nrm, T::zero()));
        v
    }
}

/// Random unitary from QR of a complex Gaussian matrix (Gram-Schmidt columns).
pub fn random_unitary<T: Real>(n: usize, draw: &mut Draw) -> Mat<T> {
    let mut cols: Vec<Vec<Cplx<T>>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v: Vec<Cplx<T>> = (0..n).map(|_| draw.cnormal()).collect();
        for c in &cols {
            let proj = crate::linalg::dot(c, &v);
            for i in 0..n {
                v[i] -= c[i] * proj;
            }
        }
        let nrm = crate::linalg::norm2(&v);
        crate::linalg::scale_vec(&mut v, Complex::new(T::one() / nrm, T::zero()));
        cols.push(v);
    }
    Mat::from_fn(n, n, |i, j| cols[j][i])
}

/// Generate a seeded matrix of the given family and size.
pub fn generate<T: Real>(family: Family, size: usize, seed: u64) -> Mat<T> {
    let mut draw = Draw::seeded(seed);
    match family {
        Family::RandomDense => {
            let scale = T::one() / T::real(size as f64).sqrt();
            Mat::from_fn(size, size, |_, _| draw.cnormal::<T>() * scale)
        }
        Family::NormalRandom => {
            let eigs: Vec<Cplx<T>> = (0..size)
                .map(|_| {
                    // uniform in the unit disk
                    let r = draw.uniform::<T>().sqrt();
                    let t = draw.uniform::<T>() * T::TAU();
                    Complex::new(r * t.cos(), r * t.sin())
                })
                .collect();
            let u = random_unitary::<T>(size, &mut draw);
            u.matmul(&Mat::diag(&eigs)).matmul(&u.adjoint())
        }
        Family::Jordan => Mat::from_fn(size, size, |i, j| {
            if i == j {
                Complex::new(T::real(0.5), T::zero())
            } else if j == i + 1 {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        }),
        Family::GrcarLike => Mat::from_fn(size, size, |i, j| {
            if j + 1 == i {
                Complex::new(-T::one(), T::zero())
            } else if j >= i && j <= i + 3 {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        }),
    }
}

/// Normal matrix with the given eigenvalues under a seeded random unitary.
pub fn normal_with_spectrum<T: Real>(eigs: &[Cplx<T>], seed: u64) -> Mat<T> {
    let mut draw = Draw::seeded(seed);
    let u = random_unitary::<T>(eigs.len(), &mut draw);
    u.matmul(&Mat::diag(eigs)).matmul(&u.adjoint())
}
