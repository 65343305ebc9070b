//! Dense square complex matrices for one- and two-qubit operators.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest register handled: one probe qubit plus one system qubit.
pub const MAX_DIM: usize = 4;

/// Dense `dim × dim` complex matrix stored row-major, `dim ∈ {2, 4}`.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

#[inline]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        Ok(m)
    }

    /// Builds a matrix from row-major entries. Rejects NaN/Inf.
    pub fn from_row_major(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::EntryCount {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows<const N: usize>(rows: [[Complex<T>; N]; N]) -> Result<Self> {
        Self::from_row_major(N, rows.into_iter().flatten().collect())
    }

    pub fn from_real_diagonal(diag: &[T]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        if diag.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, T::zero());
        }
        Ok(m)
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(ket: &[Complex<T>], bra: &[Complex<T>]) -> Result<Self> {
        if ket.len() != bra.len() {
            return Err(Error::DimensionMismatch {
                left: ket.len(),
                right: bra.len(),
            });
        }
        let dim = ket.len();
        let data = ket
            .iter()
            .flat_map(|a| bra.iter().map(move |b| *a * b.conj()))
            .collect();
        Self::from_row_major(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    fn product(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                for j in 0..n {
                    out[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.product(other))
    }

    /// Kronecker product with `self` as the left (first) factor.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let n = self.dim * other.dim;
        if n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        let (p, q) = (self.dim, other.dim);
        let mut out = Self::zeros(n)?;
        for i in 0..p {
            for j in 0..p {
                let a = self[(i, j)];
                for k in 0..q {
                    for l in 0..q {
                        out[(i * q + k, j * q + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.data[j * n + i].conj());
            }
        }
        Self { dim: n, data }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self[(i, i)]
        })
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| *z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(Complex::new(factor, T::zero()))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max))
    }

    /// Largest entrywise modulus of `self − self†`.
    pub fn hermiticity_error(&self) -> T {
        self.max_abs_diff(&self.dagger()).expect("same dimension")
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// `u · self · u†`.
    pub fn conjugated_by(&self, u: &Self) -> Result<Self> {
        Ok(u.matmul(self)?.product(&u.dagger()))
    }

    /// Converts to another scalar type, e.g. `f64 → f32`.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64())))
                .collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

// The operator impls panic on mismatched dimensions; use the `checked_*`
// and `matmul` methods where dimensions are not known statically.

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        self.checked_add(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        self.checked_sub(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs).expect("matrix dimensions agree")
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn neg(self) -> ComplexMatrix<T> {
        self.scale_real(-T::one())
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = &self[(i, j)];
                write!(f, "({:?}, {:?})  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The 2×2 identity.
pub fn identity2<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::identity(2).expect("dim 2")
}

pub fn pauli_x<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_rows([[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]]).expect("dim 2")
}

pub fn pauli_y<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_rows([[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]]).expect("dim 2")
}

pub fn pauli_z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_rows([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]]).expect("dim 2")
}

/// `(1/√2)[[1, 1], [1, −1]]`.
pub fn hadamard<T: Real>() -> ComplexMatrix<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    ComplexMatrix::from_rows([
        [Complex::new(h, z), Complex::new(h, z)],
        [Complex::new(h, z), Complex::new(-h, z)],
    ])
    .expect("dim 2")
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn close(a: &M, b: &M) -> bool {
        a.max_abs_diff(b).unwrap() < 1e-14
    }

    #[test]
    fn pauli_products() {
        let (x, y, z) = (pauli_x::<f64>(), pauli_y::<f64>(), pauli_z::<f64>());
        assert!(close(&(&x * &x), &identity2()));
        assert!(close(&(&x * &y), &z.scale(Complex::new(0.0, 1.0))));
        assert!(close(&(&identity2() * &y), &y));
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = M::identity(2).unwrap();
        let b = M::identity(4).unwrap();
        assert_eq!(
            a.matmul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 4 })
        );
    }

    #[test]
    fn constructors_reject_bad_dims_and_nan() {
        assert_eq!(M::zeros(3).unwrap_err(), Error::UnsupportedDimension(3));
        assert_eq!(M::zeros(8).unwrap_err(), Error::UnsupportedDimension(8));
        let bad = vec![Complex::new(f64::NAN, 0.0); 4];
        assert_eq!(M::from_row_major(2, bad).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn kron_examples() {
        let p0 = M::from_real_diagonal(&[1.0, 0.0]).unwrap();
        let half = M::from_real_diagonal(&[0.5, 0.5]).unwrap();
        let k = p0.kron(&half).unwrap();
        assert!(close(
            &k,
            &M::from_real_diagonal(&[0.5, 0.5, 0.0, 0.0]).unwrap()
        ));

        let ii = identity2::<f64>().kron(&identity2()).unwrap();
        assert!(close(&ii, &M::identity(4).unwrap()));

        let zz = pauli_z::<f64>().kron(&pauli_z()).unwrap();
        assert!(close(
            &zz,
            &M::from_real_diagonal(&[1.0, -1.0, -1.0, 1.0]).unwrap()
        ));

        assert_eq!(ii.kron(&p0).unwrap_err(), Error::UnsupportedDimension(8));
    }

    #[test]
    fn dagger_and_trace() {
        let y = pauli_y::<f64>();
        assert!(close(&y.dagger(), &y));
        let a = M::from_rows([[c(1., 2.), c(3., -1.)], [c(0., 4.), c(-2., 0.5)]]).unwrap();
        assert!(close(&a.dagger().dagger(), &a));
        assert_eq!(M::identity(4).unwrap().trace(), Complex::new(4.0, 0.0));
        assert_eq!(pauli_x::<f64>().trace(), Complex::new(0.0, 0.0));
        let p = M::from_real_diagonal(&[0.5, 0.5, 0.0, 0.0]).unwrap();
        assert_eq!(p.trace(), Complex::new(1.0, 0.0));
    }

    #[test]
    fn hadamard_is_involution() {
        let h = hadamard::<f64>();
        assert!(close(&(&h * &h), &identity2()));
    }

    #[test]
    fn single_precision_works() {
        let x = pauli_x::<f32>();
        let p = &x * &x;
        assert!(p.max_abs_diff(&identity2()).unwrap() < 1e-6);
    }
}
