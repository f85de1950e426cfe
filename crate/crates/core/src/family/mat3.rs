use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

/// 3x3 matrix over an exact commutative ring (Rational, Poly, or BiPoly).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat3<T> {
    pub entries: [[T; 3]; 3],
}

impl<T> Mat3<T>
where
    T: Clone + PartialEq + Zero + One + Sub<Output = T>,
{
    pub fn new(entries: [[T; 3]; 3]) -> Self {
        Mat3 { entries }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat3 {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero() -> Self {
        Mat3::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Mat3::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn map<U, F>(&self, mut f: F) -> Mat3<U>
    where
        F: FnMut(&T) -> U,
    {
        Mat3 {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.entries[i][j]))),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat3::from_fn(|i, j| self.entries[j][i].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|e| e.clone() * c.clone())
    }

    pub fn trace(&self) -> T {
        self.entries[0][0].clone() + self.entries[1][1].clone() + self.entries[2][2].clone()
    }

    /// Repeated multiplication; exponents stay tiny here.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Mat3::identity();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn det(&self) -> T {
        let e = &self.entries;
        let m = |i: usize, j: usize| e[i][j].clone();
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    }

    /// 2x2 principal minor obtained by deleting row/column `k`.
    pub fn principal_minor2(&self, k: usize) -> T {
        let idx: [usize; 2] = match k {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let m = |i: usize, j: usize| self.entries[idx[i]][idx[j]].clone();
        m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)
    }

    /// Elementary symmetric functions (e1, e2, e3) of the eigenvalues:
    /// trace, sum of principal 2x2 minors, determinant. The characteristic
    /// polynomial is lambda^3 - e1 lambda^2 + e2 lambda - e3.
    pub fn char_poly_elementary(&self) -> (T, T, T) {
        let e1 = self.trace();
        let e2 = self.principal_minor2(0) + self.principal_minor2(1) + self.principal_minor2(2);
        let e3 = self.det();
        (e1, e2, e3)
    }
}

impl<T> Mul for &Mat3<T>
where
    T: Clone + PartialEq + Zero + One + Sub<Output = T>,
{
    type Output = Mat3<T>;
    fn mul(self, rhs: &Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|i, j| {
            let mut acc = T::zero();
            for k in 0..3 {
                acc = acc + self.entries[i][k].clone() * rhs.entries[k][j].clone();
            }
            acc
        })
    }
}

impl<T> Add for &Mat3<T>
where
    T: Clone + PartialEq + Zero + One + Sub<Output = T>,
{
    type Output = Mat3<T>;
    fn add(self, rhs: &Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|i, j| self.entries[i][j].clone() + rhs.entries[i][j].clone())
    }
}

impl<T> Sub for &Mat3<T>
where
    T: Clone + PartialEq + Zero + One + Sub<Output = T>,
{
    type Output = Mat3<T>;
    fn sub(self, rhs: &Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|i, j| self.entries[i][j].clone() - rhs.entries[i][j].clone())
    }
}

impl<T: fmt::Display> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            writeln!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

// Row-major 3x3 array of entry objects.
impl<T: Serialize> Serialize for Mat3<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        for row in &self.entries {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}
