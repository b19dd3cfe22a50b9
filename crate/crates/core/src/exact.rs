//! Exact scalar arithmetic for reflection representations.
//!
//! Group arithmetic never touches floating point: crystallographic types work
//! over the rationals, the icosahedral type H3 over the quadratic extension
//! `Q(sqrt 5)`. Matrices here are tiny (rank x rank), so a dense row-major
//! representation with textbook Gaussian elimination is all we need.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// Exact rational scalar. `i128` gives ample headroom for rank <= 4 pivots.
pub type Rat = Ratio<i128>;

/// Field operations needed by the matrix code.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Approximation used only for layout/ordering heuristics, never for
    /// group arithmetic or equality.
    fn approx(&self) -> f64;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Ratio::from_integer(0)
    }
    fn one() -> Self {
        Ratio::from_integer(1)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn approx(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

/// Element of `Q(sqrt 5)`: `a + b*sqrt(5)`.
///
/// The golden ratio is `phi = (1 + sqrt 5) / 2`, so every entry of an H3
/// reflection matrix in the simple-root basis lives here.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sqrt5 {
    pub a: Rat,
    pub b: Rat,
}

impl Sqrt5 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Sqrt5 { a, b }
    }

    pub fn from_int(n: i128) -> Self {
        Sqrt5 {
            a: Ratio::from_integer(n),
            b: Ratio::from_integer(0),
        }
    }

    pub fn rational(a: Rat) -> Self {
        Sqrt5 {
            a,
            b: Ratio::from_integer(0),
        }
    }

    /// The golden ratio `(1 + sqrt 5) / 2`.
    pub fn phi() -> Self {
        Sqrt5 {
            a: Ratio::new(1, 2),
            b: Ratio::new(1, 2),
        }
    }

    /// Sign of the real number `a + b*sqrt(5)`, computed exactly.
    pub fn signum(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a^2 with 5 b^2; sign follows the larger.
        let a2 = self.a * self.a;
        let b25 = self.b * self.b * Ratio::from_integer(5);
        match a2.cmp(&b25) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn rat_sign(r: &Rat) -> i32 {
    if Zero::is_zero(r) {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for Sqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if Zero::is_zero(&self.a) {
            write!(f, "{}√5", self.b)
        } else {
            write!(f, "{}+{}√5", self.a, self.b)
        }
    }
}

impl Scalar for Sqrt5 {
    fn zero() -> Self {
        Sqrt5::from_int(0)
    }
    fn one() -> Self {
        Sqrt5::from_int(1)
    }
    fn add(&self, rhs: &Self) -> Self {
        Sqrt5::new(self.a + rhs.a, self.b + rhs.b)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Sqrt5::new(self.a - rhs.a, self.b - rhs.b)
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (a + b√5)(c + d√5) = ac + 5bd + (ad + bc)√5
        Sqrt5::new(
            self.a * rhs.a + Ratio::from_integer(5) * self.b * rhs.b,
            self.a * rhs.b + self.b * rhs.a,
        )
    }
    fn div(&self, rhs: &Self) -> Self {
        // Multiply by the conjugate: 1/(c + d√5) = (c - d√5)/(c^2 - 5 d^2).
        let norm = rhs.a * rhs.a - Ratio::from_integer(5) * rhs.b * rhs.b;
        assert!(!Zero::is_zero(&norm), "division by zero in Q(sqrt 5)");
        let conj = Sqrt5::new(rhs.a, -rhs.b);
        let num = self.mul(&conj);
        Sqrt5::new(num.a / norm, num.b / norm)
    }
    fn neg(&self) -> Self {
        Sqrt5::new(-self.a, -self.b)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn approx(&self) -> f64 {
        self.a.approx() + self.b.approx() * 5f64.sqrt()
    }
}

/// Dense square matrix over an exact scalar field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<K: Scalar> {
    pub n: usize,
    entries: Vec<K>,
}

impl<K: Scalar> Matrix<K> {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![K::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &K {
        &self.entries[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K) {
        self.entries[r * self.n + c] = v;
    }

    pub fn matmul(&self, rhs: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = K::zero();
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn apply(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| {
                let mut acc = K::zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = acc.add(&self.get(i, k).mul(vk));
                }
                acc
            })
            .collect()
    }

    /// Rank by fraction-free-ish Gaussian elimination (exact division).
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..n).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for c in 0..n {
                    let a = m.get(row, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let pv = m.get(row, col).clone();
            for r in (row + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).div(&pv);
                for c in col..n {
                    let v = m.get(r, c).sub(&factor.mul(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            rank += 1;
            row += 1;
            if row == n {
                break;
            }
        }
        rank
    }

    /// `self - I`, used for fixed-space codimension.
    pub fn minus_identity(&self) -> Matrix<K> {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.get(i, i).sub(&K::one());
            m.set(i, i, v);
        }
        m
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix<K>> {
        let n = self.n;
        let mut m = self.clone();
        let mut inv: Matrix<K> = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    let a = m.get(col, c).clone();
                    let b = m.get(pivot, c).clone();
                    m.set(col, c, b);
                    m.set(pivot, c, a);
                    let a = inv.get(col, c).clone();
                    let b = inv.get(pivot, c).clone();
                    inv.set(col, c, b);
                    inv.set(pivot, c, a);
                }
            }
            let pv = m.get(col, col).clone();
            for c in 0..n {
                m.set(col, c, m.get(col, c).div(&pv));
                inv.set(col, c, inv.get(col, c).div(&pv));
            }
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in 0..n {
                    let v = m.get(r, c).sub(&f.mul(m.get(col, c)));
                    m.set(r, c, v);
                    let v = inv.get(r, c).sub(&f.mul(inv.get(col, c)));
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }
}
