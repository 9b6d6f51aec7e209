//! Vector algebra of Lorentz-Minkowski 4-space with signature (-, +, +, +).

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Band used to decide that a self inner product is zero.
pub const CAUSAL_TOL: f64 = 1e-12;

/// Diagonal of the ambient metric.
pub const SIGNATURE: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// A vector of E⁴₁ in rectangular coordinates (x1 is the timelike axis).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4([x1, x2, x3, x4])
    }

    /// Standard basis vector e_{i+1} (zero-based index).
    pub fn basis(i: usize) -> Self {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        Vec4(v)
    }

    pub fn x1(&self) -> f64 {
        self.0[0]
    }
    pub fn x2(&self) -> f64 {
        self.0[1]
    }
    pub fn x3(&self) -> f64 {
        self.0[2]
    }
    pub fn x4(&self) -> f64 {
        self.0[3]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Indefinite inner product with `other`.
    pub fn dot(&self, other: &Vec4) -> f64 {
        inner(self, other)
    }

    /// Plain Euclidean length of the coordinate tuple.
    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Vec4) -> f64 {
        (0..4)
            .map(|i| (self.0[i] - other.0[i]).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for Vec4 {
    fn add_assign(&mut self, rhs: Vec4) {
        for i in 0..4 {
            self.0[i] += rhs.0[i];
        }
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, rhs: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4(self.0.map(|x| -x))
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, rhs: Vec4) -> Vec4 {
        Vec4(rhs.0.map(|x| self * x))
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, rhs: f64) -> Vec4 {
        rhs * self
    }
}

impl fmt::Display for Vec4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// −u₁v₁ + u₂v₂ + u₃v₃ + u₄v₄
pub fn inner(u: &Vec4, v: &Vec4) -> f64 {
    -u.0[0] * v.0[0] + u.0[1] * v.0[1] + u.0[2] * v.0[2] + u.0[3] * v.0[3]
}

fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Ternary vector product: the formal determinant with first row
/// (−e₁, e₂, e₃, e₄) followed by the rows `u`, `v`, `w`.
///
/// The result is orthogonal to all three arguments under [`inner`].
pub fn triple_cross(u: &Vec4, v: &Vec4, w: &Vec4) -> Vec4 {
    let minor = |skip: usize| {
        let pick = |x: &Vec4| {
            let mut out = [0.0; 3];
            let mut k = 0;
            for (i, value) in x.0.iter().enumerate() {
                if i != skip {
                    out[k] = *value;
                    k += 1;
                }
            }
            out
        };
        det3(pick(u), pick(v), pick(w))
    };
    // cofactor C_0j = (-1)^j M_0j; the first-row entry for e₁ carries an extra minus.
    Vec4([-minor(0), -minor(1), minor(2), -minor(3)])
}

/// Spacelike when ⟨u,u⟩ > tol or u = 0, timelike when ⟨u,u⟩ < −tol,
/// lightlike otherwise. The band scales with the magnitude of the components.
pub fn causal_character(u: &Vec4) -> CausalCharacter {
    if u.0.iter().all(|x| *x == 0.0) {
        return CausalCharacter::Spacelike;
    }
    let q = inner(u, u);
    let scale = u.0.iter().map(|x| x * x).sum::<f64>().max(1.0);
    let tol = CAUSAL_TOL * scale;
    if q > tol {
        CausalCharacter::Spacelike
    } else if q < -tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

/// √|⟨u,u⟩|
pub fn norm(u: &Vec4) -> f64 {
    inner(u, u).abs().sqrt()
}
