//! Minkowski-space algebra in signature (+,−,−,−).
//!
//! Contravariant components are stored; lowering an index flips the sign of
//! the spatial components. An antisymmetric tensor is written in terms of two
//! 3-vectors as `A = (a, b)` with `A^{0i} = a^i` and `A^{ij} = −ε^{ijk} b^k`.
//! In that representation the electromagnetic field tensor is `(−E, H)`, and
//! the dimensionless spin tensor of a moving magnetic moment is `(Φ, Π)`.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

/// Diagonal of the metric tensor.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn dot(&self, other: Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: Vec3) -> Vec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(*self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Vec3 {
        *self * (1.0 / self.norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, rhs: Vec3) {
        *self = *self + rhs;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3([self.0[0] * rhs, self.0[1] * rhs, self.0[2] * rhs])
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        rhs * self
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Contravariant four-vector `x^μ = (x^0, x^1, x^2, x^3)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    pub fn from_parts(time: f64, space: Vec3) -> Self {
        FourVector([time, space.0[0], space.0[1], space.0[2]])
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn space(&self) -> Vec3 {
        Vec3([self.0[1], self.0[2], self.0[3]])
    }

    /// Covariant components `x_μ`.
    pub fn lower(&self) -> [f64; 4] {
        let mut out = self.0;
        for (o, g) in out.iter_mut().zip(METRIC) {
            *o *= g;
        }
        out
    }

    /// Minkowski product `x_μ y^μ`.
    pub fn dot(&self, other: FourVector) -> f64 {
        self.0[0] * other.0[0] - self.0[1] * other.0[1] - self.0[2] * other.0[2] - self.0[3] * other.0[3]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.dot(*self)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        FourVector(out)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        self + (-rhs)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self * -1.0
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, rhs: f64) -> FourVector {
        FourVector(self.0.map(|v| v * rhs))
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, rhs: FourVector) -> FourVector {
        rhs * self
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// General rank-2 contravariant tensor `T^{μν}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tensor4(pub [[f64; 4]; 4]);

impl Tensor4 {
    pub fn zero() -> Self {
        Tensor4([[0.0; 4]; 4])
    }

    /// `g^{μν}`.
    pub fn metric() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, g) in METRIC.iter().enumerate() {
            m[i][i] = *g;
        }
        Tensor4(m)
    }

    /// `T^{μν} g_{νσ} x^σ`.
    pub fn contract(&self, x: FourVector) -> FourVector {
        let xl = x.lower();
        let mut out = [0.0; 4];
        for (mu, row) in self.0.iter().enumerate() {
            out[mu] = row.iter().zip(xl).map(|(t, x)| t * x).sum();
        }
        FourVector(out)
    }
}

impl Add for Tensor4 {
    type Output = Tensor4;
    fn add(self, rhs: Tensor4) -> Tensor4 {
        let mut out = self.0;
        for (orow, rrow) in out.iter_mut().zip(rhs.0) {
            for (o, r) in orow.iter_mut().zip(rrow) {
                *o += r;
            }
        }
        Tensor4(out)
    }
}

impl Mul<f64> for Tensor4 {
    type Output = Tensor4;
    fn mul(self, rhs: f64) -> Tensor4 {
        Tensor4(self.0.map(|row| row.map(|v| v * rhs)))
    }
}

/// Antisymmetric rank-2 contravariant tensor `A^{μν} = −A^{νμ}`.
///
/// Stored as a full matrix; every constructor produces an exactly
/// antisymmetric array.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AntisymTensor4(pub [[f64; 4]; 4]);

impl AntisymTensor4 {
    pub fn zero() -> Self {
        AntisymTensor4([[0.0; 4]; 4])
    }

    /// `(a, b)` representation: `A^{0i} = a^i`, `A^{ij} = −ε^{ijk} b^k`.
    pub fn from_parts(a: Vec3, b: Vec3) -> Self {
        let mut m = [[0.0; 4]; 4];
        for i in 0..3 {
            m[0][i + 1] = a[i];
            m[i + 1][0] = -a[i];
        }
        // A^{12} = −b^3, A^{23} = −b^1, A^{31} = −b^2
        m[1][2] = -b[2];
        m[2][1] = b[2];
        m[2][3] = -b[0];
        m[3][2] = b[0];
        m[3][1] = -b[1];
        m[1][3] = b[1];
        AntisymTensor4(m)
    }

    /// Inverse of [`AntisymTensor4::from_parts`].
    pub fn parts(&self) -> (Vec3, Vec3) {
        let m = &self.0;
        let a = Vec3([m[0][1], m[0][2], m[0][3]]);
        let b = Vec3([-m[2][3], -m[3][1], -m[1][2]]);
        (a, b)
    }

    /// Field-strength tensor `F^{μν} = ∂^μA^ν − ∂^νA^μ` for the lab fields `E`, `H`.
    pub fn from_field(e: Vec3, h: Vec3) -> Self {
        Self::from_parts(-e, h)
    }

    /// `(E, H)` read back from a field-strength tensor.
    pub fn field_parts(&self) -> (Vec3, Vec3) {
        let (a, b) = self.parts();
        (-a, b)
    }

    /// `a^{[μ} b^{ν]} = a^μ b^ν − a^ν b^μ` (no factor 1/2).
    pub fn wedge(a: FourVector, b: FourVector) -> Self {
        let mut m = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                m[mu][nu] = a[mu] * b[nu] - a[nu] * b[mu];
            }
        }
        AntisymTensor4(m)
    }

    /// `X^{μν} − X^{νμ}` for an arbitrary matrix `X`.
    pub fn antisymmetrize(x: &Tensor4) -> Self {
        let mut m = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                m[mu][nu] = x.0[mu][nu] - x.0[nu][mu];
            }
        }
        AntisymTensor4(m)
    }

    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.0[mu][nu]
    }

    /// `A^{μν} g_{νσ} x^σ`.
    pub fn contract(&self, x: FourVector) -> FourVector {
        let xl = x.lower();
        let mut out = [0.0; 4];
        for (mu, row) in self.0.iter().enumerate() {
            out[mu] = row.iter().zip(xl).map(|(a, x)| a * x).sum();
        }
        FourVector(out)
    }

    /// `x_μ A^{μν}`.
    pub fn left_contract(&self, x: FourVector) -> FourVector {
        -self.contract(x)
    }

    /// `x_μ A^{μν} y_ν`.
    pub fn sandwich(&self, x: FourVector, y: FourVector) -> f64 {
        x.dot(self.contract(y))
    }

    /// Double contraction `A^{αβ} B_{αβ}`.
    pub fn double_contract(&self, other: &AntisymTensor4) -> f64 {
        let mut s = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                s += self.0[a][b] * other.0[a][b] * METRIC[a] * METRIC[b];
            }
        }
        s
    }

    /// Mixed product `A^{μα} g_{αβ} B^{βν}`.
    pub fn mixed_product(&self, other: &AntisymTensor4) -> Tensor4 {
        let mut m = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                let mut s = 0.0;
                for a in 0..4 {
                    s += self.0[mu][a] * METRIC[a] * other.0[a][nu];
                }
                m[mu][nu] = s;
            }
        }
        Tensor4(m)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest `|A^{μν} + A^{νμ}|`; zero for every tensor built by this module.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut d = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                d = d.max((self.0[mu][nu] + self.0[nu][mu]).abs());
            }
        }
        d
    }
}

impl Add for AntisymTensor4 {
    type Output = AntisymTensor4;
    fn add(self, rhs: AntisymTensor4) -> AntisymTensor4 {
        let mut out = self.0;
        for (orow, rrow) in out.iter_mut().zip(rhs.0) {
            for (o, r) in orow.iter_mut().zip(rrow) {
                *o += r;
            }
        }
        AntisymTensor4(out)
    }
}

impl Sub for AntisymTensor4 {
    type Output = AntisymTensor4;
    fn sub(self, rhs: AntisymTensor4) -> AntisymTensor4 {
        self + rhs * -1.0
    }
}

impl Mul<f64> for AntisymTensor4 {
    type Output = AntisymTensor4;
    fn mul(self, rhs: f64) -> AntisymTensor4 {
        AntisymTensor4(self.0.map(|row| row.map(|v| v * rhs)))
    }
}

/// Pure boost taking rest-frame components to a frame where the rest frame
/// moves with velocity `beta` (in units of c).
#[derive(Debug, Clone, Copy)]
pub struct Boost {
    matrix: [[f64; 4]; 4],
}

impl Boost {
    pub fn new(beta: Vec3) -> Self {
        let b2 = beta.norm_sqr();
        let gamma = 1.0 / (1.0 - b2).sqrt();
        let mut m = [[0.0; 4]; 4];
        m[0][0] = gamma;
        for i in 0..3 {
            m[0][i + 1] = gamma * beta[i];
            m[i + 1][0] = gamma * beta[i];
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                let k = if b2 > 0.0 { (gamma - 1.0) / b2 } else { 0.0 };
                m[i + 1][j + 1] = delta + k * beta[i] * beta[j];
            }
        }
        Boost { matrix: m }
    }

    pub fn apply(&self, x: FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for (mu, row) in self.matrix.iter().enumerate() {
            out[mu] = row.iter().zip(x.0).map(|(l, x)| l * x).sum();
        }
        FourVector(out)
    }

    pub fn apply_tensor(&self, t: &AntisymTensor4) -> AntisymTensor4 {
        let l = &self.matrix;
        let mut m = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                let mut s = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        s += l[mu][a] * l[nu][b] * t.0[a][b];
                    }
                }
                m[mu][nu] = s;
            }
        }
        AntisymTensor4(m)
    }
}
