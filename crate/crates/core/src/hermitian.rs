//! 3×3 Hermitian observations and covariances.
//!
//! A multi-look polarimetric observation `Z⁽ⁿ⁾ = (1/n) Σ Z(k) Z(k)*ᵗ` is
//! Hermitian, so only its three real diagonal entries and three complex
//! upper-triangle entries are stored. Channel order is HH, HV, VV and the
//! off-diagonal order is (HH·HV*, HH·VV*, HV·VV*).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_complex::Complex64 as Complex;

/// Dense 3×3 complex matrix, row-major.
pub type Matrix3c = [[Complex; 3]; 3];

/// Upper-triangle position of each stored off-diagonal entry.
pub const OFFDIAG_INDEX: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Channel names in storage order.
pub const CHANNELS: [&str; 3] = ["HH", "HV", "VV"];

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Compact Hermitian 3×3 matrix: real diagonal plus upper triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermitianCov3 {
    pub d: [f64; 3],
    pub o: [Complex; 3],
}

impl HermitianCov3 {
    pub fn new(d: [f64; 3], o: [Complex; 3]) -> Result<Self> {
        let m = Self { d, o };
        m.validate()?;
        Ok(m)
    }

    pub const fn identity() -> Self {
        Self {
            d: [1.0; 3],
            o: [ZERO; 3],
        }
    }

    pub const fn diagonal(a: f64, b: f64, c: f64) -> Self {
        Self {
            d: [a, b, c],
            o: [ZERO; 3],
        }
    }

    /// Build from the nine reals of the raster layout
    /// `[d0, d1, d2, re01, im01, re02, im02, re12, im12]`.
    pub fn from_array9(v: [f64; 9]) -> Self {
        Self {
            d: [v[0], v[1], v[2]],
            o: [
                Complex::new(v[3], v[4]),
                Complex::new(v[5], v[6]),
                Complex::new(v[7], v[8]),
            ],
        }
    }

    pub fn to_array9(&self) -> [f64; 9] {
        [
            self.d[0],
            self.d[1],
            self.d[2],
            self.o[0].re,
            self.o[0].im,
            self.o[1].re,
            self.o[1].im,
            self.o[2].re,
            self.o[2].im,
        ]
    }

    /// Checks finiteness and non-negative diagonal.
    pub fn validate(&self) -> Result<()> {
        if !self.to_array9().iter().all(|v| v.is_finite()) {
            return Err(Error::Parameter("non-finite Hermitian entry".into()));
        }
        if self.d.iter().any(|&v| v < 0.0) {
            return Err(Error::Parameter(format!(
                "negative diagonal entry in {:?}",
                self.d
            )));
        }
        Ok(())
    }

    /// Entry (i, j) of the full matrix.
    pub fn get(&self, i: usize, j: usize) -> Complex {
        match (i, j) {
            _ if i == j => Complex::new(self.d[i], 0.0),
            (0, 1) => self.o[0],
            (0, 2) => self.o[1],
            (1, 2) => self.o[2],
            _ => self.get(j, i).conj(),
        }
    }

    /// Reconstruct the full Hermitian matrix; entry (i,j) = conj(entry (j,i)).
    pub fn to_full(&self) -> Matrix3c {
        let mut m = [[ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.get(i, j);
            }
        }
        m
    }

    /// Compact form of a full matrix. The upper triangle and the real part of
    /// the diagonal are kept; the matrix is assumed Hermitian.
    pub fn from_full(m: &Matrix3c) -> Self {
        Self {
            d: [m[0][0].re, m[1][1].re, m[2][2].re],
            o: OFFDIAG_INDEX.map(|(i, j)| m[i][j]),
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            d: self.d.map(|v| v * c),
            o: self.o.map(|v| v * c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            d: [
                self.d[0] + other.d[0],
                self.d[1] + other.d[1],
                self.d[2] + other.d[2],
            ],
            o: [
                self.o[0] + other.o[0],
                self.o[1] + other.o[1],
                self.o[2] + other.o[2],
            ],
        }
    }

    /// Real determinant, computed by cofactor expansion of the full matrix.
    pub fn det(&self) -> f64 {
        det3(&self.to_full()).re
    }

    pub fn trace(&self) -> f64 {
        self.d.iter().sum()
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let m1 = self.d[0];
        let m2 = self.d[0] * self.d[1] - self.o[0].norm_sqr();
        m1 > 0.0 && m2 > 0.0 && self.det() > 0.0
    }

    /// Correlation coefficient `a + jb = Σ_kℓ / (σ_k σ_ℓ)` for each stored
    /// off-diagonal entry.
    pub fn correlation_coefficients(&self) -> [Complex; 3] {
        let s = self.d.map(f64::sqrt);
        let mut out = [ZERO; 3];
        for (k, &(i, j)) in OFFDIAG_INDEX.iter().enumerate() {
            out[k] = self.o[k] / (s[i] * s[j]);
        }
        out
    }

    /// Inverse as a compact Hermitian matrix.
    pub fn inverse(&self) -> Result<Self> {
        let (inv, _) = invert_and_det(self)?;
        Ok(Self::from_full(&inv))
    }
}

impl Default for HermitianCov3 {
    fn default() -> Self {
        Self::identity()
    }
}

/// Alias for [`HermitianCov3::to_full`].
pub fn reconstruct_full(m: &HermitianCov3) -> Matrix3c {
    m.to_full()
}

pub fn identity3() -> Matrix3c {
    let mut m = [[ZERO; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn matmul3(a: &Matrix3c, b: &Matrix3c) -> Matrix3c {
    let mut c = [[ZERO; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Largest absolute entry.
pub fn max_abs3(a: &Matrix3c) -> f64 {
    a.iter().flatten().map(|v| v.norm()).fold(0.0_f64, f64::max)
}

fn det3(m: &Matrix3c) -> Complex {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adjugate_inverse(m: &Matrix3c, det: Complex) -> Matrix3c {
    let c =
        |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    // Transposed cofactors.
    let adj = [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ];
    adj.map(|row| row.map(|v| v / det))
}

fn gauss_jordan_inverse(m: &Matrix3c) -> Option<Matrix3c> {
    let mut a = *m;
    let mut inv = identity3();
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for k in 0..3 {
            a[col][k] /= p;
            inv[col][k] /= p;
        }
        for row in 0..3 {
            if row != col {
                let f = a[row][col];
                for k in 0..3 {
                    a[row][k] -= f * a[col][k];
                    inv[row][k] -= f * inv[col][k];
                }
            }
        }
    }
    Some(inv)
}

fn residual(m: &Matrix3c, inv: &Matrix3c) -> f64 {
    let mut p = matmul3(m, inv);
    for (i, row) in p.iter_mut().enumerate() {
        row[i] -= ONE;
    }
    max_abs3(&p)
}

/// Inverse and (real) determinant of a positive-definite Hermitian matrix.
///
/// Uses the closed-form adjugate; falls back to Gauss-Jordan elimination with
/// partial pivoting when the adjugate's residual `‖M·M⁻¹ − I‖` is poor.
pub fn invert_and_det(m: &HermitianCov3) -> Result<(Matrix3c, f64)> {
    let full = m.to_full();
    let det = det3(&full);
    let scale = m.d.iter().product::<f64>().abs().max(f64::MIN_POSITIVE);
    if det.im.abs() > 1e-9 * scale.max(det.re.abs()) {
        return Err(Error::Singular(format!(
            "determinant has imaginary residue {:e}; input is not Hermitian",
            det.im
        )));
    }
    let det_re = det.re;
    if !(det_re > 0.0) || det_re < 1e-14 * scale {
        return Err(Error::Singular(format!(
            "determinant {det_re:e} is not positive relative to diagonal product {scale:e}"
        )));
    }
    let mut inv = adjugate_inverse(&full, Complex::new(det_re, 0.0));
    if residual(&full, &inv) > 1e-10 {
        if let Some(alt) = gauss_jordan_inverse(&full) {
            if residual(&full, &alt) < residual(&full, &inv) {
                inv = alt;
            }
        }
    }
    if !inv
        .iter()
        .flatten()
        .all(|v| v.re.is_finite() && v.im.is_finite())
    {
        return Err(Error::Singular("inverse is not finite".into()));
    }
    Ok((inv, det_re))
}

/// `Re tr(a · z)`, with `a` typically `Σ⁻¹`.
pub fn trace_product(a: &HermitianCov3, z: &HermitianCov3) -> Result<f64> {
    let p = matmul3(&a.to_full(), &z.to_full());
    let tr: Complex = (0..3).map(|i| p[i][i]).sum();
    debug_assert!(
        tr.im.abs() <= 1e-9 * tr.re.abs().max(1.0),
        "trace of a Hermitian product has imaginary part {}",
        tr.im
    );
    if !tr.re.is_finite() {
        return Err(Error::Domain("trace product is not finite".into()));
    }
    Ok(tr.re)
}

/// Linear-amplitude scattering vector `[Z_HH, Z_HV, Z_VV]ᵗ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringVector {
    pub hh: Complex,
    pub hv: Complex,
    pub vv: Complex,
}

impl ScatteringVector {
    pub fn new(hh: Complex, hv: Complex, vv: Complex) -> Self {
        Self { hh, hv, vv }
    }

    pub fn as_array(&self) -> [Complex; 3] {
        [self.hh, self.hv, self.vv]
    }

    /// `T T*ᵗ`.
    pub fn outer(&self) -> HermitianCov3 {
        let t = self.as_array();
        HermitianCov3 {
            d: t.map(|v| v.norm_sqr()),
            o: OFFDIAG_INDEX.map(|(i, j)| t[i] * t[j].conj()),
        }
    }
}

/// Full 𝒢ᴾᴴ parameterization: roughness, speckle covariance and looks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GHParams {
    pub omega: f64,
    pub sigma: HermitianCov3,
    pub looks: u32,
}

impl GHParams {
    pub fn new(omega: f64, sigma: HermitianCov3, looks: u32) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Parameter(format!(
                "roughness must be > 0, got {omega}"
            )));
        }
        if looks < 1 {
            return Err(Error::Parameter("looks must be >= 1".into()));
        }
        sigma.validate()?;
        if !sigma.is_positive_definite() {
            return Err(Error::Parameter(
                "covariance is not positive definite".into(),
            ));
        }
        Ok(Self {
            omega,
            sigma,
            looks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn identity_reconstructs() {
        assert_eq!(HermitianCov3::identity().to_full(), identity3());
    }

    #[test]
    fn urban_matrix_reconstructs() {
        let m = fixtures::sigma_urban().to_full();
        assert_eq!(m[0][0], c(962892.0, 0.0));
        assert_eq!(m[0][2], c(-154638.0, 191388.0));
        assert_eq!(m[2][0], c(-154638.0, -191388.0));
        assert_eq!(m[1][2], c(-5798.0, 16812.0));
        assert_eq!(m[2][1], c(-5798.0, -16812.0));
        assert_eq!(m[1][0], c(19171.0, 3579.0));
    }

    #[test]
    fn trace_product_examples() {
        let i = HermitianCov3::identity();
        assert_eq!(trace_product(&i, &i).unwrap(), 3.0);
        let z = HermitianCov3::diagonal(2.0, 3.0, 4.0);
        assert_eq!(trace_product(&i, &z).unwrap(), 9.0);
        let s = fixtures::sigma_urban();
        let inv = s.inverse().unwrap();
        assert!((trace_product(&inv, &s).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn invert_diagonal() {
        let (inv, det) = invert_and_det(&HermitianCov3::diagonal(2.0, 3.0, 4.0)).unwrap();
        assert_eq!(det, 24.0);
        for (i, v) in [0.5, 1.0 / 3.0, 0.25].iter().enumerate() {
            assert!((inv[i][i].re - v).abs() < 1e-15);
        }
        let (inv, det) = invert_and_det(&HermitianCov3::identity()).unwrap();
        assert_eq!(det, 1.0);
        assert_eq!(inv, identity3());
    }

    /// Cofactor expansion along the second column, written independently of
    /// the first-row expansion used by the implementation.
    fn det_by_second_column(m: &Matrix3c) -> Complex {
        let minor = |r: usize, col: usize| {
            let rows: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&x| x != col).collect();
            m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
        };
        (0..3)
            .map(|r| {
                let sign = if (r + 1) % 2 == 0 { 1.0 } else { -1.0 };
                m[r][1] * minor(r, 1) * sign
            })
            .sum()
    }

    #[test]
    fn pasture_determinant_matches_cofactor_oracle() {
        let p = fixtures::sigma_pasture();
        let (inv, det) = invert_and_det(&p).unwrap();
        let oracle = det_by_second_column(&p.to_full());
        assert!(oracle.im.abs() < 1e-6 * oracle.re);
        assert!((det - oracle.re).abs() <= 1e-9 * oracle.re);
        let r = residual(&p.to_full(), &inv);
        assert!(r < 1e-9, "residual {r}");
    }

    #[test]
    fn singular_is_rejected() {
        let m =
            HermitianCov3::new([1.0, 1.0, 1.0], [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(invert_and_det(&m), Err(Error::Singular(_))));
        assert!(!m.is_positive_definite());
    }

    #[test]
    fn negative_diagonal_rejected() {
        assert!(HermitianCov3::new([-1.0, 1.0, 1.0], [c(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn fixtures_are_positive_definite() {
        for s in [
            fixtures::sigma_urban(),
            fixtures::sigma_forest(),
            fixtures::sigma_pasture(),
        ] {
            assert!(s.is_positive_definite());
        }
    }

    #[test]
    fn outer_product_matches_definition() {
        let v = ScatteringVector::new(c(1.0, 2.0), c(-0.5, 0.25), c(0.0, -3.0));
        let m = v.outer();
        assert_eq!(m.d, [5.0, 0.3125, 9.0]);
        assert_eq!(m.o[1], c(1.0, 2.0) * c(0.0, 3.0));
    }

    #[allow(clippy::needless_range_loop)]
    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_complex() -> impl Strategy<Value = Complex> {
            (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| Complex::new(a, b))
        }

        fn arb_pd() -> impl Strategy<Value = HermitianCov3> {
            proptest::array::uniform3(proptest::array::uniform3(arb_complex())).prop_map(|a| {
                // A·A*ᵗ + εI
                let mut m = [[ZERO; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        m[i][j] = (0..3).map(|k| a[i][k] * a[j][k].conj()).sum();
                    }
                    m[i][i] += Complex::new(1.0, 0.0);
                }
                HermitianCov3::from_full(&m)
            })
        }

        proptest! {
            #[test]
            fn hermitian_round_trip(d in proptest::array::uniform3(0.0..100.0f64),
                                    o in proptest::array::uniform3(arb_complex())) {
                let m = HermitianCov3 { d, o };
                let f = m.to_full();
                for i in 0..3 {
                    for j in 0..3 {
                        prop_assert_eq!(f[i][j], f[j][i].conj());
                    }
                }
                prop_assert_eq!(HermitianCov3::from_full(&f), m);
            }

            #[test]
            fn inverse_residual_is_small(m in arb_pd()) {
                let (inv, det) = invert_and_det(&m).unwrap();
                prop_assert!(det > 0.0);
                let full = m.to_full();
                let r = residual(&full, &inv);
                prop_assert!(r < 1e-9 * max_abs3(&full).max(1.0) * max_abs3(&inv).max(1.0), "residual {}", r);
            }

            #[test]
            fn trace_with_identity_is_diagonal_sum(d in proptest::array::uniform3(0.0..1e6f64),
                                                   o in proptest::array::uniform3(arb_complex())) {
                let z = HermitianCov3 { d, o };
                let t = trace_product(&HermitianCov3::identity(), &z).unwrap();
                prop_assert!((t - d.iter().sum::<f64>()).abs() <= 1e-12 * t.abs().max(1.0));
            }
        }
    }
}
