use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// How the deformation parameter q is given.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum QMode {
    /// `q = exp(2 pi i a / b)`, kept exact through `h = exp(i pi a / b)`.
    UnitCircleRational { a: i64, b: i64 },
    /// `|q| < 1`, complex double.
    NumericComplex { re: f64, im: f64 },
}

/// Which relations the generators satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelMode {
    /// `|q| = 1`: isometry relations plus `t s = q s t`.
    Braided,
    /// Braided relations in the Cuntz quotient, where `sum s_i s_i* = sum t_r t_r* = 1`.
    BraidedCuntz,
    /// `|q| < 1`: isometry relations and `s* t = q t s*` only.
    WickOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Params {
    pub n: usize,
    pub m: usize,
    pub qmode: QMode,
    pub relmode: RelMode,
}

impl Params {
    /// `q = exp(2 pi i a/b)`; the fraction is reduced to `0 <= a < b`.
    pub fn rational(n: usize, m: usize, a: i64, b: i64) -> Result<Params> {
        check_counts(n, m)?;
        if b < 1 {
            return Err(Error::InvalidParams(format!("denominator must be positive, got {b}")));
        }
        let a = a.rem_euclid(b);
        let g = a.gcd(&b);
        Ok(Params {
            n,
            m,
            qmode: QMode::UnitCircleRational { a: a / g, b: b / g },
            relmode: RelMode::Braided,
        })
    }

    pub fn numeric(n: usize, m: usize, q: Complex64) -> Result<Params> {
        check_counts(n, m)?;
        if !(q.norm() < 1.0) {
            return Err(Error::InvalidParams(format!("numeric q needs |q| < 1, got |q| = {}", q.norm())));
        }
        Ok(Params {
            n,
            m,
            qmode: QMode::NumericComplex { re: q.re, im: q.im },
            relmode: RelMode::WickOnly,
        })
    }

    /// The same parameters in the Cuntz quotient `O_n (x)_q O_m`.
    pub fn cuntz(self) -> Result<Params> {
        match self.qmode {
            QMode::UnitCircleRational { .. } => Ok(Params { relmode: RelMode::BraidedCuntz, ..self }),
            QMode::NumericComplex { .. } => {
                Err(Error::Mode("the Cuntz quotient is only provided for |q| = 1".into()))
            }
        }
    }

    /// The same parameters in the Toeplitz algebra.
    pub fn toeplitz(self) -> Params {
        match self.relmode {
            RelMode::BraidedCuntz => Params { relmode: RelMode::Braided, ..self },
            _ => self,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.qmode, QMode::UnitCircleRational { .. })
    }

    /// `(a, b)` for rational angles.
    pub fn angle(&self) -> Option<(i64, i64)> {
        match self.qmode {
            QMode::UnitCircleRational { a, b } => Some((a, b)),
            QMode::NumericComplex { .. } => None,
        }
    }

    /// `phi0 = a/b`, so `q = exp(2 pi i phi0)` and `h = exp(i pi phi0)`.
    pub fn phi0(&self) -> f64 {
        match self.qmode {
            QMode::UnitCircleRational { a, b } => a as f64 / b as f64,
            QMode::NumericComplex { .. } => 0.0,
        }
    }

    /// Multiplicative order of `h`.
    pub fn h_order(&self) -> Option<u32> {
        self.angle().map(|(a, b)| if a % 2 == 1 { 2 * b as u32 } else { b as u32 })
    }

    pub fn q_complex(&self) -> Complex64 {
        match self.qmode {
            QMode::UnitCircleRational { a, b } => {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / b as f64)
            }
            QMode::NumericComplex { re, im } => Complex64::new(re, im),
        }
    }

    pub fn q(&self) -> Scalar {
        match self.qmode {
            QMode::UnitCircleRational { .. } => Scalar::h_pow(2, self.h_order()),
            QMode::NumericComplex { re, im } => Scalar::numeric(Complex64::new(re, im)),
        }
    }

    pub fn q_bar(&self) -> Scalar {
        self.q().conj()
    }

    /// `q^k` (negative powers only in the exact backend).
    pub fn q_pow(&self, k: i64) -> Result<Scalar> {
        match self.qmode {
            QMode::UnitCircleRational { .. } => Ok(Scalar::h_pow(2 * k, self.h_order())),
            QMode::NumericComplex { re, im } => {
                if k < 0 {
                    return Err(Error::Mode("negative powers of q need |q| = 1".into()));
                }
                Ok(Scalar::numeric(Complex64::new(re, im).powi(k as i32)))
            }
        }
    }

    /// `h^k`, only meaningful when q is on the unit circle.
    pub fn h_pow(&self, k: i64) -> Result<Scalar> {
        match self.qmode {
            QMode::UnitCircleRational { .. } => Ok(Scalar::h_pow(k, self.h_order())),
            QMode::NumericComplex { .. } => {
                Err(Error::Mode("the half-angle unit h needs |q| = 1".into()))
            }
        }
    }

    /// The integer `c` in this backend.
    pub fn int(&self, c: i64) -> Scalar {
        match self.qmode {
            QMode::UnitCircleRational { .. } => {
                Scalar::Exact(super::scalar::Phase::monomial(c, 0, self.h_order()))
            }
            QMode::NumericComplex { .. } => Scalar::numeric(Complex64::new(c as f64, 0.0)),
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn complex(&self, z: Complex64) -> Result<Scalar> {
        match self.qmode {
            QMode::NumericComplex { .. } => Ok(Scalar::numeric(z)),
            QMode::UnitCircleRational { .. } => {
                Err(Error::BackendMismatch("complex literal in exact mode".into()))
            }
        }
    }
}

fn check_counts(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 || n > u16::MAX as usize || m > u16::MAX as usize {
        return Err(Error::InvalidParams(format!("need 1 <= n, m <= 65535, got n = {n}, m = {m}")));
    }
    Ok(())
}
