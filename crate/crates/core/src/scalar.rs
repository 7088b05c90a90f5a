//! Exact scalars in the cyclotomic field Q(ω), ω = e^{iπ/4}.
//!
//! Every scalar is stored on the basis {1, ω, ω², ω³} with ω⁴ = −1. This is
//! the smallest field containing both the imaginary unit i = ω² and the square
//! root of i, √i = ω, which appear in the fermionic Lax entries and in the
//! defect-matrix prefactors.

use crate::{rat_int, Rat};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Element of Q(ω) with ω a primitive eighth root of unity.
///
/// Coordinates are exact rationals over {1, ω, ω², ω³}; powers ≥ 4 are always
/// reduced through ω⁴ = −1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloScalar {
    coords: [Rat; 4],
}

impl CycloScalar {
    pub fn zero() -> Self {
        CycloScalar {
            coords: [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn from_rat(q: Rat) -> Self {
        let mut s = Self::zero();
        s.coords[0] = q;
        s
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// ω^k for any integer k (reduced modulo ω⁸ = 1, ω⁴ = −1).
    pub fn omega_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut s = Self::zero();
        if k < 4 {
            s.coords[k] = Rat::one();
        } else {
            s.coords[k - 4] = -Rat::one();
        }
        s
    }

    /// The imaginary unit i = ω².
    pub fn i() -> Self {
        Self::omega_pow(2)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn coords(&self) -> &[Rat; 4] {
        &self.coords
    }

    /// Purely rational part, if the scalar lies in Q.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Decomposes the scalar as c·ω^j with c a positive rational, when it has
    /// exactly one nonzero coordinate. Used for rational powers of terms.
    pub fn as_monomial(&self) -> Option<(Rat, u8)> {
        let mut found = None;
        for (j, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((c.clone(), j as u8));
            }
        }
        let (c, j) = found?;
        if c.is_negative() {
            // −ω^j = ω^{j+4}
            Some((-c, j + 4))
        } else {
            Some((c, j))
        }
    }

    /// Multiplicative inverse; `None` for zero. Solves the 4×4 rational system
    /// given by multiplication in the basis {1, ω, ω², ω³}.
    pub fn inv(&self) -> Option<CycloScalar> {
        if self.is_zero() {
            return None;
        }
        // Column j of the multiplication matrix is self·ω^j.
        let mut m = [[Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()],
                     [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()],
                     [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()],
                     [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()]];
        for j in 0..4 {
            let col = self.clone() * CycloScalar::omega_pow(j as i64);
            for i in 0..4 {
                m[i][j] = col.coords[i].clone();
            }
        }
        let mut rhs = [Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()];
        // Gaussian elimination with exact pivoting.
        let mut perm = [0usize, 1, 2, 3];
        for col in 0..4 {
            let pivot_row = (col..4).find(|&r| !m[perm[r]][col].is_zero())?;
            perm.swap(col, pivot_row);
            let p = m[perm[col]][col].clone();
            for r in (col + 1)..4 {
                let factor = &m[perm[r]][col] / &p;
                if factor.is_zero() {
                    continue;
                }
                for c in col..4 {
                    let sub = &factor * &m[perm[col]][c];
                    m[perm[r]][c] = &m[perm[r]][c] - sub;
                }
                let sub = &factor * &rhs[perm[col]];
                rhs[perm[r]] = &rhs[perm[r]] - sub;
            }
        }
        let mut x = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for col in (0..4).rev() {
            let mut acc = rhs[perm[col]].clone();
            for c in (col + 1)..4 {
                acc = acc - &m[perm[col]][c] * &x[c];
            }
            x[col] = acc / &m[perm[col]][col];
        }
        Some(CycloScalar { coords: x })
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: CycloScalar) -> CycloScalar {
        let mut coords = self.coords;
        for (a, b) in coords.iter_mut().zip(rhs.coords) {
            *a = &*a + b;
        }
        CycloScalar { coords }
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: CycloScalar) -> CycloScalar {
        self + (-rhs)
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        let mut coords = self.coords;
        for a in coords.iter_mut() {
            *a = -a.clone();
        }
        CycloScalar { coords }
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: CycloScalar) -> CycloScalar {
        let mut coords = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        for i in 0..4 {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.coords[j].is_zero() {
                    continue;
                }
                let prod = &self.coords[i] * &rhs.coords[j];
                let k = i + j;
                if k < 4 {
                    coords[k] = &coords[k] + prod;
                } else {
                    // ω⁴ = −1
                    coords[k - 4] = &coords[k - 4] - prod;
                }
            }
        }
        CycloScalar { coords }
    }
}

impl Mul<&CycloScalar> for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.clone() * rhs.clone()
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let base = match j {
                0 => String::new(),
                1 => "omega".to_string(),
                _ => format!("omega^{j}"),
            };
            let coeff = if c.is_one() && j != 0 {
                String::new()
            } else if (-c).is_one() && j != 0 {
                "-".to_string()
            } else {
                format!("{c}")
            };
            let part = match (coeff.as_str(), base.as_str()) {
                (c, "") => c.to_string(),
                ("", b) => b.to_string(),
                ("-", b) => format!("-{b}"),
                (c, b) => format!("{c}*{b}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}
