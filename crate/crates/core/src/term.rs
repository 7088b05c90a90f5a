//! Terms of the graded ring: scalar × even monomial × extension factor ×
//! Grassmann monomial, with exact multiplication and rational powers.

use crate::extension::{d_power_expansion, require_extension};
use crate::generator::{two_gen, GenId, GenKind};
use crate::monomial::{EvenMonomial, ExtFactor, GrassmannMonomial};
use crate::scalar::CycloScalar;
use crate::{rat_int, Rat};
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot raise {what} to power {power}")]
    BadPower { what: String, power: String },
    #[error("derivation '{name}' has no entry for symbol '{symbol}'")]
    MissingDerivative { name: String, symbol: String },
    #[error("substitution for '{symbol}' rejected: {why}")]
    BadSubstitution { symbol: String, why: String },
    #[error("system is not linear in unknown '{symbol}'")]
    NonLinear { symbol: String },
    #[error("no invertible pivot available for unknown '{symbol}'")]
    NoPivot { symbol: String },
    #[error("inconsistent linear system: residual {residual}")]
    Inconsistent { residual: String },
    #[error("rewrite system is not terminating: '{symbol}' reappears in an image")]
    NotTerminating { symbol: String },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub coef: CycloScalar,
    pub even: EvenMonomial,
    pub ext: ExtFactor,
    pub odd: GrassmannMonomial,
}

impl Term {
    pub fn one() -> Term {
        Term::scalar(CycloScalar::one())
    }

    pub fn scalar(c: CycloScalar) -> Term {
        Term {
            coef: c,
            even: EvenMonomial::one(),
            ext: ExtFactor::one(),
            odd: GrassmannMonomial::one(),
        }
    }

    pub fn gen_pow(id: GenId, exp: Rat) -> Term {
        match id.kind() {
            GenKind::Odd => {
                assert!(exp.is_one(), "odd generator exponent must be 1");
                Term {
                    coef: CycloScalar::one(),
                    even: EvenMonomial::one(),
                    ext: ExtFactor::one(),
                    odd: GrassmannMonomial::single(id),
                }
            }
            GenKind::RootExtension => {
                assert!(exp.is_one(), "root exponent must be 1 on a term");
                Term {
                    coef: CycloScalar::one(),
                    even: EvenMonomial::one(),
                    ext: ExtFactor::root(),
                    odd: GrassmannMonomial::one(),
                }
            }
            GenKind::Denominator => {
                assert!(
                    exp.is_integer() && exp.is_negative(),
                    "denominator exponent on a term must be a negative integer"
                );
                let n = (-exp.to_integer()).to_u32().expect("denominator power");
                Term {
                    coef: CycloScalar::one(),
                    even: EvenMonomial::one(),
                    ext: ExtFactor::denom_inv(n),
                    odd: GrassmannMonomial::one(),
                }
            }
            _ => {
                let mut t = Term::one();
                t.even = EvenMonomial::gen(id, exp);
                t.fold_two();
                t
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    /// Grassmann parity of the term.
    pub fn parity(&self) -> crate::generator::Parity {
        if self.odd.degree() % 2 == 0 {
            crate::generator::Parity::Even
        } else {
            crate::generator::Parity::Odd
        }
    }

    /// A term with no Grassmann part is a unit of the ring: scalars are field
    /// elements, even monomials and `r`, `D` are invertible.
    pub fn is_invertible(&self) -> bool {
        !self.coef.is_zero() && self.odd.is_one()
    }

    /// Folds the integer part of the exponent of the generator `2` into the
    /// scalar, keeping the stored exponent in [0, 1).
    pub fn fold_two(&mut self) {
        let q = self.even.exponent(two_gen());
        if q.is_zero() {
            return;
        }
        let n = q.floor();
        if n.is_zero() {
            return;
        }
        self.even.mul_gen(two_gen(), -n.clone());
        self.coef = self.coef.clone() * CycloScalar::from_rat(pow2(&n.to_integer()));
    }

    /// Canonical key ordering: graded lexicographic on (Grassmann monomial,
    /// even monomial, extension factor).
    pub fn key_cmp(&self, other: &Term) -> Ordering {
        (self.odd.degree(), self.odd.gens())
            .cmp(&(other.odd.degree(), other.odd.gens()))
            .then_with(|| self.even.cmp(&other.even))
            .then_with(|| self.ext.cmp(&other.ext))
    }

    pub fn same_key(&self, other: &Term) -> bool {
        self.key_cmp(other) == Ordering::Equal
    }

    /// Exact product of two terms. The result is a small list because
    /// `r·r = 1 + h²` expands into the polynomial.
    pub fn mul(&self, other: &Term) -> Vec<Term> {
        if self.is_zero() || other.is_zero() {
            return Vec::new();
        }
        let (sign, odd) = match self.odd.mul(&other.odd) {
            Some(x) => x,
            None => return Vec::new(),
        };
        let mut coef = &self.coef * &other.coef;
        if sign < 0 {
            coef = -coef;
        }
        let even = self.even.mul(&other.even);
        let d_inv = self.ext.d_inv + other.ext.d_inv;
        let r_total = self.ext.r as u8 + other.ext.r as u8;
        let mut out = Vec::new();
        if r_total == 2 {
            // r² = 1 + h²
            let h2 = &require_extension().h2;
            for factor in [EvenMonomial::one(), h2.clone()] {
                let mut t = Term {
                    coef: coef.clone(),
                    even: even.mul(&factor),
                    ext: ExtFactor { r: false, d_inv },
                    odd: odd.clone(),
                };
                t.fold_two();
                out.push(t);
            }
        } else {
            let mut t = Term {
                coef,
                even,
                ext: ExtFactor {
                    r: r_total == 1,
                    d_inv,
                },
                odd,
            };
            t.fold_two();
            out.push(t);
        }
        out
    }

    /// Raises the term to a rational power.
    ///
    /// Non-negative integer powers always work (odd content is nilpotent).
    /// Fractional or negative powers require an invertible term whose scalar
    /// is ±2^k·ω^j, so that the result stays in the ring; half powers of the
    /// denominator are absorbed by `D^{1/2} = r`.
    pub fn pow(&self, q: &Rat) -> Result<Vec<Term>, AlgebraError> {
        if q.is_zero() {
            return Ok(vec![Term::one()]);
        }
        if q.is_one() {
            return Ok(vec![self.clone()]);
        }
        if self.is_zero() {
            return Ok(Vec::new());
        }
        if !self.odd.is_one() {
            // Nilpotency: any square of a term with odd content vanishes.
            return if q.is_integer() && !q.is_negative() {
                Ok(Vec::new())
            } else {
                Err(AlgebraError::BadPower {
                    what: "term with odd content".into(),
                    power: q.to_string(),
                })
            };
        }

        // Scalar part: c = s·2^a·ω^j with s = ±1 required for fractional q.
        let (mag, omega_j) = self.coef.as_monomial().ok_or_else(|| AlgebraError::BadPower {
            what: "non-monomial scalar".into(),
            power: q.to_string(),
        })?;
        let (two_val, rest) = split_pow2(&mag);
        let new_coef;
        let mut two_exp_extra = Rat::zero();
        if q.is_integer() {
            // Integer powers act directly on the scalar.
            let n = q.to_integer();
            new_coef = scalar_int_pow(&self.coef, &n)?;
        } else {
            if !rest.is_one() {
                return Err(AlgebraError::BadPower {
                    what: format!("scalar {}", self.coef),
                    power: q.to_string(),
                });
            }
            let wj = Rat::from_integer(BigInt::from(omega_j)) * q;
            if !wj.is_integer() {
                return Err(AlgebraError::BadPower {
                    what: format!("scalar {}", self.coef),
                    power: q.to_string(),
                });
            }
            new_coef = CycloScalar::omega_pow(wj.to_integer().to_i64().unwrap());
            two_exp_extra = Rat::from_integer(two_val) * q;
        }

        // Even part.
        let mut even = self.even.pow(q);
        even.mul_gen(two_gen(), two_exp_extra);
        if !even.domains_ok() {
            return Err(AlgebraError::BadPower {
                what: "even-polynomial exponent".into(),
                power: q.to_string(),
            });
        }

        // Extension part: total D-degree in halves, δ = q·(r/2 − d_inv).
        let r_half = if self.ext.r { rat_int(1) / rat_int(2) } else { Rat::zero() };
        let delta = (r_half - rat_int(self.ext.d_inv as i64)) * q;
        let twice = delta.clone() * rat_int(2);
        if !twice.is_integer() {
            return Err(AlgebraError::BadPower {
                what: "extension factor".into(),
                power: q.to_string(),
            });
        }
        let (root, whole) = if delta.is_integer() {
            (false, delta)
        } else {
            (true, delta - rat_int(1) / rat_int(2))
        };
        let whole = whole.to_integer();

        let mut proto = Term {
            coef: new_coef,
            even,
            ext: ExtFactor {
                r: root,
                d_inv: if whole.is_negative() {
                    (-whole.clone()).to_u32().unwrap()
                } else {
                    0
                },
            },
            odd: GrassmannMonomial::one(),
        };
        proto.fold_two();

        if whole.is_positive() {
            // Positive powers of D expand as the polynomial (1 + h²)^k.
            let k = whole.to_u32().unwrap();
            let mut out = Vec::new();
            for (c, m) in d_power_expansion(k) {
                let mut t = proto.clone();
                t.coef = t.coef * c;
                t.even = t.even.mul(&m);
                t.fold_two();
                out.push(t);
            }
            Ok(out)
        } else {
            Ok(vec![proto])
        }
    }
}

/// 2^n for a (possibly negative) integer n, as a rational.
fn pow2(n: &BigInt) -> Rat {
    let abs = n.magnitude().to_u32().expect("power of two overflow");
    let p = BigInt::from(2).pow(abs);
    if n.is_negative() {
        Rat::new(BigInt::one(), p)
    } else {
        Rat::from_integer(p)
    }
}

/// Splits a positive rational as 2^a · rest with rest having odd numerator
/// and denominator.
fn split_pow2(x: &Rat) -> (BigInt, Rat) {
    let mut a = BigInt::zero();
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let two = BigInt::from(2);
    while (&num % &two).is_zero() && !num.is_zero() {
        num /= &two;
        a += 1;
    }
    while (&den % &two).is_zero() && !den.is_zero() {
        den /= &two;
        a -= 1;
    }
    (a, Rat::new(num, den))
}

fn scalar_int_pow(c: &CycloScalar, n: &BigInt) -> Result<CycloScalar, AlgebraError> {
    let base = if n.is_negative() {
        c.inv().ok_or_else(|| AlgebraError::BadPower {
            what: "zero scalar".into(),
            power: n.to_string(),
        })?
    } else {
        c.clone()
    };
    let mut out = CycloScalar::one();
    let mut k = n.magnitude().to_u64().expect("scalar power overflow");
    let mut sq = base;
    while k > 0 {
        if k & 1 == 1 {
            out = out * sq.clone();
        }
        sq = sq.clone() * sq;
        k >>= 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Registry;
    use crate::rat;

    #[test]
    fn two_exponent_folds_into_scalar() {
        let _reg = Registry::new();
        // 2^{3/2} = 2 · 2^{1/2}
        let t = Term::gen_pow(two_gen(), rat(3, 2));
        assert_eq!(t.coef, CycloScalar::from_int(2));
        assert_eq!(t.even.exponent(two_gen()), rat(1, 2));
        // 2^{-1/2} = (1/2) · 2^{1/2}
        let t = Term::gen_pow(two_gen(), rat(-1, 2));
        assert_eq!(t.coef, CycloScalar::from_rat(rat(1, 2)));
        assert_eq!(t.even.exponent(two_gen()), rat(1, 2));
    }

    #[test]
    fn grassmann_product_antisymmetry() {
        let mut reg = Registry::new();
        let a = reg.register("a", GenKind::Odd);
        let b = reg.register("b", GenKind::Odd);
        let ta = Term::gen_pow(a, rat_int(1));
        let tb = Term::gen_pow(b, rat_int(1));
        let ab = ta.mul(&tb);
        let ba = tb.mul(&ta);
        assert_eq!(ab.len(), 1);
        assert_eq!(ab[0].coef, CycloScalar::one());
        assert_eq!(ba[0].coef, CycloScalar::from_int(-1));
        assert!(ta.mul(&ta).is_empty());
    }

    #[test]
    fn scalar_powers() {
        let _reg = Registry::new();
        let mut t = Term::scalar(CycloScalar::from_int(2));
        t.even = EvenMonomial::one();
        // 2^{1/2} of the plain scalar 2
        let half = t.pow(&rat(1, 2)).unwrap();
        assert_eq!(half.len(), 1);
        assert_eq!(half[0].coef, CycloScalar::one());
        assert_eq!(half[0].even.exponent(two_gen()), rat(1, 2));
        // (−1)^{1/2} = ω² = i
        let m = Term::scalar(CycloScalar::from_int(-1));
        let s = m.pow(&rat(1, 2)).unwrap();
        assert_eq!(s[0].coef, CycloScalar::i());
        // 3^{1/2} is not representable
        let bad = Term::scalar(CycloScalar::from_int(3));
        assert!(bad.pow(&rat(1, 2)).is_err());
        // but 3^{-1} is
        let inv = bad.pow(&rat_int(-1)).unwrap();
        assert_eq!(inv[0].coef, CycloScalar::from_rat(rat(1, 3)));
    }
}
