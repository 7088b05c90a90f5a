//! The quadratic ring extension behind the defect-fusion reparametrization.
//!
//! The auxiliary-field map introduces the square root
//! `μ± = [(1 + e^{±(φ₋−2τ)})/2]^{−1/2}`. Writing `h = e^{(φ₋−2τ)/2}`, both
//! branches live in the extension generated by a single root `r` with
//! `r² = 1 + h²` together with the invertible denominator `D = 1 + h²`:
//! `μ₊ = 2^{1/2} r D^{−1}` and `μ₋ = 2^{1/2} h r D^{−1}`.
//!
//! This module owns the binding of `h` to concrete generators and the exact
//! division of numerators by `1 + h²`, which is what keeps expressions with
//! `D^{−n}` factors canonical. Equality in the localized ring is decided by
//! cross-multiplication, which the division implements constructively.

use crate::monomial::EvenMonomial;
use crate::scalar::CycloScalar;
use crate::Rat;
use num::Zero;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// The bound extension data: `h` and `h²` as even monomials.
#[derive(Clone, Debug)]
pub struct ExtensionDef {
    pub h: EvenMonomial,
    pub h2: EvenMonomial,
}

static EXTENSION: OnceLock<ExtensionDef> = OnceLock::new();

/// Binds the extension root to the monomial `h`. May be called repeatedly
/// with the same monomial; a conflicting rebinding panics.
pub fn bind_extension(h: EvenMonomial) {
    let def = ExtensionDef {
        h2: h.mul(&h),
        h,
    };
    let bound = EXTENSION.get_or_init(|| def.clone());
    assert_eq!(
        bound.h, def.h,
        "ring extension is already bound to a different monomial"
    );
}

pub fn extension() -> Option<&'static ExtensionDef> {
    EXTENSION.get()
}

pub fn require_extension() -> &'static ExtensionDef {
    EXTENSION
        .get()
        .expect("ring extension used before bind_extension")
}

/// Grading functional used by the exact division: the dot product of a
/// monomial's exponent vector with that of `h²`. Multiplication by `h²`
/// shifts the value by `ell_u > 0`, so quotient slices can be recovered
/// bottom-up.
fn ell(m: &EvenMonomial, u: &EvenMonomial) -> Rat {
    let mut acc = Rat::zero();
    for (g, ue) in u.iter() {
        acc += ue * m.exponent(*g);
    }
    acc
}

/// Exact division of a sum of even terms by `1 + h²`.
///
/// Returns the quotient terms, or `None` when the division does not come out
/// exact. Scalars stay attached to their monomials; the Grassmann part of a
/// sector rides along unchanged and is handled by the caller.
pub fn divide_by_one_plus_h2(
    terms: &[(CycloScalar, EvenMonomial)],
) -> Option<Vec<(CycloScalar, EvenMonomial)>> {
    let u = &require_extension().h2;
    let ell_u = ell(u, u);
    debug_assert!(ell_u > Rat::zero());

    let mut levels: BTreeMap<Rat, BTreeMap<EvenMonomial, CycloScalar>> = BTreeMap::new();
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        let lv = ell(m, u);
        let slot = levels
            .entry(lv)
            .or_default()
            .entry(m.clone())
            .or_insert_with(CycloScalar::zero);
        *slot = slot.clone() + c.clone();
    }
    let max_level = match levels.keys().next_back() {
        Some(lv) => lv.clone(),
        None => return Some(Vec::new()), // zero numerator
    };

    let mut quotient = Vec::new();
    while let Some((lv, slice)) = levels.pop_first() {
        let slice: Vec<(EvenMonomial, CycloScalar)> = slice
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if slice.is_empty() {
            continue;
        }
        // A valid quotient has top level max − ell_u; anything above cannot
        // be completed within the numerator's support.
        if lv.clone() + ell_u.clone() > max_level {
            return None;
        }
        let target = lv + ell_u.clone();
        for (m, c) in slice {
            let shifted = m.mul(u);
            let slot = levels
                .entry(target.clone())
                .or_default()
                .entry(shifted)
                .or_insert_with(CycloScalar::zero);
            *slot = slot.clone() - c.clone();
            quotient.push((c, m));
        }
    }
    Some(quotient)
}

/// Expansion of the positive power `D^k = (1 + h²)^k` as monomial/coefficient
/// pairs, by the binomial theorem.
pub fn d_power_expansion(k: u32) -> Vec<(CycloScalar, EvenMonomial)> {
    let u = &require_extension().h2;
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut binom = num::BigInt::from(1);
    let mut m = EvenMonomial::one();
    for j in 0..=k {
        out.push((
            CycloScalar::from_rat(Rat::from_integer(binom.clone())),
            m.clone(),
        ));
        m = m.mul(u);
        binom = binom * (k - j) / (j + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model;

    #[test]
    fn divide_square_of_d() {
        model::ctx(); // binds the extension
        let terms = d_power_expansion(2);
        let q = divide_by_one_plus_h2(&terms).unwrap();
        let expect = d_power_expansion(1);
        let q_sorted: BTreeMap<_, _> = q.into_iter().map(|(c, m)| (m, c)).collect();
        let e_sorted: BTreeMap<_, _> = expect.into_iter().map(|(c, m)| (m, c)).collect();
        assert_eq!(q_sorted, e_sorted);
    }

    #[test]
    fn non_divisible_fails() {
        model::ctx();
        let u2 = require_extension().h2.clone();
        let h4 = u2.mul(&u2);
        // 1 + h⁴ is not divisible by 1 + h².
        let terms = vec![
            (CycloScalar::one(), EvenMonomial::one()),
            (CycloScalar::one(), h4),
        ];
        assert!(divide_by_one_plus_h2(&terms).is_none());
    }
}
