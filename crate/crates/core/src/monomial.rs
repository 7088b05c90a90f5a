//! Sparse monomials: even exponent maps, Grassmann monomials, and the
//! extension factor carrying `r` and negative powers of `D`.

use crate::generator::{GenId, GenKind};
use crate::{rat_int, Rat};
use num::{Signed, Zero};
use std::collections::BTreeMap;

/// Product of even generators with exact rational exponents.
///
/// No explicit zero exponents are stored. Exponent domains follow the
/// generator kind: rationals for exponential-base, non-negative integers for
/// even-polynomial generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct EvenMonomial {
    exps: BTreeMap<GenId, Rat>,
}

impl EvenMonomial {
    pub fn one() -> EvenMonomial {
        EvenMonomial::default()
    }

    pub fn gen(id: GenId, exp: Rat) -> EvenMonomial {
        let mut m = EvenMonomial::one();
        m.mul_gen(id, exp);
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, id: GenId) -> Rat {
        self.exps.get(&id).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GenId, &Rat)> {
        self.exps.iter()
    }

    pub fn gens(&self) -> impl Iterator<Item = GenId> + '_ {
        self.exps.keys().copied()
    }

    pub fn contains(&self, id: GenId) -> bool {
        self.exps.contains_key(&id)
    }

    /// Multiplies by `id^exp`, merging exponents and dropping zeros.
    pub fn mul_gen(&mut self, id: GenId, exp: Rat) {
        debug_assert!(matches!(
            id.kind(),
            GenKind::ExponentialBase | GenKind::EvenPolynomial
        ));
        if exp.is_zero() {
            return;
        }
        let entry = self.exps.entry(id).or_insert_with(Rat::zero);
        *entry = &*entry + exp;
        if entry.is_zero() {
            self.exps.remove(&id);
        }
    }

    pub fn mul(&self, other: &EvenMonomial) -> EvenMonomial {
        let mut out = self.clone();
        for (id, exp) in other.iter() {
            out.mul_gen(*id, exp.clone());
        }
        out
    }

    pub fn pow(&self, q: &Rat) -> EvenMonomial {
        let mut out = EvenMonomial::one();
        for (id, exp) in self.iter() {
            out.mul_gen(*id, exp * q);
        }
        out
    }

    pub fn inv(&self) -> EvenMonomial {
        self.pow(&rat_int(-1))
    }

    /// Checks each exponent against its generator's legal domain.
    pub fn domains_ok(&self) -> bool {
        self.exps.iter().all(|(id, exp)| match id.kind() {
            GenKind::ExponentialBase => true,
            GenKind::EvenPolynomial => exp.is_integer() && !exp.is_negative(),
            _ => false,
        })
    }
}

/// Strictly increasing product of odd generators.
///
/// Any repeated generator annihilates a term (nilpotency), so monomials are
/// duplicate-free by construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct GrassmannMonomial {
    gens: Vec<GenId>,
}

impl GrassmannMonomial {
    pub fn one() -> GrassmannMonomial {
        GrassmannMonomial::default()
    }

    pub fn single(id: GenId) -> GrassmannMonomial {
        debug_assert_eq!(id.kind(), GenKind::Odd);
        GrassmannMonomial { gens: vec![id] }
    }

    /// Builds from a factor sequence in the given order, computing the sort
    /// sign. Returns `None` on a repeated generator.
    pub fn from_sequence(seq: &[GenId]) -> Option<(i8, GrassmannMonomial)> {
        let mut sign = 1i8;
        let mut gens: Vec<GenId> = Vec::with_capacity(seq.len());
        for &g in seq {
            debug_assert_eq!(g.kind(), GenKind::Odd);
            // Insertion sort, counting transpositions.
            let pos = gens.partition_point(|&x| x < g);
            if gens.get(pos) == Some(&g) {
                return None;
            }
            if (gens.len() - pos) % 2 == 1 {
                sign = -sign;
            }
            gens.insert(pos, g);
        }
        Some((sign, GrassmannMonomial { gens }))
    }

    pub fn is_one(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[GenId] {
        &self.gens
    }

    pub fn contains(&self, id: GenId) -> bool {
        self.gens.binary_search(&id).is_ok()
    }

    /// Merges two monomials, computing the permutation sign; `None` when a
    /// generator collides (the product term is zero).
    pub fn mul(&self, other: &GrassmannMonomial) -> Option<(i8, GrassmannMonomial)> {
        if self.is_one() {
            return Some((1, other.clone()));
        }
        if other.is_one() {
            return Some((1, self.clone()));
        }
        let mut seq = self.gens.clone();
        seq.extend_from_slice(&other.gens);
        GrassmannMonomial::from_sequence(&seq)
    }
}

/// Extension factor `r^ρ · D^{−n}` with ρ ∈ {0, 1} and n ≥ 0.
///
/// Positive powers of `D` are never stored: they expand to the polynomial
/// `1 + h²` during arithmetic. `r²` is likewise expanded eagerly.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct ExtFactor {
    /// Exponent of the adjoined root r ∈ {0, 1}.
    pub r: bool,
    /// n in D^{−n}, n ≥ 0.
    pub d_inv: u32,
}

impl ExtFactor {
    pub fn one() -> ExtFactor {
        ExtFactor::default()
    }

    pub fn is_one(&self) -> bool {
        !self.r && self.d_inv == 0
    }

    pub fn root() -> ExtFactor {
        ExtFactor { r: true, d_inv: 0 }
    }

    pub fn denom_inv(n: u32) -> ExtFactor {
        ExtFactor { r: false, d_inv: n }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{GenKind, Registry};
    use crate::rat;

    #[test]
    fn even_monomial_merges_and_cancels() {
        let mut reg = Registry::new();
        let s = reg.register("sigma", GenKind::ExponentialBase);
        let mut m = EvenMonomial::gen(s, rat(1, 2));
        m.mul_gen(s, rat(1, 2));
        assert_eq!(m.exponent(s), rat(1, 1));
        m.mul_gen(s, rat(-1, 1));
        assert!(m.is_one());
    }

    #[test]
    fn grassmann_merge_sign_and_collision() {
        let mut reg = Registry::new();
        let a = reg.register("a", GenKind::Odd);
        let b = reg.register("b", GenKind::Odd);
        let ma = GrassmannMonomial::single(a);
        let mb = GrassmannMonomial::single(b);
        let (s_ab, ab) = ma.mul(&mb).unwrap();
        let (s_ba, ba) = mb.mul(&ma).unwrap();
        assert_eq!(ab, ba);
        assert_eq!(s_ab, 1);
        assert_eq!(s_ba, -1);
        assert!(ma.mul(&ma).is_none());
    }

    #[test]
    fn from_sequence_signs() {
        let mut reg = Registry::new();
        let a = reg.register("a", GenKind::Odd);
        let b = reg.register("b", GenKind::Odd);
        let c = reg.register("c", GenKind::Odd);
        // cba = -abc after two transpositions... c,b -> swap1: b,c ; then a: two more shifts
        let (sign, m) = GrassmannMonomial::from_sequence(&[c, b, a]).unwrap();
        assert_eq!(m.gens(), &[a, b, c]);
        // cba -> acb (2 swaps) ... direct count: inversions of (c,b,a) = 3
        assert_eq!(sign, -1);
    }
}
