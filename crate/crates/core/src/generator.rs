//! Generator registry for the graded function ring.
//!
//! A generator is a named symbol with a kind that fixes its Grassmann parity
//! and the legal domain of its exponents:
//!
//! * `ExponentialBase` — positive quantities and exponentials of fields
//!   (`exp(phi1)`, `sigma`, `lambda`, `2`, …); exponents are arbitrary
//!   rationals.
//! * `EvenPolynomial` — bare fields and derivative symbols (`phi1`,
//!   `dpphi1`, …); exponents are non-negative integers.
//! * `Odd` — anticommuting symbols (`psi1`, `g1`, …); exponents in {0, 1}.
//! * `RootExtension` / `Denominator` — the adjoined root `r` with
//!   `r² = 1 + h²` and the denominator `D = 1 + h²`; these never live in an
//!   even monomial, they are carried by the term's extension factor.
//!
//! The kind is packed into the generator id so that ring arithmetic never
//! needs a registry lookup.

use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum GenKind {
    ExponentialBase = 0,
    EvenPolynomial = 1,
    Odd = 2,
    RootExtension = 3,
    Denominator = 4,
}

impl GenKind {
    pub fn parity(self) -> Parity {
        match self {
            GenKind::Odd => Parity::Odd,
            _ => Parity::Even,
        }
    }

    fn from_tag(tag: u32) -> GenKind {
        match tag {
            0 => GenKind::ExponentialBase,
            1 => GenKind::EvenPolynomial,
            2 => GenKind::Odd,
            3 => GenKind::RootExtension,
            _ => GenKind::Denominator,
        }
    }
}

/// Generator identifier with the kind packed in the top bits.
///
/// Ordering is (kind, registration serial); the fixed total order on odd
/// generators used by Grassmann monomials is exactly this order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenId(u32);

const KIND_SHIFT: u32 = 24;

impl GenId {
    fn new(kind: GenKind, serial: u32) -> GenId {
        debug_assert!(serial < (1 << KIND_SHIFT));
        GenId(((kind as u32) << KIND_SHIFT) | serial)
    }

    pub fn kind(self) -> GenKind {
        GenKind::from_tag(self.0 >> KIND_SHIFT)
    }

    pub fn parity(self) -> Parity {
        self.kind().parity()
    }

    pub fn serial(self) -> u32 {
        self.0 & ((1 << KIND_SHIFT) - 1)
    }
}

/// Record for one registered generator.
#[derive(Clone, Debug)]
pub struct GenDef {
    pub id: GenId,
    pub name: String,
    pub kind: GenKind,
    /// For exponential-base generators that are the exponential of a field:
    /// the bare field symbol (`exp(phi1)` links to `phi1`). Derivations act on
    /// the exponential through this link.
    pub exponent_symbol: Option<GenId>,
}

/// Registry mapping names to generator ids. Built once, then read-only.
#[derive(Default, Debug)]
pub struct Registry {
    defs: Vec<GenDef>,
    by_name: HashMap<String, GenId>,
    counts: [u32; 5],
}

/// The reserved generator for the positive constant 2, pre-registered in
/// every registry so that half-integer powers of 2 are representable. Its
/// exponent is kept in [0, 1); the integer part folds into the scalar.
pub fn two_gen() -> GenId {
    GenId::new(GenKind::ExponentialBase, 0)
}

impl Registry {
    pub fn new() -> Registry {
        let mut reg = Registry::default();
        let two = reg.register("2", GenKind::ExponentialBase);
        debug_assert_eq!(two, two_gen());
        reg
    }

    pub fn register(&mut self, name: &str, kind: GenKind) -> GenId {
        self.register_linked(name, kind, None)
    }

    /// Registers an exponential-base generator linked to a bare field symbol.
    pub fn register_exponential(&mut self, name: &str, field: GenId) -> GenId {
        self.register_linked(name, GenKind::ExponentialBase, Some(field))
    }

    fn register_linked(&mut self, name: &str, kind: GenKind, link: Option<GenId>) -> GenId {
        assert!(
            !self.by_name.contains_key(name),
            "duplicate generator name: {name}"
        );
        let serial = self.counts[kind as usize];
        self.counts[kind as usize] += 1;
        let id = GenId::new(kind, serial);
        self.defs.push(GenDef {
            id,
            name: name.to_string(),
            kind,
            exponent_symbol: link,
        });
        self.by_name.insert(name.to_string(), id);
        id
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn def(&self, id: GenId) -> &GenDef {
        self.defs
            .iter()
            .find(|d| d.id == id)
            .expect("generator not in registry")
    }

    pub fn name(&self, id: GenId) -> &str {
        &self.def(id).name
    }

    pub fn defs(&self) -> &[GenDef] {
        &self.defs
    }

    /// The bare symbol an exponential-base generator differentiates through.
    pub fn exponent_symbol(&self, id: GenId) -> Option<GenId> {
        self.def(id).exponent_symbol
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{:?}#{}", self.kind(), self.serial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_determines_parity() {
        let mut reg = Registry::new();
        let s = reg.register("sigma", GenKind::ExponentialBase);
        let p = reg.register("psi1", GenKind::Odd);
        assert_eq!(s.parity(), Parity::Even);
        assert_eq!(p.parity(), Parity::Odd);
        assert_eq!(reg.lookup("psi1"), Some(p));
        assert_eq!(reg.name(s), "sigma");
    }

    #[test]
    #[should_panic(expected = "duplicate generator name")]
    fn duplicate_names_rejected() {
        let mut reg = Registry::new();
        reg.register("x", GenKind::EvenPolynomial);
        reg.register("x", GenKind::Odd);
    }

    #[test]
    fn odd_ids_totally_ordered_by_registration() {
        let mut reg = Registry::new();
        let a = reg.register("a", GenKind::Odd);
        let b = reg.register("b", GenKind::Odd);
        assert!(a < b);
    }
}
