//! Graded derivations defined by their action on base symbols and extended
//! by the Leibniz rule.
//!
//! All four derivations of the model (∂₊, ∂₋, ∂_t = ∂₊ − ∂₋,
//! ∂_x = ∂₊ + ∂₋) are even: no sign is picked up when passing an odd factor.
//! Exponentials differentiate through their base symbol,
//! `d(e^{qφ}) = q·d(φ)·e^{qφ}`, and the extension root through the chain rule
//! on `r² = 1 + h²`.

use crate::expr::Expression;
use crate::generator::{two_gen, GenId, GenKind, Registry};
use crate::monomial::{EvenMonomial, ExtFactor, GrassmannMonomial};
use crate::term::{AlgebraError, Term};
use crate::{rat, rat_int, Rat};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct Derivation {
    name: String,
    /// Image of each base symbol (bare even-polynomial or odd generator).
    entries: BTreeMap<GenId, Expression>,
    /// Symbols explicitly declared constant (image zero).
    constants: BTreeSet<GenId>,
    /// exponential generator → its bare base symbol.
    exp_links: BTreeMap<GenId, GenId>,
}

impl Derivation {
    pub fn new(
        registry: &Registry,
        name: &str,
        entries: BTreeMap<GenId, Expression>,
        constants: BTreeSet<GenId>,
    ) -> Derivation {
        let mut exp_links = BTreeMap::new();
        for def in registry.defs() {
            if let Some(base) = def.exponent_symbol {
                exp_links.insert(def.id, base);
            }
        }
        for (base, image) in &entries {
            debug_assert!(
                image.is_zero()
                    || image.parity()
                        == match base.parity() {
                            crate::generator::Parity::Even => crate::expr::Parity::Even,
                            crate::generator::Parity::Odd => crate::expr::Parity::Odd,
                        },
                "derivation image parity must match source parity"
            );
        }
        Derivation {
            name: name.to_string(),
            entries,
            constants,
            exp_links,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn entry(&self, base: GenId) -> Option<&Expression> {
        self.entries.get(&base)
    }

    /// Linear combination of derivations on the same symbol table, used for
    /// the light-cone recombinations ∂_t = ∂₊ − ∂₋, ∂_x = ∂₊ + ∂₋.
    pub fn combine(name: &str, a: &Derivation, ca: &Rat, b: &Derivation, cb: &Rat) -> Derivation {
        let mut entries = BTreeMap::new();
        let keys: BTreeSet<GenId> = a.entries.keys().chain(b.entries.keys()).copied().collect();
        for k in keys {
            let ia = a.entries.get(&k).cloned().unwrap_or_else(Expression::zero);
            let ib = b.entries.get(&k).cloned().unwrap_or_else(Expression::zero);
            entries.insert(k, &ia.scale(ca) + &ib.scale(cb));
        }
        let constants: BTreeSet<GenId> = a.constants.intersection(&b.constants).copied().collect();
        Derivation {
            name: name.to_string(),
            entries,
            constants,
            exp_links: a.exp_links.clone(),
        }
    }

    fn image_of(&self, base: GenId) -> Result<Expression, AlgebraError> {
        if self.constants.contains(&base) {
            return Ok(Expression::zero());
        }
        self.entries
            .get(&base)
            .cloned()
            .ok_or_else(|| AlgebraError::MissingDerivative {
                name: self.name.clone(),
                symbol: format!("{base}"),
            })
    }

    /// Logarithmic derivative of a purely exponential monomial:
    /// `d(Π g^{q_g}) / Π g^{q_g} = Σ q_g·d(base_g)`.
    fn dlog_even(&self, m: &EvenMonomial) -> Result<Expression, AlgebraError> {
        let mut acc = Expression::zero();
        for (g, q) in m.iter() {
            if *g == two_gen() {
                continue;
            }
            debug_assert_eq!(g.kind(), GenKind::ExponentialBase);
            let base = match self.exp_links.get(g) {
                Some(b) => *b,
                None => {
                    if self.constants.contains(g) {
                        continue;
                    }
                    return Err(AlgebraError::MissingDerivative {
                        name: self.name.clone(),
                        symbol: format!("{g}"),
                    });
                }
            };
            let img = self.image_of(base)?;
            acc = &acc + &img.scale(q);
        }
        Ok(acc)
    }

    /// Applies the derivation to an expression via the graded Leibniz rule.
    pub fn apply(&self, e: &Expression) -> Result<Expression, AlgebraError> {
        let mut total = Expression::zero();
        for t in e.terms() {
            total = &total + &self.apply_term(t)?;
        }
        Ok(total)
    }

    fn apply_term(&self, t: &Term) -> Result<Expression, AlgebraError> {
        let mut acc = Expression::zero();

        // Even monomial factors.
        for (g, q) in t.even.iter() {
            if *g == two_gen() {
                continue;
            }
            match g.kind() {
                GenKind::ExponentialBase => {
                    let base = match self.exp_links.get(g) {
                        Some(b) => *b,
                        None => {
                            if self.constants.contains(g) {
                                continue;
                            }
                            return Err(AlgebraError::MissingDerivative {
                                name: self.name.clone(),
                                symbol: format!("{g}"),
                            });
                        }
                    };
                    let img = self.image_of(base)?;
                    if img.is_zero() {
                        continue;
                    }
                    // d(g^q) = q·d(base)·g^q: the term itself is unchanged.
                    let contrib = img.scale(q) * Expression::from_term(t.clone());
                    acc = &acc + &contrib;
                }
                GenKind::EvenPolynomial => {
                    let img = self.image_of(*g)?;
                    if img.is_zero() {
                        continue;
                    }
                    let mut reduced = t.clone();
                    reduced.even.mul_gen(*g, rat_int(-1));
                    let contrib = img.scale(q) * Expression::from_term(reduced);
                    acc = &acc + &contrib;
                }
                _ => unreachable!("extension generators never live in even monomials"),
            }
        }

        // Extension factor: d(r^ρ D^{−n}) = (ρ/2 − n)·dlog(h²)·h²·D^{−1}·(r^ρ D^{−n}).
        if t.ext.r || t.ext.d_inv > 0 {
            let factor = {
                let rho = if t.ext.r { rat(1, 2) } else { Rat::zero() };
                rho - rat_int(t.ext.d_inv as i64)
            };
            if !factor.is_zero() {
                let ext = crate::extension::require_extension();
                let dlog = self.dlog_even(&ext.h2)?;
                if !dlog.is_zero() {
                    let aux = Term {
                        coef: crate::scalar::CycloScalar::one(),
                        even: ext.h2.clone(),
                        ext: ExtFactor::denom_inv(1),
                        odd: GrassmannMonomial::one(),
                    };
                    let contrib = dlog.scale(&factor)
                        * Expression::from_term(aux)
                        * Expression::from_term(t.clone());
                    acc = &acc + &contrib;
                }
            }
        }

        // Grassmann factors: even derivation, no crossing signs.
        let odd_gens = t.odd.gens();
        for (i, theta) in odd_gens.iter().enumerate() {
            let img = self.image_of(*theta)?;
            if img.is_zero() {
                continue;
            }
            let mut left = t.clone();
            let (s, prefix) = GrassmannMonomial::from_sequence(&odd_gens[..i]).unwrap();
            debug_assert_eq!(s, 1);
            left.odd = prefix;
            let (s, suffix) = GrassmannMonomial::from_sequence(&odd_gens[i + 1..]).unwrap();
            debug_assert_eq!(s, 1);
            let right = Term {
                coef: crate::scalar::CycloScalar::one(),
                even: EvenMonomial::one(),
                ext: ExtFactor::one(),
                odd: suffix,
            };
            let contrib =
                Expression::from_term(left) * img * Expression::from_term(right);
            acc = &acc + &contrib;
        }

        Ok(acc)
    }
}
