//! Terminating substitution systems: oriented defect conditions and model
//! reparametrizations as generator → expression rules.

use crate::expr::{Expression, Parity};
use crate::extension;
use crate::generator::{GenId, GenKind};
use crate::monomial::GrassmannMonomial;
use crate::term::{AlgebraError, Term};
use std::collections::{BTreeMap, BTreeSet};

/// Oriented rules `generator ↦ expression`. The system is checked to be
/// terminating at construction: a rewritten symbol never reappears in any
/// rule's image, so a single simultaneous pass is a fixpoint.
#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    rules: BTreeMap<GenId, Expression>,
    /// Symbols declared free (never rewritten); retained as metadata for
    /// reports.
    free: BTreeSet<GenId>,
}

impl RewriteSystem {
    pub fn new() -> RewriteSystem {
        RewriteSystem::default()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = (&GenId, &Expression)> {
        self.rules.iter()
    }

    pub fn image(&self, g: GenId) -> Option<&Expression> {
        self.rules.get(&g)
    }

    pub fn rewritten_symbols(&self) -> BTreeSet<GenId> {
        self.rules.keys().copied().collect()
    }

    pub fn free_symbols(&self) -> &BTreeSet<GenId> {
        &self.free
    }

    pub fn declare_free(&mut self, g: GenId) {
        self.free.insert(g);
    }

    /// Adds a rule, enforcing parity match between source and image.
    pub fn add_rule(&mut self, g: GenId, image: Expression) -> Result<(), AlgebraError> {
        let ok = match (g.parity(), image.parity()) {
            (_, Parity::Zero) => true,
            (crate::generator::Parity::Even, Parity::Even) => true,
            (crate::generator::Parity::Odd, Parity::Odd) => true,
            _ => false,
        };
        if !ok {
            return Err(AlgebraError::BadSubstitution {
                symbol: format!("{g}"),
                why: "image parity does not match source parity".into(),
            });
        }
        self.rules.insert(g, image);
        Ok(())
    }

    /// Verifies termination: no rewritten symbol occurs in any image.
    pub fn check_terminating(&self) -> Result<(), AlgebraError> {
        for image in self.rules.values() {
            for s in image.symbols() {
                if self.rules.contains_key(&s) {
                    return Err(AlgebraError::NotTerminating {
                        symbol: format!("{s}"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Applies the system simultaneously to every occurrence of a rewritten
    /// symbol, including inside exponential monomials, where fractional
    /// powers expand the nilpotent part of the image exactly.
    pub fn substitute(&self, e: &Expression) -> Result<Expression, AlgebraError> {
        if self.rules.is_empty() {
            return Ok(e.clone());
        }
        // Rewriting a generator that enters the definition of h would change
        // the meaning of the extension factor carried by a term.
        let ext_support: BTreeSet<GenId> = extension::extension()
            .map(|d| d.h2.gens().collect())
            .unwrap_or_default();

        let mut total = Expression::zero();
        for t in e.terms() {
            if (t.ext.r || t.ext.d_inv > 0)
                && self.rules.keys().any(|g| ext_support.contains(g))
            {
                return Err(AlgebraError::BadSubstitution {
                    symbol: "r".into(),
                    why: "substitution targets a generator inside the ring extension".into(),
                });
            }
            let mut acc = Expression::from_term(Term {
                coef: t.coef.clone(),
                even: crate::monomial::EvenMonomial::one(),
                ext: t.ext,
                odd: GrassmannMonomial::one(),
            });
            for (g, q) in t.even.iter() {
                match self.rules.get(g) {
                    None => {
                        acc = acc * Expression::gen_pow(*g, q.clone());
                    }
                    Some(image) => {
                        let powed = match g.kind() {
                            GenKind::EvenPolynomial => image.pow(q),
                            GenKind::ExponentialBase => image.pow(q),
                            _ => unreachable!(),
                        }
                        .map_err(|err| AlgebraError::BadSubstitution {
                            symbol: format!("{g}"),
                            why: err.to_string(),
                        })?;
                        acc = acc * powed;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            for theta in t.odd.gens() {
                match self.rules.get(theta) {
                    None => acc = acc * Expression::gen(*theta),
                    Some(image) => acc = acc * image.clone(),
                }
                if acc.is_zero() {
                    break;
                }
            }
            total = &total + &acc;
        }
        Ok(total)
    }

    /// Substitutes repeatedly until a fixpoint, for systems that are layered
    /// rather than fully reduced. Panics after an implausible depth.
    pub fn substitute_fixpoint(&self, e: &Expression) -> Result<Expression, AlgebraError> {
        let mut cur = self.substitute(e)?;
        for _ in 0..16 {
            if cur.symbols().iter().all(|s| !self.rules.contains_key(s)) {
                return Ok(cur);
            }
            cur = self.substitute(&cur)?;
        }
        Err(AlgebraError::NotTerminating {
            symbol: "fixpoint depth exceeded".into(),
        })
    }
}
