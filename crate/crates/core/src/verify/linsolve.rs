//! Triangular elimination over the graded ring.
//!
//! Unknowns are generators (even or odd) that occur linearly; pivots must be
//! single invertible terms so that elimination stays exact. Used to orient
//! condition sets into rewrite systems, to discover chirality splits from
//! matrix residuals, and to solve for normalization constants.

use crate::expr::{decompose_linear, Expression};
use crate::generator::GenId;
use crate::rewrite::RewriteSystem;
use crate::term::AlgebraError;
use std::collections::BTreeMap;

/// A linear system: each equation is an expression that must vanish.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub unknowns: Vec<GenId>,
    pub equations: Vec<(String, Expression)>,
}

/// One elimination step, kept as the recombination record.
#[derive(Clone, Debug)]
pub struct SolveStep {
    pub unknown: GenId,
    pub equation: String,
    pub pivot: Expression,
}

/// Solved assignments plus whatever could not be reduced to zero.
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub assignments: BTreeMap<GenId, Expression>,
    /// Equations left over after all assignments are substituted back. An
    /// inconsistent or under-determined system shows up here.
    pub residuals: Vec<(String, Expression)>,
    pub steps: Vec<SolveStep>,
}

impl SolveOutcome {
    pub fn is_consistent(&self) -> bool {
        self.residuals.iter().all(|(_, e)| e.is_zero())
    }

    /// The assignments as a terminating rewrite system.
    pub fn as_rewrite_system(&self) -> Result<RewriteSystem, AlgebraError> {
        let mut rs = RewriteSystem::new();
        for (g, image) in &self.assignments {
            rs.add_rule(*g, image.clone())?;
        }
        rs.check_terminating()?;
        Ok(rs)
    }
}

impl LinearSystem {
    pub fn new(unknowns: Vec<GenId>) -> LinearSystem {
        LinearSystem {
            unknowns,
            equations: Vec::new(),
        }
    }

    pub fn push(&mut self, tag: impl Into<String>, residual: Expression) {
        self.equations.push((tag.into(), residual));
    }

    /// Triangular elimination with invertible-monomial pivots, followed by
    /// full back-substitution so every assignment is expressed in free
    /// symbols only.
    pub fn solve(&self) -> Result<SolveOutcome, AlgebraError> {
        let mut remaining: Vec<GenId> = self.unknowns.clone();
        let mut equations = self.equations.clone();
        let mut steps: Vec<SolveStep> = Vec::new();
        // Assignments in elimination order; images may reference unknowns
        // eliminated later, fixed up by back-substitution below.
        let mut raw: Vec<(GenId, Expression)> = Vec::new();

        while !remaining.is_empty() {
            let mut found: Option<(usize, GenId, Expression, Expression)> = None;
            'search: for x in &remaining {
                for (idx, (_, eq)) in equations.iter().enumerate() {
                    if eq.is_zero() {
                        continue;
                    }
                    let (coeffs, _) = decompose_linear(eq, &remaining)?;
                    if let Some(c) = coeffs.get(x) {
                        if let Some(t) = c.as_single_term() {
                            if t.is_invertible() {
                                found = Some((idx, *x, c.clone(), eq.clone()));
                                break 'search;
                            }
                        }
                    }
                }
            }
            let (idx, x, pivot, eq) = match found {
                Some(f) => f,
                None => break, // no solvable unknown left
            };
            // eq = C·x + rest  ⇒  x = −C⁻¹·rest.
            let (coeffs, constant) = decompose_linear(&eq, &remaining)?;
            let mut rest = constant;
            for (g, cg) in &coeffs {
                if *g != x {
                    rest = &rest + &(cg * &Expression::gen(*g));
                }
            }
            let image = -&(&pivot.inv()? * &rest);
            let tag = equations[idx].0.clone();
            equations.remove(idx);
            // Substitute into the still-unsolved equations.
            let mut single = RewriteSystem::new();
            single.add_rule(x, image.clone())?;
            for (_, e) in equations.iter_mut() {
                *e = single.substitute(e)?;
            }
            steps.push(SolveStep {
                unknown: x,
                equation: tag,
                pivot,
            });
            raw.push((x, image));
            remaining.retain(|g| *g != x);
        }

        // Back-substitute so images are free of all unknowns.
        let mut assignments: BTreeMap<GenId, Expression> = BTreeMap::new();
        for (x, image) in raw.into_iter().rev() {
            let mut rs = RewriteSystem::new();
            for (g, img) in &assignments {
                rs.add_rule(*g, img.clone())?;
            }
            let reduced = rs.substitute(&image)?;
            assignments.insert(x, reduced);
        }
        // Residuals: the untouched equations with every assignment applied.
        let mut rs = RewriteSystem::new();
        for (g, img) in &assignments {
            rs.add_rule(*g, img.clone())?;
        }
        let mut residuals = Vec::new();
        for (tag, e) in equations {
            residuals.push((tag, rs.substitute(&e)?));
        }
        Ok(SolveOutcome {
            assignments,
            residuals,
            steps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ctx;
    use crate::rat_int;

    #[test]
    fn single_monomial_equation() {
        let c = ctx();
        // σ·x − ψ̄₁ = 0 with odd unknown x = dpg1 ⇒ x = σ^{-1}ψ̄₁.
        let x = c.dp_g[0];
        let eq = &(&Expression::gen(c.sigma) * &Expression::gen(x)) - &Expression::gen(c.psib[1]);
        let mut sys = LinearSystem::new(vec![x]);
        sys.push("eq", eq);
        let out = sys.solve().unwrap();
        assert!(out.is_consistent());
        let expect =
            &Expression::gen_pow(c.sigma, rat_int(-1)) * &Expression::gen(c.psib[1]);
        assert_eq!(out.assignments[&x], expect);
    }

    #[test]
    fn two_by_two_light_cone_recombination() {
        let c = ctx();
        // x − y = a, x + y = b  ⇒  x = (a+b)/2, y = (b−a)/2
        let x = c.dp_phi[0];
        let y = c.dm_phi[0];
        let a = Expression::gen(c.dp_phi[1]);
        let b = Expression::gen(c.dm_phi[1]);
        let mut sys = LinearSystem::new(vec![x, y]);
        sys.push("e1", &(&Expression::gen(x) - &Expression::gen(y)) - &a);
        sys.push("e2", &(&Expression::gen(x) + &Expression::gen(y)) - &b);
        let out = sys.solve().unwrap();
        assert!(out.is_consistent());
        assert_eq!(out.assignments[&x], (&a + &b).scale(&crate::rat(1, 2)));
        assert_eq!(out.assignments[&y], (&b - &a).scale(&crate::rat(1, 2)));
    }

    #[test]
    fn inconsistent_system_reports_residual() {
        let c = ctx();
        let x = c.dp_phi[0];
        let mut sys = LinearSystem::new(vec![x]);
        sys.push("e1", &Expression::gen(x) - &Expression::zero());
        sys.push("e2", &Expression::gen(x) - &Expression::one());
        let out = sys.solve().unwrap();
        assert!(!out.is_consistent());
        assert_eq!(out.residuals.len(), 1);
    }

    #[test]
    fn nonlinear_occurrence_is_an_error() {
        let c = ctx();
        let x = c.dp_phi[0];
        let mut sys = LinearSystem::new(vec![x]);
        sys.push("e", Expression::gen_pow(x, rat_int(2)));
        assert!(sys.solve().is_err());
    }
}
