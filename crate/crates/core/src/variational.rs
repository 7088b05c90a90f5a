//! Graded variational calculus: Euler–Lagrange equations for bulk densities
//! and defect conditions from defect densities plus boundary fluxes.
//!
//! Odd fields are varied with the left-derivative convention. In light-cone
//! symbols the Euler–Lagrange operator is
//! `δL/δq = ∂L/∂q − ∂₊(∂L/∂(∂₊q)) − ∂₋(∂L/∂(∂₋q))`,
//! which covers the defect case (time derivatives only) as well.

use crate::expr::Expression;
use crate::generator::{GenId, GenKind};
use crate::model::conditions::{Condition, ConditionKind, ConditionSet, OrientedSystem};
use crate::model::lagrangian::LagrangianDensity;
use crate::model::registry::{ModelCtx, TypeIDefect};
use crate::monomial::GrassmannMonomial;
use crate::rat_int;
use crate::term::AlgebraError;
use crate::verify::linsolve::LinearSystem;
use num::Zero;
use std::collections::BTreeMap;

/// Left partial derivative with respect to a generator.
///
/// For an odd generator the factor is anticommuted to the front of the
/// Grassmann monomial; for an even-polynomial generator both bare powers and
/// exponential occurrences (via the linked exponential generator) contribute.
pub fn partial_left(ctx: &ModelCtx, e: &Expression, x: GenId) -> Expression {
    let mut out = Vec::new();
    let exp_gen = match x.kind() {
        GenKind::EvenPolynomial => ctx.try_exp_gen_of(x),
        _ => None,
    };
    for t in e.terms() {
        match x.kind() {
            GenKind::Odd => {
                if let Some(pos) = t.odd.gens().iter().position(|&g| g == x) {
                    let mut c = t.clone();
                    let remaining: Vec<GenId> = c
                        .odd
                        .gens()
                        .iter()
                        .copied()
                        .filter(|&g| g != x)
                        .collect();
                    let (s, m) = GrassmannMonomial::from_sequence(&remaining).unwrap();
                    debug_assert_eq!(s, 1);
                    if pos % 2 == 1 {
                        c.coef = -c.coef;
                    }
                    c.odd = m;
                    out.push(c);
                }
            }
            GenKind::EvenPolynomial => {
                let n = t.even.exponent(x);
                if !n.is_zero() {
                    let mut c = t.clone();
                    c.even.mul_gen(x, rat_int(-1));
                    let scaled = Expression::from_term(c).scale(&n);
                    out.extend(scaled.terms().iter().cloned());
                }
                if let Some(eg) = exp_gen {
                    let q = t.even.exponent(eg);
                    if !q.is_zero() {
                        let scaled = Expression::from_term(t.clone()).scale(&q);
                        out.extend(scaled.terms().iter().cloned());
                    }
                }
            }
            _ => panic!("partial derivative with respect to a non-field generator"),
        }
    }
    Expression::from_terms(out)
}

/// δL/δq with the left-derivative convention for odd q.
pub fn variational_derivative(
    ctx: &ModelCtx,
    l: &LagrangianDensity,
    q: GenId,
) -> Result<Expression, AlgebraError> {
    let (dp_sym, dm_sym) = ctx.deriv_symbols(q);
    let direct = partial_left(ctx, &l.expr, q);
    let wrt_dp = partial_left(ctx, &l.expr, dp_sym);
    let wrt_dm = partial_left(ctx, &l.expr, dm_sym);
    let out = &(&direct - &ctx.dp.apply(&wrt_dp)?) - &ctx.dm.apply(&wrt_dm)?;
    Ok(out)
}

/// Per-class boundary flux signs. `+1` means the left-region field carries
/// `+base` (and the right-region field `−base`), with base = ∂_x q for
/// bosons, iψ for ψ-class, iψ̄ for ψ̄-class.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FluxSigns {
    pub boson: i8,
    pub psi: i8,
    pub psibar: i8,
}

/// The calibrated sign table: fixed once against the printed Type-I
/// conditions and then frozen; covers Type-II unchanged.
pub const FROZEN_FLUX_SIGNS: FluxSigns = FluxSigns {
    boson: 1,
    psi: -1,
    psibar: 1,
};

/// Boundary-flux contributions per bulk field at a defect.
#[derive(Clone, Debug)]
pub struct FluxTable {
    entries: BTreeMap<GenId, Expression>,
}

impl FluxTable {
    pub fn get(&self, q: GenId) -> Expression {
        self.entries
            .get(&q)
            .cloned()
            .unwrap_or_else(Expression::zero)
    }

    pub fn has(&self, q: GenId) -> bool {
        self.entries.contains_key(&q)
    }

    fn build(ctx: &ModelCtx, signs: FluxSigns, left: usize, right: usize) -> FluxTable {
        let mut entries = BTreeMap::new();
        let side = |s: i8, is_left: bool| {
            if is_left {
                rat_int(s as i64)
            } else {
                rat_int(-s as i64)
            }
        };
        for (region, is_left) in [(left, true), (right, false)] {
            entries.insert(
                ctx.phi[region],
                ctx.dx_of(ctx.phi[region]).scale(&side(signs.boson, is_left)),
            );
            entries.insert(
                ctx.psi[region],
                (&ctx.i() * &ctx.gen(ctx.psi[region])).scale(&side(signs.psi, is_left)),
            );
            entries.insert(
                ctx.psib[region],
                (&ctx.i() * &ctx.gen(ctx.psib[region])).scale(&side(signs.psibar, is_left)),
            );
        }
        FluxTable { entries }
    }

    /// Flux table for a Type-I defect (left region 1, right region 0 for
    /// defect 1; left 0, right 2 for defect 2).
    pub fn type_i(ctx: &ModelCtx, d: &TypeIDefect, signs: FluxSigns) -> FluxTable {
        let (right, left) = if d.index == 2 { (2, 0) } else { (0, 1) };
        FluxTable::build(ctx, signs, left, right)
    }

    /// Flux table for the fused defect: region 1 on the left, region 2 on
    /// the right.
    pub fn type_ii(ctx: &ModelCtx, signs: FluxSigns) -> FluxTable {
        FluxTable::build(ctx, signs, 1, 2)
    }
}

/// Defect conditions from a defect density: one equation per varied field,
/// `flux(q) + δL_D/δq = 0`.
pub fn defect_euler_lagrange(
    ctx: &ModelCtx,
    l: &LagrangianDensity,
    flux: &FluxTable,
    varied: &[GenId],
) -> Result<ConditionSet, AlgebraError> {
    let mut conditions = Vec::new();
    for &q in varied {
        let delta = variational_derivative(ctx, l, q)?;
        let eq = &flux.get(q) + &delta;
        conditions.push(Condition::new(
            format!("el:{}", ctx.reg.name(q)),
            eq,
            Expression::zero(),
        ));
    }
    Ok(ConditionSet {
        kind: ConditionKind::Derived(format!("{:?}", l.kind)),
        conditions,
    })
}

/// Bulk equations of motion in light-cone form, derived (not assumed): the
/// variational equations solved for ∂₊∂₋φ_p, ∂₊ψ_p, ∂₋ψ̄_p.
pub fn bulk_euler_lagrange(
    ctx: &ModelCtx,
    p: usize,
) -> Result<(ConditionSet, OrientedSystem), AlgebraError> {
    let l = crate::model::build_bulk_lagrangian(ctx, p);
    let mut sys = LinearSystem::new(vec![ctx.dpm_phi[p], ctx.dp_psi[p], ctx.dm_psib[p]]);
    for q in [ctx.phi[p], ctx.psi[p], ctx.psib[p]] {
        let delta = variational_derivative(ctx, &l, q)?;
        sys.push(format!("eom:{}", ctx.reg.name(q)), delta);
    }
    let out = sys.solve()?;
    if !out.is_consistent() {
        return Err(AlgebraError::Inconsistent {
            residual: "bulk Euler-Lagrange system".into(),
        });
    }
    let rules = out.as_rewrite_system()?;
    let conditions = ConditionSet {
        kind: ConditionKind::BulkEom(p),
        conditions: out
            .assignments
            .iter()
            .map(|(g, image)| {
                Condition::new(
                    format!("eom:{}", ctx.reg.name(*g)),
                    Expression::gen(*g),
                    image.clone(),
                )
            })
            .collect(),
    };
    Ok((
        conditions,
        OrientedSystem {
            rules,
            dependent_residuals: out.residuals,
            steps: out.steps,
        },
    ))
}

impl ModelCtx {
    /// Exponential generator of a bare field, if one is registered.
    pub fn try_exp_gen_of(&self, field: GenId) -> Option<GenId> {
        for def in self.reg.defs() {
            if def.exponent_symbol == Some(field) {
                return Some(def.id);
            }
        }
        None
    }
}

/// The defect density shifted by a total time derivative ∂_t F; the derived
/// conditions must not change.
pub fn add_total_time_derivative(
    ctx: &ModelCtx,
    l: &LagrangianDensity,
    f: &Expression,
) -> Result<LagrangianDensity, AlgebraError> {
    Ok(LagrangianDensity {
        kind: l.kind.clone(),
        expr: &l.expr + &ctx.dt.apply(f)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_type_i_lagrangian, ctx};
    use crate::rat;

    #[test]
    fn even_partial_matches_classical_rule() {
        // δ/δφ of 4cosh(2φ) is 8sinh(2φ).
        let c = ctx();
        let l = LagrangianDensity {
            kind: crate::model::LagrangianKind::Bulk(1),
            expr: c.cosh_lin(&[(c.phi[1], rat_int(2))]).scale(&rat_int(4)),
        };
        let v = variational_derivative(c, &l, c.phi[1]).unwrap();
        assert_eq!(v, c.sinh_lin(&[(c.phi[1], rat_int(2))]).scale(&rat_int(8)));
    }

    #[test]
    fn odd_second_order_sign_rule() {
        // δ/δg₁ of 2i g₁∂_t g₁ = 4i ∂_t g₁.
        let c = ctx();
        let l = LagrangianDensity {
            kind: crate::model::LagrangianKind::DefectTypeI(1),
            expr: (&(&c.i() * &c.gen(c.g[0])) * &c.dt_of(c.g[0])).scale(&rat_int(2)),
        };
        let v = variational_derivative(c, &l, c.g[0]).unwrap();
        assert_eq!(v, (&c.i() * &c.dt_of(c.g[0])).scale(&rat_int(4)));
    }

    #[test]
    fn lambda0_kinetic_term_gives_total_derivative_shift() {
        // δ/δΛ of φ₋∂_tΛ = −∂_tφ₋.
        let c = ctx();
        let l = LagrangianDensity {
            kind: crate::model::LagrangianKind::DefectTypeII,
            expr: &(&c.gen(c.phi[1]) - &c.gen(c.phi[2])) * &c.dt_of(c.lam0),
        };
        let v = variational_derivative(c, &l, c.lam0).unwrap();
        let expect = -&(&c.dt_of(c.phi[1]) - &c.dt_of(c.phi[2]));
        assert_eq!(v, expect);
    }

    #[test]
    fn bulk_eom_bosonic_factor() {
        // ∂₊∂₋φ = 2 sinh(2φ) − 2i ψ̄ψ sinh φ; the bosonic factor matches the
        // independent hand reduction through ∂_x² − ∂_t² = 4∂₊∂₋.
        let c = ctx();
        let (cs, oriented) = bulk_euler_lagrange(c, 1).unwrap();
        assert!(oriented
            .dependent_residuals
            .iter()
            .all(|(_, e)| e.is_zero()));
        let dpm = cs.get("eom:dpmphi1").unwrap();
        let bos = c.bosonic_truncation().substitute(&dpm.rhs).unwrap();
        assert_eq!(
            bos,
            c.sinh_lin(&[(c.phi[1], rat_int(2))]).scale(&rat_int(2))
        );
        // Fermionic part: −2iψ̄ψ sinhφ.
        let full = &dpm.rhs - &c.sinh_lin(&[(c.phi[1], rat_int(2))]).scale(&rat_int(2));
        let expect = (&(&c.i() * &(&c.gen(c.psib[1]) * &c.gen(c.psi[1])))
            * &c.sinh_lin(&[(c.phi[1], rat_int(1))]))
            .scale(&rat_int(-2));
        assert_eq!(full, expect);
    }

    #[test]
    fn fermion_eom_shape() {
        // ∂₊ψ ∝ ψ̄ coshφ and ∂₋ψ̄ ∝ ψ coshφ.
        let c = ctx();
        let (cs, _) = bulk_euler_lagrange(c, 0).unwrap();
        let dppsi = cs.get("eom:dppsi0").unwrap();
        let expect =
            (&c.gen(c.psib[0]) * &c.cosh_lin(&[(c.phi[0], rat_int(1))])).scale(&rat_int(-2));
        assert_eq!(dppsi.rhs, expect);
        let dmpsib = cs.get("eom:dmpsib0").unwrap();
        let expect =
            (&c.gen(c.psi[0]) * &c.cosh_lin(&[(c.phi[0], rat_int(1))])).scale(&rat_int(-2));
        assert_eq!(dmpsib.rhs, expect);
    }

    #[test]
    fn free_limit_gives_wave_equation() {
        let c = ctx();
        let l = LagrangianDensity {
            kind: crate::model::LagrangianKind::Bulk(1),
            expr: {
                let dx_phi = c.dx_of(c.phi[1]);
                let dt_phi = c.dt_of(c.phi[1]);
                &(&dx_phi * &dx_phi).scale(&rat(1, 2)) - &(&dt_phi * &dt_phi).scale(&rat(1, 2))
            },
        };
        let v = variational_derivative(c, &l, c.phi[1]).unwrap();
        assert_eq!(v, Expression::gen(c.dpm_phi[1]).scale(&rat_int(-4)));
    }

    #[test]
    fn free_defect_gives_continuity_conditions() {
        // B ↦ 0, fermions ↦ 0: varying φ₀ and φ₁ gives ∂_xφ₀ = ∂_tφ₁ and
        // ∂_xφ₁ = ∂_tφ₀.
        let c = ctx();
        let l = LagrangianDensity {
            kind: crate::model::LagrangianKind::DefectTypeI(1),
            expr: (&(&c.gen(c.phi[0]) * &c.dt_of(c.phi[1]))
                - &(&c.gen(c.phi[1]) * &c.dt_of(c.phi[0])))
                .scale(&rat(1, 2)),
        };
        let flux = FluxTable::type_i(c, &c.defect1(), FROZEN_FLUX_SIGNS);
        let cs = defect_euler_lagrange(c, &l, &flux, &[c.phi[0], c.phi[1]]).unwrap();
        let eq0 = cs.get("el:phi0").unwrap();
        assert_eq!(eq0.residual(), &(-&c.dx_of(c.phi[0])) + &c.dt_of(c.phi[1]));
        let eq1 = cs.get("el:phi1").unwrap();
        assert_eq!(eq1.residual(), &c.dx_of(c.phi[1]) - &c.dt_of(c.phi[0]));
    }

    #[test]
    fn total_time_derivative_leaves_conditions_unchanged() {
        let c = ctx();
        let l = build_type_i_lagrangian(c, &c.defect1());
        let flux = FluxTable::type_i(c, &c.defect1(), FROZEN_FLUX_SIGNS);
        let varied = [
            c.phi[0], c.phi[1], c.psi[0], c.psi[1], c.psib[0], c.psib[1], c.g[0],
        ];
        let base = defect_euler_lagrange(c, &l, &flux, &varied).unwrap();
        let fs = [
            &c.gen(c.phi[0]) * &c.exp_lin(&[(c.phi[1], rat_int(1))]),
            &(&c.gen(c.g[0]) * &c.gen(c.psi[1])) * &c.exp_lin(&[(c.phi[0], rat(1, 2))]),
            c.cosh_lin(&[(c.phi[0], rat_int(1)), (c.phi[1], rat_int(-1))]),
        ];
        for f in fs {
            let shifted = add_total_time_derivative(c, &l, &f).unwrap();
            let cs = defect_euler_lagrange(c, &shifted, &flux, &varied).unwrap();
            for (a, b) in base.conditions.iter().zip(cs.conditions.iter()) {
                assert_eq!(
                    a.residual(),
                    b.residual(),
                    "changed by a total time derivative: {}",
                    a.tag
                );
            }
        }
    }
}
