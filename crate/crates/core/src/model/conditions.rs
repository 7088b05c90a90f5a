//! The printed defect conditions, and their orientation into terminating
//! rewrite systems.

use super::registry::{ModelCtx, TypeIDefect};
use crate::expr::Expression;
use crate::generator::GenId;
use crate::rewrite::RewriteSystem;
use crate::term::AlgebraError;
use crate::verify::linsolve::{LinearSystem, SolveStep};
use crate::{rat, rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConditionKind {
    TypeI(usize),
    TypeII,
    BulkEom(usize),
    Derived(String),
}

/// One labelled equation lhs = rhs.
#[derive(Clone, Debug)]
pub struct Condition {
    pub tag: String,
    pub lhs: Expression,
    pub rhs: Expression,
}

impl Condition {
    pub fn new(tag: impl Into<String>, lhs: Expression, rhs: Expression) -> Condition {
        Condition {
            tag: tag.into(),
            lhs,
            rhs,
        }
    }

    pub fn residual(&self) -> Expression {
        &self.lhs - &self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct ConditionSet {
    pub kind: ConditionKind,
    pub conditions: Vec<Condition>,
}

impl ConditionSet {
    pub fn get(&self, tag: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.tag == tag)
    }

    /// Every equation must be parity-homogeneous.
    pub fn parity_homogeneous(&self) -> bool {
        self.conditions.iter().all(|c| {
            matches!(
                c.residual().parity(),
                crate::expr::Parity::Even | crate::expr::Parity::Odd | crate::expr::Parity::Zero
            )
        })
    }
}

/// Orientation outcome: the rewrite rules, the equations that turned out to
/// be linear combinations of the others (their residuals must vanish), and
/// the elimination trace, which is the recombination witness.
#[derive(Clone, Debug)]
pub struct OrientedSystem {
    pub rules: RewriteSystem,
    pub dependent_residuals: Vec<(String, Expression)>,
    pub steps: Vec<SolveStep>,
}

/// Solves a condition set for the `eliminate` symbols and back-substitutes
/// into a fully reduced, terminating rewrite system. The free symbols are
/// metadata only.
pub fn orient_rewrite_system(
    cs: &ConditionSet,
    eliminate: &[GenId],
    free: &[GenId],
) -> Result<OrientedSystem, AlgebraError> {
    let mut sys = LinearSystem::new(eliminate.to_vec());
    for c in &cs.conditions {
        sys.push(c.tag.clone(), c.residual());
    }
    let out = sys.solve()?;
    for g in eliminate {
        if !out.assignments.contains_key(g) {
            return Err(AlgebraError::NoPivot {
                symbol: format!("{g}"),
            });
        }
    }
    let mut rules = out.as_rewrite_system()?;
    for g in free {
        rules.declare_free(*g);
    }
    Ok(OrientedSystem {
        rules,
        dependent_residuals: out.residuals,
        steps: out.steps,
    })
}

/// The five Type-I defect conditions for defect k, in the printed mixed
/// (∂_x, ∂_t) presentation. Region roles: `to` is the region right of the
/// defect (p = 0 for defect 1), `from` the region left of it.
pub fn build_type_i_conditions(ctx: &ModelCtx, d: &TypeIDefect) -> ConditionSet {
    let right = d.to.0;
    let left = d.from.0;
    // For defect 2 the auxiliary problem runs 0 → 2 with region 2 on the
    // right of x₂ and region 0 on the left.
    let (right, left) = if d.index == 2 { (2, 0) } else { (right, left) };

    let phi_r = ctx.phi[right];
    let phi_l = ctx.phi[left];
    let psi_r = ctx.gen(ctx.psi[right]);
    let psi_l = ctx.gen(ctx.psi[left]);
    let psib_r = ctx.gen(ctx.psib[right]);
    let psib_l = ctx.gen(ctx.psib[left]);
    let g = ctx.gen(d.aux);
    let s = d.sigma;
    let tag = |base: &str| {
        if d.index == 1 {
            base.to_string()
        } else {
            format!("{base}@2")
        }
    };

    let sum = |a: i64, b: i64| vec![(phi_r, rat(a, b)), (phi_l, rat(a, b))];
    let diff = |a: i64, b: i64| vec![(phi_r, rat(a, b)), (phi_l, rat(-a, b))];

    let sinh_sum = ctx.sinh_lin(&sum(1, 1));
    let sinh_diff = ctx.sinh_lin(&diff(1, 1));
    let sinh_half_sum = ctx.sinh_lin(&sum(1, 2));
    let sinh_half_diff = ctx.sinh_lin(&diff(1, 2));
    let cosh_half_sum = ctx.cosh_lin(&sum(1, 2));
    let cosh_half_diff = ctx.cosh_lin(&diff(1, 2));

    let psib_sum = &psib_r + &psib_l;
    let psi_diff = &psi_r - &psi_l;

    // √(2σ')·i·g
    let sqrt_2s = &Expression::gen_pow(crate::generator::two_gen(), rat(1, 2))
        * &ctx.const_pow(s, 1, 2);
    let lead = &(&sqrt_2s * &ctx.i()) * &g;
    let s_inv = ctx.const_pow(s, -1, 1);

    let fermion = |sign_psi: i64| {
        &lead
            * &(&(&sinh_half_sum * &psib_sum)
                + &(&(&s_inv * &sinh_half_diff) * &psi_diff).scale(&rat_int(sign_psi)))
    };

    let defeito1 = Condition::new(
        tag("defeito1"),
        &ctx.dt_of(phi_r) - &ctx.dx_of(phi_l),
        &(&(&ctx.gen(s) * &sinh_sum).scale(&rat_int(2))
            - &(&s_inv * &sinh_diff).scale(&rat_int(2)))
            + &fermion(-1),
    );
    let defeito2 = Condition::new(
        tag("defeito2"),
        &ctx.dx_of(phi_r) - &ctx.dt_of(phi_l),
        &(&(&ctx.gen(s) * &sinh_sum).scale(&rat_int(2))
            + &(&s_inv * &sinh_diff).scale(&rat_int(2)))
            + &fermion(1),
    );
    // ψ_R + ψ_L = 2√(2/σ')cosh((φ_R−φ_L)/2)g
    let defeito3 = Condition::new(
        tag("defeito3"),
        &psi_r + &psi_l,
        &(&(&Expression::gen_pow(crate::generator::two_gen(), rat(1, 2))
            * &ctx.const_pow(s, -1, 2))
            * &cosh_half_diff)
            .scale(&rat_int(2))
            * &g,
    );
    // ψ̄_R − ψ̄_L = −2√(2σ')cosh((φ_R+φ_L)/2)g
    let defeito4 = Condition::new(
        tag("defeito4"),
        &psib_r - &psib_l,
        &(&sqrt_2s * &cosh_half_sum).scale(&rat_int(-2)) * &g,
    );
    // ∂_t g = √(σ'/2)[(1/σ')cosh₋(ψ_L − ψ_R) − cosh₊(ψ̄_R + ψ̄_L)]
    let sqrt_s_half = &ctx.const_pow(s, 1, 2)
        * &Expression::gen_pow(crate::generator::two_gen(), rat(-1, 2));
    let defeito5 = Condition::new(
        tag("defeito5"),
        ctx.dt_of(d.aux),
        &sqrt_s_half
            * &(&(&(&s_inv * &cosh_half_diff) * &(&psi_l - &psi_r))
                - &(&cosh_half_sum * &psib_sum)),
    );

    ConditionSet {
        kind: ConditionKind::TypeI(d.index),
        conditions: vec![defeito1, defeito2, defeito3, defeito4, defeito5],
    }
}

/// The seven Type-II defect conditions, in the printed presentation with
/// φ± = φ₁ ± φ₂, ψ± = ψ₁ ± ψ₂ and the defect fields Λ, f₁, f̃₁.
pub fn build_type_ii_conditions(ctx: &ModelCtx) -> ConditionSet {
    let [_, phi1, phi2] = ctx.phi;
    let lam0 = ctx.lam0;
    let tau = ctx.tau;
    let m = ctx.mass;
    let s = ctx.sigma;

    let e = |v: &[(GenId, Rat)]| ctx.exp_lin(v);
    let psi_p = &ctx.gen(ctx.psi[1]) + &ctx.gen(ctx.psi[2]);
    let psi_m = &ctx.gen(ctx.psi[1]) - &ctx.gen(ctx.psi[2]);
    let psib_p = &ctx.gen(ctx.psib[1]) + &ctx.gen(ctx.psib[2]);
    let psib_m = &ctx.gen(ctx.psib[1]) - &ctx.gen(ctx.psib[2]);
    let f1 = ctx.gen(ctx.f1);
    let ft1 = ctx.gen(ctx.ft1);
    let f1ft1 = &f1 * &ft1;

    // Building blocks.
    let phim_half = vec![(phi1, rat(1, 2)), (phi2, rat(-1, 2))];
    let phim = vec![(phi1, rat_int(1)), (phi2, rat_int(-1))];
    let sinh_phim = ctx.sinh_lin(&phim);
    let sinh_half = ctx.sinh_lin(&phim_half);
    let cosh_half = ctx.cosh_lin(&phim_half);
    let cosh_tau = ctx.cosh_lin(&[(tau, rat_int(1))]);
    // e^{±(φ₊−Λ)} and halves.
    let ep = |c: i64, den: i64| {
        e(&[
            (phi1, rat(c, den)),
            (phi2, rat(c, den)),
            (lam0, rat(-c, den)),
        ])
    };
    let el = |c: i64, den: i64| e(&[(lam0, rat(c, den))]);
    let sq = |x: &Expression| x * x;
    let sinh2_plus_cosh2 = &sq(&sinh_half) + &sq(&cosh_tau);

    let m_s = &ctx.gen(m) * &ctx.gen(s);
    let m_over_s = &ctx.gen(m) * &ctx.const_pow(s, -1, 1);
    let sqrt_ms = &ctx.const_pow(m, 1, 2) * &ctx.const_pow(s, 1, 2);
    let sqrt_m_over_s = &ctx.const_pow(m, 1, 2) * &ctx.const_pow(s, -1, 2);
    let s_plus_sinv = &ctx.gen(s) + &ctx.const_pow(s, -1, 1);
    // σe^{−(φ₊−Λ)} + (1/σ)e^{Λ}
    let mixed = &(&ctx.gen(s) * &ep(-1, 1)) + &(&ctx.const_pow(s, -1, 1) * &el(1, 1));

    // f4.45
    let f445 = Condition::new(
        "f4.45",
        &(&ctx.dx_of(phi1) + &ctx.dx_of(phi2)) - &(&ctx.dt_of(phi1) + &ctx.dt_of(phi2)),
        &(&(&(&(&ctx.dt_of(lam0) - &(&(&ctx.gen(m) * &mixed) * &sinh_phim))
            - &(&(&(&ctx.i() * &ctx.gen(m)) * &s_plus_sinv) * &(&sinh_half * &f1ft1)))
            + &(&(&(&ctx.i() * &sqrt_ms) * &(&ep(-1, 2) * &cosh_half)) * &(&psib_p * &ft1)))
            - &(&(&(&ctx.i() * &sqrt_m_over_s) * &(&el(1, 2) * &cosh_half)) * &(&psi_p * &f1)))
            - &(&(&(&ctx.i() * &ctx.gen(m)) * &(&mixed * &cosh_tau)) * &(&sinh_half * &f1ft1)),
    );

    // f4.46
    let f446 = Condition::new(
        "f4.46",
        &(&ctx.dx_of(phi1) - &ctx.dx_of(phi2)) + &(&ctx.dt_of(phi1) - &ctx.dt_of(phi2)),
        &(&(&(&m_s.scale(&rat_int(2)) * &(&(&ep(-1, 1) * &sinh2_plus_cosh2) - &ep(1, 1)))
            + &(&(&ctx.i() * &sqrt_ms)
                * &(&(&ep(1, 2) - &(&ep(-1, 2) * &cosh_tau)) * &(&psib_p * &f1))))
            - &(&(&ctx.i() * &sqrt_ms) * &(&(&ep(-1, 2) * &sinh_half) * &(&psib_p * &ft1))))
            + &(&(&(&ctx.i() * &m_s).scale(&rat_int(2)) * &(&ep(-1, 1) * &cosh_tau))
                * &(&cosh_half * &f1ft1)),
    );

    // f4.47
    let f447 = Condition::new(
        "f4.47",
        &(&ctx.dx_of(phi1) - &ctx.dx_of(phi2)) - &(&ctx.dt_of(phi1) - &ctx.dt_of(phi2)),
        &(&(&m_over_s.scale(&rat_int(2)) * &(&el(-1, 1) - &(&el(1, 1) * &sinh2_plus_cosh2)))
            - &(&(&ctx.i() * &sqrt_m_over_s)
                * &(&(&(&el(-1, 2) - &(&el(1, 2) * &cosh_tau)) * &(&psi_p * &ft1))
                    + &(&(&el(1, 2) * &sinh_half) * &(&psi_p * &f1)))))
            - &(&(&(&ctx.i() * &m_over_s).scale(&rat_int(2)) * &(&el(1, 1) * &cosh_tau))
                * &(&cosh_half * &f1ft1)),
    );

    // f4.48: ψ₋
    let f448 = Condition::new(
        "f4.48",
        psi_m,
        &sqrt_m_over_s
            * &(&(&(&el(1, 2) * &sinh_half) * &f1)
                - &(&(&el(-1, 2) + &(&el(1, 2) * &cosh_tau)) * &ft1)),
    );

    // f4.49: ψ̄₋
    let f449 = Condition::new(
        "f4.49",
        psib_m,
        &sqrt_ms
            * &(&(&(&ep(1, 2) + &(&ep(-1, 2) * &cosh_tau)) * &f1)
                + &(&(&ep(-1, 2) * &sinh_half) * &ft1)),
    );

    // Common bracket of f4.50/f4.51.
    let bracket = &s_plus_sinv + &(&mixed * &cosh_tau);

    // f4.50: ∂_t f₁
    let f450 = Condition::new(
        "f4.50",
        ctx.dt_of(ctx.f1),
        &(&(&(-&sqrt_ms).scale(&rat(1, 2)) * &(&(&ep(1, 2) + &(&ep(-1, 2) * &cosh_tau)) * &psib_p))
            + &(&(&sqrt_m_over_s.scale(&rat(1, 2)) * &(&el(1, 2) * &sinh_half)) * &psi_p))
            - &(&(&(&ctx.gen(m).scale(&rat(1, 2)) * &bracket) * &cosh_half) * &ft1),
    );

    // f4.51: ∂_t f̃₁
    let f451 = Condition::new(
        "f4.51",
        ctx.dt_of(ctx.ft1),
        &(&(&(-&sqrt_ms).scale(&rat(1, 2)) * &(&(&ep(-1, 2) * &sinh_half) * &psib_p))
            - &(&(&sqrt_m_over_s.scale(&rat(1, 2)) * &(&el(-1, 2) + &(&el(1, 2) * &cosh_tau)))
                * &psi_p))
            + &(&(&(&ctx.gen(m).scale(&rat(1, 2)) * &bracket) * &cosh_half) * &f1),
    );

    ConditionSet {
        kind: ConditionKind::TypeII,
        conditions: vec![f445, f446, f447, f448, f449, f450, f451],
    }
}

/// Standard Type-I orientation: eliminate the region-0 symbols and the
/// auxiliary time derivative in favor of region-1 data.
pub fn orient_type_i(ctx: &ModelCtx, d: &TypeIDefect) -> Result<OrientedSystem, AlgebraError> {
    let cs = build_type_i_conditions(ctx, d);
    // Eliminated side: the region the conditions are solved for. For defect 1
    // that is region 0 (right); for defect 2 region 2 (right).
    let (el_region, free_region) = if d.index == 1 { (0, 1) } else { (2, 0) };
    let eliminate = vec![
        ctx.psi[el_region],
        ctx.psib[el_region],
        ctx.dp_phi[el_region],
        ctx.dm_phi[el_region],
        ctx.dp_g[d.index - 1],
    ];
    let free = vec![
        ctx.psi[free_region],
        ctx.psib[free_region],
        ctx.dp_phi[free_region],
        ctx.dm_phi[free_region],
        d.aux,
        ctx.dm_g[d.index - 1],
    ];
    orient_rewrite_system(&cs, &eliminate, &free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ctx;

    #[test]
    fn printed_sets_are_parity_homogeneous() {
        let c = ctx();
        assert!(build_type_i_conditions(c, &c.defect1()).parity_homogeneous());
        assert!(build_type_i_conditions(c, &c.defect2()).parity_homogeneous());
        assert!(build_type_ii_conditions(c).parity_homogeneous());
    }

    #[test]
    fn defeito4_transcription() {
        let c = ctx();
        let cs = build_type_i_conditions(c, &c.defect1());
        let d4 = cs.get("defeito4").unwrap();
        assert_eq!(
            d4.lhs,
            &c.gen(c.psib[0]) - &c.gen(c.psib[1])
        );
        // rhs = −2√(2σ₁)cosh((φ₀+φ₁)/2)g₁
        let expect = &(&(&Expression::gen_pow(crate::generator::two_gen(), rat(1, 2))
            * &c.const_pow(c.sigma_k[0], 1, 2))
            * &c.cosh_lin(&[(c.phi[0], rat(1, 2)), (c.phi[1], rat(1, 2))]))
            .scale(&rat_int(-2))
            * &c.gen(c.g[0]);
        assert_eq!(d4.rhs, expect);
    }

    #[test]
    fn bosonic_truncation_of_defeito1() {
        let c = ctx();
        let cs = build_type_i_conditions(c, &c.defect1());
        let d1 = cs.get("defeito1").unwrap();
        let bos = c.bosonic_truncation().substitute(&d1.rhs).unwrap();
        let expect = &(&c.gen(c.sigma_k[0])
            * &c.sinh_lin(&[(c.phi[0], rat_int(1)), (c.phi[1], rat_int(1))]))
            .scale(&rat_int(2))
            - &(&c.const_pow(c.sigma_k[0], -1, 1)
                * &c.sinh_lin(&[(c.phi[0], rat_int(1)), (c.phi[1], rat_int(-1))]))
                .scale(&rat_int(2));
        assert_eq!(bos, expect);
    }

    #[test]
    fn type_ii_psi_minus_transcription() {
        let c = ctx();
        let cs = build_type_ii_conditions(c);
        let f448 = cs.get("f4.48").unwrap();
        let expect = &(&c.const_pow(c.mass, 1, 2) * &c.const_pow(c.sigma, -1, 2))
            * &(&(&(&c.exp_lin(&[(c.lam0, rat(1, 2))])
                * &c.sinh_lin(&[(c.phi[1], rat(1, 2)), (c.phi[2], rat(-1, 2))]))
                * &c.gen(c.f1))
                - &(&(&c.exp_lin(&[(c.lam0, rat(-1, 2))])
                    + &(&c.exp_lin(&[(c.lam0, rat(1, 2))]) * &c.cosh_lin(&[(c.tau, rat_int(1))])))
                    * &c.gen(c.ft1)));
        assert_eq!(f448.rhs, expect);
    }

    #[test]
    fn orientation_recombines_light_cone_rules() {
        let c = ctx();
        let oriented = orient_type_i(c, &c.defect1()).unwrap();
        assert!(oriented.dependent_residuals.iter().all(|(_, e)| e.is_zero()));
        oriented.rules.check_terminating().unwrap();
        // ∂₊φ₀ ↦ ∂₊φ₁ + ½(R₁+R₂) and ∂₋φ₀ ↦ −∂₋φ₁ + ½(R₂−R₁), with the
        // fermion eliminations substituted. Independent 2×2 solve oracle:
        let cs = build_type_i_conditions(c, &c.defect1());
        let r1 = &cs.get("defeito1").unwrap().rhs;
        let r2 = &cs.get("defeito2").unwrap().rhs;
        // From ∂_tφ₀ = R₁ + ∂_xφ₁ and ∂_xφ₀ = R₂ + ∂_tφ₁:
        let dp_expect = &Expression::gen(c.dp_phi[1]) + &(&(r1 + r2)).scale(&rat(1, 2));
        let dm_expect = &(-&Expression::gen(c.dm_phi[1])) + &(&(r2 - r1)).scale(&rat(1, 2));
        // The oriented images have ψ₀, ψ̄₀ eliminated; do the same to the oracle.
        let mut fermion_rules = RewriteSystem::new();
        fermion_rules
            .add_rule(c.psi[0], oriented.rules.image(c.psi[0]).unwrap().clone())
            .unwrap();
        fermion_rules
            .add_rule(c.psib[0], oriented.rules.image(c.psib[0]).unwrap().clone())
            .unwrap();
        assert_eq!(
            oriented.rules.image(c.dp_phi[0]).unwrap(),
            &fermion_rules.substitute(&dp_expect).unwrap()
        );
        assert_eq!(
            oriented.rules.image(c.dm_phi[0]).unwrap(),
            &fermion_rules.substitute(&dm_expect).unwrap()
        );
        // ψ₀ ↦ −ψ₁ + 2√(2/σ₁)cosh((φ₀−φ₁)/2)g₁
        let psi0_expect = &(-&c.gen(c.psi[1]))
            + &(&(&(&Expression::gen_pow(crate::generator::two_gen(), rat(1, 2))
                * &c.const_pow(c.sigma_k[0], -1, 2))
                * &c.cosh_lin(&[(c.phi[0], rat(1, 2)), (c.phi[1], rat(-1, 2))]))
                .scale(&rat_int(2))
                * &c.gen(c.g[0]));
        assert_eq!(oriented.rules.image(c.psi[0]).unwrap(), &psi0_expect);
    }

    #[test]
    fn empty_condition_set_orients_to_empty_system() {
        let cs = ConditionSet {
            kind: ConditionKind::Derived("empty".into()),
            conditions: vec![],
        };
        let oriented = orient_rewrite_system(&cs, &[], &[]).unwrap();
        assert!(oriented.rules.is_empty());
    }
}
