//! Lagrangian densities: bulk regions, Type-I defects, and the fused
//! Type-II defect, transcribed in light-cone symbols.

use super::registry::{ModelCtx, TypeIDefect};
use crate::expr::Expression;
use crate::generator::GenId;
use crate::{rat, rat_int, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LagrangianKind {
    Bulk(usize),
    DefectTypeI(usize),
    DefectTypeII,
}

#[derive(Clone, Debug)]
pub struct LagrangianDensity {
    pub kind: LagrangianKind,
    pub expr: Expression,
}

/// Bulk density for region p:
/// ½(∂_xφ)² − ½(∂_tφ)² + iψ(∂_x+∂_t)ψ − iψ̄(∂_x−∂_t)ψ̄
/// + 4[cosh(2φ) − 1] − 8iψ̄ψcoshφ.
pub fn build_bulk_lagrangian(ctx: &ModelCtx, p: usize) -> LagrangianDensity {
    let phi = ctx.phi[p];
    let psi = ctx.gen(ctx.psi[p]);
    let psib = ctx.gen(ctx.psib[p]);
    let dx_phi = ctx.dx_of(phi);
    let dt_phi = ctx.dt_of(phi);
    let kinetic = &(&dx_phi * &dx_phi).scale(&rat(1, 2)) - &(&dt_phi * &dt_phi).scale(&rat(1, 2));
    let dxdt_psi = &ctx.dx_of(ctx.psi[p]) + &ctx.dt_of(ctx.psi[p]);
    let dxdt_psib = &ctx.dx_of(ctx.psib[p]) - &ctx.dt_of(ctx.psib[p]);
    let fermi = &(&(&ctx.i() * &psi) * &dxdt_psi) - &(&(&ctx.i() * &psib) * &dxdt_psib);
    let potential = &(&ctx.cosh_lin(&[(phi, rat_int(2))]) - &Expression::one()).scale(&rat_int(4))
        - &(&(&(&ctx.i() * &psib) * &psi) * &ctx.cosh_lin(&[(phi, rat_int(1))])).scale(&rat_int(8));
    LagrangianDensity {
        kind: LagrangianKind::Bulk(p),
        expr: &(&kinetic + &fermi) + &potential,
    }
}

/// Type-I defect density at defect k:
/// ½(φ_R∂_tφ_L − φ_L∂_tφ_R) − iψ_Lψ_R − iψ̄_Lψ̄_R + 2ig∂_tg + B₀ + B₁.
pub fn build_type_i_lagrangian(ctx: &ModelCtx, d: &TypeIDefect) -> LagrangianDensity {
    let (right, left) = if d.index == 2 { (2, 0) } else { (0, 1) };
    let phi_r = ctx.phi[right];
    let phi_l = ctx.phi[left];
    let g = ctx.gen(d.aux);
    let s = d.sigma;

    let kinetic = (&(&ctx.gen(phi_r) * &ctx.dt_of(phi_l))
        - &(&ctx.gen(phi_l) * &ctx.dt_of(phi_r)))
        .scale(&rat(1, 2));
    let fermi_pair = &(-&(&(&ctx.i() * &ctx.gen(ctx.psi[left])) * &ctx.gen(ctx.psi[right])))
        - &(&(&ctx.i() * &ctx.gen(ctx.psib[left])) * &ctx.gen(ctx.psib[right]));
    let aux_kinetic = (&(&ctx.i() * &g) * &ctx.dt_of(d.aux)).scale(&rat_int(2));

    let sum = |a: i64, b: i64| vec![(phi_r, rat(a, b)), (phi_l, rat(a, b))];
    let diff = |a: i64, b: i64| vec![(phi_r, rat(a, b)), (phi_l, rat(-a, b))];
    let b0 = &(&ctx.gen(s) * &ctx.cosh_lin(&sum(1, 1))).scale(&rat_int(2))
        + &(&ctx.const_pow(s, -1, 1) * &ctx.cosh_lin(&diff(1, 1))).scale(&rat_int(2));

    let psib_sum = &ctx.gen(ctx.psib[right]) + &ctx.gen(ctx.psib[left]);
    let psi_diff = &ctx.gen(ctx.psi[right]) - &ctx.gen(ctx.psi[left]);
    let two_half = Expression::gen_pow(crate::generator::two_gen(), rat(1, 2));
    let b1 = &(&(&(&ctx.i() * &two_half).scale(&rat_int(2)) * &g)
        * &(&(&ctx.const_pow(s, 1, 2) * &(&ctx.cosh_lin(&sum(1, 2)) * &psib_sum))
            + &(&ctx.const_pow(s, -1, 2) * &(&ctx.cosh_lin(&diff(1, 2)) * &psi_diff))))
        * &Expression::one();

    LagrangianDensity {
        kind: LagrangianKind::DefectTypeI(d.index),
        expr: &(&(&kinetic + &fermi_pair) + &aux_kinetic) + &(&b0 + &b1),
    }
}

/// The fused Type-II defect density:
/// φ₋∂_tΛ − ½φ₋∂_tφ₊ + (i/2)(ψ̄₊ψ̄₋ − ψ₊ψ₋) + if₁∂_tf₁ + if̃₁∂_tf̃₁ + B.
pub fn build_type_ii_lagrangian(ctx: &ModelCtx) -> LagrangianDensity {
    let [_, phi1, phi2] = ctx.phi;
    let lam0 = ctx.lam0;
    let tau = ctx.tau;
    let m = ctx.mass;
    let s = ctx.sigma;
    let e = |v: &[(GenId, Rat)]| ctx.exp_lin(v);

    let phi_minus_bare = &ctx.gen(phi1) - &ctx.gen(phi2);
    let dt_phi_plus = &ctx.dt_of(phi1) + &ctx.dt_of(phi2);
    let kinetic = &(&phi_minus_bare * &ctx.dt_of(lam0))
        - &(&phi_minus_bare * &dt_phi_plus).scale(&rat(1, 2));

    let psi_p = &ctx.gen(ctx.psi[1]) + &ctx.gen(ctx.psi[2]);
    let psi_m = &ctx.gen(ctx.psi[1]) - &ctx.gen(ctx.psi[2]);
    let psib_p = &ctx.gen(ctx.psib[1]) + &ctx.gen(ctx.psib[2]);
    let psib_m = &ctx.gen(ctx.psib[1]) - &ctx.gen(ctx.psib[2]);
    let fermi_pair =
        (&(&psib_p * &psib_m) - &(&psi_p * &psi_m)).scale(&rat(1, 2)) * ctx.i();

    let f1 = ctx.gen(ctx.f1);
    let ft1 = ctx.gen(ctx.ft1);
    let aux_kinetic = &(&(&ctx.i() * &f1) * &ctx.dt_of(ctx.f1))
        + &(&(&ctx.i() * &ft1) * &ctx.dt_of(ctx.ft1));

    let phim_half = vec![(phi1, rat(1, 2)), (phi2, rat(-1, 2))];
    let sinh_half = ctx.sinh_lin(&phim_half);
    let cosh_half = ctx.cosh_lin(&phim_half);
    let cosh_tau = ctx.cosh_lin(&[(tau, rat_int(1))]);
    let sq = |x: &Expression| x * x;
    let s2c2 = &sq(&sinh_half) + &sq(&cosh_tau);
    let ep = |c: i64, den: i64| {
        e(&[
            (phi1, rat(c, den)),
            (phi2, rat(c, den)),
            (lam0, rat(-c, den)),
        ])
    };
    let el = |c: i64, den: i64| e(&[(lam0, rat(c, den))]);

    let m_s = &ctx.gen(m) * &ctx.gen(s);
    let m_over_s = &ctx.gen(m) * &ctx.const_pow(s, -1, 1);
    let sqrt_ms = &ctx.const_pow(m, 1, 2) * &ctx.const_pow(s, 1, 2);
    let sqrt_m_over_s = &ctx.const_pow(m, 1, 2) * &ctx.const_pow(s, -1, 2);
    let f1ft1 = &f1 * &ft1;

    let b0_plus = &m_s * &(&ep(1, 1) + &(&ep(-1, 1) * &s2c2));
    let b0_minus = &m_over_s * &(&el(-1, 1) + &(&el(1, 1) * &s2c2));

    let b1_plus = &(-&(&(&ctx.i() * &sqrt_ms)
        * &(&(&(&ep(1, 2) + &(&ep(-1, 2) * &cosh_tau)) * &(&psib_p * &f1))
            + &(&(&ep(-1, 2) * &sinh_half) * &(&psib_p * &ft1)))))
        + &(&(&(&ctx.i() * &m_s) * &(&Expression::one() + &(&ep(-1, 1) * &cosh_tau)))
            * &(&cosh_half * &f1ft1));

    let b1_minus = &(-&(&(&ctx.i() * &sqrt_m_over_s)
        * &(&(&(&el(-1, 2) + &(&el(1, 2) * &cosh_tau)) * &(&psi_p * &ft1))
            - &(&(&el(1, 2) * &sinh_half) * &(&psi_p * &f1)))))
        + &(&(&(&ctx.i() * &m_over_s) * &(&Expression::one() + &(&el(1, 1) * &cosh_tau)))
            * &(&cosh_half * &f1ft1));

    LagrangianDensity {
        kind: LagrangianKind::DefectTypeII,
        expr: &(&(&kinetic + &fermi_pair) + &aux_kinetic)
            + &(&(&b0_plus + &b0_minus) + &(&b1_plus + &b1_minus)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ctx;

    #[test]
    fn bulk_potential_exponential_encoding() {
        // 4cosh(2φ) − 4 = 2e^{2φ} + 2e^{−2φ} − 4
        let c = ctx();
        let l = build_bulk_lagrangian(c, 1);
        let bos = c.bosonic_truncation().substitute(&l.expr).unwrap();
        let potential = &(&c.exp_lin(&[(c.phi[1], rat_int(2))])
            + &c.exp_lin(&[(c.phi[1], rat_int(-2))]))
            .scale(&rat_int(2))
            - &Expression::from_int(4);
        let kinetic = (&(&c.gen(c.dp_phi[1]) + &c.gen(c.dm_phi[1]))
            * &(&c.gen(c.dp_phi[1]) + &c.gen(c.dm_phi[1])))
            .scale(&rat(1, 2))
            - (&(&c.gen(c.dp_phi[1]) - &c.gen(c.dm_phi[1]))
                * &(&c.gen(c.dp_phi[1]) - &c.gen(c.dm_phi[1])))
                .scale(&rat(1, 2));
        assert_eq!(bos, &kinetic + &potential);
    }

    #[test]
    fn type_ii_bosonic_truncation_keeps_kinetic_and_b0() {
        let c = ctx();
        let l = build_type_ii_lagrangian(c);
        let bos = c.bosonic_truncation().substitute(&l.expr).unwrap();
        // φ₋∂_tΛ − ½φ₋∂_tφ₊ + B₀⁺ + B₀⁻ (all odd monomials killed).
        assert!(bos.contains_symbol(c.dp_lam0));
        assert!(!bos.contains_symbol(c.f1));
        assert!(bos.symbols().iter().all(|s| {
            s.kind() != crate::generator::GenKind::Odd
        }));
    }

    #[test]
    fn f_bilinear_coefficient_of_type_ii_density() {
        // The f₁f̃₁ coefficient of the density is the sum of the two printed
        // bilinears: imσ(1 + e^{−(φ₊−Λ)}coshτ)cosh(φ₋/2)
        //          + (im/σ)(1 + e^{Λ}coshτ)cosh(φ₋/2).
        let c = ctx();
        let l = build_type_ii_lagrangian(c);
        let f1ft1_key = {
            let e = &c.gen(c.f1) * &c.gen(c.ft1);
            e.terms()[0].odd.clone()
        };
        let coeff = Expression::from_terms(
            l.expr
                .terms()
                .iter()
                .filter(|t| t.odd == f1ft1_key)
                .map(|t| {
                    let mut t = (*t).clone();
                    t.odd = Default::default();
                    t
                })
                .collect(),
        );
        let cosh_half = c.cosh_lin(&[(c.phi[1], rat(1, 2)), (c.phi[2], rat(-1, 2))]);
        let cosh_tau = c.cosh_lin(&[(c.tau, rat_int(1))]);
        let e_pml = c.exp_lin(&[
            (c.phi[1], rat_int(-1)),
            (c.phi[2], rat_int(-1)),
            (c.lam0, rat_int(1)),
        ]);
        let e_l = c.exp_lin(&[(c.lam0, rat_int(1))]);
        let plus_part = &(&(&c.i() * &(&c.gen(c.mass) * &c.gen(c.sigma)))
            * &(&Expression::one() + &(&e_pml * &cosh_tau)))
            * &cosh_half;
        let minus_part = &(&(&c.i() * &(&c.gen(c.mass) * &c.const_pow(c.sigma, -1, 1)))
            * &(&Expression::one() + &(&e_l * &cosh_tau)))
            * &cosh_half;
        assert_eq!(coeff, &plus_part + &minus_part);
    }
}
