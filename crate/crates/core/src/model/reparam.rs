//! The auxiliary-field reparametrization of the fused defect:
//! `e^{φ₀} ↦ e^{−Λ}e^{φ₊/2}·2hD^{−1}·(1 − ihD^{−1}f₁f̃₁)` together with the
//! inverse of `f₁ = μ₊g₂ + μ₋g₁`, `f̃₁ = μ₋g₂ − μ₊g₁`.

use super::registry::ModelCtx;
use crate::expr::Expression;
use crate::rewrite::RewriteSystem;
use crate::{rat, rat_int};

/// Rules eliminating φ₀, g₁, g₂ in favor of Λ, φ±, τ, f₁, f̃₁.
///
/// The φ₀ rule encodes
/// `φ₀ → −Λ + φ₊/2 − ln cosh(φ₋/2 − τ) − (i/2)sech(φ₋/2 − τ)f₁f̃₁`
/// using `cosh(φ₋/2 − τ) = D/(2h)` and the exact truncation of the
/// nilpotent exponential.
pub fn build_reparametrization(ctx: &ModelCtx) -> RewriteSystem {
    let mut rs = RewriteSystem::new();

    let f1ft1 = &ctx.gen(ctx.f1) * &ctx.gen(ctx.ft1);
    let body = &(&ctx.exp_lin(&[
        (ctx.lam0, rat_int(-1)),
        (ctx.phi[1], rat(1, 2)),
        (ctx.phi[2], rat(1, 2)),
    ]) * &(&ctx.h().scale(&rat_int(2)) * &ctx.d_inv()))
        * &(&Expression::one() - &(&(&(&ctx.i() * &ctx.h()) * &ctx.d_inv()) * &f1ft1));
    rs.add_rule(ctx.e_phi[0], body).unwrap();

    // Inverse of the (rep) map: g₁ = (μ₋f₁ − μ₊f̃₁)/2, g₂ = (μ₊f₁ + μ₋f̃₁)/2.
    let g1_image = (&(&ctx.mu_minus() * &ctx.gen(ctx.f1))
        - &(&ctx.mu_plus() * &ctx.gen(ctx.ft1)))
        .scale(&rat(1, 2));
    let g2_image = (&(&ctx.mu_plus() * &ctx.gen(ctx.f1))
        + &(&ctx.mu_minus() * &ctx.gen(ctx.ft1)))
        .scale(&rat(1, 2));
    rs.add_rule(ctx.g[0], g1_image).unwrap();
    rs.add_rule(ctx.g[1], g2_image).unwrap();

    rs.check_terminating().unwrap();
    rs
}

/// The forward map: f₁ = μ₊g₂ + μ₋g₁, f̃₁ = μ₋g₂ − μ₊g₁.
pub fn forward_rep(ctx: &ModelCtx) -> RewriteSystem {
    let mut rs = RewriteSystem::new();
    let f1_image = &(&ctx.mu_plus() * &ctx.gen(ctx.g[1])) + &(&ctx.mu_minus() * &ctx.gen(ctx.g[0]));
    let ft1_image =
        &(&ctx.mu_minus() * &ctx.gen(ctx.g[1])) - &(&ctx.mu_plus() * &ctx.gen(ctx.g[0]));
    rs.add_rule(ctx.f1, f1_image).unwrap();
    rs.add_rule(ctx.ft1, ft1_image).unwrap();
    rs.check_terminating().unwrap();
    rs
}
