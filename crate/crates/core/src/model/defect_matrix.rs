//! Defect matrices: the Type-I matrix K₁ and the fused matrix
//! K₂(σ, τ) = K₁(σ₂)·K₁(σ₁), both as the literal printed component list and
//! as the closed form recomputed from the product.

use super::registry::{ModelCtx, TypeIDefect};
use crate::expr::Expression;
use crate::matrix::SuperMatrix;
use crate::{rat, rat_int, Rat};

/// Exact transcription of the Type-I defect matrix, prefactor c·λ^{1/2}
/// included. The entry fields are the two regions the defect connects; all
/// entries depend on them only through φ_from + φ_to.
pub fn build_k1(ctx: &ModelCtx, d: &TypeIDefect) -> SuperMatrix {
    let sum: Vec<(crate::generator::GenId, Rat)> = vec![
        (ctx.phi[d.from.0], rat_int(1)),
        (ctx.phi[d.to.0], rat_int(1)),
    ];
    let half: Vec<_> = sum.iter().map(|(g, c)| (*g, c / rat_int(2))).collect();
    let neg = |v: &[(crate::generator::GenId, Rat)]| -> Vec<(crate::generator::GenId, Rat)> {
        v.iter().map(|(g, c)| (*g, -c.clone())).collect()
    };

    let s = Expression::gen(d.sigma);
    let lam_inv = Expression::gen_pow(ctx.lambda, rat_int(-1));
    let lam_mhalf = Expression::gen_pow(ctx.lambda, rat(-1, 2));
    let root_2is = ctx.sqrt_2i(d.sigma);
    let g = ctx.gen(d.aux);
    let one = Expression::one();

    let e_sum = ctx.exp_lin(&sum);
    let e_msum = ctx.exp_lin(&neg(&sum));
    let e_half = ctx.exp_lin(&half);
    let e_mhalf = ctx.exp_lin(&neg(&half));

    let inner = vec![
        vec![
            one.clone(),
            &(&s * &lam_inv) * &e_sum,
            -&(&(&(&root_2is * &lam_mhalf) * &e_half) * &g),
        ],
        vec![
            &s * &e_msum,
            one.clone(),
            -&(&(&root_2is * &e_mhalf) * &g),
        ],
        vec![
            &(&root_2is * &e_mhalf) * &g,
            &(&(&root_2is * &lam_mhalf) * &e_half) * &g,
            &one - &(&s * &lam_mhalf),
        ],
    ];
    let m = SuperMatrix::from_rows(SuperMatrix::sl21_grading(), inner);
    let prefactor = &Expression::gen(d.prefactor) * &Expression::gen_pow(ctx.lambda, rat(1, 2));
    m.scale(&prefactor)
}

/// The fused defect matrix as the literal product K₁(σ₂)·K₁(σ₁) with
/// σ₁ = σe^{−τ}, σ₂ = σe^{τ} substituted.
pub fn build_k2_product(ctx: &ModelCtx) -> SuperMatrix {
    let k1_inner = build_k1(ctx, &ctx.defect1());
    let k1_outer = build_k1(ctx, &ctx.defect2());
    let product = k1_outer.mul(&k1_inner);
    product
        .substitute(&ctx.fusion_parameter_rules())
        .expect("fusion parametrization")
}

fn sqrt_2i_sigma(ctx: &ModelCtx) -> Expression {
    ctx.sqrt_2i(ctx.sigma)
}

/// Common prefactor c = c₁c₂.
fn c_both(ctx: &ModelCtx) -> Expression {
    &Expression::gen(ctx.c_k[0]) * &Expression::gen(ctx.c_k[1])
}

struct K2Parts {
    c: Expression,
    s: Expression,
    s2: Expression,
    cap_s: Expression,
    lam: Expression,
    lam_half: Expression,
    two_i: Expression,
    g1g2: Expression,
}

fn parts(ctx: &ModelCtx) -> K2Parts {
    K2Parts {
        c: c_both(ctx),
        s: Expression::gen(ctx.sigma),
        s2: Expression::gen_pow(ctx.sigma, rat_int(2)),
        cap_s: sqrt_2i_sigma(ctx),
        lam: Expression::gen(ctx.lambda),
        lam_half: Expression::gen_pow(ctx.lambda, rat(1, 2)),
        two_i: ctx.i().scale(&rat_int(2)),
        g1g2: &Expression::gen(ctx.g[0]) * &Expression::gen(ctx.g[1]),
    }
}

/// The nine printed components k_{ij} of K₂, transcribed literally.
pub fn build_k2_printed(ctx: &ModelCtx) -> SuperMatrix {
    let p = parts(ctx);
    let [phi0, phi1, phi2] = ctx.phi;
    let tau = ctx.tau;
    let g1 = ctx.gen(ctx.g[0]);
    let g2 = ctx.gen(ctx.g[1]);
    let e = |v: &[(crate::generator::GenId, Rat)]| ctx.exp_lin(v);

    let k11 = &p.c
        * &(&(&p.lam + &(&p.s2 * &e(&[(phi1, rat_int(-1)), (phi2, rat_int(1))])))
            + &(&(&(&(&p.two_i * &p.s) * &e(&[(phi1, rat(-1, 2)), (phi2, rat(1, 2))])) * &p.g1g2)
                * &p.lam_half));

    let k12 = &(&p.c * &p.s)
        * &(&e(&[(phi0, rat_int(1))])
            * &(&(&e(&[(phi1, rat_int(1)), (tau, rat_int(-1))])
                + &e(&[(phi2, rat_int(1)), (tau, rat_int(1))]))
                + &(&(&p.two_i * &e(&[(phi1, rat(1, 2)), (phi2, rat(1, 2))])) * &p.g1g2)));

    let k13 = {
        let lead = &(&p.c * &p.s) * &p.cap_s;
        let first = &(&e(&[(phi0, rat(1, 2))])
            * &(&(&e(&[(phi2, rat_int(1)), (phi1, rat(-1, 2)), (tau, rat(1, 2))]) * &g1)
                - &(&e(&[(phi2, rat(1, 2)), (tau, rat(-1, 2))]) * &g2)))
            * &Expression::one();
        let second = &e(&[(phi0, rat(1, 2))])
            * &(&(&e(&[(phi1, rat(1, 2)), (tau, rat(-1, 2))]) * &g1)
                + &(&e(&[(phi2, rat(1, 2)), (tau, rat(1, 2))]) * &g2));
        &(-&(&lead * &first)) - &(&(&(&p.c * &p.cap_s) * &p.lam_half) * &second)
    };

    let k21 = &(&p.c * &p.s)
        * &(&e(&[(phi0, rat_int(-1))])
            * &(&(&e(&[(phi1, rat_int(-1)), (tau, rat_int(-1))])
                + &e(&[(phi2, rat_int(-1)), (tau, rat_int(1))]))
                + &(&(&p.two_i * &e(&[(phi1, rat(-1, 2)), (phi2, rat(-1, 2))])) * &p.g1g2)));

    let k22 = &p.c
        * &(&(&p.lam + &(&p.s2 * &e(&[(phi1, rat_int(1)), (phi2, rat_int(-1))])))
            + &(&(&(&p.two_i * &p.s) * &e(&[(phi1, rat(-1, 2)), (phi2, rat(1, 2))])) * &p.g1g2));

    let k23 = {
        let first = &(&(&p.c * &p.cap_s) * &p.lam)
            * &(&e(&[(phi0, rat(-1, 2))])
                * &(&(&g1 * &e(&[(phi1, rat(-1, 2)), (tau, rat(-1, 2))]))
                    + &(&g2 * &e(&[(phi2, rat(-1, 2)), (tau, rat(1, 2))]))));
        let second = &(&(&(&p.c * &p.s) * &p.cap_s) * &p.lam_half)
            * &(&e(&[(phi0, rat(-1, 2))])
                * &(&(&g2 * &e(&[(phi2, rat(-1, 2)), (tau, rat(-1, 2))]))
                    - &(&g1 * &e(&[(phi1, rat(1, 2)), (tau, rat(1, 2)), (phi2, rat_int(-1))]))));
        &(-&first) + &second
    };

    let k31 = {
        let first = &(&(&p.c * &p.cap_s) * &p.lam)
            * &(&e(&[(phi0, rat(-1, 2))])
                * &(&(&g1 * &e(&[(phi1, rat(-1, 2)), (tau, rat(-1, 2))]))
                    + &(&g2 * &e(&[(phi2, rat(-1, 2)), (tau, rat(1, 2))]))));
        let second = &(&(&(&p.c * &p.s) * &p.cap_s) * &p.lam_half)
            * &(&e(&[(phi0, rat(-1, 2))])
                * &(&(&g2 * &e(&[(phi2, rat(1, 2)), (tau, rat(-1, 2)), (phi1, rat_int(-1))]))
                    - &(&g1 * &e(&[(phi1, rat(1, 2)), (tau, rat(1, 2))]))));
        &first + &second
    };

    let k32 = {
        let first = &(&(&p.c * &p.s) * &p.cap_s)
            * &(&e(&[(phi0, rat(1, 2))])
                * &(&(&g2 * &e(&[(phi2, rat(-1, 2)), (tau, rat(-1, 2)), (phi1, rat_int(1))]))
                    - &(&g1 * &e(&[(phi1, rat(1, 2)), (tau, rat(1, 2))]))));
        let second = &(&(&p.c * &p.cap_s) * &p.lam_half)
            * &(&e(&[(phi0, rat(1, 2))])
                * &(&(&e(&[(phi1, rat(1, 2)), (tau, rat(-1, 2))]) * &g1)
                    + &(&e(&[(phi2, rat(1, 2)), (tau, rat(1, 2))]) * &g2)));
        &first + &second
    };

    let k33 = {
        let cosh_tau = ctx.cosh_lin(&[(tau, rat_int(1))]);
        let cosh_half = ctx.cosh_lin(&[(phi1, rat(1, 2)), (phi2, rat(-1, 2))]);
        let bracket = &cosh_tau - &(&(&p.two_i * &p.g1g2) * &cosh_half);
        &p.c
            * &(&(&p.lam + &p.s2)
                - &(&(&(&p.s * &p.lam_half) * &bracket).scale(&rat_int(2))))
    };

    SuperMatrix::from_rows(
        SuperMatrix::sl21_grading(),
        vec![vec![k11, k12, k13], vec![k21, k22, k23], vec![k31, k32, k33]],
    )
}

/// The closed form of K₂ recomputed entry by entry from the product (the
/// transcription above differs from it in three spots; see the fusion
/// check's pinned discrepancies).
pub fn build_k2_closed_form(ctx: &ModelCtx) -> SuperMatrix {
    let p = parts(ctx);
    let [_, phi1, phi2] = ctx.phi;
    let tau = ctx.tau;
    let g1 = ctx.gen(ctx.g[0]);
    let e = |v: &[(crate::generator::GenId, Rat)]| ctx.exp_lin(v);

    let mut m = build_k2_printed(ctx);
    // (2,1): overall factor λ.
    *m.at_mut(1, 0) = &p.lam * &m.at(1, 0).clone();
    // (2,2): the Grassmann term is 2iσ·λ^{1/2}·e^{+φ₋/2}·g₁g₂.
    let k22 = &p.c
        * &(&(&p.lam + &(&p.s2 * &e(&[(phi1, rat_int(1)), (phi2, rat_int(-1))])))
            + &(&(&(&(&p.two_i * &p.s) * &e(&[(phi1, rat(1, 2)), (phi2, rat(-1, 2))])) * &p.g1g2)
                * &p.lam_half));
    *m.at_mut(1, 1) = k22;
    // (3,1): the λ^{1/2} g₁ term carries e^{(τ−φ₁)/2}, not e^{(φ₁+τ)/2}.
    let wrong = &(&(&(&p.c * &p.s) * &p.cap_s) * &p.lam_half)
        * &(&e(&[(ctx.phi[0], rat(-1, 2))])
            * &(&g1 * &e(&[(phi1, rat(1, 2)), (tau, rat(1, 2))])));
    let right = &(&(&(&p.c * &p.s) * &p.cap_s) * &p.lam_half)
        * &(&e(&[(ctx.phi[0], rat(-1, 2))])
            * &(&g1 * &e(&[(phi1, rat(-1, 2)), (tau, rat(1, 2))])));
    *m.at_mut(2, 0) = &(m.at(2, 0) + &wrong) - &right;
    m
}
