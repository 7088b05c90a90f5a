//! The Lax connection: 3×3 graded matrices valued in sl(2,1), one pair per
//! bulk region.

use super::registry::{ModelCtx, RegionLabel};
use crate::expr::Expression;
use crate::matrix::SuperMatrix;
use crate::rat;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Chirality {
    Plus,
    Minus,
}

/// Exact transcription of the light-cone Lax matrices A±^{(p)}.
pub fn build_lax(ctx: &ModelCtx, chi: Chirality, p: RegionLabel) -> SuperMatrix {
    let p = p.0;
    let lam_half = Expression::gen_pow(ctx.lambda, rat(1, 2));
    let lam_mhalf = Expression::gen_pow(ctx.lambda, rat(-1, 2));
    let lam = Expression::gen(ctx.lambda);
    let lam_inv = Expression::gen_pow(ctx.lambda, rat(-1, 1));
    let si = ctx.sqrt_i();
    let psib = ctx.gen(ctx.psib[p]);
    let psi = ctx.gen(ctx.psi[p]);
    let dp_phi = ctx.gen(ctx.dp_phi[p]);

    let rows = match chi {
        Chirality::Plus => vec![
            vec![
                &lam_half - &dp_phi,
                Expression::from_int(-1),
                &si * &psib,
            ],
            vec![
                -&lam,
                &lam_half + &dp_phi,
                &(&lam_half * &si) * &psib,
            ],
            vec![
                &(&lam_half * &si) * &psib,
                &si * &psib,
                lam_half.scale(&rat(2, 1)),
            ],
        ],
        Chirality::Minus => {
            let e_2phi = ctx.exp_lin(&[(ctx.phi[p], rat(2, 1))]);
            let e_m2phi = ctx.exp_lin(&[(ctx.phi[p], rat(-2, 1))]);
            let e_phi = ctx.exp_lin(&[(ctx.phi[p], rat(1, 1))]);
            let e_mphi = ctx.exp_lin(&[(ctx.phi[p], rat(-1, 1))]);
            vec![
                vec![
                    lam_mhalf.clone(),
                    -&(&lam_inv * &e_2phi),
                    &(&(&lam_mhalf * &si) * &psi) * &e_phi,
                ],
                vec![
                    -&e_m2phi,
                    lam_mhalf.clone(),
                    &(&si * &psi) * &e_mphi,
                ],
                vec![
                    -&(&(&si * &psi) * &e_mphi),
                    -&(&(&(&si * &lam_mhalf) * &psi) * &e_phi),
                    lam_mhalf.scale(&rat(2, 1)),
                ],
            ]
        }
    };
    SuperMatrix::from_rows(SuperMatrix::sl21_grading(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ctx;
    use crate::rat_int;

    #[test]
    fn printed_entries() {
        let c = ctx();
        let ap = build_lax(c, Chirality::Plus, c.region(1));
        // (2,1) entry of A₊ is −λ.
        assert_eq!(ap.at(1, 0), &-&Expression::gen(c.lambda));
        let am = build_lax(c, Chirality::Minus, c.region(1));
        // (3,3) entry of A₋ is 2λ^{−1/2}.
        assert_eq!(
            am.at(2, 2),
            &Expression::gen_pow(c.lambda, rat(-1, 2)).scale(&rat_int(2))
        );
    }

    #[test]
    fn parity_pattern_holds() {
        let c = ctx();
        for p in 0..3 {
            assert!(build_lax(c, Chirality::Plus, c.region(p))
                .check_parity_pattern()
                .is_ok());
            assert!(build_lax(c, Chirality::Minus, c.region(p))
                .check_parity_pattern()
                .is_ok());
        }
    }

    #[test]
    fn bosonic_truncation_reduces_fermion_row_and_column() {
        let c = ctx();
        let ap = build_lax(c, Chirality::Plus, c.region(0));
        let bos = ap.substitute(&c.bosonic_truncation()).unwrap();
        for idx in [(0, 2), (1, 2), (2, 0), (2, 1)] {
            assert!(bos.at(idx.0, idx.1).is_zero());
        }
        assert_eq!(
            bos.at(2, 2),
            &Expression::gen_pow(c.lambda, rat(1, 2)).scale(&rat_int(2))
        );
    }
}
