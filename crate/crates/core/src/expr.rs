//! Canonical expressions: finite sums of terms with a unique normal form.
//!
//! Normalization sorts terms by monomial key, merges equal keys, and brings
//! every (Grassmann monomial, root) sector with denominators to a single
//! reduced fraction `N·D^{−n}` with `1 + h²` divided out of `N` as far as it
//! goes. Zero is exactly the empty sum, so equality is decidable by
//! subtraction.

use crate::extension::{d_power_expansion, divide_by_one_plus_h2};
use crate::generator::{GenId, GenKind, Parity as GenParity};
use crate::monomial::{EvenMonomial, ExtFactor, GrassmannMonomial};
use crate::scalar::CycloScalar;
use crate::term::{AlgebraError, Term};
use crate::{rat_int, Rat};
use num::{BigInt, One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

/// Grassmann parity classification of an expression.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Zero,
    Even,
    Odd,
    Mixed,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Expression {
    terms: Vec<Term>,
}

impl Expression {
    pub fn zero() -> Expression {
        Expression { terms: Vec::new() }
    }

    pub fn one() -> Expression {
        Expression::from_term(Term::one())
    }

    pub fn scalar(c: CycloScalar) -> Expression {
        Expression::from_term(Term::scalar(c))
    }

    pub fn from_rat(q: Rat) -> Expression {
        Expression::scalar(CycloScalar::from_rat(q))
    }

    pub fn from_int(n: i64) -> Expression {
        Expression::scalar(CycloScalar::from_int(n))
    }

    pub fn gen(id: GenId) -> Expression {
        Expression::gen_pow(id, rat_int(1))
    }

    pub fn gen_pow(id: GenId, exp: Rat) -> Expression {
        Expression::from_term(Term::gen_pow(id, exp))
    }

    pub fn from_term(t: Term) -> Expression {
        Expression::from_terms(vec![t])
    }

    pub fn from_terms(terms: Vec<Term>) -> Expression {
        Expression {
            terms: normalize(terms),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The unique term of a single-term expression.
    pub fn as_single_term(&self) -> Option<&Term> {
        if self.terms.len() == 1 {
            Some(&self.terms[0])
        } else {
            None
        }
    }

    pub fn parity(&self) -> Parity {
        if self.terms.is_empty() {
            return Parity::Zero;
        }
        let first = self.terms[0].parity();
        if self.terms.iter().all(|t| t.parity() == first) {
            match first {
                GenParity::Even => Parity::Even,
                GenParity::Odd => Parity::Odd,
            }
        } else {
            Parity::Mixed
        }
    }

    /// All generators occurring in the expression.
    pub fn symbols(&self) -> BTreeSet<GenId> {
        let mut out = BTreeSet::new();
        for t in &self.terms {
            out.extend(t.even.gens());
            out.extend(t.odd.gens().iter().copied());
        }
        out
    }

    pub fn contains_symbol(&self, id: GenId) -> bool {
        self.terms
            .iter()
            .any(|t| t.even.contains(id) || t.odd.contains(id))
    }

    pub fn uses_extension(&self) -> bool {
        self.terms.iter().any(|t| !t.ext.is_one())
    }

    /// Grassmann degree truncation: drops every term whose odd degree is
    /// nonzero. Used for bosonic truncations via substitution instead; this
    /// is the raw structural variant.
    pub fn even_part(&self) -> Expression {
        Expression {
            terms: self
                .terms
                .iter()
                .filter(|t| t.odd.is_one())
                .cloned()
                .collect(),
        }
    }

    pub fn map_terms(&self, f: impl Fn(&Term) -> Vec<Term>) -> Expression {
        let mut out = Vec::new();
        for t in &self.terms {
            out.extend(f(t));
        }
        Expression::from_terms(out)
    }

    /// Multiplies by a rational constant.
    pub fn scale(&self, q: &Rat) -> Expression {
        self.scale_scalar(&CycloScalar::from_rat(q.clone()))
    }

    pub fn scale_scalar(&self, c: &CycloScalar) -> Expression {
        if c.is_zero() {
            return Expression::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                t.coef = &t.coef * c;
                t
            })
            .collect();
        Expression::from_terms(terms)
    }

    /// Raises the expression to a rational power.
    ///
    /// Integer powers ≥ 0 are plain products. Other powers require the
    /// decomposition `e = M·(1 + N)` with `M` an invertible monomial term and
    /// `N` nilpotent (every term carries odd content); then
    /// `e^q = M^q·Σ_k C(q,k) N^k`, a finite sum.
    pub fn pow(&self, q: &Rat) -> Result<Expression, AlgebraError> {
        if q.is_zero() {
            return Ok(Expression::one());
        }
        if q.is_one() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return if q.is_negative() {
                Err(AlgebraError::BadPower {
                    what: "zero".into(),
                    power: q.to_string(),
                })
            } else {
                Ok(Expression::zero())
            };
        }
        if q.is_integer() && !q.is_negative() {
            let mut n = q.to_integer();
            let mut acc = Expression::one();
            while n.is_positive() {
                acc = &acc * self;
                n -= 1;
            }
            return Ok(acc);
        }
        // Invertible-monomial decomposition.
        let body_terms: Vec<&Term> = self.terms.iter().filter(|t| t.odd.is_one()).collect();
        if body_terms.len() != 1 {
            return Err(AlgebraError::BadPower {
                what: format!(
                    "sum with {} invertible monomial parts",
                    body_terms.len()
                ),
                power: q.to_string(),
            });
        }
        let m = body_terms[0].clone();
        let m_inv = Expression::from_terms(m.pow(&rat_int(-1))?);
        let nil = &(&m_inv * self) - &Expression::one();
        debug_assert!(nil.terms.iter().all(|t| !t.odd.is_one()));
        let m_pow = Expression::from_terms(m.pow(q)?);
        // (1 + N)^q = Σ C(q, k) N^k, truncated by nilpotency.
        let mut series = Expression::one();
        let mut n_pow = Expression::one();
        let mut binom = Rat::one();
        let mut k = BigInt::zero();
        loop {
            n_pow = &n_pow * &nil;
            binom = binom * (q - Rat::from_integer(k.clone()))
                / Rat::from_integer(k.clone() + BigInt::one());
            k += 1;
            if n_pow.is_zero() {
                break;
            }
            series = &series + &n_pow.scale(&binom);
        }
        Ok(&m_pow * &series)
    }

    /// Multiplicative inverse, when the expression is a single invertible
    /// term or a monomial times a nilpotent-unit.
    pub fn inv(&self) -> Result<Expression, AlgebraError> {
        self.pow(&rat_int(-1))
    }
}

impl Add for &Expression {
    type Output = Expression;
    fn add(self, rhs: &Expression) -> Expression {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        Expression::from_terms(terms)
    }
}

impl Sub for &Expression {
    type Output = Expression;
    fn sub(self, rhs: &Expression) -> Expression {
        self + &(-rhs)
    }
}

impl Neg for &Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        Expression {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let mut t = t.clone();
                    t.coef = -t.coef;
                    t
                })
                .collect(),
        }
    }
}

impl Mul for &Expression {
    type Output = Expression;
    fn mul(self, rhs: &Expression) -> Expression {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.extend(a.mul(b));
            }
        }
        Expression::from_terms(terms)
    }
}

impl Add for Expression {
    type Output = Expression;
    fn add(self, rhs: Expression) -> Expression {
        &self + &rhs
    }
}

impl Sub for Expression {
    type Output = Expression;
    fn sub(self, rhs: Expression) -> Expression {
        &self - &rhs
    }
}

impl Mul for Expression {
    type Output = Expression;
    fn mul(self, rhs: Expression) -> Expression {
        &self * &rhs
    }
}

impl Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        -&self
    }
}

/// Canonicalization pipeline. Idempotent; the zero expression is the empty
/// term list.
fn normalize(mut terms: Vec<Term>) -> Vec<Term> {
    for t in &mut terms {
        t.fold_two();
        debug_assert!(t.even.domains_ok(), "exponent domain violation");
    }
    terms.retain(|t| !t.is_zero());

    // Merge equal keys.
    terms.sort_by(Term::key_cmp);
    let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        if let Some(last) = merged.last_mut() {
            if last.same_key(&t) {
                last.coef = last.coef.clone() + t.coef;
                continue;
            }
        }
        merged.push(t);
    }
    merged.retain(|t| !t.is_zero());

    if merged.iter().all(|t| t.ext.d_inv == 0) {
        return merged;
    }
    reduce_sectors(merged)
}

/// Brings every (Grassmann, r) sector that carries denominators to a single
/// reduced fraction `N·D^{−n}` with (1 + h²) ∤ N.
fn reduce_sectors(terms: Vec<Term>) -> Vec<Term> {
    type SectorKey = (GrassmannMonomial, bool);
    let mut sectors: BTreeMap<SectorKey, Vec<Term>> = BTreeMap::new();
    for t in terms {
        sectors.entry((t.odd.clone(), t.ext.r)).or_default().push(t);
    }

    let mut out = Vec::new();
    for ((odd, r), sector) in sectors {
        let max_d = sector.iter().map(|t| t.ext.d_inv).max().unwrap_or(0);
        if max_d == 0 {
            out.extend(sector);
            continue;
        }
        // Lift everything to the common denominator D^{max_d}.
        let mut numerator: BTreeMap<EvenMonomial, CycloScalar> = BTreeMap::new();
        for t in sector {
            let lift = max_d - t.ext.d_inv;
            if lift == 0 {
                let slot = numerator.entry(t.even).or_insert_with(CycloScalar::zero);
                *slot = slot.clone() + t.coef;
            } else {
                for (c, m) in d_power_expansion(lift) {
                    let key = t.even.mul(&m);
                    let slot = numerator.entry(key).or_insert_with(CycloScalar::zero);
                    *slot = slot.clone() + &t.coef * &c;
                }
            }
        }
        let mut num: Vec<(CycloScalar, EvenMonomial)> = numerator
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        let mut d = max_d;
        while d > 0 && !num.is_empty() {
            match divide_by_one_plus_h2(&num) {
                Some(q) => {
                    num = q;
                    d -= 1;
                }
                None => break,
            }
        }
        for (c, m) in num {
            if c.is_zero() {
                continue;
            }
            let mut t = Term {
                coef: c,
                even: m,
                ext: ExtFactor { r, d_inv: d },
                odd: odd.clone(),
            };
            t.fold_two();
            out.push(t);
        }
    }
    out.sort_by(Term::key_cmp);
    // Folding after division can in principle re-merge keys.
    let mut merged: Vec<Term> = Vec::with_capacity(out.len());
    for t in out {
        if let Some(last) = merged.last_mut() {
            if last.same_key(&t) {
                last.coef = last.coef.clone() + t.coef;
                continue;
            }
        }
        merged.push(t);
    }
    merged.retain(|t| !t.is_zero());
    merged
}

/// Decomposition of an expression that is linear in a set of unknowns:
/// `e = Σ_i C_i·x_i + rest` with the coefficients extracted to the left.
pub fn decompose_linear(
    e: &Expression,
    unknowns: &[GenId],
) -> Result<(BTreeMap<GenId, Expression>, Expression), AlgebraError> {
    let set: BTreeSet<GenId> = unknowns.iter().copied().collect();
    let mut coeffs: BTreeMap<GenId, Vec<Term>> = BTreeMap::new();
    let mut rest = Vec::new();
    for t in e.terms() {
        let mut hits: Vec<GenId> = Vec::new();
        for g in t.even.gens() {
            if set.contains(&g) {
                hits.push(g);
            }
        }
        for &g in t.odd.gens() {
            if set.contains(&g) {
                hits.push(g);
            }
        }
        match hits.len() {
            0 => rest.push(t.clone()),
            1 => {
                let x = hits[0];
                let mut c = t.clone();
                match x.kind() {
                    GenKind::Odd => {
                        // Move x to the right end of the Grassmann monomial:
                        // θ_a x θ_b = (−1)^{|θ_b|} θ_a θ_b x.
                        let pos = c.odd.gens().iter().position(|&g| g == x).unwrap();
                        let after = c.odd.degree() - pos - 1;
                        let remaining: Vec<GenId> = c
                            .odd
                            .gens()
                            .iter()
                            .copied()
                            .filter(|&g| g != x)
                            .collect();
                        let (s, m) = GrassmannMonomial::from_sequence(&remaining).unwrap();
                        debug_assert_eq!(s, 1);
                        if after % 2 == 1 {
                            c.coef = -c.coef;
                        }
                        c.odd = m;
                    }
                    _ => {
                        if !t.even.exponent(x).is_one() {
                            return Err(AlgebraError::NonLinear {
                                symbol: format!("{x}"),
                            });
                        }
                        c.even.mul_gen(x, rat_int(-1));
                    }
                }
                coeffs.entry(x).or_default().push(c);
            }
            _ => {
                return Err(AlgebraError::NonLinear {
                    symbol: format!("{}", hits[0]),
                })
            }
        }
    }
    let coeffs = coeffs
        .into_iter()
        .map(|(g, ts)| (g, Expression::from_terms(ts)))
        .collect();
    Ok((coeffs, Expression::from_terms(rest)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::Registry;
    use crate::rat;

    fn tiny() -> (Registry, GenId, GenId, GenId) {
        let mut reg = Registry::new();
        let x = reg.register("x", GenKind::ExponentialBase);
        let a = reg.register("a", GenKind::Odd);
        let b = reg.register("b", GenKind::Odd);
        (reg, x, a, b)
    }

    #[test]
    fn nilpotency_and_antisymmetry() {
        let (_r, _x, a, b) = tiny();
        let ea = Expression::gen(a);
        let eb = Expression::gen(b);
        assert!((&ea * &ea).is_zero());
        let ab = &ea * &eb;
        let ba = &eb * &ea;
        assert_eq!(ab, -&ba);
    }

    #[test]
    fn mixed_parity_detected() {
        let (_r, _x, a, _b) = tiny();
        let e = &Expression::one() + &Expression::gen(a);
        assert_eq!(e.parity(), Parity::Mixed);
        assert_eq!(Expression::zero().parity(), Parity::Zero);
    }

    #[test]
    fn add_cancels_exactly() {
        let (_r, x, _a, _b) = tiny();
        let e = Expression::gen_pow(x, rat(2, 3));
        let z = &e - &e;
        assert!(z.is_zero());
    }

    #[test]
    fn nilpotent_power_series() {
        let (_r, x, a, b) = tiny();
        // e = x·(1 + a·b); e^{1/2} = x^{1/2}(1 + ab/2)
        let m = Expression::gen(x);
        let nil = &Expression::gen(a) * &Expression::gen(b);
        let e = &m * &(&Expression::one() + &nil);
        let half = e.pow(&rat(1, 2)).unwrap();
        let expect = &Expression::gen_pow(x, rat(1, 2))
            * &(&Expression::one() + &nil.scale(&rat(1, 2)));
        assert_eq!(half, expect);
        // Squaring back reproduces e.
        let sq = half.pow(&rat(2, 1)).unwrap();
        assert_eq!(sq, e);
    }

    #[test]
    fn linear_decomposition_signs() {
        let (_r, _x, a, b) = tiny();
        // e = a·b: coefficient of b (moved right, no sign) is a;
        // coefficient of a (one generator after it) is -b.
        let e = &Expression::gen(a) * &Expression::gen(b);
        let (coeffs, rest) = decompose_linear(&e, &[a]).unwrap();
        assert!(rest.is_zero());
        assert_eq!(coeffs[&a], -&Expression::gen(b));
        let (coeffs, _) = decompose_linear(&e, &[b]).unwrap();
        assert_eq!(coeffs[&b], Expression::gen(a));
    }
}
