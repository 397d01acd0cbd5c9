//! Polynomials in `(s, t)` and the rank-one module families `Ω`, `Δ`, `Θ`.
//!
//! All three families share the action of `h_i`, `d_i` and `C`:
//!
//! ```text
//! h_i g = λ^i t g(s-i, t)       d_i g = λ^i (s + iγ) g(s-i, t)       C g = 0
//! ```
//!
//! and differ in `e_i`, `f_i`:
//!
//! ```text
//! Ω:  e_i g =  λ^i α g(s-i, t-2)                        f_i g = -(λ^i/α)(t/2-β)(t/2+β+1) g(s-i, t+2)
//! Δ:  e_i g = -(λ^i/α)(t/2+β)(t/2-β-1) g(s-i, t-2)      f_i g =  λ^i α g(s-i, t+2)
//! Θ:  e_i g =  λ^i α (t/2+β) g(s-i, t-2)                f_i g = -(λ^i/α)(t/2-β) g(s-i, t+2)
//! ```

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::exact::{binomial, LinComb, Scalar};
use crate::liealg::{AlgebraElement, Generator, Kind};
use crate::text::{parse_poly, write_sum, ParseError};

/// Sparse polynomial in `s, t`, keyed by `(p, q)` for `s^p t^q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: LinComb<(u32, u32)>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn constant(c: Scalar) -> Self {
        Poly2 { terms: LinComb::term((0, 0), c) }
    }

    pub fn monomial(p: u32, q: u32) -> Self {
        Poly2 { terms: LinComb::basis((p, q)) }
    }

    pub fn term(p: u32, q: u32, c: Scalar) -> Self {
        Poly2 { terms: LinComb::term((p, q), c) }
    }

    pub fn s() -> Self {
        Self::monomial(1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(0, 1)
    }

    /// Univariate polynomial in `t` from ascending coefficients.
    pub fn in_t(coeffs: &[Scalar]) -> Self {
        coeffs.iter().enumerate().map(|(q, c)| ((0, q as u32), c.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: u32, q: u32) -> Scalar {
        self.terms.coeff(&(p, q))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn terms(&self) -> &LinComb<(u32, u32)> {
        &self.terms
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: Scalar) {
        self.terms.add_term((p, q), c);
    }

    pub fn add_scaled(&mut self, other: &Poly2, c: &Scalar) {
        self.terms.add_scaled(&other.terms, c);
    }

    pub fn scale(&self, c: &Scalar) -> Poly2 {
        Poly2 { terms: self.terms.scale(c) }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for ((p1, q1), c1) in self.iter() {
            for ((p2, q2), c2) in other.iter() {
                out.add_term(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        (0..n).fold(Poly2::one(), |acc, _| acc.mul(self))
    }

    /// Degree in `s`; `None` for zero.
    pub fn deg_s(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// Degree in `t`; `None` for zero.
    pub fn deg_t(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// `g(s + ds, t + dt)` by binomial expansion.
    pub fn shift_sub(&self, ds: &Scalar, dt: &Scalar) -> Poly2 {
        let mut out = Poly2::zero();
        for ((p, q), c) in self.iter() {
            let sp = shifted_powers(p, ds);
            let tq = shifted_powers(q, dt);
            for (a, ca) in sp.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let cca = c * ca;
                for (b, cb) in tq.iter().enumerate() {
                    out.add_term(a as u32, b as u32, &cca * cb);
                }
            }
        }
        out
    }

    /// Division with remainder by a polynomial in `t` alone, with
    /// coefficients in `C[s]`: `self = quot * divisor + rem`, `deg_t rem < deg_t divisor`.
    pub fn div_rem_t(&self, divisor: &Poly2) -> (Poly2, Poly2) {
        assert!(divisor.deg_s() == Some(0), "divisor must be a nonzero polynomial in t");
        let n = divisor.deg_t().unwrap();
        let lead_inv = divisor.coeff(0, n).inv();
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some(((p, q), c)) = rem.iter().filter(|((_, q), _)| *q >= n).map(|(k, c)| (k, c.clone())).max_by_key(|((p, q), _)| (*q, *p)) {
            let factor = &c * &lead_inv;
            quot.add_term(p, q - n, factor.clone());
            let shifted = divisor.mul(&Poly2::monomial(p, q - n));
            rem.add_scaled(&shifted, &-factor);
        }
        (quot, rem)
    }

    /// Renders with custom variable names; used by the tensor text format.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, s: &str, t: &str) -> fmt::Result {
        let mut keys: Vec<((u32, u32), &Scalar)> = self.iter().collect();
        keys.sort_by(|a, b| {
            let ka = (a.0 .0 + a.0 .1, a.0 .0);
            let kb = (b.0 .0 + b.0 .1, b.0 .0);
            kb.cmp(&ka)
        });
        write_sum(f, keys.into_iter().map(|((p, q), c)| (monomial_text(p, q, s, t), c)))
    }

    pub fn parse_with(src: &str, s: &str, t: &str) -> Result<Poly2, ParseError> {
        let e = parse_poly(src, &[s, t])?;
        Ok(e.iter().map(|(k, c)| ((k[0], k[1]), c.clone())).collect())
    }
}

impl FromIterator<((u32, u32), Scalar)> for Poly2 {
    fn from_iter<I: IntoIterator<Item = ((u32, u32), Scalar)>>(iter: I) -> Self {
        Poly2 { terms: iter.into_iter().collect() }
    }
}

/// Coefficients of `(x + a)^n` in ascending powers of `x`.
fn shifted_powers(n: u32, a: &Scalar) -> Vec<Scalar> {
    if a.is_zero() {
        let mut v = alloc::vec![Scalar::ZERO; n as usize + 1];
        v[n as usize] = Scalar::ONE;
        return v;
    }
    (0..=n).map(|k| Scalar::from(binomial(n as i64, k as i64)) * a.pow((n - k) as i64)).collect()
}

pub(crate) fn monomial_text(p: u32, q: u32, s: &str, t: &str) -> String {
    let part = |name: &str, e: u32| match e {
        0 => String::new(),
        1 => String::from(name),
        _ => alloc::format!("{name}^{e}"),
    };
    match (part(s, p), part(t, q)) {
        (a, b) if b.is_empty() => a,
        (a, b) if a.is_empty() => b,
        (a, b) => alloc::format!("{a}*{b}"),
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "s", "t")
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Poly2 {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Poly2::parse_with(s, "s", "t")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Omega,
    Delta,
    Theta,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Omega, Family::Delta, Family::Theta];

    pub fn name(self) -> &'static str {
        match self {
            Family::Omega => "Omega",
            Family::Delta => "Delta",
            Family::Theta => "Theta",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Omega" | "omega" | "Ω" => Ok(Family::Omega),
            "Delta" | "delta" | "Δ" => Ok(Family::Delta),
            "Theta" | "theta" | "Θ" => Ok(Family::Theta),
            _ => Err(ParseError::new(0, "family must be Omega, Delta or Theta")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
}

/// Parameters `(λ, α, β, γ)` of one rank-one module; `λ, α` nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FamilyParams {
    pub family: Family,
    pub lambda: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl FamilyParams {
    pub fn new(family: Family, lambda: Scalar, alpha: Scalar, beta: Scalar, gamma: Scalar) -> Result<Self, ParamError> {
        if lambda.is_zero() {
            return Err(ParamError::ZeroLambda);
        }
        if alpha.is_zero() {
            return Err(ParamError::ZeroAlpha);
        }
        Ok(FamilyParams { family, lambda, alpha, beta, gamma })
    }

    /// Convenience constructor from small integers; panics on zero `λ` or `α`.
    pub fn ints(family: Family, lambda: i64, alpha: i64, beta: i64, gamma: i64) -> Self {
        Self::new(family, lambda.into(), alpha.into(), beta.into(), gamma.into()).expect("nonzero lambda and alpha")
    }

    /// `(t-shift, prefactor)` of `e_i` or `f_i`, excluding the common `λ^i`.
    fn ef_data(&self, kind: Kind) -> (Scalar, Poly2) {
        let half_t = Poly2::term(0, 1, Scalar::ratio(1, 2));
        let lin = |c: Scalar| {
            let mut p = half_t.clone();
            p.add_term(0, 0, c);
            p
        };
        let b = &self.beta;
        let one = Scalar::ONE;
        let neg_inv_alpha = -self.alpha.inv();
        match (self.family, kind) {
            (Family::Omega, Kind::E) => (Scalar::int(-2), Poly2::constant(self.alpha.clone())),
            (Family::Omega, Kind::F) => (Scalar::int(2), lin(-b).mul(&lin(b + &one)).scale(&neg_inv_alpha)),
            (Family::Delta, Kind::E) => (Scalar::int(-2), lin(b.clone()).mul(&lin(-b - &one)).scale(&neg_inv_alpha)),
            (Family::Delta, Kind::F) => (Scalar::int(2), Poly2::constant(self.alpha.clone())),
            (Family::Theta, Kind::E) => (Scalar::int(-2), lin(b.clone()).scale(&self.alpha)),
            (Family::Theta, Kind::F) => (Scalar::int(2), lin(-b).scale(&neg_inv_alpha)),
            _ => unreachable!(),
        }
    }
}

/// Action of a generator on `C[s, t]` under the given family.
pub fn act_rankone(x: Generator, params: &FamilyParams, g: &Poly2) -> Poly2 {
    if g.is_zero() || x.kind() == Kind::C {
        return Poly2::zero();
    }
    let i = x.mode();
    let li = params.lambda.pow(i);
    let si = Scalar::int(-i);
    match x.kind() {
        Kind::H => g.shift_sub(&si, &Scalar::ZERO).mul(&Poly2::t()).scale(&li),
        Kind::D => {
            let mut pre = Poly2::s();
            pre.add_term(0, 0, Scalar::int(i) * &params.gamma);
            g.shift_sub(&si, &Scalar::ZERO).mul(&pre).scale(&li)
        }
        k => {
            let (dt, pre) = params.ef_data(k);
            g.shift_sub(&si, &dt).mul(&pre).scale(&li)
        }
    }
}

/// Linear extension of [`act_rankone`] to algebra elements.
pub fn act_rankone_element(x: &AlgebraElement, params: &FamilyParams, g: &Poly2) -> Poly2 {
    let mut out = Poly2::zero();
    for (gen, c) in x {
        out.add_scaled(&act_rankone(*gen, params, g), c);
    }
    out
}

/// For `Θ` with `2β = n ∈ Z_+`, the generator `∏_{j=0}^{n} (t/2 - β + j)` of
/// the invariant ideal; `None` otherwise.
pub fn theta_ideal_generator(beta: &Scalar) -> Option<Poly2> {
    let two_beta = Scalar::int(2) * beta;
    if !two_beta.is_nonneg_integer() {
        return None;
    }
    let n = two_beta.to_i64()?;
    let mut out = Poly2::one();
    for j in 0..=n {
        let mut f = Poly2::term(0, 1, Scalar::ratio(1, 2));
        f.add_term(0, 0, Scalar::int(j) - beta);
        out = out.mul(&f);
    }
    Some(out)
}

/// Whether `g` lies in the ideal of `C[s, t]` generated by `divisor(t)`.
pub fn in_t_ideal(g: &Poly2, divisor: &Poly2) -> bool {
    g.div_rem_t(divisor).1.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::bracket_gen;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("s^2").shift_sub(&Scalar::int(-1), &Scalar::ZERO), p("s^2 - 2*s + 1"));
        assert_eq!(p("t").shift_sub(&Scalar::ZERO, &Scalar::int(-2)), p("t - 2"));
        assert_eq!(Poly2::one().shift_sub(&Scalar::int(5), &Scalar::ratio(1, 3)), Poly2::one());
    }

    #[test]
    fn action_examples() {
        let om = FamilyParams::ints(Family::Omega, 2, 3, 0, 5);
        assert_eq!(act_rankone(Generator::d(1), &om, &Poly2::one()), p("2*s + 10"));
        assert_eq!(act_rankone(Generator::e(1), &om, &p("t")), p("6*t - 12"));
        for fam in Family::ALL {
            let pr = FamilyParams::ints(fam, 3, 2, 1, 1);
            assert!(act_rankone(Generator::central(), &pr, &p("s*t + 1")).is_zero());
        }
    }

    #[test]
    fn theta_e0_f0_commutator_is_t() {
        let pr = FamilyParams::new(Family::Theta, Scalar::int(2), Scalar::int(3), Scalar::ratio(1, 3), Scalar::int(1)).unwrap();
        for g in [Poly2::one(), p("s*t^2 - 3"), p("t^3")] {
            let e0 = Generator::e(0);
            let f0 = Generator::f(0);
            let mut lhs = act_rankone(e0, &pr, &act_rankone(f0, &pr, &g));
            lhs.add_scaled(&act_rankone(f0, &pr, &act_rankone(e0, &pr, &g)), &-Scalar::ONE);
            assert_eq!(lhs, g.mul(&Poly2::t()));
        }
    }

    #[test]
    fn text_format() {
        let g = p("3*s^2*t - 1/2");
        assert_eq!(g.to_string(), "3*s^2*t - 1/2");
        assert_eq!(p("t^3 + s").to_string(), "t^3 + s");
        assert_eq!(p("-s*t + (1+i)*s").to_string(), "-s*t + (1+1*i)*s");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-i*t").to_string(), "-1*i*t");
        for src in ["3*s^2*t - 1/2", "-s*t + (1+1*i)*s", "-1*i*t", "2*i*s^3 + t"] {
            assert_eq!(p(src).to_string().parse::<Poly2>().unwrap(), p(src));
        }
    }

    #[test]
    fn t_division() {
        let d = p("t^2 - 1");
        let g = p("s*t^3 + 2*t - 5");
        let (q, r) = g.div_rem_t(&d);
        let mut back = q.mul(&d);
        back.add_scaled(&r, &Scalar::ONE);
        assert_eq!(back, g);
        assert!(r.deg_t().unwrap_or(0) < 2);
        assert!(in_t_ideal(&p("s*t^2 - s"), &d));
    }

    #[test]
    fn theta_ideal_invariant() {
        for two_beta in 0..=3 {
            let beta = Scalar::ratio(two_beta, 2);
            let pr = FamilyParams::new(Family::Theta, Scalar::int(2), Scalar::ratio(1, 2), beta.clone(), Scalar::int(3)).unwrap();
            let gen = theta_ideal_generator(&beta).unwrap();
            for x in Generator::all_up_to(3) {
                for g in [Poly2::one(), p("s"), p("t^2"), p("s^2*t")] {
                    let v = act_rankone(x, &pr, &g.mul(&gen));
                    assert!(in_t_ideal(&v, &gen), "{x} leaves the ideal for 2β={two_beta}");
                }
            }
        }
        assert!(theta_ideal_generator(&Scalar::ratio(1, 3)).is_none());
        assert!(theta_ideal_generator(&Scalar::int(-1)).is_none());
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-3i64..=3, 1i64..=3, -1i64..=1).prop_map(|(n, d, im)| Scalar::ratio(n, d) + Scalar::gaussian(0, im))
    }

    fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
        small_scalar().prop_filter("nonzero", |s| !s.is_zero())
    }

    fn arb_params() -> impl Strategy<Value = FamilyParams> {
        (0usize..3, nonzero_scalar(), nonzero_scalar(), small_scalar(), small_scalar())
            .prop_map(|(f, l, a, b, g)| FamilyParams::new(Family::ALL[f], l, a, b, g).unwrap())
    }

    fn arb_gen() -> impl Strategy<Value = Generator> {
        (0usize..5, -4i64..=4).prop_map(|(k, m)| Generator::new(Kind::ALL[k], m))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn module_axiom(pr in arb_params(), x in arb_gen(), y in arb_gen(), pe in 0u32..=3, qe in 0u32..=3) {
            let g = Poly2::monomial(pe, qe);
            let lhs = act_rankone_element(&bracket_gen(x, y), &pr, &g);
            let mut rhs = act_rankone(x, &pr, &act_rankone(y, &pr, &g));
            rhs.add_scaled(&act_rankone(y, &pr, &act_rankone(x, &pr, &g)), &-Scalar::ONE);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn families_agree_on_h_d(pr in arb_params(), i in -4i64..=4, pe in 0u32..=3, qe in 0u32..=3) {
            let g = Poly2::monomial(pe, qe);
            for fam in Family::ALL {
                let other = FamilyParams { family: fam, ..pr.clone() };
                for x in [Generator::h(i), Generator::d(i)] {
                    prop_assert_eq!(act_rankone(x, &pr, &g), act_rankone(x, &other, &g));
                }
            }
        }

        #[test]
        fn h_raises_t_degree(pr in arb_params(), i in -4i64..=4, pe in 0u32..=3, qe in 0u32..=3) {
            let g = Poly2::monomial(pe, qe);
            prop_assert_eq!(act_rankone(Generator::h(i), &pr, &g).deg_t(), Some(qe + 1));
        }

        #[test]
        fn linear_extension_order_independent(pr in arb_params(), xs in proptest::collection::vec((arb_gen(), -2i64..=2), 1..4)) {
            let g = p("s*t + t^2 - 1");
            let elem: AlgebraElement = xs.iter().map(|(x, c)| (*x, Scalar::int(*c))).collect();
            let mut manual = Poly2::zero();
            for (x, c) in xs.iter().rev() {
                manual.add_scaled(&act_rankone(*x, &pr, &g), &Scalar::int(*c));
            }
            prop_assert_eq!(act_rankone_element(&elem, &pr, &g), manual);
        }
    }

    #[test]
    fn params_validated() {
        assert_eq!(
            FamilyParams::new(Family::Omega, Scalar::ZERO, Scalar::ONE, Scalar::ZERO, Scalar::ZERO),
            Err(ParamError::ZeroLambda)
        );
        assert_eq!(
            FamilyParams::new(Family::Omega, Scalar::ONE, Scalar::ZERO, Scalar::ZERO, Scalar::ZERO),
            Err(ParamError::ZeroAlpha)
        );
    }
}
