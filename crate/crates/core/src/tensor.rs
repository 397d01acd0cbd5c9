//! Tensor products `M(λ_1,..) ⊗ .. ⊗ M(λ_m,..) ⊗ V` of rank-one modules with a
//! highest-weight module.
//!
//! Elements are combinations of basis tensors `s^p t^q ⊗ w`, keyed by the
//! exponent vector `(p_1..p_m, q_1..q_m)` and a PBW word `w`. The derived key
//! order compares exponent vectors lexicographically first, so the largest
//! key of an element carries its degree.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::exact::{LinComb, Scalar};
use crate::hwmod::{HwElement, HwError, HwKind, HwModule, HwParams, PbwMonomial};
use crate::liealg::{AlgebraElement, Generator};
use crate::polymod::{act_rankone, monomial_text, Family, FamilyParams, Poly2};
use crate::text::{write_sum, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("a tensor product needs at least one rank-one factor")]
    NoFactors,
    #[error("factor {slot} has family {found}, expected {expected} (mixed families need allow_mixed)")]
    MixedFamilies { slot: usize, expected: Family, found: Family },
}

/// Parameters of `T^M`: rank-one factors and the highest-weight factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorParams {
    pub factors: Vec<FamilyParams>,
    pub hw: HwParams,
    pub hw_kind: HwKind,
}

impl TensorParams {
    /// Single-family tensor with the irreducible highest-weight factor.
    pub fn new(factors: Vec<FamilyParams>, hw: HwParams) -> Result<Self, TensorError> {
        Self::build(factors, hw, HwKind::Irreducible, false)
    }

    pub fn build(factors: Vec<FamilyParams>, hw: HwParams, hw_kind: HwKind, allow_mixed: bool) -> Result<Self, TensorError> {
        let first = factors.first().ok_or(TensorError::NoFactors)?.family;
        if !allow_mixed {
            if let Some((slot, f)) = factors.iter().enumerate().find(|(_, f)| f.family != first) {
                return Err(TensorError::MixedFamilies { slot, expected: first, found: f.family });
            }
        }
        Ok(TensorParams { factors, hw, hw_kind })
    }

    pub fn m(&self) -> usize {
        self.factors.len()
    }

    /// The family of the first factor (the family of every factor unless
    /// mixing was allowed).
    pub fn family(&self) -> Family {
        self.factors[0].family
    }

    pub fn lambdas_distinct(&self) -> bool {
        let ls: Vec<&Scalar> = self.factors.iter().map(|f| &f.lambda).collect();
        (0..ls.len()).all(|a| (a + 1..ls.len()).all(|b| ls[a] != ls[b]))
    }

    /// The same tensor with slots reordered: new slot `k` is old slot `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> TensorParams {
        TensorParams { factors: perm.iter().map(|&k| self.factors[k].clone()).collect(), ..self.clone() }
    }
}

/// Basis tensor: exponent vector `(p_1..p_m, q_1..q_m)` and PBW word.
pub type TensorKey = (Vec<u32>, PbwMonomial);

pub type TensorElement = LinComb<TensorKey>;

/// `1 ⊗ .. ⊗ 1 ⊗ v_h` for `m` rank-one factors.
pub fn one_vh(m: usize) -> TensorElement {
    LinComb::basis((vec![0; 2 * m], PbwMonomial::vh()))
}

pub fn basis_tensor(exps: Vec<u32>, w: PbwMonomial) -> TensorElement {
    LinComb::basis((exps, w))
}

/// `s^p t^q ⊗ v` for a given highest-weight vector `v`.
pub fn with_hw(exps: &[u32], v: &HwElement) -> TensorElement {
    v.iter().map(|(w, c)| ((exps.to_vec(), w.clone()), c.clone())).collect()
}

/// Exponent vector of `s_k` (`t = false`) or `t_k` (`t = true`), 0-indexed slot.
pub fn unit_exponent(m: usize, slot: usize, t: bool) -> Vec<u32> {
    let mut e = vec![0; 2 * m];
    e[slot + if t { m } else { 0 }] = 1;
    e
}

/// Multiplication by the monomial with the given exponent vector.
pub fn mul_monomial(g: &TensorElement, exps: &[u32]) -> TensorElement {
    g.map_keys(|(e, w)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), w.clone()))
}

pub fn mul_s(g: &TensorElement, m: usize, slot: usize) -> TensorElement {
    mul_monomial(g, &unit_exponent(m, slot, false))
}

pub fn mul_t(g: &TensorElement, m: usize, slot: usize) -> TensorElement {
    mul_monomial(g, &unit_exponent(m, slot, true))
}

/// Multiplication by a polynomial in `(s_k, t_k)`.
pub fn mul_slot_poly(g: &TensorElement, m: usize, slot: usize, p: &Poly2) -> TensorElement {
    let mut out = LinComb::zero();
    for ((a, b), c) in p.iter() {
        let mut e = vec![0; 2 * m];
        e[slot] = a;
        e[slot + m] = b;
        out.add_scaled(&mul_monomial(g, &e), c);
    }
    out
}

/// Lexicographically largest exponent vector; `None` for zero.
pub fn degree(g: &TensorElement) -> Option<Vec<u32>> {
    g.last_key().map(|(e, _)| e.clone())
}

pub fn is_degree_zero(g: &TensorElement) -> bool {
    degree(g).is_some_and(|d| d.iter().all(|&x| x == 0))
}

/// `P_k = max p_k` over the support.
pub fn max_s_powers(g: &TensorElement, m: usize) -> Vec<u32> {
    (0..m).map(|k| g.keys().map(|(e, _)| e[k]).max().unwrap_or(0)).collect()
}

pub fn max_level(g: &TensorElement) -> u32 {
    g.keys().map(|(_, w)| w.level()).max().unwrap_or(0)
}

/// Components `v_{(p,q)}` of `g` grouped by exponent vector.
pub fn components(g: &TensorElement) -> BTreeMap<Vec<u32>, HwElement> {
    let mut out: BTreeMap<Vec<u32>, HwElement> = BTreeMap::new();
    for ((e, w), c) in g {
        out.entry(e.clone()).or_default().add_term(w.clone(), c.clone());
    }
    out
}

/// The module `T^M` with cached rank-one actions.
pub struct TensorModule {
    params: TensorParams,
    hw: HwModule,
    slot_cache: RefCell<BTreeMap<(usize, Generator, u32, u32), Poly2>>,
}

impl TensorModule {
    pub fn new(params: TensorParams) -> Self {
        let hw = HwModule::new(params.hw.clone(), params.hw_kind);
        TensorModule { params, hw, slot_cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn params(&self) -> &TensorParams {
        &self.params
    }

    pub fn hw(&self) -> &HwModule {
        &self.hw
    }

    pub fn m(&self) -> usize {
        self.params.m()
    }

    fn slot_action(&self, slot: usize, x: Generator, p: u32, q: u32) -> Poly2 {
        let key = (slot, x, p, q);
        if let Some(v) = self.slot_cache.borrow().get(&key) {
            return v.clone();
        }
        let out = act_rankone(x, &self.params.factors[slot], &Poly2::monomial(p, q));
        self.slot_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// Leibniz action: the generator acts on each rank-one slot and on the
    /// highest-weight factor in turn.
    pub fn act(&self, x: Generator, g: &TensorElement) -> Result<TensorElement, HwError> {
        let m = self.m();
        let mut out = LinComb::zero();
        for ((exps, w), c) in g {
            for k in 0..m {
                let img = self.slot_action(k, x, exps[k], exps[k + m]);
                for ((a, b), d) in img.iter() {
                    let mut e = exps.clone();
                    e[k] = a;
                    e[k + m] = b;
                    out.add_term((e, w.clone()), c * d);
                }
            }
            for (w2, d) in &self.hw.act_mono(x, w)? {
                out.add_term((exps.clone(), w2.clone()), c * d);
            }
        }
        Ok(out)
    }

    pub fn act_element(&self, x: &AlgebraElement, g: &TensorElement) -> Result<TensorElement, HwError> {
        let mut out = LinComb::zero();
        for (gen, c) in x {
            out.add_scaled(&self.act(*gen, g)?, c);
        }
        Ok(out)
    }

    /// Minimal `I >= 1` such that `h_i`, `e_i`, `f_i` kill every highest-weight
    /// component of `g` for all `i >= I`.
    pub fn annihilation_bound(&self, g: &TensorElement) -> Result<i64, HwError> {
        let mut bound = max_level(g) as i64 + 1;
        while bound > 1 {
            let i = bound - 1;
            for (_, w) in g.keys() {
                for x in [Generator::h(i), Generator::e(i), Generator::f(i)] {
                    if !self.hw.act_mono(x, w)?.is_zero() {
                        return Ok(bound);
                    }
                }
            }
            bound = i;
        }
        Ok(bound)
    }
}

impl fmt::Debug for TensorModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TensorModule").field("params", &self.params).finish()
    }
}

struct SlotFactor<'a>(&'a [u32], usize, usize);

impl fmt::Display for SlotFactor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let SlotFactor(exps, m, k) = *self;
        let text = monomial_text(exps[k], exps[k + m], &alloc::format!("s{}", k + 1), &alloc::format!("t{}", k + 1));
        if text.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&text)
        }
    }
}

/// One term per line: `s1^2*t1 (x) t2^3 (x) [f[0]^1 . vh] : 3/2`.
pub fn format_element(g: &TensorElement) -> String {
    let mut out = String::new();
    for ((exps, w), c) in g.iter().rev() {
        let m = exps.len() / 2;
        for k in 0..m {
            out.push_str(&alloc::format!("{} (x) ", SlotFactor(exps, m, k)));
        }
        out.push_str(&alloc::format!("[{w}] : {c}\n"));
    }
    out
}

/// Compact single-line rendering, mainly for diagnostics.
pub struct Inline<'a>(pub &'a TensorElement);

impl fmt::Display for Inline<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.0.iter().rev().map(|((exps, w), c)| {
            let m = exps.len() / 2;
            let mut s = String::new();
            for k in 0..m {
                s.push_str(&alloc::format!("{} (x) ", SlotFactor(exps, m, k)));
            }
            s.push_str(&alloc::format!("[{w}]"));
            (s, c)
        });
        write_sum(f, terms)
    }
}

/// Parses terms separated by newlines or `;`. Each term is
/// `u_1 (x) .. (x) u_m (x) w [: coeff]`, where the slot factors are
/// polynomials in `s_k, t_k` and `w` is a PBW word (optionally bracketed).
pub fn parse_element(src: &str, m: usize) -> Result<TensorElement, ParseError> {
    let mut out = LinComb::zero();
    for line in src.split(['\n', ';']) {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (body, coeff) = match line.rsplit_once(':') {
            Some((b, c)) => (b, c.parse::<Scalar>()?),
            None => (line, Scalar::ONE),
        };
        let parts: Vec<&str> = body.split("(x)").map(str::trim).collect();
        if parts.len() != m + 1 {
            return Err(ParseError::new(0, alloc::format!("expected {} tensor factors, found {}", m + 1, parts.len())));
        }
        let hw = parts[m];
        let hw = hw.strip_prefix('[').and_then(|h| h.strip_suffix(']')).unwrap_or(hw);
        let w: PbwMonomial = hw.parse()?;
        let mut term = LinComb::term((vec![0; 2 * m], w), coeff);
        for (k, part) in parts[..m].iter().enumerate() {
            let p = Poly2::parse_with(part, &alloc::format!("s{}", k + 1), &alloc::format!("t{}", k + 1))?;
            term = mul_slot_poly(&term, m, k, &p);
        }
        out.add_scaled(&term, &Scalar::ONE);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{bracket_gen, Kind};
    use proptest::prelude::*;

    fn om(lambda: i64) -> FamilyParams {
        FamilyParams::new(Family::Omega, Scalar::int(lambda), Scalar::int(3), Scalar::ratio(1, 2), Scalar::int(2)).unwrap()
    }

    fn generic_hw() -> HwParams {
        HwParams::new(Scalar::int(1), Scalar::int(3), Scalar::ratio(1, 2), 3, 2)
    }

    #[test]
    fn examples() {
        let t = TensorModule::new(TensorParams::new(vec![om(2)], generic_hw()).unwrap());
        let g = one_vh(1);
        let expect = basis_tensor(vec![0, 1], PbwMonomial::vh()).scale(&Scalar::int(2));
        assert_eq!(t.act(Generator::h(1), &g).unwrap(), expect);
        assert_eq!(t.act(Generator::central(), &g).unwrap(), g.scale(&generic_hw().theta));

        let t2 = TensorModule::new(TensorParams::new(vec![om(2), om(3)], generic_hw()).unwrap());
        let i = 2;
        let g2 = one_vh(2);
        let got = t2.act(Generator::d(i), &g2).unwrap();
        let mut expect = LinComb::zero();
        for (k, f) in t2.params().factors.iter().enumerate() {
            let li = f.lambda.pow(i);
            expect.add_scaled(&mul_s(&g2, 2, k), &li);
            expect.add_scaled(&g2, &(&li * &(Scalar::int(i) * &f.gamma)));
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&one_vh(2)), Some(vec![0; 4]));
        let g = parse_element("s1^2*t1 (x) vh; s1*t1^3 (x) [f[0] . vh]", 1).unwrap();
        assert_eq!(degree(&g), Some(vec![2, 1]));
        let g = parse_element("s1 (x) 1 (x) vh; 1 (x) s2^2 (x) [d[-1] . vh]", 2).unwrap();
        assert_eq!(degree(&g), Some(vec![1, 0, 0, 0]));
        assert_eq!(degree(&LinComb::zero()), None);
    }

    #[test]
    fn annihilation_bound_examples() {
        let t = TensorModule::new(TensorParams::new(vec![om(2)], generic_hw()).unwrap());
        assert_eq!(t.annihilation_bound(&one_vh(1)).unwrap(), 1);
        let g = parse_element("1 (x) [d[-2] . vh]", 1).unwrap();
        assert!(t.annihilation_bound(&g).unwrap() <= 3);
        assert_eq!(t.annihilation_bound(&LinComb::zero()).unwrap(), 1);
    }

    #[test]
    fn text_roundtrip() {
        let g = parse_element("s1^2*t1 (x) t2^3 (x) [f[0]^1 . vh] : 3/2", 2).unwrap();
        assert_eq!(format_element(&g), "s1^2*t1 (x) t2^3 (x) [f[0]^1 . vh] : 3/2\n");
        assert_eq!(parse_element("1(x)1(x)vh", 2).unwrap(), one_vh(2));
        let h = parse_element("(s1 + 1) (x) t2 (x) vh : -1", 2).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(parse_element(&format_element(&h), 2).unwrap(), h);
        assert!(parse_element("1 (x) vh", 2).is_err());
    }

    #[test]
    fn mixed_families_rejected() {
        let d = FamilyParams::ints(Family::Delta, 2, 1, 0, 0);
        let err = TensorParams::new(vec![om(1), d.clone()], generic_hw()).unwrap_err();
        assert_eq!(err, TensorError::MixedFamilies { slot: 1, expected: Family::Omega, found: Family::Delta });
        assert!(TensorParams::build(vec![om(1), d], generic_hw(), HwKind::Irreducible, true).is_ok());
        assert_eq!(TensorParams::new(vec![], generic_hw()), Err(TensorError::NoFactors));
    }

    fn sample_elements(m: usize) -> Vec<TensorElement> {
        let srcs1 = ["1 (x) vh", "s1*t1 (x) [d[-1] . vh]", "t1^2 (x) [f[0] . vh] ; s1 (x) vh : 2"];
        let srcs2 = ["1 (x) 1 (x) vh", "s1 (x) t2 (x) [h[-1] . vh]", "t1 (x) s2 (x) [f[0] . vh] ; 1 (x) t2^2 (x) vh : -1"];
        let srcs: &[&str] = if m == 1 { &srcs1 } else { &srcs2 };
        srcs.iter().map(|s| parse_element(s, m).unwrap()).collect()
    }

    #[test]
    fn module_axiom_small() {
        let hw = HwParams::new(Scalar::int(1), Scalar::int(3), Scalar::ratio(1, 2), 4, 3);
        for fam in Family::ALL {
            for m in 1..=2 {
                let factors = (0..m)
                    .map(|k| FamilyParams::new(fam, Scalar::int(k as i64 + 2), Scalar::int(-1), Scalar::ratio(1, 3), Scalar::int(k as i64)).unwrap())
                    .collect();
                let t = TensorModule::new(TensorParams::build(factors, hw.clone(), HwKind::Verma, false).unwrap());
                let gens = Generator::all_up_to(1);
                for g in sample_elements(m) {
                    for &x in &gens {
                        for &y in &gens {
                            let lhs = t.act_element(&bracket_gen(x, y), &g).unwrap();
                            let mut rhs = t.act(x, &t.act(y, &g).unwrap()).unwrap();
                            rhs.add_scaled(&t.act(y, &t.act(x, &g).unwrap()).unwrap(), &-Scalar::ONE);
                            assert_eq!(lhs, rhs, "{fam} m={m} [{x},{y}]");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn relabeling_equivariance() {
        let hw = generic_hw();
        let tp = TensorParams::new(vec![om(2), om(5)], hw).unwrap();
        let t = TensorModule::new(tp.clone());
        let ts = TensorModule::new(tp.permuted(&[1, 0]));
        let swap = |g: &TensorElement| g.map_keys(|(e, w)| (vec![e[1], e[0], e[3], e[2]], w.clone()));
        for g in sample_elements(2) {
            for x in Generator::all_up_to(2) {
                assert_eq!(swap(&t.act(x, &g).unwrap()), ts.act(x, &swap(&g)).unwrap());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn d_raises_degree(pe in 0u32..3, qe in 0u32..3, extra in 0i64..3, fam in 0usize..3) {
            let f = FamilyParams::new(Family::ALL[fam], Scalar::int(2), Scalar::int(3), Scalar::ratio(1, 3), Scalar::int(1)).unwrap();
            let t = TensorModule::new(TensorParams::new(vec![f], generic_hw()).unwrap());
            let g = parse_element(&alloc::format!("s1^{pe}*t1^{qe} (x) [d[-1] . vh] ; t1 (x) vh"), 1).unwrap();
            let i = t.annihilation_bound(&g).unwrap() + extra;
            let dg = t.act(Generator::d(i), &g).unwrap();
            prop_assert!(degree(&dg) > degree(&g));
        }

        #[test]
        fn act_linear(x in (0usize..5, -2i64..=2), c in -3i64..=3) {
            let gen = Generator::new(Kind::ALL[x.0], x.1);
            let t = TensorModule::new(TensorParams::new(vec![om(2), om(3)], generic_hw()).unwrap());
            let els = sample_elements(2);
            let mut sum = els[1].clone();
            sum.add_scaled(&els[2], &Scalar::int(c));
            let mut expect = t.act(gen, &els[1]).unwrap();
            expect.add_scaled(&t.act(gen, &els[2]).unwrap(), &Scalar::int(c));
            prop_assert_eq!(t.act(gen, &sum).unwrap(), expect);
        }
    }
}
