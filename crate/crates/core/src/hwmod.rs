//! Highest-weight modules: the Verma module with its PBW basis and the
//! irreducible quotient by the radical of the contravariant form, both
//! truncated to a window of levels and `f_0`-powers.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use core::str::FromStr;

use crate::exact::{LinComb, Matrix, Scalar, Solution};
use crate::liealg::{bracket_gen, Generator, Kind, Part};
use crate::text::{write_sum, ParseError};

/// Highest weight `(η, ε, θ)` and the truncation window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HwParams {
    pub eta: Scalar,
    pub eps: Scalar,
    pub theta: Scalar,
    /// Largest level kept.
    pub level_cutoff: u32,
    /// Largest power of `f_0` kept.
    pub f0_cutoff: u32,
}

impl HwParams {
    pub fn new(eta: Scalar, eps: Scalar, theta: Scalar, level_cutoff: u32, f0_cutoff: u32) -> Self {
        HwParams { eta, eps, theta, level_cutoff, f0_cutoff }
    }

    pub fn trivial(level_cutoff: u32, f0_cutoff: u32) -> Self {
        Self::new(Scalar::ZERO, Scalar::ZERO, Scalar::ZERO, level_cutoff, f0_cutoff)
    }

    pub fn is_trivial_weight(&self) -> bool {
        self.eta.is_zero() && self.eps.is_zero() && self.theta.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HwError {
    #[error("truncation: result reaches level {level} beyond cutoff {cutoff}")]
    LevelCutoff { level: u32, cutoff: u32 },
    #[error("truncation: result reaches f0-power {power} beyond cutoff {cutoff}")]
    F0Cutoff { power: u32, cutoff: u32 },
    #[error("truncation: vector at level {level}, h0-charge {charge} has no image among the window basis")]
    OutsideWindow { level: u32, charge: i64 },
}

/// Position of a generator in the PBW word
/// `f_{-q}..f_0 e_{-p}..e_{-1} h_{-m}..h_{-1} d_{-n}..d_{-1}`.
fn pbw_key(g: Generator) -> (u8, i64) {
    let rank = match g.kind() {
        Kind::F => 0,
        Kind::E => 1,
        Kind::H => 2,
        Kind::D => 3,
        Kind::C => 4,
    };
    (rank, g.mode())
}

/// A PBW word applied to `v_h`; the empty word is `v_h` itself.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwMonomial {
    factors: Vec<(Generator, u32)>,
}

impl PbwMonomial {
    pub fn vh() -> Self {
        Self::default()
    }

    /// Builds the word from factors in any order; panics on a
    /// non-negative generator.
    pub fn new(factors: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut merged: BTreeMap<(u8, i64), (Generator, u32)> = BTreeMap::new();
        for (g, e) in factors {
            assert!(g.triangular_part() == Part::Negative, "{g} is not a negative generator");
            if e > 0 {
                merged.entry(pbw_key(g)).or_insert((g, 0)).1 += e;
            }
        }
        PbwMonomial { factors: merged.into_values().collect() }
    }

    pub fn single(g: Generator) -> Self {
        Self::new([(g, 1)])
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_vh(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn level(&self) -> u32 {
        self.factors.iter().map(|(g, e)| g.mode().unsigned_abs() as u32 * e).sum()
    }

    /// `ΣE - ΣF`; the `h_0`-weight is `ε + 2 * charge`.
    pub fn charge(&self) -> i64 {
        self.factors
            .iter()
            .map(|(g, e)| match g.kind() {
                Kind::E => *e as i64,
                Kind::F => -(*e as i64),
                _ => 0,
            })
            .sum()
    }

    pub fn f0_power(&self) -> u32 {
        self.factors.iter().find(|(g, _)| *g == Generator::f(0)).map_or(0, |(_, e)| *e)
    }

    /// Number of factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    fn first(&self) -> Option<Generator> {
        self.factors.first().map(|(g, _)| *g)
    }

    /// `(y, m')` with `self = y m'`.
    fn split_first(&self) -> (Generator, PbwMonomial) {
        let mut rest = self.factors.clone();
        let y = rest[0].0;
        if rest[0].1 == 1 {
            rest.remove(0);
        } else {
            rest[0].1 -= 1;
        }
        (y, PbwMonomial { factors: rest })
    }

    /// `x self` for negative `x` not after the first factor.
    fn prepend(&self, x: Generator) -> PbwMonomial {
        let mut f = self.factors.clone();
        match f.first_mut() {
            Some((g, e)) if *g == x => *e += 1,
            _ => f.insert(0, (x, 1)),
        }
        PbwMonomial { factors: f }
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, e) in &self.factors {
            write!(f, "{g}^{e} ")?;
        }
        if self.is_vh() {
            f.write_str("vh")
        } else {
            f.write_str(". vh")
        }
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PbwMonomial {
    type Err = ParseError;

    /// Accepts `"f[-2]^1 f[0]^2 . vh"`, `"vh"`, and omitted `^1`; factors
    /// must appear in PBW order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let body = match s.strip_suffix("vh") {
            Some(b) => b.trim_end(),
            None => return Err(ParseError::new(s.len(), "expected trailing vh")),
        };
        let body = body.strip_suffix('.').unwrap_or(body).trim();
        let mut factors = Vec::new();
        for tok in body.split_whitespace() {
            let (g, e) = match tok.split_once('^') {
                Some((g, e)) => (g, e.parse::<u32>().map_err(|_| ParseError::new(0, "invalid exponent"))?),
                None => (tok, 1),
            };
            let g: Generator = g.parse()?;
            if g.triangular_part() != Part::Negative {
                return Err(ParseError::new(0, alloc::format!("{g} is not a negative generator")));
            }
            factors.push((g, e));
        }
        let keys: Vec<_> = factors.iter().map(|(g, _)| pbw_key(*g)).collect();
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ParseError::new(0, "factors are not in PBW order"));
        }
        Ok(PbwMonomial::new(factors))
    }
}

/// Element of a highest-weight module as a combination of PBW words.
pub type HwElement = LinComb<PbwMonomial>;

impl fmt::Display for LinComb<PbwMonomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.iter().map(|(m, c)| (alloc::format!("[{m}]"), c)))
    }
}

pub fn vh() -> HwElement {
    LinComb::basis(PbwMonomial::vh())
}

/// Every negative-mode word of exactly the given level (no `f_0`).
pub fn words_of_level(level: u32) -> Vec<PbwMonomial> {
    let mut gens = Vec::new();
    for m in 1..=level as i64 {
        for k in [Kind::F, Kind::E, Kind::H, Kind::D] {
            gens.push(Generator::new(k, -m));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(gens: &[Generator], idx: usize, left: u32, cur: &mut Vec<(Generator, u32)>, out: &mut Vec<PbwMonomial>) {
        if left == 0 {
            out.push(PbwMonomial::new(cur.iter().copied()));
            return;
        }
        if idx == gens.len() {
            return;
        }
        let g = gens[idx];
        let w = g.mode().unsigned_abs() as u32;
        let mut e = 0;
        while e * w <= left {
            if e > 0 {
                cur.push((g, e));
            }
            rec(gens, idx + 1, left - e * w, cur, out);
            if e > 0 {
                cur.pop();
            }
            e += 1;
        }
    }
    rec(&gens, 0, level, &mut cur, &mut out);
    out.sort();
    out
}

/// All PBW words of the given level and `h_0`-charge, without any `f_0`
/// cutoff. The space is finite: the `f_0`-power is `ΣE - ΣF_{<0} - charge`.
pub fn complete_weight_space(level: u32, charge: i64) -> Vec<PbwMonomial> {
    let mut out: Vec<PbwMonomial> = words_of_level(level)
        .into_iter()
        .filter_map(|w| {
            let f0 = w.charge() - charge;
            (f0 >= 0).then(|| {
                let mut fs = w.factors.clone();
                fs.push((Generator::f(0), f0 as u32));
                PbwMonomial::new(fs)
            })
        })
        .collect();
    out.sort();
    out
}

/// Which module the highest-weight factor is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HwKind {
    /// The Verma module itself.
    Verma,
    /// The irreducible quotient by the radical of the contravariant form.
    Irreducible,
}

/// Per-weight-space data of the irreducible quotient.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub level: u32,
    pub charge: i64,
    /// Full weight space (no `f_0` cutoff); rows of the Gram data.
    pub complete: Vec<PbwMonomial>,
    /// Window monomials (`f_0`-power within the cutoff).
    pub window: Vec<PbwMonomial>,
    /// Window monomials whose images form a basis of the quotient piece.
    pub basis: Vec<PbwMonomial>,
    /// Radical restricted to the window span.
    pub radical: Vec<HwElement>,
    gram_basis: Matrix,
}

/// Serializable summary of one weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpaceReport {
    pub level: u32,
    pub h0_weight: Scalar,
    pub dimension: usize,
    pub radical_dimension: usize,
    pub basis: Vec<PbwMonomial>,
}

/// A truncated highest-weight module with memoized normal ordering.
pub struct HwModule {
    params: HwParams,
    kind: HwKind,
    /// Skips the Gram computation when `(η, ε, θ) = 0` in the irreducible
    /// case, where the quotient is the one-dimensional trivial module.
    trivial_shortcut: bool,
    act_cache: RefCell<BTreeMap<(Generator, PbwMonomial), HwElement>>,
    form_cache: RefCell<BTreeMap<(PbwMonomial, PbwMonomial), Scalar>>,
    spaces: RefCell<BTreeMap<(u32, i64), QuotientSpace>>,
}

impl HwModule {
    pub fn new(params: HwParams, kind: HwKind) -> Self {
        let trivial_shortcut = kind == HwKind::Irreducible && params.is_trivial_weight();
        HwModule {
            params,
            kind,
            trivial_shortcut,
            act_cache: RefCell::new(BTreeMap::new()),
            form_cache: RefCell::new(BTreeMap::new()),
            spaces: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn verma(params: HwParams) -> Self {
        Self::new(params, HwKind::Verma)
    }

    pub fn irreducible(params: HwParams) -> Self {
        Self::new(params, HwKind::Irreducible)
    }

    /// Same as [`HwModule::irreducible`] but always goes through the Gram
    /// radical, even for the trivial weight.
    pub fn irreducible_via_gram(params: HwParams) -> Self {
        let mut m = Self::new(params, HwKind::Irreducible);
        m.trivial_shortcut = false;
        m
    }

    pub fn params(&self) -> &HwParams {
        &self.params
    }

    pub fn kind(&self) -> HwKind {
        self.kind
    }

    /// Whether the module is one-dimensional with every generator acting by 0.
    pub fn is_trivial(&self) -> bool {
        self.trivial_shortcut
    }

    fn cartan_scalar(&self, x: Generator, m: &PbwMonomial) -> Scalar {
        match x.kind() {
            Kind::D => &self.params.eta - &Scalar::int(m.level() as i64),
            Kind::H => &self.params.eps + &Scalar::int(2 * m.charge()),
            Kind::C => self.params.theta.clone(),
            _ => unreachable!(),
        }
    }

    /// `x m` in the untruncated Verma module, rewritten to the PBW basis.
    pub fn verma_act_mono(&self, x: Generator, m: &PbwMonomial) -> HwElement {
        if x.triangular_part() == Part::Cartan {
            return LinComb::term(m.clone(), self.cartan_scalar(x, m));
        }
        let key = (x, m.clone());
        if let Some(v) = self.act_cache.borrow().get(&key) {
            return v.clone();
        }
        let out = match m.first() {
            None if x.triangular_part() == Part::Positive => LinComb::zero(),
            None => LinComb::basis(PbwMonomial::single(x)),
            Some(y) if x.triangular_part() == Part::Negative && pbw_key(x) <= pbw_key(y) => LinComb::basis(m.prepend(x)),
            Some(_) => {
                // x y m' = y (x m') + [x, y] m'
                let (y, rest) = m.split_first();
                let mut out = self.verma_act(y, &self.verma_act_mono(x, &rest));
                for (z, c) in &bracket_gen(x, y) {
                    out.add_scaled(&self.verma_act_mono(*z, &rest), c);
                }
                out
            }
        };
        self.act_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// Linear extension of [`HwModule::verma_act_mono`].
    pub fn verma_act(&self, x: Generator, v: &HwElement) -> HwElement {
        v.flat_map(|m| self.verma_act_mono(x, m))
    }

    /// `⟨u, w⟩`: the `v_h`-coefficient of `ω(u) w`, normalized by `⟨v_h, v_h⟩ = 1`.
    pub fn form_mono(&self, u: &PbwMonomial, w: &PbwMonomial) -> Scalar {
        if u.level() != w.level() || u.charge() != w.charge() {
            return Scalar::ZERO;
        }
        let key = (u.clone(), w.clone());
        if let Some(v) = self.form_cache.borrow().get(&key) {
            return v.clone();
        }
        let mut cur = LinComb::basis(w.clone());
        for (y, e) in u.factors() {
            let oy = y.anti_involution();
            for _ in 0..*e {
                cur = self.verma_act(oy, &cur);
            }
        }
        let out = cur.coeff(&PbwMonomial::vh());
        self.form_cache.borrow_mut().insert(key, out.clone());
        out
    }

    /// Bilinear extension of [`HwModule::form_mono`].
    pub fn form(&self, u: &HwElement, w: &HwElement) -> Scalar {
        let mut out = Scalar::ZERO;
        for (mu, cu) in u {
            for (mw, cw) in w {
                out += &(cu * cw) * &self.form_mono(mu, mw);
            }
        }
        out
    }

    fn charge_of(&self, h0wt: &Scalar) -> Option<i64> {
        let c = (h0wt - &self.params.eps) * Scalar::ratio(1, 2);
        c.to_i64()
    }

    /// Window basis monomials of the given level and `h_0`-weight.
    pub fn weight_space(&self, level: u32, h0wt: &Scalar) -> Vec<PbwMonomial> {
        match self.charge_of(h0wt) {
            Some(c) => self.window_monomials(level, c),
            None => Vec::new(),
        }
    }

    fn window_monomials(&self, level: u32, charge: i64) -> Vec<PbwMonomial> {
        complete_weight_space(level, charge).into_iter().filter(|m| m.f0_power() <= self.params.f0_cutoff).collect()
    }

    /// Gram matrix of the window basis of a weight space.
    pub fn gram_matrix(&self, level: u32, h0wt: &Scalar) -> Matrix {
        let ws = self.weight_space(level, h0wt);
        Matrix::from_fn(ws.len(), ws.len(), |a, b| self.form_mono(&ws[a], &ws[b]))
    }

    /// Weight spaces `(level, charge)` meeting the window.
    pub fn window_weights(&self) -> Vec<(u32, i64)> {
        let mut out = Vec::new();
        for level in 0..=self.params.level_cutoff {
            let lo = -(self.params.f0_cutoff as i64) - level as i64;
            for c in lo..=level as i64 {
                if !self.window_monomials(level, c).is_empty() {
                    out.push((level, c));
                }
            }
        }
        out
    }

    /// Quotient data of one weight space, computed on first use.
    pub fn quotient_space(&self, level: u32, charge: i64) -> QuotientSpace {
        if let Some(q) = self.spaces.borrow().get(&(level, charge)) {
            return q.clone();
        }
        let complete = complete_weight_space(level, charge);
        let window = self.window_monomials(level, charge);
        let q = if self.trivial_shortcut {
            let basis = if level == 0 && charge == 0 { window.clone() } else { Vec::new() };
            let radical = window.iter().filter(|m| !m.is_vh()).map(|m| LinComb::basis(m.clone())).collect();
            let gram_basis = Matrix::zeros(complete.len(), basis.len());
            QuotientSpace { level, charge, complete, window, basis, radical, gram_basis }
        } else {
            let g = Matrix::from_fn(complete.len(), window.len(), |a, b| self.form_mono(&complete[a], &window[b]));
            let rref = g.rref();
            let basis: Vec<PbwMonomial> = rref.pivots.iter().map(|&j| window[j].clone()).collect();
            let radical = g
                .kernel()
                .into_iter()
                .map(|v| window.iter().cloned().zip(v).collect::<HwElement>())
                .collect();
            let gram_basis = Matrix::from_fn(complete.len(), basis.len(), |a, b| g[(a, rref.pivots[b])].clone());
            QuotientSpace { level, charge, complete, window, basis, radical, gram_basis }
        };
        self.spaces.borrow_mut().insert((level, charge), q.clone());
        q
    }

    /// Per-weight-space summary of the truncated module.
    pub fn weight_reports(&self) -> Vec<WeightSpaceReport> {
        self.window_weights()
            .into_iter()
            .map(|(level, c)| {
                let h0_weight = &self.params.eps + &Scalar::int(2 * c);
                match self.kind {
                    HwKind::Verma => {
                        let basis = self.window_monomials(level, c);
                        WeightSpaceReport { level, h0_weight, dimension: basis.len(), radical_dimension: 0, basis }
                    }
                    HwKind::Irreducible => {
                        let q = self.quotient_space(level, c);
                        WeightSpaceReport {
                            level,
                            h0_weight,
                            dimension: q.basis.len(),
                            radical_dimension: q.radical.len(),
                            basis: q.basis,
                        }
                    }
                }
            })
            .collect()
    }

    /// Total dimension of the truncated module.
    pub fn truncated_dimension(&self) -> usize {
        self.weight_reports().iter().map(|r| r.dimension).sum()
    }

    /// Rewrites an element of the Verma module into the module's normal form,
    /// failing loudly when it leaves the window.
    pub fn normalize(&self, v: &HwElement) -> Result<HwElement, HwError> {
        let cutoff = self.params.level_cutoff;
        let mut by_weight: BTreeMap<(u32, i64), HwElement> = BTreeMap::new();
        for (m, c) in v {
            let level = m.level();
            if self.trivial_shortcut {
                if m.is_vh() {
                    by_weight.entry((0, 0)).or_default().add_term(m.clone(), c.clone());
                }
                continue;
            }
            if level > cutoff {
                return Err(HwError::LevelCutoff { level, cutoff });
            }
            if self.kind == HwKind::Verma && m.f0_power() > self.params.f0_cutoff {
                return Err(HwError::F0Cutoff { power: m.f0_power(), cutoff: self.params.f0_cutoff });
            }
            by_weight.entry((level, m.charge())).or_default().add_term(m.clone(), c.clone());
        }
        if self.kind == HwKind::Verma || self.trivial_shortcut {
            return Ok(by_weight.into_values().fold(LinComb::zero(), |acc, w| &acc + &w));
        }
        let mut out = LinComb::zero();
        for ((level, charge), w) in by_weight {
            let q = self.quotient_space(level, charge);
            let col: Vec<Scalar> = q.complete.iter().map(|u| self.form(&LinComb::basis(u.clone()), &w)).collect();
            if col.iter().all(Scalar::is_zero) {
                continue;
            }
            let x = match q.gram_basis.solve(&col).expect("gram dimensions") {
                Solution::Unique(x) => x,
                _ => return Err(HwError::OutsideWindow { level, charge }),
            };
            for (b, c) in q.basis.iter().zip(x) {
                out.add_term(b.clone(), c);
            }
        }
        Ok(out)
    }

    /// `x v` in the truncated module; `v` is assumed to be in normal form.
    pub fn act(&self, x: Generator, v: &HwElement) -> Result<HwElement, HwError> {
        if self.trivial_shortcut {
            return Ok(LinComb::zero());
        }
        self.normalize(&self.verma_act(x, v))
    }

    pub fn act_mono(&self, x: Generator, m: &PbwMonomial) -> Result<HwElement, HwError> {
        self.act(x, &LinComb::basis(m.clone()))
    }

    /// Checks that `x r` stays in the radical for every radical vector `r` in
    /// the window and every `x` in `gens`; returns the first failure.
    pub fn check_radical_invariance(&self, gens: &[Generator]) -> Result<usize, String> {
        let mut checked = 0;
        for (level, c) in self.window_weights() {
            let q = self.quotient_space(level, c);
            for r in &q.radical {
                for &x in gens {
                    let img = self.verma_act(x, r);
                    if img.is_zero() {
                        checked += 1;
                        continue;
                    }
                    let m0 = img.first_key().unwrap();
                    for u in complete_weight_space(m0.level(), m0.charge()) {
                        if !self.form(&LinComb::basis(u.clone()), &img).is_zero() {
                            return Err(alloc::format!("{x} maps radical vector {r} outside the radical (pairs with {u})"));
                        }
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }
}

impl fmt::Debug for HwModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HwModule").field("params", &self.params).field("kind", &self.kind).finish()
    }
}

impl Clone for HwModule {
    fn clone(&self) -> Self {
        let mut m = HwModule::new(self.params.clone(), self.kind);
        m.trivial_shortcut = self.trivial_shortcut;
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::HH_SIGN;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn generic() -> HwParams {
        HwParams::new(Scalar::int(1), Scalar::int(3), Scalar::ratio(1, 2), 3, 2)
    }

    fn mono(s: &str) -> PbwMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn wall_actions() {
        let p = generic();
        let v = HwModule::verma(p.clone());
        assert_eq!(v.act(Generator::d(0), &vh()).unwrap(), LinComb::term(PbwMonomial::vh(), p.eta.clone()));
        let fm1 = LinComb::basis(mono("f[-1]^1 . vh"));
        assert_eq!(v.act(Generator::e(1), &fm1).unwrap(), LinComb::term(PbwMonomial::vh(), &p.eps + &p.theta));
        let f0 = LinComb::basis(mono("f[0]^1 . vh"));
        assert!(v.act(Generator::h(1), &f0).unwrap().is_zero());
        for i in 0..4 {
            assert!(v.act(Generator::e(i), &vh()).unwrap().is_zero());
        }
    }

    #[test]
    fn truncation_is_loud() {
        let v = HwModule::verma(HwParams::new(Scalar::ONE, Scalar::ONE, Scalar::ONE, 1, 1));
        let w = LinComb::basis(mono("d[-1]^1 . vh"));
        assert_eq!(v.act(Generator::d(-1), &w), Err(HwError::LevelCutoff { level: 2, cutoff: 1 }));
        let f = LinComb::basis(mono("f[0]^1 . vh"));
        assert_eq!(v.act(Generator::f(0), &f), Err(HwError::F0Cutoff { power: 2, cutoff: 1 }));
    }

    #[test]
    fn weight_space_examples() {
        let v = HwModule::verma(generic());
        let eps = generic().eps;
        assert_eq!(v.weight_space(0, &eps), vec![PbwMonomial::vh()]);
        assert_eq!(v.weight_space(0, &(&eps - &Scalar::int(2))), vec![mono("f[0] . vh")]);
        let l1 = v.weight_space(1, &eps);
        assert!(l1.contains(&mono("d[-1] . vh")));
        assert!(l1.contains(&mono("h[-1] . vh")));
        assert!(l1.contains(&mono("f[0] e[-1] . vh")));
        assert_eq!(l1.len(), 3);
        assert!(v.weight_space(1, &(&eps + &Scalar::ONE)).is_empty());
    }

    #[test]
    fn gram_examples() {
        let p = generic();
        let v = HwModule::verma(p.clone());
        let d = mono("d[-1] . vh");
        let h = mono("h[-1] . vh");
        let f0 = mono("f[0] . vh");
        assert_eq!(v.form_mono(&d, &d), Scalar::int(-2) * &p.eta);
        assert_eq!(v.form_mono(&h, &h), Scalar::int(2 * HH_SIGN) * &p.theta);
        assert_eq!(v.form_mono(&f0, &f0), p.eps.clone());
        assert_eq!(v.form_mono(&d, &h), -&p.eps);
    }

    #[test]
    fn gram_symmetric() {
        let v = HwModule::verma(generic());
        for (level, c) in v.window_weights() {
            let h0 = &generic().eps + &Scalar::int(2 * c);
            assert!(v.gram_matrix(level, &h0).is_symmetric(), "level {level} charge {c}");
        }
    }

    #[test]
    fn trivial_quotient_is_one_dimensional() {
        for m in [HwModule::irreducible(HwParams::trivial(2, 2)), HwModule::irreducible_via_gram(HwParams::trivial(2, 2))] {
            assert_eq!(m.truncated_dimension(), 1);
            let reports = m.weight_reports();
            let r0 = reports.iter().find(|r| r.level == 0 && r.h0_weight.is_zero()).unwrap();
            assert_eq!(r0.basis, vec![PbwMonomial::vh()]);
        }
    }

    #[test]
    fn generic_level_one_nonsingular() {
        let p = generic();
        let v = HwModule::irreducible(p.clone());
        for c in -3..=1 {
            let h0 = &p.eps + &Scalar::int(2 * c);
            let g = v.gram_matrix(1, &h0);
            if g.rows() > 0 {
                assert!(!g.det().unwrap().is_zero(), "charge {c}");
            }
        }
    }

    #[test]
    fn radical_invariant_generic_and_integral() {
        let gens = Generator::all_up_to(2);
        for p in [generic(), HwParams::new(Scalar::ZERO, Scalar::ONE, Scalar::ONE, 2, 2), HwParams::trivial(2, 2)] {
            let m = HwModule::irreducible_via_gram(p);
            assert!(m.check_radical_invariance(&gens).is_ok());
        }
    }

    #[test]
    fn sl2_singular_vector_in_radical() {
        // ε = 1 gives f_0^2 v_h in the radical
        let m = HwModule::irreducible(HwParams::new(Scalar::int(2), Scalar::ONE, Scalar::int(3), 1, 3));
        let q = m.quotient_space(0, -2);
        assert!(q.basis.is_empty());
        assert_eq!(m.normalize(&LinComb::basis(mono("f[0]^2 . vh"))).unwrap(), LinComb::zero());
        let q1 = m.quotient_space(0, -1);
        assert_eq!(q1.basis.len(), 1);
    }

    #[test]
    fn high_modes_annihilate() {
        let v = HwModule::verma(generic());
        for m in [mono("d[-2] . vh"), mono("f[-1] h[-1] . vh"), mono("f[0]^2 e[-1] . vh")] {
            for i in m.level() as i64 + 1..m.level() as i64 + 4 {
                for g in [Generator::e(i), Generator::f(i), Generator::h(i), Generator::d(i)] {
                    assert!(v.verma_act_mono(g, &m).is_zero(), "{g} on {m}");
                }
            }
        }
    }

    #[test]
    fn text_format() {
        let m = mono("f[-2]^1 f[0]^2 h[-1]^1 d[-1]^3 . vh");
        assert_eq!(m.to_string(), "f[-2]^1 f[0]^2 h[-1]^1 d[-1]^3 . vh");
        assert_eq!(m.level(), 6);
        assert_eq!(m.charge(), -3);
        assert_eq!(PbwMonomial::vh().to_string(), "vh");
        assert_eq!(mono("vh"), PbwMonomial::vh());
        assert!("d[-1] f[0] . vh".parse::<PbwMonomial>().is_err());
        assert!("e[0] . vh".parse::<PbwMonomial>().is_err());
    }

    fn window_monos(p: &HwParams) -> Vec<PbwMonomial> {
        let m = HwModule::verma(p.clone());
        m.window_weights().into_iter().flat_map(|(l, c)| m.window_monomials(l, c)).collect()
    }

    #[test]
    fn module_axiom_exhaustive() {
        let p = HwParams::new(Scalar::int(1), Scalar::int(3), Scalar::ratio(1, 2), 3, 2);
        let v = HwModule::verma(p.clone());
        let gens = Generator::all_up_to(2);
        let monos: Vec<_> = window_monos(&p).into_iter().filter(|m| m.level() <= 2).collect();
        for m in &monos {
            let w = LinComb::basis(m.clone());
            for &x in &gens {
                for &y in &gens {
                    let lhs = bracket_gen(x, y).iter().fold(LinComb::zero(), |mut acc, (z, c)| {
                        acc.add_scaled(&v.verma_act(*z, &w), c);
                        acc
                    });
                    let mut rhs = v.verma_act(x, &v.verma_act(y, &w));
                    rhs.add_scaled(&v.verma_act(y, &v.verma_act(x, &w)), &-Scalar::ONE);
                    assert_eq!(lhs, rhs, "[{x}, {y}] on {m}");
                }
            }
        }
    }

    fn arb_gen() -> impl Strategy<Value = Generator> {
        (0usize..5, -3i64..=3).prop_map(|(k, m)| Generator::new(Kind::ALL[k], m))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn contravariance(x in arb_gen(), a in 0usize..40, b in 0usize..40) {
            let p = generic();
            let v = HwModule::verma(p.clone());
            let monos = window_monos(&p);
            let u = LinComb::basis(monos[a % monos.len()].clone());
            let w = LinComb::basis(monos[b % monos.len()].clone());
            let lhs = v.form(&v.verma_act(x, &u), &w);
            let rhs = v.form(&u, &v.verma_act(x.anti_involution(), &w));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
