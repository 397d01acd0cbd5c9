//! Recovery of the coefficients of `(-1)^x i^x λ_k^i` in `h_i g`, `d_i g`,
//! `e_i g` and `f_i g` from exact samples over a window of modes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{check_lambdas, AnalysisError};
use crate::exact::{Matrix, Scalar, Solution};
use crate::liealg::Generator;
use crate::polymod::Family;
use crate::tensor::{max_level, max_s_powers, mul_s, mul_t, TensorElement, TensorKey, TensorModule};

/// Coefficient elements keyed by `(power of i, slot)`, slots 0-indexed.
pub type CoefficientMap = BTreeMap<(u32, usize), TensorElement>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractionResult {
    /// First sampled mode.
    pub start: i64,
    /// Number of sampled modes.
    pub samples: usize,
    /// From `h_i g`: `a_{x,k}`, `x <= P_k`.
    pub a: CoefficientMap,
    /// From `d_i g`: `b_{y,k}`, `y <= P_k + 1`.
    pub b: CoefficientMap,
    /// From `e_i g` (`Ω`, `Θ`) or `f_i g` (`Δ`), divided by `α_k`.
    pub c: CoefficientMap,
    /// `Θ` only: from `f_i g`, multiplied by `-α_k`.
    pub c_dual: CoefficientMap,
}

impl ExtractionResult {
    /// Every extracted element, in a fixed order.
    pub fn elements(&self) -> impl Iterator<Item = &TensorElement> {
        self.a.values().chain(self.b.values()).chain(self.c.values()).chain(self.c_dual.values())
    }
}

/// First mode at which `h_i, e_i, f_i` and `d_i` all kill the
/// highest-weight components of `g`.
pub fn sample_start(module: &TensorModule, g: &TensorElement) -> Result<i64, AnalysisError> {
    Ok(module.annihilation_bound(g)?.max(i64::from(max_level(g)) + 1))
}

/// `D = Σ_k (P_k + 2) + m + 1`.
pub fn sample_count(g: &TensorElement, m: usize) -> usize {
    max_s_powers(g, m).iter().map(|&p| p as usize + 2).sum::<usize>() + m + 1
}

pub(crate) fn check_family(module: &TensorModule) -> Result<Family, AnalysisError> {
    let params = module.params();
    let expected = params.family();
    match params.factors.iter().enumerate().find(|(_, f)| f.family != expected) {
        Some((slot, f)) => Err(AnalysisError::MixedFamilies { slot, expected, found: f.family }),
        None => Ok(expected),
    }
}

/// Solves `Σ_{k,x} (-1)^x i^x λ_k^i X_{x,k} = op(i) g` for `i` in the window.
fn solve_coefficients(
    module: &TensorModule,
    op: fn(i64) -> Generator,
    g: &TensorElement,
    max_power: &[u32],
    start: i64,
    count: usize,
) -> Result<CoefficientMap, AnalysisError> {
    let lambdas: Vec<&Scalar> = module.params().factors.iter().map(|f| &f.lambda).collect();
    let unknowns: Vec<(u32, usize)> =
        max_power.iter().enumerate().flat_map(|(k, &d)| (0..=d).map(move |x| (x, k))).collect();
    let mut images = Vec::with_capacity(count);
    let mut keys: BTreeMap<TensorKey, usize> = BTreeMap::new();
    for n in 0..count {
        let img = module.act(op(start + n as i64), g)?;
        for key in img.keys() {
            let next = keys.len();
            keys.entry(key.clone()).or_insert(next);
        }
        images.push(img);
    }
    let a = Matrix::from_fn(count, unknowns.len(), |row, col| {
        let i = start + row as i64;
        let (x, k) = unknowns[col];
        let sign = if x % 2 == 0 { Scalar::ONE } else { -Scalar::ONE };
        sign * Scalar::int(i).pow(i64::from(x)) * lambdas[k].pow(i)
    });
    let mut rhs = Matrix::zeros(count, keys.len());
    for (row, img) in images.iter().enumerate() {
        for (key, c) in img {
            rhs[(row, keys[key])] = c.clone();
        }
    }
    let inconsistent = AnalysisError::Inconsistent { start, end: start + count as i64 };
    let x = match a.solve_many(&rhs).expect("matching row counts") {
        Solution::Unique(x) => x,
        _ => return Err(inconsistent),
    };
    let mut out = CoefficientMap::new();
    for (row, u) in unknowns.iter().enumerate() {
        let elem: TensorElement = keys.iter().map(|(key, &col)| (key.clone(), x[(row, col)].clone())).collect();
        out.insert(*u, elem);
    }
    Ok(out)
}

fn scaled(map: CoefficientMap, factor: impl Fn(usize) -> Scalar) -> CoefficientMap {
    map.into_iter().map(|((x, k), v)| ((x, k), v.scale(&factor(k)))).collect()
}

/// `a_{x,k}`, `b_{y,k}` and `c_{z,k}` of `g`, cross-validated against
/// `a_{0,k} = t_k g`, `b_{0,k} = s_k g` and the closed form of `a_{P_k,k}`.
pub fn extract_coefficients(module: &TensorModule, g: &TensorElement) -> Result<ExtractionResult, AnalysisError> {
    let params = module.params();
    let m = params.m();
    check_lambdas(&params.factors.iter().map(|f| &f.lambda).collect::<Vec<_>>())?;
    let family = check_family(module)?;
    let p = max_s_powers(g, m);
    let p1: Vec<u32> = p.iter().map(|x| x + 1).collect();
    let start = sample_start(module, g)?;
    let samples = sample_count(g, m);

    let a = solve_coefficients(module, Generator::h, g, &p, start, samples)?;
    let b = solve_coefficients(module, Generator::d, g, &p1, start, samples)?;
    let inv_alpha = |k: usize| params.factors[k].alpha.inv();
    let (c, c_dual) = match family {
        Family::Omega => (scaled(solve_coefficients(module, Generator::e, g, &p, start, samples)?, inv_alpha), BTreeMap::new()),
        Family::Delta => (scaled(solve_coefficients(module, Generator::f, g, &p, start, samples)?, inv_alpha), BTreeMap::new()),
        Family::Theta => (
            scaled(solve_coefficients(module, Generator::e, g, &p, start, samples)?, inv_alpha),
            scaled(solve_coefficients(module, Generator::f, g, &p, start, samples)?, |k| -&params.factors[k].alpha),
        ),
    };

    for k in 0..m {
        if a[&(0, k)] != mul_t(g, m, k) {
            return Err(AnalysisError::CrossCheck("a_{0,k} = t_k g"));
        }
        if b[&(0, k)] != mul_s(g, m, k) {
            return Err(AnalysisError::CrossCheck("b_{0,k} = s_k g"));
        }
        let top: TensorElement = g
            .iter()
            .filter(|((e, _), _)| e[k] == p[k])
            .map(|((e, w), c)| {
                let mut e = e.clone();
                e[k] = 0;
                e[k + m] += 1;
                ((e, w.clone()), c.clone())
            })
            .collect();
        if a[&(p[k], k)] != top {
            return Err(AnalysisError::CrossCheck("a_{P_k,k}"));
        }
    }
    Ok(ExtractionResult { start, samples, a, b, c, c_dual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hwmod::{vh, HwParams, PbwMonomial};
    use crate::polymod::{FamilyParams, Poly2};
    use crate::tensor::{basis_tensor, mul_slot_poly, one_vh, with_hw, TensorParams};
    use alloc::vec;

    fn module(family: Family, lambdas: &[i64], hw: HwParams) -> TensorModule {
        let factors = lambdas.iter().enumerate().map(|(k, &l)| FamilyParams::ints(family, l, 2 + k as i64, 1, 1 - k as i64)).collect();
        TensorModule::new(TensorParams::new(factors, hw).unwrap())
    }

    #[test]
    fn degree_zero_seed_omega() {
        let t = module(Family::Omega, &[2], HwParams::trivial(2, 2));
        let g = one_vh(1);
        let r = extract_coefficients(&t, &g).unwrap();
        assert_eq!(r.a[&(0, 0)], basis_tensor(vec![0, 1], PbwMonomial::vh()));
        assert_eq!(r.c[&(0, 0)], g);
        assert_eq!(r.b[&(1, 0)], g.scale(&Scalar::int(-1)));
    }

    #[test]
    fn top_coefficient_drops_s() {
        let t = module(Family::Omega, &[3], HwParams::trivial(2, 2));
        let g = basis_tensor(vec![1, 0], PbwMonomial::vh());
        let r = extract_coefficients(&t, &g).unwrap();
        assert_eq!(r.a[&(1, 0)], basis_tensor(vec![0, 1], PbwMonomial::vh()));
    }

    /// `g` with `t_k^q` replaced by `pre(t_k) (t_k + dt)^q` in slot `k`.
    fn shifted(g: &TensorElement, m: usize, k: usize, dt: i64, pre: &Poly2) -> TensorElement {
        g.flat_map(|(e, w)| {
            let q = Poly2::monomial(0, e[k + m]).shift_sub(&Scalar::ZERO, &Scalar::int(dt)).mul(pre);
            let mut base = e.clone();
            base[k + m] = 0;
            mul_slot_poly(&basis_tensor(base, w.clone()), m, k, &q)
        })
    }

    #[test]
    fn c_matches_shifted_polynomial() {
        let half_t = |b: Scalar| {
            let mut p = Poly2::term(0, 1, Scalar::ratio(1, 2));
            p.add_term(0, 0, b);
            p
        };
        for family in Family::ALL {
            let t = module(family, &[2, -1], HwParams::new(1.into(), 3.into(), Scalar::ratio(1, 2), 2, 2));
            let mut g = mul_slot_poly(&with_hw(&[0, 0, 0, 0], &vh()), 2, 1, &"t^2 - 3*t".parse::<Poly2>().unwrap());
            g.add_term((vec![0, 0, 2, 1], PbwMonomial::single(Generator::f(-1))), Scalar::int(5));
            let r = extract_coefficients(&t, &g).unwrap();
            for k in 0..2 {
                let beta = &t.params().factors[k].beta;
                match family {
                    Family::Omega => assert_eq!(r.c[&(0, k)], shifted(&g, 2, k, -2, &Poly2::one())),
                    Family::Delta => assert_eq!(r.c[&(0, k)], shifted(&g, 2, k, 2, &Poly2::one())),
                    Family::Theta => {
                        assert_eq!(r.c[&(0, k)], shifted(&g, 2, k, -2, &half_t(beta.clone())));
                        assert_eq!(r.c_dual[&(0, k)], shifted(&g, 2, k, 2, &half_t(-beta)));
                    }
                }
            }
        }
    }

    #[test]
    fn repeated_lambda_is_rejected() {
        let t = module(Family::Delta, &[2, 2], HwParams::trivial(1, 1));
        assert_eq!(extract_coefficients(&t, &one_vh(2)), Err(AnalysisError::RepeatedLambda(0, 1)));
    }
}
