//! Cyclic submodules approximated inside a finite window of `T^M`.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::extract::extract_coefficients;
use super::AnalysisError;
use crate::exact::EchelonBasis;
use crate::liealg::Generator;
use crate::tensor::{TensorElement, TensorKey, TensorModule};

/// Exponent and level cutoffs of a closure search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    /// Largest exponent of each `s_k`.
    pub max_p: u32,
    /// Largest exponent of each `t_k`.
    pub max_q: u32,
    /// Largest level of the highest-weight part.
    pub max_level: u32,
    /// Generators with `|mode| <= mode_bound` are applied.
    pub mode_bound: i64,
    /// The search stops unstabilized once the basis exceeds this size.
    pub max_dim: usize,
}

impl Window {
    pub fn contains(&self, g: &TensorElement) -> bool {
        g.keys().all(|(e, w)| {
            let m = e.len() / 2;
            e[..m].iter().all(|&p| p <= self.max_p) && e[m..].iter().all(|&q| q <= self.max_q) && w.level() <= self.max_level
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClosureBasis {
    /// Linearly independent elements in discovery order.
    pub basis: Vec<TensorElement>,
    pub window: Window,
    /// Whether every in-window image of every basis element lies in the span.
    pub stabilized: bool,
    /// Number of images discarded for leaving the window.
    pub dropped: usize,
    echelon: EchelonBasis<TensorKey>,
}

impl ClosureBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, g: &TensorElement) -> bool {
        self.echelon.contains(g)
    }
}

/// Closes `seed` under the generators of the window and, when the `λ_k` are
/// distinct, under the coefficient elements of [`extract_coefficients`]
/// (which supply the multiplications by `s_k`, `t_k`).
pub fn cyclic_closure(module: &TensorModule, seed: &TensorElement, window: Window) -> Result<ClosureBasis, AnalysisError> {
    let gens = Generator::all_up_to(window.mode_bound);
    let extract = module.params().lambdas_distinct() && super::extract::check_family(module).is_ok();
    let mut out = ClosureBasis { basis: Vec::new(), window, stabilized: true, dropped: 0, echelon: EchelonBasis::new() };
    let mut queue = VecDeque::new();
    let offer = |out: &mut ClosureBasis, queue: &mut VecDeque<TensorElement>, v: TensorElement| {
        if v.is_zero() {
            return;
        }
        if !window.contains(&v) {
            out.dropped += 1;
        } else if out.echelon.insert(&v) {
            out.basis.push(v.clone());
            queue.push_back(v);
        }
    };
    offer(&mut out, &mut queue, seed.clone());
    while let Some(v) = queue.pop_front() {
        if out.basis.len() > window.max_dim {
            out.stabilized = false;
            break;
        }
        for &x in &gens {
            match module.act(x, &v) {
                Ok(img) => offer(&mut out, &mut queue, img),
                Err(_) => out.dropped += 1,
            }
        }
        if extract {
            match extract_coefficients(module, &v) {
                Ok(r) => {
                    for img in r.elements() {
                        offer(&mut out, &mut queue, img.clone());
                    }
                }
                Err(AnalysisError::Truncation(_)) => out.dropped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}
