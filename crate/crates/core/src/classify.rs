//! Parameter-level irreducibility and isomorphism criteria.

use alloc::vec::Vec;

use crate::exact::Scalar;
use crate::polymod::{Family, FamilyParams};
use crate::tensor::TensorParams;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("factor {slot} is reducible (Theta with 2*beta a non-negative integer)")]
    ReducibleFactor { slot: usize },
    #[error("lambda parameters of slots {0} and {1} coincide, so the tensor is reducible")]
    RepeatedLambda(usize, usize),
}

/// How a slot's parameters relate across an isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotRelation {
    Equal,
    /// `β' = -β - 1`, all other parameters equal (`Ω`, `Δ` only).
    BetaTwin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    /// Slot `k` of the first module matches slot `permutation[k]` of the second.
    pub permutation: Vec<usize>,
    pub relations: Vec<SlotRelation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub witness: Option<IsoWitness>,
}

impl IsoVerdict {
    fn no() -> Self {
        IsoVerdict { isomorphic: false, witness: None }
    }

    fn yes(permutation: Vec<usize>, relations: Vec<SlotRelation>) -> Self {
        IsoVerdict { isomorphic: true, witness: Some(IsoWitness { permutation, relations }) }
    }
}

/// `Ω` and `Δ` are always irreducible; `Θ` iff `2β ∉ Z_+`.
pub fn is_irreducible_rankone(p: &FamilyParams) -> bool {
    p.family != Family::Theta || !(Scalar::int(2) * &p.beta).is_nonneg_integer()
}

/// Irreducible iff the `λ_k` are pairwise distinct, given irreducible factors.
pub fn is_irreducible_tensor(t: &TensorParams) -> Result<bool, ClassifyError> {
    if let Some(slot) = t.factors.iter().position(|f| !is_irreducible_rankone(f)) {
        return Err(ClassifyError::ReducibleFactor { slot });
    }
    Ok(t.lambdas_distinct())
}

fn slot_relation(a: &FamilyParams, b: &FamilyParams) -> Option<SlotRelation> {
    if a.family != b.family || a.lambda != b.lambda || a.alpha != b.alpha || a.gamma != b.gamma {
        return None;
    }
    if a.beta == b.beta {
        Some(SlotRelation::Equal)
    } else if a.family != Family::Theta && a.beta == -&b.beta - Scalar::ONE {
        Some(SlotRelation::BetaTwin)
    } else {
        None
    }
}

pub fn iso_rankone(a: &FamilyParams, b: &FamilyParams) -> IsoVerdict {
    match slot_relation(a, b) {
        Some(rel) => IsoVerdict::yes(alloc::vec![0], alloc::vec![rel]),
        None => IsoVerdict::no(),
    }
}

fn require_irreducible(t: &TensorParams) -> Result<(), ClassifyError> {
    if !is_irreducible_tensor(t)? {
        let ls: Vec<&Scalar> = t.factors.iter().map(|f| &f.lambda).collect();
        for a in 0..ls.len() {
            if let Some(b) = (a + 1..ls.len()).find(|&b| ls[a] == ls[b]) {
                return Err(ClassifyError::RepeatedLambda(a, b));
            }
        }
    }
    Ok(())
}

/// Isomorphism of irreducible tensors, comparing highest weights `(η, ε, θ)`.
pub fn iso_tensor(a: &TensorParams, b: &TensorParams) -> Result<IsoVerdict, ClassifyError> {
    let hw_equal = (&a.hw.eta, &a.hw.eps, &a.hw.theta) == (&b.hw.eta, &b.hw.eps, &b.hw.theta);
    iso_tensor_given_hw(a, b, hw_equal)
}

/// As [`iso_tensor`], with the verdict on the highest-weight factors supplied.
pub fn iso_tensor_given_hw(a: &TensorParams, b: &TensorParams, hw_equal: bool) -> Result<IsoVerdict, ClassifyError> {
    require_irreducible(a)?;
    require_irreducible(b)?;
    if a.m() != b.m() || !hw_equal {
        return Ok(IsoVerdict::no());
    }
    let mut permutation = Vec::with_capacity(a.m());
    let mut relations = Vec::with_capacity(a.m());
    for fa in &a.factors {
        let Some(k) = b.factors.iter().position(|fb| fb.lambda == fa.lambda) else { return Ok(IsoVerdict::no()) };
        let Some(rel) = slot_relation(fa, &b.factors[k]) else { return Ok(IsoVerdict::no()) };
        permutation.push(k);
        relations.push(rel);
    }
    Ok(IsoVerdict::yes(permutation, relations))
}
