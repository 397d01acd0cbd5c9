#![no_std]
//! Exact computations with modules over the affine-Virasoro algebra
//! `Vir ⋉ sl2-hat`: rank-one modules over `C[s, t]`, highest-weight modules,
//! their tensor products and the structural analysis of cyclic submodules.

extern crate alloc;

pub mod analysis;
pub mod classify;
pub mod exact;
pub mod hwmod;
pub mod liealg;
pub mod polymod;
pub mod tensor;
pub mod text;
