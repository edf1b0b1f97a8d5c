//! Nilpotent orbits of `so(2n+1)`, `sp(2n)` and `so(2n)` labelled by partitions:
//! collapses, block decompositions, Richardson orbits and their polarizations,
//! minimal Richardson orbits, Spaltenstein fiber descriptors checked against
//! finite-field point counts, and Springer duality between types B and C.
//!
//! ```
//! use nilorbit::{minimal_richardson_orbits, Family, Partition};
//!
//! let p: Partition = "2,2,1".parse().unwrap();
//! let minr = minimal_richardson_orbits(&p, Family::B).unwrap();
//! assert_eq!(minr, vec!["3,1,1".parse().unwrap()]);
//! ```

pub mod atlas;
pub mod blocks;
pub mod duality;
pub mod error;
pub mod ff_oracle;
pub mod field;
pub mod levi;
pub mod min_richardson;
pub mod partition;
pub mod poly;
pub mod spaltenstein;

pub use blocks::{
    all_segmentations, canonical_quotient_order, decompose, is_richardson, is_special, reassemble,
    Block, BlockDecomposition, BlockKind,
};
pub use duality::{
    dual_pair, epoly_equality_check, pairing_records, seesaw_check, springer_dual,
    springer_dual_inverse, springer_dual_inverse_search, CheckReport, DualPair,
};
pub use error::{Error, Result};
pub use ff_oracle::{
    fiber_point_count, fiber_point_count_with_budget, grassmannian_count, realize, realize_with,
    CountOutcome, FlagCount, JordanRealization, SignConvention,
};
pub use levi::{
    induced_shape, is_richardson_via_induction, langlands_dual_levi, levi_types, polarizations,
    richardson_orbit_of, InducedShape, LeviType,
};
pub use min_richardson::{
    index_set, minimal_richardson_bruteforce, minimal_richardson_orbits,
    minimal_richardson_with_witnesses, modify_block, pseudo_polarizations, IndexSet,
    MinimalRichardson, ModifiedBlocks, Variant,
};
pub use partition::{
    all_partitions, collapse, dominance_leq, enumerate_valid, is_valid, orbit_dim, transpose,
    Family, OrbitLabel, Partition, VeryEvenLabel,
};
pub use poly::Poly;
pub use spaltenstein::{
    component_count, descriptor, descriptor_for_levi, dimension, distinguished_values,
    e_polynomial, ig_factors, og_tower, split_index, uv_degree, FibrationDescriptor, GrassKind,
    GrassStep,
};

/// E-polynomials in `q = uv` with integer coefficients.
pub type EPolynomial = Poly<i64>;
