//! Tensor products with per-leg orientation, algebra morphisms given on
//! generators, and the leg operations used to state diagrams.

mod handle;
mod morphism;
mod tensor;
mod tensor_map;

pub use handle::{Handle, Orientation, Signature};
pub use morphism::{
    compose, define_morphism, equal_morphisms, unchecked_morphism, Certificate, Morphism,
    MorphismRef, Witness,
};
pub use tensor::TensorElement;
pub use tensor_map::{
    compare_elements, compare_on_generators, compare_on_inputs, generator_inputs, Outcome,
    TensorMap,
};
