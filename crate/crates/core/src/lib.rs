//! Exact computational engine for the extended affine Weyl group of type
//! A2 tilde (split and twisted): class polynomials of the associated affine
//! Hecke algebra by length reduction, closed-form cross-checks, and the
//! applications to affine Deligne-Lusztig varieties.

pub mod adlv;
pub mod closedform;
pub mod conj;
pub mod engine;
pub mod error;
pub mod group;
pub mod poly;

pub use conj::{
    classify, enumerate_classes, enumerate_elements, invariant_of_class, is_straight_class,
    kottwitz, min_length, newton_point, ConjClassId, InvariantF, KottwitzPoint, Mode, Rat,
};
pub use engine::{ClassPolynomial, Engine, OrderPolicy, ReductionStep};
pub use error::HeckeError;
pub use group::{
    apply_delta, format_element, invert, kappa, length, multiply, pairing_2rho, parse_element,
    tau_power, CoweightVector, ExtAffineElt, FiniteWeylElt, Generator, GENERATORS, TAU,
};
pub use poly::{eval_point_count, upoly_add, upoly_mul, QPoly, UPoly};
