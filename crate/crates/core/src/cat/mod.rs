//! Categorical constructions on finite spaces.

pub mod construct;
pub mod context;
pub mod oracle;

pub use construct::{
    cokernel_pair, coequalizer, coproduct, descend, equalizer, factorize, lift_through, power,
    power_with_budget, product, product_with_budget, pullback, pushout, Cospan, Power, Span,
    DEFAULT_SIZE_BUDGET,
};
pub use context::{
    ctx_cokernel_pair, ctx_equalizer, ctx_pullback, ctx_pushout, epi_in, hull_reflect_by_power,
    regular_mono_in, ContextKind, SubcatContext,
};
pub use oracle::{verify_couniversal, verify_equalizer, verify_reflection, verify_universal};
