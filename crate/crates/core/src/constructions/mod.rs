//! Generators for EDT0L systems over BS(1,k).

pub mod arith;
pub mod centralizer;
pub mod column;
pub mod exp_seq;
pub mod fixture;
pub mod fixed_r;
pub mod left_mult;
pub mod sign_case;

pub use arith::{case_system, frac_case_system, nf_case_system, Form};
pub use centralizer::{centralizer_plan, centralizer_system, conjugator_system, fit_power_recurrence, CentralizerPlan, Direction, PowerFit};
pub use exp_seq::{exp_sequence_system, RecurrenceFit};
pub use fixed_r::nf_fixed_r_system;
pub use left_mult::left_mult_a_system;
pub use sign_case::{Relation, SignCase, Sgn, Variant};
