//! Exact arithmetic and normal forms for the Baumslag–Solitar groups BS(1,k),
//! a generic ET0L/EDT0L rewriting engine with rational control, generators
//! for EDT0L systems describing centralizers, conjugators and multiplication
//! in BS(1,k), and a brute-force oracle to check them against.

pub mod automaton;
pub mod constructions;
pub mod control;
pub mod error;
pub mod group;
pub mod lsystem;
pub mod normal_form;
pub mod oracle;
pub mod verify;
pub mod zk;

pub use error::{Error, Result};
pub use group::{centralizer_generator, eval_word, solve_conjugacy, Centralizer, GroupElement};
pub use zk::ZkRational;
