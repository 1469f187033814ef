//! Kekulé states, Kekulé cells and soliton switching on finite graphs.

pub mod bits;
pub mod builtins;
pub mod catalog;
pub mod cell;
pub mod classify;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod kekule;
pub mod omni;
pub mod switch;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
