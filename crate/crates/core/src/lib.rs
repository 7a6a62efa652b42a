//! Exact engine for relative homological categories `(C, E)` over finite
//! pointed categories.

pub mod axioms;
pub mod category;
pub mod concrete;
pub mod eclass;
pub mod error;
pub mod finab;
pub mod fingrp;
pub mod gen;
pub mod lemmas;
pub mod pset;
pub mod tablecat;

pub use category::PointedCategory;
pub use error::{CatError, Result};
