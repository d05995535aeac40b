//! Exact replacement paths under one, two or three edge failures.
//!
//! The core is a distance sensitivity oracle over power-of-two anchored
//! path intervals that supports edge insertion, an offline fully dynamic
//! wrapper over it, and solvers built on top.

pub mod dso;
pub mod brute;
pub mod error;
pub mod frp2;
pub mod frp3;
pub mod gen;
pub mod graph;
pub mod hardness;
pub mod incremental;
pub mod io;
pub mod offline;
pub mod perturb;
pub mod proper;
pub mod scaling;
pub mod snapshot;
pub mod spt;
pub mod ssrp;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{dijkstra, Edge, EdgeId, EdgeMask, Graph, VertexId};
pub use weight::{Dist, Weight};
