//! Toroidal 2-cell complexes built from plane tilings, their efficient total
//! (cell) colorings, verification with witnesses and exhaustive search.

pub mod coloring;
pub mod complex;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod search;
pub mod tiling;
pub mod verify;

pub use coloring::ColorAssignment;
pub use complex::{Cell, CellComplex, CellId, ComplexError, Rank};
pub use lattice::{ColorForm, Lattice2D};
pub use tiling::{TilingSpec, TorusComplex};
pub use verify::{Level, VerificationReport};

