pub mod chordality;
pub mod construct;
pub mod dense;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod sparse;
pub mod theory;
