//! Structural graph algorithms around tree-width of finitely defined
//! hereditary classes: generators and formats, recognizers for the four
//! critical classes, substructure detection, vertex connectivity and
//! k-blocks, exact tree decompositions, the quantitative extraction
//! machinery, and the boundedness decision procedure with its survey
//! harness.

pub mod bitset;
pub mod blocks;
pub mod decomposition;
pub mod detection;
pub mod dichotomy;
pub mod extraction;
pub mod graph;
pub mod recognition;
