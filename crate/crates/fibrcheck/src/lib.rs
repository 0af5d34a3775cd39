//! Obstructions to fiberedness of knot 0-surgeries, and to symplectic
//! structures on `S¹ × N(K)`, computed from twisted Alexander polynomials.
//!
//! The pipeline: ingest a knot-group presentation, pass to the 0-surgery,
//! search epimorphisms onto small permutation groups, build the twisted
//! chain complex for each witness over `F_p[t^±1]`, read off the orders
//! `Δ_0, Δ_1, Δ_2` of the twisted homology, and compare degrees against the
//! values forced on fibered (resp. symplectic) manifolds.

pub mod cache;
pub mod groups;
pub mod obstruct;
pub mod polymat;
pub mod report;
pub mod run;
pub mod twisted;
pub mod words;
