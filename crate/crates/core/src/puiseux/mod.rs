//! The scalar engine: Newton polygons, branch enumeration, simplicity
//! certificates and jet extension.

pub mod engine;
pub mod roots;

pub use engine::{
    extend_jet, extend_jet_poly, jet_branches, jet_certificate, jet_polygon, newton_polygon,
    puiseux_branches, simplicity_certificate, Branch, PolygonEdge, SimplicityCertificate,
};
pub use roots::{roots, Root};
