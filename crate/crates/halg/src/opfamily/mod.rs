//! Square-integrable operator families at desk scale: tight frames of
//! matrices over a finite weighted point set, the analysis/synthesis
//! pair between operators and symbols, and the algebra transported onto
//! the symbol space.

mod family;
mod symbols;
mod transported;

pub use family::{
    build_random_tight, build_weyl_heisenberg, verify_tightness, FamilyJson, FamilyPoint,
    OperatorFamily, TightnessReport,
};
pub use symbols::{parseval_check, ParsevalReport, SymbolSpace};
pub use transported::{
    representation_check, transported_model, RepresentationLevel, RepresentationReport,
};
