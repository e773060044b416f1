pub mod catalog;
pub mod error;
pub mod homology;
pub mod json;
pub mod kgroup;
pub mod locus;
pub mod matfac;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod text;
pub mod verify;

pub use catalog::{build_catalog, Catalog, CatalogEntry};
pub use error::{MfError, Result};
pub use homology::{SESCert, Summand};
pub use kgroup::{present_k0, Classification, K0Result, Variant};
pub use locus::{nonfree_locus, LocalFreeCert, PrimeSpec};
pub use matfac::{check_equivalence, find_signed_iso, minimize, Block, MFIso, MFMorphism, MatFac, Minimized, Witness};
pub use matrix::Mat;
pub use poly::{Monomial, Poly};
pub use ring::{make_ring, Ctx, Degree, Family, Form, QuotElem, RingCtx, RingSpec};
pub use scalar::{Field, Fp, GaussRat};
pub use verify::{run_suite, Check};
