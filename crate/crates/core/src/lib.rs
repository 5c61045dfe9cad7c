//! Locally recoverable codes with availability built from automorphism
//! orbits of algebraic curves over finite fields.

pub mod code;
pub mod config;
pub mod construct;
pub mod curve;
pub mod error;
pub mod field;
pub mod group;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod poly;
pub mod recovery;

pub use code::{LengthFormula, LocalityEntry, LrcCode, Monomial, MonomialBasis, RankCertificate};
pub use config::{parse_generator, ConstructionConfig};
pub use construct::{construct, construct_on, Construction};
pub use curve::{AffinePoint, Coord, CurveFamily, CurveModel, PointSet, PoleOrders};
pub use error::{Budget, Error, Result};
pub use field::{Element, Field};
pub use group::{
    group_product, orbit_decompose, select_split_coordinates, subgroup_closure, AffineMap,
    Automorphism, CoordFn, InjectivitySpec, OrbitDecomposition, Subgroup,
};
pub use io::{parse_matrix, read_matrix, write_code, Metadata};
pub use matrix::Matrix;
pub use metrics::{
    bound_generalized, bound_singleton_lrc, bound_tamo_barg, exact_min_distance, relative_defect,
    Defect, ParamRow, ReportRow,
};
pub use poly::Poly;
pub use recovery::{
    lagrange_recover, recover_from_word, recovery_plan, repair, verify_recovery_set, RecoveryPlan,
    RecoverySet, RepairReport,
};
