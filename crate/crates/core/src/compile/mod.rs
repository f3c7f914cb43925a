//! Product-formula circuits and hardware compilation of spin terms.

mod gate;
mod hardware;
mod resources;
mod trotter;

pub use gate::{Circuit, Gate, GateKind, Segment};
pub use hardware::{
    compile_term_superconducting, compile_term_trapped_ion, dressed_anchor, ion_frame, ion_frame_layer, route_linear,
    sign_a, sign_b, Connectivity,
};
pub use resources::{
    resource_report, shape_csv, term_costs, ClassResources, ResourceReport, ShapeComparison, TermCost,
    SHAPE_CSV_HEADER,
};
pub use trotter::{
    compile_factor, ordered_terms, trotter_error_report, trotterize, Target, TrotterErrorReport, TrotterOrder,
    TrotterPlan,
};
