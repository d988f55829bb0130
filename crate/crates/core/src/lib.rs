//! Behavioral distances for finite nondeterministic fuzzy-transition systems.
//!
//! States are compared by a pseudo-ultrametric `d_f`, the greatest fixed point of an
//! operator that lifts a state distance to possibility distributions (a max-min transport
//! problem) and then to sets of distributions (Hausdorff). Distance zero coincides with
//! bisimilarity. All arithmetic is exact.
//!
//! ```
//! use ftsdist_core::{behavioral_distance, io::system_from_str, deg};
//!
//! let fts = system_from_str(r#"{
//!     "states": ["s1", "s2", "s3", "s4"],
//!     "labels": ["a"],
//!     "transitions": [
//!         {"from": "s1", "label": "a", "to": {"s3": "0.9", "s4": "0.8"}},
//!         {"from": "s2", "label": "a", "to": {"s3": "0.6", "s4": "0.9"}},
//!         {"from": "s3", "label": "a", "to": {"s4": "0.9"}}
//!     ]
//! }"#).unwrap().system;
//! let d = behavioral_distance(&fts).unwrap().into_distance();
//! assert_eq!(d.get(1, 2), deg("0.6"));
//! ```

pub mod compose;
pub mod degree;
pub mod distribution;
pub mod fixpoint;
pub mod io;
pub mod lifting;
pub mod metric;
pub mod partition;
pub mod system;

pub use compose::{compose, compose_reachable, parallel, product, CompositionMode, PairState};
pub use degree::{deg, Degree, DegreeError};
pub use distribution::{meet_product, Distribution, StateId};
pub use fixpoint::{
    behavioral_distance, delta, greatest_bisimulation, is_bisimulation, is_post_fixed_point,
    metric_from_partition, metric_from_relation, quotient, quotient_of, similarity, FixpointError,
    FixpointTrace, Similarity,
};
pub use lifting::{
    canonical_transport, hausdorff, lifted_distance, transport_feasible, TransportMatrix,
};
pub use metric::{validate_metric, MetricError, StateMetric};
pub use partition::{Partition, Relation};
pub use system::{validate_system, Fts, LabelId, ValidatedSystem, ValidationError};
