//! Grid sweeps over unimorph designs, force/deflection Pareto analysis and
//! matched-load power density ranking.

mod pareto;
mod rank;
mod space;

pub use pareto::{mark_pareto, non_dominated, pareto_front};
pub use rank::{rank_by_density, RankMode, RankedDesign};
pub use space::{sweep, DesignParams, DesignPoint, DesignSpace, DEFAULT_SWEEP_CAP};
