//! Instance generation, text formats and the verification suites.

mod gen;
mod suites;
pub mod text;

pub use gen::{gen_maps_from, gen_simplicial_category, gen_simplicial_set, GenError, GenParams};
pub use suites::{
    check_config, replay, run_instance, run_suite, sub_seeds, CheckVerdict, Input, InstanceReport, SuiteError, SuiteId,
    SuiteReport, COUNTEREXAMPLE_MARKER, DK_SEARCH_BUDGET, GENERATOR_NOTE, LADDER_BUDGET,
};
