//! Differential testing of the two engines: seeded generators, the
//! correspondence between indexed and named terms, simulation diagrams,
//! bounded confluence and a property suite for the translations.

mod bisim;
mod confluence;
mod fuzz;
mod gen;
mod lemmas;
mod shrink;

pub use bisim::{
    check_bisim_run, check_bisim_step, related, related_in, DiagramEntry, DiagramOutcome,
    DiagramReport, RelatedPair,
};
pub use confluence::{
    check_confluence_bounded, ConfluenceReport, ConfluenceStatus, Peak, STATE_LIMIT,
};
pub use fuzz::{
    confluence_sample, fuzz, fuzz_bisim, fuzz_confluence, fuzz_lemmas, FuzzReport, SampleRecord,
    SampleStatus, Suite, BISIM_RUN_STEPS, CONFLUENCE_DEPTH, CONFLUENCE_JOIN_BUDGET, PEAK_ATTEMPTS,
};
pub use gen::{
    gen_indexed, gen_indexed_pattern, gen_indexed_with, gen_named, gen_named_pattern,
    gen_named_with, gen_term, FreeShape, GenConfig, Generated, FREE_ROWS,
};
pub use lemmas::{
    check_lemma_properties, check_lemma_suite, properties, Counterexample, LabeledTerm,
    LemmaReport, Property, PropertyReport,
};
pub use shrink::{shrink_indexed, shrink_named};
