//! Behavioral synthesis toolchain for a four-layer processing-element
//! architecture.
//!
//! The pipeline compiles a pragma-annotated C-subset DSL into an FSMD
//! netlist: `frontend` parses, `cdfg` elaborates a loop-unrolled dataflow
//! graph, `scheduler` assigns control steps, `binder` maps nodes onto
//! functional units (with coarse-grained macro reuse driven by `macrodb`),
//! `pe_model` places units onto PEs and checks bypass adjacency, `emitter`
//! writes the netlist, `estimator` prices it in LUTs, and `simulator`
//! executes it cycle by cycle and checks it against the golden interpreter.

pub mod frontend;

pub use frontend::FrontendError;

/// Umbrella error for the whole pipeline; the CLI maps these to
/// `error[<module>]:` lines and exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
}

impl Error {
    /// Module tag used in CLI diagnostics.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Frontend(_) => "frontend",
        }
    }
}
