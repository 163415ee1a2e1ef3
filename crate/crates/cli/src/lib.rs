//! Experiment-runner library behind the `mtfrac` binary: configuration,
//! CSV/manifest output, reference fixtures, and the verification suite.

pub mod commands;
pub mod config;
pub mod expected;
pub mod output;
pub mod sampler;
pub mod verify;

/// Run `f` inside a rayon pool with the requested worker count; zero means
/// the library default.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        f()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("worker pool builds")
            .install(f)
    }
}
