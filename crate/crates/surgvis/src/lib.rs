//! Agentic enhancement pipeline for endoscopic imagery.
//!
//! The crate is organized around a small set of subsystems:
//!
//! - [`imagecore`]: raster buffers, distortion labels and dataset manifests
//! - [`bench`]: parameterized distortion synthesis and benchmark generation
//! - [`prior`]: a lightweight trainable classifier emitting temperature-smoothed
//!   soft labels over distortion category and severity
//! - [`context`]: few-shot exemplar selection and rendering
//! - [`agent`]: prompt assembly, pluggable inference backends, response parsing
//!   and enhancement-plan selection
//! - [`enhance`]: the enhancement operator registry and plan executor
//! - [`metrics`]: full-reference (PSNR/SSIM), no-reference (NIQE/BRISQUE
//!   features) and classification-accuracy metrics
//! - [`harness`]: end-to-end run orchestration and report emission
//!
//! The `surgvis` binary exposes the pipeline as CLI subcommands; see the
//! repository README for usage.

pub mod agent;
pub mod bench;
pub mod context;
pub mod enhance;
pub mod harness;
pub mod imagecore;
pub mod metrics;
pub mod prior;
pub mod rng;
