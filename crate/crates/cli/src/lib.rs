//! Library side of the `tcl` command: the reduction pipeline, verification
//! campaigns and report rendering.

pub mod campaigns;
pub mod pipeline;
pub mod render;
