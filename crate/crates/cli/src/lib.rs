//! Library surface of the command-line tool: campaign configuration and
//! execution, deterministic samplers, and report rendering. The binary is a
//! thin argument-parsing shell over this.

pub mod campaign;
pub mod report;
pub mod sample;

pub use campaign::{run, CampaignConfig, Suite};
pub use report::Report;
