pub mod analyze;
pub mod error;
pub mod input;
pub mod report;
pub mod scenario;
pub mod sweep;
