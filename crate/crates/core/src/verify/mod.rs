pub mod checks;
pub mod enumerate;
pub mod random;
pub mod report;
pub mod search;
pub mod theorems;

pub use report::{Mode, TheoremReport};
pub use theorems::{replay, verify, TheoremId, VerifyOptions};
