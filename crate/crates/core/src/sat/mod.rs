pub mod brute;
pub mod cdcl;
pub mod checker;
