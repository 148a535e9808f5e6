pub mod sign;
pub mod spectrum;
