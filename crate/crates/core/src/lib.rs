pub mod arrangements;
pub mod cli;
pub mod complex;
pub mod constructions;
pub mod exactla;
pub mod fan;
pub mod splines;
pub mod supports;
pub mod verify;
