pub mod complex;
pub mod labeling;
pub mod space;
pub mod words;
pub mod selfsim;
pub mod portraits;
pub mod isometries;
pub mod cli;
