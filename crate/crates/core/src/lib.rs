pub mod complex_core;
pub mod dec_grid;
pub mod morse_model;
pub mod witten_spectral;
