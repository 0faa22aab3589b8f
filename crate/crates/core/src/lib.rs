pub mod kernel;
pub mod pde;
pub mod psh;
pub mod toric;
