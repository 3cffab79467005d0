pub mod cli;
pub mod code;
pub mod extremal;
pub mod gf;
pub mod groebner;
pub mod limits;
pub mod poly;
pub mod rng;
pub mod verify;
