pub mod cli;
pub mod cremona;
pub mod dm;
pub mod field;
pub mod geom;
pub mod phi;
