pub mod cli;
pub mod connectivity;
pub mod duality;
pub mod error;
pub mod flow;
pub mod graph;
pub mod modpath;
pub mod reductions;
pub mod io;
pub mod surgery;
pub mod walls;
pub mod verify;
