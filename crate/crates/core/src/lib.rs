pub mod arrangement;
pub mod body;
pub mod cli;
pub mod error;
pub mod exact;
pub mod gen;
pub mod instance;
pub mod render;
pub mod sweep;
pub mod verify;
pub mod zone;
