pub mod error;
pub mod conics;
pub mod geom;
pub mod hexagon;
pub mod pencils;
pub mod render;
pub mod verify;
pub mod webs;

pub use error::{Error, Result};
