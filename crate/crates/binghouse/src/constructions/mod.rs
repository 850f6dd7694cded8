//! The shipped models: the two-room house, its three-dimensional analogue,
//! the spheres that cover them, and the reference corpus the engines are
//! cross-checked against.

pub mod assembly;
pub mod corpus;
pub mod house2d;
pub mod house3d;
