pub mod algebra;
pub mod hk;
pub mod flow;
pub mod checker;
pub mod cases;
