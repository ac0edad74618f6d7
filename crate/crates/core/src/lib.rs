pub mod deduction;
pub mod gen;
pub mod groupoid;
pub mod reason;
pub mod trs;
