//! Modal formulas, inequalities and their ASCII syntax.

pub mod formula;
pub mod parse;
pub mod print;

pub use formula::{Atom, Const, Formula, Inequality, ModalInput, Polarity, QuasiInequality};
pub use parse::{parse_formula, parse_inequality, parse_input, parse_quasi, ParseError};
pub use print::print_formula;
