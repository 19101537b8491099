//! Text formats: the expression DSL, the rule DSL, and session scripts.

pub mod ast;
pub mod lexer;
mod parser;
mod printer;
mod script;

pub use ast::{Ident, RawExpr};
pub use parser::{is_function, parse_expr};
pub use printer::{print_atom, print_expr, print_raw, print_scalar, print_vector};
pub use script::{parse_script, Expected, LetValue, Session, Step, StepKind};
