//! Checking polynomial identities in symmetric composition algebras.
//!
//! Expressions in the two-sorted language of `q`, `b` and the product `x.y`
//! are kept in a multilinear canonical form with exact rational
//! coefficients ([`expr`]). They are rewritten with named rule sets
//! ([`rewrite`]), reduced with substitution and coefficient extraction
//! ([`poly`]) and checked numerically on para-quaternions ([`oracle`]).
//! [`harness`] runs session scripts ([`text`]) and ships the built-in
//! derivations.
//!
//! ```
//! use symcomp::{canonicalize, parse_expr, print_expr, SymbolTable};
//!
//! let t = SymbolTable::with(&[], &["x", "y"]).unwrap();
//! let e = canonicalize(&parse_expr("q(x + y) - q(x) - q(y)").unwrap(), &t).unwrap();
//! assert_eq!(print_expr(&e), "b(x,y)");
//! ```

pub mod cli;
pub mod error;
pub mod expr;
pub mod harness;
pub mod oracle;
pub mod poly;
pub mod rewrite;
pub mod text;

pub use error::{Error, Result};
pub use expr::{canonicalize, Expr, SymbolTable};
pub use harness::{builtin_session, run_session, RunOptions, SessionReport};
pub use oracle::check_identity;
pub use rewrite::{apply_fixpoint, apply_once, builtin_ruleset, RewriteRule, RuleSet};
pub use text::{parse_expr, parse_script, print_expr};

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/rewriting.md")]
    mod rewriting {}
    #[doc = include_str!("../../../book/src/sessions.md")]
    mod sessions {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
}
