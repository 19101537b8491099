//! Pattern matching and rule application on canonical expressions.

mod catalog;
mod engine;
mod pattern;
mod rule;

pub use catalog::{builtin_ruleset, BUILTIN_NAMES};
pub use engine::{apply_fixpoint, apply_fixpoint_traced, apply_once, match_site, Site, DEFAULT_CAP};
pub use pattern::{AtomPat, Bindings, Pattern, WordPat};
pub use rule::{is_pattern_var, RewriteRule, RuleSet};
