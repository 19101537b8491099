//! The built-in rule sets. Uppercase letters are pattern variables;
//! lowercase `x` and `y` are the literal symbols of the sessions that use
//! the ad-hoc sets.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::rule::{RewriteRule, RuleSet};
use crate::error::{Error, Result};

const RULES1: &[(&str, &str)] = &[
    ("b(X,Y)*b(Z,U)", "b(X.Z, Y.U) + b(X.U, Y.Z)"),
    ("b(X.Y, X.Z)", "q(X)*b(Y,Z)"),
    ("b(X.Y, Z.Y)", "q(Y)*b(X,Z)"),
    ("(X.Y).X", "q(X)*Y"),
    ("X.(Y.X)", "q(X)*Y"),
    // Scalars are already pulled out of `b` by canonicalization.
    ("b(X*q(Y), Z)", "q(Y)*b(X,Z)"),
    ("b(X, Z*q(Y))", "q(Y)*b(X,Z)"),
];

const RULES2_EXTRA: &[(&str, &str)] = &[
    ("b(X,Y)^2", "b(X.X, Y.Y) + b(X.Y, Y.X)"),
    ("b(X,Y)^3", "b(X,Y)*b(X.X, Y.Y) + b(X,Y)*b(X.Y, Y.X)"),
    ("b(X,X)", "2*q(X)"),
    ("q(X.Y)", "q(X)*q(Y)"),
];

const ASSLEFT: &[(&str, &str)] = &[("b(X, Y.Z)", "b(X.Y, Z)")];

const ASSOCB: &[(&str, &str)] = &[
    ("b(X.Y, (X.Y).(Y.X))", "b((X.Y).(X.Y), Y.X)"),
    ("b(X.Y, (Y.X).(X.Y))", "b((X.Y).(X.Y), Y.X)"),
    ("b(Y.X, (X.Y).(X.Y))", "b((X.Y).(X.Y), Y.X)"),
];

const MOVE1: &[(&str, &str)] = &[("b(Y, X.Y)", "b(X, Y.Y)"), ("b(Y, Y.X)", "b(X, Y.Y)")];

const MOVE2: &[(&str, &str)] = &[
    ("b(x, (x.y).y)", "b(x.y, y.x)"),
    ("b(y.x, x.y)", "b(x.y, y.x)"),
    ("b(x, y.(y.x))", "b(x.y, y.x)"),
    ("b(y, x.(x.y))", "b(x.y, y.x)"),
    ("b(y, (y.x).x)", "b(x.y, y.x)"),
];

const MOVE3: &[(&str, &str)] = &[("b(Y, Y.(Y.X))", "b(Y.X, Y.Y)"), ("b(Y, (X.Y).Y)", "b(X.Y, Y.Y)")];

const MOVE4: &[(&str, &str)] = &[
    ("b(x.y, x)", "b(x, x.y)"),
    ("b(x, y.x)", "b(x, x.y)"),
    ("b(y.x, x)", "b(x, x.y)"),
    ("b(x.y, y.(y.x))", "b(y, (y.x).(x.y))"),
    ("b(y.x, (x.y).y)", "b(y, (y.x).(x.y))"),
    ("b(x.y, y.(y.x))", "b(y, (y.x).(x.y))"),
    ("b(y.x, (x.y).y)", "b(y, (y.x).(x.y))"),
    ("b(y, (x.y).(x.y))", "q(y)*b(x, x.y)"),
    ("b(y, (y.x).(y.x))", "q(y)*b(y.x, x)"),
    ("b(y, (x.y).(y.x))", "q(y)*b(x, y.x)"),
];

const MOVE5: &[(&str, &str)] = &[
    ("b(y, x.y)", "b(y, y.x)"),
    ("b(x.y, y)", "b(y, y.x)"),
    ("b(y.x, y)", "b(y, y.x)"),
    ("b(x.y, (y.x).x)", "b(x, (x.y).(y.x))"),
    ("b(x.(x.y), y.x)", "b(x, (x.y).(y.x))"),
    ("b(y.x, x.(x.y))", "b(x, (x.y).(y.x))"),
    ("b(x, (y.x).(y.x))", "q(x)*b(y, y.x)"),
    ("b(x, (x.y).(x.y))", "q(x)*b(x.y, y)"),
    ("b(x, (y.x).(x.y))", "q(x)*b(y, x.y)"),
];

const BSYM: &[(&str, &str)] = &[("b(y,x)", "b(x,y)")];

/// Catalog names in listing order.
pub const BUILTIN_NAMES: &[&str] = &[
    "rules1", "rules2", "assleft", "assocb", "move1", "move2", "move3", "move4", "move5", "bsym",
];

fn table(name: &str) -> Option<Vec<(&'static str, &'static str)>> {
    Some(match name {
        "rules1" => RULES1.to_vec(),
        "rules2" => [RULES1, RULES2_EXTRA].concat(),
        "assleft" => ASSLEFT.to_vec(),
        "assocb" => ASSOCB.to_vec(),
        "move1" => MOVE1.to_vec(),
        "move2" => MOVE2.to_vec(),
        "move3" => MOVE3.to_vec(),
        "move4" => MOVE4.to_vec(),
        "move5" => MOVE5.to_vec(),
        "bsym" => BSYM.to_vec(),
        _ => return None,
    })
}

fn build(name: &str) -> Option<RuleSet> {
    let rules = table(name)?
        .into_iter()
        .enumerate()
        .map(|(i, (l, r))| {
            RewriteRule::parse(&format!("{name}#{}", i + 1), l, r).expect("built-in rules are well formed")
        })
        .collect();
    Some(RuleSet::new(name, rules))
}

/// Looks up a built-in rule set by name.
pub fn builtin_ruleset(name: &str) -> Result<RuleSet> {
    static CACHE: OnceLock<BTreeMap<&'static str, RuleSet>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| BUILTIN_NAMES.iter().map(|n| (*n, build(n).unwrap())).collect());
    cache
        .get(name)
        .cloned()
        .ok_or_else(|| Error::RuleSetUnknown(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = BUILTIN_NAMES
            .iter()
            .map(|n| builtin_ruleset(n).unwrap().len())
            .collect();
        assert_eq!(sizes, [7, 11, 1, 3, 2, 5, 2, 10, 9, 1]);
    }

    #[test]
    fn unknown() {
        assert_eq!(
            builtin_ruleset("nope").unwrap_err(),
            Error::RuleSetUnknown("nope".into())
        );
    }
}
