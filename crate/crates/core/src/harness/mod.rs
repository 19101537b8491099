//! Built-in derivations, replayed as sessions with checkpoints.

mod cubic;
mod run;

pub use cubic::{con, cubic_norm, h, CubicElement};
pub use run::{evaluate, run_session, Check, CheckKind, Goldens, RunOptions, SessionReport};

use crate::error::{Error, Result};
use crate::text::{parse_script, Session};

/// A session shipped with the crate.
#[derive(Clone, Copy, Debug)]
pub struct BuiltinSession {
    pub name: &'static str,
    pub title: &'static str,
    pub script: &'static str,
}

const GOLDENS: &[(&str, &str)] = &[
    ("star.txt", include_str!("../../sessions/goldens/star.txt")),
    ("star2.txt", include_str!("../../sessions/goldens/star2.txt")),
    ("one.txt", include_str!("../../sessions/goldens/one.txt")),
    ("two.txt", include_str!("../../sessions/goldens/two.txt")),
    ("three.txt", include_str!("../../sessions/goldens/three.txt")),
];

/// Built-in sessions in catalog order.
pub const CATALOG: &[BuiltinSession] = &[
    BuiltinSession {
        name: "L1",
        title: "linearization of q(x.y) = q(x)q(y)",
        script: include_str!("../../sessions/l1.scs"),
    },
    BuiltinSession {
        name: "L2",
        title: "linearization of (x.y).x = q(x)y",
        script: include_str!("../../sessions/l2.scs"),
    },
    BuiltinSession {
        name: "Z1",
        title: "b(s, t^2) = b(t, s^2) = a - c",
        script: include_str!("../../sessions/z1.scs"),
    },
    BuiltinSession {
        name: "Z2",
        title: "b(xs, yt)",
        script: include_str!("../../sessions/z2.scs"),
    },
    BuiltinSession {
        name: "Z3",
        title: "h(s)",
        script: include_str!("../../sessions/z3.scs"),
    },
    BuiltinSession {
        name: "Z4",
        title: "b(x,y)^3",
        script: include_str!("../../sessions/z4.scs"),
    },
    BuiltinSession {
        name: "M",
        title: "main identity for the cubic norm",
        script: include_str!("../../sessions/m.scs"),
    },
];

impl BuiltinSession {
    pub fn session(&self) -> Result<Session> {
        Ok(parse_script(self.script)?.named(self.name))
    }

    /// Runs the session with the embedded goldens, whatever `opts.goldens` says.
    pub fn run(&self, opts: &RunOptions) -> Result<SessionReport> {
        let opts = RunOptions {
            goldens: Goldens::Embedded(GOLDENS),
            ..opts.clone()
        };
        run_session(&self.session()?, &opts)
    }
}

/// Finds a built-in session by name, ignoring case.
pub fn builtin_session(name: &str) -> Result<&'static BuiltinSession> {
    CATALOG
        .iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownSession(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::StepKind;

    #[test]
    fn z1_has_six_steps() {
        let s = builtin_session("Z1").unwrap().session().unwrap();
        assert_eq!(s.steps.len(), 6);
        assert!(matches!(s.steps[5].kind, StepKind::AssertZero(_)));
    }

    #[test]
    fn every_builtin_parses() {
        for b in CATALOG {
            b.session().unwrap_or_else(|e| panic!("{}: {e}", b.name));
        }
        assert!(matches!(builtin_session("nope"), Err(Error::UnknownSession(_))));
    }

    #[test]
    fn small_sessions_pass() {
        for name in ["L1", "L2", "Z1", "Z2", "Z3", "Z4"] {
            let r = builtin_session(name).unwrap().run(&RunOptions::default()).unwrap();
            assert!(r.pass, "{r}");
        }
    }
}
