use symcomp::expr::{canonicalize, Expr};
use symcomp::harness::{builtin_session, cubic_norm, evaluate, CubicElement, RunOptions, CATALOG};
use symcomp::oracle::check_identity;
use symcomp::text::{parse_expr, print_expr, Session};

fn value(session: &Session, name: &str) -> Expr {
    evaluate(session, name, &RunOptions::default()).unwrap()
}

fn expect(session: &Session, name: &str, text: &str) {
    let want = canonicalize(&parse_expr(text).unwrap(), &session.symbols).unwrap();
    let got = value(session, name);
    assert!(
        got == want || (got.is_zero() && want.is_zero()),
        "{name}: {} != {}",
        print_expr(&got),
        print_expr(&want)
    );
}

fn session(name: &str) -> Session {
    builtin_session(name).unwrap().session().unwrap()
}

#[test]
fn z1_intermediate_displays() {
    let s = session("Z1");
    expect(
        &s,
        "e1",
        "b(x.y, (y.x).(y.x)) - b((x.y).(y.x), y.x) - b(y, y.(y.x))*q(x) + b(x,y)*q(x)*q(y)",
    );
    expect(&s, "e2", "b(x,y)*q(x)*q(y) - b((y.y).y, x)*q(x)");
    expect(&s, "e3", "b(x,y)*q(x)*q(y) - b(y,x)*q(x)*q(y)");
    expect(&s, "e4", "0");
}

#[test]
fn z2_intermediate_display() {
    expect(&session("Z2"), "e1", "b(x,y)*q(x)*q(y) - b(y,x)*q(x)*q(y)");
}

#[test]
fn main_identity_square_chains() {
    let s = session("M");
    expect(
        &s,
        "c4a",
        "-beta*b(y, y.(y.x)) - alpha*b(y, (x.y).y) - 2*alpha*b(x,y)*q(y) - 2*beta*b(x,y)*q(y) + 3*b(x,y)*q(y)",
    );
    expect(
        &s,
        "c4b",
        "-alpha*b(x.y, y.y) - beta*b(y.x, y.y) - 2*alpha*b(x,y)*q(y) - 2*beta*b(x,y)*q(y) + 3*b(x,y)*q(y)",
    );
    expect(
        &s,
        "c5a",
        "-alpha*b(x, x.(x.y)) - beta*b(x, (y.x).x) - 2*alpha*b(x,y)*q(x) - 2*beta*b(x,y)*q(x) + 3*b(x,y)*q(x)",
    );
    expect(
        &s,
        "c5b",
        "-alpha*b(x.y, x.x) - beta*b(y.x, x.x) - 2*alpha*b(x,y)*q(x) - 2*beta*b(x,y)*q(x) + 3*b(x,y)*q(x)",
    );
    expect(
        &s,
        "c5c",
        "-2*alpha*b(x,y)*q(x) - 2*beta*b(x,y)*q(x) + 3*b(x,y)*q(x) - alpha*b(y,x)*q(x) - beta*b(y,x)*q(x)",
    );
    expect(&s, "c5d", "-3*alpha*b(x,y)*q(x) - 3*beta*b(x,y)*q(x) + 3*b(x,y)*q(x)");
}

#[test]
fn one_prints_as_transcribed() {
    let s = session("M");
    assert_eq!(
        print_expr(&value(&s, "one")),
        "-3*b(x.y,(x.y).(x.y)) - 3*b(x.(x.y),y.(y.x)) + 3*b(x.(x.y),(y.y).x) + 6*b((x.y).(x.y),y.x) - 3*b((y.x).(y.x),x.y)"
    );
}

#[test]
fn leftside_is_a_norm_defect() {
    let s = session("M");
    let canon = |t: &str| canonicalize(&parse_expr(t).unwrap(), &s.symbols).unwrap();
    let scalar = |t: &str| canon(t).as_scalar().unwrap().clone();
    let vector = |t: &str| canon(t).as_vector().unwrap().clone();
    let a = CubicElement::new(scalar("lambda"), vector("x"));
    let b = CubicElement::new(scalar("mu"), vector("y"));
    let ab = a.bullet(&b, &scalar("alpha"), &scalar("beta"));
    let defect = &(&cubic_norm(&a) * &cubic_norm(&b)) - &cubic_norm(&ab);
    assert_eq!(Expr::from(defect), value(&s, "leftside"));
}

#[test]
fn identity_needs_alpha_plus_beta_one() {
    let s = session("M");
    assert!(!check_identity(&value(&s, "diff"), 20, 42).pass);
    assert!(check_identity(&value(&s, "onsurface"), 50, 42).pass);
}

#[test]
fn reports_are_deterministic() {
    let opts = RunOptions::default();
    for b in CATALOG {
        let r1 = b.run(&opts).unwrap();
        let r2 = b.run(&opts).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.to_string(), r2.to_string());
    }
}
