//! Closed-form scalar functions of a single variable.
//!
//! The fundamental invariants of a ruled surface (and the profile `f` of a
//! polar support function) are written in a small infix language, parsed
//! into a [`ScalarExpr`] tree and differentiated symbolically. The grammar
//! is fixed and closed under differentiation, so [`ScalarExpr::derivative`]
//! never fails. See `docs/expr-grammar.md` for the EBNF.

mod antiderivative;
mod parse;

pub use antiderivative::{cumulative_integral, Antiderivative};
pub use parse::parse_expr;

use std::fmt;

use crate::error::{Error, Result};

/// Expression tree over one variable.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarExpr {
    Const(f64),
    Var,
    Neg(Box<ScalarExpr>),
    Add(Box<ScalarExpr>, Box<ScalarExpr>),
    Sub(Box<ScalarExpr>, Box<ScalarExpr>),
    Mul(Box<ScalarExpr>, Box<ScalarExpr>),
    Div(Box<ScalarExpr>, Box<ScalarExpr>),
    /// Integer power.
    Pow(Box<ScalarExpr>, i32),
    Sin(Box<ScalarExpr>),
    Cos(Box<ScalarExpr>),
    Exp(Box<ScalarExpr>),
}

use ScalarExpr::*;

impl ScalarExpr {
    /// Parses `src` with `u` as the variable.
    pub fn parse(src: &str) -> Result<Self> {
        parse_expr(src, "u")
    }

    /// Parses `src` with a custom variable name (e.g. `V` for polar profiles).
    pub fn parse_in(src: &str, var: &str) -> Result<Self> {
        parse_expr(src, var)
    }

    pub fn constant(c: f64) -> Self {
        Const(c)
    }

    pub fn var() -> Self {
        Var
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Const(c) if *c == 0.0)
    }

    /// True if the tree does not reference the variable.
    pub fn is_constant(&self) -> bool {
        match self {
            Const(_) => true,
            Var => false,
            Neg(a) | Pow(a, _) | Sin(a) | Cos(a) | Exp(a) => a.is_constant(),
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Evaluates at `x`. Any non-finite intermediate value is an error.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_raw(x).ok_or_else(|| Error::NonFinite {
            expr: self.to_string(),
            var: "u",
            at: x,
        })
    }

    fn eval_raw(&self, x: f64) -> Option<f64> {
        let r = match self {
            Const(c) => *c,
            Var => x,
            Neg(a) => -a.eval_raw(x)?,
            Add(a, b) => a.eval_raw(x)? + b.eval_raw(x)?,
            Sub(a, b) => a.eval_raw(x)? - b.eval_raw(x)?,
            Mul(a, b) => a.eval_raw(x)? * b.eval_raw(x)?,
            Div(a, b) => {
                let d = b.eval_raw(x)?;
                if d == 0.0 {
                    return None;
                }
                a.eval_raw(x)? / d
            }
            Pow(a, n) => a.eval_raw(x)?.powi(*n),
            Sin(a) => a.eval_raw(x)?.sin(),
            Cos(a) => a.eval_raw(x)?.cos(),
            Exp(a) => a.eval_raw(x)?.exp(),
        };
        r.is_finite().then_some(r)
    }

    /// Exact symbolic derivative with light constant folding.
    pub fn derivative(&self) -> ScalarExpr {
        match self {
            Const(_) => Const(0.0),
            Var => Const(1.0),
            Neg(a) => neg(a.derivative()),
            Add(a, b) => add(a.derivative(), b.derivative()),
            Sub(a, b) => sub(a.derivative(), b.derivative()),
            Mul(a, b) => add(
                mul(a.derivative(), (**b).clone()),
                mul((**a).clone(), b.derivative()),
            ),
            Div(a, b) => div(
                sub(
                    mul(a.derivative(), (**b).clone()),
                    mul((**a).clone(), b.derivative()),
                ),
                pow((**b).clone(), 2),
            ),
            Pow(a, n) => mul(
                mul(Const(*n as f64), pow((**a).clone(), n - 1)),
                a.derivative(),
            ),
            Sin(a) => mul(cos((**a).clone()), a.derivative()),
            Cos(a) => neg(mul(sin((**a).clone()), a.derivative())),
            Exp(a) => mul(exp((**a).clone()), a.derivative()),
        }
    }

    /// Renders the expression using `var` as the variable name.
    pub fn display<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        Printer { e: self, var }
    }
}

/// Free function form of [`ScalarExpr::eval`].
pub fn eval_expr(e: &ScalarExpr, u: f64) -> Result<f64> {
    e.eval(u)
}

/// Free function form of [`ScalarExpr::derivative`].
pub fn differentiate(e: &ScalarExpr) -> ScalarExpr {
    e.derivative()
}

// Smart constructors. They fold constants and drop neutral elements so that
// repeated differentiation does not blow up the tree.

pub fn add(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr {
    match (&a, &b) {
        (Const(x), Const(y)) => Const(x + y),
        _ if a.is_zero() => b,
        _ if b.is_zero() => a,
        _ => Add(Box::new(a), Box::new(b)),
    }
}

pub fn sub(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr {
    match (&a, &b) {
        (Const(x), Const(y)) => Const(x - y),
        _ if b.is_zero() => a,
        _ if a.is_zero() => neg(b),
        _ => Sub(Box::new(a), Box::new(b)),
    }
}

pub fn mul(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr {
    match (&a, &b) {
        (Const(x), Const(y)) => Const(x * y),
        _ if a.is_zero() || b.is_zero() => Const(0.0),
        (Const(x), _) if *x == 1.0 => b,
        (_, Const(y)) if *y == 1.0 => a,
        (Const(x), _) if *x == -1.0 => neg(b),
        (_, Const(y)) if *y == -1.0 => neg(a),
        _ => Mul(Box::new(a), Box::new(b)),
    }
}

pub fn div(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr {
    match (&a, &b) {
        (Const(x), Const(y)) if *y != 0.0 => Const(x / y),
        _ if a.is_zero() => Const(0.0),
        (_, Const(y)) if *y == 1.0 => a,
        _ => Div(Box::new(a), Box::new(b)),
    }
}

pub fn neg(a: ScalarExpr) -> ScalarExpr {
    match a {
        Const(x) => Const(-x),
        Neg(inner) => *inner,
        other => Neg(Box::new(other)),
    }
}

pub fn pow(a: ScalarExpr, n: i32) -> ScalarExpr {
    match (&a, n) {
        (_, 0) => Const(1.0),
        (_, 1) => a,
        (Const(x), _) => Const(x.powi(n)),
        _ => Pow(Box::new(a), n),
    }
}

pub fn sin(a: ScalarExpr) -> ScalarExpr {
    match a {
        Const(x) => Const(x.sin()),
        other => Sin(Box::new(other)),
    }
}

pub fn cos(a: ScalarExpr) -> ScalarExpr {
    match a {
        Const(x) => Const(x.cos()),
        other => Cos(Box::new(other)),
    }
}

pub fn exp(a: ScalarExpr) -> ScalarExpr {
    match a {
        Const(x) => Const(x.exp()),
        other => Exp(Box::new(other)),
    }
}

struct Printer<'a> {
    e: &'a ScalarExpr,
    var: &'a str,
}

impl Printer<'_> {
    fn prec(e: &ScalarExpr) -> u8 {
        match e {
            Add(..) | Sub(..) => 1,
            Mul(..) | Div(..) => 2,
            Neg(..) => 3,
            Pow(..) => 4,
            Const(c) if *c < 0.0 => 3,
            _ => 5,
        }
    }

    fn write(&self, e: &ScalarExpr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |child: &ScalarExpr, min: u8, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if Self::prec(child) < min {
                write!(f, "(")?;
                self.write(child, f)?;
                write!(f, ")")
            } else {
                self.write(child, f)
            }
        };
        match e {
            Const(c) => write!(f, "{c:?}"),
            Var => write!(f, "{}", self.var),
            Neg(a) => {
                write!(f, "-")?;
                wrap(a, 4, f)
            }
            Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 2, f)
            }
            Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " - ")?;
                wrap(b, 2, f)
            }
            Mul(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "*")?;
                wrap(b, 3, f)
            }
            Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "/")?;
                wrap(b, 3, f)
            }
            Pow(a, n) => {
                wrap(a, 5, f)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Sin(a) => {
                write!(f, "sin(")?;
                self.write(a, f)?;
                write!(f, ")")
            }
            Cos(a) => {
                write!(f, "cos(")?;
                self.write(a, f)?;
                write!(f, ")")
            }
            Exp(a) => {
                write!(f, "exp(")?;
                self.write(a, f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.e, f)
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Printer { e: self, var: "u" }.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn central(e: &ScalarExpr, x: f64, h: f64) -> f64 {
        (e.eval(x + h).unwrap() - e.eval(x - h).unwrap()) / (2.0 * h)
    }

    #[test]
    fn eval_trivial_cases() {
        assert_eq!(ScalarExpr::parse("1").unwrap().eval(3.7).unwrap(), 1.0);
        assert_eq!(ScalarExpr::parse("sin(u)").unwrap().eval(0.0).unwrap(), 0.0);
        let e = ScalarExpr::parse("2 + sin(u)").unwrap();
        assert_eq!(e.eval(PI / 2.0).unwrap(), 3.0);
    }

    #[test]
    fn eval_rejects_division_by_zero() {
        let e = ScalarExpr::parse("1/u").unwrap();
        assert!(matches!(e.eval(0.0), Err(Error::NonFinite { .. })));
        let e = ScalarExpr::parse("exp(u)").unwrap();
        assert!(e.eval(1000.0).is_err());
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let e = ScalarExpr::parse("3.5").unwrap();
        assert_eq!(e.derivative(), Const(0.0));
    }

    #[test]
    fn derivative_of_sin_at_zero() {
        let d = ScalarExpr::parse("sin(u)").unwrap().derivative();
        assert_eq!(d.eval(0.0).unwrap(), 1.0);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let e = ScalarExpr::parse("2 + sin(u)").unwrap();
        let d = e.derivative().eval(1.0).unwrap();
        assert!((d - central(&e, 1.0, 1e-5)).abs() <= 1e-9);
    }

    #[test]
    fn second_derivative_is_defined() {
        let e = ScalarExpr::parse("u^3/(2 + cos(u)) - exp(-u^2)").unwrap();
        let d2 = e.derivative().derivative();
        let d1 = e.derivative();
        let x = 0.4;
        assert!((d2.eval(x).unwrap() - central(&d1, x, 1e-5)).abs() < 1e-8);
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "2 + sin(u)",
            "-u^2",
            "(u - 1)*(u + 1)/3",
            "u^(-2)",
            "exp(-(u/5))",
        ] {
            let e = ScalarExpr::parse(src).unwrap();
            let back = ScalarExpr::parse(&e.to_string()).unwrap();
            for x in [0.3, 1.7, -2.2] {
                assert_eq!(e.eval(x).unwrap(), back.eval(x).unwrap(), "{src}");
            }
        }
    }

    #[test]
    fn custom_variable_name() {
        let f = ScalarExpr::parse_in("3*cos(V) - 2*sin(V)", "V").unwrap();
        assert_eq!(f.display("V").to_string(), "3.0*cos(V) - 2.0*sin(V)");
        assert!(ScalarExpr::parse_in("cos(u)", "V").is_err());
    }
}
