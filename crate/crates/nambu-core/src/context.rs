use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::Rational;

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    n: usize,
    var_names: Vec<String>,
}

/// The ambient coordinate chart: dimension `n` and one name per variable.
///
/// Contexts are cheap to clone and compared by value, so two independently
/// constructed charts with the same names are interchangeable.
#[derive(Debug, Clone)]
pub struct Context(Arc<Inner>);

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Context {}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_reserved(name: &str) -> bool {
    // Axis tokens of the expression grammar: D<k> and dx<k>.
    for prefix in ["D", "dx"] {
        if let Some(rest) = name.strip_prefix(prefix) {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                return true;
            }
        }
    }
    false
}

impl Context {
    /// Chart of dimension `n` with positional names `x1..xn`.
    pub fn new(n: usize) -> Result<Context> {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Context::with_names(names)
    }

    /// Chart with explicit variable names.
    pub fn with_names(var_names: Vec<String>) -> Result<Context> {
        let n = var_names.len();
        if n == 0 {
            return Err(Error::Degree("context dimension must be at least 1".into()));
        }
        for (i, name) in var_names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Degree(format!("invalid variable name {name:?}")));
            }
            if is_reserved(name) {
                return Err(Error::Degree(format!(
                    "variable name {name:?} collides with an axis token"
                )));
            }
            if var_names[..i].contains(name) {
                return Err(Error::Degree(format!("duplicate variable name {name:?}")));
            }
        }
        Ok(Context(Arc::new(Inner { n, var_names })))
    }

    pub fn dim(&self) -> usize {
        self.0.n
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.var_names
    }

    /// Name of the 1-based variable `i`.
    pub fn var_name(&self, i: usize) -> Result<&str> {
        self.0
            .var_names
            .get(i.checked_sub(1).ok_or(Error::IndexOutOfRange { index: i, n: self.dim() })?)
            .map(|s| s.as_str())
            .ok_or(Error::IndexOutOfRange { index: i, n: self.dim() })
    }

    /// 1-based index of a named variable.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.var_names.iter().position(|v| v == name).map(|i| i + 1)
    }

    /// Chart spanned by the trailing variables `x_{k+1}..x_n`, keeping their names.
    pub fn drop_leading(&self, k: usize) -> Result<Context> {
        if k >= self.dim() {
            return Err(Error::Degree(format!(
                "cannot drop {k} variables from a {}-dimensional context",
                self.dim()
            )));
        }
        Context::with_names(self.0.var_names[k..].to_vec())
    }

    pub(crate) fn check_same(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i >= 1 && i <= self.dim() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.dim() })
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.var_names.join(","))
    }
}

/// A rational point of the chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    ctx: Context,
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(ctx: Context, coords: Vec<Rational>) -> Result<Point> {
        if coords.len() != ctx.dim() {
            return Err(Error::PointDimension { expected: ctx.dim(), got: coords.len() });
        }
        Ok(Point { ctx, coords })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_names_are_positional() {
        let ctx = Context::new(3).unwrap();
        assert_eq!(ctx.var_names(), ["x1", "x2", "x3"]);
        assert_eq!(ctx.var_index("x2"), Some(2));
    }

    #[test]
    fn equal_by_value() {
        let a = Context::new(2).unwrap();
        let b = Context::with_names(vec!["x1".into(), "x2".into()]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_axis_collisions_and_duplicates() {
        assert!(Context::with_names(vec!["D1".into()]).is_err());
        assert!(Context::with_names(vec!["dx2".into()]).is_err());
        assert!(Context::with_names(vec!["a".into(), "a".into()]).is_err());
        assert!(Context::with_names(vec!["1x".into()]).is_err());
        assert!(Context::new(0).is_err());
    }

    #[test]
    fn drop_leading_keeps_names() {
        let ctx = Context::new(3).unwrap();
        let red = ctx.drop_leading(2).unwrap();
        assert_eq!(red.var_names(), ["x3"]);
        assert!(ctx.drop_leading(3).is_err());
    }
}
