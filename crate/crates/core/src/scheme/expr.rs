use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gmap::{GMapSpec, OrbitType};
use crate::value::{binary_sort, mean_sort, BinOp, Sort, Value};

/// An embedding term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    /// A node variable.
    Var(String),
    /// `t.αi`
    Link(Box<Expr>, u8),
    /// `t.π`
    Access(Box<Expr>, String),
    /// `π{<o>(t)}`
    Collect {
        embedding: String,
        orbit: OrbitType,
        node: Box<Expr>,
    },
    Literal(Value),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// `mean(t)` or `rgb(r, g, b)`.
    Call(String, Vec<Expr>),
}

pub const FUNCTIONS: [&str; 2] = ["mean", "rgb"];

impl Expr {
    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn access(self, embedding: &str) -> Expr {
        Expr::Access(Box::new(self), embedding.to_string())
    }

    pub fn link(self, label: u8) -> Expr {
        Expr::Link(Box::new(self), label)
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    /// Node variables occurring in the term.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Link(e, _) | Expr::Access(e, _) | Expr::Neg(e) => e.collect_vars(out),
            Expr::Collect { node, .. } => node.collect_vars(out),
            Expr::Literal(_) => {}
            Expr::Binary(_, l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// The sort of the term under the signature.
    pub fn sort(&self, spec: &GMapSpec) -> Result<Sort> {
        let node = |e: &Expr, what: &str| -> Result<()> {
            match e.sort(spec)? {
                Sort::Node => Ok(()),
                s => Err(Error::Sort(format!("{what} expects a node, got {s}"))),
            }
        };
        match self {
            Expr::Var(_) => Ok(Sort::Node),
            Expr::Link(e, l) => {
                node(e, "link")?;
                if *l > spec.dimension {
                    return Err(Error::LabelOutOfRange { label: *l, dimension: spec.dimension });
                }
                Ok(Sort::Node)
            }
            Expr::Access(e, name) => {
                node(e, "access")?;
                Ok(spec.embedding(name)?.sort.clone())
            }
            Expr::Collect { embedding, orbit, node: e } => {
                node(e, "collect")?;
                orbit.check_dimension(spec.dimension)?;
                Ok(Sort::Multi(Box::new(spec.embedding(embedding)?.sort.clone())))
            }
            Expr::Literal(v) => Ok(v.sort()),
            Expr::Neg(e) => {
                let s = e.sort(spec)?;
                binary_sort(BinOp::Mul, &Sort::Scalar, &s).ok_or_else(|| Error::Sort(format!("cannot negate {s}")))
            }
            Expr::Binary(op, l, r) => {
                let (ls, rs) = (l.sort(spec)?, r.sort(spec)?);
                binary_sort(*op, &ls, &rs)
                    .ok_or_else(|| Error::Sort(format!("no operation {ls} {} {rs}", op.symbol())))
            }
            Expr::Call(name, args) => match (name.as_str(), args.as_slice()) {
                ("mean", [a]) => {
                    let s = a.sort(spec)?;
                    mean_sort(&s).ok_or_else(|| Error::Sort(format!("mean is undefined on {s}")))
                }
                ("rgb", [r, g, b]) => {
                    for c in [r, g, b] {
                        let s = c.sort(spec)?;
                        if s != Sort::Scalar {
                            return Err(Error::Sort(format!("rgb expects scalars, got {s}")));
                        }
                    }
                    Ok(Sort::Color)
                }
                _ => Err(Error::Sort(format!("no function {name} with {} arguments", args.len()))),
            },
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Literal(Value::Scalar(_)) => {
                let text = self.to_string();
                if text.contains('/') {
                    2
                } else if text.starts_with('-') {
                    3
                } else {
                    4
                }
            }
            _ => 4,
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Link(e, l) => {
                wrap(f, e, e.precedence() < 4)?;
                write!(f, ".a{l}")
            }
            Expr::Access(e, name) => {
                wrap(f, e, e.precedence() < 4)?;
                write!(f, ".{name}")
            }
            Expr::Collect { embedding, orbit, node } => write!(f, "{embedding}{{{orbit}({node})}}"),
            Expr::Literal(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                wrap(f, e, e.precedence() < 3)
            }
            Expr::Binary(op, l, r) => {
                let p = self.precedence();
                wrap(f, l, l.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                wrap(f, r, r.precedence() <= p)
            }
            Expr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
