use std::collections::BTreeMap;

use num::One;

use super::expr::Expr;
use crate::error::{Error, Result};
use crate::gmap::{access, collect, link, GMap};
use crate::graph::{ArcLabel, IGraph, NodeId};
use crate::value::{BinOp, Rational, Value};

/// Interpretation of node variables in a host graph.
pub type Assignment = BTreeMap<String, NodeId>;

enum Denotation {
    Node(NodeId),
    Data(Value),
}

fn node(d: Denotation) -> Result<NodeId> {
    match d {
        Denotation::Node(n) => Ok(n),
        Denotation::Data(v) => Err(Error::Sort(format!("expected a node, got {v}"))),
    }
}

fn data(d: Denotation) -> Result<Value> {
    match d {
        Denotation::Data(v) => Ok(v),
        Denotation::Node(n) => Err(Error::Sort(format!("expected data, got node `{n}`"))),
    }
}

fn eval(e: &Expr, sigma: &Assignment, g: &GMap) -> Result<Denotation> {
    Ok(match e {
        Expr::Var(v) => Denotation::Node(sigma.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.clone()))?),
        Expr::Link(t, l) => {
            let n = node(eval(t, sigma, g)?)?;
            Denotation::Node(link(&g.graph, &n, ArcLabel(*l))?)
        }
        Expr::Access(t, name) => {
            let n = node(eval(t, sigma, g)?)?;
            let v = access(&g.graph, &g.spec, &n, name)?.ok_or_else(|| Error::UndefinedLabel {
                node: n.clone(),
                embedding: name.clone(),
            })?;
            Denotation::Data(v.clone())
        }
        Expr::Collect { embedding, orbit, node: t } => {
            let n = node(eval(t, sigma, g)?)?;
            Denotation::Data(collect(&g.graph, &g.spec, embedding, orbit, &n)?)
        }
        Expr::Literal(v) => Denotation::Data(v.clone()),
        Expr::Neg(t) => {
            let v = data(eval(t, sigma, g)?)?;
            Denotation::Data(Value::binary(BinOp::Mul, &Value::Scalar(-Rational::one()), &v)?)
        }
        Expr::Binary(op, l, r) => {
            let (a, b) = (data(eval(l, sigma, g)?)?, data(eval(r, sigma, g)?)?);
            Denotation::Data(Value::binary(*op, &a, &b)?)
        }
        Expr::Call(name, args) => {
            let vals = args
                .iter()
                .map(|a| data(eval(a, sigma, g)?))
                .collect::<Result<Vec<_>>>()?;
            Denotation::Data(match (name.as_str(), vals.as_slice()) {
                ("mean", [m]) => m.mean()?,
                ("rgb", [Value::Scalar(r), Value::Scalar(gr), Value::Scalar(b)]) => {
                    Value::Color(r.clone(), gr.clone(), b.clone())
                }
                _ => return Err(Error::Sort(format!("bad arguments to {name}"))),
            })
        }
    })
}

/// `eval_σ(t)`: the value of a data term in `g`.
pub fn eval_expression(e: &Expr, sigma: &Assignment, g: &GMap) -> Result<Value> {
    data(eval(e, sigma, g)?)
}

/// `eval_σ(H)`: same base, every expression label replaced by its value.
pub fn eval_graph_scheme(h: &IGraph<Expr>, sigma: &Assignment, g: &GMap) -> Result<IGraph<Value>> {
    h.try_map_labels(|_, _, e| eval_expression(e, sigma, g))
}
