//! Report values. Every report is a YAML mapping whose first key is
//! `format: 1`; keys keep insertion order so output is byte-stable.

use krull_core::krull::DescentStep;
use krull_core::{Dim, Poly, VarChange};
use serde_yaml::{Mapping, Value};

pub const FORMAT: u64 = 1;

pub struct Report(Mapping);

impl Report {
    pub fn new(command: &str) -> Self {
        let mut m = Mapping::new();
        m.insert("format".into(), FORMAT.into());
        m.insert("command".into(), command.into());
        Report(m)
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.0.insert(key.into(), v.into());
        self
    }

    pub fn render(&self) -> String {
        serde_yaml::to_string(&self.0).expect("report mappings serialize")
    }
}

pub fn map(pairs: impl IntoIterator<Item = (String, Value)>) -> Value {
    Value::Mapping(pairs.into_iter().map(|(k, v)| (Value::String(k), v)).collect())
}

pub fn dim(d: Dim) -> Value {
    match d {
        Dim::Finite(k) => (k as u64).into(),
        Dim::MinusInfinity => "-inf".into(),
    }
}

pub fn verdict(ok: bool) -> Value {
    if ok { "MATCH" } else { "MISMATCH" }.into()
}

pub fn poly_x(p: &Poly) -> Value {
    p.to_string().into()
}

pub fn poly_t(p: &Poly) -> Value {
    p.display_with('t').to_string().into()
}

/// `t_i` in terms of `x` under `forward`, `x_i` in terms of `t` under `backward`.
pub fn change(c: &VarChange) -> Value {
    let fwd = c.forward().iter().enumerate().map(|(i, p)| (format!("t{}", i + 1), poly_x(p)));
    let bwd = c.backward().iter().enumerate().map(|(i, p)| (format!("x{}", i + 1), poly_t(p)));
    map([
        ("label".into(), c.label().into()),
        ("forward".into(), map(fwd)),
        ("backward".into(), map(bwd)),
    ])
}

pub fn chain(steps: &[DescentStep]) -> Value {
    Value::Sequence(
        steps
            .iter()
            .map(|s| {
                map([
                    ("nvars".into(), (s.nvars_before as u64).into()),
                    ("change".into(), change(&s.change)),
                    ("witness".into(), poly_t(&s.witness)),
                    ("rank_after".into(), (s.presentation.rank() as u64).into()),
                ])
            })
            .collect(),
    )
}
