//! Minimal deterministic JSON emitter: insertion-ordered objects, exact
//! rationals as "num/den" strings, integers as decimal strings once they
//! leave the 53-bit safe range.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

#[derive(Clone, Debug)]
pub enum Json {
    Bool(bool),
    Int(i128),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

const SAFE: i128 = (1 << 53) - 1;

impl Json {
    pub fn str(s: impl Into<String>) -> Json {
        Json::Str(s.into())
    }

    /// Integer, widened to a decimal string beyond 53 bits.
    pub fn int(v: i128) -> Json {
        if v.abs() <= SAFE {
            Json::Int(v)
        } else {
            Json::Str(v.to_string())
        }
    }

    pub fn bigint(v: &BigInt) -> Json {
        if v.abs() <= BigInt::from(SAFE) {
            Json::Int(v.to_string().parse().expect("small bigint"))
        } else {
            Json::Str(v.to_string())
        }
    }

    /// Exact rational as a "num/den" string ("n" when integral).
    pub fn rational(v: &BigRational) -> Json {
        if v.denom().is_one() {
            Json::Str(v.numer().to_string())
        } else {
            Json::Str(format!("{}/{}", v.numer(), v.denom()))
        }
    }

    pub fn rational64(v: &num_rational::Rational64) -> Json {
        if *v.denom() == 1 {
            Json::Str(v.numer().to_string())
        } else {
            Json::Str(format!("{}/{}", v.numer(), v.denom()))
        }
    }

    pub fn write(&self, out: &mut String, indent: usize) {
        match self {

            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(v) => out.push_str(&v.to_string()),
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        '\n' => out.push_str("\\n"),
                        c if (c as u32) < 0x20 => {
                            out.push_str(&format!("\\u{:04x}", c as u32));
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push(' ');
                    item.write(out, indent);
                }
                out.push_str(" ]");
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push_str("{\n");
                let pad = "  ".repeat(indent + 1);
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push_str(",\n");
                    }
                    out.push_str(&pad);
                    Json::Str(k.clone()).write(out, indent + 1);
                    out.push_str(": ");
                    v.write(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, 0);
        s.push('\n');
        s
    }
}

/// Insertion-ordered object builder.
#[derive(Default)]
pub struct Obj(Vec<(String, Json)>);

impl Obj {
    pub fn new() -> Obj {
        Obj(vec![])
    }

    pub fn push(mut self, key: &str, value: Json) -> Obj {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn build(self) -> Json {
        Json::Obj(self.0)
    }
}
