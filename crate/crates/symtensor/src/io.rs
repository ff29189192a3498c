//! Line-oriented tensor file format with 1-based indices.
//!
//! ```text
//! # comment
//! tensor <order> <dim> <symmetric|general>
//! <i1> <i2> ... <ik> <value>
//! ```
//!
//! Symmetric mode stores canonical entries and rejects conflicting
//! duplicates; general mode lists position values and is symmetrized by
//! orbit averaging. Emission always writes canonical symmetric form, and
//! parse(emit(A)) reproduces A exactly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tensor::{MultiIndex, SymTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Symmetric,
    General,
}

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the tensor file format.
pub fn parse_tensor(text: &str) -> Result<SymTensor> {
    let mut header: Option<(usize, usize, Mode)> = None;
    let mut entries: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut seen: BTreeMap<MultiIndex, (f64, usize)> = BTreeMap::new();
    let mut seen_positions: BTreeMap<Vec<usize>, usize> = BTreeMap::new();

    for (number, raw) in text.lines().enumerate() {
        let number = number + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((order, dim, mode)) = header else {
            header = Some(parse_header(number, &tokens)?);
            continue;
        };
        if tokens.len() != order + 1 {
            return Err(parse_error(
                number,
                format!("expected {} indices and a value, got {} tokens", order, tokens.len()),
            ));
        }
        let mut indices = Vec::with_capacity(order);
        for token in &tokens[..order] {
            let index: usize = token
                .parse()
                .map_err(|_| parse_error(number, format!("invalid index {token:?}")))?;
            if index < 1 || index > dim {
                return Err(parse_error(
                    number,
                    format!("index {index} out of range 1..={dim}"),
                ));
            }
            indices.push(index - 1);
        }
        let value: f64 = tokens[order]
            .parse()
            .map_err(|_| parse_error(number, format!("invalid value {:?}", tokens[order])))?;
        if !value.is_finite() {
            return Err(parse_error(number, format!("value {value} is not finite")));
        }
        let key = MultiIndex::new(indices.clone());
        match mode {
            Mode::Symmetric => {
                if let Some(&(existing, first_line)) = seen.get(&key) {
                    if existing != value {
                        return Err(parse_error(
                            number,
                            format!(
                                "conflicting value {value} for entry first given as {existing} on line {first_line}"
                            ),
                        ));
                    }
                } else {
                    seen.insert(key, (value, number));
                }
            }
            Mode::General => {
                // Exact duplicate positions (not just orbits) are rejected.
                if let Some(&first_line) = seen_positions.get(&indices) {
                    return Err(parse_error(
                        number,
                        format!("position already given on line {first_line}"),
                    ));
                }
                seen_positions.insert(indices.clone(), number);
            }
        }
        entries.push((indices, value));
    }

    let Some((order, dim, mode)) = header else {
        return Err(parse_error(0, "missing header line"));
    };
    match mode {
        Mode::Symmetric => SymTensor::from_entries(order, dim, entries),
        Mode::General => SymTensor::symmetrize_from_positions(order, dim, entries),
    }
}

fn parse_header(number: usize, tokens: &[&str]) -> Result<(usize, usize, Mode)> {
    if tokens.len() != 4 || tokens[0] != "tensor" {
        return Err(parse_error(
            number,
            "header must be: tensor <order> <dim> <symmetric|general>",
        ));
    }
    let order: usize = tokens[1]
        .parse()
        .map_err(|_| parse_error(number, format!("invalid order {:?}", tokens[1])))?;
    let dim: usize = tokens[2]
        .parse()
        .map_err(|_| parse_error(number, format!("invalid dimension {:?}", tokens[2])))?;
    if order < 2 {
        return Err(parse_error(number, format!("order {order} is below 2")));
    }
    if dim == 0 {
        return Err(parse_error(number, "dimension must be positive"));
    }
    let mode = match tokens[3] {
        "symmetric" => Mode::Symmetric,
        "general" => Mode::General,
        other => {
            return Err(parse_error(
                number,
                format!("mode must be symmetric or general, got {other:?}"),
            ))
        }
    };
    Ok((order, dim, mode))
}

/// Emits canonical symmetric form with 1-based indices, one entry per line.
pub fn emit_tensor(a: &SymTensor) -> String {
    let mut out = format!("tensor {} {} symmetric\n", a.order(), a.dim());
    for (key, value) in a.entries() {
        for &i in key.indices() {
            out.push_str(&(i + 1).to_string());
            out.push(' ');
        }
        out.push_str(&value.to_string());
        out.push('\n');
    }
    out
}
