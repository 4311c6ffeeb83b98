//! Parameter sweeps over experiment specs, reduced to CSV.
//!
//! The axis names a field by dotted path into the spec JSON (for example
//! `code.t` or `channel.noise.size`); each value produces one experiment
//! run and one CSV row. Coupled fields move together by listing several
//! paths separated by `;` (for example `code.blocks;channel.blocks` to
//! sweep a concatenated code's block count). Per-row build or run errors
//! land in the `error` column and the sweep continues.

use serde_json::Value;

use crate::harness::descriptors::ExperimentSpec;
use crate::harness::experiment::run_experiment;
use crate::harness::HarnessError;

pub const CSV_HEADER: &str = "axis_value,n,k,t,epsilon_target,trials,failures,failure_rate,\
wilson_lo,wilson_hi,rate,bound_rate,margin,seconds,error";

/// Sets `path` (dotted) inside `root` to `value`, creating nothing: the path
/// must already exist.
fn set_path(root: &mut Value, path: &str, value: Value) -> Result<(), HarnessError> {
    let mut cursor = root;
    let parts: Vec<&str> = path.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let obj = cursor
            .as_object_mut()
            .ok_or_else(|| HarnessError::Config(format!("path {path} crosses a non-object")))?;
        if i + 1 == parts.len() {
            if !obj.contains_key(*part) {
                return Err(HarnessError::Config(format!(
                    "spec has no field {part:?} along {path}"
                )));
            }
            obj.insert((*part).to_string(), value);
            return Ok(());
        }
        cursor = obj.get_mut(*part).ok_or_else(|| {
            HarnessError::Config(format!("spec has no field {part:?} along {path}"))
        })?;
    }
    Err(HarnessError::Config("empty axis path".into()))
}

fn number_value(v: f64) -> Value {
    if v.fract() == 0.0 && v.abs() < 9e15 {
        Value::from(v as i64)
    } else {
        Value::from(v)
    }
}

fn set_paths(root: &mut Value, axis: &str, value: Value) -> Result<(), HarnessError> {
    for path in axis.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        set_path(root, path, value.clone())?;
    }
    Ok(())
}

/// Runs one experiment per axis value and renders the fixed-column CSV.
pub fn sweep(spec: &ExperimentSpec, axis: &str, values: &[f64]) -> Result<String, HarnessError> {
    let base = serde_json::to_value(spec)?;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for &v in values {
        let mut row_spec = base.clone();
        let row = match set_paths(&mut row_spec, axis, number_value(v))
            .and_then(|()| Ok(serde_json::from_value::<ExperimentSpec>(row_spec)?))
            .and_then(|s| run_experiment(&s))
        {
            Ok(r) => format!(
                "{v},{},{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.3},",
                r.n,
                r.k,
                r.t,
                r.epsilon_target,
                r.trials,
                r.failures,
                r.failure_rate,
                r.wilson_lo,
                r.wilson_hi,
                r.rate,
                r.bound_rate,
                r.margin,
                r.seconds
            ),
            Err(e) => format!("{v},,,,,,,,,,,,,,{}", csv_escape(&e.to_string())),
        };
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
