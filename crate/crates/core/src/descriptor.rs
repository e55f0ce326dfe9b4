//! JSON form of a [`CodeDescriptor`].
//!
//! ```json
//! {"n":3,"k":1,
//!  "field":{"p":5,"e":1,"k_ext":1,"base_modulus":[0,1],"ext_modulus":[[0],[1]]},
//!  "generator":[[[[[1]],[[2]],[[3]]]],[[[[1]],[[1]],[[1]]]]],
//!  "label":"...","provenance":"..."}
//! ```
//!
//! `generator[i][r][c]` is entry `(r, c)` of the coefficient of `D^i`, each
//! element written as `k_ext` arrays of `e` base-`p` digits, lowest first.
//! `label` and `provenance` are optional. Output is compact with keys in the
//! order above, followed by a newline.

use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::conv::CodeDescriptor;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::{Mat, PolyMat};

#[derive(Serialize)]
struct Wire<'a> {
    n: usize,
    k: usize,
    field: &'a FieldSpec,
    generator: Vec<Vec<Vec<Vec<Vec<u64>>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<&'a str>,
}

pub fn to_json(code: &CodeDescriptor) -> String {
    let f = &code.field;
    let generator = code
        .generator
        .coeffs()
        .iter()
        .map(|m| {
            (0..m.rows())
                .map(|r| m.row(r).iter().map(|&e| f.encode(e)).collect())
                .collect()
        })
        .collect();
    let wire = Wire {
        n: code.n,
        k: code.k,
        field: f.spec(),
        generator,
        label: code.label.as_deref(),
        provenance: code.provenance.as_deref(),
    };
    let mut s = serde_json::to_string(&wire).expect("descriptor serializes");
    s.push('\n');
    s
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

fn uint(v: &Value, ptr: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| schema(ptr, "expected a non-negative integer"))
}

fn array<'a>(v: &'a Value, ptr: &str, len: Option<usize>) -> Result<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| schema(ptr, "expected an array"))?;
    if let Some(l) = len {
        if a.len() != l {
            return Err(schema(ptr, format!("expected {l} entries, found {}", a.len())));
        }
    }
    Ok(a)
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, ptr: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(ptr, format!("missing key \"{key}\"")))
}

fn digits(v: &Value, ptr: &str, len: usize, p: u64) -> Result<Vec<u64>> {
    array(v, ptr, Some(len))?
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let ptr = format!("{ptr}/{i}");
            let d = uint(d, &ptr)?;
            if d >= p {
                return Err(schema(ptr, format!("coefficient {d} is not below p = {p}")));
            }
            Ok(d)
        })
        .collect()
}

fn field_spec(v: &Value) -> Result<FieldSpec> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("/field", "expected an object"))?;
    for key in obj.keys() {
        if !["p", "e", "k_ext", "base_modulus", "ext_modulus"].contains(&key.as_str()) {
            return Err(schema(format!("/field/{key}"), "unknown key"));
        }
    }
    let p = uint(get(obj, "p", "/field")?, "/field/p")?;
    let e = uint(get(obj, "e", "/field")?, "/field/e")?;
    let k_ext = uint(get(obj, "k_ext", "/field")?, "/field/k_ext")?;
    if p < 2 || e == 0 || k_ext == 0 || e > 64 || k_ext > 64 {
        return Err(schema("/field", "p must be at least 2, e and k_ext in 1..=64"));
    }
    let base_modulus = digits(
        get(obj, "base_modulus", "/field")?,
        "/field/base_modulus",
        e as usize + 1,
        p,
    )?;
    let ext = array(
        get(obj, "ext_modulus", "/field")?,
        "/field/ext_modulus",
        Some(k_ext as usize + 1),
    )?;
    let ext_modulus = ext
        .iter()
        .enumerate()
        .map(|(i, c)| digits(c, &format!("/field/ext_modulus/{i}"), e as usize, p))
        .collect::<Result<_>>()?;
    Ok(FieldSpec {
        p,
        e: e as u32,
        k_ext: k_ext as u32,
        base_modulus,
        ext_modulus,
    })
}

fn optional_string(obj: &Map<String, Value>, key: &str) -> Result<Option<String>> {
    match obj.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(schema(format!("/{key}"), "expected a string")),
    }
}

pub fn from_json(text: &str) -> Result<CodeDescriptor> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema("", e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| schema("", "expected an object"))?;
    for key in obj.keys() {
        if !["n", "k", "field", "generator", "label", "provenance"].contains(&key.as_str()) {
            return Err(schema(format!("/{key}"), "unknown key"));
        }
    }
    let n = uint(get(obj, "n", "")?, "/n")? as usize;
    let k = uint(get(obj, "k", "")?, "/k")? as usize;
    if k == 0 || k >= n {
        return Err(schema("/k", format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    let spec = field_spec(get(obj, "field", "")?)?;
    let field = Field::new(spec).map_err(|e| schema("/field", e.to_string()))?;
    let (kx, e) = (field.k_ext() as usize, field.e() as usize);
    let gen = array(get(obj, "generator", "")?, "/generator", None)?;
    if gen.is_empty() {
        return Err(schema("/generator", "the constant coefficient is required"));
    }
    let mut coeffs = Vec::with_capacity(gen.len());
    for (i, m) in gen.iter().enumerate() {
        let ptr = format!("/generator/{i}");
        let mut mat = Mat::zeros(k, n);
        for (r, row) in array(m, &ptr, Some(k))?.iter().enumerate() {
            let ptr = format!("{ptr}/{r}");
            for (c, el) in array(row, &ptr, Some(n))?.iter().enumerate() {
                let ptr = format!("{ptr}/{c}");
                let parts = array(el, &ptr, Some(kx))?
                    .iter()
                    .enumerate()
                    .map(|(t, d)| digits(d, &format!("{ptr}/{t}"), e, field.p()))
                    .collect::<Result<Vec<_>>>()?;
                let elt = field.decode(&parts).map_err(|err| schema(&ptr, err.to_string()))?;
                mat.set(r, c, elt);
            }
        }
        coeffs.push(mat);
    }
    let generator = PolyMat::new(k, n, coeffs)?;
    let mut code = CodeDescriptor::new(field, generator)?;
    code.label = optional_string(obj, "label")?;
    code.provenance = optional_string(obj, "provenance")?;
    Ok(code)
}

pub fn read(path: impl AsRef<Path>) -> Result<CodeDescriptor> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| schema("", format!("{}: {e}", path.display())))?;
    from_json(&text)
}

pub fn write(path: impl AsRef<Path>, code: &CodeDescriptor) -> std::io::Result<()> {
    std::fs::write(path, to_json(code))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pointer(r: Result<CodeDescriptor>) -> String {
        match r {
            Err(Error::Schema { pointer, .. }) => pointer,
            other => panic!("expected a schema error, got {other:?}"),
        }
    }

    const F5: &str = r#"{"p":5,"e":1,"k_ext":1,"base_modulus":[0,1],"ext_modulus":[[0],[1]]}"#;

    #[test]
    fn round_trip() {
        let f = Field::build(5, 1, 1).unwrap();
        let code = CodeDescriptor::from_indices(f, &[vec![vec![1, 2, 3]], vec![vec![1, 1, 1]]])
            .unwrap()
            .with_label("x");
        let s = to_json(&code);
        assert!(s.starts_with(&format!("{{\"n\":3,\"k\":1,\"field\":{F5},")));
        assert!(s.ends_with("\"label\":\"x\"}\n"));
        let back = from_json(&s).unwrap();
        assert_eq!(back, code);
        assert_eq!(to_json(&back), s);
    }

    #[test]
    fn nested_elements() {
        let f = Field::build(2, 2, 2).unwrap();
        let code = CodeDescriptor::from_indices(f, &[vec![vec![0, 15]]]).unwrap();
        let s = to_json(&code);
        assert!(s.contains("\"generator\":[[[[[0,0],[0,0]],[[1,1],[1,1]]]]]"));
        assert_eq!(from_json(&s).unwrap(), code);
    }

    #[test]
    fn schema_errors_point_at_the_field() {
        let ok = format!(r#"{{"n":3,"k":1,"field":{F5},"generator":[[[[[1]],[[2]],[[3]]]]]}}"#);
        from_json(&ok).unwrap();
        let bad_mod = ok.replace(r#""base_modulus":[0,1]"#, r#""base_modulus":[0,1,1]"#);
        assert_eq!(pointer(from_json(&bad_mod)), "/field/base_modulus");
        let big = ok.replace("[[3]]", "[[7]]");
        assert_eq!(pointer(from_json(&big)), "/generator/0/0/2/0/0");
        let float = ok.replace("[[3]]", "[[3.0]]");
        assert_eq!(pointer(from_json(&float)), "/generator/0/0/2/0/0");
        let short = ok.replace(",[[3]]", "");
        assert_eq!(pointer(from_json(&short)), "/generator/0/0");
        let extra = ok.replace(r#""n":3,"#, r#""n":3,"x":1,"#);
        assert_eq!(pointer(from_json(&extra)), "/x");
        assert_eq!(pointer(from_json("[1]")), "");
        let reducible = ok.replace(
            r#""ext_modulus":[[0],[1]]"#,
            r#""ext_modulus":[[0],[2]]"#,
        );
        assert_eq!(pointer(from_json(&reducible)), "/field");
    }
}
