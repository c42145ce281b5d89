//! The JSON code document read and written by the CLI.

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tgrs_core::tgrs::{Classification, TgrsParams};
use tgrs_core::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldDoc {
    pub fn of(f: &Field) -> FieldDoc {
        FieldDoc {
            p: f.characteristic(),
            m: f.degree(),
            modulus: f.modulus().to_vec(),
        }
    }

    pub fn field(&self) -> Result<Field> {
        Ok(Field::new(self.p, self.m, Some(&self.modulus))?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub k: usize,
    pub alpha: Vec<u32>,
    pub v: Vec<u32>,
    pub eta: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeDocument {
    pub field: FieldDoc,
    pub params: ParamsDoc,
    pub n: usize,
    pub generator: Vec<Vec<u32>>,
    pub parity_check: Vec<Vec<u32>>,
    pub classification: Option<Classification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<Value>,
}

impl CodeDocument {
    pub fn new(p: &TgrsParams) -> CodeDocument {
        let r = p.reps();
        CodeDocument {
            field: FieldDoc::of(p.field()),
            params: ParamsDoc {
                k: r.k,
                alpha: r.alpha,
                v: r.v,
                eta: r.eta,
            },
            n: p.n(),
            generator: p.generator_matrix().to_reps(),
            parity_check: p.parity_check_matrix().to_reps(),
            classification: p.classify().ok(),
            weights: None,
            properties: None,
            construction: None,
        }
    }
}

/// The parts of a document needed to rebuild the code. Matrices, when
/// present, must agree with the rebuilt ones.
#[derive(Debug, Deserialize)]
struct InputDoc {
    field: FieldDoc,
    params: ParamsDoc,
    generator: Option<Vec<Vec<u32>>>,
    parity_check: Option<Vec<Vec<u32>>>,
}

pub fn read_document(path: &Path) -> Result<TgrsParams> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let doc: InputDoc = serde_json::from_str(&text).context("parsing code document")?;
    let field = doc.field.field()?;
    let p = TgrsParams::from_reps(
        &field,
        doc.params.k,
        &doc.params.alpha,
        &doc.params.v,
        doc.params.eta,
    )?;
    if let Some(g) = doc.generator {
        if g != p.generator_matrix().to_reps() {
            bail!("document generator does not match the parameters");
        }
    }
    if let Some(h) = doc.parity_check {
        if h != p.parity_check_matrix().to_reps() {
            bail!("document parity_check does not match the parameters");
        }
    }
    Ok(p)
}

pub fn parse_csv(field: &Field, text: &str, what: &str) -> Result<Vec<Elem>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let x: u64 = t
                .parse()
                .with_context(|| format!("{what}: `{t}` is not an integer"))?;
            Ok(field.elem(x)?)
        })
        .collect()
}

/// Rows of integers as text, one row per line.
pub fn grid_text(rows: &[Vec<u32>]) -> String {
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
            format!("  [{} ]", cells.join(""))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trip() {
        let f = Field::with_order(8).unwrap();
        let p = TgrsParams::from_reps(&f, 3, &[1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6], 3).unwrap();
        let doc = CodeDocument::new(&p);
        let text = serde_json::to_string(&doc).unwrap();
        let dir = std::env::temp_dir().join(format!("tgrs-doc-{}.json", std::process::id()));
        std::fs::write(&dir, &text).unwrap();
        let back = read_document(&dir).unwrap();
        std::fs::remove_file(&dir).ok();
        assert_eq!(back, p);
    }

    #[test]
    fn tampered_generator_is_rejected() {
        let f = Field::with_order(5).unwrap();
        let p = TgrsParams::from_reps(&f, 3, &[1, 2, 3, 4], &[1; 4], 1).unwrap();
        let mut doc = serde_json::to_value(CodeDocument::new(&p)).unwrap();
        doc["generator"][0][0] = Value::from(1);
        let path = std::env::temp_dir().join(format!("tgrs-bad-{}.json", std::process::id()));
        std::fs::write(&path, doc.to_string()).unwrap();
        let err = read_document(&path).unwrap_err();
        std::fs::remove_file(&path).ok();
        assert!(err.to_string().contains("generator"));
    }

    #[test]
    fn csv_values_are_checked() {
        let f = Field::with_order(5).unwrap();
        assert_eq!(parse_csv(&f, "1, 2,3", "alpha").unwrap().len(), 3);
        assert!(parse_csv(&f, "1,5", "alpha").is_err());
        assert!(parse_csv(&f, "1,x", "alpha").is_err());
    }
}
