//! Report serialization and function file I/O.
//!
//! JSON reports carry a `schema` tag and write every float with 17
//! significant digits, so identical runs produce byte-identical files.

use std::io;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::config::SCHEMA;
use crate::error::{Error, Result};
use crate::groups::{GroupKind, GroupModel};
use crate::transform::GroupFunction;

/// Pretty JSON with floats written as `d.dddddddddddddddde±x`.
struct ExactFloats<'a>(PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        end_object_key(),
        begin_object_value(),
        end_object_value(),
    );
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Serializes `body` with the schema tag and the name of the producing command.
pub fn to_json<T: Serialize>(command: &str, body: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut out, ExactFloats(PrettyFormatter::new()));
    Tagged {
        schema: SCHEMA,
        command,
        body,
    }
    .serialize(&mut ser)?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Io(e.to_string()))
}

/// Writes rows as CSV with a header.
pub fn to_csv<S: AsRef<str>>(header: &[&str], rows: &[Vec<S>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.iter().map(|s| s.as_ref()))
            .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// CSV cell for a float, at the same precision as the JSON output.
pub fn cell(v: f64) -> String {
    format!("{v:.16e}")
}

/// Sample value in a function file: a real number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sample {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Sample> for Complex64 {
    fn from(s: Sample) -> Self {
        match s {
            Sample::Real(re) => Complex64::new(re, 0.0),
            Sample::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

/// One function as stored on disk. Values are listed in point order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupKind>,
    pub values: Vec<Sample>,
}

impl FunctionRecord {
    pub fn of(f: &GroupFunction) -> Self {
        FunctionRecord {
            name: f.name().map(str::to_string),
            group: Some(f.group().kind().clone()),
            values: f
                .values()
                .iter()
                .map(|v| Sample::Complex([v.re, v.im]))
                .collect(),
        }
    }

    /// Builds the function on `group`, or on the record's own group if none is given.
    pub fn into_function(self, group: Option<&GroupModel>) -> Result<GroupFunction> {
        let group = match (group, self.group) {
            (Some(g), _) => g.clone(),
            (None, Some(kind)) => GroupModel::new(kind)?,
            (None, None) => {
                return Err(Error::InvalidSpec(
                    "no group given on the command line or in the input".into(),
                ))
            }
        };
        let values = self.values.into_iter().map(Complex64::from).collect();
        let f = GroupFunction::new(group, values)?;
        Ok(match self.name {
            Some(n) => f.with_name(n),
            None => f,
        })
    }
}

/// A function file holds either one function or a list of members.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum FunctionFile {
    Family {
        #[serde(default)]
        group: Option<GroupKind>,
        members: Vec<FunctionRecord>,
    },
    Single(FunctionRecord),
}

impl FunctionFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// All functions in the file, on `group` if given.
    pub fn into_functions(self, group: Option<&GroupModel>) -> Result<Vec<GroupFunction>> {
        match self {
            FunctionFile::Single(r) => Ok(vec![r.into_function(group)?]),
            FunctionFile::Family {
                group: own,
                members,
            } => {
                let shared = match (group, own) {
                    (Some(g), _) => Some(g.clone()),
                    (None, Some(kind)) => Some(GroupModel::new(kind)?),
                    (None, None) => None,
                };
                members
                    .into_iter()
                    .map(|r| r.into_function(shared.as_ref()))
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Body {
        x: f64,
        v: Vec<f64>,
        bad: f64,
    }

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json(
            "test",
            &Body {
                x: 0.1,
                v: vec![5f64.sqrt(), -3.0],
                bad: f64::NAN,
            },
        )
        .unwrap();
        assert!(s.contains("\"schema\": \"lca-pego/1\""));
        assert!(s.contains("1.0000000000000001e-1"));
        assert!(s.contains("2.2360679774997898e0"));
        assert!(s.contains("-3.0000000000000000e0"));
        assert!(s.contains("\"bad\": null"));
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.1));
        assert_eq!(back["v"][0].as_f64(), Some(5f64.sqrt()));
    }

    #[test]
    fn function_round_trip() {
        let g = GroupModel::finite(&[3]).unwrap();
        let f = GroupFunction::new(
            g,
            vec![
                Complex64::new(1.0, -1.0),
                Complex64::new(0.0, 0.5),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap()
        .with_name("f");
        let text = serde_json::to_string(&FunctionRecord::of(&f)).unwrap();
        let back = FunctionFile::parse(&text)
            .unwrap()
            .into_functions(None)
            .unwrap();
        assert_eq!(back, vec![f]);
    }

    #[test]
    fn real_samples_and_families() {
        let text = r#"{"group": {"type": "finite", "moduli": [2]},
                       "members": [{"values": [1, 2]}, {"name": "b", "values": [[0, 1], 3]}]}"#;
        let fs = FunctionFile::parse(text)
            .unwrap()
            .into_functions(None)
            .unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[1].values()[0], Complex64::new(0.0, 1.0));
        assert_eq!(fs[1].name(), Some("b"));
    }

    #[test]
    fn missing_group_and_bad_json() {
        let f = FunctionFile::parse(r#"{"values": [1]}"#).unwrap();
        assert!(matches!(f.into_functions(None), Err(Error::InvalidSpec(_))));
        assert!(matches!(FunctionFile::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(
            FunctionFile::parse(r#"{"values": [1], "extra": 2}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let s = to_csv(&["a", "b"], &[vec![cell(1.0), "x".to_string()]]).unwrap();
        assert_eq!(s, "a,b\n1.0000000000000000e0,x\n");
    }
}
