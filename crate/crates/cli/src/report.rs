//! Versioned JSON reports.

use std::io;

use framekit_core::Tolerance;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "framekit/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    /// Human-readable description of the input (file name or family spec).
    pub input: String,
    /// `sha256:` digest of the input bytes or of the canonical family spec.
    pub input_digest: String,
    pub results: Value,
    pub tolerances: Tolerance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(command: &str, input: &Input, results: Value, tolerances: Tolerance, seed: Option<u64>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            input: input.description.clone(),
            input_digest: input.digest.clone(),
            results,
            tolerances,
            seed,
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// Where a frame came from, with the bytes hashed for the digest.
#[derive(Debug, Clone)]
pub struct Input {
    pub description: String,
    pub digest: String,
}

impl Input {
    pub fn from_bytes(description: impl Into<String>, bytes: &[u8]) -> Self {
        Input {
            description: description.into(),
            digest: digest(bytes),
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Pretty printer that writes every float with 17 significant digits.
struct Precise<'a>(PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident),*) => {$(
        fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
            self.0.$name(w)
        }
    )*};
}

impl Formatter for Precise<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    delegate!(begin_array, end_array, end_array_value, begin_object, end_object, begin_object_value, end_object_value);
}

/// Serializes with the report number format and a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser).expect("report values are always serializable");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
