//! Rendering of series and polynomials.

use serde_json::Value;
use spintail::{QSeries, VLaurent, VRational};

use crate::Format;

fn json_line(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize") + "\n"
}

pub fn series(s: &QSeries, format: Format) -> String {
    match format {
        Format::Text => format!("{s}\n"),
        Format::Json => json_line(&s.to_json()),
        Format::Csv => {
            let mut out = String::from("exponent,numerator,denominator\n");
            for (j, c) in s.coeffs().iter().enumerate() {
                out += &format!("{},{},{}\n", s.shift() + j as i64, c.numer(), c.denom());
            }
            out
        }
    }
}

pub fn laurent(p: &VLaurent, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Json => json_line(&p.to_json()),
        Format::Csv => {
            let mut out = String::from("v_exponent,numerator,denominator\n");
            for (e, c) in p.terms() {
                out += &format!("{e},{},{}\n", c.numer(), c.denom());
            }
            out
        }
    }
}

pub fn rational(p: &VRational, format: Format) -> String {
    match (p.to_laurent(), format) {
        (Ok(l), _) => laurent(&l, format),
        (Err(_), Format::Json) => json_line(&p.to_json()),
        (Err(_), _) => format!("{p}\n"),
    }
}
