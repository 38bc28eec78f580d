//! Output formatting: `%.17g` floats, CSV tables and the JSON envelope.

use serde::Serialize;

pub const SCHEMA: &str = "hopf-cone/1";

/// C's `%.17g`: 17 significant digits, trailing zeros dropped, scientific
/// notation when the exponent is below -4 or at least 17.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A CSV table with a fixed header, LF line endings.
#[derive(Debug, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut c = Csv::default();
        c.out.push_str(&header.join(","));
        c.out.push('\n');
        c
    }

    pub fn row(&mut self, cells: &[String]) {
        self.out.push_str(&cells.join(","));
        self.out.push('\n');
    }

    pub fn floats(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|v| g17(*v)).collect();
        self.row(&cells);
    }

    pub fn finish(self) -> String {
        self.out
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    result: &'a T,
}

pub fn json<T: Serialize>(command: &str, result: &T) -> String {
    let env = Envelope {
        schema: SCHEMA,
        command,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("serialisable report");
    s.push('\n');
    s
}
